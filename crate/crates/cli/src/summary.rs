//! Statistics of a single point set, rendered as JSON or CSV.

use serde::Serialize;

use perpbis_core::stats::{
    bisector_multiset, distance_classes, fixed_distance_bound_holds, isosceles_count, nonzero_distance_pairs,
    pinned_distance_counts, q_double_prime, q_prime_by_distance, ratio_report,
};
use perpbis_core::PointSet;

use crate::report::{fmt_float, CheckRecord};

#[derive(Debug, Serialize)]
pub struct PinnedEntry {
    pub point: [u32; 2],
    pub count: usize,
}

#[derive(Debug, Serialize)]
pub struct PinnedStats {
    /// Includes the self-distance 0.
    pub counts: Vec<PinnedEntry>,
    pub min: usize,
    pub median: String,
    pub at_least_half_q: usize,
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub q: u32,
    pub points: usize,
    pub distinct_bisectors: usize,
    pub bisector_energy: u64,
    pub q_prime: u64,
    pub q_double_prime: u64,
    /// `|Π_d|` indexed by `d`.
    pub distance_classes: Vec<u64>,
    pub distance_energy: u64,
    pub isosceles: u64,
    pub pinned: PinnedStats,
    pub checks: Vec<CheckRecord>,
}

pub fn summarize(set: &PointSet) -> Summary {
    let q = set.field().modulus();
    let n = set.len() as u64;
    let multiset = bisector_multiset(set);
    let classes = distance_classes(set);
    let by_d = q_prime_by_distance(set);
    let double_prime = q_double_prime(set);
    let pinned = pinned_distance_counts(set);
    let ratios = ratio_report(set);

    let mut checks = Vec::new();
    let violations = (1..q)
        .filter(|&d| !fixed_distance_bound_holds(q as u64, by_d[d as usize], classes.count(d)))
        .count();
    checks.push(CheckRecord::equal("energy.fixed_distance_bound", q, 0, violations));
    let nonzero_pairs = nonzero_distance_pairs(set);
    checks.push(CheckRecord::holds(
        "energy.q_double_prime_bound",
        q,
        double_prime <= 2 * nonzero_pairs,
        format!("<= {}", 2 * nonzero_pairs),
        double_prime,
    ));
    checks.push(CheckRecord::holds(
        "energy.zero_distance_class_bound",
        q,
        classes.count(0) < 2 * n * q as u64,
        format!("< {}", 2 * n * q as u64),
        classes.count(0),
    ));
    checks.push(CheckRecord::report(
        "ratio.energy",
        q,
        "|Q| / (n^4/q^2 + q n^2)",
        ratios.energy,
    ));
    checks.push(CheckRecord::report(
        "ratio.distance_energy",
        q,
        "sum |Pi_d|^2 / (n^4/q + q^2 n^2)",
        ratios.distance_energy,
    ));
    checks.push(CheckRecord::report(
        "ratio.isosceles",
        q,
        "triangles / (n^3/q + n^2.5/q^0.5 + q n^1.5)",
        ratios.isosceles,
    ));
    checks.push(CheckRecord::report(
        "ratio.distinct_bisectors",
        q,
        "|B(P)| / q^2",
        ratios.distinct_bisectors,
    ));
    checks.push(CheckRecord::report(
        "ratio.pinned_proportion",
        q,
        "fraction of points pinning >= q/2 distances",
        ratios.pinned_proportion,
    ));

    Summary {
        q,
        points: set.len(),
        distinct_bisectors: multiset.distinct_lines(),
        bisector_energy: multiset.sum_of_squares(),
        q_prime: by_d.iter().sum(),
        q_double_prime: double_prime,
        distance_classes: classes.counts().to_vec(),
        distance_energy: classes.energy(),
        isosceles: isosceles_count(set),
        pinned: PinnedStats {
            counts: pinned
                .counts
                .iter()
                .map(|(p, c)| PinnedEntry {
                    point: [p.x.value(), p.y.value()],
                    count: *c,
                })
                .collect(),
            min: pinned.min,
            median: fmt_float(pinned.median),
            at_least_half_q: pinned.at_least_half_q,
        },
        checks,
    }
}

impl Summary {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes") + "\n"
    }

    /// `metric,value,status` rows.
    pub fn to_csv(&self) -> String {
        let mut rows: Vec<(String, String, &str)> = vec![
            ("q".into(), self.q.to_string(), ""),
            ("points".into(), self.points.to_string(), ""),
            ("distinct_bisectors".into(), self.distinct_bisectors.to_string(), ""),
            ("bisector_energy".into(), self.bisector_energy.to_string(), ""),
            ("q_prime".into(), self.q_prime.to_string(), ""),
            ("q_double_prime".into(), self.q_double_prime.to_string(), ""),
        ];
        for (d, c) in self.distance_classes.iter().enumerate() {
            rows.push((format!("distance_class.{d}"), c.to_string(), ""));
        }
        rows.push(("distance_energy".into(), self.distance_energy.to_string(), ""));
        rows.push(("isosceles".into(), self.isosceles.to_string(), ""));
        rows.push(("pinned.min".into(), self.pinned.min.to_string(), ""));
        rows.push(("pinned.median".into(), self.pinned.median.clone(), ""));
        rows.push((
            "pinned.at_least_half_q".into(),
            self.pinned.at_least_half_q.to_string(),
            "",
        ));
        for c in &self.checks {
            let status = match c.status {
                crate::report::Status::Pass => "pass",
                crate::report::Status::Fail => "fail",
                crate::report::Status::Report => "report",
            };
            rows.push((c.name.clone(), c.actual.clone(), status));
        }
        let mut out = String::from("metric,value,status\n");
        for (m, v, s) in rows {
            out.push_str(&format!("{m},{v},{s}\n"));
        }
        out
    }
}
