//! Counting statistics of a point set: bisector weights and energies,
//! distance classes, isosceles triangles and pinned distances.
//!
//! All counts are over ordered pairs, triples or quadruples of points.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::field::FieldElement;
use crate::plane::{bisector, Line, Point};
use crate::pointsets::PointSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StatsError {
    #[error("distance must be nonzero")]
    InvalidDistance,
}

/// Bisector lines with weights `w(l)`: the number of ordered pairs `(x, y)`
/// with `‖x − y‖ ≠ 0` and `B(x, y) = l`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WeightedLineMultiset {
    entries: BTreeMap<Line, u64>,
}

impl WeightedLineMultiset {
    pub fn weight(&self, l: &Line) -> u64 {
        self.entries.get(l).copied().unwrap_or(0)
    }

    /// Lines in canonical order with their weights.
    pub fn iter(&self) -> impl Iterator<Item = (&Line, u64)> {
        self.entries.iter().map(|(l, &w)| (l, w))
    }

    /// Number of distinct bisectors.
    pub fn distinct_lines(&self) -> usize {
        self.entries.len()
    }

    pub fn total_weight(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn sum_of_squares(&self) -> u64 {
        self.entries.values().map(|w| w * w).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn bisector_multiset(set: &PointSet) -> WeightedLineMultiset {
    let mut entries = BTreeMap::new();
    for x in set {
        for y in set {
            if x.distance(y).is_zero() {
                continue;
            }
            let l = bisector(x, y).expect("distinct points");
            *entries.entry(l).or_insert(0) += 1;
        }
    }
    WeightedLineMultiset { entries }
}

pub fn distinct_bisector_count(set: &PointSet) -> usize {
    bisector_multiset(set).distinct_lines()
}

/// `|Q(P)|`: quadruples `(x, y, z, w)` with `B(x, z) = B(y, w)` and `‖x − z‖ ≠ 0`.
pub fn bisector_energy(set: &PointSet) -> u64 {
    bisector_multiset(set).sum_of_squares()
}

/// Ordered pairs `(x, z)` with `x ≠ z`, grouped by their bisector.
fn pairs_by_bisector(set: &PointSet) -> BTreeMap<Line, Vec<(Point, Point)>> {
    let mut groups: BTreeMap<Line, Vec<(Point, Point)>> = BTreeMap::new();
    for &x in set {
        for &z in set {
            if x != z {
                groups
                    .entry(bisector(&x, &z).expect("distinct points"))
                    .or_default()
                    .push((x, z));
            }
        }
    }
    groups
}

/// `|Q'_d|` for every `d`, indexed by the residue of `d`; entry 0 is unused
/// and stays zero. Counts quadruples with `x ≠ z`, `y ≠ w`,
/// `B(x, z) = B(y, w)` and `‖x − y‖ = ‖z − w‖ = d`.
pub fn q_prime_by_distance(set: &PointSet) -> Vec<u64> {
    let q = set.field().modulus() as usize;
    let mut counts = vec![0u64; q];
    for pairs in pairs_by_bisector(set).values() {
        for (x, z) in pairs {
            for (y, w) in pairs {
                let d = x.distance(y);
                if !d.is_zero() && d == z.distance(w) {
                    counts[d.value() as usize] += 1;
                }
            }
        }
    }
    counts
}

pub fn q_prime_d(set: &PointSet, d: FieldElement) -> Result<u64, StatsError> {
    if d.is_zero() {
        return Err(StatsError::InvalidDistance);
    }
    Ok(q_prime_by_distance(set)[d.value() as usize])
}

/// `|Q'| = Σ_{d ≠ 0} |Q'_d|`.
pub fn q_prime(set: &PointSet) -> u64 {
    q_prime_by_distance(set).iter().sum()
}

/// Quadruples of `Q(P)` whose four cross distances `‖x−y‖, ‖x−w‖, ‖z−y‖, ‖z−w‖` vanish.
pub fn q_double_prime(set: &PointSet) -> u64 {
    let mut groups: BTreeMap<Line, Vec<(Point, Point)>> = BTreeMap::new();
    for &x in set {
        for &z in set {
            if !x.distance(&z).is_zero() {
                groups
                    .entry(bisector(&x, &z).expect("distinct points"))
                    .or_default()
                    .push((x, z));
            }
        }
    }
    let mut count = 0;
    for pairs in groups.values() {
        for (x, z) in pairs {
            for (y, w) in pairs {
                if [x.distance(y), x.distance(w), z.distance(y), z.distance(w)]
                    .iter()
                    .all(FieldElement::is_zero)
                {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Number of ordered pairs at nonzero distance.
pub fn nonzero_distance_pairs(set: &PointSet) -> u64 {
    let zero = distance_classes(set).count(0);
    (set.len() as u64).pow(2) - zero
}

/// `|Π_d|` for each `d`, over ordered pairs; diagonal pairs fall in `Π_0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceClasses {
    counts: Vec<u64>,
}

impl DistanceClasses {
    pub fn count(&self, d: u32) -> u64 {
        self.counts.get(d as usize).copied().unwrap_or(0)
    }

    /// Class sizes indexed by the residue of the distance.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `Σ_d |Π_d|²`.
    pub fn energy(&self) -> u64 {
        self.counts.iter().map(|c| c * c).sum()
    }
}

pub fn distance_classes(set: &PointSet) -> DistanceClasses {
    let mut counts = vec![0u64; set.field().modulus() as usize];
    for x in set {
        for y in set {
            counts[x.distance(y).value() as usize] += 1;
        }
    }
    DistanceClasses { counts }
}

pub fn distance_energy(set: &PointSet) -> u64 {
    distance_classes(set).energy()
}

/// Ordered triples `(x, y, z)` with `‖x − z‖ = ‖y − z‖` and `‖x − y‖ ≠ 0`.
pub fn isosceles_count(set: &PointSet) -> u64 {
    let mut count = 0;
    for apex in set {
        let mut by_distance: BTreeMap<FieldElement, Vec<Point>> = BTreeMap::new();
        for x in set {
            by_distance.entry(apex.distance(x)).or_default().push(*x);
        }
        for group in by_distance.values() {
            for x in group {
                count += group.iter().filter(|y| !x.distance(y).is_zero()).count() as u64;
            }
        }
    }
    count
}

#[derive(Debug, Clone, PartialEq)]
pub struct PinnedSummary {
    /// Distinct distances pinned at each point, in point order; the
    /// self-distance 0 is included.
    pub counts: Vec<(Point, usize)>,
    pub min: usize,
    /// Mean of the two middle values for an even number of points.
    pub median: f64,
    /// Points pinning at least `q / 2` distinct distances.
    pub at_least_half_q: usize,
}

pub fn pinned_distance_counts(set: &PointSet) -> PinnedSummary {
    let q = set.field().modulus() as usize;
    let counts: Vec<(Point, usize)> = set
        .iter()
        .map(|a| (*a, set.iter().map(|b| a.distance(b)).collect::<BTreeSet<_>>().len()))
        .collect();
    let mut sorted: Vec<usize> = counts.iter().map(|&(_, c)| c).collect();
    sorted.sort_unstable();
    let n = sorted.len();
    let median = match n {
        0 => 0.0,
        _ if n % 2 == 1 => sorted[n / 2] as f64,
        _ => (sorted[n / 2 - 1] + sorted[n / 2]) as f64 / 2.0,
    };
    PinnedSummary {
        min: sorted.first().copied().unwrap_or(0),
        median,
        at_least_half_q: sorted.iter().filter(|&&c| 2 * c >= q).count(),
        counts,
    }
}

/// `|Q'_d| ≤ |Π_d|²/q + 2(q − 1)|Π_d|`, compared after clearing the denominator.
pub fn fixed_distance_bound_holds(q: u64, q_prime_d: u64, pi_d: u64) -> bool {
    let (q, lhs, pi) = (q as u128, q_prime_d as u128, pi_d as u128);
    q * lhs <= pi * pi + 2 * q * (q - 1) * pi
}

/// Scale-free ratios of measured quantities to the asymptotic bounds they
/// are expected to respect up to a constant.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioReport {
    /// `|Q| / (n⁴/q² + q n²)`.
    pub energy: f64,
    /// `Σ_d |Π_d|² / (n⁴/q + q² n²)`.
    pub distance_energy: f64,
    /// `△ / (n³/q + n^{5/2}/q^{1/2} + q n^{3/2})`.
    pub isosceles: f64,
    /// `|B(P)| / q²`.
    pub distinct_bisectors: f64,
    /// Fraction of points pinning at least `q / 2` distances.
    pub pinned_proportion: f64,
}

pub fn ratio_report(set: &PointSet) -> RatioReport {
    let q = set.field().modulus() as f64;
    let n = set.len() as f64;
    let ratio = |value: u64, bound: f64| if bound > 0.0 { value as f64 / bound } else { 0.0 };
    let multiset = bisector_multiset(set);
    let pinned = pinned_distance_counts(set);
    RatioReport {
        energy: ratio(multiset.sum_of_squares(), n.powi(4) / (q * q) + q * n * n),
        distance_energy: ratio(distance_energy(set), n.powi(4) / q + q * q * n * n),
        isosceles: ratio(
            isosceles_count(set),
            n.powi(3) / q + n.powf(2.5) / q.sqrt() + q * n.powf(1.5),
        ),
        distinct_bisectors: multiset.distinct_lines() as f64 / (q * q),
        pinned_proportion: if set.is_empty() {
            0.0
        } else {
            pinned.at_least_half_q as f64 / n
        },
    }
}
