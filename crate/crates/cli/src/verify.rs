//! Verification batteries, one per suite, producing check records.

use std::collections::{BTreeMap, BTreeSet};

use clap::ValueEnum;
use perpbis_core::motions::{
    count_reflection_pairs_mapping, enumerate_reflection_matrices, enumerate_reflections, enumerate_rotation_matrices,
    motion_mapping_pair, reflection_pair_decompositions,
};
use perpbis_core::plane::{all_lines, all_points, bisector};
use perpbis_core::pointsets::{construct, Construction};
use perpbis_core::spectral::{
    bisector_graph, expected_residual_row_sum, incidence_spectrum_check, second_eigenvalue_check,
    weighted_incidence_check, MultisetWeights, ProjectivePoint,
};
use perpbis_core::stats::{
    bisector_multiset, distance_classes, fixed_distance_bound_holds, isosceles_count, nonzero_distance_pairs,
    q_double_prime, q_prime_by_distance,
};
use perpbis_core::{Circle, MotionKind, Point, PrimeField, Prng};

use crate::report::{fmt_float, CheckRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    Field,
    Plane,
    Motions,
    Spectral,
    Energy,
    Incidence,
    All,
}

impl Suite {
    pub const INDIVIDUAL: [Suite; 6] = [
        Suite::Field,
        Suite::Plane,
        Suite::Motions,
        Suite::Spectral,
        Suite::Energy,
        Suite::Incidence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Field => "field",
            Suite::Plane => "plane",
            Suite::Motions => "motions",
            Suite::Spectral => "spectral",
            Suite::Energy => "energy",
            Suite::Incidence => "incidence",
            Suite::All => "all",
        }
    }

    /// Largest modulus the suite accepts.
    pub fn max_q(self) -> u32 {
        match self {
            Suite::Field => 10_007,
            Suite::Plane => 101,
            Suite::Motions => 31,
            Suite::Spectral => 7,
            Suite::Energy => 31,
            Suite::Incidence => 31,
            Suite::All => Self::INDIVIDUAL.iter().map(|s| s.max_q()).min().expect("nonempty"),
        }
    }

    pub fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => Self::INDIVIDUAL.to_vec(),
            s => vec![s],
        }
    }
}

/// Runs `suite` for each modulus; records are ordered by suite, then name, then q.
pub fn run(suite: Suite, fields: &[PrimeField]) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for s in suite.members() {
        let mut records: Vec<CheckRecord> = fields
            .iter()
            .flat_map(|f| match s {
                Suite::Field => field_suite(f),
                Suite::Plane => plane_suite(f),
                Suite::Motions => motions_suite(f),
                Suite::Spectral => spectral_suite(f),
                Suite::Energy => energy_suite(f),
                Suite::Incidence => incidence_suite(f),
                Suite::All => unreachable!("expanded above"),
            })
            .collect();
        records.sort_by(|a, b| (&a.name, a.q).cmp(&(&b.name, b.q)));
        out.extend(records);
    }
    out
}

fn one_mod_four(f: &PrimeField) -> bool {
    f.has_isotropic_directions()
}

fn field_suite(f: &PrimeField) -> Vec<CheckRecord> {
    let q = f.modulus();
    let mut out = vec![CheckRecord::equal(
        "field.sqrt_minus_one.exists",
        q,
        one_mod_four(f),
        f.sqrt_minus_one().is_some(),
    )];
    if let Some(i) = f.sqrt_minus_one() {
        out.push(CheckRecord::equal(
            "field.sqrt_minus_one.squares_to_minus_one",
            q,
            q - 1,
            i.square().value(),
        ));
    }
    let squares = f.nonzero_elements().filter(|x| x.sqrt().is_some()).count();
    out.push(CheckRecord::equal("field.squares.half", q, (q - 1) / 2, squares));
    let bad_inverses = f
        .nonzero_elements()
        .filter(|x| x.inverse().map_or(true, |inv| (*x * inv).value() != 1))
        .count();
    out.push(CheckRecord::equal("field.inverse.all_nonzero", q, 0, bad_inverses));
    let disagreements = f
        .elements()
        .filter(|x| x.sqrt_exhaustive() != x.sqrt_tonelli_shanks())
        .count();
    out.push(CheckRecord::equal("field.sqrt.methods_agree", q, 0, disagreements));
    out
}

fn sample_points(f: &PrimeField, count: usize, seed: u64) -> Vec<Point> {
    let q = f.modulus() as u64;
    let mut rng = Prng::new(seed);
    (0..count)
        .map(|_| {
            let i = rng.below(q * q);
            Point::from_coords(f, (i / q) as i64, (i % q) as i64)
        })
        .collect()
}

fn plane_suite(f: &PrimeField) -> Vec<CheckRecord> {
    let q = f.modulus() as usize;
    let centers = sample_points(f, 3, 1);
    let sizes = |r: i64| -> BTreeSet<usize> {
        centers
            .iter()
            .map(|c| Circle::new(*c, f.elem(r)).points().len())
            .collect()
    };
    let fmt_sizes = |s: BTreeSet<usize>| s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("/");
    let (zero_size, nonzero_size) = if one_mod_four(f) {
        (2 * q - 1, q - 1)
    } else {
        (1, q + 1)
    };
    let nonzero: BTreeSet<usize> = (1..q as i64).flat_map(sizes).collect();

    let pts = sample_points(f, 12, 2);
    let mut locus_mismatches = 0;
    let mut isotropic_nonzero = 0;
    for a in &pts {
        for b in &pts {
            if a == b {
                continue;
            }
            let l = bisector(a, b).expect("distinct points");
            let locus = all_points(f).filter(|c| c.distance(a) == c.distance(b));
            if !locus.eq(all_points(f).filter(|c| l.contains(c))) {
                locus_mismatches += 1;
            }
            if !a.distance(b).is_zero() && l.is_isotropic() {
                isotropic_nonzero += 1;
            }
        }
    }
    let lines = all_lines(f);
    let isotropic_lines = lines.iter().filter(|l| l.is_isotropic()).count();

    vec![
        CheckRecord::equal("circles.count.r_zero", q as u32, zero_size, fmt_sizes(sizes(0))),
        CheckRecord::equal("circles.count.r_nonzero", q as u32, nonzero_size, fmt_sizes(nonzero)),
        CheckRecord::equal("bisector.locus", q as u32, 0, locus_mismatches),
        CheckRecord::equal(
            "bisector.nonzero_distance_not_isotropic",
            q as u32,
            0,
            isotropic_nonzero,
        ),
        CheckRecord::equal("lines.count", q as u32, q * q + q, lines.len()),
        CheckRecord::equal(
            "lines.isotropic.count",
            q as u32,
            if one_mod_four(f) { 2 * q } else { 0 },
            isotropic_lines,
        ),
    ]
}

fn motions_suite(f: &PrimeField) -> Vec<CheckRecord> {
    let qq = f.modulus();
    let q = qq as u64;
    let unit = if one_mod_four(f) { q - 1 } else { q + 1 };
    let mut out = vec![
        CheckRecord::equal(
            "reflections.count.rotation_matrices",
            qq,
            unit,
            enumerate_rotation_matrices(f).len(),
        ),
        CheckRecord::equal(
            "reflections.count.reflection_matrices",
            qq,
            unit,
            enumerate_reflection_matrices(f).len(),
        ),
    ];

    // classify every composition of two reflections
    let reflections = enumerate_reflections(f);
    let mut kinds: BTreeMap<&'static str, u64> = BTreeMap::new();
    for s1 in &reflections {
        for s2 in &reflections {
            let m = s1.then(s2);
            let key = match m.kind() {
                MotionKind::Identity => "identity",
                MotionKind::Rotation => "rotation",
                MotionKind::Translation => "translation",
                MotionKind::Reflection | MotionKind::GlideReflection => "other",
            };
            *kinds.entry(key).or_default() += 1;
        }
    }
    let r = reflections.len() as u64;
    let (rotations, translations) = if one_mod_four(f) {
        ((q - 2) * q * q * (q - 1), (q - 1) * (q - 1) * q)
    } else {
        (q * q * q * (q + 1), (q * q - 1) * q)
    };
    let got = |k: &str| kinds.get(k).copied().unwrap_or(0);
    let total: u64 = kinds.values().sum();
    out.push(CheckRecord::equal("decomposition.pairs.total", qq, r * r, total));
    out.push(CheckRecord::equal(
        "decomposition.pairs.identity",
        qq,
        r,
        got("identity"),
    ));
    out.push(CheckRecord::equal(
        "decomposition.pairs.rotation",
        qq,
        rotations,
        got("rotation"),
    ));
    out.push(CheckRecord::equal(
        "decomposition.pairs.translation",
        qq,
        translations,
        got("translation"),
    ));
    out.push(CheckRecord::equal("decomposition.pairs.other", qq, 0, got("other")));
    if one_mod_four(f) {
        let lhs = (q - 1) * (q - 1) * q * q;
        let rhs = (q - 2) * q * q * (q - 1) + (q - 1) * (q - 1) * q + (q - 1) * q;
        out.push(CheckRecord::equal("decomposition.counting_identity", qq, lhs, rhs));
    }

    // sampled quadruples against the case table
    let mut rng = Prng::new(7);
    let pts: Vec<Point> = all_points(f).collect();
    let mut mismatches = 0;
    let mut sampled = 0;
    while sampled < 12 {
        let pick = |rng: &mut Prng| pts[rng.below(pts.len() as u64) as usize];
        let (x, y, z) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let d = x.distance(&y);
        if d.is_zero() {
            continue;
        }
        // a point w on the circle of radius d about z
        let circle = Circle::new(z, d).points();
        let w = circle[rng.below(circle.len() as u64) as usize];
        if (x, y) == (z, w) {
            continue;
        }
        sampled += 1;
        let expected = if x - y != z - w {
            unit
        } else if !(z - x).norm().is_zero() {
            q
        } else {
            0
        };
        let actual = if qq <= 13 {
            count_reflection_pairs_mapping(x, y, z, w).expect("valid quadruple") as u64
        } else {
            let m = motion_mapping_pair(x, y, z, w).expect("valid quadruple");
            reflection_pair_decompositions(&m).map_or(0, |v| v.len() as u64)
        };
        if actual != expected {
            mismatches += 1;
        }
    }
    out.push(CheckRecord::equal(
        "decomposition.quadruples.case_table",
        qq,
        0,
        mismatches,
    ));
    out
}

fn spectral_suite(f: &PrimeField) -> Vec<CheckRecord> {
    let q = f.modulus();
    let mut out = Vec::new();
    for d in [f.one(), f.elem(2)]
        .into_iter()
        .filter(|d| !d.is_zero())
        .collect::<BTreeSet<_>>()
    {
        let g = match bisector_graph(f, d) {
            Ok(g) => g,
            Err(e) => {
                out.push(CheckRecord::holds("bisector_graph.build", q, false, "graph", e));
                continue;
            }
        };
        let tag = |s: &str| format!("bisector_graph.d{}.{s}", d.value());
        out.push(CheckRecord::equal(
            &tag("degree"),
            q,
            g.expected_degree(),
            g.graph().regular_degree().map_or("irregular".into(), |v| v.to_string()),
        ));
        let expected_sum = expected_residual_row_sum(f);
        let sums: BTreeSet<i64> = g.a_squared_residual().row_abs_sums().into_iter().collect();
        out.push(CheckRecord::equal(
            &tag("residual_row_sum"),
            q,
            expected_sum,
            sums.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("/"),
        ));
        match second_eigenvalue_check(&g) {
            Ok(r) => {
                out.push(CheckRecord::holds(
                    &tag("principal_eigenvalue"),
                    q,
                    (r.principal - r.degree as f64).abs() <= 1e-8,
                    r.degree,
                    fmt_float(r.principal),
                ));
                out.push(CheckRecord::holds(
                    &tag("second_eigenvalue"),
                    q,
                    r.second <= r.bound + 1e-8,
                    format!("<= {}", fmt_float(r.bound)),
                    fmt_float(r.second),
                ));
            }
            Err(e) => out.push(CheckRecord::holds(&tag("second_eigenvalue"), q, false, "spectrum", e)),
        }
    }
    out.extend(incidence_spectrum_records(f));
    out
}

fn incidence_spectrum_records(f: &PrimeField) -> Vec<CheckRecord> {
    let q = f.modulus();
    match incidence_spectrum_check(f) {
        Ok(r) => vec![
            CheckRecord::equal("incidence_graph.order", q, q * q + q + 1, r.order),
            CheckRecord::equal(
                "incidence_graph.degree",
                q,
                q + 1,
                r.degree.map_or("irregular".into(), |v| v.to_string()),
            ),
            CheckRecord::holds(
                "incidence_graph.principal_eigenvalue",
                q,
                (r.principal - (q as f64 + 1.0)).abs() <= 1e-8,
                q + 1,
                fmt_float(r.principal),
            ),
            CheckRecord::holds(
                "incidence_graph.second_eigenvalue",
                q,
                r.passed,
                format!("±{}", fmt_float((q as f64).sqrt())),
                fmt_float(r.second),
            ),
        ],
        Err(e) => vec![CheckRecord::holds("incidence_graph.spectrum", q, false, "spectrum", e)],
    }
}

fn energy_suite(f: &PrimeField) -> Vec<CheckRecord> {
    let qq = f.modulus();
    let q = qq as u64;
    let mut out = Vec::new();
    let mut sets = Vec::new();
    for seed in 0..10 {
        let n = 10 + (seed as usize * 3) % 21;
        sets.push(
            construct(
                f,
                Construction::Random {
                    n: n.min((q * q) as usize),
                    seed,
                },
            )
            .expect("feasible"),
        );
    }
    for k in [2, 3] {
        sets.push(construct(f, Construction::ParallelLines { k }).expect("k <= q"));
    }
    if one_mod_four(f) {
        sets.push(construct(f, Construction::IsotropicLines { k: 2 }).expect("q ≡ 1 mod 4"));
    }

    let mut lemma_failures = 0;
    let mut decomposition_failures = 0;
    let mut double_prime_failures = 0;
    let mut zero_class_failures = 0;
    for s in &sets {
        let n = s.len() as u64;
        let classes = distance_classes(s);
        let by_d = q_prime_by_distance(s);
        for d in 1..qq {
            if !fixed_distance_bound_holds(q, by_d[d as usize], classes.count(d)) {
                lemma_failures += 1;
            }
        }
        let multiset = bisector_multiset(s);
        if multiset.total_weight() != n * n - classes.count(0) {
            decomposition_failures += 1;
        }
        if q_double_prime(s) > 2 * nonzero_distance_pairs(s) {
            double_prime_failures += 1;
        }
        if classes.count(0) >= 2 * n * q {
            zero_class_failures += 1;
        }
    }
    out.push(CheckRecord::equal("energy.fixed_distance_bound", qq, 0, lemma_failures));
    out.push(CheckRecord::equal(
        "energy.weights_sum_to_nonzero_pairs",
        qq,
        0,
        decomposition_failures,
    ));
    out.push(CheckRecord::equal(
        "energy.q_double_prime_bound",
        qq,
        0,
        double_prime_failures,
    ));
    out.push(CheckRecord::equal(
        "energy.zero_distance_class_bound",
        qq,
        0,
        zero_class_failures,
    ));

    for k in [2u64, 3] {
        let s = construct(f, Construction::ParallelLines { k: k as usize }).expect("k <= q");
        let n = s.len() as u64;
        let energy = bisector_multiset(&s).sum_of_squares();
        let per_line = k * (q - 1);
        out.push(CheckRecord::holds(
            &format!("energy.parallel_lines_k{k}.perpendicular_family"),
            qq,
            energy >= q * per_line * per_line,
            format!(">= {}", q * per_line * per_line),
            energy,
        ));
        out.push(CheckRecord::report(
            &format!("energy.parallel_lines_k{k}.ratio_to_q_n_squared"),
            qq,
            "|Q| / (q|P|^2)",
            energy as f64 / (q * n * n) as f64,
        ));
    }
    out
}

fn incidence_suite(f: &PrimeField) -> Vec<CheckRecord> {
    let q = f.modulus();
    let mut out = Vec::new();
    let points: Vec<Point> = all_points(f).collect();
    let affine_points = MultisetWeights::unit_points(points.iter()).expect("distinct points");
    let affine_lines =
        MultisetWeights::new(all_lines(f).iter().map(|l| (ProjectivePoint::from_line(l), 1))).expect("distinct lines");
    match weighted_incidence_check(f, &affine_points, &affine_lines) {
        Ok(r) => out.push(CheckRecord::holds(
            "incidence.weighted_bound.affine",
            q,
            r.holds,
            format!("<= {}", fmt_float(r.bound)),
            r.incidences,
        )),
        Err(e) => out.push(CheckRecord::holds(
            "incidence.weighted_bound.affine",
            q,
            false,
            "report",
            e,
        )),
    }

    let mut violations = 0;
    let mut identity_failures = 0;
    for seed in 0..10 {
        let s = construct(
            f,
            Construction::Random {
                n: (12 + seed as usize).min((q * q) as usize),
                seed,
            },
        )
        .expect("feasible");
        let lines = MultisetWeights::new(
            bisector_multiset(&s)
                .iter()
                .map(|(l, w)| (ProjectivePoint::from_line(l), w)),
        )
        .expect("distinct lines");
        let pts = MultisetWeights::unit_points(s.iter()).expect("distinct points");
        match weighted_incidence_check(f, &pts, &lines) {
            Ok(r) => {
                violations += usize::from(!r.holds);
                identity_failures += usize::from(r.incidences != isosceles_count(&s));
            }
            Err(_) => violations += 1,
        }
    }
    out.push(CheckRecord::equal(
        "incidence.weighted_bound.bisectors",
        q,
        0,
        violations,
    ));
    out.push(CheckRecord::equal(
        "incidence.isosceles_identity",
        q,
        0,
        identity_failures,
    ));
    out.extend(incidence_spectrum_records(f));
    out
}
