//! Graphs stored as sorted neighbour lists, the bisector graph on pairs at a
//! fixed distance, and the expander mixing lemma.

use crate::field::{FieldElement, PrimeField};
use crate::motions::enumerate_reflections;
use crate::plane::{all_points, Circle, Point};

use super::{eigenvalues_symmetric, IntMatrix, SpectralError, DEFAULT_TOLERANCE, EIGENVALUE_TOLERANCE};

/// Largest modulus for which the bisector graph is built (order `q²(q ± 1)`).
pub const BISECTOR_GRAPH_MAX_Q: u32 = 13;

/// Simple symmetric graph; a vertex listed among its own neighbours carries a loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph<L> {
    labels: Vec<L>,
    neighbours: Vec<Vec<usize>>,
}

impl<L> LabeledGraph<L> {
    /// Neighbour lists are sorted and deduplicated; symmetry is checked.
    pub fn new(labels: Vec<L>, mut neighbours: Vec<Vec<usize>>) -> Result<Self, SpectralError> {
        let n = labels.len();
        if neighbours.len() != n {
            return Err(SpectralError::InvalidInput(
                "one neighbour list per vertex required".into(),
            ));
        }
        for list in &mut neighbours {
            list.sort_unstable();
            list.dedup();
            if list.last().is_some_and(|&j| j >= n) {
                return Err(SpectralError::InvalidInput("neighbour index out of range".into()));
            }
        }
        let graph = Self { labels, neighbours };
        for i in 0..n {
            if graph.neighbours[i].iter().any(|&j| !graph.has_edge(j, i)) {
                return Err(SpectralError::InvalidInput("adjacency is not symmetric".into()));
            }
        }
        Ok(graph)
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn neighbours(&self, i: usize) -> &[usize] {
        &self.neighbours[i]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.neighbours[i].binary_search(&j).is_ok()
    }

    pub fn has_loop(&self, i: usize) -> bool {
        self.has_edge(i, i)
    }

    /// Row sum of the adjacency matrix; a loop contributes 1.
    pub fn degree(&self, i: usize) -> usize {
        self.neighbours[i].len()
    }

    /// The common degree, if every vertex has the same one.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.neighbours.first().map_or(0, Vec::len);
        self.neighbours.iter().all(|l| l.len() == d).then_some(d)
    }

    pub fn adjacency(&self) -> IntMatrix {
        let mut a = IntMatrix::zeros(self.order());
        for (i, list) in self.neighbours.iter().enumerate() {
            for &j in list {
                a.set(i, j, 1);
            }
        }
        a
    }

    /// Row `i` of `A²`: the number of walks of length two from `i` to each vertex.
    pub fn walks_of_length_two(&self, i: usize) -> Vec<i64> {
        let mut row = vec![0; self.order()];
        for &v in &self.neighbours[i] {
            for &w in &self.neighbours[v] {
                row[w] += 1;
            }
        }
        row
    }

    /// Ordered pairs `(u, v) ∈ S × T` that are adjacent; loops count when `u = v`.
    pub fn edges_between(&self, s: &[usize], t: &[usize]) -> u64 {
        let mut in_t = vec![false; self.order()];
        for &v in t {
            in_t[v] = true;
        }
        s.iter()
            .map(|&u| self.neighbours[u].iter().filter(|&&v| in_t[v]).count() as u64)
            .sum()
    }
}

impl<L: Ord> LabeledGraph<L> {
    /// Index of a label, assuming labels are sorted.
    pub fn index_of(&self, label: &L) -> Option<usize> {
        self.labels.binary_search(label).ok()
    }
}

/// Vertices are the ordered pairs `(x, y)` of F_q² with `‖x − y‖ = d`; two
/// pairs are adjacent when some reflection maps one onto the other. The
/// reflection in the line through `x` and `y` fixes the pair, so every vertex
/// carries exactly one loop.
#[derive(Debug, Clone)]
pub struct BisectorGraph {
    field: PrimeField,
    distance: FieldElement,
    graph: LabeledGraph<(Point, Point)>,
}

pub fn bisector_graph(field: &PrimeField, d: FieldElement) -> Result<BisectorGraph, SpectralError> {
    if d.is_zero() {
        return Err(SpectralError::InvalidDistance);
    }
    if field.modulus() > BISECTOR_GRAPH_MAX_Q {
        return Err(SpectralError::SizeGuard {
            what: "bisector graph",
            q: field.modulus(),
            max: BISECTOR_GRAPH_MAX_Q,
        });
    }
    let mut labels: Vec<(Point, Point)> = all_points(field)
        .flat_map(|x| Circle::new(x, d).points().into_iter().map(move |y| (x, y)))
        .collect();
    labels.sort_unstable();
    let reflections = enumerate_reflections(field);
    let neighbours = labels
        .iter()
        .map(|(x, y)| {
            reflections
                .iter()
                .map(|s| {
                    let image = (s.apply(x), s.apply(y));
                    labels.binary_search(&image).expect("reflections preserve distance")
                })
                .collect()
        })
        .collect();
    Ok(BisectorGraph {
        field: *field,
        distance: d,
        graph: LabeledGraph::new(labels, neighbours)?,
    })
}

impl BisectorGraph {
    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn distance(&self) -> FieldElement {
        self.distance
    }

    pub fn graph(&self) -> &LabeledGraph<(Point, Point)> {
        &self.graph
    }

    /// `q(q − 1)` for q ≡ 1 (mod 4), `q(q + 1)` otherwise.
    pub fn expected_degree(&self) -> usize {
        let q = self.field.modulus() as usize;
        if self.field.has_isotropic_directions() {
            q * (q - 1)
        } else {
            q * (q + 1)
        }
    }

    /// Coefficients `(j, i)` with `A² = j·J + i·I + E`.
    pub fn decomposition_coefficients(&self) -> (i64, i64) {
        let q = self.field.modulus() as i64;
        if self.field.has_isotropic_directions() {
            (q - 1, (q - 1) * (q - 1))
        } else {
            (q + 1, (q - 1) * (q + 1))
        }
    }

    /// Row `i` of the residual `E = A² − j·J − i·I`.
    pub fn residual_row(&self, i: usize) -> Vec<i64> {
        let (j_coef, i_coef) = self.decomposition_coefficients();
        let mut row = self.graph.walks_of_length_two(i);
        for v in row.iter_mut() {
            *v -= j_coef;
        }
        row[i] -= i_coef;
        row
    }

    /// The full residual matrix `E`.
    pub fn a_squared_residual(&self) -> IntMatrix {
        let n = self.graph.order();
        let mut e = IntMatrix::zeros(n);
        for i in 0..n {
            for (j, v) in self.residual_row(i).into_iter().enumerate() {
                e.set(i, j, v);
            }
        }
        e
    }
}

/// The entry of `E` predicted by the reflection-pair count for vertices
/// `(x, y)` and `(z, w)`: nonzero only when one pair is a translate of the other.
pub fn expected_residual_entry(field: &PrimeField, u: (Point, Point), v: (Point, Point)) -> i64 {
    let q = field.modulus() as i64;
    let shift = v.0 - u.0;
    if u == v || v.1 - u.1 != shift {
        return 0;
    }
    match (field.has_isotropic_directions(), shift.norm().is_zero()) {
        (true, false) => 1,
        (true, true) => 1 - q,
        (false, _) => -1,
    }
}

/// Absolute row sum of `E`: `3(q − 1)²` for q ≡ 1 (mod 4), `(q − 1)(q + 1)` otherwise.
pub fn expected_residual_row_sum(field: &PrimeField) -> i64 {
    let q = field.modulus() as i64;
    if field.has_isotropic_directions() {
        3 * (q - 1) * (q - 1)
    } else {
        (q - 1) * (q + 1)
    }
}

/// Largest `|λ|` after removing one copy of the top eigenvalue.
pub fn second_eigenvalue(spectrum: &[f64]) -> f64 {
    match spectrum.split_last() {
        Some((_, rest)) => rest.iter().fold(0.0, |m, l| m.max(l.abs())),
        None => 0.0,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SecondEigenvalueReport {
    pub degree: usize,
    pub principal: f64,
    pub second: f64,
    pub bound: f64,
    pub spectrum: Vec<f64>,
    pub passed: bool,
}

/// Checks that the top eigenvalue equals the degree and every other
/// eigenvalue has magnitude at most `2(q − 1)`.
pub fn second_eigenvalue_check(g: &BisectorGraph) -> Result<SecondEigenvalueReport, SpectralError> {
    let degree = g
        .graph
        .regular_degree()
        .ok_or_else(|| SpectralError::InvalidInput("graph is not regular".into()))?;
    let spectrum = eigenvalues_symmetric(&g.graph.adjacency().to_symmetric()?, DEFAULT_TOLERANCE)?;
    let principal = spectrum.last().copied().unwrap_or(0.0);
    let second = second_eigenvalue(&spectrum);
    let bound = 2.0 * (g.field.modulus() as f64 - 1.0);
    Ok(SecondEigenvalueReport {
        degree,
        principal,
        second,
        bound,
        passed: (principal - degree as f64).abs() <= EIGENVALUE_TOLERANCE && second <= bound + EIGENVALUE_TOLERANCE,
        spectrum,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MixingReport {
    pub edges: u64,
    pub expected: f64,
    pub deviation: f64,
    pub bound: f64,
    pub holds: bool,
}

/// `|E(S, T) − δ|S||T|/n| ≤ λ √(|S||T|)` for a `δ`-regular graph.
pub fn expander_mixing_check<L>(
    g: &LabeledGraph<L>,
    s: &[usize],
    t: &[usize],
    lambda: f64,
) -> Result<MixingReport, SpectralError> {
    let degree = g
        .regular_degree()
        .ok_or_else(|| SpectralError::InvalidInput("graph is not regular".into()))?;
    let n = g.order();
    if s.iter().chain(t).any(|&v| v >= n) {
        return Err(SpectralError::InvalidInput("vertex index out of range".into()));
    }
    let edges = g.edges_between(s, t);
    let size = (s.len() * t.len()) as f64;
    let expected = if n == 0 { 0.0 } else { degree as f64 * size / n as f64 };
    let deviation = (edges as f64 - expected).abs();
    let bound = lambda * size.sqrt();
    Ok(MixingReport {
        edges,
        expected,
        deviation,
        bound,
        holds: deviation <= bound + EIGENVALUE_TOLERANCE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::motions::{count_reflection_pairs_mapping, enumerate_reflections};
    use crate::plane::bisector;
    use crate::pointsets::{construct, Construction};
    use crate::stats::q_prime_by_distance;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn sizes_and_regularity() {
        for (p, d, order, degree) in [
            (3u64, 1i64, 36usize, 12usize),
            (5, 1, 100, 20),
            (5, 2, 100, 20),
            (7, 3, 392, 56),
        ] {
            let field = f(p);
            let g = bisector_graph(&field, field.elem(d)).unwrap();
            assert_eq!(g.graph().order(), order);
            assert_eq!(g.graph().regular_degree(), Some(degree));
            assert_eq!(g.expected_degree(), degree);
            assert!((0..order).all(|i| g.graph().has_loop(i)));
        }
    }

    #[test]
    fn guards() {
        let f5 = f(5);
        assert_eq!(
            bisector_graph(&f5, f5.zero()).unwrap_err(),
            SpectralError::InvalidDistance
        );
        let f17 = f(17);
        assert!(matches!(
            bisector_graph(&f17, f17.one()),
            Err(SpectralError::SizeGuard { q: 17, .. })
        ));
    }

    #[test]
    fn only_the_pair_line_reflection_fixes_a_vertex() {
        let field = f(5);
        let g = bisector_graph(&field, field.elem(2)).unwrap();
        let reflections = enumerate_reflections(&field);
        for &(x, y) in g.graph().labels().iter().step_by(7) {
            let fixing = reflections
                .iter()
                .filter(|s| s.apply(&x) == x && s.apply(&y) == y)
                .count();
            assert_eq!(fixing, 1);
        }
    }

    #[test]
    fn adjacency_matches_equal_bisectors_off_the_diagonal_pairs() {
        for p in [3u64, 5] {
            let field = f(p);
            let g = bisector_graph(&field, field.one()).unwrap();
            let labels = g.graph().labels();
            for (i, &(x, y)) in labels.iter().enumerate().step_by(3) {
                for (j, &(z, w)) in labels.iter().enumerate() {
                    if x != z && y != w {
                        let same = bisector(&x, &z).unwrap() == bisector(&y, &w).unwrap();
                        assert_eq!(g.graph().has_edge(i, j), same, "p={p} {x:?}{y:?} {z:?}{w:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn residual_matches_case_table_at_three() {
        let field = f(3);
        let g = bisector_graph(&field, field.one()).unwrap();
        let e = g.a_squared_residual();
        assert!(e.is_symmetric());
        let labels = g.graph().labels();
        for i in 0..labels.len() {
            for j in 0..labels.len() {
                assert_eq!(e.get(i, j), expected_residual_entry(&field, labels[i], labels[j]));
            }
        }
        assert!(e.row_abs_sums().iter().all(|&s| s == 8));
    }

    #[test]
    fn residual_rows_at_five() {
        let field = f(5);
        for d in [1, 2] {
            let g = bisector_graph(&field, field.elem(d)).unwrap();
            let labels = g.graph().labels();
            for i in (0..labels.len()).step_by(9) {
                let row = g.residual_row(i);
                for (j, &v) in row.iter().enumerate() {
                    assert_eq!(v, expected_residual_entry(&field, labels[i], labels[j]));
                }
                assert_eq!(row.iter().map(|v| v.abs()).sum::<i64>(), 48);
            }
        }
    }

    #[test]
    fn walk_counts_match_reflection_pair_counts() {
        let field = f(5);
        let g = bisector_graph(&field, field.one()).unwrap();
        let labels = g.graph().labels();
        for i in (0..labels.len()).step_by(17) {
            let row = g.graph().walks_of_length_two(i);
            for j in (0..labels.len()).step_by(5) {
                if i == j {
                    continue;
                }
                let (x, y) = labels[i];
                let (z, w) = labels[j];
                let pairs = count_reflection_pairs_mapping(x, y, z, w).unwrap() as i64;
                assert_eq!(row[j], pairs);
            }
        }
    }

    #[test]
    fn spectrum_bounds() {
        for (p, d) in [(3u64, 1i64), (5, 1), (5, 3)] {
            let field = f(p);
            let g = bisector_graph(&field, field.elem(d)).unwrap();
            let report = second_eigenvalue_check(&g).unwrap();
            assert!(report.passed, "{p}: {report:?}");
            assert_eq!(report.degree, g.expected_degree());
        }
    }

    #[test]
    fn mixing_examples() {
        let k3 = LabeledGraph::new(vec![0, 1, 2], vec![vec![1, 2], vec![0, 2], vec![0, 1]]).unwrap();
        let all = [0, 1, 2];
        let r = expander_mixing_check(&k3, &all, &all, 1.0).unwrap();
        assert_eq!(r.edges, 6);
        assert!(r.deviation.abs() < 1e-12 && r.holds);
        let r = expander_mixing_check(&k3, &[], &all, 1.0).unwrap();
        assert_eq!((r.edges, r.bound), (0, 0.0));
        assert!(r.holds);
    }

    #[test]
    fn mixing_counts_q_prime() {
        let field = f(3);
        let g = bisector_graph(&field, field.one()).unwrap();
        let lambda = second_eigenvalue_check(&g).unwrap().second;
        for seed in 0..5 {
            let set = construct(&field, Construction::Random { n: 6, seed }).unwrap();
            let pi: Vec<usize> = set
                .iter()
                .flat_map(|x| set.iter().map(move |y| (*x, *y)))
                .filter_map(|pair| g.graph().index_of(&pair))
                .collect();
            let r = expander_mixing_check(g.graph(), &pi, &pi, lambda).unwrap();
            assert!(r.holds);
            assert!(r.edges >= q_prime_by_distance(&set)[1]);
        }
    }

    #[test]
    fn rejects_asymmetric_lists() {
        assert!(LabeledGraph::new(vec![0, 1], vec![vec![1], vec![]]).is_err());
        assert!(LabeledGraph::new(vec![0], vec![vec![3]]).is_err());
    }
}
