//! The projective plane over F_q: its point/line incidence graph and a
//! weighted point/line incidence bound.

use std::collections::BTreeMap;
use std::fmt;

use crate::field::{FieldElement, PrimeField};
use crate::plane::{Line, Point};

use super::{
    eigenvalues_symmetric, second_eigenvalue, LabeledGraph, SpectralError, DEFAULT_TOLERANCE, EIGENVALUE_TOLERANCE,
};

/// Largest modulus for which the incidence graph (order `q² + q + 1`) is built.
pub const INCIDENCE_GRAPH_MAX_Q: u32 = 31;

/// `[a : b : c]` scaled so that its last nonzero coordinate is 1. Used both
/// for points and, via their coefficient vectors, for lines.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjectivePoint {
    coords: [FieldElement; 3],
}

impl ProjectivePoint {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement) -> Result<Self, SpectralError> {
        let coords = [a, b, c];
        let pivot = coords
            .iter()
            .rev()
            .find(|v| !v.is_zero())
            .ok_or_else(|| SpectralError::InvalidInput("[0 : 0 : 0] is not a projective point".into()))?;
        let scale = pivot.inverse().expect("pivot is nonzero");
        Ok(Self {
            coords: coords.map(|v| v * scale),
        })
    }

    /// The affine point `(x, y)` as `[x : y : 1]`.
    pub fn from_affine(p: &Point) -> Self {
        let one = FieldElement::from_raw(1, p.x.modulus());
        Self {
            coords: [p.x, p.y, one],
        }
    }

    /// The line `ax + by + c = 0` as `[a : b : c]`.
    pub fn from_line(l: &Line) -> Self {
        let (a, b, c) = l.coefficients();
        Self::new(a, b, c).expect("a line has a nonzero normal")
    }

    pub fn coords(&self) -> [FieldElement; 3] {
        self.coords
    }

    /// Zero dot product, i.e. this point lies on the line `other`.
    pub fn is_incident(&self, other: &ProjectivePoint) -> bool {
        let [a, b, c] = self.coords;
        let [x, y, z] = other.coords;
        (a * x + b * y + c * z).is_zero()
    }
}

impl fmt::Debug for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.coords;
        write!(f, "[{a}:{b}:{c}]")
    }
}

/// All `q² + q + 1` points of the projective plane, sorted.
pub fn projective_points(field: &PrimeField) -> Vec<ProjectivePoint> {
    let (zero, one) = (field.zero(), field.one());
    let mut pts: Vec<ProjectivePoint> = Vec::new();
    for a in field.elements() {
        for b in field.elements() {
            pts.push(ProjectivePoint { coords: [a, b, one] });
        }
        pts.push(ProjectivePoint { coords: [a, one, zero] });
    }
    pts.push(ProjectivePoint {
        coords: [one, zero, zero],
    });
    pts.sort_unstable();
    pts
}

/// Points of the projective plane, adjacent when `ax + by + cz = 0`; a point
/// on its own polar line carries a loop.
pub fn incidence_graph(field: &PrimeField) -> Result<LabeledGraph<ProjectivePoint>, SpectralError> {
    if field.modulus() > INCIDENCE_GRAPH_MAX_Q {
        return Err(SpectralError::SizeGuard {
            what: "incidence graph",
            q: field.modulus(),
            max: INCIDENCE_GRAPH_MAX_Q,
        });
    }
    let pts = projective_points(field);
    let neighbours = pts
        .iter()
        .map(|u| (0..pts.len()).filter(|&j| u.is_incident(&pts[j])).collect())
        .collect();
    LabeledGraph::new(pts, neighbours)
}

#[derive(Debug, Clone, PartialEq)]
pub struct IncidenceSpectrumReport {
    pub order: usize,
    pub degree: Option<usize>,
    pub principal: f64,
    pub second: f64,
    /// Largest distance of a non-principal eigenvalue from `±√q`.
    pub max_deviation_from_sqrt_q: f64,
    pub spectrum: Vec<f64>,
    pub passed: bool,
}

/// Principal eigenvalue `q + 1`; every other eigenvalue within tolerance of `±√q`.
pub fn incidence_spectrum_check(field: &PrimeField) -> Result<IncidenceSpectrumReport, SpectralError> {
    let g = incidence_graph(field)?;
    let spectrum = eigenvalues_symmetric(&g.adjacency().to_symmetric()?, DEFAULT_TOLERANCE)?;
    let q = field.modulus() as f64;
    let principal = spectrum.last().copied().unwrap_or(0.0);
    let second = second_eigenvalue(&spectrum);
    let root = q.sqrt();
    let max_deviation_from_sqrt_q = spectrum[..spectrum.len() - 1]
        .iter()
        .map(|l| (l.abs() - root).abs())
        .fold(0.0, f64::max);
    let degree = g.regular_degree();
    Ok(IncidenceSpectrumReport {
        order: g.order(),
        degree,
        principal,
        second,
        max_deviation_from_sqrt_q,
        passed: degree == Some(field.modulus() as usize + 1)
            && (principal - (q + 1.0)).abs() <= EIGENVALUE_TOLERANCE
            && second <= root + EIGENVALUE_TOLERANCE
            && max_deviation_from_sqrt_q <= EIGENVALUE_TOLERANCE,
        spectrum,
    })
}

/// Positive integer weights on distinct projective points (or lines).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultisetWeights {
    entries: BTreeMap<ProjectivePoint, u64>,
}

impl MultisetWeights {
    pub fn new(entries: impl IntoIterator<Item = (ProjectivePoint, u64)>) -> Result<Self, SpectralError> {
        let mut map = BTreeMap::new();
        let mut modulus = None;
        for (pt, w) in entries {
            if w == 0 {
                return Err(SpectralError::InvalidInput(format!("zero weight on {pt:?}")));
            }
            let p = pt.coords[0].modulus();
            if *modulus.get_or_insert(p) != p {
                return Err(SpectralError::InvalidInput("weights over different fields".into()));
            }
            if map.insert(pt, w).is_some() {
                return Err(SpectralError::InvalidInput(format!("{pt:?} listed twice")));
            }
        }
        Ok(Self { entries: map })
    }

    /// Unit weights on the affine points `[x : y : 1]`.
    pub fn unit_points<'a>(points: impl IntoIterator<Item = &'a Point>) -> Result<Self, SpectralError> {
        Self::new(points.into_iter().map(|p| (ProjectivePoint::from_affine(p), 1)))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ProjectivePoint, u64)> {
        self.entries.iter().map(|(p, &w)| (p, w))
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn sum_of_squares(&self) -> u64 {
        self.entries.values().map(|w| w * w).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn modulus(&self) -> Option<u32> {
        self.entries.keys().next().map(|p| p.coords[0].modulus())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IncidenceReport {
    pub q: u32,
    /// `Σ w'(p) w(l) [p ∈ l]`.
    pub incidences: u64,
    pub point_total: u64,
    pub line_total: u64,
    pub point_squares: u64,
    pub line_squares: u64,
    /// `|P||L|/q + √(Σw'² · Σw² · q)`, for display.
    pub bound: f64,
    /// Decided in exact integer arithmetic.
    pub holds: bool,
}

/// `I(P, L) ≤ |P||L|/q + √(Σw'²)·√(Σw²)·√q` for weighted points and lines of
/// the projective plane over F_q.
pub fn weighted_incidence_check(
    field: &PrimeField,
    points: &MultisetWeights,
    lines: &MultisetWeights,
) -> Result<IncidenceReport, SpectralError> {
    let p = field.modulus();
    if [points.modulus(), lines.modulus()].iter().flatten().any(|&m| m != p) {
        return Err(SpectralError::InvalidInput("weights are over a different field".into()));
    }
    let mut incidences: u64 = 0;
    for (pt, wp) in points.iter() {
        for (l, wl) in lines.iter() {
            if pt.is_incident(l) {
                incidences += wp * wl;
            }
        }
    }
    let q = p as u128;
    let (pt_total, ln_total) = (points.total(), lines.total());
    let (pt_sq, ln_sq) = (points.sum_of_squares(), lines.sum_of_squares());
    let overflow = || SpectralError::InvalidInput("weights too large for exact comparison".into());

    // q·I − |P||L| ≤ 0, or (q·I − |P||L|)² ≤ q³ Σw'² Σw²
    let lhs = (q * incidences as u128) as i128 - (pt_total as u128 * ln_total as u128) as i128;
    let holds = if lhs <= 0 {
        true
    } else {
        let lhs = lhs as u128;
        let left = lhs.checked_mul(lhs).ok_or_else(overflow)?;
        let right = (q * q * q)
            .checked_mul(pt_sq as u128)
            .and_then(|v| v.checked_mul(ln_sq as u128))
            .ok_or_else(overflow)?;
        left <= right
    };
    let qf = p as f64;
    Ok(IncidenceReport {
        q: p,
        incidences,
        point_total: pt_total,
        line_total: ln_total,
        point_squares: pt_sq,
        line_squares: ln_sq,
        bound: pt_total as f64 * ln_total as f64 / qf + (pt_sq as f64 * ln_sq as f64 * qf).sqrt(),
        holds,
    })
}
