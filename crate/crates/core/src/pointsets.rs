//! Finite point sets in F_p²: constructions, a portable PRNG and the text
//! file format.
//!
//! File format (UTF-8):
//!
//! ```text
//! q 5
//! # comment
//! 0 0
//! 2 0
//! ```
//!
//! The header gives the modulus; every following non-empty, non-comment line
//! is `<x> <y>` with decimal coordinates in `[0, q)`. Duplicates are rejected.
//! Serialization emits points in lexicographic order.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::field::{FieldError, PrimeField};
use crate::plane::{all_points, Circle, Point};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PointSetError {
    #[error("infeasible construction: {0}")]
    Construction(String),
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("duplicate point {0}")]
    DuplicatePoint(Point),
    #[error("point {0} does not belong to the point set's field")]
    FieldMismatch(Point),
}

impl PointSetError {
    fn format(line: usize, message: impl Into<String>) -> Self {
        Self::Format {
            line,
            message: message.into(),
        }
    }
}

/// A duplicate-free subset of F_p², kept in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    field: PrimeField,
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(field: PrimeField, points: impl IntoIterator<Item = Point>) -> Result<Self, PointSetError> {
        let mut seen = BTreeSet::new();
        for pt in points {
            if pt.x.modulus() != field.modulus() {
                return Err(PointSetError::FieldMismatch(pt));
            }
            if !seen.insert(pt) {
                return Err(PointSetError::DuplicatePoint(pt));
            }
        }
        Ok(Self {
            field,
            points: seen.into_iter().collect(),
        })
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.points.iter()
    }

    pub fn contains(&self, pt: &Point) -> bool {
        self.points.binary_search(pt).is_ok()
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a Point;
    type IntoIter = std::slice::Iter<'a, Point>;
    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

/// SplitMix64. The sequence is fixed so that seeds reproduce across
/// platforms and languages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prng {
    state: u64,
}

impl Prng {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, bound)`, rejecting draws at or above the largest
    /// multiple of `bound` that fits in 64 bits.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        // 2^64 mod bound
        let excess = (u64::MAX % bound + 1) % bound;
        let limit = 0u64.wrapping_sub(excess);
        loop {
            let z = self.next_u64();
            if excess == 0 || z < limit {
                return z % bound;
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Construction {
    FullPlane,
    /// `n` distinct points; each draw is an index `i ∈ [0, q²)` mapped to `(i / q, i mod q)`.
    Random {
        n: usize,
        seed: u64,
    },
    /// The vertical lines `x = 0, ..., k − 1`.
    ParallelLines {
        k: usize,
    },
    /// Lines `{(t, i·t + j)}` for `j = 0, ..., k − 1`, where `i² = −1`.
    IsotropicLines {
        k: usize,
    },
    Circle {
        center: (u32, u32),
        radius: u32,
    },
    /// The x-axis.
    SingleLine,
}

pub fn construct(field: &PrimeField, kind: Construction) -> Result<PointSet, PointSetError> {
    let q = field.modulus() as usize;
    let infeasible = |msg: String| Err(PointSetError::Construction(msg));
    let points: Vec<Point> = match kind {
        Construction::FullPlane => all_points(field).collect(),
        Construction::Random { n, seed } => {
            if n > q * q {
                return infeasible(format!("n = {n} exceeds q² = {}", q * q));
            }
            let mut rng = Prng::new(seed);
            let mut chosen = BTreeSet::new();
            let mut out = Vec::with_capacity(n);
            while out.len() < n {
                let idx = rng.below((q * q) as u64);
                if chosen.insert(idx) {
                    out.push(Point::from_coords(
                        field,
                        (idx / q as u64) as i64,
                        (idx % q as u64) as i64,
                    ));
                }
            }
            out
        }
        Construction::ParallelLines { k } => {
            if k > q {
                return infeasible(format!("k = {k} parallel lines exceed q = {q}"));
            }
            (0..k as i64)
                .flat_map(|x| field.elements().map(move |y| (x, y)))
                .map(|(x, y)| Point::new(field.elem(x), y))
                .collect()
        }
        Construction::IsotropicLines { k } => {
            let Some(i) = field.sqrt_minus_one() else {
                return infeasible(format!("q = {q} ≡ 3 mod 4 has no isotropic lines"));
            };
            if k > q - 1 {
                return infeasible(format!("k = {k} isotropic lines exceed q − 1 = {}", q - 1));
            }
            (0..k as i64)
                .flat_map(|j| field.elements().map(move |t| (j, t)))
                .map(|(j, t)| Point::new(t, i * t + field.elem(j)))
                .collect()
        }
        Construction::Circle { center, radius } => {
            if center.0 as usize >= q || center.1 as usize >= q || radius as usize >= q {
                return infeasible(format!("circle parameters must lie in [0, {q})"));
            }
            let c = Point::from_coords(field, center.0 as i64, center.1 as i64);
            Circle::new(c, field.elem(radius as i64)).points()
        }
        Construction::SingleLine => field.elements().map(|x| Point::new(x, field.zero())).collect(),
    };
    PointSet::new(*field, points)
}

pub fn serialize_pointset(set: &PointSet) -> String {
    let mut out = format!("q {}\n", set.field.modulus());
    for pt in &set.points {
        writeln!(out, "{} {}", pt.x, pt.y).expect("writing to a String");
    }
    out
}

pub fn parse_pointset(text: &str) -> Result<PointSet, PointSetError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| PointSetError::format(1, "missing `q <modulus>` header"))?;
    let modulus = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["q", m] => m
            .parse::<u64>()
            .map_err(|_| PointSetError::format(header_line, format!("bad modulus `{m}`")))?,
        _ => return Err(PointSetError::format(header_line, "expected `q <modulus>`")),
    };
    let field = PrimeField::new(modulus).map_err(|e: FieldError| PointSetError::format(header_line, e.to_string()))?;

    let mut seen = BTreeSet::new();
    for (no, line) in lines {
        let coords: Vec<&str> = line.split_whitespace().collect();
        let [x, y] = coords.as_slice() else {
            return Err(PointSetError::format(no, "expected `<x> <y>`"));
        };
        let parse = |s: &str| -> Result<u32, PointSetError> {
            let v: u32 = s
                .parse()
                .map_err(|_| PointSetError::format(no, format!("bad coordinate `{s}`")))?;
            if v >= field.modulus() {
                return Err(PointSetError::format(
                    no,
                    format!("coordinate {v} out of range [0, {modulus})"),
                ));
            }
            Ok(v)
        };
        let pt = Point::from_coords(&field, parse(x)? as i64, parse(y)? as i64);
        if !seen.insert(pt) {
            return Err(PointSetError::format(no, format!("duplicate point {pt}")));
        }
    }
    PointSet::new(field, seen)
}
