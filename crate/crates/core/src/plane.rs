//! Points, lines and circles of the affine plane F_p².
//!
//! Distances are the quadratic form `x₁² + x₂²`, which may vanish on
//! nonzero vectors when p ≡ 1 (mod 4). A line whose direction has zero norm
//! is called isotropic.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use thiserror::Error;

use crate::field::{FieldElement, PrimeField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("bisector of a point with itself is undefined")]
    DegeneratePair,
    #[error("line coefficients a and b are both zero")]
    DegenerateLine,
    #[error("direction vector is zero")]
    ZeroDirection,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: FieldElement,
    pub y: FieldElement,
}

impl Point {
    pub fn new(x: FieldElement, y: FieldElement) -> Self {
        debug_assert_eq!(x.modulus(), y.modulus());
        Self { x, y }
    }

    /// Builds a point from integer coordinates, reducing them into `field`.
    pub fn from_coords(field: &PrimeField, x: i64, y: i64) -> Self {
        Self::new(field.elem(x), field.elem(y))
    }

    pub fn origin(field: &PrimeField) -> Self {
        Self::new(field.zero(), field.zero())
    }

    #[inline]
    pub fn norm(&self) -> FieldElement {
        self.x * self.x + self.y * self.y
    }

    #[inline]
    pub fn dot(&self, other: &Point) -> FieldElement {
        self.x * other.x + self.y * other.y
    }

    #[inline]
    pub fn scale(&self, k: FieldElement) -> Point {
        Point::new(k * self.x, k * self.y)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// `‖self − other‖`.
    #[inline]
    pub fn distance(&self, other: &Point) -> FieldElement {
        (*self - *other).norm()
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Add for Point {
    type Output = Point;
    #[inline]
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    #[inline]
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Point {
    type Output = Point;
    #[inline]
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// `dot` as a free function.
pub fn dot(x: &Point, y: &Point) -> FieldElement {
    x.dot(y)
}

/// `‖x‖ = x₁² + x₂²`.
pub fn norm(x: &Point) -> FieldElement {
    x.norm()
}

/// Every point of F_p² in lexicographic order.
pub fn all_points(field: &PrimeField) -> impl Iterator<Item = Point> + '_ {
    field
        .elements()
        .flat_map(move |x| field.elements().map(move |y| Point::new(x, y)))
}

/// The locus `a·x + b·y + c = 0`, stored with the first nonzero of `(a, b)`
/// scaled to 1. Equal values therefore describe equal point sets.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    a: FieldElement,
    b: FieldElement,
    c: FieldElement,
}

impl Line {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement) -> Result<Self, GeometryError> {
        let lead = if !a.is_zero() {
            a
        } else if !b.is_zero() {
            b
        } else {
            return Err(GeometryError::DegenerateLine);
        };
        let s = lead.inverse().expect("lead coefficient is nonzero");
        Ok(Self {
            a: a * s,
            b: b * s,
            c: c * s,
        })
    }

    /// The line through `u` with direction `d`.
    pub fn through(u: Point, d: Point) -> Result<Self, GeometryError> {
        if d.is_zero() {
            return Err(GeometryError::ZeroDirection);
        }
        // normal n = (-d₂, d₁); locus n·x = n·u
        let n = Point::new(-d.y, d.x);
        Self::new(n.x, n.y, -n.dot(&u)).map_err(|_| GeometryError::ZeroDirection)
    }

    /// The line through two distinct points.
    pub fn joining(u: Point, v: Point) -> Result<Self, GeometryError> {
        if u == v {
            return Err(GeometryError::DegeneratePair);
        }
        Self::through(u, v - u)
    }

    pub fn coefficients(&self) -> (FieldElement, FieldElement, FieldElement) {
        (self.a, self.b, self.c)
    }

    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.a.modulus() as u64).expect("line built over a valid field")
    }

    /// A direction vector, `(-b, a)`.
    pub fn direction(&self) -> Point {
        Point::new(-self.b, self.a)
    }

    #[inline]
    pub fn contains(&self, u: &Point) -> bool {
        (self.a * u.x + self.b * u.y + self.c).is_zero()
    }

    pub fn is_isotropic(&self) -> bool {
        self.direction().norm().is_zero()
    }

    /// Some point on the line.
    pub fn base_point(&self) -> Point {
        let zero = FieldElement::from_raw(0, self.a.modulus());
        if !self.a.is_zero() {
            // a = 1 after canonicalisation
            Point::new(-self.c, zero)
        } else {
            Point::new(zero, -self.c)
        }
    }

    /// The `p` points of the line, ordered by parameter `t` in `base + t·d`.
    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        let base = self.base_point();
        let d = self.direction();
        let p = self.a.modulus();
        (0..p).map(move |t| base + d.scale(FieldElement::from_raw(t, p)))
    }

    pub fn is_parallel_to(&self, other: &Line) -> bool {
        self.a == other.a && self.b == other.b
    }
}

impl fmt::Debug for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}x + {}y + {} = 0]", self.a, self.b, self.c)
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// The perpendicular bisector `{c : ‖c − a‖ = ‖c − b‖}`.
///
/// Expanding the norms gives `2(b − a)·c + ‖a‖ − ‖b‖ = 0`. The pair may have
/// zero distance, in which case the line is isotropic.
pub fn bisector(a: &Point, b: &Point) -> Result<Line, GeometryError> {
    if a == b {
        return Err(GeometryError::DegeneratePair);
    }
    let diff = *b - *a;
    Line::new(diff.x + diff.x, diff.y + diff.y, a.norm() - b.norm())
}

/// The `p + 1` lines through `u`, sorted.
pub fn lines_through(u: &Point, field: &PrimeField) -> Vec<Line> {
    let mut lines: Vec<Line> = directions(field)
        .map(|d| Line::through(*u, d).expect("directions are nonzero"))
        .collect();
    lines.sort();
    lines
}

/// One representative per projective direction: `(1, m)` for every `m`, then `(0, 1)`.
pub fn directions(field: &PrimeField) -> impl Iterator<Item = Point> + '_ {
    field
        .elements()
        .map(move |m| Point::new(field.one(), m))
        .chain(std::iter::once(Point::new(field.zero(), field.one())))
}

/// All `p² + p` affine lines, sorted.
pub fn all_lines(field: &PrimeField) -> Vec<Line> {
    let mut lines = Vec::with_capacity((field.modulus() as usize + 1) * field.modulus() as usize);
    // a = 1: x + b·y + c = 0
    for b in field.elements() {
        for c in field.elements() {
            lines.push(Line::new(field.one(), b, c).unwrap());
        }
    }
    // a = 0, b = 1: y + c = 0
    for c in field.elements() {
        lines.push(Line::new(field.zero(), field.one(), c).unwrap());
    }
    lines.sort();
    lines
}

/// `C_r(u) = {x : ‖x − u‖ = r}`; the radius is the norm value, never a square root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Circle {
    pub center: Point,
    pub radius: FieldElement,
}

impl Circle {
    pub fn new(center: Point, radius: FieldElement) -> Self {
        Self { center, radius }
    }

    pub fn contains(&self, x: &Point) -> bool {
        x.distance(&self.center) == self.radius
    }

    /// Exact enumeration, sorted. Solves `y² = r − x²` column by column.
    pub fn points(&self) -> Vec<Point> {
        let p = self.radius.modulus();
        let mut out = Vec::new();
        for t in 0..p {
            let dx = FieldElement::from_raw(t, p);
            if let Some(dy) = (self.radius - dx * dx).sqrt() {
                let u = self.center;
                out.push(Point::new(u.x + dx, u.y + dy));
                if !dy.is_zero() {
                    out.push(Point::new(u.x + dx, u.y - dy));
                }
            }
        }
        out.sort();
        out
    }
}

pub fn circle_points(circle: &Circle) -> Vec<Point> {
    circle.points()
}

/// Points common to `line` and `circle`, sorted.
pub fn line_circle_intersection(line: &Line, circle: &Circle) -> Vec<Point> {
    let mut pts: Vec<Point> = line.points().filter(|x| circle.contains(x)).collect();
    pts.sort();
    pts
}
