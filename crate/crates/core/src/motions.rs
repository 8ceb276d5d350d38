//! Rigid motions of F_p²: maps `v ↦ M·v + t` with `M` a rotation matrix
//! `(a −b; b a)` or a reflection matrix `(a b; b −a)`, `a² + b² = 1`.
//!
//! Motions are always stored in this `(matrix, translation)` normal form; the
//! "rotation about u" and "reflection about u" forms are constructors. The
//! kind tag is a pure function of the normal form.

use std::fmt;
use std::ops::Mul;

use thiserror::Error;

use crate::field::{FieldElement, PrimeField};
use crate::plane::{self, Circle, Line, Point};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MotionError {
    #[error("matrix is not a rotation or reflection matrix of the required shape")]
    InvalidMatrix,
    #[error("isotropic lines are not fixed by any reflection")]
    IsotropicLine,
    #[error("points are not on a common circle of nonzero radius")]
    InvalidCirclePair,
    #[error("quadruple does not satisfy (x,y) != (z,w) and |x-y| = |z-w| != 0")]
    InvalidQuadruple,
    #[error("operation is not defined for motions of kind {0:?}")]
    InvalidKind(MotionKind),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix2 {
    pub m11: FieldElement,
    pub m12: FieldElement,
    pub m21: FieldElement,
    pub m22: FieldElement,
}

impl Matrix2 {
    pub fn new(m11: FieldElement, m12: FieldElement, m21: FieldElement, m22: FieldElement) -> Self {
        Self { m11, m12, m21, m22 }
    }

    pub fn identity(field: &PrimeField) -> Self {
        Self::new(field.one(), field.zero(), field.zero(), field.one())
    }

    /// `(a −b; b a)`; requires `a² + b² = 1`.
    pub fn rotation(a: FieldElement, b: FieldElement) -> Result<Self, MotionError> {
        if (a * a + b * b).value() != 1 {
            return Err(MotionError::InvalidMatrix);
        }
        Ok(Self::new(a, -b, b, a))
    }

    /// `(a b; b −a)`; requires `a² + b² = 1`.
    pub fn reflection(a: FieldElement, b: FieldElement) -> Result<Self, MotionError> {
        if (a * a + b * b).value() != 1 {
            return Err(MotionError::InvalidMatrix);
        }
        Ok(Self::new(a, b, b, -a))
    }

    pub fn is_identity(&self) -> bool {
        self.m11.value() == 1 && self.m22.value() == 1 && self.m12.is_zero() && self.m21.is_zero()
    }

    fn unit_first_column(&self) -> bool {
        (self.m11 * self.m11 + self.m21 * self.m21).value() == 1
    }

    pub fn is_rotation(&self) -> bool {
        self.m11 == self.m22 && self.m12 == -self.m21 && self.unit_first_column()
    }

    pub fn is_reflection(&self) -> bool {
        self.m11 == -self.m22 && self.m12 == self.m21 && self.unit_first_column()
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.m11, self.m21, self.m12, self.m22)
    }

    pub fn det(&self) -> FieldElement {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    /// `MᵀM = I`.
    pub fn is_unitary(&self) -> bool {
        (self.transpose() * *self).is_identity()
    }

    pub fn apply(&self, v: &Point) -> Point {
        Point::new(self.m11 * v.x + self.m12 * v.y, self.m21 * v.x + self.m22 * v.y)
    }
}

impl Mul for Matrix2 {
    type Output = Matrix2;
    fn mul(self, o: Matrix2) -> Matrix2 {
        Matrix2::new(
            self.m11 * o.m11 + self.m12 * o.m21,
            self.m11 * o.m12 + self.m12 * o.m22,
            self.m21 * o.m11 + self.m22 * o.m21,
            self.m21 * o.m12 + self.m22 * o.m22,
        )
    }
}

impl fmt::Debug for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.m11, self.m12, self.m21, self.m22)
    }
}

/// Classification of a rigid motion.
///
/// `GlideReflection` covers reflection-shaped maps with no fixed point; these
/// arise when a reflection is composed with a rotation or translation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MotionKind {
    Identity,
    Rotation,
    Reflection,
    GlideReflection,
    Translation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FixedSet {
    All,
    Empty,
    Point(Point),
    Line(Line),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RigidMotion {
    matrix: Matrix2,
    translation: Point,
    kind: MotionKind,
}

impl RigidMotion {
    /// Wraps `v ↦ M·v + t` and classifies it.
    pub fn from_parts(matrix: Matrix2, translation: Point) -> Result<Self, MotionError> {
        let kind = if matrix.is_identity() {
            if translation.is_zero() {
                MotionKind::Identity
            } else {
                MotionKind::Translation
            }
        } else if matrix.is_rotation() {
            MotionKind::Rotation
        } else if matrix.is_reflection() {
            if reflection_axis(&matrix, &translation).is_some() {
                MotionKind::Reflection
            } else {
                MotionKind::GlideReflection
            }
        } else {
            return Err(MotionError::InvalidMatrix);
        };
        Ok(Self {
            matrix,
            translation,
            kind,
        })
    }

    pub fn identity(field: &PrimeField) -> Self {
        Self::from_parts(Matrix2::identity(field), Point::origin(field)).unwrap()
    }

    pub fn translation(t: Point) -> Self {
        let p = t.x.modulus();
        let (zero, one) = (FieldElement::from_raw(0, p), FieldElement::from_raw(1, p));
        Self::from_parts(Matrix2::new(one, zero, zero, one), t).unwrap()
    }

    /// `v ↦ R(v − u) + u`.
    pub fn rotation_about(u: Point, rotation: Matrix2) -> Result<Self, MotionError> {
        if !rotation.is_rotation() {
            return Err(MotionError::InvalidMatrix);
        }
        Self::from_parts(rotation, u - rotation.apply(&u))
    }

    /// `v ↦ S(v − u) + u`.
    pub fn reflection_about(u: Point, reflection: Matrix2) -> Result<Self, MotionError> {
        if !reflection.is_reflection() {
            return Err(MotionError::InvalidMatrix);
        }
        Self::from_parts(reflection, u - reflection.apply(&u))
    }

    pub fn matrix(&self) -> Matrix2 {
        self.matrix
    }

    pub fn translation_part(&self) -> Point {
        self.translation
    }

    pub fn kind(&self) -> MotionKind {
        self.kind
    }

    pub fn apply(&self, v: &Point) -> Point {
        self.matrix.apply(v) + self.translation
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &RigidMotion) -> RigidMotion {
        Self::from_parts(
            next.matrix * self.matrix,
            next.matrix.apply(&self.translation) + next.translation,
        )
        .expect("orthogonal maps are closed under composition")
    }

    pub fn inverse(&self) -> RigidMotion {
        let inv = self.matrix.transpose();
        Self::from_parts(inv, -inv.apply(&self.translation)).expect("inverse of an orthogonal map")
    }

    pub fn fixed_set(&self) -> FixedSet {
        match self.kind {
            MotionKind::Identity => FixedSet::All,
            MotionKind::Translation | MotionKind::GlideReflection => FixedSet::Empty,
            MotionKind::Rotation => {
                // (M − I)u = −t with det(M − I) = (a − 1)² + b² = 2 − 2a ≠ 0
                let m = self.matrix;
                let one = FieldElement::from_raw(1, m.m11.modulus());
                let (a11, a12, a21, a22) = (m.m11 - one, m.m12, m.m21, m.m22 - one);
                let det = a11 * a22 - a12 * a21;
                let inv = det.inverse().expect("non-trivial rotation has det(R - I) != 0");
                let (r1, r2) = (-self.translation.x, -self.translation.y);
                FixedSet::Point(Point::new((r1 * a22 - a12 * r2) * inv, (a11 * r2 - a21 * r1) * inv))
            }
            MotionKind::Reflection => FixedSet::Line(
                reflection_axis(&self.matrix, &self.translation).expect("reflection kind implies a fixed line"),
            ),
        }
    }
}

impl fmt::Debug for RigidMotion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[{:?} v + {:?}]", self.kind, self.matrix, self.translation)
    }
}

/// The fixed line of `v ↦ S·v + t`, if it has one.
fn reflection_axis(s: &Matrix2, t: &Point) -> Option<Line> {
    let one = FieldElement::from_raw(1, s.m11.modulus());
    // (S − I)v + t = 0 has rank one; use whichever row is nonzero.
    let candidate = Line::new(s.m11 - one, s.m12, t.x)
        .or_else(|_| Line::new(s.m21, s.m22 - one, t.y))
        .ok()?;
    let u = candidate.base_point();
    (s.apply(&u) + *t == u).then_some(candidate)
}

fn field_of(p: &Point) -> PrimeField {
    // Points are only ever built from validated fields.
    PrimeField::new(p.x.modulus() as u64).expect("valid modulus")
}

/// `m2 ∘ m1`.
pub fn compose(m1: &RigidMotion, m2: &RigidMotion) -> RigidMotion {
    m1.then(m2)
}

pub fn fixed_set(m: &RigidMotion) -> FixedSet {
    m.fixed_set()
}

pub fn rotation_about(u: Point, rotation: Matrix2) -> Result<RigidMotion, MotionError> {
    RigidMotion::rotation_about(u, rotation)
}

/// Every `(a −b; b a)` with `a² + b² = 1`, sorted.
pub fn enumerate_rotation_matrices(field: &PrimeField) -> Vec<Matrix2> {
    let mut out: Vec<Matrix2> = unit_vectors(field)
        .into_iter()
        .map(|u| Matrix2::rotation(u.x, u.y).unwrap())
        .collect();
    out.sort();
    out
}

/// Every `(a b; b −a)` with `a² + b² = 1`, sorted.
pub fn enumerate_reflection_matrices(field: &PrimeField) -> Vec<Matrix2> {
    let mut out: Vec<Matrix2> = unit_vectors(field)
        .into_iter()
        .map(|u| Matrix2::reflection(u.x, u.y).unwrap())
        .collect();
    out.sort();
    out
}

fn unit_vectors(field: &PrimeField) -> Vec<Point> {
    Circle::new(Point::origin(field), field.one()).points()
}

/// One reflection per non-isotropic line, sorted.
pub fn enumerate_reflections(field: &PrimeField) -> Vec<RigidMotion> {
    let mut out: Vec<RigidMotion> = plane::all_lines(field)
        .iter()
        .filter(|l| !l.is_isotropic())
        .map(|l| reflection_fixing_line(l).unwrap())
        .collect();
    out.sort();
    out
}

/// Every rigid motion of F_p², sorted.
pub fn enumerate_motions(field: &PrimeField) -> Vec<RigidMotion> {
    let matrices: Vec<Matrix2> = enumerate_rotation_matrices(field)
        .into_iter()
        .chain(enumerate_reflection_matrices(field))
        .collect();
    let mut out = Vec::with_capacity(matrices.len() * (field.modulus() as usize).pow(2));
    for m in &matrices {
        for t in plane::all_points(field) {
            out.push(RigidMotion::from_parts(*m, t).unwrap());
        }
    }
    out.sort();
    out
}

/// The unique reflection whose fixed line is `l`.
///
/// With `d` a direction of `l`, the matrix is
/// `‖d‖⁻¹ (d₁² − d₂², 2d₁d₂; 2d₁d₂, d₂² − d₁²)`, applied about any point of `l`.
pub fn reflection_fixing_line(l: &Line) -> Result<RigidMotion, MotionError> {
    let d = l.direction();
    let n = d.norm();
    let inv = n.inverse().map_err(|_| MotionError::IsotropicLine)?;
    let (d1, d2) = (d.x, d.y);
    let a = (d1 * d1 - d2 * d2) * inv;
    let b = (d1 * d2 + d1 * d2) * inv;
    RigidMotion::reflection_about(l.base_point(), Matrix2::reflection(a, b)?)
}

/// The rotation about `u` sending `x` to `y`, where both lie on a circle of
/// nonzero radius about `u`. Trivial when `x = y`.
pub fn rotation_mapping_on_circle(u: Point, x: Point, y: Point) -> Result<RigidMotion, MotionError> {
    let (x, y) = (x - u, y - u);
    let r = x.norm();
    if r.is_zero() || y.norm() != r {
        return Err(MotionError::InvalidCirclePair);
    }
    let inv = r.inverse().expect("nonzero radius");
    let a = (x.x * y.x + x.y * y.y) * inv;
    let b = (x.x * y.y - x.y * y.x) * inv;
    RigidMotion::rotation_about(u, Matrix2::rotation(a, b)?)
}

fn check_quadruple(x: &Point, y: &Point, z: &Point, w: &Point) -> Result<(), MotionError> {
    let d = x.distance(y);
    if (x, y) == (z, w) || d.is_zero() || z.distance(w) != d {
        return Err(MotionError::InvalidQuadruple);
    }
    Ok(())
}

/// The unique rotation or translation with `m(x) = z` and `m(y) = w`.
pub fn motion_mapping_pair(x: Point, y: Point, z: Point, w: Point) -> Result<RigidMotion, MotionError> {
    check_quadruple(&x, &y, &z, &w)?;
    let shift = RigidMotion::translation(z - x);
    if x - y == z - w {
        return Ok(shift);
    }
    let turn = rotation_mapping_on_circle(z, shift.apply(&y), w)?;
    Ok(shift.then(&turn))
}

/// All ordered reflection pairs `(S₁, S₂)` with `S₂ ∘ S₁ = m`.
///
/// Since reflections are involutions, `S₂` is forced to be `m ∘ S₁`; each
/// reflection `S₁` contributes exactly when that product is a reflection.
pub fn reflection_pair_decompositions(m: &RigidMotion) -> Result<Vec<(RigidMotion, RigidMotion)>, MotionError> {
    match m.kind() {
        MotionKind::Rotation | MotionKind::Translation => {}
        other => return Err(MotionError::InvalidKind(other)),
    }
    let field = field_of(&m.translation);
    Ok(enumerate_reflections(&field)
        .into_iter()
        .filter_map(|s1| {
            let s2 = s1.then(m);
            (s2.kind() == MotionKind::Reflection).then_some((s1, s2))
        })
        .collect())
}

/// Number of ordered reflection pairs `(R₁, R₂)` with `R₁(x) = R₂(z)` and
/// `R₁(y) = R₂(w)`, by exhaustive double loop.
pub fn count_reflection_pairs_mapping(x: Point, y: Point, z: Point, w: Point) -> Result<usize, MotionError> {
    check_quadruple(&x, &y, &z, &w)?;
    let reflections = enumerate_reflections(&field_of(&x));
    let images: Vec<(Point, Point)> = reflections.iter().map(|r| (r.apply(&x), r.apply(&y))).collect();
    let targets: Vec<(Point, Point)> = reflections.iter().map(|r| (r.apply(&z), r.apply(&w))).collect();
    Ok(images
        .iter()
        .map(|img| targets.iter().filter(|t| *t == img).count())
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::{all_points, bisector};

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn pt(field: &PrimeField, x: i64, y: i64) -> Point {
        Point::from_coords(field, x, y)
    }

    fn mat(field: &PrimeField, a: i64, b: i64, c: i64, d: i64) -> Matrix2 {
        Matrix2::new(field.elem(a), field.elem(b), field.elem(c), field.elem(d))
    }

    #[test]
    fn rotation_about_examples() {
        let f5 = f(5);
        let quarter = mat(&f5, 0, -1, 1, 0);
        let m = rotation_about(Point::origin(&f5), quarter).unwrap();
        assert_eq!(m.matrix(), quarter);
        assert_eq!(m.translation_part(), Point::origin(&f5));
        assert_eq!(m.kind(), MotionKind::Rotation);

        let id = rotation_about(pt(&f5, 2, 3), Matrix2::identity(&f5)).unwrap();
        assert_eq!(id.kind(), MotionKind::Identity);

        let f7 = f(7);
        let m = rotation_about(pt(&f7, 1, 0), mat(&f7, 0, -1, 1, 0)).unwrap();
        assert_eq!(m.translation_part(), pt(&f7, 1, 6));

        assert_eq!(
            rotation_about(Point::origin(&f7), mat(&f7, 1, 0, 0, -1)),
            Err(MotionError::InvalidMatrix)
        );
        assert_eq!(
            rotation_about(Point::origin(&f7), mat(&f7, 2, 0, 0, 2)),
            Err(MotionError::InvalidMatrix)
        );
    }

    #[test]
    fn matrix_counts_by_residue_class() {
        for (p, n) in [(3u64, 4usize), (5, 4), (7, 8), (11, 12), (13, 12)] {
            let field = f(p);
            let rots = enumerate_rotation_matrices(&field);
            let refs = enumerate_reflection_matrices(&field);
            assert_eq!(rots.len(), n);
            assert_eq!(refs.len(), n);
            assert!(rots.iter().chain(&refs).all(Matrix2::is_unitary));
            assert!(rots.iter().all(Matrix2::is_rotation));
            assert!(refs.iter().all(|m| m.is_reflection() && !m.is_rotation()));
        }
    }

    #[test]
    fn shapes_are_disjoint() {
        let field = f(7);
        let rots = enumerate_rotation_matrices(&field);
        let refs = enumerate_reflection_matrices(&field);
        assert!(rots.iter().all(|r| !refs.contains(r)));
    }

    #[test]
    fn compose_examples() {
        let f5 = f(5);
        let o = Point::origin(&f5);
        let s1 = RigidMotion::reflection_about(o, mat(&f5, 1, 0, 0, -1)).unwrap();
        let s2 = RigidMotion::reflection_about(o, mat(&f5, -1, 0, 0, 1)).unwrap();
        let half = compose(&s1, &s2);
        assert_eq!(half.kind(), MotionKind::Rotation);
        assert_eq!(half.matrix(), mat(&f5, -1, 0, 0, -1));
        assert_eq!(half.fixed_set(), FixedSet::Point(o));

        let t = compose(
            &RigidMotion::translation(pt(&f5, 1, 0)),
            &RigidMotion::translation(pt(&f5, 0, 1)),
        );
        assert_eq!(t.kind(), MotionKind::Translation);
        assert_eq!(t.translation_part(), pt(&f5, 1, 1));

        let f7 = f(7);
        let r = mat(&f7, 0, -1, 1, 0);
        let r1 = rotation_about(Point::origin(&f7), r).unwrap();
        let r2 = rotation_about(pt(&f7, 1, 0), r.transpose()).unwrap();
        assert_eq!(compose(&r1, &r2).kind(), MotionKind::Translation);
    }

    #[test]
    fn fixed_set_examples() {
        let f5 = f(5);
        assert_eq!(RigidMotion::translation(pt(&f5, 1, 0)).fixed_set(), FixedSet::Empty);
        assert_eq!(RigidMotion::identity(&f5).fixed_set(), FixedSet::All);
        let f7 = f(7);
        let half = rotation_about(pt(&f7, 2, 3), mat(&f7, -1, 0, 0, -1)).unwrap();
        assert_eq!(half.fixed_set(), FixedSet::Point(pt(&f7, 2, 3)));
        let axis = RigidMotion::reflection_about(Point::origin(&f5), mat(&f5, 1, 0, 0, -1)).unwrap();
        let x_axis = Line::new(f5.zero(), f5.one(), f5.zero()).unwrap();
        assert_eq!(axis.fixed_set(), FixedSet::Line(x_axis));
    }

    #[test]
    fn fixed_sets_match_brute_force() {
        for p in [3u64, 5] {
            let field = f(p);
            for m in enumerate_motions(&field) {
                let fixed: Vec<Point> = all_points(&field).filter(|v| m.apply(v) == *v).collect();
                match m.fixed_set() {
                    FixedSet::All => assert_eq!(fixed.len() as u64, p * p),
                    FixedSet::Empty => assert!(fixed.is_empty()),
                    FixedSet::Point(u) => assert_eq!(fixed, vec![u]),
                    FixedSet::Line(l) => {
                        let on: Vec<Point> = all_points(&field).filter(|v| l.contains(v)).collect();
                        assert_eq!(fixed, on);
                    }
                }
            }
        }
    }

    #[test]
    fn every_motion_is_rigid() {
        let field = f(5);
        let pts: Vec<Point> = all_points(&field).collect();
        for m in enumerate_motions(&field) {
            assert!(m.matrix().is_unitary());
            for u in &pts {
                for v in &pts {
                    assert_eq!(u.distance(v), m.apply(u).distance(&m.apply(v)));
                }
            }
        }
    }

    #[test]
    fn inverse_composes_to_identity() {
        let field = f(7);
        for m in enumerate_motions(&field).iter().step_by(7) {
            assert_eq!(m.then(&m.inverse()).kind(), MotionKind::Identity);
        }
    }

    #[test]
    fn composition_follows_classification_lemma() {
        let field = f(3);
        let motions = enumerate_motions(&field);
        for m1 in &motions {
            for m2 in &motions {
                let c = compose(m1, m2);
                let (k1, k2) = (m1.kind(), m2.kind());
                match (k1, k2) {
                    (MotionKind::Rotation, MotionKind::Rotation) => {
                        if m2.matrix() * m1.matrix() == Matrix2::identity(&field) {
                            assert!(matches!(c.kind(), MotionKind::Translation | MotionKind::Identity));
                        } else {
                            assert_eq!(c.kind(), MotionKind::Rotation);
                        }
                    }
                    (MotionKind::Reflection, MotionKind::Reflection) => {
                        if m1.matrix() == m2.matrix() {
                            assert!(matches!(c.kind(), MotionKind::Translation | MotionKind::Identity));
                        } else {
                            assert_eq!(c.kind(), MotionKind::Rotation);
                        }
                    }
                    (MotionKind::Rotation, MotionKind::Translation)
                    | (MotionKind::Translation, MotionKind::Rotation) => {
                        assert_eq!(c.kind(), MotionKind::Rotation);
                    }
                    _ => {}
                }
            }
        }
    }

    #[test]
    fn reflection_fixing_line_examples() {
        let f5 = f(5);
        let x_axis = Line::new(f5.zero(), f5.one(), f5.zero()).unwrap();
        let s = reflection_fixing_line(&x_axis).unwrap();
        assert_eq!(s.matrix(), mat(&f5, 1, 0, 0, -1));
        assert_eq!(s.translation_part(), Point::origin(&f5));

        let f7 = f(7);
        let diag = Line::through(Point::origin(&f7), pt(&f7, 1, 1)).unwrap();
        assert_eq!(reflection_fixing_line(&diag).unwrap().matrix(), mat(&f7, 0, 1, 1, 0));

        let iso = Line::new(f5.elem(2), f5.elem(-1), f5.zero()).unwrap();
        assert_eq!(reflection_fixing_line(&iso), Err(MotionError::IsotropicLine));
    }

    #[test]
    fn reflection_round_trips_through_fixed_line() {
        for p in [5u64, 7, 13] {
            let field = f(p);
            let refl = enumerate_reflections(&field);
            let expected = if p % 4 == 1 { p * (p - 1) } else { p * (p + 1) };
            assert_eq!(refl.len() as u64, expected);
            for s in &refl {
                let FixedSet::Line(l) = s.fixed_set() else {
                    panic!("reflection without fixed line");
                };
                assert_eq!(reflection_fixing_line(&l).unwrap(), *s);
            }
        }
    }

    #[test]
    fn reflection_moving_x_has_bisector_as_axis() {
        let field = f(5);
        for s in enumerate_reflections(&field) {
            let FixedSet::Line(l) = s.fixed_set() else {
                unreachable!()
            };
            for x in all_points(&field) {
                let sx = s.apply(&x);
                if sx != x {
                    assert_eq!(bisector(&x, &sx).unwrap(), l);
                }
            }
        }
    }

    #[test]
    fn rotation_on_circle_examples() {
        let f5 = f(5);
        let o = Point::origin(&f5);
        let m = rotation_mapping_on_circle(o, pt(&f5, 1, 0), pt(&f5, 0, 1)).unwrap();
        assert_eq!(m.matrix(), mat(&f5, 0, -1, 1, 0));
        let f7 = f(7);
        let m = rotation_mapping_on_circle(Point::origin(&f7), pt(&f7, 1, 0), pt(&f7, 1, 0)).unwrap();
        assert_eq!(m.kind(), MotionKind::Identity);
        assert_eq!(
            rotation_mapping_on_circle(o, pt(&f5, 1, 2), pt(&f5, 1, 2)),
            Err(MotionError::InvalidCirclePair)
        );
        assert_eq!(
            rotation_mapping_on_circle(o, pt(&f5, 1, 0), pt(&f5, 1, 1)),
            Err(MotionError::InvalidCirclePair)
        );
    }

    #[test]
    fn rotation_on_circle_is_unique() {
        let field = f(7);
        let u = pt(&field, 2, 5);
        let rotations: Vec<RigidMotion> = enumerate_rotation_matrices(&field)
            .into_iter()
            .map(|r| rotation_about(u, r).unwrap())
            .collect();
        let circle = Circle::new(u, field.elem(3)).points();
        for x in &circle {
            for y in &circle {
                let m = rotation_mapping_on_circle(u, *x, *y).unwrap();
                assert_eq!(m.apply(x), *y);
                let hits: Vec<_> = rotations.iter().filter(|r| r.apply(x) == *y).collect();
                assert_eq!(hits, vec![&m]);
            }
        }
    }

    #[test]
    fn motion_mapping_pair_examples() {
        let f5 = f(5);
        let m = motion_mapping_pair(pt(&f5, 0, 0), pt(&f5, 1, 0), pt(&f5, 1, 1), pt(&f5, 2, 1)).unwrap();
        assert_eq!(m, RigidMotion::translation(pt(&f5, 1, 1)));
        let m = motion_mapping_pair(pt(&f5, 0, 0), pt(&f5, 1, 0), pt(&f5, 0, 0), pt(&f5, 0, 1)).unwrap();
        assert_eq!(m, rotation_about(Point::origin(&f5), mat(&f5, 0, -1, 1, 0)).unwrap());
        let f7 = f(7);
        assert_eq!(
            motion_mapping_pair(pt(&f7, 0, 0), pt(&f7, 1, 0), pt(&f7, 0, 0), pt(&f7, 2, 0)),
            Err(MotionError::InvalidQuadruple)
        );
    }

    #[test]
    fn motion_mapping_pair_is_unique_among_rotations_and_translations() {
        let field = f(5);
        let candidates: Vec<RigidMotion> = enumerate_motions(&field)
            .into_iter()
            .filter(|m| matches!(m.kind(), MotionKind::Rotation | MotionKind::Translation))
            .collect();
        let x = pt(&field, 0, 0);
        let y = pt(&field, 1, 1);
        for z in all_points(&field) {
            for w in all_points(&field) {
                let Ok(m) = motion_mapping_pair(x, y, z, w) else {
                    assert!((x, y) == (z, w) || z.distance(&w) != x.distance(&y));
                    continue;
                };
                let hits: Vec<&RigidMotion> = candidates
                    .iter()
                    .filter(|c| c.apply(&x) == z && c.apply(&y) == w)
                    .collect();
                assert_eq!(hits, vec![&m]);
                let expect = if x - y == z - w {
                    MotionKind::Translation
                } else {
                    MotionKind::Rotation
                };
                assert_eq!(m.kind(), expect);
            }
        }
    }

    #[test]
    fn decomposition_examples() {
        let f7 = f(7);
        let quarter = rotation_about(Point::origin(&f7), mat(&f7, 0, -1, 1, 0)).unwrap();
        assert_eq!(reflection_pair_decompositions(&quarter).unwrap().len(), 8);
        let f5 = f(5);
        let t = RigidMotion::translation(pt(&f5, 1, 0));
        assert_eq!(reflection_pair_decompositions(&t).unwrap().len(), 5);
        let iso = RigidMotion::translation(pt(&f5, 1, 2));
        assert!(reflection_pair_decompositions(&iso).unwrap().is_empty());
        assert_eq!(
            reflection_pair_decompositions(&RigidMotion::identity(&f5)),
            Err(MotionError::InvalidKind(MotionKind::Identity))
        );
        let s = enumerate_reflections(&f5)[0];
        assert_eq!(
            reflection_pair_decompositions(&s),
            Err(MotionError::InvalidKind(MotionKind::Reflection))
        );
    }

    #[test]
    fn decompositions_agree_with_double_loop() {
        let field = f(5);
        let refl = enumerate_reflections(&field);
        let targets = [
            rotation_about(pt(&field, 1, 3), mat(&field, 0, 1, -1, 0)).unwrap(),
            RigidMotion::translation(pt(&field, 2, 1)),
            RigidMotion::translation(pt(&field, 1, 3)),
        ];
        for m in targets {
            let fast = reflection_pair_decompositions(&m).unwrap();
            let mut slow = Vec::new();
            for s1 in &refl {
                for s2 in &refl {
                    if compose(s1, s2) == m {
                        slow.push((*s1, *s2));
                    }
                }
            }
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn reflection_pair_count_examples() {
        let f7 = f(7);
        let c = count_reflection_pairs_mapping(pt(&f7, 0, 0), pt(&f7, 1, 0), pt(&f7, 0, 0), pt(&f7, 0, 1));
        assert_eq!(c, Ok(8));
        let f5 = f(5);
        let c = count_reflection_pairs_mapping(pt(&f5, 0, 0), pt(&f5, 1, 0), pt(&f5, 1, 1), pt(&f5, 2, 1));
        assert_eq!(c, Ok(5));
        let c = count_reflection_pairs_mapping(pt(&f5, 0, 0), pt(&f5, 1, 0), pt(&f5, 1, 2), pt(&f5, 2, 2));
        assert_eq!(c, Ok(0));
        let c = count_reflection_pairs_mapping(pt(&f5, 0, 0), pt(&f5, 1, 2), pt(&f5, 1, 1), pt(&f5, 2, 3));
        assert_eq!(c, Err(MotionError::InvalidQuadruple));
    }

    #[test]
    fn glide_reflections_have_no_fixed_points() {
        let field = f(7);
        let s = RigidMotion::reflection_about(Point::origin(&field), mat(&field, 1, 0, 0, -1)).unwrap();
        let glide = s.then(&RigidMotion::translation(pt(&field, 1, 0)));
        assert_eq!(glide.kind(), MotionKind::GlideReflection);
        assert_eq!(glide.fixed_set(), FixedSet::Empty);
        assert!(all_points(&field).all(|v| glide.apply(&v) != v));
    }
}
