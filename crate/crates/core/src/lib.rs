//! Exact geometry over prime fields: perpendicular bisectors, rigid motions,
//! bisector energy and the spectral graphs used to bound it.

pub mod field;
pub mod motions;
pub mod plane;
pub mod pointsets;
pub mod spectral;
pub mod stats;

pub use field::{FieldElement, FieldError, PrimeField};
pub use motions::{FixedSet, Matrix2, MotionError, MotionKind, RigidMotion};
pub use plane::{Circle, GeometryError, Line, Point};
pub use pointsets::{Construction, PointSet, PointSetError, Prng};
pub use spectral::SpectralError;
pub use stats::{DistanceClasses, StatsError, WeightedLineMultiset};
