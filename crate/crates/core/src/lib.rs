//! Finite-instance metric geometry: Hausdorff and N-net metrics, Chebyshev
//! centers, best-ball approximation, metric projections, Hilbert and
//! Lobachevsky geometry, tangent metrics and metrics on mapping spaces.

pub mod ball_approx;
pub mod chebyshev;
pub mod error;
pub mod hausdorff;
pub mod hilbert;
pub mod maps;
mod optim;
pub mod nnet;
pub mod projection;
pub mod report;
pub mod spaces;

pub use error::{GeomError, MetricViolation, Result};
pub use spaces::{CoordSpace, Euclidean, FiniteSpace, GeodesicSpace, KleinBall, MetricSpace, ModelSpace, Point};
