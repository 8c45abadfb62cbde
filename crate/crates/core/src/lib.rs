//! Digital straight segments, maximal segments and tangent estimation on
//! Gauss digitizations of smooth convex shapes, with a multigrid experiment
//! harness measuring convergence rates.
//!
//! - `shapes`: disks and ellipses with exact membership and true tangents
//! - `lattice`: digitization, convex digital polygons, border tracing, digital edges
//! - `arithmetic`: continued fractions, convergents and pattern words
//! - `dss`: standard-line recognition and maximal segments
//! - `estimators`: edge, most-centered and lambda-MST tangent estimators
//! - `harness`: grid-step sweeps, log-log fits and CSV output

pub mod arithmetic;
pub mod dss;
pub mod error;
pub mod estimators;
pub mod freeman;
pub mod harness;
pub mod lattice;
pub mod shapes;

pub use error::{Error, Result};
