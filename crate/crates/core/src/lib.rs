//! Tropical curves, h-transverse polygons and the combinatorics of plane
//! Severi varieties, in exact rational arithmetic.
//!
//! The crate is organised bottom-up:
//!
//! * [`polygon`]: lattice polygons, widths, tangency profiles, hypothesis reports.
//! * [`tropical`]: parametrized tropical curves, balancing, strata dimensions.
//! * [`floors`]: floor decompositions, basic floor-to-floor elevators, the width bound.
//! * [`realizability`]: flattened cycles, elliptic pieces and the midpoint filter.
//! * [`enumeration`]: curves through vertically stretched points, with a
//!   Caporaso-Harris count to compare against.
//! * [`moves`]: the wall-crossing engine that lowers the genus of a curve.
//! * [`rational`]: rational parametrizations, nodes and the tacnode test.

pub mod arith;
pub mod enumeration;
pub mod error;
pub mod floors;
pub mod linalg;
pub mod moves;
pub mod polygon;
pub mod poly;
pub mod rational;
pub mod realizability;
pub mod tropical;

pub use error::{Error, Result};
