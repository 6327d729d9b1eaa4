//! Differential operators with rational-function coefficients.

mod coords;
mod gauge;
mod op;

pub use coords::{change_coordinates, express_in_invariants, push_forward_invariant, CoordMap};
pub use gauge::{gauge_conjugate, Direction, GaugeFactor};
pub use op::{gl_generator, DiffOp, GlKind};
