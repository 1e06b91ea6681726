//! Rational cones, lattice polytopes and fans.

pub mod cone;
pub mod fan;
pub mod polytope;

pub use cone::RationalCone;
pub use fan::{quotient_fan, quotient_projection, Fan};
pub use polytope::{Face, LatticePolytope};
