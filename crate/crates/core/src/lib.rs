//! Slope arithmetic, cusp-torus geometry and certified length bounds for
//! unknotting tunnels of Dehn fillings.

pub mod cli;
pub mod cusp;
pub mod drilling;
pub mod error;
pub mod fibonacci;
pub mod halfplane;
pub mod interval;
pub mod slope;
pub mod trig;
pub mod tunnel;
pub mod verify;

pub use cusp::{CuspShape, HoroballScale};
pub use error::{Error, Result};
pub use interval::Interval;
pub use slope::{farey_neighbors, farey_walk, intersection_number, is_farey_neighbor, Slope};
pub use tunnel::{estimate_tunnel, Mode, TunnelEstimate};
pub use fibonacci::{fibonacci, FamilyReport, FibonacciSlopePair};
