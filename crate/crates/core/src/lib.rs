//! Interdiction and flow-security algorithms for networks embedded in the plane.
//!
//! The crate is `no_std` (it needs `alloc`). Instances carry their embedding as a
//! rotation system; nothing here computes embeddings. The main entry points are
//! [`st::solve_st_interdiction`] for single source/sink interdiction (optionally with
//! vertex removal and vertex capacities) and [`security::solve_security`] for the
//! smallest budget that breaks saturation of a balanced multi-terminal network.
//! [`oracle`] holds exhaustive reference solvers used to certify both.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod circulation;
pub mod dual;
pub mod exec;
pub mod ext;
pub mod faces;
pub mod gen;
pub mod knapsack;
pub mod layered;
pub mod network;
pub mod oracle;
pub mod reductions;
pub mod security;
pub mod st;
pub mod walk;

#[cfg(test)]
mod fixtures;

pub use circulation::{build_circulation_instance, check_saturating_flow, CirculationInstance};
pub use dual::{InterdictionDual, ParityLabels};
pub use ext::ExtInt;
pub use faces::{trace_faces, FaceStructure};
pub use network::{Arc, Dart, EmbeddedNetwork, End, NetworkError, Vertex};
pub use security::{solve_security, SecurityOutcome};
pub use st::{solve_st_interdiction, InterdictionOutcome, Mode, StOptions};
