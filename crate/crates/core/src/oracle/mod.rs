//! Brute-force reference solvers for small instances.
//!
//! Nothing here reuses the dual-based solvers: max flows run on a plain lifted
//! network and interdiction is answered by enumerating removal sets.

pub mod circuits;
pub mod densest;
pub mod exhaustive;
pub mod gamma;
pub mod lift;
pub mod maxflow;
pub mod region;

pub use circuits::enumerate_circuits;
pub use densest::densest_subgraph_exhaustive;
pub use exhaustive::{interdict_exhaustive, security_exhaustive, Component, ExhaustiveOutcome};
pub use gamma::{gamma_reduced, lambda_reduced};
pub use lift::{flow_value, saturation_feasible, LiftedFlowNetwork, Removal};
pub use maxflow::FlowNetwork;
pub use region::{trace_region, Region};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("instance too large for enumeration ({size} > {limit})")]
    TooLarge { size: usize, limit: usize },
    #[error("no saturating flow exists without interdiction")]
    NotSaturated,
    #[error("arc sequence is not a closed dual walk")]
    NotACircuit,
    #[error("circuit does not split the vertices into two sides")]
    InconsistentRegion,
}
