//! Complexity dynamics: an illustrative saturating growth flow, empirical
//! tracking of witnesses and bounds under Hamiltonian evolution, the freezing
//! of distinguishability by a conserved symmetry, and an eigenstate
//! thermalization diagnostic.

mod eth;
mod flow;
mod models;
mod symmetry;
mod tracking;

pub use eth::{eth_diagnostic, eth_size_sweep, EthReport, EthSweep, EthSweepRow, Observable, ObservableStats};
pub use flow::{integrate_flow, integrate_flow_with, FlowParams, FlowSample, FlowTrajectory, RateFunction, Saturating};
pub use models::{mixed_field_ising, xxz_chain, MIXED_FIELD_ISING};
pub use symmetry::{circuit_unitary, symmetry_freeze_check, FreezeSample, SymmetryFreezeReport};
pub use tracking::{track_complexity_under_evolution, EvolutionSample, EvolutionTrajectory, TrackConfig};
