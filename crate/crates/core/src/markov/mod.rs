//! Finite continuous-time Markov chains: TASEP, 0-TAZRP, kTAZRP and the
//! ringing-path chains on multiline queues, with an exact stationary solver
//! and a seeded jump simulator.

mod chain;
mod models;
mod ringing;
mod simulate;
mod solve;

pub use chain::{ChainSpec, RateParams, RationalDistribution, Transition};
pub use models::{
    bosonic_mlq_chain, fermionic_mlq_chain, ktazrp_chain, ktazrp_transitions, tasep_chain, tasep_states,
    tasep_transitions, tazrp_chain, tazrp_states, tazrp_transitions,
};
pub use ringing::{ring_forward_bosonic, ring_forward_fermionic, ring_reverse_bosonic, ring_reverse_fermionic, Ring};
pub use simulate::{simulate_ctmc, simulate_ctmc_stream, total_variation};
pub use solve::{check_balance, stationary_exact};
