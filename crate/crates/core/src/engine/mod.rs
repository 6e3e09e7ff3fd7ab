//! Core computations.

pub mod bruteforce;
pub mod graded;
pub mod local;

pub use bruteforce::{
    core_bruteforce, partition_check, reduce_mod_p, strata_split_mod_p, BruteForce, PartitionCheck, Sampling,
};
pub use graded::{
    admissible_sequences, core_from_modules, core_generic_contraction, core_saturation, core_stratified,
    hilbert_function_independent,
};
pub use local::{
    core_equimultiple, core_onedim_conductor, equimultiple_independence, local_core_bruteforce, localize_graded,
    maximal_ideal_chain, LocalIdeal,
};
