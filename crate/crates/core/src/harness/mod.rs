//! Enumeration of small posets and lattices and batch checks of every
//! equivalence on them.

mod campaign;
mod checks;
mod enumerate;

pub use campaign::{campaign_corpus, run_campaign, EquivalenceReport, SweepEntry, SweepSummary, TheoremTally, Timing};
pub use checks::{
    brute_force_grid_embedding, check_equivalences, check_lattice, defense_certificate, describe,
    hibi_gb_certificate, hot_certificate, invariants_certificate, rees_certificate, tiebreak_sweep, urc_certificate,
    Campaign, Certificate, Counterexample, Mutation, PosetRecord, TiebreakOutcome, Toggles,
};
pub use enumerate::{enumerate_lattices, enumerate_posets, enumerate_posets_up_to, MAX_ENUMERATION_SIZE};
