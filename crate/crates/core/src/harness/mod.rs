//! Corpus generation, verification campaigns and reports.

mod corpus;
mod counterexamples;
mod lemmas;
mod report;
mod verify;

pub use corpus::{gen_corpus, random_quotient, tiny_inputs, Corpus, CorpusError, CorpusParams, Member, Provenance};
pub use counterexamples::{non_injective_section, non_surjective_section, run_counterexamples};
pub use lemmas::*;
pub use report::{Case, Outcome, Report, Section};
pub use verify::{
    check_t, cones_section, corollary_section, main_theorem_section, map_table_case, oracle_agreement_section,
    regular_members, run_cylinder, run_cylinders, thm12_maps, thm12_section, verify_main_theorem, CylinderRun,
    TCheck,
};
