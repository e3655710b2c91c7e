//! Hilbert depth of squarefree monomial ideals `I ⊂ S = K[x1, ..., xn]` and
//! of the quotients `S/I`, computed combinatorially from α-vectors and
//! β-tables, together with the Kruskal–Katona machinery and exhaustive and
//! sampled verification of the comparison `hdepth(I) >= hdepth(S/I)`.

pub mod cli;
pub mod combinatorics;
pub mod corpus;
mod error;
pub mod hdepth;
pub mod ideal;
pub mod theorems;

pub use combinatorics::{binom, binom_diff, kk_lower_bound, kk_upper_bound, macaulay_rep, MacaulayRep};
pub use corpus::{
    enumerate_complexes, enumerate_ideals, random_ideal, search_counterexample, verify_corpus, DegreeBias,
    EnumerationPlan, Mode, SearchReport, SearchStatus, VerifySummary,
};
pub use error::{Error, Result};
pub use hdepth::{alpha_from_beta, beta_table, hdepth, hdepth_report, BetaTable, HdepthReport};
pub use ideal::{alpha_vector, ideal_alpha, parse_ideal, quotient_alpha, AlphaVector, Ideal, Monomial};
pub use theorems::{reproduce_proof_tables, CheckOutcome, Predicate, Witness};
