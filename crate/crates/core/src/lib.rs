//! Exact counting of edge colourings without monochromatic cliques, search
//! for extremal complete multipartite graphs, and the finite optimisation
//! problem over pattern functions and simplex weights that governs the
//! asymptotic number of such colourings.

pub mod canonical;
pub mod counting;
pub mod error;
pub mod graph;
pub mod model;
pub mod optimize;
pub mod patterns;
pub mod ramsey;
pub mod symmetrise;

pub use canonical::{canonical_form, code_of, is_canonical, CanonicalPattern};
pub use counting::{
    count_colourings, count_shape, is_valid_colouring, search_extremal, Colouring, CountJob,
    CountOutcome, ExtremalReport, PrunedShape,
};
pub use error::{Error, Result};
pub use graph::SimpleGraph;
pub use model::*;
pub use optimize::{
    grid_oracle, lp_profile_bound, nearest_optimum, optimize_alpha, solve_q, stability_distance,
    AlphaOptimum, Certificate, GridOptimum, LpProfileBound, QSolveReport, SolveOptions,
    SolveStatus, StabilityCandidate, StabilityMatch, TripleRecord,
};
pub use patterns::{enumerate_patterns, PatternEnumeration};
pub use ramsey::{
    bracket_list_ramsey, list_ramsey_search, multinomial_bound, ramsey_limit, verify_ramsey,
    ListRamseyBracket, ListRamseyVerdict, RamseyKind, RamseyLimit, RamseyVerdict,
};
pub use symmetrise::{
    clone_replace, symmetrise, twin_partition, SymmetrisationStep, SymmetrisationTrace,
};
