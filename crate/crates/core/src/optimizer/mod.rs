//! The layer-schedule program.
//!
//! For fixed fractions `alpha_{k,d}` and saddle variables the exponents
//! `T_1, ..., T_D` follow bottom-up from the precalculation and search
//! constraints ([`evaluate_t`]). [`minimize_t`] then searches over both by a
//! multi-start augmented Lagrangian method in log coordinates.

mod appendix;
mod evaluate;
mod reference;
mod schedule;
mod solve;

pub use appendix::{check_appendix, AppendixReport, Mismatch};
pub use evaluate::{constraint_slacks, evaluate_t, ConstraintKind, ConstraintSlack, InnerVars, OptEvaluation};
pub use reference::{
    published_block, published_k1, published_t, PublishedBlock, PUBLISHED_GRID, PUBLISHED_K1_CURVE,
    PUBLISHED_K1_PARAMETERS,
};
pub use schedule::AlphaSchedule;
pub use solve::{
    figure_k1, minimize_t, minimize_t_warm, table, CurvePoint, LocalSolution, MinimizeConfig, OptDiagnostics,
    OptProblem, OptSolution, Start, StartKind, Warm,
};
