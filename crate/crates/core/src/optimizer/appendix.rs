use alloc::vec::Vec;

use super::reference::published_block;
use super::{constraint_slacks, evaluate_t, AlphaSchedule, ConstraintSlack, InnerVars, OptEvaluation};
use crate::error::invalid;
use crate::Result;

/// Absolute tolerance on reproduced `T_d`.
pub const T_TOLERANCE: f64 = 1e-4;
/// Most negative accepted constraint slack (published digits are rounded).
pub const SLACK_TOLERANCE: f64 = -1e-4;

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Mismatch {
    T { d: usize, published: f64, computed: f64 },
    Slack(ConstraintSlack),
}

/// Re-evaluation of a published `K = 1` parameter block.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AppendixReport {
    pub d: usize,
    pub published: Vec<f64>,
    pub evaluation: OptEvaluation,
    /// Constraint slacks at the published `T_1, ..., T_D`.
    pub slacks: Vec<ConstraintSlack>,
    pub mismatches: Vec<Mismatch>,
}

impl AppendixReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    /// Largest `|T_d - published T_d|`.
    pub fn max_t_error(&self) -> f64 {
        self.published.iter().zip(&self.evaluation.t).map(|(p, c)| (p - c).abs()).fold(0.0, f64::max)
    }

    pub fn min_slack(&self) -> f64 {
        self.slacks.iter().map(|s| s.slack).fold(f64::INFINITY, f64::min)
    }
}

/// Feed the published `K = 1` block for `D` to [`evaluate_t`] and compare.
pub fn check_appendix(d: usize) -> Result<AppendixReport> {
    let Some(b) = published_block(d) else {
        return Err(invalid!(InvalidArgument, "published blocks cover D = 1..=6, got {d}"));
    };
    let schedule = AlphaSchedule::single(b.alpha.to_vec())?;
    let vars = InnerVars::new(b.x, alloc::vec![alloc::vec![b.x11, b.x12]]);
    let evaluation = evaluate_t(&schedule, &vars)?;
    let slacks = constraint_slacks(&schedule, &vars, b.t)?;
    let mut mismatches = Vec::new();
    for (i, (&p, &c)) in b.t.iter().zip(&evaluation.t).enumerate() {
        if !((p - c).abs() <= T_TOLERANCE) {
            mismatches.push(Mismatch::T { d: i + 1, published: p, computed: c });
        }
    }
    mismatches.extend(slacks.iter().filter(|s| !(s.slack >= SLACK_TOLERANCE)).map(|s| Mismatch::Slack(*s)));
    Ok(AppendixReport { d, published: b.t.to_vec(), evaluation, slacks, mismatches })
}
