//! Exact cop numbers and the three-cop strategy on multi-layer generalized
//! Petersen graphs.

mod mgp;
mod solver;

pub use mgp::{
    certify_scripted, mgp_guard_set, verify_mgp_theorem, ExactReport, Falsification, MgpCops, MgpMethod, MgpPhase,
    MgpReport, MgpStrategy, MgpStrategyState, ScriptedReport, ScriptedStep,
};
pub use solver::{cop_number, solve_k_cops, CopNumber, GameTable, DEFAULT_STATE_BUDGET};
