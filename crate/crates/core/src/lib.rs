//! Approval-based participatory budgeting with exact arithmetic.

// Errors carry the exact costs involved; errors are rare, so their size is fine.
#![allow(clippy::result_large_err)]

pub mod axioms;
pub mod flow;
pub mod lp;
pub mod model;
pub mod pricing;
pub mod rational;
pub mod report;
pub mod repro;
pub mod rules;
pub mod satisfaction;
mod subsets;
