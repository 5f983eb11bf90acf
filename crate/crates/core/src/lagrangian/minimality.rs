use serde::Serialize;

use super::optimizer::{lagrangian, OptimizerConfig};
use crate::pattern::Pattern;
use crate::Result;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndexMargin {
    /// 1-based part index.
    pub index: usize,
    pub lambda_without: f64,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinimalityReport {
    pub is_minimal: bool,
    pub lambda: f64,
    pub threshold: f64,
    pub per_index: Vec<IndexMargin>,
    /// Every optimizer run behind the report met its step tolerance.
    pub all_converged: bool,
}

/// Minimal means `lambda(P - i) < lambda(P)` for every `i`; numerically each
/// margin must exceed `cfg.minimality_threshold`.
///
/// An optimum of `P - i` is a feasible point of `P` (with `x_i = 0`), so the
/// reported `lambda` is the best of all runs and margins are never negative.
/// For `m = 1` the removed pattern has no parts and `lambda(P - 1) = 0`.
pub fn is_minimal(pattern: &Pattern, cfg: &OptimizerConfig) -> Result<MinimalityReport> {
    let full = lagrangian(pattern, cfg)?;
    let mut all_converged = full.converged;
    let mut without = Vec::with_capacity(pattern.m());
    for i in 1..=pattern.m() {
        if pattern.m() == 1 {
            without.push(0.0);
            continue;
        }
        let sub = lagrangian(&pattern.remove_index(i)?, cfg)?;
        all_converged &= sub.converged;
        without.push(sub.value);
    }
    let lambda = without.iter().copied().fold(full.value, f64::max);
    let per_index: Vec<IndexMargin> = without
        .into_iter()
        .enumerate()
        .map(|(i, lambda_without)| IndexMargin {
            index: i + 1,
            lambda_without,
            margin: lambda - lambda_without,
        })
        .collect();
    Ok(MinimalityReport {
        is_minimal: per_index
            .iter()
            .all(|m| m.margin > cfg.minimality_threshold),
        lambda,
        threshold: cfg.minimality_threshold,
        per_index,
        all_converged,
    })
}
