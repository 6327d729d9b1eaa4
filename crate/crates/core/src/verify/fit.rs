use std::collections::BTreeSet;

use crate::diffop::DiffOp;
use crate::error::Result;
use crate::exactalg::matrix::QMatrix;
use crate::exactalg::rational::{zero, Rational};

/// Exact coefficients `λ` with `target = Σ λ_i basis_i`, if any exist.
/// All operators must have polynomial coefficients.
pub fn fit_combination(target: &DiffOp, basis: &[DiffOp]) -> Result<Option<Vec<Rational>>> {
    let tables = basis.iter().map(|b| b.coefficient_table()).collect::<Result<Vec<_>>>()?;
    let t = target.coefficient_table()?;
    let keys: BTreeSet<_> = tables.iter().flat_map(|m| m.keys().cloned()).chain(t.keys().cloned()).collect();
    if basis.is_empty() {
        return Ok(t.is_empty().then(Vec::new));
    }
    let rows: Vec<Vec<Rational>> = keys
        .iter()
        .map(|k| tables.iter().map(|m| m.get(k).cloned().unwrap_or_else(zero)).collect())
        .collect();
    let rhs: Vec<Rational> = keys.iter().map(|k| t.get(k).cloned().unwrap_or_else(zero)).collect();
    if rows.is_empty() {
        return Ok(Some(vec![zero(); basis.len()]));
    }
    Ok(QMatrix::from_rows(rows)?.solve(&rhs))
}
