use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::exactalg::rational::Rational;
use crate::exactalg::unipoly::UniPoly;
use crate::models::{build_l_chain, build_qes_sphere, SphereParams};
use crate::repspace::{dimension, invariant_matrix, joint_eigenbasis};

use super::chain::ChainSolution;

/// Cross-check of the separated spectrum against the joint eigendecomposition.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Completeness {
    pub chains: usize,
    /// Separated eigenfunctions counted with multiplicity.
    pub states: u64,
    pub dimension: u64,
    /// Per label vector, the separated and matrix characteristic polynomials agree.
    pub sectors_match: bool,
    pub complete: bool,
}

/// Characteristic polynomial of `h^(QES)` per joint label vector `(c_1..c_{n-1})`.
pub fn matrix_sectors(p: &SphereParams, bits: u32) -> Result<BTreeMap<Vec<Rational>, UniPoly>> {
    let (n, k) = (p.n(), p.k());
    let h = invariant_matrix(&build_qes_sphere(p)?, n, k)?.matrix;
    let ls = build_l_chain(p)?
        .iter()
        .map(|l| Ok(invariant_matrix(l, n, k)?.matrix))
        .collect::<Result<Vec<_>>>()?;
    let mut out: BTreeMap<Vec<Rational>, UniPoly> = BTreeMap::new();
    for s in joint_eigenbasis(&ls, &h, bits)? {
        let e = out.entry(s.labels).or_insert_with(UniPoly::one);
        *e = &*e * &s.charpoly;
    }
    Ok(out)
}

pub fn separated_sectors(sols: &[ChainSolution]) -> BTreeMap<Vec<Rational>, UniPoly> {
    let mut out: BTreeMap<Vec<Rational>, UniPoly> = BTreeMap::new();
    for s in sols {
        let e = out.entry(s.c.clone()).or_insert_with(UniPoly::one);
        *e = &*e * &s.heun.charpoly;
    }
    out
}

pub fn completeness(p: &SphereParams, sols: &[ChainSolution], bits: u32) -> Result<Completeness> {
    let states: u64 = sols.iter().map(|s| s.heun.m as u64 + 1).sum();
    let dim = dimension(p.n(), p.k());
    let sectors_match = separated_sectors(sols) == matrix_sectors(p, bits)?;
    Ok(Completeness { chains: sols.len(), states, dimension: dim, sectors_match, complete: sectors_match && states == dim })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{int, q};
    use crate::separation::solve_chains;

    #[test]
    fn f2_complete() {
        let p = SphereParams::new(vec![int(0); 3], q(1, 2), 1).unwrap();
        let sols = solve_chains(&p, 64).unwrap();
        let c = completeness(&p, &sols, 64).unwrap();
        assert!(c.complete, "{c:?}");
        assert_eq!((c.chains, c.states), (2, 3));
    }
}
