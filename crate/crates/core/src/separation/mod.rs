//! Separation of `h^(QES)` in spherical coordinates
//! `x_1 = u_1⋯u_n`, `x_j = (1 - u_{j-1}) u_j⋯u_n`.

mod chain;
mod complete;
mod reduce;

pub use chain::{assemble, solve_chains, ChainRecord, ChainSolution, SeparatedEigenfunction};
pub use complete::{completeness, matrix_sectors, separated_sectors, Completeness};
pub use reduce::{
    heun_spectrum, hypergeometric_factor, reduce_hypergeometric, reduce_with, HeunBlock, Reduction,
};

use crate::diffop::{change_coordinates, CoordMap, DiffOp};
use crate::error::{Error, Result};
use crate::exactalg::poly::{Monomial, MultiPoly};
use crate::exactalg::ratfunc::RatFunc;
use crate::exactalg::rational::{int, q, Rational};
use crate::models::radial::split;
use crate::models::{build_qes_sphere, SphereParams};

pub fn spherical_map(n: usize) -> Result<CoordMap> {
    if n == 0 {
        return Err(Error::InvalidParams("spherical coordinates need n >= 1".into()));
    }
    let partial = |l: usize| (0..l).fold(MultiPoly::zero(n), |s, i| &s + &MultiPoly::var(n, i));
    let mut forward = Vec::with_capacity(n);
    for l in 1..n {
        forward.push(RatFunc::new(partial(l), partial(l + 1))?);
    }
    forward.push(RatFunc::from_poly(partial(n)));
    let u = |i: usize| MultiPoly::var(n, i);
    let inverse = (0..n)
        .map(|j| {
            let tail = (j..n).fold(MultiPoly::one(n), |acc, i| &acc * &u(i));
            let p = if j == 0 { tail } else { &(&MultiPoly::one(n) - &u(j - 1)) * &tail };
            RatFunc::from_poly(p)
        })
        .collect();
    CoordMap::new(forward, inverse)
}

/// The one-variable separation operators `D_1..D_n`, with
/// `h = D_n + (1/u_n)(D_{n-1} + (1/u_{n-1})(⋯ + (1/u_2) D_1))`.
#[derive(Clone, Debug)]
pub struct SeparationChain {
    pub params: SphereParams,
    pub map: CoordMap,
    pub ops: Vec<DiffOp>,
}

impl SeparationChain {
    pub fn n(&self) -> usize {
        self.params.n()
    }

    /// `D_ℓ`, 1-based.
    pub fn op(&self, l: usize) -> &DiffOp {
        &self.ops[l - 1]
    }

    pub fn radial(&self) -> &DiffOp {
        self.ops.last().expect("chain is never empty")
    }

    /// `D_ℓ + c_{ℓ-1}/u_ℓ`.
    pub fn with_constant(&self, l: usize, c_prev: &Rational) -> Result<DiffOp> {
        let inv_u = RatFunc::new(MultiPoly::constant(1, c_prev.clone()), MultiPoly::var(1, 0))?;
        Ok(self.op(l) + &DiffOp::multiplication(inv_u))
    }
}

pub fn derive_separation_ops(p: &SphereParams) -> Result<SeparationChain> {
    let n = p.n();
    let map = spherical_map(n)?;
    let mut cur = change_coordinates(&build_qes_sphere(p)?, &map)?;
    let mut ops = Vec::with_capacity(n);
    while cur.nvars() > 1 {
        let s = split(cur)?;
        ops.push(s.radial);
        cur = s.block;
    }
    ops.push(cur);
    ops.reverse();
    Ok(SeparationChain { params: p.clone(), map, ops })
}

fn one_var(c2: MultiPoly, c1: MultiPoly, c0: MultiPoly) -> DiffOp {
    let mut op = DiffOp::multiplication(RatFunc::from_poly(c0));
    op.add_term(Monomial(vec![1]), RatFunc::from_poly(c1));
    op.add_term(Monomial(vec![2]), RatFunc::from_poly(c2));
    op
}

fn upoly(cs: &[Rational]) -> MultiPoly {
    let mut p = MultiPoly::zero(1);
    for (e, c) in cs.iter().enumerate() {
        p.add_term(Monomial(vec![e as u32]), c.clone());
    }
    p
}

/// `u(1-u)d² + (G_ℓ + ℓ/2 - u((ℓ+1)/2 + G_{ℓ+1}))d`, as listed.
pub fn printed_angular(p: &SphereParams, l: usize) -> DiffOp {
    let li = l as i64;
    one_var(
        upoly(&[int(0), int(1), int(-1)]),
        upoly(&[p.partial_g(l) + q(li, 2), -(p.partial_g(l + 1) + q(li + 1, 2))]),
        MultiPoly::zero(1),
    )
}

/// `u(1-u)d² + (G_n + n/2 - u(-(n+1)/2 + G) + a u²)d - a k u`, as listed.
pub fn printed_radial(p: &SphereParams) -> DiffOp {
    let n = p.n() as i64;
    let a = p.a().clone();
    one_var(
        upoly(&[int(0), int(1), int(-1)]),
        upoly(&[p.partial_g(p.n()) + q(n, 2), q(n + 1, 2) - p.big_g(), a.clone()]),
        upoly(&[int(0), -(a * int(p.k() as i64))]),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: usize) -> SphereParams {
        let g = [q(1, 3), q(-2, 5), q(3, 4), q(5, 7)];
        SphereParams::new(g[..=n].to_vec(), q(2, 9), 2).unwrap()
    }

    #[test]
    fn map_n2() {
        let m = spherical_map(2).unwrap();
        let x = |i| MultiPoly::var(2, i);
        assert_eq!(m.forward()[1], RatFunc::from_poly(&x(0) + &x(1)));
        assert_eq!(m.forward()[0], RatFunc::new(x(0), &x(0) + &x(1)).unwrap());
        let u = |i| MultiPoly::var(2, i);
        assert_eq!(m.inverse()[0], RatFunc::from_poly(&u(0) * &u(1)));
    }

    #[test]
    fn monomial_factorization() {
        // x1^q1 x2^q2 x3^q3 = (1-u1)^q2 (1-u2)^q3 u1^m1 u2^m2 u3^m3
        let m = spherical_map(3).unwrap();
        let (q1, q2, q3) = (2u32, 1u32, 3u32);
        let x = MultiPoly::monomial(vec![q1, q2, q3], int(1));
        let pulled = m.pull(&RatFunc::from_poly(x)).unwrap();
        let u = |i| MultiPoly::var(3, i);
        let one = MultiPoly::one(3);
        let expect = &(&(&one - &u(0)).pow(q2) * &(&one - &u(1)).pow(q3))
            * &MultiPoly::monomial(vec![q1, q1 + q2, q1 + q2 + q3], int(1));
        assert_eq!(pulled, RatFunc::from_poly(expect));
    }

    #[test]
    fn angular_ops_match_listed() {
        for n in 2..=3 {
            let p = params(n);
            let ch = derive_separation_ops(&p).unwrap();
            for l in 1..n {
                assert_eq!(ch.op(l), &printed_angular(&p, l));
            }
            let diff = ch.radial() - &printed_radial(&p);
            let expect = one_var(MultiPoly::zero(1), upoly(&[int(0), -int(n as i64 + 1)]), MultiPoly::zero(1));
            assert_eq!(diff, expect);
        }
    }
}
