//! Radial/angular splitting `x_ℓ = r z_ℓ`, `x_n = r(1 - z)`.
//!
//! New variables are ordered `(z_1, .., z_{n-1}, r)`.

use crate::diffop::{change_coordinates, CoordMap, DiffOp};
use crate::error::{Error, Result};
use crate::exactalg::poly::{Monomial, MultiPoly};
use crate::exactalg::ratfunc::RatFunc;
use crate::exactalg::rational::{half, int, q, Rational};

use super::euclid::{build_euclid, EuclidStage};
use super::params::{EuclidParams, SphereParams};
use super::sphere::{build_es_sphere, build_qes_sphere, Convention};

#[derive(Clone, Debug, PartialEq)]
pub struct RadialSplit {
    /// The operator in `(z, r)`.
    pub full: DiffOp,
    /// Everything without `z`: an operator in `r` alone.
    pub radial: DiffOp,
    /// The angular block `B(z)` with `full = radial + (1/r) B`.
    pub block: DiffOp,
}

pub fn radial_map(n: usize) -> Result<CoordMap> {
    if n < 2 {
        return Err(Error::InvalidParams("radial split needs n >= 2".into()));
    }
    let xs = (0..n).fold(MultiPoly::zero(n), |s, i| &s + &MultiPoly::var(n, i));
    let mut forward = Vec::with_capacity(n);
    for l in 0..n - 1 {
        forward.push(RatFunc::new(MultiPoly::var(n, l), xs.clone())?);
    }
    forward.push(RatFunc::from_poly(xs));
    let r = MultiPoly::var(n, n - 1);
    let mut inverse: Vec<RatFunc> = (0..n - 1).map(|l| RatFunc::from_poly(&r * &MultiPoly::var(n, l))).collect();
    let z = (0..n - 1).fold(MultiPoly::zero(n), |s, i| &s + &MultiPoly::var(n, i));
    inverse.push(RatFunc::from_poly(&r * &(&MultiPoly::one(n) - &z)));
    CoordMap::new(forward, inverse)
}

/// Splits an operator in `(z, r)` into its `r`-only part and its `1/r` block.
pub fn split(full: DiffOp) -> Result<RadialSplit> {
    let n = full.nvars();
    let rv = n - 1;
    let zvars: Vec<usize> = (0..rv).collect();
    let mut radial = DiffOp::zero(1);
    let mut block = DiffOp::zero(rv);
    let r = RatFunc::var(n, rv);
    let non_sep = || Error::NonSeparating("operator does not split as radial + block/r".into());
    for (alpha, c) in full.terms() {
        let angular = alpha.0[..rv].iter().any(|&e| e > 0)
            || zvars.iter().any(|&v| c.numer().involves(v) || c.denom().involves(v));
        if angular {
            if alpha.0[rv] > 0 {
                return Err(non_sep());
            }
            let cr = &r * c;
            if cr.numer().involves(rv) || cr.denom().involves(rv) {
                return Err(non_sep());
            }
            let map: Vec<usize> = (0..n).map(|i| if i < rv { i } else { 0 }).collect();
            let c_z = cr.embed(rv, &map);
            block.add_term(Monomial(alpha.0[..rv].to_vec()), c_z);
        } else {
            let mut map = vec![0; n];
            map[rv] = 0;
            let c_r = c.embed(1, &map);
            radial.add_term(Monomial(vec![alpha.0[rv]]), c_r);
        }
    }
    Ok(RadialSplit { full, radial, block })
}

pub fn radial_split_sphere(p: &SphereParams) -> Result<RadialSplit> {
    let h = build_qes_sphere(p)?;
    split(change_coordinates(&h, &radial_map(p.n())?)?)
}

pub fn radial_split_euclid(p: &EuclidParams) -> Result<RadialSplit> {
    if p.n() < 2 {
        return Err(Error::InvalidParams("radial split needs n >= 2".into()));
    }
    let h = build_euclid(p, EuclidStage::HhatQes)?;
    split(change_coordinates(&h, &radial_map(p.n())?)?)
}

fn radial_op(c2: MultiPoly, c1: MultiPoly, c0: MultiPoly) -> DiffOp {
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

/// `r(1-r)∂_r² + (G_n + n/2 - (G ± (n+1)/2) r + a r²)∂_r - a k r`.
pub fn sphere_radial_expected(p: &SphereParams, conv: Convention) -> DiffOp {
    let n = p.n() as i64;
    let shift = match conv {
        Convention::Standard => q(n + 1, 2),
        Convention::Flipped => q(-(n + 1), 2),
    };
    let a = p.a().clone();
    let ak = &a * int(p.k() as i64);
    radial_op(
        upoly(&[int(0), int(1), int(-1)]),
        upoly(&[p.partial_g(p.n()) + q(n, 2), -(p.big_g() + shift), a]),
        upoly(&[int(0), -ak]),
    )
}

/// The radial part as listed:
/// `r(r-1)∂_r² - (G_n + n/2 + r((n+1)/2 - G) + a r²)∂_r + a k r`.
pub fn sphere_radial_printed(p: &SphereParams) -> DiffOp {
    let n = p.n() as i64;
    let a = p.a().clone();
    let ak = &a * int(p.k() as i64);
    radial_op(
        upoly(&[int(0), int(-1), int(1)]),
        upoly(&[-(p.partial_g(p.n()) + q(n, 2)), p.big_g() - q(n + 1, 2), -a]),
        upoly(&[int(0), ak]),
    )
}

/// `h^(ES)` on `S^{n-1}` with parameters `γ_1..γ_n`.
pub fn sphere_block_expected(p: &SphereParams) -> Result<DiffOp> {
    let sub = SphereParams::new(p.gammas()[..p.n()].to_vec(), int(0), p.k())?;
    Ok(build_es_sphere(&sub))
}

/// `-4R∂_R² + (bR² + 4ωR + 4Σγ' - 4n)∂_R - bkR`, as listed.
pub fn euclid_radial_printed(p: &EuclidParams) -> DiffOp {
    let n = p.n() as i64;
    let b = p.b().clone();
    radial_op(
        upoly(&[int(0), int(-4)]),
        upoly(&[int(4) * p.gamma_sum() - int(4 * n), int(4) * p.omega(), b.clone()]),
        upoly(&[int(0), -(b * int(p.k() as i64))]),
    )
}

/// `-4 h^(ES)_{S^{n-1}}` with `γ_j = ½ - γ'_j`, `j = 1..n`.
pub fn euclid_block_expected(p: &EuclidParams) -> Result<DiffOp> {
    let g: Vec<Rational> = p.gammas().iter().map(|gp| half() - gp).collect();
    let sub = SphereParams::new(g, int(0), p.k())?;
    Ok(build_es_sphere(&sub).scale(&int(-4)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_split_n2_n3() {
        for n in 2..=3 {
            let g = [q(1, 3), q(-2, 5), q(7, 4), q(3, 11)];
            let p = SphereParams::new(g[..=n].to_vec(), q(2, 9), 2).unwrap();
            let s = radial_split_sphere(&p).unwrap();
            assert_eq!(s.radial, sphere_radial_expected(&p, Convention::Standard));
            assert_eq!(s.block, sphere_block_expected(&p).unwrap());
            let flipped = sphere_radial_expected(&p, Convention::Flipped);
            assert_eq!(sphere_radial_printed(&p), flipped.scale(&int(-1)));
        }
    }

    #[test]
    fn euclid_split_n2() {
        let p = EuclidParams::new(vec![q(3, 4), q(-1, 3)], q(2, 5), q(1, 7), 1).unwrap();
        let s = radial_split_euclid(&p).unwrap();
        assert_eq!(s.radial, euclid_radial_printed(&p));
        assert_eq!(s.block, euclid_block_expected(&p).unwrap());
        assert_eq!(s.radial.coeff(&[2]), RatFunc::from_poly(upoly(&[int(0), int(-4)])));
    }
}
