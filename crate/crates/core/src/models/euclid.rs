//! The Euclidean family in `Y_j = y_j²` coordinates.

use crate::diffop::{gl_generator, DiffOp, GaugeFactor, GlKind};
use crate::error::Result;
use crate::exactalg::poly::{Monomial, MultiPoly};
use crate::exactalg::ratfunc::RatFunc;
use crate::exactalg::rational::{int, q, Rational};

use super::params::EuclidParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EuclidStage {
    /// `-2Σ(2Y_j∂_j² + ∂_j) + ω²ΣY_j + Σ(γ'_j² - ¼)/Y_j`
    HEs,
    /// `-4[ΣY_j∂_j² - Σ(γ'_j - 1 + ωY_j)∂_j]`
    HhatEs,
    /// `(ΣY)(ΣY_j∂_j - k)`
    B,
    HhatQes,
    /// `H^(ES)` plus the listed sextic-type additions
    HQes,
}

fn ysum(n: usize) -> MultiPoly {
    (0..n).fold(MultiPoly::zero(n), |acc, i| &acc + &MultiPoly::var(n, i))
}

fn d2(n: usize, i: usize) -> Monomial {
    let mut e = vec![0; n];
    e[i] = 2;
    Monomial(e)
}

pub fn build_euclid(p: &EuclidParams, stage: EuclidStage) -> Result<DiffOp> {
    let n = p.n();
    match stage {
        EuclidStage::HEs => {
            let mut op = DiffOp::multiplication(euclid_es_potential(p)?);
            for j in 0..n {
                op.add_term(d2(n, j), RatFunc::var(n, j).scale(&int(-4)));
                op.add_term(Monomial::var(n, j), RatFunc::constant(n, int(-2)));
            }
            Ok(op)
        }
        EuclidStage::HhatEs => {
            let mut op = DiffOp::zero(n);
            for j in 0..n {
                op.add_term(d2(n, j), RatFunc::var(n, j).scale(&int(-4)));
                let c = &MultiPoly::constant(n, p.gamma(j + 1) - int(1)) + &MultiPoly::var(n, j).scale(p.omega());
                op.add_term(Monomial::var(n, j), RatFunc::from_poly(c.scale(&int(4))));
            }
            Ok(op)
        }
        EuclidStage::B => {
            let mut op = DiffOp::zero(n);
            for j in 0..n {
                op = &op + &gl_generator(GlKind::Raise(j), p.k(), n)?;
            }
            Ok(op)
        }
        EuclidStage::HhatQes => {
            let h = build_euclid(p, EuclidStage::HhatEs)?;
            Ok(&h + &build_euclid(p, EuclidStage::B)?.scale(p.b()))
        }
        EuclidStage::HQes => {
            let h = build_euclid(p, EuclidStage::HEs)?;
            Ok(&h + &DiffOp::multiplication(RatFunc::from_poly(qes_extra_potential_printed(p))))
        }
    }
}

/// `ω²ΣY_j + Σ(γ'_j² - ¼)/Y_j`.
pub fn euclid_es_potential(p: &EuclidParams) -> Result<RatFunc> {
    let n = p.n();
    let w2 = p.omega() * p.omega();
    let mut v = RatFunc::from_poly(ysum(n).scale(&w2));
    for j in 0..n {
        let c = p.gamma(j + 1) * p.gamma(j + 1) - q(1, 4);
        v = &v + &RatFunc::new(MultiPoly::constant(n, c), MultiPoly::var(n, j))?;
    }
    Ok(v)
}

/// `(b²/16)S³ + (b/2)[S(Σγ' - n - 2k - 1) + ωS²]`, `S = ΣY_j`.
pub fn qes_extra_potential_printed(p: &EuclidParams) -> MultiPoly {
    let n = p.n();
    let s = ysum(n);
    let b = p.b();
    let s2 = &s * &s;
    let lin = p.gamma_sum() - int(n as i64) - int(2 * p.k() as i64) - int(1);
    let cubic = (&s2 * &s).scale(&(b * b / int(16)));
    let bracket = &s.scale(&lin) + &s2.scale(p.omega());
    &cubic + &bracket.scale(&(b / int(2)))
}

/// `ψ_0 = exp(-(ω/2)ΣY_j) Π Y_j^{¼ - γ'_j/2}`.
pub fn euclid_psi0(p: &EuclidParams) -> Result<GaugeFactor> {
    let n = p.n();
    let mut g = GaugeFactor::trivial(n).exponential(ysum(n).scale(&(-p.omega() / int(2))))?;
    for j in 0..n {
        g = g.power(MultiPoly::var(n, j), q(1, 4) - p.gamma(j + 1) / int(2))?;
    }
    Ok(g)
}

/// `U = exp((b/16)(ΣY_j)²)`.
pub fn euclid_u(p: &EuclidParams) -> Result<GaugeFactor> {
    let n = p.n();
    let s = ysum(n);
    GaugeFactor::trivial(n).exponential((&s * &s).scale(&(p.b() / int(16))))
}

/// Ground-state energy for `ψ_0`: `ĥ^(ES)·1 = 0` forces `E_0 = 2ω(n - Σγ'_j)`.
pub fn euclid_e0_measured(p: &EuclidParams) -> Rational {
    int(2) * p.omega() * (int(p.n() as i64) - p.gamma_sum())
}

/// Substitutes `Y_j = y_j²` into a function of the `Y`'s.
pub fn to_cartesian(f: &RatFunc) -> Result<RatFunc> {
    let n = f.nvars();
    let sq: Vec<RatFunc> = (0..n).map(|i| RatFunc::from_poly(MultiPoly::var(n, i).pow(2))).collect();
    f.substitute(&sq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffop::{gauge_conjugate, Direction};

    fn ep(g: &[Rational], w: Rational, b: Rational, k: u32) -> EuclidParams {
        EuclidParams::new(g.to_vec(), w, b, k).unwrap()
    }

    #[test]
    fn hhat_on_low_degree() {
        let p = ep(&[q(3, 4), q(-1, 3)], q(2, 5), int(0), 1);
        let h = build_euclid(&p, EuclidStage::HhatEs).unwrap();
        assert!(h.apply_poly(&MultiPoly::one(2)).unwrap().is_zero());
        let img = h.apply_poly(&MultiPoly::var(2, 0)).unwrap();
        let expect = &MultiPoly::constant(2, int(4) * (q(3, 4) - int(1))) + &MultiPoly::var(2, 0).scale(&q(8, 5));
        assert_eq!(img, expect);
        assert_eq!(build_euclid(&p, EuclidStage::HhatQes).unwrap(), h);
    }

    #[test]
    fn ground_state_rotation() {
        let p = ep(&[q(3, 4), q(-1, 3), q(5, 2)], q(2, 5), q(1, 7), 2);
        let h = build_euclid(&p, EuclidStage::HEs).unwrap();
        let h = &h - &DiffOp::constant(3, euclid_e0_measured(&p));
        let rot = gauge_conjugate(&h, &euclid_psi0(&p).unwrap(), Direction::Inverse).unwrap();
        assert_eq!(rot, build_euclid(&p, EuclidStage::HhatEs).unwrap());
    }
}
