use num_traits::{Signed, Zero};

use crate::diffop::{gauge_conjugate, DiffOp, Direction, GaugeFactor};
use crate::error::{Error, Result};
use crate::exactalg::matrix::QMatrix;
use crate::exactalg::poly::MultiPoly;
use crate::exactalg::rational::{int, pochhammer, q, Rational};
use crate::exactalg::unipoly::UniPoly;
use crate::repspace::{eigen_of, matrix_rep, unit_span, JointEigen};

use super::SeparationChain;

#[derive(Clone, Debug, PartialEq)]
pub struct Reduction {
    pub a: Rational,
    /// The unused root of the indicial quadratic.
    pub other: Rational,
    /// `u^{-A} (D_ℓ + c_{ℓ-1}/u) u^A`.
    pub op: DiffOp,
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer().sqrt(), r.denom().sqrt());
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Rational::new(n, d))
}

/// `A² + A(G_ℓ + ℓ/2 - 1) + c_{ℓ-1}`.
pub fn indicial(chain: &SeparationChain, l: usize, c_prev: &Rational, a: &Rational) -> Rational {
    let b = chain.params.partial_g(l) + q(l as i64, 2) - int(1);
    a * a + a * b + c_prev
}

/// Conjugates by `u^A` for a given root `A` of the indicial quadratic.
pub fn reduce_with(chain: &SeparationChain, l: usize, c_prev: &Rational, a: &Rational) -> Result<Reduction> {
    if l == 0 || l > chain.n() {
        return Err(Error::IndexOutOfRange(format!("separation level {l}")));
    }
    if !indicial(chain, l, c_prev, a).is_zero() {
        return Err(Error::Inadmissible(format!("A = {a} does not solve the indicial equation at level {l}")));
    }
    let b = chain.params.partial_g(l) + q(l as i64, 2) - int(1);
    let other = -b - a;
    let g = GaugeFactor::trivial(1).power(MultiPoly::var(1, 0), a.clone())?;
    let op = gauge_conjugate(&chain.with_constant(l, c_prev)?, &g, Direction::Inverse)?;
    if !op.is_polynomial() {
        return Err(Error::Inadmissible(format!("level {l} does not reduce to polynomial form")));
    }
    Ok(Reduction { a: a.clone(), other, op })
}

/// Picks the nonnegative integer root of the indicial quadratic; when both
/// qualify, the smaller one.
pub fn reduce_hypergeometric(chain: &SeparationChain, l: usize, c_prev: &Rational) -> Result<Reduction> {
    let b = chain.params.partial_g(l) + q(l as i64, 2) - int(1);
    let disc = &b * &b - int(4) * c_prev;
    let s = rational_sqrt(&disc)
        .ok_or_else(|| Error::Inadmissible(format!("no rational exponent at level {l} for c = {c_prev}")))?;
    let mut roots = vec![(-&b - &s) / int(2), (-&b + &s) / int(2)];
    roots.retain(|r| r.is_integer() && !r.is_negative());
    roots.sort();
    let a = roots
        .first()
        .ok_or_else(|| Error::Inadmissible(format!("no nonnegative integer exponent at level {l}")))?;
    reduce_with(chain, l, c_prev, a)
}

/// Terminating `₂F₁(-q, 2A + q + G_{ℓ+1} + (ℓ-1)/2; 2A + G_ℓ + ℓ/2; u)`.
pub fn hypergeometric_factor(
    l: usize,
    q_l: u32,
    p: &crate::models::SphereParams,
    a_l: &Rational,
) -> Result<UniPoly> {
    let li = l as i64;
    let alpha = -int(q_l as i64);
    let beta = int(2) * a_l + int(q_l as i64) + p.partial_g(l + 1) + q(li - 1, 2);
    let gamma = int(2) * a_l + p.partial_g(l) + q(li, 2);
    let mut coeffs = Vec::with_capacity(q_l as usize + 1);
    let mut fact = int(1);
    for j in 0..=q_l {
        if j > 0 {
            fact *= int(j as i64);
        }
        let den = pochhammer(&gamma, j);
        if den.is_zero() {
            return Err(Error::HypergeometricPole(format!("(c)_{j} = 0 with c = {gamma}")));
        }
        coeffs.push(pochhammer(&alpha, j) * pochhammer(&beta, j) / (den * &fact));
    }
    Ok(UniPoly::new(coeffs))
}

#[derive(Clone, Debug, PartialEq)]
pub struct HeunBlock {
    pub a: Rational,
    pub m: u32,
    pub op: DiffOp,
    /// Action on `1, u, .., u^m`.
    pub matrix: QMatrix,
    pub charpoly: UniPoly,
    /// Eigenvalues `E` with coefficient vectors of the Heun polynomials.
    pub eigen: Vec<JointEigen>,
}

pub fn heun_spectrum(chain: &SeparationChain, c_prev: &Rational, a_n: &Rational, bits: u32) -> Result<HeunBlock> {
    let n = chain.n();
    let k = int(chain.params.k() as i64);
    let m = &k - a_n;
    if !m.is_integer() || m.is_negative() {
        return Err(Error::Inadmissible(format!("m = k - A_n = {m} is not a nonnegative integer")));
    }
    let m = m.to_integer().try_into().map_err(|_| Error::Inadmissible("m too large".into()))?;
    let red = reduce_with(chain, n, c_prev, a_n)?;
    let rep = matrix_rep(&red.op, 1, m)?;
    if !rep.is_invariant() {
        return Err(Error::NotInvariant { n: 1, k: m });
    }
    let (charpoly, eigen) = eigen_of(&rep.matrix, &unit_span(rep.dim()), bits)?;
    Ok(HeunBlock { a: a_n.clone(), m, op: red.op, matrix: rep.matrix, charpoly, eigen })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::q as qq;
    use crate::models::SphereParams;
    use crate::separation::derive_separation_ops;

    fn f2() -> SeparationChain {
        let p = SphereParams::new(vec![int(0); 3], qq(1, 2), 1).unwrap();
        derive_separation_ops(&p).unwrap()
    }

    fn exact_values(b: &HeunBlock) -> Vec<Rational> {
        b.eigen.iter().map(|e| e.value.exact().unwrap().clone()).collect()
    }

    #[test]
    fn f2_heun_blocks() {
        let ch = f2();
        let b = heun_spectrum(&ch, &int(-1), &int(1), 64).unwrap();
        assert_eq!(b.m, 0);
        assert_eq!(exact_values(&b), vec![qq(-3, 2)]);
        let b = heun_spectrum(&ch, &int(0), &int(0), 64).unwrap();
        assert_eq!(exact_values(&b), vec![qq(-1, 2), int(-1)]);
        assert!(heun_spectrum(&ch, &int(0), &int(2), 64).is_err());
    }

    #[test]
    fn f1_whole_problem_radial() {
        let p = SphereParams::new(vec![int(0), int(0)], qq(-5, 8), 1).unwrap();
        let ch = derive_separation_ops(&p).unwrap();
        let b = heun_spectrum(&ch, &int(0), &int(0), 64).unwrap();
        assert_eq!(exact_values(&b), vec![qq(1, 4), qq(-5, 4)]);
    }

    #[test]
    fn exponent_selection() {
        let ch = f2();
        // γ = 0, ℓ = 2: A² - 1 = 0 at c₁ = -1
        assert_eq!(reduce_hypergeometric(&ch, 2, &int(-1)).unwrap().a, int(1));
        assert_eq!(reduce_hypergeometric(&ch, 2, &int(0)).unwrap().a, int(0));
        assert_eq!(reduce_hypergeometric(&ch, 1, &int(0)).unwrap().a, int(0));
        assert!(reduce_hypergeometric(&ch, 2, &int(3)).is_err());
    }

    #[test]
    fn hypergeometric_is_eigenfunction() {
        let p = SphereParams::new(vec![qq(1, 3), qq(-2, 5), qq(3, 4), qq(5, 7)], qq(2, 9), 3).unwrap();
        let ch = derive_separation_ops(&p).unwrap();
        for (l, a, qv) in [(1usize, int(0), 2u32), (2, int(1), 1), (2, int(2), 0)] {
            let c_prev = if l == 1 { int(0) } else { -(&a * (&a + p.partial_g(l) + qq(l as i64 - 2, 2))) };
            let red = reduce_with(&ch, l, &c_prev, &a).unwrap();
            let v = hypergeometric_factor(l, qv, &p, &a).unwrap();
            assert_eq!(v.degree(), Some(qv as usize));
            let img = red.op.apply_poly(&v.to_multi(1, 0)).unwrap();
            let a1 = &a + int(qv as i64);
            let c = -(&a1 * (&a1 + p.partial_g(l + 1) + qq(l as i64 - 1, 2)));
            assert_eq!(img, v.to_multi(1, 0).scale(&c));
        }
        assert_eq!(hypergeometric_factor(1, 0, &p, &int(0)).unwrap(), UniPoly::one());
    }

    #[test]
    fn pole_reported() {
        // c = 2A + G_1 + 1/2 = -1 with q = 2 hits (c)_1 = 0
        let p = SphereParams::new(vec![qq(-3, 2), int(0), int(0)], int(0), 2).unwrap();
        assert!(matches!(hypergeometric_factor(1, 2, &p, &int(0)), Err(Error::HypergeometricPole(_))));
    }
}
