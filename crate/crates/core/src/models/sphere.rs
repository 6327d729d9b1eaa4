//! Operators of the sphere family in the simplex chart `x_1..x_n`.

use crate::diffop::{gl_generator, DiffOp, GaugeFactor, GlKind};
use crate::error::{Error, Result};
use crate::exactalg::poly::{Monomial, MultiPoly};
use crate::exactalg::ratfunc::RatFunc;
use crate::exactalg::rational::{half, int, q, Rational};

use super::params::SphereParams;

/// Sign in front of `(n+1)/2` in the first-order term of `h^(ES)`.
///
/// `Standard` is the operator as defined with the Laplace-Beltrami
/// second-order part; `Flipped` replaces `(n+1)/2` by `-(n+1)/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    Standard,
    Flipped,
}

fn x(n: usize, i: usize) -> RatFunc {
    RatFunc::var(n, i)
}

fn xsum(n: usize) -> MultiPoly {
    (0..n).fold(MultiPoly::zero(n), |acc, i| &acc + &MultiPoly::var(n, i))
}

fn second(n: usize, i: usize, j: usize) -> Monomial {
    let mut e = vec![0; n];
    e[i] += 1;
    e[j] += 1;
    Monomial(e)
}

/// `Σ (x_i δ_ij - x_i x_j) ∂_i ∂_j`.
pub fn sphere_second_order(n: usize) -> DiffOp {
    let mut op = DiffOp::zero(n);
    for i in 0..n {
        for j in 0..n {
            let mut c = -(&x(n, i) * &x(n, j));
            if i == j {
                c = &c + &x(n, i);
            }
            op.add_term(second(n, i, j), c);
        }
    }
    op
}

pub fn build_es_sphere(p: &SphereParams) -> DiffOp {
    build_es_sphere_with(p, Convention::Standard)
}

pub fn build_es_sphere_with(p: &SphereParams, conv: Convention) -> DiffOp {
    let n = p.n();
    let mut shift = q(n as i64 + 1, 2);
    if conv == Convention::Flipped {
        shift = -shift;
    }
    let slope = p.big_g() + shift;
    let mut op = sphere_second_order(n);
    for i in 0..n {
        let c = RatFunc::from_poly(
            &MultiPoly::constant(n, half() + p.gamma(i + 1)) - &MultiPoly::var(n, i).scale(&slope),
        );
        op.add_term(Monomial::var(n, i), c);
    }
    op
}

/// Generator form with the `J^0_ii` coefficient read off the printed
/// expression: `Σ_ij (δ_ij J_ii J_j^- - J_ii J_jj) + Σ ((½+γ_i) J_i^- - c J_ii)`.
/// Products are operator compositions.
pub fn es_generator_form(p: &SphereParams, diag_coefficient: &Rational) -> Result<DiffOp> {
    let n = p.n();
    let k = p.k();
    let jm = |i| gl_generator(GlKind::Lower(i), k, n);
    let j0 = |i, j| gl_generator(GlKind::Diag(i, j), k, n);
    let mut op = DiffOp::zero(n);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                op = &op + &j0(i, i)?.compose(&jm(j)?)?;
            }
            op = &op - &j0(i, i)?.compose(&j0(j, j)?)?;
        }
        op = &op + &jm(i)?.scale(&(half() + p.gamma(i + 1)));
        op = &op - &j0(i, i)?.scale(diag_coefficient);
    }
    Ok(op)
}

/// The generator form exactly as printed: `J^0_ii` coefficient `G + (n+1)/2`.
pub fn build_es_from_generators_printed(p: &SphereParams) -> Result<DiffOp> {
    es_generator_form(p, &(p.big_g() + q(p.n() as i64 + 1, 2)))
}

/// Generator form equal to `h^(ES)`. Composition `J_ii J_jj` contributes
/// an extra `δ_ij x_i ∂_i`, absorbed by the coefficient `G + (n-1)/2`.
pub fn build_es_from_generators(p: &SphereParams) -> Result<DiffOp> {
    es_generator_form(p, &(p.big_g() + q(p.n() as i64 - 1, 2)))
}

/// `h^(QES) = h^(ES) + a Σ J_i^+(k)`.
pub fn build_qes_sphere(p: &SphereParams) -> Result<DiffOp> {
    build_qes_sphere_with(p, Convention::Standard)
}

pub fn build_qes_sphere_with(p: &SphereParams, conv: Convention) -> Result<DiffOp> {
    let n = p.n();
    let mut op = build_es_sphere_with(p, conv);
    for i in 0..n {
        op = &op + &gl_generator(GlKind::Raise(i), p.k(), n)?.scale(p.a());
    }
    Ok(op)
}

/// `Σ J_i^+(k) = x (Σ x_j ∂_j - k)`.
pub fn raising_sum(n: usize, k: u32) -> Result<DiffOp> {
    let mut op = DiffOp::zero(n);
    for i in 0..n {
        op = &op + &gl_generator(GlKind::Raise(i), k, n)?;
    }
    Ok(op)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntegralKind {
    /// `I_ij`, `1 ≤ i < j ≤ n`
    Pair(usize, usize),
    /// `I_i`, `1 ≤ i ≤ n`
    Single(usize),
}

/// The second-order integrals, indices 1-based as in the usual labelling.
///
/// `I_i` carries `½((1-x) - x_i)` in its first-order part, which is what
/// makes it commute with `h^(ES)` and sum (with the `I_ij`) to it.
pub fn build_integral(kind: IntegralKind, p: &SphereParams) -> Result<DiffOp> {
    integral_with_tail(kind, p, -1)
}

/// `I_i` with the printed `½((1-x) + (2n+1)x_i)`; these commute with the
/// flipped-convention operator instead. `I_ij` is unchanged.
pub fn build_integral_printed(kind: IntegralKind, p: &SphereParams) -> Result<DiffOp> {
    integral_with_tail(kind, p, 2 * p.n() as i64 + 1)
}

fn integral_with_tail(kind: IntegralKind, p: &SphereParams, tail: i64) -> Result<DiffOp> {
    let n = p.n();
    match kind {
        IntegralKind::Pair(i, j) => {
            if !(1 <= i && i < j && j <= n) {
                return Err(Error::IndexOutOfRange(format!("I_{i}{j} with n = {n}")));
            }
            let (a, b) = (i - 1, j - 1);
            let xx = &x(n, a) * &x(n, b);
            let mut op = DiffOp::zero(n);
            op.add_term(second(n, a, a), xx.clone());
            op.add_term(second(n, b, b), xx.clone());
            op.add_term(second(n, a, b), xx.scale(&int(-2)));
            let c = &(&x(n, b).scale(p.gamma(i)) - &x(n, a).scale(p.gamma(j)))
                + &(&x(n, b) - &x(n, a)).scale(&half());
            op.add_term(Monomial::var(n, a), c.clone());
            op.add_term(Monomial::var(n, b), -c);
            Ok(op)
        }
        IntegralKind::Single(i) => {
            if !(1 <= i && i <= n) {
                return Err(Error::IndexOutOfRange(format!("I_{i} with n = {n}")));
            }
            let a = i - 1;
            let one_minus = RatFunc::from_poly(&MultiPoly::one(n) - &xsum(n));
            let mut op = DiffOp::zero(n);
            op.add_term(second(n, a, a), &x(n, a) * &one_minus);
            let c = &(&one_minus.scale(p.gamma(i)) - &x(n, a).scale(p.gamma(n + 1)))
                + &(&one_minus + &x(n, a).scale(&int(tail))).scale(&half());
            op.add_term(Monomial::var(n, a), c);
            Ok(op)
        }
    }
}

/// `L_ℓ = Σ_{i≤ℓ} I_{i,ℓ+1}` for `ℓ = 1..n-1`.
pub fn build_l_chain(p: &SphereParams) -> Result<Vec<DiffOp>> {
    let n = p.n();
    if n < 2 {
        return Err(Error::InvalidParams("the L chain needs n >= 2".into()));
    }
    (1..n)
        .map(|l| {
            let mut op = DiffOp::zero(n);
            for i in 1..=l {
                op = &op + &build_integral(IntegralKind::Pair(i, l + 1), p)?;
            }
            Ok(op)
        })
        .collect()
}

/// `Ψ_0 = Π x_i^{γ_i/2} (1-x)^{γ_{n+1}/2}`.
pub fn psi0(p: &SphereParams) -> Result<GaugeFactor> {
    let n = p.n();
    let mut g = GaugeFactor::trivial(n);
    for i in 0..n {
        g = g.power(MultiPoly::var(n, i), p.gamma(i + 1) * half())?;
    }
    g.power(&MultiPoly::one(n) - &xsum(n), p.gamma(n + 1) * half())
}

/// `exp(-(a/2) x)`, the QES gauge factor as usually quoted.
pub fn qes_gauge_printed(p: &SphereParams) -> Result<GaugeFactor> {
    let n = p.n();
    GaugeFactor::trivial(n).exponential(xsum(n).scale(&(-p.a() * half())))
}

/// `exp(-(a/2) x) (1-x)^{-a/2}`: removes every `a`-proportional first-order
/// term of `h^(QES)` (the exponential alone leaves `a x_i ∂_i`).
pub fn qes_gauge_corrected(p: &SphereParams) -> Result<GaugeFactor> {
    let n = p.n();
    qes_gauge_printed(p)?.power(&MultiPoly::one(n) - &xsum(n), -p.a() * half())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    Simplex,
    Cartesian,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    Es,
    Qes,
}

/// `V_0`, plus `a²x² - a(a - 2G - n - 1 + 4k) x` for the QES family.
/// The Cartesian chart substitutes `x_i = s_i²`.
pub fn potentials(p: &SphereParams, chart: Chart, which: Which) -> Result<RatFunc> {
    let n = p.n();
    let one = MultiPoly::one(n);
    let xs = xsum(n);
    let mut v = RatFunc::zero(n);
    for i in 0..n {
        let t = RatFunc::new(MultiPoly::constant(n, p.a_coef(i + 1)), MultiPoly::var(n, i))?;
        v = &v + &t;
    }
    v = &v + &RatFunc::new(MultiPoly::constant(n, p.a_coef(n + 1)), &one - &xs)?;
    if which == Which::Qes {
        v = &v + &RatFunc::from_poly(qes_extra_potential(p));
    }
    match chart {
        Chart::Simplex => Ok(v),
        Chart::Cartesian => {
            let sq: Vec<RatFunc> = (0..n).map(|i| RatFunc::from_poly(MultiPoly::var(n, i).pow(2))).collect();
            v.substitute(&sq)
        }
    }
}

/// `a²x² - a(a - 2G - n - 1 + 4k) x`.
pub fn qes_extra_potential(p: &SphereParams) -> MultiPoly {
    let n = p.n();
    let xs = xsum(n);
    let a = p.a();
    let lin = a * (a - int(2) * p.big_g() - int(n as i64 + 1) + int(4 * p.k() as i64));
    &(&xs * &xs).scale(&(a * a)) - &xs.scale(&lin)
}

/// The printed ground-state constant `G² + (n-1)G + 1`.
pub fn e0_printed(p: &SphereParams) -> Rational {
    let g = p.big_g();
    &g * &g + int(p.n() as i64 - 1) * &g + int(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::q;

    fn sp(g: &[Rational], a: Rational, k: u32) -> SphereParams {
        SphereParams::new(g.to_vec(), a, k).unwrap()
    }

    #[test]
    fn es_n1_form() {
        let p = sp(&[int(0), int(0)], int(0), 0);
        let h = build_es_sphere(&p);
        let x = RatFunc::var(1, 0);
        let expect = &DiffOp::term(vec![2], &x * &(&RatFunc::one(1) - &x))
            + &DiffOp::term(vec![1], &RatFunc::constant(1, half()) - &x);
        assert_eq!(h, expect);
    }

    #[test]
    fn es_image_of_x1() {
        let g = [q(1, 3), q(-2, 5), q(7, 4)];
        let p = sp(&g, int(0), 0);
        let h = build_es_sphere(&p);
        assert!(h.apply_poly(&MultiPoly::one(2)).unwrap().is_zero());
        let img = h.apply_poly(&MultiPoly::var(2, 0)).unwrap();
        let expect = &MultiPoly::constant(2, &g[0] + half())
            - &MultiPoly::var(2, 0).scale(&(p.big_g() + q(3, 2)));
        assert_eq!(img, expect);
    }

    #[test]
    fn qes_image_of_one() {
        let p = sp(&[int(0), int(1), int(2)], q(3, 7), 1);
        let h = build_qes_sphere(&p).unwrap();
        let img = h.apply_poly(&MultiPoly::one(2)).unwrap();
        assert_eq!(img, xsum(2).scale(&q(-3, 7)));
    }

    #[test]
    fn generator_form_matches() {
        let p = sp(&[q(1, 2), q(2, 3), q(-1, 5), int(3)], q(1, 9), 2);
        assert_eq!(build_es_from_generators(&p).unwrap(), build_es_sphere(&p));
        let printed = build_es_from_generators_printed(&p).unwrap();
        assert_eq!(&build_es_sphere(&p) - &printed, gl_generator(GlKind::Euler, 0, 3).unwrap());
    }

    #[test]
    fn integral_matrix_on_linears() {
        let p = sp(&[int(0), int(0), int(0)], int(0), 1);
        let i12 = build_integral(IntegralKind::Pair(1, 2), &p).unwrap();
        assert!(i12.apply_poly(&MultiPoly::one(2)).unwrap().is_zero());
        let img1 = i12.apply_poly(&MultiPoly::var(2, 0)).unwrap();
        let expect = &MultiPoly::var(2, 1).scale(&half()) - &MultiPoly::var(2, 0).scale(&half());
        assert_eq!(img1, expect);
        assert!(build_integral(IntegralKind::Pair(2, 2), &p).is_err());
        assert!(build_integral(IntegralKind::Single(3), &p).is_err());
    }

    #[test]
    fn potential_examples() {
        let p = sp(&[int(2), int(0)], int(0), 0);
        let v = potentials(&p, Chart::Simplex, Which::Es).unwrap();
        assert_eq!(v, RatFunc::new(MultiPoly::constant(1, int(2)), MultiPoly::var(1, 0)).unwrap());
        let p = sp(&[int(0), int(0)], q(1, 3), 0);
        let v = potentials(&p, Chart::Simplex, Which::Qes).unwrap();
        let x = MultiPoly::var(1, 0);
        let a = q(1, 3);
        let expect = &(&x * &x).scale(&(&a * &a)) - &x.scale(&(&a * (&a - int(2))));
        assert_eq!(v, RatFunc::from_poly(expect));
    }
}
