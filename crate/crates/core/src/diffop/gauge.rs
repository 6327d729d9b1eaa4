use std::collections::HashMap;

use num_traits::Zero;

use super::op::DiffOp;
use crate::error::{Error, Result};
use crate::exactalg::poly::MultiPoly;
use crate::exactalg::ratfunc::RatFunc;
use crate::exactalg::rational::Rational;

/// `Π base_t^{exp_t} · exp(arg)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeFactor {
    nvars: usize,
    factors: Vec<(MultiPoly, Rational)>,
    exp_arg: MultiPoly,
}

impl GaugeFactor {
    pub fn trivial(nvars: usize) -> Self {
        GaugeFactor {
            nvars,
            factors: Vec::new(),
            exp_arg: MultiPoly::zero(nvars),
        }
    }

    /// Multiplies in `base^exponent`.
    pub fn power(mut self, base: MultiPoly, exponent: Rational) -> Result<Self> {
        if base.is_zero() {
            return Err(Error::ZeroBase);
        }
        if base.nvars() != self.nvars {
            return Err(Error::VariableMismatch {
                left: self.nvars,
                right: base.nvars(),
            });
        }
        if !exponent.is_zero() {
            self.factors.push((base, exponent));
        }
        Ok(self)
    }

    /// Multiplies in `exp(arg)`.
    pub fn exponential(mut self, arg: MultiPoly) -> Result<Self> {
        if arg.nvars() != self.nvars {
            return Err(Error::VariableMismatch {
                left: self.nvars,
                right: arg.nvars(),
            });
        }
        self.exp_arg = &self.exp_arg + &arg;
        Ok(self)
    }

    pub fn inverse(&self) -> Self {
        GaugeFactor {
            nvars: self.nvars,
            factors: self.factors.iter().map(|(b, e)| (b.clone(), -e.clone())).collect(),
            exp_arg: -&self.exp_arg,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn factors(&self) -> &[(MultiPoly, Rational)] {
        &self.factors
    }

    pub fn exp_arg(&self) -> &MultiPoly {
        &self.exp_arg
    }

    /// `∂_i log g = Σ e_t ∂_i b_t / b_t + ∂_i arg`.
    pub fn log_derivative(&self, i: usize) -> RatFunc {
        let mut acc = RatFunc::from_poly(self.exp_arg.diff(i));
        for (b, e) in &self.factors {
            let d = b.diff(i);
            if d.is_zero() {
                continue;
            }
            let t = RatFunc::new(d.scale(e), b.clone()).expect("nonzero base");
            acc = &acc + &t;
        }
        acc
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `g ∘ A ∘ g⁻¹`
    Conjugate,
    /// `g⁻¹ ∘ A ∘ g`
    Inverse,
}

/// Conjugates by substituting `∂_i → ∂_i ∓ ∂_i log g`; the shifted
/// derivatives still commute, so each monomial `∂^α` maps to a product of
/// powers taken in any order.
pub fn gauge_conjugate(a: &DiffOp, g: &GaugeFactor, dir: Direction) -> Result<DiffOp> {
    let n = a.nvars();
    if g.nvars() != n {
        return Err(Error::VariableMismatch {
            left: n,
            right: g.nvars(),
        });
    }
    let shifted: Vec<DiffOp> = (0..n)
        .map(|i| {
            let w = g.log_derivative(i);
            let w = match dir {
                Direction::Conjugate => -w,
                Direction::Inverse => w,
            };
            &DiffOp::partial(n, i) + &DiffOp::multiplication(w)
        })
        .collect();
    let mut powers: HashMap<(usize, u32), DiffOp> = HashMap::new();
    let mut out = DiffOp::zero(n);
    for (alpha, c) in a.terms() {
        let mut prod = DiffOp::one(n);
        for (i, &e) in alpha.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let p = match powers.get(&(i, e)) {
                Some(p) => p.clone(),
                None => {
                    let p = shifted[i].pow(e)?;
                    powers.insert((i, e), p.clone());
                    p
                }
            };
            prod = prod.compose(&p)?;
        }
        for (m, v) in prod.premul(c).terms() {
            out.add_term(m.clone(), v.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{int, q};

    #[test]
    fn exponential_shift() {
        // exp(-(a/2) x) ∂ exp((a/2) x) = ∂ + a/2
        let a = q(3, 5);
        let g = GaugeFactor::trivial(1)
            .exponential(MultiPoly::var(1, 0).scale(&(-&a / int(2))))
            .unwrap();
        let out = gauge_conjugate(&DiffOp::partial(1, 0), &g, Direction::Conjugate).unwrap();
        assert_eq!(out, &DiffOp::partial(1, 0) + &DiffOp::constant(1, &a / int(2)));
    }

    #[test]
    fn roundtrip_and_trivial() {
        let x = RatFunc::var(1, 0);
        let op = &DiffOp::term(vec![2], &x * &(&RatFunc::one(1) - &x)) + &DiffOp::partial(1, 0);
        let g = GaugeFactor::trivial(1)
            .power(MultiPoly::var(1, 0), q(7, 2))
            .unwrap()
            .power(&MultiPoly::one(1) - &MultiPoly::var(1, 0), q(-1, 3))
            .unwrap();
        let fwd = gauge_conjugate(&op, &g, Direction::Conjugate).unwrap();
        let back = gauge_conjugate(&fwd, &g, Direction::Inverse).unwrap();
        assert_eq!(back, op);
        let same = gauge_conjugate(&op, &GaugeFactor::trivial(1), Direction::Conjugate).unwrap();
        assert_eq!(same, op);
        assert_eq!(
            GaugeFactor::trivial(1).power(MultiPoly::zero(1), q(1, 2)).unwrap_err(),
            Error::ZeroBase
        );
    }

    #[test]
    fn power_factor_first_order_shift() {
        // x^{γ/2} ∘ x∂² ∘ x^{-γ/2}: ∂-coefficient is -γ.
        let gam = q(5, 3);
        let g = GaugeFactor::trivial(1).power(MultiPoly::var(1, 0), &gam / int(2)).unwrap();
        let op = DiffOp::term(vec![2], RatFunc::var(1, 0));
        let out = gauge_conjugate(&op, &g, Direction::Conjugate).unwrap();
        assert_eq!(out.coeff(&[1]), RatFunc::constant(1, -gam.clone()));
        assert_eq!(out.coeff(&[2]), RatFunc::var(1, 0));
    }
}
