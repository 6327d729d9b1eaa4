//! Quotients of multivariate polynomials in lowest terms.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::Zero;

use super::gcd::gcd;
use super::poly::MultiPoly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// `num / den` with `gcd(num, den) = 1` and `den` monic under graded-lex
/// order, so equal functions have equal representations.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: MultiPoly, den: MultiPoly) -> Self {
        let n = num.nvars();
        if num.is_zero() {
            return RatFunc {
                num,
                den: MultiPoly::one(n),
            };
        }
        if let Some(c) = den.as_constant() {
            return RatFunc {
                num: num.scale(&c.recip()),
                den: MultiPoly::one(n),
            };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let lc = den.leading_term().unwrap().1.recip();
        RatFunc {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(MultiPoly::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(MultiPoly::one(nvars))
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_poly(MultiPoly::constant(nvars, c))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::from_poly(MultiPoly::var(nvars, i))
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let n = p.nvars();
        RatFunc {
            num: p,
            den: MultiPoly::one(n),
        }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numer(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&MultiPoly> {
        if self.is_polynomial() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_polynomial() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars());
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> Self {
        if self.is_polynomial() {
            return Self::from_poly(&self.num * p);
        }
        Self::normalized(&self.num * p, self.den.clone())
    }

    pub fn pow(&self, e: u32) -> Self {
        RatFunc {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Integer power, negative exponents allowed for nonzero functions.
    pub fn powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.recip()?.pow((-e) as u32))
        }
    }

    /// Quotient rule in variable `var`.
    pub fn diff(&self, var: usize) -> Self {
        if self.is_polynomial() {
            return Self::from_poly(self.num.diff(var));
        }
        let dn = self.num.diff(var);
        let dd = self.den.diff(var);
        if dd.is_zero() {
            return Self::normalized(dn, self.den.clone());
        }
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        Self::normalized(num, &self.den * &self.den)
    }

    pub fn diff_multi(&self, alpha: &[u32]) -> Self {
        if self.is_polynomial() {
            return Self::from_poly(self.num.diff_multi(alpha));
        }
        let mut out = self.clone();
        for (i, &a) in alpha.iter().enumerate() {
            for _ in 0..a {
                out = out.diff(i);
            }
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(point) / d)
    }

    /// Composition with rational images of every variable.
    pub fn substitute(&self, images: &[RatFunc]) -> Result<RatFunc> {
        let n = substitute_poly(&self.num, images)?;
        let d = substitute_poly(&self.den, images)?;
        &n / &d
    }

    pub fn embed(&self, nvars: usize, map: &[usize]) -> Self {
        RatFunc {
            num: self.num.embed(nvars, map),
            den: self.den.embed(nvars, map),
        }
    }

    pub fn try_div(&self, rhs: &RatFunc) -> Result<RatFunc> {
        self / rhs
    }
}

/// `p(images)` for a polynomial `p` with rational-function images.
pub fn substitute_poly(p: &MultiPoly, images: &[RatFunc]) -> Result<RatFunc> {
    if images.len() != p.nvars() {
        return Err(Error::VariableMismatch {
            left: p.nvars(),
            right: images.len(),
        });
    }
    let target = images.first().map(|r| r.nvars()).unwrap_or(0);
    if images.iter().all(|r| r.is_polynomial()) {
        let polys: Vec<MultiPoly> = images.iter().map(|r| r.num.clone()).collect();
        return Ok(RatFunc::from_poly(p.substitute(&polys)?));
    }
    // Common denominator: x_i = N_i / D_i, so p(x) = Σ c Π N_i^e D_i^{d_i - e} / Π D_i^{d_i}.
    let degs: Vec<u32> = (0..p.nvars()).map(|i| p.degree_in(i).unwrap_or(0)).collect();
    let mut num = MultiPoly::zero(target);
    let mut npow: Vec<Vec<MultiPoly>> = images.iter().map(|r| vec![MultiPoly::one(target), r.num.clone()]).collect();
    let mut dpow: Vec<Vec<MultiPoly>> = images.iter().map(|r| vec![MultiPoly::one(target), r.den.clone()]).collect();
    let get = |tab: &mut Vec<Vec<MultiPoly>>, i: usize, e: usize, base: &MultiPoly| -> MultiPoly {
        while tab[i].len() <= e {
            let next = &tab[i][tab[i].len() - 1] * base;
            tab[i].push(next);
        }
        tab[i][e].clone()
    };
    for (m, c) in p.terms() {
        let mut t = MultiPoly::constant(target, c.clone());
        for i in 0..p.nvars() {
            let e = m.0[i] as usize;
            let rest = (degs[i] as usize) - e;
            if e > 0 {
                t = &t * &get(&mut npow, i, e, &images[i].num);
            }
            if rest > 0 {
                t = &t * &get(&mut dpow, i, rest, &images[i].den);
            }
        }
        num = &num + &t;
    }
    let mut den = MultiPoly::one(target);
    for i in 0..p.nvars() {
        if degs[i] > 0 {
            den = &den * &get(&mut dpow, i, degs[i] as usize, &images[i].den);
        }
    }
    RatFunc::new(num, den)
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_polynomial() && rhs.is_polynomial() {
            return RatFunc::from_poly(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return RatFunc::normalized(&self.num + &rhs.num, self.den.clone());
        }
        if rhs.is_polynomial() {
            return RatFunc::normalized(&self.num + &(&rhs.num * &self.den), self.den.clone());
        }
        if self.is_polynomial() {
            return RatFunc::normalized(&(&self.num * &rhs.den) + &rhs.num, rhs.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        let a = rhs.den.div_exact(&g).unwrap();
        let b = self.den.div_exact(&g).unwrap();
        let num = &(&self.num * &a) + &(&rhs.num * &b);
        RatFunc::normalized(num, &self.den * &a)
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero(self.nvars());
        }
        if self.is_polynomial() && rhs.is_polynomial() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        // cross-cancel before multiplying
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = rhs.den.div_exact(&g1).unwrap();
        let n2 = rhs.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let lc = den.leading_term().unwrap().1.recip();
        RatFunc {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }
}

impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = Result<RatFunc>;
    fn div(self, rhs: &RatFunc) -> Result<RatFunc> {
        let inv = rhs.recip()?;
        Ok(self * &inv)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl From<MultiPoly> for RatFunc {
    fn from(p: MultiPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        &self + &rhs
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{int, q};

    fn x(n: usize, i: usize) -> RatFunc {
        RatFunc::var(n, i)
    }

    #[test]
    fn canonical_after_cancellation() {
        let one = RatFunc::one(1);
        let a = (&one / &x(1, 0)).unwrap();
        let b = (&one / &(&one - &x(1, 0))).unwrap();
        // 1/x + 1/(1-x) = 1/(x(1-x))
        let s = &a + &b;
        let expect = RatFunc::new(
            MultiPoly::one(1),
            &MultiPoly::var(1, 0) * &(&MultiPoly::one(1) - &MultiPoly::var(1, 0)),
        )
        .unwrap();
        assert_eq!(s, expect);
        assert!(s.denom().leading_term().unwrap().1 == &int(1));
    }

    #[test]
    fn quotient_rule() {
        // d/dx (x / (1 + x)) = 1 / (1 + x)^2
        let one = RatFunc::one(1);
        let f = (&x(1, 0) / &(&one + &x(1, 0))).unwrap();
        let d = f.diff(0);
        let expect = (&one / &(&one + &x(1, 0)).pow(2)).unwrap();
        assert_eq!(d, expect);
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(RatFunc::new(MultiPoly::one(2), MultiPoly::zero(2)).is_err());
    }

    #[test]
    fn substitution_into_quotient() {
        // f(u) = u1 / (u1 + u2) with u1 = x1 x2, u2 = (1 - x1) x2  ->  x1
        let one = RatFunc::one(2);
        let f = (&x(2, 0) / &(&x(2, 0) + &x(2, 1))).unwrap();
        let imgs = vec![&x(2, 0) * &x(2, 1), &(&one - &x(2, 0)) * &x(2, 1)];
        assert_eq!(f.substitute(&imgs).unwrap(), x(2, 0));
        let g = f.scale(&q(3, 2));
        assert_eq!(g.eval(&[int(1), int(1)]).unwrap(), q(3, 4));
    }
}
