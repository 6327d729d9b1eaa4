use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::One;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactalg::poly::{Monomial, MultiPoly};
use crate::exactalg::ratfunc::RatFunc;
use crate::exactalg::rational::{binomial, int, Rational};

/// `Σ c_α(x) ∂^α`, keyed by the derivative multi-index `α`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiffOp {
    nvars: usize,
    terms: BTreeMap<Monomial, RatFunc>,
}

impl DiffOp {
    pub fn zero(nvars: usize) -> Self {
        DiffOp {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::multiplication(RatFunc::one(nvars))
    }

    /// Multiplication by `c`.
    pub fn multiplication(c: RatFunc) -> Self {
        let mut op = Self::zero(c.nvars());
        op.add_term(Monomial::one(c.nvars()), c);
        op
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::multiplication(RatFunc::constant(nvars, c))
    }

    /// `∂_i`.
    pub fn partial(nvars: usize, i: usize) -> Self {
        let mut op = Self::zero(nvars);
        op.add_term(Monomial::var(nvars, i), RatFunc::one(nvars));
        op
    }

    /// `c ∂^alpha`.
    pub fn term(alpha: Vec<u32>, c: RatFunc) -> Self {
        let mut op = Self::zero(c.nvars());
        op.add_term(Monomial(alpha), c);
        op
    }

    pub fn add_term(&mut self, alpha: Monomial, c: RatFunc) {
        assert_eq!(alpha.len(), self.nvars, "derivative index length");
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&alpha) {
            Some(old) => {
                let s = &old + &c;
                if !s.is_zero() {
                    self.terms.insert(alpha, s);
                }
            }
            None => {
                self.terms.insert(alpha, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    /// Highest derivative order; `None` for the zero operator.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &RatFunc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, alpha: &[u32]) -> RatFunc {
        self.terms
            .get(&Monomial(alpha.to_vec()))
            .cloned()
            .unwrap_or_else(|| RatFunc::zero(self.nvars))
    }

    /// Coefficient of the zeroth-order term.
    pub fn free_term(&self) -> RatFunc {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.values().all(|c| c.is_polynomial())
    }

    /// Terms of exactly the given order.
    pub fn part_of_order(&self, order: u32) -> DiffOp {
        DiffOp {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == order)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> DiffOp {
        self.map_coefficients(|v| v.scale(c))
    }

    /// `c · self` (left multiplication by a function).
    pub fn premul(&self, c: &RatFunc) -> DiffOp {
        self.map_coefficients(|v| v * c)
    }

    pub fn map_coefficients<F: Fn(&RatFunc) -> RatFunc>(&self, f: F) -> DiffOp {
        let mut out = DiffOp::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    fn check(&self, other: &DiffOp) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &DiffOp) -> Result<DiffOp> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    /// Product `self ∘ other`, expanded with the Leibniz rule
    /// `∂^α ∘ b = Σ_{γ≤α} C(α,γ) (∂^γ b) ∂^{α-γ}`.
    pub fn compose(&self, other: &DiffOp) -> Result<DiffOp> {
        self.check(other)?;
        let n = self.nvars;
        let mut derivs: HashMap<(Monomial, Monomial), RatFunc> = HashMap::new();
        let mut acc: BTreeMap<Monomial, RatFunc> = BTreeMap::new();
        for (alpha, a) in &self.terms {
            for gamma in sub_indices(alpha) {
                let mult = multi_binomial(alpha, &gamma);
                let rest = alpha.div(&gamma).unwrap();
                for (beta, b) in &other.terms {
                    let db = derivs
                        .entry((beta.clone(), gamma.clone()))
                        .or_insert_with(|| b.diff_multi(&gamma.0))
                        .clone();
                    if db.is_zero() {
                        continue;
                    }
                    let c = (a * &db).scale(&mult);
                    let key = rest.mul(beta);
                    match acc.remove(&key) {
                        Some(old) => {
                            acc.insert(key, &old + &c);
                        }
                        None => {
                            acc.insert(key, c);
                        }
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(DiffOp { nvars: n, terms: acc })
    }

    /// `[self, other] = self ∘ other - other ∘ self`.
    pub fn commutator(&self, other: &DiffOp) -> Result<DiffOp> {
        Ok(&self.compose(other)? - &other.compose(self)?)
    }

    /// `{self, other} = self ∘ other + other ∘ self`.
    pub fn anticommutator(&self, other: &DiffOp) -> Result<DiffOp> {
        Ok(&self.compose(other)? + &other.compose(self)?)
    }

    pub fn pow(&self, e: u32) -> Result<DiffOp> {
        let mut acc = DiffOp::one(self.nvars);
        for _ in 0..e {
            acc = acc.compose(self)?;
        }
        Ok(acc)
    }

    /// Image of a function.
    pub fn apply(&self, f: &RatFunc) -> Result<RatFunc> {
        if f.nvars() != self.nvars {
            return Err(Error::VariableMismatch {
                left: self.nvars,
                right: f.nvars(),
            });
        }
        let mut out = RatFunc::zero(self.nvars);
        for (m, c) in &self.terms {
            let d = f.diff_multi(&m.0);
            if !d.is_zero() {
                out = &out + &(c * &d);
            }
        }
        Ok(out)
    }

    /// Image of a polynomial under an operator with polynomial coefficients.
    pub fn apply_poly(&self, p: &MultiPoly) -> Result<MultiPoly> {
        if p.nvars() != self.nvars {
            return Err(Error::VariableMismatch {
                left: self.nvars,
                right: p.nvars(),
            });
        }
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let c = c.as_poly().ok_or(Error::NonPolynomial)?;
            let d = p.diff_multi(&m.0);
            if !d.is_zero() {
                out = &out + &(c * &d);
            }
        }
        Ok(out)
    }

    /// Re-indexes into `nvars` variables: variable `i` becomes `map[i]`.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> DiffOp {
        let mut out = DiffOp::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; nvars];
            for (i, &v) in m.0.iter().enumerate() {
                e[map[i]] = v;
            }
            out.add_term(Monomial(e), c.embed(nvars, map));
        }
        out
    }

    /// Substitutes into the coefficients only; derivatives are untouched.
    /// Meant for specializing auxiliary variables that no derivative acts on.
    pub fn substitute_coefficients(&self, images: &[RatFunc], nvars: usize) -> Result<DiffOp> {
        let mut out = DiffOp::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.resize(nvars, 0);
            if m.0.iter().skip(nvars).any(|&v| v > 0) {
                return Err(Error::Shape("derivative in a dropped variable".into()));
            }
            out.add_term(Monomial(e), c.substitute(images)?);
        }
        Ok(out)
    }

    /// Exact linear coordinates of polynomial coefficients: `((α, monomial), c)`.
    pub fn coefficient_table(&self) -> Result<BTreeMap<(Monomial, Monomial), Rational>> {
        let mut out = BTreeMap::new();
        for (alpha, c) in &self.terms {
            let p = c.as_poly().ok_or(Error::NonPolynomial)?;
            for (m, v) in p.terms() {
                out.insert((alpha.clone(), m.clone()), v.clone());
            }
        }
        Ok(out)
    }
}

/// All `γ ≤ α` componentwise.
fn sub_indices(alpha: &Monomial) -> Vec<Monomial> {
    let mut out = vec![Vec::with_capacity(alpha.len())];
    for &a in &alpha.0 {
        let mut next = Vec::with_capacity(out.len() * (a as usize + 1));
        for v in &out {
            for g in 0..=a {
                let mut w: Vec<u32> = v.clone();
                w.push(g);
                next.push(w);
            }
        }
        out = next;
    }
    out.into_iter().map(Monomial).collect()
}

fn multi_binomial(alpha: &Monomial, gamma: &Monomial) -> Rational {
    alpha
        .0
        .iter()
        .zip(&gamma.0)
        .map(|(&a, &g)| int(binomial(a as u64, g as u64) as i64))
        .fold(Rational::one(), |acc, v| acc * v)
}

fn render_derivative(m: &Monomial) -> String {
    let parts: Vec<String> = m
        .0
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { format!("d{}", i + 1) } else { format!("d{}^{}", i + 1, e) })
        .collect();
    parts.join("*")
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if m.degree() == 0 {
                    format!("({c})")
                } else {
                    format!("({c}) * {}", render_derivative(m))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for DiffOp {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'a> Add<&'a DiffOp> for &'a DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: &DiffOp) -> DiffOp {
        self.try_add(rhs).expect("variable count mismatch")
    }
}

impl<'a> Sub<&'a DiffOp> for &'a DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: &DiffOp) -> DiffOp {
        self.try_add(&-rhs).expect("variable count mismatch")
    }
}

impl Neg for &DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        self.map_coefficients(|c| -c)
    }
}

impl Add for DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: DiffOp) -> DiffOp {
        &self + &rhs
    }
}

impl Sub for DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: DiffOp) -> DiffOp {
        &self - &rhs
    }
}

/// Generators of the `gl_n` realization on polynomials (0-based indices).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GlKind {
    /// `J_i^- = ∂_i`
    Lower(usize),
    /// `J_ij^0 = x_i ∂_j`
    Diag(usize, usize),
    /// `J^0(k) = Σ x_j ∂_j - k`
    Euler,
    /// `J_i^+(k) = x_i J^0(k)`
    Raise(usize),
}

pub fn gl_generator(kind: GlKind, k: u32, n: usize) -> Result<DiffOp> {
    let check = |i: usize| {
        if i >= n {
            Err(Error::IndexOutOfRange(format!("generator index {} with n = {n}", i + 1)))
        } else {
            Ok(())
        }
    };
    let x = |i: usize| RatFunc::var(n, i);
    let euler = || {
        let mut op = DiffOp::constant(n, -int(k as i64));
        for j in 0..n {
            op.add_term(Monomial::var(n, j), x(j));
        }
        op
    };
    Ok(match kind {
        GlKind::Lower(i) => {
            check(i)?;
            DiffOp::partial(n, i)
        }
        GlKind::Diag(i, j) => {
            check(i)?;
            check(j)?;
            DiffOp::term(Monomial::var(n, j).0, x(i))
        }
        GlKind::Euler => euler(),
        GlKind::Raise(i) => {
            check(i)?;
            euler().premul(&x(i))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::q;

    fn x1() -> RatFunc {
        RatFunc::var(1, 0)
    }

    fn xd() -> DiffOp {
        DiffOp::term(vec![1], x1())
    }

    #[test]
    fn euler_squared() {
        let sq = xd().compose(&xd()).unwrap();
        let expect = &DiffOp::term(vec![2], &x1() * &x1()) + &xd();
        assert_eq!(sq, expect);
    }

    #[test]
    fn d_after_x() {
        let d = DiffOp::partial(1, 0);
        let x = DiffOp::multiplication(x1());
        assert_eq!(d.compose(&x).unwrap(), &xd() + &DiffOp::one(1));
        assert_eq!(d.commutator(&x).unwrap(), DiffOp::one(1));
    }

    #[test]
    fn lower_raise_products() {
        let k = 3;
        let jm = gl_generator(GlKind::Lower(0), k, 1).unwrap();
        let jp = gl_generator(GlKind::Raise(0), k, 1).unwrap();
        // J- ∘ J+ = x^2 ∂^2... expanded: x ∂(x(x∂ - k)) = Leibniz
        let prod = jm.compose(&jp).unwrap();
        let kk = int(k as i64);
        let mut expect = DiffOp::term(vec![2], &x1() * &x1());
        expect.add_term(Monomial(vec![1]), x1().scale(&(int(2) - &kk)));
        expect.add_term(Monomial(vec![0]), RatFunc::constant(1, -kk.clone()));
        assert_eq!(prod, expect);
        // [J-, J+(k)] = 2 x ∂ - k
        let mut c = DiffOp::term(vec![1], x1().scale(&int(2)));
        c.add_term(Monomial(vec![0]), RatFunc::constant(1, -kk));
        assert_eq!(jm.commutator(&jp).unwrap(), c);
    }

    #[test]
    fn raise_kills_top_degree() {
        let k = 4;
        let jp = gl_generator(GlKind::Raise(0), k, 1).unwrap();
        let p = MultiPoly::var(1, 0).pow(k);
        assert!(jp.apply_poly(&p).unwrap().is_zero());
        let e = gl_generator(GlKind::Euler, 3, 2).unwrap();
        assert_eq!(e.apply_poly(&MultiPoly::one(2)).unwrap(), MultiPoly::constant(2, int(-3)));
        assert!(gl_generator(GlKind::Lower(2), 0, 2).is_err());
    }

    #[test]
    fn mismatch_is_error() {
        assert!(DiffOp::partial(1, 0).compose(&DiffOp::partial(2, 0)).is_err());
    }

    #[test]
    fn display_is_sorted() {
        let op = &DiffOp::term(vec![0, 2], RatFunc::constant(2, q(1, 2))) + &DiffOp::partial(2, 0);
        assert_eq!(op.to_string(), "(1) * d1 + (1/2) * d2^2");
    }
}
