//! Real-root isolation by Sturm sequences with exact rational-root detection.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::poly::MultiPoly;
use super::rational::{fmt_rational, int, to_f64, Rational};
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

pub const DEFAULT_PRECISION_BITS: u32 = 128;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootKind {
    Exact(Rational),
    /// A single irrational root strictly inside `(lo, hi)`.
    Interval { lo: Rational, hi: Rational },
    /// A complex-conjugate pair `re ± i·im`, `im > 0`. The parts are a
    /// floating-point estimate (Durand-Kerner) stored as rationals; they are
    /// not certified.
    ComplexPair { re: Rational, im: Rational },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub kind: RootKind,
    pub multiplicity: u32,
}

impl Root {
    pub fn is_real(&self) -> bool {
        !matches!(self.kind, RootKind::ComplexPair { .. })
    }

    pub fn exact(&self) -> Option<&Rational> {
        match &self.kind {
            RootKind::Exact(r) => Some(r),
            _ => None,
        }
    }

    /// Midpoint of the real enclosure.
    pub fn midpoint(&self) -> Rational {
        match &self.kind {
            RootKind::Exact(r) => r.clone(),
            RootKind::Interval { lo, hi } => (lo + hi) / int(2),
            RootKind::ComplexPair { re, .. } => re.clone(),
        }
    }

    pub fn approx(&self) -> f64 {
        to_f64(&self.midpoint())
    }

    /// Number of roots of the polynomial this entry accounts for.
    pub fn count(&self) -> u32 {
        if self.is_real() {
            self.multiplicity
        } else {
            2 * self.multiplicity
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSet {
    pub degree: usize,
    /// Real roots in increasing order, then complex pairs.
    pub roots: Vec<Root>,
}

impl RootSet {
    pub fn real(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| r.is_real())
    }

    pub fn complex_pairs(&self) -> usize {
        self.roots.iter().filter(|r| !r.is_real()).map(|r| r.multiplicity as usize).sum()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.count() as usize).sum()
    }

    /// All roots exact rationals, with multiplicities.
    pub fn all_rational(&self) -> Option<Vec<(Rational, u32)>> {
        self.roots
            .iter()
            .map(|r| r.exact().map(|v| (v.clone(), r.multiplicity)))
            .collect()
    }
}

#[derive(Serialize)]
struct RootRecord {
    kind: &'static str,
    value: Option<String>,
    lo: Option<String>,
    hi: Option<String>,
    multiplicity: u32,
    approx: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    approx_im: Option<f64>,
}

impl Serialize for Root {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rec = match &self.kind {
            RootKind::Exact(r) => RootRecord {
                kind: "exact",
                value: Some(fmt_rational(r)),
                lo: None,
                hi: None,
                multiplicity: self.multiplicity,
                approx: to_f64(r),
                approx_im: None,
            },
            RootKind::Interval { lo, hi } => RootRecord {
                kind: "interval",
                value: None,
                lo: Some(fmt_rational(lo)),
                hi: Some(fmt_rational(hi)),
                multiplicity: self.multiplicity,
                approx: self.approx(),
                approx_im: None,
            },
            RootKind::ComplexPair { re, im } => RootRecord {
                kind: "complex_pair",
                value: None,
                lo: None,
                hi: None,
                multiplicity: self.multiplicity,
                approx: to_f64(re),
                approx_im: Some(to_f64(im)),
            },
        };
        rec.serialize(s)
    }
}

/// Isolates and refines all real roots of `p`; intervals are narrowed to
/// width at most `2^-precision_bits`.
pub fn real_roots(p: &UniPoly, precision_bits: u32) -> Result<RootSet> {
    let degree = p.degree().ok_or(Error::ZeroPolynomial)?;
    let mut roots = Vec::new();
    let mut complex = Vec::new();
    let tol = Rational::new(BigInt::one(), BigInt::one() << precision_bits as usize);
    for (f, mult) in p.squarefree_decomposition() {
        let f = integer_primitive(&f);
        let bound = f.cauchy_bound();
        let sturm = sturm_sequence(&f);
        let mut found = 0usize;
        let mut stack = vec![(-bound.clone(), bound.clone())];
        while let Some((a, b)) = stack.pop() {
            let count = sign_variations(&sturm, &a) - sign_variations(&sturm, &b);
            match count {
                0 => {}
                1 => {
                    found += 1;
                    roots.push(Root {
                        kind: refine(&f, a, b, &tol),
                        multiplicity: mult,
                    });
                }
                _ => {
                    let m = split_point(&f, &a, &b);
                    stack.push((a, m.clone()));
                    stack.push((m, b));
                }
            }
        }
        let deg = f.degree().unwrap();
        let pairs = (deg - found) / 2;
        if pairs > 0 {
            let mut upper: Vec<Complex64> = durand_kerner(&f).into_iter().filter(|z| z.im > 0.0).collect();
            upper.sort_by(|a, b| b.im.partial_cmp(&a.im).unwrap_or(std::cmp::Ordering::Equal));
            upper.resize(pairs, Complex64::new(0.0, 0.0));
            for z in upper {
                complex.push(Root {
                    kind: RootKind::ComplexPair {
                        re: Rational::from_float(z.re).unwrap_or_else(Rational::zero),
                        im: Rational::from_float(z.im).unwrap_or_else(Rational::zero),
                    },
                    multiplicity: mult,
                });
            }
        }
    }
    roots.sort_by(|x, y| x.midpoint().cmp(&y.midpoint()));
    roots.extend(complex);
    Ok(RootSet { degree, roots })
}

/// `real_roots` for a polynomial in a single variable `var` of a multivariate ring.
pub fn real_roots_multi(p: &MultiPoly, var: usize, precision_bits: u32) -> Result<RootSet> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    real_roots(&UniPoly::from_multi(p, var)?, precision_bits)
}

/// All complex roots of a squarefree polynomial, in floating point.
fn durand_kerner(f: &UniPoly) -> Vec<Complex64> {
    let lc = f.leading();
    let c: Vec<f64> = f.coeffs().iter().map(|a| to_f64(&(a / &lc))).collect();
    let d = c.len() - 1;
    let eval = |z: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + a);
    let radius = 1.0 + c[..d].iter().fold(0.0f64, |m, a| m.max(a.abs()));
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..d).map(|i| seed.powu(i as u32) * radius).collect();
    for _ in 0..500 {
        let mut delta = 0.0f64;
        for i in 0..d {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..d {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            if den.norm() == 0.0 {
                continue;
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 * radius {
            break;
        }
    }
    z
}

/// Scales to integer coefficients with unit content.
fn integer_primitive(f: &UniPoly) -> UniPoly {
    let l = f.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = f.coeffs().iter().map(|c| c.numer() * (&l / c.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    UniPoly::new(ints.into_iter().map(|c| Rational::from_integer(c / &g)).collect())
}

fn sturm_sequence(f: &UniPoly) -> Vec<UniPoly> {
    let mut seq = vec![f.clone(), f.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].degree().unwrap_or(0) == 0 {
            break;
        }
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    seq
}

fn sign_variations(seq: &[UniPoly], x: &Rational) -> usize {
    let mut last = 0;
    let mut v = 0;
    for s in seq {
        let sg = s.sign_at(x);
        if sg == 0 {
            continue;
        }
        if last != 0 && sg != last {
            v += 1;
        }
        last = sg;
    }
    v
}

/// A point strictly inside `(a, b)` where `f` does not vanish.
fn split_point(f: &UniPoly, a: &Rational, b: &Rational) -> Rational {
    let w = b - a;
    let mut den = 2i64;
    loop {
        for num in 1..den {
            if num.gcd(&den) != 1 {
                continue;
            }
            let m = a + &w * Rational::new(num.into(), den.into());
            if f.sign_at(&m) != 0 {
                return m;
            }
        }
        den += 1;
    }
}

/// Narrows the single simple root of `f` in `(a, b)`, detecting a rational
/// root exactly: any rational root is `N / lc(f)`, so once the interval is
/// shorter than `1 / |lc|` at most one candidate remains.
fn refine(f: &UniPoly, mut a: Rational, mut b: Rational, tol: &Rational) -> RootKind {
    let lc = f.leading().abs();
    let lattice = lc.recip();
    let sa = f.sign_at(&a);
    let bisect = |a: &mut Rational, b: &mut Rational| -> Option<Rational> {
        let m = (&*a + &*b) / int(2);
        match f.sign_at(&m) {
            0 => Some(m),
            s if s == sa => {
                *a = m;
                None
            }
            _ => {
                *b = m;
                None
            }
        }
    };
    while &b - &a >= lattice {
        if let Some(r) = bisect(&mut a, &mut b) {
            return RootKind::Exact(r);
        }
    }
    let scaled = &a * &lc;
    let n = scaled.floor() + Rational::one();
    let cand = n / &lc;
    if cand > a && cand < b && f.sign_at(&cand) == 0 {
        return RootKind::Exact(cand);
    }
    while &b - &a > *tol {
        if let Some(r) = bisect(&mut a, &mut b) {
            return RootKind::Exact(r);
        }
    }
    RootKind::Interval { lo: a, hi: b }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::q;

    #[test]
    fn rational_pair() {
        let p = UniPoly::new(vec![q(-5, 16), int(1), int(1)]);
        let rs = real_roots(&p, 128).unwrap();
        assert_eq!(rs.all_rational().unwrap(), vec![(q(-5, 4), 1), (q(1, 4), 1)]);
    }

    #[test]
    fn triple_zero() {
        let rs = real_roots(&UniPoly::from_ints(&[0, 0, 0, 1]), 64).unwrap();
        assert_eq!(rs.all_rational().unwrap(), vec![(int(0), 3)]);
        assert_eq!(rs.total_multiplicity(), 3);
    }

    #[test]
    fn sqrt_two() {
        let rs = real_roots(&UniPoly::from_ints(&[-2, 0, 1]), 128).unwrap();
        assert_eq!(rs.roots.len(), 2);
        let tol = Rational::new(BigInt::one(), BigInt::one() << 128usize);
        for (r, sign) in rs.roots.iter().zip([-1.0, 1.0]) {
            let RootKind::Interval { lo, hi } = &r.kind else { panic!("expected interval") };
            assert!(hi - lo <= tol);
            assert!((r.approx() - sign * 2f64.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn complex_pairs_counted() {
        // (t^2 + 1)(t - 3)
        let p = &UniPoly::from_ints(&[1, 0, 1]) * &UniPoly::from_ints(&[-3, 1]);
        let rs = real_roots(&p, 64).unwrap();
        assert_eq!(rs.complex_pairs(), 1);
        assert_eq!(rs.total_multiplicity(), 3);
        assert_eq!(rs.real().next().unwrap().exact(), Some(&int(3)));
        let RootKind::ComplexPair { re, im } = &rs.roots[1].kind else { panic!("expected pair") };
        assert!(to_f64(re).abs() < 1e-9 && (to_f64(im) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn zero_rejected() {
        assert_eq!(real_roots(&UniPoly::zero(), 64), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn close_rationals_separated() {
        // roots 1/3, 1/3 + 1/1000, -7/2
        let p = &(&UniPoly::linear_root(&q(1, 3)) * &UniPoly::linear_root(&(q(1, 3) + q(1, 1000))))
            * &UniPoly::linear_root(&q(-7, 2));
        let rs = real_roots(&p, 64).unwrap();
        assert_eq!(
            rs.all_rational().unwrap(),
            vec![(q(-7, 2), 1), (q(1, 3), 1), (q(1, 3) + q(1, 1000), 1)]
        );
    }
}
