use std::collections::HashMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::op::DiffOp;
use crate::error::{Error, Result};
use crate::exactalg::matrix::QMatrix;
use crate::exactalg::poly::{Monomial, MultiPoly};
use crate::exactalg::ratfunc::RatFunc;
use crate::exactalg::rational::Rational;

const PROBES: usize = 3;

/// A birational change of variables `x ↔ u` between equal-dimensional charts.
#[derive(Clone, Debug)]
pub struct CoordMap {
    n: usize,
    /// `u_j` as functions of `x`.
    forward: Vec<RatFunc>,
    /// `x_i` as functions of `u`.
    inverse: Vec<RatFunc>,
    /// `jac[i][j] = ∂u_j/∂x_i`, written in `u`.
    jac: Vec<Vec<RatFunc>>,
}

impl CoordMap {
    /// Checks both round trips at seeded rational probe points and that the
    /// Jacobian determinant is not identically zero.
    pub fn new(forward: Vec<RatFunc>, inverse: Vec<RatFunc>) -> Result<Self> {
        let n = forward.len();
        if n == 0 || inverse.len() != n {
            return Err(Error::BadCoordMap(format!(
                "forward has {} components, inverse {}",
                n,
                inverse.len()
            )));
        }
        if forward.iter().chain(&inverse).any(|f| f.nvars() != n) {
            return Err(Error::BadCoordMap("components live in the wrong ring".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_c0de);
        let mut probes_done = 0;
        let mut attempts = 0;
        while probes_done < PROBES {
            attempts += 1;
            if attempts > 200 {
                return Err(Error::BadCoordMap("no admissible probe point found".into()));
            }
            let u: Vec<Rational> = (0..n).map(|_| random_point(&mut rng)).collect();
            let Ok(x) = inverse.iter().map(|f| f.eval(&u)).collect::<Result<Vec<_>>>() else {
                continue;
            };
            let Ok(back) = forward.iter().map(|f| f.eval(&x)).collect::<Result<Vec<_>>>() else {
                continue;
            };
            if back != u {
                return Err(Error::BadCoordMap(format!(
                    "forward(inverse(u)) != u at probe {probes_done}"
                )));
            }
            let Ok(again) = inverse.iter().map(|f| f.eval(&back)).collect::<Result<Vec<_>>>() else {
                continue;
            };
            if again != x {
                return Err(Error::BadCoordMap(format!(
                    "inverse(forward(x)) != x at probe {probes_done}"
                )));
            }
            probes_done += 1;
        }
        let mut jac = vec![vec![RatFunc::zero(n); n]; n];
        for (i, row) in jac.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = forward[j].diff(i).substitute(&inverse)?;
            }
        }
        let map = CoordMap {
            n,
            forward,
            inverse,
            jac,
        };
        map.check_jacobian(&mut rng)?;
        Ok(map)
    }

    fn check_jacobian(&self, rng: &mut ChaCha8Rng) -> Result<()> {
        for _ in 0..20 {
            let u: Vec<Rational> = (0..self.n).map(|_| random_point(rng)).collect();
            let Ok(m) = self
                .jac
                .iter()
                .map(|r| r.iter().map(|f| f.eval(&u)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()
            else {
                continue;
            };
            let q = QMatrix::from_rows(m)?;
            if !q.determinant()?.is_zero() {
                return Ok(());
            }
        }
        let det = crate::exactalg::rfmatrix::det(&self.jac)?;
        if det.is_zero() {
            return Err(Error::SingularJacobian("Jacobian determinant vanishes identically".into()));
        }
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn forward(&self) -> &[RatFunc] {
        &self.forward
    }

    pub fn inverse(&self) -> &[RatFunc] {
        &self.inverse
    }

    pub fn jacobian(&self) -> &[Vec<RatFunc>] {
        &self.jac
    }

    /// Rewrites a function of `x` in the `u` chart.
    pub fn pull(&self, f: &RatFunc) -> Result<RatFunc> {
        f.substitute(&self.inverse)
    }

    /// Rewrites a function of `u` in the `x` chart.
    pub fn push(&self, f: &RatFunc) -> Result<RatFunc> {
        f.substitute(&self.forward)
    }
}

fn random_point(rng: &mut ChaCha8Rng) -> Rational {
    let num: i64 = rng.gen_range(1..=97);
    let den: i64 = rng.gen_range(2..=97);
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    Rational::new((sign * num).into(), den.into())
}

/// Chain rule: `∂/∂x_i = Σ_j (∂u_j/∂x_i) ∂/∂u_j`, coefficients pulled back to `u`.
pub fn change_coordinates(a: &DiffOp, m: &CoordMap) -> Result<DiffOp> {
    let n = m.nvars();
    if a.nvars() != n {
        return Err(Error::VariableMismatch {
            left: a.nvars(),
            right: n,
        });
    }
    let d: Vec<DiffOp> = (0..n)
        .map(|i| {
            let mut op = DiffOp::zero(n);
            for j in 0..n {
                op.add_term(Monomial::var(n, j), m.jac[i][j].clone());
            }
            op
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
                    let p = d[i].pow(e)?;
                    powers.insert((i, e), p.clone());
                    p
                }
            };
            prod = prod.compose(&p)?;
        }
        let cu = m.pull(c)?;
        for (mm, v) in prod.premul(&cu).terms() {
            out.add_term(mm.clone(), v.clone());
        }
    }
    Ok(out)
}

/// Rewrites `p(s)` as a polynomial in the invariants `taus(s)`, if possible.
pub fn express_in_invariants(p: &MultiPoly, taus: &[MultiPoly]) -> Option<MultiPoly> {
    let m = taus.len();
    if p.is_zero() {
        return Some(MultiPoly::zero(m));
    }
    let deg = p.total_degree()?;
    let wdeg: Vec<u32> = taus.iter().map(|t| t.total_degree().unwrap_or(0).max(1)).collect();
    let mut cands: Vec<Vec<u32>> = vec![vec![]];
    for w in &wdeg {
        let mut next = Vec::new();
        for c in &cands {
            let used: u32 = c.iter().zip(&wdeg).map(|(e, w)| e * w).sum();
            let mut e = 0;
            while used + e * w <= deg {
                let mut v = c.clone();
                v.push(e);
                next.push(v);
                e += 1;
            }
        }
        cands = next;
    }
    let images: Vec<MultiPoly> = cands
        .iter()
        .map(|e| {
            e.iter()
                .zip(taus)
                .fold(MultiPoly::one(p.nvars()), |acc, (&k, t)| &acc * &t.pow(k))
        })
        .collect();
    let mut rows: Vec<Monomial> = p.terms().map(|(m, _)| m.clone()).collect();
    for im in &images {
        rows.extend(im.terms().map(|(m, _)| m.clone()));
    }
    rows.sort();
    rows.dedup();
    let mat: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| images.iter().map(|im| im.coeff(&r.0)).collect())
        .collect();
    let rhs: Vec<Rational> = rows.iter().map(|r| p.coeff(&r.0)).collect();
    let x = QMatrix::from_rows(mat).ok()?.solve(&rhs)?;
    let mut out = MultiPoly::zero(m);
    for (e, c) in cands.into_iter().zip(x) {
        out.add_term(Monomial(e), c);
    }
    Some(out)
}

/// Push-forward of a second-order operator with polynomial coefficients
/// through invariant polynomials `τ_a(s)`:
/// `G^b = A τ_b - c τ_b`, `G^{ab} = ½(A(τ_a τ_b) - τ_a Aτ_b - τ_b Aτ_a + c τ_a τ_b)`, `c = A 1`.
pub fn push_forward_invariant(a: &DiffOp, taus: &[MultiPoly]) -> Result<DiffOp> {
    if a.order().unwrap_or(0) > 2 {
        return Err(Error::Shape("push-forward implemented up to order 2".into()));
    }
    let m = taus.len();
    let express = |p: &MultiPoly| {
        express_in_invariants(p, taus)
            .map(RatFunc::from_poly)
            .ok_or_else(|| Error::BadCoordMap("coefficient is not a function of the invariants".into()))
    };
    let c = a.apply_poly(&MultiPoly::one(a.nvars()))?;
    let at: Vec<MultiPoly> = taus.iter().map(|t| a.apply_poly(t)).collect::<Result<_>>()?;
    let mut out = DiffOp::zero(m);
    out.add_term(Monomial::one(m), express(&c)?);
    for b in 0..m {
        let g = &at[b] - &(&c * &taus[b]);
        out.add_term(Monomial::var(m, b), express(&g)?);
    }
    let half = Rational::new(1.into(), 2.into());
    for i in 0..m {
        for j in i..m {
            let tt = &taus[i] * &taus[j];
            let mut g = a.apply_poly(&tt)?;
            g = &g - &(&taus[i] * &at[j]);
            g = &g - &(&taus[j] * &at[i]);
            g = &g + &(&c * &tt);
            let g = g.scale(&half);
            let coef = express(&g)?;
            // symmetric pair (i,j),(j,i) both map to ∂_i∂_j
            let coef = if i == j { coef } else { coef.scale(&Rational::from_integer(2.into())) };
            let mut e = vec![0; m];
            e[i] += 1;
            e[j] += 1;
            out.add_term(Monomial(e), coef);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{int, q};

    fn rv(n: usize, i: usize) -> RatFunc {
        RatFunc::var(n, i)
    }

    #[test]
    fn reciprocal_map() {
        let fwd = vec![rv(1, 0).recip().unwrap()];
        let inv = vec![rv(1, 0).recip().unwrap()];
        let m = CoordMap::new(fwd, inv).unwrap();
        // ∂_x = -u^2 ∂_u
        let out = change_coordinates(&DiffOp::partial(1, 0), &m).unwrap();
        assert_eq!(out, DiffOp::term(vec![1], (&rv(1, 0) * &rv(1, 0)).scale(&int(-1))));
    }

    #[test]
    fn spherical_euler() {
        // x1 = u1 u2, x2 = (1-u1) u2
        let one = RatFunc::one(2);
        let inv = vec![&rv(2, 0) * &rv(2, 1), &(&one - &rv(2, 0)) * &rv(2, 1)];
        let s = &rv(2, 0) + &rv(2, 1);
        let fwd = vec![(&rv(2, 0) / &s).unwrap(), s.clone()];
        let m = CoordMap::new(fwd, inv).unwrap();
        let e = &DiffOp::term(vec![1, 0], rv(2, 0)) + &DiffOp::term(vec![0, 1], rv(2, 1));
        let out = change_coordinates(&e, &m).unwrap();
        assert_eq!(out, DiffOp::term(vec![0, 1], rv(2, 1)));
    }

    #[test]
    fn scaling_map() {
        let eps = q(1, 3);
        let fwd = vec![rv(1, 0).scale(&eps.recip())];
        let inv = vec![rv(1, 0).scale(&eps)];
        let m = CoordMap::new(fwd, inv).unwrap();
        let out = change_coordinates(&DiffOp::partial(1, 0), &m).unwrap();
        assert_eq!(out, DiffOp::partial(1, 0).scale(&eps.recip()));
    }

    #[test]
    fn probe_rejects_wrong_inverse() {
        let fwd = vec![rv(1, 0).scale(&int(2))];
        let inv = vec![rv(1, 0).scale(&int(3))];
        assert!(matches!(CoordMap::new(fwd, inv), Err(Error::BadCoordMap(_))));
    }

    #[test]
    fn image_consistency() {
        // apply(A, p) pulled back equals apply(A', p pulled back)
        let one = RatFunc::one(2);
        let inv = vec![&rv(2, 0) * &rv(2, 1), &(&one - &rv(2, 0)) * &rv(2, 1)];
        let s = &rv(2, 0) + &rv(2, 1);
        let fwd = vec![(&rv(2, 0) / &s).unwrap(), s.clone()];
        let m = CoordMap::new(fwd, inv).unwrap();
        let a = &DiffOp::term(vec![2, 0], &rv(2, 0) * &rv(2, 1)) + &DiffOp::term(vec![0, 1], rv(2, 0));
        let p = RatFunc::from_poly(&MultiPoly::var(2, 0).pow(2) * &MultiPoly::var(2, 1).pow(3));
        let lhs = m.pull(&a.apply(&p).unwrap()).unwrap();
        let rhs = change_coordinates(&a, &m).unwrap().apply(&m.pull(&p).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn invariant_square() {
        // τ = s²: ∂_s² → 4τ ∂_τ² + 2 ∂_τ
        let s = MultiPoly::var(1, 0);
        let out = push_forward_invariant(&DiffOp::term(vec![2], RatFunc::one(1)), &[&s * &s]).unwrap();
        let t = RatFunc::var(1, 0);
        let expect = &DiffOp::term(vec![2], t.scale(&int(4))) + &DiffOp::term(vec![1], RatFunc::constant(1, int(2)));
        assert_eq!(out, expect);
        assert!(express_in_invariants(&s, &[&s * &s]).is_none());
    }
}
