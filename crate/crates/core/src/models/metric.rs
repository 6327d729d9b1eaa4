//! Metrics, their Laplace-Beltrami operators and curvature.

use crate::diffop::{push_forward_invariant, DiffOp};
use crate::error::{Error, Result};
use crate::exactalg::poly::{Monomial, MultiPoly};
use crate::exactalg::ratfunc::RatFunc;
use crate::exactalg::rational::{half, int, q};
use crate::exactalg::rfmatrix::{self, RfMatrix};

#[derive(Clone, Debug, PartialEq)]
pub struct MetricData {
    ginv: RfMatrix,
    det: RatFunc,
    lb: DiffOp,
}

impl MetricData {
    /// Assembles `Δ_g = g^{ab}∂_a∂_b + g^b ∂_b` with
    /// `g^b = ∂_a g^{ab} - ½ g^{ab} ∂_a log det(g^{..})`.
    pub fn from_contravariant(ginv: RfMatrix) -> Result<Self> {
        let n = ginv.len();
        for i in 0..n {
            for j in 0..i {
                if ginv[i][j] != ginv[j][i] {
                    return Err(Error::Shape("contravariant metric is not symmetric".into()));
                }
            }
        }
        let det = rfmatrix::det(&ginv)?;
        if det.is_zero() {
            return Err(Error::Shape("degenerate metric".into()));
        }
        let nv = det.nvars();
        let dlog: Vec<RatFunc> = (0..n).map(|a| det.diff(a).try_div(&det)).collect::<Result<_>>()?;
        let mut lb = DiffOp::zero(nv);
        for a in 0..n {
            for b in a..n {
                let mut e = vec![0; nv];
                e[a] += 1;
                e[b] += 1;
                let c = if a == b { ginv[a][b].clone() } else { ginv[a][b].scale(&int(2)) };
                lb.add_term(Monomial(e), c);
            }
        }
        for b in 0..n {
            let mut g = RatFunc::zero(nv);
            for a in 0..n {
                g = &g + &ginv[a][b].diff(a);
                g = &g - &(&ginv[a][b] * &dlog[a]).scale(&half());
            }
            lb.add_term(Monomial::var(nv, b), g);
        }
        Ok(MetricData { ginv, det, lb })
    }

    /// Reads `g^{ab}` off the second-order part of an operator.
    pub fn from_operator(op: &DiffOp) -> Result<Self> {
        let n = op.nvars();
        let ginv: RfMatrix = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let mut e = vec![0; n];
                        e[a] += 1;
                        e[b] += 1;
                        let c = op.coeff(&e);
                        if a == b {
                            c
                        } else {
                            c.scale(&half())
                        }
                    })
                    .collect()
            })
            .collect();
        Self::from_contravariant(ginv)
    }

    pub fn dim(&self) -> usize {
        self.ginv.len()
    }

    pub fn contravariant(&self) -> &RfMatrix {
        &self.ginv
    }

    /// `det g^{ab}`, i.e. `1/g`.
    pub fn det(&self) -> &RatFunc {
        &self.det
    }

    pub fn laplace_beltrami(&self) -> &DiffOp {
        &self.lb
    }

    /// `g^b`, the first-order coefficient of `Δ_g`.
    pub fn first_order(&self, b: usize) -> RatFunc {
        let mut e = vec![0; self.dim()];
        e[b] = 1;
        self.lb.coeff(&e)
    }

    pub fn covariant(&self) -> Result<RfMatrix> {
        rfmatrix::inverse(&self.ginv)
    }
}

/// `g^{ij} = x_i δ_ij - x_i x_j`.
pub fn sphere_metric(n: usize) -> Result<MetricData> {
    if n == 0 {
        return Err(Error::InvalidParams("n must be at least 1".into()));
    }
    let ginv = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let xi = RatFunc::var(n, i);
                    let c = -(&xi * &RatFunc::var(n, j));
                    if i == j {
                        &c + &xi
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    MetricData::from_contravariant(ginv)
}

/// `4 g^{ij} = δ_ij - s_i s_j` in the Cartesian chart.
pub fn cartesian_sphere_metric(n: usize) -> Result<MetricData> {
    if n == 0 {
        return Err(Error::InvalidParams("n must be at least 1".into()));
    }
    let ginv = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = -(&RatFunc::var(n, i) * &RatFunc::var(n, j));
                    let c = if i == j { &c + &RatFunc::one(n) } else { c };
                    c.scale(&q(1, 4))
                })
                .collect()
        })
        .collect();
    MetricData::from_contravariant(ginv)
}

/// `g_ij = δ_ij/x_i + 1/(1-x)`, the inverse of the simplex-chart metric.
pub fn sphere_covariant(n: usize) -> Result<RfMatrix> {
    let one_minus = &MultiPoly::one(n) - &(0..n).fold(MultiPoly::zero(n), |s, i| &s + &MultiPoly::var(n, i));
    let w = RatFunc::new(MultiPoly::one(n), one_minus)?;
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Ok(&w + &RatFunc::var(n, i).recip()?)
                    } else {
                        Ok(w.clone())
                    }
                })
                .collect()
        })
        .collect()
}

/// The covariant components as printed: `1/(1-x) - δ_ij/x_i`.
pub fn sphere_covariant_printed(n: usize) -> Result<RfMatrix> {
    let mut m = sphere_covariant(n)?;
    for (i, row) in m.iter_mut().enumerate() {
        let r = RatFunc::var(n, i).recip()?;
        row[i] = &(&row[i] - &r) - &r;
    }
    Ok(m)
}

/// Scalar curvature from the covariant metric via Christoffel symbols.
pub fn scalar_curvature(m: &MetricData) -> Result<RatFunc> {
    let n = m.dim();
    if n < 2 {
        return Err(Error::InvalidParams("scalar curvature needs dimension >= 2".into()));
    }
    let g = m.covariant()?;
    let gi = m.contravariant();
    let nv = g[0][0].nvars();
    let dg: Vec<Vec<Vec<RatFunc>>> =
        (0..n).map(|l| (0..n).map(|i| (0..n).map(|j| g[i][j].diff(l)).collect()).collect()).collect();
    // gamma[k][i][j] = Γ^k_ij
    let mut gamma = vec![vec![vec![RatFunc::zero(nv); n]; n]; n];
    for k in 0..n {
        for i in 0..n {
            for j in i..n {
                let mut s = RatFunc::zero(nv);
                for l in 0..n {
                    if gi[k][l].is_zero() {
                        continue;
                    }
                    let t = &(&dg[i][j][l] + &dg[j][i][l]) - &dg[l][i][j];
                    s = &s + &(&gi[k][l] * &t);
                }
                let s = s.scale(&half());
                gamma[k][i][j] = s.clone();
                gamma[k][j][i] = s;
            }
        }
    }
    let mut r = RatFunc::zero(nv);
    for i in 0..n {
        for j in 0..n {
            if gi[i][j].is_zero() {
                continue;
            }
            let mut ric = RatFunc::zero(nv);
            for k in 0..n {
                ric = &ric + &gamma[k][i][j].diff(k);
                ric = &ric - &gamma[k][i][k].diff(j);
                for l in 0..n {
                    ric = &ric + &(&gamma[k][k][l] * &gamma[l][i][j]);
                    ric = &ric - &(&gamma[k][j][l] * &gamma[l][i][k]);
                }
            }
            r = &r + &(&gi[i][j] * &ric);
        }
    }
    Ok(r)
}

/// The invariants: `τ = s²` for `n = 1`, `(s_1²+s_2², s_1²s_2²)` for `n = 2`.
pub fn invariant_coordinates(n: usize) -> Result<Vec<MultiPoly>> {
    match n {
        1 => Ok(vec![MultiPoly::var(1, 0).pow(2)]),
        2 => {
            let a = MultiPoly::var(2, 0).pow(2);
            let b = MultiPoly::var(2, 1).pow(2);
            Ok(vec![&a + &b, &a * &b])
        }
        _ => Err(Error::InvalidParams(format!("invariant metric only for n <= 2, got {n}"))),
    }
}

/// Pushes the Cartesian Laplace-Beltrami operator through the invariants.
pub fn invariant_metric(n: usize) -> Result<MetricData> {
    let taus = invariant_coordinates(n)?;
    let cart = cartesian_sphere_metric(n)?;
    let pushed = push_forward_invariant(cart.laplace_beltrami(), &taus)?;
    let m = MetricData::from_operator(&pushed)?;
    if m.laplace_beltrami() != &pushed {
        return Err(Error::BadCoordMap("pushed operator is not the Laplace-Beltrami operator of its metric".into()));
    }
    Ok(m)
}

/// Components as listed for the invariant charts: `(g^{ab}, g^b)`.
pub fn invariant_metric_printed(n: usize) -> Result<(RfMatrix, Vec<RatFunc>)> {
    let t = |i| RatFunc::var(n, i);
    let c = |v: i64, d: i64| RatFunc::constant(n, q(v, d));
    match n {
        1 => {
            let g = &t(0) * &(&c(1, 1) - &t(0));
            Ok((vec![vec![g]], vec![&c(1, 2) + &t(0)]))
        }
        2 => {
            let g11 = &t(0) * &(&c(1, 1) - &t(0));
            let g22 = &t(1) * &(&t(0) - &t(1).scale(&int(4)));
            let g12 = (&t(1) * &(&c(1, 1) - &t(0))).scale(&int(2));
            let f1 = &c(1, 1) - &t(0).scale(&q(3, 2));
            let f2 = (&t(0) - &t(1).scale(&int(10))).scale(&half());
            Ok((vec![vec![g11, g12.clone()], vec![g12, g22]], vec![f1, f2]))
        }
        _ => Err(Error::InvalidParams(format!("invariant metric only for n <= 2, got {n}"))),
    }
}
