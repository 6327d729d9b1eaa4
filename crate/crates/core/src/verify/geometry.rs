use crate::exactalg::poly::MultiPoly;
use crate::exactalg::ratfunc::RatFunc;
use crate::exactalg::rfmatrix::RfMatrix;
use crate::models::metric::{invariant_metric, invariant_metric_printed, sphere_covariant, sphere_covariant_printed};
use crate::models::{scalar_curvature, sphere_metric};

use super::item::{guard, ConformanceItem};

fn matrix_diff(a: &RfMatrix, b: &RfMatrix) -> Vec<String> {
    let mut out = Vec::new();
    for (i, (ra, rb)) in a.iter().zip(b).enumerate() {
        for (j, (x, y)) in ra.iter().zip(rb).enumerate() {
            let d = x - y;
            if !d.is_zero() {
                out.push(format!("[{}{}]: {}", i + 1, j + 1, d));
            }
        }
    }
    out
}

pub fn check_geometry(n: usize, seed: u64) -> Vec<ConformanceItem> {
    let mut out = Vec::new();
    let tag = format!("n{n}");

    if (1..=4).contains(&n) {
        let id = format!("geometry.determinant.{tag}");
        let claim = "det g^ij = x_1...x_n (1 - x)";
        out.push(guard(&id, claim, seed, || {
            let m = sphere_metric(n)?;
            let mut p = &MultiPoly::one(n) - &(0..n).fold(MultiPoly::zero(n), |s, i| &s + &MultiPoly::var(n, i));
            for i in 0..n {
                p = &p * &MultiPoly::var(n, i);
            }
            let d = m.det() - &RatFunc::from_poly(p);
            let it = ConformanceItem::new(&id, claim, seed);
            Ok(if d.is_zero() { it } else { it.deviation(d.to_string()) })
        }));

        let id = format!("geometry.covariant.{tag}");
        let claim = "g_ij = 1/(1-x) - d_ij/x_i";
        out.push(guard(&id, claim, seed, || {
            let d = matrix_diff(&sphere_covariant_printed(n)?, &sphere_covariant(n)?);
            let it = ConformanceItem::new(&id, claim, seed);
            Ok(if d.is_empty() {
                it
            } else {
                it.deviation(format!("listed - inverse of g^ij: {}", d.join(", ")))
                    .corrected("g_ij = 1/(1-x) + d_ij/x_i")
            })
        }));
    }

    if (2..=3).contains(&n) {
        let id = format!("geometry.curvature.{tag}");
        let claim = "scalar curvature is constant";
        out.push(guard(&id, claim, seed, || {
            let r = scalar_curvature(&sphere_metric(n)?)?;
            let grad: Vec<String> =
                (0..n).map(|i| r.diff(i)).filter(|g| !g.is_zero()).map(|g| g.to_string()).collect();
            let it = ConformanceItem::new(&id, claim, seed).detail(format!("R = {r}"));
            Ok(if grad.is_empty() { it } else { it.deviation(format!("grad R = ({})", grad.join(", "))) })
        }));
    }

    if (1..=2).contains(&n) {
        let id = format!("geometry.invariant-metric.{tag}");
        let claim = "contravariant metric in the invariant chart as listed";
        out.push(guard(&id, claim, seed, || {
            let m = invariant_metric(n)?;
            let (g, _) = invariant_metric_printed(n)?;
            let d = matrix_diff(&g, m.contravariant());
            let it = ConformanceItem::new(&id, claim, seed);
            Ok(if d.is_empty() { it } else { it.deviation(d.join(", ")) })
        }));

        let id = format!("geometry.invariant-first-order.{tag}");
        let claim = "first-order coefficients of the Laplace-Beltrami operator in the invariant chart as listed";
        out.push(guard(&id, claim, seed, || {
            let m = invariant_metric(n)?;
            let (_, f) = invariant_metric_printed(n)?;
            let mut d = Vec::new();
            let mut measured = Vec::new();
            for (b, fb) in f.iter().enumerate() {
                let got = m.first_order(b);
                measured.push(format!("g^{} = {}", b + 1, got));
                let r = fb - &got;
                if !r.is_zero() {
                    d.push(format!("g^{}: listed - measured = {}", b + 1, r));
                }
            }
            let it = ConformanceItem::new(&id, claim, seed);
            Ok(if d.is_empty() { it } else { it.deviation(d.join(", ")).corrected(measured.join(", ")) })
        }));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::item::Status;

    #[test]
    fn n1_single_sign_deviation() {
        let items = check_geometry(1, 0);
        let devs: Vec<_> = items.iter().filter(|i| i.status == Status::Deviation).map(|i| i.id.as_str()).collect();
        assert!(devs.contains(&"geometry.invariant-first-order.n1"));
        assert!(items.iter().all(|i| i.status != Status::Inconclusive));
    }
}
