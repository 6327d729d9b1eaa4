//! Sphere → Euclidean contraction at the level of `P_k` matrices.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::matrix::QMatrix;
use crate::exactalg::rational::{fmt_rational, half, int, to_f64, Rational};
use crate::models::{build_euclid, build_qes_sphere, EuclidParams, EuclidStage, SphereParams};
use crate::repspace::{basis, invariant_matrix};

use super::item::{describe_euclid, guard, ConformanceItem};

/// How the sphere parameters and the overall factor depend on `e = ε²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ContractionMap {
    /// `4ε² h_S` with `a = -b/ε⁴`.
    Listed,
    /// `-4ε² h_S` with `a = -b/(4ε⁴)`.
    Corrected,
}

impl ContractionMap {
    fn factor(self) -> Rational {
        match self {
            ContractionMap::Listed => int(4),
            ContractionMap::Corrected => int(-4),
        }
    }

    fn a_divisor(self) -> Rational {
        match self {
            ContractionMap::Listed => int(1),
            ContractionMap::Corrected => int(4),
        }
    }
}

/// `γ_j = ½ - γ'_j`, `γ_{n+1} = ω/e`, `a = -b/(c e²)`.
pub fn sphere_params_at(p: &EuclidParams, map: ContractionMap, e: &Rational) -> Result<SphereParams> {
    if e.is_zero() {
        return Err(Error::ZeroEpsilon);
    }
    let mut g: Vec<Rational> = p.gammas().iter().map(|gp| half() - gp).collect();
    g.push(p.omega() / e);
    let a = -(p.b() / (map.a_divisor() * e * e));
    SphereParams::new(g, a, p.k())
}

/// `c·e·M_S(e)` written in the `Y = x/e` monomial basis.
pub fn scaled_sphere_matrix(p: &EuclidParams, map: ContractionMap, e: &Rational) -> Result<QMatrix> {
    let (n, k) = (p.n(), p.k());
    let sp = sphere_params_at(p, map, e)?;
    let m = invariant_matrix(&build_qes_sphere(&sp)?, n, k)?.matrix;
    let b = basis(n, k);
    let deg: Vec<i32> = b.monomials().iter().map(|m| m.degree() as i32).collect();
    let mut out = QMatrix::zeros(m.rows(), m.cols())?;
    let c = map.factor() * e;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let v = m.get(i, j);
            if v.is_zero() {
                continue;
            }
            out.set(i, j, v * &c * e.pow(deg[i] - deg[j]));
        }
    }
    Ok(out)
}

pub fn euclid_matrix(p: &EuclidParams) -> Result<QMatrix> {
    Ok(invariant_matrix(&build_euclid(p, EuclidStage::HhatQes)?, p.n(), p.k())?.matrix)
}

/// Exact Laurent coefficients of `c·e·M_S(e)` in `e`, lowest power first.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentExpansion {
    pub lowest: i32,
    pub coefficients: Vec<QMatrix>,
}

impl LaurentExpansion {
    pub fn term(&self, power: i32) -> Option<&QMatrix> {
        let idx = power - self.lowest;
        (idx >= 0).then(|| self.coefficients.get(idx as usize)).flatten()
    }

    /// Lowest power with a nonzero coefficient.
    pub fn leading_power(&self) -> Option<i32> {
        self.coefficients.iter().position(|c| !c.is_zero()).map(|i| self.lowest + i as i32)
    }
}

/// Entries are Laurent polynomials in `e` with powers in `[-(k+1), 2]`;
/// they are recovered by exact interpolation and confirmed at an extra node.
pub fn laurent_expansion(p: &EuclidParams, map: ContractionMap) -> Result<LaurentExpansion> {
    let lowest = -(p.k() as i32) - 1;
    let highest = 2;
    let count = (highest - lowest + 1) as usize;
    let nodes: Vec<Rational> = (1..=count as i64 + 1).map(|i| Rational::new(i.into(), (count as i64 + 2).into())).collect();
    let samples = nodes.iter().map(|e| scaled_sphere_matrix(p, map, e)).collect::<Result<Vec<_>>>()?;
    let rows: Vec<Vec<Rational>> = nodes[..count]
        .iter()
        .map(|e| (0..count).map(|j| e.pow(lowest + j as i32)).collect())
        .collect();
    let v = QMatrix::from_rows(rows)?;
    let (r, c) = (samples[0].rows(), samples[0].cols());
    let mut coefficients = vec![QMatrix::zeros(r, c)?; count];
    for i in 0..r {
        for j in 0..c {
            let rhs: Vec<Rational> = samples[..count].iter().map(|s| s.get(i, j).clone()).collect();
            let sol = v.solve(&rhs).ok_or_else(|| Error::Shape("interpolation failed".into()))?;
            let check = &nodes[count];
            let val: Rational = sol.iter().enumerate().map(|(t, s)| s * check.pow(lowest + t as i32)).sum();
            if &val != samples[count].get(i, j) {
                return Err(Error::Shape("entry is not a Laurent polynomial in the expected range".into()));
            }
            for (t, s) in sol.into_iter().enumerate() {
                coefficients[t].set(i, j, s);
            }
        }
    }
    Ok(LaurentExpansion { lowest, coefficients })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContractionProbe {
    pub epsilon: String,
    /// Largest `|entry|` of `c·ε²·M_S(ε) - M_E`.
    pub max_diff: String,
    pub max_diff_approx: f64,
    /// Entries that agree exactly.
    pub exact_entries: usize,
}

pub fn probe(p: &EuclidParams, map: ContractionMap, eps: &Rational, target: &QMatrix) -> Result<ContractionProbe> {
    if eps.is_zero() {
        return Err(Error::ZeroEpsilon);
    }
    let e = eps * eps;
    let d = scaled_sphere_matrix(p, map, &e)?.sub(target)?;
    let mut exact = 0;
    for v in d.entries() {
        if v.is_zero() {
            exact += 1;
        }
    }
    let max = d.max_abs();
    Ok(ContractionProbe {
        epsilon: fmt_rational(eps),
        max_diff_approx: to_f64(&max),
        max_diff: fmt_rational(&max),
        exact_entries: exact,
    })
}

/// `log2(d(ε)/d(ε/2))` for successive probes.
pub fn empirical_orders(probes: &[ContractionProbe]) -> Vec<f64> {
    probes
        .windows(2)
        .map(|w| (w[0].max_diff_approx / w[1].max_diff_approx).log2())
        .collect()
}

pub fn is_nonnegative(m: &QMatrix) -> bool {
    m.entries().iter().all(|v| !v.is_negative())
}

/// The four halvings used by default.
pub fn default_epsilons() -> Vec<Rational> {
    (1..=4).map(|i| Rational::new(1.into(), (1i64 << i).into())).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContractionReport {
    pub map: ContractionMap,
    pub n: usize,
    pub k: u32,
    pub probes: Vec<ContractionProbe>,
    pub orders: Vec<f64>,
    /// Lowest power of `ε²` in the exact expansion of the difference.
    pub leading_power: Option<i32>,
    /// Order-0 term of the expansion equals the Euclidean matrix.
    pub limit_exact: bool,
}

impl ContractionReport {
    /// Limit exact and every halving within `2 ± 0.3`, or no difference at all.
    pub fn converges(&self) -> bool {
        let all_zero = self.probes.iter().all(|p| p.max_diff_approx == 0.0);
        self.limit_exact && (all_zero || self.orders.iter().all(|o| (o - 2.0).abs() <= 0.3))
    }
}

pub fn contraction_report(p: &EuclidParams, map: ContractionMap, eps: &[Rational]) -> Result<ContractionReport> {
    let target = euclid_matrix(p)?;
    let probes = eps.iter().map(|e| probe(p, map, e, &target)).collect::<Result<Vec<_>>>()?;
    let l = laurent_expansion(p, map)?;
    let zero = QMatrix::zeros(target.rows(), target.cols())?;
    let mut diff = l.clone();
    let idx = (-l.lowest) as usize;
    diff.coefficients[idx] = l.term(0).unwrap_or(&zero).sub(&target)?;
    Ok(ContractionReport {
        map,
        n: p.n(),
        k: p.k(),
        orders: empirical_orders(&probes),
        probes,
        leading_power: diff.leading_power(),
        limit_exact: l.term(0).map(|t| t == &target).unwrap_or(false) && l.leading_power().map_or(true, |x| x >= 0),
    })
}

/// Small-ε limit of the sphere family under `map`.
pub fn check_contraction(p: &EuclidParams, map: ContractionMap, eps: &[Rational], seed: u64) -> ConformanceItem {
    let name = match map {
        ContractionMap::Listed => "listed",
        ContractionMap::Corrected => "corrected",
    };
    let id = format!("contraction.{name}.n{}.k{}", p.n(), p.k());
    let claim = match map {
        ContractionMap::Listed => "4e^2 h_QES(S^n) -> hhat_QES(E^n) with g_j = 1/2 - g'_j, g_{n+1} = w/e^2, a = -b/e^4, x = e^2 Y",
        ContractionMap::Corrected => "-4e^2 h_QES(S^n) -> hhat_QES(E^n) with g_j = 1/2 - g'_j, g_{n+1} = w/e^2, a = -b/(4e^4), x = e^2 Y",
    };
    guard(&id, claim, seed, || {
        let r = contraction_report(p, map, eps)?;
        let summary = format!(
            "max |diff| at eps = {}: {}; orders {}; leading power of e^2 in the difference {}",
            r.probes.iter().map(|x| x.epsilon.as_str()).collect::<Vec<_>>().join(","),
            r.probes.iter().map(|x| x.max_diff.as_str()).collect::<Vec<_>>().join(","),
            r.orders.iter().map(|o| format!("{o:.4}")).collect::<Vec<_>>().join(","),
            r.leading_power.map_or("none".to_string(), |x| x.to_string()),
        );
        let it = ConformanceItem::new(&id, claim, seed).detail(summary.clone());
        Ok(if r.converges() {
            it
        } else {
            let it = it.deviation(summary);
            match map {
                ContractionMap::Listed => {
                    let c = contraction_report(p, ContractionMap::Corrected, eps)?;
                    if c.converges() {
                        it.corrected("-4e^2 h_QES with a = -b/(4e^4) converges to the Euclidean matrix with order 2")
                    } else {
                        it
                    }
                }
                ContractionMap::Corrected => it,
            }
        })
    })
    .draws(vec![describe_euclid(p)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::q;

    fn ep(n: usize, k: u32) -> EuclidParams {
        let g = [q(3, 4), q(-1, 3), q(2, 7)];
        EuclidParams::new(g[..n].to_vec(), q(2, 5), q(1, 7), k).unwrap()
    }

    #[test]
    fn corrected_map_limit() {
        for (n, k) in [(2, 1), (2, 2)] {
            let p = ep(n, k);
            let l = laurent_expansion(&p, ContractionMap::Corrected).unwrap();
            assert_eq!(l.term(0).unwrap(), &euclid_matrix(&p).unwrap());
            assert_eq!(l.leading_power(), Some(0));
        }
    }

    #[test]
    fn zero_epsilon_rejected() {
        let p = ep(2, 1);
        assert!(matches!(sphere_params_at(&p, ContractionMap::Listed, &int(0)), Err(Error::ZeroEpsilon)));
    }
}
