//! Gauge rotations to Schrödinger form.

use crate::diffop::{gauge_conjugate, DiffOp, Direction, GaugeFactor};
use crate::error::{Error, Result};
use crate::exactalg::poly::MultiPoly;
use crate::exactalg::rational::{fmt_rational, int, q, Rational};
use crate::exactalg::ratfunc::RatFunc;
use crate::models::euclid::{euclid_e0_measured, euclid_psi0, euclid_u, to_cartesian};
use crate::models::metric::sphere_metric;
use crate::models::sphere::{e0_printed, qes_extra_potential};
use crate::models::{
    build_es_sphere, build_euclid, build_qes_sphere, potentials, psi0, qes_gauge_corrected, qes_gauge_printed, Chart,
    EuclidParams, EuclidStage, SphereParams, Which,
};

use super::item::{describe_euclid, describe_sphere, guard, ConformanceItem, Draws};

/// `-G h G⁻¹ + Δ_g`: what is left after removing the kinetic term.
pub fn schrodinger_rest(h: &DiffOp, g: &GaugeFactor) -> Result<DiffOp> {
    let n = h.nvars();
    let lb = sphere_metric(n)?.laplace_beltrami().clone();
    Ok(&gauge_conjugate(h, g, Direction::Conjugate)?.scale(&int(-1)) + &lb)
}

/// `E_0` from `-Ψ_0 h_ES Ψ_0⁻¹ = -Δ_g + V_0/4 - E_0/4`, or `None` if the
/// remainder is not a constant.
pub fn measured_e0(p: &SphereParams) -> Result<Option<Rational>> {
    let rest = schrodinger_rest(&build_es_sphere(p), &psi0(p)?)?;
    let v0 = potentials(p, Chart::Simplex, Which::Es)?.scale(&q(1, 4));
    let d = &rest - &DiffOp::multiplication(v0);
    if d.order().unwrap_or(0) > 0 {
        return Ok(None);
    }
    Ok(d.free_term().as_constant().map(|c| c * int(-4)))
}

fn full_qes_gauge(p: &SphereParams, extra: GaugeFactor) -> Result<GaugeFactor> {
    let mut g = psi0(p)?;
    for (b, e) in extra.factors() {
        g = g.power(b.clone(), e.clone())?;
    }
    g.exponential(extra.exp_arg().clone())
}

/// The extra potential left by the corrected QES gauge, constant dropped.
/// `V_0` is taken at `γ_{n+1} - a`, absorbing the extra `(1-x)^{-a/2}`.
pub fn measured_qes_extra(p: &SphereParams) -> Result<MultiPoly> {
    let rest = schrodinger_rest(&build_qes_sphere(p)?, &full_qes_gauge(p, qes_gauge_corrected(p)?)?)?;
    if rest.order().unwrap_or(0) > 0 {
        return Err(Error::NonSeparating("corrected QES gauge leaves derivative terms".into()));
    }
    let mut g = p.gammas().to_vec();
    let last = g.len() - 1;
    g[last] = &g[last] - p.a();
    let shifted = SphereParams::new(g, int(0), p.k())?;
    let w = &rest.free_term().scale(&int(4)) - &potentials(&shifted, Chart::Simplex, Which::Es)?;
    let w = w.as_poly().ok_or(Error::NonPolynomial)?.clone();
    let c = w.constant_term();
    Ok(&w - &MultiPoly::constant(p.n(), c))
}

/// `-a²x² + a(2G + n + 1 + 4k - a)x`.
pub fn qes_extra_derived(p: &SphereParams) -> MultiPoly {
    let n = p.n();
    let xs = (0..n).fold(MultiPoly::zero(n), |s, i| &s + &MultiPoly::var(n, i));
    let a = p.a();
    let lin = a * (int(2) * p.big_g() + int(n as i64 + 1) + int(4 * p.k() as i64) - a);
    &xs.scale(&lin) - &(&xs * &xs).scale(&(a * a))
}

/// `U⁻¹ ψ_0 ĥ_QES ψ_0⁻¹ U + E_0`.
pub fn euclid_rotated(p: &EuclidParams) -> Result<DiffOp> {
    let h = build_euclid(p, EuclidStage::HhatQes)?;
    let r = gauge_conjugate(&h, &euclid_psi0(p)?, Direction::Conjugate)?;
    let r = gauge_conjugate(&r, &euclid_u(p)?, Direction::Inverse)?;
    Ok(&r + &DiffOp::constant(p.n(), euclid_e0_measured(p)))
}

pub fn check_gauge(n: usize, draws: usize, seed: u64) -> Vec<ConformanceItem> {
    let mut out = Vec::new();
    let mut rng = Draws::new(seed, &format!("gauge.n{n}"));
    let tag = format!("n{n}");

    let mut es_ps = vec![SphereParams::new(vec![int(0); n + 1], int(0), 0).expect("n >= 1")];
    es_ps.extend((0..draws.max(10)).map(|_| rng.sphere(n, 0, false)));
    let es_desc: Vec<String> = es_ps.iter().map(describe_sphere).collect();

    let id = format!("gauge.sphere-es.{tag}");
    let claim = "-Psi0 h_ES Psi0^-1 = -Lap_g + V0/4 + const";
    out.push(
        guard(&id, claim, seed, || {
            let it = ConformanceItem::new(&id, claim, seed);
            for p in &es_ps {
                if measured_e0(p)?.is_none() {
                    let rest = schrodinger_rest(&build_es_sphere(p), &psi0(p)?)?;
                    return Ok(it.deviation(format!("{}: remainder {}", describe_sphere(p), rest)));
                }
            }
            Ok(it)
        })
        .draws(es_desc.clone()),
    );

    let id = format!("energy.sphere-es.{tag}");
    let claim = "E0 = G^2 + (n-1)G + 1";
    out.push(
        guard(&id, claim, seed, || {
            let it = ConformanceItem::new(&id, claim, seed);
            let mut diffs = Vec::new();
            let mut derived_ok = true;
            for p in &es_ps {
                let Some(e) = measured_e0(p)? else {
                    return Ok(it.deviation(format!("{}: no constant remainder", describe_sphere(p))));
                };
                let g = p.big_g();
                derived_ok &= e == &g * &g + int(n as i64 - 1) * &g;
                let d = &e - &e0_printed(p);
                if d != int(0) {
                    diffs.push(format!("{}: measured {} printed {}", describe_sphere(p), fmt_rational(&e), fmt_rational(&e0_printed(p))));
                }
            }
            Ok(match (diffs.is_empty(), derived_ok) {
                (true, _) => it,
                (false, true) => it.deviation(diffs.join("; ")).corrected("E0 = G^2 + (n-1)G (zero at g = 0, where Psi0 = 1)"),
                (false, false) => it.deviation(diffs.join("; ")),
            })
        })
        .draws(es_desc),
    );

    let qes_ps: Vec<SphereParams> = (0..draws).map(|_| rng.sphere(n, qes_k(n), true)).collect();
    let qes_desc: Vec<String> = qes_ps.iter().map(describe_sphere).collect();
    let id = format!("gauge.sphere-qes.{tag}");
    let claim = "Psi0 exp(-a x/2) rotates h_QES to -Lap_g + (V0 + a^2x^2 - a(a - 2G - n - 1 + 4k)x)/4 + const";
    out.push(
        guard(&id, claim, seed, || {
            let it = ConformanceItem::new(&id, claim, seed);
            let mut notes = Vec::new();
            let mut derived_ok = true;
            for p in &qes_ps {
                let rest = schrodinger_rest(&build_qes_sphere(p)?, &full_qes_gauge(p, qes_gauge_printed(p)?)?)?;
                let first = rest.part_of_order(1);
                let extra = measured_qes_extra(p)?;
                derived_ok &= extra == qes_extra_derived(p);
                if !first.is_zero() || extra != qes_extra_potential(p) {
                    notes.push(format!(
                        "{}: first-order remainder with listed gauge {}; measured extra - listed = {}",
                        describe_sphere(p),
                        first,
                        &extra - &qes_extra_potential(p)
                    ));
                }
            }
            Ok(match (notes.is_empty(), derived_ok) {
                (true, _) => it,
                (false, true) => it.deviation(notes.remove(0)).corrected(
                    "gauge Psi0 exp(-a x/2)(1-x)^(-a/2); V0 at g_{n+1} - a; extra potential -a^2x^2 + a(2G + n + 1 + 4k - a)x up to a constant",
                ),
                (false, false) => it.deviation(notes.remove(0)),
            })
        })
        .draws(qes_desc),
    );

    let eu_ps: Vec<EuclidParams> = (0..draws).map(|_| rng.euclid(n, qes_k(n))).collect();
    let eu_desc: Vec<String> = eu_ps.iter().map(describe_euclid).collect();
    let id = format!("gauge.euclid.{tag}");
    let claim = "U^-1 psi0 hhat_QES psi0^-1 U + E0 = H_QES, U = exp((b/16)(sum Y)^2)";
    out.push(
        guard(&id, claim, seed, || {
            let it = ConformanceItem::new(&id, claim, seed);
            for p in &eu_ps {
                let rot = euclid_rotated(p)?;
                let b_first = &rot.part_of_order(1) - &build_euclid(p, EuclidStage::HEs)?.part_of_order(1);
                if !b_first.is_zero() {
                    return Ok(it.deviation(format!("{}: b-dependent first-order terms {}", describe_euclid(p), b_first)));
                }
                let d = &rot - &build_euclid(p, EuclidStage::HQes)?;
                if !d.is_zero() {
                    return Ok(it.deviation(format!("{}: rotated - H_QES = {}", describe_euclid(p), d)));
                }
            }
            Ok(it)
        })
        .draws(eu_desc.clone()),
    );

    let id = format!("energy.euclid.{tag}");
    let claim = "E0 = 2 omega (sum g' - n)";
    out.push(
        guard(&id, claim, seed, || {
            let it = ConformanceItem::new(&id, claim, seed);
            for p in &eu_ps {
                let h = &build_euclid(p, EuclidStage::HEs)? - &DiffOp::constant(n, euclid_e0_measured(p));
                let rot = gauge_conjugate(&h, &euclid_psi0(p)?, Direction::Inverse)?;
                if rot != build_euclid(p, EuclidStage::HhatEs)? {
                    return Ok(it.deviation(format!("{}: measured ground energy does not rotate H_ES", describe_euclid(p))));
                }
            }
            let p = &eu_ps[0];
            let d = &p.e0() - &euclid_e0_measured(p);
            Ok(if d == int(0) {
                it
            } else {
                it.deviation(format!(
                    "{}: listed {} measured {}",
                    describe_euclid(p),
                    fmt_rational(&p.e0()),
                    fmt_rational(&euclid_e0_measured(p))
                ))
                .corrected("E0 = 2 omega (n - sum g'), from hhat_ES 1 = 0")
            })
        })
        .draws(eu_desc.clone()),
    );

    if n == 1 {
        let id = "gauge.euclid-sextic.n1";
        let claim = "H_QES on the line carries (b^2/16) y^6";
        out.push(
            guard(id, claim, seed, || {
                let it = ConformanceItem::new(id, claim, seed);
                for p in &eu_ps {
                    let v = to_cartesian(&euclid_rotated(p)?.free_term())?;
                    let want = p.b() * p.b() / int(16);
                    let got = sextic_coefficient(&v)?;
                    if got != want {
                        return Ok(it.deviation(format!(
                            "{}: y^6 coefficient {} vs {}",
                            describe_euclid(p),
                            fmt_rational(&got),
                            fmt_rational(&want)
                        )));
                    }
                }
                Ok(it)
            })
            .draws(eu_desc),
        );
    }
    out
}

fn qes_k(n: usize) -> u32 {
    if n >= 3 {
        1
    } else {
        2
    }
}

/// `y⁶` coefficient of a Laurent polynomial `p(y)/y^m`.
fn sextic_coefficient(v: &RatFunc) -> Result<Rational> {
    let den = v.denom();
    if den.nterms() != 1 {
        return Err(Error::NonPolynomial);
    }
    let (m, c) = den.terms().next().ok_or(Error::NonPolynomial)?;
    let shift = m.0[0];
    Ok(v.numer().coeff(&[6 + shift]) / c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_gauge_energy_is_zero() {
        let p = SphereParams::new(vec![int(0), int(0)], int(0), 0).unwrap();
        assert_eq!(measured_e0(&p).unwrap(), Some(int(0)));
        assert_eq!(e0_printed(&p), int(1));
    }

    #[test]
    fn qes_extra_f2() {
        let p = SphereParams::new(vec![int(0); 3], q(1, 2), 1).unwrap();
        assert_eq!(measured_qes_extra(&p).unwrap(), qes_extra_derived(&p));
        assert_ne!(qes_extra_derived(&p), qes_extra_potential(&p));
    }

    #[test]
    fn sextic_n1() {
        let p = EuclidParams::new(vec![q(3, 4)], q(2, 5), q(1, 7), 1).unwrap();
        let v = to_cartesian(&euclid_rotated(&p).unwrap().free_term()).unwrap();
        assert_eq!(sextic_coefficient(&v).unwrap(), q(1, 49 * 16));
    }
}
