//! The quadratic algebra of the `n = 3` integrals.
//!
//! Generators are normalized as `L_ij = -4 I_ij + κ_ij` with
//! `κ_ij = 2γ_iγ_j + γ_i + γ_j - 2`; this is the scale and shift for which
//! every operator term of the structure equations holds.

use crate::diffop::DiffOp;
use crate::error::Result;
use crate::exactalg::rational::{fmt_rational, int, q, Rational};
use crate::models::{build_integral, IntegralKind, SphereParams};

use super::fit::fit_combination;
use super::item::{describe_sphere, guard, ConformanceItem, Draws};

pub struct Generators {
    pub l12: DiffOp,
    pub l13: DiffOp,
    pub l23: DiffOp,
}

impl Generators {
    pub fn get(&self, i: usize, j: usize) -> &DiffOp {
        match (i.min(j), i.max(j)) {
            (1, 2) => &self.l12,
            (1, 3) => &self.l13,
            (2, 3) => &self.l23,
            _ => panic!("no generator L_{i}{j}"),
        }
    }
}

pub fn kappa(p: &SphereParams, i: usize, j: usize) -> Rational {
    let (a, b) = (p.gamma(i), p.gamma(j));
    int(2) * a * b + a + b - int(2)
}

pub fn a_coef(p: &SphereParams, i: usize) -> Rational {
    let g = p.gamma(i);
    g * (g - int(1))
}

pub fn generators(p: &SphereParams) -> Result<Generators> {
    let l = |i, j| -> Result<DiffOp> {
        let op = build_integral(IntegralKind::Pair(i, j), p)?.scale(&int(-4));
        Ok(&op + &DiffOp::constant(3, kappa(p, i, j)))
    };
    Ok(Generators { l12: l(1, 2)?, l13: l(1, 3)?, l23: l(2, 3)? })
}

/// `{A,B,C}`, the sum over all six orderings.
pub fn sym3(a: &DiffOp, b: &DiffOp, c: &DiffOp) -> Result<DiffOp> {
    let m = |x: &DiffOp, y: &DiffOp, z: &DiffOp| x.compose(y)?.compose(z);
    let mut s = m(a, b, c)?;
    for t in [m(a, c, b)?, m(b, a, c)?, m(b, c, a)?, m(c, a, b)?, m(c, b, a)?] {
        s = &s + &t;
    }
    Ok(s)
}

const STRUCTURE: [(usize, usize, usize, i64); 3] = [(1, 2, 3, 1), (1, 3, 2, -1), (2, 3, 1, 1)];

/// `4ε({L_ij, L_ik - L_jk} + 2(1+2a_j)L_ik - 2(1+2a_i)L_jk + c(a_i - a_j))`.
pub fn structure_rhs(p: &SphereParams, g: &Generators, (i, j, k, eps): (usize, usize, usize, i64), c: &Rational) -> Result<DiffOp> {
    let (lij, lik, ljk) = (g.get(i, j), g.get(i, k), g.get(j, k));
    let mut rhs = lij.anticommutator(&(lik - ljk))?;
    rhs = &rhs + &lik.scale(&(int(2) * (int(1) + int(2) * a_coef(p, j))));
    rhs = &rhs - &ljk.scale(&(int(2) * (int(1) + int(2) * a_coef(p, i))));
    rhs = &rhs + &DiffOp::constant(3, c * (a_coef(p, i) - a_coef(p, j)));
    Ok(rhs.scale(&int(4 * eps)))
}

/// The listed right-hand side for `R²`.
pub fn casimir_printed(p: &SphereParams, g: &Generators) -> Result<DiffOp> {
    let (a1, a2, a3) = (a_coef(p, 1), a_coef(p, 2), a_coef(p, 3));
    let (l12, l13, l23) = (&g.l12, &g.l13, &g.l23);
    let mut c = sym3(l12, l13, l23)?.scale(&q(8, 3));
    c = &c - &l12.compose(l12)?.scale(&(int(4) * (int(3) + int(4) * &a3)));
    c = &c - &l23.compose(l23)?.scale(&(int(4) * (int(3) + int(4) * &a1)));
    c = &c - &l13.compose(l13)?.scale(&(int(4) * (int(3) + int(4) * &a2)));
    let b2 = &l12.anticommutator(&(l13 + l23))? + &l13.anticommutator(l23)?;
    c = &c + &b2.scale(&q(52, 3));
    c = &c + &l12.scale(&(q(16, 3) * (int(1) + int(11) * &a3)));
    c = &c + &l23.scale(&(q(16, 3) * (int(1) + int(11) * &a1)));
    c = &c + &l13.scale(&(q(16, 3) * (int(1) + int(11) * &a2)));
    let k = int(64) * &a1 * &a2 * &a3 + int(48) * (&a1 * &a2 + &a2 * &a3 + &a3 * &a1) + q(32, 3) * (&a1 + &a2 + &a3);
    Ok(&c + &DiffOp::constant(3, k))
}

const CASIMIR_NAMES: [&str; 11] =
    ["{L12,L13,L23}", "L12^2", "L23^2", "L13^2", "{L12,L13}", "{L12,L23}", "{L13,L23}", "L12", "L23", "L13", "1"];

fn casimir_basis(g: &Generators) -> Result<Vec<DiffOp>> {
    let (l12, l13, l23) = (&g.l12, &g.l13, &g.l23);
    Ok(vec![
        sym3(l12, l13, l23)?,
        l12.compose(l12)?,
        l23.compose(l23)?,
        l13.compose(l13)?,
        l12.anticommutator(l13)?,
        l12.anticommutator(l23)?,
        l13.anticommutator(l23)?,
        l12.clone(),
        l23.clone(),
        l13.clone(),
        DiffOp::constant(3, int(1)),
    ])
}

/// `R²` as a combination of the Casimir monomials, if it is one.
pub fn fit_casimir(g: &Generators) -> Result<Option<Vec<Rational>>> {
    let r = g.l12.commutator(&g.l13)?;
    fit_combination(&r.compose(&r)?, &casimir_basis(g)?)
}

pub fn check_quadratic_algebra(draws: usize, seed: u64) -> Vec<ConformanceItem> {
    let mut rng = Draws::new(seed, "algebra.n3");
    let mut ps = vec![SphereParams::new(vec![int(0); 4], int(0), 1).expect("n = 3")];
    ps.extend((0..draws).map(|_| rng.sphere(3, 1, false)));
    let desc: Vec<String> = ps.iter().map(describe_sphere).collect();
    let mut out = Vec::new();

    let id = "algebra.single-commutator";
    let claim = "R = [L12,L13] = [L13,L23] = [L12,L23]";
    out.push(
        guard(id, claim, seed, || {
            let mut flipped = None;
            for p in &ps {
                let g = generators(p)?;
                let r1 = g.l12.commutator(&g.l13)?;
                let r2 = g.l13.commutator(&g.l23)?;
                let r3 = g.l12.commutator(&g.l23)?;
                if r1 != r2 {
                    return Ok(ConformanceItem::new(id, claim, seed)
                        .deviation(format!("{}: [L12,L13] - [L13,L23] = {}", describe_sphere(p), &r1 - &r2)));
                }
                if r1 != r3 {
                    if (&r1 + &r3).is_zero() {
                        flipped.get_or_insert_with(|| format!("{}: [L12,L13] - [L12,L23] = {}", describe_sphere(p), &r1 - &r3));
                    } else {
                        return Ok(ConformanceItem::new(id, claim, seed)
                            .deviation(format!("{}: [L12,L13] - [L12,L23] = {}", describe_sphere(p), &r1 - &r3)));
                    }
                }
            }
            Ok(match flipped {
                None => ConformanceItem::new(id, claim, seed),
                Some(r) => ConformanceItem::new(id, claim, seed)
                    .deviation(r)
                    .corrected("R = [L12,L13] = [L13,L23] = [L23,L12]"),
            })
        })
        .draws(desc.clone()),
    );

    let id = "algebra.structure";
    let claim = "[L_ij, R] = 4e_ijk({L_ij, L_ik - L_jk} + 2(1+2a_j)L_ik - 2(1+2a_i)L_jk + 2(a_i - a_j)), a_i = g_i(g_i - 1)";
    out.push(
        guard(id, claim, seed, || {
            let mut first = None;
            let mut constant_only = true;
            let mut corrected_holds = true;
            for p in &ps {
                let g = generators(p)?;
                let r = g.l12.commutator(&g.l13)?;
                for t in STRUCTURE {
                    let lhs = g.get(t.0, t.1).commutator(&r)?;
                    let res = &lhs - &structure_rhs(p, &g, t, &int(2))?;
                    if res.is_zero() {
                        continue;
                    }
                    first.get_or_insert_with(|| {
                        format!("{}: [L{}{}, R] - rhs = {}", describe_sphere(p), t.0, t.1, res)
                    });
                    constant_only &= res.order() == Some(0) && res.free_term().is_constant();
                    corrected_holds &= (&lhs - &structure_rhs(p, &g, t, &int(-10))?).is_zero();
                }
            }
            let it = ConformanceItem::new(id, claim, seed);
            Ok(match first {
                None => it,
                Some(r) if constant_only && corrected_holds => it.deviation(r).corrected(
                    "with L_ij = -4 I_ij + 2g_ig_j + g_i + g_j - 2 all operator terms hold; the constant term is -10(a_i - a_j)",
                ),
                Some(r) => it.deviation(r),
            })
        })
        .draws(desc.clone()),
    );

    let cas_ps: Vec<&SphereParams> = ps.iter().take(2).collect();
    let id = "algebra.casimir";
    let claim = "R^2 = (8/3){L12,L13,L23} - sum 4(3+4a_k)L_ij^2 + (52/3)sum{L_ij,L_kl} + (16/3)sum(1+11a_k)L_ij + 64a1a2a3 + 48(a1a2+a2a3+a3a1) + (32/3)(a1+a2+a3)";
    out.push(
        guard(id, claim, seed, || {
            let mut first = None;
            let mut fits = Vec::new();
            for p in &cas_ps {
                let g = generators(p)?;
                let r = g.l12.commutator(&g.l13)?;
                let res = &r.compose(&r)? - &casimir_printed(p, &g)?;
                if res.is_zero() {
                    continue;
                }
                first.get_or_insert_with(|| format!("{}: R^2 - rhs = {}", describe_sphere(p), res));
                let f = match fit_casimir(&g)? {
                    Some(c) => CASIMIR_NAMES
                        .iter()
                        .zip(&c)
                        .map(|(n, v)| format!("{n}: {}", fmt_rational(v)))
                        .collect::<Vec<_>>()
                        .join(", "),
                    None => "R^2 is outside the span of the Casimir monomials".into(),
                };
                fits.push(format!("{}: {}", describe_sphere(p), f));
            }
            let it = ConformanceItem::new(id, claim, seed);
            Ok(match first {
                None => it,
                Some(r) => it.deviation(r).corrected(format!("measured coefficients: {}", fits.join("; "))),
            })
        })
        .draws(cas_ps.iter().map(|p| describe_sphere(p)).collect()),
    );

    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operator_terms_of_structure_equations() {
        let p = SphereParams::new(vec![q(1, 3), q(-2, 5), q(3, 4), q(5, 7)], int(0), 1).unwrap();
        let g = generators(&p).unwrap();
        let r = g.l12.commutator(&g.l13).unwrap();
        assert_eq!(r, g.l13.commutator(&g.l23).unwrap());
        assert_eq!(r, g.l23.commutator(&g.l12).unwrap());
        for t in STRUCTURE {
            let lhs = g.get(t.0, t.1).commutator(&r).unwrap();
            assert!((&lhs - &structure_rhs(&p, &g, t, &int(-10)).unwrap()).is_zero());
        }
    }
}
