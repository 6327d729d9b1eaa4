use proptest::prelude::*;

use qeslab::Error;
use qeslab::diffop::{gauge_conjugate, gl_generator, DiffOp, Direction, GaugeFactor, GlKind};
use qeslab::exactalg::rational::{binomial, int, pochhammer, q};
use qeslab::exactalg::{real_roots, MultiPoly, QMatrix, RatFunc, Rational, RootKind, UniPoly};
use qeslab::models::{
    build_es_from_generators, build_es_sphere, build_qes_sphere, build_qes_sphere_with, sphere_metric, Convention,
    SphereParams,
};
use qeslab::repspace::{catalog_entry, invariant_matrix};
use qeslab::separation::{completeness, solve_chains};
use qeslab::verify::{fit_combination, run_suites, Status, Suite, VerifyConfig};

fn rat() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=9).prop_map(|(n, d)| q(n, d))
}

fn poly(nvars: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0u32..3, nvars), rat()), 0..5).prop_map(move |ts| {
        let mut p = MultiPoly::zero(nvars);
        for (e, c) in ts {
            p = &p + &MultiPoly::monomial(e, c);
        }
        p
    })
}

/// A random operator of order at most two with polynomial coefficients.
fn op2() -> impl Strategy<Value = DiffOp> {
    prop::collection::vec((0usize..6, poly(2)), 1..4).prop_map(|ts| {
        let alphas = [[0, 0], [1, 0], [0, 1], [2, 0], [1, 1], [0, 2]];
        let mut op = DiffOp::zero(2);
        for (a, c) in ts {
            op = op + DiffOp::term(alphas[a].to_vec(), RatFunc::from_poly(c));
        }
        op
    })
}

fn sphere(n: usize, k: u32) -> impl Strategy<Value = SphereParams> {
    (prop::collection::vec(rat(), n + 1), rat()).prop_map(move |(g, a)| SphereParams::new(g, a, k).unwrap())
}

fn matrix(d: usize) -> impl Strategy<Value = QMatrix> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, d), d)
        .prop_map(|rows| QMatrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(int).collect()).collect()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn distributive(p in poly(3), q_ in poly(3), r in poly(3)) {
        prop_assert_eq!(&(&p + &q_) * &r, &(&p * &r) + &(&q_ * &r));
    }

    #[test]
    fn substitute_is_multiplicative(p in poly(2), q_ in poly(2), a in poly(2), b in poly(2)) {
        let img = [a, b];
        let lhs = (&p * &q_).substitute(&img).unwrap();
        let rhs = &p.substitute(&img).unwrap() * &q_.substitute(&img).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn charpoly_vanishes_at_exact_roots(m in matrix(4)) {
        let cp = m.charpoly().unwrap();
        let set = real_roots(&cp, 48).unwrap();
        let total: u32 = set.roots.iter().map(|r| match r.kind { RootKind::ComplexPair { .. } => 2 * r.multiplicity, _ => r.multiplicity }).sum();
        prop_assert_eq!(total as usize, cp.degree().unwrap());
        for r in &set.roots {
            if let Some(x) = r.exact() {
                prop_assert_eq!(cp.eval(x), int(0));
            }
        }
    }

    #[test]
    fn compose_associative(a in op2(), b in op2(), c in op2()) {
        let l = a.compose(&b).unwrap().compose(&c).unwrap();
        let r = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert!((l - r).is_zero());
    }

    #[test]
    fn jacobi(a in op2(), b in op2(), c in op2()) {
        let t1 = a.commutator(&b.commutator(&c).unwrap()).unwrap();
        let t2 = b.commutator(&c.commutator(&a).unwrap()).unwrap();
        let t3 = c.commutator(&a.commutator(&b).unwrap()).unwrap();
        prop_assert!((t1 + t2 + t3).is_zero());
    }

    #[test]
    fn apply_respects_compose(a in op2(), b in op2(), p in poly(2)) {
        let l = a.compose(&b).unwrap().apply_poly(&p).unwrap();
        let r = a.apply_poly(&b.apply_poly(&p).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn gauge_round_trip(a in op2(), e in rat(), arg in poly(2)) {
        let base = &MultiPoly::one(2) - &MultiPoly::var(2, 0);
        let g = GaugeFactor::trivial(2).power(base, e).unwrap().exponential(arg).unwrap();
        let there = gauge_conjugate(&a, &g, Direction::Conjugate).unwrap();
        let back = gauge_conjugate(&there, &g, Direction::Inverse).unwrap();
        prop_assert!((back - a).is_zero());
    }
}

#[test]
fn gl_closes_under_commutator() {
    for n in 1..=3usize {
        let k = 2;
        let mut gens = vec![gl_generator(GlKind::Euler, k, n).unwrap()];
        for i in 0..n {
            gens.push(gl_generator(GlKind::Lower(i), k, n).unwrap());
            gens.push(gl_generator(GlKind::Raise(i), k, n).unwrap());
            for j in 0..n {
                gens.push(gl_generator(GlKind::Diag(i, j), k, n).unwrap());
            }
        }
        let mut basis = gens.clone();
        basis.push(DiffOp::one(n));
        for a in &gens {
            for b in &gens {
                let c = a.commutator(b).unwrap();
                assert!(fit_combination(&c, &basis).unwrap().is_some(), "n={n}: commutator leaves the span");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 8, ..ProptestConfig::default() })]

    #[test]
    fn generator_form_matches(p in sphere(3, 1)) {
        prop_assert!((build_es_from_generators(&p).unwrap() - build_es_sphere(&p)).is_zero());
    }

    #[test]
    fn qes_at_zero_a_is_es(p in sphere(2, 3)) {
        let p = p.with_a(int(0));
        let h = invariant_matrix(&build_qes_sphere(&p).unwrap(), 2, 3).unwrap().matrix;
        let e = invariant_matrix(&build_es_sphere(&p), 2, 3).unwrap().matrix;
        prop_assert_eq!(h.charpoly().unwrap(), e.charpoly().unwrap());
    }

    #[test]
    fn spectrum_symmetric_in_gammas(p in sphere(3, 2), swap in 0usize..3) {
        let mut g = p.gammas().to_vec();
        g.swap(swap, (swap + 1) % 3);
        let pp = p.with_gamma(g).unwrap();
        let a = invariant_matrix(&build_qes_sphere(&p).unwrap(), 3, 2).unwrap().matrix.charpoly().unwrap();
        let b = invariant_matrix(&build_qes_sphere(&pp).unwrap(), 3, 2).unwrap().matrix.charpoly().unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn catalog_trace(p in sphere(2, 2)) {
        // The listed forms hold for the flipped-sign operator when n >= 2.
        let e = catalog_entry(&p).unwrap();
        let h = invariant_matrix(&build_qes_sphere_with(&p, Convention::Flipped).unwrap(), 2, 2).unwrap().matrix;
        prop_assert_eq!(h.trace(), e.trace());
    }

    #[test]
    fn catalog_trace_n1(p in sphere(1, 2)) {
        let e = catalog_entry(&p).unwrap();
        let h = invariant_matrix(&build_qes_sphere(&p).unwrap(), 1, 2).unwrap().matrix;
        prop_assert_eq!(h.trace(), e.trace());
    }

    #[test]
    fn separation_complete(p in sphere(2, 3)) {
        let sols = match solve_chains(&p, 48) {
            Err(Error::HypergeometricPole(_)) => {
                // Only where a lower 2F1 parameter 2A + G_1 + 1/2 can be a nonpositive integer.
                prop_assert!((p.partial_g(1) + q(1, 2)).is_integer());
                return Ok(());
            }
            r => r.unwrap(),
        };
        let c = completeness(&p, &sols, 48).unwrap();
        prop_assert!(c.complete);
        prop_assert_eq!(c.states, binomial(5, 2));
        for s in &sols {
            // V_1 = 2F1(-q, q + G_2; G_1 + 1/2; u) drops degree when (q + G_2)_q = 0.
            let q1 = s.q[0];
            let d = s.factors[0].degree().unwrap_or(0);
            prop_assert!(d <= q1 as usize);
            if pochhammer(&(int(q1 as i64) + p.partial_g(2)), q1) != int(0) {
                prop_assert_eq!(d, q1 as usize);
            }
            let sum: u32 = s.q.iter().sum();
            prop_assert_eq!(&s.a[1], &int(sum as i64));
        }
    }

    #[test]
    fn determinant(n in 1usize..=3) {
        let m = sphere_metric(n).unwrap();
        let mut p = &MultiPoly::one(n) - &(0..n).fold(MultiPoly::zero(n), |s, i| &s + &MultiPoly::var(n, i));
        for i in 0..n {
            p = &p * &MultiPoly::var(n, i);
        }
        prop_assert!((m.det() - &RatFunc::from_poly(p)).is_zero());
    }

    #[test]
    fn suites_reproducible_and_conclusive(seed in 0u64..1000) {
        let cfg = VerifyConfig { seed, n: Some(2), k: Some(1), draws: 2, ..Default::default() };
        let suites = [Suite::Integrals, Suite::Gauge, Suite::ClosedForms];
        let a = run_suites(&suites, &cfg);
        let b = run_suites(&suites, &cfg);
        prop_assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        prop_assert!(a.iter().all(|i| i.status != Status::Inconclusive));
        prop_assert!(a.iter().all(|i| i.seed == seed));
    }
}

#[test]
fn es_levels_small() {
    let p = SphereParams::new(vec![q(1, 3), q(-1, 2), int(2), q(3, 5)], int(0), 4).unwrap();
    let h = invariant_matrix(&build_es_sphere(&p), 3, 4).unwrap().matrix;
    let g = p.big_g();
    let want = (0..=4u32).fold(UniPoly::one(), |acc, j| {
        let e = -(int(j as i64) * (int(j as i64) + &g + int(1)));
        &acc * &UniPoly::linear_root(&e).pow(binomial(j as u64 + 2, 2) as u32)
    });
    assert_eq!(h.charpoly().unwrap(), want);
}
