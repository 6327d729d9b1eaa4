use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::rational::{fmt_rational, Rational};
use crate::models::{EuclidParams, SphereParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Deviation,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConformanceItem {
    pub id: String,
    /// The identity as claimed.
    pub claim: String,
    pub status: Status,
    /// Exact residual, `"0"` on pass.
    pub residual: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corrected: Option<String>,
    /// Measurements that are not part of the verdict.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub draws: Vec<String>,
    pub seed: u64,
}

impl ConformanceItem {
    pub fn new(id: impl Into<String>, claim: impl Into<String>, seed: u64) -> Self {
        ConformanceItem {
            id: id.into(),
            claim: claim.into(),
            status: Status::Pass,
            residual: "0".into(),
            corrected: None,
            detail: None,
            draws: Vec::new(),
            seed,
        }
    }

    pub fn deviation(mut self, residual: impl Into<String>) -> Self {
        self.status = Status::Deviation;
        self.residual = residual.into();
        self
    }

    pub fn corrected(mut self, c: impl Into<String>) -> Self {
        self.corrected = Some(c.into());
        self
    }

    pub fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }

    pub fn draws(mut self, d: Vec<String>) -> Self {
        self.draws = d;
        self
    }

    /// An engine failure while checking: never a verdict on the claim.
    pub fn inconclusive(id: impl Into<String>, claim: impl Into<String>, seed: u64, e: &Error) -> Self {
        ConformanceItem {
            status: Status::Inconclusive,
            residual: format!("error: {e}"),
            ..ConformanceItem::new(id, claim, seed)
        }
    }
}

/// Runs `f`, turning an engine error into an inconclusive item.
pub(crate) fn guard(id: &str, claim: &str, seed: u64, f: impl FnOnce() -> Result<ConformanceItem>) -> ConformanceItem {
    f().unwrap_or_else(|e| ConformanceItem::inconclusive(id, claim, seed, &e))
}

/// Seeded rational draws with numerators and denominators bounded by 97.
pub struct Draws {
    rng: ChaCha8Rng,
}

pub const BOUND: i64 = 97;

impl Draws {
    /// Each check gets its own stream, so results do not depend on scheduling.
    pub fn new(seed: u64, stream: &str) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(fnv(stream));
        Draws { rng }
    }

    pub fn rational(&mut self) -> Rational {
        let n = self.rng.gen_range(-BOUND..=BOUND);
        let d = self.rng.gen_range(1..=BOUND);
        Rational::new(n.into(), d.into())
    }

    pub fn nonzero(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if r != Rational::from_integer(0.into()) {
                return r;
            }
        }
    }

    pub fn sphere(&mut self, n: usize, k: u32, with_a: bool) -> SphereParams {
        let g = (0..=n).map(|_| self.rational()).collect();
        let a = if with_a { self.nonzero() } else { Rational::from_integer(0.into()) };
        SphereParams::new(g, a, k).expect("n >= 1")
    }

    pub fn euclid(&mut self, n: usize, k: u32) -> EuclidParams {
        let g = (0..n).map(|_| self.rational()).collect();
        let w = self.nonzero();
        let b = self.nonzero();
        EuclidParams::new(g, w, b, k).expect("n >= 1")
    }
}

fn fnv(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
}

pub fn describe_sphere(p: &SphereParams) -> String {
    format!("gamma=({}) a={} k={}", join(p.gammas()), fmt_rational(p.a()), p.k())
}

pub fn describe_euclid(p: &EuclidParams) -> String {
    format!(
        "gamma'=({}) omega={} b={} k={}",
        join(p.gammas()),
        fmt_rational(p.omega()),
        fmt_rational(p.b()),
        p.k()
    )
}

fn join(v: &[Rational]) -> String {
    v.iter().map(fmt_rational).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn draws_reproducible_and_bounded() {
        let mut a = Draws::new(7, "x");
        let mut b = Draws::new(7, "x");
        let mut c = Draws::new(7, "y");
        let va: Vec<Rational> = (0..50).map(|_| a.rational()).collect();
        let vb: Vec<Rational> = (0..50).map(|_| b.rational()).collect();
        let vc: Vec<Rational> = (0..50).map(|_| c.rational()).collect();
        assert_eq!(va, vb);
        assert_ne!(va, vc);
        for r in va {
            assert!(r.numer().abs() <= BOUND.into() && r.denom() <= &BOUND.into());
            assert!(!r.denom().is_negative());
        }
    }
}
