//! Conformance suite: every claimed identity checked exactly over seeded
//! rational draws, reported as pass or deviation.

pub mod algebra;
pub mod closed;
pub mod contraction;
pub mod fit;
pub mod gauge;
pub mod geometry;
pub mod integrals;
pub mod item;
pub mod radial;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::models::{EuclidParams, SphereParams};

pub use contraction::{check_contraction, contraction_report, ContractionMap, ContractionReport};
pub use fit::fit_combination;
pub use item::{ConformanceItem, Draws, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Integrals,
    Algebra,
    Gauge,
    Radial,
    Contraction,
    ClosedForms,
    Geometry,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Integrals,
        Suite::Algebra,
        Suite::Gauge,
        Suite::Radial,
        Suite::Contraction,
        Suite::ClosedForms,
        Suite::Geometry,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Integrals => "integrals",
            Suite::Algebra => "algebra",
            Suite::Gauge => "gauge",
            Suite::Radial => "radial",
            Suite::Contraction => "contraction",
            Suite::ClosedForms => "closedforms",
            Suite::Geometry => "geometry",
        }
    }

    /// One suite by name, or all of them for `"all"`.
    pub fn parse_selector(s: &str) -> Result<Vec<Suite>> {
        if s == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        Suite::ALL
            .iter()
            .find(|x| x.name() == s)
            .map(|x| vec![*x])
            .ok_or_else(|| Error::Parse(format!("unknown suite '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Restricts every suite to this `n`.
    pub n: Option<usize>,
    /// Restricts the `k`-dependent suites to this `k`.
    pub k: Option<u32>,
    /// Random draws per check.
    pub draws: usize,
    /// Explicit sphere parameters for the closed-form suite.
    pub sphere: Option<SphereParams>,
    /// Explicit Euclidean parameters for the contraction suite.
    pub euclid: Option<EuclidParams>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: 0, n: None, k: None, draws: 5, sphere: None, euclid: None }
    }
}

impl VerifyConfig {
    fn ns(&self, default: &[usize]) -> Vec<usize> {
        match self.n {
            Some(n) => default.contains(&n).then_some(vec![n]).unwrap_or_default(),
            None => default.to_vec(),
        }
    }

    fn ks(&self, default: &[u32]) -> Vec<u32> {
        match self.k {
            Some(k) => default.contains(&k).then_some(vec![k]).unwrap_or_default(),
            None => default.to_vec(),
        }
    }
}

type Job = Box<dyn Fn() -> Vec<ConformanceItem> + Send + Sync>;

fn jobs(suite: Suite, cfg: &VerifyConfig) -> Vec<Job> {
    let (seed, draws) = (cfg.seed, cfg.draws);
    let mut out: Vec<Job> = Vec::new();
    match suite {
        Suite::Integrals => {
            for n in cfg.ns(&[2, 3, 4]) {
                out.push(Box::new(move || integrals::check_integrals(n, draws, seed)));
            }
        }
        Suite::Algebra => {
            if !cfg.ns(&[3]).is_empty() {
                out.push(Box::new(move || algebra::check_quadratic_algebra(draws, seed)));
            }
        }
        Suite::Gauge => {
            for n in cfg.ns(&[1, 2, 3]) {
                out.push(Box::new(move || gauge::check_gauge(n, draws, seed)));
            }
        }
        Suite::Radial => {
            for n in cfg.ns(&[2, 3]) {
                out.push(Box::new(move || radial::check_radial_splits(n, draws, seed)));
            }
        }
        Suite::Contraction => {
            let eps = contraction::default_epsilons();
            if let Some(p) = cfg.euclid.clone() {
                for map in [ContractionMap::Listed, ContractionMap::Corrected] {
                    let (p, eps) = (p.clone(), eps.clone());
                    out.push(Box::new(move || vec![check_contraction(&p, map, &eps, seed)]));
                }
                return out;
            }
            for n in cfg.ns(&[2, 3]) {
                for k in cfg.ks(&[1, 2]) {
                    let mut rng = Draws::new(seed, &format!("contraction.n{n}.k{k}"));
                    let p = rng.euclid(n, k);
                    for map in [ContractionMap::Listed, ContractionMap::Corrected] {
                        let (p, eps) = (p.clone(), eps.clone());
                        out.push(Box::new(move || vec![check_contraction(&p, map, &eps, seed)]));
                    }
                }
            }
        }
        Suite::ClosedForms => {
            if let Some(p) = cfg.sphere.clone() {
                out.push(Box::new(move || closed::check_closed_forms(std::slice::from_ref(&p), seed)));
                return out;
            }
            for n in cfg.ns(&[1, 2, 3]) {
                for k in cfg.ks(&[0, 1, 2]) {
                    out.push(Box::new(move || {
                        closed::check_closed_forms(&closed::closed_form_params(n, k, draws, seed), seed)
                    }));
                }
            }
        }
        Suite::Geometry => {
            for n in cfg.ns(&[1, 2, 3, 4]) {
                out.push(Box::new(move || geometry::check_geometry(n, seed)));
            }
        }
    }
    out
}

/// Runs the selected suites in parallel; items come back in a fixed order
/// (suite, then job, then check) whatever the scheduling.
pub fn run_suites(suites: &[Suite], cfg: &VerifyConfig) -> Vec<ConformanceItem> {
    let all: Vec<Job> = suites.iter().flat_map(|s| jobs(*s, cfg)).collect();
    all.par_iter().map(|j| j()).collect::<Vec<_>>().into_iter().flatten().collect()
}

pub fn has_inconclusive(items: &[ConformanceItem]) -> bool {
    items.iter().any(|i| i.status == Status::Inconclusive)
}
