use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Map, Value};

use qeslab::exactalg::{fmt_rational, parse_rational, Rational};
use qeslab::models::{build_es_sphere, build_euclid, build_qes_sphere, EuclidParams, EuclidStage, SphereParams};
use qeslab::repspace::{matrix_rep, spectrum, SpectralLine};
use qeslab::separation::{completeness, solve_chains, Completeness};
use qeslab::verify::contraction::default_epsilons;
use qeslab::verify::{
    contraction_report, has_inconclusive, run_suites, ContractionMap, ContractionReport, Suite,
    VerifyConfig,
};

use crate::config::{RunConfig, Space};
use crate::error::CliError;
use crate::output::{to_value, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Operator {
    Qes,
    Es,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MapChoice {
    Listed,
    Corrected,
    Both,
}

fn sphere_params(p: &SphereParams) -> Value {
    json!({
        "gamma": p.gammas().iter().map(fmt_rational).collect::<Vec<_>>(),
        "a": fmt_rational(p.a()),
    })
}

fn euclid_params(p: &EuclidParams) -> Value {
    json!({
        "gamma_prime": p.gammas().iter().map(fmt_rational).collect::<Vec<_>>(),
        "omega": fmt_rational(p.omega()),
        "b": fmt_rational(p.b()),
    })
}

#[derive(Serialize)]
struct SpectrumDoc {
    command: &'static str,
    space: &'static str,
    operator: Operator,
    n: usize,
    k: u32,
    params: Value,
    precision: u32,
    dimension: usize,
    lines: Vec<SpectralLine>,
}

pub fn spectrum_cmd(cfg: &RunConfig, op: Operator) -> Result<Report, CliError> {
    let (space, n, k, params, diffop) = match cfg.space {
        Space::Sphere => {
            let p = cfg.sphere()?;
            let d = match op {
                Operator::Qes => build_qes_sphere(&p)?,
                Operator::Es => build_es_sphere(&p),
            };
            ("sphere", p.n(), p.k(), sphere_params(&p), d)
        }
        Space::Euclid => {
            let p = cfg.euclid()?;
            let stage = match op {
                Operator::Qes => EuclidStage::HhatQes,
                Operator::Es => EuclidStage::HhatEs,
            };
            ("euclid", p.n(), p.k(), euclid_params(&p), build_euclid(&p, stage)?)
        }
    };
    let m = matrix_rep(&diffop, n, k)?;
    let lines = spectrum(&m, cfg.precision)?;
    let rows = lines.iter().map(to_value).collect::<Result<Vec<_>, _>>()?;
    let doc = SpectrumDoc {
        command: "spectrum",
        space,
        operator: op,
        n,
        k,
        params,
        precision: cfg.precision,
        dimension: m.dim(),
        lines,
    };
    Report::new(doc, rows)
}

pub fn verify_cmd(cfg: &RunConfig, suite: &str, draws: usize) -> Result<(Report, bool), CliError> {
    let suites = Suite::parse_selector(suite)?;
    let explicit = cfg.gamma.is_some() || cfg.a.is_some() || cfg.omega.is_some() || cfg.b.is_some();
    let (sphere, euclid) = match (explicit, cfg.space) {
        (false, _) => (None, None),
        (true, Space::Sphere) => (Some(cfg.sphere()?), None),
        (true, Space::Euclid) => (None, Some(cfg.euclid()?)),
    };
    let vc = VerifyConfig { seed: cfg.seed, n: cfg.n, k: cfg.k, draws, sphere, euclid };
    let items = run_suites(&suites, &vc);
    let rows = items.iter().map(to_value).collect::<Result<Vec<_>, _>>()?;
    let bad = has_inconclusive(&items);
    Ok((Report::new(&items, rows)?, bad))
}

#[derive(Serialize)]
struct SeparateDoc {
    command: &'static str,
    n: usize,
    k: u32,
    params: Value,
    precision: u32,
    chains: Vec<qeslab::separation::ChainRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    completeness: Option<Completeness>,
}

pub fn separate_cmd(cfg: &RunConfig, check_complete: bool) -> Result<Report, CliError> {
    let p = cfg.sphere()?;
    if p.n() < 2 {
        return Err(CliError::Config("separate needs n >= 2".into()));
    }
    let sols = solve_chains(&p, cfg.precision)?;
    let chains: Vec<_> = sols.iter().map(|s| s.record()).collect();
    let mut rows = Vec::new();
    for c in &chains {
        let head = json!({"q": c.q, "A": c.a, "c": c.c, "factor_degrees": c.factor_degrees});
        for line in &c.e {
            let mut row: Map<String, Value> = head.as_object().cloned().unwrap_or_default();
            if let Value::Object(l) = to_value(line)? {
                row.extend(l);
            }
            rows.push(Value::Object(row));
        }
    }
    let comp = if check_complete { Some(completeness(&p, &sols, cfg.precision)?) } else { None };
    let doc = SeparateDoc {
        command: "separate",
        n: p.n(),
        k: p.k(),
        params: sphere_params(&p),
        precision: cfg.precision,
        chains,
        completeness: comp,
    };
    Report::new(doc, rows)
}

#[derive(Serialize)]
struct ContractEntry {
    #[serde(flatten)]
    report: ContractionReport,
    converges: bool,
}

#[derive(Serialize)]
struct ContractDoc {
    command: &'static str,
    n: usize,
    k: u32,
    params: Value,
    reports: Vec<ContractEntry>,
}

pub fn parse_epsilons(s: &str) -> Result<Vec<Rational>, CliError> {
    let eps = s
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| parse_rational(t.trim()).map_err(|e| CliError::Config(format!("--eps: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    if eps.is_empty() {
        return Err(CliError::Config("--eps is empty".into()));
    }
    Ok(eps)
}

pub fn contract_cmd(cfg: &RunConfig, map: MapChoice, eps: Option<Vec<Rational>>) -> Result<Report, CliError> {
    let p = cfg.euclid()?;
    let eps = eps.unwrap_or_else(default_epsilons);
    let maps = match map {
        MapChoice::Listed => vec![ContractionMap::Listed],
        MapChoice::Corrected => vec![ContractionMap::Corrected],
        MapChoice::Both => vec![ContractionMap::Listed, ContractionMap::Corrected],
    };
    let mut reports = Vec::new();
    let mut rows = Vec::new();
    for m in maps {
        let r = contraction_report(&p, m, &eps)?;
        for (i, pr) in r.probes.iter().enumerate() {
            let mut row = to_value(pr)?;
            if let Value::Object(o) = &mut row {
                o.insert("map".into(), to_value(m)?);
                o.insert("order".into(), i.checked_sub(1).map(|j| json!(r.orders[j])).unwrap_or(Value::Null));
            }
            rows.push(row);
        }
        reports.push(ContractEntry { converges: r.converges(), report: r });
    }
    let doc = ContractDoc { command: "contract", n: p.n(), k: p.k(), params: euclid_params(&p), reports };
    Report::new(doc, rows)
}
