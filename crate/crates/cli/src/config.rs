use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::Deserialize;

use qeslab::exactalg::{parse_rational, Rational};
use qeslab::models::{EuclidParams, SphereParams};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    Sphere,
    Euclid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Flags shared by every subcommand; each overrides the config file.
#[derive(Args, Debug, Default, Clone)]
pub struct CommonArgs {
    /// TOML file with any of the flag names as keys
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub space: Option<Space>,
    #[arg(long, global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true)]
    pub k: Option<u32>,
    /// Comma-separated rationals: γ_1..γ_{n+1} (sphere) or γ'_1..γ'_n (euclid)
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub omega: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub b: Option<String>,
    /// Bits of root-isolation precision
    #[arg(long, global = true)]
    pub precision: Option<u32>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub format: Option<Format>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    space: Option<Space>,
    n: Option<usize>,
    k: Option<u32>,
    gamma: Option<GammaList>,
    a: Option<String>,
    omega: Option<String>,
    b: Option<String>,
    precision: Option<u32>,
    seed: Option<u64>,
    format: Option<Format>,
    out: Option<PathBuf>,
}

#[derive(Deserialize, Debug)]
#[serde(untagged)]
enum GammaList {
    Joined(String),
    List(Vec<String>),
}

impl GammaList {
    fn joined(self) -> String {
        match self {
            GammaList::Joined(s) => s,
            GammaList::List(v) => v.join(","),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub space: Space,
    /// Explicitly requested `n`, if any.
    pub n: Option<usize>,
    pub k: Option<u32>,
    pub gamma: Option<Vec<Rational>>,
    pub a: Option<Rational>,
    pub omega: Option<Rational>,
    pub b: Option<Rational>,
    pub precision: u32,
    pub seed: u64,
    pub format: Format,
    pub out: Option<PathBuf>,
}

fn rational(name: &str, s: &str) -> Result<Rational, CliError> {
    parse_rational(s.trim()).map_err(|e| CliError::Config(format!("--{name}: {e}")))
}

fn rationals(s: &str) -> Result<Vec<Rational>, CliError> {
    s.split(',').filter(|t| !t.trim().is_empty()).map(|t| rational("gamma", t)).collect()
}

fn read_file(path: &Path) -> Result<FileConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

impl RunConfig {
    pub fn resolve(args: &CommonArgs) -> Result<Self, CliError> {
        let file = match &args.config {
            Some(p) => read_file(p)?,
            None => FileConfig::default(),
        };
        let gamma = args.gamma.clone().or(file.gamma.map(GammaList::joined));
        let opt = |flag: &Option<String>, file: Option<String>, name: &str| -> Result<Option<Rational>, CliError> {
            flag.clone().or(file).map(|s| rational(name, &s)).transpose()
        };
        let precision = args.precision.or(file.precision).unwrap_or(64);
        if !(8..=4096).contains(&precision) {
            return Err(CliError::Config(format!("--precision must be in 8..=4096, got {precision}")));
        }
        Ok(RunConfig {
            space: args.space.or(file.space).unwrap_or(Space::Sphere),
            n: args.n.or(file.n),
            k: args.k.or(file.k),
            gamma: gamma.map(|g| rationals(&g)).transpose()?,
            a: opt(&args.a, file.a, "a")?,
            omega: opt(&args.omega, file.omega, "omega")?,
            b: opt(&args.b, file.b, "b")?,
            precision,
            seed: args.seed.or(file.seed).unwrap_or(0),
            format: args.format.or(file.format).unwrap_or(Format::Json),
            out: args.out.clone().or(file.out),
        })
    }

    /// `n` from the flag, else from the γ count.
    pub fn dimension(&self) -> Result<usize, CliError> {
        let from_gamma = self.gamma.as_ref().map(|g| match self.space {
            Space::Sphere => g.len().saturating_sub(1),
            Space::Euclid => g.len(),
        });
        let n = match (self.n, from_gamma) {
            (Some(n), Some(m)) if n != m => {
                let want = if self.space == Space::Sphere { n + 1 } else { n };
                return Err(CliError::Config(format!("--gamma has the wrong length for n = {n}: expected {want} values")));
            }
            (Some(n), _) => n,
            (None, Some(m)) => m,
            (None, None) => return Err(CliError::Config("need --n or --gamma".into())),
        };
        if n == 0 {
            return Err(CliError::Config("n must be at least 1".into()));
        }
        Ok(n)
    }

    pub fn k_or_default(&self) -> u32 {
        self.k.unwrap_or(1)
    }

    pub fn sphere(&self) -> Result<SphereParams, CliError> {
        if self.space != Space::Sphere {
            return Err(CliError::Config("sphere parameters requested with --space euclid".into()));
        }
        if self.omega.is_some() || self.b.is_some() {
            return Err(CliError::Config("--omega and --b belong to --space euclid".into()));
        }
        let n = self.dimension()?;
        let zero = Rational::from_integer(0.into());
        let gamma = self.gamma.clone().unwrap_or_else(|| vec![zero.clone(); n + 1]);
        SphereParams::new(gamma, self.a.clone().unwrap_or(zero), self.k_or_default())
            .map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn euclid(&self) -> Result<EuclidParams, CliError> {
        if self.space != Space::Euclid {
            return Err(CliError::Config("Euclidean parameters need --space euclid".into()));
        }
        if self.a.is_some() {
            return Err(CliError::Config("--a belongs to --space sphere".into()));
        }
        let n = self.dimension()?;
        let zero = Rational::from_integer(0.into());
        let gamma = self.gamma.clone().unwrap_or_else(|| vec![zero.clone(); n]);
        let omega = self.omega.clone().unwrap_or_else(|| Rational::from_integer(1.into()));
        EuclidParams::new(gamma, omega, self.b.clone().unwrap_or(zero), self.k_or_default())
            .map_err(|e| CliError::Config(e.to_string()))
    }
}
