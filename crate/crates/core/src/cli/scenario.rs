use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expansion::InitialCondition;
use crate::model::{presets, PiecewiseWavenumber, SolverConfig};

/// How the field at `r_f` is produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Truncated eigenfunction expansion.
    #[default]
    Eigexp,
    /// Dense spectral propagator of the `N`-point difference matrix.
    SchurRef,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Eigexp => "eigexp",
            Method::SchurRef => "schur_ref",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "eigexp" => Ok(Method::Eigexp),
            "schur_ref" | "schur" => Ok(Method::SchurRef),
            _ => Err(Error::Config(format!("unknown method '{s}' (expected eigexp or schur_ref)"))),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T> OneOrMany<T> {
    fn into_vec(self) -> Vec<T> {
        match self {
            OneOrMany::One(v) => vec![v],
            OneOrMany::Many(v) => v,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct IcSection {
    kind: String,
    #[serde(default)]
    params: Vec<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ReferenceSection {
    n_ref: Option<usize>,
    cache_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    preset: Option<String>,
    alphas: Option<Vec<f64>>,
    rhos: Option<Vec<f64>>,
    ic: Option<IcSection>,
    r_f: Option<OneOrMany<f64>>,
    #[serde(rename = "N")]
    n: Option<OneOrMany<usize>>,
    method: Option<Method>,
    terms: Option<usize>,
    out: Option<PathBuf>,
    #[serde(default)]
    solver: SolverConfig,
    #[serde(default)]
    reference: ReferenceSection,
}

/// Values given on the command line; each one replaces the file value.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub preset: Option<String>,
    pub alphas: Option<Vec<f64>>,
    pub rhos: Option<Vec<f64>>,
    pub ic: Option<String>,
    pub r_f: Option<Vec<f64>>,
    pub n: Option<Vec<usize>>,
    pub method: Option<Method>,
    pub terms: Option<usize>,
    pub out: Option<PathBuf>,
    pub n_ref: Option<usize>,
    pub cache_dir: Option<PathBuf>,
}

/// One fully resolved run.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub pw: PiecewiseWavenumber,
    pub ic: InitialCondition,
    pub r_f: f64,
    pub n: usize,
    pub method: Method,
    pub cfg: SolverConfig,
    /// Fixed number of expansion terms (or spectrum size); `None` lets the
    /// truncation policy decide.
    pub terms: Option<usize>,
    /// Fine grid for `error_vs_reference`; `None` skips the comparison.
    pub n_ref: Option<usize>,
    pub cache_dir: Option<PathBuf>,
    pub out_dir: PathBuf,
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        self.pw.validate()?;
        self.ic.validate()?;
        self.cfg.validate()?;
        if !(self.r_f >= 0.0 && self.r_f.is_finite()) {
            return Err(Error::Config(format!("r_f must be finite and non-negative, got {}", self.r_f)));
        }
        if self.n < 3 {
            return Err(Error::Config(format!("N must be at least 3, got {}", self.n)));
        }
        if self.terms == Some(0) {
            return Err(Error::Config("terms must be at least 1".into()));
        }
        Ok(())
    }
}

/// Scenarios sharing geometry and initial condition, one per `(r_f, N)`,
/// ordered by `r_f` then `N`.
#[derive(Debug, Clone)]
pub struct ScenarioSet {
    pub scenarios: Vec<Scenario>,
}

impl ScenarioSet {
    /// Reads an optional scenario file and applies the overrides.
    pub fn load(config: Option<&Path>, overrides: &Overrides) -> Result<Self> {
        let file = match config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
                parse_file(&text)?
            }
            None => ScenarioFile::default(),
        };
        resolve(file, overrides)
    }

    /// Parses scenario text directly.
    pub fn from_toml(text: &str, overrides: &Overrides) -> Result<Self> {
        resolve(parse_file(text)?, overrides)
    }

    /// The single scenario of a one-point set.
    pub fn single(&self) -> Result<&Scenario> {
        match self.scenarios.as_slice() {
            [s] => Ok(s),
            _ => Err(Error::Config(format!(
                "this command takes one r_f and one N, got {} combinations",
                self.scenarios.len()
            ))),
        }
    }
}

fn parse_file(text: &str) -> Result<ScenarioFile> {
    toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
}

fn ic_from_section(sec: &IcSection) -> Result<InitialCondition> {
    let p = &sec.params;
    match sec.kind.as_str() {
        "sine" | "sin" => match p.as_slice() {
            [j] if *j >= 1.0 && j.fract() == 0.0 => InitialCondition::sine(*j as usize),
            _ => Err(Error::Config("ic.kind = \"sine\" needs params = [J] with integer J >= 1".into())),
        },
        "char" | "characteristic" => match p.as_slice() {
            [] => Ok(InitialCondition::default_characteristic()),
            [a, b] => InitialCondition::characteristic(*a, *b),
            _ => Err(Error::Config("ic.kind = \"char\" needs params = [a, b]".into())),
        },
        other => Err(Error::Config(format!("unknown ic.kind '{other}'"))),
    }
}

fn resolve(file: ScenarioFile, o: &Overrides) -> Result<ScenarioSet> {
    let preset = o.preset.clone().or(file.preset);
    let alphas = o.alphas.clone().or(file.alphas);
    let rhos = o.rhos.clone().or(file.rhos);
    let pw = match (alphas, preset) {
        (Some(a), _) => PiecewiseWavenumber::new(a, rhos.unwrap_or_default())?,
        (None, Some(name)) => {
            let base = presets::by_name(&name).ok_or_else(|| Error::Config(format!("unknown preset '{name}'")))?;
            match rhos {
                Some(r) => PiecewiseWavenumber::new(base.alphas().to_vec(), r)?,
                None => base,
            }
        }
        (None, None) => return Err(Error::Config("no wavenumber given: set alphas (and rhos) or a preset".into())),
    };

    let ic = match (&o.ic, &file.ic) {
        (Some(s), _) => InitialCondition::parse(s)?,
        (None, Some(sec)) => ic_from_section(sec)?,
        (None, None) => InitialCondition::Characteristic { a: PI / 4.0, b: PI / 2.0 },
    };

    let mut r_fs = o.r_f.clone().or(file.r_f.map(OneOrMany::into_vec)).unwrap_or_else(|| vec![1.0]);
    let mut ns = o.n.clone().or(file.n.map(OneOrMany::into_vec)).unwrap_or_else(|| vec![127]);
    if r_fs.is_empty() || ns.is_empty() {
        return Err(Error::Config("r_f and N lists must not be empty".into()));
    }
    r_fs.sort_by(f64::total_cmp);
    r_fs.dedup();
    ns.sort_unstable();
    ns.dedup();

    let method = o.method.or(file.method).unwrap_or_default();
    let terms = o.terms.or(file.terms);
    let n_ref = o.n_ref.or(file.reference.n_ref);
    let cache_dir = o.cache_dir.clone().or(file.reference.cache_dir);
    let out_dir = o.out.clone().or(file.out).unwrap_or_else(|| PathBuf::from("."));

    let mut scenarios = Vec::with_capacity(r_fs.len() * ns.len());
    for &r_f in &r_fs {
        for &n in &ns {
            let s = Scenario {
                pw: pw.clone(),
                ic: ic.clone(),
                r_f,
                n,
                method,
                cfg: file.solver.clone(),
                terms,
                n_ref,
                cache_dir: cache_dir.clone(),
                out_dir: out_dir.clone(),
            };
            s.validate()?;
            scenarios.push(s);
        }
    }
    Ok(ScenarioSet { scenarios })
}
