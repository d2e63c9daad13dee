//! Input/output plumbing: run configuration shared by every subcommand,
//! key=value config files, spectrum loading, and format-aware emission.

use anyhow::{anyhow, bail, Context, Result};
use hesslab::hessian::{HessianType, WeakHessian};
use hesslab::projection::QuadratureConfig;
use serde::Serialize;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Table,
    Json,
    Csv,
}

impl std::str::FromStr for OutputFormat {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(OutputFormat::Table),
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(anyhow!("unknown format {other:?}; expected table, json or csv")),
        }
    }
}

/// Resolved run configuration: flags override config-file entries, which
/// override the defaults.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub n: u64,
    pub seed: u64,
    pub tol: f64,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    pub quad: QuadratureConfig,
}

impl RunConfig {
    pub fn resolve(
        n: Option<u64>,
        seed: Option<u64>,
        tol: Option<f64>,
        format: Option<OutputFormat>,
        out: Option<PathBuf>,
        config_path: Option<&Path>,
    ) -> Result<RunConfig> {
        let file = match config_path {
            Some(path) => parse_config_file(path)?,
            None => ConfigFile::default(),
        };
        let defaults = QuadratureConfig::default();
        let quad = QuadratureConfig {
            panels_per_segment: file.quad_panels.unwrap_or(defaults.panels_per_segment),
            nodes_per_panel: file.quad_nodes.unwrap_or(defaults.nodes_per_panel),
            tol: file.quad_tol.unwrap_or(defaults.tol),
            max_subdivisions: file.quad_subdivisions.unwrap_or(defaults.max_subdivisions),
        };
        quad.validate().map_err(|e| anyhow!("config quadrature settings: {e}"))?;
        Ok(RunConfig {
            n: n.or(file.n).unwrap_or(64),
            seed: seed.or(file.seed).unwrap_or(0x4845_5353),
            tol: tol.or(file.tol).unwrap_or(1e-7),
            format: format.or(file.format).unwrap_or(OutputFormat::Table),
            out: out.or(file.out),
            quad,
        })
    }
}

#[derive(Debug, Default)]
struct ConfigFile {
    n: Option<u64>,
    seed: Option<u64>,
    tol: Option<f64>,
    format: Option<OutputFormat>,
    out: Option<PathBuf>,
    quad_panels: Option<usize>,
    quad_nodes: Option<usize>,
    quad_tol: Option<f64>,
    quad_subdivisions: Option<usize>,
}

/// TOML-style `key = value` lines; `#` starts a comment.
fn parse_config_file(path: &Path) -> Result<ConfigFile> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read config file {}", path.display()))?;
    let mut cfg = ConfigFile::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("config line {} is not key = value: {raw:?}", lineno + 1))?;
        let (key, value) = (key.trim(), value.trim().trim_matches('"'));
        match key {
            "n" => cfg.n = Some(value.parse().context("config key n")?),
            "seed" => cfg.seed = Some(value.parse().context("config key seed")?),
            "tol" => cfg.tol = Some(value.parse().context("config key tol")?),
            "format" => cfg.format = Some(value.parse()?),
            "out" => cfg.out = Some(PathBuf::from(value)),
            "quad_panels" => cfg.quad_panels = Some(value.parse().context("config key quad_panels")?),
            "quad_nodes" => cfg.quad_nodes = Some(value.parse().context("config key quad_nodes")?),
            "quad_tol" => cfg.quad_tol = Some(value.parse().context("config key quad_tol")?),
            "quad_subdivisions" => {
                cfg.quad_subdivisions = Some(value.parse().context("config key quad_subdivisions")?)
            }
            other => bail!("unknown config key {other:?} on line {}", lineno + 1),
        }
    }
    Ok(cfg)
}

/// Spectrum argument: inline JSON, or `@path` to read a file.
pub fn load_spectrum(arg: &str, declared: HessianType) -> Result<WeakHessian> {
    let text = if let Some(path) = arg.strip_prefix('@') {
        fs::read_to_string(path).with_context(|| format!("cannot read spectrum file {path}"))?
    } else {
        arg.to_string()
    };
    let value: serde_json::Value =
        serde_json::from_str(&text).context("spectrum must be JSON like {\"neg\": [...], \"pos\": [...], \"h\": \"pow:1\"}")?;
    Ok(WeakHessian::from_json(&value, declared)?)
}

/// Parse a growth spec, printing caret diagnostics on failure.
pub fn parse_spec_or_diagnose(spec: &str) -> Result<hesslab::GrowthFunction> {
    hesslab::growth::parse_growth_spec(spec).map_err(|err| {
        let pos = err.position();
        anyhow!("invalid growth spec: {err}\n  {spec}\n  {}^", " ".repeat(pos))
    })
}

/// Simple positive-sequence mini-spec for the Schur subcommands:
/// `lin` (a_ν = ν) or `const:<value>`.
pub fn parse_sequence(spec: &str) -> Result<hesslab::schur::Sequence> {
    if spec == "lin" {
        return Ok(hesslab::schur::Sequence::linear());
    }
    if let Some(v) = spec.strip_prefix("const:") {
        let c: f64 = v.parse().context("const sequence value")?;
        #[allow(clippy::neg_cmp_op_on_partial_ord)] // also rejects NaN
        if !(c > 0.0) {
            bail!("sequence values must be positive, got {c}");
        }
        return Ok(hesslab::schur::Sequence::constant(c));
    }
    bail!("unknown sequence {spec:?}; expected lin or const:<value>")
}

/// One emitted artifact: the selected format picks which body to write.
pub struct Rendered {
    pub table: String,
    pub json: serde_json::Value,
    /// CSV body, when the payload has a natural tabular form.
    pub csv: Option<String>,
}

impl Rendered {
    pub fn from_serializable<T: Serialize>(value: &T, table: String, csv: Option<String>) -> Result<Self> {
        Ok(Rendered { table, json: serde_json::to_value(value)?, csv })
    }
}

pub fn emit(cfg: &RunConfig, rendered: &Rendered) -> Result<()> {
    let body = match cfg.format {
        OutputFormat::Table => rendered.table.clone(),
        OutputFormat::Json => format!("{}\n", serde_json::to_string_pretty(&rendered.json)?),
        OutputFormat::Csv => match &rendered.csv {
            Some(csv) => csv.clone(),
            None => bail!("this subcommand has no CSV form; use --format table or json"),
        },
    };
    match &cfg.out {
        Some(path) => {
            let mut file = fs::File::create(path)
                .with_context(|| format!("cannot create {}", path.display()))?;
            file.write_all(body.as_bytes())?;
        }
        None => {
            print!("{body}");
            std::io::stdout().flush()?;
        }
    }
    Ok(())
}

/// Render a float for tables: full precision, stable across runs.
pub fn fnum(x: f64) -> String {
    if x == 0.0 || (1e-4..1e6).contains(&x.abs()) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}
