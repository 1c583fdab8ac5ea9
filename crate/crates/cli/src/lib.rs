//! Command implementations behind the `misodof` binary. Each command writes
//! its report to the given sink and returns a process exit code.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use misodof::dof_lab::{
    check_grid, expected_rate_slope, fit_dof, parse_rational, region_check, verify_decodability,
    SLOPE_TOLERANCE,
};
use misodof::numerics::Mode;
use misodof::scheme_core::{counting_dof, LinearScheme};
use misodof::schemes::{registry, BuiltinScheme};
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] misodof::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("config: {0}")]
    Config(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Core(misodof::Error::Infeasible { .. }) => EXIT_FAIL,
            _ => EXIT_USAGE,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            _ => Err(CliError::Usage(format!("unknown format {s:?}"))),
        }
    }
}

fn default_grid() -> Vec<f64> {
    vec![1e4, 1e6, 1e8]
}

/// A pinned experiment, loadable from JSON with `--config`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub scheme: String,
    pub mode: Mode,
    pub trials: usize,
    #[serde(default)]
    pub seed0: u64,
    #[serde(default = "default_grid")]
    pub grid: Vec<f64>,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub format: OutputFormat,
}

impl RunConfig {
    /// Defaults for `verify`: exact mode, 100 trials.
    pub fn verify(scheme: &str) -> Self {
        Self {
            scheme: scheme.into(),
            mode: Mode::Exact,
            trials: 100,
            seed0: 0,
            grid: default_grid(),
            out: None,
            format: OutputFormat::Csv,
        }
    }

    /// Defaults for `sweep`: float mode, 50 trials.
    pub fn sweep(scheme: &str) -> Self {
        Self {
            mode: Mode::Float,
            trials: 50,
            ..Self::verify(scheme)
        }
    }

    pub fn from_json(s: &str) -> CliResult<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Resolves the scheme and checks the config against it.
    pub fn validate(&self, mode: Mode) -> CliResult<BuiltinScheme> {
        let scheme = BuiltinScheme::by_name(&self.scheme)
            .ok_or_else(|| CliError::Usage(format!("unknown scheme {:?}", self.scheme)))?;
        if self.mode != mode {
            return Err(CliError::Usage(format!(
                "this command runs in {mode} mode, config asks for {}",
                self.mode
            )));
        }
        if self.trials == 0 {
            return Err(CliError::Usage("trials must be at least 1".into()));
        }
        if mode == Mode::Float {
            check_grid(&self.grid)?;
        }
        Ok(scheme)
    }
}

/// One line per listed scheme: name, (M,K), CSIT, T, claimed sum DoF.
pub fn cmd_list_schemes(out: &mut dyn Write) -> CliResult<i32> {
    writeln!(out, "{:<20} {:<7} {:<5} {:>3}  {:<8} tuple", "name", "(M,K)", "CSIT", "T", "DoF")?;
    for s in registry() {
        let d = s.descriptor();
        writeln!(
            out,
            "{:<20} {:<7} {:<5} {:>3}  {:<8} {}",
            d.name,
            format!("({},{})", d.antennas, d.receivers),
            d.csit.to_string(),
            d.slots,
            d.claimed.sum(),
            d.claimed
        )?;
    }
    Ok(EXIT_PASS)
}

/// Exact verification campaign. Exit 0 iff every trial passes.
pub fn cmd_verify(cfg: &RunConfig, inject_degenerate: bool, out: &mut dyn Write) -> CliResult<i32> {
    let scheme = cfg.validate(Mode::Exact)?;
    let report = verify_decodability(&scheme, cfg.trials, cfg.seed0, inject_degenerate)?;
    let counted = counting_dof(&scheme);
    writeln!(
        out,
        "{}: {}/{} trials decode exactly their targets (seeds {}..{}), counting DoF {} = {}",
        report.scheme,
        report.passed,
        report.trials,
        cfg.seed0,
        cfg.seed0 + cfg.trials as u64,
        counted,
        counted.sum()
    )?;
    if let Some(f) = report.first_failure() {
        let who = f
            .receiver
            .map(|k| format!("receiver {}", k + 1))
            .unwrap_or_else(|| "run".into());
        writeln!(out, "first failure: seed {}, {who}: {}", f.seed, f.message)?;
        if !f.missing.is_empty() {
            writeln!(out, "  missing: {}", f.missing.join(" "))?;
        }
        if !f.extra.is_empty() {
            writeln!(out, "  undeclared: {}", f.extra.join(" "))?;
        }
    }
    if let Some(path) = &cfg.out {
        fs::write(path, serde_json::to_string_pretty(&report)?)?;
    }
    Ok(if report.all_passed() { EXIT_PASS } else { EXIT_FAIL })
}

/// Float sweep and slope fit. The table goes to `--out` or `out`; the
/// verdict line goes to `diag`. Exit 0 iff the slope is within tolerance of
/// the expected stream count per slot.
pub fn cmd_sweep(cfg: &RunConfig, out: &mut dyn Write, diag: &mut dyn Write) -> CliResult<i32> {
    let scheme = cfg.validate(Mode::Float)?;
    let result = fit_dof(&scheme, &cfg.grid, cfg.trials, cfg.seed0)?;
    let body = match cfg.format {
        OutputFormat::Csv => result.to_csv()?,
        OutputFormat::Json => result.to_json()? + "\n",
    };
    match &cfg.out {
        Some(path) => fs::write(path, &body)?,
        None => out.write_all(body.as_bytes())?,
    }
    let target = expected_rate_slope(&scheme);
    let target_f = *target.numer() as f64 / *target.denom() as f64;
    let ok = (result.slope - target_f).abs() <= SLOPE_TOLERANCE;
    let mut summary = String::new();
    write!(
        summary,
        "slope {:.4} vs {} ({} trials used",
        result.slope,
        target,
        result.used_trials()
    )
    .expect("string write");
    if !result.excluded_seeds.is_empty() {
        write!(summary, ", excluded seeds {:?}", result.excluded_seeds).expect("string write");
    }
    summary.push(')');
    writeln!(diag, "{summary}: {}", if ok { "pass" } else { "FAIL" })?;
    Ok(if ok { EXIT_PASS } else { EXIT_FAIL })
}

/// Order-2 region membership. Exit 0 iff inside.
pub fn cmd_region(d12: &str, d23: &str, d13: &str, out: &mut dyn Write) -> CliResult<i32> {
    let parse = |s: &str| -> CliResult<Rational64> {
        parse_rational(s).map_err(|e| CliError::Usage(e.to_string()))
    };
    let report = region_check(parse(d12)?, parse(d23)?, parse(d13)?)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    for i in &report.inequalities {
        let state = match (i.holds, i.tight) {
            (true, true) => "tight",
            (true, false) => "slack",
            (false, _) => "violated",
        };
        writeln!(out, "{:<26} {} <= {}  {state}", i.label, i.lhs, i.rhs)?;
    }
    writeln!(out, "{}", if report.inside { "inside" } else { "outside" })?;
    Ok(if report.inside { EXIT_PASS } else { EXIT_FAIL })
}
