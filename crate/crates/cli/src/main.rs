use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use misodof::dof_lab::parse_grid;
use misodof_cli::{
    cmd_list_schemes, cmd_region, cmd_sweep, cmd_verify, CliError, CliResult, OutputFormat,
    RunConfig,
};

#[derive(Parser)]
#[command(name = "misodof", version, about = "DoF laboratory for MISO broadcast schemes with hybrid CSIT")]
struct Cli {
    /// JSON RunConfig; command-line flags override its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the shipped schemes.
    ListSchemes,
    /// Exact decodability, oracle agreement and CSIT audit over many draws.
    Verify {
        scheme: Option<String>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Give receiver 2 receiver 1's slot-0 channel on the first trial.
        #[arg(long)]
        inject_degenerate: bool,
        /// Also write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Zero-forcing rate sweep and DoF slope fit.
    Sweep {
        scheme: Option<String>,
        #[arg(long)]
        grid: Option<String>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        format: Option<String>,
    },
    /// Order-2 region membership of (d12, d23, d13).
    Region { d12: String, d23: String, d13: String },
}

fn base_config(
    config: Option<&PathBuf>,
    scheme: Option<String>,
    fresh: fn(&str) -> RunConfig,
) -> CliResult<RunConfig> {
    let mut cfg = match config {
        Some(path) => RunConfig::load(path)?,
        None => fresh(scheme.as_deref().ok_or_else(|| {
            CliError::Usage("missing <scheme> (or --config)".into())
        })?),
    };
    if let Some(s) = scheme {
        cfg.scheme = s;
    }
    Ok(cfg)
}

fn run(cli: Cli) -> CliResult<i32> {
    let mut stdout = io::stdout().lock();
    match cli.command {
        Command::ListSchemes => cmd_list_schemes(&mut stdout),
        Command::Verify {
            scheme,
            trials,
            seed,
            inject_degenerate,
            out,
        } => {
            let mut cfg = base_config(cli.config.as_ref(), scheme, RunConfig::verify)?;
            cfg.trials = trials.unwrap_or(cfg.trials);
            cfg.seed0 = seed.unwrap_or(cfg.seed0);
            cfg.out = out.or(cfg.out);
            cmd_verify(&cfg, inject_degenerate, &mut stdout)
        }
        Command::Sweep {
            scheme,
            grid,
            trials,
            seed,
            out,
            format,
        } => {
            let mut cfg = base_config(cli.config.as_ref(), scheme, RunConfig::sweep)?;
            if let Some(g) = grid {
                cfg.grid = parse_grid(&g).map_err(|e| CliError::Usage(e.to_string()))?;
            }
            cfg.trials = trials.unwrap_or(cfg.trials);
            cfg.seed0 = seed.unwrap_or(cfg.seed0);
            cfg.out = out.or(cfg.out);
            if let Some(f) = format {
                cfg.format = f.parse::<OutputFormat>()?;
            }
            cmd_sweep(&cfg, &mut stdout, &mut io::stderr())
        }
        Command::Region { d12, d23, d13 } => cmd_region(&d12, &d23, &d13, &mut stdout),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("misodof: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
