//! Thin command-line front end; all logic lives in the library.
//!
//! Exit codes: 0 = all checks pass, 1 = numeric failure, 2 = config error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use gkcs::cli;
use gkcs::report::{Report, RunConfig, SpectrumConfig};
use gkcs::Error;

#[derive(Parser)]
#[command(
    name = "gkcs",
    version,
    about = "Coherent states from discrete spectra: construction and verification"
)]
struct Cli {
    /// JSON config file; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Print the full JSON report instead of the table.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Default)]
struct CommonFlags {
    /// Model tag: gk-linear | example1 | example2 | example3 |
    /// boson-two-fermion | two-fermion-hermitian.
    #[arg(long)]
    model: Option<String>,
    /// Spectrum tag (`linear`) when no model is given.
    #[arg(long)]
    spectrum: Option<String>,
    #[arg(long)]
    j: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long)]
    j2: Option<f64>,
    #[arg(long)]
    gamma2: Option<f64>,
    #[arg(long)]
    branch: Option<usize>,
    #[arg(long)]
    component: Option<usize>,
    #[arg(long)]
    z_re: Option<f64>,
    #[arg(long)]
    z_im: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    t: Option<f64>,
    #[arg(long)]
    truncation: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    quad_nodes: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory (default: $GKCS_OUT_DIR or `.`).
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

impl CommonFlags {
    fn into_config(self) -> RunConfig {
        RunConfig {
            model: self.model,
            spectrum: self.spectrum.map(SpectrumConfig::Tag),
            degeneracy: None,
            family: None,
            suite: None,
            j: self.j,
            gamma: self.gamma,
            theta: self.theta,
            j2: self.j2,
            gamma2: self.gamma2,
            branch: self.branch,
            component: self.component,
            z_re: self.z_re,
            z_im: self.z_im,
            beta: self.beta,
            t: self.t,
            truncation: self.truncation,
            tol: self.tol,
            quad_nodes: self.quad_nodes,
            n_max: self.n_max,
            seed: self.seed,
            out_dir: self.out_dir,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Construct a coherent state; writes ket JSON and a CSV profile.
    State {
        /// gk | gk-eta | degenerate | branch | vcs1 | vcs2 | bcs.
        #[arg(long)]
        family: Option<String>,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Run a verification suite; exit code 0 iff all checks pass.
    Verify {
        /// resolution | moments | temporal | action | kernel | all.
        #[arg(long)]
        suite: Option<String>,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Modular/KMS suite on the truncated double Fock space.
    Landau {
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Emit and verify the radial measure of a model.
    Measure {
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Emit the JSON model card.
    ModelCard {
        #[command(flatten)]
        common: CommonFlags,
    },
}

fn run(cli_args: Cli) -> Result<(Report, bool), Error> {
    let file_cfg = match &cli_args.config {
        Some(path) => RunConfig::from_json_file(path)?,
        None => RunConfig::default(),
    };
    let report = match cli_args.command {
        Command::State { family, common } => {
            let mut flags = common.into_config();
            flags.family = family;
            let cfg = file_cfg.merged_with(flags);
            cli::cmd_state(&cfg)?.0
        }
        Command::Verify { suite, common } => {
            let mut flags = common.into_config();
            flags.suite = suite;
            let cfg = file_cfg.merged_with(flags);
            cli::cmd_verify(&cfg)?
        }
        Command::Landau { common } => {
            let cfg = file_cfg.merged_with(common.into_config());
            cli::cmd_landau(&cfg)?
        }
        Command::Measure { common } => {
            let cfg = file_cfg.merged_with(common.into_config());
            cli::cmd_measure(&cfg)?
        }
        Command::ModelCard { common } => {
            let cfg = file_cfg.merged_with(common.into_config());
            cli::cmd_model_card(&cfg)?
        }
    };
    let pass = report.all_pass();
    if cli_args.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        print!("{}", report.render_table());
    }
    Ok((report, pass))
}

fn main() -> ExitCode {
    let cli_args = Cli::parse();
    match run(cli_args) {
        Ok((_, true)) => ExitCode::from(0),
        Ok((_, false)) => ExitCode::from(1),
        Err(Error::ConfigInvalid(msg)) => {
            eprintln!("config error: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
