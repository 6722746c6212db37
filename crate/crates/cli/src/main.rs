use std::path::PathBuf;
use std::process::ExitCode;

use affine_dirac_cli::catalog;
use affine_dirac_cli::commands;
use affine_dirac_cli::config::{parse_q, SetupConfig};
use affine_dirac_cli::error::CliError;
use affine_dirac_cli::report::to_text;
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "affine-dirac", version, about = "Affine Dirac multiplets in exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Twisted affine root data of `(g, sigma)`.
    RootData(Common),
    /// Multiplet decomposition of the Dirac kernel.
    Decompose(Common),
    /// Graded character of the Clifford module.
    Clifford(Common),
    /// Runs every applicable identity check.
    Verify(Common),
    /// Asymptotic dimensions and the central-charge criterion.
    Asdim(Common),
    /// Lists the built-in catalog.
    Catalog,
}

#[derive(Args)]
struct Common {
    /// Setup file (TOML).
    #[arg(long, conflicts_with = "catalog", required_unless_present = "catalog")]
    config: Option<PathBuf>,
    /// Built-in setup name.
    #[arg(long)]
    catalog: Option<String>,
    /// Depth cutoff `d`, as `p/q`.
    #[arg(long)]
    cutoff: Option<String>,
    /// Maximal length of coset representatives.
    #[arg(long)]
    length_bound: Option<usize>,
    /// Report file; standard output when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

impl Common {
    fn load(&self) -> Result<SetupConfig, CliError> {
        let mut c = match (&self.config, &self.catalog) {
            (Some(p), _) => SetupConfig::load(p)?,
            (None, Some(n)) => catalog::get(n)?,
            (None, None) => unreachable!("clap requires one source"),
        };
        if let Some(d) = &self.cutoff {
            parse_q("--cutoff", d)?;
            c.cutoff = Some(d.clone());
        }
        if self.length_bound.is_some() {
            c.length_bound = self.length_bound;
        }
        if let Some(o) = &self.output {
            c.output = Some(o.display().to_string());
        }
        Ok(c)
    }
}

fn emit(text: &str, output: Option<&str>) -> Result<(), CliError> {
    match output {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let common = match &cli.command {
        Command::Catalog => {
            for (name, _) in catalog::ENTRIES {
                println!("{name}");
            }
            return Ok(true);
        }
        Command::RootData(c) | Command::Decompose(c) | Command::Clifford(c) | Command::Verify(c) | Command::Asdim(c) => c,
    };
    let b = common.load()?.build()?;
    let output = b.config.output.clone();
    let (text, passed) = match &cli.command {
        Command::RootData(_) => (to_text(&commands::root_data(&b)?), true),
        Command::Decompose(_) => (to_text(&commands::decompose(&b)?), true),
        Command::Clifford(_) => {
            let r = commands::clifford(&b)?;
            let ok = r.product_formula_agrees;
            (to_text(&r), ok)
        }
        Command::Verify(_) => {
            let r = commands::verify(&b)?;
            let ok = r.passed;
            (to_text(&r), ok)
        }
        Command::Asdim(_) => (to_text(&commands::asdim(&b)?), true),
        Command::Catalog => unreachable!(),
    };
    emit(&text, output.as_deref())?;
    Ok(passed)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
