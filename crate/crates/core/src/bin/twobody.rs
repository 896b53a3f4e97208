use clap::{Args, Parser, Subcommand};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use twobody::audit::Rectangle;
use twobody::commands::{self, RunOutput, SweepParam};
use twobody::scenario::{split_assignment, Scenario};
use twobody::{presets, Error, Result};

#[derive(Parser)]
#[command(name = "twobody", version, about = "Two-body quantum reflection snapshots, sweeps and checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Scenario file (TOML).
    scenario: PathBuf,
    /// Override a scenario value, e.g. --set particle.velocity=1.5
    #[arg(long = "set", value_name = "SECTION.KEY=VALUE")]
    set: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Single plane-wave eigenstate at the spectrum centre.
    Eigenstate(Common),
    /// Wavegroup snapshots at the scenario times.
    Wavegroup(Common),
    /// Two-surface slab: snapshots plus interference and overlap figures.
    Slab(Common),
    /// Finite barrier or well: coefficients and snapshots.
    Barrier(Common),
    /// Infinite or finite well.
    Well(Common),
    /// One-body marginal densities and their fringe visibility.
    Marginals(Common),
    /// Probability balance on a rectangle.
    Audit {
        #[command(flatten)]
        common: Common,
        /// Region as x1_min:x1_max,x2_min:x2_max (default: whole grid).
        #[arg(long, allow_hyphen_values = true)]
        region: Option<String>,
        /// Time step of the centred difference.
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
        /// Also audit at dt/2 and dt/4 and report the convergence order.
        #[arg(long)]
        ladder: bool,
    },
    /// Closed-form decoherence and which-path estimates.
    Decoherence(Common),
    /// Grid-integrated probability over a parameter range.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// SECTION.KEY=START:STOP:COUNT
        #[arg(long, allow_hyphen_values = true)]
        param: String,
    },
    /// Compare the wavegroup with split-step propagation.
    OracleCheck(Common),
    /// Built-in scenarios for the published figures.
    Preset {
        #[command(subcommand)]
        action: PresetAction,
    },
}

#[derive(Subcommand)]
enum PresetAction {
    /// List preset ids.
    List,
    /// Print a preset scenario.
    Show { id: String },
    /// Run a preset and compare with its expected observables.
    Check { id: String },
}

fn overrides(c: &Common) -> Result<Vec<(String, String)>> {
    c.set.iter().map(|s| split_assignment(s)).collect()
}

fn load(c: &Common) -> Result<Scenario> {
    Scenario::load(&c.scenario, &overrides(c)?)
}

fn parse_range(s: &str) -> Result<(f64, f64)> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| Error::Scenario(format!("range `{s}` must be a:b")))?;
    let num = |x: &str| x.trim().parse::<f64>().map_err(|_| Error::Scenario(format!("`{x}` is not a number")));
    Ok((num(a)?, num(b)?))
}

fn parse_region(s: &str) -> Result<Rectangle> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| Error::Scenario("region must be x1_min:x1_max,x2_min:x2_max".into()))?;
    Rectangle::new(parse_range(a)?, parse_range(b)?)
}

fn show(out: &RunOutput) {
    print!("{}", out.report);
    println!("wrote {} files to {}", out.files.len(), out.dir.display());
}

fn stem(p: &Path) -> String {
    p.file_stem().and_then(|s| s.to_str()).unwrap_or("scenario").to_string()
}

fn run(cli: Cli) -> Result<bool> {
    let out = match cli.command {
        Command::Eigenstate(c) => commands::eigenstate(&load(&c)?)?,
        Command::Wavegroup(c) => commands::wavegroup(&load(&c)?)?,
        Command::Slab(c) => commands::slab(&load(&c)?)?,
        Command::Barrier(c) => commands::barrier(&load(&c)?)?,
        Command::Well(c) => commands::well(&load(&c)?)?,
        Command::Marginals(c) => commands::marginals(&load(&c)?)?,
        Command::Decoherence(c) => commands::decoherence(&load(&c)?)?,
        Command::OracleCheck(c) => commands::oracle_check(&load(&c)?)?,
        Command::Audit { common, region, dt, ladder } => {
            let region = region.as_deref().map(parse_region).transpose()?;
            commands::audit(&load(&common)?, region, dt, ladder)?
        }
        Command::Sweep { common, param } => {
            let text = std::fs::read_to_string(&common.scenario)?;
            commands::sweep(&text, &stem(&common.scenario), &overrides(&common)?, &SweepParam::parse(&param)?)?
        }
        Command::Preset { action } => {
            return match action {
                PresetAction::List => {
                    for id in presets::ids() {
                        println!("{id}");
                    }
                    Ok(true)
                }
                PresetAction::Show { id } => {
                    print!("{}", presets::find(&id)?.scenario);
                    Ok(true)
                }
                PresetAction::Check { id } => {
                    let r = presets::regression_run(&id)?;
                    print!("{r}");
                    Ok(r.passed())
                }
            };
        }
    };
    show(&out);
    Ok(out.report.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_usage() { 2 } else { 1 })
        }
    }
}
