//! `crawler` — command-line front end for the bendable crawler module kit.
//!
//! Exit codes: 0 success, 1 constraint failure under `--strict`,
//! 2 input or I/O error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crawler_core::bend::{sweep, BendAxis, SweepTable};
use crawler_core::design::{validate_design, DesignParams, DesignReport};
use crawler_core::locomotion::{
    plan as make_plan, plan_to_text, EnvironmentDescriptor, PlanConfig, RobotAssembly,
};
use crawler_core::sim::{run, EnvFile, Scenario};

#[derive(Parser)]
#[command(name = "crawler", version, about = "Bendable crawler module design and simulation tools")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum AxisArg {
    Pitch,
    Yaw,
}

impl From<AxisArg> for BendAxis {
    fn from(a: AxisArg) -> Self {
        match a {
            AxisArg::Pitch => BendAxis::Pitch,
            AxisArg::Yaw => BendAxis::Yaw,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RobotArg {
    Snake,
    PipeClimber,
    Quadruped,
}

#[derive(Subcommand)]
enum Command {
    /// Check a design file against the closed-form constraints.
    ValidateDesign {
        /// Design parameter file (JSON).
        file: PathBuf,
        /// Exit nonzero when any violation is found.
        #[arg(long)]
        strict: bool,
    },
    /// Tabulate chain path lengths over a bend-angle range.
    ChainPath {
        #[arg(long, value_enum)]
        axis: AxisArg,
        /// Start angle (degrees).
        #[arg(long)]
        from: f64,
        /// End angle (degrees).
        #[arg(long)]
        to: f64,
        #[arg(long)]
        steps: usize,
        /// Also evaluate the discrete chain-layout oracle per row.
        #[arg(long)]
        oracle: bool,
        /// Design file; built-in reference parameters when omitted.
        #[arg(long)]
        design: Option<PathBuf>,
        /// Write CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Chain-path sweep over the full joint range of one axis.
    Sweep {
        #[arg(long, value_enum)]
        axis: AxisArg,
        #[arg(long, default_value_t = 64)]
        steps: usize,
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        design: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the primitive plan for a robot in an environment.
    Plan {
        /// Robot assembly kind.
        #[arg(long, value_enum)]
        robot: RobotArg,
        /// Environment description file (JSON).
        #[arg(long)]
        env: PathBuf,
        /// Module count for snakes.
        #[arg(long, default_value_t = 3)]
        modules: usize,
        /// SEA stiffness for pipe climbers (N·m/rad).
        #[arg(long, default_value_t = 5.0)]
        sea_stiffness: f64,
        #[arg(long)]
        design: Option<PathBuf>,
    },
    /// Run a scenario and print the summary.
    Simulate {
        /// Scenario file (JSON).
        scenario: PathBuf,
        /// Exit nonzero when any constraint flag is raised.
        #[arg(long)]
        strict: bool,
        /// Write the tick trace as CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load_design(path: &Option<PathBuf>) -> crawler_core::Result<DesignParams> {
    match path {
        Some(p) => DesignParams::load(p),
        None => Ok(DesignParams::default()),
    }
}

fn print_report(report: &DesignReport) {
    println!("sprocket_torque_nm: {:.6}", report.sprocket_torque);
    println!(
        "lug_separation_required_m: {:.6} (pitch {:.6}, yaw {:.6}; swapped pairing {:.6}, {:.6})",
        report.d_lug_required, report.d1, report.d2, report.d1_swapped, report.d2_swapped
    );
    println!("lug_separation_shortfall_m: {:.6}", report.d_lug_shortfall);
    if report.violations.is_empty() {
        println!("violations: none");
    } else {
        println!("violations: {}", report.violations.len());
        for v in &report.violations {
            println!("  {}: {}", v.name, v.detail);
        }
    }
}

fn emit(table: &SweepTable, out: &Option<PathBuf>) -> crawler_core::Result<()> {
    let csv = table.to_csv();
    match out {
        Some(path) => std::fs::write(path, csv)?,
        None => print!("{csv}"),
    }
    Ok(())
}

fn run_command(cli: Cli) -> crawler_core::Result<u8> {
    match cli.command {
        Command::ValidateDesign { file, strict } => {
            let params = DesignParams::load(&file)?;
            let report = validate_design(&params);
            print_report(&report);
            Ok(if strict && !report.violations.is_empty() {
                1
            } else {
                0
            })
        }
        Command::ChainPath {
            axis,
            from,
            to,
            steps,
            oracle,
            design,
            out,
        } => {
            let params = load_design(&design)?;
            let table = sweep(
                &params,
                axis.into(),
                from.to_radians(),
                to.to_radians(),
                steps,
                if oracle { Some(64) } else { None },
            )?;
            emit(&table, &out)?;
            Ok(0)
        }
        Command::Sweep {
            axis,
            steps,
            oracle,
            design,
            out,
        } => {
            let params = load_design(&design)?;
            let to = match axis {
                AxisArg::Pitch => params.joint_limit_pitch,
                AxisArg::Yaw => params.joint_limit_yaw,
            };
            let table = sweep(
                &params,
                axis.into(),
                0.0,
                to,
                steps,
                if oracle { Some(64) } else { None },
            )?;
            emit(&table, &out)?;
            Ok(0)
        }
        Command::Plan {
            robot,
            env,
            modules,
            sea_stiffness,
            design,
        } => {
            let params = load_design(&design)?;
            let assembly = match robot {
                RobotArg::Snake => RobotAssembly::snake(modules, params)?,
                RobotArg::PipeClimber => RobotAssembly::pipe_climber(params, sea_stiffness)?,
                RobotArg::Quadruped => RobotAssembly::quadruped(params)?,
            };
            let env_file: EnvFile = serde_json::from_str(&std::fs::read_to_string(&env)?)?;
            let env: EnvironmentDescriptor = env_file.into();
            let plan = make_plan(&assembly, &env, &PlanConfig::default())?;
            print!("{}", plan_to_text(&plan));
            Ok(0)
        }
        Command::Simulate {
            scenario,
            strict,
            out,
        } => {
            let scenario = Scenario::load(&scenario)?;
            let trace = run(&scenario)?;
            let summary = trace.summary();
            if let Some(path) = out {
                std::fs::write(&path, trace.to_csv(scenario.assembly.modules.len()))?;
            }
            println!("ticks: {}", summary.ticks);
            println!("distance_m: {:.6}", summary.distance);
            println!(
                "final_pose: x={:.6} y={:.6} z={:.6} heading_deg={:.6}",
                summary.final_x,
                summary.final_y,
                summary.final_z,
                summary.final_heading.to_degrees()
            );
            println!(
                "flags: {} over {} ticks",
                summary.flag_total, summary.flagged_ticks
            );
            Ok(if strict && trace.has_flags() { 1 } else { 0 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run_command(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
