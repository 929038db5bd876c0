use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use jetforge_core::connection::{beta, series_oracle, ConnectionChart};
use jetforge_core::hodge::{alpha, alpha_via_oracle, check_fv, check_hr1, solve_congruence};
use jetforge_core::jet_algebra::JetPoint;
use jetforge_core::jet_scheme::{
    apply_prolonged, is_nondegenerate, jet_membership, jet_prolong, jet_prolong_universal,
    jet_space_equations, jet_space_equations_universal,
};
use jetforge_core::linalg::Matrix;
use jetforge_core::{examples, json, JetError, Result};

mod input;
mod verify;

#[derive(Parser)]
#[command(
    name = "jetforge",
    version,
    about = "Exact jets of schemes, flat frames and period maps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Equations of the jet space of a scheme.
    Jetspace {
        #[arg(long)]
        scheme: PathBuf,
        #[arg(short = 'd', long)]
        dims: usize,
        #[arg(short = 'r', long)]
        order: u32,
        /// Use the Taylor-expansion construction.
        #[arg(long)]
        universal: bool,
    },
    /// Prolongation of a polynomial map, or its value on a jet.
    Prolong {
        #[arg(long)]
        map: PathBuf,
        #[arg(short = 'd', long)]
        dims: Option<usize>,
        #[arg(short = 'r', long)]
        order: Option<u32>,
        #[arg(long)]
        universal: bool,
        /// Apply the prolonged map to this jet instead of printing the map.
        #[arg(long)]
        jet: Option<String>,
    },
    /// Whether a jet lies on the jet space of a scheme.
    Membership {
        #[arg(long)]
        scheme: PathBuf,
        #[arg(long)]
        jet: String,
        #[arg(short = 'r', long)]
        order: Option<u32>,
        #[arg(long)]
        expect: Option<bool>,
    },
    /// Whether the tangent vectors of a jet are independent.
    Nondeg {
        #[arg(long)]
        jet: String,
        #[arg(short = 'r', long)]
        order: Option<u32>,
        #[arg(long)]
        expect: Option<bool>,
    },
    /// Jet of the flat frame along a jet.
    Beta {
        #[arg(long)]
        connection: PathBuf,
        #[arg(long)]
        jet: String,
        /// `identity`, `fv`, or a matrix as JSON (inline or file).
        #[arg(long, default_value = "identity")]
        init: String,
        #[arg(short = 'r', long)]
        order: Option<u32>,
        /// Solve the pulled-back system instead.
        #[arg(long)]
        oracle: bool,
    },
    /// Jet of the period map in flag coordinates.
    Alpha {
        #[arg(long)]
        connection: PathBuf,
        #[arg(long)]
        jet: String,
        #[arg(long, default_value = "identity")]
        init: String,
        #[arg(short = 'r', long)]
        order: Option<u32>,
        #[arg(long)]
        oracle: bool,
    },
    /// Whether a matrix normalizes the polarization at a point.
    Fv {
        #[arg(long)]
        connection: PathBuf,
        /// A named base point of the chart or comma-separated rationals.
        #[arg(long)]
        point: String,
        #[arg(long, default_value = "identity")]
        init: String,
        #[arg(long)]
        expect: Option<bool>,
    },
    /// First Hodge-Riemann relation for a flag jet.
    Hr1 {
        #[arg(long)]
        connection: PathBuf,
        #[arg(long)]
        flag: String,
        #[arg(long)]
        expect: Option<bool>,
    },
    /// Randomized dual-route, equivariance, flatness and HR1 checks on a chart.
    Verify {
        #[arg(long)]
        connection: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_order: u32,
        #[arg(long, default_value_t = 16)]
        cases: usize,
        /// Overridden by JETFORGE_SEED.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print a built-in connection as a connection file.
    Example {
        /// One of the names printed by `--list`.
        name: Option<String>,
        #[arg(long)]
        list: bool,
    },
}

/// Process exit statuses.
const EXIT_FALSE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_SINGULAR: u8 = 3;

fn exit_code(e: &JetError) -> u8 {
    match e {
        JetError::SingularPoint(_) | JetError::SingularInitial => EXIT_SINGULAR,
        JetError::NoRationalFvPoint(_) => EXIT_FALSE,
        _ => EXIT_INPUT,
    }
}

fn predicate(value: bool, expect: Option<bool>) -> u8 {
    println!(
        "{}",
        json::canonical(&serde_json::json!({ "result": value }))
    );
    match expect {
        Some(e) if e != value => EXIT_FALSE,
        _ => 0,
    }
}

fn resolve_init(chart: &ConnectionChart, sigma: &JetPoint, arg: &str) -> Result<Matrix> {
    match input::init(arg)? {
        input::Init::Identity => Ok(Matrix::identity(chart.m())),
        input::Init::Fv => {
            let s = sigma.basepoint();
            chart.check_point(&s)?;
            solve_congruence(&chart.gram_at(&s)?, chart.polarization())
        }
        input::Init::Matrix(m) => Ok(m),
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Jetspace {
            scheme,
            dims,
            order,
            universal,
        } => {
            let s = json::scheme_from_json(&input::read_file(&scheme)?)?;
            let system = if universal {
                jet_space_equations_universal(&s, dims, order)?
            } else {
                jet_space_equations(&s, dims, order)?
            };
            println!("{}", json::system_to_json(&system));
        }
        Command::Prolong {
            map,
            dims,
            order,
            universal,
            jet,
        } => {
            let g = json::map_from_json(&input::read_file(&map)?)?;
            let (dims, order) = match &jet {
                Some(j) => {
                    let j = input::jet(j, order, dims)?;
                    (j.dims(), j.order())
                }
                None => (
                    dims.ok_or_else(|| JetError::Parse("-d is required".into()))?,
                    order.ok_or_else(|| JetError::Parse("-r is required".into()))?,
                ),
            };
            let prolonged = if universal {
                jet_prolong_universal(&g, dims, order)?
            } else {
                jet_prolong(&g, dims, order)?
            };
            match jet {
                Some(j) => {
                    let j = input::jet(&j, Some(order), Some(dims))?;
                    println!("{}", json::jet_to_json(&apply_prolonged(&prolonged, &j)?));
                }
                None => println!("{}", json::map_to_json(&prolonged)),
            }
        }
        Command::Membership {
            scheme,
            jet,
            order,
            expect,
        } => {
            let s = json::scheme_from_json(&input::read_file(&scheme)?)?;
            let j = input::jet(&jet, order, None)?;
            return Ok(predicate(jet_membership(&s, &j)?, expect));
        }
        Command::Nondeg { jet, order, expect } => {
            let j = input::jet(&jet, order, None)?;
            return Ok(predicate(is_nondegenerate(&j)?, expect));
        }
        Command::Beta {
            connection,
            jet,
            init,
            order,
            oracle,
        } => {
            let chart = input::connection(&connection)?;
            let sigma = input::jet(&jet, order, None)?;
            let m = resolve_init(&chart, &sigma, &init)?;
            let f = if oracle {
                series_oracle(&chart, &sigma, &m)?
            } else {
                beta(&chart, &sigma, &m)?
            };
            println!("{}", json::matrix_jet_to_json(&f));
        }
        Command::Alpha {
            connection,
            jet,
            init,
            order,
            oracle,
        } => {
            let chart = input::connection(&connection)?;
            let sigma = input::jet(&jet, order, None)?;
            let m = resolve_init(&chart, &sigma, &init)?;
            let flag = if oracle {
                alpha_via_oracle(&chart, &sigma, &m)?
            } else {
                alpha(&chart, &sigma, &m)?
            };
            println!("{}", json::flag_jet_to_json(&flag));
        }
        Command::Fv {
            connection,
            point,
            init,
            expect,
        } => {
            let chart = input::connection(&connection)?;
            let s = input::point(&chart, &point)?;
            let sigma = JetPoint::constant(&s, 1, 0)?;
            let m = resolve_init(&chart, &sigma, &init)?;
            return Ok(predicate(check_fv(&chart, &s, &m)?, expect));
        }
        Command::Hr1 {
            connection,
            flag,
            expect,
        } => {
            let chart = input::connection(&connection)?;
            let flag = json::flag_jet_from_json(&input::text_or_file(&flag)?)?;
            if flag.chart().m() != chart.m() {
                return Err(JetError::ArityMismatch {
                    expected: chart.m(),
                    found: flag.chart().m(),
                });
            }
            return Ok(predicate(check_hr1(&chart.hodge_data(), &flag), expect));
        }
        Command::Verify {
            connection,
            max_order,
            cases,
            seed,
        } => {
            let chart = input::connection(&connection)?;
            let seed = match std::env::var("JETFORGE_SEED") {
                Ok(v) => v
                    .trim()
                    .parse()
                    .map_err(|_| JetError::Parse(format!("JETFORGE_SEED={v} is not an integer")))?,
                Err(_) => seed,
            };
            let report = verify::verify(&chart, seed, cases, max_order)?;
            println!("{}", json::canonical(&report.value));
            if report.failed {
                return Ok(EXIT_FALSE);
            }
        }
        Command::Example { name, list } => {
            if list || name.is_none() {
                for ex in examples::all_examples() {
                    println!("{}", ex.name);
                }
                return Ok(0);
            }
            let name = name.unwrap_or_default();
            let ex = examples::example_by_name(&name)
                .ok_or_else(|| JetError::Parse(format!("unknown example {name}")))?;
            println!("{}", json::chart_to_json(&ex.chart));
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
