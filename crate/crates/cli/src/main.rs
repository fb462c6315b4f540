mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nilorbit_core::gkm::GkmGraph;
use nilorbit_core::lie::{LieType, RootSystem};
use nilorbit_core::moment::moment_polytope;
use nilorbit_core::orbit::{
    center_group, flag_equiv_betti, minimal_orbit_betti, minimal_orbit_cohomology, regular_orbit_betti,
};
use nilorbit_core::selftest::run_selftest;
use nilorbit_core::{Error, DEFAULT_CAP};
use serde::Serialize;

use report::*;

/// Equivariant cohomology of nilpotent orbits via GKM graphs.
#[derive(Parser)]
#[command(name = "nilorbit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Root counts, highest root, long roots and Xi.
    Roots(Common),
    /// Vertices and edges of the GKM graph of G/P.
    GkmGraph {
        #[command(flatten)]
        common: Common,
        /// `xi`, `borel`, or a comma-separated list of 1-based simple indices.
        #[arg(long, default_value = "xi")]
        parabolic: String,
    },
    /// Betti numbers of an orbit or flag variety.
    Betti {
        target: BettiTarget,
        #[command(flatten)]
        common: Common,
        /// Parabolic for `flag`: `xi`, `borel`, or 1-based indices.
        #[arg(long, default_value = "xi")]
        parabolic: String,
    },
    /// Bases of the equivariant cohomology ring degree by degree.
    Ring {
        target: RingTarget,
        #[command(flatten)]
        common: Common,
    },
    /// Vertices of the moment polytope of P(Theta_min).
    Polytope(Common),
    /// Center of the simply connected group and its group cohomology.
    Center(Common),
    /// Run every cross-check for one type.
    Selftest(Common),
}

#[derive(Args)]
struct Common {
    /// Lie type such as A2, G2 or E8.
    #[arg(long = "type", value_name = "TYPE")]
    lie_type: String,
    /// Largest cohomological degree (even).
    #[arg(long, default_value_t = 8, value_parser = parse_even)]
    max_degree: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for independent degrees.
    #[arg(long)]
    jobs: Option<usize>,
    /// Bound on orbit and coset enumeration sizes.
    #[arg(long, env = "NILORBIT_CAP", default_value_t = DEFAULT_CAP)]
    cap: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum BettiTarget {
    MinOrbit,
    RegOrbit,
    Flag,
}

#[derive(Clone, Copy, ValueEnum)]
enum RingTarget {
    FlagXi,
    MinOrbit,
}

fn parse_even(s: &str) -> Result<u32, String> {
    let n: u32 = s.parse().map_err(|_| format!("`{s}` is not a nonnegative integer"))?;
    if n % 2 == 1 {
        return Err(format!("`{s}` is odd; cohomology is concentrated in even degrees"));
    }
    Ok(n)
}

fn parse_parabolic(s: &str, rs: &RootSystem) -> Result<Vec<usize>, Error> {
    match s {
        "xi" => Ok(rs.xi().to_vec()),
        "borel" => Ok(Vec::new()),
        list => list
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                match tok.parse::<usize>() {
                    Ok(i) if (1..=rs.rank()).contains(&i) => Ok(i - 1),
                    Ok(i) => Err(Error::IndexOutOfRange {
                        index: i,
                        rank: rs.rank(),
                    }),
                    Err(_) => Err(Error::Parse {
                        token: tok.to_string(),
                        reason: "expected `xi`, `borel` or 1-based simple indices".into(),
                    }),
                }
            })
            .collect(),
    }
}

/// Renders a report; JSON goes through `serde_json::Value`, whose maps keep
/// keys sorted, so output is canonical.
fn emit<T: Serialize>(format: Format, report: &T, text: impl FnOnce(&T) -> String) -> Result<(), Error> {
    match format {
        Format::Text => print!("{}", text(report)),
        Format::Json => {
            let value = serde_json::to_value(report).map_err(|e| Error::Internal(e.to_string()))?;
            let out = serde_json::to_string_pretty(&value).map_err(|e| Error::Internal(e.to_string()))?;
            println!("{out}");
        }
    }
    Ok(())
}

fn setup(c: &Common) -> Result<RootSystem, Error> {
    if let Some(n) = c.jobs {
        // fails only if a pool already exists, which is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let t: LieType = c.lie_type.parse()?;
    RootSystem::new(t)
}

/// Exit status 0 on success; see [`exit_code`] for failures.
fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Roots(c) => {
            let rs = setup(&c)?;
            emit(c.format, &RootsReport::new(&rs), RootsReport::text)?;
        }
        Command::GkmGraph { common: c, parabolic } => {
            let rs = setup(&c)?;
            let p = parse_parabolic(&parabolic, &rs)?;
            let g = GkmGraph::build(&rs, &p, c.cap)?;
            emit(c.format, &GraphReport::new(&g), GraphReport::text)?;
        }
        Command::Betti {
            target,
            common: c,
            parabolic,
        } => {
            let rs = setup(&c)?;
            let name = rs.lie_type().to_string();
            let report = match target {
                BettiTarget::MinOrbit => {
                    BettiReport::new(name, "min-orbit", None, &minimal_orbit_betti(&rs, c.max_degree, c.cap)?)
                }
                BettiTarget::RegOrbit => {
                    BettiReport::new(name, "reg-orbit", None, &regular_orbit_betti(&rs, c.max_degree, c.cap)?)
                }
                BettiTarget::Flag => {
                    let p = parse_parabolic(&parabolic, &rs)?;
                    let t = flag_equiv_betti(&rs, &p, c.max_degree, c.cap)?;
                    BettiReport::new(name, "flag", Some(&p), &t)
                }
            };
            emit(c.format, &report, BettiReport::text)?;
        }
        Command::Ring { target, common: c } => {
            let rs = setup(&c)?;
            let report = match target {
                RingTarget::FlagXi => {
                    let g = GkmGraph::build_xi(&rs, c.cap)?;
                    let bases = g.equivariant_bases(c.max_degree / 2)?;
                    RingReport::flag(&g, &bases, c.max_degree)
                }
                RingTarget::MinOrbit => RingReport::min_orbit(&minimal_orbit_cohomology(&rs, c.max_degree, c.cap)?),
            };
            emit(c.format, &report, RingReport::text)?;
        }
        Command::Polytope(c) => {
            let rs = setup(&c)?;
            let p = moment_polytope(&rs)?;
            emit(c.format, &PolytopeReport::new(&rs, &p), PolytopeReport::text)?;
        }
        Command::Center(c) => {
            let rs = setup(&c)?;
            let z = center_group(rs.lie_type());
            emit(
                c.format,
                &CenterReport::new(rs.lie_type().to_string(), &z, c.max_degree),
                CenterReport::text,
            )?;
        }
        Command::Selftest(c) => {
            let rs = setup(&c)?;
            let r = run_selftest(rs.lie_type(), c.max_degree, c.cap)?;
            emit(c.format, &SelftestJson::new(&r), SelftestJson::text)?;
            if let Some(f) = r.first_failure() {
                eprintln!("nilorbit: property `{}` failed: {}", f.name, f.detail);
                return Ok(ExitCode::from(3));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// 1 for usage and parse errors, 2 for cap overruns, 3 for internal
/// invariant violations.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::CapExceeded { .. } => 2,
        e if e.is_internal() => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("nilorbit: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
