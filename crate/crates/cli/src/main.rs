//! Command-line front end for the lift-to-drag bound computations.
//!
//! Exit codes: 0 success, 1 internal failure, 2 usage, 3 domain violation,
//! 4 I/O or malformed CSV, 5 verification failure.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ldbounds::functionals::assemble_coefficients_with;
use ldbounds::io::{
    descriptor_key_values, format_sig, read_velocity_csv, write_bound_curve_csv,
    write_flat_plate_csv, write_oracle_csv, write_velocity_csv,
};
use ldbounds::{
    bound_curve, build_max_extremal, build_min_extremal, c_l_max, flat_plate_curve, kappa_max,
    kappa_min, oracle, validate_brillouin, Error, EvalOptions, VelocityDistribution64,
};

#[derive(Parser)]
#[command(
    name = "ldbounds",
    version,
    about = "Lift-to-drag ratio bounds in infinite-cavity flow"
)]
struct Cli {
    /// Output style for tables and reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    /// Write the primary output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Override the quadrature tolerance (applies to both integrals).
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Pretty,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BranchArg {
    Min,
    Max,
}

#[derive(Subcommand)]
enum Command {
    /// Print kappa_max and kappa_min at the standard C_L values.
    Table,
    /// Write the C_Dmin / C_Dmax bound curves as CSV.
    Curves {
        /// Number of C_L grid points spanning (0, 2/e].
        #[arg(long, default_value_t = 64)]
        n: usize,
    },
    /// Export an extremal velocity distribution as sigma,u CSV plus its
    /// descriptor (key=value lines).
    Extremal {
        /// Lift integral target in (0, 1/e].
        #[arg(long, allow_negative_numbers = true)]
        q: f64,
        #[arg(long, value_enum)]
        branch: BranchArg,
        /// Number of sigma samples.
        #[arg(long, default_value_t = 1001)]
        points: usize,
    },
    /// Evaluate C_L, C_D, kappa and Brillouin admissibility of tabulated
    /// distributions.
    Eval {
        /// sigma,u CSV for the trailing arc (u2).
        #[arg(long = "in")]
        input: PathBuf,
        /// Arc split fraction l1/l.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        epsilon: f64,
        /// sigma,u CSV for the leading arc (u1); required when epsilon > 0.
        #[arg(long)]
        u1: Option<PathBuf>,
    },
    /// Write the Rayleigh flat-plate reference curve as CSV.
    Flatplate {
        /// Number of alpha grid points spanning (0, pi/2].
        #[arg(long, default_value_t = 50)]
        n: usize,
    },
    /// Run the brute-force oracle against the analytic curves; exits 5 on
    /// any bound violation.
    Verify {
        /// Oracle grid size N.
        #[arg(long, default_value_t = 50)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Number of interior q points to test.
        #[arg(long, default_value_t = 10)]
        grid: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Io(_) | Error::Csv { .. } => 4,
        Error::NoConvergence { .. } => 1,
        _ => 3,
    }
}

/// stdout unless `--out` was given.
fn open_sink(out: Option<&Path>) -> std::io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    match &cli.command {
        Command::Table => cmd_table(cli),
        Command::Curves { n } => cmd_curves(cli, *n),
        Command::Extremal { q, branch, points } => cmd_extremal(cli, *q, *branch, *points),
        Command::Eval { input, epsilon, u1 } => cmd_eval(cli, input, *epsilon, u1.as_deref()),
        Command::Flatplate { n } => cmd_flatplate(cli, *n),
        Command::Verify {
            n,
            restarts,
            seed,
            grid,
        } => cmd_verify(cli, *n, *restarts, *seed, *grid),
    }
}

/// Rounds to six significant digits for display.
fn fmt6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    let scale = 10f64.powi(5 - mag);
    format!("{}", (x * scale).round() / scale)
}

fn cmd_table(cli: &Cli) -> Result<ExitCode, Error> {
    let standard: Vec<(String, Option<f64>)> = std::iter::once(("0".to_string(), None))
        .chain((1..=7).map(|i| {
            let c_l = i as f64 / 10.0;
            (format!("{c_l}"), Some(c_l))
        }))
        .chain(std::iter::once(("2/e".to_string(), Some(c_l_max::<f64>()))))
        .collect();

    let mut rows = Vec::new();
    for (label, c_l) in &standard {
        match c_l {
            // the C_L = 0 column is the analytic limit, not a computation
            None => rows.push((label.clone(), f64::INFINITY, 0.0)),
            Some(c_l) => rows.push((label.clone(), kappa_max(*c_l)?, kappa_min(*c_l)?)),
        }
    }

    let mut sink = open_sink(cli.out.as_deref())?;
    match cli.format {
        Format::Csv => {
            sink.write_all(b"c_l,kappa_max,kappa_min\n")?;
            for ((label, c_l), (_, kmax, kmin)) in standard.iter().zip(&rows) {
                let c_l_text = match c_l {
                    None => "0".to_string(),
                    Some(v) if label == "2/e" => format_sig(*v),
                    Some(v) => format!("{v}"),
                };
                writeln!(
                    sink,
                    "{c_l_text},{},{}",
                    format_sig(*kmax),
                    format_sig(*kmin)
                )?;
            }
        }
        Format::Pretty => {
            writeln!(
                sink,
                "{:>6}  {:>12}  {:>12}",
                "C_L", "kappa_max", "kappa_min"
            )?;
            for (label, kmax, kmin) in &rows {
                writeln!(sink, "{label:>6}  {:>12}  {:>12}", fmt6(*kmax), fmt6(*kmin))?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_curves(cli: &Cli, n: usize) -> Result<ExitCode, Error> {
    let rows = bound_curve::<f64>(n)?;
    let sink = open_sink(cli.out.as_deref())?;
    write_bound_curve_csv(sink, &rows)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_extremal(cli: &Cli, q: f64, branch: BranchArg, points: usize) -> Result<ExitCode, Error> {
    if points < 8 {
        return Err(Error::Domain {
            name: "points",
            value: points as f64,
            range: ">= 8",
        });
    }
    let (desc, _) = match branch {
        BranchArg::Min => build_min_extremal(q)?,
        BranchArg::Max => build_max_extremal(q)?,
    };
    let samples: Vec<(f64, f64)> = (0..points)
        .map(|i| {
            let s = i as f64 / (points - 1) as f64;
            (s, desc.velocity(s))
        })
        .collect();

    let kv = descriptor_key_values(&desc);
    match cli.out.as_deref() {
        Some(path) => {
            write_velocity_csv(BufWriter::new(File::create(path)?), &samples)?;
            print!("{kv}");
        }
        None => {
            write_velocity_csv(std::io::stdout().lock(), &samples)?;
            eprint!("{kv}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_eval(cli: &Cli, input: &Path, epsilon: f64, u1: Option<&Path>) -> Result<ExitCode, Error> {
    if epsilon > 0.0 && u1.is_none() {
        // flag coupling is a usage problem, same class as a bad flag
        eprintln!("error: --epsilon > 0 requires --u1 <PATH>");
        return Ok(ExitCode::from(2));
    }
    let u2: VelocityDistribution64 = read_velocity_csv(BufReader::new(File::open(input)?))?;
    let u1_dist: Option<VelocityDistribution64> = match u1 {
        Some(path) => Some(read_velocity_csv(BufReader::new(File::open(path)?))?),
        None => None,
    };

    let reports: Vec<_> = std::iter::once(("u2", validate_brillouin(&u2)))
        .chain(u1_dist.as_ref().map(|u| ("u1", validate_brillouin(u))))
        .collect();

    let opts = match cli.tol {
        Some(tol) => EvalOptions::with_tolerance(tol),
        None => EvalOptions::default(),
    };
    let coeffs = assemble_coefficients_with(epsilon, u1_dist.as_ref(), &u2, &opts);
    // assemble_coefficients_with rejects inadmissible input; still print the
    // admissibility report before surfacing that error
    let mut sink = open_sink(cli.out.as_deref())?;
    match (&coeffs, cli.format) {
        (Ok(c), Format::Csv) => {
            sink.write_all(b"c_l,c_d,kappa,admissible,max_u\n")?;
            let admissible = reports.iter().all(|(_, r)| r.admissible);
            writeln!(
                sink,
                "{},{},{},{},{}",
                format_sig(c.c_l),
                format_sig(c.c_d),
                format_sig(c.kappa()),
                admissible,
                format_sig(reports.iter().map(|(_, r)| r.max_u).fold(0.0, f64::max)),
            )?;
        }
        (Ok(c), Format::Pretty) => {
            writeln!(sink, "C_L   = {}", format_sig(c.c_l))?;
            writeln!(sink, "C_D   = {}", format_sig(c.c_d))?;
            writeln!(sink, "kappa = {}", format_sig(c.kappa()))?;
            for (name, r) in &reports {
                writeln!(
                    sink,
                    "{name}: {} (max u = {} at sigma = {})",
                    if r.admissible {
                        "admissible"
                    } else {
                        "BRILLOUIN VIOLATION"
                    },
                    format_sig(r.max_u),
                    format_sig(r.at_sigma),
                )?;
            }
        }
        (Err(_), _) => {
            for (name, r) in &reports {
                eprintln!(
                    "{name}: {} (max u = {} at sigma = {})",
                    if r.admissible {
                        "admissible"
                    } else {
                        "BRILLOUIN VIOLATION"
                    },
                    format_sig(r.max_u),
                    format_sig(r.at_sigma),
                );
            }
        }
    }
    coeffs?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_flatplate(cli: &Cli, n: usize) -> Result<ExitCode, Error> {
    let rows = flat_plate_curve::<f64>(n)?;
    let sink = open_sink(cli.out.as_deref())?;
    write_flat_plate_csv(sink, &rows)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    cli: &Cli,
    n: usize,
    restarts: usize,
    seed: u64,
    grid: usize,
) -> Result<ExitCode, Error> {
    let q_grid = oracle::default_q_grid::<f64>(grid);
    let report = oracle::compare_report(&q_grid, n, restarts, seed)?;

    if cli.format == Format::Csv || cli.out.is_some() {
        let sink = open_sink(cli.out.as_deref())?;
        write_oracle_csv(sink, &report)?;
    }
    if cli.format == Format::Pretty {
        println!(
            "oracle check: N = {n}, restarts = {restarts}, seed = {seed}, tol(N) = 5/N = {}",
            format_sig(report.tolerance)
        );
        println!(
            "{:>12} {:>5} {:>16} {:>16} {:>13}  status",
            "q", "mode", "J_analytic", "J_oracle", "gap"
        );
        for row in &report.rows {
            println!(
                "{:>12} {:>5} {:>16} {:>16} {:>13}  {}",
                fmt6(row.q),
                row.mode,
                format_sig(row.j_analytic),
                format_sig(row.j_oracle),
                fmt6(row.gap),
                if row.violation { "VIOLATION" } else { "ok" }
            );
        }
    }

    if report.has_violation() {
        eprintln!("verification failed: oracle beat an analytic bound beyond tolerance");
        Ok(ExitCode::from(5))
    } else {
        if cli.format == Format::Pretty {
            println!("no violations: analytic bounds hold against the brute-force oracle");
        }
        Ok(ExitCode::SUCCESS)
    }
}
