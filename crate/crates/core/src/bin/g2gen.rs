use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use g2gen::corpus::{self, Branch};
use g2gen::report::{self, CurveFile, GeneratorReport, Report};
use g2gen::torsion::TorsionContext;
use g2gen::zeta::{char_poly_power, classify_weil, split_roots_mod_ell, weil_polynomial};
use g2gen::{Error, Result};

#[derive(Parser)]
#[command(name = "g2gen", version, about = "Generators of l-torsion on genus-two Jacobians")]
struct Cli {
    /// RNG seed; falls back to G2GEN_SEED, then 0.
    #[arg(long, global = true, env = "G2GEN_SEED")]
    seed: Option<u64>,

    /// Write the JSON report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Point counts, Weil polynomial and group order.
    Info {
        curve: PathBuf,
        #[arg(long)]
        ell: Option<u64>,
    },
    /// Decide class membership and the 4 tau_k branch.
    Classify {
        curve: PathBuf,
        #[arg(long)]
        ell: u64,
    },
    /// Find and verify four generators of J[l].
    Generators {
        curve: PathBuf,
        #[arg(long)]
        ell: u64,
        /// Fresh samples per search loop.
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// Re-check a saved generators report.
    Verify { report: PathBuf },
    /// Run the corpus checks.
    Selftest {
        /// Generator runs per in-class corpus entry.
        #[arg(long, default_value_t = 1)]
        runs: usize,
    },
    /// Search random curves for corpus entries.
    Sweep {
        #[arg(long, value_delimiter = ',', default_values_t = [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31])]
        q: Vec<u64>,
        #[arg(long, default_value_t = 60)]
        per_q: usize,
        /// Emit every candidate rather than the compact selection.
        #[arg(long)]
        all: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load_curve(path: &Path) -> Result<(Vec<u8>, g2gen::Curve)> {
    let bytes = read(path)?;
    let text = std::str::from_utf8(&bytes).map_err(|e| Error::Parse(e.to_string()))?;
    let curve = CurveFile::parse(text)?.curve()?;
    Ok((bytes, curve))
}

fn emit<T: Serialize>(cli: &Cli, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::InternalInconsistency(e.to_string()))?;
    match &cli.output {
        Some(path) => fs::write(path, text + "\n").map_err(|e| Error::BadInput(format!("{}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Error::InternalInconsistency(e.to_string())),
                _ => Ok(()),
            }
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    let seed = cli.seed.unwrap_or(0);
    match &cli.command {
        Command::Info { curve, ell } => {
            let (bytes, curve) = load_curve(curve)?;
            let result = report::info(&curve, *ell)?;
            if let Some(diag) = result.ell.as_ref().and_then(|e| e.diagnostic.as_ref()) {
                eprintln!("{diag}");
            }
            emit(cli, &Report::new("info", &bytes, None, result))?;
            Ok(0)
        }
        Command::Classify { curve, ell } => {
            let (bytes, curve) = load_curve(curve)?;
            let class = classify_weil(&weil_polynomial(&curve)?, *ell)?;
            eprintln!("{}", report::summarize(&class));
            emit(cli, &Report::new("classify", &bytes, None, class))?;
            Ok(0)
        }
        Command::Generators { curve, ell, n } => {
            let (bytes, curve) = load_curve(curve)?;
            let result = report::generators(&curve, *ell, *n, seed)?;
            emit(cli, &Report::new("generators", &bytes, Some(seed), result))?;
            Ok(0)
        }
        Command::Verify { report: path } => {
            let bytes = read(path)?;
            let saved: Report<GeneratorReport> =
                serde_json::from_slice(&bytes).map_err(|e| Error::Parse(e.to_string()))?;
            let result = report::verify(&saved.result, seed)?;
            let ok = result.is_basis && result.postconditions_hold && result.matches_report;
            emit(cli, &Report::new("verify", &bytes, Some(seed), result))?;
            Ok(if ok { 0 } else { 2 })
        }
        Command::Selftest { runs } => {
            let result = selftest(*runs, seed)?;
            let ok = result.iter().all(|c| c.passed);
            for c in &result {
                eprintln!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            emit(cli, &Report::new("selftest", b"", Some(seed), result))?;
            Ok(if ok { 0 } else { 5 })
        }
        Command::Sweep { q, per_q, all } => {
            let found = corpus::sweep(q, *per_q, seed)?;
            let out = if *all { found } else { corpus::select(&found) };
            emit(cli, &out)?;
            Ok(0)
        }
    }
}

#[derive(Serialize)]
struct Check {
    name: String,
    passed: bool,
    detail: String,
}

fn check(name: &str, passed: bool, detail: String) -> Check {
    Check { name: name.into(), passed, detail }
}

/// Group orders against enumeration, the 4 tau_k cross-check, splitting of
/// `P_n` and generator runs on every corpus entry.
fn selftest(runs: usize, seed: u64) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for e in corpus::builtin() {
        let name = format!("q={} l={} f={:?}", e.q, e.ell, e.f);
        let curve = e.curve()?;
        let weil = weil_polynomial(&curve)?;
        let class = classify_weil(&weil, e.ell)?;

        let four_tau = char_poly_power(&weil, class.k as u32)?.four_tau();
        let direct = four_tau.rem_euclid(e.ell as i128) == 0;
        checks.push(check(
            &format!("{name} 4tau"),
            direct == class.ell_divides_4tau,
            format!("4 tau_k = {four_tau}, flag = {}", class.ell_divides_4tau),
        ));
        if e.branch == Branch::OutOfClass {
            checks.push(check(&format!("{name} verdict"), !class.in_class, format!("{:?}", class.verdict)));
            continue;
        }
        let splits = (1..=6u32).all(|n| {
            char_poly_power(&weil, n).is_ok_and(|p| split_roots_mod_ell(&p, e.ell).is_some())
        });
        checks.push(check(&format!("{name} split"), splits, "P_n mod l splits for n <= 6".into()));

        let ctx = TorsionContext::new(&curve, e.ell)?;
        let field = g2gen::ExtField::new(e.q, 1)?;
        let small = g2gen::Jacobian::new(curve.clone(), field)?;
        if let Ok(all) = g2gen::oracle::enumerate_jacobian(&small, 1) {
            checks.push(check(
                &format!("{name} order"),
                all.order() as i128 == weil.at_one(),
                format!("enumerated {} vs P(1) = {}", all.order(), weil.at_one()),
            ));
        }
        for _ in 0..runs {
            let outcome = ctx.find_generators(3, &mut rng);
            let detail = match &outcome {
                Ok(set) => format!("{:?} branch, pfaffian {}", set.branch, set.pfaffian),
                Err(err) => err.to_string(),
            };
            checks.push(check(&format!("{name} generators"), outcome.is_ok(), detail));
        }
    }
    Ok(checks)
}
