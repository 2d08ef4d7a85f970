//! `feqlab`: construct, verify, discover and classify the solutions of the
//! twisted trigonometric laws on finite semigroups, plus the closed-form
//! continuous families on ℝ and the (ax+b)-group.
//!
//! Exit codes: 0 success; 1 invalid input or file; 2 verification failure
//! (an unclassified solution, an equivalence breach, or a residual above
//! the requested tolerance); 3 internal residual guard tripped.

use clap::{Args, Parser, Subcommand};
use feqlab_core::continuum::{
    axb_families, real_families, sample_residual, ContinuumEq, RealTwist, Sampler,
    DEFAULT_AXB_SCALE,
};
use feqlab_core::families::{
    check_twist_symmetry, classify, ClassifyError, ClassifyOutcome, EquationTag,
};
use feqlab_core::funcspace::{enumerate_multiplicative, solve_special_sine};
use feqlab_core::io;
use feqlab_core::oracle::{
    check_equivalence, equation_residual, find_all_solutions, EquivalencePair, SolverConfig,
};
use feqlab_core::semigroup::{enumerate_semigroups_capped, Automorphism, FiniteSemigroup};
use feqlab_core::tol;
use serde_json::json;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "feqlab", version, about = "Trigonometric addition laws on finite semigroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate every labeled semigroup of a given order.
    Gen {
        #[arg(long)]
        order: usize,
        /// Keep only tables that equal their canonical (relabeling-minimal) form.
        #[arg(long)]
        canonical: bool,
        /// Enumeration order cap.
        #[arg(long, default_value_t = 4)]
        cap: usize,
    },
    /// List the automorphisms of a Cayley table.
    Auts { table: PathBuf },
    /// List the multiplicative functions of a Cayley table.
    Mult {
        table: PathBuf,
        #[arg(long)]
        include_zero: bool,
    },
    /// Basis of the solution space of φ(xy) = φ(x)χ(y) + φ(y)χ(x).
    Phi {
        table: PathBuf,
        /// Index into the `mult` listing (zero excluded).
        #[arg(long)]
        chi: usize,
    },
    /// Discover all solutions of an equation by multistart damped Gauss-Newton.
    Solve(SolveArgs),
    /// Classify a solution pair read from JSON.
    Classify(PairArgs),
    /// Print the equation residual of a pair.
    Verify {
        #[command(flatten)]
        pair: PairArgs,
        /// Residual bound for exit code 0.
        #[arg(long, default_value_t = tol::CLASS)]
        tol: f64,
    },
    /// Check that an equation and its variant have the same solutions.
    Equiv {
        #[arg(long)]
        table: PathBuf,
        #[arg(long)]
        sigma: String,
        /// `cos` (cos-sub vs cos-sub-var) or `sine` (sine-add vs sine-add-var).
        #[arg(long)]
        pair: String,
        #[arg(long, default_value_t = 500)]
        starts: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Twist-symmetry report for a solution pair.
    Symm {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = tol::CLASS)]
        tol: f64,
    },
    /// Closed-form continuous families on ℝ or the (ax+b)-group.
    Continuum {
        /// `real` or `axb`.
        #[arg(long)]
        app: String,
        /// Twist scale for the real carrier (σ(x) = βx).
        #[arg(long, allow_negative_numbers = true)]
        beta: Option<f64>,
        /// Twist scale for the (ax+b) carrier (b ↦ scale·b).
        #[arg(long, default_value_t = DEFAULT_AXB_SCALE, allow_negative_numbers = true)]
        scale: f64,
        /// `cos-sub` or `sine-add`.
        #[arg(long)]
        eq: String,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Completeness sweep over every semigroup of order ≤ the cap.
    Sweep {
        #[arg(long)]
        max_order: usize,
        #[arg(long)]
        eq: String,
        #[arg(long, default_value_t = 500)]
        starts: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    eq: String,
    #[arg(long)]
    table: PathBuf,
    #[arg(long)]
    sigma: String,
    #[arg(long, default_value_t = 500)]
    starts: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Convergence tolerance (residual max-norm).
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Write the full JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct PairArgs {
    #[arg(long)]
    table: PathBuf,
    #[arg(long)]
    sigma: String,
    #[arg(long)]
    eq: String,
    /// JSON file with `{"f": [[re,im],…], "g": [[re,im],…]}`.
    #[arg(long)]
    sol: PathBuf,
}

enum Failure {
    /// Exit 1: bad input.
    Input(String),
    /// Exit 2: a verification failed.
    Verification(String),
    /// Exit 3: an internal residual guard tripped.
    Internal(String),
}

impl Failure {
    fn report(self) -> ExitCode {
        match self {
            Failure::Input(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(1)
            }
            Failure::Verification(msg) => {
                eprintln!("verification failure: {msg}");
                ExitCode::from(2)
            }
            Failure::Internal(msg) => {
                eprintln!("internal error: {msg}");
                ExitCode::from(3)
            }
        }
    }
}

fn main() -> ExitCode {
    // behave like a standard unix tool when the output pipe closes
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => failure.report(),
    }
}

fn load_table(path: &PathBuf) -> Result<FiniteSemigroup, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    let label = path.file_stem().and_then(|s| s.to_str()).unwrap_or("table").to_string();
    io::parse_cayley(&text)
        .map(|s| s.with_label(label))
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_sigma(spec: &str, s: &FiniteSemigroup) -> Result<Automorphism, Failure> {
    io::parse_sigma(spec, s).map_err(|e| Failure::Input(e.to_string()))
}

fn parse_eq(name: &str) -> Result<EquationTag, Failure> {
    EquationTag::parse(name).ok_or_else(|| {
        Failure::Input(format!(
            "unknown equation {name:?} (expected one of {})",
            EquationTag::ALL.map(|e| e.cli_name()).join(", ")
        ))
    })
}

fn load_pair(args: &PairArgs) -> Result<(FiniteSemigroup, Automorphism, EquationTag, feqlab_core::funcspace::CFunc, feqlab_core::funcspace::CFunc), Failure> {
    let s = load_table(&args.table)?;
    let sigma = load_sigma(&args.sigma, &s)?;
    let eq = parse_eq(&args.eq)?;
    let text = fs::read_to_string(&args.sol)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", args.sol.display())))?;
    let (f, g) = io::parse_solution_pair(&text, s.order())
        .map_err(|e| Failure::Input(e.to_string()))?;
    Ok((s, sigma, eq, f, g))
}

fn fmt17(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v }; // fold -0.0 into 0.0
    format!("{v:.16e}")
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Gen { order, canonical, cap } => {
            let stream = enumerate_semigroups_capped(order, cap)
                .map_err(|e| Failure::Input(e.to_string()))?;
            let tables: Vec<FiniteSemigroup> =
                stream.filter(|s| !canonical || s.is_canonical()).collect();
            let kind = if canonical { "canonical" } else { "labeled" };
            println!("# order {order}: {} {kind} semigroups", tables.len());
            for s in &tables {
                println!();
                print!("{s}");
            }
            Ok(())
        }
        Command::Auts { table } => {
            let s = load_table(&table)?;
            let auts = s.automorphisms();
            println!("# {} automorphisms", auts.len());
            for a in &auts {
                println!("{a} order={} involutive={}", a.order(), a.is_involutive());
            }
            Ok(())
        }
        Command::Mult { table, include_zero } => {
            let s = load_table(&table)?;
            let chis = enumerate_multiplicative(&s, include_zero);
            let gate = if include_zero { "included" } else { "excluded" };
            println!("# {} multiplicative functions (zero {gate})", chis.len());
            for (k, chi) in chis.iter().enumerate() {
                let line = json!({
                    "index": k,
                    "values": io::cfunc_to_json(chi.values()),
                    "residual": io::json_f64(chi.residual()),
                });
                println!("{}", io::to_json_string(&line));
            }
            Ok(())
        }
        Command::Phi { table, chi } => {
            let s = load_table(&table)?;
            let chis = enumerate_multiplicative(&s, false);
            let Some(chosen) = chis.get(chi) else {
                return Err(Failure::Input(format!(
                    "chi index {chi} out of range (have {})",
                    chis.len()
                )));
            };
            println!(
                "# chi {chi}: {}",
                io::to_json_string(&io::cfunc_to_json(chosen.values()))
            );
            let basis = solve_special_sine(&s, chosen);
            println!("dimension: {}", basis.len());
            for v in &basis {
                println!("{}", io::to_json_string(&io::cfunc_to_json(v)));
            }
            Ok(())
        }
        Command::Solve(args) => {
            let s = load_table(&args.table)?;
            let sigma = load_sigma(&args.sigma, &s)?;
            let eq = parse_eq(&args.eq)?;
            let cfg = SolverConfig {
                n_starts: args.starts,
                seed: args.seed,
                converge_tol: args.tol,
                ..SolverConfig::default()
            };
            let report = find_all_solutions(eq, &s, &sigma, &cfg);
            println!(
                "# {} on {} (order {}), sigma {}: {} solutions, {} unclassified, {} converged, {} diverged",
                eq,
                s.label().unwrap_or("?"),
                s.order(),
                sigma,
                report.solutions.len(),
                report.unclassified.len(),
                report.converged,
                report.diverged
            );
            for (tag, count) in report.case_counts() {
                println!("{tag}: {count}");
            }
            if let Some(path) = &args.json {
                let text = io::to_json_string(&report.to_json());
                fs::write(path, text)
                    .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
            }
            if report.unclassified.is_empty() {
                Ok(())
            } else {
                Err(Failure::Verification(format!(
                    "{} converged solutions could not be classified",
                    report.unclassified.len()
                )))
            }
        }
        Command::Classify(args) => {
            let (s, sigma, eq, f, g) = load_pair(&args)?;
            match classify(eq, &s, &sigma, &f, &g) {
                Ok(ClassifyOutcome::Case(case)) => {
                    println!("{}", io::to_json_string(&case.to_json()));
                    Ok(())
                }
                Ok(ClassifyOutcome::Unclassified(profile)) => {
                    println!(
                        "{}",
                        io::to_json_string(&json!({"case": "UNCLASSIFIED", "profile": profile.to_json()}))
                    );
                    Err(Failure::Verification("pair solves the equation but matches no family".into()))
                }
                Err(ClassifyError::NotASolution { residual }) => Err(Failure::Input(format!(
                    "pair does not solve {eq}: residual {}",
                    fmt17(residual)
                ))),
                Err(e) => Err(Failure::Input(e.to_string())),
            }
        }
        Command::Verify { pair, tol } => {
            let (s, sigma, eq, f, g) = load_pair(&pair)?;
            let residual = equation_residual(eq, &s, &sigma, &f, &g);
            println!("residual: {}", fmt17(residual));
            if residual <= tol {
                Ok(())
            } else {
                Err(Failure::Verification(format!(
                    "residual {} exceeds tolerance {}",
                    fmt17(residual),
                    fmt17(tol)
                )))
            }
        }
        Command::Equiv { table, sigma, pair, starts, seed } => {
            let s = load_table(&table)?;
            let sig = load_sigma(&sigma, &s)?;
            let which = match pair.as_str() {
                "cos" => EquivalencePair::Cos,
                "sine" => EquivalencePair::Sine,
                other => {
                    return Err(Failure::Input(format!("unknown pair {other:?} (cos or sine)")))
                }
            };
            let cfg = SolverConfig { n_starts: starts, seed, ..SolverConfig::default() };
            let report = check_equivalence(&s, &sig, which, &cfg);
            let (tag_a, tag_b) = which.tags();
            println!(
                "# {tag_a} <-> {tag_b}: {} and {} solutions, {} breaches",
                report.forward.solutions.len(),
                report.backward.solutions.len(),
                report.breaches.len()
            );
            for b in report.breaches.iter().take(10) {
                println!(
                    "breach: found under {} fails {} with residual {}",
                    b.found_under,
                    b.checked_under,
                    fmt17(b.residual)
                );
            }
            if report.pass {
                println!("equivalence: pass");
                Ok(())
            } else {
                Err(Failure::Verification(format!("{} breaches", report.breaches.len())))
            }
        }
        Command::Symm { pair, tol } => {
            let (s, sigma, eq, f, g) = load_pair(&pair)?;
            match check_twist_symmetry(eq, &s, &sigma, &f, &g, tol) {
                Ok(report) => {
                    println!("{}", io::to_json_string(&report.to_json()));
                    if report.passed() {
                        Ok(())
                    } else {
                        Err(Failure::Verification("symmetry conclusion violated".into()))
                    }
                }
                Err(ClassifyError::NotASolution { residual }) => Err(Failure::Input(format!(
                    "pair does not solve {eq}: residual {}",
                    fmt17(residual)
                ))),
                Err(e) => Err(Failure::Input(e.to_string())),
            }
        }
        Command::Continuum { app, beta, scale, eq, samples, seed } => {
            let cos = match eq.as_str() {
                "cos-sub" => true,
                "sine-add" => false,
                other => {
                    return Err(Failure::Input(format!(
                        "unknown continuum equation {other:?} (cos-sub or sine-add)"
                    )))
                }
            };
            let (ceq, families) = match app.as_str() {
                "real" => {
                    let beta = beta.ok_or_else(|| {
                        Failure::Input("--beta is required for the real carrier".into())
                    })?;
                    let twist = RealTwist::new(beta).map_err(|e| Failure::Input(e.to_string()))?;
                    let ceq = if cos { ContinuumEq::E3Real(twist) } else { ContinuumEq::E1Real(twist) };
                    let fams = real_families(ceq).map_err(|e| Failure::Input(e.to_string()))?;
                    (ceq, fams)
                }
                "axb" => {
                    let ceq = if cos {
                        ContinuumEq::E3Axb { scale }
                    } else {
                        ContinuumEq::E1Axb { scale }
                    };
                    (ceq, axb_families(ceq))
                }
                other => return Err(Failure::Input(format!("unknown carrier {other:?} (real or axb)"))),
            };
            println!("# {} families on the {app} carrier", families.len());
            let mut worst: f64 = 0.0;
            for fam in &families {
                let residual = sample_residual(fam, ceq, Sampler::SeededRandom(seed), samples);
                worst = worst.max(residual);
                let line = json!({
                    "carrier": app,
                    "family": fam.to_json(),
                    "max_residual": io::json_f64(residual),
                    "samples": samples,
                });
                println!("{}", io::to_json_string(&line));
            }
            if worst <= 1e-9 {
                Ok(())
            } else {
                Err(Failure::Internal(format!(
                    "closed-form family misses its equation: residual {}",
                    fmt17(worst)
                )))
            }
        }
        Command::Sweep { max_order, eq, starts, seed } => {
            let eq = parse_eq(&eq)?;
            let cfg = SolverConfig { n_starts: starts, seed, ..SolverConfig::default() };
            let mut systems = 0usize;
            let mut unclassified = 0usize;
            for order in 1..=max_order {
                let stream = enumerate_semigroups_capped(order, max_order)
                    .map_err(|e| Failure::Input(e.to_string()))?;
                for (idx, s) in stream.enumerate() {
                    for sigma in s.automorphisms() {
                        let report = find_all_solutions(eq, &s, &sigma, &cfg);
                        systems += 1;
                        unclassified += report.unclassified.len();
                        println!(
                            "order={order} table={idx} sigma={sigma} eq={eq} solutions={} unclassified={}",
                            report.solutions.len(),
                            report.unclassified.len()
                        );
                    }
                }
            }
            println!("# swept {systems} systems: {unclassified} unclassified solutions");
            if unclassified == 0 {
                Ok(())
            } else {
                Err(Failure::Verification(format!("{unclassified} unclassified solutions")))
            }
        }
    }
}
