//! The five subcommand implementations. Each returns the process exit code
//! or a [`Failure`] carrying one.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use su2_factor::selftest::{self, random_pair};
use su2_factor::{
    canonicalize, factorize, haar_random_with, verify, CMatrix2, Factor, FactorSequence, Matrix3,
};

use crate::exit::{Failure, EXIT_PROPERTY_FAILURE};
use crate::problem::{repr_from_matrix, MatrixRepr, ProblemFile};
use crate::schedule::{write_atomic, ScheduleFile};

fn effective_tolerance(problem: &ProblemFile, tol: Option<f64>) -> Result<f64, Failure> {
    match tol {
        None => Ok(problem.tolerance),
        Some(t) if t > 0.0 => Ok(t),
        Some(t) => Err(Failure::usage(format!("--tol must be positive, got {t}"))),
    }
}

pub fn cmd_factorize(
    input: &Path,
    output: &Path,
    csv: bool,
    tol: Option<f64>,
) -> Result<u8, Failure> {
    let problem = ProblemFile::load(input)?;
    let target = problem.target_gate()?;
    let pair = problem.generator_pair()?;
    let bound = problem.bound()?;
    let tolerance = effective_tolerance(&problem, tol)?;

    let (seq, report) =
        factorize(&target, &pair, bound, tolerance).map_err(Failure::from_library)?;

    let schedule = ScheduleFile::from_result(&seq, &report);
    let contents = if csv { schedule.to_csv() } else { schedule.to_json() };
    write_atomic(output, &contents)?;

    println!("Q = {} (raw {})", report.q, report.q_raw);
    println!("residual = {:.6e}", report.residual);
    println!("wrote {}", output.display());
    Ok(0)
}

pub fn cmd_verify(input: &Path, schedule_path: &Path, tol: Option<f64>) -> Result<u8, Failure> {
    let problem = ProblemFile::load(input)?;
    let target = problem.target_gate()?;
    let pair = problem.generator_pair()?;
    let bound = problem.bound()?;
    let tolerance = effective_tolerance(&problem, tol)?;
    let schedule = ScheduleFile::load(schedule_path)?;

    let seq = FactorSequence {
        factors: schedule
            .factors
            .iter()
            .map(|r| Factor { a: r.a, b: r.b })
            .collect(),
        pair,
        bound_c: bound,
        residual: f64::NAN,
    };

    let violations = seq.condition_violations();
    let residual = verify(&target, &pair, &seq);
    println!("residual = {residual:.6e}");

    if !violations.is_empty() {
        for violation in &violations {
            eprintln!("condition violated: {violation}");
        }
        return Err(Failure::math(format!(
            "{} factor condition violation(s)",
            violations.len()
        )));
    }
    if residual > tolerance {
        return Err(Failure::math(format!(
            "residual {residual:.6e} exceeds tolerance {tolerance:.6e}"
        )));
    }
    Ok(0)
}

fn fmt_complex(c: su2_factor::Complex<f64>) -> String {
    format!("{:+.12}{:+.12}i", c.re, c.im)
}

fn print_cmatrix(label: &str, m: &CMatrix2) {
    println!("{label}:");
    for row in 0..2 {
        println!(
            "  [ {}  {} ]",
            fmt_complex(m[(row, 0)]),
            fmt_complex(m[(row, 1)])
        );
    }
}

fn print_rmatrix(label: &str, m: &Matrix3<f64>) {
    println!("{label}:");
    for row in 0..3 {
        println!(
            "  [ {:+.12}  {:+.12}  {:+.12} ]",
            m[(row, 0)],
            m[(row, 1)],
            m[(row, 2)]
        );
    }
}

#[derive(Serialize)]
struct FrameFile {
    conjugator: MatrixRepr,
    rotation: [[f64; 3]; 3],
    alpha_c: [f64; 3],
    beta_c: [f64; 3],
    mix: [[f64; 2]; 2],
    det_mix: f64,
}

pub fn cmd_canonicalize(input: &Path, output: Option<&PathBuf>) -> Result<u8, Failure> {
    let problem = ProblemFile::load(input)?;
    let pair = problem.generator_pair()?;
    let frame = canonicalize(&pair);

    print_cmatrix("conjugator V", frame.conjugator.matrix());
    print_rmatrix("rotation R (adjoint of V)", frame.rotation.matrix());
    println!("alpha_c = {}", frame.alpha_c);
    println!("beta_c  = {}", frame.beta_c);
    println!(
        "mix = [[{:+.12}, {:+.12}], [{:+.12}, {:+.12}]]",
        frame.mix[(0, 0)],
        frame.mix[(0, 1)],
        frame.mix[(1, 0)],
        frame.mix[(1, 1)]
    );
    println!("det mix = {:+.12}", frame.mix.determinant());

    if let Some(path) = output {
        let r = frame.rotation.matrix();
        let file = FrameFile {
            conjugator: repr_from_matrix(frame.conjugator.matrix()),
            rotation: [
                [r[(0, 0)], r[(0, 1)], r[(0, 2)]],
                [r[(1, 0)], r[(1, 1)], r[(1, 2)]],
                [r[(2, 0)], r[(2, 1)], r[(2, 2)]],
            ],
            alpha_c: [frame.alpha_c.x, frame.alpha_c.y, frame.alpha_c.z],
            beta_c: [frame.beta_c.x, frame.beta_c.y, frame.beta_c.z],
            mix: [
                [frame.mix[(0, 0)], frame.mix[(0, 1)]],
                [frame.mix[(1, 0)], frame.mix[(1, 1)]],
            ],
            det_mix: frame.mix.determinant(),
        };
        let mut text = serde_json::to_string_pretty(&file).expect("frame serializes");
        text.push('\n');
        write_atomic(path, &text)?;
        println!("wrote {}", path.display());
    }
    Ok(0)
}

pub fn cmd_selftest(trials: usize, seed: u64) -> Result<u8, Failure> {
    if trials == 0 {
        return Err(Failure::usage("--trials must be at least 1".to_string()));
    }
    let outcomes = selftest::run_all(trials, seed);
    let width = outcomes.iter().map(|o| o.name.len()).max().unwrap_or(0);
    let mut failed = 0;
    for outcome in &outcomes {
        println!(
            "{:<width$}  {:>6}/{}",
            outcome.name,
            outcome.passed,
            outcome.total,
            width = width
        );
        if !outcome.is_pass() {
            failed += 1;
            for failure in &outcome.failures {
                println!("  FAIL {}: {}", outcome.name, failure);
            }
        }
    }
    if failed == 0 {
        println!("selftest: PASS ({} suites, seed {seed})", outcomes.len());
        Ok(0)
    } else {
        println!(
            "selftest: FAIL ({failed}/{} suites, seed {seed})",
            outcomes.len()
        );
        Ok(EXIT_PROPERTY_FAILURE)
    }
}

struct StageClock {
    total: Duration,
    worst: Duration,
}

impl StageClock {
    fn new() -> Self {
        StageClock {
            total: Duration::ZERO,
            worst: Duration::ZERO,
        }
    }

    fn time<T>(&mut self, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        let elapsed = start.elapsed();
        self.total += elapsed;
        self.worst = self.worst.max(elapsed);
        out
    }

    fn print(&self, label: &str, trials: usize) {
        println!(
            "{label:<14} mean {:>9.1} us   worst {:>9.1} us",
            self.total.as_secs_f64() * 1e6 / trials as f64,
            self.worst.as_secs_f64() * 1e6
        );
    }
}

pub fn cmd_bench(trials: usize, seed: u64) -> Result<u8, Failure> {
    if trials == 0 {
        return Err(Failure::usage("--trials must be at least 1".to_string()));
    }
    let bounds = [0.05, 0.1, 0.5, 1.0, 2.0];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut canon_clock = StageClock::new();
    let mut factor_clock = StageClock::new();
    let mut verify_clock = StageClock::new();
    let mut q_total = 0usize;
    let mut q_max = 0usize;

    for trial in 0..trials {
        let target = haar_random_with(&mut rng);
        let pair = random_pair(&mut rng);
        let bound = bounds[trial % bounds.len()];

        canon_clock.time(|| canonicalize(&pair));
        let (seq, report) = factor_clock
            .time(|| factorize(&target, &pair, bound, 1e-9))
            .map_err(Failure::from_library)?;
        let residual = verify_clock.time(|| verify(&target, &pair, &seq));
        if residual > 1e-9 {
            return Err(Failure::math(format!(
                "trial {trial}: residual {residual:.3e}"
            )));
        }
        q_total += report.q;
        q_max = q_max.max(report.q);
    }

    println!("bench: {trials} trials, seed {seed}");
    canon_clock.print("canonicalize", trials);
    factor_clock.print("factorize", trials);
    verify_clock.print("verify", trials);
    println!(
        "factors: mean Q = {:.1}, max Q = {q_max}",
        q_total as f64 / trials as f64
    );
    Ok(0)
}
