//! Built-in property suites, deterministic for a fixed seed.
//!
//! Each suite replays one of the library's contracts over randomized inputs
//! and reports how many trials passed; the CLI exposes them through the
//! `selftest` subcommand so an installed binary can vouch for itself.

use std::f64::consts::{PI, TAU};

use nalgebra::Matrix3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::canonical::{adjoint_rotation, canonicalize, lift_rotation, GeneratorPair};
use crate::factor::{
    choose_frame_angle, enforce_positivity, euler_inplane, factorize, merge_adjacent,
    solve_coefficients, split_for_bound, verify, FactorSequence,
};
use crate::su2::{
    expm_su2, frobenius_distance, haar_random_with, matrix_to_vec, trace_inner, vec_to_matrix,
    CMatrix2, SkewMatrix, UnitaryGate, Vec3,
};

/// Sampled pairs are re-drawn while `|alpha x beta| <= NEAR_DEPENDENCE *
/// |alpha||beta|`; factorizing an almost-dependent pair is legal but its
/// coefficients (and factor counts) blow up like the reciprocal of this gap.
const NEAR_DEPENDENCE: f64 = 1e-2;

/// Bounds cycled through by the end-to-end suites.
const BOUND_GRID: [f64; 5] = [0.05, 0.1, 0.5, 1.0, 2.0];

/// Outcome of one suite.
#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub passed: usize,
    pub total: usize,
    /// First few failure descriptions, each naming the trial index.
    pub failures: Vec<String>,
}

impl SuiteOutcome {
    pub fn is_pass(&self) -> bool {
        self.passed == self.total
    }
}

const MAX_REPORTED_FAILURES: usize = 5;

struct Suite {
    outcome: SuiteOutcome,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite {
            outcome: SuiteOutcome {
                name,
                passed: 0,
                total: 0,
                failures: Vec::new(),
            },
        }
    }

    fn record(&mut self, index: usize, check: std::result::Result<(), String>) {
        self.outcome.total += 1;
        match check {
            Ok(()) => self.outcome.passed += 1,
            Err(msg) => {
                if self.outcome.failures.len() < MAX_REPORTED_FAILURES {
                    self.outcome.failures.push(format!("trial {index}: {msg}"));
                }
            }
        }
    }
}

pub fn random_vec3<R: Rng + ?Sized>(rng: &mut R) -> Vec3 {
    Vec3::new(
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
    )
}

/// Uniform components in [-1, 1], rejecting near-dependent draws.
pub fn random_pair<R: Rng + ?Sized>(rng: &mut R) -> GeneratorPair {
    loop {
        let alpha = random_vec3(rng);
        let beta = random_vec3(rng);
        if alpha.cross(&beta).norm() > NEAR_DEPENDENCE * alpha.norm() * beta.norm() {
            if let Ok(pair) = GeneratorPair::new(alpha, beta) {
                return pair;
            }
        }
    }
}

/// In-plane pair with upward normal, so the canonical frame is trivial.
pub fn random_canonical_pair<R: Rng + ?Sized>(rng: &mut R) -> GeneratorPair {
    loop {
        let alpha = Vec3::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), 0.0);
        let beta = Vec3::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), 0.0);
        let cross = alpha.cross(&beta);
        if cross.norm() > NEAR_DEPENDENCE * alpha.norm() * beta.norm() {
            let (alpha, beta) = if cross.z > 0.0 { (alpha, beta) } else { (beta, alpha) };
            if let Ok(pair) = GeneratorPair::new(alpha, beta) {
                return pair;
            }
        }
    }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Truncated Taylor series of `exp(M(v))`, the reference the closed form is
/// checked against.
fn expm_taylor(v: Vec3, terms: usize) -> CMatrix2 {
    let m = *vec_to_matrix(v).matrix();
    let mut sum = CMatrix2::identity();
    let mut power = CMatrix2::identity();
    for n in 1..terms {
        power = power * m / nalgebra::Complex::new(n as f64, 0.0);
        sum += power;
    }
    sum
}

fn suite_round_trip(trials: usize, seed: u64) -> SuiteOutcome {
    let mut suite = Suite::new("su2/round-trip");
    let mut rng = rng_for(seed, 0);
    for i in 0..trials {
        let v = random_vec3(&mut rng) * 10.0;
        let back = matrix_to_vec(&vec_to_matrix(v));
        let err = (back - v).norm();
        let gate = 1e-14 * v.norm().max(1e-300);
        suite.record(i, if err <= gate {
            Ok(())
        } else {
            Err(format!("round trip moved {v} by {err:.3e}"))
        });
    }
    suite.outcome
}

fn suite_expm_taylor(trials: usize, seed: u64) -> SuiteOutcome {
    let mut suite = Suite::new("su2/expm-taylor");
    let mut rng = rng_for(seed, 1);
    for i in 0..trials {
        let dir = random_vec3(&mut rng);
        let v = if dir.norm() > 0.0 {
            dir * (rng.random_range(0.0..PI) / dir.norm())
        } else {
            Vec3::ZERO
        };
        let err = (expm_su2(v).matrix() - expm_taylor(v, 25)).norm();
        suite.record(i, if err <= 1e-12 {
            Ok(())
        } else {
            Err(format!("closed form differs from Taylor by {err:.3e} at {v}"))
        });
    }
    suite.outcome
}

fn suite_expm_periodicity(trials: usize, seed: u64) -> SuiteOutcome {
    let mut suite = Suite::new("su2/expm-periodicity");
    let mut rng = rng_for(seed, 2);
    for i in 0..trials {
        let dir = random_vec3(&mut rng);
        if dir.norm() == 0.0 {
            suite.record(i, Ok(()));
            continue;
        }
        let r = rng.random_range(0.1..6.0);
        let v = dir * (r / dir.norm());
        let err = frobenius_distance(&expm_su2(v), &expm_su2(v * (1.0 + TAU / r)));
        suite.record(i, if err <= 1e-12 {
            Ok(())
        } else {
            Err(format!("period shift moved exp by {err:.3e} at r = {r}"))
        });
    }
    suite.outcome
}

fn suite_inner_product(trials: usize, seed: u64) -> SuiteOutcome {
    let mut suite = Suite::new("su2/inner-product");
    let mut rng = rng_for(seed, 3);
    for i in 0..trials {
        let v = random_vec3(&mut rng) * 3.0;
        let w = random_vec3(&mut rng) * 3.0;
        let lhs = trace_inner(&vec_to_matrix(v), &vec_to_matrix(w));
        let err = (lhs - 2.0 * v.dot(&w)).abs();
        suite.record(i, if err <= 1e-12 {
            Ok(())
        } else {
            Err(format!("trace inner product off by {err:.3e}"))
        });
    }
    suite.outcome
}

fn suite_haar_moment(trials: usize, seed: u64) -> SuiteOutcome {
    let mut suite = Suite::new("su2/haar-moment");
    let mut rng = rng_for(seed, 4);
    // One aggregate check; the moment needs a large sample to stabilize.
    let samples = trials.max(10_000);
    let mean = (0..samples)
        .map(|_| haar_random_with(&mut rng).trace().norm_sqr())
        .sum::<f64>()
        / samples as f64;
    suite.record(0, if (mean - 1.0).abs() <= 0.05 {
        Ok(())
    } else {
        Err(format!("mean |tr U|^2 = {mean:.4} over {samples} samples"))
    });
    suite.outcome
}

fn suite_double_cover(trials: usize, seed: u64) -> SuiteOutcome {
    let mut suite = Suite::new("canonical/double-cover");
    let mut rng = rng_for(seed, 5);
    for i in 0..trials {
        let v = haar_random_with(&mut rng);
        let plus = adjoint_rotation(&v);
        let minus = adjoint_rotation(&-v);
        suite.record(i, if plus.matrix() == minus.matrix() {
            Ok(())
        } else {
            Err("adjoints of V and -V differ".to_string())
        });
    }
    suite.outcome
}

fn suite_homomorphism(trials: usize, seed: u64) -> SuiteOutcome {
    let mut suite = Suite::new("canonical/homomorphism");
    let mut rng = rng_for(seed, 6);
    for i in 0..trials {
        let v = haar_random_with(&mut rng);
        let w = haar_random_with(&mut rng);
        let lhs = adjoint_rotation(&(v * w));
        let rhs = adjoint_rotation(&v).matrix() * adjoint_rotation(&w).matrix();
        let err = (lhs.matrix() - rhs).norm();
        suite.record(i, if err <= 1e-12 {
            Ok(())
        } else {
            Err(format!("homomorphism residual {err:.3e}"))
        });
    }
    suite.outcome
}

fn suite_lift_round_trip(trials: usize, seed: u64) -> SuiteOutcome {
    let mut suite = Suite::new("canonical/lift-round-trip");
    let mut rng = rng_for(seed, 7);
    for i in 0..trials {
        let r = adjoint_rotation(&haar_random_with(&mut rng));
        let err = (adjoint_rotation(&lift_rotation(&r)).matrix() - r.matrix()).norm();
        suite.record(i, if err <= 1e-10 {
            Ok(())
        } else {
            Err(format!("lift round trip residual {err:.3e}"))
        });
    }
    suite.outcome
}

fn suite_nulling(trials: usize, seed: u64) -> SuiteOutcome {
    let mut suite = Suite::new("canonical/nulling");
    let mut rng = rng_for(seed, 8);
    for i in 0..trials {
        let pair = random_pair(&mut rng);
        let frame = canonicalize(&pair);
        let mut problems = Vec::new();
        if frame.alpha_c.z.abs() > 1e-10 * pair.alpha().norm() {
            problems.push(format!("alpha_c.z = {:.3e}", frame.alpha_c.z));
        }
        if frame.beta_c.z.abs() > 1e-10 * pair.beta().norm() {
            problems.push(format!("beta_c.z = {:.3e}", frame.beta_c.z));
        }
        let det_err = (frame.mix.determinant().abs() - pair.cross_norm()).abs();
        if det_err > 1e-10 {
            problems.push(format!("det(mix) off cross norm by {det_err:.3e}"));
        }
        suite.record(i, if problems.is_empty() {
            Ok(())
        } else {
            Err(problems.join("; "))
        });
    }
    suite.outcome
}

fn suite_conjugation(trials: usize, seed: u64) -> SuiteOutcome {
    let mut suite = Suite::new("canonical/conjugation");
    let mut rng = rng_for(seed, 9);
    for i in 0..trials {
        let pair = random_pair(&mut rng);
        let frame = canonicalize(&pair);
        let conj = frame.conjugator.matrix() * vec_to_matrix(pair.alpha()).matrix()
            * frame.conjugator.matrix().adjoint();
        let picture = match SkewMatrix::new(conj) {
            Ok(skew) => matrix_to_vec(&skew),
            Err(e) => {
                suite.record(i, Err(format!("conjugation left su(2): {e}")));
                continue;
            }
        };
        let err = (picture - frame.alpha_c).norm();
        suite.record(i, if err <= 1e-10 {
            Ok(())
        } else {
            Err(format!("matrix and vector pictures differ by {err:.3e}"))
        });
    }
    suite.outcome
}

fn suite_positivity(trials: usize, seed: u64) -> SuiteOutcome {
    let mut suite = Suite::new("factor/positivity");
    let mut rng = rng_for(seed, 10);
    for i in 0..trials {
        let angle = rng.random_range(0.0..TAU);
        let r = rng.random_range(1e-3..TAU - 1e-3);
        let w = Vec3::new(angle.cos() * r, angle.sin() * r, 0.0);
        let a_raw: f64 = rng.random_range(-1.0..1.0);
        let b_raw: f64 = rng.random_range(-1.0..1.0);
        if a_raw.abs() <= 1e-6 * a_raw.hypot(b_raw) {
            suite.record(i, Ok(()));
            continue;
        }
        match enforce_positivity(w, a_raw, b_raw) {
            Ok((w2, a, _)) => {
                let err = frobenius_distance(&expm_su2(w2), &expm_su2(w));
                suite.record(i, if a > 0.0 && err <= 1e-12 {
                    Ok(())
                } else {
                    Err(format!("a = {a}, exp moved by {err:.3e}"))
                });
            }
            Err(e) => suite.record(i, Err(format!("unexpected error: {e}"))),
        }
    }
    suite.outcome
}

fn end_to_end_check<R: Rng + ?Sized>(
    rng: &mut R,
    index: usize,
    pair: GeneratorPair,
) -> std::result::Result<(), String> {
    let target = haar_random_with(rng);
    let bound = BOUND_GRID[index % BOUND_GRID.len()];
    let (seq, report) =
        factorize(&target, &pair, bound, 1e-9).map_err(|e| format!("factorize failed: {e}"))?;
    let residual = verify(&target, &pair, &seq);
    if residual > 1e-9 {
        return Err(format!("residual {residual:.3e}"));
    }
    if (residual - report.residual).abs() > 1e-14 {
        return Err("report residual disagrees with verify".to_string());
    }
    for f in &seq.factors {
        if f.a < 1e-12 {
            return Err(format!("a = {} under the positivity floor", f.a));
        }
        if f.b.abs() > bound {
            return Err(format!("|b| = {} over bound {bound}", f.b.abs()));
        }
    }
    Ok(())
}

fn suite_end_to_end(trials: usize, seed: u64) -> SuiteOutcome {
    let mut suite = Suite::new("factor/end-to-end");
    let mut rng = rng_for(seed, 11);
    for i in 0..trials {
        let pair = random_pair(&mut rng);
        let check = end_to_end_check(&mut rng, i, pair);
        suite.record(i, check);
    }
    suite.outcome
}

fn suite_canonical_frame(trials: usize, seed: u64) -> SuiteOutcome {
    let mut suite = Suite::new("factor/canonical-frame");
    let mut rng = rng_for(seed, 12);
    for i in 0..trials {
        let pair = random_canonical_pair(&mut rng);
        let frame = canonicalize(&pair);
        let id = UnitaryGate::identity();
        let v_dist = frobenius_distance(&frame.conjugator, &id)
            .min(frobenius_distance(&frame.conjugator, &-id));
        if v_dist > 1e-12 {
            suite.record(i, Err(format!("conjugator is {v_dist:.3e} from both covers of I")));
            continue;
        }
        let check = end_to_end_check(&mut rng, i, pair);
        suite.record(i, check);
    }
    suite.outcome
}

/// Replays the pre-merge pipeline so the raw sequence is observable.
fn raw_sequence(
    target: &UnitaryGate,
    pair: &GeneratorPair,
    bound: f64,
) -> std::result::Result<FactorSequence, String> {
    let frame = canonicalize(pair);
    let canonical_target = target.conjugate_by(&frame.conjugator);
    let psi = choose_frame_angle(&canonical_target, &frame.mix).map_err(|e| e.to_string())?;
    let mut factors = Vec::new();
    for w in euler_inplane(&canonical_target, psi) {
        let (a_raw, b_raw) = solve_coefficients(w, &frame.mix).map_err(|e| e.to_string())?;
        let (_, a, b) = enforce_positivity(w, a_raw, b_raw).map_err(|e| e.to_string())?;
        factors.extend(split_for_bound(a, b, bound));
    }
    Ok(FactorSequence {
        factors,
        pair: *pair,
        bound_c: bound,
        residual: f64::NAN,
    })
}

fn suite_merge(trials: usize, seed: u64) -> SuiteOutcome {
    let mut suite = Suite::new("factor/merge");
    let mut rng = rng_for(seed, 13);
    for i in 0..trials {
        let pair = random_pair(&mut rng);
        let target = haar_random_with(&mut rng);
        let bound = BOUND_GRID[i % BOUND_GRID.len()];
        let check = raw_sequence(&target, &pair, bound).and_then(|raw| {
            let merged = merge_adjacent(&raw);
            let drift = (verify(&target, &pair, &merged) - verify(&target, &pair, &raw)).abs();
            if merged.factors.len() <= raw.factors.len() && drift <= 1e-12 {
                Ok(())
            } else {
                Err(format!(
                    "q {} -> {}, residual drift {drift:.3e}",
                    raw.factors.len(),
                    merged.factors.len()
                ))
            }
        });
        suite.record(i, check);
    }
    suite.outcome
}

fn suite_split_merge(trials: usize, seed: u64) -> SuiteOutcome {
    let mut suite = Suite::new("factor/split-merge");
    let mut rng = rng_for(seed, 14);
    for i in 0..trials {
        let pair = random_pair(&mut rng);
        let a: f64 = rng.random_range(0.05..6.0);
        let b: f64 = rng.random_range(-2.0..2.0);
        let small: f64 = rng.random_range(0.01..0.5);
        let original = b.abs().max(small) * (1.0 + rng.random_range(0.0..1.0));
        let seq = FactorSequence {
            factors: split_for_bound(a, b, small),
            pair,
            bound_c: original,
            residual: 0.0,
        };
        let merged = merge_adjacent(&seq);
        let ok = merged.factors.len() == 1
            && (merged.factors[0].a - a).abs() <= 1e-14 * a.max(1.0)
            && (merged.factors[0].b - b).abs() <= 1e-14 * b.abs().max(1.0);
        suite.record(i, if ok {
            Ok(())
        } else {
            Err(format!(
                "split at {small} then merge at {original} gave {} factors",
                merged.factors.len()
            ))
        });
    }
    suite.outcome
}

fn suite_staircase(trials: usize, seed: u64) -> SuiteOutcome {
    let mut suite = Suite::new("factor/staircase");
    let mut rng = rng_for(seed, 15);
    let instances = trials.clamp(1, 20);
    for i in 0..instances {
        let pair = random_pair(&mut rng);
        let target = haar_random_with(&mut rng);
        let mut last_q = usize::MAX;
        let mut check = Ok(());
        for bound in [0.05, 0.1, 0.2, 0.4, 0.8] {
            match factorize(&target, &pair, bound, 1e-9) {
                Ok((_, report)) => {
                    if report.q > last_q {
                        check = Err(format!(
                            "q grew from {last_q} to {} when C reached {bound}",
                            report.q
                        ));
                        break;
                    }
                    last_q = report.q;
                }
                Err(e) => {
                    check = Err(format!("factorize failed at C = {bound}: {e}"));
                    break;
                }
            }
        }
        suite.record(i, check);
    }
    suite.outcome
}

fn suite_adjoint_orthogonality(trials: usize, seed: u64) -> SuiteOutcome {
    let mut suite = Suite::new("canonical/adjoint-so3");
    let mut rng = rng_for(seed, 16);
    for i in 0..trials {
        let r = adjoint_rotation(&haar_random_with(&mut rng));
        let ortho = (r.matrix() * r.matrix().transpose() - Matrix3::identity()).norm();
        let det = (r.matrix().determinant() - 1.0).abs();
        suite.record(i, if ortho <= 1e-12 && det <= 1e-12 {
            Ok(())
        } else {
            Err(format!("orthogonality {ortho:.3e}, det residual {det:.3e}"))
        });
    }
    suite.outcome
}

/// Runs every suite with the given trial budget; deterministic in `seed`.
pub fn run_all(trials: usize, seed: u64) -> Vec<SuiteOutcome> {
    vec![
        suite_round_trip(trials, seed),
        suite_expm_taylor(trials, seed),
        suite_expm_periodicity(trials, seed),
        suite_inner_product(trials, seed),
        suite_haar_moment(trials, seed),
        suite_double_cover(trials, seed),
        suite_homomorphism(trials, seed),
        suite_adjoint_orthogonality(trials, seed),
        suite_lift_round_trip(trials, seed),
        suite_nulling(trials, seed),
        suite_conjugation(trials, seed),
        suite_positivity(trials, seed),
        suite_end_to_end(trials, seed),
        suite_canonical_frame(trials, seed),
        suite_merge(trials, seed),
        suite_split_merge(trials, seed),
        suite_staircase(trials, seed),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass_at_modest_trial_counts() {
        for outcome in run_all(50, 1) {
            assert!(
                outcome.is_pass(),
                "suite {} failed: {:?}",
                outcome.name,
                outcome.failures
            );
        }
    }

    #[test]
    fn outcomes_are_deterministic() {
        let a = run_all(10, 7);
        let b = run_all(10, 7);
        for (x, y) in a.iter().zip(b.iter()) {
            assert_eq!(x.name, y.name);
            assert_eq!(x.passed, y.passed);
            assert_eq!(x.total, y.total);
            assert_eq!(x.failures, y.failures);
        }
    }
}
