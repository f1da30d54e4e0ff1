//! Acceptance: the command-line round trip, with tamper detection.
//!
//! Run with `-- --nocapture` to see the pass line.

use std::path::Path;
use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use su2_factor::{haar_random_with, GeneratorPair, Vec3};

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_su2-factor"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

fn sample_pair<R: Rng>(rng: &mut R) -> GeneratorPair {
    loop {
        let alpha = Vec3::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        let beta = Vec3::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        if alpha.cross(&beta).norm() > 1e-2 * alpha.norm() * beta.norm() {
            if let Ok(pair) = GeneratorPair::new(alpha, beta) {
                return pair;
            }
        }
    }
}

/// Criterion 7: factorize output passes verify on 50 generated problems, and
/// schedules with a negated area or an inflated amplitude exit 4.
#[test]
fn criterion_7_cli_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC11);
    let bounds = [0.05, 0.1, 0.5, 1.0, 2.0];

    let mut tampered_checks = 0;
    for trial in 0..50 {
        let target = haar_random_with(&mut rng);
        let pair = sample_pair(&mut rng);
        let bound = bounds[trial % bounds.len()];

        let m = target.matrix();
        let problem = json!({
            "target": [
                [[m[(0, 0)].re, m[(0, 0)].im], [m[(0, 1)].re, m[(0, 1)].im]],
                [[m[(1, 0)].re, m[(1, 0)].im], [m[(1, 1)].re, m[(1, 1)].im]]
            ],
            "generator_a": [pair.alpha().x, pair.alpha().y, pair.alpha().z],
            "generator_b": [pair.beta().x, pair.beta().y, pair.beta().z],
            "bound_c": bound,
        });
        std::fs::write(
            dir.path().join("problem.json"),
            serde_json::to_string(&problem).unwrap(),
        )
        .unwrap();

        let out = run(
            &["factorize", "problem.json", "--output", "schedule.json"],
            dir.path(),
        );
        assert_eq!(exit_code(&out), 0, "trial {trial}: factorize failed: {out:?}");

        let out = run(&["verify", "problem.json", "schedule.json"], dir.path());
        assert_eq!(exit_code(&out), 0, "trial {trial}: verify failed: {out:?}");

        // Tamper every tenth schedule both ways.
        if trial % 10 == 0 {
            let text = std::fs::read_to_string(dir.path().join("schedule.json")).unwrap();
            let schedule: serde_json::Value = serde_json::from_str(&text).unwrap();
            if schedule["q"].as_u64().unwrap() == 0 {
                continue;
            }

            let mut negated = schedule.clone();
            let a = negated["factors"][0]["a"].as_f64().unwrap();
            negated["factors"][0]["a"] = json!(-a);
            std::fs::write(dir.path().join("tampered.json"), negated.to_string()).unwrap();
            let out = run(&["verify", "problem.json", "tampered.json"], dir.path());
            assert_eq!(exit_code(&out), 4, "trial {trial}: negated a_k not caught");

            let mut inflated = schedule.clone();
            inflated["factors"][0]["b"] = json!(2.0 * bound);
            std::fs::write(dir.path().join("tampered.json"), inflated.to_string()).unwrap();
            let out = run(&["verify", "problem.json", "tampered.json"], dir.path());
            assert_eq!(exit_code(&out), 4, "trial {trial}: inflated b_k not caught");

            tampered_checks += 1;
        }
    }
    assert!(tampered_checks >= 5);
    println!(
        "criterion 7: PASS - 50 problems round-tripped through factorize and verify; \
         {tampered_checks} tampered schedules exited 4"
    );
}
