//! The factorization pipeline.
//!
//! A target `S` in SU(2) and a linearly independent generator pair `(A, B)`
//! go in; an ordered list of coefficient pairs `(a_k, b_k)` comes out with
//!
//! ```text
//! S = prod_k exp(a_k * M(alpha) + b_k * M(beta)),   a_k > 0,  |b_k| <= C
//! ```
//!
//! for a caller-prescribed bound `C`. The pipeline: conjugate the pair into
//! the xy-plane, Euler-decompose the conjugated target along a rotated
//! in-plane axis pair, solve each factor against the mixing matrix, rescale
//! sign-degenerate factors through the 2-pi periodicity of the exponential,
//! split factors whose second coefficient exceeds the bound, and finally
//! merge adjacent proportional factors back together. Coefficients transfer
//! to the original frame unchanged because the conjugations telescope.

use std::f64::consts::{PI, TAU};

use nalgebra::Matrix2;

use crate::canonical::{canonicalize, GeneratorPair};
use crate::error::{Error, Result};
use crate::su2::{expm_su2, frobenius_distance, UnitaryGate, Vec3};

/// Euler angles this close to 0 or 2*pi yield identity factors and are dropped.
const NULL_ANGLE_TOL: f64 = 1e-13;

/// Relative gate below which a factor direction counts as having no
/// first-generator component.
const DEGENERATE_TOL: f64 = 1e-9;

/// Relative margin every factor of the chosen frame angle must clear.
const FRAME_MARGIN_TOL: f64 = 1e-6;

/// Number of candidate frame angles scanned over `[0, pi)`.
const FRAME_GRID: usize = 64;

/// Relative gate on the coefficient cross product for merging.
const MERGE_TOL: f64 = 1e-12;

/// Relative gate on the mixing-matrix determinant. The independence gate on
/// the pair is relative, so this one is too: it scales with the column norms.
const SINGULAR_TOL: f64 = 1e-10;

/// One factor `exp(a * M(alpha) + b * M(beta))` of the product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Factor {
    /// Coefficient of the first generator; positive in any valid sequence.
    pub a: f64,
    /// Coefficient of the second generator; bounded by the owning sequence.
    pub b: f64,
}

impl Factor {
    pub fn norm(&self) -> f64 {
        self.a.hypot(self.b)
    }
}

/// An ordered factorization together with the data needed to replay it.
#[derive(Debug, Clone)]
pub struct FactorSequence {
    pub factors: Vec<Factor>,
    pub pair: GeneratorPair,
    pub bound_c: f64,
    /// Reassembly residual measured when the sequence was produced.
    pub residual: f64,
}

impl FactorSequence {
    /// Human-readable violations of the sign and bound conditions, empty when
    /// the sequence is valid. Sequences are plain data, so a consumer that
    /// did not produce one (e.g. a verifier reading a file) re-checks here.
    pub fn condition_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (k, f) in self.factors.iter().enumerate() {
            // NaN fails both gates.
            let positive = f.a > 0.0;
            let bounded = f.b.abs() <= self.bound_c;
            if !positive {
                out.push(format!("factor {}: a = {} violates a > 0", k + 1, f.a));
            }
            if !bounded {
                out.push(format!(
                    "factor {}: |b| = {} exceeds bound {}",
                    k + 1,
                    f.b.abs(),
                    self.bound_c
                ));
            }
        }
        out
    }
}

/// Summary of one factorization run.
#[derive(Debug, Clone, Copy)]
pub struct DecompositionReport {
    /// Factor count before merging.
    pub q_raw: usize,
    /// Factor count after merging; never exceeds `q_raw`.
    pub q: usize,
    /// Frobenius distance between the reassembled product and the target.
    pub residual: f64,
    /// In-plane Euler axis angle chosen for the canonical frame.
    pub frame_angle: f64,
    /// Conjugator that carried the pair into the canonical frame.
    pub conjugator: UnitaryGate,
}

fn normalize_angle(t: f64) -> f64 {
    let r = t % TAU;
    if r < 0.0 {
        r + TAU
    } else {
        r
    }
}

fn push_nonzero(parts: &mut Vec<Vec3>, angle: f64, axis: Vec3) {
    if angle > NULL_ANGLE_TOL && TAU - angle > NULL_ANGLE_TOL {
        parts.push(axis * angle);
    }
}

/// Euler decomposition of `target` along the rotated in-plane axes
/// `X' = (cos psi, sin psi, 0)` and `Y' = (-sin psi, cos psi, 0)`, in
/// X'-Y'-X' order. Zero factors are omitted, so the result has at most three
/// entries (and none for the identity); every returned angle lies in
/// `(0, 2*pi)` and every returned vector has zero z-component.
pub fn euler_inplane(target: &UnitaryGate, psi: f64) -> Vec<Vec3> {
    debug_assert!((0.0..PI).contains(&psi), "frame angle out of [0, pi)");

    // Conjugating by exp(M(0,0,psi/2)) turns X' into e_x and Y' into e_y,
    // reducing the problem to a plain XYX decomposition.
    let w = expm_su2(Vec3::new(0.0, 0.0, psi / 2.0));
    let tilted = target.conjugate_by(&w);
    let m = tilted.matrix();

    // Quaternion components of the tilted target under the crate convention.
    let q0 = (m[(0, 0)].re + m[(1, 1)].re) / 2.0;
    let q1 = (m[(0, 1)].im + m[(1, 0)].im) / 2.0;
    let q2 = (m[(0, 1)].re - m[(1, 0)].re) / 2.0;
    let q3 = (m[(0, 0)].im - m[(1, 1)].im) / 2.0;

    // For U = X(t1) Y(t2) X(t3):
    //   (q0, q1) = cos(t2) * (cos(t1 + t3), sin(t1 + t3))
    //   (q2, q3) = sin(t2) * (cos(t1 - t3), -sin(t1 - t3))
    let in_plane = q0.hypot(q1);
    let out_of_plane = q2.hypot(q3);
    let middle = out_of_plane.atan2(in_plane);

    let x_axis = Vec3::new(psi.cos(), psi.sin(), 0.0);
    let y_axis = Vec3::new(-psi.sin(), psi.cos(), 0.0);

    let mut parts = Vec::with_capacity(3);
    if middle < NULL_ANGLE_TOL {
        // Pure X'-rotation: a single factor carries the whole angle.
        push_nonzero(&mut parts, normalize_angle(q1.atan2(q0)), x_axis);
    } else {
        let sum = q1.atan2(q0);
        let diff = (-q3).atan2(q2);
        push_nonzero(&mut parts, normalize_angle((sum + diff) / 2.0), x_axis);
        push_nonzero(&mut parts, middle, y_axis);
        push_nonzero(&mut parts, normalize_angle((sum - diff) / 2.0), x_axis);
    }
    parts
}

/// Solves `mix * (a, b)^T = (w.x, w.y)^T` for the raw coefficients of an
/// in-plane factor direction.
pub fn solve_coefficients(w: Vec3, mix: &Matrix2<f64>) -> Result<(f64, f64)> {
    let (a, c, b, d) = (mix[(0, 0)], mix[(0, 1)], mix[(1, 0)], mix[(1, 1)]);
    let det = a * d - c * b;
    let scale = a.hypot(b) * c.hypot(d);
    if det.abs() <= SINGULAR_TOL * scale || scale == 0.0 {
        return Err(Error::SingularMixing { det });
    }
    Ok(((d * w.x - c * w.y) / det, (a * w.y - b * w.x) / det))
}

/// Rescales a factor so its first coefficient is positive without changing
/// its exponential.
///
/// `exp(M(w))` depends on `w` only through `|w| mod 2*pi` along the ray of
/// `w`, so scaling by `lambda = 1 - 2*pi/|w|` (negative, with `|lambda w| =
/// 2*pi - |w|`) flips every coefficient sign while fixing the group element.
/// Applied exactly when the raw first coefficient is negative.
pub fn enforce_positivity(w: Vec3, a_raw: f64, b_raw: f64) -> Result<(Vec3, f64, f64)> {
    let r = w.norm();
    debug_assert!(r > 0.0 && r < TAU, "factor radius {r} out of (0, 2*pi)");

    let scale = a_raw.hypot(b_raw);
    if a_raw.abs() <= DEGENERATE_TOL * scale {
        return Err(Error::DegenerateDirection {
            a_component: a_raw.abs(),
            scale,
        });
    }
    if a_raw > 0.0 {
        Ok((w, a_raw, b_raw))
    } else {
        let lambda = 1.0 - TAU / r;
        Ok((w * lambda, lambda * a_raw, lambda * b_raw))
    }
}

/// Splits one factor into `m = ceil(|b|/C)` identical pieces `(a/m, b/m)`.
///
/// The pieces commute (they exponentiate the same algebra element), so the
/// product is exact and `m` is the smallest count meeting the bound with
/// proportional pieces. The comparison that fixes `m` uses the same floating
/// division that produces the stored coefficients, so `|b_k| <= C` holds as
/// an exact float comparison afterwards.
pub fn split_for_bound(a: f64, b: f64, bound_c: f64) -> Vec<Factor> {
    debug_assert!(a > 0.0 && bound_c > 0.0);
    let mut m = (b.abs() / bound_c).ceil().max(1.0) as usize;
    while (b / m as f64).abs() > bound_c {
        m += 1;
    }
    vec![
        Factor {
            a: a / m as f64,
            b: b / m as f64,
        };
        m
    ]
}

/// Scans 64 uniform angles over `[0, pi)` and returns the one maximizing the
/// worst relative first-coefficient margin over the Euler factors of
/// `target`, ties broken toward the smallest angle.
///
/// A direction with no first-generator component makes the sign condition
/// unreachable by rescaling; for any single factor that happens at isolated
/// angles only, so the scan escapes it. `NoViableFrame` is returned if every
/// grid angle is degenerate.
pub fn choose_frame_angle(target: &UnitaryGate, mix: &Matrix2<f64>) -> Result<f64> {
    let mut best: Option<(f64, f64)> = None;
    for j in 0..FRAME_GRID {
        let psi = j as f64 * PI / FRAME_GRID as f64;
        let mut margin = f64::INFINITY;
        for w in euler_inplane(target, psi) {
            let (a_raw, b_raw) = solve_coefficients(w, mix)?;
            let scale = a_raw.hypot(b_raw);
            let factor_margin = if scale > 0.0 { a_raw.abs() / scale } else { 0.0 };
            margin = margin.min(factor_margin);
        }
        if best.is_none_or(|(_, m)| margin > m) {
            best = Some((psi, margin));
        }
    }
    let (psi, margin) = best.expect("grid is never empty");
    if margin > FRAME_MARGIN_TOL {
        Ok(psi)
    } else {
        Err(Error::NoViableFrame)
    }
}

fn proportional(f: &Factor, g: &Factor) -> bool {
    let cross = f.a * g.b - g.a * f.b;
    let dot = f.a * g.a + f.b * g.b;
    cross.abs() <= MERGE_TOL * f.norm() * g.norm() && dot > 0.0
}

/// Greedily merges adjacent factors whose coefficient pairs are positive
/// multiples of each other, whenever the sum still meets the bound.
///
/// Proportional factors exponentiate proportional algebra elements, which
/// commute, so the reassembled product is unchanged and the factor count
/// never grows. Runs to a fixpoint. The `residual` field is carried over
/// from the input; reassembly moves by at most the merge tolerance.
pub fn merge_adjacent(seq: &FactorSequence) -> FactorSequence {
    let mut factors = seq.factors.clone();
    let mut changed = true;
    while changed {
        changed = false;
        let mut merged: Vec<Factor> = Vec::with_capacity(factors.len());
        for f in factors {
            if let Some(last) = merged.last_mut() {
                if proportional(last, &f) && (last.b + f.b).abs() <= seq.bound_c {
                    last.a += f.a;
                    last.b += f.b;
                    changed = true;
                    continue;
                }
            }
            merged.push(f);
        }
        factors = merged;
    }
    FactorSequence {
        factors,
        pair: seq.pair,
        bound_c: seq.bound_c,
        residual: seq.residual,
    }
}

/// Recomputes the product of a sequence by direct multiplication and returns
/// its Frobenius distance to `target`. Pure: no reference to how the
/// sequence was produced.
pub fn verify(target: &UnitaryGate, pair: &GeneratorPair, seq: &FactorSequence) -> f64 {
    let mut product = UnitaryGate::identity();
    for f in &seq.factors {
        product = product * expm_su2(pair.alpha() * f.a + pair.beta() * f.b);
    }
    frobenius_distance(target, &product)
}

/// Full pipeline: factorizes `target` over `pair` with every first
/// coefficient positive and every second coefficient bounded by `bound_c`
/// in magnitude.
///
/// The returned sequence reassembles `target` within `tolerance`; a miss is
/// reported as `VerificationFailed`, never silently. Unitarity of the target
/// is enforced by `UnitaryGate` construction.
pub fn factorize(
    target: &UnitaryGate,
    pair: &GeneratorPair,
    bound_c: f64,
    tolerance: f64,
) -> Result<(FactorSequence, DecompositionReport)> {
    let bound_valid = bound_c > 0.0; // NaN fails
    if !bound_valid {
        return Err(Error::InvalidBound { value: bound_c });
    }

    let frame = canonicalize(pair);
    let canonical_target = target.conjugate_by(&frame.conjugator);
    let frame_angle = choose_frame_angle(&canonical_target, &frame.mix)?;

    let mut factors = Vec::new();
    for w in euler_inplane(&canonical_target, frame_angle) {
        let (a_raw, b_raw) = solve_coefficients(w, &frame.mix)?;
        let (_, a, b) = enforce_positivity(w, a_raw, b_raw)?;
        factors.extend(split_for_bound(a, b, bound_c));
    }
    let q_raw = factors.len();

    let raw = FactorSequence {
        factors,
        pair: *pair,
        bound_c,
        residual: f64::NAN,
    };
    let mut seq = merge_adjacent(&raw);
    seq.residual = verify(target, pair, &seq);

    if seq.residual > tolerance {
        return Err(Error::VerificationFailed {
            residual: seq.residual,
            tolerance,
        });
    }
    let report = DecompositionReport {
        q_raw,
        q: seq.factors.len(),
        residual: seq.residual,
        frame_angle,
        conjugator: frame.conjugator,
    };
    Ok((seq, report))
}
