//! Adaptive Dormand-Prince 5(4) integration of `Ψ' = A(s)Ψ`, `Ψ(0) = I`,
//! over `s ∈ [0, 1]` for small dense complex matrices.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use super::KzError;

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
/// Fifth-order weights minus embedded fourth-order weights.
const E: [f64; 7] =
    [71.0 / 57600.0, 0.0, -71.0 / 16695.0, 71.0 / 1920.0, -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0];

const MIN_STEP: f64 = 1e-14;
const MAX_STEPS: usize = 1_000_000;
const INITIAL_STEP: f64 = 1.0 / 64.0;

/// Result of one transport.
#[derive(Debug, Clone, PartialEq)]
pub struct Transport {
    /// `Ψ(1)`, row-major `dim × dim`.
    pub psi: Vec<Complex64>,
    pub dim: usize,
    /// Sum of the accepted local error estimates.
    pub est_error: f64,
    pub steps: usize,
}

fn mat_mul(a: &[Complex64], y: &[Complex64], d: usize, out: &mut [Complex64]) {
    for r in 0..d {
        for c in 0..d {
            let mut s = Complex64::new(0.0, 0.0);
            for k in 0..d {
                s += a[r * d + k] * y[k * d + c];
            }
            out[r * d + c] = s;
        }
    }
}

/// Integrates with absolute and relative tolerance `tol`. `coefficient(s)`
/// returns `A(s)` row-major.
pub fn dopri5(
    dim: usize,
    tol: f64,
    mut coefficient: impl FnMut(f64) -> Result<Vec<Complex64>, KzError>,
) -> Result<Transport, KzError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(KzError::BadTolerance(tol));
    }
    let len = dim * dim;
    let mut y = vec![Complex64::new(0.0, 0.0); len];
    for k in 0..dim {
        y[k * dim + k] = Complex64::new(1.0, 0.0);
    }
    let mut k = vec![vec![Complex64::new(0.0, 0.0); len]; 7];
    let mut stage = vec![Complex64::new(0.0, 0.0); len];
    let mut s = 0.0;
    let mut h = INITIAL_STEP;
    let mut est_error = 0.0;
    let mut steps = 0;
    let mut attempts = 0;

    mat_mul(&coefficient(0.0)?, &y, dim, &mut k[0]);
    while s < 1.0 {
        attempts += 1;
        if attempts > MAX_STEPS {
            return Err(KzError::StepUnderflow { at: s });
        }
        let last = s + h >= 1.0;
        if last {
            h = 1.0 - s;
        }
        for st in 1..7 {
            for idx in 0..len {
                let mut acc = y[idx];
                for (j, kj) in k.iter().enumerate().take(st) {
                    if A[st][j] != 0.0 {
                        acc += kj[idx] * (h * A[st][j]);
                    }
                }
                stage[idx] = acc;
            }
            let a = coefficient(s + C[st] * h)?;
            let (head, tail) = k.split_at_mut(st);
            let _ = head;
            mat_mul(&a, &stage, dim, &mut tail[0]);
        }
        // stage now holds the fifth-order solution (FSAL row)
        let mut err = 0.0f64;
        let mut local = 0.0f64;
        for idx in 0..len {
            let mut delta = Complex64::new(0.0, 0.0);
            for (j, kj) in k.iter().enumerate() {
                if E[j] != 0.0 {
                    delta += kj[idx] * (h * E[j]);
                }
            }
            let scale = tol + tol * y[idx].norm().max(stage[idx].norm());
            err = err.max(delta.norm() / scale);
            local = local.max(delta.norm());
        }
        if !err.is_finite() || stage.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(KzError::NonFinite);
        }
        if err <= 1.0 {
            s = if last { 1.0 } else { s + h };
            y.copy_from_slice(&stage);
            let k6 = k[6].clone();
            k[0] = k6;
            est_error += local;
            steps += 1;
        }
        let factor = if err == 0.0 { 5.0 } else { (0.9 * Float::powf(err, -0.2)).clamp(0.2, 5.0) };
        h *= factor;
        if s < 1.0 && h < MIN_STEP {
            return Err(KzError::StepUnderflow { at: s });
        }
    }
    Ok(Transport { psi: y, dim, est_error, steps })
}
