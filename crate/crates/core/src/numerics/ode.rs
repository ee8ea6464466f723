//! Embedded Dormand-Prince 5(4) integrator over a real parameter with a
//! complex state vector. Complex-time contours are handled by folding the
//! contour map t(s) and its derivative into the right-hand side.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OdeError {
    #[error(
        "step size underflow at s = {s:.9e} (h = {h:.3e}); \
         state = {state:?}"
    )]
    StepUnderflow {
        s: f64,
        h: f64,
        state: Vec<Complex64>,
    },
    #[error("right-hand side returned a non-finite value at s = {s:.9e}")]
    NonFinite { s: f64 },
    #[error("exceeded {0} steps")]
    TooManySteps(usize),
}

/// One accepted step of the solution.
#[derive(Debug, Clone)]
pub struct OdeSample<const N: usize> {
    pub s: f64,
    pub y: [Complex64; N],
}

#[derive(Debug, Clone)]
pub struct OdeSolution<const N: usize> {
    pub samples: Vec<OdeSample<N>>,
    pub steps_accepted: usize,
    pub steps_rejected: usize,
}

impl<const N: usize> OdeSolution<N> {
    pub fn last(&self) -> &[Complex64; N] {
        &self.samples.last().expect("solution has samples").y
    }
}

const MAX_STEPS: usize = 200_000;

// Dormand-Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
// 5th-order weights equal the last row of A (FSAL).
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Integrate `dy/ds = f(s, y)` from `s0` to `s1` with local tolerance
/// `atol + rtol * |y|` per component; records every accepted step.
pub fn integrate_ode<const N: usize, F>(
    f: F,
    s0: f64,
    s1: f64,
    y0: [Complex64; N],
    rtol: f64,
    atol: f64,
) -> Result<OdeSolution<N>, OdeError>
where
    F: Fn(f64, &[Complex64; N]) -> [Complex64; N],
{
    let span = s1 - s0;
    assert!(span > 0.0, "integration span must be positive");
    let mut s = s0;
    let mut y = y0;
    let mut h = span / 100.0;
    let h_min = span * 1e-14;

    let check = |s: f64, v: &[Complex64; N]| -> Result<(), OdeError> {
        if v.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            Err(OdeError::NonFinite { s })
        } else {
            Ok(())
        }
    };

    let mut k: [[Complex64; N]; 7] = [[Complex64::ZERO; N]; 7];
    k[0] = f(s, &y);
    check(s, &k[0])?;

    let mut samples = vec![OdeSample { s, y }];
    let mut accepted = 0usize;
    let mut rejected = 0usize;

    for _ in 0..MAX_STEPS {
        if s >= s1 {
            return Ok(OdeSolution {
                samples,
                steps_accepted: accepted,
                steps_rejected: rejected,
            });
        }
        if h > s1 - s {
            h = s1 - s;
        }
        if h < h_min {
            return Err(OdeError::StepUnderflow {
                s,
                h,
                state: y.to_vec(),
            });
        }

        for stage in 1..7 {
            let mut ys = y;
            for (j, kj) in k.iter().enumerate().take(stage) {
                let a = A[stage][j];
                if a != 0.0 {
                    for i in 0..N {
                        ys[i] += kj[i] * (a * h);
                    }
                }
            }
            k[stage] = f(s + C[stage] * h, &ys);
            check(s + C[stage] * h, &k[stage])?;
        }

        // 5th-order solution (stage 6 used A[6] already => k[6] is f at y5).
        let mut y5 = y;
        for (j, kj) in k.iter().enumerate().take(6) {
            let a = A[6][j];
            if a != 0.0 {
                for i in 0..N {
                    y5[i] += kj[i] * (a * h);
                }
            }
        }

        // Error estimate: (5th - 4th) via E weights.
        let mut err_norm: f64 = 0.0;
        for i in 0..N {
            let mut e = Complex64::ZERO;
            for (j, kj) in k.iter().enumerate() {
                if E[j] != 0.0 {
                    e += kj[i] * (E[j] * h);
                }
            }
            let scale = atol + rtol * y[i].norm().max(y5[i].norm());
            let r = e.norm() / scale;
            err_norm = err_norm.max(r);
        }

        if err_norm <= 1.0 {
            s += h;
            y = y5;
            k[0] = k[6]; // FSAL
            samples.push(OdeSample { s, y });
            accepted += 1;
            let factor = if err_norm == 0.0 {
                5.0
            } else {
                (0.9 * err_norm.powf(-0.2)).clamp(0.2, 5.0)
            };
            h *= factor;
        } else {
            rejected += 1;
            h *= (0.9 * err_norm.powf(-0.2)).clamp(0.1, 0.9);
        }
    }
    Err(OdeError::TooManySteps(MAX_STEPS))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn exponential_decay() {
        let sol = integrate_ode(
            |_s, y: &[Complex64; 1]| [-y[0]],
            0.0,
            2.0,
            [Complex64::new(1.0, 0.0)],
            1e-10,
            1e-12,
        )
        .unwrap();
        assert_relative_eq!(sol.last()[0].re, (-2.0f64).exp(), max_relative = 1e-9);
    }

    #[test]
    fn harmonic_oscillator_energy() {
        // y'' = -y as a first-order system; energy conserved to tolerance.
        let sol = integrate_ode(
            |_s, y: &[Complex64; 2]| [y[1], -y[0]],
            0.0,
            20.0,
            [Complex64::new(1.0, 0.0), Complex64::ZERO],
            1e-10,
            1e-12,
        )
        .unwrap();
        for p in &sol.samples {
            let e = p.y[0].norm_sqr() + p.y[1].norm_sqr();
            assert_relative_eq!(e, 1.0, max_relative = 1e-7);
        }
    }

    #[test]
    fn complex_rotation() {
        // dy/ds = i y  =>  y(s) = e^{is}
        let sol = integrate_ode(
            |_s, y: &[Complex64; 1]| [Complex64::i() * y[0]],
            0.0,
            std::f64::consts::PI,
            [Complex64::new(1.0, 0.0)],
            1e-11,
            1e-13,
        )
        .unwrap();
        let end = sol.last()[0];
        assert_relative_eq!(end.re, -1.0, epsilon = 1e-8);
        assert!(end.im.abs() < 1e-8);
    }
}
