//! Monotone (shape-preserving) piecewise-cubic Hermite interpolation with an
//! analytic derivative, for tabulated potentials. Fritsch-Carlson slope
//! limiting: no overshoot between samples, so turning-point brackets built
//! from the samples stay valid.

/// PCHIP interpolant over strictly increasing abscissae.
#[derive(Debug, Clone)]
pub struct Pchip {
    xs: Vec<f64>,
    ys: Vec<f64>,
    slopes: Vec<f64>,
}

impl Pchip {
    /// Build from samples; panics if fewer than 2 points or `xs` not strictly
    /// increasing (callers validate file input first).
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Self {
        assert!(xs.len() >= 2 && xs.len() == ys.len());
        assert!(
            xs.windows(2).all(|w| w[0] < w[1]),
            "abscissae must be strictly increasing"
        );
        let n = xs.len();
        let h: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();
        let delta: Vec<f64> = (0..n - 1).map(|i| (ys[i + 1] - ys[i]) / h[i]).collect();

        let mut d = vec![0.0; n];
        for i in 1..n - 1 {
            if delta[i - 1] * delta[i] <= 0.0 {
                d[i] = 0.0;
            } else {
                let w1 = 2.0 * h[i] + h[i - 1];
                let w2 = h[i] + 2.0 * h[i - 1];
                d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
            }
        }
        d[0] = edge_slope(
            h[0],
            h.get(1).copied().unwrap_or(h[0]),
            delta[0],
            delta.get(1).copied().unwrap_or(delta[0]),
        );
        d[n - 1] = edge_slope(
            h[n - 2],
            if n >= 3 { h[n - 3] } else { h[n - 2] },
            delta[n - 2],
            if n >= 3 { delta[n - 3] } else { delta[n - 2] },
        );

        Pchip { xs, ys, slopes: d }
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.xs[0], *self.xs.last().unwrap())
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    fn segment(&self, x: f64) -> usize {
        match self.xs.binary_search_by(|v| v.total_cmp(&x)) {
            Ok(i) => i.min(self.xs.len() - 2),
            Err(i) => i.saturating_sub(1).min(self.xs.len() - 2),
        }
    }

    /// Interpolated value; clamps to the domain edges.
    pub fn value(&self, x: f64) -> f64 {
        let i = self.segment(x);
        let h = self.xs[i + 1] - self.xs[i];
        let t = ((x - self.xs[i]) / h).clamp(0.0, 1.0);
        let (y0, y1) = (self.ys[i], self.ys[i + 1]);
        let (d0, d1) = (self.slopes[i], self.slopes[i + 1]);
        let t2 = t * t;
        let t3 = t2 * t;
        y0 * (2.0 * t3 - 3.0 * t2 + 1.0)
            + h * d0 * (t3 - 2.0 * t2 + t)
            + y1 * (-2.0 * t3 + 3.0 * t2)
            + h * d1 * (t3 - t2)
    }

    /// Analytic derivative of the interpolant.
    pub fn derivative(&self, x: f64) -> f64 {
        let i = self.segment(x);
        let h = self.xs[i + 1] - self.xs[i];
        let t = ((x - self.xs[i]) / h).clamp(0.0, 1.0);
        let (y0, y1) = (self.ys[i], self.ys[i + 1]);
        let (d0, d1) = (self.slopes[i], self.slopes[i + 1]);
        let t2 = t * t;
        (y0 * (6.0 * t2 - 6.0 * t) / h)
            + d0 * (3.0 * t2 - 4.0 * t + 1.0)
            + (y1 * (-6.0 * t2 + 6.0 * t) / h)
            + d1 * (3.0 * t2 - 2.0 * t)
    }

    /// Crude interpolation-error bound h^2 * max |second difference| / 8,
    /// recorded with tabulated potentials.
    pub fn error_bound(&self) -> f64 {
        let n = self.xs.len();
        let mut bound: f64 = 0.0;
        for i in 1..n - 1 {
            let h0 = self.xs[i] - self.xs[i - 1];
            let h1 = self.xs[i + 1] - self.xs[i];
            let d2 = 2.0
                * ((self.ys[i + 1] - self.ys[i]) / h1 - (self.ys[i] - self.ys[i - 1]) / h0)
                / (h0 + h1);
            bound = bound.max(h0.max(h1).powi(2) * d2.abs() / 8.0);
        }
        bound
    }
}

fn edge_slope(h0: f64, h1: f64, d0: f64, d1: f64) -> f64 {
    // Non-centered three-point estimate with monotonicity clamping.
    let d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if d * d0 <= 0.0 {
        0.0
    } else if d0 * d1 <= 0.0 && d.abs() > 3.0 * d0.abs() {
        3.0 * d0
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn reproduces_samples() {
        let xs: Vec<f64> = (0..30).map(|i| i as f64 * 0.1).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 1.0 / (1.0 + x)).collect();
        let p = Pchip::new(xs.clone(), ys.clone());
        for (x, y) in xs.iter().zip(&ys) {
            assert_relative_eq!(p.value(*x), *y, max_relative = 1e-14);
        }
    }

    #[test]
    fn smooth_function_accuracy_and_derivative() {
        let xs: Vec<f64> = (0..=400).map(|i| i as f64 * 0.01).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 2.0 / (0.5 + x)).collect();
        let p = Pchip::new(xs, ys);
        for i in 0..100 {
            let x = 0.02 + i as f64 * 0.039;
            assert_relative_eq!(p.value(x), 2.0 / (0.5 + x), max_relative = 1e-4);
            assert_relative_eq!(
                p.derivative(x),
                -2.0 / (0.5 + x).powi(2),
                max_relative = 1e-2
            );
        }
    }

    #[test]
    fn monotone_data_no_overshoot() {
        // A hard step-like sequence; PCHIP must stay within [0, 1].
        let xs = vec![0.0, 1.0, 2.0, 3.0, 4.0];
        let ys = vec![0.0, 0.01, 0.5, 0.99, 1.0];
        let p = Pchip::new(xs, ys);
        for i in 0..=400 {
            let x = i as f64 * 0.01;
            let v = p.value(x);
            assert!((-1e-12..=1.0 + 1e-12).contains(&v), "overshoot at {x}: {v}");
        }
    }
}
