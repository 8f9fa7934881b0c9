//! Natural cubic spline interpolation for complex-valued samples on a
//! strictly increasing grid, used to wrap sampled spectra as signals.

use num_complex::Complex64;

/// Natural cubic spline through complex samples; evaluates to 0 outside the
/// sampled window.
#[derive(Clone, Debug)]
pub struct ComplexSpline {
    xs: Vec<f64>,
    ys: Vec<Complex64>,
    // second derivatives at the knots
    m: Vec<Complex64>,
}

impl ComplexSpline {
    pub fn new(xs: Vec<f64>, ys: Vec<Complex64>) -> Self {
        assert!(xs.len() >= 3, "spline needs at least 3 points");
        assert_eq!(xs.len(), ys.len());
        debug_assert!(xs.windows(2).all(|w| w[0] < w[1]), "grid must increase");
        let n = xs.len();
        // tridiagonal system for natural boundary conditions (Thomas algorithm)
        let mut sub = vec![0.0; n];
        let mut diag = vec![1.0; n];
        let mut sup = vec![0.0; n];
        let mut rhs = vec![Complex64::new(0.0, 0.0); n];
        for i in 1..n - 1 {
            let h0 = xs[i] - xs[i - 1];
            let h1 = xs[i + 1] - xs[i];
            sub[i] = h0 / 6.0;
            diag[i] = (h0 + h1) / 3.0;
            sup[i] = h1 / 6.0;
            rhs[i] = (ys[i + 1] - ys[i]) / h1 - (ys[i] - ys[i - 1]) / h0;
        }
        for i in 1..n {
            let w = sub[i] / diag[i - 1];
            diag[i] -= w * sup[i - 1];
            rhs[i] = rhs[i] - w * rhs[i - 1];
        }
        let mut m = vec![Complex64::new(0.0, 0.0); n];
        m[n - 1] = rhs[n - 1] / diag[n - 1];
        for i in (0..n - 1).rev() {
            m[i] = (rhs[i] - sup[i] * m[i + 1]) / diag[i];
        }
        ComplexSpline { xs, ys, m }
    }

    pub fn window(&self) -> (f64, f64) {
        (self.xs[0], *self.xs.last().unwrap())
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        let n = self.xs.len();
        if x < self.xs[0] || x > self.xs[n - 1] {
            return Complex64::new(0.0, 0.0);
        }
        let i = match self.xs.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
            Ok(i) => i.min(n - 2),
            Err(i) => i.saturating_sub(1).min(n - 2),
        };
        let h = self.xs[i + 1] - self.xs[i];
        let a = (self.xs[i + 1] - x) / h;
        let b = (x - self.xs[i]) / h;
        a * self.ys[i]
            + b * self.ys[i + 1]
            + ((a * a * a - a) * self.m[i] + (b * b * b - b) * self.m[i + 1]) * (h * h) / 6.0
    }

    /// Crude interpolation-error estimate: rebuild the spline from every other
    /// sample and report the worst deviation at the skipped knots, relative to
    /// the peak sample magnitude.
    pub fn error_estimate(&self) -> f64 {
        let n = self.xs.len();
        if n < 7 {
            return f64::NAN;
        }
        let xs: Vec<f64> = self.xs.iter().step_by(2).copied().collect();
        let ys: Vec<Complex64> = self.ys.iter().step_by(2).copied().collect();
        let coarse = ComplexSpline::new(xs, ys);
        let peak = self
            .ys
            .iter()
            .map(|v| v.norm())
            .fold(0.0, f64::max)
            .max(f64::MIN_POSITIVE);
        let mut worst = 0.0f64;
        for i in (1..n - 1).step_by(2) {
            let d = (coarse.eval(self.xs[i]) - self.ys[i]).norm();
            worst = worst.max(d / peak);
        }
        // halving the step inflates the h^4 error 16x, so scale back
        worst / 16.0
    }
}
