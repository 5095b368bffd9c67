//! Monotone piecewise-cubic Hermite interpolation (Fritsch-Carlson).

/// C¹ interpolant through `(x_i, y_i)` that preserves monotonicity between knots.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneCubic {
    x: Vec<f64>,
    y: Vec<f64>,
    slopes: Vec<f64>,
}

impl MonotoneCubic {
    /// Knot slopes start from centered differences (one-sided at both ends) and
    /// are then limited so that each interval stays monotone.
    ///
    /// `x` must be strictly increasing with at least two points.
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Self {
        let n = x.len();
        assert!(n >= 2 && y.len() == n);
        let secants: Vec<f64> = (0..n - 1)
            .map(|i| (y[i + 1] - y[i]) / (x[i + 1] - x[i]))
            .collect();

        let mut slopes = vec![0.0; n];
        slopes[0] = secants[0];
        slopes[n - 1] = secants[n - 2];
        for i in 1..n - 1 {
            slopes[i] = if secants[i - 1] * secants[i] <= 0.0 {
                0.0
            } else {
                (y[i + 1] - y[i - 1]) / (x[i + 1] - x[i - 1])
            };
        }

        for (i, &delta) in secants.iter().enumerate() {
            if delta == 0.0 {
                slopes[i] = 0.0;
                slopes[i + 1] = 0.0;
                continue;
            }
            let mut alpha = slopes[i] / delta;
            let mut beta = slopes[i + 1] / delta;
            if alpha < 0.0 {
                alpha = 0.0;
                slopes[i] = 0.0;
            }
            if beta < 0.0 {
                beta = 0.0;
                slopes[i + 1] = 0.0;
            }
            let r2 = alpha * alpha + beta * beta;
            if r2 > 9.0 {
                let tau = 3.0 / r2.sqrt();
                slopes[i] = tau * alpha * delta;
                slopes[i + 1] = tau * beta * delta;
            }
        }
        Self { x, y, slopes }
    }

    pub fn knots(&self) -> &[f64] {
        &self.x
    }

    pub fn values(&self) -> &[f64] {
        &self.y
    }

    pub fn lo(&self) -> f64 {
        self.x[0]
    }

    pub fn hi(&self) -> f64 {
        self.x[self.x.len() - 1]
    }

    /// Index `i` of the interval `[x_i, x_{i+1}]` containing `t` (clamped).
    pub fn interval(&self, t: f64) -> usize {
        let n = self.x.len();
        match self.x.partition_point(|&xi| xi <= t) {
            0 => 0,
            k if k >= n => n - 2,
            k => k - 1,
        }
    }

    fn local(&self, t: f64) -> (usize, f64, f64) {
        let i = self.interval(t);
        let h = self.x[i + 1] - self.x[i];
        (i, (t - self.x[i]) / h, h)
    }

    pub fn eval(&self, t: f64) -> f64 {
        let (i, s, h) = self.local(t);
        let s2 = s * s;
        let s3 = s2 * s;
        let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        let h10 = s3 - 2.0 * s2 + s;
        let h01 = -2.0 * s3 + 3.0 * s2;
        let h11 = s3 - s2;
        h00 * self.y[i]
            + h10 * h * self.slopes[i]
            + h01 * self.y[i + 1]
            + h11 * h * self.slopes[i + 1]
    }

    pub fn derivative(&self, t: f64) -> f64 {
        let (i, s, h) = self.local(t);
        let s2 = s * s;
        let d00 = 6.0 * s2 - 6.0 * s;
        let d10 = 3.0 * s2 - 4.0 * s + 1.0;
        let d01 = -6.0 * s2 + 6.0 * s;
        let d11 = 3.0 * s2 - 2.0 * s;
        (d00 * self.y[i] + d01 * self.y[i + 1]) / h
            + d10 * self.slopes[i]
            + d11 * self.slopes[i + 1]
    }
}
