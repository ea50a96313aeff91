//! Oracles shared by the integration tests. None of them call into the
//! library's quadrature: integrals use tanh-sinh rules on each piece, which
//! handle algebraic endpoint singularities without knowing the exponents.

#![allow(dead_code)]

use std::f64::consts::FRAC_PI_2;

/// `C_j prod_k |u - x_k|^alpha_k` on `[x_j, x_{j+1}]`.
#[derive(Debug, Clone)]
pub struct OracleWeight {
    pub alpha: Vec<f64>,
    pub pieces: Vec<f64>,
    pub x: Vec<f64>,
}

impl OracleWeight {
    pub fn new(alpha: &[f64], pieces: &[f64], x: &[f64]) -> Self {
        Self {
            alpha: alpha.to_vec(),
            pieces: pieces.to_vec(),
            x: x.to_vec(),
        }
    }

    /// `int w(u) g(u) du` over the whole support.
    pub fn integrate(&self, g: impl Fn(f64) -> f64) -> f64 {
        (0..self.x.len() - 1)
            .map(|j| {
                let (a, b) = (self.x[j], self.x[j + 1]);
                self.pieces[j]
                    * tanh_sinh(a, b, |u, da, db| {
                        let mut w = da.powf(self.alpha[j]) * db.powf(self.alpha[j + 1]);
                        for (k, (&xk, &ak)) in self.x.iter().zip(&self.alpha).enumerate() {
                            if k != j && k != j + 1 {
                                w *= (u - xk).abs().powf(ak);
                            }
                        }
                        w * g(u)
                    })
            })
            .sum()
    }

    /// Moments `int w(u) (u - c)^k du`, `k = 0..=kmax`.
    pub fn moments(&self, c: f64, kmax: usize) -> Vec<f64> {
        (0..=kmax)
            .map(|k| self.integrate(|u| (u - c).powi(k as i32)))
            .collect()
    }
}

/// Tanh-sinh rule on `[a, b]`. The integrand receives `u` together with the
/// distances `u - a` and `b - u`, computed without cancellation.
pub fn tanh_sinh(a: f64, b: f64, f: impl Fn(f64, f64, f64) -> f64) -> f64 {
    let r = 0.5 * (b - a);
    let h = 1.0 / 128.0;
    let kmax = (4.5 / h) as i64;
    let mut sum = 0.0;
    for k in -kmax..=kmax {
        let t = k as f64 * h;
        let s = FRAC_PI_2 * t.sinh();
        let cs = s.cosh();
        let dw = r * FRAC_PI_2 * t.cosh() / (cs * cs);
        let da = 2.0 * r / (1.0 + (-2.0 * s).exp());
        let db = 2.0 * r / (1.0 + (2.0 * s).exp());
        if !(dw > 1e-300) || da == 0.0 || db == 0.0 {
            continue;
        }
        let u = if s < 0.0 { a + da } else { b - db };
        sum += dw * f(u, da, db);
    }
    h * sum
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn det(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut d = 1.0;
    for c in 0..n {
        let p = (c..n)
            .max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs()))
            .unwrap();
        if m[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= m[c][c];
        for r in c + 1..n {
            let f = m[r][c] / m[c][c];
            for k in c..n {
                m[r][k] -= f * m[c][k];
            }
        }
    }
    d
}

/// `det [mu_{i+j}]_{i,j<k}`.
pub fn hankel(mu: &[f64], k: usize) -> f64 {
    det((0..k).map(|i| (0..k).map(|j| mu[i + j]).collect()).collect())
}

/// `(a_n, b_n)` of the orthonormal Jacobi polynomials for `(1 - x)^a (1 + x)^b`.
pub fn jacobi_coefficients(n: usize, a: f64, b: f64) -> (f64, f64) {
    let n = n as f64;
    let s = 2.0 * n + a + b;
    let bn = (b * b - a * a) / (s * (s + 2.0));
    let an2 = 4.0 * n * (n + a) * (n + b) * (n + a + b) / (s * s * (s + 1.0) * (s - 1.0));
    (an2.sqrt(), bn)
}

/// `max_i |x_i - y_i| / max_i |y_i|`; infinite if anything is not finite.
pub fn rel_inf(x: &[f64], y: &[f64]) -> f64 {
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return f64::INFINITY;
    }
    let scale = y.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    x.iter().zip(y).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max) / scale
}

/// `nu_{n,j} = int w (u - x_1)^{n+1} prod_{k >= 2} (u - x_k) / (u - x_j)`,
/// with the division carried out symbolically.
pub fn nu_oracle(w: &OracleWeight, n: usize) -> Vec<f64> {
    let x = &w.x;
    (0..x.len())
        .map(|j| {
            w.integrate(|u| {
                let lead = if j == 0 { n } else { n + 1 };
                let mut v = (u - x[0]).powi(lead as i32);
                for (k, &xk) in x.iter().enumerate().skip(1) {
                    if k != j {
                        v *= u - xk;
                    }
                }
                v
            })
        })
        .collect()
}
