//! Recurrence coefficients of orthonormal polynomials, evaluation, moments
//! and Hankel determinants.
//!
//! The orthonormal polynomials satisfy
//! `a_{n+1} p_{n+1}(x) = (x - b_n) p_n(x) - a_n p_{n-1}(x)` with
//! `p_n(x) = gamma_n x^n + ...`. Coefficients are produced by the discretised
//! Stieltjes procedure on the composite absorbed quadrature; the moment
//! determinants are kept as a small-`n` diagnostic only.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_against_weight, DiscreteMeasure};
use crate::weight::GeneralizedJacobiWeight;

/// Recurrence coefficients up to degree `N`.
///
/// `a[0]` is the conventional zero multiplying `p_{-1}`; `a[n]` for
/// `1 <= n <= N`. `b[n]` and `gamma[n]` are stored for `0 <= n <= N`.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceTable {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub gamma: Vec<f64>,
}

/// `p_n(x)`, `p_n'(x)` and `p_{n-1}(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolyValue {
    pub p: f64,
    pub dp: f64,
    pub p_prev: f64,
}

impl RecurrenceTable {
    pub fn max_degree(&self) -> usize {
        self.gamma.len() - 1
    }

    pub fn eval(&self, n: usize, x: f64) -> Result<PolyValue> {
        eval_polynomial(self, n, x)
    }

    /// Closure evaluating `p_n`; panics if `n` exceeds the table.
    pub fn poly(&self, n: usize) -> impl Fn(f64) -> f64 + '_ {
        assert!(n <= self.max_degree());
        move |x| eval_polynomial(self, n, x).map(|v| v.p).unwrap()
    }
}

/// Discretised Stieltjes procedure for degrees `0..=n_max`.
pub fn stieltjes_procedure(
    w: &GeneralizedJacobiWeight,
    t: f64,
    n_max: usize,
    npts: usize,
) -> Result<RecurrenceTable> {
    let measure = DiscreteMeasure::new(w, t, npts)?;
    let width = {
        let nd = w.node_data(t)?;
        nd.width()
    };
    stieltjes_on_measure(&measure, n_max, width)
}

pub(crate) fn stieltjes_on_measure(
    measure: &DiscreteMeasure,
    n_max: usize,
    width: f64,
) -> Result<RecurrenceTable> {
    let floor = 1e-14 * width * width;
    let u = &measure.points;
    let mu = &measure.masses;
    let mu0: f64 = mu.iter().sum();
    if !(mu0 > 0.0) {
        return Err(Error::LostOrthogonality {
            degree: 0,
            value: mu0,
        });
    }
    let mut a = vec![0.0; n_max + 1];
    let mut b = vec![0.0; n_max + 1];
    let mut gamma = vec![0.0; n_max + 1];
    gamma[0] = mu0.sqrt().recip();

    let mut prev = vec![0.0; u.len()];
    let mut cur = vec![gamma[0]; u.len()];
    for n in 0..=n_max {
        b[n] = u
            .iter()
            .zip(mu)
            .zip(&cur)
            .map(|((&x, &m), &p)| m * x * p * p)
            .sum();
        if n == n_max {
            break;
        }
        let next: Vec<f64> = u
            .iter()
            .zip(&cur)
            .zip(&prev)
            .map(|((&x, &p), &q)| (x - b[n]) * p - a[n] * q)
            .collect();
        let norm2: f64 = next.iter().zip(mu).map(|(&r, &m)| m * r * r).sum();
        if !(norm2 > floor) {
            return Err(Error::LostOrthogonality {
                degree: n + 1,
                value: norm2,
            });
        }
        let an = norm2.sqrt();
        a[n + 1] = an;
        gamma[n + 1] = gamma[n] / an;
        prev = cur;
        cur = next.into_iter().map(|r| r / an).collect();
    }
    Ok(RecurrenceTable { a, b, gamma })
}

/// Forward recurrence for `p_n(x)` together with the differentiated recurrence
/// `a_{k+1} p'_{k+1} = p_k + (x - b_k) p'_k - a_k p'_{k-1}`.
pub fn eval_polynomial(table: &RecurrenceTable, n: usize, x: f64) -> Result<PolyValue> {
    if n > table.max_degree() {
        return Err(Error::IndexOutOfRange {
            index: n,
            max: table.max_degree(),
        });
    }
    let (mut p_prev, mut p) = (0.0, table.gamma[0]);
    let (mut d_prev, mut d) = (0.0, 0.0);
    for k in 0..n {
        let a_next = table.a[k + 1];
        let p_next = ((x - table.b[k]) * p - table.a[k] * p_prev) / a_next;
        let d_next = (p + (x - table.b[k]) * d - table.a[k] * d_prev) / a_next;
        p_prev = p;
        p = p_next;
        d_prev = d;
        d = d_next;
    }
    Ok(PolyValue { p, dp: d, p_prev })
}

/// Moments `mu_k = int w(u) (u - x_1)^k du`, `k = 0..=nmax`.
pub fn moments(w: &GeneralizedJacobiWeight, t: f64, nmax: usize, npts: usize) -> Result<Vec<f64>> {
    let measure = DiscreteMeasure::new(w, t, npts)?;
    let x1 = w.trajectory().positions(t)[0];
    Ok((0..=nmax)
        .map(|k| measure.integrate(|u| (u - x1).powi(k as i32)))
        .collect())
}

fn det(mut rows: impl FnMut(usize, usize) -> f64, n: usize) -> f64 {
    if n == 0 {
        return 1.0;
    }
    DMatrix::from_fn(n, n, |i, j| rows(i, j)).lu().determinant()
}

/// Determinant of the `n x n` Hankel matrix `[mu_{i+j}]`.
pub fn hankel_det(mu: &[f64], n: usize) -> Result<f64> {
    if n > 0 && 2 * n - 2 >= mu.len() {
        return Err(Error::IndexOutOfRange {
            index: 2 * n - 2,
            max: mu.len().saturating_sub(1),
        });
    }
    Ok(det(|i, j| mu[i + j], n))
}

/// Hankel matrix of order `n` with its last column shifted by one moment.
/// The ratio to [`hankel_det`] is the sum `b_0 + ... + b_{n-1}` for the
/// moments' centre.
pub fn bordered_hankel_det(mu: &[f64], n: usize) -> Result<f64> {
    if n == 0 {
        return Ok(0.0);
    }
    if 2 * n - 1 >= mu.len() {
        return Err(Error::IndexOutOfRange {
            index: 2 * n - 1,
            max: mu.len().saturating_sub(1),
        });
    }
    Ok(det(|i, j| if j + 1 == n { mu[i + j + 1] } else { mu[i + j] }, n))
}

/// `(a_n^2, b_n)` from determinant ratios of moments centred at `centre`.
pub fn coefficients_from_moments(mu: &[f64], centre: f64, n: usize) -> Result<(f64, f64)> {
    let h = |k| hankel_det(mu, k);
    let a2 = if n == 0 {
        0.0
    } else {
        h(n + 1)? * h(n - 1)? / h(n)?.powi(2)
    };
    let partial = |k| -> Result<f64> { Ok(bordered_hankel_det(mu, k)? / h(k)?) };
    let b = partial(n + 1)? - partial(n)? + centre;
    Ok((a2, b))
}

/// Total mass `int w`, as a convenience for normalisation checks.
pub fn mass(w: &GeneralizedJacobiWeight, t: f64, npts: usize) -> Result<f64> {
    integrate_against_weight(w, |_| 1.0, t, npts)
}
