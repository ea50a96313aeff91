//! Node values of the ladder polynomials `Omega_n` (degree `<= m-1`) and
//! `Theta_n` (degree `<= m-2`) in `W p_n' = (Omega_n - V) p_n - a_n Theta_n p_{n-1}`.
//!
//! At the endpoints both are available in closed form from `p_n`, `p_{n-1}`
//! and the Stieltjes transform `q_n`:
//!
//! ```text
//! Theta_n(x_k)          = alpha_k W'(x_k) p_n(x_k) q_n(x_k)
//! Omega_n(x_k) - V(x_k) = a_n alpha_k W'(x_k) q_n(x_k) p_{n-1}(x_k)
//! ```
//!
//! and they advance in `n` through the Laguerre–Freud recurrences.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::orthopoly::RecurrenceTable;
use crate::quadrature::stieltjes_at_node_with;
use crate::weight::{GeneralizedJacobiWeight, NodeData};

/// `Theta_n(x_j)`, `Omega_n(x_j)` and optionally `Theta_{n-1}(x_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderValues {
    pub n: usize,
    pub theta: Vec<f64>,
    pub omega: Vec<f64>,
    pub theta_prev: Option<Vec<f64>>,
}

/// `p_n`, `p_{n-1}`, `q_n`, `q_{n-1}` at one endpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeTransform {
    pub p: f64,
    pub p_prev: f64,
    pub q: f64,
    pub q_prev: f64,
}

/// Polynomial values and Stieltjes transforms at every endpoint for degree `n`.
pub fn node_transforms(
    w: &GeneralizedJacobiWeight,
    table: &RecurrenceTable,
    nodes: &NodeData,
    n: usize,
    npts: usize,
) -> Result<Vec<NodeTransform>> {
    if n > table.max_degree() {
        return Err(Error::IndexOutOfRange {
            index: n,
            max: table.max_degree(),
        });
    }
    (0..nodes.m())
        .map(|j| {
            let v = table.eval(n, nodes.x[j])?;
            let q = stieltjes_at_node_with(w, nodes, table.poly(n), j, npts)?;
            let q_prev = if n == 0 {
                0.0
            } else {
                stieltjes_at_node_with(w, nodes, table.poly(n - 1), j, npts)?
            };
            Ok(NodeTransform {
                p: v.p,
                p_prev: v.p_prev,
                q,
                q_prev,
            })
        })
        .collect()
}

/// Ladder node values at degree `n` from the closed-form endpoint identities.
pub fn ladder_init(
    w: &GeneralizedJacobiWeight,
    table: &RecurrenceTable,
    t: f64,
    n: usize,
    npts: usize,
) -> Result<LadderValues> {
    let nodes = w.node_data(t)?;
    let tr = node_transforms(w, table, &nodes, n, npts)?;
    Ok(ladder_from_transforms(w, table, &nodes, n, &tr))
}

pub(crate) fn ladder_from_transforms(
    w: &GeneralizedJacobiWeight,
    table: &RecurrenceTable,
    nodes: &NodeData,
    n: usize,
    tr: &[NodeTransform],
) -> LadderValues {
    let alpha = w.alpha();
    let an = table.a[n];
    let scale = |j: usize| alpha[j] * nodes.wprime[j];
    let theta = (0..nodes.m()).map(|j| scale(j) * tr[j].p * tr[j].q).collect();
    let omega = (0..nodes.m())
        .map(|j| 0.5 * scale(j) + an * scale(j) * tr[j].q * tr[j].p_prev)
        .collect();
    let theta_prev = (n >= 1).then(|| {
        (0..nodes.m())
            .map(|j| scale(j) * tr[j].p_prev * tr[j].q_prev)
            .collect()
    });
    LadderValues {
        n,
        theta,
        omega,
        theta_prev,
    }
}

/// Advances node values from `n` to `n + 1`:
///
/// ```text
/// Omega_{n+1} = (x - b_n) Theta_n - Omega_n
/// a_{n+1}^2 Theta_{n+1} = (x - b_n)(Omega_{n+1} - Omega_n) - W + a_n^2 Theta_{n-1}
/// ```
///
/// with `W(x_j) = 0` at the nodes. `values.theta_prev` supplies `Theta_{n-1}`
/// and may be absent only for `n = 0`.
pub fn ladder_step(
    values: &LadderValues,
    nodes: &[f64],
    a_n: f64,
    a_next: f64,
    b_n: f64,
) -> Result<LadderValues> {
    if a_next == 0.0 {
        return Err(Error::ZeroCoefficient {
            index: values.n + 1,
        });
    }
    let zeros = vec![0.0; values.theta.len()];
    let theta_prev = match (&values.theta_prev, values.n) {
        (Some(tp), _) => tp,
        (None, 0) => &zeros,
        (None, n) => {
            return Err(Error::LengthMismatch(format!(
                "ladder step from degree {n} needs Theta_{{n-1}}"
            )))
        }
    };
    let omega: Vec<f64> = nodes
        .iter()
        .zip(&values.theta)
        .zip(&values.omega)
        .map(|((&x, &th), &om)| (x - b_n) * th - om)
        .collect();
    let theta = nodes
        .iter()
        .zip(&omega)
        .zip(values.omega.iter().zip(theta_prev))
        .map(|((&x, &om_next), (&om, &th_prev))| {
            ((x - b_n) * (om_next - om) + a_n * a_n * th_prev) / (a_next * a_next)
        })
        .collect();
    Ok(LadderValues {
        n: values.n + 1,
        theta,
        omega,
        theta_prev: Some(values.theta.clone()),
    })
}

/// Structural residuals of a set of ladder values.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderReport {
    pub n: usize,
    /// `|sum Theta_n(x_j)/W'(x_j)| / max_j |Theta_n(x_j)/W'(x_j)|`.
    pub theta_sum: f64,
    /// Relative gap of `sum x_j Theta_n(x_j)/W'(x_j)` to `2n + 1 + sum alpha`.
    pub xtheta_gap: f64,
    /// Relative gap of `sum Omega_n(x_j)/W'(x_j)` to `n + sum(alpha)/2`.
    pub omega_gap: f64,
    /// Same three sums for `Theta_{n-1}` when present.
    pub theta_prev_sum: Option<f64>,
    pub xtheta_prev_gap: Option<f64>,
    /// Max over sample points of the differential-relation residual, relative
    /// to the largest term.
    pub relation_residual: f64,
    /// `max_j |a_n (p_n q_{n-1} - p_{n-1} q_n)(x_j) - 1|`; `None` for `n = 0`.
    pub wronskian_dev: Option<f64>,
}

impl LadderReport {
    pub fn max_residue_gap(&self) -> f64 {
        [
            self.theta_sum,
            self.xtheta_gap,
            self.omega_gap,
            self.theta_prev_sum.unwrap_or(0.0),
            self.xtheta_prev_gap.unwrap_or(0.0),
        ]
        .into_iter()
        .fold(0.0, crate::nan_max)
    }
}

fn rel_gap(value: f64, expected: f64) -> f64 {
    (value - expected).abs() / expected.abs().max(1.0)
}

fn sum_residual(nodes: &NodeData, values: &[f64]) -> f64 {
    let ratios: Vec<f64> = values.iter().zip(&nodes.wprime).map(|(v, d)| v / d).collect();
    let scale = ratios.iter().fold(0.0_f64, |acc, r| acc.max(r.abs()));
    let s: f64 = ratios.iter().sum();
    if scale > 0.0 {
        s.abs() / scale
    } else {
        s.abs()
    }
}

/// Checks residue sums, the differential relation at `samples` random points
/// of the support (seeded), and the Wronskian identity at the nodes.
pub fn ladder_checks(
    w: &GeneralizedJacobiWeight,
    table: &RecurrenceTable,
    values: &LadderValues,
    t: f64,
    npts: usize,
    samples: usize,
    seed: u64,
) -> Result<LadderReport> {
    let n = values.n;
    let nodes = w.node_data(t)?;
    let sa = w.alpha_sum();
    let xs = |vals: &[f64]| -> f64 {
        vals.iter()
            .zip(&nodes.x)
            .zip(&nodes.wprime)
            .map(|((v, x), d)| x * v / d)
            .sum()
    };

    let theta_sum = sum_residual(&nodes, &values.theta);
    let xtheta_gap = rel_gap(xs(&values.theta), 2.0 * n as f64 + 1.0 + sa);
    let omega_gap = rel_gap(
        nodes.leading_coefficient(&values.omega),
        n as f64 + 0.5 * sa,
    );
    let theta_prev_sum = values.theta_prev.as_ref().map(|tp| sum_residual(&nodes, tp));
    let xtheta_prev_gap = values
        .theta_prev
        .as_ref()
        .map(|tp| rel_gap(xs(tp), 2.0 * n as f64 - 1.0 + sa));

    let vnodes = w.v_node_values(&nodes);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = (nodes.x[0], nodes.x[nodes.m() - 1]);
    let mut worst = 0.0_f64;
    let mut scale = 0.0_f64;
    for _ in 0..samples {
        let x = rng.random_range(lo..hi);
        let pv = table.eval(n, x)?;
        let wx = nodes.w(x);
        let omv = nodes.interpolate(&values.omega, x) - nodes.interpolate(&vnodes, x);
        let th = nodes.interpolate(&values.theta, x);
        let lhs = wx * pv.dp;
        let t1 = omv * pv.p;
        let t2 = table.a[n] * th * pv.p_prev;
        worst = crate::nan_max(worst, (lhs - t1 + t2).abs());
        scale = scale.max(lhs.abs()).max(t1.abs()).max(t2.abs());
    }
    let relation_residual = if scale > 0.0 { worst / scale } else { worst };

    let wronskian_dev = if n >= 1 {
        let tr = node_transforms(w, table, &nodes, n, npts)?;
        Some(
            tr.iter()
                .map(|v| (table.a[n] * (v.p * v.q_prev - v.p_prev * v.q) - 1.0).abs())
                .fold(0.0, crate::nan_max),
        )
    } else {
        None
    };

    Ok(LadderReport {
        n,
        theta_sum,
        xtheta_gap,
        omega_gap,
        theta_prev_sum,
        xtheta_prev_gap,
        relation_residual,
        wronskian_dev,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthopoly::stieltjes_procedure;
    use approx::assert_relative_eq;

    #[test]
    fn chebyshev_second_kind_degree_zero() {
        let w = GeneralizedJacobiWeight::fixed(vec![0.5, 0.5], &[-1.0, 1.0]).unwrap();
        let tab = stieltjes_procedure(&w, 0.0, 4, 64).unwrap();
        let lv = ladder_init(&w, &tab, 0.0, 0, 64).unwrap();
        assert_relative_eq!(lv.theta[1], 2.0, max_relative = 1e-13);
        assert_relative_eq!(lv.theta[0], 2.0, max_relative = 1e-13);
        // Omega_0 = V
        let nd = w.node_data(0.0).unwrap();
        let v = w.v_node_values(&nd);
        assert_eq!(lv.omega, v);
        assert!(lv.theta_prev.is_none());
    }

    #[test]
    fn chebyshev_second_kind_closed_forms() {
        // Theta_n = 2n + 2, Omega_n = (n + 1/2) x
        let w = GeneralizedJacobiWeight::fixed(vec![0.5, 0.5], &[-1.0, 1.0]).unwrap();
        let tab = stieltjes_procedure(&w, 0.0, 11, 64).unwrap();
        for n in 1..=10 {
            let lv = ladder_init(&w, &tab, 0.0, n, 64).unwrap();
            for (j, &x) in [-1.0, 1.0].iter().enumerate() {
                assert_relative_eq!(lv.theta[j], 2.0 * n as f64 + 2.0, max_relative = 1e-11);
                assert_relative_eq!(lv.omega[j], (n as f64 + 0.5) * x, max_relative = 1e-11);
            }
            let rep = ladder_checks(&w, &tab, &lv, 0.0, 64, 20, 7).unwrap();
            assert!(rep.max_residue_gap() < 1e-10, "{rep:?}");
            assert!(rep.relation_residual < 1e-10, "{rep:?}");
            assert!(rep.wronskian_dev.unwrap() < 1e-10);
        }
    }

    #[test]
    fn symmetric_parity() {
        let w = GeneralizedJacobiWeight::fixed(vec![0.7, 0.4, 0.7], &[-1.0, 0.0, 1.0]).unwrap();
        let tab = stieltjes_procedure(&w, 0.0, 8, 64).unwrap();
        // W is odd here, so Theta_n is odd and Omega_n is even
        for n in 1..=6 {
            let lv = ladder_init(&w, &tab, 0.0, n, 64).unwrap();
            assert_relative_eq!(lv.theta[0], -lv.theta[2], max_relative = 1e-11);
            assert!(lv.theta[1].abs() < 1e-11 * lv.theta[0].abs());
            assert_relative_eq!(lv.omega[0], lv.omega[2], max_relative = 1e-11);
        }
    }

    #[test]
    fn step_reproduces_init() {
        let w = GeneralizedJacobiWeight::fixed(vec![0.5, 0.5, 0.5], &[-1.0, 0.2, 1.0]).unwrap();
        let tab = stieltjes_procedure(&w, 0.0, 11, 64).unwrap();
        let x = w.node_data(0.0).unwrap().x;
        let mut lv = ladder_init(&w, &tab, 0.0, 0, 64).unwrap();
        for n in 0..10 {
            lv = ladder_step(&lv, &x, tab.a[n], tab.a[n + 1], tab.b[n]).unwrap();
            let direct = ladder_init(&w, &tab, 0.0, n + 1, 64).unwrap();
            for j in 0..3 {
                assert_relative_eq!(lv.theta[j], direct.theta[j], max_relative = 1e-9);
                assert_relative_eq!(lv.omega[j], direct.omega[j], max_relative = 1e-9);
            }
        }
        assert!(matches!(
            ladder_step(&lv, &x, 1.0, 0.0, 0.0),
            Err(Error::ZeroCoefficient { .. })
        ));
    }
}
