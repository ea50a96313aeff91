//! Generalized Jacobi weights with moving endpoints.
//!
//! A weight is `C_j * prod_k |x - x_k(t)|^alpha_k` on the open piece
//! `(x_j(t), x_{j+1}(t))` and zero outside `[x_1(t), x_m(t)]`. Only the
//! endpoints move; exponents and piece constants are fixed.
//!
//! Everything downstream consumes polynomials of degree `< m` through their
//! values at the nodes, so this module also hosts the node-value Lagrange
//! interpolation with barycentric weights `1 / W'(x_j)`.

use crate::error::{Error, Result};

/// Endpoint positions as polynomials in `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct EndpointTrajectory {
    /// `coeffs[k][i]` is the coefficient of `t^i` in `x_k(t)`.
    coeffs: Vec<Vec<f64>>,
    reference_time: f64,
}

impl EndpointTrajectory {
    /// Builds a trajectory from per-endpoint coefficient lists (constant term first).
    pub fn polynomial(coeffs: Vec<Vec<f64>>) -> Self {
        Self {
            coeffs,
            reference_time: 0.0,
        }
    }

    /// Endpoints that never move.
    pub fn fixed(positions: &[f64]) -> Self {
        Self::polynomial(positions.iter().map(|&p| vec![p]).collect())
    }

    /// `x_k(t) = positions[k] + velocities[k] * t`.
    pub fn affine(positions: &[f64], velocities: &[f64]) -> Self {
        Self::polynomial(
            positions
                .iter()
                .zip(velocities)
                .map(|(&p, &v)| vec![p, v])
                .collect(),
        )
    }

    /// Sets the time at which ordering is validated by [`GeneralizedJacobiWeight::new`].
    pub fn with_reference_time(mut self, t: f64) -> Self {
        self.reference_time = t;
        self
    }

    pub fn reference_time(&self) -> f64 {
        self.reference_time
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficients(&self) -> &[Vec<f64>] {
        &self.coeffs
    }

    pub fn positions(&self, t: f64) -> Vec<f64> {
        self.coeffs.iter().map(|c| horner(c, t)).collect()
    }

    pub fn velocities(&self, t: f64) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| {
                c.iter()
                    .enumerate()
                    .skip(1)
                    .rev()
                    .fold(0.0, |acc, (i, &ci)| acc * t + i as f64 * ci)
            })
            .collect()
    }

    /// Whether `x_1(t) < ... < x_m(t)` strictly.
    pub fn is_ordered(&self, t: f64) -> bool {
        let x = self.positions(t);
        x.iter().all(|v| v.is_finite()) && x.windows(2).all(|w| w[0] < w[1])
    }
}

fn horner(c: &[f64], t: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &ci| acc * t + ci)
}

/// Node positions, velocities and `W'(x_j)` at a fixed time.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeData {
    pub t: f64,
    pub x: Vec<f64>,
    pub xdot: Vec<f64>,
    pub wprime: Vec<f64>,
}

impl NodeData {
    /// Builds node data from explicit positions and velocities.
    pub fn new(t: f64, x: Vec<f64>, xdot: Vec<f64>) -> Result<Self> {
        if x.len() != xdot.len() {
            return Err(Error::LengthMismatch(format!(
                "{} positions but {} velocities",
                x.len(),
                xdot.len()
            )));
        }
        if !x.windows(2).all(|w| w[0] < w[1]) || x.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonDistinctEndpoints { t });
        }
        let wprime = node_derivatives(&x);
        Ok(Self {
            t,
            x,
            xdot,
            wprime,
        })
    }

    pub fn m(&self) -> usize {
        self.x.len()
    }

    pub fn width(&self) -> f64 {
        self.x[self.x.len() - 1] - self.x[0]
    }

    /// `W(x) = prod_k (x - x_k)`.
    pub fn w(&self, x: f64) -> f64 {
        self.x.iter().map(|&xk| x - xk).product()
    }

    /// Lagrange interpolant of `values` at the nodes, evaluated at `x`.
    pub fn interpolate(&self, values: &[f64], x: f64) -> f64 {
        interpolate_node_values(&self.x, &self.wprime, values, x)
    }

    /// `sum_j values[j] / W'(x_j)`: the `x^{m-1}` coefficient of the interpolant.
    pub fn leading_coefficient(&self, values: &[f64]) -> f64 {
        values.iter().zip(&self.wprime).map(|(v, d)| v / d).sum()
    }
}

/// `W'(x_j) = prod_{k != j} (x_j - x_k)`.
pub fn node_derivatives(x: &[f64]) -> Vec<f64> {
    x.iter()
        .enumerate()
        .map(|(j, &xj)| {
            x.iter()
                .enumerate()
                .filter(|&(k, _)| k != j)
                .map(|(_, &xk)| xj - xk)
                .product()
        })
        .collect()
}

/// Evaluates the degree `< m` interpolant through `(nodes[j], values[j])`
/// with the first barycentric form `W(x) * sum_j values[j] / (W'(x_j) (x - x_j))`.
pub fn interpolate_node_values(nodes: &[f64], wprime: &[f64], values: &[f64], x: f64) -> f64 {
    if let Some(j) = nodes.iter().position(|&xj| xj == x) {
        return values[j];
    }
    let w: f64 = nodes.iter().map(|&xk| x - xk).product();
    let s: f64 = nodes
        .iter()
        .zip(wprime)
        .zip(values)
        .map(|((&xj, &d), &v)| v / (d * (x - xj)))
        .sum();
    w * s
}

/// `V(x)`, `d/dx log w` and `d/dt log w` at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogDerivatives {
    pub v: f64,
    pub dlogw_dx: f64,
    pub dlogw_dt: f64,
}

/// A generalized Jacobi weight with polynomial endpoint trajectories.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizedJacobiWeight {
    alpha: Vec<f64>,
    pieces: Vec<f64>,
    trajectory: EndpointTrajectory,
}

impl GeneralizedJacobiWeight {
    /// Validates exponents, piece constants and endpoint ordering at the
    /// trajectory's reference time.
    pub fn new(alpha: Vec<f64>, pieces: Vec<f64>, trajectory: EndpointTrajectory) -> Result<Self> {
        let m = alpha.len();
        if m < 2 {
            return Err(Error::LengthMismatch(format!(
                "need at least 2 endpoints, got {m}"
            )));
        }
        if pieces.len() + 1 != m {
            return Err(Error::LengthMismatch(format!(
                "pieces must have length m-1 = {}, got {}",
                m - 1,
                pieces.len()
            )));
        }
        if trajectory.len() != m {
            return Err(Error::LengthMismatch(format!(
                "trajectory must have m = {m} endpoints, got {}",
                trajectory.len()
            )));
        }
        if let Some((index, &value)) = alpha
            .iter()
            .enumerate()
            .find(|(_, &a)| !(a.is_finite() && a > -1.0))
        {
            return Err(Error::BadExponent { index, value });
        }
        if let Some((index, &value)) = pieces
            .iter()
            .enumerate()
            .find(|(_, &c)| !(c.is_finite() && c > 0.0))
        {
            return Err(Error::BadConstant { index, value });
        }
        let t = trajectory.reference_time();
        if !trajectory.is_ordered(t) {
            return Err(Error::NonDistinctEndpoints { t });
        }
        Ok(Self {
            alpha,
            pieces,
            trajectory,
        })
    }

    /// Unit piece constants and fixed endpoints.
    pub fn fixed(alpha: Vec<f64>, endpoints: &[f64]) -> Result<Self> {
        let pieces = vec![1.0; alpha.len().saturating_sub(1)];
        Self::new(alpha, pieces, EndpointTrajectory::fixed(endpoints))
    }

    pub fn m(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    pub fn alpha_sum(&self) -> f64 {
        self.alpha.iter().sum()
    }

    pub fn pieces(&self) -> &[f64] {
        &self.pieces
    }

    pub fn trajectory(&self) -> &EndpointTrajectory {
        &self.trajectory
    }

    /// Whether every exponent is strictly positive, as the flow requires.
    pub fn all_alpha_positive(&self) -> bool {
        self.alpha.iter().all(|&a| a > 0.0)
    }

    pub fn node_data(&self, t: f64) -> Result<NodeData> {
        NodeData::new(t, self.trajectory.positions(t), self.trajectory.velocities(t))
    }

    /// Evaluates `w(x, t)`.
    ///
    /// At an endpoint with zero exponent the value of the piece to its right
    /// is returned (left piece at `x_m`); at an endpoint with positive exponent
    /// the weight is zero.
    pub fn eval(&self, x: f64, t: f64) -> Result<f64> {
        let nodes = self.node_data(t)?;
        let xs = &nodes.x;
        let m = xs.len();
        if x < xs[0] || x > xs[m - 1] {
            return Ok(0.0);
        }
        let piece = if let Some(k) = xs.iter().position(|&xk| xk == x) {
            let a = self.alpha[k];
            if a > 0.0 {
                return Ok(0.0);
            }
            if a < 0.0 {
                return Err(Error::NonFinite { node: k });
            }
            k.min(m - 2)
        } else {
            xs.windows(2).position(|w| w[0] < x && x < w[1]).unwrap()
        };
        let prod: f64 = xs
            .iter()
            .zip(&self.alpha)
            .map(|(&xk, &a)| (x - xk).abs().powf(a))
            .product();
        Ok(self.pieces[piece] * prod)
    }

    /// Node values `alpha_k W'(x_k) / 2` of `V`.
    pub fn v_node_values(&self, nodes: &NodeData) -> Vec<f64> {
        self.alpha
            .iter()
            .zip(&nodes.wprime)
            .map(|(&a, &d)| 0.5 * a * d)
            .collect()
    }

    pub fn eval_v(&self, x: f64, t: f64) -> Result<f64> {
        let nodes = self.node_data(t)?;
        Ok(nodes.interpolate(&self.v_node_values(&nodes), x))
    }

    /// `V(x)` together with `sum alpha_k / (x - x_k)` and
    /// `-sum alpha_k xdot_k / (x - x_k)`.
    ///
    /// At a node the logarithmic derivatives are undefined and
    /// [`Error::NodeCollision`] is returned with `V` attached.
    pub fn eval_v_and_logderivs(&self, x: f64, t: f64) -> Result<LogDerivatives> {
        let nodes = self.node_data(t)?;
        let v = nodes.interpolate(&self.v_node_values(&nodes), x);
        if let Some(node) = nodes.x.iter().position(|&xk| xk == x) {
            return Err(Error::NodeCollision { node, v });
        }
        let mut dlogw_dx = 0.0;
        let mut dlogw_dt = 0.0;
        for ((&xk, &vk), &a) in nodes.x.iter().zip(&nodes.xdot).zip(&self.alpha) {
            dlogw_dx += a / (x - xk);
            dlogw_dt -= a * vk / (x - xk);
        }
        Ok(LogDerivatives {
            v,
            dlogw_dx,
            dlogw_dt,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cheb2() -> GeneralizedJacobiWeight {
        GeneralizedJacobiWeight::fixed(vec![0.5, 0.5], &[-1.0, 1.0]).unwrap()
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            GeneralizedJacobiWeight::fixed(vec![0.5, 0.5], &[1.0, 1.0]),
            Err(Error::NonDistinctEndpoints { .. })
        ));
        assert!(matches!(
            GeneralizedJacobiWeight::fixed(vec![-1.5, 0.5], &[-1.0, 1.0]),
            Err(Error::BadExponent { index: 0, .. })
        ));
        assert!(matches!(
            GeneralizedJacobiWeight::new(
                vec![0.5, 0.5, 0.5],
                vec![1.0, 0.0],
                EndpointTrajectory::fixed(&[-1.0, 0.0, 1.0])
            ),
            Err(Error::BadConstant { index: 1, .. })
        ));
        assert!(matches!(
            GeneralizedJacobiWeight::new(
                vec![0.5, 0.5, 0.5],
                vec![1.0, 1.0, 1.0],
                EndpointTrajectory::fixed(&[-1.0, 0.0, 1.0])
            ),
            Err(Error::LengthMismatch(_))
        ));
        // ordering is checked at the reference time only
        let crossing = EndpointTrajectory::affine(&[-1.0, 1.0], &[0.0, -4.0]);
        assert!(GeneralizedJacobiWeight::new(vec![0.5, 0.5], vec![1.0], crossing.clone()).is_ok());
        assert!(GeneralizedJacobiWeight::new(
            vec![0.5, 0.5],
            vec![1.0],
            crossing.with_reference_time(1.0)
        )
        .is_err());
    }

    #[test]
    fn node_derivative_values() {
        let w = cheb2();
        let nd = w.node_data(0.0).unwrap();
        assert_eq!(nd.wprime, vec![-2.0, 2.0]);
        assert_eq!(nd.xdot, vec![0.0, 0.0]);
        let d = node_derivatives(&[-1.0, 0.0, 1.0]);
        assert_eq!(d, vec![2.0, -1.0, 2.0]);
        let d = node_derivatives(&[-2.0, -0.5, 0.3, 4.0]);
        for j in 0..4 {
            let sign = if (4 - 1 - j) % 2 == 0 { 1.0 } else { -1.0 };
            assert!(d[j] * sign > 0.0);
        }
    }

    #[test]
    fn trajectory_derivatives() {
        let tr = EndpointTrajectory::polynomial(vec![vec![1.0, 2.0, 3.0], vec![0.5]]);
        assert_relative_eq!(tr.positions(2.0)[0], 1.0 + 4.0 + 12.0);
        assert_relative_eq!(tr.velocities(2.0)[0], 2.0 + 12.0);
        assert_eq!(tr.velocities(2.0)[1], 0.0);
    }

    #[test]
    fn weight_values() {
        let w = cheb2();
        assert_relative_eq!(w.eval(0.0, 0.0).unwrap(), 1.0);
        assert_eq!(w.eval(2.0, 0.0).unwrap(), 0.0);
        assert_eq!(w.eval(1.0, 0.0).unwrap(), 0.0);
        let w3 = GeneralizedJacobiWeight::fixed(vec![1.0, 1.0, 1.0], &[-1.0, 0.0, 1.0]).unwrap();
        assert_relative_eq!(w3.eval(0.5, 0.0).unwrap(), 0.375);
    }

    #[test]
    fn endpoint_conventions() {
        let w = GeneralizedJacobiWeight::new(
            vec![0.5, 0.0, 1.0],
            vec![2.0, 3.0],
            EndpointTrajectory::fixed(&[-1.0, 0.0, 1.0]),
        )
        .unwrap();
        // zero exponent at the interior node: right piece value
        assert_relative_eq!(w.eval(0.0, 0.0).unwrap(), 3.0);
        let w = GeneralizedJacobiWeight::fixed(vec![-0.5, 0.5], &[-1.0, 1.0]).unwrap();
        assert!(matches!(w.eval(-1.0, 0.0), Err(Error::NonFinite { node: 0 })));
    }

    #[test]
    fn v_of_chebyshev_second_kind() {
        let w = cheb2();
        assert_relative_eq!(w.eval_v(0.0, 0.0).unwrap(), 0.0);
        assert_relative_eq!(w.eval_v(0.3, 0.0).unwrap(), 0.15, epsilon = 1e-15);
        match w.eval_v_and_logderivs(1.0, 0.0) {
            Err(Error::NodeCollision { node: 1, v }) => assert_relative_eq!(v, 0.5),
            other => panic!("unexpected {other:?}"),
        }
        let d = w.eval_v_and_logderivs(0.4, 0.0).unwrap();
        assert_eq!(d.dlogw_dt, 0.0);
        // d/dx log (1 - x^2)^{1/2} = -x / (1 - x^2)
        assert_relative_eq!(d.dlogw_dx, -0.4 / (1.0 - 0.16), max_relative = 1e-14);
    }

    #[test]
    fn v_matches_node_values() {
        let w = GeneralizedJacobiWeight::new(
            vec![0.3, 1.2, 0.7, 2.0],
            vec![1.0, 0.5, 2.0],
            EndpointTrajectory::fixed(&[-1.3, -0.2, 0.4, 1.9]),
        )
        .unwrap();
        let nd = w.node_data(0.0).unwrap();
        for (j, &xj) in nd.x.iter().enumerate() {
            assert_relative_eq!(
                w.eval_v(xj, 0.0).unwrap(),
                w.alpha()[j] * nd.wprime[j] / 2.0,
                max_relative = 1e-14
            );
        }
    }
}
