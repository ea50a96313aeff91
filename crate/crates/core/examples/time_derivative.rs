// Finite-difference checks of the flow: the right-hand side against centred
// differences of directly computed states, and the ladder formula for
// d p_n / dt at a fixed point and along each endpoint.

use semiclassical::evolution::{pn_time_derivative_check, rhs_consistency};
use semiclassical::{EndpointTrajectory, GeneralizedJacobiWeight, Result};

pub struct Orders {
    /// RHS errors at h = 1e-3 and 5e-4.
    pub rhs_errors: [f64; 2],
    /// p_n check residuals at h = 1e-4 and 5e-5.
    pub pn_residuals: [f64; 2],
}

impl Orders {
    pub fn rhs_order(&self) -> f64 {
        (self.rhs_errors[0] / self.rhs_errors[1]).log2()
    }

    pub fn pn_order(&self) -> f64 {
        (self.pn_residuals[0] / self.pn_residuals[1]).log2()
    }
}

pub fn run_example() -> Result<Orders> {
    let w = GeneralizedJacobiWeight::new(
        vec![0.5, 0.5, 0.5],
        vec![1.0, 1.0],
        EndpointTrajectory::affine(&[-1.0, 0.0, 1.0], &[0.0, 1.0, 0.0]),
    )?;
    let (n, t) = (5, 0.1);
    let e = rhs_consistency(&w, n, t, &[1e-3, 5e-4], 64)?;
    let p1 = pn_time_derivative_check(&w, n, 0.47, t, 1e-4, 64)?;
    let p2 = pn_time_derivative_check(&w, n, 0.47, t, 5e-5, 64)?;
    let orders = Orders {
        rhs_errors: [e[0], e[1]],
        pn_residuals: [p1.max_residual(), p2.max_residual()],
    };
    println!("rhs vs centred differences: {:.3e}, {:.3e}  order {:.2}", e[0], e[1], orders.rhs_order());
    println!(
        "dp_n/dt at x = 0.47: fd {:.10} formula {:.10}; residuals {:.3e}, {:.3e}  order {:.2}",
        p1.fd,
        p1.rhs,
        orders.pn_residuals[0],
        orders.pn_residuals[1],
        orders.pn_order()
    );
    Ok(orders)
}

fn main() -> Result<()> {
    run_example().map(|_| ())
}
