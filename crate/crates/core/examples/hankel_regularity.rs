// Hankel determinants of the moments stay positive while the endpoints are
// distinct. Driving two endpoints together stops the flow with a collision
// error that reports the last good time.

use semiclassical::evolution::{hankel_profile, EvolveOptions};
use semiclassical::{evolve, EndpointTrajectory, Error, GeneralizedJacobiWeight, Result};

/// Smallest determinant along the path and the reported collision time.
pub fn run_example() -> Result<(f64, f64)> {
    let w = GeneralizedJacobiWeight::new(
        vec![0.5, 0.5, 0.5],
        vec![1.0, 1.0],
        EndpointTrajectory::affine(&[-1.0, 0.2, 1.0], &[0.0, 1.0, 0.0]),
    )?;
    let mut min_det = f64::INFINITY;
    for i in 0..=7 {
        let t = 0.1 * i as f64;
        let h = hankel_profile(&w, t, 6, 64)?;
        min_det = h.iter().fold(min_det, |m, &v| m.min(v));
        println!("t = {t:.1}: H_6 = {:.4e}", h[5]);
    }
    // the middle node reaches x = 1 at t = 0.8
    let last_good = match evolve(&w, 2, 0.0, 1.5, EvolveOptions::default()) {
        Err(Error::EndpointCollision { last_good_t }) => last_good_t,
        Err(e) => return Err(e),
        Ok(_) => return Err(Error::InitFailure("flow passed through a collision".into())),
    };
    println!("min determinant {min_det:.3e}; collision reported at t = {last_good:.10}");
    Ok((min_det, last_good))
}

fn main() -> Result<()> {
    run_example().map(|_| ())
}
