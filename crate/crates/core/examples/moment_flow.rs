// The linear flow of nu_{n,j} for a moving two- and three-node weight,
// compared with quadrature at each sample.

use semiclassical::evolution::EvolveOptions;
use semiclassical::moment_flow::{evolve_moments, nu_by_quadrature};
use semiclassical::{EndpointTrajectory, GeneralizedJacobiWeight, Result};

pub fn weights() -> Result<Vec<GeneralizedJacobiWeight>> {
    Ok(vec![
        GeneralizedJacobiWeight::new(
            vec![0.5, 1.5],
            vec![1.0],
            EndpointTrajectory::polynomial(vec![vec![-1.0, 0.2], vec![1.0, 0.5, 0.3]]),
        )?,
        GeneralizedJacobiWeight::new(
            vec![0.5, 0.5, 0.5],
            vec![1.0, 2.0],
            EndpointTrajectory::affine(&[-1.0, 0.0, 1.0], &[0.0, 1.0, 0.0]),
        )?,
    ])
}

/// Largest relative deviation from quadrature over all weights and `n <= 6`.
pub fn run_example() -> Result<f64> {
    let opts = EvolveOptions {
        samples: 10,
        ..Default::default()
    };
    let mut worst = 0.0_f64;
    for w in weights()? {
        for n in 0..=6 {
            let rep = evolve_moments(&w, n, 0.0, 0.3, opts)?;
            let mut dev = 0.0_f64;
            for s in &rep.samples {
                let q = nu_by_quadrature(&w, n, s.t, opts.npts)?;
                let scale = q.nu.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
                for (a, b) in s.nu.iter().zip(&q.nu) {
                    dev = dev.max((a - b).abs() / scale);
                }
            }
            println!("m={} n={n}: final nu {:?}  deviation {dev:.1e}", w.m(), rep.samples.last().unwrap().nu);
            worst = worst.max(dev);
        }
    }
    Ok(worst)
}

fn main() -> Result<()> {
    run_example().map(|_| ())
}
