// Translating the support shifts b_n and leaves a_n alone; dilating it by
// a factor s scales both by s.

use semiclassical::evolution::EvolveOptions;
use semiclassical::{evolve, EndpointTrajectory, GeneralizedJacobiWeight, Result};

pub struct Covariance {
    /// `max |a_n(t) - a_n(0)|` and `max |b_n(t) - b_n(0) - t|` under translation.
    pub translation: (f64, f64),
    /// `max |a_n(t) / a_n(0) - (1 + t)|` under dilation.
    pub dilation: f64,
}

pub fn run_example() -> Result<Covariance> {
    let n = 4;
    let opts = EvolveOptions {
        samples: 11,
        ..Default::default()
    };

    let shifted = GeneralizedJacobiWeight::new(
        vec![0.5, 1.5],
        vec![1.0],
        EndpointTrajectory::affine(&[-1.0, 1.0], &[1.0, 1.0]),
    )?;
    let rep = evolve(&shifted, n, 0.0, 1.0, opts)?;
    let s0 = &rep.samples[0];
    let mut translation = (0.0_f64, 0.0_f64);
    for s in &rep.samples {
        translation.0 = translation.0.max((s.a - s0.a).abs());
        translation.1 = translation.1.max((s.b - s0.b - s.t).abs());
    }

    // x_k(t) = x_k(0) (1 + t)
    let scaled = GeneralizedJacobiWeight::new(
        vec![0.5, 1.5],
        vec![1.0],
        EndpointTrajectory::affine(&[-1.0, 1.0], &[-1.0, 1.0]),
    )?;
    let rep = evolve(&scaled, n, 0.0, 1.0, opts)?;
    let a0 = rep.samples[0].a;
    let dilation = rep
        .samples
        .iter()
        .map(|s| (s.a / a0 - (1.0 + s.t)).abs())
        .fold(0.0, f64::max);

    println!("translation: |da| <= {:.1e}, |db - t| <= {:.1e}", translation.0, translation.1);
    println!("dilation:    |a/a0 - (1 + t)| <= {dilation:.1e}");
    Ok(Covariance { translation, dilation })
}

fn main() -> Result<()> {
    run_example().map(|_| ())
}
