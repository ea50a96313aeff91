// Moves the middle endpoint of a three-node weight, x(t) = (-1, t, 1), and
// integrates the coefficients and ladder values along the way. Every sample
// is then rebuilt from scratch by quadrature and compared.

use semiclassical::evolution::{verify_against_direct, Deviation, EvolveOptions};
use semiclassical::{evolve, EndpointTrajectory, EvolutionReport, GeneralizedJacobiWeight, Result, Tolerance};

pub fn reference_weight() -> Result<GeneralizedJacobiWeight> {
    GeneralizedJacobiWeight::new(
        vec![0.5, 0.5, 0.5],
        vec![1.0, 1.0],
        EndpointTrajectory::affine(&[-1.0, 0.0, 1.0], &[0.0, 1.0, 0.0]),
    )
}

pub fn run_example() -> Result<(EvolutionReport, Vec<Deviation>)> {
    let w = reference_weight()?;
    let opts = EvolveOptions {
        tol: Tolerance { rtol: 1e-9, atol: 1e-12 },
        samples: 20,
        ..Default::default()
    };
    let report = evolve(&w, 5, 0.0, 0.3, opts)?;
    let devs = verify_against_direct(&w, &report, opts.npts)?;
    println!("     t       a_5          b_5           deviation");
    for (s, d) in report.samples.iter().zip(&devs) {
        println!("{:7.4}  {:.12}  {:+.12}  {:.2e}", s.t, s.a, s.b, d.max());
    }
    println!(
        "steps {} (rejected {}), conserved-sum drift {:.2e}",
        report.stats.accepted,
        report.stats.rejected,
        report.drift()
    );
    Ok((report, devs))
}

fn main() -> Result<()> {
    run_example().map(|_| ())
}
