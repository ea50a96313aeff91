// Ladder node values for a three-node weight and the identities they obey.

use semiclassical::ladder::{ladder_checks, LadderReport};
use semiclassical::{ladder_init, ladder_step, stieltjes_procedure, GeneralizedJacobiWeight, Result};

pub struct Summary {
    pub reports: Vec<LadderReport>,
    /// Largest relative gap between stepped and directly initialised values.
    pub step_gap: f64,
}

pub fn run_example() -> Result<Summary> {
    let nodes = [-1.0, 0.2, 1.0];
    let w = GeneralizedJacobiWeight::fixed(vec![0.5, 0.5, 0.5], &nodes)?;
    let nmax = 10;
    let table = stieltjes_procedure(&w, 0.0, nmax + 1, 64)?;

    let mut stepped = ladder_init(&w, &table, 0.0, 0, 64)?;
    let mut reports = Vec::new();
    let mut step_gap = 0.0_f64;
    println!(" n  theta(x_1..x_3)                        residue  relation  wronskian  step");
    for n in 0..=nmax {
        let direct = ladder_init(&w, &table, 0.0, n, 64)?;
        if n > 0 {
            stepped = ladder_step(&stepped, &nodes, table.a[n - 1], table.a[n], table.b[n - 1])?;
        }
        let gap = stepped
            .theta
            .iter()
            .chain(&stepped.omega)
            .zip(direct.theta.iter().chain(&direct.omega))
            .map(|(s, d)| (s - d).abs() / d.abs().max(1e-300))
            .fold(0.0, f64::max);
        step_gap = step_gap.max(gap);
        let rep = ladder_checks(&w, &table, &direct, 0.0, 64, 20, n as u64)?;
        println!(
            "{n:2}  {:>11.6} {:>11.6} {:>11.6}  {:.1e}  {:.1e}   {:.1e}    {gap:.1e}",
            direct.theta[0],
            direct.theta[1],
            direct.theta[2],
            rep.max_residue_gap(),
            rep.relation_residual,
            rep.wronskian_dev.unwrap_or(0.0),
        );
        reports.push(rep);
    }
    Ok(Summary { reports, step_gap })
}

fn main() -> Result<()> {
    run_example().map(|_| ())
}
