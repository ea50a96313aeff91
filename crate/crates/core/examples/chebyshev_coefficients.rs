// Recurrence coefficients of two classical weights on [-1, 1].
//
// The second-kind Chebyshev weight has a_n = 1/2 and b_n = 0. For
// (1 - x)^a (1 + x)^b the coefficients have a closed form, printed next to
// the Stieltjes-procedure values.

use semiclassical::{stieltjes_procedure, GeneralizedJacobiWeight, Result, DEFAULT_NPTS};

/// `(a_n, b_n)` of the orthonormal Jacobi polynomials for `(1 - x)^a (1 + x)^b`.
pub fn jacobi_closed_form(n: usize, a: f64, b: f64) -> (f64, f64) {
    let n = n as f64;
    let s = 2.0 * n + a + b;
    let bn = (b * b - a * a) / (s * (s + 2.0));
    let an2 = 4.0 * n * (n + a) * (n + b) * (n + a + b) / (s * s * (s + 1.0) * (s - 1.0));
    (an2.sqrt(), bn)
}

/// Largest deviations `(chebyshev, jacobi)` over `n = 1..=10`.
pub fn run_example() -> Result<(f64, f64)> {
    let cheb = GeneralizedJacobiWeight::fixed(vec![0.5, 0.5], &[-1.0, 1.0])?;
    let table = stieltjes_procedure(&cheb, 0.0, 10, DEFAULT_NPTS)?;
    let mut cheb_err = 0.0_f64;
    println!("second-kind Chebyshev");
    for n in 1..=10 {
        println!("  n={n:2}  a={:.16}  b={:+.2e}", table.a[n], table.b[n]);
        cheb_err = cheb_err.max((table.a[n] - 0.5).abs()).max(table.b[n].abs());
    }

    // exponent 1.5 at x = -1 and 0.5 at x = +1
    let jac = GeneralizedJacobiWeight::fixed(vec![1.5, 0.5], &[-1.0, 1.0])?;
    let table = stieltjes_procedure(&jac, 0.0, 10, DEFAULT_NPTS)?;
    let mut jac_err = 0.0_f64;
    println!("Jacobi a = 0.5, b = 1.5");
    for n in 1..=10 {
        let (a, b) = jacobi_closed_form(n, 0.5, 1.5);
        println!("  n={n:2}  a={:.16} ({a:.16})  b={:+.16} ({b:+.16})", table.a[n], table.b[n]);
        jac_err = jac_err
            .max((table.a[n] - a).abs() / a)
            .max((table.b[n] - b).abs() / b.abs().max(1.0));
    }
    println!("max deviation: chebyshev {cheb_err:.2e}, jacobi {jac_err:.2e}");
    Ok((cheb_err, jac_err))
}

fn main() -> Result<()> {
    run_example().map(|_| ())
}
