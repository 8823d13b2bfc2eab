//! Fourier multipliers on a periodic field: Hilbert, Calderon, derivative and
//! the unit-depth Dirichlet–Neumann operator.

use porous_spectral::spectral::{calderon, d_dx, dn0, hilbert, Field, PeriodicGrid};

fn main() -> porous_spectral::Result<()> {
    let grid = PeriodicGrid::new_1d(64)?;
    let f = Field::from_fn(grid, |x, _| x.cos() + 0.5 * (3.0 * x + 0.4).sin());

    let hf = hilbert(&f)?;
    let hhf = hilbert(&hf)?;
    println!("|H(Hf) + f|_inf       = {:.2e}", hhf.max_diff(&(-&f)));

    let lam = calderon(&f, 1.0)?;
    let hd = hilbert(&d_dx(&f, 0)?)?;
    println!("|Λf - H∂f|_inf        = {:.2e}", lam.max_diff(&hd));

    let g = dn0(&f);
    println!("|G f - Λ f|_inf       = {:.3e}  (finite depth vs deep water)", g.max_diff(&lam));

    let lam3 = calderon(&f, 3.0)?;
    println!("max |Λ³ f|            = {:.6}", lam3.max_abs());
    Ok(())
}
