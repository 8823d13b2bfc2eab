//! Poisson problem on the half strip against the manufactured solution
//! u = y·e^y·cos x.

use porous_spectral::spectral::{Field, PeriodicGrid};
use porous_spectral::strip::{solve_poisson_strip, StripField, StripGrid};

fn main() -> porous_spectral::Result<()> {
    let grid = PeriodicGrid::new_1d(32)?;
    let strip = StripGrid::with_defaults(grid)?;
    println!(
        "strip: depth {}, {} levels",
        strip.depth(),
        strip.levels()
    );

    let b = StripField::from_fn(strip.clone(), |x, y| 2.0 * y.exp() * x.cos());
    let g = Field::from_fn(grid, |x, _| x.cos());
    let u = solve_poisson_strip(&b, &g)?;
    let exact = StripField::from_fn(strip.clone(), |x, y| y * y.exp() * x.cos());

    let err = u
        .values()
        .iter()
        .zip(exact.values().iter())
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    println!("sup error             = {err:.2e}");
    println!("Neumann trace error   = {:.2e}", u.trace_dy().max_diff(&g));

    let ones = StripField::from_fn(strip, |_, _| 1.0);
    match solve_poisson_strip(&ones, &Field::zeros(grid)) {
        Err(e) => println!("b = 1, g = 0 rejected: {e}"),
        Ok(_) => println!("b = 1, g = 0 unexpectedly accepted"),
    }
    Ok(())
}
