//! The commutator identity: the strip solve and the closed boundary formula
//! give the same trace.

use porous_spectral::spectral::{Field, PeriodicGrid};
use porous_spectral::strip::{verify_p1x, StripGrid};

fn main() -> porous_spectral::Result<()> {
    let grid = PeriodicGrid::new_1d(64)?;
    let strip = StripGrid::with_defaults(grid)?;
    let h = Field::from_fn(grid, |x, _| 0.3 * x.cos() + 0.1 * (4.0 * x + 1.0).sin());
    let phi = Field::from_fn(grid, |x, _| (2.0 * x).sin() - 0.2 * (7.0 * x).cos());

    let (numeric, formula) = verify_p1x(&h, &phi, &strip)?;
    println!("max |∂₁X(·,0)|           = {:.6}", numeric.max_abs());
    println!("max |∂₁[h,H]∂₁φ|         = {:.6}", formula.max_abs());
    println!("difference               = {:.2e}", numeric.max_diff(&formula));
    Ok(())
}
