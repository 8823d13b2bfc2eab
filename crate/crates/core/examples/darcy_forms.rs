//! The three equivalent evaluations of the quadratic Darcy right-hand side.

use porous_spectral::model::{rhs_darcy2d, DarcyForm};
use porous_spectral::spectral::{Field, PeriodicGrid};

fn main() -> porous_spectral::Result<()> {
    let grid = PeriodicGrid::new_1d(64)?;
    let f = Field::from_fn(grid, |x, _| {
        (1..=8).map(|k| (k as f64 * x + 0.7 * k as f64).cos() / (k * k) as f64).sum::<f64>() * 0.3
    });
    let nu = 0.1;
    let base = rhs_darcy2d(&f, nu, DarcyForm::Commutator)?;
    println!("‖RHS‖_inf = {:.6}", base.max_abs());
    for form in [DarcyForm::Expanded, DarcyForm::CommutatorLambda] {
        let other = rhs_darcy2d(&f, nu, form)?;
        println!("{form:?} vs Commutator: {:.2e}", other.max_diff(&base));
    }
    Ok(())
}
