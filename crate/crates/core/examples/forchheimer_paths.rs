//! Forchheimer right-hand side through the closed boundary formula and
//! through the two strip solves.

use porous_spectral::model::{rhs_darcy2d, rhs_forchheimer_closed, rhs_forchheimer_system, DarcyForm};
use porous_spectral::spectral::{transform, Field, PeriodicGrid};
use porous_spectral::strip::StripGrid;

fn main() -> porous_spectral::Result<()> {
    let grid = PeriodicGrid::new_1d(64)?;
    let strip = StripGrid::with_defaults(grid)?;
    let (nu, lambda) = (0.05, 0.3);

    let f = Field::from_fn(grid, |x, _| 0.2 * x.cos() + 0.05 * (2.0 * x + 0.3).sin() - 0.02 * (5.0 * x).cos());
    let closed = rhs_forchheimer_closed(&f, nu, lambda, &strip)?;
    let system = rhs_forchheimer_system(&f, nu, lambda, &strip)?;
    let darcy = rhs_darcy2d(&f, nu, DarcyForm::Commutator)?;
    println!("closed vs system        = {:.2e}", closed.max_diff(&system));
    println!("size of the correction  = {:.4e}", closed.max_diff(&darcy));

    // One cosine, no surface tension: the k = 1 coefficient per path.
    let a = 0.2;
    let f = Field::from_fn(grid, |x, _| a * x.cos());
    for (name, rhs) in [
        ("closed", rhs_forchheimer_closed(&f, 0.0, lambda, &strip)?),
        ("system", rhs_forchheimer_system(&f, 0.0, lambda, &strip)?),
    ] {
        let c = 2.0 * transform(&rhs)?.coeff(1, 0).re;
        println!("{name}: cos x coefficient {c:.12}  (−a − (2/3)λa² = {:.12})", -a - 2.0 / 3.0 * lambda * a * a);
    }
    Ok(())
}
