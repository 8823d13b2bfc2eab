//! Three-dimensional model on a single mode, finite and infinite depth.

use porous_spectral::model::{rhs_darcy3d, Depth};
use porous_spectral::spectral::{transform, Field, PeriodicGrid};

fn main() -> porous_spectral::Result<()> {
    let grid = PeriodicGrid::new_2d(32, 32)?;
    let a = 0.3;
    let f = Field::from_fn(grid, |x1, _| a * x1.cos());
    let (t1, t2) = (1f64.tanh(), 2f64.tanh());

    for depth in [Depth::Finite, Depth::Infinite] {
        let s = transform(&rhs_darcy3d(&f, 0.0, depth)?)?;
        println!(
            "{depth:?}: cos x₁ {:+.12}, cos 2x₁ {:+.12}",
            2.0 * s.coeff(1, 0).re,
            2.0 * s.coeff(2, 0).re
        );
    }
    println!("closed form (finite): cos x₁ {:+.12}, cos 2x₁ {:+.12}", -a * t1, a * a * (t1 * t2 - 1.0));

    let high = Field::from_fn(grid, |x1, x2| 0.05 * (6.0 * x1 + 8.0 * x2).cos());
    let fin = rhs_darcy3d(&high, 0.0, Depth::Finite)?;
    let inf = rhs_darcy3d(&high, 0.0, Depth::Infinite)?;
    println!("|ξ| = 10: finite vs infinite relative gap {:.2e}", fin.max_diff(&inf) / fin.max_abs());
    Ok(())
}
