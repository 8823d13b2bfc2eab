//! Full quadratic Darcy model against the order-0/order-1 hierarchy for
//! decreasing steepness.

use porous_spectral::model::{Model, ModelKind, ModelParams};
use porous_spectral::spectral::{Field, PeriodicGrid};
use porous_spectral::time_march::{initial_state, integrate, Scheme, StepConfig};

fn main() -> porous_spectral::Result<()> {
    let grid = PeriodicGrid::new_1d(64)?;
    let nu = 0.1;
    let h0 = Field::from_fn(grid, |x, _| x.cos() + 0.5 * (2.0 * x + 0.7).cos());
    let config = StepConfig::new(1e-3, 0.5, Scheme::IfRk4, 500)?;

    let mut previous: Option<(f64, f64)> = None;
    for sigma in [0.2, 0.1, 0.05, 0.025] {
        let full = Model::new(ModelParams::new(ModelKind::Darcy2d, nu, 0.0, sigma)?, grid, Default::default())?;
        let hier = Model::new(ModelParams::new(ModelKind::Expansion2d, nu, 0.0, sigma)?, grid, Default::default())?;
        let f = integrate(&full, &initial_state(&full, &(&h0 * sigma))?, &config, |_| {})?;
        let h = integrate(&hier, &initial_state(&hier, &h0)?, &config, |_| {})?;
        let err = f.last().observable.max_diff(&h.last().observable);
        match previous {
            Some((s, e)) => println!("σ = {sigma:<6} error {err:.3e}  order {:.3}", (e / err).ln() / (s / sigma).ln()),
            None => println!("σ = {sigma:<6} error {err:.3e}"),
        }
        previous = Some((sigma, err));
    }
    Ok(())
}
