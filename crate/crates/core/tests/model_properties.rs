mod common;

use common::{cosine_field, field_1d, grid1, modes_1d};
use porous_spectral::model::{
    darcy2d_nonlinear, rhs_darcy2d, rhs_darcy3d, rhs_expansion, rhs_forchheimer_closed, rhs_forchheimer_system,
    rhs_linear2d, DarcyForm, Depth, ExpansionState, Model, ModelKind, ModelParams,
};
use porous_spectral::spectral::{inverse_transform, transform, Field, PeriodicGrid, Spectrum};
use porous_spectral::strip::StripGrid;
use proptest::prelude::*;

const FORMS: [DarcyForm; 3] = [DarcyForm::Commutator, DarcyForm::Expanded, DarcyForm::CommutatorLambda];

fn field_2d(coeffs: &[(f64, f64)]) -> Field {
    let grid = PeriodicGrid::new_2d(32, 32).unwrap();
    let modes: Vec<_> = coeffs
        .iter()
        .enumerate()
        .map(|(i, &(a, p))| {
            let (k1, k2) = ((i % 4) as i64 + 1, (i / 4) as i64 - 1);
            (k1, k2, 0.2 * a / (k1 * k1 + k2 * k2) as f64, p)
        })
        .collect();
    cosine_field(grid, &modes)
}

/// `ℓ f̂` applied through the model's own symbol.
fn apply_symbol(model: &Model, f: &Field) -> Field {
    let s = transform(f).unwrap();
    let grid = s.grid();
    let coeffs = (0..grid.len())
        .map(|flat| {
            let (k1, k2) = grid.mode_at(flat);
            s.coeffs()[flat] * model.symbol(k1, k2)
        })
        .collect();
    inverse_transform(&Spectrum::new(grid, coeffs).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn outputs_have_zero_mean(coeffs in modes_1d(16), c3 in modes_1d(12), nu in 0.0f64..0.5) {
        let f = field_1d(64, &coeffs, 0.5);
        let mut outs = vec![rhs_linear2d(&f, nu).unwrap()];
        outs.extend(FORMS.iter().map(|&form| rhs_darcy2d(&f, nu, form).unwrap()));
        let (a, b) = rhs_expansion(&ExpansionState::new(f.clone(), f.clone()).unwrap(), nu).unwrap();
        outs.extend([a, b]);
        let g = field_2d(&c3);
        outs.extend([Depth::Finite, Depth::Infinite].iter().map(|&d| rhs_darcy3d(&g, nu, d).unwrap()));
        for out in outs {
            prop_assert!(out.mean().abs() <= 1e-13 * out.max_abs().max(1e-300));
        }
    }

    #[test]
    fn forms_agree(coeffs in modes_1d(16), nu in 0.0f64..0.5) {
        let f = field_1d(64, &coeffs, 0.5);
        let r: Vec<Field> = FORMS.iter().map(|&form| rhs_darcy2d(&f, nu, form).unwrap()).collect();
        let scale = r[0].max_abs();
        prop_assert!(r[0].max_diff(&r[1]) < 1e-12 * scale);
        prop_assert!(r[0].max_diff(&r[2]) < 1e-12 * scale);
    }

    #[test]
    fn quadratic_homogeneity(coeffs in modes_1d(16), nu in 0.0f64..0.5) {
        let f = field_1d(64, &coeffs, 0.5);
        for form in FORMS {
            let once = darcy2d_nonlinear(&f, nu, form).unwrap();
            let twice = darcy2d_nonlinear(&(&f * 2.0), nu, form).unwrap();
            prop_assert!(twice.max_diff(&(&once * 4.0)) < 1e-12 * twice.max_abs().max(1e-300));
        }
    }

    #[test]
    fn recombination(coeffs in modes_1d(16), c3 in modes_1d(12), nu in 0.0f64..0.5) {
        let g1 = grid1(64);
        let f = field_1d(64, &coeffs, 0.5);
        let g = field_2d(&c3);
        let cases = [
            (ModelKind::Linear2d, g1, f.clone()),
            (ModelKind::Darcy2d, g1, f.clone()),
            (ModelKind::Darcy3d(Depth::Finite), g.grid(), g.clone()),
            (ModelKind::Darcy3d(Depth::Infinite), g.grid(), g.clone()),
        ];
        for (kind, grid, state) in cases {
            let model = Model::new(ModelParams::new(kind, nu, 0.0, 1.0).unwrap(), grid, Default::default()).unwrap();
            let rhs = model.rhs(std::slice::from_ref(&state)).unwrap();
            let split = &apply_symbol(&model, &state) + &model.nonlinear(std::slice::from_ref(&state)).unwrap()[0];
            prop_assert!(rhs[0].max_diff(&split) < 1e-13 * rhs[0].max_abs());
        }
    }

    #[test]
    fn symbol_is_even_and_dissipative(nu in 0.0f64..2.0, k1 in -40i64..40, k2 in -40i64..40) {
        for kind in [ModelKind::Linear2d, ModelKind::Darcy3d(Depth::Finite), ModelKind::Darcy3d(Depth::Infinite)] {
            let grid = if kind.interface_dim() == 2 { PeriodicGrid::new_2d(8, 8).unwrap() } else { grid1(8) };
            let model = Model::new(ModelParams::new(kind, nu, 0.0, 1.0).unwrap(), grid, Default::default()).unwrap();
            let (a, b) = if kind.interface_dim() == 2 { (k1, k2) } else { (k1, 0) };
            prop_assert!(model.symbol(a, b) <= 0.0);
            prop_assert_eq!(model.symbol(a, b), model.symbol(-a, -b));
            prop_assert_eq!(model.symbol(0, 0), 0.0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn forchheimer_correction_is_linear_in_lambda(coeffs in modes_1d(16), nu in 0.0f64..0.2) {
        let f = field_1d(64, &coeffs, 0.5);
        let strip = StripGrid::with_defaults(grid1(64)).unwrap();
        let darcy = rhs_darcy2d(&f, nu, DarcyForm::Commutator).unwrap();
        let c1 = &rhs_forchheimer_closed(&f, nu, 0.25, &strip).unwrap() - &darcy;
        let c2 = &rhs_forchheimer_closed(&f, nu, 0.75, &strip).unwrap() - &darcy;
        prop_assert!(c2.max_diff(&(&c1 * 3.0)) < 1e-12 * c2.max_abs().max(darcy.max_abs()));
    }

    #[test]
    fn forchheimer_paths_agree(coeffs in modes_1d(16), nu in 0.0f64..0.2, lambda in 0.0f64..1.0) {
        let f = field_1d(64, &coeffs, 0.5);
        let strip = StripGrid::with_defaults(grid1(64)).unwrap();
        let closed = rhs_forchheimer_closed(&f, nu, lambda, &strip).unwrap();
        let system = rhs_forchheimer_system(&f, nu, lambda, &strip).unwrap();
        prop_assert!(closed.max_diff(&system) < 1e-6 * system.max_abs());
    }
}

#[test]
fn forchheimer_without_inertia_is_darcy() {
    let f = field_1d(64, &[(0.4, 0.1), (-0.7, 2.0), (0.2, 4.0)], 0.5);
    let strip = StripGrid::with_defaults(grid1(64)).unwrap();
    let darcy = rhs_darcy2d(&f, 0.1, DarcyForm::Commutator).unwrap();
    assert_eq!(rhs_forchheimer_closed(&f, 0.1, 0.0, &strip).unwrap(), darcy);
    assert!(rhs_forchheimer_system(&f, 0.1, 0.0, &strip).unwrap().max_diff(&darcy) < 1e-14);
}

#[test]
fn deep_modes_see_no_bottom() {
    let grid = PeriodicGrid::new_2d(64, 64).unwrap();
    for (k1, k2) in [(8, 0), (6, 8), (-9, 5), (0, 12)] {
        let f = cosine_field(grid, &[(k1, k2, 0.05, 0.3)]);
        let fin = rhs_darcy3d(&f, 0.05, Depth::Finite).unwrap();
        let inf = rhs_darcy3d(&f, 0.05, Depth::Infinite).unwrap();
        assert!(fin.max_diff(&inf) < 1e-6 * fin.max_abs());
    }
}
