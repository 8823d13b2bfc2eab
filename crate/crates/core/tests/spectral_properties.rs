mod common;

use common::{cosine_field, field_1d, grid1, modes_1d};
use num_complex::Complex64;
use porous_spectral::spectral::{
    calderon, commutator_fh, d_dx, dn0, dn0_symbol, hilbert, inverse_transform, transform, Field, PeriodicGrid,
};
use proptest::prelude::*;

/// Direct O(n²) forward transform, `f̂(k) = (1/n) Σ f(x_j) e^{−ikx_j}`.
fn naive_dft(f: &Field, k: i64) -> Complex64 {
    let x = f.grid().points(0);
    let n = x.len() as f64;
    x.iter()
        .zip(f.values())
        .map(|(&xj, &v)| Complex64::from_polar(v, -(k as f64) * xj))
        .sum::<Complex64>()
        / n
}

fn synthesize(grid: PeriodicGrid, coeffs: &[(i64, Complex64)]) -> Field {
    Field::from_fn(grid, |x, _| coeffs.iter().map(|&(k, c)| (c * Complex64::from_polar(1.0, k as f64 * x)).re).sum())
}

fn sgn(k: i64) -> f64 {
    k.signum() as f64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn round_trip(coeffs in modes_1d(10), log_n in 3u32..8) {
        let n = 1usize << log_n;
        let kmax = (n / 2 - 1).min(coeffs.len());
        let f = field_1d(n, &coeffs[..kmax], 1.0);
        let back = inverse_transform(&transform(&f).unwrap()).unwrap();
        prop_assert!(back.max_diff(&f) <= 1e-13 * f.max_abs().max(1e-300));
    }

    #[test]
    fn round_trip_2d(a in -1.0f64..1.0, b in -1.0f64..1.0, p in 0.0f64..6.0) {
        let grid = PeriodicGrid::new_2d(16, 8).unwrap();
        let f = cosine_field(grid, &[(1, 2, a, p), (3, -1, b, 0.0), (0, 3, 0.5, p)]);
        let back = inverse_transform(&transform(&f).unwrap()).unwrap();
        prop_assert!(back.max_diff(&f) <= 1e-13 * f.max_abs());
    }

    #[test]
    fn hilbert_squared_is_minus_identity(coeffs in modes_1d(20)) {
        let f = field_1d(64, &coeffs, 1.0);
        let hh = hilbert(&hilbert(&f).unwrap()).unwrap();
        prop_assert!(hh.max_diff(&(-&f)) < 1e-12 * f.max_abs());
    }

    #[test]
    fn calderon_is_hilbert_of_derivative(coeffs in modes_1d(20)) {
        let f = field_1d(64, &coeffs, 1.0);
        let lhs = calderon(&f, 1.0).unwrap();
        let rhs = hilbert(&d_dx(&f, 0).unwrap()).unwrap();
        prop_assert!(lhs.max_diff(&rhs) < 1e-12 * f.max_abs());
    }

    #[test]
    fn calderon_cubed_composes(coeffs in modes_1d(12)) {
        let f = field_1d(64, &coeffs, 1.0);
        let once = calderon(&f, 3.0).unwrap();
        let thrice = calderon(&calderon(&calderon(&f, 1.0).unwrap(), 1.0).unwrap(), 1.0).unwrap();
        prop_assert!(once.max_diff(&thrice) < 1e-12 * once.max_abs());
    }

    #[test]
    fn operators_preserve_realness(coeffs in modes_1d(20)) {
        let f = field_1d(64, &coeffs, 1.0);
        for g in [hilbert(&f).unwrap(), calderon(&f, 1.5).unwrap(), d_dx(&f, 0).unwrap(), dn0(&f)] {
            prop_assert!(transform(&g).unwrap().conjugate_symmetry_defect() < 1e-14 * g.max_abs().max(1.0));
        }
    }

    #[test]
    fn commutator_matches_double_sum(coeffs in modes_1d(2), other in modes_1d(2)) {
        let n = 16;
        let grid = grid1(n);
        let f = field_1d(n, &coeffs, 1.0);
        let g = field_1d(n, &other, 1.0);
        let ks: Vec<i64> = (-2..=2).collect();
        let fh: Vec<_> = ks.iter().map(|&k| naive_dft(&f, k)).collect();
        let gh: Vec<_> = ks.iter().map(|&k| naive_dft(&g, k)).collect();
        // Coefficients of f·Hg − H(f·g), summed over all pairs.
        let mut out: Vec<(i64, Complex64)> = Vec::new();
        for k in -4i64..=4 {
            let mut c = Complex64::new(0.0, 0.0);
            for (i, &kf) in ks.iter().enumerate() {
                for (j, &kg) in ks.iter().enumerate() {
                    if kf + kg != k {
                        continue;
                    }
                    let h_g = Complex64::new(0.0, -sgn(kg));
                    let h_k = Complex64::new(0.0, -sgn(k));
                    c += fh[i] * gh[j] * (h_g - h_k);
                }
            }
            out.push((k, c));
        }
        let expected = synthesize(grid, &out);
        let got = commutator_fh(&f, &g).unwrap();
        prop_assert!(got.max_diff(&expected) < 1e-12);
    }
}

#[test]
fn dn0_saturates_at_high_wavenumber() {
    let symbol = dn0_symbol(10, 0);
    assert!((10.0 - symbol) / 10.0 < 1e-8);
    assert!((dn0_symbol(6, 8) - 10.0 * 10f64.tanh()).abs() < 1e-12);
}

#[test]
fn spectrum_convention() {
    let f = cosine_field(grid1(32), &[(1, 0, 0.1, 0.0)]);
    let s = transform(&f).unwrap();
    assert!((s.coeff(1, 0) - Complex64::new(0.05, 0.0)).norm() < 1e-16);
    assert!((s.coeff(-1, 0) - Complex64::new(0.05, 0.0)).norm() < 1e-16);
    for k in 2..16 {
        assert!(s.coeff(k, 0).norm() < 1e-16);
    }
}
