use std::num::NonZeroUsize;
use std::sync::Arc;

use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::PeriodicGrid;

/// Vertical discretisation of the truncated strip `[-D, 0]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StripConfig {
    pub depth_truncation: f64,
    pub panels: usize,
    pub nodes_per_panel: usize,
    /// Width ratio between consecutive panels, counted from the top down.
    pub grading: f64,
}

impl Default for StripConfig {
    fn default() -> Self {
        Self {
            depth_truncation: 18.0,
            panels: 12,
            nodes_per_panel: 8,
            grading: 1.5,
        }
    }
}

#[derive(Debug, Clone)]
struct Panel {
    lo: f64,
    hi: f64,
    start: usize,
}

/// Gauss rule on a sub-interval of a panel, with the interpolation matrix
/// taking the panel's nodal values to the sub-rule points.
#[derive(Debug, Clone)]
struct SubRule {
    points: Vec<f64>,
    weights: Vec<f64>,
    /// Row-major `points.len() × nodes_per_panel`.
    interp: Vec<f64>,
}

#[derive(Debug, Clone)]
struct PartialRules {
    panel: usize,
    below: SubRule,
    above: SubRule,
}

/// Horizontal periodic grid times composite Gauss–Legendre nodes on `[-D, 0]`.
///
/// Panels are geometrically graded so the thinnest one touches `x₂ = 0`,
/// where the exponential profiles `e^{|k| x₂}` vary fastest.
#[derive(Debug, Clone)]
pub struct StripGrid {
    horizontal: PeriodicGrid,
    config: StripConfig,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    panels: Vec<Panel>,
    partial: Vec<PartialRules>,
    /// Per-panel differentiation matrices, row-major `m × m`.
    diff: Vec<Vec<f64>>,
    /// Per-panel interpolation row evaluating the panel polynomial at its top end.
    top_row: Vec<f64>,
}

fn gauss_rule(m: usize) -> Vec<(f64, f64)> {
    let rule = GaussLegendre::new(NonZeroUsize::new(m).expect("nonzero rule size"));
    let mut pairs = rule.as_node_weight_pairs().to_vec();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs
}

fn barycentric_weights(t: &[f64]) -> Vec<f64> {
    (0..t.len())
        .map(|j| {
            let prod: f64 = (0..t.len())
                .filter(|&l| l != j)
                .map(|l| t[j] - t[l])
                .product();
            1.0 / prod
        })
        .collect()
}

/// Lagrange basis values at `x` for nodes `t`.
fn lagrange_row(t: &[f64], bary: &[f64], x: f64) -> Vec<f64> {
    if let Some(j) = t.iter().position(|&tj| tj == x) {
        let mut row = vec![0.0; t.len()];
        row[j] = 1.0;
        return row;
    }
    let terms: Vec<f64> = t.iter().zip(bary).map(|(&tj, &wj)| wj / (x - tj)).collect();
    let denom: f64 = terms.iter().sum();
    terms.iter().map(|v| v / denom).collect()
}

impl StripGrid {
    pub fn new(horizontal: PeriodicGrid, config: StripConfig) -> Result<Self> {
        if horizontal.dim() != 1 {
            return Err(Error::Dimension("strip grids need a 1D horizontal grid".into()));
        }
        let StripConfig {
            depth_truncation: depth,
            panels,
            nodes_per_panel: m,
            grading,
        } = config;
        if !(depth.is_finite() && depth > 0.0) {
            return Err(Error::InvalidInput(format!("depth truncation {depth} must be positive")));
        }
        if panels == 0 || m < 2 {
            return Err(Error::InvalidInput(
                "strip needs at least one panel and two nodes per panel".into(),
            ));
        }
        if !(grading.is_finite() && grading >= 1.0) {
            return Err(Error::InvalidInput(format!("panel grading {grading} must be >= 1")));
        }

        // Widths from the top down: w0, w0 r, w0 r², ... summing to D.
        let total: f64 = (0..panels).map(|i| grading.powi(i as i32)).sum();
        let w0 = depth / total;
        let mut edges = vec![0.0];
        for i in 0..panels {
            let next = edges[i] - w0 * grading.powi(i as i32);
            edges.push(next);
        }
        edges[panels] = -depth;
        edges.reverse();

        let rule = gauss_rule(m);
        let sub_rule = gauss_rule(2 * m);
        let mut nodes = Vec::with_capacity(panels * m);
        let mut weights = Vec::with_capacity(panels * m);
        let mut panel_list = Vec::with_capacity(panels);
        for p in 0..panels {
            let (lo, hi) = (edges[p], edges[p + 1]);
            panel_list.push(Panel {
                lo,
                hi,
                start: nodes.len(),
            });
            for &(x, w) in &rule {
                nodes.push(0.5 * (hi - lo) * x + 0.5 * (hi + lo));
                weights.push(0.5 * (hi - lo) * w);
            }
        }

        let mut partial = Vec::with_capacity(nodes.len());
        let mut diff = Vec::with_capacity(panels);
        let mut top_row = Vec::new();
        for (p, panel) in panel_list.iter().enumerate() {
            let t = &nodes[panel.start..panel.start + m];
            let bary = barycentric_weights(t);
            let mut d = vec![0.0; m * m];
            for i in 0..m {
                let mut diag = 0.0;
                for j in 0..m {
                    if i != j {
                        let v = bary[j] / bary[i] / (t[i] - t[j]);
                        d[i * m + j] = v;
                        diag -= v;
                    }
                }
                d[i * m + i] = diag;
            }
            diff.push(d);
            if p + 1 == panels {
                top_row = lagrange_row(t, &bary, 0.0);
            }
            for &y in t {
                let sub = |a: f64, b: f64| {
                    let mut points = Vec::with_capacity(sub_rule.len());
                    let mut w = Vec::with_capacity(sub_rule.len());
                    let mut interp = Vec::with_capacity(sub_rule.len() * m);
                    for &(x, wx) in &sub_rule {
                        let s = 0.5 * (b - a) * x + 0.5 * (b + a);
                        points.push(s);
                        w.push(0.5 * (b - a) * wx);
                        interp.extend(lagrange_row(t, &bary, s));
                    }
                    SubRule {
                        points,
                        weights: w,
                        interp,
                    }
                };
                partial.push(PartialRules {
                    panel: p,
                    below: sub(panel.lo, y),
                    above: sub(y, panel.hi),
                });
            }
        }

        Ok(Self {
            horizontal,
            config,
            nodes,
            weights,
            panels: panel_list,
            partial,
            diff,
            top_row,
        })
    }

    /// Default discretisation (`D = 18`, 12 graded panels of 8 nodes), shared behind an `Arc`.
    pub fn with_defaults(horizontal: PeriodicGrid) -> Result<Arc<Self>> {
        Self::new(horizontal, StripConfig::default()).map(Arc::new)
    }

    pub fn horizontal(&self) -> PeriodicGrid {
        self.horizontal
    }

    pub fn config(&self) -> StripConfig {
        self.config
    }

    pub fn depth(&self) -> f64 {
        self.config.depth_truncation
    }

    /// Vertical nodes, ascending from the bottom of the strip.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn levels(&self) -> usize {
        self.nodes.len()
    }

    /// `∫_{-D}^0 kernel(s) p(s) ds` by the composite rule.
    pub(crate) fn integrate<T>(&self, profile: &[T], kernel: impl Fn(f64) -> f64) -> T
    where
        T: Copy + std::iter::Sum<T> + std::ops::Mul<f64, Output = T>,
    {
        self.nodes
            .iter()
            .zip(&self.weights)
            .zip(profile)
            .map(|((&s, &w), &p)| p * (w * kernel(s)))
            .sum()
    }

    /// For every node `y_i`, the pair
    /// `(∫_{-D}^{y_i} K(y_i, s) p(s) ds, ∫_{y_i}^0 K(y_i, s) p(s) ds)`,
    /// with `p` interpolated inside the panel containing `y_i`.
    pub(crate) fn split_integrals(
        &self,
        profile: &[Complex64],
        kernel: impl Fn(f64, f64) -> f64,
    ) -> (Vec<Complex64>, Vec<Complex64>) {
        let m = self.config.nodes_per_panel;
        let zero = Complex64::new(0.0, 0.0);
        let mut below = vec![zero; self.nodes.len()];
        let mut above = vec![zero; self.nodes.len()];
        for (i, &y) in self.nodes.iter().enumerate() {
            let rules = &self.partial[i];
            let panel = &self.panels[rules.panel];
            let local = &profile[panel.start..panel.start + m];
            let sub_sum = |rule: &SubRule| -> Complex64 {
                rule.points
                    .iter()
                    .zip(&rule.weights)
                    .enumerate()
                    .map(|(q, (&s, &w))| {
                        let row = &rule.interp[q * m..(q + 1) * m];
                        let value: Complex64 = row.iter().zip(local).map(|(&c, &v)| v * c).sum();
                        value * (w * kernel(y, s))
                    })
                    .sum()
            };
            let full = |range: std::ops::Range<usize>| -> Complex64 {
                range
                    .map(|j| profile[j] * (self.weights[j] * kernel(y, self.nodes[j])))
                    .sum()
            };
            let lo = sub_sum(&rules.below) + full(0..panel.start);
            let hi = sub_sum(&rules.above) + full(panel.start + m..self.nodes.len());
            below[i] = lo;
            above[i] = hi;
        }
        (below, above)
    }

    /// Vertical derivative of nodal data by per-panel polynomial differentiation.
    pub(crate) fn differentiate(&self, column: &[f64]) -> Vec<f64> {
        let m = self.config.nodes_per_panel;
        let mut out = vec![0.0; column.len()];
        for (panel, d) in self.panels.iter().zip(&self.diff) {
            let local = &column[panel.start..panel.start + m];
            for i in 0..m {
                out[panel.start + i] = (0..m).map(|j| d[i * m + j] * local[j]).sum();
            }
        }
        out
    }

    /// Extrapolates nodal data in the top panel to `x₂ = 0`.
    pub(crate) fn top_value(&self, column: &[f64]) -> f64 {
        let start = self.panels.last().map_or(0, |p| p.start);
        self.top_row
            .iter()
            .zip(&column[start..])
            .map(|(c, v)| c * v)
            .sum()
    }
}

impl PartialEq for StripGrid {
    fn eq(&self, other: &Self) -> bool {
        self.horizontal == other.horizontal && self.config == other.config
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strip() -> StripGrid {
        StripGrid::new(PeriodicGrid::new_1d(16).unwrap(), StripConfig::default()).unwrap()
    }

    #[test]
    fn nodes_inside_and_weights_sum_to_depth() {
        let s = strip();
        assert_eq!(s.levels(), 96);
        assert!(s.nodes().iter().all(|&y| y > -18.0 && y < 0.0));
        assert!(s.nodes().windows(2).all(|w| w[0] < w[1]));
        assert!(s.weights().iter().all(|&w| w > 0.0));
        let total: f64 = s.weights().iter().sum();
        assert!((total - 18.0).abs() < 1e-12);
    }

    #[test]
    fn graded_toward_the_top() {
        let s = strip();
        let top_gap = s.nodes()[95] - s.nodes()[94];
        let bottom_gap = s.nodes()[1] - s.nodes()[0];
        assert!(bottom_gap > 20.0 * top_gap);
    }

    #[test]
    fn integrates_exponentials() {
        let s = strip();
        let ones = vec![1.0; s.levels()];
        for a in [1.0, 2.0, 3.0, 10.0, 30.0] {
            let got = s.integrate(&ones, |y| (a * y).exp());
            let exact = (1.0 - (-a * 18.0f64).exp()) / a;
            assert!((got - exact).abs() < 1e-13, "a={a}: {got} vs {exact}");
        }
    }

    #[test]
    fn split_integrals_of_exponential_profile() {
        let s = strip();
        let profile: Vec<Complex64> = s
            .nodes()
            .iter()
            .map(|&y| Complex64::new((2.0 * y).exp(), 0.0))
            .collect();
        let (below, above) = s.split_integrals(&profile, |_, _| 1.0);
        for (i, &y) in s.nodes().iter().enumerate() {
            let lo = 0.5 * ((2.0 * y).exp() - (-36.0f64).exp());
            let hi = 0.5 * (1.0 - (2.0 * y).exp());
            assert!((below[i].re - lo).abs() < 1e-9, "below at {y}: {} vs {lo}", below[i].re);
            assert!((above[i].re - hi).abs() < 1e-9, "above at {y}: {} vs {hi}", above[i].re);
        }
    }

    #[test]
    fn differentiation_and_top_extrapolation() {
        let s = strip();
        let column: Vec<f64> = s.nodes().iter().map(|&y| (3.0 * y).exp()).collect();
        let d = s.differentiate(&column);
        for (i, &y) in s.nodes().iter().enumerate() {
            assert!((d[i] - 3.0 * (3.0 * y).exp()).abs() < 1e-6, "at {y}: {}", d[i]);
        }
        assert!((s.top_value(&column) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn rejects_bad_configs() {
        let g = PeriodicGrid::new_1d(16).unwrap();
        let bad = StripConfig {
            depth_truncation: -1.0,
            ..StripConfig::default()
        };
        assert!(StripGrid::new(g, bad).is_err());
        let bad = StripConfig {
            nodes_per_panel: 1,
            ..StripConfig::default()
        };
        assert!(StripGrid::new(g, bad).is_err());
        assert!(StripGrid::new(PeriodicGrid::new_2d(8, 8).unwrap(), StripConfig::default()).is_err());
    }
}
