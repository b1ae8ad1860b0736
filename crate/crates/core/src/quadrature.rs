//! Time-integral discretizations of `∫₀^∞ k(t) P_t ω dt` for the kernels
//! `k(t) = 1` (Green operator) and `k(t) = t^{-1/2}/√π` (inverse square
//! root by subordination).

use alloc::vec::Vec;
use core::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadratureScheme {
    /// Graded Gauss–Legendre panels on `[0, t_max]`; the tail beyond
    /// `t_max` is dropped and bounded analytically.
    TruncatedExponential,
    /// Graded Gauss–Legendre panels on `[0, t_max/2]` followed by a
    /// Gauss–Laguerre rule adapted to the decay rate `gap` on the rest of
    /// the half-line.
    LaguerreComposite,
}

/// How the half-line integral is discretized.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureGrid {
    pub scheme: QuadratureScheme,
    pub t_max: f64,
    /// Gauss points per panel (and Laguerre points for the tail).
    pub nodes: usize,
    pub error_target: f64,
}

pub const DEFAULT_NODES: usize = 20;

impl QuadratureGrid {
    /// Smallest horizon with `e^{-gap·t_max} ≤ error_target`.
    pub fn required_t_max(gap: f64, error_target: f64) -> f64 {
        if gap.is_infinite() {
            0.0
        } else {
            -error_target.ln() / gap
        }
    }

    /// Grid with the horizon split at `-ln(error_target)/gap`.
    pub fn certified(scheme: QuadratureScheme, gap: f64, error_target: f64) -> Result<Self> {
        check_target(error_target)?;
        if !(gap > 0.0) {
            return Err(Error::GapUnavailable);
        }
        Ok(Self { scheme, t_max: Self::required_t_max(gap, error_target), nodes: DEFAULT_NODES, error_target })
    }

    /// Refuses grids whose horizon cannot reach the error target.
    pub fn validate(&self, gap: f64) -> Result<()> {
        check_target(self.error_target)?;
        if self.nodes < 2 {
            return Err(Error::InvalidParameter(alloc::format!("{} quadrature nodes", self.nodes)));
        }
        let required = Self::required_t_max(gap, self.error_target);
        if !(self.t_max >= required * (1.0 - 1e-12)) {
            return Err(Error::HorizonTooShort { t_max: self.t_max, required });
        }
        Ok(())
    }
}

fn check_target(target: f64) -> Result<()> {
    if target > 0.0 && target < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(target))
    }
}

/// What a quadrature evaluation actually did, with its analytic tail bound
/// (a multiplier of `‖(1−H)ω‖₂`).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureCertificate {
    pub scheme: QuadratureScheme,
    pub t_max: f64,
    pub panels: usize,
    pub nodes_per_panel: usize,
    pub evaluations: usize,
    pub tail_factor: f64,
}

/// Nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = alloc::vec![0.0; n];
    let mut w = alloc::vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { z } else { p1 };
            let pn1 = if n == 1 { 1.0 } else { p0 };
            dp = nf * (z * pn - pn1) / (z * z - 1.0);
            let dz = pn / dp;
            z -= dz;
            if dz.abs() <= 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// Nodes `x_k` and scaled weights `w_k e^{x_k}` so that
/// `∫₀^∞ f(x) dx ≈ Σ (w_k e^{x_k}) f(x_k)` for `f` decaying like `e^{-x}`.
pub fn gauss_laguerre_scaled(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x: Vec<f64> = alloc::vec![0.0; n];
    let mut w = alloc::vec![0.0; n];
    let nf = n as f64;
    let mut z = 0.0;
    for i in 0..n {
        if i == 0 {
            z = 3.0 / (1.0 + 2.4 * nf);
        } else if i == 1 {
            z += 15.0 / (1.0 + 2.5 * nf);
        } else {
            let ai = (i - 1) as f64;
            z += (1.0 + 2.55 * ai) / (1.9 * ai) * (z - x[i - 2]);
        }
        let (mut pp, mut p2) = (0.0, 0.0);
        for _ in 0..200 {
            let (mut p1, mut q2) = (1.0, 0.0);
            for j in 1..=n {
                let jf = j as f64;
                let p3 = q2;
                q2 = p1;
                p1 = ((2.0 * jf - 1.0 - z) * q2 - (jf - 1.0) * p3) / jf;
            }
            p2 = q2;
            pp = nf * (p1 - p2) / z;
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= 1e-15 * z.abs() {
                break;
            }
        }
        x[i] = z;
        // w = -1/(pp·n·p2), multiplied by e^{x}
        w[i] = (-1.0 / (pp * nf * p2)) * z.exp();
    }
    (x, w)
}

/// Panels `[0, h], [h, 2h], [2h, 4h], …` clipped at `end`.
fn graded_panels(first: f64, end: f64) -> Vec<(f64, f64)> {
    let mut panels = Vec::new();
    if !(end > 0.0) {
        return panels;
    }
    let mut a = 0.0;
    let mut b = first.min(end);
    loop {
        panels.push((a, b));
        if b >= end {
            return panels;
        }
        a = b;
        b = (2.0 * b).min(end);
    }
}

fn legendre_on_panels(panels: &[(f64, f64)], n: usize, mut push: impl FnMut(f64, f64)) {
    let (x, w) = gauss_legendre(n);
    for &(a, b) in panels {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        for (xi, wi) in x.iter().zip(&w) {
            push(mid + half * xi, half * wi);
        }
    }
}

/// A discrete rule `∫ k(t) f(t) dt ≈ Σ w_j f(t_j)` with the kernel folded
/// into the weights.
#[derive(Clone, Debug, PartialEq)]
pub struct TimeRule {
    pub points: Vec<(f64, f64)>,
    pub certificate: QuadratureCertificate,
}

impl TimeRule {
    /// Applies the rule to `e^{-λt}`.
    pub fn integrate_exponential(&self, lambda: f64) -> f64 {
        self.points.iter().map(|&(t, w)| w * (-lambda * t).exp()).sum()
    }
}

/// Rule for `∫₀^∞ P_t(1−H) dt` on a spectrum in `[gap, lambda_max]`.
pub fn green_rule(grid: &QuadratureGrid, gap: f64, lambda_max: f64) -> Result<TimeRule> {
    grid.validate(gap)?;
    let mut points = Vec::new();
    if gap.is_infinite() {
        return Ok(empty_rule(grid));
    }
    let first = 1.0 / lambda_max;
    let (panels, tail_factor, laguerre) = match grid.scheme {
        QuadratureScheme::TruncatedExponential => {
            (graded_panels(first, grid.t_max), (-gap * grid.t_max).exp() / gap, 0)
        }
        QuadratureScheme::LaguerreComposite => (graded_panels(first, 0.5 * grid.t_max), 0.0, grid.nodes),
    };
    legendre_on_panels(&panels, grid.nodes, |t, w| points.push((t, w)));
    if laguerre > 0 {
        let split = 0.5 * grid.t_max;
        let (x, w) = gauss_laguerre_scaled(laguerre);
        for (xk, wk) in x.iter().zip(&w) {
            points.push((split + xk / gap, wk / gap));
        }
    }
    Ok(finish(grid, points, panels.len(), tail_factor))
}

/// Rule for `Γ(1/2)^{-1} ∫₀^∞ t^{-1/2} P_t(1−H) dt`.
///
/// Near zero the substitution `t = u²` turns `t^{-1/2} dt` into `2 du`,
/// so the Gauss panels are laid out in `u`.
pub fn subordination_rule(grid: &QuadratureGrid, gap: f64, lambda_max: f64) -> Result<TimeRule> {
    grid.validate(gap)?;
    if gap.is_infinite() {
        return Ok(empty_rule(grid));
    }
    let norm = 1.0 / PI.sqrt();
    let mut points = Vec::new();
    let first = 1.0 / lambda_max.sqrt();
    let (t_end, tail_factor, laguerre) = match grid.scheme {
        QuadratureScheme::TruncatedExponential => {
            let t = grid.t_max;
            (t, norm * (-gap * t).exp() / (gap * t.sqrt()), 0)
        }
        QuadratureScheme::LaguerreComposite => (0.5 * grid.t_max, 0.0, grid.nodes),
    };
    let panels = graded_panels(first, t_end.sqrt());
    legendre_on_panels(&panels, grid.nodes, |u, w| points.push((u * u, 2.0 * w * norm)));
    if laguerre > 0 {
        let (x, w) = gauss_laguerre_scaled(laguerre);
        for (xk, wk) in x.iter().zip(&w) {
            let t = t_end + xk / gap;
            points.push((t, norm * wk / (gap * t.sqrt())));
        }
    }
    Ok(finish(grid, points, panels.len(), tail_factor))
}

fn empty_rule(grid: &QuadratureGrid) -> TimeRule {
    finish(grid, Vec::new(), 0, 0.0)
}

fn finish(grid: &QuadratureGrid, points: Vec<(f64, f64)>, panels: usize, tail_factor: f64) -> TimeRule {
    let certificate = QuadratureCertificate {
        scheme: grid.scheme,
        t_max: grid.t_max,
        panels,
        nodes_per_panel: grid.nodes,
        evaluations: points.len(),
        tail_factor,
    };
    TimeRule { points, certificate }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_integrates_polynomials() {
        for n in [1, 2, 5, 20] {
            let (x, w) = gauss_legendre(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
            for k in 0..2 * n {
                let exact = if k % 2 == 0 { 2.0 / (k as f64 + 1.0) } else { 0.0 };
                let q: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(k as i32)).sum();
                assert!((q - exact).abs() < 1e-13, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn laguerre_integrates_moments() {
        let n = 20;
        let (x, w) = gauss_laguerre_scaled(n);
        let mut fact = 1.0;
        for k in 0..12 {
            if k > 0 {
                fact *= k as f64;
            }
            let q: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * (-xi).exp() * xi.powi(k)).sum();
            assert!((q - fact).abs() <= 1e-12 * fact, "k={k}: {q} vs {fact}");
        }
    }

    #[test]
    fn green_rule_integrates_exponentials() {
        for scheme in [QuadratureScheme::TruncatedExponential, QuadratureScheme::LaguerreComposite] {
            let grid = QuadratureGrid::certified(scheme, 0.3, 1e-10).unwrap();
            let rule = green_rule(&grid, 0.3, 50.0).unwrap();
            for lambda in [0.3, 0.31, 1.0, 7.0, 50.0] {
                let q = rule.integrate_exponential(lambda);
                assert!((q * lambda - 1.0).abs() < 2e-10, "{scheme:?} λ={lambda}: {}", q * lambda);
            }
        }
    }

    #[test]
    fn subordination_rule_integrates_inverse_sqrt() {
        for scheme in [QuadratureScheme::TruncatedExponential, QuadratureScheme::LaguerreComposite] {
            let grid = QuadratureGrid::certified(scheme, 2.0, 1e-8).unwrap();
            let rule = subordination_rule(&grid, 2.0, 400.0).unwrap();
            for lambda in [2.0, 4.0, 33.0, 400.0] {
                let q = rule.integrate_exponential(lambda);
                assert!((q * lambda.sqrt() - 1.0).abs() < 1e-8, "{scheme:?} λ={lambda}");
            }
        }
    }

    #[test]
    fn short_horizon_is_refused() {
        let grid = QuadratureGrid {
            scheme: QuadratureScheme::TruncatedExponential,
            t_max: 1.0,
            nodes: 20,
            error_target: 1e-6,
        };
        match grid.validate(3.0) {
            Err(Error::HorizonTooShort { required, .. }) => {
                assert!((required - (1e6_f64).ln() / 3.0).abs() < 1e-12)
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(QuadratureGrid::certified(QuadratureScheme::TruncatedExponential, 1.0, 0.0).is_err());
    }
}
