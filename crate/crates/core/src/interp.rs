//! Weighted `p → p` operator norms, Riesz–Thorin interpolation and the rate
//! constants (α, τ, ρ, γ_vol) that fix the admissible exponent range.
//!
//! Norms are taken on weighted sequence spaces,
//! `‖x‖_p = (Σ w_i |x_i|^p)^{1/p}` and `‖x‖_∞ = max |x_i|`. An operator `T`
//! between two of them has the same norm as the unweighted matrix
//! `W_cod^{1/p} T W_dom^{-1/p}`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::complex::{weighted_lp_norm, SimplicialComplex};
use crate::error::{Error, Result};
use crate::hodge::HodgeContext;
use crate::random::{derive_seed, seeded_rng, uniform_values, random_cochain};
use crate::spectral::{complement_heat_operator, eigendecompose, harmonic_projector, heat_operator, HeatBackend, SpectralData};

/// Slack allowed when comparing a measured lower bound with an upper bound.
pub const BRACKET_SLACK: f64 = 1e-8;

fn check_p(p: f64) -> Result<()> {
    if p.is_nan() || p < 1.0 {
        Err(Error::InvalidExponent(p))
    } else {
        Ok(())
    }
}

fn check_shape(t: &DMatrix<f64>, dom: &[f64], cod: &[f64]) -> Result<()> {
    if t.nrows() != cod.len() || t.ncols() != dom.len() {
        return Err(Error::ShapeMismatch { expected: (cod.len(), dom.len()), found: t.shape() });
    }
    Ok(())
}

/// Conjugate exponent `p' = p/(p−1)`, with `1' = ∞` and `∞' = 1`.
pub fn conjugate(p: f64) -> f64 {
    if p == 1.0 {
        f64::INFINITY
    } else if p.is_infinite() {
        1.0
    } else {
        p / (p - 1.0)
    }
}

/// Exact weighted `1 → 1` or `∞ → ∞` norm.
pub fn opnorm_exact_extremes(t: &DMatrix<f64>, dom_w: &[f64], cod_w: &[f64], p: f64) -> Result<f64> {
    check_shape(t, dom_w, cod_w)?;
    if p == 1.0 {
        let mut best = 0.0_f64;
        for (j, wj) in dom_w.iter().enumerate() {
            let col: f64 = t.column(j).iter().zip(cod_w).map(|(x, w)| w * x.abs()).sum();
            best = best.max(col / wj);
        }
        Ok(best)
    } else if p.is_infinite() && p > 0.0 {
        Ok(t.row_iter().map(|r| r.iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max))
    } else {
        Err(Error::InvalidExponent(p))
    }
}

/// `W_cod^{1/p} T W_dom^{-1/p}`.
fn similarity(t: &DMatrix<f64>, dom_w: &[f64], cod_w: &[f64], p: f64) -> DMatrix<f64> {
    let inv = 1.0 / p;
    let mut a = t.clone();
    for j in 0..a.ncols() {
        let cj = dom_w[j].powf(-inv);
        for i in 0..a.nrows() {
            a[(i, j)] *= cod_w[i].powf(inv) * cj;
        }
    }
    a
}

/// Exact weighted `2 → 2` norm (largest singular value).
pub fn opnorm_two(t: &DMatrix<f64>, dom_w: &[f64], cod_w: &[f64]) -> Result<f64> {
    check_shape(t, dom_w, cod_w)?;
    if t.is_empty() {
        return Ok(0.0);
    }
    let a = similarity(t, dom_w, cod_w, 2.0);
    Ok(a.svd(false, false).singular_values.iter().fold(0.0, |m: f64, &s| m.max(s)))
}

fn lp(x: &DVector<f64>, p: f64) -> f64 {
    let m = x.amax();
    if m == 0.0 {
        return 0.0;
    }
    m * x.iter().map(|v| (v.abs() / m).powf(p)).sum::<f64>().powf(1.0 / p)
}

/// `sign(x)|x|^e`, scaled by the largest entry first to avoid overflow.
fn signed_power(x: &DVector<f64>, e: f64) -> DVector<f64> {
    let m = x.amax();
    if m == 0.0 {
        return x.clone();
    }
    x.map(|v| (v / m).signum() * (v.abs() / m).powf(e))
}

/// Lower bound on the weighted `p → p` norm by Boyd's nonlinear power
/// iteration, started from the heaviest column, the constant vector and two
/// seeded random vectors. The best ratio seen is returned, so the result never
/// decreases with `iters`.
pub fn opnorm_power_method(t: &DMatrix<f64>, dom_w: &[f64], cod_w: &[f64], p: f64, iters: usize, seed: u64) -> Result<f64> {
    check_shape(t, dom_w, cod_w)?;
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::InvalidExponent(p));
    }
    let n = t.ncols();
    if n == 0 || t.nrows() == 0 {
        return Ok(0.0);
    }
    let a = similarity(t, dom_w, cod_w, p);
    let at = a.transpose();
    let q = conjugate(p);

    let mut starts = Vec::with_capacity(4);
    let heaviest = (0..n)
        .map(|j| (j, lp(&a.column(j).into_owned(), p)))
        .fold((0, -1.0), |b, c| if c.1 > b.1 { c } else { b })
        .0;
    let mut e = DVector::zeros(n);
    e[heaviest] = 1.0;
    starts.push(e);
    starts.push(DVector::from_element(n, 1.0));
    let mut rng = seeded_rng(seed);
    for _ in 0..2 {
        starts.push(DVector::from_vec(uniform_values(&mut rng, n)));
    }

    let mut best = 0.0_f64;
    for start in starts {
        let norm = lp(&start, p);
        if norm == 0.0 {
            continue;
        }
        let mut x = start / norm;
        for _ in 0..iters.max(1) {
            let y = &a * &x;
            let ny = lp(&y, p);
            best = best.max(ny / lp(&x, p));
            if ny == 0.0 {
                break;
            }
            let z = &at * signed_power(&y, p - 1.0);
            let next = signed_power(&z, q - 1.0);
            let nn = lp(&next, p);
            if nn == 0.0 {
                break;
            }
            let next = next / nn;
            let moved = (&next - &x).amax();
            x = next;
            if moved <= 1e-15 {
                let ny = lp(&(&a * &x), p);
                best = best.max(ny / lp(&x, p));
                break;
            }
        }
    }
    Ok(best)
}

/// Interpolated exponent and norm bound between `(p0, M0)` and `(p1, M1)`:
/// `1/p = (1−θ)/p0 + θ/p1` and `M0^{1−θ} M1^θ`.
pub fn riesz_thorin_bound(m0: f64, p0: f64, m1: f64, p1: f64, theta: f64) -> Result<(f64, f64)> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::InvalidParameter(alloc::format!("interpolation parameter θ = {theta} outside (0, 1)")));
    }
    check_p(p0)?;
    check_p(p1)?;
    if p0 == p1 {
        return Err(Error::InvalidParameter(alloc::format!("equal endpoints p0 = p1 = {p0}")));
    }
    for m in [m0, m1] {
        if !(m >= 0.0 && m.is_finite()) {
            return Err(Error::InvalidParameter(alloc::format!("endpoint norm {m}")));
        }
    }
    let inv = (1.0 - theta) / p0 + theta / p1;
    Ok((1.0 / inv, geometric(m0, m1, theta)))
}

fn geometric(m0: f64, m1: f64, theta: f64) -> f64 {
    if theta == 0.0 {
        m0
    } else if theta == 1.0 {
        m1
    } else {
        m0.powf(1.0 - theta) * m1.powf(theta)
    }
}

/// Smallest Riesz–Thorin bound at `p` from the endpoint norms at 1, 2, ∞,
/// over the pairs (1, 2), (2, ∞) and (1, ∞).
pub fn riesz_thorin_upper(p: f64, m1: f64, m2: f64, m_inf: f64) -> f64 {
    let inv = 1.0 / p;
    let mut best = geometric(m1, m_inf, (1.0 - inv).clamp(0.0, 1.0));
    if p <= 2.0 {
        best = best.min(geometric(m1, m2, (2.0 * (1.0 - inv)).clamp(0.0, 1.0)));
    }
    if p >= 2.0 {
        best = best.min(geometric(m2, m_inf, (1.0 - 2.0 * inv).clamp(0.0, 1.0)));
    }
    best
}

/// Two-sided estimate of a `p → p` norm.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormBracket {
    pub p: f64,
    pub lower: f64,
    pub upper: f64,
}

impl NormBracket {
    pub fn is_consistent(&self) -> bool {
        self.lower <= self.upper + BRACKET_SLACK
    }
}

/// Endpoint norms `(‖T‖_1, ‖T‖_2, ‖T‖_∞)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Endpoints {
    pub one: f64,
    pub two: f64,
    pub inf: f64,
}

impl Endpoints {
    pub fn measure(t: &DMatrix<f64>, dom_w: &[f64], cod_w: &[f64]) -> Result<Self> {
        Ok(Self {
            one: opnorm_exact_extremes(t, dom_w, cod_w, 1.0)?,
            two: opnorm_two(t, dom_w, cod_w)?,
            inf: opnorm_exact_extremes(t, dom_w, cod_w, f64::INFINITY)?,
        })
    }

    pub fn upper(&self, p: f64) -> f64 {
        if p == 1.0 {
            self.one
        } else if p.is_infinite() {
            self.inf
        } else {
            riesz_thorin_upper(p, self.one, self.two, self.inf)
        }
    }
}

/// Bracket with known endpoints.
pub fn bracket_with(t: &DMatrix<f64>, dom_w: &[f64], cod_w: &[f64], ends: &Endpoints, p: f64, iters: usize, seed: u64) -> Result<NormBracket> {
    check_p(p)?;
    let upper = ends.upper(p);
    let lower = if p == 1.0 || p.is_infinite() { upper } else { opnorm_power_method(t, dom_w, cod_w, p, iters, seed)? };
    Ok(NormBracket { p, lower, upper })
}

/// Exact norm at `p ∈ {1, ∞}`; otherwise a power-method lower bound and a
/// Riesz–Thorin upper bound from the exact 1, 2 and ∞ norms.
pub fn norm_bracket(t: &DMatrix<f64>, dom_w: &[f64], cod_w: &[f64], p: f64, iters: usize, seed: u64) -> Result<NormBracket> {
    let ends = Endpoints::measure(t, dom_w, cod_w)?;
    bracket_with(t, dom_w, cod_w, &ends, p, iters, seed)
}

fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = my - slope * mx;
    let rss: f64 = xs.iter().zip(ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    (slope, intercept, (rss / n).sqrt())
}

/// Log-linear fit `‖P_t‖_{1→1} ≈ c₁ e^{αt}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthFit {
    /// Least-squares slope clamped at 0.
    pub alpha: f64,
    /// `e^{intercept}` of the unclamped fit.
    pub c1: f64,
    /// Root-mean-square residual of the log fit.
    pub residual: f64,
    /// `(t, ‖P_t‖_{1→1})` samples.
    pub samples: Vec<(f64, f64)>,
}

fn check_grid(t_grid: &[f64]) -> Result<()> {
    let increasing = t_grid.windows(2).all(|w| w[0] < w[1]);
    if t_grid.len() < 3 || !increasing || !(t_grid[0] > 0.0) || !t_grid.iter().all(|t| t.is_finite()) {
        return Err(Error::InvalidParameter(alloc::format!(
            "time grid needs at least 3 positive increasing points, got {t_grid:?}"
        )));
    }
    Ok(())
}

pub fn fit_alpha(s: &SpectralData, t_grid: &[f64]) -> Result<GrowthFit> {
    check_grid(t_grid)?;
    let w = s.weights();
    let mut samples = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let op = heat_operator(s, t, HeatBackend::Spectral)?;
        samples.push((t, opnorm_exact_extremes(op.matrix(), w, w, 1.0)?));
    }
    let xs: Vec<f64> = samples.iter().map(|s| s.0).collect();
    let ys: Vec<f64> = samples.iter().map(|s| s.1.ln()).collect();
    let (slope, intercept, residual) = linear_fit(&xs, &ys);
    Ok(GrowthFit { alpha: slope.max(0.0), c1: intercept.exp(), residual, samples })
}

pub fn measure_alpha(complex: &SimplicialComplex, degree: usize, t_grid: &[f64]) -> Result<GrowthFit> {
    let s = eigendecompose(&complex.hodge_laplacian(degree)?, complex.weights(degree))?;
    fit_alpha(&s, t_grid)
}

/// `τ`, the exact `2 → 2` decay rate of `P_t` off the harmonic space.
pub fn measure_tau(s: &SpectralData) -> Result<f64> {
    let gap = s.gap();
    if gap > 0.0 && gap.is_finite() {
        Ok(gap)
    } else {
        Err(Error::GapUnavailable)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdmissibleInterval {
    pub alpha: f64,
    pub tau: f64,
    pub epsilon: f64,
    /// `2(α+τ)/(α+2τ)`.
    pub q0: f64,
    /// Conjugate of `q0`.
    pub q0_conjugate: f64,
    /// `2(α+τ+ε)/(α+2τ)`, equal to `p1`.
    pub q_eps: f64,
    pub p1: f64,
    pub p2: f64,
    /// `1/p1` and `1/p2`, which sum to exactly 1.
    pub inv_p1: f64,
    pub inv_p2: f64,
}

impl AdmissibleInterval {
    /// Whether `p` lies strictly between `p1` and `p2`.
    pub fn contains(&self, p: f64) -> bool {
        let inv = 1.0 / p;
        inv < self.inv_p1 && inv > self.inv_p2
    }
}

fn conjugate_pair(numerator: f64, denominator: f64) -> (f64, f64, f64, f64) {
    // 1/p ∈ [1/2, 1] so `1 − 1/p` is exact
    let inv_p = denominator / numerator;
    let inv_conj = 1.0 - inv_p;
    let conj = if inv_conj == 0.0 { f64::INFINITY } else { 1.0 / inv_conj };
    (numerator / denominator, conj, inv_p, inv_conj)
}

pub fn admissible_interval(alpha: f64, tau: f64, epsilon: f64) -> Result<AdmissibleInterval> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::InvalidParameter(alloc::format!("decay rate τ = {tau} must be positive")));
    }
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidParameter(alloc::format!("growth rate α = {alpha} must be nonnegative")));
    }
    if !(epsilon >= 0.0 && epsilon < tau) {
        return Err(Error::InvalidParameter(alloc::format!("ε = {epsilon} must lie in [0, τ = {tau})")));
    }
    let denominator = alpha + 2.0 * tau;
    let (q0, q0_conjugate, _, _) = conjugate_pair(2.0 * (alpha + tau), denominator);
    let (p1, p2, inv_p1, inv_p2) = conjugate_pair(2.0 * (alpha + tau + epsilon), denominator);
    Ok(AdmissibleInterval { alpha, tau, epsilon, q0, q0_conjugate, q_eps: p1, p1, p2, inv_p1, inv_p2 })
}

/// Interpolation parameter: `2/p'` on `(1, 2]` and `2/p` on `[2, ∞)`.
pub fn theta_for(p: f64) -> Result<f64> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::InvalidExponent(p));
    }
    Ok(if p <= 2.0 { 2.0 * (p - 1.0) / p } else { 2.0 / p })
}

/// `γ(p) = θτ − α(1−θ)`.
pub fn decay_rate(alpha: f64, tau: f64, p: f64) -> Result<f64> {
    let theta = theta_for(p)?;
    Ok(theta * tau - alpha * (1.0 - theta))
}

/// `(c e^{αt})^{1−θ} (e^{−τt})^θ`.
pub fn semigroup_interpolation_bound(alpha: f64, c: f64, tau: f64, p: f64, t: f64) -> Result<f64> {
    let theta = theta_for(p)?;
    Ok((c * (alpha * t).exp()).powf(1.0 - theta) * (-tau * theta * t).exp())
}

/// Norm brackets of the harmonic projector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProjectorProfile {
    pub rows: Vec<NormBracket>,
    /// Largest upper bound over the grid.
    pub max_upper: f64,
}

pub fn projector_norm_profile(s: &SpectralData, p_grid: &[f64], iters: usize, seed: u64) -> Result<ProjectorProfile> {
    let h = harmonic_projector(s)?;
    let w = s.weights();
    let ends = Endpoints::measure(h.matrix(), w, w)?;
    let mut rows = Vec::with_capacity(p_grid.len());
    for (k, &p) in p_grid.iter().enumerate() {
        rows.push(bracket_with(h.matrix(), w, w, &ends, p, iters, derive_seed(seed, &[k as u64]))?);
    }
    let max_upper = rows.iter().map(|r| r.upper).fold(0.0, f64::max);
    Ok(ProjectorProfile { rows, max_upper })
}

/// Largest entry magnitude among simplex pairs at one distance.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistanceBin {
    pub distance: usize,
    pub magnitude: f64,
    pub pairs: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayComponent {
    pub simplices: usize,
    pub bins: Vec<DistanceBin>,
    /// `None` when fewer than two bins rise above the noise floor.
    pub rho: Option<f64>,
    pub residual: f64,
    pub monotone: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelDecayFit {
    pub t0: f64,
    pub components: Vec<DecayComponent>,
    /// Smallest fitted rate over the components.
    pub rho: Option<f64>,
}

/// Bins below this fraction of the largest entry are rounding noise.
const NOISE_FLOOR: f64 = 1e-13;

/// Off-diagonal decay of `Δ P_{t0/4}` with distance between simplices
/// (smallest vertex-graph distance between their vertex sets), fitted as
/// `e^{−(2ρ/t0)·distance}`.
pub fn kernel_decay_fit(complex: &SimplicialComplex, s: &SpectralData, t0: f64) -> Result<KernelDecayFit> {
    if !(t0 > 0.0 && t0.is_finite()) {
        return Err(Error::InvalidParameter(alloc::format!("t0 = {t0} must be positive")));
    }
    let degree = s.degree();
    let m = s.matrix_fn(|_, l| l * (-0.25 * t0 * l).exp());
    let vdist = complex.vertex_distances();
    let labels = complex.vertex_components();
    let position = |v: usize| complex.index_of(&[v]).expect("face closure");
    let members: Vec<Vec<usize>> = complex
        .simplices(degree)
        .iter()
        .map(|sx| sx.iter().map(|&v| position(v)).collect())
        .collect();
    let vdist = &vdist;
    let members = &members;
    let distance = |a: usize, b: usize| {
        members[a]
            .iter()
            .flat_map(|&u| members[b].iter().filter_map(move |&v| vdist[u][v]))
            .min()
    };

    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, mem) in members.iter().enumerate() {
        groups.entry(labels[mem[0]]).or_default().push(i);
    }
    let floor = NOISE_FLOOR * m.amax();
    let mut components = Vec::with_capacity(groups.len());
    for idx in groups.values() {
        let mut bins: BTreeMap<usize, (f64, usize)> = BTreeMap::new();
        for &a in idx {
            for &b in idx {
                if let Some(d) = distance(a, b) {
                    let e = bins.entry(d).or_insert((0.0, 0));
                    e.0 = e.0.max(m[(a, b)].abs());
                    e.1 += 1;
                }
            }
        }
        let bins: Vec<DistanceBin> =
            bins.into_iter().map(|(distance, (magnitude, pairs))| DistanceBin { distance, magnitude, pairs }).collect();
        let kept: Vec<&DistanceBin> = bins.iter().filter(|b| b.magnitude > floor && b.magnitude > 0.0).collect();
        let monotone = kept.windows(2).all(|w| w[1].magnitude <= w[0].magnitude);
        let (rho, residual) = if kept.len() >= 2 {
            let xs: Vec<f64> = kept.iter().map(|b| b.distance as f64).collect();
            let ys: Vec<f64> = kept.iter().map(|b| b.magnitude.ln()).collect();
            let (slope, _, residual) = linear_fit(&xs, &ys);
            (Some(-slope * t0 / 2.0), residual)
        } else {
            (None, 0.0)
        };
        components.push(DecayComponent { simplices: idx.len(), bins, rho, residual, monotone });
    }
    let rho = components.iter().filter_map(|c| c.rho).reduce(f64::min);
    Ok(KernelDecayFit { t0, components, rho })
}

/// Exponential envelope of ball volumes `vol(B_v(r)) ≤ c e^{γ_vol r}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VolumeGrowthFit {
    pub gamma_vol: f64,
    /// Largest vertex weight, the paired constant.
    pub c: f64,
    pub diameter: usize,
}

/// `γ_vol = max_{v, r ≥ 1} ln(vol B_v(r) / vol B_v(0)) / r`, the smallest
/// rate for which every ball obeys `vol B_v(r) ≤ vol B_v(0) e^{γ_vol r}`.
pub fn volume_growth_fit(complex: &SimplicialComplex) -> VolumeGrowthFit {
    let w = complex.weights(0);
    let dist = complex.vertex_distances();
    let mut gamma_vol = 0.0_f64;
    let mut diameter = 0;
    for (v, row) in dist.iter().enumerate() {
        let ecc = row.iter().flatten().copied().max().unwrap_or(0);
        diameter = diameter.max(ecc);
        let mut shells = vec![0.0; ecc + 1];
        for (u, d) in row.iter().enumerate() {
            if let Some(d) = d {
                shells[*d] += w[u];
            }
        }
        let mut volume = 0.0;
        for (r, shell) in shells.iter().enumerate() {
            volume += shell;
            if r >= 1 {
                gamma_vol = gamma_vol.max((volume / w[v]).ln() / r as f64);
            }
        }
    }
    VolumeGrowthFit { gamma_vol, c: w.iter().copied().fold(0.0, f64::max), diameter }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct T0Choice {
    pub t0: f64,
    /// `(γ_vol / 2ρ)·t0`, at most 1/2.
    pub condition: f64,
}

/// `t0 = ρ/γ_vol` (or 1 when `γ_vol = 0`), nudged down by ulps if rounding
/// pushes the condition above 1/2.
pub fn select_t0(rho: f64, gamma_vol: f64) -> Result<T0Choice> {
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(Error::InvalidParameter(alloc::format!("ρ = {rho} must be positive")));
    }
    if !(gamma_vol >= 0.0 && gamma_vol.is_finite()) {
        return Err(Error::InvalidParameter(alloc::format!("γ_vol = {gamma_vol} must be nonnegative")));
    }
    let condition = |t: f64| gamma_vol / (2.0 * rho) * t;
    let mut t0 = if gamma_vol > 0.0 { rho / gamma_vol } else { 1.0 };
    while condition(t0) > 0.5 {
        t0 = t0.next_down();
    }
    Ok(T0Choice { t0, condition: condition(t0) })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaffneyReport {
    pub p: f64,
    pub gamma_shift: f64,
    pub samples: usize,
    /// Largest observed `(‖dω‖_p + ‖δω‖_p) / ‖(Δ+γ)^{1/2}ω‖_p`.
    pub max_ratio: f64,
    /// At `p = 2`: `√(2λ_max/(λ_max+γ))`, an upper bound on the best constant.
    pub spectral_bound: Option<f64>,
}

/// `(‖dω‖_p + ‖δω‖_p) / ‖(Δ+γ)^{1/2}ω‖_p`.
pub fn gaffney_ratio(ctx: &HodgeContext<'_>, gamma_shift: f64, p: f64, omega: &crate::Cochain) -> Result<f64> {
    if !(gamma_shift > 0.0 && gamma_shift.is_finite()) {
        return Err(Error::InvalidParameter(alloc::format!("shift γ = {gamma_shift} must be positive")));
    }
    let k = ctx.complex();
    let norm = |c: &crate::Cochain| weighted_lp_norm(c.values(), k.weights(c.degree()), p);
    let mut top = 0.0;
    if let Some(d) = ctx.d(omega) {
        top += norm(&d)?;
    }
    if let Some(dl) = ctx.delta(omega) {
        top += norm(&dl)?;
    }
    let shifted = ctx.spectral().apply_fn(omega, |_, l| (l + gamma_shift).sqrt())?;
    let bottom = norm(&shifted)?;
    Ok(if bottom > 0.0 { top / bottom } else { 0.0 })
}

pub fn gaffney_constant(ctx: &HodgeContext<'_>, gamma_shift: f64, p: f64, n_samples: usize, seed: u64) -> Result<GaffneyReport> {
    check_p(p)?;
    let mut rng = seeded_rng(seed);
    let mut max_ratio = 0.0_f64;
    for _ in 0..n_samples {
        let omega = random_cochain(&mut rng, ctx.complex(), ctx.degree());
        max_ratio = max_ratio.max(gaffney_ratio(ctx, gamma_shift, p, &omega)?);
    }
    if n_samples == 0 {
        gaffney_ratio(ctx, gamma_shift, p, &crate::Cochain::zeros(ctx.degree(), ctx.spectral().dimension()))?;
    }
    let spectral_bound = (p == 2.0).then(|| {
        let l = ctx.spectral().lambda_max();
        (2.0 * l / (l + gamma_shift)).sqrt()
    });
    Ok(GaffneyReport { p, gamma_shift, samples: n_samples, max_ratio, spectral_bound })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimensionRow {
    pub degree: usize,
    pub kernel_dim: usize,
    pub betti: usize,
    /// Every kernel basis vector has finite nonzero norm at every requested p.
    pub finite_in_all_p: bool,
    /// The decomposition returns every kernel basis vector as its own
    /// harmonic part.
    pub projector_reproduces: bool,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimensionReport {
    pub rows: Vec<DimensionRow>,
    pub consistent: bool,
}

pub fn dimension_consistency(complex: &SimplicialComplex, p_list: &[f64]) -> Result<DimensionReport> {
    let betti = complex.betti_numbers();
    let mut rows = Vec::with_capacity(betti.len());
    for (degree, &b) in betti.iter().enumerate() {
        let ctx = HodgeContext::new(complex, degree)?;
        rows.push(dimension_row(&ctx, b, p_list)?);
    }
    let consistent = rows.iter().all(|r| r.consistent);
    Ok(DimensionReport { rows, consistent })
}

pub fn dimension_row(ctx: &HodgeContext<'_>, betti: usize, p_list: &[f64]) -> Result<DimensionRow> {
    let s = ctx.spectral();
    let w = ctx.weights();
    let mut finite_in_all_p = true;
    let mut projector_reproduces = true;
    for h in s.kernel_basis() {
        for &p in p_list {
            let n = weighted_lp_norm(h.values(), w, p)?;
            finite_in_all_p &= n.is_finite() && n > 0.0;
        }
        let dec = ctx.decompose(&h, &[])?;
        projector_reproduces &= dec.omega3.sub(&h).max_abs() <= 1e-8 * h.max_abs();
    }
    let kernel_dim = s.kernel_dim();
    Ok(DimensionRow {
        degree: ctx.degree(),
        kernel_dim,
        betti,
        finite_in_all_p,
        projector_reproduces,
        consistent: kernel_dim == betti && finite_in_all_p && projector_reproduces,
    })
}

/// One `(t, p)` sample of `‖P_t(1−H)‖_{p→p}` against its bounds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SemigroupSample {
    pub t: f64,
    pub p: f64,
    pub lower: f64,
    /// Riesz–Thorin bound from the measured 1, 2, ∞ norms at this `t`.
    pub rt_upper: f64,
    /// `(c e^{αt})^{1−θ}(e^{−τt})^θ`.
    pub rate_bound: f64,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SemigroupCheck {
    /// `max_t ‖P_t(1−H)‖_{1→1} e^{−αt}` over the sampled times, at least 1.
    pub envelope: f64,
    /// `max_t |‖P_t(1−H)‖_{2→2} − e^{−τt}|`.
    pub two_norm_defect: f64,
    pub samples: Vec<SemigroupSample>,
    pub ok: bool,
}

/// Brackets `‖P_t(1−H)‖_{p→p}` for every `t` and every `p` inside the
/// admissible interval.
pub fn semigroup_interpolation_check(
    s: &SpectralData,
    alpha: f64,
    interval: &AdmissibleInterval,
    times: &[f64],
    p_list: &[f64],
    iters: usize,
    seed: u64,
) -> Result<SemigroupCheck> {
    let w = s.weights();
    let mut ops = Vec::with_capacity(times.len());
    let mut envelope = 1.0_f64;
    let mut two_norm_defect = 0.0_f64;
    for &t in times {
        let op = complement_heat_operator(s, t)?.into_matrix();
        let ends = Endpoints::measure(&op, w, w)?;
        envelope = envelope.max(ends.one * (-alpha * t).exp()).max(ends.inf * (-alpha * t).exp());
        two_norm_defect = two_norm_defect.max((ends.two - (-interval.tau * t).exp()).abs());
        ops.push((t, op, ends));
    }
    let mut samples = Vec::new();
    for (ti, (t, op, ends)) in ops.iter().enumerate() {
        for (pi, &p) in p_list.iter().enumerate() {
            if !interval.contains(p) {
                continue;
            }
            let b = bracket_with(op, w, w, ends, p, iters, derive_seed(seed, &[ti as u64, pi as u64]))?;
            let rate_bound = semigroup_interpolation_bound(alpha, envelope, interval.tau, p, *t)?;
            let ok = b.lower <= b.upper + BRACKET_SLACK && b.lower <= rate_bound + BRACKET_SLACK;
            samples.push(SemigroupSample { t: *t, p, lower: b.lower, rt_upper: b.upper, rate_bound, ok });
        }
    }
    let ok = samples.iter().all(|s| s.ok);
    Ok(SemigroupCheck { envelope, two_norm_defect, samples, ok })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InterpolationConfig {
    /// Times at which `‖P_t‖_{1→1}` is sampled for the α fit.
    pub alpha_grid: Vec<f64>,
    /// Defaults to `τ/10`.
    pub epsilon: Option<f64>,
    pub p_grid: Vec<f64>,
    /// Times of the semigroup interpolation check.
    pub check_times: Vec<f64>,
    /// `t0` used for the kernel decay fit before `t0` is re-selected.
    pub probe_t0: f64,
    pub iters: usize,
    pub seed: u64,
}

impl Default for InterpolationConfig {
    fn default() -> Self {
        Self {
            alpha_grid: vec![0.25, 0.5, 1.0, 2.0, 4.0],
            epsilon: None,
            p_grid: vec![1.0, 1.25, 4.0 / 3.0, 1.5, 2.0, 3.0, 4.0, f64::INFINITY],
            check_times: vec![0.5, 1.0, 2.0, 5.0],
            probe_t0: 1.0,
            iters: 100,
            seed: 42,
        }
    }
}

/// One line of the plotting table.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileRow {
    pub p: f64,
    /// Bracket of `‖H‖_{p→p}`.
    pub lower: f64,
    pub upper: f64,
    /// `γ(p)`, absent at `p ∈ {1, ∞}`.
    pub gamma: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InterpolationReport {
    pub degree: usize,
    pub alpha: f64,
    pub c1: f64,
    pub alpha_fit: GrowthFit,
    pub tau: f64,
    pub epsilon: f64,
    pub q0: f64,
    pub q_eps: f64,
    pub p1: f64,
    pub p2: f64,
    pub interval: AdmissibleInterval,
    pub gamma_of_p: Vec<(f64, f64)>,
    pub profile: Vec<ProfileRow>,
    pub projector_constant: f64,
    pub semigroup: SemigroupCheck,
    pub kernel_decay: KernelDecayFit,
    pub rho: Option<f64>,
    pub volume: VolumeGrowthFit,
    pub gamma_vol: f64,
    /// Selected `t0` with its level-set condition, when ρ is available.
    pub t0: Option<T0Choice>,
}

impl InterpolationReport {
    /// Names of violated invariants.
    pub fn violations(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        let iv = &self.interval;
        if !(1.0 <= iv.q0 && iv.q0 <= iv.q_eps && iv.p1 < 2.0 && 2.0 < iv.p2) {
            out.push("admissible interval ordering");
        }
        if iv.inv_p1 + iv.inv_p2 != 1.0 {
            out.push("conjugate exponents");
        }
        if self.gamma_of_p.iter().any(|&(p, g)| iv.contains(p) && !(g > 0.0)) {
            out.push("decay rate positive inside the interval");
        }
        if decay_rate(self.alpha, self.tau, 2.0).ok() != Some(self.tau) {
            out.push("decay rate at 2 equals tau");
        }
        if !self.semigroup.ok {
            out.push("semigroup interpolation bound");
        }
        if self.semigroup.two_norm_defect > 1e-10 {
            out.push("exact gap decay");
        }
        if self.profile.iter().any(|r| r.lower > r.upper + BRACKET_SLACK) {
            out.push("projector norm bracket");
        }
        if let Some(c) = self.t0 {
            if !(c.condition <= 0.5) {
                out.push("level-set condition");
            }
        }
        out
    }
}

pub fn interpolation_report(ctx: &HodgeContext<'_>, cfg: &InterpolationConfig) -> Result<InterpolationReport> {
    let s = ctx.spectral();
    let alpha_fit = fit_alpha(s, &cfg.alpha_grid)?;
    let alpha = alpha_fit.alpha;
    let tau = measure_tau(s)?;
    let epsilon = cfg.epsilon.unwrap_or(0.1 * tau);
    let interval = admissible_interval(alpha, tau, epsilon)?;

    let mut gamma_of_p = Vec::new();
    for &p in &cfg.p_grid {
        if p > 1.0 && p.is_finite() {
            gamma_of_p.push((p, decay_rate(alpha, tau, p)?));
        }
    }
    let projector = projector_norm_profile(s, &cfg.p_grid, cfg.iters, derive_seed(cfg.seed, &[0]))?;
    let profile = projector
        .rows
        .iter()
        .map(|r| ProfileRow {
            p: r.p,
            lower: r.lower,
            upper: r.upper,
            gamma: decay_rate(alpha, tau, r.p).ok(),
        })
        .collect();
    let semigroup = semigroup_interpolation_check(
        s,
        alpha,
        &interval,
        &cfg.check_times,
        &cfg.p_grid,
        cfg.iters,
        derive_seed(cfg.seed, &[1]),
    )?;
    let kernel_decay = kernel_decay_fit(ctx.complex(), s, cfg.probe_t0)?;
    let volume = volume_growth_fit(ctx.complex());
    let rho = kernel_decay.rho;
    let t0 = match rho {
        Some(r) if r > 0.0 => Some(select_t0(r, volume.gamma_vol)?),
        _ => None,
    };
    Ok(InterpolationReport {
        degree: ctx.degree(),
        alpha,
        c1: alpha_fit.c1,
        alpha_fit,
        tau,
        epsilon,
        q0: interval.q0,
        q_eps: interval.q_eps,
        p1: interval.p1,
        p2: interval.p2,
        interval,
        gamma_of_p,
        profile,
        projector_constant: projector.max_upper,
        semigroup,
        kernel_decay,
        rho,
        volume,
        gamma_vol: volume.gamma_vol,
        t0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expm::expm;
    use crate::shapes;
    use crate::Cochain;

    fn spectral(k: &SimplicialComplex, deg: usize) -> SpectralData {
        eigendecompose(&k.hodge_laplacian(deg).unwrap(), k.weights(deg)).unwrap()
    }

    #[test]
    fn exact_extremes_examples() {
        let id = DMatrix::<f64>::identity(3, 3);
        let w = [0.5, 2.0, 3.0];
        for p in [1.0, f64::INFINITY] {
            assert_eq!(opnorm_exact_extremes(&id, &w, &w, p).unwrap(), 1.0);
        }
        let t = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0]);
        assert_eq!(opnorm_exact_extremes(&t, &[1.0; 2], &[1.0; 2], 1.0).unwrap(), 2.0);
        assert!(opnorm_exact_extremes(&t, &[1.0; 2], &[1.0; 2], 2.0).is_err());

        // e^{-tL} on 0-forms of P5, oracle from the graph Laplacian directly
        let k = shapes::path(5);
        let mut l = DMatrix::<f64>::zeros(5, 5);
        for i in 0..4 {
            l[(i, i)] += 1.0;
            l[(i + 1, i + 1)] += 1.0;
            l[(i, i + 1)] = -1.0;
            l[(i + 1, i)] = -1.0;
        }
        for t in [0.1, 1.0, 7.0] {
            let e = expm(&(-t * &l)).unwrap();
            assert!(e.iter().all(|&x| x >= -1e-15));
            let n = opnorm_exact_extremes(&e, k.weights(0), k.weights(0), 1.0).unwrap();
            assert!((n - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn duality_of_extremes() {
        let k = shapes::random_two_complex(3);
        let d = k.coboundary(1).unwrap();
        let adj = d.adjoint(k.weights(1), k.weights(2));
        let one = opnorm_exact_extremes(d.matrix(), k.weights(1), k.weights(2), 1.0).unwrap();
        let inf = opnorm_exact_extremes(adj.matrix(), k.weights(2), k.weights(1), f64::INFINITY).unwrap();
        assert!((one - inf).abs() <= 1e-14 * one);
    }

    #[test]
    fn power_method_examples() {
        let id = DMatrix::<f64>::identity(4, 4);
        let w = [1.0, 2.0, 0.5, 1.5];
        for p in [1.1, 1.5, 3.0, 10.0] {
            assert!((opnorm_power_method(&id, &w, &w, p, 10, 1).unwrap() - 1.0).abs() < 1e-12);
        }
        let diag = DMatrix::from_diagonal(&DVector::from_vec(vec![3.0, 1.0]));
        for p in [1.2, 2.0, 5.0] {
            assert!((opnorm_power_method(&diag, &[1.0; 2], &[1.0; 2], p, 10, 1).unwrap() - 3.0).abs() < 1e-12);
        }
        assert!(opnorm_power_method(&id, &w, &w, 1.0, 10, 1).is_err());

        let t = DMatrix::from_row_slice(3, 3, &[2.0, -1.0, 0.5, 0.3, 1.0, -0.7, 1.1, 0.2, 0.9]);
        let (dw, cw) = ([1.0, 2.0, 0.5], [0.7, 1.3, 2.0]);
        let exact = opnorm_two(&t, &dw, &cw).unwrap();
        let est = opnorm_power_method(&t, &dw, &cw, 2.0, 500, 9).unwrap();
        assert!((exact - est).abs() < 1e-8, "{exact} {est}");
    }

    #[test]
    fn power_method_is_monotone_and_deterministic() {
        let t = DMatrix::from_row_slice(3, 3, &[1.0, -2.0, 0.5, 0.3, 1.0, -0.7, 1.1, 0.2, -0.9]);
        let w = [1.0, 1.0, 1.0];
        let mut last = 0.0;
        for iters in [1, 2, 5, 20, 100] {
            let v = opnorm_power_method(&t, &w, &w, 3.0, iters, 5).unwrap();
            assert!(v >= last);
            assert_eq!(v, opnorm_power_method(&t, &w, &w, 3.0, iters, 5).unwrap());
            last = v;
        }
    }

    #[test]
    fn riesz_thorin_examples() {
        let (p, b) = riesz_thorin_bound(4.0, 1.0, 1.0, 2.0, 0.5).unwrap();
        assert!((p - 4.0 / 3.0).abs() < 1e-15 && (b - 2.0).abs() < 1e-15);
        let (p, b) = riesz_thorin_bound(3.0, 1.0, 3.0, f64::INFINITY, 0.5).unwrap();
        assert_eq!(p, 2.0);
        assert!((b - 3.0).abs() < 1e-15);
        assert!(riesz_thorin_bound(1.0, 1.0, 1.0, 2.0, 0.0).is_err());
        assert!(riesz_thorin_bound(1.0, 1.0, 1.0, 2.0, 1.0).is_err());
        assert!(riesz_thorin_bound(1.0, 2.0, 1.0, 2.0, 0.5).is_err());
    }

    #[test]
    fn tau_examples() {
        assert!((measure_tau(&spectral(&shapes::cycle(3), 0)).unwrap() - 3.0).abs() < 1e-12);
        assert!((measure_tau(&spectral(&shapes::interval(), 0)).unwrap() - 2.0).abs() < 1e-12);
        assert!(matches!(measure_tau(&spectral(&shapes::single_vertex(), 0)), Err(Error::GapUnavailable)));
        for k in [shapes::cycle(3), shapes::tetrahedron_boundary()] {
            let s = spectral(&k, 1);
            let tau = measure_tau(&s).unwrap();
            for t in [0.1, 1.0, 5.0] {
                let op = complement_heat_operator(&s, t).unwrap();
                let n = opnorm_two(op.matrix(), k.weights(1), k.weights(1)).unwrap();
                assert!((n - (-tau * t).exp()).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn alpha_examples() {
        let k = shapes::random_two_complex(8);
        let fit = measure_alpha(&k, 0, &[0.5, 1.0, 2.0, 4.0]).unwrap();
        assert!(fit.alpha < 1e-12, "{fit:?}");
        let fit = measure_alpha(&shapes::cycle(3), 1, &[0.5, 1.0, 2.0]).unwrap();
        assert!(fit.alpha >= 0.0 && fit.residual.is_finite());
        let edge = shapes::interval();
        let fit = measure_alpha(&edge, 1, &[0.5, 1.0, 2.0]).unwrap();
        assert_eq!(fit.alpha, 0.0);
        assert!((fit.c1 - 1.0).abs() < 1e-12);
        assert!(measure_alpha(&edge, 1, &[0.5, 1.0]).is_err());
        assert!(measure_alpha(&edge, 1, &[0.5, 0.5, 1.0]).is_err());
        assert!(measure_alpha(&edge, 1, &[0.0, 0.5, 1.0]).is_err());
    }

    #[test]
    fn interval_examples() {
        let iv = admissible_interval(0.0, 1.0, 0.0).unwrap();
        assert_eq!((iv.p1, iv.p2), (1.0, f64::INFINITY));
        let iv = admissible_interval(1.0, 1.0, 0.0).unwrap();
        assert!((iv.p1 - 4.0 / 3.0).abs() < 1e-15 && (iv.p2 - 4.0).abs() < 1e-14);
        assert_eq!(iv.inv_p1 + iv.inv_p2, 1.0);
        assert!(admissible_interval(1.0, 0.0, 0.0).is_err());
        assert!(admissible_interval(1.0, 1.0, 1.0).is_err());
        assert!(admissible_interval(1.0, 1.0, -0.1).is_err());
    }

    #[test]
    fn decay_rate_examples() {
        assert_eq!(theta_for(2.0).unwrap(), 1.0);
        assert_eq!(decay_rate(0.7, 2.5, 2.0).unwrap(), 2.5);
        assert!((theta_for(4.0 / 3.0).unwrap() - 0.5).abs() < 1e-15);
        assert!(decay_rate(1.0, 1.0, 4.0 / 3.0).unwrap().abs() < 1e-15);
        assert!(decay_rate(1.0, 1.0, 1.0).is_err());
        assert!(decay_rate(1.0, 1.0, f64::INFINITY).is_err());
    }

    #[test]
    fn projector_profile_examples() {
        let k = shapes::random_two_complex(2);
        let s = spectral(&k, 0);
        let prof = projector_norm_profile(&s, &[1.0, 1.5, 2.0, f64::INFINITY], 50, 3).unwrap();
        assert!((prof.rows[0].upper - 1.0).abs() < 1e-12);
        assert!((prof.rows[2].upper - 1.0).abs() < 1e-12);
        assert!((prof.rows[2].lower - 1.0).abs() < 1e-10);
        let s = spectral(&shapes::filled_triangle(), 1);
        let prof = projector_norm_profile(&s, &[1.0, 3.0, 2.0], 50, 3).unwrap();
        assert!(prof.rows.iter().all(|r| r.lower == 0.0 && r.upper == 0.0));
    }

    #[test]
    fn kernel_decay_examples() {
        let k = shapes::path(7);
        let fit = kernel_decay_fit(&k, &spectral(&k, 0), 0.5).unwrap();
        assert!(fit.rho.unwrap() > 0.0);
        assert_eq!(fit.components[0].bins[0].distance, 0);

        let k = shapes::cycle(12);
        let fit = kernel_decay_fit(&k, &spectral(&k, 0), 1.0).unwrap();
        assert!(fit.components[0].monotone);
        assert_eq!(fit.components[0].bins.len(), 7);

        let k = shapes::single_vertex();
        let fit = kernel_decay_fit(&k, &spectral(&k, 0), 1.0).unwrap();
        assert!(fit.rho.is_none());

        let two = crate::ComplexDescription::from_edges(&[(0, 1), (1, 2), (3, 4), (4, 5)]).build().unwrap();
        let fit = kernel_decay_fit(&two, &spectral(&two, 0), 0.5).unwrap();
        assert_eq!(fit.components.len(), 2);
    }

    #[test]
    fn volume_examples() {
        assert_eq!(volume_growth_fit(&shapes::single_vertex()).gamma_vol, 0.0);
        let v = volume_growth_fit(&shapes::path(5));
        assert!((v.gamma_vol - 3.0_f64.ln()).abs() < 1e-15);
        assert_eq!(v.diameter, 4);
        assert!((volume_growth_fit(&shapes::complete_graph(4)).gamma_vol - 4.0_f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn t0_examples() {
        assert_eq!(select_t0(1.0, 1.0).unwrap(), T0Choice { t0: 1.0, condition: 0.5 });
        assert_eq!(select_t0(1.0, 0.0).unwrap().t0, 1.0);
        let c = select_t0(2.0, 1.0).unwrap();
        assert_eq!((c.t0, c.condition), (2.0, 0.5));
        assert!(select_t0(0.0, 1.0).is_err());
    }

    #[test]
    fn gaffney_examples() {
        for k in [shapes::cycle(3), shapes::tetrahedron_boundary(), shapes::random_two_complex(1)] {
            for deg in 0..=k.max_degree() {
                let ctx = HodgeContext::new(&k, deg).unwrap();
                for g in [0.1, 1.0, 10.0] {
                    let r = gaffney_constant(&ctx, g, 2.0, 20, 7).unwrap();
                    assert!(r.max_ratio <= r.spectral_bound.unwrap() + 1e-12);
                    assert!(r.max_ratio <= 2.0_f64.sqrt() + 1e-10);
                }
            }
        }
        let k = shapes::cycle(3);
        let ctx = HodgeContext::new(&k, 1).unwrap();
        let h = ctx.spectral().kernel_basis().remove(0);
        assert!(gaffney_ratio(&ctx, 1.0, 2.0, &h).unwrap() < 1e-14);
        let k = shapes::single_vertex();
        let ctx = HodgeContext::new(&k, 0).unwrap();
        assert_eq!(gaffney_ratio(&ctx, 1.0, 3.0, &Cochain::new(0, vec![1.0])).unwrap(), 0.0);
    }

    #[test]
    fn dimension_examples() {
        let r = dimension_consistency(&shapes::cycle(3), &[1.0, 2.0, f64::INFINITY]).unwrap();
        assert!(r.consistent);
        assert_eq!((r.rows[1].kernel_dim, r.rows[1].betti), (1, 1));
        let r = dimension_consistency(&shapes::tetrahedron_boundary(), &[1.5]).unwrap();
        assert_eq!((r.rows[2].kernel_dim, r.rows[2].betti), (1, 1));
        let r = dimension_consistency(&shapes::filled_triangle(), &[3.0]).unwrap();
        assert_eq!((r.rows[1].kernel_dim, r.rows[1].betti), (0, 0));
        assert!(r.consistent);
    }

    #[test]
    fn report_on_torus_edges() {
        let k = shapes::flat_torus(4, 4);
        let ctx = HodgeContext::new(&k, 1).unwrap();
        let r = interpolation_report(&ctx, &InterpolationConfig::default()).unwrap();
        assert!(r.violations().is_empty(), "{:?}", r.violations());
        assert_eq!(r.gamma_of_p.iter().find(|g| g.0 == 2.0).unwrap().1, r.tau);
    }
}
