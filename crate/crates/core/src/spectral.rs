//! Spectral calculus of a Hodge Laplacian: eigendecomposition in the
//! weighted inner product, the heat semigroup `P_t = e^{-tΔ}`, the harmonic
//! projector and its long-time heat limit.
//!
//! All functions of `Δ` are evaluated in the symmetrized coordinates
//! `S = W^{1/2} Δ W^{-1/2}`: if `S = Q Λ Qᵀ`, then the eigencochains
//! `v_i = W^{-1/2} q_i` are `W`-orthonormal and
//! `f(Δ) = W^{-1/2} Q f(Λ) Qᵀ W^{1/2}`.

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::complex::{weighted_dot, weighted_l2, Cochain, OperatorMatrix, KERNEL_TOL};
use crate::error::{Error, Result};
use crate::expm::expm;

/// Rejection threshold for the symmetrized Laplacian's asymmetry.
const SYMMETRY_TOL: f64 = 1e-8;

/// Eigenvalues, eigencochains and kernel split of one Hodge Laplacian.
#[derive(Clone, Debug)]
pub struct SpectralData {
    degree: usize,
    weights: Vec<f64>,
    sqrt_weights: Vec<f64>,
    laplacian: DMatrix<f64>,
    eigenvalues: Vec<f64>,
    basis: DMatrix<f64>,
    kernel_dim: usize,
    gap: f64,
    tol: f64,
}

/// Serializable eigen-data, used by the spectral cache.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralParts {
    pub degree: usize,
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors of the symmetrized Laplacian, column-major.
    pub basis: Vec<f64>,
}

fn symmetrized(lap: &DMatrix<f64>, sqrt_weights: &[f64]) -> DMatrix<f64> {
    DMatrix::from_fn(lap.nrows(), lap.ncols(), |i, j| {
        sqrt_weights[i] * lap[(i, j)] / sqrt_weights[j]
    })
}

/// Full eigendecomposition of a weighted self-adjoint PSD operator.
pub fn eigendecompose(laplacian: &OperatorMatrix, weights: &[f64]) -> Result<SpectralData> {
    let lap = laplacian.matrix();
    let n = weights.len();
    if lap.shape() != (n, n) {
        return Err(Error::ShapeMismatch { expected: (n, n), found: lap.shape() });
    }
    let sqrt_weights: Vec<f64> = weights.iter().map(|w| w.sqrt()).collect();
    let s = symmetrized(lap, &sqrt_weights);
    let norm = s.norm();
    if norm > 0.0 {
        let residual = (&s - s.transpose()).norm() / norm;
        if residual > SYMMETRY_TOL {
            return Err(Error::NotSelfAdjoint { residual });
        }
    }
    let sym = (&s + s.transpose()) * 0.5;
    let eig = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let basis = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    SpectralData::assemble(laplacian.domain_degree(), weights, lap.clone(), eigenvalues, basis)
}

impl SpectralData {
    fn assemble(
        degree: usize,
        weights: &[f64],
        laplacian: DMatrix<f64>,
        mut eigenvalues: Vec<f64>,
        basis: DMatrix<f64>,
    ) -> Result<Self> {
        let lambda_max = eigenvalues.last().copied().unwrap_or(0.0).max(0.0);
        let floor = -KERNEL_TOL * lambda_max.max(1.0);
        for l in &mut eigenvalues {
            if *l < floor {
                return Err(Error::NotPositiveSemidefinite { eigenvalue: *l });
            }
        }
        let kernel_dim = if lambda_max == 0.0 {
            eigenvalues.len()
        } else {
            eigenvalues.iter().filter(|&&l| l < KERNEL_TOL * lambda_max).count()
        };
        for l in &mut eigenvalues[..kernel_dim] {
            *l = 0.0;
        }
        let gap = eigenvalues.get(kernel_dim).copied().unwrap_or(f64::INFINITY);
        Ok(Self {
            degree,
            weights: weights.to_vec(),
            sqrt_weights: weights.iter().map(|w| w.sqrt()).collect(),
            laplacian,
            eigenvalues,
            basis,
            kernel_dim,
            gap,
            tol: KERNEL_TOL,
        })
    }

    /// Rebuilds spectral data from cached parts, re-validating them against
    /// the Laplacian (orthonormality 1e-10, eigen-residual 1e-8).
    pub fn from_parts(laplacian: &OperatorMatrix, weights: &[f64], parts: &SpectralParts) -> Result<Self> {
        let n = weights.len();
        if parts.eigenvalues.len() != n || parts.basis.len() != n * n || laplacian.shape() != (n, n) {
            return Err(Error::ShapeMismatch { expected: (n, n), found: laplacian.shape() });
        }
        let basis = DMatrix::from_column_slice(n, n, &parts.basis);
        let data = Self::assemble(
            parts.degree,
            weights,
            laplacian.matrix().clone(),
            parts.eigenvalues.clone(),
            basis,
        )?;
        let orth = data.orthonormality_error();
        if orth > 1e-10 {
            return Err(Error::CertificateFailed { what: "cached eigenbasis orthonormality", value: orth, tolerance: 1e-10 });
        }
        let res = data.eigen_residual();
        if res > 1e-8 {
            return Err(Error::CertificateFailed { what: "cached eigenpair residual", value: res, tolerance: 1e-8 });
        }
        Ok(data)
    }

    pub fn to_parts(&self) -> SpectralParts {
        SpectralParts {
            degree: self.degree,
            eigenvalues: self.eigenvalues.clone(),
            basis: self.basis.as_slice().to_vec(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dimension(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn laplacian(&self) -> &DMatrix<f64> {
        &self.laplacian
    }

    /// Ascending, nonnegative; kernel eigenvalues are exactly zero.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn kernel_dim(&self) -> usize {
        self.kernel_dim
    }

    /// Smallest nonzero eigenvalue, `+∞` when the spectrum is `{0}`.
    pub fn gap(&self) -> f64 {
        self.gap
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn lambda_max(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    pub fn is_kernel(&self, i: usize) -> bool {
        i < self.kernel_dim
    }

    /// `W`-orthonormal eigencochain `v_i`.
    pub fn eigencochain(&self, i: usize) -> Cochain {
        let values = (0..self.dimension())
            .map(|r| self.basis[(r, i)] / self.sqrt_weights[r])
            .collect();
        Cochain::new(self.degree, values)
    }

    pub fn eigencochains(&self) -> Vec<Cochain> {
        (0..self.dimension()).map(|i| self.eigencochain(i)).collect()
    }

    /// `W`-orthonormal basis of the harmonic space.
    pub fn kernel_basis(&self) -> Vec<Cochain> {
        (0..self.kernel_dim).map(|i| self.eigencochain(i)).collect()
    }

    /// `max |⟨v_i, v_j⟩_W − δ_ij|`.
    pub fn orthonormality_error(&self) -> f64 {
        let vs = self.eigencochains();
        let mut worst = 0.0_f64;
        for (i, a) in vs.iter().enumerate() {
            for (j, b) in vs.iter().enumerate().skip(i) {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((weighted_dot(a.values(), b.values(), &self.weights) - target).abs());
            }
        }
        worst
    }

    /// `max_i ‖Δ v_i − λ_i v_i‖_W / max(λ_max, 1)`.
    pub fn eigen_residual(&self) -> f64 {
        let scale = self.lambda_max().max(1.0);
        (0..self.dimension())
            .map(|i| {
                let v = self.eigencochain(i);
                let lv = &self.laplacian * v.to_vector() - v.to_vector() * self.eigenvalues[i];
                weighted_l2(lv.as_slice(), &self.weights) / scale
            })
            .fold(0.0, f64::max)
    }

    pub(crate) fn check(&self, omega: &Cochain) -> Result<()> {
        if omega.degree() != self.degree || omega.len() != self.dimension() {
            return Err(Error::CochainMismatch {
                expected_degree: self.degree,
                expected_len: self.dimension(),
                degree: omega.degree(),
                len: omega.len(),
            });
        }
        Ok(())
    }

    /// Coordinates `c_i = ⟨ω, v_i⟩_W`.
    pub fn coefficients(&self, omega: &Cochain) -> Result<DVector<f64>> {
        self.check(omega)?;
        let scaled = DVector::from_iterator(
            self.dimension(),
            omega.values().iter().zip(&self.sqrt_weights).map(|(x, s)| x * s),
        );
        Ok(self.basis.tr_mul(&scaled))
    }

    /// `Σ c_i v_i`.
    pub fn synthesize(&self, coefficients: &DVector<f64>) -> Cochain {
        let y = &self.basis * coefficients;
        Cochain::new(
            self.degree,
            y.iter().zip(&self.sqrt_weights).map(|(x, s)| x / s).collect(),
        )
    }

    /// `f(Δ) ω` where `f` receives the eigen-index and eigenvalue.
    pub fn apply_fn(&self, omega: &Cochain, f: impl Fn(usize, f64) -> f64) -> Result<Cochain> {
        let mut c = self.coefficients(omega)?;
        for (i, ci) in c.iter_mut().enumerate() {
            *ci *= f(i, self.eigenvalues[i]);
        }
        Ok(self.synthesize(&c))
    }

    /// Matrix of `f(Δ)`, exactly `W`-self-adjoint up to rounding.
    pub fn matrix_fn(&self, f: impl Fn(usize, f64) -> f64) -> DMatrix<f64> {
        let n = self.dimension();
        let mut scaled = self.basis.clone();
        for (j, mut col) in scaled.column_iter_mut().enumerate() {
            col *= f(j, self.eigenvalues[j]);
        }
        let m = &scaled * self.basis.transpose();
        let sym = (&m + m.transpose()) * 0.5;
        DMatrix::from_fn(n, n, |i, j| sym[(i, j)] * self.sqrt_weights[j] / self.sqrt_weights[i])
    }

    pub fn operator_fn(&self, f: impl Fn(usize, f64) -> f64) -> Result<OperatorMatrix> {
        OperatorMatrix::self_adjoint(self.degree, self.matrix_fn(f), &self.weights)
    }
}

/// Whether zero lies in the spectrum and how far the rest of it sits.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    pub zero_in_spectrum: bool,
    /// Always true in finite dimension.
    pub isolated: bool,
    pub gap: f64,
}

pub fn classify_zero(s: &SpectralData) -> GapReport {
    GapReport { zero_in_spectrum: s.kernel_dim > 0, isolated: true, gap: s.gap }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HeatBackend {
    /// Eigen-expansion `Σ e^{-tλ_i} ⟨ω, v_i⟩ v_i`.
    Spectral,
    /// Scaling-and-squaring exponential of `-tΔ`.
    Squaring,
}

fn check_time(t: f64) -> Result<()> {
    if t.is_nan() || t < 0.0 {
        Err(Error::NegativeTime(t))
    } else {
        Ok(())
    }
}

/// `P_t ω`.
pub fn heat_apply(s: &SpectralData, t: f64, omega: &Cochain, backend: HeatBackend) -> Result<Cochain> {
    check_time(t)?;
    s.check(omega)?;
    match backend {
        HeatBackend::Spectral => s.apply_fn(omega, |_, l| (-t * l).exp()),
        HeatBackend::Squaring => {
            let p = squaring_exponential(s, t)?;
            Ok(Cochain::from_vector(s.degree, p * omega.to_vector()))
        }
    }
}

fn squaring_exponential(s: &SpectralData, t: f64) -> Result<DMatrix<f64>> {
    expm(&(s.laplacian() * -t))
        .ok_or_else(|| Error::InvalidParameter(alloc::string::String::from("singular Padé denominator")))
}

/// Matrix of `P_t`.
pub fn heat_operator(s: &SpectralData, t: f64, backend: HeatBackend) -> Result<OperatorMatrix> {
    check_time(t)?;
    match backend {
        HeatBackend::Spectral => s.operator_fn(|_, l| (-t * l).exp()),
        HeatBackend::Squaring => Ok(OperatorMatrix::new(s.degree, s.degree, squaring_exponential(s, t)?)),
    }
}

/// Matrix of `P_t (1 − H)`.
pub fn complement_heat_operator(s: &SpectralData, t: f64) -> Result<OperatorMatrix> {
    check_time(t)?;
    s.operator_fn(|i, l| if s.is_kernel(i) { 0.0 } else { (-t * l).exp() })
}

/// `∂_t P_t ω = −Δ P_t ω`.
pub fn heat_derivative(s: &SpectralData, t: f64, omega: &Cochain) -> Result<Cochain> {
    check_time(t)?;
    s.apply_fn(omega, |_, l| -l * (-t * l).exp())
}

/// Orthogonal projector onto the harmonic space `ker Δ`.
pub fn harmonic_projector(s: &SpectralData) -> Result<OperatorMatrix> {
    s.operator_fn(|i, _| if s.is_kernel(i) { 1.0 } else { 0.0 })
}

/// Outcome of the long-time heat limit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeatLimit {
    pub value: Cochain,
    /// Time at which `value = P_t ω` was taken.
    pub t: f64,
    pub iterations: usize,
    /// Last observed `‖P_{t/2} ω − P_t ω‖₂ / ‖ω‖₂`.
    pub last_step: f64,
    /// `e^{-gap·t}`: decay envelope of the non-harmonic part at `t`.
    pub envelope: f64,
}

const MAX_DOUBLINGS: usize = 200;

/// `H ω` as `lim_{t→∞} P_t ω`, doubling `t` from `1/gap` until two
/// successive iterates agree to `tol · ‖ω‖₂`.
pub fn heat_limit_projector(s: &SpectralData, omega: &Cochain, tol: f64) -> Result<HeatLimit> {
    if !(tol > 0.0) {
        return Err(Error::InvalidTolerance(tol));
    }
    s.check(omega)?;
    let norm = weighted_l2(omega.values(), &s.weights);
    let mut t = if s.gap.is_finite() { 1.0 / s.gap } else { 0.0 };
    let mut current = heat_apply(s, t, omega, HeatBackend::Spectral)?;
    let mut iterations = 0;
    loop {
        iterations += 1;
        let next_t = 2.0 * t;
        let next = heat_apply(s, next_t, omega, HeatBackend::Spectral)?;
        let step = weighted_l2(current.sub(&next).values(), &s.weights);
        let relative = if norm > 0.0 { step / norm } else { 0.0 };
        current = next;
        t = next_t;
        if step <= tol * norm || iterations >= MAX_DOUBLINGS {
            let envelope = if s.gap.is_finite() { (-s.gap * t).exp() } else { 0.0 };
            return Ok(HeatLimit { value: current, t, iterations, last_step: relative, envelope });
        }
    }
}
