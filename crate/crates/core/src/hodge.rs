//! Green operator, fractional powers of the Laplacian and the three-part
//! decomposition `ω = dω₁ + δω₂ + ω₃`.
//!
//! With `ω₀ = (1 − H)ω` the potentials are `ω₁ = δ G ω₀` and
//! `ω₂ = d G ω₀`, so that `dω₁ + δω₂ = (dδ + δd) G ω₀ = ω₀`.

use alloc::vec::Vec;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::complex::{weighted_dot, weighted_l2, weighted_lp_norm, Cochain, OperatorMatrix, SimplicialComplex};
use crate::error::{Error, Result};
use crate::interp::{norm_bracket, NormBracket};
use crate::quadrature::{green_rule, subordination_rule, QuadratureCertificate, QuadratureGrid, QuadratureScheme, TimeRule};
use crate::spectral::{eigendecompose, heat_limit_projector, SpectralData};

/// Tolerance of every decomposition invariant (residual, harmonicity,
/// orthogonality).
pub const DECOMPOSITION_TOL: f64 = 1e-8;

/// Agreement required between the two routes of [`verify_uniqueness`].
pub const UNIQUENESS_TOL: f64 = 1e-6;

/// Green operator `G = Σ_{λ>0} λ^{-1} v ⟨v, ·⟩_W`.
pub fn green_spectral(s: &SpectralData) -> Result<OperatorMatrix> {
    s.operator_fn(|i, l| if s.is_kernel(i) { 0.0 } else { 1.0 / l })
}

/// `Δ^{-1/2}(1 − H) ω` from the eigen-expansion.
pub fn inv_sqrt_spectral(s: &SpectralData, omega: &Cochain) -> Result<Cochain> {
    s.apply_fn(omega, |i, l| if s.is_kernel(i) { 0.0 } else { 1.0 / l.sqrt() })
}

/// Result of a time-integral evaluation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureOutput {
    pub value: Cochain,
    pub certificate: QuadratureCertificate,
    /// Analytic bound on the dropped tail, `tail_factor · ‖(1−H)ω‖₂`.
    pub tail_bound: f64,
}

fn apply_rule(s: &SpectralData, omega: &Cochain, rule: &TimeRule) -> Result<QuadratureOutput> {
    let mut c = s.coefficients(omega)?;
    let mut complement = 0.0;
    for (i, ci) in c.iter_mut().enumerate() {
        if s.is_kernel(i) {
            *ci = 0.0;
        } else {
            complement += *ci * *ci;
            *ci *= rule.integrate_exponential(s.eigenvalues()[i]);
        }
    }
    Ok(QuadratureOutput {
        value: s.synthesize(&c),
        certificate: rule.certificate,
        tail_bound: rule.certificate.tail_factor * complement.sqrt(),
    })
}

/// `∫₀^∞ P_t(1−H) ω dt` by quadrature in time.
pub fn green_quadrature(s: &SpectralData, omega: &Cochain, grid: &QuadratureGrid) -> Result<QuadratureOutput> {
    let rule = green_rule(grid, s.gap(), s.lambda_max())?;
    apply_rule(s, omega, &rule)
}

/// `Γ(1/2)^{-1} ∫₀^∞ t^{-1/2} P_t(1−H) ω dt = Δ^{-1/2}(1−H) ω` by quadrature.
pub fn inv_sqrt_subordinated(s: &SpectralData, omega: &Cochain, grid: &QuadratureGrid) -> Result<QuadratureOutput> {
    let rule = subordination_rule(grid, s.gap(), s.lambda_max())?;
    apply_rule(s, omega, &rule)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShiftedSqrt {
    pub value: Cochain,
    /// `max_λ (√(λ+γ) − √λ)` over the spectrum.
    pub operator_norm_2: f64,
    /// `√γ`, the spectrum-independent bound.
    pub bound: f64,
}

/// `((Δ+γ)^{1/2} − Δ^{1/2}) ω`.
pub fn shifted_sqrt_diff(s: &SpectralData, gamma_shift: f64, omega: &Cochain) -> Result<ShiftedSqrt> {
    if !(gamma_shift > 0.0 && gamma_shift.is_finite()) {
        return Err(Error::InvalidParameter(alloc::format!("shift γ = {gamma_shift} must be positive")));
    }
    let f = |l: f64| (l + gamma_shift).sqrt() - l.sqrt();
    let value = s.apply_fn(omega, |_, l| f(l))?;
    let operator_norm_2 = s.eigenvalues().first().map_or(0.0, |&l| f(l));
    Ok(ShiftedSqrt { value, operator_norm_2, bound: gamma_shift.sqrt() })
}

/// Norms of the decomposition pieces for one exponent.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentNorms {
    pub p: f64,
    pub omega: f64,
    pub omega1: Option<f64>,
    pub omega2: Option<f64>,
    pub omega3: f64,
    pub exact: f64,
    pub coexact: f64,
    /// `max_i ‖component_i‖_p / ‖ω‖_p` (0 when `ω = 0`).
    pub ratio: f64,
}

impl ComponentNorms {
    /// `(name, norm)` pairs in a fixed order.
    pub fn entries(&self) -> Vec<(&'static str, f64)> {
        let mut v = Vec::with_capacity(5);
        if let Some(x) = self.omega1 {
            v.push(("omega1", x));
        }
        if let Some(x) = self.omega2 {
            v.push(("omega2", x));
        }
        v.push(("omega3", self.omega3));
        v.push(("exact", self.exact));
        v.push(("coexact", self.coexact));
        v
    }
}

/// Relative pairwise inner products `|⟨a,b⟩_W| / (‖a‖‖b‖)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Orthogonality {
    pub exact_coexact: f64,
    pub exact_harmonic: f64,
    pub coexact_harmonic: f64,
}

impl Orthogonality {
    pub fn max(&self) -> f64 {
        self.exact_coexact.max(self.exact_harmonic).max(self.coexact_harmonic)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionResult {
    pub degree: usize,
    /// Potential of the exact part (degree `ℓ−1`), absent at `ℓ = 0`.
    pub omega1: Option<Cochain>,
    /// Potential of the coexact part (degree `ℓ+1`), absent at the top degree.
    pub omega2: Option<Cochain>,
    /// Harmonic part.
    pub omega3: Cochain,
    /// `dω₁`.
    pub exact: Cochain,
    /// `δω₂`.
    pub coexact: Cochain,
    /// `‖ω − dω₁ − δω₂ − ω₃‖₂ / ‖ω‖₂`.
    pub residual: f64,
    /// `‖Δω₃‖₂ / ‖ω₃‖₂`.
    pub harmonic_residual: f64,
    pub orthogonality: Orthogonality,
    /// `|‖ω‖² − ‖dω₁‖² − ‖δω₂‖² − ‖ω₃‖²| / ‖ω‖²`.
    pub energy_defect: f64,
    pub component_norms: Vec<ComponentNorms>,
}

impl DecompositionResult {
    /// Checks residual, harmonicity and orthogonality at [`DECOMPOSITION_TOL`].
    pub fn check(&self) -> Result<()> {
        let checks = [
            ("decomposition residual", self.residual),
            ("harmonic residual", self.harmonic_residual),
            ("pairwise orthogonality", self.orthogonality.max()),
            ("energy defect", self.energy_defect),
        ];
        for (what, value) in checks {
            if !(value <= DECOMPOSITION_TOL) {
                return Err(Error::CertificateFailed { what, value, tolerance: DECOMPOSITION_TOL });
            }
        }
        Ok(())
    }

    /// Largest `c_p` across the reported exponents.
    pub fn max_ratio(&self) -> f64 {
        self.component_norms.iter().map(|c| c.ratio).fold(0.0, f64::max)
    }
}

fn relative(value: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        value / scale
    } else {
        value
    }
}

/// Operators of one degree of a complex together with the spectrum of its
/// Laplacian; the shared state behind the decomposition routines.
#[derive(Clone, Debug)]
pub struct HodgeContext<'a> {
    complex: &'a SimplicialComplex,
    degree: usize,
    spectral: SpectralData,
    /// `d_{ℓ-1}`
    d_lower: Option<DMatrix<f64>>,
    /// `δ_ℓ`
    delta_here: Option<DMatrix<f64>>,
    /// `d_ℓ`
    d_here: Option<DMatrix<f64>>,
    /// `δ_{ℓ+1}`
    delta_upper: Option<DMatrix<f64>>,
}

impl<'a> HodgeContext<'a> {
    pub fn new(complex: &'a SimplicialComplex, degree: usize) -> Result<Self> {
        let lap = complex.hodge_laplacian(degree)?;
        let spectral = eigendecompose(&lap, complex.weights(degree))?;
        Self::with_spectral(complex, degree, spectral)
    }

    /// Reuses an existing (e.g. cached) eigendecomposition.
    pub fn with_spectral(complex: &'a SimplicialComplex, degree: usize, spectral: SpectralData) -> Result<Self> {
        if degree > complex.max_degree() {
            return Err(Error::DegreeOutOfRange { degree, min: 0, max: complex.max_degree() });
        }
        if spectral.degree() != degree || spectral.dimension() != complex.count(degree) {
            return Err(Error::ShapeMismatch {
                expected: (complex.count(degree), complex.count(degree)),
                found: (spectral.dimension(), spectral.dimension()),
            });
        }
        let has_lower = degree >= 1;
        let has_upper = degree < complex.max_degree();
        Ok(Self {
            complex,
            degree,
            d_lower: has_lower.then(|| complex.coboundary_matrix(degree - 1)),
            delta_here: has_lower.then(|| complex.codifferential_matrix(degree)),
            d_here: has_upper.then(|| complex.coboundary_matrix(degree)),
            delta_upper: has_upper.then(|| complex.codifferential_matrix(degree + 1)),
            spectral,
        })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        self.complex
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn spectral(&self) -> &SpectralData {
        &self.spectral
    }

    pub fn weights(&self) -> &[f64] {
        self.complex.weights(self.degree)
    }

    fn norm2(&self, c: &Cochain) -> f64 {
        weighted_l2(c.values(), self.complex.weights(c.degree()))
    }

    fn mul(m: &DMatrix<f64>, c: &Cochain, degree: usize) -> Cochain {
        Cochain::from_vector(degree, m * c.to_vector())
    }

    /// `d_ℓ ω`, `None` at the top degree.
    pub fn d(&self, omega: &Cochain) -> Option<Cochain> {
        self.d_here.as_ref().map(|m| Self::mul(m, omega, self.degree + 1))
    }

    /// `δ_ℓ ω`, `None` at degree 0.
    pub fn delta(&self, omega: &Cochain) -> Option<Cochain> {
        self.delta_here.as_ref().map(|m| Self::mul(m, omega, self.degree - 1))
    }

    pub fn harmonic(&self, omega: &Cochain) -> Result<Cochain> {
        let s = &self.spectral;
        s.apply_fn(omega, |i, _| if s.is_kernel(i) { 1.0 } else { 0.0 })
    }

    pub fn green(&self, omega: &Cochain) -> Result<Cochain> {
        let s = &self.spectral;
        s.apply_fn(omega, |i, l| if s.is_kernel(i) { 0.0 } else { 1.0 / l })
    }

    /// Decomposes `ω` with the spectral harmonic projector and Green operator.
    pub fn decompose(&self, omega: &Cochain, p_list: &[f64]) -> Result<DecompositionResult> {
        self.complex.check_cochain(omega, self.degree)?;
        let harmonic = self.harmonic(omega)?;
        let green = self.green(&omega.sub(&harmonic))?;
        self.assemble(omega, harmonic, green, p_list)
    }

    fn assemble(&self, omega: &Cochain, omega3: Cochain, green: Cochain, p_list: &[f64]) -> Result<DecompositionResult> {
        let n = omega.len();
        let omega1 = self.delta(&green);
        let omega2 = self.d(&green);
        let exact = match (&self.d_lower, &omega1) {
            (Some(m), Some(w1)) => Self::mul(m, w1, self.degree),
            _ => Cochain::zeros(self.degree, n),
        };
        let coexact = match (&self.delta_upper, &omega2) {
            (Some(m), Some(w2)) => Self::mul(m, w2, self.degree),
            _ => Cochain::zeros(self.degree, n),
        };

        let w = self.weights();
        let norm = self.norm2(omega);
        let rest = omega.sub(&exact).sub(&coexact).sub(&omega3);
        let residual = relative(self.norm2(&rest), norm);

        let h_norm = self.norm2(&omega3);
        let lap_h = self.spectral.laplacian() * omega3.to_vector();
        let harmonic_residual = relative(weighted_l2(lap_h.as_slice(), w), h_norm);

        let (ne, nc) = (self.norm2(&exact), self.norm2(&coexact));
        let pair = |a: &Cochain, na: f64, b: &Cochain, nb: f64| {
            if na == 0.0 || nb == 0.0 {
                0.0
            } else {
                weighted_dot(a.values(), b.values(), w).abs() / (na * nb)
            }
        };
        let orthogonality = Orthogonality {
            exact_coexact: pair(&exact, ne, &coexact, nc),
            exact_harmonic: pair(&exact, ne, &omega3, h_norm),
            coexact_harmonic: pair(&coexact, nc, &omega3, h_norm),
        };
        let energy_defect = relative(
            (norm * norm - ne * ne - nc * nc - h_norm * h_norm).abs(),
            norm * norm,
        );

        let mut component_norms = Vec::with_capacity(p_list.len());
        for &p in p_list {
            let lp = |c: &Cochain| weighted_lp_norm(c.values(), self.complex.weights(c.degree()), p);
            let omega_p = lp(omega)?;
            let row = ComponentNorms {
                p,
                omega: omega_p,
                omega1: omega1.as_ref().map(lp).transpose()?,
                omega2: omega2.as_ref().map(lp).transpose()?,
                omega3: lp(&omega3)?,
                exact: lp(&exact)?,
                coexact: lp(&coexact)?,
                ratio: 0.0,
            };
            let largest = row.entries().iter().map(|e| e.1).fold(0.0, f64::max);
            component_norms.push(ComponentNorms { ratio: if omega_p > 0.0 { largest / omega_p } else { 0.0 }, ..row });
        }

        Ok(DecompositionResult {
            degree: self.degree,
            omega1,
            omega2,
            omega3,
            exact,
            coexact,
            residual,
            harmonic_residual,
            orthogonality,
            energy_defect,
            component_norms,
        })
    }

    /// Harmonic representative of a closed cochain, certifying that the
    /// coexact part vanishes.
    pub fn harmonic_representative(&self, omega: &Cochain) -> Result<HarmonicRepresentative> {
        self.complex.check_cochain(omega, self.degree)?;
        let norm = self.norm2(omega);
        let norm_d = self.d(omega).map_or(0.0, |c| self.norm2(&c));
        let closedness = relative(norm_d, norm);
        if closedness > DECOMPOSITION_TOL {
            return Err(Error::NotClosed { norm_d, norm });
        }
        let dec = self.decompose(omega, &[])?;
        let coexact_relative = relative(self.norm2(&dec.coexact), norm);
        if coexact_relative > DECOMPOSITION_TOL {
            return Err(Error::CertificateFailed {
                what: "coexact part of a closed cochain",
                value: coexact_relative,
                tolerance: DECOMPOSITION_TOL,
            });
        }
        let exact_residual = relative(self.norm2(&omega.sub(&dec.omega3).sub(&dec.exact)), norm);
        Ok(HarmonicRepresentative {
            harmonic: dec.omega3,
            potential: dec.omega1,
            closedness,
            exact_residual,
            coexact_relative,
        })
    }

    /// Decomposes `ω` along two routes and compares the pieces: spectral
    /// projector + spectral Green operator versus heat-limit projector +
    /// time-quadrature Green operator.
    pub fn verify_uniqueness(&self, omega: &Cochain, grid: &QuadratureGrid) -> Result<UniquenessReport> {
        let spectral_route = self.decompose(omega, &[])?;

        let limit = heat_limit_projector(&self.spectral, omega, 1e-12)?;
        let harmonic = limit.value;
        let green = green_quadrature(&self.spectral, &omega.sub(&harmonic), grid)?;
        let quadrature_route = self.assemble(omega, harmonic, green.value, &[])?;

        let norm = self.norm2(omega);
        let diff = |a: &Cochain, b: &Cochain| relative(self.norm2(&a.sub(b)), norm);
        let opt_diff = |a: &Option<Cochain>, b: &Option<Cochain>| match (a, b) {
            (Some(x), Some(y)) => diff(x, y),
            _ => 0.0,
        };
        let exact_diff = diff(&spectral_route.exact, &quadrature_route.exact);
        let coexact_diff = diff(&spectral_route.coexact, &quadrature_route.coexact);
        let harmonic_diff = diff(&spectral_route.omega3, &quadrature_route.omega3);
        let potential_diff = opt_diff(&spectral_route.omega1, &quadrature_route.omega1)
            .max(opt_diff(&spectral_route.omega2, &quadrature_route.omega2));

        // Moving a harmonic direction into the exact or coexact part must
        // break orthogonality to the harmonic space.
        let shift = if norm > 0.0 { norm } else { 1.0 };
        let w = self.weights();
        let mut kernel_perturbation_min: Option<f64> = None;
        for h in self.spectral.kernel_basis() {
            for part in [&spectral_route.exact, &spectral_route.coexact] {
                let moved = part.add(&h.scaled(shift));
                let violation = weighted_dot(moved.values(), h.values(), w).abs() / shift;
                kernel_perturbation_min = Some(kernel_perturbation_min.map_or(violation, |m: f64| m.min(violation)));
            }
        }

        let worst = exact_diff.max(coexact_diff).max(harmonic_diff);
        let perturbation_ok = kernel_perturbation_min.is_none_or(|m| m > UNIQUENESS_TOL);
        Ok(UniquenessReport {
            exact_diff,
            coexact_diff,
            harmonic_diff,
            potential_diff,
            kernel_perturbation_min,
            tolerance: UNIQUENESS_TOL,
            agrees: worst <= UNIQUENESS_TOL && perturbation_ok,
            certificate: green.certificate,
            tail_bound: green.tail_bound,
            heat_limit_t: limit.t,
        })
    }

    /// Norm brackets of `dΔ^{-1/2}(1−H)` and `δΔ^{-1/2}(1−H)` plus the
    /// commutation and factorization residuals.
    pub fn riesz_transform_norms(&self, p_list: &[f64], iters: usize, seed: u64) -> Result<RieszReport> {
        let s = &self.spectral;
        let n = s.dimension();
        let inv_sqrt = s.matrix_fn(|i, l| if s.is_kernel(i) { 0.0 } else { 1.0 / l.sqrt() });
        let green = s.matrix_fn(|i, l| if s.is_kernel(i) { 0.0 } else { 1.0 / l });
        let complement = s.matrix_fn(|i, _| if s.is_kernel(i) { 0.0 } else { 1.0 });
        let w = self.weights();

        let exact_op = self.d_here.as_ref().map(|d| d * &inv_sqrt);
        let coexact_op = self.delta_here.as_ref().map(|dl| dl * &inv_sqrt);
        let mut rows = Vec::with_capacity(p_list.len());
        for &p in p_list {
            let exact = exact_op
                .as_ref()
                .map(|m| norm_bracket(m, w, self.complex.weights(self.degree + 1), p, iters, seed))
                .transpose()?;
            let coexact = coexact_op
                .as_ref()
                .map(|m| norm_bracket(m, w, self.complex.weights(self.degree - 1), p, iters, seed))
                .transpose()?;
            rows.push(RieszRow { p, exact, coexact });
        }

        let zero = DMatrix::zeros(n, n);
        let d_delta = match (&self.d_lower, &self.delta_here) {
            (Some(d), Some(dl)) => d * dl,
            _ => zero.clone(),
        };
        let delta_d = match (&self.delta_upper, &self.d_here) {
            (Some(dl), Some(d)) => dl * d,
            _ => zero,
        };
        let lap = s.laplacian();
        let scale = |m: &DMatrix<f64>| m.norm().max(1.0);
        let commutation_residual = (&d_delta * lap - lap * &d_delta).norm() / scale(lap).powi(2);
        let lhs = &d_delta * &green;
        let rhs = &inv_sqrt * &d_delta * &inv_sqrt;
        let factorization_residual = (&lhs - rhs).norm() / scale(&lhs);
        let resolution = &d_delta * &green + &delta_d * &green - &complement;
        let resolution_residual = resolution.norm() / scale(&complement);

        Ok(RieszReport {
            degree: self.degree,
            rows,
            commutation_residual,
            factorization_residual,
            resolution_residual,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HarmonicRepresentative {
    pub harmonic: Cochain,
    /// `ω₁` with `ω − ω₃ = dω₁`.
    pub potential: Option<Cochain>,
    /// `‖dω‖₂ / ‖ω‖₂`.
    pub closedness: f64,
    /// `‖ω − ω₃ − dω₁‖₂ / ‖ω‖₂`.
    pub exact_residual: f64,
    /// `‖δω₂‖₂ / ‖ω‖₂`.
    pub coexact_relative: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UniquenessReport {
    /// Component differences between the two routes, relative to `‖ω‖₂`.
    pub exact_diff: f64,
    pub coexact_diff: f64,
    pub harmonic_diff: f64,
    pub potential_diff: f64,
    /// Smallest orthogonality violation produced by shifting a harmonic
    /// direction into another component; `None` when there is no kernel.
    pub kernel_perturbation_min: Option<f64>,
    pub tolerance: f64,
    pub agrees: bool,
    pub certificate: QuadratureCertificate,
    pub tail_bound: f64,
    pub heat_limit_t: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RieszRow {
    pub p: f64,
    /// `‖dΔ^{-1/2}(1−H)‖_{p→p}`, absent at the top degree.
    pub exact: Option<NormBracket>,
    /// `‖δΔ^{-1/2}(1−H)‖_{p→p}`, absent at degree 0.
    pub coexact: Option<NormBracket>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RieszReport {
    pub degree: usize,
    pub rows: Vec<RieszRow>,
    /// `‖dδΔ − Δdδ‖_F / ‖Δ‖_F²`.
    pub commutation_residual: f64,
    /// `‖dδG − Δ^{-1/2} dδ Δ^{-1/2}(1−H)‖_F / ‖dδG‖_F`.
    pub factorization_residual: f64,
    /// `‖dδG + δdG − (1−H)‖_F / ‖1−H‖_F`.
    pub resolution_residual: f64,
}

/// Default grid for the quadrature route of [`verify_uniqueness`].
pub fn uniqueness_grid(s: &SpectralData) -> Result<QuadratureGrid> {
    if s.gap().is_infinite() {
        return Ok(QuadratureGrid {
            scheme: QuadratureScheme::TruncatedExponential,
            t_max: 0.0,
            nodes: crate::quadrature::DEFAULT_NODES,
            error_target: 1e-8,
        });
    }
    QuadratureGrid::certified(QuadratureScheme::TruncatedExponential, s.gap(), 1e-8)
}

pub fn decompose(complex: &SimplicialComplex, degree: usize, omega: &Cochain, p_list: &[f64]) -> Result<DecompositionResult> {
    HodgeContext::new(complex, degree)?.decompose(omega, p_list)
}

pub fn harmonic_representative(complex: &SimplicialComplex, degree: usize, omega: &Cochain) -> Result<HarmonicRepresentative> {
    HodgeContext::new(complex, degree)?.harmonic_representative(omega)
}

pub fn verify_uniqueness(complex: &SimplicialComplex, degree: usize, omega: &Cochain) -> Result<UniquenessReport> {
    let ctx = HodgeContext::new(complex, degree)?;
    let grid = uniqueness_grid(ctx.spectral())?;
    ctx.verify_uniqueness(omega, &grid)
}

pub fn riesz_transform_norms(complex: &SimplicialComplex, degree: usize, p_list: &[f64]) -> Result<RieszReport> {
    HodgeContext::new(complex, degree)?.riesz_transform_norms(p_list, 200, 0)
}
