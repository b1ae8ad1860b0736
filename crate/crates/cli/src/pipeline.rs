//! build → spectrum → decompose → interpolate → verify, collected into one
//! [`Report`].

use std::path::PathBuf;

use lphodge_core::complex::weighted_lp_norm;
use lphodge_core::hodge::{green_quadrature, DecompositionResult, HodgeContext, RieszReport, UniquenessReport};
use lphodge_core::interp::{
    admissible_interval, dimension_row, fit_alpha, gaffney_constant, interpolation_report, measure_tau,
    AdmissibleInterval, DimensionReport, GaffneyReport, InterpolationConfig, InterpolationReport,
};
use lphodge_core::quadrature::{QuadratureCertificate, QuadratureGrid, QuadratureScheme};
use lphodge_core::random::{derive_seed, random_cochain, seeded_rng};
use lphodge_core::spectral::{classify_zero, SpectralData};
use lphodge_core::{Cochain, SimplicialComplex};
use rayon::prelude::*;
use serde::Serialize;

use crate::cache::SpectralCache;
use crate::error::CliError;
use crate::input::{parse_input, InputFormat};
use crate::report::OutputFormat;

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_ERROR_TARGET: f64 = 1e-8;
pub const DEFAULT_P_LIST: [f64; 5] = [1.25, 1.5, 2.0, 3.0, 4.0];
pub const DEFAULT_T_GRID: [f64; 5] = [0.25, 0.5, 1.0, 2.0, 4.0];

/// Sampled shifts of the Gaffney check.
const GAFFNEY_SHIFTS: [f64; 3] = [0.1, 1.0, 10.0];
const GAFFNEY_SAMPLES: usize = 20;
const POWER_ITERS: usize = 100;

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub input: PathBuf,
    pub format: InputFormat,
    pub degree: usize,
    pub p_list: Vec<f64>,
    /// Defaults to `τ/10`.
    pub epsilon: Option<f64>,
    pub error_target: f64,
    /// Times for the growth-rate fit.
    pub t_grid: Vec<f64>,
    pub seed: u64,
    pub cache_dir: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub output_format: OutputFormat,
}

impl RunConfig {
    pub fn new(input: PathBuf, format: InputFormat) -> Self {
        Self {
            input,
            format,
            degree: 1,
            p_list: DEFAULT_P_LIST.to_vec(),
            epsilon: None,
            error_target: DEFAULT_ERROR_TARGET,
            t_grid: DEFAULT_T_GRID.to_vec(),
            seed: DEFAULT_SEED,
            cache_dir: None,
            output: None,
            output_format: OutputFormat::Json,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if let Some(p) = self.p_list.iter().find(|p| !(**p >= 1.0)) {
            return Err(CliError::Input(format!("exponent {p} outside [1, ∞]")));
        }
        if !(self.error_target > 0.0 && self.error_target <= 1e-2) {
            return Err(CliError::Input(format!("error target {} outside (0, 1e-2]", self.error_target)));
        }
        if let Some(e) = self.epsilon {
            if !(e >= 0.0 && e.is_finite()) {
                return Err(CliError::Input(format!("epsilon {e} must be nonnegative")));
            }
        }
        let increasing = self.t_grid.windows(2).all(|w| w[0] < w[1]);
        if self.t_grid.len() < 3 || !increasing || !(self.t_grid[0] > 0.0) {
            return Err(CliError::Input(format!(
                "time grid needs at least 3 positive increasing points, got {:?}",
                self.t_grid
            )));
        }
        Ok(())
    }
}

/// Which parts of the pipeline a command runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sections {
    pub spectrum: bool,
    pub interpolation: bool,
    pub decomposition: bool,
    pub verification: bool,
}

impl Sections {
    pub const BUILD: Self = Self { spectrum: false, interpolation: false, decomposition: false, verification: false };
    pub const SPECTRUM: Self = Self { spectrum: true, ..Self::BUILD };
    pub const DECOMPOSE: Self = Self { decomposition: true, ..Self::SPECTRUM };
    pub const INTERP: Self = Self { interpolation: true, ..Self::SPECTRUM };
    pub const VERIFY: Self = Self { verification: true, ..Self::DECOMPOSE };
    pub const ALL: Self = Self { spectrum: true, interpolation: true, decomposition: true, verification: true };
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfigEcho {
    pub command: String,
    pub input: String,
    pub format: String,
    pub degree: usize,
    pub p_list: Vec<f64>,
    pub epsilon: Option<f64>,
    pub error_target: f64,
    pub t_grid: Vec<f64>,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexSummary {
    pub max_degree: usize,
    pub counts: Vec<usize>,
    pub betti: Vec<usize>,
    pub total_weights: Vec<f64>,
    /// `d∘d = 0` in integer arithmetic.
    pub coboundary_exact: bool,
    /// Largest `‖Δ − Δ*‖_F / ‖Δ‖_F` over all degrees.
    pub laplacian_adjoint_residual: f64,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumSummary {
    pub degree: usize,
    pub dimension: usize,
    pub eigenvalues: Vec<f64>,
    pub kernel_dim: usize,
    pub zero_in_spectrum: bool,
    pub isolated: bool,
    /// `null` when the spectrum is `{0}`.
    pub gap: Option<f64>,
    pub lambda_max: f64,
    pub orthonormality_error: f64,
    pub eigen_residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuadratureCheck {
    pub certificate: QuadratureCertificate,
    pub tail_bound: f64,
    /// `‖G_quad ω₀ − G ω₀‖₂` with `ω₀ = (1−H)ω`.
    pub green_difference: f64,
    pub green_norm: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionSection {
    /// `input` or `seeded`.
    pub source: String,
    pub cochain: Cochain,
    /// Exponents of `p_list` inside the admissible interval.
    pub p_used: Vec<f64>,
    pub result: DecompositionResult,
    pub quadrature: Option<QuadratureCheck>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationSection {
    pub uniqueness: UniquenessReport,
    pub dimension: DimensionReport,
    pub riesz: RieszReport,
    pub gaffney: Vec<GaffneyReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub config: ConfigEcho,
    pub complex: ComplexSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<SpectrumSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interval: Option<AdmissibleInterval>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interpolation: Option<InterpolationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationSection>,
    /// Names of violated invariants; empty on success.
    pub violations: Vec<String>,
    pub status: String,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn summarize_complex(k: &SimplicialComplex, warnings: Vec<String>) -> Result<ComplexSummary, CliError> {
    let mut residual = 0.0_f64;
    for deg in 0..=k.max_degree() {
        residual = residual.max(k.hodge_laplacian(deg)?.adjoint_residual(k.weights(deg)));
    }
    Ok(ComplexSummary {
        max_degree: k.max_degree(),
        counts: k.counts(),
        betti: k.betti_numbers(),
        total_weights: (0..=k.max_degree()).map(|d| k.total_weight(d)).collect(),
        coboundary_exact: k.coboundary_squares_to_zero(),
        laplacian_adjoint_residual: residual,
        warnings,
    })
}

fn summarize_spectrum(s: &SpectralData) -> SpectrumSummary {
    let gap = classify_zero(s);
    SpectrumSummary {
        degree: s.degree(),
        dimension: s.dimension(),
        eigenvalues: s.eigenvalues().to_vec(),
        kernel_dim: s.kernel_dim(),
        zero_in_spectrum: gap.zero_in_spectrum,
        isolated: gap.isolated,
        gap: gap.gap.is_finite().then_some(gap.gap),
        lambda_max: s.lambda_max(),
        orthonormality_error: s.orthonormality_error(),
        eigen_residual: s.eigen_residual(),
    }
}

/// Admissible interval from the fitted growth rate and the gap; `None` when
/// the Laplacian vanishes and every exponent is admissible.
fn interval_for(s: &SpectralData, cfg: &RunConfig) -> Result<Option<AdmissibleInterval>, CliError> {
    if s.gap().is_infinite() {
        return Ok(None);
    }
    let alpha = fit_alpha(s, &cfg.t_grid)?.alpha;
    let tau = measure_tau(s)?;
    let epsilon = cfg.epsilon.unwrap_or(0.1 * tau);
    admissible_interval(alpha, tau, epsilon).map(Some).map_err(|e| CliError::Input(e.to_string()))
}

fn quadrature_grid(s: &SpectralData, target: f64) -> Result<QuadratureGrid, CliError> {
    if s.gap().is_infinite() {
        return Ok(QuadratureGrid {
            scheme: QuadratureScheme::TruncatedExponential,
            t_max: 0.0,
            nodes: lphodge_core::quadrature::DEFAULT_NODES,
            error_target: target,
        });
    }
    Ok(QuadratureGrid::certified(QuadratureScheme::TruncatedExponential, s.gap(), target)?)
}

fn l2(c: &Cochain, w: &[f64]) -> f64 {
    weighted_lp_norm(c.values(), w, 2.0).unwrap_or(f64::NAN)
}

/// Runs the requested sections on the input described by `cfg`.
pub fn run_pipeline(cfg: &RunConfig, sections: Sections, command: &str) -> Result<Report, CliError> {
    cfg.validate()?;
    let parsed = parse_input(&cfg.input, cfg.format)?;
    let k = &parsed.complex;
    let mut violations: Vec<String> = Vec::new();

    let complex = summarize_complex(k, parsed.warnings.clone())?;
    if !complex.coboundary_exact {
        violations.push("coboundary squares to zero".into());
    }
    if complex.laplacian_adjoint_residual > lphodge_core::complex::ADJOINT_TOL {
        violations.push("laplacian self-adjoint".into());
    }

    let mut report = Report {
        tool: env!("CARGO_PKG_NAME").into(),
        version: env!("CARGO_PKG_VERSION").into(),
        config: ConfigEcho {
            command: command.into(),
            input: cfg.input.display().to_string(),
            format: cfg.format.to_string(),
            degree: cfg.degree,
            p_list: cfg.p_list.clone(),
            epsilon: cfg.epsilon,
            error_target: cfg.error_target,
            t_grid: cfg.t_grid.clone(),
            seed: cfg.seed,
        },
        complex,
        spectrum: None,
        interval: None,
        interpolation: None,
        decomposition: None,
        verification: None,
        violations: Vec::new(),
        status: String::new(),
    };

    let needs_spectrum = sections.spectrum || sections.interpolation || sections.decomposition || sections.verification;
    if needs_spectrum {
        if cfg.degree > k.max_degree() {
            return Err(CliError::Input(format!(
                "degree {} exceeds the complex dimension {}",
                cfg.degree,
                k.max_degree()
            )));
        }
        if let Some(c) = &parsed.cochain {
            if c.degree() != cfg.degree {
                return Err(CliError::Input(format!(
                    "input cochain has degree {} but --degree is {}",
                    c.degree(),
                    cfg.degree
                )));
            }
        }
        let cache = match &cfg.cache_dir {
            Some(dir) => SpectralCache::new(dir)?,
            None => SpectralCache::disabled(),
        };
        let (spectral, _) = cache.spectral(k, cfg.degree)?;
        let ctx = HodgeContext::with_spectral(k, cfg.degree, spectral)?;
        run_sections(cfg, sections, &ctx, parsed.cochain.clone(), &mut report, &mut violations)?;
    }

    report.status = if violations.is_empty() { "ok" } else { "failed" }.into();
    report.violations = violations;
    Ok(report)
}

fn run_sections(
    cfg: &RunConfig,
    sections: Sections,
    ctx: &HodgeContext<'_>,
    input_cochain: Option<Cochain>,
    report: &mut Report,
    violations: &mut Vec<String>,
) -> Result<(), CliError> {
    let s = ctx.spectral();
    let k = ctx.complex();
    let spectrum = summarize_spectrum(s);
    if spectrum.orthonormality_error > 1e-10 {
        violations.push("eigenbasis orthonormality".into());
    }
    if spectrum.eigen_residual > 1e-8 {
        violations.push("eigenpair residual".into());
    }
    report.spectrum = Some(spectrum);

    let interval = interval_for(s, cfg)?;
    report.interval = interval;

    if sections.interpolation && s.gap().is_finite() {
        let icfg = InterpolationConfig {
            alpha_grid: cfg.t_grid.clone(),
            epsilon: cfg.epsilon,
            p_grid: interpolation_grid(&cfg.p_list),
            iters: POWER_ITERS,
            seed: derive_seed(cfg.seed, &[1]),
            ..InterpolationConfig::default()
        };
        let r = interpolation_report(ctx, &icfg)?;
        violations.extend(r.violations().into_iter().map(|v| format!("interpolation: {v}")));
        report.interpolation = Some(r);
    }

    if !(sections.decomposition || sections.verification) {
        return Ok(());
    }
    let w = ctx.weights();
    let (source, omega) = match input_cochain {
        Some(c) => ("input", c),
        None => ("seeded", random_cochain(&mut seeded_rng(cfg.seed), k, ctx.degree())),
    };
    let p_used: Vec<f64> =
        cfg.p_list.iter().copied().filter(|&p| interval.map_or(p > 1.0 && p.is_finite(), |iv| iv.contains(p))).collect();
    let result = ctx.decompose(&omega, &p_used)?;
    if let Err(e) = result.check() {
        violations.push(format!("decomposition: {e}"));
    }
    if result.component_norms.iter().any(|c| !c.ratio.is_finite()) {
        violations.push("decomposition: finite norm ratios".into());
    }

    let grid = quadrature_grid(s, cfg.error_target)?;
    let omega0 = omega.sub(&result.omega3);
    let quad = green_quadrature(s, &omega0, &grid)?;
    let exact_green = ctx.green(&omega0)?;
    let green_norm = l2(&exact_green, w);
    let green_difference = l2(&quad.value.sub(&exact_green), w);
    if !(green_difference <= quad.tail_bound + 1e-10 * green_norm.max(l2(&omega, w))) {
        violations.push("green quadrature within its tail bound".into());
    }
    report.decomposition = Some(DecompositionSection {
        source: source.into(),
        cochain: omega.clone(),
        p_used: p_used.clone(),
        result,
        quadrature: Some(QuadratureCheck {
            certificate: quad.certificate,
            tail_bound: quad.tail_bound,
            green_difference,
            green_norm,
        }),
    });

    if !sections.verification {
        return Ok(());
    }
    let mut gaffney_p: Vec<f64> = vec![2.0];
    gaffney_p.extend(p_used.iter().copied().filter(|&p| p != 2.0));
    let gaffney_jobs: Vec<(usize, f64, f64)> = gaffney_p
        .iter()
        .flat_map(|&p| GAFFNEY_SHIFTS.iter().map(move |&g| (p, g)))
        .enumerate()
        .map(|(i, (p, g))| (i, p, g))
        .collect();
    let riesz_p: Vec<f64> = [1.0].into_iter().chain(p_used.iter().copied()).chain([f64::INFINITY]).collect();

    let ((uniqueness, dimension), (riesz, gaffney)) = rayon::join(
        || {
            rayon::join(
                || ctx.verify_uniqueness(&omega, &grid),
                || dimension_report(k, &cfg.p_list, ctx),
            )
        },
        || {
            rayon::join(
                || ctx.riesz_transform_norms(&riesz_p, POWER_ITERS, derive_seed(cfg.seed, &[2])),
                || {
                    gaffney_jobs
                        .par_iter()
                        .map(|&(i, p, g)| {
                            gaffney_constant(ctx, g, p, GAFFNEY_SAMPLES, derive_seed(cfg.seed, &[3, i as u64]))
                        })
                        .collect::<Result<Vec<_>, _>>()
                },
            )
        },
    );
    let (uniqueness, dimension, riesz, gaffney) = (uniqueness?, dimension?, riesz?, gaffney?);

    if !uniqueness.agrees {
        violations.push("uniqueness of the decomposition".into());
    }
    if !dimension.consistent {
        violations.push("harmonic dimension equals betti number".into());
    }
    if riesz.commutation_residual > 1e-9 {
        violations.push("riesz: commutation".into());
    }
    if riesz.factorization_residual > 1e-9 {
        violations.push("riesz: factorization".into());
    }
    if riesz.resolution_residual > 1e-9 {
        violations.push("riesz: resolution of (1 - H)".into());
    }
    let brackets_ok = riesz
        .rows
        .iter()
        .flat_map(|r| [r.exact, r.coexact])
        .flatten()
        .all(|b| b.is_consistent());
    if !brackets_ok {
        violations.push("riesz: norm brackets".into());
    }
    if gaffney.iter().any(|g| g.p == 2.0 && g.max_ratio > 2.0_f64.sqrt() + 1e-10) {
        violations.push("gaffney bound at p = 2".into());
    }
    report.verification = Some(VerificationSection { uniqueness, dimension, riesz, gaffney });
    Ok(())
}

/// 1, every requested exponent, and ∞, in increasing order without repeats.
fn interpolation_grid(p_list: &[f64]) -> Vec<f64> {
    let mut grid: Vec<f64> = [1.0].into_iter().chain(p_list.iter().copied()).chain([f64::INFINITY]).collect();
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    grid
}

fn dimension_report(
    k: &SimplicialComplex,
    p_list: &[f64],
    ctx: &HodgeContext<'_>,
) -> Result<DimensionReport, lphodge_core::Error> {
    let betti = k.betti_numbers();
    let rows = (0..=k.max_degree())
        .into_par_iter()
        .map(|deg| {
            if deg == ctx.degree() {
                dimension_row(ctx, betti[deg], p_list)
            } else {
                dimension_row(&HodgeContext::new(k, deg)?, betti[deg], p_list)
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let consistent = rows.iter().all(|r| r.consistent);
    Ok(DimensionReport { rows, consistent })
}

/// Runs `f` on a pool of `threads` workers (rayon's default when `None`).
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| CliError::Input(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// Thread count from the environment, if set.
pub fn threads_from_env() -> Result<Option<usize>, CliError> {
    match std::env::var(crate::THREADS_ENV) {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .map(Some)
            .ok_or_else(|| CliError::Input(format!("{} must be a positive integer, got `{v}`", crate::THREADS_ENV))),
        _ => Ok(None),
    }
}
