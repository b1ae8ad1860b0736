//! Acceptance suite: one PASS/FAIL line per criterion.

use std::path::Path;
use std::process::Command;

use lphodge_core::hodge::{inv_sqrt_spectral, inv_sqrt_subordinated, HodgeContext};
use lphodge_core::interp::{
    admissible_interval, decay_rate, dimension_consistency, fit_alpha, gaffney_constant, measure_tau, opnorm_two,
    semigroup_interpolation_check, AdmissibleInterval,
};
use lphodge_core::quadrature::{QuadratureGrid, QuadratureScheme};
use lphodge_core::random::{derive_seed, random_cochain, seeded_rng, uniform_values};
use lphodge_core::spectral::{complement_heat_operator, SpectralData};
use lphodge_core::{shapes, Cochain, SimplicialComplex};

const SEED: u64 = 20_240_601;
const COCHAINS: usize = 20;
const CHECK_P: [f64; 6] = [1.25, 1.5, 4.0 / 3.0, 2.0, 3.0, 4.0];

fn corpus() -> Vec<(String, SimplicialComplex)> {
    let mut out = vec![
        ("interval".to_string(), shapes::interval()),
        ("P5".to_string(), shapes::path(5)),
        ("C3".to_string(), shapes::cycle(3)),
        ("C12".to_string(), shapes::cycle(12)),
        ("filled triangle".to_string(), shapes::filled_triangle()),
        ("tetrahedron boundary".to_string(), shapes::tetrahedron_boundary()),
        ("torus 6x6".to_string(), shapes::flat_torus(6, 6)),
    ];
    for seed in 0..20 {
        out.push((format!("random #{seed}"), shapes::random_two_complex(seed)));
    }
    out
}

struct Case<'a> {
    name: &'a str,
    index: usize,
    ctx: HodgeContext<'a>,
}

impl Case<'_> {
    fn spectral(&self) -> &SpectralData {
        self.ctx.spectral()
    }

    fn degree(&self) -> usize {
        self.ctx.degree()
    }

    fn weights(&self) -> &[f64] {
        self.ctx.weights()
    }

    fn label(&self) -> String {
        format!("{} degree {}", self.name, self.degree())
    }

    fn cochains(&self, stream: u64) -> Vec<Cochain> {
        let mut rng = seeded_rng(derive_seed(SEED, &[stream, self.index as u64, self.degree() as u64]));
        (0..COCHAINS).map(|_| random_cochain(&mut rng, self.ctx.complex(), self.degree())).collect()
    }

    fn interval(&self) -> Option<AdmissibleInterval> {
        let s = self.spectral();
        if s.gap().is_infinite() {
            return None;
        }
        let alpha = fit_alpha(s, &[0.25, 0.5, 1.0, 2.0, 4.0]).ok()?.alpha;
        let tau = measure_tau(s).ok()?;
        admissible_interval(alpha, tau, 0.1 * tau).ok()
    }
}

fn l2(c: &Cochain, w: &[f64]) -> f64 {
    c.values().iter().zip(w).map(|(x, w)| w * x * x).sum::<f64>().sqrt()
}

/// Outcome of one criterion.
struct Outcome {
    checks: usize,
    failures: Vec<String>,
    note: String,
}

impl Outcome {
    fn new() -> Self {
        Self { checks: 0, failures: Vec::new(), note: String::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

fn report(number: usize, title: &str, outcome: &Outcome) -> bool {
    let ok = outcome.failures.is_empty() && outcome.checks > 0;
    println!(
        "{} criterion {number}: {title} ({} checks{}{})",
        if ok { "PASS" } else { "FAIL" },
        outcome.checks,
        if outcome.note.is_empty() { "" } else { "; " },
        outcome.note
    );
    for f in outcome.failures.iter().take(5) {
        println!("      {f}");
    }
    if outcome.failures.len() > 5 {
        println!("      ... {} more", outcome.failures.len() - 5);
    }
    ok
}

/// Exponents strictly inside the admissible interval, evenly spaced in `1/p`.
fn interior_exponents(iv: &AdmissibleInterval) -> Vec<f64> {
    (1..8).map(|k| 1.0 / (iv.inv_p2 + (iv.inv_p1 - iv.inv_p2) * k as f64 / 8.0)).collect()
}

fn decomposition_theorem(cases: &[Case]) -> Outcome {
    let mut o = Outcome::new();
    let mut worst = 0.0_f64;
    for case in cases {
        let mut p_list: Vec<f64> = Vec::new();
        if let Some(iv) = case.interval() {
            p_list.extend(CHECK_P.iter().copied().filter(|&p| iv.contains(p)));
            p_list.extend(interior_exponents(&iv));
        }
        for (i, omega) in case.cochains(1).iter().enumerate() {
            let dec = match case.ctx.decompose(omega, &p_list) {
                Ok(d) => d,
                Err(e) => {
                    o.check(false, || format!("{} cochain {i}: {e}", case.label()));
                    continue;
                }
            };
            worst = worst.max(dec.residual).max(dec.harmonic_residual).max(dec.orthogonality.max());
            o.check(dec.residual <= 1e-8, || format!("{} cochain {i}: residual {:e}", case.label(), dec.residual));
            o.check(dec.harmonic_residual <= 1e-8, || {
                format!("{} cochain {i}: harmonic residual {:e}", case.label(), dec.harmonic_residual)
            });
            o.check(dec.orthogonality.max() <= 1e-8, || {
                format!("{} cochain {i}: orthogonality {:e}", case.label(), dec.orthogonality.max())
            });
            let finite = dec.component_norms.len() == p_list.len()
                && dec.component_norms.iter().all(|c| c.ratio.is_finite());
            o.check(finite, || format!("{} cochain {i}: non-finite c_p", case.label()));
        }
    }
    o.note = format!("worst invariant {worst:.1e}");
    o
}

fn uniqueness(cases: &[Case]) -> Outcome {
    let mut o = Outcome::new();
    let mut worst = 0.0_f64;
    for case in cases {
        let grid = lphodge_core::hodge::uniqueness_grid(case.spectral()).expect("grid");
        for (i, omega) in case.cochains(2).iter().enumerate() {
            match case.ctx.verify_uniqueness(omega, &grid) {
                Ok(r) => {
                    worst = worst.max(r.exact_diff).max(r.coexact_diff).max(r.harmonic_diff);
                    o.check(r.agrees, || format!("{} cochain {i}: {r:?}", case.label()));
                }
                Err(e) => o.check(false, || format!("{} cochain {i}: {e}", case.label())),
            }
        }
    }
    o.note = format!("worst relative difference {worst:.1e}");
    o
}

fn gap_decay(cases: &[Case]) -> Outcome {
    let mut o = Outcome::new();
    let mut worst = 0.0_f64;
    for case in cases {
        let s = case.spectral();
        let tau = s.gap();
        for t in [0.1, 1.0, 5.0] {
            let op = complement_heat_operator(s, t).expect("heat operator");
            let norm = opnorm_two(op.matrix(), case.weights(), case.weights()).expect("norm");
            let expected = if tau.is_finite() { (-tau * t).exp() } else { 0.0 };
            let err = (norm - expected).abs();
            worst = worst.max(err);
            o.check(err <= 1e-10, || format!("{} t={t}: norm {norm} vs e^(-tau t) {expected}", case.label()));
        }
    }
    o.note = format!("worst deviation {worst:.1e}");
    o
}

fn subordination(cases: &[Case]) -> Outcome {
    let mut o = Outcome::new();
    let mut worst = 0.0_f64;
    for case in cases {
        let s = case.spectral();
        if s.gap().is_infinite() {
            continue;
        }
        let grid = QuadratureGrid::certified(QuadratureScheme::TruncatedExponential, s.gap(), 1e-6).expect("grid");
        for (i, omega) in case.cochains(4).iter().enumerate() {
            let exact = inv_sqrt_spectral(s, omega).expect("spectral");
            let quad = inv_sqrt_subordinated(s, omega, &grid).expect("quadrature");
            let scale = l2(&exact, case.weights());
            let err = l2(&quad.value.sub(&exact), case.weights());
            let rel = if scale > 0.0 { err / scale } else { err };
            worst = worst.max(rel);
            o.check(rel <= 1e-6, || format!("{} cochain {i}: relative error {rel:e}", case.label()));
        }
    }
    o.note = format!("worst relative error {worst:.1e}");
    o
}

fn interpolation_soundness(cases: &[Case]) -> Outcome {
    let mut o = Outcome::new();
    let mut samples = 0;
    let mut rate_bound_misses = 0;
    for case in cases {
        let Some(iv) = case.interval() else {
            continue;
        };
        o.check(decay_rate(iv.alpha, iv.tau, 2.0).ok() == Some(iv.tau), || {
            format!("{}: gamma(2) != tau", case.label())
        });
        o.check(iv.inv_p1 + iv.inv_p2 == 1.0, || format!("{}: 1/p1 + 1/p2 = {}", case.label(), iv.inv_p1 + iv.inv_p2));
        let seed = derive_seed(SEED, &[5, case.index as u64, case.degree() as u64]);
        let check = semigroup_interpolation_check(case.spectral(), iv.alpha, &iv, &[0.5, 1.0, 2.0, 5.0], &CHECK_P, 100, seed)
            .expect("interpolation check");
        for smp in &check.samples {
            samples += 1;
            if smp.lower > smp.rate_bound + 1e-8 {
                rate_bound_misses += 1;
            }
            o.check(smp.lower <= smp.rt_upper + 1e-8, || {
                format!("{} t={} p={}: lower {} > upper {}", case.label(), smp.t, smp.p, smp.lower, smp.rt_upper)
            });
        }
    }
    o.note = format!("{samples} (t, p) samples, {rate_bound_misses} above the rate bound");
    o
}

fn cohomology(cases: &[Case]) -> Outcome {
    let mut o = Outcome::new();
    let mut worst = 0.0_f64;
    for case in cases {
        let k = case.ctx.complex();
        let deg = case.degree();
        let kernel = case.spectral().kernel_basis();
        let mut rng = seeded_rng(derive_seed(SEED, &[6, case.index as u64, deg as u64]));
        for i in 0..COCHAINS {
            let coeffs = uniform_values(&mut rng, kernel.len());
            let mut harmonic = Cochain::zeros(deg, k.count(deg));
            for (c, h) in coeffs.iter().zip(&kernel) {
                harmonic = harmonic.add(&h.scaled(*c));
            }
            let omega = if deg >= 1 {
                let f = random_cochain(&mut rng, k, deg - 1);
                harmonic.add(&k.coboundary(deg - 1).expect("coboundary").apply(&f).expect("apply"))
            } else {
                harmonic.clone()
            };
            let norm = l2(&omega, case.weights());
            match case.ctx.harmonic_representative(&omega) {
                Ok(rep) => {
                    let err = l2(&rep.harmonic.sub(&harmonic), case.weights());
                    let rel = if norm > 0.0 { err / norm } else { err };
                    worst = worst.max(rel).max(rep.coexact_relative);
                    o.check(rel <= 1e-8, || format!("{} cochain {i}: harmonic error {rel:e}", case.label()));
                    o.check(rep.coexact_relative <= 1e-8, || {
                        format!("{} cochain {i}: coexact part {:e}", case.label(), rep.coexact_relative)
                    });
                }
                Err(e) => o.check(false, || format!("{} cochain {i}: {e}", case.label())),
            }
        }
    }
    o.note = format!("worst relative error {worst:.1e}");
    o
}

fn corollary(corpus: &[(String, SimplicialComplex)]) -> Outcome {
    let mut o = Outcome::new();
    for (name, k) in corpus {
        match dimension_consistency(k, &[1.0, 1.5, 2.0, 4.0, f64::INFINITY]) {
            Ok(r) => {
                for row in &r.rows {
                    o.check(row.consistent, || {
                        format!("{name} degree {}: kernel {} betti {}", row.degree, row.kernel_dim, row.betti)
                    });
                }
                let dims: Vec<usize> = r.rows.iter().map(|r| r.kernel_dim).collect();
                if name.starts_with("torus") {
                    o.check(dims == [1, 2, 1], || format!("torus kernel dimensions {dims:?}"));
                }
                if name == "tetrahedron boundary" {
                    o.check(dims == [1, 0, 1], || format!("sphere kernel dimensions {dims:?}"));
                }
            }
            Err(e) => o.check(false, || format!("{name}: {e}")),
        }
    }
    o
}

fn gaffney(cases: &[Case]) -> Outcome {
    let mut o = Outcome::new();
    let mut worst = 0.0_f64;
    for case in cases {
        for (j, g) in [0.1, 1.0, 10.0].into_iter().enumerate() {
            let seed = derive_seed(SEED, &[8, case.index as u64, case.degree() as u64, j as u64]);
            let r = gaffney_constant(&case.ctx, g, 2.0, COCHAINS, seed).expect("gaffney");
            worst = worst.max(r.max_ratio);
            o.check(r.max_ratio <= 2.0_f64.sqrt() + 1e-10, || {
                format!("{} gamma={g}: ratio {}", case.label(), r.max_ratio)
            });
        }
    }
    o.note = format!("largest ratio {worst:.6}");
    o
}

fn run_report(input: &Path, out: &Path, threads: &str, extra: &[&str]) -> Result<Vec<u8>, String> {
    let status = Command::new(env!("CARGO_BIN_EXE_lphodge"))
        .arg("report")
        .arg("--input")
        .arg(input)
        .arg("--output")
        .arg(out)
        .args(extra)
        .env(lphodge::THREADS_ENV, threads)
        .status()
        .map_err(|e| e.to_string())?;
    if !status.success() {
        return Err(format!("exit status {status}"));
    }
    std::fs::read(out).map_err(|e| e.to_string())
}

fn determinism(corpus: &[(String, SimplicialComplex)]) -> Outcome {
    let mut o = Outcome::new();
    let dir = tempfile::tempdir().expect("temp dir");
    let cache = dir.path().join("cache");
    let cache_arg = cache.to_str().expect("utf-8 path");
    for (name, k) in corpus.iter().filter(|(n, _)| n == "torus 6x6" || n == "C3" || n == "random #7") {
        let input = dir.path().join(format!("{}.json", name.replace([' ', '#'], "_")));
        std::fs::write(&input, serde_json::to_string(&k.to_description()).expect("json")).expect("write input");
        for ext in ["json", "csv"] {
            let cached = ["--cache-dir", cache_arg];
            let runs: Vec<(&str, &[&str])> = vec![("1", &[]), ("4", &[]), ("3", &cached), ("2", &cached)];
            let mut outputs = Vec::new();
            for (i, (threads, extra)) in runs.iter().enumerate() {
                let out = dir.path().join(format!("out{i}.{ext}"));
                match run_report(&input, &out, threads, extra) {
                    Ok(bytes) => outputs.push(bytes),
                    Err(e) => o.check(false, || format!("{name} {ext} run {i}: {e}")),
                }
            }
            for (i, bytes) in outputs.iter().enumerate().skip(1) {
                o.check(*bytes == outputs[0], || format!("{name} {ext}: run {i} differs from run 0"));
            }
        }
    }
    o
}

fn main() {
    let corpus = corpus();
    let mut cases = Vec::new();
    for (index, (name, k)) in corpus.iter().enumerate() {
        for degree in 0..=k.max_degree() {
            cases.push(Case { name, index, ctx: HodgeContext::new(k, degree).expect("spectral data") });
        }
    }
    println!("acceptance corpus: {} complexes, {} (complex, degree) cases", corpus.len(), cases.len());

    let results = [
        report(1, "decomposition theorem", &decomposition_theorem(&cases)),
        report(2, "uniqueness across spectral and quadrature routes", &uniqueness(&cases)),
        report(3, "exact gap decay of P_t(1-H)", &gap_decay(&cases)),
        report(4, "subordination identity for the inverse square root", &subordination(&cases)),
        report(5, "interpolation soundness", &interpolation_soundness(&cases)),
        report(6, "cohomology representation", &cohomology(&cases)),
        report(7, "harmonic dimension equals betti number", &corollary(&corpus)),
        report(8, "Gaffney bound at p = 2", &gaffney(&cases)),
        report(9, "byte-identical reports across thread counts", &determinism(&corpus)),
    ];
    let passed = results.iter().filter(|r| **r).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
