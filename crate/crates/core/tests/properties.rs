use lphodge_core::complex::{weighted_dot, weighted_lp_norm};
use lphodge_core::hodge::HodgeContext;
use lphodge_core::interp::{
    admissible_interval, conjugate, decay_rate, opnorm_exact_extremes, opnorm_power_method, riesz_thorin_upper,
    select_t0, Endpoints,
};
use lphodge_core::random::{random_cochain, seeded_rng};
use lphodge_core::spectral::{eigendecompose, heat_apply, heat_operator, HeatBackend};
use lphodge_core::{shapes, Cochain};
use nalgebra::DMatrix;
use proptest::prelude::*;

fn weights(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.25f64..4.0, n)
}

fn matrix_and_weights() -> impl Strategy<Value = (DMatrix<f64>, Vec<f64>, Vec<f64>)> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
        (prop::collection::vec(-2.0f64..2.0, r * c), weights(c), weights(r))
            .prop_map(move |(v, dw, cw)| (DMatrix::from_vec(r, c, v), dw, cw))
    })
}

fn l2(c: &Cochain, w: &[f64]) -> f64 {
    weighted_dot(c.values(), c.values(), w).sqrt()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn codifferential_is_weighted_adjoint(seed in 0u64..1000, draw in 0u64..1000) {
        let k = shapes::random_two_complex(seed);
        let mut rng = seeded_rng(draw);
        for deg in 0..k.max_degree() {
            let d = k.coboundary(deg).unwrap();
            let delta = k.codifferential(deg + 1).unwrap();
            let a = random_cochain(&mut rng, &k, deg);
            let b = random_cochain(&mut rng, &k, deg + 1);
            let lhs = k.inner(&d.apply(&a).unwrap(), &b).unwrap();
            let rhs = k.inner(&a, &delta.apply(&b).unwrap()).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs()));
        }
    }

    #[test]
    fn coboundary_squares_to_zero(seed in 0u64..1000) {
        let k = shapes::random_two_complex(seed);
        prop_assert!(k.coboundary_squares_to_zero());
        let dd = k.coboundary(1).unwrap().compose(&k.coboundary(0).unwrap()).unwrap();
        prop_assert_eq!(dd.matrix().amax(), 0.0);
    }

    #[test]
    fn holder_inequality(
        (a, b, w) in (1usize..12).prop_flat_map(|n| (
            prop::collection::vec(-3.0f64..3.0, n),
            prop::collection::vec(-3.0f64..3.0, n),
            weights(n),
        )),
        p in 1.0f64..8.0,
    ) {
        let q = conjugate(p);
        let lhs = weighted_dot(&a, &b, &w).abs();
        let rhs = weighted_lp_norm(&a, &w, p).unwrap() * weighted_lp_norm(&b, &w, q).unwrap();
        prop_assert!(lhs <= rhs * (1.0 + 1e-12) + 1e-14);
    }

    #[test]
    fn holder_volume_consistency(seed in 0u64..500, p in 1.0f64..6.0, dq in 0.0f64..6.0, q_inf in any::<bool>()) {
        let k = shapes::random_two_complex(seed);
        let deg = (seed % 3) as usize;
        let w = random_cochain(&mut seeded_rng(seed), &k, deg);
        let q = if q_inf { f64::INFINITY } else { p + dq };
        let vol = k.total_weight(deg);
        let lhs = k.lp_norm(&w, p).unwrap();
        let rhs = vol.powf(1.0 / p - 1.0 / q) * k.lp_norm(&w, q).unwrap();
        prop_assert!(lhs <= rhs * (1.0 + 1e-12));
    }

    #[test]
    fn laplacians_are_psd_with_betti_kernels(seed in 0u64..500) {
        let k = shapes::random_two_complex(seed);
        let betti = k.betti_numbers();
        for deg in 0..=k.max_degree() {
            let lap = k.hodge_laplacian(deg).unwrap();
            prop_assert!(lap.adjoint_residual(k.weights(deg)) <= 1e-12);
            let sd = eigendecompose(&lap, k.weights(deg)).unwrap();
            prop_assert!(sd.eigenvalues().iter().all(|&l| l >= -1e-10));
            prop_assert_eq!(sd.kernel_dim(), betti[deg]);
        }
    }

    #[test]
    fn semigroup_law_and_backends(seed in 0u64..200, s in 0.0f64..3.0, t in 0.0f64..3.0) {
        let k = shapes::random_two_complex(seed);
        let deg = (seed % 3) as usize;
        let sd = eigendecompose(&k.hodge_laplacian(deg).unwrap(), k.weights(deg)).unwrap();
        let w = random_cochain(&mut seeded_rng(seed), &k, deg);
        let direct = heat_apply(&sd, s + t, &w, HeatBackend::Spectral).unwrap();
        let step = heat_apply(&sd, s, &w, HeatBackend::Spectral).unwrap();
        let composed = heat_apply(&sd, t, &step, HeatBackend::Spectral).unwrap();
        let scale = l2(&w, k.weights(deg));
        prop_assert!(l2(&direct.sub(&composed), k.weights(deg)) <= 1e-10 * scale);
        let squared = heat_apply(&sd, s + t, &w, HeatBackend::Squaring).unwrap();
        prop_assert!(l2(&direct.sub(&squared), k.weights(deg)) <= 1e-9 * scale);
        prop_assert!(l2(&direct, k.weights(deg)) <= scale * (1.0 + 1e-12));
    }

    #[test]
    fn decomposition_invariants(seed in 0u64..300) {
        let k = shapes::random_two_complex(seed);
        for deg in 0..=k.max_degree() {
            let ctx = HodgeContext::new(&k, deg).unwrap();
            let w = random_cochain(&mut seeded_rng(seed ^ 0xabc), &k, deg);
            let dec = ctx.decompose(&w, &[1.5, 2.0]).unwrap();
            prop_assert!(dec.check().is_ok(), "{:?}", dec.check());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn power_method_below_riesz_thorin((t, dw, cw) in matrix_and_weights(), p in 1.01f64..10.0, seed in any::<u64>()) {
        let ends = Endpoints::measure(&t, &dw, &cw).unwrap();
        let lower = opnorm_power_method(&t, &dw, &cw, p, 60, seed).unwrap();
        let upper = riesz_thorin_upper(p, ends.one, ends.two, ends.inf);
        prop_assert!(lower <= upper + 1e-8, "lower {lower} upper {upper}");
        prop_assert!(ends.two <= riesz_thorin_upper(2.0, ends.one, f64::INFINITY, ends.inf) * (1.0 + 1e-12) + 1e-14);
    }

    #[test]
    fn exact_extremes_duality((t, dw, cw) in matrix_and_weights()) {
        let adj = DMatrix::from_fn(t.ncols(), t.nrows(), |i, j| t[(j, i)] * cw[j] / dw[i]);
        let one = opnorm_exact_extremes(&t, &dw, &cw, 1.0).unwrap();
        let inf = opnorm_exact_extremes(&adj, &cw, &dw, f64::INFINITY).unwrap();
        prop_assert!((one - inf).abs() <= 1e-14 * one.max(1.0));
    }

    #[test]
    fn interval_formulas(alpha in 0.0f64..10.0, tau in 0.01f64..10.0, frac in 0.0f64..0.99, p in 1.001f64..20.0) {
        let eps = frac * tau;
        let iv = admissible_interval(alpha, tau, eps).unwrap();
        prop_assert_eq!(iv.inv_p1 + iv.inv_p2, 1.0);
        prop_assert!(1.0 <= iv.q0 && iv.q0 <= iv.q_eps && iv.p1 < 2.0 && 2.0 < iv.p2);
        let more = admissible_interval(alpha, tau, (frac + 0.005) * tau).unwrap();
        prop_assert!(more.q_eps > iv.q_eps);
        prop_assert_eq!(decay_rate(alpha, tau, 2.0).unwrap(), tau);

        let base = admissible_interval(alpha, tau, 0.0).unwrap();
        let g = decay_rate(alpha, tau, p).unwrap();
        let margin = 1e-9 * (alpha + tau);
        if g > margin {
            prop_assert!(p > base.q0 && p < base.q0_conjugate);
        } else if g < -margin {
            prop_assert!(p < base.q0 || p > base.q0_conjugate);
        }
        let gc = decay_rate(alpha, tau, conjugate(p)).unwrap();
        prop_assert!((g - gc).abs() <= 1e-9 * (alpha + tau));
    }

    #[test]
    fn t0_condition(rho in 1e-6f64..1e6, gamma_vol in 0.0f64..1e3) {
        let c = select_t0(rho, gamma_vol).unwrap();
        prop_assert!(c.condition <= 0.5);
        prop_assert!(c.t0 > 0.0);
    }
}

#[test]
fn heat_operators_have_unit_column_sums_on_vertices() {
    for seed in 0..5 {
        let k = shapes::random_two_complex(seed);
        let sd = eigendecompose(&k.hodge_laplacian(0).unwrap(), k.weights(0)).unwrap();
        for t in [0.1, 1.0, 10.0] {
            let op = heat_operator(&sd, t, HeatBackend::Spectral).unwrap();
            let n = opnorm_exact_extremes(op.matrix(), k.weights(0), k.weights(0), 1.0).unwrap();
            assert!((n - 1.0).abs() < 1e-12);
        }
    }
}
