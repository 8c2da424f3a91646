use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use diffusim::topology::generate_erdos_renyi;
use diffusim::weights::{
    conventional_scalar_weights, cooperation_matrix, optimal_weights_closed_form,
    optimal_weights_direct, optimal_weights_sherman_morrison, subproblem_cost, ComponentProblem,
    ScalarWeightProblem,
};
use diffusim::{ObservabilityMask, Transform};

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn signal_and_mask() -> impl Strategy<Value = (Vec<f64>, Vec<bool>)> {
    (1usize..48).prop_flat_map(|len| {
        (
            prop::collection::vec(-10.0f64..10.0, len),
            prop::collection::vec(any::<bool>(), len),
        )
    })
}

proptest! {
    #[test]
    fn dct_preserves_energy_and_round_trips(x in prop::collection::vec(-100.0f64..100.0, 1..96)) {
        let t = Transform::dct(x.len()).unwrap();
        let fx = t.forward(&x).unwrap();
        prop_assert!((norm(&fx) - norm(&x)).abs() <= 1e-12 * (1.0 + norm(&x)));
        let back = t.inverse(&fx).unwrap();
        for (a, b) in x.iter().zip(&back) {
            prop_assert!((a - b).abs() <= 1e-12 * (1.0 + norm(&x)));
        }
    }

    #[test]
    fn masking_is_idempotent_and_contracting((x, bits) in signal_and_mask()) {
        let t = Transform::dct(x.len()).unwrap();
        let mask = ObservabilityMask::new(bits);
        let once = t.apply_mask(&mask, &x).unwrap();
        let twice = t.apply_mask(&mask, &once).unwrap();
        for (a, b) in once.iter().zip(&twice) {
            prop_assert!((a - b).abs() <= 1e-10);
        }
        prop_assert!(norm(&once) <= norm(&x) + 1e-10);
        let full = t.apply_mask(&ObservabilityMask::full(x.len()), &x).unwrap();
        for (a, b) in full.iter().zip(&x) {
            prop_assert!((a - b).abs() <= 1e-10);
        }
        let none = t.apply_mask(&ObservabilityMask::empty(x.len()), &x).unwrap();
        prop_assert!(none.iter().all(|v| v.abs() <= 1e-10));
    }

    #[test]
    fn random_graphs_are_symmetric_with_self_loops(n in 1usize..40, p in 0.0f64..=1.0, seed in any::<u64>()) {
        let g = generate_erdos_renyi(n, p, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        for a in 0..n {
            prop_assert!(g.is_linked(a, a));
            for b in 0..n {
                prop_assert_eq!(g.is_linked(a, b), g.is_linked(b, a));
            }
            let nb = g.neighbors(a).unwrap();
            prop_assert!(nb.contains(&a));
            prop_assert!(nb.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn weight_solvers_agree_and_minimize(
        (d, l) in (1usize..10).prop_flat_map(|m| (
            prop::collection::vec(prop_oneof![Just(0.0), 0.01f64..=2.0], m),
            prop::collection::vec(0.1f64..=100.0, m),
        )),
        s0 in 0.1f64..=10.0,
    ) {
        let p = ComponentProblem::new(d.clone(), l, s0).unwrap();
        let closed = optimal_weights_closed_form(&p);
        let direct = optimal_weights_direct(&p).unwrap();
        let sm = optimal_weights_sherman_morrison(&p).unwrap();
        let scale = direct.iter().map(|v| v.abs()).fold(1e-300, f64::max);
        for k in 0..d.len() {
            prop_assert!((closed[k] - direct[k]).abs() <= 1e-9 * scale);
            prop_assert!((sm[k] - direct[k]).abs() <= 1e-9 * scale);
            if d[k] == 0.0 {
                prop_assert_eq!(closed[k], 0.0);
                prop_assert_eq!(direct[k], 0.0);
            }
        }
        let best = subproblem_cost(&p, &closed).unwrap();
        prop_assert!(best <= s0 + 1e-12, "doing nothing costs s0");
        let mut nudged = closed.clone();
        nudged[0] += 1e-3;
        prop_assert!(subproblem_cost(&p, &nudged).unwrap() >= best);
    }

    #[test]
    fn conventional_weights_solve_the_normal_equations(
        masks in prop::collection::vec(prop::collection::vec(any::<bool>(), 12), 1..6),
        snr in 0.1f64..=100.0,
    ) {
        let masks: Vec<ObservabilityMask> = masks.into_iter().map(ObservabilityMask::new).collect();
        let refs: Vec<&ObservabilityMask> = masks.iter().collect();
        let p = ScalarWeightProblem::from_masks(&refs, vec![snr; masks.len()]).unwrap();
        let g = conventional_scalar_weights(&p).unwrap();
        let a = p.regularizer() + cooperation_matrix(&p);
        let residual = a * nalgebra::DVector::from_column_slice(&g) - p.rhs();
        prop_assert!(residual.amax() <= 1e-9 * (1.0 + p.rhs().amax()));
    }
}
