use proptest::prelude::*;

use num_bigint::BigInt;
use num_traits::Zero;
use qt_core::teleman::filtration_cut_terms;
use qt_core::*;

#[derive(Debug, Clone)]
struct Instance {
    quiver: Quiver,
    d: DimensionVector,
    theta: StabilityParameter,
}

/// Acyclic quivers on at most 3 vertices, d entries at most `max`, and either
/// the canonical θ or a random one shifted into the kernel of d.
fn instance(max: u32) -> impl Strategy<Value = Instance> {
    (1usize..=3)
        .prop_flat_map(move |n| {
            let pairs: Vec<(usize, usize)> = (1..=n)
                .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
                .collect();
            let arrow_counts = prop::collection::vec(0usize..=3, pairs.len());
            (
                Just(pairs),
                arrow_counts,
                prop::collection::vec(0..=max, n),
                prop::collection::vec(-5i64..=5, n),
                any::<bool>(),
            )
        })
        .prop_filter("nonzero d", |(_, _, d, _, _)| d.iter().any(|&x| x > 0))
        .prop_map(|(pairs, counts, d, raw, canonical)| {
            let arrows: Vec<(usize, usize)> = pairs
                .iter()
                .zip(&counts)
                .flat_map(|(&p, &c)| std::iter::repeat_n(p, c))
                .collect();
            let quiver = Quiver::new(d.len(), &arrows).unwrap();
            let d = DimensionVector::new(d);
            let theta = if canonical {
                canonical_stability(&quiver, &d).unwrap()
            } else {
                let raw = StabilityParameter::new(raw);
                let total = d.total() as i64;
                let shift = raw.apply(&d);
                StabilityParameter::new(raw.entries().iter().map(|t| t * total - shift).collect())
            };
            Instance { quiver, d, theta }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn stratum_weight_invariants(inst in instance(3)) {
        let Instance { quiver, d, theta } = inst;
        let types = enumerate_hn_types(&quiver, &d, &theta).unwrap();
        prop_assert!(!types.is_empty());
        let dense = types.iter().any(|t| t.is_dense());
        prop_assert_eq!(dense, has_semistable(&quiver, &d, &theta).unwrap());
        for t in &types {
            let report = stratum_report(&quiver, &theta, t);
            prop_assert_eq!(&report.eta, &(&report.weight_omega_r - &report.weight_omega_s));
            prop_assert!(report.one_ps.k.windows(2).all(|w| w[0] > w[1]));
            prop_assert!(report.one_ps.weighted_total(t).is_zero());
            prop_assert!(report.codim >= 0);
            if dense {
                // unstable strata are then proper closed subsets
                prop_assert_eq!(report.codim == 0, t.is_dense());
            }
            if !t.is_dense() {
                prop_assert_eq!(report.inequality_holds, report.max_bundle_weight < report.eta);
                let mut max = None::<BigInt>;
                for i in 1..=d.len() {
                    for j in 1..=d.len() {
                        let w = bundle_weights(t, &report.one_ps, i, j).unwrap();
                        if let Some(m) = w.max() {
                            max = Some(max.map_or(m.clone(), |x| x.max(m.clone())));
                        }
                    }
                }
                prop_assert_eq!(max.unwrap(), report.max_bundle_weight.clone());
            }
        }
    }

    #[test]
    fn strong_ample_stability_implies_everything(inst in instance(3)) {
        let Instance { quiver, d, theta } = inst;
        prop_assume!(has_semistable(&quiver, &d, &theta).unwrap());
        let v = verdict(&quiver, &d, &theta).unwrap();
        if v.strongly_amply_stable {
            prop_assert!(v.amply_stable);
            prop_assert!(v.all_strata_inequality);
            for t in enumerate_hn_types(&quiver, &d, &theta).unwrap() {
                prop_assert!(filtration_cut_terms(&quiver, &t).iter().all(|&n| n >= 2));
            }
        }
        prop_assert_eq!(v.vanishing_certified, v.coprime && v.all_strata_inequality);
        prop_assert_eq!(v.rigidity_certified, v.vanishing_certified && v.acyclic);
    }

    #[test]
    fn verdict_is_scale_invariant(inst in instance(3), n in 2i64..=3) {
        let Instance { quiver, d, theta } = inst;
        prop_assume!(has_semistable(&quiver, &d, &theta).unwrap());
        prop_assert_eq!(
            enumerate_hn_types(&quiver, &d, &theta).unwrap(),
            enumerate_hn_types(&quiver, &d, &theta.scaled(n)).unwrap()
        );
        prop_assert_eq!(
            verdict(&quiver, &d, &theta).unwrap(),
            verdict(&quiver, &d, &theta.scaled(n)).unwrap()
        );
    }

    #[test]
    fn strong_failure_witness_is_sound(inst in instance(4)) {
        let Instance { quiver, d, theta } = inst;
        let (ok, witness) = is_strongly_amply_stable(&quiver, &d, &theta).unwrap();
        prop_assert_eq!(ok, witness.is_none());
        if let Some(e) = witness {
            let rest = &d - &e;
            prop_assert!(slope(&theta, &e).unwrap() > slope(&theta, &rest).unwrap());
            prop_assert!(theta.apply(&e) > 0);
            prop_assert!(euler_pairing(&quiver, &e, &rest).unwrap() >= -1);
        }
    }
}
