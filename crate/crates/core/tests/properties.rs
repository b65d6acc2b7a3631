use bifree::bichromatic::{is_bnc, ChiMap, Side};
use bifree::cumulants::{free_cumulants_from_moments, MomentSeq};
use bifree::meanders::{loop_count, loop_count_by_tracing, MeandricSystem};
use bifree::partitions::{enumerate_pair_noncrossing, is_refinement};
use bifree::rational::{pow, ratio, Rational};
use bifree::tensor_clt::{exact_moment_sn, moment_profile, TensorCltInput};
use bifree::SetPartition;
use proptest::prelude::*;

fn partition() -> impl Strategy<Value = SetPartition> {
    prop::collection::vec(0usize..4, 0..=9).prop_map(|labels| SetPartition::from_labels(&labels))
}

fn chi(n: usize) -> impl Strategy<Value = ChiMap> {
    prop::collection::vec(any::<bool>(), n)
        .prop_map(|bits| ChiMap::new(bits.into_iter().map(|b| if b { Side::Right } else { Side::Left }).collect()))
}

fn crosses_brute_force(p: &SetPartition) -> bool {
    let labels = p.labels();
    let n = labels.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    if labels[a] == labels[c] && labels[b] == labels[d] && labels[a] != labels[b] {
                        return true;
                    }
                }
            }
        }
    }
    false
}

fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(p, q)| ratio(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_form_round_trips(p in partition()) {
        let back: SetPartition = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn canonical_form(p in partition()) {
        for b in p.blocks() {
            prop_assert!(b.windows(2).all(|w| w[0] < w[1]));
        }
        prop_assert!(p.blocks().windows(2).all(|w| w[0][0] < w[1][0]));
        prop_assert_eq!(p.block_sizes().iter().sum::<usize>(), p.n());
    }

    #[test]
    fn noncrossing_matches_definition(p in partition()) {
        prop_assert_eq!(p.is_noncrossing(), !crosses_brute_force(&p));
    }

    #[test]
    fn refinement_is_a_partial_order(labels in prop::collection::vec(0usize..3, 1..=7)) {
        let p = SetPartition::from_labels(&labels);
        let top = SetPartition::full(p.n());
        prop_assert!(is_refinement(&p, &p).unwrap());
        prop_assert!(is_refinement(&SetPartition::singletons(p.n()), &p).unwrap());
        prop_assert!(is_refinement(&p, &top).unwrap());
        prop_assert_eq!(is_refinement(&top, &p).unwrap(), p == top);
    }

    #[test]
    fn bnc_is_pushed_forward_nc(p in partition(), seed in any::<u64>()) {
        let n = p.n();
        let bits: Vec<Side> = (0..n).map(|i| if seed >> (i % 64) & 1 == 1 { Side::Right } else { Side::Left }).collect();
        let chi = ChiMap::new(bits);
        prop_assert_eq!(chi.push_forward(&chi.pull_back(&p)), p.clone());
        prop_assert_eq!(is_bnc(&p, &chi).unwrap(), chi.pull_back(&p).is_noncrossing());
    }

    #[test]
    fn all_left_is_plain_nc(p in partition()) {
        let chi = ChiMap::new(vec![Side::Left; p.n()]);
        prop_assert_eq!(is_bnc(&p, &chi).unwrap(), p.is_noncrossing());
    }

    #[test]
    fn chi_permutation_is_bijective(c in (0usize..10).prop_flat_map(chi)) {
        let mut seen: Vec<usize> = c.permutation().to_vec();
        seen.sort_unstable();
        prop_assert_eq!(seen, (1..=c.n()).collect::<Vec<_>>());
        for k in 1..=c.n() {
            prop_assert_eq!(c.s_inv(c.s(k)), k);
        }
    }

    #[test]
    fn meander_loops_agree(m in 1usize..=5, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let nc2 = enumerate_pair_noncrossing(2 * m);
        let (t, b) = (i.get(&nc2).clone(), j.get(&nc2).clone());
        let s = MeandricSystem::new(t.clone(), b.clone()).unwrap();
        let swapped = MeandricSystem::new(b, t).unwrap();
        prop_assert_eq!(loop_count(&s), loop_count_by_tracing(&s));
        prop_assert_eq!(loop_count(&s), loop_count(&swapped));
        prop_assert!((1..=m).contains(&loop_count(&s)));
    }

    #[test]
    fn cumulants_scale_homogeneously(values in prop::collection::vec(rational(), 1..=7), t in rational()) {
        let ms = MomentSeq::new(values.clone());
        let scaled = MomentSeq::new(values.iter().enumerate().map(|(k, v)| v * pow(&t, k + 1)).collect());
        let k = free_cumulants_from_moments(&ms).unwrap();
        let ks = free_cumulants_from_moments(&scaled).unwrap();
        for (order, (a, b)) in k.values().iter().zip(ks.values()).enumerate() {
            prop_assert_eq!(a * pow(&t, order + 1), b.clone());
        }
    }

    #[test]
    fn second_moment_is_normalized(lambda in rational(), sigma2 in (1i64..=9, 1i64..=4), third in rational(), fourth in rational(), n in 1u64..40) {
        let sigma2 = ratio(sigma2.0, sigma2.1);
        let m2 = &sigma2 + &lambda * &lambda;
        let ms = MomentSeq::new(vec![lambda, m2, third, fourth]);
        let input = TensorCltInput::symmetric(ms).unwrap();
        prop_assert_eq!(exact_moment_sn(2, n, &input).unwrap().rational(), Some(ratio(1, 1)));
        prop_assert_eq!(exact_moment_sn(1, n, &input).unwrap().rational(), Some(ratio(0, 1)));
    }

    #[test]
    fn legs_are_interchangeable(lambda in rational(), a3 in rational(), b3 in rational(), a4 in rational(), b4 in rational()) {
        let m2 = ratio(1, 1) + &lambda * &lambda;
        let a = MomentSeq::new(vec![lambda.clone(), m2.clone(), a3, a4]);
        let b = MomentSeq::new(vec![lambda, m2, b3, b4]);
        let ab = TensorCltInput::new(a.clone(), b.clone()).unwrap();
        let ba = TensorCltInput::new(b, a).unwrap();
        for m in 1..=4 {
            prop_assert_eq!(moment_profile(m, &ab).unwrap(), moment_profile(m, &ba).unwrap());
        }
    }
}
