mod support;

use causalnet_core::semantics::family_function;
use causalnet_core::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::{chains, joint, random};

fn exactly(count: usize, n: usize) -> FunctionTable {
    FunctionTable::from_fn(2, n, |a| usize::from(a.iter().sum::<usize>() == count))
}

#[test]
fn exactly_two_of_n_never_decomposes() {
    for n in [3, 4] {
        let f = exactly(2, n);
        assert_eq!(classify(&f, 0).unwrap(), InteractionClass::CausalInputsOnly);
        for sigma in chains::orderings(n) {
            assert!(decompose_for_ordering(&f, &sigma, 0).is_err());
            assert!(!chains::decomposes(&f, &sigma, 0));
        }
    }
}

#[test]
fn named_combiners_are_class_five() {
    let cases = [
        (BinaryTable::or(), 2),
        (BinaryTable::max(3), 3),
        (BinaryTable::max(4), 3),
        (BinaryTable::saturating_sum(3), 3),
        (BinaryTable::saturating_sum(4), 2),
        (BinaryTable::xor(), 3),
    ];
    for (op, n) in cases {
        let f = FunctionTable::from_fold(&op, n, 0);
        match classify(&f, 0).unwrap() {
            InteractionClass::FullyDecomposableEqual { combiner, sampled } => {
                assert_eq!(combiner, op);
                assert!(!sampled);
            }
            other => panic!("{op:?}: {other:?}"),
        }
    }
}

#[test]
fn noisy_or_closed_form() {
    let qs = [0.8, 0.6, 0.3];
    let net = generators::noisy_or(&qs, Some(vec![0.95, 0.05]));
    let Family::Ci(ci) = &net.families[3] else {
        panic!()
    };
    let cpd = expand_to_cpd(&net, ci).unwrap();
    for combo in 0..8usize {
        let on: Vec<bool> = (0..3).map(|i| combo >> (2 - i) & 1 == 1).collect();
        let off: f64 = 0.95
            * qs.iter()
                .zip(&on)
                .map(|(q, &c)| if c { 1.0 - q } else { 1.0 })
                .product::<f64>();
        let row = cpd.row(combo, 2);
        assert!((row[0] - off).abs() < 1e-12);
        assert!((row[1] - (1.0 - off)).abs() < 1e-12);
    }
}

#[test]
fn noisy_max_closed_form() {
    // p(e <= s | causes) is the product of each summary's cumulative mass.
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let net = generators::bn2(4, 5);
    for family in &net.families {
        let Family::Ci(ci) = family else { continue };
        let cpd = expand_to_cpd(&net, ci).unwrap();
        let combo: usize = rng.random_range(0..256);
        let states: Vec<usize> = (0..4).map(|i| combo >> (2 * (3 - i)) & 3).collect();
        let row = cpd.row(combo, 4);
        let mut previous = 0.0;
        for (s, &mass) in row.iter().enumerate() {
            let cdf: f64 = ci
                .links
                .iter()
                .zip(&states)
                .map(|(l, &c)| l.transition[c][..=s].iter().sum::<f64>())
                .product();
            assert!((mass - (cdf - previous)).abs() < 1e-12);
            previous = cdf;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn expansion_matches_enumeration(seed in any::<u64>(), leak in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let net = random::class5_network(&mut rng, 4, 4, leak, false);
        let Family::Ci(ci) = net.families.last().unwrap() else { unreachable!() };
        let cpd = expand_to_cpd(&net, ci).unwrap();
        let cards: Vec<usize> = ci.causes().map(|c| net.cardinality(c)).collect();
        let k = net.cardinality(ci.effect);
        let mut states = vec![0; cards.len()];
        for combo in 0..cards.iter().product::<usize>() {
            let mut rest = combo;
            for (s, &c) in states.iter_mut().zip(&cards).rev() {
                *s = rest % c;
                rest /= c;
            }
            let expected = joint::ci_row(&net, ci, &states);
            for (a, b) in cpd.row(combo, k).iter().zip(&expected) {
                prop_assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn class5_expansion_ignores_link_order(seed in any::<u64>(), leak in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let net = random::class5_network(&mut rng, 4, 3, leak, false);
        let mut shuffled = net.clone();
        let Some(Family::Ci(ci)) = shuffled.families.last_mut() else { unreachable!() };
        ci.links.reverse();
        let effect = ci.effect;
        prop_assert!(validate(&shuffled).is_ok());
        let a = posterior(&net, &Evidence::new(), effect).unwrap();
        let b = posterior(&shuffled, &Evidence::new(), effect).unwrap();
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn validate_verdict_ignores_link_order(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut net = random::class5_network(&mut rng, 4, 3, false, false);
        if rng.random_bool(0.5) {
            // Break a distinguished row.
            if let Some(Family::Ci(ci)) = net.families.last_mut() {
                let d = ci.links[0].distinguished;
                ci.links[0].transition[d].reverse();
            }
        }
        let before = validate(&net).is_ok();
        if let Some(Family::Ci(ci)) = net.families.last_mut() {
            ci.links.rotate_left(1);
        }
        prop_assert_eq!(before, validate(&net).is_ok());
    }

    #[test]
    fn accepted_decompositions_rebuild_the_function(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (f, e0) = random::function_table(&mut rng, 4, 3);
        for sigma in chains::orderings(f.arity()) {
            if let Ok(d) = decompose_for_ordering(&f, &sigma, e0) {
                let mut args = vec![0; f.arity()];
                for code in 0..f.values().len() {
                    let mut rest = code;
                    for a in args.iter_mut().rev() {
                        *a = rest % f.states();
                        rest /= f.states();
                    }
                    prop_assert_eq!(d.evaluate(&args), Some(f.get(&args)));
                }
            }
        }
    }

    #[test]
    fn decomposition_agrees_with_chain_search(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (f, e0) = random::function_table(&mut rng, 3, 3);
        for sigma in chains::orderings(f.arity()) {
            prop_assert_eq!(decompose_for_ordering(&f, &sigma, e0).is_ok(), chains::decomposes(&f, &sigma, e0));
        }
    }

    #[test]
    fn class_agrees_with_chain_search(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (f, e0) = random::function_table(&mut rng, 3, 3);
        let class = classify(&f, e0).unwrap();
        prop_assert_eq!(class.number(), chains::class_of(&f, e0));
        if let InteractionClass::SinglyDecomposable { witness } = &class {
            prop_assert_eq!(Some(witness.ordering.clone()), chains::first_witness(&f, e0));
        }
    }

    #[test]
    fn named_family_functions_are_class_five(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let net = random::class5_network(&mut rng, 4, 4, false, false);
        let Family::Ci(ci) = net.families.last().unwrap() else { unreachable!() };
        let f = family_function(&net, ci).unwrap();
        prop_assert_eq!(classify(&f, ci.baseline).unwrap().number(), 5);
    }
}

#[test]
fn exactly_one_of_n_verdict() {
    // Binary intermediates cannot tell "one seen" from "two or more seen".
    for n in [2, 3, 4] {
        let f = exactly(1, n);
        let expected = if n == 2 { 5 } else { 2 };
        assert_eq!(classify(&f, 0).unwrap().number(), expected, "n={n}");
        assert_eq!(chains::class_of(&f, 0), expected, "n={n}");
    }
}
