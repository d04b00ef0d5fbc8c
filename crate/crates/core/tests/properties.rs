use belief_calculus::betting::check;
use belief_calculus::sampling::{generic_frame, random_mass, random_mass_on, random_probability};
use belief_calculus::{
    check_independence, condition_mass, conditional_belief, dempster_combine, independent_product,
    lift_to_powerset, load_model, marginal, ratio, save_model, Axis, BetFamily, BettingMode, CredalSet, Error,
    MassFunction, Model, ProductFrame, Rational, Scalar, SubsetMask, Verdict,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn any_set(rng: &mut ChaCha8Rng, size: usize) -> SubsetMask {
    SubsetMask::new(rng.random_range(0..1u32 << size), size).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conditioning_twice_is_conditioning_on_the_intersection(seed in any::<u64>(), size in 1usize..=4) {
        let mut rng = rng(seed);
        let m = random_mass(&mut rng, size);
        let (h1, h2) = (any_set(&mut rng, size), any_set(&mut rng, size));
        let twice = condition_mass(&m, h1).and_then(|c| condition_mass(&c, h2));
        let once = condition_mass(&m, h1 & h2);
        match (twice, once) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
            (Err(_), Err(_)) => {}
            // defined on the intersection does not make each step defined, and vice versa
            (Ok(_), Err(e)) | (Err(e), Ok(_)) => prop_assert!(matches!(e, Error::ConditioningUndefined(_))),
        }
    }

    #[test]
    fn conditioned_mass_lives_inside_the_hypothesis(seed in any::<u64>(), size in 1usize..=5) {
        let mut rng = rng(seed);
        let m = random_mass(&mut rng, size);
        let h = any_set(&mut rng, size);
        if let Ok(c) = condition_mass(&m, h) {
            prop_assert!(c.focal().all(|(set, _)| set.is_subset_of(h).unwrap()));
            prop_assert_eq!(c.belief(h).unwrap(), ratio(1, 1));
            let a = any_set(&mut rng, size);
            prop_assert_eq!(c.belief(a).unwrap(), conditional_belief(&m, h, a).unwrap());
        }
    }

    #[test]
    fn lifted_distribution_reproduces_beliefs(seed in any::<u64>(), size in 1usize..=4) {
        let mut rng = rng(seed);
        let m = random_mass(&mut rng, size);
        let lifted = lift_to_powerset(&m);
        for a in m.frame().subsets() {
            prop_assert_eq!(lifted.belief(a).unwrap(), m.belief(a).unwrap());
        }
        let (h, a) = (any_set(&mut rng, size), any_set(&mut rng, size));
        prop_assert_eq!(lifted.conditional_belief(h, a).ok(), conditional_belief(&m, h, a).ok());
    }

    #[test]
    fn belief_below_plausibility(seed in any::<u64>(), size in 1usize..=5) {
        let mut rng = rng(seed);
        let m = random_mass(&mut rng, size);
        let (a, b) = (any_set(&mut rng, size), any_set(&mut rng, size));
        prop_assert!(m.belief(a).unwrap() <= m.plausibility(a).unwrap());
        // 2-monotone
        prop_assert!(m.belief(a | b).unwrap() + m.belief(a & b).unwrap() >= m.belief(a).unwrap() + m.belief(b).unwrap());
    }

    #[test]
    fn float_mode_tracks_rational_mode(seed in any::<u64>(), size in 1usize..=4) {
        let mut rng = rng(seed);
        let m = random_mass(&mut rng, size);
        let f = m.to_float();
        let (h, a) = (any_set(&mut rng, size), any_set(&mut rng, size));
        prop_assert!((f.belief(a).unwrap() - m.belief(a).unwrap().to_f64()).abs() < 1e-9);
        if let Ok(exact) = conditional_belief(&m, h, a) {
            prop_assert!((conditional_belief(&f, h, a).unwrap() - exact.to_f64()).abs() < 1e-9);
        }
    }

    #[test]
    fn independent_products_factor(seed in any::<u64>(), l in 1usize..=3, r in 1usize..=3) {
        let mut rng = rng(seed);
        let pf = ProductFrame::new(generic_frame(l), generic_frame(r)).unwrap();
        let left = random_mass_on(&mut rng, pf.left());
        let right = random_mass_on(&mut rng, pf.right());
        let m = independent_product(&pf, &left, &right).unwrap();
        prop_assert_eq!(&marginal(&pf, &m, Axis::Left).unwrap(), &left);
        prop_assert_eq!(&marginal(&pf, &m, Axis::Right).unwrap(), &right);
        let (a, b) = (any_set(&mut rng, l), any_set(&mut rng, r));
        prop_assert_eq!(m.belief(pf.rectangle(a, b)).unwrap(), left.belief(a).unwrap() * right.belief(b).unwrap());
        let report = check_independence(&pf, &m).unwrap();
        prop_assert!(report.mass_factorizes && report.cond_invariance && report.product_form);
    }

    #[test]
    fn dempster_rule_laws(seed in any::<u64>(), size in 1usize..=4) {
        let mut rng = rng(seed);
        let m1 = random_mass(&mut rng, size);
        let m2 = random_mass(&mut rng, size);
        prop_assert_eq!(dempster_combine(&m1, &m2).ok(), dempster_combine(&m2, &m1).ok());
        prop_assert_eq!(&dempster_combine(&m1, &MassFunction::vacuous(m1.frame().clone())).unwrap(), &m1);
        // combining with a categorical mass on H is conditioning on H
        let h = any_set(&mut rng, size);
        if !h.is_empty() {
            let categorical = MassFunction::new(m1.frame().clone(), [(h, ratio(1, 1))]).unwrap();
            prop_assert_eq!(dempster_combine(&m1, &categorical).ok(), condition_mass(&m1, h).ok());
        }
    }

    #[test]
    fn credal_vertices_dominate_belief(seed in any::<u64>(), size in 1usize..=4) {
        let mut rng = rng(seed);
        let m = random_mass(&mut rng, size);
        let credal = CredalSet::new(&m).unwrap();
        for a in m.frame().subsets() {
            let belief = m.belief(a).unwrap();
            prop_assert!(credal.vertices().iter().all(|p| p.probability(a) >= belief));
            prop_assert_eq!(credal.upper_probability(a).unwrap(), m.plausibility(a).unwrap());
        }
    }

    #[test]
    fn random_families_respect_coherence(seed in any::<u64>(), size in 1usize..=3) {
        let mut rng = rng(seed);
        let frame = generic_frame(size);
        let beliefs = random_mass_on(&mut rng, &frame).belief_table().unwrap();
        let measure = random_probability(&mut rng, &frame).measure().unwrap();
        for _ in 0..20 {
            let buys: Vec<SubsetMask> = (0..rng.random_range(0..=3)).map(|_| any_set(&mut rng, size)).collect();
            let sells: Vec<SubsetMask> = (0..rng.random_range(0..=3)).map(|_| any_set(&mut rng, size)).collect();
            let fam = BetFamily::new(buys, sells);
            prop_assert_ne!(check(&beliefs, &fam, BettingMode::B2Star).unwrap(), Verdict::Violation);
            prop_assert_ne!(check(&measure, &fam, BettingMode::P2).unwrap(), Verdict::Violation);
        }
    }

    #[test]
    fn saved_models_load_back(seed in any::<u64>(), size in 1usize..=5) {
        let mut rng = rng(seed);
        let m: MassFunction<Rational> = random_mass(&mut rng, size);
        let text = save_model(&Model::from_mass(m.clone()).with_name("random"));
        let back = load_model(&text).unwrap();
        prop_assert_eq!(back.mass().unwrap(), &m);
        prop_assert_eq!(save_model(&back), text);
    }
}
