//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use belief_calculus::betting::multisets;
use belief_calculus::combination::conflict;
use belief_calculus::expectation::attach_exact;
use belief_calculus::sampling::{generic_frame, random_mass, random_mass_among, random_mass_on, random_probability};
use belief_calculus::scenarios::{
    biased_coin, croupier, family, forensic_events, forensic_ignorant, forensic_uniform,
    ignorant_prices, lln_configurations, paradox, remark_f, uncertain_coin, DEFAULT_SEED,
};
use belief_calculus::{
    check_b2star, check_independence, check_p2, condition_mass, conditional_belief, dempster_combine,
    diagonal_equivalence_check, exact_lln_belief, find_violation, independent_product, ratio, run_scenario,
    simulate_lln, total_belief_check, Axis, BetFamily, BettingMode, CredalSet, Error, Frame, MassFunction,
    ProductFrame, Rational, RandomVariable, ScenarioParams, SetFunction, SubsetMask, Verdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Failures = Vec<String>;

fn r(n: i64, d: i64) -> Rational {
    ratio(n, d)
}

fn expect_eq(failures: &mut Failures, what: &str, expected: &Rational, actual: &Rational) {
    if expected != actual {
        failures.push(format!("{what}: expected {expected}, got {actual}"));
    }
}

fn expect(failures: &mut Failures, what: &str, ok: bool) {
    if !ok {
        failures.push(what.to_string());
    }
}

/// `B(A)` summed straight from the focal sets.
fn naive_belief(m: &MassFunction<Rational>, a: SubsetMask) -> Rational {
    m.focal()
        .filter(|(c, _)| c.bits() & !a.bits() == 0)
        .fold(r(0, 1), |acc, (_, w)| acc + w)
}

fn all_subsets(frame: &Frame) -> Vec<SubsetMask> {
    frame.subsets().collect()
}

// ---- criteria ------------------------------------------------------------

fn golden_exactness() -> Failures {
    let mut f = Failures::new();

    let (pf, m) = forensic_uniform(&r(1, 10)).unwrap();
    let (e, g) = forensic_events(&pf);
    expect_eq(&mut f, "forensic-uniform B_E(G)", &r(10, 11), &condition_mass(&m, e).unwrap().belief(g).unwrap());

    let (pf, m) = forensic_ignorant(&r(1, 10)).unwrap();
    let (e, g) = forensic_events(&pf);
    expect_eq(&mut f, "forensic-ignorant B_E(G)", &r(9, 10), &condition_mass(&m, e).unwrap().belief(g).unwrap());

    let coin = biased_coin();
    let combined = dempster_combine(&coin, &coin).unwrap();
    let heads = coin.frame().singleton(0);
    let tails = coin.frame().singleton(1);
    expect_eq(&mut f, "dempster-coin heads", &r(9, 13), &combined.mass(heads));
    expect_eq(&mut f, "dempster-coin tails", &r(4, 13), &combined.mass(tails));

    let fam = family();
    let frame = fam.frame().clone();
    let father = frame.subset(["Father"]).unwrap();
    let not_mother = frame.subset(["Father", "Son"]).unwrap();
    let credal = CredalSet::new(&fam).unwrap();
    expect_eq(&mut f, "fh-vs-dempster Dempster", &r(9, 10), &conditional_belief(&fam, not_mother, father).unwrap());
    expect_eq(&mut f, "fh-vs-dempster FH", &r(0, 1), &credal.fh_conditional_lower(father, not_mother).unwrap());

    let (pf, m) = croupier(&r(1, 2)).unwrap();
    let hh = pf.product().singleton(pf.pair_index(0, 0));
    let tt = pf.product().singleton(pf.pair_index(1, 1));
    let conditioned = condition_mass(&m, hh | tt).unwrap();
    let b_hh = conditioned.belief(hh).unwrap();
    let b_tt = conditioned.belief(tt).unwrap();
    expect_eq(&mut f, "croupier B_S(hh)", &r(5, 14), &b_hh);
    expect_eq(&mut f, "croupier B_S(hh) + B_S(tt)", &r(3, 4), &(b_hh + b_tt));
    // head probabilities range over [(1−p)/2, (1+p)/2] = [1/4, 3/4]
    let classical = |p: Rational| {
        let hh = p.clone() * p.clone();
        let tt = (r(1, 1) - p.clone()) * (r(1, 1) - p);
        hh.clone() / (hh + tt)
    };
    expect_eq(&mut f, "croupier classical lower", &r(1, 10), &classical(r(1, 4)));
    expect_eq(&mut f, "croupier classical upper", &r(9, 10), &classical(r(3, 4)));

    let (pf, m) = paradox();
    let diagonal = pf.diagonal().unwrap();
    let y0 = pf.cylinder(Axis::Right, pf.right().singleton(0));
    expect_eq(&mut f, "paradox-xy B(x=y)", &r(0, 1), &m.belief(diagonal).unwrap());
    expect_eq(&mut f, "paradox-xy B_{y=0}(x=y)", &r(1, 2), &conditional_belief(&m, y0, diagonal).unwrap());

    for name in ["forensic-uniform", "forensic-ignorant", "dempster-coin", "fh-vs-dempster", "croupier", "paradox-xy"] {
        let report = run_scenario(name, &ScenarioParams::default()).unwrap();
        for check in report.checks.iter().filter(|c| !c.passed) {
            f.push(format!("scenario {name} check '{}': expected {}, got {}", check.label, check.expected, check.actual));
        }
    }
    f
}

fn symbolic_sampling() -> Failures {
    let mut f = Failures::new();
    for p in [r(1, 10), r(1, 4), r(1, 2), r(3, 4), r(9, 10)] {
        let (pf, m) = forensic_ignorant(&p).unwrap();
        let (e, g) = forensic_events(&pf);
        let engine = condition_mass(&m, e).unwrap().belief(g).unwrap();
        expect_eq(&mut f, &format!("B_E(G) at p={p}"), &(r(1, 1) - p.clone()), &engine);

        let (pf, m) = croupier(&p).unwrap();
        let hh = pf.product().singleton(pf.pair_index(0, 0));
        let tt = pf.product().singleton(pf.pair_index(1, 1));
        let engine = condition_mass(&m, hh | tt).unwrap().belief(hh).unwrap();
        let q = r(1, 1) - p.clone();
        let formula = (r(1, 4) * q.clone() * q.clone() + p.clone() * q.clone()) / (r(1, 1) - r(1, 2) * q.clone() * q);
        expect_eq(&mut f, &format!("B_S(hh) at p={p}"), &formula, &engine);
    }
    f
}

fn transform_round_trip() -> Failures {
    let mut f = Failures::new();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..1000 {
        let size = 1 + i % 6;
        let m = random_mass(&mut rng, size);
        let table = m.belief_table().unwrap();
        for a in m.frame().subsets() {
            if *table.get(a) != naive_belief(&m, a) {
                f.push(format!("model {i}: belief table disagrees with focal sum at {}", m.frame().describe(a)));
            }
        }
        match table.mobius_inverse() {
            Ok(back) if back == m => {}
            Ok(back) => f.push(format!("model {i}: {} came back as {}", m.describe(), back.describe())),
            Err(e) => f.push(format!("model {i}: {e}")),
        }
    }
    f
}

fn conditioning_oracle() -> Failures {
    let mut f = Failures::new();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..200 {
        let m = random_mass(&mut rng, 1 + i % 4);
        let frame = m.frame().clone();
        for h in all_subsets(&frame) {
            let outside = naive_belief(&m, !h);
            let conditioned = condition_mass(&m, h);
            if outside == r(1, 1) {
                expect(&mut f, &format!("model {i}: conditioning on {} should be undefined", frame.describe(h)), conditioned.is_err());
                continue;
            }
            let conditioned = conditioned.unwrap();
            for a in all_subsets(&frame) {
                let closed = (naive_belief(&m, a | !h) - outside.clone()) / (r(1, 1) - outside.clone());
                let engine = conditioned.belief(a).unwrap();
                if engine != closed {
                    f.push(format!("model {i}: B_{}({}) = {engine}, closed form {closed}", frame.describe(h), frame.describe(a)));
                }
            }
        }
    }
    f
}

fn credal_identities() -> Failures {
    let mut f = Failures::new();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..200 {
        let m = random_mass(&mut rng, 1 + i % 4);
        let frame = m.frame().clone();
        let credal = CredalSet::new(&m).unwrap();
        for a in all_subsets(&frame) {
            let lower = credal.lower_probability(a).unwrap();
            if lower != naive_belief(&m, a) {
                f.push(format!("model {i}: lower probability of {} is {lower}", frame.describe(a)));
            }
        }
        for h in all_subsets(&frame) {
            for a in all_subsets(&frame) {
                let dempster = match conditional_belief(&m, h, a) {
                    Ok(v) => v,
                    Err(_) => continue,
                };
                let compatible = credal.compatible_conditional_lower(a, h).unwrap();
                if compatible != dempster {
                    f.push(format!("model {i}: compatible lower {compatible} vs {dempster}"));
                }
                match credal.fh_conditional_lower(a, h) {
                    Ok(fh) if fh > dempster => f.push(format!("model {i}: FH {fh} above {dempster}")),
                    Ok(_) => {}
                    Err(e) => f.push(format!("model {i}: FH undefined where conditioning is defined: {e}")),
                }
            }
        }
    }
    let fam = family();
    let frame = fam.frame().clone();
    let a = frame.subset(["Father"]).unwrap();
    let h = frame.subset(["Father", "Son"]).unwrap();
    let credal = CredalSet::new(&fam).unwrap();
    let dempster = conditional_belief(&fam, h, a).unwrap();
    let fh = credal.fh_conditional_lower(a, h).unwrap();
    expect(&mut f, &format!("family model: expected strict {dempster} > {fh}"), dempster > fh);
    f
}

fn random_product_mass(rng: &mut ChaCha8Rng, i: usize) -> (ProductFrame, MassFunction<Rational>) {
    let pf = ProductFrame::new(generic_frame(rng.random_range(1..=3)), generic_frame(rng.random_range(1..=3))).unwrap();
    let m = match i % 3 {
        0 => {
            let left = random_mass(rng, pf.left().size());
            let right = random_mass_on(rng, pf.right());
            independent_product(&pf, &left, &right).unwrap()
        }
        1 => {
            let rectangles: Vec<SubsetMask> = pf.product().subsets().filter(|s| !s.is_empty() && pf.is_rectangle(*s)).collect();
            random_mass_among(rng, pf.product(), &rectangles)
        }
        _ => random_mass_on(rng, pf.product()),
    };
    (pf, m)
}

fn independence_equivalence() -> Failures {
    let mut f = Failures::new();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut factorizing = 0;
    for i in 0..500 {
        let (pf, m) = random_product_mass(&mut rng, i);
        let report = check_independence(&pf, &m).unwrap();
        let rect = report.concentrates_on_rectangles;
        if report.mass_factorizes != (rect && report.cond_invariance)
            || report.mass_factorizes != (rect && report.product_form)
        {
            f.push(format!(
                "model {i} ({}): factorizes={} rectangles={rect} cond_invariance={} product_form={}",
                m.describe(),
                report.mass_factorizes,
                report.cond_invariance,
                report.product_form
            ));
        }
        factorizing += report.mass_factorizes as usize;
    }
    expect(&mut f, "sweep contains factorizing and non-factorizing masses", factorizing > 0 && factorizing < 500);

    let bit = Frame::new(["0", "1"]).unwrap();
    let pf = ProductFrame::square(bit).unwrap();
    let cells = |list: &[(usize, usize)]| {
        list.iter().fold(pf.product().empty(), |acc, &(i, j)| acc | pf.product().singleton(pf.pair_index(i, j)))
    };
    let first = MassFunction::new(
        pf.product().clone(),
        [
            (pf.product().full(), r(1, 4)),
            (cells(&[(0, 0)]), r(1, 2)),
            (cells(&[(0, 0), (1, 0), (0, 1)]), r(1, 4)),
        ],
    )
    .unwrap();
    let report = check_independence(&pf, &first).unwrap();
    expect(&mut f, "first counterexample: conditional invariance expected", report.cond_invariance);
    expect(&mut f, "first counterexample: mass should not factorize", !report.mass_factorizes);
    expect_eq(&mut f, "first counterexample m(X=0; Y=0)", &r(1, 2), &first.mass(cells(&[(0, 0)])));
    let split = report.left_marginal.mass(pf.left().singleton(0)) * report.right_marginal.mass(pf.right().singleton(0));
    expect_eq(&mut f, "first counterexample m1({0}) m2({0})", &r(1, 4), &split);

    let diagonal = MassFunction::new(pf.product().clone(), [(pf.diagonal().unwrap(), r(1, 1))]).unwrap();
    let report = check_independence(&pf, &diagonal).unwrap();
    expect(&mut f, "second counterexample: product form expected", report.product_form);
    expect(&mut f, "second counterexample: mass should not factorize", !report.mass_factorizes);
    expect_eq(&mut f, "second counterexample m(Ω)", &r(0, 1), &diagonal.mass(pf.product().full()));
    let split = report.left_marginal.mass(pf.left().full()) * report.right_marginal.mass(pf.right().full());
    expect_eq(&mut f, "second counterexample m1(Ω1) m2(Ω2)", &r(1, 1), &split);
    f
}

fn dempster_diagonal() -> Failures {
    let mut f = Failures::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut defined = 0;
    let mut drawn = 0;
    while defined < 100 {
        drawn += 1;
        let size = 1 + drawn % 3;
        let m1 = random_mass(&mut rng, size);
        let m2 = random_mass(&mut rng, size);
        match diagonal_equivalence_check(&m1, &m2) {
            Ok(check) => {
                defined += 1;
                if !check.equal || check.direct != check.via_diagonal {
                    f.push(format!("{} ⊕ {}: {} vs {}", m1.describe(), m2.describe(), check.direct.describe(), check.via_diagonal.describe()));
                }
            }
            Err(Error::TotalConflict) => {
                expect(&mut f, "total conflict reported with conflict below one", conflict(&m1, &m2).unwrap() == r(1, 1));
            }
            Err(e) => f.push(e.to_string()),
        }
    }
    let coin = biased_coin();
    let check = diagonal_equivalence_check(&coin, &coin).unwrap();
    expect(&mut f, "coin example differs between routes", check.equal);
    let tails = coin.frame().singleton(1);
    let combined = check.direct.mass(tails);
    expect_eq(&mut f, "combined tails", &r(4, 13), &combined);
    expect(&mut f, "4/13 < 2/5", combined < coin.mass(tails));
    f
}

fn law_of_large_numbers() -> Failures {
    let mut f = Failures::new();
    let coin = uncertain_coin(&r(1, 5)).unwrap();
    let heads = RandomVariable::indicator(coin.frame().clone(), coin.frame().singleton(0)).unwrap();
    let report = simulate_lln(&coin, &heads, 2000, 200, &r(1, 20), DEFAULT_SEED).unwrap();
    expect_eq(&mut f, "coin expectation", &r(2, 5), &report.expectation);
    expect(&mut f, &format!("empirical_lower {} < 0.99", report.empirical_lower), report.empirical_lower >= 0.99);
    expect(&mut f, &format!("empirical_upper {} > 0.01", report.empirical_upper), report.empirical_upper <= 0.01);

    let configs = lln_configurations().unwrap();
    expect(&mut f, "ten registry configurations", configs.len() == 10);
    for c in &configs {
        let mut report = simulate_lln(&c.mass, &c.variable, c.n, c.trials, &c.epsilon, c.seed).unwrap();
        attach_exact(&mut report, &c.mass, &c.variable).unwrap();
        if report.agrees_with_exact() != Some(true) {
            f.push(format!(
                "{}: empirical ({}, {}) vs exact ({}, {})",
                c.name,
                report.empirical_lower,
                report.empirical_upper,
                report.exact_lower.unwrap(),
                report.exact_upper.unwrap()
            ));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut models: Vec<(MassFunction<Rational>, RandomVariable<Rational>)> =
        configs.into_iter().filter(|c| c.mass.frame().size() <= 3).map(|c| (c.mass, c.variable)).collect();
    for i in 0..20 {
        let size = 1 + i % 3;
        let m = random_mass(&mut rng, size);
        let values = (0..size).map(|_| r(rng.random_range(-3..=3), 2)).collect();
        let x = RandomVariable::new(m.frame().clone(), values).unwrap();
        models.push((m, x));
    }
    for (m, x) in &models {
        let pf = ProductFrame::square(m.frame().clone()).unwrap();
        // dense table of the product mass, built cell by cell
        let square = independent_product(&pf, m, m).unwrap();
        for alpha in [r(-1, 1), r(0, 1), r(1, 4), r(2, 5), r(1, 2), r(1, 1), r(3, 2)] {
            let event = pf.product().subsets().filter(|s| s.cardinality() == 1).fold(pf.product().empty(), |acc, cell| {
                let (i, j) = pf.coordinates(cell.elements().next().unwrap());
                if (x.value(i).clone() + x.value(j).clone()) / r(2, 1) >= alpha { acc | cell } else { acc }
            });
            let oracle = square
                .focal()
                .filter(|(c, _)| c.bits() & !event.bits() == 0)
                .fold(r(0, 1), |acc, (_, w)| acc + w);
            let exact = exact_lln_belief(m, x, 2, &alpha).unwrap();
            if exact != oracle {
                f.push(format!("{} at α={alpha}: exact {exact}, product oracle {oracle}", m.describe()));
            }
        }
    }
    f
}

fn exhaustive_families(size: usize) -> Vec<BetFamily> {
    let count = 1u32 << size;
    let mut out = Vec::new();
    for buys in 0..=2 {
        for sells in 0..=2 {
            for b in multisets(count, buys) {
                for s in multisets(count, sells) {
                    let mask = |bits: &u32| SubsetMask::new(*bits, size).unwrap();
                    out.push(BetFamily::new(b.iter().map(mask).collect(), s.iter().map(mask).collect()));
                }
            }
        }
    }
    out
}

fn betting_soundness() -> Failures {
    let mut f = Failures::new();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for size in 1..=3 {
        let families = exhaustive_families(size);
        let frame = generic_frame(size);
        for _ in 0..25 {
            let beliefs: SetFunction<Rational> = random_mass_on(&mut rng, &frame).belief_table().unwrap();
            let measure = random_probability(&mut rng, &frame).measure().unwrap();
            for fam in &families {
                if check_b2star(&beliefs, fam).unwrap() == Verdict::Violation {
                    f.push(format!("belief table violates B2* with {}", fam.describe(&frame)));
                }
                if check_p2(&measure, fam).unwrap() == Verdict::Violation {
                    f.push(format!("measure violates P2 with {}", fam.describe(&frame)));
                }
            }
        }
    }
    f.truncate(10);
    let ignorant = ignorant_prices(2);
    expect(&mut f, "ignorant prices: no P2 violation found", find_violation(&ignorant, 3, BettingMode::P2).unwrap().is_some());
    expect(&mut f, "ignorant prices satisfy B2*", find_violation(&ignorant, 3, BettingMode::B2Star).unwrap().is_none());
    let remark = remark_f();
    expect(&mut f, "remark f: no B2* violation found", find_violation(&remark, 3, BettingMode::B2Star).unwrap().is_some());
    f
}

fn total_belief_law() -> Failures {
    let mut f = Failures::new();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut accepted = 0;
    let mut attempts = 0;
    while accepted < 100 && attempts < 100_000 {
        attempts += 1;
        let size = rng.random_range(2..=4);
        let frame = generic_frame(size);
        let labels: Vec<usize> = (0..size).map(|_| rng.random_range(0..size)).collect();
        let parts: Vec<SubsetMask> = (0..size)
            .map(|p| labels.iter().enumerate().filter(|(_, l)| **l == p).fold(0u32, |acc, (i, _)| acc | 1 << i))
            .filter(|bits| *bits != 0)
            .map(|bits| frame.mask(bits).unwrap())
            .collect();
        if parts.len() < 2 {
            continue;
        }
        let inside: Vec<SubsetMask> = frame
            .subsets()
            .filter(|s| !s.is_empty() && parts.iter().any(|p| s.bits() & !p.bits() == 0))
            .collect();
        let m = random_mass_among(&mut rng, &frame, &inside);
        let report = total_belief_check(&m, &parts).unwrap();
        if !report.premise_holds {
            continue;
        }
        accepted += 1;
        expect(&mut f, &format!("decomposition fails for {}", m.describe()), report.decomposition_holds);
        for a in frame.subsets() {
            let decomposed = parts.iter().fold(r(0, 1), |acc, p| {
                acc + naive_belief(&m, *p) * conditional_belief(&m, *p, a).unwrap()
            });
            if decomposed != naive_belief(&m, a) {
                f.push(format!("{}: decomposition of {} gives {decomposed}", m.describe(), frame.describe(a)));
            }
        }
    }
    expect(&mut f, "fewer than 100 premise-satisfying models", accepted == 100);

    let (pf, m) = paradox();
    let y0 = pf.cylinder(Axis::Right, pf.right().singleton(0));
    let y1 = pf.cylinder(Axis::Right, pf.right().singleton(1));
    let x0 = pf.cylinder(Axis::Left, pf.left().singleton(0));
    let report = total_belief_check(&m, &[y0, y1]).unwrap();
    expect(&mut f, "paradox premise should fail", !report.premise_holds);
    match report.counterexample {
        Some(c) => {
            expect(&mut f, "paradox counterexample is not A = {x=0}", c.event == x0);
            expect_eq(&mut f, "paradox B(x=0)", &r(1, 2), &c.belief);
            expect_eq(&mut f, "paradox decomposed B(x=0)", &r(0, 1), &c.decomposed);
        }
        None => f.push("paradox: no counterexample".into()),
    }
    f
}

// ---- harness -------------------------------------------------------------

struct Criterion {
    number: u32,
    title: &'static str,
    limit: Option<Duration>,
    run: fn() -> Failures,
}

const CRITERIA: &[Criterion] = &[
    Criterion { number: 1, title: "golden exactness", limit: Some(Duration::from_secs(1)), run: golden_exactness },
    Criterion { number: 2, title: "symbolic formula sampling", limit: None, run: symbolic_sampling },
    Criterion { number: 3, title: "transform round trip", limit: Some(Duration::from_secs(5)), run: transform_round_trip },
    Criterion { number: 4, title: "conditioning oracle", limit: None, run: conditioning_oracle },
    Criterion { number: 5, title: "credal identities", limit: None, run: credal_identities },
    Criterion { number: 6, title: "independence equivalence", limit: None, run: independence_equivalence },
    Criterion { number: 7, title: "dempster diagonal equivalence", limit: None, run: dempster_diagonal },
    Criterion { number: 8, title: "law of large numbers", limit: Some(Duration::from_secs(30)), run: law_of_large_numbers },
    Criterion { number: 9, title: "betting soundness", limit: None, run: betting_soundness },
    Criterion { number: 10, title: "total belief law", limit: None, run: total_belief_law },
];

fn main() {
    let mut failed = 0;
    for c in CRITERIA {
        let started = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(c.run));
        let elapsed = started.elapsed();
        let mut failures = outcome.unwrap_or_else(|_| vec!["panicked".into()]);
        if let Some(limit) = c.limit {
            if elapsed > limit {
                failures.push(format!("took {elapsed:.2?}, limit {limit:?}"));
            }
        }
        let status = if failures.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {status} {} ({elapsed:.2?})", c.number, c.title);
        for line in &failures {
            println!("    {line}");
        }
        failed += !failures.is_empty() as usize;
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
