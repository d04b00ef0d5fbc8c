//! Named worked examples with their expected values.
//!
//! Each scenario builds its models, runs the engine and compares against
//! expected values computed independently (closed forms, hand-evaluated
//! constants or a second code path). Exact scenarios compare rationals for
//! equality; `lln-coin` is statistical.

use serde::Serialize;

use crate::betting::{find_violation, BettingMode};
use crate::combination::{dempster_combine, diagonal_equivalence_check};
use crate::conditioning::{condition_mass, conditional_belief, total_belief_check};
use crate::credal::CredalSet;
use crate::error::{Error, Result};
use crate::expectation::{attach_exact, simulate_lln, RandomVariable};
use crate::frame::{Frame, SubsetMask};
use crate::mass::{MassFunction, ProbabilityDistribution, SetFunction};
use crate::par::{self, Execution};
use crate::products::{check_independence, independent_product, marginal, Axis, ProductFrame};
use crate::scalar::{format_rational, ratio, Rational, Scalar as _};

pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tolerance {
    Exact,
    Statistical,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ScenarioParams {
    /// Overrides the scenario's probability parameter.
    pub p: Option<Rational>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub label: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
    pub note: String,
}

impl Check {
    pub fn exact(label: impl Into<String>, expected: &Rational, actual: &Rational, note: impl Into<String>) -> Self {
        Check {
            label: label.into(),
            expected: format_rational(expected),
            actual: format_rational(actual),
            passed: expected == actual,
            note: note.into(),
        }
    }

    pub fn holds(label: impl Into<String>, passed: bool, note: impl Into<String>) -> Self {
        Check {
            label: label.into(),
            expected: "true".into(),
            actual: passed.to_string(),
            passed,
            note: note.into(),
        }
    }

    fn bound(label: impl Into<String>, expected: String, actual: f64, passed: bool, note: impl Into<String>) -> Self {
        Check {
            label: label.into(),
            expected,
            actual: format!("{actual}"),
            passed,
            note: note.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScenarioReport {
    pub name: String,
    pub tolerance: Tolerance,
    /// Parameter value used, when the scenario has one.
    pub p: Option<String>,
    pub checks: Vec<Check>,
}

impl ScenarioReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, label: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.label == label)
    }
}

pub struct Scenario {
    pub name: &'static str,
    pub summary: &'static str,
    pub tolerance: Tolerance,
    /// Default for the `p` parameter, if the scenario takes one.
    pub default_p: Option<(i64, i64)>,
    run: fn(&Rational, u64) -> Result<Vec<Check>>,
}

impl Scenario {
    pub fn run(&self, params: &ScenarioParams) -> Result<ScenarioReport> {
        let p = match (params.p.clone(), self.default_p) {
            (Some(p), Some(_)) => p,
            (None, Some((n, d))) => ratio(n, d),
            (Some(_), None) => {
                return Err(Error::InvalidArgument(format!("scenario `{}` takes no parameter p", self.name)))
            }
            (None, None) => ratio(0, 1),
        };
        if self.default_p.is_some() {
            ensure_probability(&p)?;
        }
        let checks = (self.run)(&p, params.seed.unwrap_or(DEFAULT_SEED))?;
        Ok(ScenarioReport {
            name: self.name.to_string(),
            tolerance: self.tolerance,
            p: self.default_p.map(|_| format_rational(&p)),
            checks,
        })
    }
}

pub fn registry() -> &'static [Scenario] {
    &REGISTRY
}

pub fn find_scenario(name: &str) -> Result<&'static Scenario> {
    REGISTRY
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::UnknownScenario(name.to_string()))
}

pub fn run_scenario(name: &str, params: &ScenarioParams) -> Result<ScenarioReport> {
    find_scenario(name)?.run(params)
}

/// Runs the whole registry in order. `params.p` goes only to scenarios that
/// take a parameter.
pub fn run_all(params: &ScenarioParams, exec: Execution) -> Vec<Result<ScenarioReport>> {
    par::map_slice(exec, &REGISTRY, |scenario| {
        let own = ScenarioParams {
            p: scenario.default_p.and(params.p.clone()),
            seed: params.seed,
        };
        scenario.run(&own)
    })
}

static REGISTRY: [Scenario; 13] = [
    Scenario {
        name: "island",
        summary: "vacuous belief over the inhabitants of an island",
        tolerance: Tolerance::Exact,
        default_p: None,
        run: island_checks,
    },
    Scenario {
        name: "suspect",
        summary: "evidence of weight p for innocence only",
        tolerance: Tolerance::Exact,
        default_p: Some((1, 10)),
        run: suspect_checks,
    },
    Scenario {
        name: "forensic-uniform",
        summary: "DNA match with a uniform prior on guilt",
        tolerance: Tolerance::Exact,
        default_p: Some((1, 10)),
        run: forensic_uniform_checks,
    },
    Scenario {
        name: "forensic-ignorant",
        summary: "DNA match without a prior on guilt",
        tolerance: Tolerance::Exact,
        default_p: Some((1, 10)),
        run: forensic_ignorant_checks,
    },
    Scenario {
        name: "croupier",
        summary: "two croupiers who may change a fair coin, conditioned on equal outcomes",
        tolerance: Tolerance::Exact,
        default_p: Some((1, 2)),
        run: croupier_checks,
    },
    Scenario {
        name: "dempster-coin",
        summary: "Dempster's rule on two copies of a biased coin",
        tolerance: Tolerance::Exact,
        default_p: None,
        run: dempster_coin_checks,
    },
    Scenario {
        name: "paradox-xy",
        summary: "x known to be a fair coin, y unknown, conditioned on y",
        tolerance: Tolerance::Exact,
        default_p: None,
        run: paradox_checks,
    },
    Scenario {
        name: "fh-vs-dempster",
        summary: "family example: conditional belief against the credal infimum",
        tolerance: Tolerance::Exact,
        default_p: None,
        run: fh_vs_dempster_checks,
    },
    Scenario {
        name: "independence-counterexamples",
        summary: "non-rectangular masses that satisfy one independence property only",
        tolerance: Tolerance::Exact,
        default_p: None,
        run: independence_checks,
    },
    Scenario {
        name: "remark-f",
        summary: "a superadditive set function that is not a belief function",
        tolerance: Tolerance::Exact,
        default_p: None,
        run: remark_checks,
    },
    Scenario {
        name: "ignorance-bets",
        summary: "vacuous prices under both betting characterizations",
        tolerance: Tolerance::Exact,
        default_p: None,
        run: ignorance_bets_checks,
    },
    Scenario {
        name: "coin-expectation",
        summary: "lower expectation and exact sample-mean beliefs for an uncertain coin",
        tolerance: Tolerance::Exact,
        default_p: Some((1, 5)),
        run: coin_expectation_checks,
    },
    Scenario {
        name: "lln-coin",
        summary: "simulated sample means for an uncertain coin, n = 2000",
        tolerance: Tolerance::Statistical,
        default_p: Some((1, 5)),
        run: lln_coin_checks,
    },
];

fn ensure_probability(p: &Rational) -> Result<()> {
    if *p < ratio(0, 1) || *p > ratio(1, 1) {
        return Err(Error::InvalidArgument(format!("p = {} is not in [0, 1]", format_rational(p))));
    }
    Ok(())
}

fn one() -> Rational {
    ratio(1, 1)
}

fn half() -> Rational {
    ratio(1, 2)
}

fn quarter() -> Rational {
    ratio(1, 4)
}

// ---- models --------------------------------------------------------------

/// Evidence `E` on the left axis, guilt `G` on the right.
pub fn evidence_guilt() -> ProductFrame {
    let evidence = Frame::new(["Ec", "E"]).expect("static labels");
    let guilt = Frame::new(["Gc", "G"]).expect("static labels");
    ProductFrame::new(evidence, guilt).expect("2 x 2 product")
}

fn cell(pf: &ProductFrame, left: usize, right: usize) -> SubsetMask {
    pf.product().singleton(pf.pair_index(left, right))
}

pub fn forensic_events(pf: &ProductFrame) -> (SubsetMask, SubsetMask) {
    (
        pf.cylinder(Axis::Left, pf.left().singleton(1)),
        pf.cylinder(Axis::Right, pf.right().singleton(1)),
    )
}

/// Bayesian model with prior guilt 1/2, `P(E|G) = p`, `P(E|Gᶜ) = p²`.
pub fn forensic_uniform(p: &Rational) -> Result<(ProductFrame, MassFunction<Rational>)> {
    ensure_probability(p)?;
    let pf = evidence_guilt();
    let p2 = p * p;
    let m = MassFunction::new(
        pf.product().clone(),
        [
            (cell(&pf, 1, 1), half() * p),
            (cell(&pf, 0, 1), half() * (one() - p)),
            (cell(&pf, 1, 0), half() * &p2),
            (cell(&pf, 0, 0), half() * (one() - &p2)),
        ],
    )?;
    Ok((pf, m))
}

/// `m(Eᶜ) = 1−p`, `m(E) = p²`, `m(Eᶜ ∪ G) = p(1−p)`.
pub fn forensic_ignorant(p: &Rational) -> Result<(ProductFrame, MassFunction<Rational>)> {
    ensure_probability(p)?;
    let pf = evidence_guilt();
    let (e, g) = forensic_events(&pf);
    let m = MassFunction::new(
        pf.product().clone(),
        [
            (!e, one() - p),
            (e, p * p),
            (!e | g, p * (one() - p)),
        ],
    )?;
    Ok((pf, m))
}

pub fn coin_frame() -> Frame {
    Frame::new(["h", "t"]).expect("static labels")
}

/// `m({h}) = m({t}) = (1−p)/2`, `m({h,t}) = p`.
pub fn uncertain_coin(p: &Rational) -> Result<MassFunction<Rational>> {
    ensure_probability(p)?;
    let f = coin_frame();
    let side = half() * (one() - p);
    MassFunction::new(f.clone(), [(f.singleton(0), side.clone()), (f.singleton(1), side), (f.full(), p.clone())])
}

pub fn croupier(p: &Rational) -> Result<(ProductFrame, MassFunction<Rational>)> {
    let factor = uncertain_coin(p)?;
    let pf = ProductFrame::square(coin_frame())?;
    let m = independent_product(&pf, &factor, &factor)?;
    Ok((pf, m))
}

pub fn biased_coin() -> MassFunction<Rational> {
    let f = coin_frame();
    MassFunction::new(f.clone(), [(f.singleton(0), ratio(3, 5)), (f.singleton(1), ratio(2, 5))]).expect("valid")
}

pub fn family() -> MassFunction<Rational> {
    let frame = Frame::new(["Father", "Mother", "Son"]).expect("static labels");
    MassFunction::from_labels(frame, [(vec!["Father", "Mother"], ratio(9, 10)), (vec!["Son"], ratio(1, 10))])
        .expect("valid")
}

/// `x` on the left axis, `y` on the right; `m(x=0) = m(x=1) = 1/2`.
pub fn paradox() -> (ProductFrame, MassFunction<Rational>) {
    let bit = Frame::new(["0", "1"]).expect("static labels");
    let pf = ProductFrame::square(bit).expect("2 x 2 product");
    let m = MassFunction::new(
        pf.product().clone(),
        [
            (pf.cylinder(Axis::Left, pf.left().singleton(0)), half()),
            (pf.cylinder(Axis::Left, pf.left().singleton(1)), half()),
        ],
    )
    .expect("valid");
    (pf, m)
}

pub fn island(inhabitants: usize) -> MassFunction<Rational> {
    let frame = Frame::new((1..=inhabitants).map(|i| format!("i{i}"))).expect("small island");
    MassFunction::vacuous(frame)
}

/// `f(Ω) = f({a,b}) = f({b,c}) = 1`, `f({b}) = 1/2`, else 0.
pub fn remark_f() -> SetFunction<Rational> {
    let frame = Frame::new(["a", "b", "c"]).expect("static labels");
    let f = frame.clone();
    SetFunction::from_fn(frame, move |set| {
        let ones = [f.full(), f.mask(0b011).expect("fits"), f.mask(0b110).expect("fits")];
        if ones.contains(&set) {
            one()
        } else if set == f.singleton(1) {
            half()
        } else {
            ratio(0, 1)
        }
    })
    .expect("dense table fits")
}

pub fn ignorant_prices(size: usize) -> SetFunction<Rational> {
    let frame = Frame::new((0..size).map(|i| format!("w{i}"))).expect("small frame");
    MassFunction::vacuous(frame).belief_table().expect("dense table fits")
}

/// Closed form of the croupier belief in `(h,h)` given equal outcomes.
pub fn croupier_formula(p: &Rational) -> Rational {
    let q = one() - p;
    (quarter() * &q * &q + p * &q) / (one() - half() * &q * &q)
}

/// Classical `P((h,h) | S)` for head probabilities `p1`, `p2`.
pub fn classical_croupier(p1: &Rational, p2: &Rational) -> Rational {
    let hh = p1 * p2;
    hh.clone() / (hh + (one() - p1) * (one() - p2))
}

// ---- scenario bodies -----------------------------------------------------

fn island_checks(_: &Rational, _: u64) -> Result<Vec<Check>> {
    let m = island(10);
    let f = m.frame().clone();
    let each_zero = (0..f.size()).all(|i| m.belief(f.singleton(i)).map(|b| b == ratio(0, 1)).unwrap_or(false));
    Ok(vec![
        Check::holds("B({i}) = 0 for every inhabitant", each_zero, "no evidence points at anyone"),
        Check::exact("B(Ω)", &one(), &m.belief(f.full())?, "the culprit is on the island"),
        Check::exact(
            "B(Ω \\ {i1})",
            &ratio(0, 1),
            &m.belief(!f.singleton(0))?,
            "no evidence excludes anyone either",
        ),
    ])
}

fn suspect_checks(p: &Rational, _: u64) -> Result<Vec<Check>> {
    let f = Frame::new(["guilty", "innocent"])?;
    let m = MassFunction::new(f.clone(), [(f.singleton(1), p.clone()), (f.full(), one() - p)])?;
    let guilty = m.belief(f.singleton(0))?;
    let innocent = m.belief(f.singleton(1))?;
    Ok(vec![
        Check::exact("B({guilty})", &ratio(0, 1), &guilty, "no evidence implies guilt"),
        Check::exact("B({innocent})", p, &innocent, "weight of the evidence"),
        Check::holds("B({guilty}) ≠ 1 − B({innocent})", *p != ratio(0, 1) && guilty != one() - &innocent, "non-additivity"),
    ])
}

fn forensic_uniform_checks(p: &Rational, _: u64) -> Result<Vec<Check>> {
    let (pf, m) = forensic_uniform(p)?;
    let (e, g) = forensic_events(&pf);
    let expected = one() / (one() + p);
    Ok(vec![
        Check::exact("B_E(G)", &expected, &conditional_belief(&m, e, g)?, "Bayes with prior 1/2: 1/(1+p)"),
        Check::exact("B(G)", &half(), &m.belief(g)?, "uniform prior"),
    ])
}

fn forensic_ignorant_checks(p: &Rational, _: u64) -> Result<Vec<Check>> {
    let (pf, m) = forensic_ignorant(p)?;
    let (e, g) = forensic_events(&pf);
    let conditioned = conditional_belief(&m, e, g)?;
    let via_mass = condition_mass(&m, e)?.belief(g)?;
    let uniform = one() / (one() + p);
    Ok(vec![
        Check::exact("B_E(G)", &(one() - p), &conditioned, "p(1−p) / (p(1−p) + p²) = 1−p"),
        Check::exact("B_E(G) via m_E", &conditioned, &via_mass, "closed form against conditioned mass"),
        Check::exact("B(G)", &ratio(0, 1), &m.belief(g)?, "no prior belief in guilt"),
        Check::exact("B(Gᶜ)", &ratio(0, 1), &m.belief(!g)?, "no prior belief in innocence"),
        Check::holds("B_E(G) ≤ 1/(1+p)", conditioned <= uniform, "never above the uniform-prior answer"),
    ])
}

fn croupier_checks(p: &Rational, _: u64) -> Result<Vec<Check>> {
    let (pf, m) = croupier(p)?;
    let hh = cell(&pf, 0, 0);
    let tt = cell(&pf, 1, 1);
    let same = hh | tt;
    let q = one() - p;
    let masses_match = m.focal().all(|(set, w)| {
        let expected = match set.cardinality() {
            1 => quarter() * &q * &q,
            2 => half() * p * &q,
            4 => p * p,
            _ => return false,
        };
        *w == expected
    });
    let conditioned = condition_mass(&m, same)?;
    let b_hh = conditioned.belief(hh)?;
    let b_tt = conditioned.belief(tt)?;
    let closed = conditional_belief(&m, same, hh)?;
    let left = classical_croupier(&(half() * &q), &(half() * &q));
    let right = classical_croupier(&(half() * (one() + p)), &(half() * (one() + p)));
    let denominator = one() + p * p;
    Ok(vec![
        Check::holds("product masses", masses_match, "(1−p)²/4 on cells, p(1−p)/2 on lines, p² on Ω"),
        Check::exact("B_S({(h,h)})", &croupier_formula(p), &b_hh, "(¼(1−p)² + p(1−p)) / (1 − ½(1−p)²)"),
        Check::exact("B_S({(h,h)}) closed form", &b_hh, &closed, "conditioned mass against closed form"),
        Check::exact("B_S({(t,t)})", &b_hh, &b_tt, "symmetry"),
        Check::exact("B_S(hh) + B_S(tt) = 1 − m_S(S)", &(one() - conditioned.mass(same)), &(b_hh.clone() + &b_tt), "mass left on S"),
        Check::exact("B_S(hh) + B_S(tt) = 1 − p²", &(one() - p * p), &(b_hh.clone() + &b_tt), "stated identity"),
        Check::exact("classical lower endpoint", &(half() * &q * &q / &denominator), &left, "p1 = p2 = (1−p)/2"),
        Check::exact(
            "classical upper endpoint",
            &(half() * (one() + p) * (one() + p) / &denominator),
            &right,
            "p1 = p2 = (1+p)/2",
        ),
        Check::holds("B_S({(h,h)}) inside the classical interval", left <= b_hh && b_hh <= right, "interval check"),
    ])
}

fn dempster_coin_checks(_: &Rational, _: u64) -> Result<Vec<Check>> {
    let m = biased_coin();
    let f = m.frame().clone();
    let combined = dempster_combine(&m, &m)?;
    let check = diagonal_equivalence_check(&m, &m)?;
    let tails = combined.mass(f.singleton(1));
    Ok(vec![
        Check::exact("(m ⊕ m)({h})", &ratio(9, 13), &combined.mass(f.singleton(0)), "9/25 renormalized by 13/25"),
        Check::exact("(m ⊕ m)({t})", &ratio(4, 13), &tails, "4/25 renormalized by 13/25"),
        Check::holds("diagonal conditioning agrees", check.equal, "product conditioned on {(ω,ω)}"),
        Check::holds("(m ⊕ m)({t}) < m({t})", tails < m.mass(f.singleton(1)), "combining lowers belief in tails"),
    ])
}

fn paradox_checks(_: &Rational, _: u64) -> Result<Vec<Check>> {
    let (pf, m) = paradox();
    let diagonal = pf.diagonal()?;
    let y0 = pf.cylinder(Axis::Right, pf.right().singleton(0));
    let y1 = pf.cylinder(Axis::Right, pf.right().singleton(1));
    let x0 = pf.cylinder(Axis::Left, pf.left().singleton(0));
    let report = total_belief_check(&m, &[y0, y1])?;
    let counterexample = report.counterexample.clone();
    let right_witness = counterexample
        .as_ref()
        .map(|c| c.event == x0 && c.belief == half() && c.decomposed == ratio(0, 1))
        .unwrap_or(false);
    Ok(vec![
        Check::exact("B(x = y)", &ratio(0, 1), &m.belief(diagonal)?, "no focal set inside the diagonal"),
        Check::exact("B_{y=0}(x = y)", &half(), &conditional_belief(&m, y0, diagonal)?, "conditioning on y = 0"),
        Check::exact("B_{y=1}(x = y)", &half(), &conditional_belief(&m, y1, diagonal)?, "conditioning on y = 1"),
        Check::holds("total-belief premise fails for the y-partition", !report.premise_holds, "B(y = 0) = B(y = 1) = 0"),
        Check::holds(
            "decomposition fails at A = {x = 0}",
            right_witness,
            "B(x = 0) = 1/2 against 0 from the parts",
        ),
    ])
}

fn fh_vs_dempster_checks(_: &Rational, _: u64) -> Result<Vec<Check>> {
    let m = family();
    let f = m.frame().clone();
    let father = f.subset(["Father"])?;
    let h = f.subset(["Father", "Son"])?;
    let credal = CredalSet::new(&m)?;
    let dempster = conditional_belief(&m, h, father)?;
    let fh = credal.fh_conditional_lower(father, h)?;
    Ok(vec![
        Check::exact("B_H({Father})", &ratio(9, 10), &dempster, "mass on {Father, Mother} moves to {Father}"),
        Check::exact("inf P({Father} | H)", &ratio(0, 1), &fh, "vertex giving the 9/10 to Mother"),
        Check::exact(
            "inf P({Father} | H) with P(Hᶜ) = B(Hᶜ)",
            &dempster,
            &credal.compatible_conditional_lower(father, h)?,
            "constrained vertices reproduce the conditional belief",
        ),
        Check::holds("strict inequality", dempster > fh, "conditional belief exceeds the credal infimum"),
        Check::exact("m_H({Father})", &ratio(9, 10), &condition_mass(&m, h)?.mass(father), "conditioned mass"),
    ])
}

fn independence_checks(_: &Rational, _: u64) -> Result<Vec<Check>> {
    let bit = Frame::new(["0", "1"])?;
    let pf = ProductFrame::square(bit)?;
    let c00 = cell(&pf, 0, 0);
    let x0 = pf.cylinder(Axis::Left, pf.left().singleton(0));
    let y0 = pf.cylinder(Axis::Right, pf.right().singleton(0));
    let first = MassFunction::new(
        pf.product().clone(),
        [(pf.product().full(), quarter()), (c00, half()), (x0 | y0, quarter())],
    )?;
    let report = check_independence(&pf, &first)?;
    let left = marginal(&pf, &first, Axis::Left)?;
    let right = marginal(&pf, &first, Axis::Right)?;
    let product_of_marginals = left.mass(pf.left().singleton(0)) * right.mass(pf.right().singleton(0));

    let second = MassFunction::new(pf.product().clone(), [(pf.diagonal()?, one())])?;
    let report2 = check_independence(&pf, &second)?;
    let product_of_full = report2.left_marginal.mass(pf.left().full()) * report2.right_marginal.mass(pf.right().full());
    Ok(vec![
        Check::holds("first: conditional invariance holds", report.cond_invariance, "dense scan over A, B"),
        Check::exact("first: m({(0,0)})", &half(), &first.mass(c00), "given mass"),
        Check::exact("first: m₁({0}) m₂({0})", &quarter(), &product_of_marginals, "marginals 1/2 each"),
        Check::holds("first: mass does not factorize", !report.mass_factorizes, "1/2 ≠ 1/4"),
        Check::holds("second: product form holds", report2.product_form, "dense scan over A, B"),
        Check::exact("second: m(Ω)", &ratio(0, 1), &second.mass(pf.product().full()), "all mass on the diagonal"),
        Check::exact("second: m₁(Ω₁) m₂(Ω₂)", &one(), &product_of_full, "both marginals vacuous"),
        Check::holds("second: mass does not factorize", !report2.mass_factorizes, "0 ≠ 1"),
    ])
}

fn remark_checks(_: &Rational, _: u64) -> Result<Vec<Check>> {
    let f = remark_f();
    let frame = f.frame().clone();
    let belief_check = f.is_belief_function();
    let superadditive = frame.subsets().all(|a| {
        frame.subsets().all(|b| {
            a.meets(b) || f.get(a | b).clone() >= f.get(a).clone() + f.get(b).clone()
        })
    });
    let found = find_violation(&f, 2, BettingMode::B2Star)?;
    Ok(vec![
        Check::holds("superadditive", superadditive, "scan over disjoint pairs"),
        Check::holds("not a belief function", !belief_check.is_belief, "negative Möbius mass"),
        Check::exact(
            "Möbius mass of Ω",
            &ratio(-1, 2),
            &belief_check.negative_mass.map(|(_, v)| v).unwrap_or_else(|| ratio(0, 1)),
            "1 − 1 − 1 + 1/2",
        ),
        Check::holds(
            "2-monotonicity fails at ({a,b}, {b,c})",
            belief_check.two_monotone_violation == Some((frame.mask(0b011)?, frame.mask(0b110)?)),
            "1 < 1 + 1 − 1/2",
        ),
        Check::holds("B2* violation found", found.is_some(), "bounded family search"),
    ])
}

fn ignorance_bets_checks(_: &Rational, _: u64) -> Result<Vec<Check>> {
    let prices = ignorant_prices(2);
    let p2 = find_violation(&prices, 2, BettingMode::P2)?;
    let b2 = find_violation(&prices, 2, BettingMode::B2Star)?;
    let frame = prices.frame().clone();
    let expected = crate::betting::BetFamily::new(vec![frame.singleton(0), frame.singleton(1)], vec![frame.full()]);
    Ok(vec![
        Check::holds("P2 violated by buying both singletons and selling Ω", p2 == Some(expected), "0 + 0 < 1"),
        Check::holds("B2* satisfied", b2.is_none(), "belief tables are coherent"),
    ])
}

fn coin_lln_model(p: &Rational) -> Result<(MassFunction<Rational>, RandomVariable<Rational>)> {
    let m = uncertain_coin(p)?;
    let x = RandomVariable::indicator(m.frame().clone(), m.frame().singleton(0))?;
    Ok((m, x))
}

fn coin_expectation_checks(p: &Rational, _: u64) -> Result<Vec<Check>> {
    let (m, x) = coin_lln_model(p)?;
    let e = crate::expectation::lower_expectation(&m, &x)?;
    let side = half() * (one() - p);
    let miss = one() - &side;
    Ok(vec![
        Check::exact("E(1_h)", &side, &e, "only {h} has minimum 1"),
        Check::exact("E(1_h) = B({h})", &m.belief(m.frame().singleton(0))?, &e, "indicator expectation"),
        Check::exact(
            "B_2(mean ≥ E)",
            &(one() - &miss * &miss),
            &crate::expectation::exact_lln_belief(&m, &x, 2, &e)?,
            "at least one of two draws lands on {h}",
        ),
    ])
}

fn lln_coin_checks(p: &Rational, seed: u64) -> Result<Vec<Check>> {
    let (m, x) = coin_lln_model(p)?;
    let mut report = simulate_lln(&m, &x, 2000, 200, &ratio(1, 20), seed)?;
    attach_exact(&mut report, &m, &x)?;
    let exact_lower = report.exact_lower.clone().expect("attached");
    let exact_upper = report.exact_upper.clone().expect("attached");
    Ok(vec![
        Check::bound(
            "empirical B(mean ≥ E − ε)",
            "≥ 0.99".into(),
            report.empirical_lower,
            report.empirical_lower >= 0.99,
            format!("ε = 1/20, 200 trials, seed {seed}"),
        ),
        Check::bound(
            "empirical B(mean ≥ E + ε)",
            "≤ 0.01".into(),
            report.empirical_upper,
            report.empirical_upper <= 0.01,
            format!("ε = 1/20, 200 trials, seed {seed}"),
        ),
        Check::holds(
            "simulation within 4σ + 0.02 of exact",
            report.agrees_with_exact() == Some(true),
            format!("exact {:.6} and {:.6}", exact_lower.to_f64(), exact_upper.to_f64()),
        ),
    ])
}

/// A simulation setting checked against the exact oracle.
pub struct LlnConfiguration {
    pub name: &'static str,
    pub mass: MassFunction<Rational>,
    pub variable: RandomVariable<Rational>,
    pub n: usize,
    pub trials: usize,
    pub epsilon: Rational,
    pub seed: u64,
}

/// Ten settings drawn from the registry models.
pub fn lln_configurations() -> Result<Vec<LlnConfiguration>> {
    let (coin, heads) = coin_lln_model(&ratio(1, 5))?;
    let tails = RandomVariable::indicator(coin.frame().clone(), coin.frame().singleton(1))?;
    let (half_coin, half_heads) = coin_lln_model(&half())?;
    let fair = MassFunction::from_probability(&ProbabilityDistribution::uniform(coin_frame()));
    let (forensic_pf, forensic) = forensic_ignorant(&ratio(1, 10))?;
    let (_, guilt) = forensic_events(&forensic_pf);
    let guilty = RandomVariable::indicator(forensic.frame().clone(), guilt)?;
    let fam = family();
    let ages = RandomVariable::new(fam.frame().clone(), vec![ratio(1, 1), ratio(2, 1), ratio(3, 1)])?;
    let isle = island(10);
    let first = RandomVariable::indicator(isle.frame().clone(), isle.frame().singleton(0))?;
    let die_frame = Frame::new(["1", "2", "3", "4", "5", "6"])?;
    let die = MassFunction::from_probability(&ProbabilityDistribution::uniform(die_frame.clone()));
    let face = RandomVariable::from_fn(die_frame, |i| ratio(i as i64 + 1, 1));
    let (croupier_pf, croupier_m) = croupier(&half())?;
    let heads_count = RandomVariable::from_fn(croupier_m.frame().clone(), |idx| {
        let (i, j) = croupier_pf.coordinates(idx);
        ratio((i == 0) as i64 + (j == 0) as i64, 1)
    });
    let config = |name, mass: &MassFunction<Rational>, variable: &RandomVariable<Rational>, n, epsilon, seed| {
        LlnConfiguration {
            name,
            mass: mass.clone(),
            variable: variable.clone(),
            n,
            trials: 200,
            epsilon,
            seed,
        }
    };
    Ok(vec![
        config("coin p=1/5, heads, n=2000", &coin, &heads, 2000, ratio(1, 20), DEFAULT_SEED),
        config("coin p=1/5, heads, n=100", &coin, &heads, 100, ratio(1, 20), DEFAULT_SEED + 1),
        config("coin p=1/5, tails, n=50", &coin, &tails, 50, ratio(1, 10), DEFAULT_SEED + 2),
        config("coin p=1/2, heads, n=40", &half_coin, &half_heads, 40, ratio(1, 20), DEFAULT_SEED + 3),
        config("fair coin, heads, n=100", &fair, &heads, 100, ratio(1, 20), DEFAULT_SEED + 4),
        config("forensic p=1/10, guilt, n=30", &forensic, &guilty, 30, ratio(1, 20), DEFAULT_SEED + 5),
        config("family, ages, n=25", &fam, &ages, 25, ratio(1, 5), DEFAULT_SEED + 6),
        config("island, first inhabitant, n=10", &isle, &first, 10, ratio(1, 10), DEFAULT_SEED + 7),
        config("fair die, face, n=10", &die, &face, 10, ratio(1, 2), DEFAULT_SEED + 8),
        config("croupier p=1/2, heads, n=20", &croupier_m, &heads_count, 20, ratio(1, 5), DEFAULT_SEED + 9),
    ])
}
