//! Lower expectations and the law-of-large-numbers harness.
//!
//! For a focal set `C` write `X̂(C) = min_{ω∈C} X(ω)`. Under the iid power
//! of `m`, the belief that the sample mean of `X` is at least `α` equals the
//! classical probability that the mean of iid copies of `X̂` (value `X̂(C)`
//! with probability `m(C)`) is at least `α`. Both the exact oracle and the
//! simulation work with that reduced process.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::frame::{Frame, SubsetMask};
use crate::mass::MassFunction;
use crate::par::{self, Execution};
use crate::scalar::Scalar;

/// Largest `n` accepted by [`exact_lln_belief`].
pub const MAX_EXACT_REPETITIONS: usize = 10_000;
/// Largest number of count vectors [`exact_lln_belief`] will visit.
pub const MAX_EXACT_TERMS: u128 = 5_000_000;
pub const GENERATOR_NAME: &str = "ChaCha8Rng";

#[derive(Clone, Debug, PartialEq)]
pub struct RandomVariable<S> {
    frame: Frame,
    values: Vec<S>,
}

impl<S: Scalar> RandomVariable<S> {
    pub fn new(frame: Frame, values: Vec<S>) -> Result<Self> {
        if values.len() != frame.size() {
            return Err(Error::InvalidArgument(format!(
                "random variable has {} values for {} outcomes",
                values.len(),
                frame.size()
            )));
        }
        Ok(RandomVariable { frame, values })
    }

    pub fn from_fn(frame: Frame, f: impl Fn(usize) -> S) -> Self {
        let values = (0..frame.size()).map(f).collect();
        RandomVariable { frame, values }
    }

    /// `1_A`.
    pub fn indicator(frame: Frame, set: SubsetMask) -> Result<Self> {
        frame.ensure_owns(set)?;
        Ok(Self::from_fn(frame, |i| if set.contains(i) { S::one() } else { S::zero() }))
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn value(&self, outcome: usize) -> &S {
        &self.values[outcome]
    }

    /// `X̂(C)`; `C` must be nonempty.
    pub fn lowest_on(&self, set: SubsetMask) -> S {
        set.elements()
            .map(|i| self.values[i].clone())
            .reduce(S::min_of)
            .expect("focal sets are nonempty")
    }

    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T) -> RandomVariable<T> {
        RandomVariable {
            frame: self.frame.clone(),
            values: self.values.iter().map(f).collect(),
        }
    }
}

/// `E(X) = Σ m(C) X̂(C)`.
pub fn lower_expectation<S: Scalar>(m: &MassFunction<S>, x: &RandomVariable<S>) -> Result<S> {
    m.frame().ensure_same(&x.frame)?;
    Ok(m.focal()
        .fold(S::zero(), |acc, (set, mass)| acc + mass.clone() * x.lowest_on(set)))
}

/// Law of `X̂`: distinct values in increasing order with their probabilities.
pub fn reduced_law<S: Scalar>(m: &MassFunction<S>, x: &RandomVariable<S>) -> Result<Vec<(S, S)>> {
    m.frame().ensure_same(&x.frame)?;
    let mut law: BTreeMap<S::Key, (S, S)> = BTreeMap::new();
    for (set, mass) in m.focal() {
        let value = x.lowest_on(set);
        let slot = law.entry(value.key()).or_insert_with(|| (value, S::zero()));
        slot.1 = slot.1.clone() + mass.clone();
    }
    Ok(law.into_values().collect())
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// `B_n(mean of X ≥ α)` under the iid power of `m`.
///
/// Sums the multinomial law of the cell counts of `X̂` over every count
/// vector whose weighted total reaches `nα`.
pub fn exact_lln_belief<S: Scalar>(m: &MassFunction<S>, x: &RandomVariable<S>, n: usize, alpha: &S) -> Result<S> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if n > MAX_EXACT_REPETITIONS {
        return Err(Error::ResourceCap(format!("n = {n} exceeds {MAX_EXACT_REPETITIONS}")));
    }
    let law = reduced_law(m, x)?;
    let k = law.len();
    let terms = binomial((n + k - 1) as u128, (k - 1) as u128);
    if terms > MAX_EXACT_TERMS {
        return Err(Error::ResourceCap(format!(
            "{terms} count vectors exceed {MAX_EXACT_TERMS}"
        )));
    }
    let (values, probs): (Vec<S>, Vec<S>) = law.into_iter().unzip();
    let weight = S::multinomial(n, &probs);
    let threshold = S::from_ratio(n as i64, 1) * alpha.clone();
    let mut counts = vec![0usize; k];
    let mut total = S::zero();
    visit_counts(&mut counts, 0, n, &mut |counts| {
        let sum = counts
            .iter()
            .zip(&values)
            .fold(S::zero(), |acc, (&c, v)| acc + S::from_ratio(c as i64, 1) * v.clone());
        if sum.at_least(&threshold) {
            total = total.clone() + weight(counts);
        }
    });
    Ok(total)
}

fn visit_counts(counts: &mut [usize], cell: usize, left: usize, f: &mut impl FnMut(&[usize])) {
    if cell + 1 == counts.len() {
        counts[cell] = left;
        f(counts);
        return;
    }
    for c in 0..=left {
        counts[cell] = c;
        visit_counts(counts, cell + 1, left - c, f);
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LlnReport<S> {
    pub n: usize,
    pub trials: usize,
    pub epsilon: S,
    pub expectation: S,
    /// Fraction of trials with sample mean `≥ E − ε`.
    pub empirical_lower: f64,
    /// Fraction of trials with sample mean `≥ E + ε`.
    pub empirical_upper: f64,
    pub exact_lower: Option<S>,
    pub exact_upper: Option<S>,
    pub seed: u64,
    pub generator: &'static str,
}

impl<S: Scalar> LlnReport<S> {
    /// `|empirical − exact| ≤ 4σ + 0.02` for both events; `None` without exact values.
    pub fn agrees_with_exact(&self) -> Option<bool> {
        let lower = self.exact_lower.as_ref()?.to_f64();
        let upper = self.exact_upper.as_ref()?.to_f64();
        Some(
            within_sampling_error(self.empirical_lower, lower, self.trials)
                && within_sampling_error(self.empirical_upper, upper, self.trials),
        )
    }
}

pub fn within_sampling_error(empirical: f64, exact: f64, trials: usize) -> bool {
    let sigma = (exact * (1.0 - exact) / trials as f64).max(0.0).sqrt();
    (empirical - exact).abs() <= 4.0 * sigma + 0.02
}

pub fn simulate_lln<S: Scalar>(
    m: &MassFunction<S>,
    x: &RandomVariable<S>,
    n: usize,
    trials: usize,
    epsilon: &S,
    seed: u64,
) -> Result<LlnReport<S>> {
    simulate_lln_with(m, x, n, trials, epsilon, seed, Execution::default())
}

/// [`simulate_lln`] with an explicit strategy. Trial `t` draws from
/// `ChaCha8Rng` seeded with `seed` on stream `t`, so results do not depend
/// on the strategy.
pub fn simulate_lln_with<S: Scalar>(
    m: &MassFunction<S>,
    x: &RandomVariable<S>,
    n: usize,
    trials: usize,
    epsilon: &S,
    seed: u64,
    exec: Execution,
) -> Result<LlnReport<S>> {
    if n == 0 || trials == 0 {
        return Err(Error::InvalidArgument("n and trials must be at least 1".into()));
    }
    if !epsilon.is_positive() {
        return Err(Error::InvalidArgument("epsilon must be positive".into()));
    }
    let expectation = lower_expectation(m, x)?;
    let law = reduced_law(m, x)?;
    let mut running = 0.0;
    let cumulative: Vec<f64> = law
        .iter()
        .map(|(_, p)| {
            running += p.to_f64();
            running
        })
        .collect();
    let values: Vec<S> = law.into_iter().map(|(v, _)| v).collect();
    let scale = S::from_ratio(n as i64, 1);
    let low = scale.clone() * (expectation.clone() - epsilon.clone());
    let high = scale * (expectation.clone() + epsilon.clone());

    let outcomes = par::map_range(exec, 0..trials as u64, |trial| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        let mut counts = vec![0i64; values.len()];
        for _ in 0..n {
            let u: f64 = rng.random();
            let cell = cumulative.partition_point(|&c| c <= u).min(values.len() - 1);
            counts[cell] += 1;
        }
        let sum = counts
            .iter()
            .zip(&values)
            .fold(S::zero(), |acc, (&c, v)| acc + S::from_ratio(c, 1) * v.clone());
        (sum.at_least(&low), sum.at_least(&high))
    });
    let fraction = |hits: usize| hits as f64 / trials as f64;
    Ok(LlnReport {
        n,
        trials,
        epsilon: epsilon.clone(),
        expectation,
        empirical_lower: fraction(outcomes.iter().filter(|o| o.0).count()),
        empirical_upper: fraction(outcomes.iter().filter(|o| o.1).count()),
        exact_lower: None,
        exact_upper: None,
        seed,
        generator: GENERATOR_NAME,
    })
}

/// Fills in the exact beliefs of both mean events.
pub fn attach_exact<S: Scalar>(report: &mut LlnReport<S>, m: &MassFunction<S>, x: &RandomVariable<S>) -> Result<()> {
    let e = report.expectation.clone();
    let eps = report.epsilon.clone();
    report.exact_lower = Some(exact_lln_belief(m, x, report.n, &(e.clone() - eps.clone()))?);
    report.exact_upper = Some(exact_lln_belief(m, x, report.n, &(e + eps))?);
    Ok(())
}
