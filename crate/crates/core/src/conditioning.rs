//! Conditioning a mass function on a hypothesis `H`.
//!
//! Every focal set `B` meeting `H` hands its mass to `B ∩ H`; sets disjoint
//! from `H` are discarded and the remainder renormalized. Belief in the
//! conditioned mass agrees with the closed form
//! `(B(A ∪ Hᶜ) − B(Hᶜ)) / (1 − B(Hᶜ))`, and with classically conditioning
//! the lifted distribution over focal sets (see [`LiftedDistribution`]).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::frame::{Frame, SubsetMask};
use crate::mass::{MassFunction, ProbabilityDistribution};
use crate::par::{self, Execution};
use crate::scalar::Scalar;

/// The conditional mass `m_H`.
pub fn condition_mass<S: Scalar>(m: &MassFunction<S>, hypothesis: SubsetMask) -> Result<MassFunction<S>> {
    let frame = m.frame();
    frame.ensure_owns(hypothesis)?;
    let mut raw: BTreeMap<SubsetMask, S> = BTreeMap::new();
    let mut total = S::zero();
    for (set, mass) in m.focal() {
        let kept = set & hypothesis;
        if kept.is_empty() {
            continue;
        }
        total = total + mass.clone();
        let slot = raw.entry(kept).or_insert_with(S::zero);
        *slot = slot.clone() + mass.clone();
    }
    if total.vanishes_as_denominator() {
        return Err(Error::ConditioningUndefined(frame.describe(hypothesis)));
    }
    Ok(MassFunction::normalized(frame.clone(), raw, &total))
}

/// `B_H(A)` through the closed form in terms of unconditional beliefs.
pub fn conditional_belief<S: Scalar>(
    m: &MassFunction<S>,
    hypothesis: SubsetMask,
    event: SubsetMask,
) -> Result<S> {
    let frame = m.frame();
    frame.ensure_owns(hypothesis)?;
    frame.ensure_owns(event)?;
    let outside = !hypothesis;
    let belief_outside = m.belief_unchecked(outside);
    let denominator = S::one() - belief_outside.clone();
    if denominator.vanishes_as_denominator() {
        return Err(Error::ConditioningUndefined(frame.describe(hypothesis)));
    }
    Ok((m.belief_unchecked(event | outside) - belief_outside) / denominator)
}

/// The distribution `P({C}) = m(C)` over focal sets.
///
/// Its outcomes are subsets of the source frame, so it is stored as a
/// plain list rather than as a [`ProbabilityDistribution`] on a new frame;
/// [`LiftedDistribution::distribution`] builds that form when it fits.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftedDistribution<S> {
    frame: Frame,
    outcomes: Vec<SubsetMask>,
    weights: Vec<S>,
}

pub fn lift_to_powerset<S: Scalar>(m: &MassFunction<S>) -> LiftedDistribution<S> {
    let (outcomes, weights) = m.focal().map(|(set, w)| (set, w.clone())).unzip();
    LiftedDistribution {
        frame: m.frame().clone(),
        outcomes,
        weights,
    }
}

impl<S: Scalar> LiftedDistribution<S> {
    pub fn source_frame(&self) -> &Frame {
        &self.frame
    }

    pub fn outcomes(&self) -> &[SubsetMask] {
        &self.outcomes
    }

    pub fn weights(&self) -> &[S] {
        &self.weights
    }

    /// The lift as a distribution on a frame labelled by the focal sets.
    pub fn distribution(&self) -> Result<ProbabilityDistribution<S>> {
        let labels = self.outcomes.iter().map(|set| self.frame.describe(*set));
        let frame = Frame::new(labels)?;
        ProbabilityDistribution::new(frame, self.weights.clone())
    }

    /// `P(𝒜)` for the collection of focal sets selected by `pred`.
    pub fn probability_of(&self, pred: impl Fn(SubsetMask) -> bool) -> S {
        self.outcomes
            .iter()
            .zip(&self.weights)
            .filter(|(set, _)| pred(**set))
            .fold(S::zero(), |acc, (_, w)| acc + w.clone())
    }

    /// `B(A) = P({C : C ⊆ A})`.
    pub fn belief(&self, event: SubsetMask) -> Result<S> {
        self.frame.ensure_owns(event)?;
        Ok(self.probability_of(|c| c.within(event)))
    }

    /// Classical conditioning on `{C : C ∩ H ≠ ∅}`, then lumping `C ↦ C ∩ H`.
    pub fn conditional_mass(&self, hypothesis: SubsetMask) -> Result<MassFunction<S>> {
        self.frame.ensure_owns(hypothesis)?;
        let consistent = self.probability_of(|c| c.meets(hypothesis));
        if consistent.vanishes_as_denominator() {
            return Err(Error::ConditioningUndefined(self.frame.describe(hypothesis)));
        }
        let mut lumped: BTreeMap<SubsetMask, S> = BTreeMap::new();
        for (set, w) in self.outcomes.iter().zip(&self.weights) {
            if set.meets(hypothesis) {
                let slot = lumped.entry(*set & hypothesis).or_insert_with(S::zero);
                *slot = slot.clone() + w.clone() / consistent.clone();
            }
        }
        MassFunction::new(self.frame.clone(), lumped)
    }

    /// `P({C : C ∩ H ⊆ A} | {C : C ∩ H ≠ ∅})`.
    pub fn conditional_belief(&self, hypothesis: SubsetMask, event: SubsetMask) -> Result<S> {
        self.frame.ensure_owns(hypothesis)?;
        self.frame.ensure_owns(event)?;
        let consistent = self.probability_of(|c| c.meets(hypothesis));
        if consistent.vanishes_as_denominator() {
            return Err(Error::ConditioningUndefined(self.frame.describe(hypothesis)));
        }
        let implied = self.probability_of(|c| c.meets(hypothesis) && (c & hypothesis).within(event));
        Ok(implied / consistent)
    }
}

/// Result of checking the total-belief decomposition over a partition.
#[derive(Clone, Debug, PartialEq)]
pub struct TotalBeliefReport<S> {
    /// Every part has positive belief.
    pub parts_positive: bool,
    /// Every focal set lies inside a single part.
    pub focal_sets_inside_parts: bool,
    pub premise_holds: bool,
    pub part_beliefs: Vec<S>,
    pub beliefs_sum_to_one: bool,
    /// `B(A) = Σ B(B_i) B_{B_i}(A)` for every `A`.
    pub decomposition_holds: bool,
    /// First `A` (mask order) where the decomposition fails.
    pub counterexample: Option<DecompositionFailure<S>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecompositionFailure<S> {
    pub event: SubsetMask,
    pub belief: S,
    pub decomposed: S,
}

pub fn total_belief_check<S: Scalar>(m: &MassFunction<S>, parts: &[SubsetMask]) -> Result<TotalBeliefReport<S>> {
    total_belief_check_with(m, parts, Execution::default())
}

/// [`total_belief_check`] with an explicit execution strategy for the scan over `A`.
pub fn total_belief_check_with<S: Scalar>(
    m: &MassFunction<S>,
    parts: &[SubsetMask],
    exec: Execution,
) -> Result<TotalBeliefReport<S>> {
    let frame = m.frame();
    ensure_partition(frame, parts)?;
    let part_beliefs: Vec<S> = parts.iter().map(|p| m.belief_unchecked(*p)).collect();
    let parts_positive = part_beliefs.iter().all(Scalar::is_positive);
    let focal_sets_inside_parts = m.focal().all(|(c, _)| parts.iter().any(|p| c.within(*p)));
    let beliefs_sum_to_one = S::sum(&part_beliefs).same(&S::one());

    // A part whose complement has belief one has zero belief itself, so its
    // undefined conditional contributes nothing.
    let conditioned: Vec<Option<MassFunction<S>>> = parts
        .iter()
        .map(|p| condition_mass(m, *p).ok())
        .collect();
    let size = frame.size();
    let rows = par::map_range(exec, 0..frame.subset_count() as u64, |bits| {
        let event = SubsetMask::new_unchecked(bits as u32, size);
        let belief = m.belief_unchecked(event);
        let decomposed = part_beliefs
            .iter()
            .zip(&conditioned)
            .fold(S::zero(), |acc, (weight, cond)| match cond {
                Some(cond) => acc + weight.clone() * cond.belief_unchecked(event),
                None => acc,
            });
        (event, belief, decomposed)
    });
    let counterexample = rows
        .into_iter()
        .find(|(_, belief, decomposed)| !belief.same(decomposed))
        .map(|(event, belief, decomposed)| DecompositionFailure {
            event,
            belief,
            decomposed,
        });
    Ok(TotalBeliefReport {
        parts_positive,
        focal_sets_inside_parts,
        premise_holds: parts_positive && focal_sets_inside_parts,
        part_beliefs,
        beliefs_sum_to_one,
        decomposition_holds: counterexample.is_none(),
        counterexample,
    })
}

fn ensure_partition(frame: &Frame, parts: &[SubsetMask]) -> Result<()> {
    let mut covered = frame.empty();
    for part in parts {
        frame.ensure_owns(*part)?;
        if part.is_empty() || part.meets(covered) {
            return Err(Error::NotAPartition);
        }
        covered = covered | *part;
    }
    if covered.is_full() {
        Ok(())
    } else {
        Err(Error::NotAPartition)
    }
}
