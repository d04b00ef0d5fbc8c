//! The set `P_B` of distributions compatible with a mass function.
//!
//! Each extreme point hands the whole of `m(C)` to one element of `C`.
//! Lower probabilities and both conditional lower bounds are linear or
//! linear-fractional in `P`, so they are optimized over the vertices.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::frame::SubsetMask;
use crate::mass::{MassFunction, ProbabilityDistribution};
use crate::par::{self, Execution};
use crate::scalar::Scalar;

/// Largest allocation count [`extreme_points`] will enumerate.
pub const MAX_ALLOCATIONS: u128 = 1_000_000;

/// A vertex of `P_B`: `choices[i]` is the outcome receiving the mass of
/// the `i`-th focal set (mask order).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AllocationChoice {
    pub choices: Vec<usize>,
}

impl AllocationChoice {
    pub fn distribution<S: Scalar>(&self, m: &MassFunction<S>) -> ProbabilityDistribution<S> {
        let mut weights = vec![S::zero(); m.frame().size()];
        for ((set, mass), &outcome) in m.focal().zip(&self.choices) {
            debug_assert!(set.contains(outcome));
            weights[outcome] = weights[outcome].clone() + mass.clone();
        }
        ProbabilityDistribution::new_unchecked(m.frame().clone(), weights)
    }
}

/// `Π |C|` over focal sets, saturating.
pub fn allocation_count<S: Scalar>(m: &MassFunction<S>) -> u128 {
    m.focal()
        .fold(1u128, |acc, (set, _)| acc.saturating_mul(set.cardinality() as u128))
}

fn decode(members: &[Vec<usize>], mut index: u64) -> AllocationChoice {
    let choices = members
        .iter()
        .map(|options| {
            let radix = options.len() as u64;
            let pick = options[(index % radix) as usize];
            index /= radix;
            pick
        })
        .collect();
    AllocationChoice { choices }
}

pub fn allocations<S: Scalar>(m: &MassFunction<S>) -> Result<Vec<AllocationChoice>> {
    let count = checked_count(m)?;
    let members = focal_members(m);
    Ok((0..count).map(|i| decode(&members, i)).collect())
}

fn focal_members<S: Scalar>(m: &MassFunction<S>) -> Vec<Vec<usize>> {
    m.focal().map(|(set, _)| set.elements().collect()).collect()
}

fn checked_count<S: Scalar>(m: &MassFunction<S>) -> Result<u64> {
    let count = allocation_count(m);
    if count > MAX_ALLOCATIONS {
        return Err(Error::TooManyExtremePoints {
            count,
            limit: MAX_ALLOCATIONS,
        });
    }
    Ok(count as u64)
}

pub fn extreme_points<S: Scalar>(m: &MassFunction<S>) -> Result<Vec<ProbabilityDistribution<S>>> {
    extreme_points_with(m, Execution::default())
}

/// Distinct vertex distributions, in order of first appearance.
pub fn extreme_points_with<S: Scalar>(
    m: &MassFunction<S>,
    exec: Execution,
) -> Result<Vec<ProbabilityDistribution<S>>> {
    let count = checked_count(m)?;
    let members = focal_members(m);
    let all = par::map_range(exec, 0..count, |i| decode(&members, i).distribution(m));
    let mut seen = BTreeSet::new();
    Ok(all
        .into_iter()
        .filter(|p| seen.insert(p.weights().iter().map(Scalar::key).collect::<Vec<_>>()))
        .collect())
}

/// `P_B` through its vertices.
#[derive(Clone, Debug)]
pub struct CredalSet<S: Scalar> {
    mass: MassFunction<S>,
    vertices: Vec<ProbabilityDistribution<S>>,
}

impl<S: Scalar> CredalSet<S> {
    pub fn new(m: &MassFunction<S>) -> Result<Self> {
        Self::with_execution(m, Execution::default())
    }

    pub fn with_execution(m: &MassFunction<S>, exec: Execution) -> Result<Self> {
        Ok(CredalSet {
            mass: m.clone(),
            vertices: extreme_points_with(m, exec)?,
        })
    }

    pub fn mass(&self) -> &MassFunction<S> {
        &self.mass
    }

    pub fn vertices(&self) -> &[ProbabilityDistribution<S>] {
        &self.vertices
    }

    pub fn lower_probability(&self, event: SubsetMask) -> Result<S> {
        self.mass.frame().ensure_owns(event)?;
        Ok(minimum(self.vertices.iter().map(|p| p.probability(event))).expect("P_B is nonempty"))
    }

    pub fn upper_probability(&self, event: SubsetMask) -> Result<S> {
        self.mass.frame().ensure_owns(event)?;
        let lowest_outside = self.lower_probability(!event)?;
        Ok(S::one() - lowest_outside)
    }

    /// `inf P(A | H)` over vertices with `P(H) > 0`.
    pub fn fh_conditional_lower(&self, event: SubsetMask, hypothesis: SubsetMask) -> Result<S> {
        let frame = self.mass.frame();
        frame.ensure_owns(event)?;
        frame.ensure_owns(hypothesis)?;
        minimum(self.vertices.iter().filter_map(|p| conditional(p, event, hypothesis)))
            .ok_or_else(|| Error::ConditionImpossible(frame.describe(hypothesis)))
    }

    /// `inf P(A | H)` over vertices with `P(Hᶜ) = B(Hᶜ)`.
    pub fn compatible_conditional_lower(&self, event: SubsetMask, hypothesis: SubsetMask) -> Result<S> {
        let frame = self.mass.frame();
        frame.ensure_owns(event)?;
        frame.ensure_owns(hypothesis)?;
        let outside = !hypothesis;
        let belief_outside = self.mass.belief_unchecked(outside);
        if (S::one() - belief_outside.clone()).vanishes_as_denominator() {
            return Err(Error::ConditioningUndefined(frame.describe(hypothesis)));
        }
        minimum(
            self.vertices
                .iter()
                .filter(|p| p.probability(outside).same(&belief_outside))
                .filter_map(|p| conditional(p, event, hypothesis)),
        )
        .ok_or_else(|| Error::ConditionImpossible(frame.describe(hypothesis)))
    }
}

fn conditional<S: Scalar>(p: &ProbabilityDistribution<S>, event: SubsetMask, hypothesis: SubsetMask) -> Option<S> {
    let given = p.probability(hypothesis);
    if given.vanishes_as_denominator() {
        return None;
    }
    Some(p.probability(event & hypothesis) / given)
}

fn minimum<S: Scalar>(values: impl Iterator<Item = S>) -> Option<S> {
    values.reduce(S::min_of)
}

pub fn lower_probability<S: Scalar>(m: &MassFunction<S>, event: SubsetMask) -> Result<S> {
    CredalSet::new(m)?.lower_probability(event)
}

pub fn fh_conditional_lower<S: Scalar>(m: &MassFunction<S>, event: SubsetMask, hypothesis: SubsetMask) -> Result<S> {
    CredalSet::new(m)?.fh_conditional_lower(event, hypothesis)
}

pub fn compatible_conditional_lower<S: Scalar>(
    m: &MassFunction<S>,
    event: SubsetMask,
    hypothesis: SubsetMask,
) -> Result<S> {
    CredalSet::new(m)?.compatible_conditional_lower(event, hypothesis)
}
