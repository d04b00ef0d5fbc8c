//! Dempster's rule, kept for reference and comparison.
//!
//! The rule is equivalent to building the independent product on `Ω × Ω`
//! and conditioning on the diagonal. [`diagonal_equivalence_check`] runs both
//! routes side by side.

use std::collections::BTreeMap;

use crate::conditioning::condition_mass;
use crate::error::{Error, Result};
use crate::frame::SubsetMask;
use crate::mass::MassFunction;
use crate::products::{independent_product, ProductFrame};
use crate::scalar::Scalar;

/// `m(A) ∝ Σ_{B ∩ C = A} m₁(B) m₂(C)` over nonempty `A`.
pub fn dempster_combine<S: Scalar>(m1: &MassFunction<S>, m2: &MassFunction<S>) -> Result<MassFunction<S>> {
    m1.frame().ensure_same(m2.frame())?;
    let mut raw: BTreeMap<SubsetMask, S> = BTreeMap::new();
    let mut agreeing = S::zero();
    for (b, mb) in m1.focal() {
        for (c, mc) in m2.focal() {
            let a = b & c;
            if a.is_empty() {
                continue;
            }
            let w = mb.clone() * mc.clone();
            agreeing = agreeing + w.clone();
            let slot = raw.entry(a).or_insert_with(S::zero);
            *slot = slot.clone() + w;
        }
    }
    if agreeing.vanishes_as_denominator() {
        return Err(Error::TotalConflict);
    }
    Ok(MassFunction::normalized(m1.frame().clone(), raw, &agreeing))
}

/// Conflict `K = Σ_{B ∩ C = ∅} m₁(B) m₂(C)`.
pub fn conflict<S: Scalar>(m1: &MassFunction<S>, m2: &MassFunction<S>) -> Result<S> {
    m1.frame().ensure_same(m2.frame())?;
    let mut k = S::zero();
    for (b, mb) in m1.focal() {
        for (c, mc) in m2.focal() {
            if !b.meets(c) {
                k = k + mb.clone() * mc.clone();
            }
        }
    }
    Ok(k)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalEquivalence<S: Scalar> {
    pub direct: MassFunction<S>,
    pub via_diagonal: MassFunction<S>,
    pub equal: bool,
}

/// Combines directly and via `(m₁ ⊗ m₂)` conditioned on `{(ω, ω)}`.
pub fn diagonal_equivalence_check<S: Scalar>(
    m1: &MassFunction<S>,
    m2: &MassFunction<S>,
) -> Result<DiagonalEquivalence<S>> {
    let direct = dempster_combine(m1, m2)?;
    let frame = m1.frame().clone();
    let pf = ProductFrame::square(frame.clone())?;
    let product = independent_product(&pf, m1, m2)?;
    let conditioned = condition_mass(&product, pf.diagonal()?).map_err(|e| match e {
        Error::ConditioningUndefined(_) => Error::TotalConflict,
        other => other,
    })?;
    let mut focal: BTreeMap<SubsetMask, S> = BTreeMap::new();
    for (set, mass) in conditioned.focal() {
        let bits = set
            .elements()
            .map(|index| pf.coordinates(index).0)
            .fold(0u32, |acc, i| acc | 1 << i);
        let slot = focal.entry(frame.mask(bits)?).or_insert_with(S::zero);
        *slot = slot.clone() + mass.clone();
    }
    let via_diagonal = MassFunction::from_focal_unchecked(frame, focal);
    let equal = direct.focal_count() == via_diagonal.focal_count()
        && direct
            .focal()
            .all(|(set, mass)| mass.same(&via_diagonal.mass(set)));
    Ok(DiagonalEquivalence {
        direct,
        via_diagonal,
        equal,
    })
}
