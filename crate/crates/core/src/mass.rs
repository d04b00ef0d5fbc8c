//! Basic belief assignments, dense set functions and the transforms
//! between them.
//!
//! A [`MassFunction`] stores only its focal sets. A [`SetFunction`] is a dense
//! `2^n` table indexed by mask bits; belief tables, plausibilities and
//! candidate betting prices all use it. Belief is the subset-sum (zeta)
//! transform of mass, and mass is recovered by the alternating-sum (Möbius)
//! transform. Both run in `O(n 2^n)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::frame::{Frame, SubsetMask, MAX_FRAME_SIZE};
use crate::scalar::{Rational, Scalar};

/// A basic belief assignment: positive masses on nonempty focal sets, summing to one.
#[derive(Clone, PartialEq)]
pub struct MassFunction<S> {
    frame: Frame,
    focal: BTreeMap<SubsetMask, S>,
}

/// Check a candidate list of `(set, mass)` entries.
///
/// Repeated sets are merged by summing. On success returns the
/// normalization defect `Σ m − 1`, which is exactly zero in rational mode and
/// within tolerance in float mode.
pub fn validate_mass<S: Scalar>(frame: &Frame, entries: &[(SubsetMask, S)]) -> Result<S> {
    merge_entries(frame, entries.iter().cloned()).map(|(_, defect)| defect)
}

fn merge_entries<S: Scalar>(
    frame: &Frame,
    entries: impl IntoIterator<Item = (SubsetMask, S)>,
) -> Result<(BTreeMap<SubsetMask, S>, S)> {
    let mut merged: BTreeMap<SubsetMask, S> = BTreeMap::new();
    for (set, mass) in entries {
        frame.ensure_owns(set)?;
        let slot = merged.entry(set).or_insert_with(S::zero);
        *slot = slot.clone() + mass;
    }
    if let Some(mass) = merged.get(&frame.empty()) {
        if !mass.is_negligible() {
            return Err(Error::EmptySetMass(mass.to_string()));
        }
    }
    for (set, mass) in &merged {
        if mass.is_negative_beyond_tolerance() {
            return Err(Error::NegativeMass {
                set: frame.describe(*set),
                mass: mass.to_string(),
            });
        }
    }
    let total = S::sum(merged.values());
    let defect = total.clone() - S::one();
    if !defect.is_negligible() {
        return Err(Error::MassNotNormalized {
            total: total.to_string(),
        });
    }
    merged.retain(|set, mass| !set.is_empty() && !mass.is_negligible());
    Ok((merged, defect))
}

impl<S: Scalar> MassFunction<S> {
    pub fn new(frame: Frame, entries: impl IntoIterator<Item = (SubsetMask, S)>) -> Result<Self> {
        let (focal, _) = merge_entries(&frame, entries)?;
        Ok(MassFunction { frame, focal })
    }

    /// Build from label lists, e.g. `[(&["F", "M"][..], 9/10), ...]`.
    pub fn from_labels<L, I>(frame: Frame, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (L, S)>,
        L: IntoIterator,
        L::Item: AsRef<str>,
    {
        let entries = entries
            .into_iter()
            .map(|(labels, mass)| Ok((frame.subset(labels)?, mass)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(frame, entries)
    }

    /// Total ignorance: all mass on the whole frame.
    pub fn vacuous(frame: Frame) -> Self {
        let full = frame.full();
        MassFunction {
            frame,
            focal: BTreeMap::from([(full, S::one())]),
        }
    }

    /// All mass on a single outcome.
    pub fn point(frame: Frame, outcome: usize) -> Self {
        let set = frame.singleton(outcome);
        MassFunction {
            frame,
            focal: BTreeMap::from([(set, S::one())]),
        }
    }

    /// The Bayesian mass of a probability distribution.
    pub fn from_probability(p: &ProbabilityDistribution<S>) -> Self {
        let focal = p
            .weights
            .iter()
            .enumerate()
            .filter(|(_, w)| !w.is_negligible())
            .map(|(i, w)| (p.frame.singleton(i), w.clone()))
            .collect();
        MassFunction {
            frame: p.frame.clone(),
            focal,
        }
    }

    /// Callers guarantee the entries already satisfy every invariant.
    pub(crate) fn from_focal_unchecked(frame: Frame, focal: BTreeMap<SubsetMask, S>) -> Self {
        debug_assert!(focal.keys().all(|s| !s.is_empty() && s.frame_size() == frame.size()));
        MassFunction { frame, focal }
    }

    /// Renormalize raw nonnegative weights, dropping zeros and the empty set.
    pub(crate) fn normalized(frame: Frame, raw: BTreeMap<SubsetMask, S>, total: &S) -> Self {
        let focal = raw
            .into_iter()
            .filter(|(set, w)| !set.is_empty() && !w.is_negligible())
            .map(|(set, w)| (set, w / total.clone()))
            .collect();
        MassFunction { frame, focal }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// Focal sets and their masses in increasing mask order.
    pub fn focal(&self) -> impl Iterator<Item = (SubsetMask, &S)> + '_ {
        self.focal.iter().map(|(set, mass)| (*set, mass))
    }

    pub fn focal_sets(&self) -> Vec<SubsetMask> {
        self.focal.keys().copied().collect()
    }

    pub fn focal_count(&self) -> usize {
        self.focal.len()
    }

    pub fn mass(&self, set: SubsetMask) -> S {
        self.focal.get(&set).cloned().unwrap_or_else(S::zero)
    }

    /// Mass concentrated on singletons.
    pub fn is_bayesian(&self) -> bool {
        self.focal.keys().all(|set| set.cardinality() == 1)
    }

    pub fn is_vacuous(&self) -> bool {
        self.focal.len() == 1 && self.focal.contains_key(&self.frame.full())
    }

    /// Total mass of focal sets contained in `set`.
    pub fn belief(&self, set: SubsetMask) -> Result<S> {
        self.frame.ensure_owns(set)?;
        Ok(self.belief_unchecked(set))
    }

    pub(crate) fn belief_unchecked(&self, set: SubsetMask) -> S {
        self.focal
            .iter()
            .filter(|(c, _)| c.within(set))
            .fold(S::zero(), |acc, (_, m)| acc + m.clone())
    }

    /// `1 − belief(Aᶜ)`: the mass not contradicting `set`.
    pub fn plausibility(&self, set: SubsetMask) -> Result<S> {
        self.frame.ensure_owns(set)?;
        Ok(S::one() - self.belief_unchecked(!set))
    }

    /// Dense belief table via the subset-sum transform.
    pub fn belief_table(&self) -> Result<SetFunction<S>> {
        ensure_dense(&self.frame)?;
        let mut values = vec![S::zero(); self.frame.subset_count()];
        for (set, mass) in &self.focal {
            values[set.index()] = mass.clone();
        }
        zeta_transform(&mut values);
        Ok(SetFunction {
            frame: self.frame.clone(),
            values,
        })
    }

    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T) -> MassFunction<T> {
        MassFunction {
            frame: self.frame.clone(),
            focal: self.focal.iter().map(|(set, m)| (*set, f(m))).collect(),
        }
    }

    pub fn to_float(&self) -> MassFunction<f64> {
        self.map_scalar(Scalar::to_f64)
    }

    /// Human-readable `{a,b}: m` lines.
    pub fn describe(&self) -> String {
        self.focal
            .iter()
            .map(|(set, m)| format!("{}: {}", self.frame.describe(*set), m))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl MassFunction<f64> {
    pub fn from_rational(m: &MassFunction<Rational>) -> Self {
        m.to_float()
    }
}

impl<S: Scalar> fmt::Debug for MassFunction<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MassFunction[{}]", self.describe())
    }
}

pub(crate) fn ensure_dense(frame: &Frame) -> Result<()> {
    if frame.size() > MAX_FRAME_SIZE {
        return Err(Error::FrameTooLarge {
            size: frame.size(),
            limit: MAX_FRAME_SIZE,
        });
    }
    Ok(())
}

/// In-place subset sums: `v[A] ← Σ_{C ⊆ A} v[C]`.
pub fn zeta_transform<S: Scalar>(values: &mut [S]) {
    let n = values.len();
    debug_assert!(n.is_power_of_two());
    let mut bit = 1;
    while bit < n {
        for set in 0..n {
            if set & bit != 0 {
                let lower = values[set ^ bit].clone();
                values[set] = values[set].clone() + lower;
            }
        }
        bit <<= 1;
    }
}

/// In-place inverse of [`zeta_transform`]: `v[A] ← Σ_{C ⊆ A} (−1)^{|A|−|C|} v[C]`.
pub fn mobius_transform<S: Scalar>(values: &mut [S]) {
    let n = values.len();
    debug_assert!(n.is_power_of_two());
    let mut bit = 1;
    while bit < n {
        for set in 0..n {
            if set & bit != 0 {
                let lower = values[set ^ bit].clone();
                values[set] = values[set].clone() - lower;
            }
        }
        bit <<= 1;
    }
}

/// A dense function on all subsets of a frame.
#[derive(Clone, PartialEq)]
pub struct SetFunction<S> {
    frame: Frame,
    values: Vec<S>,
}

impl<S: Scalar> SetFunction<S> {
    pub fn new(frame: Frame, values: Vec<S>) -> Result<Self> {
        ensure_dense(&frame)?;
        if values.len() != frame.subset_count() {
            return Err(Error::InvalidArgument(format!(
                "set function needs {} values, got {}",
                frame.subset_count(),
                values.len()
            )));
        }
        Ok(SetFunction { frame, values })
    }

    pub fn zeros(frame: Frame) -> Result<Self> {
        ensure_dense(&frame)?;
        let values = vec![S::zero(); frame.subset_count()];
        Ok(SetFunction { frame, values })
    }

    pub fn from_fn(frame: Frame, f: impl Fn(SubsetMask) -> S) -> Result<Self> {
        ensure_dense(&frame)?;
        let values = frame.subsets().map(f).collect();
        Ok(SetFunction { frame, values })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn get(&self, set: SubsetMask) -> &S {
        assert_eq!(set.frame_size(), self.frame.size(), "subset from another frame");
        &self.values[set.index()]
    }

    pub fn set(&mut self, set: SubsetMask, value: S) {
        assert_eq!(set.frame_size(), self.frame.size(), "subset from another frame");
        self.values[set.index()] = value;
    }

    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T) -> SetFunction<T> {
        SetFunction {
            frame: self.frame.clone(),
            values: self.values.iter().map(f).collect(),
        }
    }

    pub fn to_float(&self) -> SetFunction<f64> {
        self.map_scalar(Scalar::to_f64)
    }

    /// Raw alternating-sum transform, without any validity checks.
    pub fn mobius_values(&self) -> Vec<S> {
        let mut values = self.values.clone();
        mobius_transform(&mut values);
        values
    }

    /// Recover the mass function whose belief table is `self`.
    pub fn mobius_inverse(&self) -> Result<MassFunction<S>> {
        let empty_value = &self.values[0];
        if !empty_value.is_negligible() {
            return Err(Error::NonzeroEmptySet(empty_value.to_string()));
        }
        let masses = self.mobius_values();
        if let Some((index, mass)) = masses
            .iter()
            .enumerate()
            .find(|(_, m)| m.is_negative_beyond_tolerance())
        {
            let set = SubsetMask::new_unchecked(index as u32, self.frame.size());
            return Err(Error::NotABeliefFunction {
                set: self.frame.describe(set),
                mass: mass.to_string(),
            });
        }
        let entries = masses
            .into_iter()
            .enumerate()
            .skip(1)
            .filter(|(_, m)| !m.is_negligible())
            .map(|(index, m)| (SubsetMask::new_unchecked(index as u32, self.frame.size()), m));
        MassFunction::new(self.frame.clone(), entries)
    }

    /// Belief-function test: Möbius nonnegativity decides, a failing
    /// 2-monotonicity pair is reported as a witness when one exists.
    pub fn is_belief_function(&self) -> BeliefCheck<S> {
        let size = self.frame.size();
        let empty_ok = self.values[0].is_negligible();
        let top_ok = self.values[self.frame.full().index()].same(&S::one());
        let masses = self.mobius_values();
        let negative_mass = masses
            .iter()
            .enumerate()
            .find(|(_, m)| m.is_negative_beyond_tolerance())
            .map(|(index, m)| (SubsetMask::new_unchecked(index as u32, size), m.clone()));
        let is_belief = empty_ok && top_ok && negative_mass.is_none();
        let two_monotone_violation = if is_belief || size > WITNESS_SEARCH_LIMIT {
            None
        } else {
            self.two_monotone_violation()
        };
        BeliefCheck {
            is_belief,
            empty_value_ok: empty_ok,
            top_value_ok: top_ok,
            negative_mass,
            two_monotone_violation,
        }
    }

    /// First pair `(A, B)` in mask order with `f(A∪B) + f(A∩B) < f(A) + f(B)`.
    pub fn two_monotone_violation(&self) -> Option<(SubsetMask, SubsetMask)> {
        let size = self.frame.size();
        let count = self.frame.subset_count() as u32;
        for a in 0..count {
            for b in (a + 1)..count {
                if a & b == a || a & b == b {
                    continue;
                }
                let lhs = self.values[(a | b) as usize].clone() + self.values[(a & b) as usize].clone();
                let rhs = self.values[a as usize].clone() + self.values[b as usize].clone();
                if !lhs.at_least(&rhs) {
                    return Some((
                        SubsetMask::new_unchecked(a, size),
                        SubsetMask::new_unchecked(b, size),
                    ));
                }
            }
        }
        None
    }
}

impl<S: Scalar> fmt::Debug for SetFunction<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = self
            .frame
            .subsets()
            .map(|s| format!("{}: {}", self.frame.describe(s), self.values[s.index()]))
            .collect();
        write!(f, "SetFunction[{}]", entries.join(", "))
    }
}

/// Pair search for the 2-monotonicity witness is quadratic in `2^n`.
const WITNESS_SEARCH_LIMIT: usize = 10;

/// Outcome of [`SetFunction::is_belief_function`].
#[derive(Clone, Debug, PartialEq)]
pub struct BeliefCheck<S> {
    pub is_belief: bool,
    pub empty_value_ok: bool,
    pub top_value_ok: bool,
    /// First set (mask order) with negative Möbius mass.
    pub negative_mass: Option<(SubsetMask, S)>,
    /// A pair breaking `f(A∪B) + f(A∩B) ≥ f(A) + f(B)`, when searched and found.
    pub two_monotone_violation: Option<(SubsetMask, SubsetMask)>,
}

/// Point masses on outcomes, `P(A) = Σ_{ω∈A} p(ω)`.
#[derive(Clone, PartialEq)]
pub struct ProbabilityDistribution<S> {
    frame: Frame,
    weights: Vec<S>,
}

impl<S: Scalar> ProbabilityDistribution<S> {
    pub fn new(frame: Frame, weights: Vec<S>) -> Result<Self> {
        if weights.len() != frame.size() {
            return Err(Error::InvalidArgument(format!(
                "distribution needs {} weights, got {}",
                frame.size(),
                weights.len()
            )));
        }
        let total = S::sum(&weights);
        if weights.iter().any(Scalar::is_negative_beyond_tolerance)
            || !(total.clone() - S::one()).is_negligible()
        {
            return Err(Error::InvalidDistribution {
                total: total.to_string(),
            });
        }
        Ok(ProbabilityDistribution { frame, weights })
    }

    pub(crate) fn new_unchecked(frame: Frame, weights: Vec<S>) -> Self {
        ProbabilityDistribution { frame, weights }
    }

    pub fn uniform(frame: Frame) -> Self {
        let n = frame.size();
        let weights = vec![S::one() / S::from_ratio(n as i64, 1); n];
        ProbabilityDistribution { frame, weights }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn weights(&self) -> &[S] {
        &self.weights
    }

    pub fn weight(&self, outcome: usize) -> &S {
        &self.weights[outcome]
    }

    pub fn probability(&self, set: SubsetMask) -> S {
        set.elements()
            .fold(S::zero(), |acc, i| acc + self.weights[i].clone())
    }

    pub fn measure(&self) -> Result<SetFunction<S>> {
        SetFunction::from_fn(self.frame.clone(), |set| self.probability(set))
    }
}

impl<S: Scalar> fmt::Debug for ProbabilityDistribution<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = self
            .weights
            .iter()
            .enumerate()
            .map(|(i, w)| format!("{}: {}", self.frame.label(i), w))
            .collect();
        write!(f, "Distribution[{}]", entries.join(", "))
    }
}
