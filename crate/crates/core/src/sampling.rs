//! Random rational models for property sweeps and benchmarks.
//!
//! Masses use between one and four focal sets drawn without replacement
//! from the nonempty subsets, with weights `parts/d` where `d ≤ 12` is split
//! into positive integer parts. Small denominators keep exact arithmetic
//! cheap.

use rand::seq::index::sample;
use rand::Rng;

use crate::frame::{Frame, SubsetMask};
use crate::mass::{MassFunction, ProbabilityDistribution, SetFunction};
use crate::scalar::{ratio, Rational};

pub const MAX_DENOMINATOR: usize = 12;
pub const MAX_FOCAL_SETS: usize = 4;

/// Frame `{w0, …, w(n−1)}`.
pub fn generic_frame(size: usize) -> Frame {
    Frame::new((0..size).map(|i| format!("w{i}"))).expect("generic frame size within limits")
}

/// A uniformly random composition of `total` into `parts` positive integers.
pub fn random_composition<R: Rng + ?Sized>(rng: &mut R, total: usize, parts: usize) -> Vec<usize> {
    assert!(parts >= 1 && total >= parts);
    let mut cuts: Vec<usize> = sample(rng, total - 1, parts - 1)
        .into_iter()
        .map(|c| c + 1)
        .collect();
    cuts.sort_unstable();
    let mut out = Vec::with_capacity(parts);
    let mut prev = 0;
    for cut in cuts.into_iter().chain(std::iter::once(total)) {
        out.push(cut - prev);
        prev = cut;
    }
    out
}

fn random_weights<R: Rng + ?Sized>(rng: &mut R, k: usize) -> Vec<Rational> {
    let denominator = rng.random_range(k..=MAX_DENOMINATOR);
    random_composition(rng, denominator, k)
        .into_iter()
        .map(|part| ratio(part as i64, denominator as i64))
        .collect()
}

/// Random mass function on `generic_frame(size)`.
pub fn random_mass<R: Rng + ?Sized>(rng: &mut R, size: usize) -> MassFunction<Rational> {
    random_mass_on(rng, &generic_frame(size))
}

pub fn random_mass_on<R: Rng + ?Sized>(rng: &mut R, frame: &Frame) -> MassFunction<Rational> {
    let nonempty = frame.subset_count() - 1;
    let k = rng.random_range(1..=MAX_FOCAL_SETS.min(nonempty));
    random_mass_with(rng, frame, k)
}

/// Random mass with exactly `k` focal sets.
pub fn random_mass_with<R: Rng + ?Sized>(rng: &mut R, frame: &Frame, k: usize) -> MassFunction<Rational> {
    let nonempty = frame.subset_count() - 1;
    let sets = sample(rng, nonempty, k).into_iter().map(|i| SubsetMask::new_unchecked(i as u32 + 1, frame.size()));
    let weights = random_weights(rng, k);
    MassFunction::new(frame.clone(), sets.zip(weights)).expect("generated masses are valid")
}

/// Random mass restricted to the given candidate focal sets.
pub fn random_mass_among<R: Rng + ?Sized>(
    rng: &mut R,
    frame: &Frame,
    candidates: &[SubsetMask],
) -> MassFunction<Rational> {
    let k = rng.random_range(1..=MAX_FOCAL_SETS.min(candidates.len()));
    let chosen = sample(rng, candidates.len(), k).into_iter().map(|i| candidates[i]);
    let weights = random_weights(rng, k);
    MassFunction::new(frame.clone(), chosen.zip(weights)).expect("generated masses are valid")
}

/// Random Bayesian mass (random distribution with small denominators).
pub fn random_probability<R: Rng + ?Sized>(rng: &mut R, frame: &Frame) -> ProbabilityDistribution<Rational> {
    let n = frame.size();
    let denominator = rng.random_range(n.max(1)..=MAX_DENOMINATOR.max(n));
    // allow zero weights by composing denominator + n and shifting down
    let weights = random_composition(rng, denominator + n, n)
        .into_iter()
        .map(|part| ratio(part as i64 - 1, denominator as i64))
        .collect();
    ProbabilityDistribution::new(frame.clone(), weights).expect("generated distribution is valid")
}

/// Random set function with `f(∅) = 0`, `f(Ω) = 1` and other values `j/d`
/// in `[0, 1]`. Usually not a belief function.
pub fn random_capacity<R: Rng + ?Sized>(rng: &mut R, frame: &Frame) -> SetFunction<Rational> {
    let d = rng.random_range(1..=4i64);
    let values = frame
        .subsets()
        .map(|set| {
            if set.is_empty() {
                ratio(0, 1)
            } else if set.is_full() {
                ratio(1, 1)
            } else {
                ratio(rng.random_range(0..=d), d)
            }
        })
        .collect();
    SetFunction::new(frame.clone(), values).expect("dense table fits")
}
