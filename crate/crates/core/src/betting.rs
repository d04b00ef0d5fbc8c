//! Coherence checks for price assignments on subsets.
//!
//! A family buys a bet on each `A_i` and sells one on each `B_j`, every bet
//! paying 1 when its set obtains. Under `P2` the premise compares the
//! payoffs outcome by outcome; under `B2*` it compares, for every `S ⊆ Ω`,
//! how many bought and sold sets contain `S`. Whenever the premise holds
//! the prices must satisfy `Σ P(A_i) ≥ Σ P(B_j)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::frame::{Frame, SubsetMask};
use crate::mass::SetFunction;
use crate::par::{self, Execution};
use crate::scalar::Scalar;

pub const MAX_SEARCH_BETS: usize = 3;
pub const MAX_SEARCH_FRAME: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BetFamily {
    pub buys: Vec<SubsetMask>,
    pub sells: Vec<SubsetMask>,
}

impl BetFamily {
    pub fn new(buys: Vec<SubsetMask>, sells: Vec<SubsetMask>) -> Self {
        BetFamily { buys, sells }
    }

    pub fn describe(&self, frame: &Frame) -> String {
        let side = |sets: &[SubsetMask]| sets.iter().map(|s| frame.describe(*s)).collect::<Vec<_>>().join(" ");
        format!("buy [{}] sell [{}]", side(&self.buys), side(&self.sells))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BettingMode {
    P2,
    B2Star,
}

impl fmt::Display for BettingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BettingMode::P2 => "p2",
            BettingMode::B2Star => "b2star",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    PremiseFails,
    ConstraintHolds,
    Violation,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::PremiseFails => "premise fails",
            Verdict::ConstraintHolds => "constraint holds",
            Verdict::Violation => "violation",
        })
    }
}

fn ensure_family(frame: &Frame, fam: &BetFamily) -> Result<()> {
    fam.buys.iter().chain(&fam.sells).try_for_each(|s| frame.ensure_owns(*s))
}

fn count_containing(sets: &[SubsetMask], s: SubsetMask) -> usize {
    sets.iter().filter(|a| s.within(**a)).count()
}

fn p2_premise(size: usize, fam: &BetFamily) -> bool {
    (0..size).all(|w| {
        let w = SubsetMask::singleton(w, size);
        count_containing(&fam.buys, w) >= count_containing(&fam.sells, w)
    })
}

fn b2star_premise(size: usize, fam: &BetFamily) -> bool {
    (0..1u32 << size).all(|bits| {
        let s = SubsetMask::new_unchecked(bits, size);
        count_containing(&fam.buys, s) >= count_containing(&fam.sells, s)
    })
}

fn verdict<S: Scalar>(prices: &SetFunction<S>, fam: &BetFamily, premise: bool) -> Verdict {
    if !premise {
        return Verdict::PremiseFails;
    }
    let paid = S::sum(fam.buys.iter().map(|a| prices.get(*a)));
    let received = S::sum(fam.sells.iter().map(|b| prices.get(*b)));
    if paid.at_least(&received) {
        Verdict::ConstraintHolds
    } else {
        Verdict::Violation
    }
}

pub fn check_p2<S: Scalar>(prices: &SetFunction<S>, fam: &BetFamily) -> Result<Verdict> {
    ensure_family(prices.frame(), fam)?;
    Ok(verdict(prices, fam, p2_premise(prices.frame().size(), fam)))
}

pub fn check_b2star<S: Scalar>(prices: &SetFunction<S>, fam: &BetFamily) -> Result<Verdict> {
    ensure_family(prices.frame(), fam)?;
    Ok(verdict(prices, fam, b2star_premise(prices.frame().size(), fam)))
}

pub fn check<S: Scalar>(prices: &SetFunction<S>, fam: &BetFamily, mode: BettingMode) -> Result<Verdict> {
    match mode {
        BettingMode::P2 => check_p2(prices, fam),
        BettingMode::B2Star => check_b2star(prices, fam),
    }
}

/// Non-decreasing index sequences of length `len` over `0..count`, in
/// lexicographic order.
pub fn multisets(count: u32, len: usize) -> Vec<Vec<u32>> {
    fn extend(count: u32, len: usize, from: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        for i in from..count {
            prefix.push(i);
            extend(count, len, i, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(count, len, 0, &mut Vec::with_capacity(len), &mut out);
    out
}

pub fn find_violation<S: Scalar>(
    prices: &SetFunction<S>,
    max_bets: usize,
    mode: BettingMode,
) -> Result<Option<BetFamily>> {
    find_violation_with(prices, max_bets, mode, Execution::default())
}

/// First violating family in the order (total bets, buys count, buys, sells),
/// with sets compared by mask. Families that buy and sell the same set are
/// skipped: cancelling the pair leaves a smaller family with the same verdict.
pub fn find_violation_with<S: Scalar>(
    prices: &SetFunction<S>,
    max_bets: usize,
    mode: BettingMode,
    exec: Execution,
) -> Result<Option<BetFamily>> {
    let size = prices.frame().size();
    if size > MAX_SEARCH_FRAME {
        return Err(Error::FrameTooLarge {
            size,
            limit: MAX_SEARCH_FRAME,
        });
    }
    if max_bets > MAX_SEARCH_BETS {
        return Err(Error::InvalidArgument(format!(
            "max_bets = {max_bets} exceeds {MAX_SEARCH_BETS}"
        )));
    }
    let count = 1u32 << size;
    let by_len: Vec<Vec<Vec<u32>>> = (0..=max_bets).map(|len| multisets(count, len)).collect();
    let to_masks = |ids: &[u32]| -> Vec<SubsetMask> {
        ids.iter().map(|&b| SubsetMask::new_unchecked(b, size)).collect()
    };
    for total in 1..=2 * max_bets {
        for buys_len in total.saturating_sub(max_bets)..=total.min(max_bets) {
            let buy_choices = &by_len[buys_len];
            let sell_choices = &by_len[total - buys_len];
            let found = par::find_first_range(exec, 0..buy_choices.len() as u64, |bi| {
                let buys = &buy_choices[bi as usize];
                sell_choices.iter().find_map(|sells| {
                    if sells.iter().any(|s| buys.contains(s)) {
                        return None;
                    }
                    let fam = BetFamily::new(to_masks(buys), to_masks(sells));
                    let premise = match mode {
                        BettingMode::P2 => p2_premise(size, &fam),
                        BettingMode::B2Star => b2star_premise(size, &fam),
                    };
                    (verdict(prices, &fam, premise) == Verdict::Violation).then_some(fam)
                })
            });
            if found.is_some() {
                return Ok(found);
            }
        }
    }
    Ok(None)
}
