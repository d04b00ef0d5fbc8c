//! Two-factor product frames, marginals and independence.
//!
//! Pair `(i, j)` of `left × right` has index `i·|right| + j` and label `"li:rj"`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::frame::{Frame, SubsetMask, MAX_FRAME_SIZE};
use crate::mass::{MassFunction, SetFunction};
use crate::par::{self, Execution};
use crate::scalar::Scalar;

/// Separator between coordinate labels in product outcomes.
pub const PAIR_SEPARATOR: char = ':';

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductFrame {
    left: Frame,
    right: Frame,
    product: Frame,
}

impl ProductFrame {
    pub fn new(left: Frame, right: Frame) -> Result<Self> {
        let size = left.size() * right.size();
        if size > MAX_FRAME_SIZE {
            return Err(Error::FrameTooLarge {
                size,
                limit: MAX_FRAME_SIZE,
            });
        }
        let labels = left
            .labels()
            .iter()
            .flat_map(|l| right.labels().iter().map(move |r| format!("{l}{PAIR_SEPARATOR}{r}")));
        let product = Frame::new(labels)?;
        Ok(ProductFrame { left, right, product })
    }

    /// `Ω × Ω`.
    pub fn square(frame: Frame) -> Result<Self> {
        Self::new(frame.clone(), frame)
    }

    pub fn left(&self) -> &Frame {
        &self.left
    }

    pub fn right(&self) -> &Frame {
        &self.right
    }

    pub fn product(&self) -> &Frame {
        &self.product
    }

    pub fn factor(&self, axis: Axis) -> &Frame {
        match axis {
            Axis::Left => &self.left,
            Axis::Right => &self.right,
        }
    }

    pub fn pair_index(&self, left: usize, right: usize) -> usize {
        left * self.right.size() + right
    }

    pub fn coordinates(&self, index: usize) -> (usize, usize) {
        (index / self.right.size(), index % self.right.size())
    }

    /// `A × B`.
    pub fn rectangle(&self, left: SubsetMask, right: SubsetMask) -> SubsetMask {
        assert_eq!(left.frame_size(), self.left.size());
        assert_eq!(right.frame_size(), self.right.size());
        let mut bits = 0u32;
        for i in left.elements() {
            for j in right.elements() {
                bits |= 1 << self.pair_index(i, j);
            }
        }
        SubsetMask::new_unchecked(bits, self.product.size())
    }

    /// `{X ∈ A}` (axis left) or `{Y ∈ B}` (axis right).
    pub fn cylinder(&self, axis: Axis, set: SubsetMask) -> SubsetMask {
        match axis {
            Axis::Left => self.rectangle(set, self.right.full()),
            Axis::Right => self.rectangle(self.left.full(), set),
        }
    }

    /// Coordinate projection of a product subset.
    pub fn project(&self, axis: Axis, set: SubsetMask) -> SubsetMask {
        assert_eq!(set.frame_size(), self.product.size());
        let mut bits = 0u32;
        for index in set.elements() {
            let (i, j) = self.coordinates(index);
            bits |= 1 << match axis {
                Axis::Left => i,
                Axis::Right => j,
            };
        }
        SubsetMask::new_unchecked(bits, self.factor(axis).size())
    }

    /// `C = X(C) × Y(C)`.
    pub fn is_rectangle(&self, set: SubsetMask) -> bool {
        set == self.rectangle(self.project(Axis::Left, set), self.project(Axis::Right, set))
    }

    /// `{(ω, ω)}` for square products.
    pub fn diagonal(&self) -> Result<SubsetMask> {
        if !self.left.same_as(&self.right) {
            return Err(Error::FrameMismatch);
        }
        let bits = (0..self.left.size()).fold(0u32, |acc, i| acc | 1 << self.pair_index(i, i));
        Ok(SubsetMask::new_unchecked(bits, self.product.size()))
    }

    fn ensure_product(&self, frame: &Frame) -> Result<()> {
        self.product.ensure_same(frame)
    }
}

/// Marginal mass: `m₁(A) = Σ_{C : X(C) = A} m(C)`.
pub fn marginal<S: Scalar>(pf: &ProductFrame, m: &MassFunction<S>, axis: Axis) -> Result<MassFunction<S>> {
    pf.ensure_product(m.frame())?;
    let mut focal: BTreeMap<SubsetMask, S> = BTreeMap::new();
    for (set, mass) in m.focal() {
        let slot = focal.entry(pf.project(axis, set)).or_insert_with(S::zero);
        *slot = slot.clone() + mass.clone();
    }
    Ok(MassFunction::from_focal_unchecked(pf.factor(axis).clone(), focal))
}

/// The independent product `m(A × B) = m₁(A) m₂(B)`.
pub fn independent_product<S: Scalar>(
    pf: &ProductFrame,
    left: &MassFunction<S>,
    right: &MassFunction<S>,
) -> Result<MassFunction<S>> {
    pf.left.ensure_same(left.frame())?;
    pf.right.ensure_same(right.frame())?;
    let mut focal = BTreeMap::new();
    for (a, ma) in left.focal() {
        for (b, mb) in right.focal() {
            focal.insert(pf.rectangle(a, b), ma.clone() * mb.clone());
        }
    }
    Ok(MassFunction::from_focal_unchecked(pf.product.clone(), focal))
}

/// The three independence characterizations plus the rectangle condition,
/// each evaluated by a dense scan over `A ⊆ Ω₁`, `B ⊆ Ω₂`.
#[derive(Clone, Debug, PartialEq)]
pub struct IndependenceReport<S: Scalar> {
    pub concentrates_on_rectangles: bool,
    /// `B_{Y∈B}(X∈A) = B(X∈A)` wherever defined, and the same with the axes swapped.
    pub cond_invariance: bool,
    /// `B(X∈A; Y∈B) = B(X∈A) B(Y∈B)`.
    pub product_form: bool,
    /// `m(A × B) = m₁(A) m₂(B)`.
    pub mass_factorizes: bool,
    pub left_marginal: MassFunction<S>,
    pub right_marginal: MassFunction<S>,
}

impl<S: Scalar> IndependenceReport<S> {
    /// Statement (1) in full: rectangles plus conditional invariance.
    pub fn conditional_characterization(&self) -> bool {
        self.concentrates_on_rectangles && self.cond_invariance
    }

    /// Statement (2) in full: rectangles plus product form.
    pub fn product_characterization(&self) -> bool {
        self.concentrates_on_rectangles && self.product_form
    }
}

pub fn check_independence<S: Scalar>(pf: &ProductFrame, m: &MassFunction<S>) -> Result<IndependenceReport<S>> {
    check_independence_with(pf, m, Execution::default())
}

pub fn check_independence_with<S: Scalar>(
    pf: &ProductFrame,
    m: &MassFunction<S>,
    exec: Execution,
) -> Result<IndependenceReport<S>> {
    pf.ensure_product(m.frame())?;
    let table = m.belief_table()?;
    let left_marginal = marginal(pf, m, Axis::Left)?;
    let right_marginal = marginal(pf, m, Axis::Right)?;
    let concentrates_on_rectangles = m.focal().all(|(c, _)| pf.is_rectangle(c));

    let lefts: Vec<SubsetMask> = pf.left.subsets().collect();
    let rights: Vec<SubsetMask> = pf.right.subsets().collect();
    let left_count = lefts.len() as u64;

    let cond_invariance = par::all_range(exec, 0..left_count, |ai| {
        let a = lefts[ai as usize];
        rights.iter().all(|&b| {
            invariant_under(&table, pf.cylinder(Axis::Right, b), pf.cylinder(Axis::Left, a))
                && invariant_under(&table, pf.cylinder(Axis::Left, a), pf.cylinder(Axis::Right, b))
        })
    });
    let product_form = par::all_range(exec, 0..left_count, |ai| {
        let a = lefts[ai as usize];
        let x = table.get(pf.cylinder(Axis::Left, a)).clone();
        rights.iter().all(|&b| {
            let y = table.get(pf.cylinder(Axis::Right, b)).clone();
            table.get(pf.rectangle(a, b)).same(&(x.clone() * y))
        })
    });
    let mass_factorizes = par::all_range(exec, 0..left_count, |ai| {
        let a = lefts[ai as usize];
        let ma = left_marginal.mass(a);
        rights
            .iter()
            .all(|&b| m.mass(pf.rectangle(a, b)).same(&(ma.clone() * right_marginal.mass(b))))
    });
    Ok(IndependenceReport {
        concentrates_on_rectangles,
        cond_invariance,
        product_form,
        mass_factorizes,
        left_marginal,
        right_marginal,
    })
}

/// `B_H(E) = B(E)` from a belief table, or vacuously true when `B(Hᶜ) = 1`.
fn invariant_under<S: Scalar>(table: &SetFunction<S>, hypothesis: SubsetMask, event: SubsetMask) -> bool {
    let outside = !hypothesis;
    let belief_outside = table.get(outside).clone();
    let denominator = S::one() - belief_outside.clone();
    if denominator.vanishes_as_denominator() {
        return true;
    }
    let conditional = (table.get(event | outside).clone() - belief_outside) / denominator;
    conditional.same(table.get(event))
}
