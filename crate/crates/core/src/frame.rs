//! Finite outcome spaces and their subsets.
//!
//! Outcome `i` of a frame is bit `i` of a [`SubsetMask`]. The index is the
//! position of the label as given, never a sorted order, so masks printed
//! in logs can be read off the model file directly.

use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest frame for which dense `2^n` tables are built.
pub const MAX_FRAME_SIZE: usize = 24;

/// An ordered finite outcome space.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Frame {
    labels: Arc<[String]>,
}

impl Frame {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyFrame);
        }
        if labels.len() > MAX_FRAME_SIZE {
            return Err(Error::FrameTooLarge {
                size: labels.len(),
                limit: MAX_FRAME_SIZE,
            });
        }
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() {
                return Err(Error::EmptyLabel);
            }
            if labels[..i].contains(label) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Frame {
            labels: labels.into(),
        })
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Number of subsets, `2^size`.
    pub fn subset_count(&self) -> usize {
        1usize << self.size()
    }

    pub fn empty(&self) -> SubsetMask {
        SubsetMask::empty(self.size())
    }

    pub fn full(&self) -> SubsetMask {
        SubsetMask::full(self.size())
    }

    pub fn singleton(&self, index: usize) -> SubsetMask {
        SubsetMask::singleton(index, self.size())
    }

    /// Encode a list of labels; duplicates collapse.
    pub fn subset<I, S>(&self, members: I) -> Result<SubsetMask>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut bits = 0u32;
        for member in members {
            bits |= 1 << self.index_of(member.as_ref())?;
        }
        Ok(SubsetMask::new_unchecked(bits, self.size()))
    }

    pub fn mask(&self, bits: u32) -> Result<SubsetMask> {
        SubsetMask::new(bits, self.size())
    }

    /// Labels of the members of `set`, in frame order.
    pub fn members(&self, set: SubsetMask) -> Vec<&str> {
        set.elements().map(|i| self.label(i)).collect()
    }

    /// `{a,b}` style rendering of a subset.
    pub fn describe(&self, set: SubsetMask) -> String {
        format!("{{{}}}", self.members(set).join(","))
    }

    /// Every subset in increasing mask order.
    pub fn subsets(&self) -> impl Iterator<Item = SubsetMask> {
        let size = self.size();
        (0..(1u32 << size)).map(move |bits| SubsetMask::new_unchecked(bits, size))
    }

    pub fn same_as(&self, other: &Frame) -> bool {
        Arc::ptr_eq(&self.labels, &other.labels) || self.labels == other.labels
    }

    pub fn ensure_same(&self, other: &Frame) -> Result<()> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(Error::FrameMismatch)
        }
    }

    pub fn ensure_owns(&self, set: SubsetMask) -> Result<()> {
        if set.frame_size() == self.size() {
            Ok(())
        } else {
            Err(Error::FrameMismatch)
        }
    }
}

impl fmt::Debug for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Frame").field(&self.labels).finish()
    }
}

/// A subset of a frame of known size, one bit per outcome.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetMask {
    // field order gives ordering by frame size first, then bits
    size: u8,
    bits: u32,
}

impl SubsetMask {
    pub fn new(bits: u32, frame_size: usize) -> Result<Self> {
        if frame_size == 0 || frame_size > MAX_FRAME_SIZE {
            return Err(Error::FrameTooLarge {
                size: frame_size,
                limit: MAX_FRAME_SIZE,
            });
        }
        if u64::from(bits) >= 1u64 << frame_size {
            return Err(Error::MaskOutOfRange {
                bits,
                size: frame_size,
            });
        }
        Ok(Self::new_unchecked(bits, frame_size))
    }

    pub(crate) fn new_unchecked(bits: u32, frame_size: usize) -> Self {
        debug_assert!(frame_size <= MAX_FRAME_SIZE);
        debug_assert!(u64::from(bits) < 1u64 << frame_size);
        SubsetMask {
            size: frame_size as u8,
            bits,
        }
    }

    pub fn empty(frame_size: usize) -> Self {
        Self::new_unchecked(0, frame_size)
    }

    pub fn full(frame_size: usize) -> Self {
        Self::new_unchecked(((1u64 << frame_size) - 1) as u32, frame_size)
    }

    pub fn singleton(index: usize, frame_size: usize) -> Self {
        assert!(index < frame_size, "outcome {index} outside frame of size {frame_size}");
        Self::new_unchecked(1 << index, frame_size)
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn index(self) -> usize {
        self.bits as usize
    }

    pub fn frame_size(self) -> usize {
        self.size as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn is_full(self) -> bool {
        self == Self::full(self.frame_size())
    }

    pub fn cardinality(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn contains(self, index: usize) -> bool {
        index < self.frame_size() && self.bits & (1 << index) != 0
    }

    /// Member indices in increasing order.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let mut rest = self.bits;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    /// All subsets of `self`, including `∅` and `self`, in increasing order.
    pub fn subsets(self) -> impl Iterator<Item = SubsetMask> {
        let size = self.frame_size();
        let top = self.bits;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let current = next?;
            next = if current == top {
                None
            } else {
                Some(((current | !top).wrapping_add(1)) & top)
            };
            Some(SubsetMask::new_unchecked(current, size))
        })
    }

    fn check(self, other: SubsetMask) -> Result<()> {
        if self.size == other.size {
            Ok(())
        } else {
            Err(Error::FrameMismatch)
        }
    }

    pub fn union(self, other: SubsetMask) -> Result<SubsetMask> {
        self.check(other)?;
        Ok(self | other)
    }

    pub fn intersection(self, other: SubsetMask) -> Result<SubsetMask> {
        self.check(other)?;
        Ok(self & other)
    }

    pub fn difference(self, other: SubsetMask) -> Result<SubsetMask> {
        self.check(other)?;
        Ok(self - other)
    }

    pub fn complement(self) -> SubsetMask {
        !self
    }

    pub fn is_subset_of(self, other: SubsetMask) -> Result<bool> {
        self.check(other)?;
        Ok(self.within(other))
    }

    pub fn is_disjoint_from(self, other: SubsetMask) -> Result<bool> {
        self.check(other)?;
        Ok(self.bits & other.bits == 0)
    }

    /// Unchecked `self ⊆ other`; callers guarantee a shared frame.
    pub(crate) fn within(self, other: SubsetMask) -> bool {
        debug_assert_eq!(self.size, other.size);
        self.bits & !other.bits == 0
    }

    pub(crate) fn meets(self, other: SubsetMask) -> bool {
        debug_assert_eq!(self.size, other.size);
        self.bits & other.bits != 0
    }
}

// Operators panic on frame mismatch; the `Result` methods above are the
// checked surface.
impl BitOr for SubsetMask {
    type Output = SubsetMask;
    fn bitor(self, rhs: SubsetMask) -> SubsetMask {
        assert_eq!(self.size, rhs.size, "subset masks from different frames");
        SubsetMask::new_unchecked(self.bits | rhs.bits, self.frame_size())
    }
}

impl BitAnd for SubsetMask {
    type Output = SubsetMask;
    fn bitand(self, rhs: SubsetMask) -> SubsetMask {
        assert_eq!(self.size, rhs.size, "subset masks from different frames");
        SubsetMask::new_unchecked(self.bits & rhs.bits, self.frame_size())
    }
}

impl Sub for SubsetMask {
    type Output = SubsetMask;
    fn sub(self, rhs: SubsetMask) -> SubsetMask {
        assert_eq!(self.size, rhs.size, "subset masks from different frames");
        SubsetMask::new_unchecked(self.bits & !rhs.bits, self.frame_size())
    }
}

impl Not for SubsetMask {
    type Output = SubsetMask;
    fn not(self) -> SubsetMask {
        SubsetMask::new_unchecked(!self.bits & Self::full(self.frame_size()).bits, self.frame_size())
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0width$b}", self.bits, width = self.frame_size())
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0b{:0width$b}", self.bits, width = self.frame_size())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fms() -> Frame {
        Frame::new(["F", "M", "S"]).unwrap()
    }

    #[test]
    fn build_frame_examples() {
        let frame = Frame::new(["guilty", "innocent"]).unwrap();
        assert_eq!(frame.size(), 2);
        assert_eq!(Frame::new(["a"]).unwrap().size(), 1);
        assert_eq!(Frame::new(["a", "a"]), Err(Error::DuplicateLabel("a".into())));
        assert_eq!(Frame::new(["a", ""]), Err(Error::EmptyLabel));
        assert_eq!(Frame::new(Vec::<String>::new()), Err(Error::EmptyFrame));
        let big: Vec<String> = (0..25).map(|i| format!("w{i}")).collect();
        assert!(matches!(Frame::new(big), Err(Error::FrameTooLarge { size: 25, .. })));
        let ok: Vec<String> = (0..24).map(|i| format!("w{i}")).collect();
        assert_eq!(Frame::new(ok).unwrap().size(), 24);
    }

    #[test]
    fn encode_subset_examples() {
        let frame = fms();
        assert_eq!(frame.subset(["F", "M"]).unwrap().bits(), 0b011);
        assert_eq!(frame.subset(["M", "F", "M"]).unwrap().bits(), 0b011);
        assert!(frame.subset(Vec::<&str>::new()).unwrap().is_empty());
        assert_eq!(frame.subset(["X"]), Err(Error::UnknownLabel("X".into())));
        assert_eq!(frame.describe(frame.subset(["S", "F"]).unwrap()), "{F,S}");
    }

    #[test]
    fn set_algebra_examples() {
        let frame = fms();
        assert!(frame.full().complement().is_empty());
        let a = frame.mask(0b011).unwrap();
        let b = frame.mask(0b110).unwrap();
        assert_eq!(a.intersection(b).unwrap().bits(), 0b010);
        assert!(frame.mask(0b010).unwrap().is_subset_of(a).unwrap());
        let other = SubsetMask::full(2);
        assert_eq!(a.union(other), Err(Error::FrameMismatch));
        assert_eq!(a.is_subset_of(other), Err(Error::FrameMismatch));
        assert!(frame.mask(0b1000).is_err());
    }

    #[test]
    fn subset_enumeration_is_complete() {
        let set = SubsetMask::new(0b1011, 4).unwrap();
        let subs: Vec<u32> = set.subsets().map(|s| s.bits()).collect();
        assert_eq!(subs, vec![0, 1, 2, 3, 8, 9, 10, 11]);
        assert_eq!(SubsetMask::empty(3).subsets().count(), 1);
        assert_eq!(SubsetMask::full(24).elements().count(), 24);
    }

    proptest! {
        #[test]
        fn lattice_laws(size in 1usize..=8, a in any::<u32>(), b in any::<u32>()) {
            let top = (1u32 << size) - 1;
            let a = SubsetMask::new(a & top, size).unwrap();
            let b = SubsetMask::new(b & top, size).unwrap();
            prop_assert!((a & b).is_subset_of(a).unwrap());
            prop_assert!(a.is_subset_of(a | b).unwrap());
            prop_assert_eq!(!!a, a);
            prop_assert_eq!(a.cardinality() + (!a).cardinality(), size);
            prop_assert_eq!(a - b, a & !b);
        }
    }
}
