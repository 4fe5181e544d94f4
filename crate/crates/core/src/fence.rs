//! Fence posets built from compositions, and the order-theoretic primitives
//! on subsets of them.
//!
//! Elements are stored 0-based (`0..n`) and rendered 1-based (`x1..xn`).
//! Segments, unshared ranks and shared indices use the 1-based numbering of
//! the usual fence notation: segment `i` ascends when `i` is odd and
//! descends when `i` is even, `s_{i,j}` is the `j`-th smallest unshared
//! element of segment `i`, and `s_i` is the element shared by segments `i`
//! and `i + 1`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{FenceError, Result};

/// Subsets are stored as `u64` bitmasks, which bounds the element count.
pub const MAX_ELEMENTS: usize = 64;

/// Default cap on the size of an enumerated family of ideals or antichains.
pub const DEFAULT_MAX_FAMILY: usize = 20_000_000;

/// A composition `(α_1, …, α_s)` describing a fence.
///
/// Valid fences need `α_1 ≥ 2` and `α_s ≥ 2`; interior parts may be 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(FenceError::InvalidComposition("no parts".into()));
        }
        if let Some(pos) = parts.iter().position(|&p| p == 0) {
            return Err(FenceError::InvalidComposition(format!(
                "part {} is 0; all parts must be positive",
                pos + 1
            )));
        }
        if parts[0] < 2 {
            return Err(FenceError::InvalidComposition(format!(
                "first part is {}; it must be at least 2",
                parts[0]
            )));
        }
        if parts[parts.len() - 1] < 2 {
            return Err(FenceError::InvalidComposition(format!(
                "last part is {}; it must be at least 2",
                parts[parts.len() - 1]
            )));
        }
        Ok(Composition { parts })
    }

    /// `(a, a, …, a)` with `s` parts.
    pub fn constant(a: usize, s: usize) -> Result<Self> {
        Composition::new(vec![a; s])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of parts `s`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `α_i` for 1-based `i`, and 0 outside `1..=s`.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 || i > self.parts.len() {
            0
        } else {
            self.parts[i - 1]
        }
    }

    /// `Σα_i − 1`, the number of elements of the fence.
    pub fn element_count(&self) -> usize {
        self.parts.iter().sum::<usize>() - 1
    }

    pub fn is_palindromic(&self) -> bool {
        self.parts.iter().eq(self.parts.iter().rev())
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.parts {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Composition {
    type Err = FenceError;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| {
                p.trim().parse::<usize>().map_err(|_| {
                    FenceError::Parse(format!("'{}' is not a positive integer", p.trim()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Composition::new(parts)
    }
}

/// What property a subset is asserted to have.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SetKind {
    Antichain,
    Ideal,
    UpperIdeal,
    /// No structural claim.
    Subset,
}

impl fmt::Display for SetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SetKind::Antichain => "an antichain",
            SetKind::Ideal => "an ideal",
            SetKind::UpperIdeal => "an upper ideal",
            SetKind::Subset => "a subset",
        })
    }
}

/// A subset of fence elements tagged with the property it has.
///
/// Values carrying `Antichain`, `Ideal` or `UpperIdeal` are only produced by
/// [`Fence`] methods that establish the property, so the tag can be trusted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    bits: u64,
    kind: SetKind,
}

impl ElementSet {
    pub(crate) fn from_bits(bits: u64, kind: SetKind) -> Self {
        ElementSet { bits, kind }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn kind(&self) -> SetKind {
        self.kind
    }

    pub fn contains(&self, x: usize) -> bool {
        x < 64 && self.bits >> x & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    /// Members in increasing order, 0-based.
    pub fn iter(&self) -> impl Iterator<Item = usize> {
        BitIter(self.bits)
    }

    /// 1-based labels, e.g. `[4, 10]` for `{x4, x10}`.
    pub fn labels(&self) -> Vec<usize> {
        self.iter().map(|x| x + 1).collect()
    }

    pub(crate) fn expect_kind(&self, expected: SetKind) -> Result<()> {
        if self.kind == expected {
            Ok(())
        } else {
            Err(FenceError::KindMismatch {
                expected,
                found: self.kind,
            })
        }
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_bits(self.bits))
    }
}

/// `{x1,x7}` style rendering of a bitmask.
pub fn format_bits(bits: u64) -> String {
    let inner: Vec<String> = BitIter(bits).map(|x| format!("x{}", x + 1)).collect();
    format!("{{{}}}", inner.join(","))
}

/// Parses `x4,x10`, `4,10` or `{x4, x10}` into 0-based element indices.
pub fn parse_element_list(s: &str) -> Result<Vec<usize>> {
    let body = s.trim().trim_start_matches('{').trim_end_matches('}').trim();
    if body.is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|tok| {
            let tok = tok.trim();
            let digits = tok.strip_prefix('x').unwrap_or(tok);
            match digits.parse::<usize>() {
                Ok(k) if k >= 1 => Ok(k - 1),
                _ => Err(FenceError::Parse(format!("'{tok}' is not an element label"))),
            }
        })
        .collect()
}

/// Iterator over the set bits of a mask, lowest first.
#[derive(Clone, Copy, Debug)]
pub struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let x = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(x)
        }
    }
}

/// Where an element sits in the segment structure (1-based indices).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Position {
    /// `s_{segment, rank}`.
    Unshared { segment: usize, rank: usize },
    /// `s_index`, shared by segments `index` and `index + 1`.
    Shared { index: usize },
}

/// A cover relation between consecutive spine elements `k` and `k + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Cover {
    /// The smaller element.
    pub lower: usize,
    /// The element covering it.
    pub upper: usize,
}

#[derive(Clone, Debug)]
struct Segment {
    first: usize,
    last: usize,
    ascending: bool,
}

/// The fence poset `F̆(α)`. Immutable after construction.
#[derive(Clone, Debug)]
pub struct Fence {
    alpha: Composition,
    n: usize,
    segments: Vec<Segment>,
    lower: Vec<u64>,
    upper: Vec<u64>,
    below: Vec<u64>,
    above: Vec<u64>,
    position: Vec<Position>,
    unshared: Vec<Vec<usize>>,
    shared: Vec<usize>,
    segment_masks: Vec<u64>,
}

impl Fence {
    pub fn new(alpha: Composition) -> Result<Self> {
        let n = alpha.element_count();
        if n > MAX_ELEMENTS {
            return Err(FenceError::TooManyElements {
                n,
                max: MAX_ELEMENTS,
            });
        }
        let s = alpha.len();

        // Segment i holds its α_i − 1 unshared elements plus the shared
        // endpoints s_{i−1} and s_i that exist.
        let mut segments = Vec::with_capacity(s);
        let mut first = 0;
        for (idx, &a) in alpha.parts().iter().enumerate() {
            let len = (a - 1) + usize::from(idx > 0) + usize::from(idx + 1 < s);
            let last = first + len - 1;
            segments.push(Segment {
                first,
                last,
                ascending: idx % 2 == 0,
            });
            first = last;
        }
        debug_assert_eq!(segments[s - 1].last + 1, n);

        let mut lower = vec![0u64; n];
        let mut upper = vec![0u64; n];
        for seg in &segments {
            for k in seg.first..seg.last {
                let (lo, hi) = if seg.ascending { (k, k + 1) } else { (k + 1, k) };
                upper[lo] |= 1 << hi;
                lower[hi] |= 1 << lo;
            }
        }

        let below = transitive(&lower);
        let above = transitive(&upper);

        let mut position = vec![Position::Shared { index: 0 }; n];
        let mut unshared = Vec::with_capacity(s);
        let mut shared = Vec::with_capacity(s.saturating_sub(1));
        let mut segment_masks = Vec::with_capacity(s);
        for (idx, seg) in segments.iter().enumerate() {
            let i = idx + 1;
            let lo = if idx > 0 { seg.first + 1 } else { seg.first };
            let hi = if idx + 1 < s { seg.last } else { seg.last + 1 };
            let mut elems: Vec<usize> = (lo..hi).collect();
            if !seg.ascending {
                elems.reverse();
            }
            for (j, &x) in elems.iter().enumerate() {
                position[x] = Position::Unshared {
                    segment: i,
                    rank: j + 1,
                };
            }
            unshared.push(elems);
            if idx + 1 < s {
                position[seg.last] = Position::Shared { index: i };
                shared.push(seg.last);
            }
            let mut mask = 0u64;
            for x in seg.first..=seg.last {
                mask |= 1 << x;
            }
            segment_masks.push(mask);
        }

        Ok(Fence {
            alpha,
            n,
            segments,
            lower,
            upper,
            below,
            above,
            position,
            unshared,
            shared,
            segment_masks,
        })
    }

    /// Convenience: parse `"4,3,4"` and build.
    pub fn parse(alpha: &str) -> Result<Self> {
        Fence::new(alpha.parse()?)
    }

    pub fn alpha(&self) -> &Composition {
        &self.alpha
    }

    /// Number of elements `n`.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Number of segments `s`.
    pub fn segment_count(&self) -> usize {
        self.alpha.len()
    }

    pub fn full_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// Cover relations in spine order.
    pub fn covers(&self) -> Vec<Cover> {
        (0..self.n.saturating_sub(1))
            .map(|k| {
                if self.upper[k] >> (k + 1) & 1 == 1 {
                    Cover {
                        lower: k,
                        upper: k + 1,
                    }
                } else {
                    Cover {
                        lower: k + 1,
                        upper: k,
                    }
                }
            })
            .collect()
    }

    pub fn lower_covers(&self, x: usize) -> u64 {
        self.lower[x]
    }

    pub fn upper_covers(&self, x: usize) -> u64 {
        self.upper[x]
    }

    /// Principal ideal of `x` (including `x`).
    pub fn principal_ideal(&self, x: usize) -> u64 {
        self.below[x]
    }

    /// Principal upper ideal of `x` (including `x`).
    pub fn principal_filter(&self, x: usize) -> u64 {
        self.above[x]
    }

    /// `x ⊴ y`.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.below[y] >> x & 1 == 1
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// Elements comparable to `x`, excluding `x`.
    pub fn comparable_mask(&self, x: usize) -> u64 {
        (self.below[x] | self.above[x]) & !(1 << x)
    }

    pub fn position(&self, x: usize) -> Position {
        self.position[x]
    }

    pub fn is_shared(&self, x: usize) -> bool {
        matches!(self.position[x], Position::Shared { .. })
    }

    /// `s_{i,j}`; `None` if out of range.
    pub fn unshared_element(&self, i: usize, j: usize) -> Option<usize> {
        self.unshared
            .get(i.checked_sub(1)?)
            .and_then(|v| v.get(j.checked_sub(1)?))
            .copied()
    }

    /// Unshared elements of segment `i`, in increasing rank.
    pub fn unshared_elements(&self, i: usize) -> &[usize] {
        i.checked_sub(1)
            .and_then(|k| self.unshared.get(k))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// `s_i` for `1 ≤ i ≤ s − 1`.
    pub fn shared_element(&self, i: usize) -> Option<usize> {
        self.shared.get(i.checked_sub(1)?).copied()
    }

    pub fn shared_elements(&self) -> &[usize] {
        &self.shared
    }

    /// All elements of segment `i` as a mask.
    pub fn segment_mask(&self, i: usize) -> u64 {
        self.segment_masks[i - 1]
    }

    /// Whether segment `i` ascends left to right.
    pub fn segment_ascends(&self, i: usize) -> bool {
        self.segments[i - 1].ascending
    }

    // Raw mask primitives, valid for arbitrary subsets.

    pub fn down_set(&self, bits: u64) -> u64 {
        BitIter(bits).fold(0, |acc, x| acc | self.below[x])
    }

    pub fn up_set(&self, bits: u64) -> u64 {
        BitIter(bits).fold(0, |acc, x| acc | self.above[x])
    }

    pub fn maxima(&self, bits: u64) -> u64 {
        BitIter(bits)
            .filter(|&x| self.upper[x] & bits == 0)
            .fold(0, |acc, x| acc | 1 << x)
    }

    pub fn minima(&self, bits: u64) -> u64 {
        BitIter(bits)
            .filter(|&x| self.lower[x] & bits == 0)
            .fold(0, |acc, x| acc | 1 << x)
    }

    pub fn is_ideal_bits(&self, bits: u64) -> bool {
        BitIter(bits).all(|x| self.lower[x] & !bits == 0)
    }

    pub fn is_upper_ideal_bits(&self, bits: u64) -> bool {
        BitIter(bits).all(|x| self.upper[x] & !bits == 0)
    }

    pub fn is_antichain_bits(&self, bits: u64) -> bool {
        BitIter(bits).all(|x| self.comparable_mask(x) & bits == 0)
    }

    fn check_range(&self, bits: u64) -> Result<()> {
        if bits & !self.full_mask() != 0 {
            Err(FenceError::ElementOutOfRange {
                index: 64 - bits.leading_zeros() as usize,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    /// Tags `bits` with `kind` after checking the property holds.
    pub fn element_set(&self, bits: u64, kind: SetKind) -> Result<ElementSet> {
        self.check_range(bits)?;
        let ok = match kind {
            SetKind::Antichain => self.is_antichain_bits(bits),
            SetKind::Ideal => self.is_ideal_bits(bits),
            SetKind::UpperIdeal => self.is_upper_ideal_bits(bits),
            SetKind::Subset => true,
        };
        if ok {
            Ok(ElementSet::from_bits(bits, kind))
        } else {
            Err(FenceError::NotInFamily(format_bits(bits), kind))
        }
    }

    /// Builds a set from 0-based element indices.
    pub fn set_of(&self, elems: &[usize], kind: SetKind) -> Result<ElementSet> {
        let mut bits = 0u64;
        for &x in elems {
            if x >= self.n {
                return Err(FenceError::ElementOutOfRange {
                    index: x + 1,
                    n: self.n,
                });
            }
            bits |= 1 << x;
        }
        self.element_set(bits, kind)
    }

    /// Builds a set from 1-based labels (`&[4, 10]` is `{x4, x10}`).
    pub fn set_of_labels(&self, labels: &[usize], kind: SetKind) -> Result<ElementSet> {
        let elems = labels
            .iter()
            .map(|&k| {
                k.checked_sub(1).ok_or(FenceError::ElementOutOfRange {
                    index: k,
                    n: self.n,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        self.set_of(&elems, kind)
    }

    pub fn antichain(&self, labels: &[usize]) -> Result<ElementSet> {
        self.set_of_labels(labels, SetKind::Antichain)
    }

    pub fn ideal(&self, labels: &[usize]) -> Result<ElementSet> {
        self.set_of_labels(labels, SetKind::Ideal)
    }

    pub fn upper_ideal(&self, labels: &[usize]) -> Result<ElementSet> {
        self.set_of_labels(labels, SetKind::UpperIdeal)
    }

    /// `Δ⁻¹`: the ideal generated by an antichain.
    pub fn down_closure(&self, a: &ElementSet) -> Result<ElementSet> {
        a.expect_kind(SetKind::Antichain)?;
        Ok(ElementSet::from_bits(self.down_set(a.bits), SetKind::Ideal))
    }

    /// `Δ`: maximal elements of an ideal.
    pub fn maximal_elements(&self, i: &ElementSet) -> Result<ElementSet> {
        i.expect_kind(SetKind::Ideal)?;
        Ok(ElementSet::from_bits(self.maxima(i.bits), SetKind::Antichain))
    }

    /// `∇⁻¹`: the upper ideal generated by an antichain.
    pub fn up_closure(&self, a: &ElementSet) -> Result<ElementSet> {
        a.expect_kind(SetKind::Antichain)?;
        Ok(ElementSet::from_bits(self.up_set(a.bits), SetKind::UpperIdeal))
    }

    /// `∇`: minimal elements of an upper ideal.
    pub fn minimal_elements(&self, u: &ElementSet) -> Result<ElementSet> {
        u.expect_kind(SetKind::UpperIdeal)?;
        Ok(ElementSet::from_bits(self.minima(u.bits), SetKind::Antichain))
    }

    /// `c(S) = F − S`. Ideals and upper ideals swap; anything else becomes
    /// a plain subset (the empty set and its complement keep both readings,
    /// but the tag follows the input).
    pub fn complement(&self, set: &ElementSet) -> ElementSet {
        let kind = match set.kind {
            SetKind::Ideal => SetKind::UpperIdeal,
            SetKind::UpperIdeal => SetKind::Ideal,
            SetKind::Antichain | SetKind::Subset => SetKind::Subset,
        };
        ElementSet::from_bits(self.full_mask() & !set.bits, kind)
    }

    /// The index-reversal map `x_k ↦ x_{n+1−k}`, verified to be
    /// order-reversing.
    pub fn kappa(&self) -> Result<Kappa> {
        if !self.alpha.is_palindromic() {
            return Err(FenceError::NotPalindromic(self.alpha.to_string()));
        }
        let rev = |x: usize| self.n - 1 - x;
        for c in self.covers() {
            // lower ⊲ upper must become κ(upper) ⊲ κ(lower).
            if self.upper[rev(c.upper)] >> rev(c.lower) & 1 == 0 {
                return Err(FenceError::NotOrderReversing {
                    alpha: self.alpha.to_string(),
                    cover: format!("x{} < x{}", c.lower + 1, c.upper + 1),
                });
            }
        }
        Ok(Kappa { n: self.n })
    }

    /// All ideals as raw masks in transfer order (not sorted).
    ///
    /// Each spine element only constrains its neighbour, so the recursion
    /// carries whether the previous element was taken.
    pub fn ideal_masks(&self, cap: usize) -> Result<Vec<u64>> {
        let mut out = Vec::new();
        if self.n == 0 {
            out.push(0);
            return Ok(out);
        }
        // up_step[k]: true when x_{k+1} covers x_k (spine ascends at k).
        let up_step: Vec<bool> = (0..self.n - 1)
            .map(|k| self.upper[k] >> (k + 1) & 1 == 1)
            .collect();
        let mut stack: Vec<(usize, u64)> = vec![(1, 0), (1, 1)];
        while let Some((k, mask)) = stack.pop() {
            if k == self.n {
                if out.len() == cap {
                    return Err(FenceError::CapExceeded {
                        what: format!("ideal family of F({})", self.alpha),
                        cap,
                    });
                }
                out.push(mask);
                continue;
            }
            let prev_in = mask >> (k - 1) & 1 == 1;
            let (allow_out, allow_in) = if up_step[k - 1] {
                (true, prev_in)
            } else {
                (!prev_in, true)
            };
            if allow_in {
                stack.push((k + 1, mask | 1 << k));
            }
            if allow_out {
                stack.push((k + 1, mask));
            }
        }
        Ok(out)
    }

    /// Every ideal exactly once.
    pub fn enumerate_ideals(&self, cap: usize) -> Result<Vec<ElementSet>> {
        Ok(self
            .ideal_masks(cap)?
            .into_iter()
            .map(|b| ElementSet::from_bits(b, SetKind::Ideal))
            .collect())
    }

    /// Every antichain exactly once, as maximal-element sets of the ideals.
    pub fn antichain_masks(&self, cap: usize) -> Result<Vec<u64>> {
        Ok(self
            .ideal_masks(cap)?
            .into_iter()
            .map(|b| self.maxima(b))
            .collect())
    }
}

fn transitive(step: &[u64]) -> Vec<u64> {
    let n = step.len();
    let mut out = vec![0u64; n];
    for (x, slot) in out.iter_mut().enumerate() {
        let mut seen = 1u64 << x;
        let mut frontier = step[x];
        while frontier & !seen != 0 {
            let fresh = frontier & !seen;
            seen |= fresh;
            frontier = BitIter(fresh).fold(0, |acc, y| acc | step[y]);
        }
        *slot = seen;
    }
    out
}

/// The order-reversing involution `x_k ↦ x_{n+1−k}` of a self-dual fence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Kappa {
    n: usize,
}

impl Kappa {
    pub fn apply(&self, x: usize) -> usize {
        self.n - 1 - x
    }

    pub fn apply_bits(&self, bits: u64) -> u64 {
        BitIter(bits).fold(0, |acc, x| acc | 1 << self.apply(x))
    }

    /// Image of a set; ideals become upper ideals and vice versa.
    pub fn apply_set(&self, set: &ElementSet) -> ElementSet {
        let kind = match set.kind {
            SetKind::Ideal => SetKind::UpperIdeal,
            SetKind::UpperIdeal => SetKind::Ideal,
            k => k,
        };
        ElementSet::from_bits(self.apply_bits(set.bits), kind)
    }

    /// `Ī = κ(c(I))` on raw masks.
    pub fn ideal_complement_bits(&self, full: u64, bits: u64) -> u64 {
        self.apply_bits(full & !bits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(alpha: &str) -> Fence {
        Fence::parse(alpha).unwrap()
    }

    #[test]
    fn three_three_two_has_two_shared_elements() {
        let fence = f("3,3,2");
        assert_eq!(fence.len(), 7);
        let shared: Vec<usize> = fence.shared_elements().iter().map(|x| x + 1).collect();
        assert_eq!(shared, vec![3, 6]);
    }

    #[test]
    fn smallest_fence_is_a_v() {
        let fence = f("2,2");
        assert_eq!(fence.len(), 3);
        assert_eq!(
            fence.covers(),
            vec![Cover { lower: 0, upper: 1 }, Cover { lower: 2, upper: 1 }]
        );
    }

    #[test]
    fn index_maps_for_four_three_four() {
        let fence = f("4,3,4");
        assert_eq!(fence.len(), 10);
        let label = |x: Option<usize>| x.map(|x| x + 1);
        assert_eq!(label(fence.unshared_element(1, 1)), Some(1));
        assert_eq!(label(fence.unshared_element(1, 3)), Some(3));
        assert_eq!(label(fence.shared_element(1)), Some(4));
        assert_eq!(label(fence.unshared_element(2, 1)), Some(6));
        assert_eq!(label(fence.unshared_element(2, 2)), Some(5));
        assert_eq!(label(fence.shared_element(2)), Some(7));
        assert_eq!(label(fence.unshared_element(3, 1)), Some(8));
        assert_eq!(label(fence.unshared_element(3, 3)), Some(10));
        assert_eq!(fence.unshared_element(2, 3), None);
        assert_eq!(fence.shared_element(3), None);
    }

    #[test]
    fn shared_elements_alternate_max_min() {
        let fence = f("3,1,2,4,2");
        for i in 1..fence.segment_count() {
            let x = fence.shared_element(i).unwrap();
            if i % 2 == 1 {
                assert_eq!(fence.upper_covers(x), 0, "s_{i} should be maximal");
            } else {
                assert_eq!(fence.lower_covers(x), 0, "s_{i} should be minimal");
            }
        }
    }

    #[test]
    fn rejects_bad_compositions() {
        assert!(matches!(
            "1,3".parse::<Composition>(),
            Err(FenceError::InvalidComposition(_))
        ));
        assert!(matches!(
            "3,1".parse::<Composition>(),
            Err(FenceError::InvalidComposition(_))
        ));
        assert!(matches!(
            "3,0,3".parse::<Composition>(),
            Err(FenceError::InvalidComposition(_))
        ));
        assert!(matches!(
            "3,x".parse::<Composition>(),
            Err(FenceError::Parse(_))
        ));
        assert!(Composition::new(vec![33, 33]).is_ok());
        assert!(matches!(
            Fence::new(Composition::new(vec![33, 33]).unwrap()),
            Err(FenceError::TooManyElements { .. })
        ));
    }

    #[test]
    fn closures_on_small_fences() {
        let v = f("2,2");
        let top = v.antichain(&[2]).unwrap();
        assert_eq!(v.down_closure(&top).unwrap().labels(), vec![1, 2, 3]);
        let empty = v.antichain(&[]).unwrap();
        assert!(v.down_closure(&empty).unwrap().is_empty());
        assert!(v.up_closure(&empty).unwrap().is_empty());
        let x1 = v.antichain(&[1]).unwrap();
        assert_eq!(v.up_closure(&x1).unwrap().labels(), vec![1, 2]);

        let mins = v.ideal(&[1, 3]).unwrap();
        assert_eq!(v.maximal_elements(&mins).unwrap().labels(), vec![1, 3]);
        let all = v.ideal(&[1, 2, 3]).unwrap();
        assert_eq!(v.maximal_elements(&all).unwrap().labels(), vec![2]);
        let up_all = v.upper_ideal(&[1, 2, 3]).unwrap();
        assert_eq!(v.minimal_elements(&up_all).unwrap().labels(), vec![1, 3]);
        let up_top = v.upper_ideal(&[2]).unwrap();
        assert_eq!(v.minimal_elements(&up_top).unwrap().labels(), vec![2]);

        let g = f("3,3,2");
        let x5 = g.antichain(&[5]).unwrap();
        let up = g.up_closure(&x5).unwrap();
        assert_eq!(up.labels(), vec![3, 4, 5]);
        assert_eq!(g.minimal_elements(&up).unwrap().labels(), vec![5]);
    }

    #[test]
    fn closure_of_x4_x10_in_four_three_four_is_everything() {
        // x4 tops segments 1 and 2, so its down-set reaches x7; x10 reaches x7 too.
        let fence = f("4,3,4");
        let a = fence.antichain(&[4, 10]).unwrap();
        let i = fence.down_closure(&a).unwrap();
        assert_eq!(i.labels(), (1..=10).collect::<Vec<_>>());
        assert_eq!(fence.maximal_elements(&i).unwrap(), a);
        let b = fence.antichain(&[3, 10]).unwrap();
        let j = fence.down_closure(&b).unwrap();
        assert_eq!(j.labels(), vec![1, 2, 3, 7, 8, 9, 10]);
        assert_eq!(fence.maximal_elements(&j).unwrap(), b);
    }

    #[test]
    fn kind_mismatch_is_reported() {
        let v = f("2,2");
        let i = v.ideal(&[1]).unwrap();
        assert!(matches!(
            v.down_closure(&i),
            Err(FenceError::KindMismatch { .. })
        ));
        assert!(matches!(
            v.antichain(&[1, 2]),
            Err(FenceError::NotInFamily(..))
        ));
        assert!(matches!(
            v.antichain(&[4]),
            Err(FenceError::ElementOutOfRange { .. })
        ));
    }

    #[test]
    fn complement_swaps_ideal_kinds() {
        let v = f("2,2");
        let empty = v.ideal(&[]).unwrap();
        let c = v.complement(&empty);
        assert_eq!(c.labels(), vec![1, 2, 3]);
        assert_eq!(c.kind(), SetKind::UpperIdeal);
        let x1 = v.ideal(&[1]).unwrap();
        assert_eq!(v.complement(&x1).labels(), vec![2, 3]);
        assert_eq!(v.complement(&v.complement(&x1)), x1);
        let g = f("4,3,4");
        let all = g.ideal(&(1..=10).collect::<Vec<_>>()).unwrap();
        assert!(g.complement(&all).is_empty());
    }

    #[test]
    fn kappa_on_three_three_three() {
        let fence = f("3,3,3");
        let k = fence.kappa().unwrap();
        assert_eq!(k.apply(0) + 1, 8);
        assert_eq!(k.apply(3) + 1, 5);
        for x in 0..fence.len() {
            assert_eq!(k.apply(k.apply(x)), x);
        }
    }

    #[test]
    fn kappa_errors() {
        assert!(matches!(
            f("3,2").kappa(),
            Err(FenceError::NotPalindromic(_))
        ));
        // Even part count: index reversal preserves order instead.
        assert!(matches!(
            f("2,2").kappa(),
            Err(FenceError::NotOrderReversing { .. })
        ));
        assert!(matches!(
            f("3,1,1,3").kappa(),
            Err(FenceError::NotOrderReversing { .. })
        ));
    }

    #[test]
    fn ideal_counts_match_closed_forms() {
        assert_eq!(f("2,2").ideal_masks(100).unwrap().len(), 5);
        assert_eq!(f("4,3,4").ideal_masks(100).unwrap().len(), 56);
        assert_eq!(f("3,3,2").ideal_masks(100).unwrap().len(), 23);
        assert_eq!(f("5").ideal_masks(100).unwrap().len(), 5);
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        let err = f("4,3,4").ideal_masks(55).unwrap_err();
        assert!(matches!(err, FenceError::CapExceeded { cap: 55, .. }));
        assert!(f("4,3,4").ideal_masks(56).is_ok());
    }

    #[test]
    fn element_list_parsing() {
        assert_eq!(parse_element_list("x4,x10").unwrap(), vec![3, 9]);
        assert_eq!(parse_element_list("{x1, x7}").unwrap(), vec![0, 6]);
        assert_eq!(parse_element_list("2,5").unwrap(), vec![1, 4]);
        assert!(parse_element_list("{}").unwrap().is_empty());
        assert!(parse_element_list("x0").is_err());
    }
}
