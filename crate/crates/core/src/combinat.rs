//! Finite sets, set compositions, integer compositions and permutations.
//!
//! These are the index types of every basis in the crate. All of them are
//! immutable value objects; constructors validate their invariants so that
//! a value in hand is always well formed.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::limits::Limits;

/// A finite set of positive integer labels, stored strictly increasing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FiniteSet {
    elems: Vec<u32>,
}

impl FiniteSet {
    /// Builds a set from a strictly increasing list of positive labels.
    pub fn new(elems: Vec<u32>) -> Result<Self> {
        if elems.first() == Some(&0) {
            return Err(Error::domain("set labels must be positive"));
        }
        if let Some(w) = elems.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::domain(format!(
                "set elements must be strictly increasing, found {} before {}",
                w[0], w[1]
            )));
        }
        Ok(FiniteSet { elems })
    }

    /// Builds a set from labels in any order; duplicates are rejected.
    pub fn from_unsorted(elems: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut elems: Vec<u32> = elems.into_iter().collect();
        elems.sort_unstable();
        Self::new(elems)
    }

    pub(crate) fn from_sorted_unchecked(elems: Vec<u32>) -> Self {
        debug_assert!(elems.windows(2).all(|w| w[0] < w[1]));
        FiniteSet { elems }
    }

    pub fn empty() -> Self {
        FiniteSet::default()
    }

    /// The interval {1, ..., n}.
    pub fn range(n: usize) -> Self {
        FiniteSet {
            elems: (1..=n as u32).collect(),
        }
    }

    /// The interval {lo, ..., hi}, empty when `lo > hi`.
    pub fn interval(lo: u32, hi: u32) -> Self {
        FiniteSet {
            elems: (lo.max(1)..=hi).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[u32] {
        &self.elems
    }

    pub fn contains(&self, x: u32) -> bool {
        self.elems.binary_search(&x).is_ok()
    }

    pub fn max(&self) -> Option<u32> {
        self.elems.last().copied()
    }

    pub fn is_subset(&self, other: &FiniteSet) -> bool {
        let mut it = other.elems.iter();
        self.elems.iter().all(|x| it.by_ref().any(|y| y == x))
    }

    pub fn is_disjoint(&self, other: &FiniteSet) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.elems.len() && j < other.elems.len() {
            match self.elems[i].cmp(&other.elems[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => return false,
            }
        }
        true
    }

    pub fn intersection(&self, other: &FiniteSet) -> FiniteSet {
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < self.elems.len() && j < other.elems.len() {
            match self.elems[i].cmp(&other.elems[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    out.push(self.elems[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        FiniteSet { elems: out }
    }

    pub fn union(&self, other: &FiniteSet) -> FiniteSet {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.elems.len() || j < other.elems.len() {
            let next = match (self.elems.get(i), other.elems.get(j)) {
                (Some(&a), Some(&b)) if a == b => {
                    i += 1;
                    j += 1;
                    a
                }
                (Some(&a), Some(&b)) if a < b => {
                    i += 1;
                    a
                }
                (Some(_), Some(&b)) => {
                    j += 1;
                    b
                }
                (Some(&a), None) => {
                    i += 1;
                    a
                }
                (None, Some(&b)) => {
                    j += 1;
                    b
                }
                (None, None) => unreachable!(),
            };
            out.push(next);
        }
        FiniteSet { elems: out }
    }

    pub fn difference(&self, other: &FiniteSet) -> FiniteSet {
        FiniteSet {
            elems: self
                .elems
                .iter()
                .copied()
                .filter(|x| !other.contains(*x))
                .collect(),
        }
    }

    /// All subsets, ordered by bitmask over the sorted elements.
    pub fn subsets(&self) -> impl Iterator<Item = FiniteSet> + '_ {
        assert!(self.len() < 64, "subset enumeration limited to 63 elements");
        (0u64..(1u64 << self.len())).map(move |mask| self.select(mask))
    }

    /// The subset picked out by the bits of `mask` (bit i selects the i-th smallest element).
    pub fn select(&self, mask: u64) -> FiniteSet {
        FiniteSet {
            elems: self
                .elems
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &x)| x)
                .collect(),
        }
    }
}

impl Ord for FiniteSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.elems.cmp(&other.elems))
    }
}

impl PartialOrd for FiniteSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.elems.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

/// An ordered sequence of pairwise-disjoint nonempty finite sets.
///
/// The empty sequence is allowed and indexes the unit `1_∅`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SetComposition {
    blocks: Vec<FiniteSet>,
}

impl SetComposition {
    pub fn new(blocks: Vec<FiniteSet>) -> Result<Self> {
        if let Some(i) = blocks.iter().position(FiniteSet::is_empty) {
            return Err(Error::domain(format!("block {} is empty", i + 1)));
        }
        let mut seen: Vec<u32> = blocks.iter().flat_map(|b| b.elements().iter().copied()).collect();
        seen.sort_unstable();
        if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::domain(format!("blocks overlap in element {}", w[0])));
        }
        Ok(SetComposition { blocks })
    }

    /// Convenience constructor from nested label lists, e.g. `&[&[3, 5], &[1, 4]]`.
    pub fn from_lists<B: AsRef<[u32]>>(blocks: &[B]) -> Result<Self> {
        let blocks = blocks
            .iter()
            .map(|b| FiniteSet::from_unsorted(b.as_ref().iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(blocks)
    }

    pub(crate) fn from_blocks_unchecked(blocks: Vec<FiniteSet>) -> Self {
        debug_assert!(Self::new(blocks.clone()).is_ok());
        SetComposition { blocks }
    }

    pub fn empty() -> Self {
        SetComposition::default()
    }

    /// The single-block composition `(s)`; the empty set gives the empty composition.
    pub fn single(s: FiniteSet) -> Self {
        if s.is_empty() {
            Self::empty()
        } else {
            SetComposition { blocks: vec![s] }
        }
    }

    /// The chamber `1_σ = ({σ(1)}, ..., {σ(n)})`.
    pub fn chamber(p: &Permutation) -> Self {
        SetComposition {
            blocks: p
                .images()
                .iter()
                .map(|&x| FiniteSet::from_sorted_unchecked(vec![x]))
                .collect(),
        }
    }

    pub fn blocks(&self) -> &[FiniteSet] {
        &self.blocks
    }

    /// Number of blocks.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Size of the support.
    pub fn degree(&self) -> usize {
        self.blocks.iter().map(FiniteSet::len).sum()
    }

    /// The disjoint union of the blocks.
    pub fn support(&self) -> FiniteSet {
        let mut all: Vec<u32> = self.flattened().collect();
        all.sort_unstable();
        FiniteSet::from_sorted_unchecked(all)
    }

    /// Block sizes, in order.
    pub fn type_of(&self) -> IntegerComposition {
        IntegerComposition {
            parts: self.blocks.iter().map(|b| b.len() as u32).collect(),
        }
    }

    /// Concatenated block contents, each block in increasing order.
    pub fn flattened(&self) -> impl Iterator<Item = u32> + '_ {
        self.blocks.iter().flat_map(|b| b.elements().iter().copied())
    }

    /// Cumulative end offsets of the blocks within `flattened()`.
    pub fn boundaries(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().scan(0, |acc, b| {
            *acc += b.len();
            Some(*acc)
        })
    }

    pub fn is_chamber(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    /// Reads a chamber whose support is `{1..n}` as a permutation in one-line notation.
    pub fn to_permutation(&self) -> Option<Permutation> {
        if !self.is_chamber() {
            return None;
        }
        Permutation::new(self.flattened().collect()).ok()
    }

    /// Convolution of basis elements: concatenation, or `None` when the supports meet.
    pub fn concat(&self, other: &SetComposition) -> Option<SetComposition> {
        if !self.support().is_disjoint(&other.support()) {
            return None;
        }
        let mut blocks = Vec::with_capacity(self.len() + other.len());
        blocks.extend_from_slice(&self.blocks);
        blocks.extend_from_slice(&other.blocks);
        Some(SetComposition { blocks })
    }

    /// Composition product of basis elements.
    ///
    /// `None` when the supports differ; otherwise the intersections
    /// `S_i ∩ T_j` in lexicographic `(i, j)` order with empty ones dropped.
    pub fn compose(&self, other: &SetComposition) -> Option<SetComposition> {
        if self.degree() != other.degree() || self.support() != other.support() {
            return None;
        }
        let mut blocks = Vec::with_capacity(self.len() * other.len());
        for s in &self.blocks {
            for t in &other.blocks {
                let st = s.intersection(t);
                if !st.is_empty() {
                    blocks.push(st);
                }
            }
        }
        Some(SetComposition { blocks })
    }

    /// Blockwise split of the support along `left`: the pair
    /// `((S_1 ∩ L, ..., S_k ∩ L), (S_1 \ L, ..., S_k \ L))` with empty blocks dropped.
    pub fn split_along(&self, left: &FiniteSet) -> (SetComposition, SetComposition) {
        let mut l = Vec::new();
        let mut r = Vec::new();
        for b in &self.blocks {
            let bl = b.intersection(left);
            let br = b.difference(left);
            if !bl.is_empty() {
                l.push(bl);
            }
            if !br.is_empty() {
                r.push(br);
            }
        }
        (SetComposition { blocks: l }, SetComposition { blocks: r })
    }

    /// All `2^|support|` blockwise splits, ordered by bitmask over the sorted support.
    pub fn splits(&self) -> impl Iterator<Item = (SetComposition, SetComposition)> + '_ {
        let support = self.support();
        assert!(support.len() < 64);
        (0u64..(1u64 << support.len())).map(move |mask| self.split_along(&support.select(mask)))
    }

    /// The relabelled composition `(σ⁻¹(S_1), ..., σ⁻¹(S_k))`.
    pub fn act(&self, p: &Permutation) -> Result<SetComposition> {
        let n = p.degree() as u32;
        if let Some(x) = self.flattened().find(|&x| x > n) {
            return Err(Error::domain(format!(
                "label {x} lies outside {{1..{n}}} acted on by the permutation"
            )));
        }
        let inv = p.inverse();
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                let mut img: Vec<u32> = b.elements().iter().map(|&x| inv.apply(x)).collect();
                img.sort_unstable();
                FiniteSet::from_sorted_unchecked(img)
            })
            .collect();
        Ok(SetComposition { blocks })
    }
}

/// Canonical order: support size, then the flattened block sequence, then
/// the block boundary offsets, each compared lexicographically.
impl Ord for SetComposition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.flattened().cmp(other.flattened()))
            .then_with(|| self.boundaries().cmp(other.boundaries()))
    }
}

impl PartialOrd for SetComposition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SetComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str("]")
    }
}

/// Lazily enumerates the set compositions of a finite set in canonical order.
///
/// Walks the permutations of the set lexicographically; each permutation
/// contributes the cuttings that place a boundary at every descent.
pub struct SetCompositions {
    elems: Vec<u32>,
    perm: Option<Vec<usize>>,
    pending: Vec<SetComposition>,
}

impl SetCompositions {
    fn refill(&mut self) {
        let Some(perm) = self.perm.as_mut() else {
            return;
        };
        let n = perm.len();
        let word: Vec<u32> = perm.iter().map(|&i| self.elems[i]).collect();
        let mut forced = Vec::new();
        let mut optional = Vec::new();
        for i in 1..n {
            if word[i - 1] > word[i] {
                forced.push(i);
            } else {
                optional.push(i);
            }
        }
        let mut cuts: Vec<Vec<usize>> = (0u64..(1u64 << optional.len()))
            .map(|mask| {
                let mut c: Vec<usize> = forced.clone();
                c.extend(
                    optional
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| mask >> k & 1 == 1)
                        .map(|(_, &i)| i),
                );
                c.sort_unstable();
                if n > 0 {
                    c.push(n);
                }
                c
            })
            .collect();
        cuts.sort();
        self.pending = cuts
            .into_iter()
            .rev()
            .map(|ends| {
                let mut start = 0;
                let blocks = ends
                    .iter()
                    .map(|&end| {
                        let b = FiniteSet::from_sorted_unchecked(word[start..end].to_vec());
                        start = end;
                        b
                    })
                    .collect();
                SetComposition { blocks }
            })
            .collect();
        if !next_permutation(perm) {
            self.perm = None;
        }
    }
}

impl Iterator for SetCompositions {
    type Item = SetComposition;

    fn next(&mut self) -> Option<SetComposition> {
        if self.pending.is_empty() {
            self.refill();
        }
        self.pending.pop()
    }
}

/// Every set composition of `s`, each exactly once, in canonical order.
pub fn enumerate_set_compositions(s: &FiniteSet, limits: &Limits) -> Result<SetCompositions> {
    limits.check_enumeration(s.len())?;
    Ok(SetCompositions {
        elems: s.elements().to_vec(),
        perm: Some((0..s.len()).collect()),
        pending: Vec::new(),
    })
}

/// Every set composition of every subset of `universe`.
pub fn enumerate_subset_compositions(universe: &FiniteSet, limits: &Limits) -> Result<Vec<SetComposition>> {
    limits.check_enumeration(universe.len())?;
    let mut out = Vec::new();
    for sub in universe.subsets() {
        out.extend(enumerate_set_compositions(&sub, limits)?);
    }
    out.sort();
    Ok(out)
}

fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// A finite sequence of positive integers; `(n_1, ..., n_k)` with weight `n = Σ n_i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegerComposition {
    parts: Vec<u32>,
}

impl IntegerComposition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::domain("composition parts must be positive"));
        }
        Ok(IntegerComposition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    /// Partial sums `{n_1, n_1+n_2, ..., n_1+...+n_{k-1}}`.
    pub fn partial_sums(&self) -> FiniteSet {
        let mut acc = 0;
        let mut out = Vec::new();
        for &p in &self.parts[..self.parts.len().saturating_sub(1)] {
            acc += p;
            out.push(acc);
        }
        FiniteSet::from_sorted_unchecked(out)
    }

    /// Consecutive intervals of `[n]` with sizes given by the parts.
    pub fn increasing_partition(&self) -> Vec<FiniteSet> {
        let mut lo = 1;
        self.parts
            .iter()
            .map(|&p| {
                let s = FiniteSet::interval(lo, lo + p - 1);
                lo += p;
                s
            })
            .collect()
    }

    /// Concatenation of parts.
    pub fn concat(&self, other: &IntegerComposition) -> IntegerComposition {
        IntegerComposition {
            parts: self.parts.iter().chain(&other.parts).copied().collect(),
        }
    }

    /// All `2^(n-1)` compositions of `n` (one, the empty composition, for `n = 0`).
    pub fn all(n: usize) -> Vec<IntegerComposition> {
        if n == 0 {
            return vec![IntegerComposition::default()];
        }
        let mut out: Vec<IntegerComposition> = (0u64..(1u64 << (n - 1)))
            .map(|mask| {
                let mut parts = Vec::new();
                let mut run = 1;
                for i in 0..n - 1 {
                    if mask >> i & 1 == 1 {
                        parts.push(run);
                        run = 1;
                    } else {
                        run += 1;
                    }
                }
                parts.push(run);
                IntegerComposition { parts }
            })
            .collect();
        out.sort();
        out
    }

    /// Number of set compositions of an n-set with this type: `n! / (n_1! ⋯ n_k!)`.
    pub fn multinomial(&self) -> u128 {
        let mut total: u128 = 1;
        let mut seen: u128 = 0;
        for &p in &self.parts {
            for i in 1..=p as u128 {
                seen += 1;
                total = total * seen / i;
            }
        }
        total
    }
}

impl fmt::Display for IntegerComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.parts)
    }
}

/// A permutation of `{1..n}` in one-line notation `(σ(1), ..., σ(n))`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x as usize > n || seen[x as usize] {
                return Err(Error::domain(format!(
                    "{} is not a rearrangement of 1..{n}",
                    ListDisplay(&images)
                )));
            }
            seen[x as usize] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n as u32).collect(),
        }
    }

    /// `(n, n-1, ..., 1)`.
    pub fn reversal(n: usize) -> Self {
        Permutation {
            images: (1..=n as u32).rev().collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `σ(i)` for `1 ≤ i ≤ n`.
    pub fn apply(&self, i: u32) -> u32 {
        self.images[i as usize - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x as usize == i + 1)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize - 1] = i as u32 + 1;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::domain(format!(
                "cannot compose permutations of degrees {} and {}",
                self.degree(),
                other.degree()
            )));
        }
        Ok(Permutation {
            images: other.images.iter().map(|&i| self.apply(i)).collect(),
        })
    }

    /// Positions `i` with `σ(i) > σ(i+1)`.
    pub fn descent_set(&self) -> FiniteSet {
        FiniteSet::from_sorted_unchecked(
            self.images
                .windows(2)
                .enumerate()
                .filter(|(_, w)| w[0] > w[1])
                .map(|(i, _)| i as u32 + 1)
                .collect(),
        )
    }

    /// All of `S_n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut cur: Vec<u32> = (1..=n as u32).collect();
        let mut out = vec![Permutation { images: cur.clone() }];
        while next_permutation(&mut cur) {
            out.push(Permutation { images: cur.clone() });
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.images)
    }
}

struct ListDisplay<'a>(&'a [u32]);

impl fmt::Display for ListDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, self.0)
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, xs: &[u32]) -> fmt::Result {
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

/// Checks that `parts` is an increasing partition of `[n]` and returns `n`.
pub fn check_increasing_partition(parts: &[FiniteSet]) -> Result<usize> {
    let mut expected = 1u32;
    for (i, p) in parts.iter().enumerate() {
        if p.is_empty() {
            return Err(Error::domain(format!("part {} of the partition is empty", i + 1)));
        }
        for &x in p.elements() {
            if x != expected {
                return Err(Error::domain(format!(
                    "parts are not an increasing partition of [n]: expected {expected}, found {x}"
                )));
            }
            expected += 1;
        }
    }
    Ok(expected as usize - 1)
}

/// The shuffles of an increasing partition of `[n]`: permutations whose
/// one-line word lists each part's elements in increasing order.
pub fn enumerate_shuffles(parts: &[FiniteSet]) -> Result<Vec<Permutation>> {
    let n = check_increasing_partition(parts)?;
    let mut labels: Vec<usize> = parts
        .iter()
        .enumerate()
        .flat_map(|(i, p)| std::iter::repeat_n(i, p.len()))
        .collect();
    let mut out = Vec::new();
    loop {
        let mut next = vec![0usize; parts.len()];
        let images = labels
            .iter()
            .map(|&l| {
                let x = parts[l].elements()[next[l]];
                next[l] += 1;
                x
            })
            .collect();
        out.push(Permutation { images });
        if !next_permutation(&mut labels) {
            break;
        }
    }
    debug_assert!(out.iter().all(|p| p.degree() == n));
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(blocks: &[&[u32]]) -> SetComposition {
        SetComposition::from_lists(blocks).unwrap()
    }

    fn perm(images: &[u32]) -> Permutation {
        Permutation::new(images.to_vec()).unwrap()
    }

    fn set(xs: &[u32]) -> FiniteSet {
        FiniteSet::new(xs.to_vec()).unwrap()
    }

    #[test]
    fn support_and_type() {
        assert_eq!(sc(&[&[3, 5], &[1, 4]]).support(), set(&[1, 3, 4, 5]));
        assert_eq!(SetComposition::empty().support(), FiniteSet::empty());
        assert_eq!(sc(&[&[2, 3, 5]]).support(), set(&[2, 3, 5]));

        assert_eq!(sc(&[&[3, 5], &[1, 4]]).type_of().parts(), &[2, 2]);
        assert_eq!(sc(&[&[1, 3, 5], &[2, 4]]).type_of().parts(), &[3, 2]);
        assert!(SetComposition::empty().type_of().is_empty());
    }

    #[test]
    fn rejects_malformed_compositions() {
        assert!(SetComposition::from_lists(&[&[1, 2][..], &[2]]).is_err());
        assert!(SetComposition::from_lists(&[&[][..], &[2]]).is_err());
        assert!(FiniteSet::new(vec![2, 1]).is_err());
        assert!(FiniteSet::new(vec![1, 1]).is_err());
        assert!(FiniteSet::new(vec![0, 1]).is_err());
        assert!(FiniteSet::from_unsorted([3, 1, 3]).is_err());
    }

    #[test]
    fn enumeration_small_cases() {
        let l = Limits::default();
        let one: Vec<_> = enumerate_set_compositions(&set(&[7]), &l).unwrap().collect();
        assert_eq!(one, vec![sc(&[&[7]])]);
        let none: Vec<_> = enumerate_set_compositions(&FiniteSet::empty(), &l).unwrap().collect();
        assert_eq!(none, vec![SetComposition::empty()]);
        assert_eq!(enumerate_set_compositions(&FiniteSet::range(3), &l).unwrap().count(), 13);
    }

    #[test]
    fn enumeration_is_sorted_and_distinct() {
        let l = Limits::default();
        for n in 0..=5 {
            let all: Vec<_> = enumerate_set_compositions(&FiniteSet::range(n), &l).unwrap().collect();
            assert!(all.windows(2).all(|w| w[0] < w[1]), "n = {n}");
            assert!(all.iter().all(|c| c.support() == FiniteSet::range(n)));
        }
    }

    #[test]
    fn enumeration_cap() {
        let l = Limits {
            max_enumeration: 3,
            ..Limits::default()
        };
        let err = enumerate_set_compositions(&FiniteSet::range(4), &l).err().unwrap();
        assert!(err.is_size_limit());
        assert!(err.to_string().contains("cap is 3"));
    }

    #[test]
    fn descent_sets() {
        assert_eq!(perm(&[1, 2, 3]).descent_set(), FiniteSet::empty());
        assert_eq!(perm(&[3, 1, 2]).descent_set(), set(&[1]));
        assert_eq!(perm(&[2, 1, 4, 3]).descent_set(), set(&[1, 3]));
        for n in 1..=6 {
            assert_eq!(Permutation::reversal(n).descent_set(), FiniteSet::range(n - 1));
            assert!(Permutation::identity(n).descent_set().is_empty());
        }
    }

    #[test]
    fn inverses() {
        assert_eq!(perm(&[1, 2, 3]).inverse(), perm(&[1, 2, 3]));
        assert_eq!(perm(&[3, 1, 2]).inverse(), perm(&[2, 3, 1]));
        assert_eq!(perm(&[2, 1, 4, 3]).inverse(), perm(&[2, 1, 4, 3]));
        for n in 0..=6 {
            for p in Permutation::all(n) {
                assert_eq!(p.inverse().inverse(), p);
                assert!(p.compose(&p.inverse()).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![1, 3]).is_err());
        assert_eq!(Permutation::all(4).len(), 24);
    }

    #[test]
    fn shuffles() {
        assert_eq!(
            enumerate_shuffles(&[set(&[1]), set(&[2])]).unwrap(),
            vec![perm(&[1, 2]), perm(&[2, 1])]
        );
        assert_eq!(enumerate_shuffles(&[set(&[1, 2]), set(&[3])]).unwrap().len(), 3);
        assert_eq!(enumerate_shuffles(&[set(&[1, 2, 3])]).unwrap(), vec![perm(&[1, 2, 3])]);
        assert!(enumerate_shuffles(&[set(&[2]), set(&[1])]).is_err());
        assert!(enumerate_shuffles(&[set(&[1]), set(&[3])]).is_err());
    }

    #[test]
    fn shuffle_counts_are_multinomial() {
        for n in 0..=6 {
            for c in IntegerComposition::all(n) {
                let shuffles = enumerate_shuffles(&c.increasing_partition()).unwrap();
                assert_eq!(shuffles.len() as u128, c.multinomial(), "{c}");
            }
        }
    }

    #[test]
    fn integer_compositions() {
        assert_eq!(IntegerComposition::all(4).len(), 8);
        let c = IntegerComposition::new(vec![2, 1, 3]).unwrap();
        assert_eq!(c.weight(), 6);
        assert_eq!(c.partial_sums(), set(&[2, 3]));
        assert_eq!(c.increasing_partition(), vec![set(&[1, 2]), set(&[3]), set(&[4, 5, 6])]);
        assert_eq!(c.multinomial(), 60);
        assert!(IntegerComposition::new(vec![1, 0]).is_err());
    }

    #[test]
    fn canonical_order_prefers_small_support() {
        assert!(sc(&[&[9]]) < sc(&[&[1], &[2]]));
        assert!(sc(&[&[1, 2]]) > sc(&[&[1], &[2]]));
        assert!(SetComposition::empty() < sc(&[&[1]]));
    }
}
