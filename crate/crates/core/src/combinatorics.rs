//! Multisets, integer partitions, canonical tableaux and set partitions of
//! `{1..N}` into equal blocks.
//!
//! All enumerations produce their output in a fixed order that does not depend
//! on hashing or on the run, so that every basis built on top of them is
//! reproducible.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Largest `N` for which set partitions are materialized eagerly.
pub const EAGER_LIMIT_N: usize = 12;

/// Largest ground set supported by [`GenericMonomial`] (one bit per element).
pub const MAX_GROUND_SET: usize = 32;

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// All permutations of `0..k` with their signs, in lexicographic order.
pub fn signed_permutations(k: usize) -> Vec<(Vec<usize>, i8)> {
    let mut out = Vec::with_capacity(factorial(k) as usize);
    let mut perm: Vec<usize> = (0..k).collect();
    loop {
        out.push((perm.clone(), permutation_sign(&perm)));
        // next permutation in lexicographic order
        let Some(i) = (1..k).rev().find(|&i| perm[i - 1] < perm[i]) else {
            break;
        };
        let j = (i..k).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
    out
}

/// All `k`-element subsets of `0..n` as increasing index lists, in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        out.push(current.clone());
        let Some(i) = (0..k).rev().find(|&i| current[i] < n - k + i) else {
            break;
        };
        current[i] += 1;
        for j in i + 1..k {
            current[j] = current[j - 1] + 1;
        }
    }
    out
}

/// Sign of a permutation of `0..k` given in one-line notation.
pub fn permutation_sign(perm: &[usize]) -> i8 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1i8;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// A multiset of symbols `{0..n-1}`, stored as its exponent vector.
///
/// Multisets of the same `(n, degree)` are totally ordered lexicographically
/// with the first symbol most significant and larger exponents first, so
/// `(2,0,0) < (1,1,0) < ... < (0,0,2)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Multiset {
    exponents: Vec<u32>,
}

impl Multiset {
    pub fn new(exponents: Vec<u32>) -> Self {
        Multiset { exponents }
    }

    pub fn empty(n: usize) -> Self {
        Multiset { exponents: vec![0; n] }
    }

    /// Builds a multiset from a list of (0-based) symbols, repetitions allowed.
    pub fn from_elements(n: usize, elements: &[usize]) -> Result<Self> {
        let mut exponents = vec![0u32; n];
        for &e in elements {
            if e >= n {
                return Err(Error::DimensionMismatch { expected: n, found: e + 1 });
            }
            exponents[e] += 1;
        }
        Ok(Multiset { exponents })
    }

    pub fn n(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> usize {
        self.exponents.iter().map(|&e| e as usize).sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// The elements in weakly increasing order, each symbol repeated by its multiplicity.
    pub fn elements(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.degree());
        for (i, &e) in self.exponents.iter().enumerate() {
            out.extend(std::iter::repeat_n(i, e as usize));
        }
        out
    }

    pub fn union(&self, other: &Multiset) -> Result<Multiset> {
        multiset_union(self, other)
    }
}

impl Ord for Multiset {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .exponents
            .cmp(&self.exponents)
            .then_with(|| self.exponents.len().cmp(&other.exponents.len()))
    }
}

impl PartialOrd for Multiset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.exponents.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// All multisets of size `d` over `n` symbols, in the fixed total order.
pub fn enumerate_multisets(n: usize, d: usize) -> Result<Vec<Multiset>> {
    if n == 0 {
        return if d == 0 {
            Ok(vec![Multiset::empty(0)])
        } else {
            Err(Error::EmptyDomain(format!("no multisets of size {d} over 0 symbols")))
        };
    }
    let mut out = Vec::with_capacity(binomial(n + d - 1, d) as usize);
    let mut current = vec![0u32; n];
    fill_multisets(0, d as u32, &mut current, &mut out);
    Ok(out)
}

fn fill_multisets(pos: usize, remaining: u32, current: &mut Vec<u32>, out: &mut Vec<Multiset>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(Multiset::new(current.clone()));
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e;
        fill_multisets(pos + 1, remaining - e, current, out);
    }
    current[pos] = 0;
}

pub fn multiset_union(a: &Multiset, b: &Multiset) -> Result<Multiset> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch { expected: a.n(), found: b.n() });
    }
    Ok(Multiset::new(a.exponents.iter().zip(&b.exponents).map(|(x, y)| x + y).collect()))
}

/// A partition of an integer: strictly positive, weakly decreasing parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct IntPartition {
    parts: Vec<usize>,
}

impl IntPartition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Precondition(format!("partition parts must be positive: {parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Precondition(format!("partition parts must be weakly decreasing: {parts:?}")));
        }
        Ok(IntPartition { parts })
    }

    /// Sorts and drops zeros; convenient for cycle types.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        IntPartition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> IntPartition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (0..width).map(|c| self.parts.iter().filter(|&&p| p > c).count()).collect();
        IntPartition { parts }
    }

    /// `(1^N)`.
    pub fn column(n: usize) -> IntPartition {
        IntPartition { parts: vec![1; n] }
    }

    /// `(N)`.
    pub fn row(n: usize) -> IntPartition {
        IntPartition { parts: if n == 0 { vec![] } else { vec![n] } }
    }
}

impl fmt::Display for IntPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// The tableau numbering the boxes of a Young diagram consecutively from left
/// to right, top to bottom.
///
/// Boxes are addressed both 1-based (`row_of`, `col_of`, matching the usual
/// pictures) and as 0-based positions (`rows`, `columns`) for the internal
/// permutation machinery.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalTableau {
    shape: IntPartition,
    row: Vec<usize>,
    col: Vec<usize>,
}

impl CanonicalTableau {
    pub fn shape(&self) -> &IntPartition {
        &self.shape
    }

    pub fn size(&self) -> usize {
        self.row.len()
    }

    /// Row (1-based) of box `i` (1-based).
    pub fn row_of(&self, i: usize) -> usize {
        self.row[i - 1] + 1
    }

    /// Column (1-based) of box `i` (1-based).
    pub fn col_of(&self, i: usize) -> usize {
        self.col[i - 1] + 1
    }

    /// Box number (1-based) at `(row, col)` (1-based).
    pub fn box_at(&self, row: usize, col: usize) -> Option<usize> {
        let parts = self.shape.parts();
        if row == 0 || col == 0 || row > parts.len() || col > parts[row - 1] {
            return None;
        }
        Some(parts[..row - 1].iter().sum::<usize>() + col)
    }

    /// 0-based row index of each 0-based position.
    pub fn row_indices(&self) -> &[usize] {
        &self.row
    }

    /// Positions (0-based) of each row.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.shape.len()];
        for (p, &r) in self.row.iter().enumerate() {
            out[r].push(p);
        }
        out
    }

    /// Positions (0-based) of each column, top to bottom.
    pub fn columns(&self) -> Vec<Vec<usize>> {
        let width = self.shape.parts().first().copied().unwrap_or(0);
        let mut out = vec![Vec::new(); width];
        for (p, &c) in self.col.iter().enumerate() {
            out[c].push(p);
        }
        out
    }
}

pub fn canonical_tableau(shape: &IntPartition) -> Result<CanonicalTableau> {
    if shape.is_empty() {
        return Err(Error::Precondition("canonical tableau of the empty partition".into()));
    }
    let mut row = Vec::with_capacity(shape.weight());
    let mut col = Vec::with_capacity(shape.weight());
    for (r, &len) in shape.parts().iter().enumerate() {
        for c in 0..len {
            row.push(r);
            col.push(c);
        }
    }
    Ok(CanonicalTableau { shape: shape.clone(), row, col })
}

/// Dimension of the irreducible representation `[λ]` by the hook length formula.
pub fn irrep_dimension(shape: &IntPartition) -> u128 {
    let n = shape.weight();
    let conj = shape.conjugate();
    let mut hooks: u128 = 1;
    for (r, &len) in shape.parts().iter().enumerate() {
        for c in 0..len {
            let arm = len - c - 1;
            let leg = conj.parts()[c] - r - 1;
            hooks *= (arm + leg + 1) as u128;
        }
    }
    factorial(n) / hooks
}

/// All partitions of `n` with at most `max_parts` parts, in reverse lexicographic order.
pub fn partitions_up_to(n: usize, max_parts: usize) -> Vec<IntPartition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill_partitions(n, n, max_parts, &mut current, &mut out);
    out
}

fn fill_partitions(
    remaining: usize,
    max_part: usize,
    parts_left: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<IntPartition>,
) {
    if remaining == 0 {
        out.push(IntPartition { parts: current.clone() });
        return;
    }
    if parts_left == 0 {
        return;
    }
    for p in (1..=max_part.min(remaining)).rev() {
        // the remaining parts_left-1 parts can absorb at most p each
        if p * parts_left < remaining {
            break;
        }
        current.push(p);
        fill_partitions(remaining - p, p, parts_left - 1, current, out);
        current.pop();
    }
}

/// All partitions of `n`.
pub fn partitions(n: usize) -> Vec<IntPartition> {
    partitions_up_to(n, n.max(1))
}

/// A monomial `z_{A_1} ... z_{A_r}` of the permutation module: a partition of
/// `{1..N}` (`N = r d`) into `r` blocks of size `d`.
///
/// Blocks are bit masks (element `j` is bit `j-1`) kept sorted by minimum
/// element. Ordering compares the blocks lexicographically as sorted element
/// lists, which is also the enumeration order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GenericMonomial {
    d: usize,
    blocks: SmallVec<[u32; 4]>,
}

impl GenericMonomial {
    /// Validates and canonicalizes blocks given as lists of elements of `{1..N}`.
    pub fn from_blocks(d: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let n = d * blocks.len();
        if n > MAX_GROUND_SET {
            return Err(Error::Resource(format!("ground set of size {n} exceeds {MAX_GROUND_SET}")));
        }
        let mut masks = SmallVec::new();
        let mut seen = 0u32;
        for b in blocks {
            let mut mask = 0u32;
            for &e in b {
                if e == 0 || e > n {
                    return Err(Error::InvalidBlocks(format!("element {e} outside 1..{n}")));
                }
                mask |= 1 << (e - 1);
            }
            if mask.count_ones() as usize != d || b.len() != d {
                return Err(Error::InvalidBlocks(format!("block {b:?} does not have {d} distinct elements")));
            }
            if seen & mask != 0 {
                return Err(Error::InvalidBlocks(format!("block {b:?} overlaps an earlier block")));
            }
            seen |= mask;
            masks.push(mask);
        }
        Ok(Self::from_masks_unchecked(d, masks))
    }

    /// Builds a monomial from masks that are already known to form a valid set partition.
    pub fn from_masks_unchecked(d: usize, mut masks: SmallVec<[u32; 4]>) -> Self {
        masks.sort_unstable_by_key(|m| m.trailing_zeros());
        GenericMonomial { d, blocks: masks }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn r(&self) -> usize {
        self.blocks.len()
    }

    pub fn ground_size(&self) -> usize {
        self.d * self.blocks.len()
    }

    pub fn masks(&self) -> &[u32] {
        &self.blocks
    }

    /// Blocks as sorted lists of elements of `{1..N}`.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|&m| mask_elements(m)).collect()
    }

    /// Index of the block containing the 0-based position `p` (element `p+1`).
    pub fn label_of(&self, p: usize) -> usize {
        self.blocks.iter().position(|&m| m & (1 << p) != 0).expect("position outside ground set")
    }

    /// Block index of every 0-based position.
    pub fn labels(&self) -> Vec<u8> {
        let mut out = vec![0u8; self.ground_size()];
        for (i, &m) in self.blocks.iter().enumerate() {
            let mut bits = m;
            while bits != 0 {
                out[bits.trailing_zeros() as usize] = i as u8;
                bits &= bits - 1;
            }
        }
        out
    }
}

/// Elements (1-based) of a mask.
pub fn mask_elements(mut mask: u32) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        out.push(mask.trailing_zeros() as usize + 1);
        mask &= mask - 1;
    }
    out
}

fn cmp_sets(a: u32, b: u32) -> Ordering {
    let diff = a ^ b;
    if diff == 0 {
        Ordering::Equal
    } else if a & (diff & diff.wrapping_neg()) != 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

impl Ord for GenericMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.blocks.iter().zip(&other.blocks) {
            match cmp_sets(*a, *b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.blocks.len().cmp(&other.blocks.len()).then(self.d.cmp(&other.d))
    }
}

impl PartialOrd for GenericMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GenericMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks().iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            write!(f, "z{{")?;
            for (j, e) in b.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

/// `N! / (d!^r r!)`, the number of generic monomials.
pub fn generic_monomial_count(d: usize, r: usize) -> Result<u128> {
    let n = d * r;
    if n > 34 {
        return Err(Error::Overflow(format!("N = {n} is too large to count set partitions")));
    }
    let mut denom = factorial(r);
    for _ in 0..r {
        denom = denom
            .checked_mul(factorial(d))
            .ok_or_else(|| Error::Overflow("d!^r overflows".into()))?;
    }
    Ok(factorial(n) / denom)
}

/// Streams the generic monomials for `(d, r)` in canonical order.
pub struct GenericMonomialIter {
    d: usize,
    levels: Vec<Level>,
    done: bool,
}

struct Level {
    lowest: u8,
    candidates: Vec<u8>,
    comb: Vec<usize>,
}

impl Level {
    fn new(remaining: u32, d: usize) -> Level {
        let elems: Vec<u8> = mask_elements(remaining).into_iter().map(|e| (e - 1) as u8).collect();
        Level { lowest: elems[0], candidates: elems[1..].to_vec(), comb: (0..d - 1).collect() }
    }

    fn mask(&self) -> u32 {
        let mut m = 1u32 << self.lowest;
        for &i in &self.comb {
            m |= 1 << self.candidates[i];
        }
        m
    }

    fn advance(&mut self) -> bool {
        let k = self.comb.len();
        let n = self.candidates.len();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.comb[i] < n - k + i {
                self.comb[i] += 1;
                for j in i + 1..k {
                    self.comb[j] = self.comb[j - 1] + 1;
                }
                return true;
            }
        }
        false
    }
}

impl GenericMonomialIter {
    pub fn new(d: usize, r: usize) -> Result<Self> {
        if d == 0 || r == 0 {
            return Err(Error::Precondition("d and r must be positive".into()));
        }
        let n = d * r;
        if n > MAX_GROUND_SET {
            return Err(Error::Resource(format!("ground set of size {n} exceeds {MAX_GROUND_SET}")));
        }
        let mut it = GenericMonomialIter { d, levels: Vec::with_capacity(r), done: false };
        let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        it.fill_from(full, r);
        Ok(it)
    }

    fn fill_from(&mut self, mut remaining: u32, r: usize) {
        while self.levels.len() < r {
            let level = Level::new(remaining, self.d);
            remaining &= !level.mask();
            self.levels.push(level);
        }
    }

    fn remaining_after(&self, depth: usize, n_full: u32) -> u32 {
        let mut rem = n_full;
        for l in &self.levels[..depth] {
            rem &= !l.mask();
        }
        rem
    }
}

impl Iterator for GenericMonomialIter {
    type Item = GenericMonomial;

    fn next(&mut self) -> Option<GenericMonomial> {
        if self.done {
            return None;
        }
        let r = self.levels.len();
        let masks: SmallVec<[u32; 4]> = self.levels.iter().map(Level::mask).collect();
        let out = GenericMonomial { d: self.d, blocks: masks };
        let n = self.d * r;
        let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        loop {
            match self.levels.last_mut() {
                None => {
                    self.done = true;
                    break;
                }
                Some(level) => {
                    if level.advance() {
                        let depth = self.levels.len();
                        let rem = self.remaining_after(depth, full);
                        self.fill_from(rem, r);
                        break;
                    }
                    self.levels.pop();
                }
            }
        }
        Some(out)
    }
}

/// All generic monomials for `(d, r)`, materialized.
///
/// Refuses ground sets above [`EAGER_LIMIT_N`] elements unless `force` is
/// set; use [`GenericMonomialIter`] to stream larger cases.
pub fn enumerate_generic_monomials(d: usize, r: usize) -> Result<Vec<GenericMonomial>> {
    enumerate_generic_monomials_with(d, r, false)
}

pub fn enumerate_generic_monomials_with(d: usize, r: usize, force: bool) -> Result<Vec<GenericMonomial>> {
    let count = generic_monomial_count(d, r)?;
    if !force && d * r > EAGER_LIMIT_N {
        return Err(Error::Resource(format!(
            "{count} monomials for N = {}; stream them with GenericMonomialIter",
            d * r
        )));
    }
    if count > 50_000_000 {
        return Err(Error::Resource(format!("{count} monomials do not fit in memory")));
    }
    let out: Vec<_> = GenericMonomialIter::new(d, r)?.collect();
    debug_assert_eq!(out.len() as u128, count);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multisets_counts_and_order() {
        assert_eq!(enumerate_multisets(2, 4).unwrap().len(), 5);
        let zero = enumerate_multisets(3, 0).unwrap();
        assert_eq!(zero, vec![Multiset::empty(3)]);
        let m = enumerate_multisets(3, 2).unwrap();
        assert_eq!(m.len(), 6);
        assert_eq!(m[0].exponents(), &[2, 0, 0]);
        assert_eq!(m[5].exponents(), &[0, 0, 2]);
        assert!(m.windows(2).all(|w| w[0] < w[1]));
        assert!(matches!(enumerate_multisets(0, 2), Err(Error::EmptyDomain(_))));
        assert_eq!(enumerate_multisets(0, 0).unwrap().len(), 1);
    }

    #[test]
    fn subsets() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(4, 2)[1], vec![0, 2]);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
        assert_eq!(combinations(15, 3).len() as u128, binomial(15, 3));
    }

    #[test]
    fn union_examples() {
        let a = Multiset::new(vec![2, 0]);
        let b = Multiset::new(vec![0, 1]);
        assert_eq!(multiset_union(&a, &b).unwrap().exponents(), &[2, 1]);
        assert_eq!(multiset_union(&a, &Multiset::empty(2)).unwrap(), a);
        let c = Multiset::new(vec![1, 1]);
        assert_eq!(multiset_union(&c, &a).unwrap(), multiset_union(&a, &c).unwrap());
        assert_eq!(multiset_union(&c, &a).unwrap().exponents(), &[3, 1]);
        assert!(multiset_union(&a, &Multiset::empty(3)).is_err());
    }

    #[test]
    fn generic_monomial_counts() {
        assert_eq!(enumerate_generic_monomials(3, 2).unwrap().len(), 10);
        assert_eq!(enumerate_generic_monomials(1, 5).unwrap().len(), 1);
        let w = enumerate_generic_monomials(4, 3).unwrap();
        assert_eq!(w.len(), 5775);
        assert!(w.windows(2).all(|p| p[0] < p[1]));
        assert!(enumerate_generic_monomials(5, 3).is_err());
        assert_eq!(GenericMonomialIter::new(5, 3).unwrap().count() as u128, generic_monomial_count(5, 3).unwrap());
    }

    #[test]
    fn generic_monomial_validation() {
        let m = GenericMonomial::from_blocks(3, &[vec![4, 5, 6], vec![1, 2, 3]]).unwrap();
        assert_eq!(m.blocks(), vec![vec![1, 2, 3], vec![4, 5, 6]]);
        assert_eq!(m.label_of(4), 1);
        assert!(GenericMonomial::from_blocks(3, &[vec![1, 2, 3], vec![3, 4, 5]]).is_err());
        assert!(GenericMonomial::from_blocks(3, &[vec![1, 2], vec![3, 4, 5, 6]]).is_err());
        assert!(GenericMonomial::from_blocks(2, &[vec![1, 7], vec![2, 3]]).is_err());
    }

    #[test]
    fn canonical_tableau_examples() {
        let t = canonical_tableau(&IntPartition::new(vec![3, 3, 1]).unwrap()).unwrap();
        assert_eq!((t.row_of(4), t.col_of(4)), (2, 1));
        assert_eq!(t.box_at(3, 1), Some(7));
        let t = canonical_tableau(&IntPartition::row(6)).unwrap();
        assert!((1..=6).all(|i| t.row_of(i) == 1));
        let t = canonical_tableau(&IntPartition::new(vec![5, 3, 1]).unwrap()).unwrap();
        assert_eq!(t.row_of(9), 3);
        assert!((1..9).all(|i| t.row_of(i) <= t.row_of(i + 1)));
        assert_eq!(t.columns()[0], vec![0, 5, 8]);
    }

    fn count_syt(shape: &[usize]) -> u128 {
        // remove a corner box in every possible way
        if shape.iter().sum::<usize>() == 0 {
            return 1;
        }
        let mut total = 0;
        for i in 0..shape.len() {
            let below = shape.get(i + 1).copied().unwrap_or(0);
            if shape[i] > below {
                let mut s = shape.to_vec();
                s[i] -= 1;
                total += count_syt(&s);
            }
        }
        total
    }

    #[test]
    fn hook_length_against_tableau_count() {
        assert_eq!(irrep_dimension(&IntPartition::row(7)), 1);
        assert_eq!(irrep_dimension(&IntPartition::column(3)), 1);
        let l = IntPartition::new(vec![4, 2]).unwrap();
        assert_eq!(irrep_dimension(&l), count_syt(&[4, 2]));
        assert_eq!(irrep_dimension(&l), 9);
        for n in 1..=10 {
            let total: u128 = partitions(n).iter().map(|p| irrep_dimension(p).pow(2)).sum();
            assert_eq!(total, factorial(n));
            for p in partitions(n) {
                assert_eq!(irrep_dimension(&p), count_syt(p.parts()));
            }
        }
    }

    #[test]
    fn partition_lists() {
        assert_eq!(partitions_up_to(4, 1), vec![IntPartition::row(4)]);
        let two: Vec<Vec<usize>> = partitions_up_to(4, 2).iter().map(|p| p.parts().to_vec()).collect();
        assert_eq!(two, vec![vec![4], vec![3, 1], vec![2, 2]]);
        let mut brute = 0;
        for a in 0..=12usize {
            for b in 0..=a {
                for c in 0..=b {
                    if a + b + c == 12 {
                        brute += 1;
                    }
                }
            }
        }
        assert_eq!(partitions_up_to(12, 3).len(), brute);
        assert_eq!(partitions(10).len(), 42);
    }

    #[test]
    fn signed_permutation_list() {
        let p = signed_permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p[0], (vec![0, 1, 2], 1));
        assert_eq!(p[1], (vec![0, 2, 1], -1));
        assert_eq!(p.iter().map(|(_, s)| *s as i32).sum::<i32>(), 0);
        assert_eq!(signed_permutations(0), vec![(vec![], 1)]);
    }

    #[test]
    fn conjugate_partition() {
        let l = IntPartition::new(vec![5, 3, 1]).unwrap();
        assert_eq!(l.conjugate().parts(), &[3, 2, 2, 1, 1]);
        assert_eq!(l.conjugate().conjugate(), l);
    }

    proptest::proptest! {
        #[test]
        fn multiset_count_formula(n in 1usize..5, d in 0usize..7) {
            proptest::prop_assert_eq!(enumerate_multisets(n, d).unwrap().len() as u128, binomial(n + d - 1, d));
        }

        #[test]
        fn union_is_commutative_and_associative(
            a in proptest::collection::vec(0u32..4, 3),
            b in proptest::collection::vec(0u32..4, 3),
            c in proptest::collection::vec(0u32..4, 3),
        ) {
            let (a, b, c) = (Multiset::new(a), Multiset::new(b), Multiset::new(c));
            let ab = multiset_union(&a, &b).unwrap();
            proptest::prop_assert_eq!(&ab, &multiset_union(&b, &a).unwrap());
            proptest::prop_assert_eq!(ab.degree(), a.degree() + b.degree());
            let left = multiset_union(&ab, &c).unwrap();
            let right = multiset_union(&a, &multiset_union(&b, &c).unwrap()).unwrap();
            proptest::prop_assert_eq!(left, right);
        }

        #[test]
        fn generic_count_formula(d in 1usize..4, r in 1usize..4) {
            let count = enumerate_generic_monomials(d, r).unwrap().len() as u128;
            proptest::prop_assert_eq!(count * factorial(d).pow(r as u32) * factorial(r), factorial(d * r));
        }
    }
}
