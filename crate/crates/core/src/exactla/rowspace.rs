use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::field::{Field, PrimeField, RationalField, ScalarMode};
use crate::error::{Error, Result};

/// A sparse coordinate vector: strictly increasing indices, nonzero values.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseVector<E> {
    dim: usize,
    mode: ScalarMode,
    entries: Vec<(usize, E)>,
}

impl<E: Clone + PartialEq> SparseVector<E> {
    /// Sorts the entries, sums duplicates and drops zeros.
    pub fn new<F: Field<Elem = E>>(field: &F, dim: usize, mut entries: Vec<(usize, E)>) -> Result<Self> {
        if let Some(&(i, _)) = entries.iter().find(|(i, _)| *i >= dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: i + 1 });
        }
        entries.sort_by_key(|(i, _)| *i);
        let mut merged: Vec<(usize, E)> = Vec::with_capacity(entries.len());
        for (i, v) in entries {
            match merged.last_mut() {
                Some((j, acc)) if *j == i => *acc = field.add(acc, &v),
                _ => merged.push((i, v)),
            }
        }
        merged.retain(|(_, v)| !field.is_zero(v));
        Ok(SparseVector { dim, mode: field.mode(), entries: merged })
    }

    pub fn zero<F: Field<Elem = E>>(field: &F, dim: usize) -> Self {
        SparseVector { dim, mode: field.mode(), entries: Vec::new() }
    }

    pub fn unit<F: Field<Elem = E>>(field: &F, dim: usize, i: usize) -> Self {
        assert!(i < dim);
        SparseVector { dim, mode: field.mode(), entries: vec![(i, field.one())] }
    }

    pub fn from_dense<F: Field<Elem = E>>(field: &F, values: &[E]) -> Self {
        let entries = values
            .iter()
            .enumerate()
            .filter(|(_, v)| !field.is_zero(v))
            .map(|(i, v)| (i, v.clone()))
            .collect();
        SparseVector { dim: values.len(), mode: field.mode(), entries }
    }

    pub(crate) fn from_sorted_unchecked(dim: usize, mode: ScalarMode, entries: Vec<(usize, E)>) -> Self {
        SparseVector { dim, mode, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mode(&self) -> ScalarMode {
        self.mode
    }

    pub fn entries(&self) -> &[(usize, E)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, E)> {
        self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&E> {
        self.entries.binary_search_by_key(&i, |(j, _)| *j).ok().map(|k| &self.entries[k].1)
    }

    pub fn to_dense<F: Field<Elem = E>>(&self, field: &F) -> Vec<E> {
        let mut out = vec![field.zero(); self.dim];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }
}

impl SparseVector<BigRational> {
    /// Reduces a rational vector into a prime field.
    pub fn to_modular(&self, field: &PrimeField) -> Result<SparseVector<u64>> {
        let entries = self
            .entries
            .iter()
            .map(|(i, v)| Ok((*i, field.from_rational(v)?)))
            .collect::<Result<Vec<_>>>()?;
        SparseVector::new(field, self.dim, entries)
    }
}

/// `a - c * b` on sorted sparse rows.
fn sub_scaled<F: Field>(field: &F, a: &[(usize, F::Elem)], c: &F::Elem, b: &[(usize, F::Elem)]) -> Vec<(usize, F::Elem)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let (ia, ib) = (a[i].0, b[j].0);
        if ia < ib {
            out.push(a[i].clone());
            i += 1;
        } else if ib < ia {
            out.push((ib, field.neg(&field.mul(c, &b[j].1))));
            j += 1;
        } else {
            let v = field.sub_mul(&a[i].1, c, &b[j].1);
            if !field.is_zero(&v) {
                out.push((ia, v));
            }
            i += 1;
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    for (ib, vb) in &b[j..] {
        out.push((*ib, field.neg(&field.mul(c, vb))));
    }
    out
}

/// A subspace of `K^dim` in reduced row echelon form.
///
/// Every row has a distinct pivot (its first nonzero coordinate) equal to 1,
/// and every other row is zero in that column. The form is canonical, so two
/// row spaces are equal as subspaces iff their rows coincide.
#[derive(Clone)]
pub struct RowSpace<F: Field> {
    field: F,
    dim: usize,
    rows: BTreeMap<usize, Vec<(usize, F::Elem)>>,
}

impl<F: Field> fmt::Debug for RowSpace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RowSpace")
            .field("mode", &self.field.mode())
            .field("dim", &self.dim)
            .field("rank", &self.rows.len())
            .finish()
    }
}

impl<F: Field> RowSpace<F> {
    pub fn new(field: F, dim: usize) -> Self {
        RowSpace { field, dim, rows: BTreeMap::new() }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn mode(&self) -> ScalarMode {
        self.field.mode()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Echelon rows in increasing pivot order.
    pub fn rows(&self) -> impl Iterator<Item = SparseVector<F::Elem>> + '_ {
        let mode = self.mode();
        self.rows
            .values()
            .map(move |r| SparseVector::from_sorted_unchecked(self.dim, mode, r.clone()))
    }

    fn check(&self, v: &SparseVector<F::Elem>) -> Result<()> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: v.dim() });
        }
        if v.mode() != self.mode() {
            return Err(Error::ModeMismatch(self.mode().to_string(), v.mode().to_string()));
        }
        Ok(())
    }

    fn reduce_entries(&self, v: &[(usize, F::Elem)]) -> Vec<(usize, F::Elem)> {
        let mut acc: Vec<(usize, F::Elem)> = v.to_vec();
        for (c, x) in v {
            if let Some(row) = self.rows.get(c) {
                acc = sub_scaled(&self.field, &acc, x, row);
            }
        }
        acc
    }

    /// The remainder of `v` modulo the row space (zero iff `v` lies in it).
    pub fn reduce(&self, v: &SparseVector<F::Elem>) -> Result<SparseVector<F::Elem>> {
        self.check(v)?;
        Ok(SparseVector::from_sorted_unchecked(self.dim, self.mode(), self.reduce_entries(v.entries())))
    }

    pub fn contains(&self, v: &SparseVector<F::Elem>) -> Result<bool> {
        Ok(self.reduce(v)?.is_zero())
    }

    /// Adds `v` to the spanning set; returns whether the rank increased.
    pub fn insert(&mut self, v: &SparseVector<F::Elem>) -> Result<bool> {
        self.check(v)?;
        Ok(self.insert_entries(v.entries()))
    }

    pub(crate) fn insert_entries(&mut self, v: &[(usize, F::Elem)]) -> bool {
        let mut rem = self.reduce_entries(v);
        if rem.is_empty() {
            return false;
        }
        let pivot = rem[0].0;
        let scale = self.field.inv(&rem[0].1);
        for (_, x) in rem.iter_mut() {
            *x = self.field.mul(x, &scale);
        }
        for row in self.rows.values_mut() {
            if row[0].0 > pivot {
                // rows are keyed by pivot; entries of later rows start after their pivot
                continue;
            }
            if let Ok(k) = row.binary_search_by_key(&pivot, |(j, _)| *j) {
                let c = row[k].1.clone();
                *row = sub_scaled(&self.field, row, &c, &rem);
            }
        }
        self.rows.insert(pivot, rem);
        true
    }

    /// Inserts every row of `other`; the result spans the sum of the two spaces.
    pub fn merge(&mut self, other: &RowSpace<F>) -> Result<()> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        if other.mode() != self.mode() {
            return Err(Error::ModeMismatch(self.mode().to_string(), other.mode().to_string()));
        }
        for row in other.rows.values() {
            self.insert_entries(row);
        }
        Ok(())
    }

    /// Rank of the sum of the two spaces.
    pub fn join_rank(&self, other: &RowSpace<F>) -> Result<usize> {
        let (big, small) = if self.rank() >= other.rank() { (self, other) } else { (other, self) };
        let mut join = big.clone();
        join.merge(small)?;
        Ok(join.rank())
    }

    /// Same subspace (canonical forms coincide).
    pub fn same_space(&self, other: &RowSpace<F>) -> bool {
        self.dim == other.dim && self.mode() == other.mode() && self.rows == other.rows
    }
}

/// Outcome of comparing two subspaces of the same ambient space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Equal,
    /// The first space is strictly contained in the second.
    StrictlyContained,
    /// The first space strictly contains the second.
    StrictlyContains,
    Incomparable,
}

impl Verdict {
    pub fn from_ranks(rank_a: usize, rank_b: usize, rank_join: usize) -> Verdict {
        match (rank_join == rank_a, rank_join == rank_b) {
            (true, true) => Verdict::Equal,
            (false, true) => Verdict::StrictlyContained,
            (true, false) => Verdict::StrictlyContains,
            (false, false) => Verdict::Incomparable,
        }
    }

    pub fn flip(self) -> Verdict {
        match self {
            Verdict::StrictlyContained => Verdict::StrictlyContains,
            Verdict::StrictlyContains => Verdict::StrictlyContained,
            v => v,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Equal => "equal",
            Verdict::StrictlyContained => "strictly_contained",
            Verdict::StrictlyContains => "strictly_contains",
            Verdict::Incomparable => "incomparable",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub rank_a: usize,
    pub rank_b: usize,
    pub rank_join: usize,
    pub verdict: Verdict,
}

pub fn compare<F: Field>(a: &RowSpace<F>, b: &RowSpace<F>) -> Result<Comparison> {
    let rank_join = a.join_rank(b)?;
    let (rank_a, rank_b) = (a.rank(), b.rank());
    Ok(Comparison { rank_a, rank_b, rank_join, verdict: Verdict::from_ranks(rank_a, rank_b, rank_join) })
}

/// Rank of a list of rational rows, over the rationals or modulo a prime.
pub fn rank(rows: &[SparseVector<BigRational>], mode: ScalarMode) -> Result<usize> {
    let Some(dim) = rows.first().map(|r| r.dim()) else {
        return Ok(0);
    };
    if let Some(bad) = rows.iter().find(|r| r.dim() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: bad.dim() });
    }
    match mode {
        ScalarMode::Exact => {
            let mut rs = RowSpace::new(RationalField, dim);
            for r in rows {
                rs.insert_entries(r.entries());
            }
            Ok(rs.rank())
        }
        ScalarMode::Modular(p) => {
            let field = PrimeField::new(p)?;
            let mut rs = RowSpace::new(field, dim);
            for r in rows {
                rs.insert(&r.to_modular(&field)?)?;
            }
            Ok(rs.rank())
        }
    }
}
