use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::form::{build_in, GenericCatalecticant};
use crate::combinatorics::{combinations, signed_permutations, IntPartition};
use crate::error::{Error, Result};
use crate::exactla::{
    CertificationMode, Comparison, Field, MultiComparison, PrimeField, RationalField, RowSpace, ScalarMode, SparseVector,
    Verdict,
};
use crate::polyalg::{from_vector, to_vector, MonomialBasis, Poly, VarSpace};

/// The degree-`r` piece of the ideal of `k×k` minors of `Cat(a,b;n)`, as a
/// subspace of the degree-`r` forms in the `z` variables.
///
/// Every generator `minor · monomial` is homogeneous for the torus weight
/// (the sum of the exponent vectors of its variables), so the span is kept
/// as one echelon form per weight.
#[derive(Clone, Debug)]
pub struct IdealPiece<F: Field> {
    k: usize,
    a: usize,
    b: usize,
    r: usize,
    space: Arc<VarSpace>,
    basis: Arc<MonomialBasis>,
    field: F,
    blocks: BTreeMap<Vec<u32>, RowSpace<F>>,
}

/// Shared variable space and degree-`r` basis for pieces that are compared.
#[derive(Clone, Debug)]
pub struct GradedAmbient {
    pub space: Arc<VarSpace>,
    pub basis: Arc<MonomialBasis>,
}

impl GradedAmbient {
    pub fn new(n: usize, d: usize, r: usize) -> Result<Self> {
        let space = VarSpace::new(n, d)?;
        let basis = Arc::new(MonomialBasis::new(space.len(), r));
        Ok(GradedAmbient { space, basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub fn ideal_graded_piece<F: Field>(field: F, k: usize, a: usize, b: usize, n: usize, r: usize) -> Result<IdealPiece<F>> {
    let ambient = GradedAmbient::new(n, a + b, r)?;
    ideal_graded_piece_in(field, &ambient, k, a, b, |_| true)
}

/// The piece restricted to the weights accepted by `keep`.
pub fn ideal_graded_piece_in<F: Field>(
    field: F,
    ambient: &GradedAmbient,
    k: usize,
    a: usize,
    b: usize,
    keep: impl Fn(&[u32]) -> bool,
) -> Result<IdealPiece<F>> {
    let r = ambient.basis.degree();
    if r < k {
        return Err(Error::Precondition(format!("degree {r} is below the minor size {k}")));
    }
    let cat = build_in(ambient.space.clone(), a, b)?;
    let mut piece = IdealPiece {
        k,
        a,
        b,
        r,
        space: ambient.space.clone(),
        basis: ambient.basis.clone(),
        field,
        blocks: BTreeMap::new(),
    };
    let cofactors = MonomialBasis::new(ambient.space.len(), r - k);
    let cofactor_weights: Vec<Vec<u32>> = cofactors.monomials().iter().map(|m| ambient.space.weight(m)).collect();
    let row_sets = combinations(cat.nrows(), k);
    let col_sets = combinations(cat.ncols(), k);
    for rows in &row_sets {
        for cols in &col_sets {
            piece.add_minor(&cat, rows, cols, &cofactors, &cofactor_weights, &keep)?;
        }
    }
    Ok(piece)
}

impl<F: Field> IdealPiece<F> {
    fn add_minor(
        &mut self,
        cat: &GenericCatalecticant,
        rows: &[usize],
        cols: &[usize],
        cofactors: &MonomialBasis,
        cofactor_weights: &[Vec<u32>],
        keep: &impl Fn(&[u32]) -> bool,
    ) -> Result<()> {
        let w = cat.minor_weight(rows, cols);
        let mut minor: Option<Poly> = None;
        for (m, mw) in cofactors.monomials().iter().zip(cofactor_weights) {
            let total: Vec<u32> = w.iter().zip(mw).map(|(x, y)| x + y).collect();
            if !keep(&total) {
                continue;
            }
            let minor = match &minor {
                Some(p) => p,
                None => minor.insert(cat.minor(rows, cols)?),
            };
            if minor.is_zero() {
                return Ok(());
            }
            let v = to_vector(&self.field, &minor.mul_monomial(m), &self.basis)?;
            let dim = self.basis.len();
            let field = self.field.clone();
            self.blocks.entry(total).or_insert_with(|| RowSpace::new(field, dim)).insert(&v)?;
        }
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn n(&self) -> usize {
        self.space.n()
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn mode(&self) -> ScalarMode {
        self.field.mode()
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn basis(&self) -> &MonomialBasis {
        &self.basis
    }

    /// Dimension of the ambient space of degree-`r` forms.
    pub fn ambient_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn rank(&self) -> usize {
        self.blocks.values().map(RowSpace::rank).sum()
    }

    /// Dimension of the weight space of the given weight.
    pub fn weight_dimension(&self, weight: &[u32]) -> usize {
        self.blocks.get(weight).map_or(0, RowSpace::rank)
    }

    pub fn blocks(&self) -> &BTreeMap<Vec<u32>, RowSpace<F>> {
        &self.blocks
    }

    pub fn rows(&self) -> impl Iterator<Item = SparseVector<F::Elem>> + '_ {
        self.blocks.values().flat_map(RowSpace::rows)
    }

    /// The remainder of a vector of weight `weight` modulo the piece.
    pub fn reduce(&self, weight: &[u32], v: &SparseVector<F::Elem>) -> Result<SparseVector<F::Elem>> {
        match self.blocks.get(weight) {
            Some(block) => block.reduce(v),
            None => Ok(v.clone()),
        }
    }

    pub fn contains_poly(&self, p: &Poly) -> Result<bool> {
        let v = to_vector(&self.field, p, &self.basis)?;
        let mut by_weight: BTreeMap<Vec<u32>, Vec<(usize, F::Elem)>> = BTreeMap::new();
        for (i, c) in v.entries() {
            by_weight.entry(self.space.weight(&self.basis.monomials()[*i])).or_default().push((*i, c.clone()));
        }
        for (w, entries) in by_weight {
            let part = SparseVector::new(&self.field, self.basis.len(), entries)?;
            if !self.reduce(&w, &part)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn check_compatible(&self, other: &IdealPiece<F>) -> Result<()> {
        if self.basis.len() != other.basis.len() || self.n() != other.n() || self.r != other.r {
            return Err(Error::AmbientMismatch("graded pieces live in different spaces".into()));
        }
        if self.mode() != other.mode() {
            return Err(Error::ModeMismatch(self.mode().to_string(), other.mode().to_string()));
        }
        Ok(())
    }

    /// Ranks of both pieces and of their sum, block by block.
    pub fn compare(&self, other: &IdealPiece<F>) -> Result<Comparison> {
        self.check_compatible(other)?;
        let weights: BTreeSet<&Vec<u32>> = self.blocks.keys().chain(other.blocks.keys()).collect();
        let mut rank_join = 0;
        for w in weights {
            rank_join += match (self.blocks.get(w), other.blocks.get(w)) {
                (Some(x), Some(y)) => x.join_rank(y)?,
                (Some(x), None) => x.rank(),
                (None, Some(y)) => y.rank(),
                (None, None) => 0,
            };
        }
        let (rank_a, rank_b) = (self.rank(), other.rank());
        Ok(Comparison { rank_a, rank_b, rank_join, verdict: Verdict::from_ranks(rank_a, rank_b, rank_join) })
    }

    /// A vector of `other` outside `self`, if there is one.
    pub fn witness_outside(&self, other: &IdealPiece<F>) -> Result<Option<(Vec<u32>, SparseVector<F::Elem>)>> {
        self.check_compatible(other)?;
        for (w, block) in &other.blocks {
            for row in block.rows() {
                if !self.reduce(w, &row)?.is_zero() {
                    return Ok(Some((w.clone(), row)));
                }
            }
        }
        Ok(None)
    }

    /// Multiplicity of the irreducible `GL_n`-module of highest weight `λ`
    /// in the piece, from its weight-space dimensions by the alternating sum
    /// `Σ_w sgn(w) dim M_{λ+ρ−w(ρ)}`. The piece must contain every weight
    /// block that the sum reads (see [`gl_weights`]).
    pub fn gl_multiplicity(&self, lambda: &IntPartition) -> usize {
        let n = self.n();
        if lambda.len() > n {
            return 0;
        }
        let total: i64 = gl_weights(lambda, n)
            .into_iter()
            .map(|(w, sign)| sign as i64 * self.weight_dimension(&w) as i64)
            .sum();
        usize::try_from(total).expect("multiplicities are nonnegative")
    }
}

/// The weights `λ+ρ−w(ρ)` (those with nonnegative entries) and the signs
/// `sgn(w)` entering the highest-weight multiplicity of `λ` for `GL_n`.
pub fn gl_weights(lambda: &IntPartition, n: usize) -> Vec<(Vec<u32>, i8)> {
    if lambda.len() > n {
        return Vec::new();
    }
    let mut lam = lambda.parts().to_vec();
    lam.resize(n, 0);
    signed_permutations(n)
        .into_iter()
        .filter_map(|(perm, sign)| {
            // ρ_i = n-1-i
            let w: Option<Vec<u32>> = (0..n)
                .map(|i| {
                    let v = lam[i] as i64 + (n - 1 - i) as i64 - (n - 1 - perm[i]) as i64;
                    u32::try_from(v).ok()
                })
                .collect();
            w.map(|w| (w, sign))
        })
        .collect()
}

/// A nonmembership certificate: an exact vector of the larger piece whose
/// remainder modulo the smaller piece is nonzero.
#[derive(Clone, Debug)]
pub struct StrictnessCertificate {
    pub weight: Vec<u32>,
    pub witness: Poly,
    pub remainder: SparseVector<BigRational>,
}

/// Exhibits, over the rationals, an element of `I_k(Cat(big,d−big;n))_r`
/// outside `I_k(Cat(small,d−small;n))_r`.
pub fn strictness_certificate(k: usize, n: usize, d: usize, small: usize, big: usize, r: usize) -> Result<Option<StrictnessCertificate>> {
    let ambient = GradedAmbient::new(n, d, r)?;
    let a = ideal_graded_piece_in(RationalField, &ambient, k, small, d - small, |_| true)?;
    let b = ideal_graded_piece_in(RationalField, &ambient, k, big, d - big, |_| true)?;
    Ok(match a.witness_outside(&b)? {
        None => None,
        Some((weight, v)) => {
            let remainder = a.reduce(&weight, &v)?;
            let witness = from_vector(&RationalField, &v, &ambient.basis, n, d)?;
            Some(StrictnessCertificate { weight, witness, remainder })
        }
    })
}

/// One pairwise comparison inside a [`ComparisonReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairVerdict {
    pub t1: usize,
    pub t2: usize,
    pub rank1: usize,
    pub rank2: usize,
    pub rank_join: usize,
    pub verdict: Verdict,
    /// All scalar modes agreed on the three ranks.
    pub consistent: bool,
}

/// Ranks of `I_k(Cat(t,d−t;n))_r` for several `t` and all pairwise verdicts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub k: usize,
    pub n: usize,
    pub d: usize,
    pub r: usize,
    pub ranks: BTreeMap<usize, usize>,
    pub pairs: Vec<PairVerdict>,
    pub certification: CertificationMode,
}

impl ComparisonReport {
    pub fn verdict(&self, t1: usize, t2: usize) -> Option<Verdict> {
        self.pairs.iter().find_map(|p| {
            if (p.t1, p.t2) == (t1, t2) {
                Some(p.verdict)
            } else if (p.t2, p.t1) == (t1, t2) {
                Some(p.verdict.flip())
            } else {
                None
            }
        })
    }

    pub fn all_equal(&self) -> bool {
        self.pairs.iter().all(|p| p.verdict == Verdict::Equal && p.consistent)
    }

    pub fn to_json(&self) -> Value {
        let ranks: serde_json::Map<String, Value> = self.ranks.iter().map(|(t, r)| (t.to_string(), json!(r))).collect();
        let verdicts: serde_json::Map<String, Value> = self
            .pairs
            .iter()
            .map(|p| (format!("{},{}", p.t1, p.t2), json!(p.verdict.as_str())))
            .collect();
        json!({
            "k": self.k,
            "n": self.n,
            "d": self.d,
            "r": self.r,
            "ranks": ranks,
            "verdicts": verdicts,
            "mode": self.certification.label(),
            "primes": self.certification.primes(),
        })
    }
}

fn ranks_and_comparisons<F: Field>(
    field: F,
    ambient: &GradedAmbient,
    k: usize,
    d: usize,
    t_list: &[usize],
    pairs: &[(usize, usize)],
) -> Result<(Vec<usize>, Vec<Comparison>)> {
    let pieces: Vec<IdealPiece<F>> = t_list
        .par_iter()
        .map(|&t| ideal_graded_piece_in(field.clone(), ambient, k, t, d - t, |_| true))
        .collect::<Result<_>>()?;
    let comparisons = pairs
        .par_iter()
        .map(|&(i, j)| pieces[i].compare(&pieces[j]))
        .collect::<Result<_>>()?;
    Ok((pieces.iter().map(IdealPiece::rank).collect(), comparisons))
}

/// Compares `I_k(Cat(t,d−t;n))_r` for all `t` in `t_list`, pairwise, in every
/// scalar mode of the certification.
pub fn compare_ideals(k: usize, n: usize, d: usize, t_list: &[usize], r: usize, certification: &CertificationMode) -> Result<ComparisonReport> {
    if let Some(&t) = t_list.iter().find(|&&t| t == 0 || t >= d) {
        return Err(Error::Precondition(format!("t = {t} is outside 1..{}", d.saturating_sub(1))));
    }
    let ambient = GradedAmbient::new(n, d, r)?;
    let index_pairs: Vec<(usize, usize)> =
        (0..t_list.len()).flat_map(|i| (i + 1..t_list.len()).map(move |j| (i, j))).collect();
    let mut ranks = vec![0usize; t_list.len()];
    let mut per_pair: Vec<Vec<(ScalarMode, Comparison)>> = vec![Vec::new(); index_pairs.len()];
    for mode in certification.scalar_modes() {
        let (rk, cmp) = match mode {
            ScalarMode::Exact => ranks_and_comparisons(RationalField, &ambient, k, d, t_list, &index_pairs)?,
            ScalarMode::Modular(p) => ranks_and_comparisons(PrimeField::new(p)?, &ambient, k, d, t_list, &index_pairs)?,
        };
        for (acc, x) in ranks.iter_mut().zip(rk) {
            *acc = (*acc).max(x);
        }
        for (slot, c) in per_pair.iter_mut().zip(cmp) {
            slot.push((mode, c));
        }
    }
    let pairs = index_pairs
        .iter()
        .zip(per_pair)
        .map(|(&(i, j), per_mode)| {
            let multi = MultiComparison::new(per_mode);
            PairVerdict {
                t1: t_list[i],
                t2: t_list[j],
                rank1: multi.combined.rank_a,
                rank2: multi.combined.rank_b,
                rank_join: multi.combined.rank_join,
                verdict: multi.verdict(),
                consistent: multi.consistent,
            }
        })
        .collect();
    Ok(ComparisonReport {
        k,
        n,
        d,
        r,
        ranks: t_list.iter().copied().zip(ranks).collect(),
        pairs,
        certification: certification.clone(),
    })
}
