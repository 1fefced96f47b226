use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::welement::{GenericFlattening, WElement};
use crate::combinatorics::{
    canonical_tableau, enumerate_generic_monomials, factorial, signed_permutations, GenericMonomial, IntPartition, Multiset,
};
use crate::error::{Error, Result};
use crate::polyalg::{MonomialBasis, Poly, PolyMonomial, VarSpace};

/// The Young symmetrizer `c_λ = R_λ·C_λ` of the canonical tableau of `λ`
/// acting on `W_d^r`, with `C_λ` (the signed column sum) applied first.
///
/// The image of `c_λ` consists of row-invariant vectors, which are determined
/// by their sums over the row-group orbits of monomials. An orbit is named by
/// the specialization of its monomials that replaces each element by the row
/// of its box, so a vector of `hwt_λ(W_d^r)` is stored as a sparse integer
/// vector indexed by these orbit keys.
#[derive(Clone, Debug)]
pub struct Symmetrizer {
    shape: IntPartition,
    d: usize,
    r: usize,
    row_of: Vec<usize>,
    columns: Vec<Vec<usize>>,
    column_perms: Vec<Vec<(Vec<usize>, i8)>>,
    space: Arc<VarSpace>,
    keys: Vec<PolyMonomial>,
    key_index: HashMap<PolyMonomial, usize>,
}

/// A sparse integer vector in the orbit-key coordinates of a [`Symmetrizer`].
pub type HwtVector = Vec<(usize, i64)>;

fn add_into(acc: &mut HashMap<usize, i64>, v: &HwtVector, s: i64) {
    for &(i, c) in v {
        *acc.entry(i).or_insert(0) += s * c;
    }
}

fn finish(acc: HashMap<usize, i64>) -> HwtVector {
    let mut v: HwtVector = acc.into_iter().filter(|&(_, c)| c != 0).collect();
    v.sort_unstable();
    v
}

impl Symmetrizer {
    pub fn new(shape: &IntPartition, d: usize, r: usize) -> Result<Self> {
        if shape.weight() != d * r {
            return Err(Error::SizeMismatch { partition: shape.weight(), n: d * r });
        }
        let t = canonical_tableau(shape)?;
        let columns = t.columns();
        let mut by_len: HashMap<usize, Vec<(Vec<usize>, i8)>> = HashMap::new();
        let column_perms = columns
            .iter()
            .map(|c| by_len.entry(c.len()).or_insert_with(|| signed_permutations(c.len())).clone())
            .collect();
        let rows = shape.len();
        let space = VarSpace::new(rows, d)?;
        let weight: Vec<u32> = shape.parts().iter().map(|&p| p as u32).collect();
        let keys: Vec<PolyMonomial> = MonomialBasis::new(space.len(), r)
            .monomials()
            .iter()
            .filter(|m| space.weight(m) == weight)
            .cloned()
            .collect();
        let key_index = keys.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
        Ok(Symmetrizer {
            shape: shape.clone(),
            d,
            r,
            row_of: t.row_indices().to_vec(),
            columns,
            column_perms,
            space,
            keys,
            key_index,
        })
    }

    pub fn shape(&self) -> &IntPartition {
        &self.shape
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Number of row-group orbits on monomials (the coordinate dimension).
    pub fn dim(&self) -> usize {
        self.keys.len()
    }

    pub fn keys(&self) -> &[PolyMonomial] {
        &self.keys
    }

    /// Variable space of the orbit keys: `z_γ` with `γ` a multiset of rows.
    pub fn key_space(&self) -> &Arc<VarSpace> {
        &self.space
    }

    /// `|R_λ| = Π λ_i!`.
    pub fn row_group_order(&self) -> BigInt {
        self.shape.parts().iter().map(|&p| BigInt::from(factorial(p))).product()
    }

    fn check(&self, m: &GenericMonomial) -> Result<()> {
        if m.d() != self.d || m.r() != self.r {
            return Err(Error::SizeMismatch { partition: self.shape.weight(), n: m.ground_size() });
        }
        Ok(())
    }

    /// The orbit key of a monomial given by its block labels per position.
    fn key_of_counts(&self, counts: &[Vec<u32>]) -> usize {
        let ids: smallvec::SmallVec<[u32; 4]> = counts
            .iter()
            .map(|c| self.space.id(&Multiset::new(c.clone())).expect("row counts have degree d"))
            .collect();
        self.key_index[&PolyMonomial::new(ids)]
    }

    /// The orbit index of a monomial.
    pub fn orbit_of(&self, m: &GenericMonomial) -> Result<usize> {
        self.check(m)?;
        let mut counts = vec![vec![0u32; self.shape.len()]; self.r];
        for (p, l) in m.labels().into_iter().enumerate() {
            counts[l as usize][self.row_of[p]] += 1;
        }
        Ok(self.key_of_counts(&counts))
    }

    /// `c_λ·m` in orbit coordinates: the coefficient of an orbit is the sum of
    /// the coefficients of `C_λ·m` on that orbit.
    pub fn apply_monomial(&self, m: &GenericMonomial) -> Result<HwtVector> {
        self.check(m)?;
        let labels = m.labels();
        let col_labels: Vec<Vec<u8>> = self.columns.iter().map(|c| c.iter().map(|&p| labels[p]).collect()).collect();
        if col_labels.iter().any(|c| (1..c.len()).any(|i| c[..i].contains(&c[i]))) {
            return Ok(Vec::new());
        }
        let mut counts = vec![vec![0u32; self.shape.len()]; self.r];
        let mut acc = HashMap::new();
        self.column_pass(0, 1, &col_labels, &mut counts, &mut acc);
        Ok(finish(acc))
    }

    fn column_pass(&self, c: usize, sign: i64, cols: &[Vec<u8>], counts: &mut Vec<Vec<u32>>, acc: &mut HashMap<usize, i64>) {
        if c == cols.len() {
            *acc.entry(self.key_of_counts(counts)).or_insert(0) += sign;
            return;
        }
        for (perm, s) in &self.column_perms[c] {
            // the entry in row i moves to row perm[i]
            for (i, &l) in cols[c].iter().enumerate() {
                counts[l as usize][perm[i]] += 1;
            }
            self.column_pass(c + 1, sign * *s as i64, cols, counts, acc);
            for (i, &l) in cols[c].iter().enumerate() {
                counts[l as usize][perm[i]] -= 1;
            }
        }
    }

    /// `c_λ·D` for a generic flattening `D`.
    pub fn apply_flattening(&self, f: &GenericFlattening) -> Result<HwtVector> {
        let mut acc = HashMap::new();
        for (m, s, _) in f.signed_terms() {
            add_into(&mut acc, &self.apply_monomial(&m)?, s as i64);
        }
        Ok(finish(acc))
    }

    /// `c_λ·w` in orbit coordinates.
    pub fn apply(&self, w: &WElement) -> Result<Vec<(usize, BigRational)>> {
        let mut acc: HashMap<usize, BigRational> = HashMap::new();
        for (m, c) in w.terms() {
            for (i, x) in self.apply_monomial(m)? {
                *acc.entry(i).or_insert_with(BigRational::zero) += c * BigRational::from_integer(BigInt::from(x));
            }
        }
        let mut v: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        v.sort_by_key(|(i, _)| *i);
        Ok(v)
    }

    /// The orbit-coordinate vector as a polynomial in the key variables.
    pub fn key_poly(&self, v: &[(usize, BigRational)]) -> Poly {
        Poly::from_terms(self.shape.len(), self.d, v.iter().map(|(i, c)| (self.keys[*i].clone(), c.clone())))
    }
}

/// `c_λ·w` as an element of `W_d^r` (requires enumerating `W_d^r`).
pub fn young_apply(shape: &IntPartition, w: &WElement) -> Result<WElement> {
    let sym = Symmetrizer::new(shape, w.d(), w.r())?;
    let orbit_sums = sym.apply(w)?;
    if orbit_sums.is_empty() {
        return Ok(WElement::zero(w.d(), w.r()));
    }
    let mut members: Vec<Vec<GenericMonomial>> = vec![Vec::new(); sym.dim()];
    for m in enumerate_generic_monomials(w.d(), w.r())? {
        members[sym.orbit_of(&m)?].push(m);
    }
    // R·x = (|R|/|O|)·Σ_{y ∈ O} y for x in the orbit O
    let order = BigRational::from_integer(sym.row_group_order());
    let mut out = WElement::zero(w.d(), w.r());
    for (o, s) in orbit_sums {
        let c = &order * s / BigRational::from_integer(BigInt::from(members[o].len()));
        for m in &members[o] {
            out.add_term(m.clone(), c.clone());
        }
    }
    Ok(out)
}

/// The specialization `Q_λ`: element `j` becomes the row of box `j` in the
/// canonical tableau of `λ`, so each block becomes a multiset of size `d` over
/// `n` symbols.
pub fn specialize_weight(shape: &IntPartition, w: &WElement, n: usize) -> Result<Poly> {
    if shape.len() > n {
        return Err(Error::TooManyParts { parts: shape.len(), n });
    }
    if shape.weight() != w.ground_size() {
        return Err(Error::SizeMismatch { partition: shape.weight(), n: w.ground_size() });
    }
    let rows = canonical_tableau(shape)?.row_indices().to_vec();
    let space = VarSpace::new(n, w.d())?;
    let terms = w
        .terms()
        .map(|(m, c)| {
            let ids = m
                .masks()
                .iter()
                .map(|&mask| {
                    let elems: Vec<usize> = crate::combinatorics::mask_elements(mask).iter().map(|&e| rows[e - 1]).collect();
                    space.id(&Multiset::from_elements(n, &elems)?)
                })
                .collect::<Result<smallvec::SmallVec<[u32; 4]>>>()?;
            Ok((PolyMonomial::new(ids), c.clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::from_terms(n, w.d(), terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{irrep_dimension, GenericMonomialIter};
    use crate::exactla::{RationalField, RowSpace, SparseVector};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn shape(p: &[usize]) -> IntPartition {
        IntPartition::new(p.to_vec()).unwrap()
    }

    fn random_element(d: usize, r: usize, rng: &mut ChaCha8Rng) -> WElement {
        let all: Vec<_> = GenericMonomialIter::new(d, r).unwrap().collect();
        let terms = (0..4).map(|_| {
            let m = all[rng.gen_range(0..all.len())].clone();
            (m, BigRational::from_integer(BigInt::from(rng.gen_range(-5..=5))))
        });
        WElement::from_terms(d, r, terms).unwrap()
    }

    #[test]
    fn quasi_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (d, r) in [(2, 2), (3, 2), (2, 3), (4, 2), (3, 3)] {
            let n = d * r;
            for l in crate::combinatorics::partitions(n) {
                if l.len() > r {
                    continue;
                }
                let w = random_element(d, r, &mut rng);
                let once = young_apply(&l, &w).unwrap();
                let twice = young_apply(&l, &once).unwrap();
                let scalar = BigRational::new(BigInt::from(factorial(n)), BigInt::from(irrep_dimension(&l)));
                assert_eq!(twice, once.scale(&scalar), "λ = {l}, d = {d}, r = {r}");
            }
        }
    }

    #[test]
    fn trivial_shape_symmetrizes() {
        let a = GenericMonomial::from_blocks(3, &[vec![1, 2, 3], vec![4, 5, 6]]).unwrap();
        let b = GenericMonomial::from_blocks(3, &[vec![1, 2, 4], vec![3, 5, 6]]).unwrap();
        let diff = WElement::monomial(a.clone()).checked_sub(&WElement::monomial(b)).unwrap();
        assert!(young_apply(&shape(&[6]), &diff).unwrap().is_zero());
        let full = young_apply(&shape(&[6]), &WElement::monomial(a)).unwrap();
        assert_eq!(full.len(), 10);
        let column = young_apply(&shape(&[1, 1, 1, 1, 1, 1]), &full).unwrap();
        assert!(column.is_zero());
    }

    #[test]
    fn two_row_shape_has_multiplicity_one() {
        let sym = Symmetrizer::new(&shape(&[4, 2]), 3, 2).unwrap();
        let mut rs = RowSpace::new(RationalField, sym.dim());
        for m in enumerate_generic_monomials(3, 2).unwrap() {
            let v = sym.apply_monomial(&m).unwrap();
            let v = SparseVector::new(&RationalField, sym.dim(), v.into_iter().map(|(i, c)| (i, BigRational::from_integer(c.into()))).collect()).unwrap();
            rs.insert(&v).unwrap();
        }
        assert_eq!(rs.rank(), 1);
    }

    #[test]
    fn orbit_coordinates_match_the_specialization() {
        // Q_λ(c_λ·w) = |R_λ| · (orbit sums of c_λ·w as a key polynomial)
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let l = shape(&[3, 2, 1]);
        let sym = Symmetrizer::new(&l, 2, 3).unwrap();
        for _ in 0..5 {
            let w = random_element(2, 3, &mut rng);
            let q = specialize_weight(&l, &young_apply(&l, &w).unwrap(), 3).unwrap();
            let expected = sym.key_poly(&sym.apply(&w).unwrap()).scale(&BigRational::from_integer(sym.row_group_order()));
            assert_eq!(q, expected);
        }
        assert!(specialize_weight(&l, &random_element(2, 3, &mut rng), 2).is_err());
    }

    #[test]
    fn row_blocks_specialize_to_pure_powers() {
        let m = GenericMonomial::from_blocks(2, &[vec![1, 2], vec![3, 4], vec![5, 6]]).unwrap();
        let p = specialize_weight(&shape(&[2, 2, 2]), &WElement::monomial(m), 3).unwrap();
        let space = VarSpace::new(3, 2).unwrap();
        let ids: Vec<u32> = [[2, 0, 0], [0, 2, 0], [0, 0, 2]].iter().map(|e| space.id(&Multiset::new(e.to_vec())).unwrap()).collect();
        assert_eq!(p, Poly::monomial(3, 2, PolyMonomial::from_slice(&ids), BigRational::from_integer(1.into())));
    }
}
