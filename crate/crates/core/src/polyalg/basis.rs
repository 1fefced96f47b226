use std::collections::HashMap;

use num_rational::BigRational;

use super::poly::{Poly, PolyMonomial};
use crate::exactla::{Field, SparseVector};
use crate::error::{Error, Result};

/// The degree-`r` monomials in `num_vars` variables, in lexicographic order
/// of their sorted variable-id tuples.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    num_vars: usize,
    r: usize,
    monomials: Vec<PolyMonomial>,
    index: HashMap<PolyMonomial, usize>,
}

impl MonomialBasis {
    pub fn new(num_vars: usize, r: usize) -> MonomialBasis {
        let mut monomials = Vec::new();
        let mut current = Vec::with_capacity(r);
        fill(num_vars as u32, r, 0, &mut current, &mut monomials);
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        MonomialBasis { num_vars, r, monomials, index }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[PolyMonomial] {
        &self.monomials
    }

    pub fn position(&self, m: &PolyMonomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

fn fill(num_vars: u32, r: usize, start: u32, current: &mut Vec<u32>, out: &mut Vec<PolyMonomial>) {
    if current.len() == r {
        out.push(PolyMonomial::from_slice(current));
        return;
    }
    for v in start..num_vars {
        current.push(v);
        fill(num_vars, r, v, current, out);
        current.pop();
    }
}

/// Coordinates of a homogeneous polynomial in a monomial basis.
pub fn to_vector<F: Field>(field: &F, p: &Poly, basis: &MonomialBasis) -> Result<SparseVector<F::Elem>> {
    let entries = p
        .terms()
        .map(|(m, c)| {
            if m.degree() != basis.degree() {
                return Err(Error::DegreeMismatch { expected: basis.degree(), found: m.degree() });
            }
            let i = basis.position(m).ok_or_else(|| Error::OutsideBasis(format!("{:?}", m.vars())))?;
            Ok((i, field.from_rational(c)?))
        })
        .collect::<Result<Vec<_>>>()?;
    SparseVector::new(field, basis.len(), entries)
}

/// The polynomial with the given coordinates.
pub fn from_vector<F: Field>(field: &F, v: &SparseVector<F::Elem>, basis: &MonomialBasis, n: usize, d: usize) -> Result<Poly> {
    if v.dim() != basis.len() {
        return Err(Error::DimensionMismatch { expected: basis.len(), found: v.dim() });
    }
    Ok(Poly::from_terms(
        n,
        d,
        v.entries()
            .iter()
            .map(|(i, c)| (basis.monomials()[*i].clone(), field.to_rational(c)))
            .collect::<Vec<(PolyMonomial, BigRational)>>(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::binomial;
    use crate::exactla::RationalField;
    use num_bigint::BigInt;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn basis_sizes_and_order() {
        let b = MonomialBasis::new(28, 3);
        assert_eq!(b.len() as u128, binomial(30, 3));
        assert_eq!(b.len(), 4060);
        assert!(b.monomials().windows(2).all(|w| w[0] < w[1]));
        assert_eq!(MonomialBasis::new(5, 0).len(), 1);
    }

    #[test]
    fn coordinates() {
        let b = MonomialBasis::new(5, 2);
        let zero = to_vector(&RationalField, &Poly::zero(2, 4), &b).unwrap();
        assert!(zero.is_zero());
        let m = PolyMonomial::from_slice(&[1, 3]);
        let p = Poly::monomial(2, 4, m.clone(), BigRational::from_integer(1.into()));
        let v = to_vector(&RationalField, &p, &b).unwrap();
        assert_eq!(v.nnz(), 1);
        assert_eq!(v.entries()[0].0, b.position(&m).unwrap());
        assert!(to_vector(&RationalField, &Poly::var(2, 4, 0), &b).is_err());
    }

    #[test]
    fn random_round_trips() {
        let b = MonomialBasis::new(6, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let terms: Vec<_> = (0..rng.gen_range(0..8))
                .map(|_| {
                    let m = b.monomials()[rng.gen_range(0..b.len())].clone();
                    (m, BigRational::new(BigInt::from(rng.gen_range(-9..10)), BigInt::from(rng.gen_range(1..5))))
                })
                .collect();
            let p = Poly::from_terms(3, 2, terms);
            let v = to_vector(&RationalField, &p, &b).unwrap();
            let back = from_vector(&RationalField, &v, &b, 3, 2).unwrap();
            assert_eq!(back, p);
            assert_eq!(to_vector(&RationalField, &back, &b).unwrap(), v);
        }
    }
}
