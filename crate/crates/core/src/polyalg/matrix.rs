use num_bigint::BigInt;
use num_rational::BigRational;
use smallvec::SmallVec;

use super::poly::{Poly, PolyMonomial};
use crate::combinatorics::signed_permutations;
use crate::error::{Error, Result};

/// A matrix whose entries are single variables `z_γ` (stored as variable ids).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicMatrix {
    n: usize,
    d: usize,
    entries: Vec<Vec<u32>>,
}

impl SymbolicMatrix {
    pub fn new(n: usize, d: usize, entries: Vec<Vec<u32>>) -> Result<Self> {
        if let Some(first) = entries.first() {
            if let Some(bad) = entries.iter().find(|r| r.len() != first.len()) {
                return Err(Error::DimensionMismatch { expected: first.len(), found: bad.len() });
            }
        }
        Ok(SymbolicMatrix { n, d, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn nrows(&self) -> usize {
        self.entries.len()
    }

    pub fn ncols(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.entries
    }

    pub fn transpose(&self) -> SymbolicMatrix {
        let entries = (0..self.ncols()).map(|j| (0..self.nrows()).map(|i| self.entries[i][j]).collect()).collect();
        SymbolicMatrix { n: self.n, d: self.d, entries }
    }
}

fn check_indices(indices: &[usize], bound: usize) -> Result<()> {
    for (k, &i) in indices.iter().enumerate() {
        if i >= bound {
            return Err(Error::DimensionMismatch { expected: bound, found: i + 1 });
        }
        if indices[..k].contains(&i) {
            return Err(Error::RepeatedIndex(i));
        }
    }
    Ok(())
}

/// The `k×k` minor on the given rows and columns, by Leibniz expansion.
pub fn minor_det(m: &SymbolicMatrix, rows: &[usize], cols: &[usize]) -> Result<Poly> {
    if rows.len() != cols.len() {
        return Err(Error::DimensionMismatch { expected: rows.len(), found: cols.len() });
    }
    check_indices(rows, m.nrows())?;
    check_indices(cols, m.ncols())?;
    Ok(leibniz(m.n, m.d, rows.len(), |i, j| m.entries[rows[i]][cols[j]]))
}

/// Leibniz expansion of the determinant of a `k×k` matrix of variables.
pub(crate) fn leibniz(n: usize, d: usize, k: usize, entry: impl Fn(usize, usize) -> u32) -> Poly {
    let terms = signed_permutations(k).into_iter().map(|(perm, sign)| {
        let vars: SmallVec<[u32; 4]> = perm.iter().enumerate().map(|(i, &j)| entry(i, j)).collect();
        (PolyMonomial::new(vars), BigRational::from_integer(BigInt::from(sign)))
    });
    Poly::from_terms(n, d, terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn generic(k: usize, l: usize) -> SymbolicMatrix {
        // distinct variables in every position
        let entries = (0..k).map(|i| (0..l).map(|j| (i * l + j) as u32).collect()).collect();
        SymbolicMatrix::new(1, 1, entries).unwrap()
    }

    #[test]
    fn minor_examples() {
        let m = generic(3, 4);
        let one = minor_det(&m, &[1], &[2]).unwrap();
        assert_eq!(one, Poly::var(1, 1, 6));
        let d3 = minor_det(&m, &[0, 1, 2], &[0, 1, 3]).unwrap();
        assert_eq!(d3.len(), 6);
        assert!(matches!(minor_det(&m, &[0, 0], &[1, 2]), Err(Error::RepeatedIndex(0))));
        assert!(minor_det(&m, &[0, 1, 2, 3], &[0, 1, 2, 3]).is_err());
    }

    #[test]
    fn repeated_rows_in_a_hankel_matrix_vanish() {
        // two identical rows of variables
        let m = SymbolicMatrix::new(1, 1, vec![vec![0, 1, 2], vec![0, 1, 2]]).unwrap();
        assert!(minor_det(&m, &[0, 1], &[0, 2]).unwrap().is_zero());
    }

    #[test]
    fn alternating_and_transpose() {
        for k in 2..=3 {
            let m = generic(4, 4);
            let rows: Vec<usize> = (0..k).collect();
            let cols: Vec<usize> = (1..=k).collect();
            let base = minor_det(&m, &rows, &cols).unwrap();
            let mut swapped = rows.clone();
            swapped.swap(0, 1);
            assert_eq!(minor_det(&m, &swapped, &cols).unwrap(), -&base);
            assert_eq!(minor_det(&m.transpose(), &cols, &rows).unwrap(), base);
        }
    }
}
