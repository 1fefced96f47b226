use serde::{Deserialize, Serialize};

use crate::combinatorics::Multiset;
use crate::error::{Error, Result};
use crate::polyalg::{Poly, PolyMonomial, VarSpace};
use num_bigint::BigInt;
use num_rational::BigRational;

/// The 2×2 minor `[m₁,m₂|n₁,n₂] = z_{m₁∪n₁} z_{m₂∪n₂} − z_{m₁∪n₂} z_{m₂∪n₁}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Minor2 {
    pub rows: [Multiset; 2],
    pub cols: [Multiset; 2],
}

impl Minor2 {
    pub fn new(m1: Multiset, m2: Multiset, n1: Multiset, n2: Multiset) -> Self {
        Minor2 { rows: [m1, m2], cols: [n1, n2] }
    }

    pub fn row_degree(&self) -> usize {
        self.rows[0].degree()
    }

    pub fn col_degree(&self) -> usize {
        self.cols[0].degree()
    }

    pub fn transpose(&self) -> Minor2 {
        Minor2 { rows: self.cols.clone(), cols: self.rows.clone() }
    }

    pub fn poly(&self, space: &VarSpace) -> Result<Poly> {
        let z = |i: usize, j: usize| space.id(&self.rows[i].union(&self.cols[j])?);
        let one = BigRational::from_integer(BigInt::from(1));
        Ok(Poly::from_terms(
            space.n(),
            space.d(),
            [
                (PolyMonomial::from_slice(&[z(0, 0)?, z(1, 1)?]), one.clone()),
                (PolyMonomial::from_slice(&[z(0, 1)?, z(1, 0)?]), -one),
            ],
        ))
    }
}

/// One signed term of a rewriting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewriteTerm {
    pub sign: i8,
    pub minor: Minor2,
}

/// Splits off the `first` smallest elements of `m`.
fn split(m: &Multiset, first: usize) -> Result<(Multiset, Multiset)> {
    let e = m.elements();
    Ok((Multiset::from_elements(m.n(), &e[..first])?, Multiset::from_elements(m.n(), &e[first..])?))
}

fn union(x: &Multiset, y: &Multiset) -> Multiset {
    x.union(y).expect("same number of symbols")
}

/// Which decomposition a rewriting uses, with the admissible split parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Split {
    /// `x + y = a`, `0 ≤ x, y ≤ b−1`.
    RowSplit { lo: usize, hi: usize },
    /// `x + y = b`, `1 ≤ x, y ≤ a+1`.
    ColumnSplit { lo: usize, hi: usize },
}

/// The branch and range of `x` used to rewrite a minor of `Cat(a,b;n)`.
pub fn split_range(a: usize, b: usize) -> Result<Split> {
    if b < 2 {
        return Err(Error::Precondition(format!("cannot rewrite into Cat({},{}) from Cat({a},{b})", a + 1, b as i64 - 1)));
    }
    if a + 2 <= 2 * b {
        Ok(Split::RowSplit { lo: a.saturating_sub(b - 1), hi: a.min(b - 1) })
    } else {
        assert!(b <= 2 * a + 2, "one of the two decompositions always applies");
        Ok(Split::ColumnSplit { lo: 1.max(b.saturating_sub(a + 1)), hi: (a + 1).min(b - 1) })
    }
}

/// Writes `[m₁,m₂|n₁,n₂]`, a 2×2 minor of `Cat(a,b;n)`, as a sum of 2×2 minors
/// of `Cat(a+1,b−1;n)`, using the smallest admissible split parameter.
pub fn rewrite_2x2_minor(m1: &Multiset, m2: &Multiset, n1: &Multiset, n2: &Multiset) -> Result<Vec<RewriteTerm>> {
    let x = match split_range(m1.degree(), n1.degree())? {
        Split::RowSplit { lo, .. } | Split::ColumnSplit { lo, .. } => lo,
    };
    rewrite_2x2_minor_with(m1, m2, n1, n2, x)
}

/// The rewriting with split parameter `x`; the multisets are decomposed by
/// taking their smallest elements first.
pub fn rewrite_2x2_minor_with(m1: &Multiset, m2: &Multiset, n1: &Multiset, n2: &Multiset, x: usize) -> Result<Vec<RewriteTerm>> {
    let (a, b) = (m1.degree(), n1.degree());
    if m2.degree() != a || n2.degree() != b {
        return Err(Error::DegreeMismatch { expected: a, found: m2.degree() });
    }
    let ((u1, u2), (v1, v2), (al1, al2), (be1, be2)) = match split_range(a, b)? {
        Split::RowSplit { lo, hi } => {
            if x < lo || x > hi {
                return Err(Error::Precondition(format!("split parameter {x} outside {lo}..={hi}")));
            }
            let y = a - x;
            (split(m1, y)?, split(m2, x)?, split(n1, x + 1)?, split(n2, y + 1)?)
        }
        Split::ColumnSplit { lo, hi } => {
            if x < lo || x > hi {
                return Err(Error::Precondition(format!("split parameter {x} outside {lo}..={hi}")));
            }
            let y = b - x;
            (split(m1, a + 1 - y)?, split(m2, a + 1 - x)?, split(n1, y)?, split(n2, x)?)
        }
    };
    let first = Minor2::new(union(&u1, &al1), union(&v1, &be1), union(&u2, &al2), union(&v2, &be2));
    let second = Minor2::new(union(&u1, &be2), union(&v1, &al2), union(&v2, &al1), union(&u2, &be1));
    // the second minor may come out with rows of size b−1; its transpose has the same determinant
    let second = if second.row_degree() == a + 1 { second } else { second.transpose() };
    debug_assert_eq!(first.row_degree(), a + 1);
    debug_assert_eq!(second.row_degree(), a + 1);
    Ok(vec![RewriteTerm { sign: 1, minor: first }, RewriteTerm { sign: 1, minor: second }])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalecticant::ideal_graded_piece;
    use crate::combinatorics::enumerate_multisets;
    use crate::exactla::RationalField;
    use proptest::prelude::*;

    fn ms(n: usize, e: &[usize]) -> Multiset {
        Multiset::from_elements(n, e).unwrap()
    }

    fn sum(terms: &[RewriteTerm], space: &VarSpace) -> Poly {
        terms.iter().fold(Poly::zero(space.n(), space.d()), |acc, t| {
            let p = t.minor.poly(space).unwrap();
            if t.sign > 0 {
                &acc + &p
            } else {
                &acc - &p
            }
        })
    }

    #[test]
    fn example_instance() {
        let space = VarSpace::new(2, 4).unwrap();
        let (m1, m2, n1, n2) = (ms(2, &[0]), ms(2, &[1]), ms(2, &[0, 0, 0]), ms(2, &[1, 1, 1]));
        let terms = rewrite_2x2_minor(&m1, &m2, &n1, &n2).unwrap();
        assert!(terms.iter().all(|t| t.minor.row_degree() == 2 && t.minor.col_degree() == 2));
        let lhs = Minor2::new(m1.clone(), m2, n1.clone(), n2.clone()).poly(&space).unwrap();
        assert!(!lhs.is_zero());
        assert_eq!(sum(&terms, &space), lhs);
        let equal = rewrite_2x2_minor(&m1, &m1, &n1, &n2).unwrap();
        assert!(sum(&equal, &space).is_zero());
        assert!(rewrite_2x2_minor(&ms(2, &[0, 0, 0]), &ms(2, &[1, 1, 1]), &ms(2, &[0]), &ms(2, &[1])).is_err());
    }

    #[test]
    fn every_minor_rewrites_into_the_next_piece() {
        let n = 3;
        for (a, b) in [(1, 3), (2, 2)] {
            let d = a + b;
            let space = VarSpace::new(n, d).unwrap();
            let target = ideal_graded_piece(RationalField, 2, a + 1, b - 1, n, 2).unwrap();
            let rows = enumerate_multisets(n, a).unwrap();
            let cols = enumerate_multisets(n, b).unwrap();
            for (i, m1) in rows.iter().enumerate() {
                for m2 in &rows[i + 1..] {
                    for (j, n1) in cols.iter().enumerate() {
                        for n2 in &cols[j + 1..] {
                            let terms = rewrite_2x2_minor(m1, m2, n1, n2).unwrap();
                            let lhs = Minor2::new(m1.clone(), m2.clone(), n1.clone(), n2.clone()).poly(&space).unwrap();
                            assert_eq!(sum(&terms, &space), lhs);
                            for t in &terms {
                                assert!(target.contains_poly(&t.minor.poly(&space).unwrap()).unwrap());
                            }
                        }
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn random_splits_satisfy_the_identity(
            a in 1usize..4, seed in any::<u64>(),
        ) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let n = 3;
            let d = 6;
            let b = d - a;
            let pick = |rng: &mut rand_chacha::ChaCha8Rng, size: usize| {
                let e: Vec<usize> = (0..size).map(|_| rng.gen_range(0..n)).collect();
                ms(n, &e)
            };
            let (m1, m2, n1, n2) = (pick(&mut rng, a), pick(&mut rng, a), pick(&mut rng, b), pick(&mut rng, b));
            let (lo, hi) = match split_range(a, b).unwrap() {
                Split::RowSplit { lo, hi } | Split::ColumnSplit { lo, hi } => (lo, hi),
            };
            let x = rng.gen_range(lo..=hi);
            let space = VarSpace::new(n, d).unwrap();
            let terms = rewrite_2x2_minor_with(&m1, &m2, &n1, &n2, x).unwrap();
            let lhs = Minor2::new(m1, m2, n1, n2).poly(&space).unwrap();
            prop_assert_eq!(sum(&terms, &space), lhs);
        }
    }
}
