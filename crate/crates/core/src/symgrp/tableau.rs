use std::fmt;

use crate::combinatorics::{canonical_tableau, signed_permutations, GenericMonomial, IntPartition};
use crate::error::{Error, Result};

/// A filling of a Young diagram, listed in row-major box order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    shape: IntPartition,
    filling: Vec<u8>,
}

impl Tableau {
    pub fn new(shape: IntPartition, filling: Vec<u8>) -> Result<Self> {
        if filling.len() != shape.weight() {
            return Err(Error::SizeMismatch { partition: shape.weight(), n: filling.len() });
        }
        Ok(Tableau { shape, filling })
    }

    /// The tableau of `c_λ·m`: box `p` holds the (1-based) index of the block of `m` containing `p`.
    pub fn of_monomial(shape: &IntPartition, m: &GenericMonomial) -> Result<Self> {
        if shape.weight() != m.ground_size() {
            return Err(Error::SizeMismatch { partition: shape.weight(), n: m.ground_size() });
        }
        Ok(Tableau { shape: shape.clone(), filling: m.labels().into_iter().map(|l| l + 1).collect() })
    }

    pub fn shape(&self) -> &IntPartition {
        &self.shape
    }

    pub fn filling(&self) -> &[u8] {
        &self.filling
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        let mut out = Vec::with_capacity(self.shape.len());
        let mut start = 0;
        for &len in self.shape.parts() {
            out.push(self.filling[start..start + len].to_vec());
            start += len;
        }
        out
    }

    pub fn columns(&self) -> Vec<Vec<u8>> {
        let t = canonical_tableau(&self.shape).expect("nonempty shape");
        t.columns().iter().map(|c| c.iter().map(|&p| self.filling[p]).collect()).collect()
    }

    pub fn has_repeated_column_entry(&self) -> bool {
        self.columns().iter().any(|c| (1..c.len()).any(|i| c[..i].contains(&c[i])))
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows().iter().enumerate() {
            if i > 0 {
                write!(f, "/")?;
            }
            for x in row {
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

/// Result of normalizing `c_λ·m` by the tableau relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normalized {
    Zero,
    /// `c_λ·m = sign · c_λ·m'` where `m'` is the monomial of `tableau`.
    Form { sign: i8, tableau: Tableau },
}

impl Normalized {
    pub fn is_zero(&self) -> bool {
        matches!(self, Normalized::Zero)
    }
}

fn sort_with_sign(v: &mut [u8]) -> i8 {
    let mut sign = 1i8;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    sign
}

/// A canonical representative of `c_λ·m` under sorting within columns (with
/// sign), permuting columns of equal length and relabeling the blocks.
///
/// Returns zero when a column repeats a symbol, or when the representative is
/// reached with both signs.
pub fn tableau_normalize(shape: &IntPartition, m: &GenericMonomial) -> Result<Normalized> {
    let t = Tableau::of_monomial(shape, m)?;
    if t.has_repeated_column_entry() {
        return Ok(Normalized::Zero);
    }
    let canon = canonical_tableau(shape)?;
    let positions = canon.columns();
    let r = m.r();
    let mut best: Option<(Vec<u8>, i8)> = None;
    let mut both_signs = false;
    for (relabel, _) in signed_permutations(r) {
        let mut sign = 1i8;
        let mut cols: Vec<Vec<u8>> = positions
            .iter()
            .map(|c| {
                let mut v: Vec<u8> = c.iter().map(|&p| relabel[(t.filling[p] - 1) as usize] as u8 + 1).collect();
                sign *= sort_with_sign(&mut v);
                v
            })
            .collect();
        // columns are weakly decreasing in length, so equal lengths are contiguous
        let mut start = 0;
        while start < cols.len() {
            let end = (start..cols.len()).find(|&j| cols[j].len() != cols[start].len()).unwrap_or(cols.len());
            cols[start..end].sort();
            start = end;
        }
        let mut filling = vec![0u8; shape.weight()];
        for (c, col) in positions.iter().zip(&cols) {
            for (&p, &x) in c.iter().zip(col) {
                filling[p] = x;
            }
        }
        match &best {
            Some((f, s)) if *f == filling => both_signs |= *s != sign,
            Some((f, _)) if *f < filling => {}
            _ => {
                best = Some((filling, sign));
                both_signs = false;
            }
        }
    }
    let (filling, sign) = best.expect("at least one relabeling");
    if both_signs {
        return Ok(Normalized::Zero);
    }
    Ok(Normalized::Form { sign, tableau: Tableau { shape: shape.clone(), filling } })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(d: usize, blocks: &[&[usize]]) -> GenericMonomial {
        GenericMonomial::from_blocks(d, &blocks.iter().map(|b| b.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn shape(p: &[usize]) -> IntPartition {
        IntPartition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn tableau_pictures() {
        let m = mono(3, &[&[1, 3, 8], &[2, 4, 7], &[5, 6, 9]]);
        let t = Tableau::of_monomial(&shape(&[6, 3]), &m).unwrap();
        assert_eq!(t.to_string(), "121233/213");
        let d = mono(3, &[&[1, 2, 3], &[4, 6, 7], &[5, 8, 9]]);
        assert_eq!(Tableau::of_monomial(&shape(&[5, 3, 1]), &d).unwrap().to_string(), "11123/223/3");
    }

    #[test]
    fn relabeled_monomials_normalize_identically() {
        let s = shape(&[6, 3]);
        let m = mono(3, &[&[1, 3, 8], &[2, 4, 7], &[5, 6, 9]]);
        // the same monomial drawn with the blocks listed in another order
        let relabeled = Tableau::new(s.clone(), vec![3, 1, 3, 1, 2, 2, 1, 3, 2]).unwrap();
        assert_eq!(relabeled.to_string(), "313122/132");
        let a = tableau_normalize(&s, &m).unwrap();
        assert!(!a.is_zero());
        // swap two boxes of the first column: the sign flips, the form stays
        let swapped = mono(3, &[&[7, 3, 8], &[2, 4, 1], &[5, 6, 9]]);
        match (a, tableau_normalize(&s, &swapped).unwrap()) {
            (Normalized::Form { sign: s1, tableau: t1 }, Normalized::Form { sign: s2, tableau: t2 }) => {
                assert_eq!(t1, t2);
                assert_eq!(s1, -s2);
            }
            _ => panic!("expected nonzero forms"),
        }
    }

    #[test]
    fn zero_detection() {
        let m = mono(3, &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        // (7,1,1): boxes 1, 8, 9 form the first column, labels 1, 3, 3
        assert!(tableau_normalize(&shape(&[7, 1, 1]), &m).unwrap().is_zero());
        // distinct labels in the first column, yet self-negating
        let m = mono(3, &[&[1, 2, 3], &[4, 5, 8], &[6, 7, 9]]);
        let t = Tableau::of_monomial(&shape(&[7, 1, 1]), &m).unwrap();
        assert!(!t.has_repeated_column_entry());
        assert!(tableau_normalize(&shape(&[7, 1, 1]), &m).unwrap().is_zero());
        assert!(tableau_normalize(&shape(&[4, 1]), &m).is_err());
    }
}
