use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::form::{build_in, specialize, FormCoefficients};
use crate::combinatorics::combinations;
use crate::error::Result;
use crate::polyalg::VarSpace;

/// Results for one catalecticant `Cat_f(a,b;n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecantDegree {
    pub a: usize,
    pub b: usize,
    pub rank: usize,
    pub minors_checked: usize,
    pub nonzero_minors: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecantReport {
    pub k: usize,
    pub n: usize,
    pub d: usize,
    pub degrees: Vec<SecantDegree>,
}

impl SecantReport {
    /// All `(k+1)×(k+1)` minors vanish and every rank is at most `k`.
    pub fn vanishes(&self) -> bool {
        self.degrees.iter().all(|g| g.nonzero_minors == 0 && g.rank <= self.k)
    }
}

/// Evaluates every `(k+1)×(k+1)` minor of `Cat_f(i,d−i;n)` for `1 ≤ i ≤ d−1`.
pub fn secant_vanishing_check(k: usize, f: &FormCoefficients) -> Result<SecantReport> {
    let (n, d) = (f.n(), f.d());
    let space = VarSpace::new(n, d)?;
    let mut degrees = Vec::new();
    for a in 1..d {
        let m = specialize(&build_in(space.clone(), a, d - a)?, f)?;
        let rows = combinations(m.nrows(), k + 1);
        let cols = combinations(m.ncols(), k + 1);
        let mut nonzero = 0;
        for r in &rows {
            for c in &cols {
                if !m.minor(r, c).is_zero() {
                    nonzero += 1;
                }
            }
        }
        degrees.push(SecantDegree {
            a,
            b: d - a,
            rank: m.rank(),
            minors_checked: rows.len() * cols.len(),
            nonzero_minors: nonzero,
        });
    }
    Ok(SecantReport { k, n, d, degrees })
}
