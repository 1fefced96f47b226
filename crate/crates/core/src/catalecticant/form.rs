use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{enumerate_multisets, Multiset};
use crate::error::{Error, Result};
use crate::exactla::{rank, RationalField, ScalarMode, SparseVector};
use crate::polyalg::{minor_det, Poly, SymbolicMatrix, VarSpace};

/// The generic catalecticant `Cat(a,b;n)`: rows indexed by multisets of size
/// `a`, columns by multisets of size `b`, entry `z_{α∪β}`.
#[derive(Clone, Debug)]
pub struct GenericCatalecticant {
    a: usize,
    b: usize,
    space: Arc<VarSpace>,
    rows: Vec<Multiset>,
    cols: Vec<Multiset>,
    matrix: SymbolicMatrix,
}

pub fn build_generic(a: usize, b: usize, n: usize) -> Result<GenericCatalecticant> {
    if n == 0 {
        return Err(Error::EmptyDomain("catalecticant over 0 symbols".into()));
    }
    let space = VarSpace::new(n, a + b)?;
    build_in(space, a, b)
}

/// Builds `Cat(a,b;n)` over an existing variable space of degree `a+b`.
pub fn build_in(space: Arc<VarSpace>, a: usize, b: usize) -> Result<GenericCatalecticant> {
    if a + b != space.d() {
        return Err(Error::DegreeMismatch { expected: space.d(), found: a + b });
    }
    let n = space.n();
    let rows = enumerate_multisets(n, a)?;
    let cols = enumerate_multisets(n, b)?;
    let entries = rows
        .iter()
        .map(|r| cols.iter().map(|c| space.id(&r.union(c)?)).collect::<Result<Vec<u32>>>())
        .collect::<Result<Vec<_>>>()?;
    let matrix = SymbolicMatrix::new(n, a + b, entries)?;
    Ok(GenericCatalecticant { a, b, space, rows, cols, matrix })
}

impl GenericCatalecticant {
    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn n(&self) -> usize {
        self.space.n()
    }

    pub fn d(&self) -> usize {
        self.a + self.b
    }

    pub fn space(&self) -> &Arc<VarSpace> {
        &self.space
    }

    pub fn row_labels(&self) -> &[Multiset] {
        &self.rows
    }

    pub fn col_labels(&self) -> &[Multiset] {
        &self.cols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn matrix(&self) -> &SymbolicMatrix {
        &self.matrix
    }

    /// Variable id of entry `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.matrix.entry(i, j)
    }

    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<Poly> {
        minor_det(&self.matrix, rows, cols)
    }

    /// Sum of the exponent vectors of the row and column labels of a minor,
    /// which is the weight of every term of that minor.
    pub fn minor_weight(&self, rows: &[usize], cols: &[usize]) -> Vec<u32> {
        let mut w = vec![0u32; self.n()];
        for m in rows.iter().map(|&i| &self.rows[i]).chain(cols.iter().map(|&j| &self.cols[j])) {
            for (acc, e) in w.iter_mut().zip(m.exponents()) {
                *acc += e;
            }
        }
        w
    }
}

/// Coefficients `c_γ` of a form `f = Σ c_γ e^{(γ)}` in the divided power basis.
/// Missing keys are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormCoefficients {
    n: usize,
    d: usize,
    coeffs: BTreeMap<Multiset, BigRational>,
}

impl FormCoefficients {
    pub fn zero(n: usize, d: usize) -> Self {
        FormCoefficients { n, d, coeffs: BTreeMap::new() }
    }

    pub fn from_pairs(n: usize, d: usize, pairs: impl IntoIterator<Item = (Multiset, BigRational)>) -> Result<Self> {
        let mut f = FormCoefficients::zero(n, d);
        for (g, c) in pairs {
            f.set(g, c)?;
        }
        Ok(f)
    }

    /// Coefficients listed in the fixed multiset order.
    pub fn from_values(n: usize, d: usize, values: &[BigRational]) -> Result<Self> {
        let keys = enumerate_multisets(n, d)?;
        if keys.len() != values.len() {
            return Err(Error::DimensionMismatch { expected: keys.len(), found: values.len() });
        }
        FormCoefficients::from_pairs(n, d, keys.into_iter().zip(values.iter().cloned()))
    }

    /// A form with independent uniform integer coefficients in `[-bound, bound]`.
    pub fn random(n: usize, d: usize, bound: i64, rng: &mut impl Rng) -> Result<Self> {
        let values: Vec<BigRational> = (0..enumerate_multisets(n, d)?.len())
            .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-bound..=bound))))
            .collect();
        FormCoefficients::from_values(n, d, &values)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn set(&mut self, gamma: Multiset, c: BigRational) -> Result<()> {
        if gamma.n() != self.n || gamma.degree() != self.d {
            return Err(Error::DegreeMismatch { expected: self.d, found: gamma.degree() });
        }
        if c.is_zero() {
            self.coeffs.remove(&gamma);
        } else {
            self.coeffs.insert(gamma, c);
        }
        Ok(())
    }

    pub fn get(&self, gamma: &Multiset) -> BigRational {
        self.coeffs.get(gamma).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (&Multiset, &BigRational)> {
        self.coeffs.iter()
    }

    /// The coefficients listed in the fixed multiset order.
    pub fn values(&self) -> Vec<BigRational> {
        enumerate_multisets(self.n, self.d)
            .expect("n >= 1")
            .iter()
            .map(|g| self.get(g))
            .collect()
    }

    /// Value of `z_γ` at the point `f` of the space of forms.
    pub fn point(&self, space: &VarSpace) -> impl Fn(u32) -> Option<BigRational> + '_ {
        let vars: Vec<BigRational> = space.vars().iter().map(|g| self.get(g)).collect();
        move |id| vars.get(id as usize).cloned()
    }
}

/// A matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericMatrix {
    rows: Vec<Vec<BigRational>>,
}

impl NumericMatrix {
    pub fn new(rows: Vec<Vec<BigRational>>) -> Self {
        NumericMatrix { rows }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(Zero::is_zero)
    }

    pub fn rank(&self) -> usize {
        let vectors: Vec<_> = self.rows.iter().map(|r| SparseVector::from_dense(&RationalField, r)).collect();
        rank(&vectors, ScalarMode::Exact).expect("rows share a dimension")
    }

    /// Determinant of the submatrix on the given rows and columns.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> BigRational {
        det(rows.iter().map(|&i| cols.iter().map(|&j| self.rows[i][j].clone()).collect()).collect())
    }
}

/// Determinant by fraction-free elimination over the rationals.
fn det(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let k = m.len();
    let mut acc = BigRational::one();
    for c in 0..k {
        let Some(p) = (c..k).find(|&i| !m[i][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            m.swap(p, c);
            acc = -acc;
        }
        let pivot = m[c][c].clone();
        acc *= &pivot;
        for i in c + 1..k {
            if m[i][c].is_zero() {
                continue;
            }
            let factor = &m[i][c] / &pivot;
            for j in c..k {
                let delta = &factor * &m[c][j];
                m[i][j] -= delta;
            }
        }
    }
    acc
}

/// `Cat_f(a,b;n)`: the entries `c_{α∪β}` of the form `f`.
pub fn specialize(cat: &GenericCatalecticant, f: &FormCoefficients) -> Result<NumericMatrix> {
    if f.n() != cat.n() {
        return Err(Error::DimensionMismatch { expected: cat.n(), found: f.n() });
    }
    if f.d() != cat.d() {
        return Err(Error::DegreeMismatch { expected: cat.d(), found: f.d() });
    }
    let vars = cat.space().vars();
    let rows = (0..cat.nrows())
        .map(|i| (0..cat.ncols()).map(|j| f.get(&vars[cat.entry(i, j) as usize])).collect())
        .collect();
    Ok(NumericMatrix::new(rows))
}

/// `f = Σ_j ℓ_j^{(d)}` with `ℓ_j = Σ_i t_i e_i`, so that `c_γ = Σ_j t_j^γ`.
pub fn power_sum_form(linear_forms: &[Vec<BigRational>], n: usize, d: usize) -> Result<FormCoefficients> {
    for t in linear_forms {
        if t.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: t.len() });
        }
        if t.iter().all(Zero::is_zero) {
            return Err(Error::Degenerate("zero linear form".into()));
        }
    }
    let keys = enumerate_multisets(n, d)?;
    let pairs = keys.into_iter().map(|g| {
        let c = linear_forms
            .iter()
            .map(|t| {
                t.iter()
                    .zip(g.exponents())
                    .fold(BigRational::one(), |acc, (x, &e)| acc * num_traits::pow(x.clone(), e as usize))
            })
            .fold(BigRational::zero(), |acc, v| acc + v);
        (g, c)
    });
    FormCoefficients::from_pairs(n, d, pairs)
}

/// Random linear forms with integer coordinates in `[-bound, bound]`, never zero.
pub fn random_linear_forms(count: usize, n: usize, bound: i64, rng: &mut impl Rng) -> Vec<Vec<BigRational>> {
    (0..count)
        .map(|_| loop {
            let t: Vec<i64> = (0..n).map(|_| rng.gen_range(-bound..=bound)).collect();
            if t.iter().any(|&x| x != 0) {
                break t.into_iter().map(|x| BigRational::from_integer(BigInt::from(x))).collect();
            }
        })
        .collect()
}

/// The Hilbert function `h_0..h_d` of the apolar algebra of a form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertVector(pub Vec<usize>);

impl HilbertVector {
    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn is_symmetric(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }
}

pub fn hilbert_function(f: &FormCoefficients) -> Result<HilbertVector> {
    if f.is_zero() {
        return Err(Error::Degenerate("the Hilbert function of the zero form is undefined".into()));
    }
    let space = VarSpace::new(f.n(), f.d())?;
    let h = (0..=f.d())
        .map(|i| Ok(specialize(&build_in(space.clone(), i, f.d() - i)?, f)?.rank()))
        .collect::<Result<Vec<_>>>()?;
    let h = HilbertVector(h);
    assert!(h.is_symmetric(), "Hilbert function {:?} of a Gorenstein algebra is not symmetric", h.0);
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::binomial;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn ints(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn hankel_shapes() {
        let c = build_generic(1, 3, 2).unwrap();
        assert_eq!((c.nrows(), c.ncols()), (2, 4));
        // z_i is the variable of x^(4-i) y^i, which has id i
        let ids: Vec<Vec<u32>> = c.matrix().rows().to_vec();
        assert_eq!(ids, vec![vec![0, 1, 2, 3], vec![1, 2, 3, 4]]);
        let c = build_generic(2, 2, 2).unwrap();
        assert_eq!(c.matrix().rows(), &[vec![0, 1, 2], vec![1, 2, 3], vec![2, 3, 4]]);
        let c = build_generic(0, 3, 3).unwrap();
        assert_eq!(c.nrows(), 1);
        assert_eq!(c.matrix().rows()[0], (0..10).collect::<Vec<u32>>());
    }

    #[test]
    fn generalized_hankel_property() {
        let c = build_generic(2, 3, 3).unwrap();
        for i in 0..c.nrows() {
            for j in 0..c.ncols() {
                let u = c.row_labels()[i].union(&c.col_labels()[j]).unwrap();
                assert_eq!(c.space().var(c.entry(i, j)), &u);
            }
        }
    }

    #[test]
    fn specializations() {
        let cat = build_generic(2, 2, 2).unwrap();
        let pure = power_sum_form(&[ints(&[1, 1])], 2, 4).unwrap();
        assert_eq!(specialize(&cat, &pure).unwrap().rank(), 1);
        assert!(specialize(&cat, &FormCoefficients::zero(2, 4)).unwrap().is_zero());
        let f = FormCoefficients::from_values(2, 4, &ints(&[1, 0, 0, 0, 1])).unwrap();
        assert_eq!(power_sum_form(&[ints(&[1, 0]), ints(&[0, 1])], 2, 4).unwrap(), f);
        let m = specialize(&cat, &f).unwrap();
        assert_eq!(m.rank(), 2);
        assert!(m.minor(&[0, 1, 2], &[0, 1, 2]).is_zero());
        assert!(specialize(&cat, &FormCoefficients::zero(2, 5)).is_err());
        assert!(power_sum_form(&[ints(&[0, 0])], 2, 4).is_err());
    }

    #[test]
    fn single_power_is_an_indicator() {
        let f = power_sum_form(&[ints(&[1, 0, 0])], 3, 4).unwrap();
        let support: Vec<_> = f.nonzero().collect();
        assert_eq!(support.len(), 1);
        assert_eq!(support[0].0.exponents(), &[4, 0, 0]);
    }

    #[test]
    fn hilbert_examples() {
        let pure = power_sum_form(&[ints(&[2, -1, 3])], 3, 5).unwrap();
        assert_eq!(hilbert_function(&pure).unwrap().0, vec![1; 6]);
        let f = FormCoefficients::from_values(2, 4, &ints(&[1, 0, 0, 0, 1])).unwrap();
        assert_eq!(hilbert_function(&f).unwrap().0, vec![1, 2, 2, 2, 1]);
        assert!(hilbert_function(&FormCoefficients::zero(2, 4)).is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let generic = (0..20)
            .filter(|_| hilbert_function(&FormCoefficients::random(2, 4, 50, &mut rng).unwrap()).unwrap().0 == vec![1, 2, 3, 2, 1])
            .count();
        assert!(generic > 10);
    }

    #[test]
    fn generic_power_sums_have_expected_rank() {
        for s in 1..=6 {
            let mut hits = 0;
            for seed in 0..20 {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let f = power_sum_form(&random_linear_forms(s, 3, 20, &mut rng), 3, 4).unwrap();
                if specialize(&build_generic(2, 2, 3).unwrap(), &f).unwrap().rank() == s.min(6) {
                    hits += 1;
                }
            }
            assert!(hits > 10, "s = {s}");
        }
        assert_eq!(binomial(4, 2), 6);
    }

    #[test]
    fn determinant_agrees_with_leibniz() {
        let m = NumericMatrix::new(vec![ints(&[2, 1, 0]), ints(&[1, 3, 1]), ints(&[0, 1, 4])]);
        assert_eq!(m.minor(&[0, 1, 2], &[0, 1, 2]), q(18));
        assert_eq!(m.minor(&[1, 0], &[0, 1]), q(-5));
    }
}
