use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::combinatorics::{enumerate_multisets, Multiset};
use crate::error::{Error, Result};

/// The variables `z_γ` for all multisets `γ` of size `d` over `n` symbols.
///
/// A variable is identified by the position of `γ` in the fixed multiset
/// order, so ids agree between any two spaces with the same `(n, d)`.
#[derive(Debug)]
pub struct VarSpace {
    n: usize,
    d: usize,
    vars: Vec<Multiset>,
    index: HashMap<Multiset, u32>,
}

impl VarSpace {
    pub fn new(n: usize, d: usize) -> Result<Arc<VarSpace>> {
        let vars = enumerate_multisets(n, d)?;
        let index = vars.iter().enumerate().map(|(i, m)| (m.clone(), i as u32)).collect();
        Ok(Arc::new(VarSpace { n, d, vars, index }))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[Multiset] {
        &self.vars
    }

    pub fn var(&self, id: u32) -> &Multiset {
        &self.vars[id as usize]
    }

    /// The id of `z_γ`.
    pub fn id(&self, gamma: &Multiset) -> Result<u32> {
        if gamma.n() != self.n || gamma.degree() != self.d {
            return Err(Error::DegreeMismatch { expected: self.d, found: gamma.degree() });
        }
        Ok(self.index[gamma])
    }

    /// Sum of the exponent vectors of the variables in a monomial.
    pub fn weight(&self, m: &PolyMonomial) -> Vec<u32> {
        let mut w = vec![0u32; self.n];
        for &v in m.vars() {
            for (acc, e) in w.iter_mut().zip(self.vars[v as usize].exponents()) {
                *acc += e;
            }
        }
        w
    }
}

/// A variable `z_γ`, named by its multiset.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct VarIndex(pub Multiset);

/// A monomial in the `z` variables: the sorted list of variable ids, with repetition.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct PolyMonomial(SmallVec<[u32; 4]>);

impl PolyMonomial {
    pub fn new(mut vars: SmallVec<[u32; 4]>) -> Self {
        vars.sort_unstable();
        PolyMonomial(vars)
    }

    pub fn from_slice(vars: &[u32]) -> Self {
        Self::new(SmallVec::from_slice(vars))
    }

    pub fn one() -> Self {
        PolyMonomial(SmallVec::new())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn vars(&self) -> &[u32] {
        &self.0
    }

    pub fn mul(&self, other: &PolyMonomial) -> PolyMonomial {
        let mut v: SmallVec<[u32; 4]> = SmallVec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            if self.0[i] <= other.0[j] {
                v.push(self.0[i]);
                i += 1;
            } else {
                v.push(other.0[j]);
                j += 1;
            }
        }
        v.extend_from_slice(&self.0[i..]);
        v.extend_from_slice(&other.0[j..]);
        PolyMonomial(v)
    }
}

/// A polynomial in the variables `z_γ` (`|γ| = d`, `n` symbols) with rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    n: usize,
    d: usize,
    terms: BTreeMap<PolyMonomial, BigRational>,
}

impl Poly {
    pub fn zero(n: usize, d: usize) -> Poly {
        Poly { n, d, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, d: usize, c: BigRational) -> Poly {
        let mut p = Poly::zero(n, d);
        if !c.is_zero() {
            p.terms.insert(PolyMonomial::one(), c);
        }
        p
    }

    pub fn var(n: usize, d: usize, id: u32) -> Poly {
        Poly::monomial(n, d, PolyMonomial::from_slice(&[id]), BigRational::one())
    }

    pub fn monomial(n: usize, d: usize, m: PolyMonomial, c: BigRational) -> Poly {
        let mut p = Poly::zero(n, d);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from terms, combining repeated monomials.
    pub fn from_terms(n: usize, d: usize, terms: impl IntoIterator<Item = (PolyMonomial, BigRational)>) -> Poly {
        let mut p = Poly::zero(n, d);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PolyMonomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &PolyMonomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `Some(r)` if every term has degree `r`; `None` for the zero polynomial or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(PolyMonomial::degree);
        let first = it.next()?;
        it.all(|r| r == first).then_some(first)
    }

    pub fn add_term(&mut self, m: PolyMonomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_ambient(&self, other: &Poly) -> Result<()> {
        if (self.n, self.d) != (other.n, other.d) {
            return Err(Error::AmbientMismatch(format!(
                "(n,d) = ({},{}) vs ({},{})",
                self.n, self.d, other.n, other.d
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_ambient(other)?;
        let mut out = Poly::zero(self.n, self.d);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.n, self.d);
        }
        Poly { n: self.n, d: self.d, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &PolyMonomial) -> Poly {
        Poly { n: self.n, d: self.d, terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect() }
    }

    /// Substitutes values for the variables; `point` must cover every variable that occurs.
    pub fn evaluate_with(&self, mut point: impl FnMut(u32) -> Option<BigRational>) -> Result<BigRational> {
        let mut cache: HashMap<u32, BigRational> = HashMap::new();
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut acc = c.clone();
            for &v in m.vars() {
                if let std::collections::hash_map::Entry::Vacant(e) = cache.entry(v) {
                    let val = point(v).ok_or_else(|| Error::MissingAssignment(format!("z#{v}")))?;
                    e.insert(val);
                }
                acc *= &cache[&v];
            }
            total += acc;
        }
        Ok(total)
    }

    /// Substitutes values given as a map from the multisets `γ` to scalars.
    pub fn evaluate(&self, space: &VarSpace, point: &HashMap<Multiset, BigRational>) -> Result<BigRational> {
        if let Some(v) = self.terms.keys().flat_map(|m| m.vars()).find(|&&v| !point.contains_key(space.var(v))) {
            return Err(Error::MissingAssignment(format!("z_{}", space.var(*v))));
        }
        self.evaluate_with(|v| point.get(space.var(v)).cloned())
    }
}

pub fn poly_add(a: &Poly, b: &Poly) -> Result<Poly> {
    a.checked_add(b)
}

pub fn poly_sub(a: &Poly, b: &Poly) -> Result<Poly> {
    a.checked_sub(b)
}

pub fn poly_mul(a: &Poly, b: &Poly) -> Result<Poly> {
    a.checked_mul(b)
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("polynomials over different ambients")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("polynomials over different ambients")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("polynomials over different ambients")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { n: self.n, d: self.d, terms: self.terms.iter().map(|(m, v)| (m.clone(), -v)).collect() }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for v in m.vars() {
                write!(f, "*z{v}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn arithmetic_examples() {
        let p = &Poly::var(2, 2, 0) + &Poly::var(2, 2, 1).scale(&q(3));
        assert_eq!(&p + &Poly::zero(2, 2), p);
        let sq = &Poly::var(2, 2, 1) * &Poly::var(2, 2, 1);
        assert_eq!(sq.len(), 1);
        assert_eq!(sq.terms().next().unwrap().0.vars(), &[1, 1]);
        assert_eq!(sq.homogeneous_degree(), Some(2));
        assert!((&p - &p).is_zero());
        assert!(p.checked_add(&Poly::var(3, 2, 0)).is_err());
    }

    #[test]
    fn evaluation() {
        let space = VarSpace::new(2, 4).unwrap();
        let g = space.var(2).clone();
        let p = Poly::var(2, 4, 2);
        let point: HashMap<_, _> = [(g, q(7))].into_iter().collect();
        assert_eq!(p.evaluate(&space, &point).unwrap(), q(7));
        assert_eq!(Poly::zero(2, 4).evaluate(&space, &HashMap::new()).unwrap(), q(0));
        assert!(matches!(Poly::var(2, 4, 3).evaluate(&space, &point), Err(Error::MissingAssignment(_))));
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec((proptest::collection::vec(0u32..5, 0..3), -4i64..5), 0..5)
            .prop_map(|terms| Poly::from_terms(2, 4, terms.into_iter().map(|(m, c)| (PolyMonomial::from_slice(&m), q(c)))))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn evaluation_is_a_homomorphism(a in arb_poly(), b in arb_poly(), vals in proptest::collection::vec(-5i64..6, 5)) {
            let point = |v: u32| Some(q(vals[v as usize]));
            let ab = (&a * &b).evaluate_with(point).unwrap();
            prop_assert_eq!(ab, a.evaluate_with(point).unwrap() * b.evaluate_with(point).unwrap());
            let s = (&a + &b).evaluate_with(point).unwrap();
            prop_assert_eq!(s, a.evaluate_with(point).unwrap() + b.evaluate_with(point).unwrap());
        }
    }
}
