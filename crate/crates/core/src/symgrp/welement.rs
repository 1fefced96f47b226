use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use smallvec::SmallVec;

use crate::combinatorics::{signed_permutations, GenericMonomial};
use crate::error::{Error, Result};

/// An element of `W_d^r`: a rational combination of generic monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WElement {
    d: usize,
    r: usize,
    terms: BTreeMap<GenericMonomial, BigRational>,
}

impl WElement {
    pub fn zero(d: usize, r: usize) -> Self {
        WElement { d, r, terms: BTreeMap::new() }
    }

    pub fn monomial(m: GenericMonomial) -> Self {
        let mut w = WElement::zero(m.d(), m.r());
        w.terms.insert(m, BigRational::one());
        w
    }

    pub fn from_terms(d: usize, r: usize, terms: impl IntoIterator<Item = (GenericMonomial, BigRational)>) -> Result<Self> {
        let mut w = WElement::zero(d, r);
        for (m, c) in terms {
            if m.d() != d || m.r() != r {
                return Err(Error::AmbientMismatch(format!("monomial {m} is not in W_{d}^{r}")));
            }
            w.add_term(m, c);
        }
        Ok(w)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// `N = d·r`.
    pub fn ground_size(&self) -> usize {
        self.d * self.r
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

    pub fn terms(&self) -> impl Iterator<Item = (&GenericMonomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &GenericMonomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, m: GenericMonomial, c: BigRational) {
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

    fn check(&self, other: &WElement) -> Result<()> {
        if (self.d, self.r) != (other.d, other.r) {
            return Err(Error::AmbientMismatch(format!(
                "W_{}^{} vs W_{}^{}",
                self.d, self.r, other.d, other.r
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &WElement) -> Result<WElement> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &WElement) -> Result<WElement> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> WElement {
        if c.is_zero() {
            return WElement::zero(self.d, self.r);
        }
        WElement { d: self.d, r: self.r, terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }
}

impl fmt::Display for WElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})·{m}")?;
        }
        Ok(())
    }
}

/// A permutation of `{1..N}`, stored 0-based: `image[p]` is the image of `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { image: (0..n).collect() }
    }

    /// From one-line notation over `{1..N}`.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut image = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::NotBijection(n));
            }
            seen[x - 1] = true;
            image.push(x - 1);
        }
        Ok(Permutation { image })
    }

    pub fn random(n: usize, rng: &mut impl Rng) -> Self {
        let mut image: Vec<usize> = (0..n).collect();
        image.shuffle(rng);
        Permutation { image }
    }

    /// The transposition of the 1-based elements `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::NotBijection(n));
        }
        let mut p = Permutation::identity(n);
        p.image.swap(i - 1, j - 1);
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    /// Image of the 0-based position `p`.
    pub fn apply(&self, p: usize) -> usize {
        self.image[p]
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.image.iter().map(|x| x + 1).collect()
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.image.len()];
        for (p, &q) in self.image.iter().enumerate() {
            image[q] = p;
        }
        Permutation { image }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { image: other.image.iter().map(|&q| self.image[q]).collect() }
    }

    pub fn act_mask(&self, mut mask: u32) -> u32 {
        let mut out = 0u32;
        while mask != 0 {
            out |= 1 << self.image[mask.trailing_zeros() as usize];
            mask &= mask - 1;
        }
        out
    }

    pub fn act_monomial(&self, m: &GenericMonomial) -> GenericMonomial {
        GenericMonomial::from_masks_unchecked(m.d(), m.masks().iter().map(|&b| self.act_mask(b)).collect())
    }
}

/// `σ·w`, moving every block by `σ`.
pub fn act(sigma: &Permutation, w: &WElement) -> Result<WElement> {
    if sigma.len() != w.ground_size() {
        return Err(Error::NotBijection(w.ground_size()));
    }
    let mut out = WElement::zero(w.d, w.r);
    for (m, c) in &w.terms {
        out.add_term(sigma.act_monomial(m), c.clone());
    }
    Ok(out)
}

/// The generator `[α₁..α_k|β₁..β_k]·z_{γ_{k+1}}···z_{γ_r}` of `I_k^r(a,b)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenericFlattening {
    a: usize,
    b: usize,
    alphas: Vec<u32>,
    betas: Vec<u32>,
    gammas: Vec<u32>,
}

fn to_mask(block: &[usize], n: usize) -> Result<u32> {
    let mut mask = 0u32;
    for &e in block {
        if e == 0 || e > n {
            return Err(Error::InvalidBlocks(format!("element {e} outside 1..{n}")));
        }
        if mask & (1 << (e - 1)) != 0 {
            return Err(Error::InvalidBlocks(format!("element {e} repeated in {block:?}")));
        }
        mask |= 1 << (e - 1);
    }
    Ok(mask)
}

impl GenericFlattening {
    /// Blocks are lists of elements of `{1..N}`; they must be disjoint, cover
    /// `{1..N}`, and have sizes `a`, `b` and `a+b` respectively.
    pub fn new(alphas: &[Vec<usize>], betas: &[Vec<usize>], gammas: &[Vec<usize>]) -> Result<Self> {
        let k = alphas.len();
        if betas.len() != k || k == 0 {
            return Err(Error::InvalidBlocks(format!("{k} row blocks and {} column blocks", betas.len())));
        }
        let a = alphas[0].len();
        let b = betas[0].len();
        let n = (a + b) * (k + gammas.len());
        if n > crate::combinatorics::MAX_GROUND_SET {
            return Err(Error::Resource(format!("ground set of size {n} is too large")));
        }
        let check_sizes = |blocks: &[Vec<usize>], size: usize| blocks.iter().all(|x| x.len() == size);
        if !check_sizes(alphas, a) || !check_sizes(betas, b) || !check_sizes(gammas, a + b) {
            return Err(Error::InvalidBlocks("blocks of one kind must share a size".into()));
        }
        let masks = |blocks: &[Vec<usize>]| blocks.iter().map(|x| to_mask(x, n)).collect::<Result<Vec<u32>>>();
        let f = GenericFlattening { a, b, alphas: masks(alphas)?, betas: masks(betas)?, gammas: masks(gammas)? };
        f.validate(n)?;
        Ok(f)
    }

    pub(crate) fn from_masks(a: usize, b: usize, alphas: Vec<u32>, betas: Vec<u32>, gammas: Vec<u32>) -> Self {
        GenericFlattening { a, b, alphas, betas, gammas }
    }

    fn validate(&self, n: usize) -> Result<()> {
        let mut seen = 0u32;
        for &m in self.alphas.iter().chain(&self.betas).chain(&self.gammas) {
            if seen & m != 0 {
                return Err(Error::InvalidBlocks("blocks overlap".into()));
            }
            seen |= m;
        }
        let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        if seen != full {
            return Err(Error::InvalidBlocks(format!("blocks do not cover 1..{n}")));
        }
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.alphas.len()
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn d(&self) -> usize {
        self.a + self.b
    }

    pub fn r(&self) -> usize {
        self.alphas.len() + self.gammas.len()
    }

    pub fn ground_size(&self) -> usize {
        self.d() * self.r()
    }

    pub fn alpha_masks(&self) -> &[u32] {
        &self.alphas
    }

    pub fn beta_masks(&self) -> &[u32] {
        &self.betas
    }

    pub fn gamma_masks(&self) -> &[u32] {
        &self.gammas
    }

    /// The monomial `z_{α₁∪β_{τ(1)}}···z_{α_k∪β_{τ(k)}}·z_γ···`.
    pub fn term(&self, tau: &[usize]) -> GenericMonomial {
        let masks: SmallVec<[u32; 4]> = self
            .alphas
            .iter()
            .zip(tau)
            .map(|(&x, &j)| x | self.betas[j])
            .chain(self.gammas.iter().copied())
            .collect();
        GenericMonomial::from_masks_unchecked(self.d(), masks)
    }

    /// The `k!` signed monomials of the determinant, identity permutation first.
    pub fn signed_terms(&self) -> Vec<(GenericMonomial, i8, Vec<usize>)> {
        signed_permutations(self.k()).into_iter().map(|(tau, s)| (self.term(&tau), s, tau)).collect()
    }

    pub fn act(&self, sigma: &Permutation) -> GenericFlattening {
        let mv = |v: &[u32]| v.iter().map(|&m| sigma.act_mask(m)).collect();
        GenericFlattening { a: self.a, b: self.b, alphas: mv(&self.alphas), betas: mv(&self.betas), gammas: mv(&self.gammas) }
    }

    /// The flattening whose blocks are consecutive runs `α₁ β₁ α₂ β₂ … γ …`.
    pub fn standard(k: usize, a: usize, b: usize, r: usize) -> Result<Self> {
        if k == 0 || k > r {
            return Err(Error::Precondition(format!("need 1 <= k <= r, got k = {k}, r = {r}")));
        }
        let run = |start: usize, len: usize| -> Vec<usize> { (start..start + len).collect() };
        let d = a + b;
        let alphas: Vec<_> = (0..k).map(|i| run(1 + i * d, a)).collect();
        let betas: Vec<_> = (0..k).map(|i| run(1 + i * d + a, b)).collect();
        let gammas: Vec<_> = (k..r).map(|i| run(1 + i * d, d)).collect();
        GenericFlattening::new(&alphas, &betas, &gammas)
    }
}

pub fn generic_flattening(f: &GenericFlattening) -> WElement {
    let mut w = WElement::zero(f.d(), f.r());
    for (m, s, _) in f.signed_terms() {
        w.add_term(m, BigRational::from_integer(BigInt::from(s)));
    }
    w
}
