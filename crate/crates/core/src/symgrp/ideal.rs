use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::characters::multiplicity_by_character;
use super::tableau::{tableau_normalize, Normalized, Tableau};
use super::welement::{GenericFlattening, Permutation};
use super::young::{HwtVector, Symmetrizer};
use crate::combinatorics::{
    enumerate_generic_monomials_with, factorial, generic_monomial_count, irrep_dimension, partitions, partitions_up_to,
    GenericMonomial, GenericMonomialIter, IntPartition,
};
use crate::error::{Error, Result};
use crate::exactla::{
    CertificationMode, Comparison, Field, MultiComparison, PrimeField, RationalField, RowSpace, ScalarMode, SparseVector,
    Verdict,
};

/// Default number of consecutive dependent samples that ends orbit sampling.
pub const DEFAULT_PLATEAU: usize = 200;
/// Largest `dim W_d^r` for which the full ideal is built without `force`.
pub const FULL_AMBIENT_LIMIT: usize = 3000;
/// Largest number of generators enumerated by the full strategy without `force`.
pub const FULL_GENERATOR_LIMIT: u128 = 2_000_000;

/// How `m_λ(W_d^r)` is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MultiplicityMethod {
    Rank,
    Character,
}

/// `m_λ(W_d^r)`, either as `dim span{c_λ·m}` or from characters.
pub fn multiplicity(shape: &IntPartition, d: usize, r: usize, method: MultiplicityMethod) -> Result<u64> {
    if shape.weight() != d * r {
        return Err(Error::SizeMismatch { partition: shape.weight(), n: d * r });
    }
    match method {
        MultiplicityMethod::Character => multiplicity_by_character(shape, d, r),
        MultiplicityMethod::Rank => {
            let sym = Symmetrizer::new(shape, d, r)?;
            let mut space = RowSpace::new(RationalField, sym.dim());
            let mut seen: HashSet<Tableau> = HashSet::new();
            for m in GenericMonomialIter::new(d, r)? {
                match tableau_normalize(shape, &m)? {
                    Normalized::Zero => continue,
                    Normalized::Form { tableau, .. } => {
                        if !seen.insert(tableau) {
                            continue;
                        }
                    }
                }
                space.insert(&to_sparse(&RationalField, sym.dim(), &sym.apply_monomial(&m)?)?)?;
            }
            Ok(space.rank() as u64)
        }
    }
}

fn to_sparse<F: Field>(field: &F, dim: usize, v: &HwtVector) -> Result<SparseVector<F::Elem>> {
    SparseVector::new(field, dim, v.iter().map(|&(i, c)| (i, field.from_i64(c))).collect())
}

/// How the generators of `I_k^r(a,b)` are produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Every generic flattening.
    Full,
    /// Random translates of one flattening until the rank stops growing.
    OrbitSample,
    /// Only `c_λ·I`, from random translates of one flattening.
    HwtOnly(IntPartition),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleConfig {
    pub seed: u64,
    pub plateau: usize,
    /// Lift the size limits of the full strategy.
    pub force: bool,
    /// Stop orbit sampling as soon as this rank is reached.
    pub target_rank: Option<usize>,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig { seed: 0, plateau: DEFAULT_PLATEAU, force: false, target_rank: None }
    }
}

/// Coordinates of `W_d^r`: the enumerated monomials.
#[derive(Clone, Debug)]
pub struct ModuleBasis {
    d: usize,
    r: usize,
    monomials: Vec<GenericMonomial>,
    index: HashMap<GenericMonomial, usize>,
}

impl ModuleBasis {
    pub fn new(d: usize, r: usize, force: bool) -> Result<Self> {
        let monomials = enumerate_generic_monomials_with(d, r, force)?;
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Ok(ModuleBasis { d, r, monomials, index })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[GenericMonomial] {
        &self.monomials
    }

    pub fn position(&self, m: &GenericMonomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn flattening_vector<F: Field>(&self, field: &F, f: &GenericFlattening) -> Result<SparseVector<F::Elem>> {
        let entries = f
            .signed_terms()
            .into_iter()
            .map(|(m, s, _)| Ok((self.position(&m).ok_or_else(|| Error::OutsideBasis(m.to_string()))?, field.from_i64(s as i64))))
            .collect::<Result<Vec<_>>>()?;
        SparseVector::new(field, self.len(), entries)
    }
}

/// `c_λ·I` for a submodule `I` of `W_d^r`, in orbit coordinates.
#[derive(Clone, Debug)]
pub struct HwtSpace<F: Field> {
    pub shape: IntPartition,
    pub space: RowSpace<F>,
    /// `m_λ(W_d^r)`, an upper bound for the rank.
    pub bound: u64,
    pub samples: usize,
}

impl<F: Field> HwtSpace<F> {
    pub fn rank(&self) -> usize {
        self.space.rank()
    }

    /// The rank meets the character-side bound, so the span is complete.
    pub fn reaches_bound(&self) -> bool {
        self.rank() as u64 == self.bound
    }
}

/// A generated subspace of `W_d^r`.
#[derive(Clone, Debug)]
pub enum GenericSpace<F: Field> {
    Module { basis: Arc<ModuleBasis>, space: RowSpace<F>, generators: usize },
    Hwt(HwtSpace<F>),
}

impl<F: Field> GenericSpace<F> {
    pub fn rank(&self) -> usize {
        match self {
            GenericSpace::Module { space, .. } => space.rank(),
            GenericSpace::Hwt(h) => h.rank(),
        }
    }
}

fn check_shape_params(k: usize, a: usize, b: usize, d: usize, r: usize) -> Result<()> {
    if a + b != d || d == 0 {
        return Err(Error::Precondition(format!("a + b = {} must equal d = {d} > 0", a + b)));
    }
    if k == 0 || k > r {
        return Err(Error::Precondition(format!("need 1 <= k <= r, got k = {k}, r = {r}")));
    }
    Ok(())
}

/// Number of generic flattenings `[α|β]·z_γ` counted up to sign.
pub fn flattening_count(k: usize, a: usize, b: usize, r: usize) -> u128 {
    let d = a + b;
    let denom = factorial(a).pow(k as u32)
        * factorial(b).pow(k as u32)
        * factorial(d).pow((r - k) as u32)
        * factorial(k)
        * factorial(k)
        * factorial(r - k);
    factorial(d * r) / denom
}

/// Calls `visit` on every flattening with unordered row blocks, column blocks and extra blocks.
pub fn for_each_flattening(k: usize, a: usize, b: usize, r: usize, visit: &mut dyn FnMut(GenericFlattening) -> Result<()>) -> Result<()> {
    let n = (a + b) * r;
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut outcome = Ok(());
    subsets(full, k * a, &mut |ua| {
        partitions_of(ua, a, &mut Vec::new(), &mut |alphas| {
            subsets(full & !ua, k * b, &mut |ub| {
                partitions_of(ub, b, &mut Vec::new(), &mut |betas| {
                    partitions_of(full & !ua & !ub, a + b, &mut Vec::new(), &mut |gammas| {
                        if outcome.is_ok() {
                            outcome = visit(GenericFlattening::from_masks(a, b, alphas.to_vec(), betas.to_vec(), gammas.to_vec()));
                        }
                    })
                })
            })
        })
    });
    outcome
}

/// All subsets of `mask` with `size` elements.
fn subsets(mask: u32, size: usize, visit: &mut dyn FnMut(u32)) {
    fn go(rest: u32, size: usize, acc: u32, visit: &mut dyn FnMut(u32)) {
        if size == 0 {
            visit(acc);
            return;
        }
        if (rest.count_ones() as usize) < size {
            return;
        }
        let low = rest & rest.wrapping_neg();
        go(rest & !low, size - 1, acc | low, visit);
        go(rest & !low, size, acc, visit);
    }
    go(mask, size, 0, visit);
}

/// All partitions of `mask` into unordered blocks of `size` elements.
fn partitions_of(mask: u32, size: usize, blocks: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
    if mask == 0 {
        visit(blocks);
        return;
    }
    if size == 0 {
        return;
    }
    let low = mask & mask.wrapping_neg();
    subsets(mask & !low, size - 1, &mut |rest| {
        blocks.push(low | rest);
        partitions_of(mask & !(low | rest), size, blocks, visit);
        blocks.pop();
    });
}

/// A deterministic, lazily extended sequence of random translates of the
/// standard flattening, shared between scalar modes.
struct Translates {
    base: GenericFlattening,
    rng: ChaCha8Rng,
    seen: HashSet<Vec<u32>>,
    cache: Vec<GenericFlattening>,
}

impl Translates {
    fn new(base: GenericFlattening, seed: u64) -> Self {
        Translates { base, rng: ChaCha8Rng::seed_from_u64(seed), seen: HashSet::new(), cache: Vec::new() }
    }

    fn get(&mut self, i: usize) -> &GenericFlattening {
        let n = self.base.ground_size();
        let mut guard = 0;
        while self.cache.len() <= i {
            let f = self.base.act(&Permutation::random(n, &mut self.rng));
            let mut key: Vec<u32> = [f.alpha_masks(), f.beta_masks(), f.gamma_masks()]
                .iter()
                .flat_map(|v| {
                    let mut s = v.to_vec();
                    s.sort_unstable();
                    s
                })
                .collect();
            key.push(0);
            guard += 1;
            if self.seen.insert(key) || guard > 64 {
                self.cache.push(f);
                guard = 0;
            }
        }
        &self.cache[i]
    }
}

/// Inserts `next(0), next(1), …` until the rank reaches `bound` or `plateau`
/// consecutive insertions are dependent.
fn sample_until_plateau<F: Field>(
    field: &F,
    dim: usize,
    bound: usize,
    plateau: usize,
    mut next: impl FnMut(usize) -> Result<SparseVector<F::Elem>>,
) -> Result<(RowSpace<F>, usize)> {
    let mut space = RowSpace::new(field.clone(), dim);
    let mut dependent = 0;
    let mut i = 0;
    while space.rank() < bound && dependent < plateau {
        if space.insert(&next(i)?)? {
            dependent = 0;
        } else {
            dependent += 1;
        }
        i += 1;
    }
    Ok((space, i))
}

/// Highest weight vectors `c_λ·D` of random translates `D`, computed once and
/// reused for every scalar mode.
pub struct HwtSampler {
    sym: Symmetrizer,
    bound: u64,
    translates: Translates,
    vectors: Vec<HwtVector>,
}

impl HwtSampler {
    pub fn new(shape: &IntPartition, k: usize, a: usize, b: usize, r: usize, seed: u64) -> Result<Self> {
        check_shape_params(k, a, b, a + b, r)?;
        let sym = Symmetrizer::new(shape, a + b, r)?;
        let bound = multiplicity_by_character(shape, a + b, r)?;
        let base = GenericFlattening::standard(k, a, b, r)?;
        Ok(HwtSampler { sym, bound, translates: Translates::new(base, seed), vectors: Vec::new() })
    }

    pub fn symmetrizer(&self) -> &Symmetrizer {
        &self.sym
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn vector(&mut self, i: usize) -> Result<&HwtVector> {
        while self.vectors.len() <= i {
            let j = self.vectors.len();
            let f = self.translates.get(j).clone();
            self.vectors.push(self.sym.apply_flattening(&f)?);
        }
        Ok(&self.vectors[i])
    }

    /// The flattening behind `vector(i)`.
    pub fn flattening(&mut self, i: usize) -> &GenericFlattening {
        self.translates.get(i)
    }

    pub fn span<F: Field>(&mut self, field: &F, plateau: usize) -> Result<HwtSpace<F>> {
        let dim = self.sym.dim();
        let bound = self.bound as usize;
        let (space, samples) = sample_until_plateau(field, dim, bound, plateau, |i| to_sparse(field, dim, self.vector(i)?))?;
        Ok(HwtSpace { shape: self.sym.shape().clone(), space, bound: self.bound, samples })
    }
}

/// The degree-`r` piece `I_k^r(a,b) ⊂ W_d^r` (or one of its highest weight spaces).
pub fn generic_ideal_space<F: Field>(
    field: F,
    k: usize,
    a: usize,
    b: usize,
    d: usize,
    r: usize,
    strategy: &Strategy,
    config: &SampleConfig,
) -> Result<GenericSpace<F>> {
    check_shape_params(k, a, b, d, r)?;
    match strategy {
        Strategy::HwtOnly(shape) => {
            let mut sampler = HwtSampler::new(shape, k, a, b, r, config.seed)?;
            Ok(GenericSpace::Hwt(sampler.span(&field, config.plateau)?))
        }
        Strategy::Full => {
            let dim = generic_monomial_count(d, r)?;
            let gens = flattening_count(k, a, b, r);
            if !config.force && (dim > FULL_AMBIENT_LIMIT as u128 || gens > FULL_GENERATOR_LIMIT) {
                return Err(Error::Resource(format!(
                    "full enumeration of {gens} generators in dimension {dim} is too large; use orbit_sample or hwt_only"
                )));
            }
            let basis = Arc::new(ModuleBasis::new(d, r, config.force)?);
            let mut space = RowSpace::new(field.clone(), basis.len());
            let mut generators = 0;
            for_each_flattening(k, a, b, r, &mut |f| {
                generators += 1;
                space.insert(&basis.flattening_vector(&field, &f)?)?;
                Ok(())
            })?;
            Ok(GenericSpace::Module { basis, space, generators })
        }
        Strategy::OrbitSample => {
            let basis = Arc::new(ModuleBasis::new(d, r, config.force)?);
            let mut translates = Translates::new(GenericFlattening::standard(k, a, b, r)?, config.seed);
            let bound = config.target_rank.unwrap_or(basis.len()).min(basis.len());
            let (space, generators) = sample_until_plateau(&field, basis.len(), bound, config.plateau, |i| {
                basis.flattening_vector(&field, translates.get(i))
            })?;
            Ok(GenericSpace::Module { basis, space, generators })
        }
    }
}

/// The 1-flattening identity: `dim I_k^r(1,d−1)` against the dimension of the
/// isotypic components of `W_d^r` with at least `k` parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneFlatteningCheck {
    pub k: usize,
    pub d: usize,
    pub r: usize,
    pub ideal_dim: usize,
    pub isotypic_dim: u128,
    pub holds: bool,
}

pub fn check_1flattening(k: usize, d: usize, r: usize) -> Result<OneFlatteningCheck> {
    let space = generic_ideal_space(RationalField, k, 1, d - 1, d, r, &Strategy::Full, &SampleConfig::default())?;
    let ideal_dim = space.rank();
    let mut isotypic_dim = 0u128;
    for l in partitions(d * r).into_iter().filter(|l| l.len() >= k) {
        isotypic_dim += multiplicity_by_character(&l, d, r)? as u128 * irrep_dimension(&l);
    }
    Ok(OneFlatteningCheck { k, d, r, ideal_dim, isotypic_dim, holds: ideal_dim as u128 == isotypic_dim })
}

/// One shape in a [`GenericComparison`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeComparison {
    pub lambda: IntPartition,
    /// `m_λ(W_d^r)`.
    pub multiplicity: u64,
    /// `dim c_λ·I_k^r(a,b)` for each pair.
    pub dims: Vec<usize>,
    /// Comparisons `(i, j, …)` between the pairs with indices `i < j`.
    pub pairwise: Vec<(usize, usize, Comparison)>,
    pub consistent: bool,
    pub samples: usize,
}

impl ShapeComparison {
    pub fn verdict(&self) -> Verdict {
        overall(self.pairwise.iter().map(|(_, _, c)| c.verdict))
    }
}

fn overall(mut verdicts: impl Iterator<Item = Verdict>) -> Verdict {
    let first = verdicts.next().unwrap_or(Verdict::Equal);
    verdicts.fold(first, |acc, v| if acc == Verdict::Equal { v } else { acc })
}

/// Per-shape comparison of `I_k^r(a,b)` for several `(a,b)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericComparison {
    pub k: usize,
    pub d: usize,
    pub r: usize,
    pub pairs: Vec<(usize, usize)>,
    pub shapes: Vec<ShapeComparison>,
    pub certification: CertificationMode,
    pub method: String,
}

impl GenericComparison {
    /// Module dimensions `Σ_λ dim(c_λ·I)·f^λ`.
    pub fn module_dims(&self) -> Vec<u128> {
        (0..self.pairs.len())
            .map(|i| self.shapes.iter().map(|s| s.dims[i] as u128 * irrep_dimension(&s.lambda)).sum())
            .collect()
    }

    /// Module-level comparison of pairs `i` and `j`, assembled from the
    /// isotypic components.
    pub fn module_comparison(&self, i: usize, j: usize) -> Option<(u128, u128, u128, Verdict)> {
        let (i, j, flip) = if i < j { (i, j, false) } else { (j, i, true) };
        let mut ranks = (0u128, 0u128, 0u128);
        for s in &self.shapes {
            let (_, _, c) = s.pairwise.iter().find(|(x, y, _)| (*x, *y) == (i, j))?;
            let f = irrep_dimension(&s.lambda);
            ranks.0 += c.rank_a as u128 * f;
            ranks.1 += c.rank_b as u128 * f;
            ranks.2 += c.rank_join as u128 * f;
        }
        let v = if ranks.0 == ranks.2 && ranks.1 == ranks.2 {
            Verdict::Equal
        } else if ranks.1 == ranks.2 {
            Verdict::StrictlyContained
        } else if ranks.0 == ranks.2 {
            Verdict::StrictlyContains
        } else {
            Verdict::Incomparable
        };
        Some(if flip { (ranks.1, ranks.0, ranks.2, v.flip()) } else { (ranks.0, ranks.1, ranks.2, v) })
    }

    pub fn shape(&self, lambda: &IntPartition) -> Option<&ShapeComparison> {
        self.shapes.iter().find(|s| &s.lambda == lambda)
    }

    /// One report object per shape.
    pub fn to_json(&self) -> Vec<Value> {
        self.shapes
            .iter()
            .map(|s| {
                let dims: serde_json::Map<String, Value> = self
                    .pairs
                    .iter()
                    .zip(&s.dims)
                    .map(|((a, b), d)| (format!("{a},{b}"), json!(d)))
                    .collect();
                json!({
                    "k": self.k,
                    "d": self.d,
                    "r": self.r,
                    "lambda": s.lambda.parts(),
                    "dims": dims,
                    "verdict": s.verdict().as_str(),
                    "method": self.method,
                })
            })
            .collect()
    }
}

fn shape_comparison<F: Field>(
    field: &F,
    samplers: &mut [HwtSampler],
    plateau: usize,
) -> Result<(Vec<usize>, Vec<(usize, usize, Comparison)>, usize)> {
    let mut spaces = Vec::with_capacity(samplers.len());
    let mut samples = 0;
    for s in samplers.iter_mut() {
        let h = s.span(field, plateau)?;
        samples += h.samples;
        spaces.push(h);
    }
    let mut pairwise = Vec::new();
    for i in 0..spaces.len() {
        for j in i + 1..spaces.len() {
            pairwise.push((i, j, crate::exactla::compare(&spaces[i].space, &spaces[j].space)?));
        }
    }
    Ok((spaces.iter().map(HwtSpace::rank).collect(), pairwise, samples))
}

/// Compares `I_k^r(a,b)` for the given pairs through their highest weight
/// spaces for every `λ ⊢ N` with at most `r` parts.
pub fn compare_generic(
    k: usize,
    d: usize,
    r: usize,
    pairs: &[(usize, usize)],
    certification: &CertificationMode,
    config: &SampleConfig,
) -> Result<GenericComparison> {
    for &(a, b) in pairs {
        check_shape_params(k, a, b, d, r)?;
    }
    let shapes = partitions_up_to(d * r, r);
    let results: Vec<ShapeComparison> = shapes
        .par_iter()
        .map(|shape| -> Result<ShapeComparison> {
            let mut samplers = pairs
                .iter()
                .map(|&(a, b)| HwtSampler::new(shape, k, a, b, r, config.seed))
                .collect::<Result<Vec<_>>>()?;
            let multiplicity = samplers.first().map_or(0, HwtSampler::bound);
            let mut per_pair: Vec<Vec<(ScalarMode, Comparison)>> = Vec::new();
            let mut dims = vec![0usize; pairs.len()];
            let mut samples = 0;
            for mode in certification.scalar_modes() {
                let (rk, cmp, s) = match mode {
                    ScalarMode::Exact => shape_comparison(&RationalField, &mut samplers, config.plateau)?,
                    ScalarMode::Modular(p) => shape_comparison(&PrimeField::new(p)?, &mut samplers, config.plateau)?,
                };
                samples = samples.max(s);
                for (acc, x) in dims.iter_mut().zip(rk) {
                    *acc = (*acc).max(x);
                }
                if per_pair.is_empty() {
                    per_pair = vec![Vec::new(); cmp.len()];
                }
                for (slot, (_, _, c)) in per_pair.iter_mut().zip(cmp) {
                    slot.push((mode, c));
                }
            }
            let index_pairs: Vec<(usize, usize)> =
                (0..pairs.len()).flat_map(|i| (i + 1..pairs.len()).map(move |j| (i, j))).collect();
            let mut consistent = true;
            let pairwise = index_pairs
                .into_iter()
                .zip(per_pair)
                .map(|((i, j), per_mode)| {
                    let m = MultiComparison::new(per_mode);
                    consistent &= m.consistent;
                    (i, j, m.combined)
                })
                .collect();
            Ok(ShapeComparison { lambda: shape.clone(), multiplicity, dims, pairwise, consistent, samples })
        })
        .collect::<Result<_>>()?;
    Ok(GenericComparison {
        k,
        d,
        r,
        pairs: pairs.to_vec(),
        shapes: results,
        certification: certification.clone(),
        method: "hwt_orbit_sample".into(),
    })
}

/// One term `sgn(τ)·c_λ·m_τ` of the expansion of a circled tableau.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionTerm {
    pub sign: i8,
    pub tau: Vec<usize>,
    /// The tableau of `m_τ`; the blocks are labeled by their column blocks `β_j`.
    pub tableau: Tableau,
    pub normal: Normalized,
    /// `c_λ·m_τ = 0`.
    pub vanishes: bool,
}

/// `c_λ·D` for a generic flattening `D`, with its expansion into the tableaux
/// obtained by permuting the circled entries.
#[derive(Clone, Debug)]
pub struct CircledExpansion {
    pub shape: IntPartition,
    /// 1-based elements of the row blocks (the circled boxes).
    pub circled: Vec<usize>,
    /// The leading term `T` first, then its companions.
    pub terms: Vec<ExpansionTerm>,
    /// `c_λ·D` in orbit coordinates.
    pub value: HwtVector,
    /// `c_λ·D = c_λ·m` for the leading monomial `m`.
    pub equals_leading: bool,
}

impl CircledExpansion {
    pub fn leading(&self) -> &Tableau {
        &self.terms[0].tableau
    }

    pub fn companions(&self) -> &[ExpansionTerm] {
        &self.terms[1..]
    }
}

pub fn circled_expand(shape: &IntPartition, f: &GenericFlattening) -> Result<CircledExpansion> {
    if shape.weight() != f.ground_size() {
        return Err(Error::SizeMismatch { partition: shape.weight(), n: f.ground_size() });
    }
    let sym = Symmetrizer::new(shape, f.d(), f.r())?;
    let n = f.ground_size();
    let mut circled: Vec<usize> = f.alpha_masks().iter().flat_map(|&m| crate::combinatorics::mask_elements(m)).collect();
    circled.sort_unstable();
    let mut terms = Vec::new();
    for (m, sign, tau) in f.signed_terms() {
        let mut filling = vec![0u8; n];
        let mut put = |mask: u32, label: usize| {
            for e in crate::combinatorics::mask_elements(mask) {
                filling[e - 1] = label as u8;
            }
        };
        for (j, &beta) in f.beta_masks().iter().enumerate() {
            put(beta, j + 1);
        }
        for (i, &alpha) in f.alpha_masks().iter().enumerate() {
            put(alpha, tau[i] + 1);
        }
        for (l, &gamma) in f.gamma_masks().iter().enumerate() {
            put(gamma, f.k() + l + 1);
        }
        let vanishes = sym.apply_monomial(&m)?.is_empty();
        terms.push(ExpansionTerm {
            sign,
            tau,
            tableau: Tableau::new(shape.clone(), filling)?,
            normal: tableau_normalize(shape, &m)?,
            vanishes,
        });
    }
    let value = sym.apply_flattening(f)?;
    let leading = sym.apply_monomial(&f.term(&(0..f.k()).collect::<Vec<_>>()))?;
    let equals_leading = value == leading;
    Ok(CircledExpansion { shape: shape.clone(), circled, terms, value, equals_leading })
}

/// A flattening `[α₁,α₂,α₃|β₁,β₂,β₃]` whose tableau for `λ = (λ₁,λ₂,λ₃)`
/// starts with the subtableau `11/22/3` in its first two columns, with
/// `1,2 ∈ α₁`, `λ₁+1 ∈ α₂ ∌ λ₁+2` and `λ₁+λ₂+1 ∉ α₃`.
pub fn subtableau_flattening(shape: &IntPartition, a: usize, b: usize) -> Result<GenericFlattening> {
    let d = a + b;
    let p = shape.parts();
    if p.len() != 3 || p[1] < 2 || shape.weight() != 3 * d || a < 2 || b < 1 {
        return Err(Error::Precondition(format!(
            "need λ with three parts, λ₂ ≥ 2, |λ| = 3(a+b), a ≥ 2 and b ≥ 1; got λ = {shape}, a = {a}, b = {b}"
        )));
    }
    let n = 3 * d;
    let columns = crate::combinatorics::canonical_tableau(shape)?;
    let col_of: Vec<usize> = (1..=n).map(|i| columns.col_of(i)).collect();
    let mut labels = vec![0u8; n];
    for (pos, l) in [(0, 1), (1, 1), (p[0], 2), (p[0] + 1, 2), (p[0] + p[1], 3)] {
        labels[pos] = l;
    }
    if !fill_labels(&mut labels, &col_of, d, 0) {
        return Err(Error::Precondition(format!("no filling of {shape} without repeated column entries")));
    }
    let gamma: Vec<Vec<usize>> = (1..=3u8)
        .map(|l| (0..n).filter(|&i| labels[i] == l).map(|i| i + 1).collect())
        .collect();
    let take = |from: &[usize], forced: &[usize], excluded: &[usize], size: usize| -> Vec<usize> {
        let mut out = forced.to_vec();
        out.extend(from.iter().filter(|e| !forced.contains(e) && !excluded.contains(e)).take(size - forced.len()));
        out.sort_unstable();
        out
    };
    let (l1, l2) = (p[0], p[1]);
    let alphas = vec![
        take(&gamma[0], &[1, 2], &[], a),
        take(&gamma[1], &[l1 + 1], &[l1 + 2], a),
        take(&gamma[2], &[], &[l1 + l2 + 1], a),
    ];
    let betas: Vec<Vec<usize>> = gamma
        .iter()
        .zip(&alphas)
        .map(|(g, al)| g.iter().filter(|e| !al.contains(e)).copied().collect())
        .collect();
    GenericFlattening::new(&alphas, &betas, &[])
}

fn fill_labels(labels: &mut [u8], col_of: &[usize], d: usize, pos: usize) -> bool {
    if pos == labels.len() {
        return true;
    }
    if labels[pos] != 0 {
        return fill_labels(labels, col_of, d, pos + 1);
    }
    for l in 1..=3u8 {
        let used = labels.iter().filter(|&&x| x == l).count();
        let clash = (0..labels.len()).any(|q| q != pos && col_of[q] == col_of[pos] && labels[q] == l);
        if used < d && !clash {
            labels[pos] = l;
            if fill_labels(labels, col_of, d, pos + 1) {
                return true;
            }
            labels[pos] = 0;
        }
    }
    false
}
