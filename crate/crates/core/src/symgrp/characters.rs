use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::combinatorics::{factorial, partitions, IntPartition};
use crate::error::{Error, Result};

/// `z_μ = Π_i i^{m_i} m_i!`, so that the class of cycle type `μ` has `N!/z_μ` elements.
pub fn centralizer_order(cycle_type: &IntPartition) -> BigInt {
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for &p in cycle_type.parts() {
        *counts.entry(p).or_insert(0) += 1;
    }
    counts
        .into_iter()
        .map(|(i, m)| BigInt::from(i).pow(m as u32) * BigInt::from(factorial(m)))
        .product()
}

/// Number of monomials of `W_d^r` fixed by a permutation of the given cycle type.
///
/// A fixed set partition groups its blocks into orbits; an orbit of `ℓ`
/// blocks is a union of cycles whose lengths are multiples of `ℓ` and add up
/// to `ℓ·d`, and such a union of `s` cycles carries `ℓ^{s-1}` orbits.
pub fn permutation_character(d: usize, r: usize, cycle_type: &IntPartition) -> Result<u128> {
    if cycle_type.weight() != d * r {
        return Err(Error::SizeMismatch { partition: cycle_type.weight(), n: d * r });
    }
    let mut memo = HashMap::new();
    Ok(count_fixed(cycle_type.parts().to_vec(), d, &mut memo))
}

fn count_fixed(cycles: Vec<usize>, d: usize, memo: &mut HashMap<Vec<usize>, u128>) -> u128 {
    if cycles.is_empty() {
        return 1;
    }
    if let Some(&v) = memo.get(&cycles) {
        return v;
    }
    let first = cycles[0];
    let rest = &cycles[1..];
    let mut total = 0u128;
    for l in (1..=first).filter(|l| first.is_multiple_of(*l) && first <= l * d) {
        let eligible: Vec<usize> = (0..rest.len()).filter(|&i| rest[i].is_multiple_of(l)).collect();
        let need = l * d - first;
        let mut chosen = Vec::new();
        subsets_with_sum(rest, &eligible, 0, need, &mut chosen, &mut |chosen| {
            let remaining: Vec<usize> = (0..rest.len()).filter(|i| !chosen.contains(i)).map(|i| rest[i]).collect();
            total += (l as u128).pow(chosen.len() as u32) * count_fixed(remaining, d, memo);
        });
    }
    memo.insert(cycles, total);
    total
}

fn subsets_with_sum(
    values: &[usize],
    eligible: &[usize],
    from: usize,
    need: usize,
    chosen: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if need == 0 {
        visit(chosen);
        return;
    }
    for j in from..eligible.len() {
        let i = eligible[j];
        if values[i] <= need {
            chosen.push(i);
            subsets_with_sum(values, eligible, j + 1, need - values[i], chosen, visit);
            chosen.pop();
        }
    }
}

/// `χ_λ(μ)` by the Murnaghan–Nakayama rule on beta-sets.
pub fn irreducible_character(shape: &IntPartition, cycle_type: &IntPartition) -> Result<i64> {
    if shape.weight() != cycle_type.weight() {
        return Err(Error::SizeMismatch { partition: shape.weight(), n: cycle_type.weight() });
    }
    let l = shape.len();
    let beads: Vec<usize> = shape.parts().iter().enumerate().map(|(i, &p)| p + l - 1 - i).collect();
    let mut memo = HashMap::new();
    Ok(mn(beads, cycle_type.parts(), &mut memo))
}

fn mn(beads: Vec<usize>, hooks: &[usize], memo: &mut HashMap<(Vec<usize>, usize), i64>) -> i64 {
    let Some((&h, rest)) = hooks.split_first() else {
        return 1;
    };
    let key = (beads.clone(), hooks.len());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let mut total = 0i64;
    for (i, &b) in beads.iter().enumerate() {
        if b < h || beads.contains(&(b - h)) {
            continue;
        }
        let between = beads.iter().filter(|&&x| x > b - h && x < b).count();
        let mut next = beads.clone();
        next[i] = b - h;
        next.sort_unstable_by(|x, y| y.cmp(x));
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * mn(next, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// `m_λ(W_d^r) = (1/N!) Σ_σ χ_W(σ) χ_λ(σ)`, summed over conjugacy classes.
pub fn multiplicity_by_character(shape: &IntPartition, d: usize, r: usize) -> Result<u64> {
    let n = d * r;
    if shape.weight() != n {
        return Err(Error::SizeMismatch { partition: shape.weight(), n });
    }
    let mut acc = BigRational::zero();
    for mu in partitions(n) {
        let chi_w = permutation_character(d, r, &mu)?;
        let chi = irreducible_character(shape, &mu)?;
        acc += BigRational::new(BigInt::from(chi_w) * BigInt::from(chi), centralizer_order(&mu));
    }
    if !acc.denom().is_one() {
        return Err(Error::Overflow(format!("non-integral multiplicity {acc}")));
    }
    acc.numer().to_u64().ok_or_else(|| Error::Overflow("multiplicity does not fit in u64".into()))
}
