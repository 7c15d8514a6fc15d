//! Monomial pairs `(Q[M], Q[N])` for finitely generated semigroups
//! `N ⊆ M ⊆ Z^n`. Here normalization is exact: `Nor_{Q[M]} Q[N]` is spanned
//! by `S_M ∩ cone(N)`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::PairOfRings;
use crate::error::{Error, Result};
use crate::linalg::{rank, solve};
use crate::poly::{Monomial, Polynomial, Rational, VarContext};
use crate::ring::RingPresentation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialPair {
    pub rank: usize,
    pub m_gens: Vec<Vec<i64>>,
    pub n_gens: Vec<Vec<i64>>,
}

/// Generators of `S_M ∩ cone(N)` found in the search box, each with the
/// multiplier `k` for which `k·g ∈ S_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialNormalization {
    pub generators: Vec<Vec<i64>>,
    pub certificates: Vec<u64>,
    pub box_size: u32,
}

/// Summands allowed when decomposing into generators.
pub const DEFAULT_SEARCH: u32 = 8;

impl MonomialPair {
    pub fn new(rank: usize, m_gens: Vec<Vec<i64>>, n_gens: Vec<Vec<i64>>) -> Result<Self> {
        for v in m_gens.iter().chain(&n_gens) {
            if v.len() != rank {
                return Err(Error::Malformed(format!("vector {v:?} does not have length {rank}")));
            }
        }
        let p = MonomialPair { rank, m_gens, n_gens };
        for n in &p.n_gens {
            if decompose(n, &p.m_gens, DEFAULT_SEARCH).is_none() {
                return Err(Error::Malformed(format!("{n:?} is not in the semigroup of M")));
            }
        }
        Ok(p)
    }

    fn var_names(&self) -> Vec<String> {
        (1..=self.m_gens.len()).map(|i| format!("u{i}")).collect()
    }

    /// `Q[M]` as `Q[u]/I_M` (toric ideal by Laurent elimination) with `A`
    /// generated by monomials representing the generators of `N`.
    pub fn to_pair(&self) -> Result<PairOfRings> {
        let ctx = VarContext::new(&self.var_names())?;
        let mut lnames: Vec<String> = (1..=self.rank).map(|i| format!("z{i}")).collect();
        lnames.extend((1..=self.rank).map(|i| format!("w{i}")));
        let lctx = VarContext::new(&lnames)?;
        let laurent_rels: Vec<Polynomial> = (0..self.rank)
            .map(|i| Polynomial::var(&lctx, i).mul(&Polynomial::var(&lctx, self.rank + i)).sub(&Polynomial::one(&lctx)))
            .collect();
        let laurent = RingPresentation::new(&lctx, &laurent_rels)?;
        let images: Vec<Polynomial> = self.m_gens.iter().map(|m| laurent_monomial(&lctx, self.rank, m)).collect();
        let poly = RingPresentation::polynomial_ring(&ctx);
        let rels = poly.kernel_of_map(&laurent, &images);
        let ring = RingPresentation::new(&ctx, &rels)?;
        let a = self
            .n_gens
            .iter()
            .map(|n| self.element(n, DEFAULT_SEARCH).ok_or_else(|| Error::Malformed(format!("{n:?} not in S_M"))))
            .collect::<Result<Vec<_>>>()?;
        PairOfRings::new(ring, a)
    }

    /// The monomial of `Q[u]` representing `v ∈ S_M`, if found within `bound` summands.
    pub fn element(&self, v: &[i64], bound: u32) -> Option<Polynomial> {
        let ctx = VarContext::new(&self.var_names()).ok()?;
        let c = decompose(v, &self.m_gens, bound)?;
        Some(Polynomial::monomial(&ctx, Monomial(c), Rational::one()))
    }

    /// Elements of `S_M` that are sums of at most `bound` generators, by layer.
    pub fn box_elements(&self, bound: u32) -> Vec<Vec<i64>> {
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let zero = vec![0i64; self.rank];
        seen.insert(zero.clone());
        let mut layer = vec![zero];
        let mut out = Vec::new();
        for _ in 0..bound {
            let mut next = Vec::new();
            for v in &layer {
                for g in &self.m_gens {
                    let s: Vec<i64> = v.iter().zip(g).map(|(a, b)| a + b).collect();
                    if seen.insert(s.clone()) {
                        out.push(s.clone());
                        next.push(s);
                    }
                }
            }
            layer = next;
        }
        out
    }

    /// Exact normalization: irreducible elements of `S_M ∩ cone(N)` within the box.
    pub fn normalize(&self, bound: u32) -> MonomialNormalization {
        let mut found: Vec<(Vec<i64>, u64)> = self
            .box_elements(bound)
            .into_iter()
            .filter_map(|v| cone_certificate(&v, &self.n_gens).map(|k| (v, k)))
            .collect();
        found.sort_by_key(|(v, _)| (v.iter().map(|x| x.abs()).sum::<i64>(), v.clone()));
        let mut gens: Vec<Vec<i64>> = Vec::new();
        let mut certs = Vec::new();
        for (v, k) in found {
            if decompose(&v, &gens, bound).is_none() {
                gens.push(v);
                certs.push(k);
            }
        }
        MonomialNormalization { generators: gens, certificates: certs, box_size: bound }
    }

    /// Whether every element of the search box lying in `cone(N)` is generated
    /// by `gens`.
    pub fn certify_saturated(&self, gens: &[Vec<i64>], bound: u32) -> bool {
        self.box_elements(bound)
            .iter()
            .filter(|v| cone_certificate(v, &self.n_gens).is_some())
            .all(|v| decompose(v, gens, bound * 2).is_some())
    }
}

fn laurent_monomial(lctx: &VarContext, rank: usize, m: &[i64]) -> Polynomial {
    let mut e = vec![0u32; 2 * rank];
    for (i, &x) in m.iter().enumerate() {
        if x >= 0 {
            e[i] = x as u32;
        } else {
            e[rank + i] = (-x) as u32;
        }
    }
    Polynomial::monomial(lctx, Monomial(e), Rational::one())
}

/// Coefficients `c` with `sum c_i gens[i] = target` and `sum c_i <= bound`,
/// found by breadth-first search (fewest summands first).
pub fn decompose(target: &[i64], gens: &[Vec<i64>], bound: u32) -> Option<Vec<u32>> {
    let zero = vec![0i64; target.len()];
    if target == zero.as_slice() {
        return Some(vec![0; gens.len()]);
    }
    let mut seen: BTreeMap<Vec<i64>, Vec<u32>> = BTreeMap::new();
    seen.insert(zero.clone(), vec![0; gens.len()]);
    let mut queue = VecDeque::from([(zero, 0u32)]);
    while let Some((v, depth)) = queue.pop_front() {
        if depth == bound {
            continue;
        }
        let coeffs = seen[&v].clone();
        for (i, g) in gens.iter().enumerate() {
            let s: Vec<i64> = v.iter().zip(g).map(|(a, b)| a + b).collect();
            if seen.contains_key(&s) {
                continue;
            }
            let mut c = coeffs.clone();
            c[i] += 1;
            if s.as_slice() == target {
                return Some(c);
            }
            seen.insert(s.clone(), c);
            queue.push_back((s, depth + 1));
        }
    }
    None
}

/// If `v ∈ cone(gens)`, some `k >= 1` with `k·v` an `N`-combination of
/// linearly independent generators (Carathéodory).
pub fn cone_certificate(v: &[i64], gens: &[Vec<i64>]) -> Option<u64> {
    if v.iter().all(|&x| x == 0) {
        return Some(1);
    }
    let dim = v.len();
    let to_q = |x: i64| Rational::from_integer(BigInt::from(x));
    let mut best: Option<u64> = None;
    let n = gens.len();
    for mask in 1u32..(1u32 << n) {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        if idx.len() > dim {
            continue;
        }
        let cols: Vec<Vec<Rational>> = idx.iter().map(|&i| gens[i].iter().map(|&x| to_q(x)).collect()).collect();
        if rank(&cols) != idx.len() {
            continue;
        }
        let a: Vec<Vec<Rational>> = (0..dim).map(|r| idx.iter().map(|&i| to_q(gens[i][r])).collect()).collect();
        let b: Vec<Rational> = v.iter().map(|&x| to_q(x)).collect();
        if let Some(l) = solve(&a, &b) {
            if l.iter().all(|x| !x.is_negative()) {
                let k = l.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                if let Some(k) = k.to_u64() {
                    best = Some(best.map_or(k, |b| b.min(k)));
                }
            }
        }
    }
    best.filter(|k| !k.is_zero())
}
