//! Rational domains `X({a_i}/b) = {v : ν(a_i) >= ν(b) != ZERO}` of `Val(B, A)`,
//! their algebra, coverings and the sheaves `M` and `O` on finite covers.
//!
//! A domain's generator list is `[b] ++ (numerators other than b)`; index 0
//! is the denominator, matching the indexing used for products.

mod flatten;
mod probes;
mod sheaf;

use std::fmt;

use crate::error::{Error, Result};
use crate::pairs::{PairHom, PairOfRings};
use crate::poly::Polynomial;
use crate::ring::Localization;
use crate::valuation::Valuation;

pub use flatten::{flatten, inner_membership, FlattenCase, Flattened};
pub use probes::ProbeCorpus;
pub use sheaf::{sheaf_equalizer_check, sheaf_sections, EqualizerOutcome, SheafSections};

#[derive(Clone)]
pub struct RationalDomain {
    pair: PairOfRings,
    numerators: Vec<Polynomial>,
    denominator: Polynomial,
    loc: Localization,
}

impl PartialEq for RationalDomain {
    fn eq(&self, other: &Self) -> bool {
        self.pair == other.pair && self.numerators == other.numerators && self.denominator == other.denominator
    }
}

impl fmt::Debug for RationalDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nums: Vec<String> = self.numerators.iter().map(|p| p.to_string()).collect();
        write!(f, "X({{{}}}/{})", nums.join(", "), self.denominator)
    }
}

impl RationalDomain {
    /// Checks that the data generate the unit ideal and that `b` is not nilpotent.
    pub fn new(pair: &PairOfRings, numerators: Vec<Polynomial>, denominator: Polynomial) -> Result<Self> {
        let ring = pair.ring();
        for g in numerators.iter().chain(std::iter::once(&denominator)) {
            ring.check(g)?;
        }
        let d = Self::assemble(pair, numerators, denominator)?;
        let mut all = d.numerators.clone();
        all.push(d.denominator.clone());
        if !ring.is_unit_ideal(&all) {
            return Err(Error::NotUnitIdeal);
        }
        Ok(d)
    }

    /// Skips the unit-ideal test (used where it holds by construction).
    fn assemble(pair: &PairOfRings, numerators: Vec<Polynomial>, denominator: Polynomial) -> Result<Self> {
        let ring = pair.ring();
        let denominator = ring.nf(&denominator);
        let mut nums: Vec<Polynomial> = Vec::new();
        for a in numerators {
            let a = ring.nf(&a);
            if !a.is_zero() && !nums.contains(&a) {
                nums.push(a);
            }
        }
        let loc = ring.localize(&denominator)?;
        Ok(RationalDomain { pair: pair.clone(), numerators: nums, denominator, loc })
    }

    /// `X({1}/1)`, the whole space.
    pub fn whole(pair: &PairOfRings) -> Self {
        let one = pair.ring().one();
        Self::assemble(pair, vec![one.clone()], one).expect("1 is a unit")
    }

    pub fn pair(&self) -> &PairOfRings {
        &self.pair
    }

    pub fn numerators(&self) -> &[Polynomial] {
        &self.numerators
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.denominator
    }

    pub fn localization(&self) -> &Localization {
        &self.loc
    }

    /// `[b] ++ (numerators other than b)`.
    pub fn generator_list(&self) -> Vec<Polynomial> {
        let mut out = vec![self.denominator.clone()];
        out.extend(self.numerators.iter().filter(|a| **a != self.denominator).cloned());
        out
    }

    /// Whether every condition is vacuous: constant numerators over a
    /// constant denominator.
    pub fn is_whole(&self) -> bool {
        self.denominator.as_constant().is_some() && self.numerators.iter().all(|a| a.as_constant().is_some())
    }

    /// `(B_b, φ_b(A)[a_1/b, ..., a_n/b])`.
    pub fn to_pair(&self) -> Result<PairOfRings> {
        let l = &self.loc;
        let mut gens: Vec<Polynomial> = self.pair.a_gens().iter().map(|a| l.embed(a)).collect();
        gens.extend(self.numerators.iter().map(|a| l.ring.mul(&l.embed(a), &l.inverse)));
        PairOfRings::new(l.ring.clone(), gens)
    }

    /// The canonical map `(B, A) → to_pair()`.
    pub fn inclusion(&self) -> Result<PairHom> {
        PairHom::new(self.pair.clone(), self.to_pair()?, self.loc.embedding_images())
    }

    /// `ν(a_i) >= ν(b)` for all `i`, and `ν(b) != ZERO`.
    pub fn contains(&self, v: &Valuation) -> Result<bool> {
        if v.ring() != self.pair.ring() {
            return Err(Error::ContextMismatch);
        }
        let vb = v.value(&self.denominator);
        if vb.is_zero_symbol() {
            return Ok(false);
        }
        Ok(self.numerators.iter().all(|a| v.value(a) >= vb))
    }
}

/// Membership of `v` in `d`.
pub fn membership(v: &Valuation, d: &RationalDomain) -> Result<bool> {
    d.contains(v)
}

fn products(ring: &crate::ring::RingPresentation, l1: &[Polynomial], l2: &[Polynomial]) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = Vec::new();
    for (i, x) in l1.iter().enumerate() {
        for (j, y) in l2.iter().enumerate() {
            if i == 0 && j == 0 {
                continue;
            }
            let p = ring.mul(x, y);
            if !p.is_zero() && !out.contains(&p) {
                out.push(p);
            }
        }
    }
    out
}

/// `X({a_i a'_j}/a_0 a'_0)` over the generator lists, omitting the pair
/// of denominators.
pub fn intersect(d1: &RationalDomain, d2: &RationalDomain) -> Result<RationalDomain> {
    if d1.pair != d2.pair {
        return Err(Error::ContextMismatch);
    }
    if d2.is_whole() {
        return Ok(d1.clone());
    }
    if d1.is_whole() {
        return Ok(d2.clone());
    }
    let ring = d1.pair.ring();
    let nums = products(ring, &d1.generator_list(), &d2.generator_list());
    let den = ring.mul(&d1.denominator, &d2.denominator);
    RationalDomain::assemble(&d1.pair, nums, den)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Covering {
    base: PairOfRings,
    domains: Vec<RationalDomain>,
}

impl Covering {
    pub fn new(base: &PairOfRings, domains: Vec<RationalDomain>) -> Result<Self> {
        if domains.is_empty() {
            return Err(Error::Malformed("a covering needs at least one domain".into()));
        }
        if domains.iter().any(|d| d.pair() != base) {
            return Err(Error::ContextMismatch);
        }
        Ok(Covering { base: base.clone(), domains })
    }

    /// The rational covering `{X(T/a_j)}_j` for a unit-ideal set `T`,
    /// skipping nilpotent `a_j`.
    pub fn rational(base: &PairOfRings, t: &[Polynomial]) -> Result<Self> {
        if !base.ring().is_unit_ideal(t) {
            return Err(Error::NotUnitIdeal);
        }
        let ring = base.ring();
        let domains = t
            .iter()
            .filter(|a| !ring.is_nilpotent(a))
            .map(|a| RationalDomain::assemble(base, t.to_vec(), a.clone()))
            .collect::<Result<Vec<_>>>()?;
        Covering::new(base, domains)
    }

    pub fn base(&self) -> &PairOfRings {
        &self.base
    }

    pub fn domains(&self) -> &[RationalDomain] {
        &self.domains
    }

    /// Probes lying in no domain of the cover.
    pub fn uncovered<'a>(&self, probes: &'a ProbeCorpus) -> Vec<&'a Valuation> {
        probes
            .valuations()
            .iter()
            .filter(|v| !self.domains.iter().any(|d| d.contains(v).unwrap_or(false)))
            .collect()
    }
}

/// Bound on `|I|` in [`refine_cover`].
pub const MAX_TUPLES: usize = 4096;

/// A rational covering refining an input cover, with `assignment[k]` the
/// input domain containing output domain `k`, and `indices[k]` its tuple
/// `α ∈ I'` (0-based; position 0 is the denominator).
#[derive(Clone, Debug)]
pub struct Refinement {
    pub cover: Covering,
    pub assignment: Vec<usize>,
    pub indices: Vec<Vec<usize>>,
}

/// Refines a finite cover by rational domains to a rational covering.
///
/// With `L_i` the generator list of `U_i`, `I` the tuples of positions and
/// `I'` those with some position 0, the output is `V_α = X({a_β}_{β∈I'}/a_α)`
/// for `α ∈ I'`, where `a_α` is the product of the chosen entries, and `V_α`
/// lies in `U_i` for the first `i` with `α_i = 0`.
pub fn refine_cover(c: &Covering) -> Result<Refinement> {
    let ring = c.base.ring();
    let lists: Vec<Vec<Polynomial>> = c.domains.iter().map(|d| d.generator_list()).collect();
    let size = lists.iter().try_fold(1usize, |acc, l| acc.checked_mul(l.len()));
    if size.is_none_or(|s| s > MAX_TUPLES) {
        return Err(Error::Unsupported("index set of the refinement is too large".into()));
    }
    let mut tuples: Vec<Vec<usize>> = vec![vec![]];
    for l in &lists {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                (0..l.len()).map(move |r| {
                    let mut t = t.clone();
                    t.push(r);
                    t
                })
            })
            .collect();
    }
    let primed: Vec<Vec<usize>> = tuples.into_iter().filter(|t| t.contains(&0)).collect();
    let product = |t: &[usize]| {
        t.iter().enumerate().fold(ring.one(), |acc, (i, &r)| ring.mul(&acc, &lists[i][r]))
    };
    let a: Vec<Polynomial> = primed.iter().map(|t| product(t)).collect();
    let mut t_set: Vec<Polynomial> = Vec::new();
    for p in &a {
        if !p.is_zero() && !t_set.contains(p) {
            t_set.push(p.clone());
        }
    }
    if !ring.is_unit_ideal(&t_set) {
        return Err(Error::NotUnitIdeal);
    }
    let mut domains = Vec::new();
    let mut assignment = Vec::new();
    let mut indices = Vec::new();
    let mut seen: Vec<Polynomial> = Vec::new();
    for (alpha, den) in primed.iter().zip(&a) {
        if seen.contains(den) || ring.is_nilpotent(den) {
            continue;
        }
        seen.push(den.clone());
        domains.push(RationalDomain::assemble(&c.base, t_set.clone(), den.clone())?);
        assignment.push(alpha.iter().position(|&r| r == 0).expect("alpha in I'"));
        indices.push(alpha.clone());
    }
    Ok(Refinement { cover: Covering::new(&c.base, domains)?, assignment, indices })
}
