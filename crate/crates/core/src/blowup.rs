//! Relative blow ups of affine pairs, computed chart by chart.
//!
//! For `E = A b_0 + ... + A b_n ⊆ B` with `1 ∈ E` and `(b_0, ..., b_n) = B`,
//! the blow up is covered by the charts `(B_{b_i}, A[{b_j/b_i}_j])`; the
//! global `Proj` is never built.

use crate::domains::RationalDomain;
use crate::error::{Error, Result};
use crate::linalg::solve_combination;
use crate::pairs::{compose, relative_normalization, MonomialPair, PairHom, PairOfRings};
use crate::poly::{Polynomial, Rational};
use crate::ring::{monomials_up_to, Localization};
use num_traits::One;

/// Degree bound for the search of `1` in the `A`-span of the generators.
pub const ONE_SEARCH_DEGREE: u32 = 2;

/// A finite `A`-submodule of `B` containing `1`, given by generators.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleE {
    pair: PairOfRings,
    gens: Vec<Polynomial>,
}

impl ModuleE {
    /// Checks that the generators generate the unit ideal of `B` and that
    /// `1` is an `A`-combination of them (coefficients searched among
    /// products of `A`-generators of degree at most [`ONE_SEARCH_DEGREE`]).
    pub fn new(pair: &PairOfRings, gens: Vec<Polynomial>) -> Result<Self> {
        for g in &gens {
            pair.ring().check(g)?;
        }
        let e = Self::assemble(pair, gens);
        if !pair.ring().is_unit_ideal(&e.gens) {
            return Err(Error::NotUnitIdeal);
        }
        if !e.contains_one() {
            return Err(Error::ModuleWithoutOne(format!("{:?}", e.gens.iter().map(|g| g.to_string()).collect::<Vec<_>>())));
        }
        Ok(e)
    }

    fn assemble(pair: &PairOfRings, gens: Vec<Polynomial>) -> Self {
        let ring = pair.ring();
        let mut out: Vec<Polynomial> = Vec::new();
        for g in gens {
            let g = ring.nf(&g);
            if !g.is_zero() && !out.contains(&g) {
                out.push(g);
            }
        }
        ModuleE { pair: pair.clone(), gens: out }
    }

    fn contains_one(&self) -> bool {
        if self.gens.iter().any(|g| g.as_constant().is_some()) {
            return true;
        }
        let ring = self.pair.ring();
        let sub = self.pair.subalgebra();
        let coeffs: Vec<Polynomial> = monomials_up_to(self.pair.a_gens().len(), ONE_SEARCH_DEGREE)
            .into_iter()
            .map(|m| sub.eval_witness(&Polynomial::monomial(sub.tags(), m, Rational::one())))
            .collect();
        let cols: Vec<Polynomial> =
            self.gens.iter().flat_map(|b| coeffs.iter().map(move |c| ring.mul(c, b))).collect();
        solve_combination(&cols, &ring.one()).is_some()
    }

    pub fn pair(&self) -> &PairOfRings {
        &self.pair
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    /// The same generators over a pair with the same `B` and a larger `A`.
    pub fn over(&self, pair: &PairOfRings) -> Result<ModuleE> {
        if pair.ring() != self.pair.ring() {
            return Err(Error::ContextMismatch);
        }
        Ok(ModuleE { pair: pair.clone(), gens: self.gens.clone() })
    }
}

/// `E^d`: all products of `d` generators, pruned by normal form; `E^0 = {1}`.
pub fn power(e: &ModuleE, d: u32) -> ModuleE {
    let ring = e.pair.ring();
    let mut layer = vec![(0usize, ring.one())];
    for _ in 0..d {
        let mut next = Vec::new();
        for (start, p) in &layer {
            for (k, b) in e.gens.iter().enumerate().skip(*start) {
                next.push((k, ring.mul(p, b)));
            }
        }
        layer = next;
    }
    ModuleE::assemble(&e.pair, layer.into_iter().map(|(_, p)| p).collect())
}

/// `E' · E''`: all pairwise products, pruned.
pub fn compose_modules(e1: &ModuleE, e2: &ModuleE) -> Result<ModuleE> {
    if e1.pair != e2.pair {
        return Err(Error::ContextMismatch);
    }
    let ring = e1.pair.ring();
    let prods = e1.gens.iter().flat_map(|a| e2.gens.iter().map(move |b| ring.mul(a, b))).collect();
    Ok(ModuleE::assemble(&e1.pair, prods))
}

/// The affine chart `(B_{b_i}, A[{b_j/b_i}_j])` and its inclusion map.
#[derive(Clone, Debug)]
pub struct Chart {
    pub index: usize,
    pub generator: Polynomial,
    pub pair: PairOfRings,
    pub localization: Localization,
    pub inclusion: PairHom,
}

impl Chart {
    /// `b_j / b_i` in the chart ring.
    pub fn ratio(&self, b: &Polynomial) -> Polynomial {
        let l = &self.localization;
        l.ring.mul(&l.embed(b), &l.inverse)
    }
}

/// One chart per generator that is not nilpotent.
pub fn charts(e: &ModuleE) -> Result<Vec<Chart>> {
    let ring = e.pair.ring();
    let mut out = Vec::new();
    for (i, b) in e.gens.iter().enumerate() {
        if ring.is_nilpotent(b) {
            continue;
        }
        let d = RationalDomain::new(&e.pair, e.gens.clone(), b.clone())?;
        let pair = d.to_pair()?;
        let inclusion = d.inclusion()?;
        out.push(Chart { index: i, generator: b.clone(), pair, localization: d.localization().clone(), inclusion });
    }
    Ok(out)
}

/// For `h: (B, A) → (B', A')` (an arrow `(Y', X') → (Y, X)` of pairs of
/// schemes) and `E` on `(B, A)`, the `A'`-module generated by `h(E)` in `B'`.
pub fn inverse_image_module(h: &PairHom, e: &ModuleE) -> Result<ModuleE> {
    if h.source() != &e.pair {
        return Err(Error::ContextMismatch);
    }
    Ok(ModuleE::assemble(h.target(), e.gens.iter().map(|b| h.apply(b)).collect()))
}

/// Whether `E_i = b_i A_i` on the chart, i.e. every `b_j/b_i` lies in `A_i`.
pub fn is_invertible_on_chart(e: &ModuleE, c: &Chart) -> bool {
    e.gens.iter().all(|b| c.pair.in_a(&c.ratio(b)))
}

/// Factorizations `h = inclusion_i ∘ h_i` through charts of the blow up.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub assignments: Vec<(usize, PairHom)>,
}

/// Factors `h: (B, A) → (B', A')` through the charts whose generator maps
/// to a unit `u` of `B'` with `h(b_j)/u ∈ A'` for all `j`, i.e. on which
/// `h^{-1}(E) = u A'` is principal. Each factorization is checked to
/// reproduce `h`.
pub fn universal_factorization(h: &PairHom, e: &ModuleE) -> Result<Factorization> {
    let target = h.target();
    let tr = target.ring();
    let mut assignments = Vec::new();
    for c in charts(e)? {
        let u = h.apply(&c.generator);
        let Some(inv) = tr.unit_inverse(&u) else { continue };
        if !e.gens.iter().all(|b| target.in_a(&tr.mul(&h.apply(b), &inv))) {
            continue;
        }
        let mut images = h.images().to_vec();
        if !c.localization.is_trivial() {
            images.push(inv);
        }
        let hi = PairHom::new(c.pair.clone(), target.clone(), images)?;
        let back = compose(&hi, &c.inclusion)?;
        if !back.same_map(h) {
            return Err(Error::LiftFailure(format!("chart {} does not reproduce the map", c.index)));
        }
        assignments.push((c.index, hi));
    }
    if assignments.is_empty() {
        return Err(Error::NotInvertible("the inverse image module is not generated by a single generator".into()));
    }
    Ok(Factorization { assignments })
}

#[derive(Clone, Debug, PartialEq)]
pub enum NorBlowup {
    Agree,
    /// On chart `chart`, `witness` lies in one side only.
    Disagree { chart: usize, witness: Polynomial },
}

/// Compares, chart by chart, the normalized blow up of `(B, A)` with the
/// normalized blow up of `(B, Nor_B A)` along `Nor_B(A)·E`. Normalizations
/// are bounded by `degree_bound`.
pub fn nor_blowup_commutes(e: &ModuleE, degree_bound: u32) -> Result<NorBlowup> {
    let nor = relative_normalization(&e.pair, degree_bound).pair;
    let left = charts(e)?;
    let right = charts(&e.over(&nor)?)?;
    for (l, r) in left.iter().zip(&right) {
        let a = relative_normalization(&l.pair, degree_bound).pair;
        let b = relative_normalization(&r.pair, degree_bound).pair;
        if let Some(w) = one_sided(&a, &b) {
            return Ok(NorBlowup::Disagree { chart: l.index, witness: w });
        }
    }
    Ok(NorBlowup::Agree)
}

fn one_sided(a: &PairOfRings, b: &PairOfRings) -> Option<Polynomial> {
    a.a_gens().iter().find(|g| !b.in_a(g)).or_else(|| b.a_gens().iter().find(|g| !a.in_a(g))).cloned()
}

/// Monomial version: `E` is spanned by monomials `e_i ∈ S_M` with `0` among
/// them. Chart `i` is `(Q[M - N e_i], Q[N + <e_j - e_i>])`; both sides are
/// saturated exactly and compared as semigroups within `bound`.
pub fn nor_blowup_commutes_monomial(p: &MonomialPair, e: &[Vec<i64>], bound: u32) -> Result<NorBlowup> {
    if !e.iter().any(|v| v.iter().all(|&x| x == 0)) {
        return Err(Error::ModuleWithoutOne("the monomial module must contain 0".into()));
    }
    let nor_n = p.normalize(bound).generators;
    for (i, ei) in e.iter().enumerate() {
        let mut m = p.m_gens.clone();
        m.push(ei.iter().map(|x| -x).collect());
        let ratios: Vec<Vec<i64>> = e.iter().map(|ej| ej.iter().zip(ei).map(|(a, b)| a - b).collect()).collect();
        let with = |base: &[Vec<i64>]| -> Result<MonomialPair> {
            let mut n = base.to_vec();
            n.extend(ratios.iter().cloned());
            MonomialPair::new(p.rank, m.clone(), n)
        };
        let left = with(&p.n_gens)?.normalize(bound).generators;
        let right = with(&nor_n)?.normalize(bound).generators;
        let missing = |xs: &[Vec<i64>], ys: &[Vec<i64>]| {
            xs.iter().find(|x| crate::pairs::decompose(x, ys, 2 * bound).is_none()).cloned()
        };
        if let Some(w) = missing(&left, &right).or_else(|| missing(&right, &left)) {
            let pair = with(&p.n_gens)?;
            let witness = pair.element(&w, 2 * bound).ok_or_else(|| Error::Unsupported("witness outside the box".into()))?;
            return Ok(NorBlowup::Disagree { chart: i, witness });
        }
    }
    Ok(NorBlowup::Agree)
}

/// `E` for a monomial pair, as polynomials of `to_pair()`.
pub fn monomial_module(p: &MonomialPair, e: &[Vec<i64>]) -> Result<ModuleE> {
    let pair = p.to_pair()?;
    let gens = e
        .iter()
        .map(|v| p.element(v, crate::pairs::DEFAULT_SEARCH).ok_or_else(|| Error::Malformed(format!("{v:?} not in S_M"))))
        .collect::<Result<Vec<_>>>()?;
    ModuleE::new(&pair, gens)
}
