//! Sections of `M(U) = B'` and `O(U) = Nor_{B'} A'` for `U = X(T/b)` with
//! localized pair `(B', A')`, and the equalizer condition on finite covers.

use super::{Covering, RationalDomain};
use crate::error::{Error, Result};
use crate::linalg::solve_stacked;
use crate::pairs::relative_normalization;
use crate::poly::Polynomial;
use crate::ring::{monomials_up_to, RingPresentation};

#[derive(Clone, Debug)]
pub struct SheafSections {
    pub domain: RationalDomain,
    pub m_ring: RingPresentation,
    /// Generators of the bounded relative normalization of `A'` in `B'`.
    pub o_gens: Vec<Polynomial>,
}

impl SheafSections {
    pub fn in_o(&self, s: &Polynomial) -> bool {
        self.m_ring.subalgebra(&self.o_gens).is_member(s)
    }
}

pub fn sheaf_sections(d: &RationalDomain, degree_bound: u32) -> Result<SheafSections> {
    let pair = d.to_pair()?;
    let nor = relative_normalization(&pair, degree_bound);
    Ok(SheafSections { domain: d.clone(), m_ring: pair.ring().clone(), o_gens: nor.pair.a_gens().to_vec() })
}

#[derive(Clone, Debug, PartialEq)]
pub enum EqualizerOutcome {
    /// The unique `s ∈ B` restricting to every section, and whether it is
    /// in `O` of the whole space.
    Glued { section: Polynomial, in_o: bool },
    /// Sections `i` and `j` differ on the overlap by `difference`.
    Mismatch { i: usize, j: usize, difference: Polynomial },
    /// Compatible, but no global section of degree at most the bound.
    NotFound { bound: u32 },
}

/// Checks pairwise agreement on overlaps `B_{b_i b_j}`, then solves for a
/// global section over monomials of degree at most `degree_bound`.
pub fn sheaf_equalizer_check(c: &Covering, sections: &[Polynomial], degree_bound: u32) -> Result<EqualizerOutcome> {
    let domains = c.domains();
    if sections.len() != domains.len() {
        return Err(Error::Malformed(format!("{} sections for {} domains", sections.len(), domains.len())));
    }
    for (d, s) in domains.iter().zip(sections) {
        d.localization().ring.check(s)?;
    }
    let ring = c.base().ring();
    for i in 0..domains.len() {
        for j in i + 1..domains.len() {
            let den = ring.mul(domains[i].denominator(), domains[j].denominator());
            if ring.is_nilpotent(&den) {
                continue;
            }
            let overlap = ring.localize(&den)?;
            let ri = restrict(&domains[i], domains[j].denominator(), &overlap, &sections[i]);
            let rj = restrict(&domains[j], domains[i].denominator(), &overlap, &sections[j]);
            let difference = overlap.ring.nf(&ri.sub(&rj));
            if !difference.is_zero() {
                return Ok(EqualizerOutcome::Mismatch { i, j, difference });
            }
        }
    }
    let monomials: Vec<Polynomial> = monomials_up_to(ring.nvars(), degree_bound)
        .into_iter()
        .map(|m| Polynomial::monomial(ring.ctx(), m, crate::poly::rat(1)))
        .collect();
    let cols: Vec<Vec<Polynomial>> =
        monomials.iter().map(|m| domains.iter().map(|d| d.localization().embed(m)).collect()).collect();
    let targets: Vec<Polynomial> =
        domains.iter().zip(sections).map(|(d, s)| d.localization().ring.nf(s)).collect();
    let Some(coeffs) = solve_stacked(&cols, &targets) else {
        return Ok(EqualizerOutcome::NotFound { bound: degree_bound });
    };
    let mut section = ring.zero();
    for (m, c) in monomials.iter().zip(&coeffs) {
        section = section.add(&m.scale(c));
    }
    let section = ring.nf(&section);
    let nor = relative_normalization(c.base(), degree_bound);
    let in_o = nor.pair.in_a(&section);
    Ok(EqualizerOutcome::Glued { section, in_o })
}

/// Image of `s ∈ B_{b}` in `B_{b b'}`, sending `1/b` to `b'/(b b')`.
fn restrict(d: &RationalDomain, other: &Polynomial, overlap: &crate::ring::Localization, s: &Polynomial) -> Polynomial {
    let loc = d.localization();
    let mut images = overlap.embedding_images();
    if !loc.is_trivial() {
        images.push(overlap.ring.mul(&overlap.embed(other), &overlap.inverse));
    }
    overlap.ring.nf(&s.substitute(&images, overlap.ring.ctx()))
}
