use super::{integral_element_test, MonomialPair, PairOfRings};
use crate::poly::{Polynomial, Rational};
use crate::ring::monomials_up_to;
use num_traits::One;

/// Result of a relative normalization.
#[derive(Clone, Debug)]
pub struct Normalization {
    pub pair: PairOfRings,
    /// Elements adjoined to the original generators of `A`.
    pub added: Vec<Polynomial>,
    /// `true` when the result is only known to be contained in `Nor_B A`.
    pub bounded: bool,
}

/// Enlarges `A` by every monomial in the variables of `B` of degree at most
/// `bound` that is integral over the current `A`, until nothing changes.
pub fn relative_normalization(p: &PairOfRings, bound: u32) -> Normalization {
    let ring = p.ring();
    let candidates: Vec<Polynomial> = monomials_up_to(ring.nvars(), bound)
        .into_iter()
        .filter(|m| m.degree() > 0)
        .map(|m| ring.nf(&Polynomial::monomial(ring.ctx(), m, Rational::one())))
        .collect();
    let mut current = p.clone();
    let mut added = Vec::new();
    loop {
        let mut grew = false;
        for c in &candidates {
            if current.in_a(c) {
                continue;
            }
            if integral_element_test(c, &current, bound).is_integral() {
                added.push(c.clone());
                current = current.with_more_gens(std::slice::from_ref(c));
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    Normalization { pair: current, added, bounded: true }
}

impl MonomialPair {
    /// The exact normalization, presented as a pair of rings.
    pub fn normalization_pair(&self, bound: u32) -> crate::error::Result<Normalization> {
        let base = self.to_pair()?;
        let nor = self.normalize(bound);
        let extra: Vec<Polynomial> = nor.generators.iter().map(|v| self.element(v, bound)).collect::<Option<Vec<_>>>()
            .ok_or_else(|| crate::error::Error::Unsupported("normalization generator outside the search box".into()))?;
        let pair = base.with_more_gens(&extra);
        Ok(Normalization { pair, added: extra, bounded: false })
    }
}
