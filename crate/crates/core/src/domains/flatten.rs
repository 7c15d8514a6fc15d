//! A rational domain of a rational domain is a rational domain of the base.
//!
//! Elements `h` of `B_b` are lifted to `g ∈ B` with `g = b^k h`; then
//! `ν(h) = ν(g) - k ν(b)`, and each inner condition becomes a condition on
//! elements of `B` whose data contain `1`, so the unit ideal is automatic.

use super::{intersect, RationalDomain};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::valuation::{localized_value, Valuation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlattenCase {
    /// Both denominators constant: `X({a_i} ∪ {h_j}/1)`.
    Constants,
    /// Inner `{1}/h`: intersect with `X({b^k, 1}/g)`.
    InvertElement,
    /// Inner `{h_j}/1`: intersect with `X({g_j, 1}/b^{k_j})` for each `j`.
    Bounded,
    /// Inner `{h_j}/f`: first `{1}/f`, then `{h_j/f}/1` over the result.
    General,
}

#[derive(Clone, Debug)]
pub struct Flattened {
    pub domain: RationalDomain,
    pub case: FlattenCase,
}

/// The domain `{h_j}/f` of `to_pair(outer)` as a domain of the base.
pub fn flatten(outer: &RationalDomain, numerators: &[Polynomial], denominator: &Polynomial) -> Result<Flattened> {
    let l = &outer.localization().ring;
    for g in numerators.iter().chain(std::iter::once(denominator)) {
        l.check(g)?;
    }
    let f = l.nf(denominator);
    if f.is_zero() {
        return Err(Error::Nilpotent("0".into()));
    }
    let nums: Vec<Polynomial> =
        numerators.iter().map(|h| l.nf(h)).filter(|h| !h.is_zero() && *h != f).collect();
    let b_const = outer.denominator().as_constant().is_some();
    let f_const = f.as_constant().is_some();
    let nums_const = nums.iter().all(|h| h.as_constant().is_some());

    if f_const && nums_const {
        return Ok(Flattened { domain: outer.clone(), case: if b_const { FlattenCase::Constants } else { FlattenCase::Bounded } });
    }
    if b_const && f_const {
        let mut all = outer.numerators().to_vec();
        all.extend(nums);
        let one = outer.pair().ring().one();
        let domain = RationalDomain::new(outer.pair(), all, one)?;
        return Ok(Flattened { domain, case: FlattenCase::Constants });
    }
    if f_const {
        let mut d = outer.clone();
        for h in &nums {
            d = intersect(&d, &bounded(outer, h)?)?;
        }
        return Ok(Flattened { domain: d, case: FlattenCase::Bounded });
    }
    if nums_const {
        let domain = intersect(outer, &inverted(outer, &f)?)?;
        return Ok(Flattened { domain, case: FlattenCase::InvertElement });
    }

    // General case through D3 = outer ∩ X({b^k, 1}/g), whose denominator is
    // b g; with t3 = 1/(b g) we have 1/b = g t3 and h_j/f = h_j b^k b t3.
    let loc = outer.localization();
    let (g, k) = loc.lift(&f);
    let d3 = intersect(outer, &inverted(outer, &f)?)?;
    let loc3 = d3.localization();
    let l3 = &loc3.ring;
    let mut images = loc3.embedding_images();
    if !loc.is_trivial() {
        images.push(l3.mul(&loc3.embed(&g), &loc3.inverse));
    }
    let ring = outer.pair().ring();
    let factor = l3.mul(&loc3.embed(&ring.pow(outer.denominator(), k + 1)), &loc3.inverse);
    let mut d = d3.clone();
    for h in &nums {
        let q = l3.mul(&l3.nf(&h.substitute(&images, l3.ctx())), &factor);
        d = intersect(&d, &bounded(&d3, &q)?)?;
    }
    Ok(Flattened { domain: d, case: FlattenCase::General })
}

/// `X({g, 1}/b^k)` for `h = g/b^k` in the localization of `d`: the locus `ν(h) >= 0`.
fn bounded(d: &RationalDomain, h: &Polynomial) -> Result<RationalDomain> {
    let (g, k) = d.localization().lift(h);
    let ring = d.pair().ring();
    RationalDomain::new(d.pair(), vec![g, ring.one()], ring.pow(d.denominator(), k))
}

/// `X({b^k, 1}/g)` for `f = g/b^k`: the locus `0 >= ν(f) != ZERO`.
fn inverted(d: &RationalDomain, f: &Polynomial) -> Result<RationalDomain> {
    let (g, k) = d.localization().lift(f);
    let ring = d.pair().ring();
    RationalDomain::new(d.pair(), vec![ring.pow(d.denominator(), k), ring.one()], g)
}

/// `v ∈ outer` and, extending `v` to the localization, `ν(h_j) >= ν(f) != ZERO`.
pub fn inner_membership(v: &Valuation, outer: &RationalDomain, numerators: &[Polynomial], denominator: &Polynomial) -> Result<bool> {
    if !outer.contains(v)? {
        return Ok(false);
    }
    let loc = outer.localization();
    let vf = localized_value(v, loc, denominator)?;
    if vf.is_zero_symbol() {
        return Ok(false);
    }
    for h in numerators {
        if localized_value(v, loc, h)? < vf {
            return Ok(false);
        }
    }
    Ok(true)
}
