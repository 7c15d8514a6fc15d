//! Multivariate polynomials over the rationals.
//!
//! A [`Polynomial`] always lives in a [`VarContext`]: an ordered list of
//! distinct variable names. Terms are kept in a map keyed by exponent
//! vector, so no zero coefficient is ever stored.

mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use parse::parse_polynomial;

/// Exact rational coefficients, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Ordered list of distinct variable names.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VarContext {
    names: Arc<[String]>,
}

impl VarContext {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for n in names {
            let n = n.as_ref();
            if !is_identifier(n) {
                return Err(Error::Malformed(format!("invalid variable name {n:?}")));
            }
            if !seen.insert(n.to_string()) {
                return Err(Error::Malformed(format!("duplicate variable {n:?}")));
            }
        }
        Ok(VarContext {
            names: names.iter().map(|s| s.as_ref().to_string()).collect(),
        })
    }

    pub fn empty() -> Self {
        VarContext { names: Arc::from(Vec::<String>::new()) }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// A name based on `base` that does not clash with this context.
    pub fn fresh_name(&self, base: &str) -> String {
        if self.index_of(base).is_none() {
            return base.to_string();
        }
        (1..)
            .map(|i| format!("{base}{i}"))
            .find(|c| self.index_of(c).is_none())
            .unwrap()
    }

    /// `count` fresh names `base1, base2, ...` avoiding this context.
    pub fn fresh_names(&self, base: &str, count: usize) -> Vec<String> {
        let mut out = Vec::with_capacity(count);
        let mut i = 1;
        while out.len() < count {
            let c = format!("{base}{i}");
            if self.index_of(&c).is_none() {
                out.push(c);
            }
            i += 1;
        }
        out
    }

    /// This context followed by `extra` (which must be fresh).
    pub fn extend<S: AsRef<str>>(&self, extra: &[S]) -> Result<Self> {
        let mut all: Vec<String> = self.names.to_vec();
        all.extend(extra.iter().map(|s| s.as_ref().to_string()));
        VarContext::new(&all)
    }

    /// Concatenation `self ++ other`, renaming clashing names of `other`.
    pub fn concat_renamed(&self, other: &VarContext) -> VarContext {
        let mut all: Vec<String> = self.names.to_vec();
        for n in other.names.iter() {
            let tmp = VarContext { names: all.clone().into() };
            all.push(tmp.fresh_name(n));
        }
        VarContext { names: all.into() }
    }
}

impl fmt::Debug for VarContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.names)
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Exponent vector, one entry per context variable.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// A polynomial with rational coefficients in a fixed variable context.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ctx: VarContext,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(ctx: &VarContext) -> Self {
        Polynomial { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ctx: &VarContext, c: Rational) -> Self {
        let mut p = Polynomial::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ctx.len()), c);
        }
        p
    }

    pub fn one(ctx: &VarContext) -> Self {
        Polynomial::constant(ctx, Rational::one())
    }

    pub fn var(ctx: &VarContext, i: usize) -> Self {
        Polynomial::monomial(ctx, Monomial::var(ctx.len(), i), Rational::one())
    }

    pub fn var_named(ctx: &VarContext, name: &str) -> Result<Self> {
        let i = ctx
            .index_of(name)
            .ok_or_else(|| Error::Malformed(format!("unknown variable {name:?}")))?;
        Ok(Polynomial::var(ctx, i))
    }

    pub fn monomial(ctx: &VarContext, m: Monomial, c: Rational) -> Self {
        debug_assert_eq!(m.0.len(), ctx.len());
        let mut p = Polynomial::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(ctx: &VarContext, terms: I) -> Self {
        let mut p = Polynomial::zero(ctx);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn parse(ctx: &VarContext, s: &str) -> Result<Self> {
        parse_polynomial(ctx, s)
    }

    pub fn ctx(&self) -> &VarContext {
        &self.ctx
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The constant value if this polynomial has no variable terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_ctx(&self, other: &Polynomial) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ctx(other)?;
        Ok(self.add(other))
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.ctx, other.ctx, "context mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(k, x)| (k.mul(m), x * c)).collect(),
        }
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ctx(other)?;
        Ok(self.mul(other))
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.ctx, other.ctx, "context mismatch");
        let mut out = Polynomial::zero(&self.ctx);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.ctx);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Divides every coefficient by the leading (lex-largest) one.
    pub fn make_monic(&self) -> Polynomial {
        match self.terms.iter().next_back() {
            None => self.clone(),
            Some((_, c)) => self.scale(&(Rational::one() / c)),
        }
    }

    /// Substitutes `images[i]` for variable `i`. All images share one context.
    pub fn substitute(&self, images: &[Polynomial], target: &VarContext) -> Polynomial {
        assert_eq!(images.len(), self.ctx.len(), "substitution arity");
        let mut powers: Vec<Vec<Polynomial>> = vec![vec![Polynomial::one(target)]; images.len()];
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][e as usize]);
            }
            out = out.add(&term);
        }
        out
    }

    /// Re-expresses this polynomial in `target`, mapping variable `i` to
    /// variable `index_map[i]` of the target.
    pub fn remap(&self, target: &VarContext, index_map: &[usize]) -> Polynomial {
        let n = target.len();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; n];
            for (i, &x) in m.0.iter().enumerate() {
                e[index_map[i]] += x;
            }
            (Monomial(e), c.clone())
        });
        Polynomial::from_terms(target, terms)
    }

    /// Embeds into a context whose first variables are this context's.
    pub fn extend_to(&self, target: &VarContext) -> Polynomial {
        let map: Vec<usize> = (0..self.ctx.len()).collect();
        self.remap(target, &map)
    }

    /// Embeds into a context where this context's variables start at `offset`.
    pub fn shift_to(&self, target: &VarContext, offset: usize) -> Polynomial {
        let map: Vec<usize> = (0..self.ctx.len()).map(|i| i + offset).collect();
        self.remap(target, &map)
    }

    /// Restricts to the variables `keep` (in order), failing if any other
    /// variable occurs.
    pub fn restrict(&self, target: &VarContext, keep: &[usize]) -> Option<Polynomial> {
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 && !keep.contains(&i) {
                    return None;
                }
            }
            out.add_term(Monomial(keep.iter().map(|&i| m.0[i]).collect()), c.clone());
        }
        Some(out)
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Terms in canonical printing order: graded-reverse-lex, descending.
    pub fn canonical_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grevlex_cmp(b.0, a.0));
        v
    }
}

pub(crate) fn grevlex_cmp(a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| {
            for (x, y) in a.0.iter().zip(&b.0).rev() {
                if x != y {
                    return y.cmp(x);
                }
            }
            std::cmp::Ordering::Equal
        })
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.canonical_terms().into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { "-" } else { "+" })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ctx.names[i].clone()),
                    _ => factors.push(format!("{}^{}", self.ctx.names[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> VarContext {
        VarContext::new(&["x", "y"]).unwrap()
    }

    #[test]
    fn display_is_canonical() {
        let c = ctx();
        let p = Polynomial::parse(&c, "y^2 + 3*x^2*y - 1/2").unwrap();
        assert_eq!(p.to_string(), "3*x^2*y+y^2-1/2");
        assert_eq!(Polynomial::zero(&c).to_string(), "0");
        assert_eq!(Polynomial::parse(&c, "-x").unwrap().to_string(), "-x");
    }

    #[test]
    fn arithmetic() {
        let c = ctx();
        let x = Polynomial::var(&c, 0);
        let y = Polynomial::var(&c, 1);
        let p = x.add(&y).pow(2);
        assert_eq!(p, Polynomial::parse(&c, "x^2+2*x*y+y^2").unwrap());
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn substitution() {
        let c = ctx();
        let p = Polynomial::parse(&c, "x^2*y").unwrap();
        let t = VarContext::new(&["t"]).unwrap();
        let imgs = vec![Polynomial::parse(&t, "t^2").unwrap(), Polynomial::parse(&t, "t^3").unwrap()];
        assert_eq!(p.substitute(&imgs, &t), Polynomial::parse(&t, "t^7").unwrap());
    }

    #[test]
    fn context_rejects_duplicates() {
        assert!(VarContext::new(&["x", "x"]).is_err());
        assert!(VarContext::new(&["1x"]).is_err());
    }

    #[test]
    fn fresh_names_avoid_clashes() {
        let c = VarContext::new(&["t", "t1"]).unwrap();
        assert_eq!(c.fresh_name("t"), "t2");
        assert_eq!(c.fresh_name("u"), "u");
    }
}
