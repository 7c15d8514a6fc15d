use num_traits::One;

use super::{PairHom, PairOfRings};
use crate::linalg::solve_combination;
use crate::poly::{Polynomial, Rational};
use crate::ring::monomials_up_to;
use crate::valuation::Valuation;

/// Outcome of the bounded search for an integral equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntegralResult {
    /// `f^n + c_{n-1} f^{n-1} + ... + c_0 = 0` with every `c_i ∈ A`.
    Integral { degree: u32, coefficients: Vec<Polynomial> },
    NotFound { bound: u32 },
}

impl IntegralResult {
    pub fn is_integral(&self) -> bool {
        matches!(self, IntegralResult::Integral { .. })
    }
}

const MAX_ANSATZ: usize = 600;

/// Searches a monic equation of degree `n <= bound` for `f` over `A`, with
/// coefficients polynomial in the generators of `A` of degree at most `bound`.
pub fn integral_element_test(f: &Polynomial, over: &PairOfRings, bound: u32) -> IntegralResult {
    let ring = over.ring();
    let f = ring.nf(f);
    if let Some(w) = over.a_contains(&f) {
        let _ = w;
        return IntegralResult::Integral { degree: 1, coefficients: vec![f.neg()] };
    }
    let k = over.a_gens().len();
    let mut deg = bound;
    while deg > 0 && monomials_up_to(k, deg).len() * (bound as usize) > MAX_ANSATZ {
        deg -= 1;
    }
    let basis: Vec<Polynomial> = monomials_up_to(k, deg)
        .into_iter()
        .map(|m| {
            let mono = Polynomial::monomial(over.subalgebra().tags(), m, Rational::one());
            over.subalgebra().eval_witness(&mono)
        })
        .collect();
    let mut fpow = vec![ring.one()];
    for n in 2..=bound.max(1) {
        while fpow.len() <= n as usize {
            let next = ring.mul(fpow.last().unwrap(), &f);
            fpow.push(next);
        }
        let mut cols = Vec::with_capacity(basis.len() * n as usize);
        for p in &fpow[..n as usize] {
            for b in &basis {
                cols.push(ring.mul(b, p));
            }
        }
        let target = fpow[n as usize].neg();
        if let Some(lambda) = solve_combination(&cols, &target) {
            let coefficients = (0..n as usize)
                .map(|i| {
                    let mut c = ring.zero();
                    for (j, b) in basis.iter().enumerate() {
                        c = c.add(&b.scale(&lambda[i * basis.len() + j]));
                    }
                    ring.nf(&c)
                })
                .collect();
            return IntegralResult::Integral { degree: n, coefficients };
        }
    }
    IntegralResult::NotFound { bound }
}

#[derive(Clone, Debug)]
pub enum AdicResult {
    Adic,
    /// A valuation in `Val(B', A')` whose pullback is not in `Val(B, A)`;
    /// adic maps preserve `Val`, so this certifies non-adicness.
    NotAdic { witness: Box<Valuation> },
    Unknown { bound: u32 },
}

impl AdicResult {
    pub fn label(&self) -> &'static str {
        match self {
            AdicResult::Adic => "adic",
            AdicResult::NotAdic { .. } => "not_adic",
            AdicResult::Unknown { .. } => "unknown",
        }
    }
}

/// Decides whether `B ⊗_A A' → B'` is integral, by testing each variable of
/// `B'` for integrality over the subring generated by `φ(B)` and `A'`.
pub fn is_adic(h: &PairHom, bound: u32) -> AdicResult {
    let target = h.target();
    let mut gens: Vec<Polynomial> = h.images().to_vec();
    gens.extend(target.a_gens().iter().cloned());
    let image = PairOfRings::new(target.ring().clone(), gens).expect("generators live in the target");
    let all = target
        .ring()
        .vars()
        .iter()
        .all(|x| integral_element_test(x, &image, bound).is_integral());
    if all {
        return AdicResult::Adic;
    }
    match crate::valuation::not_adic_witness(h) {
        Some(witness) => AdicResult::NotAdic { witness: Box::new(witness) },
        None => AdicResult::Unknown { bound },
    }
}
