//! Entry points shared by the fuzz targets and the corpus replay test.
//! Each accepts arbitrary bytes and must return without panicking.

use crate::cli::Request;
use crate::json::*;
use crate::pairs::PairOfRings;
use crate::poly::{Polynomial, VarContext};

/// Inputs larger than this are ignored; decoding may run Gröbner bases.
pub const MAX_JSON: usize = 2048;

fn text(data: &[u8]) -> Option<&str> {
    std::str::from_utf8(data).ok()
}

/// Parse in `Q[x, y, z, t]`; accepted input must print and re-parse to itself.
pub fn polynomial(data: &[u8]) {
    let Some(s) = text(data) else { return };
    let ctx = VarContext::new(&["x", "y", "z", "t"]).expect("distinct names");
    if let Ok(p) = Polynomial::parse(&ctx, s) {
        let again = Polynomial::parse(&ctx, &p.to_string()).expect("printed form parses");
        assert_eq!(again, p);
    }
}

/// Request schema only; nothing is computed.
pub fn request(data: &[u8]) {
    let Some(s) = text(data) else { return };
    let _ = serde_json::from_str::<Request>(s);
}

fn small_pair(j: &PairJson) -> bool {
    j.vars.len() <= 4 && j.relations.len() <= 4 && j.a.len() <= 6
}

pub fn pair(data: &[u8]) {
    if data.len() > MAX_JSON {
        return;
    }
    let Some(s) = text(data) else { return };
    let Ok(j) = serde_json::from_str::<PairJson>(s) else { return };
    if !small_pair(&j) {
        return;
    }
    if let Ok(p) = pair_from_json(&j) {
        let back = pair_from_json(&pair_to_json(&p)).expect("printed pair parses");
        assert_eq!(back, p);
    }
}

fn nesting(j: &ValuationJson) -> usize {
    match j {
        ValuationJson::Pullback { inner, .. } => 1 + nesting(inner),
        _ => 0,
    }
}

/// Valuations on `(Q[x, y], Q)`.
pub fn valuation(data: &[u8]) {
    if data.len() > MAX_JSON {
        return;
    }
    let Some(s) = text(data) else { return };
    let Ok(j) = serde_json::from_str::<ValuationJson>(s) else { return };
    if nesting(&j) > 3 {
        return;
    }
    let p = PairOfRings::parse(&["x", "y"], &[] as &[&str], &[] as &[&str]).expect("plane");
    if let Ok(v) = valuation_from_json(&p, &j) {
        let x = p.ring().var(0);
        let _ = v.evaluate(&x);
        let back = valuation_from_json(&p, &valuation_to_json(&v)).expect("printed valuation parses");
        assert_eq!(valuation_to_json(&back), valuation_to_json(&v));
    }
}
