use std::cmp::Ordering;
use std::fmt;

/// An additive value in `Z^r` (lex, first coordinate most significant), or
/// `Zero`: the value of kernel elements, greater than every vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    Finite(Vec<i64>),
    Zero,
}

impl Value {
    pub fn zero_vector(rank: usize) -> Value {
        Value::Finite(vec![0; rank])
    }

    pub fn is_zero_symbol(&self) -> bool {
        matches!(self, Value::Zero)
    }

    pub fn as_vector(&self) -> Option<&[i64]> {
        match self {
            Value::Finite(v) => Some(v),
            Value::Zero => None,
        }
    }

    /// 1-based index of the first nonzero coordinate; `None` for the zero
    /// vector and for `Zero`.
    pub fn level(&self) -> Option<usize> {
        match self {
            Value::Finite(v) => v.iter().position(|&x| x != 0).map(|i| i + 1),
            Value::Zero => None,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Value::Finite(v) => v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0),
            Value::Zero => false,
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Value::Finite(v) => v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0),
            Value::Zero => true,
        }
    }

    /// `ν >= 0`, i.e. bounded by one multiplicatively.
    pub fn is_nonnegative(&self) -> bool {
        !self.is_negative()
    }

    pub fn add(&self, other: &Value) -> Value {
        match (self, other) {
            (Value::Finite(a), Value::Finite(b)) => {
                assert_eq!(a.len(), b.len(), "rank mismatch");
                Value::Finite(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            _ => Value::Zero,
        }
    }

    /// `self - other` for a finite `other`.
    pub fn sub(&self, other: &[i64]) -> Value {
        match self {
            Value::Finite(a) => Value::Finite(a.iter().zip(other).map(|(x, y)| x - y).collect()),
            Value::Zero => Value::Zero,
        }
    }

    pub fn scale(&self, k: i64) -> Value {
        match self {
            Value::Finite(a) => Value::Finite(a.iter().map(|x| x * k).collect()),
            Value::Zero => Value::Zero,
        }
    }
}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Value {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Value::Zero, Value::Zero) => Ordering::Equal,
            (Value::Zero, _) => Ordering::Greater,
            (_, Value::Zero) => Ordering::Less,
            (Value::Finite(a), Value::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Zero => write!(f, "ZERO"),
            Value::Finite(v) => write!(f, "{v:?}"),
        }
    }
}

/// Dot product of an exponent vector with per-variable weights.
pub(crate) fn weigh(exps: &[u32], weights: &[Vec<i64>], rank: usize) -> Vec<i64> {
    let mut out = vec![0i64; rank];
    for (e, w) in exps.iter().zip(weights) {
        if *e == 0 {
            continue;
        }
        for (o, x) in out.iter_mut().zip(w) {
            *o += (*e as i64) * x;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_and_levels() {
        let a = Value::Finite(vec![0, 1]);
        let b = Value::Finite(vec![1, -5]);
        assert!(a < b && b < Value::Zero);
        assert_eq!(a.level(), Some(2));
        assert_eq!(b.level(), Some(1));
        assert_eq!(Value::zero_vector(2).level(), None);
        assert!(Value::Finite(vec![0, -1]).is_negative());
        assert_eq!(a.add(&Value::Zero), Value::Zero);
    }
}
