//! Exact linear algebra over the rationals.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::poly::{Monomial, Polynomial, Rational};

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x -= p * &f;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Some solution of `a x = b`, or `None` if the system is inconsistent.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][n].clone();
    }
    Some(x)
}

/// Basis of the right null space of `a` (columns count `n`).
pub fn nullspace(a: &[Vec<Rational>], n: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = a.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

pub fn rank(a: &[Vec<Rational>]) -> usize {
    let mut m = a.to_vec();
    rref(&mut m).len()
}

/// Coefficients `l` with `sum l_k cols[k] = target`, comparing polynomials
/// coefficient-wise. All inputs must share a context.
pub fn solve_combination(cols: &[Polynomial], target: &Polynomial) -> Option<Vec<Rational>> {
    let mut index: BTreeMap<Monomial, usize> = BTreeMap::new();
    for p in cols.iter().chain(std::iter::once(target)) {
        for (m, _) in p.terms() {
            let k = index.len();
            index.entry(m.clone()).or_insert(k);
        }
    }
    let mut a = vec![vec![Rational::zero(); cols.len()]; index.len()];
    let mut b = vec![Rational::zero(); index.len()];
    for (k, p) in cols.iter().enumerate() {
        for (m, c) in p.terms() {
            a[index[m]][k] = c.clone();
        }
    }
    for (m, c) in target.terms() {
        b[index[m]] = c.clone();
    }
    if cols.is_empty() {
        return target.is_zero().then(Vec::new);
    }
    if index.is_empty() {
        return Some(vec![Rational::zero(); cols.len()]);
    }
    solve(&a, &b)
}

/// Simultaneous version of [`solve_combination`]: `cols[k][i]` and
/// `targets[i]` live in block `i`, and one coefficient vector must work
/// in every block.
pub fn solve_stacked(cols: &[Vec<Polynomial>], targets: &[Polynomial]) -> Option<Vec<Rational>> {
    let mut index: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    for (i, t) in targets.iter().enumerate() {
        for p in cols.iter().map(|c| &c[i]).chain(std::iter::once(t)) {
            for (m, _) in p.terms() {
                let k = index.len();
                index.entry((i, m.clone())).or_insert(k);
            }
        }
    }
    let mut a = vec![vec![Rational::zero(); cols.len()]; index.len()];
    let mut b = vec![Rational::zero(); index.len()];
    for (k, col) in cols.iter().enumerate() {
        for (i, p) in col.iter().enumerate() {
            for (m, c) in p.terms() {
                a[index[&(i, m.clone())]][k] = c.clone();
            }
        }
    }
    for (i, t) in targets.iter().enumerate() {
        for (m, c) in t.terms() {
            b[index[&(i, m.clone())]] = c.clone();
        }
    }
    if cols.is_empty() {
        return targets.iter().all(|t| t.is_zero()).then(Vec::new);
    }
    if index.is_empty() {
        return Some(vec![Rational::zero(); cols.len()]);
    }
    solve(&a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, VarContext};

    #[test]
    fn solves_consistent_system() {
        let a = vec![vec![rat(1), rat(2)], vec![rat(3), rat(4)]];
        let x = solve(&a, &[rat(5), rat(6)]).unwrap();
        assert_eq!(x, vec![rat(-4), crate::poly::rat_frac(9, 2)]);
        let sing = vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]];
        assert!(solve(&sing, &[rat(1), rat(3)]).is_none());
        assert_eq!(nullspace(&sing, 2), vec![vec![rat(-2), rat(1)]]);
        assert_eq!(rank(&sing), 1);
    }

    #[test]
    fn polynomial_combination() {
        let c = VarContext::new(&["x"]).unwrap();
        let p = |s| Polynomial::parse(&c, s).unwrap();
        let l = solve_combination(&[p("x+1"), p("x-1")], &p("x")).unwrap();
        assert_eq!(l, vec![crate::poly::rat_frac(1, 2), crate::poly::rat_frac(1, 2)]);
        assert!(solve_combination(&[p("x")], &p("1")).is_none());
    }
}
