use super::{lcd, Rational};
use crate::{Error, Result};
use num::bigint::BigInt;
use num::{One, Zero};

pub fn mat_vec(a: &[Vec<Rational>], x: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|row| row.iter().zip(x).fold(Rational::zero(), |s, (p, q)| s + p * q))
        .collect()
}

// Clear denominators row by row so elimination can stay in the integers.
fn integer_rows(a: &[Vec<Rational>], b: Option<&[Rational]>) -> Vec<Vec<BigInt>> {
    a.iter()
        .enumerate()
        .map(|(i, row)| {
            let mut full: Vec<Rational> = row.clone();
            if let Some(b) = b {
                full.push(b[i].clone());
            }
            let l = Rational::from_integer(lcd(full.iter()));
            full.iter().map(|x| (x * &l).to_integer()).collect()
        })
        .collect()
}

/// Fraction-free (Bareiss) forward elimination. Returns pivot columns in order.
fn bareiss(m: &mut [Vec<BigInt>], ncols: usize) -> Vec<usize> {
    let rows = m.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..m[i].len() {
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Unique solution of `a x = rhs`, or `Singular` / `Inconsistent`.
pub fn solve_linear(a: &[Vec<Rational>], rhs: &[Rational]) -> Result<Vec<Rational>> {
    if a.len() != rhs.len() {
        return Err(Error::Dimension(format!("{} rows vs {} rhs", a.len(), rhs.len())));
    }
    let ncols = a.first().map_or(0, |r| r.len());
    if a.iter().any(|r| r.len() != ncols) {
        return Err(Error::Dimension("ragged matrix".into()));
    }
    let mut m = integer_rows(a, Some(rhs));
    let piv = bareiss(&mut m, ncols + 1);
    if piv.last() == Some(&ncols) {
        return Err(Error::Inconsistent);
    }
    if piv.len() < ncols {
        return Err(Error::Singular);
    }
    let mut x = vec![Rational::zero(); ncols];
    for (r, &c) in piv.iter().enumerate().rev() {
        let mut s = Rational::from_integer(m[r][ncols].clone());
        for j in c + 1..ncols {
            s -= Rational::from_integer(m[r][j].clone()) * &x[j];
        }
        x[c] = s / Rational::from_integer(m[r][c].clone());
    }
    Ok(x)
}

pub fn rank(a: &[Vec<Rational>]) -> usize {
    let ncols = a.first().map_or(0, |r| r.len());
    let mut m = integer_rows(a, None);
    bareiss(&mut m, ncols).len()
}

/// Basis of the right nullspace, one vector per free column (reduced echelon form).
pub fn nullspace(a: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = a.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for j in 0..ncols {
            let v = &m[r][j] * &inv;
            m[r][j] = v;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let v = &m[i][j] - &f * &m[r][j];
                    m[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[i][f].clone();
            }
            v
        })
        .collect()
}
