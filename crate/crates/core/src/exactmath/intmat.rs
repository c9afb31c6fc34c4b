//! Small dense integer matrices in `i128` with checked arithmetic.
//! Rows are kept primitive so entries stay near the size of the input.

use crate::{Error, Result};

pub fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm_i128(a: i128, b: i128) -> Result<i128> {
    if a == 0 || b == 0 {
        return Ok(0);
    }
    (a / gcd_i128(a, b)).checked_mul(b).map(i128::abs).ok_or(Error::Overflow)
}

/// Divide out the content; the first nonzero entry is made positive.
pub fn primitive(v: &mut [i128]) {
    let g = v.iter().fold(0, |g, &x| gcd_i128(g, x));
    if g > 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
    if v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

fn axpy(dst: &mut [i128], a: i128, b: i128, src: &[i128]) -> Result<()> {
    // dst <- a*dst - b*src
    for (d, s) in dst.iter_mut().zip(src) {
        let l = d.checked_mul(a).ok_or(Error::Overflow)?;
        let r = s.checked_mul(b).ok_or(Error::Overflow)?;
        *d = l.checked_sub(r).ok_or(Error::Overflow)?;
    }
    Ok(())
}

/// Reduced row echelon form over the integers: each pivot column is zero
/// outside its pivot row.
#[derive(Clone, Debug, Default)]
pub struct IntEchelon {
    pub ncols: usize,
    pub rows: Vec<Vec<i128>>,
    pub pivots: Vec<usize>,
}

impl IntEchelon {
    pub fn new(ncols: usize) -> Self {
        IntEchelon { ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Residual of `v` after eliminating all pivot columns (zero iff `v` is in the row space).
    pub fn reduce(&self, v: &[i128]) -> Result<Vec<i128>> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p] != 0 {
                let g = gcd_i128(row[p], v[p]);
                let (a, b) = (row[p] / g, v[p] / g);
                axpy(&mut v, a, b, row)?;
                primitive(&mut v);
            }
        }
        Ok(v)
    }

    pub fn contains(&self, v: &[i128]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(|&x| x == 0))
    }

    /// Adds `v`; returns false if it was already in the row space.
    pub fn insert(&mut self, v: &[i128]) -> Result<bool> {
        let mut r = self.reduce(v)?;
        let Some(p) = r.iter().position(|&x| x != 0) else {
            return Ok(false);
        };
        primitive(&mut r);
        for row in self.rows.iter_mut() {
            if row[p] != 0 {
                let g = gcd_i128(r[p], row[p]);
                let (a, b) = (r[p] / g, row[p] / g);
                axpy(row, a, b, &r)?;
                primitive(row);
            }
        }
        // keep pivots sorted so the form is canonical
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        Ok(true)
    }

    pub fn from_rows(ncols: usize, rows: &[Vec<i128>]) -> Result<Self> {
        let mut e = IntEchelon::new(ncols);
        for r in rows {
            e.insert(r)?;
        }
        Ok(e)
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Primitive integer basis of the nullspace, one vector per free column.
    pub fn nullspace(&self) -> Result<Vec<Vec<i128>>> {
        let mut out = Vec::new();
        for f in self.free_columns() {
            let mut l: i128 = 1;
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if row[f] != 0 {
                    l = lcm_i128(l, row[p])?;
                }
            }
            let mut v = vec![0i128; self.ncols];
            v[f] = l;
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if row[f] != 0 {
                    v[p] = -(l / row[p]).checked_mul(row[f]).ok_or(Error::Overflow)?;
                }
            }
            primitive(&mut v);
            out.push(v);
        }
        Ok(out)
    }
}

/// Returns `(d, x)` with `m * x = d * I` and `|d| = |det m|` (fraction-free Gauss-Jordan).
/// `d == 0` signals a singular matrix.
pub(crate) fn det_adj(m: &[Vec<i128>]) -> Result<(i128, Vec<Vec<i128>>)> {
    let k = m.len();
    // augment with identity and run fraction-free Gauss-Jordan
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..k).map(|j| (i == j) as i128));
            row
        })
        .collect();
    let mut prev: i128 = 1;
    for c in 0..k {
        let Some(p) = (c..k).find(|&i| a[i][c] != 0) else {
            return Ok((0, Vec::new()));
        };
        if p != c {
            a.swap(p, c);
        }
        for i in 0..k {
            if i == c {
                continue;
            }
            for j in 0..2 * k {
                if j == c {
                    continue;
                }
                let l = a[c][c].checked_mul(a[i][j]).ok_or(Error::Overflow)?;
                let r = a[i][c].checked_mul(a[c][j]).ok_or(Error::Overflow)?;
                a[i][j] = l.checked_sub(r).ok_or(Error::Overflow)? / prev;
            }
            a[i][c] = 0;
        }
        prev = a[c][c];
    }
    let adj = (0..k).map(|i| a[i][k..].to_vec()).collect();
    Ok((prev, adj))
}
