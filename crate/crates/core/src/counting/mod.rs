//! Exact enumeration of nonattacking placements and of lattice points in
//! attack subspaces.

mod lattice;
mod subspace;

pub use lattice::{build_lattice, hyperplanes, Equation, IntersectionLattice, Subspace};
pub(crate) use lattice::closed_flats;
pub use subspace::{count_via_mobius, subspace_count};

use crate::model::{attacks_int, Board, PieceSpec};
use crate::{Error, Result};
use num::bigint::BigInt;
use rayon::prelude::*;

/// Exact count together with its inputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountRecord {
    pub piece: PieceSpec,
    pub board: Board,
    pub q: usize,
    pub n: u32,
    pub unlabeled: BigInt,
}

impl CountRecord {
    pub fn labeled(&self) -> BigInt {
        &self.unlabeled * crate::exactmath::falling(self.q as i64, self.q as i64)
    }
}

/// Integer cells of the n x n board (square) or of the interior of the (n+2)-dilated triangle.
pub fn board_cells(board: &Board, n: u32) -> Result<Vec<(i64, i64)>> {
    let n = n as i64;
    match board {
        Board::Square => Ok((1..=n).flat_map(|x| (1..=n).map(move |y| (x, y))).collect()),
        Board::Triangle => Ok((2..=n + 1).flat_map(|y| (1..y).map(move |x| (x, y))).collect()),
        Board::Polygon(_) => Err(Error::PolygonBoard),
    }
}

struct Bits {
    words: usize,
    compat: Vec<u64>,
}

impl Bits {
    fn row(&self, i: usize) -> &[u64] {
        &self.compat[i * self.words..(i + 1) * self.words]
    }
}

fn popcount(v: &[u64]) -> u128 {
    v.iter().map(|w| w.count_ones() as u128).sum()
}

fn descend(bits: &Bits, cand: &[u64], left: usize, scratch: &mut [Vec<u64>]) -> u128 {
    if left == 1 {
        return popcount(cand);
    }
    let (here, rest) = scratch.split_first_mut().unwrap();
    let mut total = 0u128;
    for (w, &word) in cand.iter().enumerate() {
        let mut word = word;
        while word != 0 {
            let b = word.trailing_zeros() as usize;
            word &= word - 1;
            let j = w * 64 + b;
            let row = bits.row(j);
            let mut any = false;
            for k in 0..bits.words {
                here[k] = cand[k] & row[k];
                any |= here[k] != 0;
            }
            if any {
                total += descend(bits, here, left - 1, rest);
            }
        }
    }
    total
}

/// Number of q-subsets of board cells with no attacking pair.
pub fn count_placements(piece: &PieceSpec, board: &Board, q: usize, n: u32) -> Result<BigInt> {
    let cells = board_cells(board, n)?;
    let m = cells.len();
    if q == 0 {
        return Ok(BigInt::from(1));
    }
    if q > m {
        return Ok(BigInt::from(0));
    }
    let words = m.div_ceil(64);
    let mut compat = vec![0u64; m * words];
    for i in 0..m {
        for j in i + 1..m {
            if !attacks_int(cells[i], cells[j], piece) {
                compat[i * words + j / 64] |= 1 << (j % 64);
            }
        }
    }
    let bits = Bits { words, compat };
    if q == 1 {
        return Ok(BigInt::from(m));
    }
    let total: u128 = (0..m)
        .into_par_iter()
        .map(|i| {
            let mut scratch = vec![vec![0u64; words]; q];
            descend(&bits, bits.row(i), q - 1, &mut scratch)
        })
        .sum();
    Ok(BigInt::from(total))
}

pub fn count_record(piece: &PieceSpec, board: &Board, q: usize, n: u32) -> Result<CountRecord> {
    Ok(CountRecord {
        piece: piece.clone(),
        board: board.clone(),
        q,
        n,
        unlabeled: count_placements(piece, board, q, n)?,
    })
}

/// Number of cells on the line through (x,y) with direction (c,d) inside [1,n]^2.
pub(crate) fn line_len(x: i64, y: i64, c: i64, d: i64, n: i64) -> i64 {
    let mut lo = i64::MIN;
    let mut hi = i64::MAX;
    for (p, s) in [(x, c), (y, d)] {
        if s == 0 {
            continue;
        }
        // 1 <= p + t s <= n
        let (a, b) = ((1 - p), (n - p));
        let (l, h) = if s > 0 {
            (a.div_euclid(s) + (a.rem_euclid(s) != 0) as i64, b.div_euclid(s))
        } else {
            let s = -s;
            ((-b).div_euclid(s) + ((-b).rem_euclid(s) != 0) as i64, (-a).div_euclid(s))
        };
        lo = lo.max(l);
        hi = hi.min(h);
    }
    (hi - lo + 1).max(0)
}

fn line_power_sum(m: &crate::model::Move, n: u32, power: u32) -> BigInt {
    let n = n as i64;
    let mut s = BigInt::from(0);
    for x in 1..=n {
        for y in 1..=n {
            let l = line_len(x, y, m.c, m.d, n);
            s += BigInt::from(l).pow(power - 1);
        }
    }
    s
}

/// Ordered pairs (coincident included) on a common line of slope d/c.
pub fn alpha_line(m: &crate::model::Move, n: u32) -> BigInt {
    line_power_sum(m, n, 2)
}

/// Ordered collinear triples (coincidences included) along slope d/c.
pub fn beta_line(m: &crate::model::Move, n: u32) -> BigInt {
    line_power_sum(m, n, 3)
}
