//! Vertices of the inside-out polytope ([0,1]^{2q}, move arrangement) and
//! denominator results.

use crate::counting::{closed_flats, hyperplanes, Equation};
use crate::exactmath::{det_adj, frac_string, gcd_i128, lcd, lcm_big, Rational};
use crate::model::{antipode, Board, Move, PieceSpec};
use crate::{Error, Result};
use num::bigint::BigInt;
use num::{One, Signed, Zero};
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Constraint {
    Move(Equation),
    /// Coordinate `axis` of piece `piece` (from 0) equals `bound`.
    Fixation { piece: usize, axis: Axis, bound: u8 },
}

impl Constraint {
    pub fn fix(piece: usize, axis: Axis, bound: u8) -> Constraint {
        Constraint::Fixation { piece, axis, bound }
    }

    /// Row and right-hand side over `(x_0, y_0, ...)`.
    pub fn row(&self, q: usize) -> (Vec<i128>, i128) {
        match self {
            Constraint::Move(e) => (e.row(q), 0),
            Constraint::Fixation { piece, axis, bound } => {
                let mut r = vec![0; 2 * q];
                r[2 * piece + (*axis == Axis::Y) as usize] = 1;
                (r, *bound as i128)
            }
        }
    }

    pub fn holds(&self, z: &[Rational]) -> bool {
        let (row, rhs) = self.row(z.len() / 2);
        let lhs = row.iter().zip(z).fold(Rational::zero(), |s, (a, x)| s + x * Rational::from_integer(BigInt::from(*a)));
        lhs == Rational::from_integer(BigInt::from(rhs))
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::Move(e) => write!(f, "{e}"),
            Constraint::Fixation { piece, axis, bound } => {
                let a = if *axis == Axis::X { 'x' } else { 'y' };
                write!(f, "{a}{}={bound}", piece + 1)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexRecord {
    /// `(x_1, y_1, ..., x_q, y_q)`
    pub position: Vec<Rational>,
    pub denominator: BigInt,
    pub active: Vec<Constraint>,
}

impl VertexRecord {
    /// `x1/d1,y1/d1,...|delta=K|constraints=c1;c2;...`
    pub fn dump_line(&self) -> String {
        let coords: Vec<String> = self.position.iter().map(frac_string).collect();
        let cons: Vec<String> = self.active.iter().map(|c| c.to_string()).collect();
        format!("{}|delta={}|constraints={}", coords.join(","), self.denominator, cons.join(";"))
    }
}

/// Limit on enumeration work: flats visited plus coordinate subsets solved.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
}

/// Pieces beyond this need an explicit budget.
pub const UNBUDGETED_MAX_Q: usize = 3;

fn binom_u64(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n - (k - cur.len()) {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

type Key = Vec<(i128, i128)>;

/// Vertices inside one flat with nullspace basis `basis` (columns), as reduced fractions.
fn flat_vertices(basis: &[Vec<i128>], dim: usize) -> Result<Vec<Key>> {
    let m = basis.first().map_or(0, |b| b.len());
    let mut out = Vec::new();
    if dim == 0 {
        out.push(vec![(0, 1); m]);
        return Ok(out);
    }
    for s in subsets(m, dim) {
        // N_S: rows s of the 2q x dim basis matrix
        let ns: Vec<Vec<i128>> = s.iter().map(|&r| (0..dim).map(|c| basis[c][r]).collect()).collect();
        let (det, adj) = det_adj(&ns)?;
        if det == 0 {
            continue;
        }
        // M = N adj(N_S), z = M b / det for b in {0,1}^dim
        let mut mm = vec![vec![0i128; dim]; m];
        for (r, row) in mm.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                let mut acc = 0i128;
                for k in 0..dim {
                    acc = acc.checked_add(basis[k][r].checked_mul(adj[k][c]).ok_or(Error::Overflow)?).ok_or(Error::Overflow)?;
                }
                *v = acc;
            }
        }
        let (det, sgn) = (det.abs(), det.signum());
        'b: for b in 0u32..(1 << dim) {
            let mut z = Vec::with_capacity(m);
            for row in &mm {
                let num: i128 = (0..dim).filter(|&c| b >> c & 1 == 1).map(|c| row[c]).sum::<i128>() * sgn;
                if num < 0 || num > det {
                    continue 'b;
                }
                let g = gcd_i128(num, det);
                z.push((num / g, det / g));
            }
            out.push(z);
        }
    }
    Ok(out)
}

/// Every constraint (move hyperplane or facet) that holds at `z`.
pub fn active_constraints(piece: &PieceSpec, z: &[Rational]) -> Vec<Constraint> {
    let q = z.len() / 2;
    let mut act: Vec<Constraint> = hyperplanes(piece, q).into_iter().map(Constraint::Move).filter(|c| c.holds(z)).collect();
    for p in 0..q {
        for axis in [Axis::X, Axis::Y] {
            for bound in [0u8, 1] {
                let c = Constraint::fix(p, axis, bound);
                if c.holds(z) {
                    act.push(c);
                }
            }
        }
    }
    act
}

fn constraint_rank(cons: &[Constraint], q: usize) -> Result<usize> {
    let rows: Vec<Vec<i128>> = cons.iter().map(|c| c.row(q).0).collect();
    Ok(crate::exactmath::IntEchelon::from_rows(2 * q, &rows)?.rank())
}

/// All vertices of the inside-out polytope for `q` pieces, sorted by position.
/// `q > 3` needs a budget; with a budget the enumeration stops with `BudgetExceeded`.
pub fn enumerate_vertices(piece: &PieceSpec, q: usize, budget: Option<Budget>) -> Result<Vec<VertexRecord>> {
    if q == 0 {
        return Err(Error::TooSmall { q, min: 1 });
    }
    if q > UNBUDGETED_MAX_Q && budget.is_none() {
        return Err(Error::BudgetExceeded(format!("q = {q} needs an explicit node budget")));
    }
    let max_nodes = budget.map(|b| b.max_nodes);
    let hs = hyperplanes(piece, q);
    let flats = closed_flats(&hs, q, max_nodes.map(|b| b as usize))?;
    let work: u64 = flats.len() as u64 + flats.iter().map(|(_, e)| binom_u64(2 * q, 2 * q - e.rank())).sum::<u64>();
    if let Some(b) = max_nodes {
        if work > b {
            return Err(Error::BudgetExceeded(format!("{work} nodes needed, budget {b}")));
        }
    }
    let found: Vec<Vec<Key>> = flats
        .par_iter()
        .map(|(_, e)| {
            let basis = e.nullspace()?;
            flat_vertices(&basis, basis.len())
        })
        .collect::<Result<_>>()?;
    let mut unique: BTreeMap<Vec<Rational>, ()> = BTreeMap::new();
    for z in found.into_iter().flatten() {
        let pos: Vec<Rational> = z.iter().map(|&(n, d)| Rational::new(BigInt::from(n), BigInt::from(d))).collect();
        unique.insert(pos, ());
    }
    unique
        .into_keys()
        .map(|position| {
            let active = active_constraints(piece, &position);
            let denominator = lcd(position.iter());
            Ok(VertexRecord { position, denominator, active })
        })
        .collect()
}

/// Checks a record independently of the solver: in the cube, active constraints hold and have rank 2q.
pub fn verify_vertex(v: &VertexRecord) -> Result<bool> {
    let q = v.position.len() / 2;
    let in_cube = v.position.iter().all(|x| !x.is_negative() && x <= &Rational::one());
    let holds = v.active.iter().all(|c| c.holds(&v.position));
    Ok(in_cube && holds && constraint_rank(&v.active, q)? == 2 * q && v.denominator == lcd(v.position.iter()))
}

pub fn denominator_set(vertices: &[VertexRecord]) -> BTreeSet<BigInt> {
    vertices.iter().map(|v| v.denominator.clone()).collect()
}

/// Largest vertex denominator, Delta_q.
pub fn max_denominator(vertices: &[VertexRecord]) -> BigInt {
    vertices.iter().map(|v| v.denominator.clone()).max().unwrap_or_else(BigInt::one)
}

/// lcm of all vertex denominators.
pub fn polytope_denominator(piece: &PieceSpec, q: usize, budget: Option<Budget>) -> Result<BigInt> {
    let vs = enumerate_vertices(piece, q, budget)?;
    Ok(vs.iter().fold(BigInt::one(), |acc, v| lcm_big(&acc, &v.denominator)))
}

/// Least common denominator of the board corners and, for q >= 2, their antipodes along `m`.
pub fn one_move_denominator(board: &Board, m: &Move, q: usize) -> Result<BigInt> {
    let corners = board.corners();
    let mut pts: Vec<Rational> = corners.iter().flat_map(|p| [p.0.clone(), p.1.clone()]).collect();
    if q >= 2 {
        for c in &corners {
            if let Some(a) = antipode(board, c, m)? {
                pts.push(a.0);
                pts.push(a.1);
            }
        }
    }
    Ok(lcd(pts.iter()))
}

/// Square-board closed form max(|c|,|d|) for q >= 2.
pub fn one_move_denominator_square(m: &Move, q: usize) -> BigInt {
    if q < 2 {
        BigInt::one()
    } else {
        BigInt::from(m.c.abs().max(m.d.abs()))
    }
}

/// A value that holds only if an unproved conjecture does.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conditional<T> {
    pub value: T,
    pub conjecture_conditional: bool,
}

/// Denominator for moves (1,0) and (c,d); relies on the simple-trajectory conjecture.
pub fn two_move_denominator(c: u64, d: u64, q: usize) -> Result<Conditional<BigInt>> {
    if c == 0 || d == 0 || num::integer::gcd(c, d) != 1 {
        return Err(Error::Unsupported(format!("two-move formula needs coprime positive c, d; got ({c},{d})")));
    }
    let value = if q <= 1 {
        1
    } else if d >= c {
        d
    } else if q as u64 <= 2 * (c / d) + 1 {
        c
    } else {
        c * d
    };
    Ok(Conditional { value: BigInt::from(value), conjecture_conditional: true })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TriangleWeights {
    pub w1: i64,
    pub w2: i64,
    pub w3: i64,
}

fn det2(a: &Move, b: &Move) -> i64 {
    a.c * b.d - a.d * b.c
}

/// The relation w1 m1 + w2 m2 + w3 m3 = 0, primitive, first weight positive.
pub fn triangle_weights(m1: &Move, m2: &Move, m3: &Move) -> Result<TriangleWeights> {
    if m1.is_parallel(m2) || m1.is_parallel(m3) || m2.is_parallel(m3) {
        return Err(Error::ParallelMoves((m1.c, m1.d), (m2.c, m2.d)));
    }
    let mut w = [det2(m2, m3), det2(m3, m1), det2(m1, m2)];
    let g = w.iter().fold(0i64, |g, &x| num::integer::gcd(g, x));
    w.iter_mut().for_each(|x| *x /= g);
    if w[0] < 0 {
        w.iter_mut().for_each(|x| *x = -*x);
    }
    Ok(TriangleWeights { w1: w[0], w2: w[1], w3: w[2] })
}

/// Denominator of the smallest triangle configuration: max |w_i c_i|, |w_i d_i|.
pub fn triangle_denominator(m1: &Move, m2: &Move, m3: &Move) -> Result<i64> {
    let w = triangle_weights(m1, m2, m3)?;
    Ok([(w.w1, m1), (w.w2, m2), (w.w3, m3)]
        .iter()
        .flat_map(|(w, m)| [(w * m.c).abs(), (w * m.d).abs()])
        .max()
        .unwrap())
}

/// One vertex per line, in stable coordinate order.
pub fn vertex_dump(vertices: &[VertexRecord]) -> String {
    let mut s = String::new();
    for v in vertices {
        s.push_str(&v.dump_line());
        s.push('\n');
    }
    s
}
