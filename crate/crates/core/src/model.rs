//! Moves, pieces, boards and the attack predicate.

use crate::exactmath::{rint, Rational};
use crate::{Error, Result};
use num::integer::gcd;
use num::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

pub type Point = (Rational, Rational);

pub fn pt(x: Rational, y: Rational) -> Point {
    (x, y)
}

/// A basic move, stored reduced and with a fixed sign: `c > 0`, or `c == 0` and `d == 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Move {
    pub c: i64,
    pub d: i64,
}

pub fn canonical_move(c: i64, d: i64) -> Result<Move> {
    if c == 0 && d == 0 {
        return Err(Error::ZeroMove);
    }
    let g = gcd(c, d);
    let (mut c, mut d) = (c / g, d / g);
    if c < 0 || (c == 0 && d < 0) {
        c = -c;
        d = -d;
    }
    Ok(Move { c, d })
}

impl Move {
    pub fn new(c: i64, d: i64) -> Result<Move> {
        canonical_move(c, d)
    }
    pub fn c_hat(&self) -> i64 {
        self.c.abs().min(self.d.abs())
    }
    pub fn d_hat(&self) -> i64 {
        self.c.abs().max(self.d.abs())
    }
    /// m^perp = (d, -c)
    pub fn perp(&self) -> (i64, i64) {
        (self.d, -self.c)
    }
    pub fn is_parallel(&self, other: &Move) -> bool {
        self.c * other.d == self.d * other.c
    }
    /// Slope written `d/c` as in the usual hyperplane labels.
    pub fn slope(&self) -> String {
        format!("{}/{}", self.d, self.c)
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.c, self.d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceSpec {
    pub moves: Vec<Move>,
    pub name: Option<String>,
}

const PRESETS: &[(&[&str], &[(i64, i64)])] = &[
    (&["rook", "q20"], &[(1, 0), (0, 1)]),
    (&["semirook", "q10"], &[(1, 0)]),
    (&["bishop", "q02"], &[(1, 1), (1, -1)]),
    (&["semibishop", "q01"], &[(1, 1)]),
    (&["queen", "q22", "q"], &[(1, 0), (0, 1), (1, 1), (1, -1)]),
    (&["semiqueen", "q21"], &[(1, 0), (0, 1), (1, -1)]),
    (&["frontal-queen", "frontalqueen", "q12"], &[(0, 1), (1, 1), (1, -1)]),
    (&["subqueen", "q11"], &[(0, 1), (1, 1)]),
    (&["nightrider", "n", "n4"], &[(2, 1), (1, 2), (2, -1), (1, -2)]),
    (&["n1", "seminightrider"], &[(2, 1)]),
    (&["n2-lateral", "lateral-nightrider"], &[(2, 1), (2, -1)]),
    (&["n2-inclined", "inclined-nightrider"], &[(2, 1), (1, 2)]),
    (&["n2-ortho", "ortho-nightrider"], &[(2, 1), (1, -2)]),
    (&["n3", "n3-lateral"], &[(2, -1), (2, 1), (1, 2)]),
];

/// Canonical preset names, one per piece.
pub const PRESET_NAMES: &[&str] = &[
    "rook", "semirook", "bishop", "semibishop", "queen", "semiqueen", "frontal-queen",
    "subqueen", "nightrider", "n1", "n2-lateral", "n2-inclined", "n2-ortho", "n3",
];

impl PieceSpec {
    pub fn new(moves: Vec<Move>, name: Option<String>) -> Result<PieceSpec> {
        if moves.is_empty() {
            return Err(Error::NoMoves);
        }
        for (i, a) in moves.iter().enumerate() {
            for b in &moves[i + 1..] {
                if a.is_parallel(b) {
                    return Err(Error::ParallelMoves((a.c, a.d), (b.c, b.d)));
                }
            }
        }
        Ok(PieceSpec { moves, name })
    }

    pub fn from_pairs(pairs: &[(i64, i64)], name: Option<&str>) -> Result<PieceSpec> {
        let moves = pairs.iter().map(|&(c, d)| canonical_move(c, d)).collect::<Result<_>>()?;
        PieceSpec::new(moves, name.map(str::to_string))
    }

    pub fn preset(name: &str) -> Result<PieceSpec> {
        let key = name.trim().to_ascii_lowercase().replace('_', "-");
        for (names, pairs) in PRESETS {
            if names.contains(&key.as_str()) {
                return PieceSpec::from_pairs(pairs, Some(names[0]));
            }
        }
        Err(Error::UnknownPiece(name.to_string()))
    }

    /// A preset name or an explicit list such as `(1,0);(2,1)`.
    pub fn parse(s: &str) -> Result<PieceSpec> {
        let t = s.trim();
        if !t.starts_with('(') {
            return PieceSpec::preset(t);
        }
        let mut pairs = Vec::new();
        for part in t.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let inner = part
                .strip_prefix('(')
                .and_then(|p| p.strip_suffix(')'))
                .ok_or_else(|| Error::Parse(format!("bad move `{part}`")))?;
            let (a, b) = inner
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("bad move `{part}`")))?;
            let c = a.trim().parse().map_err(|_| Error::Parse(format!("bad move `{part}`")))?;
            let d = b.trim().parse().map_err(|_| Error::Parse(format!("bad move `{part}`")))?;
            pairs.push((c, d));
        }
        PieceSpec::from_pairs(&pairs, None)
    }

    pub fn label(&self) -> String {
        match &self.name {
            Some(n) => n.clone(),
            None => self.moves_string(),
        }
    }

    pub fn moves_string(&self) -> String {
        self.moves.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(";")
    }

    pub fn sorted_moves(&self) -> Vec<Move> {
        let mut m = self.moves.clone();
        m.sort();
        m
    }

    pub fn has_move(&self, m: &Move) -> bool {
        self.moves.contains(m)
    }

    pub fn is_subpiece_of(&self, other: &PieceSpec) -> bool {
        self.moves.iter().all(|m| other.has_move(m))
    }
}

/// Attack predicate on integer or rational positions; coincident pieces attack.
pub fn attacks(z1: &Point, z2: &Point, piece: &PieceSpec) -> bool {
    let dx = &z2.0 - &z1.0;
    let dy = &z2.1 - &z1.1;
    piece.moves.iter().any(|m| {
        let (a, b) = m.perp();
        (&dx * rint(a) + &dy * rint(b)).is_zero()
    })
}

pub fn attacks_int(z1: (i64, i64), z2: (i64, i64), piece: &PieceSpec) -> bool {
    let (dx, dy) = (z2.0 - z1.0, z2.1 - z1.1);
    piece.moves.iter().any(|m| dx * m.d == dy * m.c)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Board {
    Square,
    Triangle,
    Polygon(Vec<Point>),
}

fn cross(o: &Point, a: &Point, b: &Point) -> Rational {
    (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
}

impl Board {
    pub fn polygon(corners: Vec<Point>) -> Result<Board> {
        let k = corners.len();
        if k < 3 {
            return Err(Error::NotConvex);
        }
        let signs: Vec<Rational> =
            (0..k).map(|i| cross(&corners[i], &corners[(i + 1) % k], &corners[(i + 2) % k])).collect();
        let pos = signs.iter().all(|s| s.is_positive());
        let neg = signs.iter().all(|s| s.is_negative());
        if !(pos || neg) {
            return Err(Error::NotConvex);
        }
        Ok(Board::Polygon(corners))
    }

    pub fn corners(&self) -> Vec<Point> {
        let p = |x: i64, y: i64| (rint(x), rint(y));
        match self {
            Board::Square => vec![p(0, 0), p(1, 0), p(1, 1), p(0, 1)],
            Board::Triangle => vec![p(0, 0), p(1, 1), p(0, 1)],
            Board::Polygon(c) => c.clone(),
        }
    }

    /// Corners in counter-clockwise order.
    fn ccw(&self) -> Vec<Point> {
        let mut c = self.corners();
        if cross(&c[0], &c[1], &c[2]).is_negative() {
            c.reverse();
        }
        c
    }

    /// Closed-board membership.
    pub fn contains(&self, p: &Point) -> bool {
        let c = self.ccw();
        let k = c.len();
        (0..k).all(|i| !cross(&c[i], &c[(i + 1) % k], p).is_negative())
    }

    pub fn name(&self) -> &'static str {
        match self {
            Board::Square => "square",
            Board::Triangle => "triangle",
            Board::Polygon(_) => "polygon",
        }
    }

    /// Parameter interval `t` with `p + t*v` in the closed board; `None` if empty.
    pub fn clip(&self, p: &Point, v: (i64, i64)) -> Option<(Rational, Rational)> {
        let c = self.ccw();
        let k = c.len();
        let (vx, vy) = (rint(v.0), rint(v.1));
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        for i in 0..k {
            let a = &c[i];
            let b = &c[(i + 1) % k];
            // inside iff base + t*slope >= 0
            let base = cross(a, b, p);
            let ex = &b.0 - &a.0;
            let ey = &b.1 - &a.1;
            let slope = &ex * &vy - &ey * &vx;
            if slope.is_zero() {
                if base.is_negative() {
                    return None;
                }
                continue;
            }
            let t = -&base / &slope;
            if slope.is_positive() {
                if lo.as_ref().is_none_or(|l| &t > l) {
                    lo = Some(t);
                }
            } else if hi.as_ref().is_none_or(|h| &t < h) {
                hi = Some(t);
            }
        }
        match (lo, hi) {
            (Some(l), Some(h)) if l <= h => Some((l, h)),
            _ => None,
        }
    }
}

/// The second boundary point of the line through `corner` in direction `m`, if any.
pub fn antipode(board: &Board, corner: &Point, m: &Move) -> Result<Option<Point>> {
    if !board.corners().contains(corner) {
        return Err(Error::NotACorner);
    }
    let (lo, hi) = board.clip(corner, (m.c, m.d)).ok_or(Error::NotACorner)?;
    let t = if hi.is_positive() {
        hi
    } else if lo.is_negative() {
        lo
    } else {
        return Ok(None);
    };
    Ok(Some((&corner.0 + &t * rint(m.c), &corner.1 + &t * rint(m.d))))
}

/// Positions of q pieces, either in the unit board or at an integer dilation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    pub positions: Vec<Point>,
    pub dilation: Option<u64>,
}

impl Configuration {
    pub fn unit(positions: Vec<Point>) -> Self {
        Configuration { positions, dilation: None }
    }

    pub fn unit_positions(&self) -> Vec<Point> {
        match self.dilation {
            None => self.positions.clone(),
            Some(n) => {
                let n = rint(n as i64);
                self.positions.iter().map(|(x, y)| (x / &n, y / &n)).collect()
            }
        }
    }

    pub fn in_board(&self, board: &Board) -> bool {
        self.unit_positions().iter().all(|p| board.contains(p))
    }
}
