//! Constructive vertex configurations: two-move trajectories, golden
//! rectangles and parallelograms, Fibonacci spirals and twisted spirals.

use crate::counting::Equation;
use crate::exactmath::{fib, fib_std, gcd_i128, lcd, rat, rint, IntEchelon, Rational};
use crate::model::{canonical_move, Move, PieceSpec, Point};
use crate::polytope::{active_constraints, Axis, Constraint};
use crate::{Error, Result};
use num::bigint::BigInt;
use num::{One, Signed, Zero};
use std::fmt;

/// Zigzag of pieces for the moves (1,0) and (c,d), starting at the origin corner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trajectory {
    pub points: Vec<Point>,
    /// Direction taken to reach `points[k + 1]`.
    pub moves_used: Vec<(i64, i64)>,
    pub anchor: Point,
}

impl Trajectory {
    /// Denominator of the vertex formed by the first `pieces` points.
    pub fn denominator(&self, pieces: usize) -> BigInt {
        let k = pieces.min(self.points.len());
        lcd(self.points[..k].iter().flat_map(|p| [&p.0, &p.1]))
    }

    pub fn is_primitive(&self) -> bool {
        let corner = |p: &Point| {
            (p.0.is_zero() || p.0.is_one()) && (p.1.is_zero() || p.1.is_one())
        };
        let n = self.points.len();
        self.points[1..n.saturating_sub(1)].iter().all(|p| !corner(p))
    }
}

pub fn generate_trajectory(c: u64, d: u64, max_pieces: usize) -> Result<Trajectory> {
    if c == 0 || d == 0 || num::integer::gcd(c, d) != 1 {
        return Err(Error::Unsupported(format!("trajectory needs coprime positive c, d; got ({c},{d})")));
    }
    let origin = (Rational::zero(), Rational::zero());
    let mut points = vec![origin.clone()];
    let mut moves_used = Vec::new();
    let (cc, dd) = (rint(c as i64), rint(d as i64));
    while points.len() < max_pieces {
        let (x, y) = points.last().unwrap().clone();
        if y.is_one() {
            break;
        }
        if x.is_one() {
            points.push((Rational::zero(), y));
            moves_used.push((-1, 0));
            continue;
        }
        // from the left edge along (c,d) until x = 1 or y = 1
        let t = (Rational::one() / &cc).min((Rational::one() - &y) / &dd);
        points.push((&x + &t * &cc, &y + &t * &dd));
        moves_used.push((c as i64, d as i64));
    }
    Ok(Trajectory { points, moves_used, anchor: origin })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConfigKind {
    Rectangle,
    /// Images of (1,0) and (0,1).
    Parallelogram { u: (i64, i64), v: (i64, i64) },
    Spiral,
    Twisted { moves: [(i64, i64); 4] },
}

impl fmt::Display for ConfigKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigKind::Rectangle => write!(f, "rectangle"),
            ConfigKind::Parallelogram { u, v } => {
                write!(f, "parallelogram(<1,0>-><{},{}>,<0,1>-><{},{}>)", u.0, u.1, v.0, v.1)
            }
            ConfigKind::Spiral => write!(f, "spiral"),
            ConfigKind::Twisted { moves } => {
                let s: Vec<String> = moves.iter().map(|(c, d)| format!("{d}/{c}")).collect();
                write!(f, "twisted({})", s.join(","))
            }
        }
    }
}

/// A vertex configuration at integer generator scale.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedConfig {
    pub kind: ConfigKind,
    /// Translated so that the smallest x and y are 0.
    pub positions: Vec<(i64, i64)>,
    pub equations: Vec<Equation>,
    /// Fixations on the unit board (bound 1 means the far side of the bounding square).
    pub fixations: Vec<Constraint>,
    pub claimed_delta: i64,
}

impl GeneratedConfig {
    pub fn q(&self) -> usize {
        self.positions.len()
    }

    pub fn width(&self) -> i64 {
        self.positions.iter().map(|p| p.0).max().unwrap_or(0)
    }

    pub fn height(&self) -> i64 {
        self.positions.iter().map(|p| p.1).max().unwrap_or(0)
    }

    /// Side of the bounding square at generator scale.
    pub fn scale(&self) -> i64 {
        self.width().max(self.height())
    }

    pub fn unit_positions(&self) -> Vec<Point> {
        let s = self.scale().max(1);
        self.positions.iter().map(|&(x, y)| (rat(x, s), rat(y, s))).collect()
    }

    pub fn unit_vector(&self) -> Vec<Rational> {
        self.unit_positions().into_iter().flat_map(|(x, y)| [x, y]).collect()
    }
}

/// One-dimensional solution (up to translation) of homogeneous move equations, piece 0 at the origin.
fn solve_shape(eqs: &[Equation], q: usize) -> Result<Vec<(i128, i128)>> {
    let mut ech = IntEchelon::new(2 * q);
    for e in eqs {
        ech.insert(&e.row(q))?;
    }
    for k in 0..2 {
        let mut pin = vec![0; 2 * q];
        pin[k] = 1;
        ech.insert(&pin)?;
    }
    if ech.rank() != 2 * q - 1 {
        return Err(Error::RankDeficient { rank: ech.rank() + 1, expected: 2 * q });
    }
    let v = ech.nullspace()?.remove(0);
    Ok((0..q).map(|k| (v[2 * k], v[2 * k + 1])).collect())
}

fn normalize(raw: &[(i128, i128)], sign: i128) -> Result<Vec<(i64, i64)>> {
    let mx = raw.iter().map(|p| sign * p.0).min().unwrap_or(0);
    let my = raw.iter().map(|p| sign * p.1).min().unwrap_or(0);
    let g = raw.iter().fold(0, |g, p| gcd_i128(gcd_i128(g, sign * p.0 - mx), sign * p.1 - my)).max(1);
    raw.iter()
        .map(|p| {
            let x = i64::try_from((sign * p.0 - mx) / g).map_err(|_| Error::Overflow)?;
            let y = i64::try_from((sign * p.1 - my) / g).map_err(|_| Error::Overflow)?;
            Ok((x, y))
        })
        .collect()
}

/// Fixation at generator scale: piece, axis, and whether it sits on the far side of the box.
type Fix = (usize, Axis, bool);

fn fix_holds(pos: &[(i64, i64)], scale: i64, (p, axis, far): Fix) -> bool {
    let v = if axis == Axis::X { pos[p].0 } else { pos[p].1 };
    v == if far { scale } else { 0 }
}

/// Smallest x, smallest y, and the piece spanning the larger side of the box.
fn extremal_fixations(pos: &[(i64, i64)]) -> Vec<Fix> {
    let first = |f: &dyn Fn(&(i64, i64)) -> bool| pos.iter().position(f).unwrap();
    let (w, h) = (pos.iter().map(|p| p.0).max().unwrap(), pos.iter().map(|p| p.1).max().unwrap());
    let far = if w >= h { (first(&|p| p.0 == w), Axis::X, true) } else { (first(&|p| p.1 == h), Axis::Y, true) };
    vec![(first(&|p| p.0 == 0), Axis::X, false), (first(&|p| p.1 == 0), Axis::Y, false), far]
}

fn assemble(kind: ConfigKind, positions: Vec<(i64, i64)>, equations: Vec<Equation>, fixes: &[Fix]) -> GeneratedConfig {
    let scale = positions.iter().map(|p| p.0.max(p.1)).max().unwrap_or(0);
    let g = positions.iter().fold(scale, |g, p| num::integer::gcd(num::integer::gcd(g, p.0), p.1));
    let fixations = fixes.iter().map(|&(p, a, far)| Constraint::fix(p, a, far as u8)).collect();
    GeneratedConfig { kind, positions, equations, fixations, claimed_delta: if g == 0 { 1 } else { scale / g } }
}

/// Solve the equations and orient the shape so that `fixes` hold.
fn from_equations(kind: ConfigKind, eqs: Vec<Equation>, q: usize, fixes: Option<Vec<Fix>>) -> Result<GeneratedConfig> {
    let raw = solve_shape(&eqs, q)?;
    for sign in [1, -1] {
        let pos = normalize(&raw, sign)?;
        let scale = pos.iter().map(|p| p.0.max(p.1)).max().unwrap_or(0);
        let f = match &fixes {
            Some(f) => f.clone(),
            None => extremal_fixations(&pos),
        };
        if f.iter().all(|&x| fix_holds(&pos, scale, x)) {
            return Ok(assemble(kind, pos, eqs, &f));
        }
    }
    Err(Error::ConstraintsUnsatisfied)
}

fn push_eq(eqs: &mut Vec<Equation>, q: usize, a: usize, b: usize, m: Move) -> Result<()> {
    // 1-based indices; out-of-range pairs are skipped
    if a >= 1 && b >= 1 && a <= q && b <= q {
        let e = Equation::new(a - 1, b - 1, m)?;
        if !eqs.contains(&e) {
            eqs.push(e);
        }
    }
    Ok(())
}

fn mv(c: i64, d: i64) -> Move {
    canonical_move(c, d).expect("nonzero move")
}

pub fn golden_rectangle_equations(q: usize) -> Result<Vec<Equation>> {
    let (x, y, ad) = (mv(0, 1), mv(1, 0), mv(1, -1));
    let mut eqs = Vec::new();
    push_eq(&mut eqs, q, 1, 4, y)?;
    for i in 0..=q {
        for (a, b, m) in [
            (4 * i, 4 * i + 1, x),
            (4 * i + 2, 4 * i + 6, x),
            (4 * i + 1, 4 * i + 3, x),
            (4 * i, 4 * i + 4, y),
            (4 * i + 2, 4 * i + 3, y),
            (4 * i + 3, 4 * i + 5, y),
            (2 * i + 1, 2 * i + 2, ad),
        ] {
            push_eq(&mut eqs, q, a, b, m)?;
        }
    }
    Ok(eqs)
}

fn fib_i64(i: usize) -> Result<i64> {
    i64::try_from(fib(i)).map_err(|_| Error::Overflow)
}

/// Golden rectangle of q semiqueens (diagonal move (1,-1)), Delta = F_{floor(q/2)}.
pub fn golden_rectangle(q: usize) -> Result<GeneratedConfig> {
    if q < 4 {
        return Err(Error::TooSmall { q, min: 4 });
    }
    let h = q / 2;
    let last = if h % 2 == 0 { (q - 1, Axis::X, true) } else { (q - 1, Axis::Y, true) };
    let fixes = vec![(0, Axis::Y, false), (1, Axis::X, false), last];
    let cfg = from_equations(ConfigKind::Rectangle, golden_rectangle_equations(q)?, q, Some(fixes))?;
    if cfg.scale() != fib_i64(h)? {
        return Err(Error::ConstraintsUnsatisfied);
    }
    Ok(cfg)
}

/// One of the three weighted moves `w_i m_i`, optionally negated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MoveChoice {
    pub index: usize,
    pub negated: bool,
}

/// The vectors `w_i m_i` of the smallest triangle on the first three moves.
pub fn weighted_moves(piece: &PieceSpec) -> Result<[(i64, i64); 3]> {
    if piece.moves.len() < 3 {
        return Err(Error::Unsupported("golden parallelograms need at least three moves".into()));
    }
    let m = &piece.moves;
    let w = crate::polytope::triangle_weights(&m[0], &m[1], &m[2])?;
    Ok([(w.w1 * m[0].c, w.w1 * m[0].d), (w.w2 * m[1].c, w.w2 * m[1].d), (w.w3 * m[2].c, w.w3 * m[2].d)])
}

/// The six ordered choices, the first vector negated so the third side closes the triangle.
pub fn parallelogram_choices() -> Vec<(MoveChoice, MoveChoice)> {
    let mut out = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            if a != b {
                out.push((MoveChoice { index: a, negated: true }, MoveChoice { index: b, negated: false }));
            }
        }
    }
    out
}

/// Golden rectangle of q pieces mapped by (1,0) -> u, (0,1) -> v.
pub fn golden_parallelogram_map(q: usize, u: (i64, i64), v: (i64, i64)) -> Result<GeneratedConfig> {
    if u.0 * v.1 - u.1 * v.0 == 0 {
        return Err(Error::Degenerate);
    }
    let rect = golden_rectangle(q)?;
    let img = |(x, y): (i64, i64)| (u.0 * x + v.0 * y, u.1 * x + v.1 * y);
    let raw: Vec<(i128, i128)> = rect.positions.iter().map(|&p| img(p)).map(|(x, y)| (x as i128, y as i128)).collect();
    let pos = normalize(&raw, 1)?;
    let eqs = rect
        .equations
        .iter()
        .map(|e| Equation::new(e.i, e.j, mv(img((e.m.c, e.m.d)).0, img((e.m.c, e.m.d)).1)))
        .collect::<Result<Vec<_>>>()?;
    let fixes = extremal_fixations(&pos);
    Ok(assemble(ConfigKind::Parallelogram { u, v }, pos, eqs, &fixes))
}

pub fn golden_parallelogram(piece: &PieceSpec, choice: (MoveChoice, MoveChoice), q: usize) -> Result<GeneratedConfig> {
    let w = weighted_moves(piece)?;
    let (a, b) = choice;
    if a.index > 2 || b.index > 2 || a.index == b.index {
        return Err(Error::Degenerate);
    }
    let pick = |c: MoveChoice| {
        let (x, y) = w[c.index];
        if c.negated { (-x, -y) } else { (x, y) }
    };
    let (u, v) = (pick(a), pick(b));
    // the hypotenuse image v - u must run along the third move
    let third = w[3 - a.index - b.index];
    if (v.0 - u.0) * third.1 - (v.1 - u.1) * third.0 != 0 {
        return Err(Error::Unsupported("choice does not close the triangle; negate exactly one vector".into()));
    }
    golden_parallelogram_map(q, u, v)
}

fn spiral_equations(q: usize, m: [Move; 4]) -> Result<Vec<Equation>> {
    let mut eqs = Vec::new();
    push_eq(&mut eqs, q, 1, 3, m[2])?;
    for i in 0..=q {
        push_eq(&mut eqs, q, 2 * i, 2 * i + 1, m[0])?;
        push_eq(&mut eqs, q, 2 * i + 1, 2 * i + 2, m[1])?;
        push_eq(&mut eqs, q, 2 * i, 2 * i + 3, m[2])?;
        push_eq(&mut eqs, q, 2 * i + 1, 2 * i + 4, m[3])?;
    }
    Ok(eqs)
}

/// Discrete Fibonacci spiral of q queens, Delta = F_q (standard indexing).
pub fn queens_spiral(q: usize) -> Result<GeneratedConfig> {
    if q < 4 {
        return Err(Error::TooSmall { q, min: 4 });
    }
    let eqs = spiral_equations(q, [mv(1, 1), mv(1, -1), mv(0, 1), mv(1, 0)])?;
    let (a, b, c) = (q - 1, q - 2, q - 3);
    let fixes = match q % 4 {
        0 => vec![(a, Axis::X, false), (b, Axis::Y, false), (c, Axis::X, true)],
        1 => vec![(a, Axis::X, false), (a, Axis::Y, false), (c, Axis::Y, true)],
        2 => vec![(a, Axis::X, true), (a, Axis::Y, false), (c, Axis::X, false)],
        _ => vec![(a, Axis::Y, true), (b, Axis::X, false), (c, Axis::Y, false)],
    };
    let cfg = from_equations(ConfigKind::Spiral, eqs, q, Some(fixes))?;
    if BigInt::from(cfg.scale()) != fib_std(q) {
        return Err(Error::ConstraintsUnsatisfied);
    }
    Ok(cfg)
}

/// Twisted Fibonacci spiral for a four-move assignment of signed moves `(c,d)`.
pub fn twisted_spiral(piece: &PieceSpec, assignment: [(i64, i64); 4], q: usize) -> Result<GeneratedConfig> {
    if q < 4 {
        return Err(Error::TooSmall { q, min: 4 });
    }
    let ms: Vec<Move> = assignment.iter().map(|&(c, d)| canonical_move(c, d)).collect::<Result<_>>()?;
    for (i, m) in ms.iter().enumerate() {
        if !piece.has_move(m) || ms[..i].contains(m) {
            return Err(Error::Unsupported(format!("assignment must be a permutation of the piece's moves; {m} is not")));
        }
    }
    let eqs = spiral_equations(q, [ms[0], ms[1], ms[2], ms[3]])?;
    from_equations(ConfigKind::Twisted { moves: assignment }, eqs, q, None)
}

/// Smallest dilation making the configuration integral, after checking its constraints.
pub fn config_denominator(config: &GeneratedConfig) -> Result<BigInt> {
    let q = config.q();
    let z = config.unit_vector();
    let ok_eq = config.equations.iter().all(|e| e.j < q && Constraint::Move(*e).holds(&z));
    let ok_fix = config.fixations.iter().all(|f| f.holds(&z));
    if !ok_eq || !ok_fix {
        return Err(Error::ConstraintsUnsatisfied);
    }
    Ok(lcd(z.iter()))
}

/// Denominator of positions already on the unit board or at integer scale (max extent as unit).
pub fn positions_denominator(positions: &[(i64, i64)]) -> BigInt {
    let mx = positions.iter().map(|p| p.0).min().unwrap_or(0);
    let my = positions.iter().map(|p| p.1).min().unwrap_or(0);
    let s = positions.iter().map(|p| (p.0 - mx).max(p.1 - my)).max().unwrap_or(0);
    let g = positions.iter().fold(s, |g, p| num::integer::gcd(num::integer::gcd(g, p.0 - mx), p.1 - my));
    if g == 0 {
        BigInt::one()
    } else {
        BigInt::from(s / g)
    }
}

/// Active move equations of `piece` plus the stored fixations have rank 2q, inside the cube.
pub fn is_vertex(config: &GeneratedConfig, piece: &PieceSpec) -> Result<bool> {
    let q = config.q();
    let z = config.unit_vector();
    if z.iter().any(|x| x.is_negative() || x > &Rational::one()) {
        return Ok(false);
    }
    let mut rows: Vec<Vec<i128>> = active_constraints(piece, &z)
        .into_iter()
        .filter(|c| matches!(c, Constraint::Move(_)))
        .map(|c| c.row(q).0)
        .collect();
    for f in &config.fixations {
        if !f.holds(&z) {
            return Ok(false);
        }
        rows.push(f.row(q).0);
    }
    Ok(IntEchelon::from_rows(2 * q, &rows)?.rank() == 2 * q)
}

/// Lower bound F_{floor(q/2)} - 1 from the golden rectangle.
pub fn exponential_bound(q: usize) -> BigInt {
    fib(q / 2) - 1
}

/// Largest denominator among the six golden parallelograms of a three-move piece.
pub fn best_parallelogram(piece: &PieceSpec, q: usize) -> Result<GeneratedConfig> {
    let mut best: Option<GeneratedConfig> = None;
    for ch in parallelogram_choices() {
        let c = golden_parallelogram(piece, ch, q)?;
        if best.as_ref().is_none_or(|b| c.claimed_delta > b.claimed_delta) {
            best = Some(c);
        }
    }
    Ok(best.unwrap())
}
