use crate::exactmath::IntEchelon;
use crate::model::{Move, PieceSpec};
use crate::{Error, Result};
use std::collections::HashMap;
use std::fmt;

/// Attack hyperplane `d(x_j - x_i) - c(y_j - y_i) = 0`, pieces indexed from 0 with `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Equation {
    pub i: usize,
    pub j: usize,
    pub m: Move,
}

impl Equation {
    pub fn new(i: usize, j: usize, m: Move) -> Result<Equation> {
        if i == j {
            return Err(Error::Dimension("equation needs two distinct pieces".into()));
        }
        Ok(Equation { i: i.min(j), j: i.max(j), m })
    }

    /// Coefficient row over `(x_0, y_0, x_1, y_1, ...)`, `2q` columns.
    pub fn row(&self, q: usize) -> Vec<i128> {
        let mut r = vec![0i128; 2 * q];
        let (c, d) = (self.m.c as i128, self.m.d as i128);
        r[2 * self.i] = -d;
        r[2 * self.i + 1] = c;
        r[2 * self.j] = d;
        r[2 * self.j + 1] = -c;
        r
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H^{}_{{{},{}}}", self.m.slope(), self.i + 1, self.j + 1)
    }
}

/// A subspace given by attack equations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub equations: Vec<Equation>,
    pub kappa: usize,
    pub codim: usize,
    pub mobius: i64,
}

impl Subspace {
    /// Computes κ and codimension; `mobius` is left at 0 until a lattice fills it in.
    pub fn from_equations(mut equations: Vec<Equation>) -> Result<Subspace> {
        equations.sort();
        equations.dedup();
        let pieces = pieces_of(&equations);
        let q = equations.iter().map(|e| e.j + 1).max().unwrap_or(0);
        let rows: Vec<Vec<i128>> = equations.iter().map(|e| e.row(q)).collect();
        let codim = IntEchelon::from_rows(2 * q, &rows)?.rank();
        Ok(Subspace { equations, kappa: pieces.len(), codim, mobius: 0 })
    }

    /// Sorted indices of the pieces the equations involve.
    pub fn pieces(&self) -> Vec<usize> {
        pieces_of(&self.equations)
    }

    pub fn label(&self) -> String {
        if self.equations.is_empty() {
            return "0".into();
        }
        self.equations.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" & ")
    }
}

fn pieces_of(eqs: &[Equation]) -> Vec<usize> {
    let mut p: Vec<usize> = eqs.iter().flat_map(|e| [e.i, e.j]).collect();
    p.sort_unstable();
    p.dedup();
    p
}

/// Intersection lattice of the move arrangement, ordered by reverse inclusion.
/// `elements[0]` is the whole space; elements are sorted by codimension.
#[derive(Clone, Debug)]
pub struct IntersectionLattice {
    pub q: usize,
    pub hyperplanes: Vec<Equation>,
    pub elements: Vec<Subspace>,
    /// Bit `h` of `masks[k]` is set when hyperplane `h` contains element `k`.
    pub masks: Vec<u128>,
}

impl IntersectionLattice {
    /// `U <= V` in the lattice order (V is contained in U).
    pub fn le(&self, u: usize, v: usize) -> bool {
        self.masks[u] & !self.masks[v] == 0
    }

    pub fn bottom_mobius_check(&self) -> bool {
        (1..self.elements.len()).all(|u| {
            let s: i64 = (0..self.elements.len())
                .filter(|&v| self.le(v, u))
                .map(|v| self.elements[v].mobius)
                .sum();
            s == 0
        }) && self.elements[0].mobius == 1
    }
}

pub const LATTICE_MAX_Q: usize = 4;

pub fn hyperplanes(piece: &PieceSpec, q: usize) -> Vec<Equation> {
    let mut hs = Vec::new();
    for i in 0..q {
        for j in i + 1..q {
            for m in piece.sorted_moves() {
                hs.push(Equation { i, j, m });
            }
        }
    }
    hs
}

/// All flats of the arrangement as (mask of containing hyperplanes, echelon form),
/// in nondecreasing codimension. `limit` caps the number of flats.
pub(crate) fn closed_flats(hs: &[Equation], q: usize, limit: Option<usize>) -> Result<Vec<(u128, IntEchelon)>> {
    if hs.len() > 128 {
        return Err(Error::BudgetExceeded(format!("{} hyperplanes exceed the 128-bit flat encoding", hs.len())));
    }
    let rows: Vec<Vec<i128>> = hs.iter().map(|h| h.row(q)).collect();
    let mut index: HashMap<u128, usize> = HashMap::new();
    let mut flats: Vec<(u128, IntEchelon)> = vec![(0, IntEchelon::new(2 * q))];
    index.insert(0, 0);
    let mut next = 0;
    while next < flats.len() {
        let (mask, ech) = flats[next].clone();
        next += 1;
        for h in 0..hs.len() {
            if mask >> h & 1 == 1 {
                continue;
            }
            let mut e = ech.clone();
            e.insert(&rows[h])?;
            let mut m = mask | 1 << h;
            for (g, row) in rows.iter().enumerate() {
                if m >> g & 1 == 0 && e.contains(row)? {
                    m |= 1 << g;
                }
            }
            if let std::collections::hash_map::Entry::Vacant(v) = index.entry(m) {
                if limit.is_some_and(|l| flats.len() >= l) {
                    return Err(Error::BudgetExceeded(format!("more than {} flats", flats.len())));
                }
                v.insert(flats.len());
                flats.push((m, e));
            }
        }
    }
    Ok(flats)
}

pub fn build_lattice(piece: &PieceSpec, q: usize) -> Result<IntersectionLattice> {
    if q > LATTICE_MAX_Q {
        return Err(Error::BudgetExceeded(format!("intersection lattice limited to q <= {LATTICE_MAX_Q}")));
    }
    let hs = hyperplanes(piece, q);
    let flats = closed_flats(&hs, q, None)?;

    // BFS from the whole space visits flats in nondecreasing rank
    let codims: Vec<usize> = flats.iter().map(|(_, e)| e.rank()).collect();
    let masks: Vec<u128> = flats.iter().map(|(m, _)| *m).collect();
    let mut mobius = vec![0i64; flats.len()];
    mobius[0] = 1;
    for u in 1..flats.len() {
        let mut s = 0i64;
        for v in 0..u {
            if codims[v] < codims[u] && masks[v] & !masks[u] == 0 {
                s += mobius[v];
            }
        }
        mobius[u] = -s;
    }

    let elements = flats
        .iter()
        .enumerate()
        .map(|(k, (m, e))| {
            let equations: Vec<Equation> = (0..hs.len()).filter(|h| m >> h & 1 == 1).map(|h| hs[h]).collect();
            let kappa = pieces_of(&equations).len();
            Subspace { equations, kappa, codim: e.rank(), mobius: mobius[k] }
        })
        .collect();
    Ok(IntersectionLattice { q, hyperplanes: hs, elements, masks })
}
