use super::lattice::{build_lattice, Subspace};
use crate::exactmath::{lcm_i128, IntEchelon};
use crate::model::PieceSpec;
use crate::{Error, Result};
use num::bigint::BigInt;
use num::Zero;
use rayon::prelude::*;

pub const SUBSPACE_MAX_KAPPA: usize = 4;
/// Upper bound on n^(free - 1) loop iterations in `subspace_count`.
pub const SUBSPACE_WORK_LIMIT: f64 = 2e10;

fn floor_div(a: i128, b: i128) -> i128 {
    a.div_euclid(b)
}

fn ceil_div(a: i128, b: i128) -> i128 {
    -(-a).div_euclid(b)
}

struct Solver {
    n: i128,
    // per pivot row: pivot coefficient (> 0), coefficients on the other free vars, on the last free var
    piv: Vec<i128>,
    others: Vec<Vec<i128>>,
    last: Vec<i128>,
    period: i128,
}

impl Solver {
    /// Number of values of the last free variable completing `z` (the other free values).
    fn tail(&self, z: &[i128]) -> i128 {
        let n = self.n;
        let (mut lo, mut hi) = (1i128, n);
        let sums: Vec<i128> = self
            .others
            .iter()
            .map(|row| row.iter().zip(z).map(|(a, b)| a * b).sum())
            .collect();
        for r in 0..self.piv.len() {
            let (p, a, s) = (self.piv[r], self.last[r], sums[r]);
            // pivot value is -(s + a t)/p, needed in [1, n]
            let (l, h) = (p + s, n * p + s);
            match a.signum() {
                0 => {
                    if l > 0 || h < 0 {
                        return 0;
                    }
                }
                1 => {
                    lo = lo.max(ceil_div(-h, a));
                    hi = hi.min(floor_div(-l, a));
                }
                _ => {
                    lo = lo.max(ceil_div(l, -a));
                    hi = hi.min(floor_div(h, -a));
                }
            }
        }
        if lo > hi {
            return 0;
        }
        let mut total = 0;
        for res in 0..self.period {
            let ok = (0..self.piv.len()).all(|r| (sums[r] + self.last[r] * res).rem_euclid(self.piv[r]) == 0);
            if ok {
                total += floor_div(hi - res, self.period) - floor_div(lo - 1 - res, self.period);
            }
        }
        total
    }
}

/// Integer points of the essential part of `u` with every coordinate in `1..=n`.
pub fn subspace_count(_piece: &PieceSpec, u: &Subspace, n: u32) -> Result<BigInt> {
    let pieces = u.pieces();
    let kappa = pieces.len();
    if kappa == 0 {
        return Ok(BigInt::from(1));
    }
    if kappa > SUBSPACE_MAX_KAPPA {
        return Err(Error::BudgetExceeded(format!("subspace involves {kappa} pieces (limit {SUBSPACE_MAX_KAPPA})")));
    }
    let local = |p: usize| pieces.binary_search(&p).unwrap();
    let mut ech = IntEchelon::new(2 * kappa);
    for e in &u.equations {
        let mut e = *e;
        e.i = local(e.i);
        e.j = local(e.j);
        ech.insert(&e.row(kappa))?;
    }
    let free = ech.free_columns();
    let (rest, last) = free.split_at(free.len() - 1);
    let last = last[0];
    let work = (n as f64).powi(rest.len() as i32);
    if work > SUBSPACE_WORK_LIMIT {
        return Err(Error::BudgetExceeded(format!("subspace enumeration needs about {work:.1e} steps")));
    }
    let mut period = 1i128;
    for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
        period = lcm_i128(period, row[p])?;
    }
    let solver = Solver {
        n: n as i128,
        piv: ech.rows.iter().zip(&ech.pivots).map(|(r, &p)| r[p]).collect(),
        others: ech.rows.iter().map(|r| rest.iter().map(|&f| r[f]).collect()).collect(),
        last: ech.rows.iter().map(|r| r[last]).collect(),
        period,
    };

    let k = rest.len();
    if k == 0 {
        return Ok(BigInt::from(solver.tail(&[])));
    }
    let n = n as i128;
    let total: i128 = (1..=n)
        .into_par_iter()
        .map(|first| {
            let mut z = vec![1i128; k];
            z[0] = first;
            let mut acc = 0i128;
            loop {
                acc += solver.tail(&z);
                // odometer over z[1..]
                let mut i = k;
                loop {
                    i -= 1;
                    if i == 0 {
                        return acc;
                    }
                    if z[i] < n {
                        z[i] += 1;
                        break;
                    }
                    z[i] = 1;
                }
            }
        })
        .sum();
    Ok(BigInt::from(total))
}

/// Labeled count `o(q;n)` by Möbius inversion over the intersection lattice.
pub fn count_via_mobius(piece: &PieceSpec, q: usize, n: u32) -> Result<BigInt> {
    if q > 3 {
        return Err(Error::BudgetExceeded("Mobius-inversion counting is limited to q <= 3".into()));
    }
    let lat = build_lattice(piece, q)?;
    let nn = BigInt::from(n);
    let mut total = BigInt::zero();
    for u in &lat.elements {
        if u.mobius == 0 {
            continue;
        }
        let a = subspace_count(piece, u, n)?;
        total += BigInt::from(u.mobius) * nn.pow((2 * (q - u.kappa)) as u32) * a;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{alpha_line, count_placements, Equation};
    use crate::model::{Board, Move};

    fn piece(s: &str) -> PieceSpec {
        PieceSpec::parse(s).unwrap()
    }

    fn eq(i: usize, j: usize, c: i64, d: i64) -> Equation {
        Equation::new(i, j, Move::new(c, d).unwrap()).unwrap()
    }

    // direct enumeration of all 2κ coordinates, as an oracle
    fn naive(u: &Subspace, n: i64) -> i64 {
        let pieces = u.pieces();
        let k = pieces.len();
        let mut z = vec![1i64; 2 * k];
        let mut count = 0;
        loop {
            let ok = u.equations.iter().all(|e| {
                let (a, b) = (pieces.binary_search(&e.i).unwrap(), pieces.binary_search(&e.j).unwrap());
                e.m.d * (z[2 * b] - z[2 * a]) == e.m.c * (z[2 * b + 1] - z[2 * a + 1])
            });
            count += ok as i64;
            let mut i = 0;
            loop {
                if i == 2 * k {
                    return count;
                }
                if z[i] < n {
                    z[i] += 1;
                    break;
                }
                z[i] = 1;
                i += 1;
            }
        }
    }

    #[test]
    fn spec_examples() {
        let p = piece("nightrider");
        let u = Subspace::from_equations(vec![eq(0, 1, 2, 1)]).unwrap();
        assert_eq!(subspace_count(&p, &u, 2).unwrap(), BigInt::from(4));
        let u = Subspace::from_equations(vec![eq(0, 1, 2, 1), eq(1, 2, 2, -1)]).unwrap();
        assert_eq!(subspace_count(&p, &u, 4).unwrap(), BigInt::from(48));
        let u = Subspace::from_equations(vec![eq(0, 1, 2, 1), eq(1, 2, 1, 2)]).unwrap();
        assert_eq!(subspace_count(&p, &u, 6).unwrap(), BigInt::from(246));
    }

    #[test]
    fn single_hyperplane_is_alpha() {
        for (c, d) in [(1, 0), (1, 1), (2, 1), (1, -3), (3, 2)] {
            let m = Move::new(c, d).unwrap();
            let u = Subspace::from_equations(vec![Equation::new(0, 1, m).unwrap()]).unwrap();
            for n in 1..=9 {
                assert_eq!(subspace_count(&piece("rook"), &u, n).unwrap(), alpha_line(&m, n));
            }
        }
    }

    #[test]
    fn agrees_with_naive_on_lattice_elements() {
        for name in ["queen", "nightrider", "n3"] {
            let lat = build_lattice(&piece(name), 3).unwrap();
            for u in &lat.elements {
                for n in 1..=4 {
                    let got = subspace_count(&piece(name), u, n).unwrap();
                    assert_eq!(got, BigInt::from(naive(u, n as i64)), "{name} {} n={n}", u.label());
                }
            }
        }
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(count_via_mobius(&piece("queen"), 2, 3).unwrap(), BigInt::from(16));
        assert_eq!(count_via_mobius(&piece("nightrider"), 2, 2).unwrap(), BigInt::from(12));
        for n in 1..=5 {
            assert_eq!(count_via_mobius(&piece("n1"), 1, n).unwrap(), BigInt::from(n * n));
        }
    }

    #[test]
    fn mobius_matches_brute_q3() {
        for name in ["queen", "nightrider"] {
            for n in 1..=6 {
                let b = count_placements(&piece(name), &Board::Square, 3, n).unwrap();
                assert_eq!(count_via_mobius(&piece(name), 3, n).unwrap(), b * 6);
            }
        }
    }

    #[test]
    fn too_many_pieces() {
        let u = Subspace::from_equations(vec![eq(0, 1, 1, 0), eq(2, 3, 1, 0), eq(3, 4, 1, 0)]).unwrap();
        assert!(matches!(subspace_count(&piece("rook"), &u, 3), Err(Error::BudgetExceeded(_))));
        assert!(matches!(count_via_mobius(&piece("rook"), 4, 3), Err(Error::BudgetExceeded(_))));
    }
}
