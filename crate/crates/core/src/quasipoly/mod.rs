//! Quasipolynomials with rational constituents: evaluation, exact fitting,
//! period detection and the closed-form formula library.

mod formulas;

pub use formulas::{
    arshon_black, arshon_white, formula_eval, library_quasipolynomial, FormulaId,
};

use crate::exactmath::{frac_string, parse_rational, rint, solve_linear, IntEchelon, Rational};
use crate::{Error, Result};
use num::bigint::BigInt;
use num::{One, Zero};
use serde::{Deserialize, Serialize};

/// Constituent `r` (coefficients from degree 0 upward) is used when `n mod period == r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quasipolynomial {
    pub degree: usize,
    pub period: usize,
    pub constituents: Vec<Vec<Rational>>,
}

#[derive(Serialize, Deserialize)]
struct QpJson {
    degree: usize,
    period: usize,
    constituents: Vec<Vec<String>>,
}

impl Serialize for Quasipolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QpJson {
            degree: self.degree,
            period: self.period,
            constituents: self.constituents.iter().map(|c| c.iter().map(frac_string).collect()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quasipolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = QpJson::deserialize(d)?;
        let constituents = j
            .constituents
            .iter()
            .map(|c| c.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Quasipolynomial::new(j.degree, constituents).map_err(D::Error::custom)
    }
}

fn poly_eval(c: &[Rational], n: &Rational) -> Rational {
    c.iter().rev().fold(Rational::zero(), |acc, a| acc * n + a)
}

impl Quasipolynomial {
    pub fn new(degree: usize, constituents: Vec<Vec<Rational>>) -> Result<Self> {
        if constituents.is_empty() {
            return Err(Error::Dimension("a quasipolynomial needs at least one constituent".into()));
        }
        if constituents.iter().any(|c| c.len() != degree + 1) {
            return Err(Error::Dimension(format!("every constituent needs {} coefficients", degree + 1)));
        }
        Ok(Quasipolynomial { degree, period: constituents.len(), constituents })
    }

    pub fn polynomial(coeffs: Vec<Rational>) -> Self {
        let degree = coeffs.len().saturating_sub(1);
        Quasipolynomial { degree, period: 1, constituents: vec![coeffs] }
    }

    pub fn residue(&self, n: i64) -> usize {
        n.rem_euclid(self.period as i64) as usize
    }

    pub fn evaluate(&self, n: i64) -> Rational {
        poly_eval(&self.constituents[self.residue(n)], &rint(n))
    }

    /// Coefficient of `n^(degree - i)` in constituent `residue mod period`.
    pub fn gamma(&self, i: usize, residue: usize) -> Rational {
        if i > self.degree {
            return Rational::zero();
        }
        self.constituents[residue % self.period][self.degree - i].clone()
    }

    /// Smallest period that reproduces the same function.
    pub fn reduced(&self) -> Quasipolynomial {
        for p in 1..=self.period {
            if self.period % p == 0 && (0..self.period).all(|r| self.constituents[r] == self.constituents[r % p]) {
                return Quasipolynomial {
                    degree: self.degree,
                    period: p,
                    constituents: self.constituents[..p].to_vec(),
                };
            }
        }
        self.clone()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("quasipolynomial serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

pub fn evaluate(q: &Quasipolynomial, n: i64) -> Rational {
    q.evaluate(n)
}

pub fn coefficient_gamma(q: &Quasipolynomial, i: usize, residue: usize) -> Rational {
    q.gamma(i, residue)
}

/// Number of combinatorial configuration types, `Q(-1)`.
pub fn types_count(q: &Quasipolynomial) -> Rational {
    q.evaluate(-1)
}

/// Monomial coefficients of the interpolating polynomial through `pts` (Newton form).
fn newton_fit(pts: &[(Rational, Rational)]) -> Vec<Rational> {
    let k = pts.len();
    let mut dd: Vec<Rational> = pts.iter().map(|p| p.1.clone()).collect();
    for level in 1..k {
        for i in (level..k).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&pts[i].0 - &pts[i - level].0);
        }
    }
    // expand from the innermost term outward
    let mut c = vec![Rational::zero(); k.max(1)];
    for i in (0..k).rev() {
        // c <- c * (n - x_i) + dd[i]
        let x = &pts[i].0;
        let mut next = vec![Rational::zero(); k.max(1)];
        for j in 0..k {
            if c[j].is_zero() {
                continue;
            }
            if j + 1 < k {
                next[j + 1] += &c[j];
            }
            next[j] -= &c[j] * x;
        }
        next[0] += &dd[i];
        c = next;
    }
    c
}

fn fit_class(samples: &[(i64, Rational)], degree: usize, lead: Option<&Rational>, r: usize) -> Result<Vec<Rational>> {
    let need = if lead.is_some() { degree } else { degree + 1 };
    if samples.len() < need {
        return Err(Error::InsufficientSamples(format!(
            "residue {r} has {} samples, needs {need}",
            samples.len()
        )));
    }
    let adjust = |n: i64, v: &Rational| match lead {
        Some(l) => v - l * rint(n).pow(degree as i32),
        None => v.clone(),
    };
    let pts: Vec<(Rational, Rational)> = samples[..need].iter().map(|(n, v)| (rint(*n), adjust(*n, v))).collect();
    let mut c = if need == 0 { Vec::new() } else { newton_fit(&pts) };
    c.resize(need, Rational::zero());
    if let Some(l) = lead {
        c.push(l.clone());
    }
    for (n, v) in &samples[need..] {
        if &poly_eval(&c, &rint(*n)) != v {
            return Err(Error::InconsistentFit(*n));
        }
    }
    Ok(c)
}

fn split_classes(values: &[(i64, BigInt)], period: usize) -> Vec<Vec<(i64, Rational)>> {
    let mut classes = vec![Vec::new(); period];
    let mut sorted = values.to_vec();
    sorted.sort_by_key(|v| v.0);
    sorted.dedup_by_key(|v| v.0);
    for (n, v) in sorted {
        classes[n.rem_euclid(period as i64) as usize].push((n, rint(v)));
    }
    classes
}

/// Exact fit of degree `degree` and period `period`; extra samples must agree.
pub fn interpolate(
    values: &[(i64, BigInt)],
    degree: usize,
    period: usize,
    known_leading: Option<&Rational>,
) -> Result<Quasipolynomial> {
    if period == 0 {
        return Err(Error::Dimension("period must be positive".into()));
    }
    let classes = split_classes(values, period);
    let constituents = classes
        .iter()
        .enumerate()
        .map(|(r, s)| fit_class(s, degree, known_leading, r))
        .collect::<Result<Vec<_>>>()?;
    Quasipolynomial::new(degree, constituents)
}

/// Minimum holdout samples per residue class that a candidate period must predict.
pub const MIN_HOLDOUT: usize = 2;

/// Smallest `p <= max_period` whose fit predicts at least `holdout` further samples in every class.
pub fn detect_period(values: &[(i64, BigInt)], degree: usize, max_period: usize, holdout: usize) -> Result<usize> {
    detect_period_with(values, degree, max_period, holdout, None)
}

/// As `detect_period`, with a leading coefficient known in advance (one sample fewer per class).
pub fn detect_period_with(
    values: &[(i64, BigInt)],
    degree: usize,
    max_period: usize,
    holdout: usize,
    known_leading: Option<&Rational>,
) -> Result<usize> {
    let holdout = holdout.max(MIN_HOLDOUT);
    let need = degree + 1 - known_leading.is_some() as usize + holdout;
    for p in 1..=max_period {
        let classes = split_classes(values, p);
        if let Some(r) = classes.iter().position(|c| c.len() < need) {
            return Err(Error::InsufficientSamples(format!(
                "period {p}: residue {r} has {} samples, needs {need}",
                classes[r].len()
            )));
        }
        let ok = classes
            .iter()
            .enumerate()
            .all(|(r, c)| fit_class(c, degree, known_leading, r).is_ok());
        if ok {
            return Ok(p);
        }
    }
    Err(Error::NoPeriod(max_period as u32))
}

/// Reflection identity `Q_{-r}(-n) = (-1)^d Q_r(n)` as polynomial identities for every residue.
pub fn parity_check(q: &Quasipolynomial, d: usize) -> bool {
    let p = q.period;
    (0..p).all(|r| {
        let a = &q.constituents[r];
        let b = &q.constituents[(p - r) % p];
        (0..=q.degree).all(|k| {
            let lhs = if k % 2 == 0 { b[k].clone() } else { -b[k].clone() };
            let rhs = if d % 2 == 0 { a[k].clone() } else { -a[k].clone() };
            lhs == rhs
        })
    })
}

/// `ceil(p (kappa - codim/2)) + epsilon`, epsilon = 1 for even codim.
pub fn sample_budget(kappa: usize, codim: usize, p: usize) -> usize {
    let twice = p * (2 * kappa - codim.min(2 * kappa));
    twice.div_ceil(2) + (codim % 2 == 0) as usize
}

/// Unknowns of a subspace count of degree `d` and period `p` under the strong
/// parity symmetry: the shared leading coefficient, the parity-restricted
/// coefficients of the self-opposite classes, and full lower coefficients of
/// one class from each opposite pair.
fn parity_unknowns(d: usize, p: usize) -> Vec<(usize, usize)> {
    let mut u = Vec::new();
    for r in 0..=p / 2 {
        let self_opposite = r == 0 || 2 * r == p;
        for j in 0..d {
            if !self_opposite || (d - j) % 2 == 0 {
                u.push((r, j));
            }
        }
    }
    u
}

/// Result of a strong-parity fit: the quasipolynomial and the sample points it used.
#[derive(Clone, Debug)]
pub struct ParityFit {
    pub quasi: Quasipolynomial,
    pub samples: Vec<i64>,
}

/// Fits a degree-`d`, period-`p` count that obeys the parity reflection, using the
/// first values of `n` that add information, one per unknown. `f` supplies counts.
pub fn fit_strong_parity<F>(d: usize, p: usize, max_n: i64, mut f: F) -> Result<ParityFit>
where
    F: FnMut(i64) -> Result<BigInt>,
{
    let unknowns = parity_unknowns(d, p);
    let m = unknowns.len() + 1;
    let col = |r: usize, j: usize| unknowns.iter().position(|&u| u == (r, j)).map(|c| c + 1);
    let row_for = |n: i64| -> Vec<i128> {
        let r = n.rem_euclid(p as i64) as usize;
        let (base, sign) = if r <= p / 2 { (r, false) } else { (p - r, true) };
        let mut row = vec![0i128; m];
        row[0] = (n as i128).pow(d as u32);
        for j in 0..d {
            if let Some(c) = col(base, j) {
                let flip = sign && (d - j) % 2 == 1;
                let v = (n as i128).pow(j as u32);
                row[c] = if flip { -v } else { v };
            }
        }
        row
    };
    let mut ech = IntEchelon::new(m);
    let mut chosen = Vec::new();
    let mut rows = Vec::new();
    let mut n = 0i64;
    while ech.rank() < m {
        n += 1;
        if n > max_n {
            return Err(Error::InsufficientSamples(format!(
                "rank {} of {m} after n = {max_n}",
                ech.rank()
            )));
        }
        let row = row_for(n);
        if ech.insert(&row)? {
            chosen.push(n);
            rows.push(row);
        }
    }
    let a: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| rint(x)).collect()).collect();
    let b: Vec<Rational> = chosen.iter().map(|&n| f(n).map(rint)).collect::<Result<_>>()?;
    let x = solve_linear(&a, &b)?;
    let mut constituents = vec![vec![Rational::zero(); d + 1]; p];
    for (r, c) in constituents.iter_mut().enumerate() {
        c[d] = x[0].clone();
        let (base, sign) = if r <= p / 2 { (r, false) } else { (p - r, true) };
        for j in 0..d {
            if let Some(k) = col(base, j) {
                let flip = sign && (d - j) % 2 == 1;
                c[j] = if flip { -x[k].clone() } else { x[k].clone() };
            }
        }
    }
    Ok(ParityFit { quasi: Quasipolynomial::new(d, constituents)?, samples: chosen })
}

/// `1/q!`, the leading coefficient of every unlabeled placement count.
pub fn unlabeled_leading(q: usize) -> Rational {
    Rational::new(BigInt::one(), crate::exactmath::falling(q as i64, q as i64))
}
