//! Exact arithmetic: big rationals, integer sequences, linear algebra.

mod intmat;
mod linalg;
mod seq;

pub use intmat::{gcd_i128, lcm_i128, primitive, IntEchelon};
pub(crate) use intmat::det_adj;
pub use linalg::{mat_vec, nullspace, rank, solve_linear};
pub use seq::{
    binomial, elem_sym, falling, fib, fib_std, lucas_std, stirling_first, stirling_second,
};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rint<T: Into<BigInt>>(n: T) -> Rational {
    Rational::from_integer(n.into())
}

/// `"num/den"` always, including integers (`"7/1"`).
pub fn frac_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> crate::Result<Rational> {
    let s = s.trim();
    let bad = || crate::Error::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(rint(s.parse::<BigInt>().map_err(|_| bad())?)),
    }
}

pub fn lcm_big(a: &BigInt, b: &BigInt) -> BigInt {
    use num::Integer;
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    a.lcm(b).abs()
}

/// Least common denominator of a list of rationals (1 for an empty list).
pub fn lcd<'a, I: IntoIterator<Item = &'a Rational>>(xs: I) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| lcm_big(&acc, x.denom()))
}
