use num::bigint::BigInt;
use num::{One, Signed, Zero};
use std::sync::{Mutex, OnceLock};

// Rows at or below this size are memoised; larger requests are computed afresh.
const MEMO_LIMIT: usize = 200;

/// Fibonacci numbers indexed so that F_0 = F_1 = 1.
pub fn fib(i: usize) -> BigInt {
    fib_std(i + 1)
}

/// Standard Fibonacci numbers: F_0 = 0, F_1 = 1.
pub fn fib_std(i: usize) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..i {
        let c = &a + &b;
        a = b;
        b = c;
    }
    a
}

/// Lucas numbers L_0 = 2, L_1 = 1.
pub fn lucas_std(i: usize) -> BigInt {
    let (mut a, mut b) = (BigInt::from(2), BigInt::one());
    for _ in 0..i {
        let c = &a + &b;
        a = b;
        b = c;
    }
    a
}

/// Generalised binomial coefficient C(n, k) for any integer n.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// Falling factorial (n)_k.
pub fn falling(n: i64, k: i64) -> BigInt {
    (0..k.max(0)).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i))
}

type Table = Vec<Vec<BigInt>>;

fn grow(table: &mut Table, n: usize, step: impl Fn(&[BigInt], usize) -> Vec<BigInt>) {
    if table.is_empty() {
        table.push(vec![BigInt::one()]);
    }
    while table.len() <= n {
        let m = table.len();
        let row = step(&table[m - 1], m);
        table.push(row);
    }
}

fn first_row(prev: &[BigInt], m: usize) -> Vec<BigInt> {
    // s(m,k) = s(m-1,k-1) - (m-1) s(m-1,k)
    let mut row = vec![BigInt::zero(); m + 1];
    for (k, slot) in row.iter_mut().enumerate() {
        let a = if k >= 1 { prev[k - 1].clone() } else { BigInt::zero() };
        let b = if k < prev.len() { &prev[k] * BigInt::from(m - 1) } else { BigInt::zero() };
        *slot = a - b;
    }
    row
}

fn second_row(prev: &[BigInt], m: usize) -> Vec<BigInt> {
    // S(m,k) = S(m-1,k-1) + k S(m-1,k)
    let mut row = vec![BigInt::zero(); m + 1];
    for (k, slot) in row.iter_mut().enumerate() {
        let a = if k >= 1 { prev[k - 1].clone() } else { BigInt::zero() };
        let b = if k < prev.len() { &prev[k] * BigInt::from(k) } else { BigInt::zero() };
        *slot = a + b;
    }
    row
}

fn lookup(
    memo: &'static OnceLock<Mutex<Table>>,
    n: usize,
    k: i64,
    step: fn(&[BigInt], usize) -> Vec<BigInt>,
) -> BigInt {
    if k < 0 || k as usize > n {
        return BigInt::zero();
    }
    let k = k as usize;
    if n <= MEMO_LIMIT {
        let mut t = memo.get_or_init(|| Mutex::new(Vec::new())).lock().unwrap();
        grow(&mut t, n, step);
        return t[n][k].clone();
    }
    let mut row = vec![BigInt::one()];
    for m in 1..=n {
        row = step(&row, m);
    }
    row[k].clone()
}

static FIRST: OnceLock<Mutex<Table>> = OnceLock::new();
static SECOND: OnceLock<Mutex<Table>> = OnceLock::new();

/// Signed Stirling number of the first kind s(n,k).
pub fn stirling_first(n: usize, k: i64) -> BigInt {
    lookup(&FIRST, n, k, first_row)
}

/// Stirling number of the second kind S(n,k).
pub fn stirling_second(n: usize, k: i64) -> BigInt {
    lookup(&SECOND, n, k, second_row)
}

/// e_q(1, 2, ..., n).
pub fn elem_sym(q: usize, n: usize) -> BigInt {
    let mut e = vec![BigInt::zero(); q + 1];
    e[0] = BigInt::one();
    for x in 1..=n {
        for k in (1..=q.min(x)).rev() {
            let t = &e[k - 1] * BigInt::from(x);
            e[k] += t;
        }
    }
    e[q].abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn fib_values() {
        assert_eq!(fib(0), b(1));
        assert_eq!(fib(1), b(1));
        assert_eq!(fib(6), b(13));
        // standard F_8 = 21 lives at index 7 here
        assert_eq!(fib(7), b(21));
        assert_eq!(fib(8), b(34));
        assert_eq!(fib_std(8), b(21));
        assert_eq!(lucas_std(5), b(11));
    }

    #[test]
    fn fib_recurrence_exhaustive() {
        for i in 0..=60 {
            assert_eq!(fib(i + 2), fib(i + 1) + fib(i));
        }
    }

    #[test]
    fn stirling_examples() {
        assert_eq!(stirling_first(4, 2), b(11));
        assert_eq!(stirling_first(5, 5), b(1));
        assert_eq!(stirling_first(4, 3), b(-6));
        assert_eq!(stirling_first(4, 5), b(0));
        assert_eq!(stirling_first(4, -1), b(0));
        assert_eq!(stirling_second(3, 2), b(3));
        assert_eq!(stirling_second(6, 6), b(1));
        assert_eq!(stirling_second(4, 0), b(0));
        assert_eq!(stirling_second(0, 0), b(1));
    }

    // brute-force set partitions of {0..n}
    fn partitions(n: usize, k: usize) -> u64 {
        fn go(i: usize, n: usize, blocks: usize, k: usize) -> u64 {
            if i == n {
                return (blocks == k) as u64;
            }
            let mut t = 0;
            for _ in 0..blocks {
                t += go(i + 1, n, blocks, k);
            }
            t + go(i + 1, n, blocks + 1, k)
        }
        go(0, n, 0, k)
    }

    #[test]
    fn second_kind_matches_partitions() {
        for n in 0..8 {
            for k in 0..=n {
                assert_eq!(stirling_second(n, k as i64), b(partitions(n, k) as i64), "{n} {k}");
            }
        }
    }

    #[test]
    fn elem_sym_examples() {
        assert_eq!(elem_sym(2, 3), b(11));
        assert_eq!(elem_sym(0, 7), b(1));
        assert_eq!(elem_sym(4, 3), b(0));
    }

    #[test]
    fn elem_sym_is_stirling_exhaustive() {
        for n in 0..=20usize {
            for q in 0..=n {
                let s = stirling_first(n + 1, (n + 1 - q) as i64);
                assert_eq!(s.abs(), elem_sym(q, n), "n={n} q={q}");
            }
        }
    }

    #[test]
    fn beyond_memo_limit_agrees() {
        let direct = {
            let mut row = vec![BigInt::one()];
            for m in 1..=205 {
                row = first_row(&row, m);
            }
            row[100].clone()
        };
        assert_eq!(stirling_first(205, 100), direct);
        assert_eq!(stirling_first(205, 204), -binomial(205, 2));
    }

    #[test]
    fn binomial_general() {
        assert_eq!(binomial(5, 2), b(10));
        assert_eq!(binomial(-1, 3), b(-1));
        assert_eq!(binomial(3, 5), b(0));
        assert_eq!(falling(5, 3), b(60));
        assert_eq!(falling(-1, 2), b(2));
    }
}
