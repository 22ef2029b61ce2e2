//! Sequential generation of the Farey sequence of order `n`.
//!
//! Terms are produced in increasing order with the adjacent-fraction
//! recurrence: if `a/b < c/d` are consecutive in the sequence of order `n`,
//! the next term is `(k*c - a) / (k*d - b)` with `k = (n + b) / d`.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Rational64;

/// A reduced fraction `num/den` in `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FareyTerm {
    pub num: i64,
    pub den: i64,
}

impl FareyTerm {
    pub const ZERO: FareyTerm = FareyTerm { num: 0, den: 1 };
    pub const ONE: FareyTerm = FareyTerm { num: 1, den: 1 };

    pub fn new(num: i64, den: i64) -> Self {
        FareyTerm { num, den }
    }

    pub fn to_rational(self) -> Rational64 {
        Rational64::new_raw(self.num, self.den)
    }
}

impl Ord for FareyTerm {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

impl PartialOrd for FareyTerm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FareyTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Number of terms of the Farey sequence of order `n`: `1 + sum_{k<=n} phi(k)`.
///
/// Totients come from a linear sieve.
pub fn farey_size(n: usize) -> usize {
    assert!(n >= 1, "Farey order must be positive");
    let mut phi = vec![0usize; n + 1];
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    if n >= 1 {
        phi[1] = 1;
    }
    for i in 2..=n {
        if !composite[i] {
            primes.push(i);
            phi[i] = i - 1;
        }
        for &p in &primes {
            let m = i * p;
            if m > n {
                break;
            }
            composite[m] = true;
            if i % p == 0 {
                phi[m] = phi[i] * p;
                break;
            }
            phi[m] = phi[i] * (p - 1);
        }
    }
    1 + phi.iter().sum::<usize>()
}

/// Walks the Farey sequence of order `n` one term at a time.
#[derive(Clone, Debug)]
pub struct FareyCursor {
    order: i64,
    prev: FareyTerm,
    curr: FareyTerm,
    index: usize,
}

impl FareyCursor {
    /// Cursor sitting on the term `1/n`, right after `0/1`.
    pub fn start(n: usize) -> Self {
        assert!(n >= 1, "Farey order must be positive");
        FareyCursor {
            order: n as i64,
            prev: FareyTerm::ZERO,
            curr: FareyTerm::new(1, n as i64),
            index: 1,
        }
    }

    /// Cursor positioned on an arbitrary pair of consecutive terms.
    pub fn from_pair(n: usize, prev: FareyTerm, curr: FareyTerm, index: usize) -> Self {
        debug_assert_eq!(curr.num * prev.den - prev.num * curr.den, 1);
        FareyCursor {
            order: n as i64,
            prev,
            curr,
            index,
        }
    }

    pub fn order(&self) -> usize {
        self.order as usize
    }

    pub fn previous(&self) -> FareyTerm {
        self.prev
    }

    pub fn current(&self) -> FareyTerm {
        self.curr
    }

    /// 0-based position of `current()` in the sequence.
    pub fn index(&self) -> usize {
        self.index
    }

    /// Moves to the next term and returns it, or `None` once `1/1` has been passed.
    pub fn advance(&mut self) -> Option<FareyTerm> {
        if self.curr == FareyTerm::ONE {
            return None;
        }
        let FareyTerm { num: a, den: b } = self.prev;
        let FareyTerm { num: c, den: d } = self.curr;
        let k = (self.order + b) / d;
        let next = FareyTerm::new(k * c - a, k * d - b);
        self.prev = self.curr;
        self.curr = next;
        self.index += 1;
        Some(next)
    }
}

pub fn farey_start(n: usize) -> FareyCursor {
    FareyCursor::start(n)
}

pub fn farey_next(cursor: &mut FareyCursor) -> Option<FareyTerm> {
    cursor.advance()
}

/// All terms of the Farey sequence of order `n`, from `0/1` to `1/1`.
pub fn farey_sequence(n: usize) -> impl Iterator<Item = FareyTerm> {
    let mut cursor = FareyCursor::start(n);
    std::iter::once(FareyTerm::ZERO)
        .chain(std::iter::once(cursor.current()))
        .chain(std::iter::from_fn(move || cursor.advance()))
}
