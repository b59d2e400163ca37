//! Exact factorials and binomials, memoized per thread.

use std::cell::RefCell;

use num_bigint::BigInt;
use num_traits::{One, Zero};

thread_local! {
    static FACTORIALS: RefCell<Vec<BigInt>> = RefCell::new(vec![BigInt::one()]);
}

/// `m!` as an exact integer.
pub fn factorial(m: u32) -> BigInt {
    FACTORIALS.with(|cell| {
        let mut table = cell.borrow_mut();
        while table.len() <= m as usize {
            let next = table.last().unwrap() * BigInt::from(table.len());
            table.push(next);
        }
        table[m as usize].clone()
    })
}

/// `a! / (a - k)!`, zero when `k > a`.
pub fn falling_factorial(a: u32, k: u32) -> BigInt {
    if k > a {
        return BigInt::zero();
    }
    ((a - k + 1)..=a).fold(BigInt::one(), |acc, v| acc * BigInt::from(v))
}

/// `C(a, k)`, zero when `k > a`.
pub fn binomial(a: u32, k: u32) -> BigInt {
    if k > a {
        return BigInt::zero();
    }
    falling_factorial(a, k) / factorial(k)
}
