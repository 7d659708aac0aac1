//! Closed-form counts, computed exactly.

use num_bigint::BigUint;
use num_traits::{One, Zero};

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // acc · (n − i) is divisible by i + 1 after the multiplication.
        acc *= n - i;
        acc = exact_div(acc, BigUint::from(i + 1));
    }
    acc
}

/// Division that must leave no remainder; a remainder means a counting
/// formula was misapplied.
fn exact_div(a: BigUint, b: BigUint) -> BigUint {
    let q = &a / &b;
    assert!(
        (&q * &b) == a,
        "inexact division {a} / {b} in a counting formula"
    );
    q
}

/// Ternary trees with `n` nodes: C(3n, n) / (2n + 1).
pub fn count_ternary(n: u64) -> BigUint {
    exact_div(binomial(3 * n, n), BigUint::from(2 * n + 1))
}

/// Fish of size `n`: 2·C(3n, n) / ((n + 1)(2n + 1)). Zero for `n = 0`.
pub fn count_fish(n: u64) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    exact_div(
        binomial(3 * n, n) * 2u32,
        BigUint::from((n + 1) * (2 * n + 1)),
    )
}

/// Ordered pairs of ternary trees with `n` nodes in total:
/// C(3n + 1, n) / (n + 1).
pub fn count_pairs(n: u64) -> BigUint {
    exact_div(binomial(3 * n + 1, n), BigUint::from(n + 1))
}

/// Left ternary trees with `n` nodes. The empty tree is the only one with
/// zero nodes.
pub fn count_left(n: u64) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    exact_div(count_ternary(n) * 2u32, BigUint::from(n + 1))
}

/// Left ternary trees with `i + 1` nodes of even abscissa and `j` of odd
/// abscissa.
pub fn count_left_refined(i: u64, j: u64) -> BigUint {
    exact_div(
        binomial(2 * i + j + 1, j) * binomial(i + 2 * j + 1, i),
        BigUint::from((i + 1) * (j + 1)),
    )
}

/// Symmetric fish of size `2n + 1`.
pub fn count_symmetric(n: u64) -> BigUint {
    count_pairs(n)
}

/// Symmetric fish of size `2n + 1` with an odd number of tails.
pub fn count_symmetric_odd_tails(n: u64) -> BigUint {
    count_ternary(n)
}

/// Symmetric fish of size `2n + 1` with an even number of tails.
pub fn count_symmetric_even_tails(n: u64) -> BigUint {
    exact_div(binomial(3 * n, n + 1), BigUint::from(2 * n + 1))
}

/// Symmetric fish counted by fish size; even sizes have none.
pub fn count_symmetric_by_size(size: u64) -> BigUint {
    if size.is_multiple_of(2) {
        BigUint::zero()
    } else {
        count_symmetric((size - 1) / 2)
    }
}
