//! Small exact-integer helpers shared by the search and classification code.

use num_integer::Integer;
use num_rational::Ratio;

/// Exact rational used throughout the crate.
pub type Q = Ratio<i64>;

pub fn q(num: i64, den: i64) -> Q {
    Ratio::new(num, den)
}

pub fn floor_q(x: Q) -> i64 {
    x.floor().to_integer()
}

pub fn ceil_q(x: Q) -> i64 {
    x.ceil().to_integer()
}

/// Inverse of `a` modulo `m` in `[0, m)`. `m = 1` yields `Some(0)`.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    if m <= 0 {
        return None;
    }
    let e = a.rem_euclid(m).extended_gcd(&m);
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m))
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// `1/2 + 1/t` for some integer `t >= 3`.
pub fn is_half_plus_unit_fraction(x: Q) -> bool {
    let d = x - q(1, 2);
    d > q(0, 1) && *d.numer() == 1 && *d.denom() >= 3
}
