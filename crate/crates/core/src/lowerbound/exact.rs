//! Certified comparisons between sums of square roots of integers.

use num_bigint::BigUint;

/// `floor(sqrt(v) * 2^bits)` and `ceil(sqrt(v) * 2^bits)`.
fn sqrt_bounds(v: u128, bits: u32) -> (BigUint, BigUint) {
    let scaled = BigUint::from(v) << (2 * bits);
    let lo = scaled.sqrt();
    let hi = if &lo * &lo == scaled { lo.clone() } else { &lo + 1u32 };
    (lo, hi)
}

/// Bounds on `sum sqrt(v)` scaled by `2^bits`.
fn sum_bounds(norms2: &[u128], bits: u32) -> (BigUint, BigUint) {
    let mut lo = BigUint::from(0u32);
    let mut hi = BigUint::from(0u32);
    for &v in norms2 {
        let (l, h) = sqrt_bounds(v, bits);
        lo += l;
        hi += h;
    }
    (lo, hi)
}

const PRECISIONS: [u32; 5] = [32, 64, 128, 256, 512];

/// Smallest non-negative integer strictly greater than
/// `2 * sum sqrt(norms2[k])`, i.e. `floor(2 * sum) + 1`.
pub fn smallest_integer_above_twice_sum(norms2: &[u128]) -> u128 {
    for bits in PRECISIONS {
        let (lo, hi) = sum_bounds(norms2, bits);
        let floor_lo: BigUint = (lo << 1u32) >> bits;
        let floor_hi: BigUint = (hi << 1u32) >> bits;
        if floor_lo == floor_hi {
            return u128::try_from(floor_lo).expect("coordinate fits in u128") + 1;
        }
    }
    // Irrational sums separate at finite precision, and an exact integer
    // sum makes the bounds coincide, so this is unreachable in practice.
    let (_, hi) = sum_bounds(norms2, 512);
    u128::try_from((hi << 1u32) >> 512u32).expect("fits") + 1
}

/// Certifies `sqrt(big) > 2 * sum sqrt(rest[k])`.
pub fn dominates(big: u128, rest: &[u128]) -> bool {
    for bits in PRECISIONS {
        let (big_lo, big_hi) = sqrt_bounds(big, bits);
        let (lo, hi) = sum_bounds(rest, bits);
        if big_lo > (hi << 1u32) {
            return true;
        }
        if big_hi <= (lo << 1u32) {
            return false;
        }
    }
    false
}

/// `ceil(sqrt(v))`.
pub fn ceil_sqrt(v: u128) -> u128 {
    let (_, hi) = sqrt_bounds(v, 0);
    u128::try_from(hi).expect("fits")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_sum() {
        assert_eq!(smallest_integer_above_twice_sum(&[]), 1);
        assert!(dominates(1, &[]));
        assert!(!dominates(0, &[]));
    }

    #[test]
    fn perfect_squares_are_exact() {
        // 2 * (3 + 4) = 14 exactly, so the answer is 15.
        assert_eq!(smallest_integer_above_twice_sum(&[9, 16]), 15);
        // sqrt(196) = 14 is not strictly greater than 14.
        assert!(!dominates(196, &[9, 16]));
        assert!(dominates(197, &[9, 16]));
    }

    #[test]
    fn irrational_sums() {
        // 2 * (sqrt 2 + sqrt 3) = 6.2925...
        assert_eq!(smallest_integer_above_twice_sum(&[2, 3]), 7);
        assert!(dominates(40, &[2, 3]));
        assert!(!dominates(39, &[2, 3]));
    }

    #[test]
    fn ceil_sqrt_values() {
        assert_eq!(ceil_sqrt(0), 0);
        assert_eq!(ceil_sqrt(16), 4);
        assert_eq!(ceil_sqrt(17), 5);
        assert_eq!(ceil_sqrt(u64::MAX as u128 * u64::MAX as u128), u64::MAX as u128);
    }
}
