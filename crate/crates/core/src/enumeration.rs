//! Exact ideal counts of fences.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{FenceError, Result};
use crate::fence::Composition;

/// Number of ideals of the fence of `alpha`, by the continuant recurrence
/// `I(α_1..α_k) = α_k·I(α_1..α_{k−1}) + I(α_1..α_{k−2})` with `I() = 1`
/// and `I(a) = a`.
pub fn count_ideals(alpha: &Composition) -> BigUint {
    let mut prev = BigUint::one();
    let mut cur = BigUint::from(alpha.part(1));
    for &a in &alpha.parts()[1..] {
        let next = &cur * BigUint::from(a) + &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// The explicit polynomial for two to five parts.
pub fn closed_form_count(alpha: &Composition) -> Result<BigUint> {
    let p: Vec<BigUint> = alpha.parts().iter().map(|&x| BigUint::from(x)).collect();
    let one = BigUint::one();
    Ok(match p.as_slice() {
        [a, b] => a * b + one,
        [a, b, c] => a * b * c + a + c,
        [a, b, c, d] => a * b * c * d + a * b + a * d + c * d + one,
        [a, b, c, d, e] => {
            a * b * c * d * e + a * b * c + a * b * e + a * d * e + c * d * e + a + c + e
        }
        _ => {
            return Err(FenceError::OutOfRange(format!(
                "closed forms cover 2 to 5 parts, got {}",
                p.len()
            )))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(count_ideals(&c("2,2")), BigUint::from(5u32));
        assert_eq!(count_ideals(&c("5,4")), BigUint::from(21u32));
        assert_eq!(count_ideals(&c("4,3,4")), BigUint::from(56u32));
        assert_eq!(count_ideals(&c("3,3,2")), BigUint::from(23u32));
        assert_eq!(count_ideals(&c("6")), BigUint::from(6u32));
        assert_eq!(closed_form_count(&c("5,4")).unwrap(), BigUint::from(21u32));
    }

    #[test]
    fn four_equal_parts() {
        for a in 2..10usize {
            let alpha = Composition::constant(a, 4).unwrap();
            let want = BigUint::from(a.pow(4) + 3 * a * a + 1);
            assert_eq!(count_ideals(&alpha), want);
            assert_eq!(closed_form_count(&alpha).unwrap(), want);
        }
    }

    #[test]
    fn closed_form_range() {
        assert!(closed_form_count(&c("4")).is_err());
        assert!(closed_form_count(&c("2,2,2,2,2,2")).is_err());
    }

    #[test]
    fn large_counts_do_not_overflow() {
        let alpha = Composition::constant(1000, 12).unwrap();
        assert!(count_ideals(&alpha).bits() > 110);
    }
}
