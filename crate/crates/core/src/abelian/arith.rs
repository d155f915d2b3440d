//! Prime factorizations and the arithmetic functions λ and τ.

use crate::error::{Error, Result};

/// Prime factorization as `(prime, exponent)` pairs in increasing prime order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

/// `Some((p, e))` when `n = p^e` with `e >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n).as_slice() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}

/// Number of prime factors of `n` counted with multiplicity.
pub fn lambda_of(n: i64) -> Result<u64> {
    if n <= 0 {
        return Err(Error::InvalidArgument(format!("lambda of non-positive {n}")));
    }
    Ok(factorize(n as u64).iter().map(|&(_, e)| e as u64).sum())
}

/// `Σ αᵢ(pᵢ − 1)` over the factorization `n = Π pᵢ^αᵢ`.
pub fn tau_of(n: i64) -> Result<u64> {
    if n <= 0 {
        return Err(Error::InvalidArgument(format!("tau of non-positive {n}")));
    }
    Ok(factorize(n as u64)
        .iter()
        .map(|&(p, e)| e as u64 * (p - 1))
        .sum())
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn lambda_tau_examples() {
        assert_eq!(lambda_of(12).unwrap(), 3);
        assert_eq!(tau_of(12).unwrap(), 4);
        assert_eq!(lambda_of(1).unwrap(), 0);
        assert_eq!(tau_of(1).unwrap(), 0);
        assert_eq!(tau_of(9).unwrap(), 4);
        assert!(lambda_of(0).is_err());
        assert!(tau_of(-3).is_err());
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
        assert!(is_prime(13) && !is_prime(15) && !is_prime(1));
    }

    proptest! {
        #[test]
        fn additive_over_coprime(a in 1i64..2000, b in 1i64..2000) {
            prop_assume!(gcd(a as u64, b as u64) == 1);
            prop_assert_eq!(lambda_of(a * b).unwrap(), lambda_of(a).unwrap() + lambda_of(b).unwrap());
            prop_assert_eq!(tau_of(a * b).unwrap(), tau_of(a).unwrap() + tau_of(b).unwrap());
        }

        #[test]
        fn factorization_multiplies_back(n in 1u64..100_000) {
            let back: u64 = factorize(n).iter().map(|&(p, e)| p.pow(e)).product();
            prop_assert_eq!(back, n);
        }
    }
}
