//! p-adic helpers on exact rationals: valuations, reduction modulo prime
//! powers and p-adic fractional parts.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut f = 3u64;
    while f.saturating_mul(f) <= n {
        if n.is_multiple_of(f) {
            return false;
        }
        f += 2;
    }
    true
}

/// Exponent of `p` in a nonzero integer.
pub(crate) fn vp_int(n: &BigInt, p: u64) -> i64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut m = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// p-adic valuation of a rational; `None` for zero.
pub(crate) fn vp(r: &BigRational, p: u64) -> Option<i64> {
    if r.is_zero() {
        None
    } else {
        Some(vp_int(r.numer(), p) - vp_int(r.denom(), p))
    }
}

/// Strip `p` from a nonzero integer: `(v_p(n), (n / p^v) mod p)`.
pub(crate) fn split_int(n: &BigInt, p: u64) -> (i64, u64) {
    let pb = BigInt::from(p);
    let mut m = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            return (v, r.mod_floor(&pb).to_u64().expect("residue fits u64"));
        }
        m = q;
        v += 1;
    }
}

pub(crate) fn pow_mod(b: u64, mut e: u64, p: u64) -> u64 {
    let m = p as u128;
    let (mut acc, mut b) = (1u128, b as u128 % m);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc as u64
}

pub(crate) fn pow_p(p: u64, k: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), k as usize)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let g = a.extended_gcd(m);
    debug_assert!(g.gcd.is_one());
    g.x.mod_floor(m)
}

/// Reduce a p-integral rational modulo `modulus` (a power of p).
/// Returns `None` if the denominator is divisible by p.
pub(crate) fn reduce_mod(r: &BigRational, p: u64, modulus: &BigInt) -> Option<BigInt> {
    if modulus.is_one() {
        return Some(BigInt::zero());
    }
    if (r.denom() % BigInt::from(p)).is_zero() {
        return None;
    }
    let inv = mod_inverse(&r.denom().mod_floor(modulus), modulus);
    Some((r.numer().mod_floor(modulus) * inv).mod_floor(modulus))
}

pub(crate) fn reduce_mod_p(r: &BigRational, p: u64) -> Option<u64> {
    reduce_mod(r, p, &BigInt::from(p)).map(|v| v.to_u64().expect("residue fits u64"))
}

/// The p-adic fractional part of `r`: the unique `s` in `[0, 1)` with
/// denominator a power of p such that `r - s` is p-integral.
pub(crate) fn frac_p(r: &BigRational, p: u64) -> BigRational {
    if r.is_zero() {
        return BigRational::zero();
    }
    let k = vp_int(r.denom(), p);
    if k <= 0 {
        return BigRational::zero();
    }
    let pk = pow_p(p, k as u32);
    let scaled = r * BigRational::from_integer(pk.clone());
    let top = reduce_mod(&scaled, p, &pk).expect("scaled value is p-integral");
    BigRational::new(top, pk)
}

/// Reduce a rational exponent into `[0, 1)`.
pub(crate) fn mod_one(r: &BigRational) -> BigRational {
    let f = r - r.floor();
    if f.is_negative() {
        f + BigRational::one()
    } else {
        f
    }
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn valuations() {
        assert_eq!(vp(&q(50, 1), 5), Some(2));
        assert_eq!(vp(&q(3, 125), 5), Some(-3));
        assert_eq!(vp(&q(0, 1), 5), None);
    }

    #[test]
    fn fractional_parts() {
        assert_eq!(frac_p(&q(1, 5), 5), q(1, 5));
        assert_eq!(frac_p(&q(-1, 5), 5), q(4, 5));
        assert_eq!(frac_p(&q(7, 3), 5), q(0, 1));
        // 1/10 = (1/2)(1/5); 1/2 = 3 mod 5
        assert_eq!(frac_p(&q(1, 10), 5), q(3, 5));
        // the difference is p-integral
        let r = q(13, 250);
        let d = &r - frac_p(&r, 5);
        assert!(vp(&d, 5).is_none_or(|v| v >= 0));
    }

    #[test]
    fn split_off_p() {
        let z = |n: i64| BigInt::from(n);
        assert_eq!(split_int(&z(75), 5), (2, 3));
        assert_eq!(split_int(&z(-3), 5), (0, 2));
        assert_eq!(split_int(&z(7), 7), (1, 1));
        for n in 1..200i64 {
            let (v, r) = split_int(&z(n), 3);
            assert_eq!(v, vp_int(&z(n), 3));
            assert_eq!((n / 3i64.pow(v as u32)) % 3, r as i64);
        }
        assert_eq!(pow_mod(3, 4, 7), 81 % 7);
    }

    #[test]
    fn reduction() {
        assert_eq!(reduce_mod_p(&q(1, 2), 5), Some(3));
        assert_eq!(reduce_mod_p(&q(-1, 1), 7), Some(6));
        assert_eq!(reduce_mod_p(&q(1, 5), 5), None);
    }
}
