//! Integer factorization helpers for invariant factors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Prime factorization of `|n|` by trial division, ascending primes.
/// Invariant factors met in practice are small; this does not try to be
/// clever about large semiprimes.
pub fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if n.is_multiple_of(&p) {
            let mut e = 0;
            while n.is_multiple_of(&p) {
                n /= &p;
                e += 1;
            }
            out.push((p.clone(), e));
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if !n.is_one() {
        out.push((n, 1));
    }
    out
}

/// Positive divisors of `|n|`, ascending. Empty for zero.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    if n.is_zero() {
        return Vec::new();
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factorize(n) {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut q = d.clone();
            next.push(q.clone());
            for _ in 0..e {
                q *= &p;
                next.push(q.clone());
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

/// Splits `n = p^a * m` with `p ∤ m`; returns `(a, m)`.
pub fn split_prime(n: &BigInt, p: &BigInt) -> (u32, BigInt) {
    let mut m = n.clone();
    let mut a = 0;
    while !m.is_zero() && m.is_multiple_of(p) {
        m /= p;
        a += 1;
    }
    (a, m)
}
