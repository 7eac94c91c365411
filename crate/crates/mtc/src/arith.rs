//! Small number theory on machine integers.

use num_integer::Integer;

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Prime factorization as (prime, exponent) pairs in increasing order.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
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

pub fn primes_of(n: u64) -> Vec<u64> {
    factor(n).into_iter().map(|(p, _)| p).collect()
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factor(n) == vec![(n, 1)]
}

pub fn totient(n: u64) -> u64 {
    factor(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// p-adic valuation; `valuation(0, p)` is 0 by convention here.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    if n == 0 {
        return 0;
    }
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

pub fn is_squarefree(n: u64) -> bool {
    n >= 1 && factor(n).iter().all(|&(_, e)| e == 1)
}

/// Square-free part: the unique square-free k with n = k * f^2.
pub fn squarefree_part(n: u64) -> u64 {
    factor(n)
        .into_iter()
        .filter(|&(_, e)| e % 2 == 1)
        .map(|(p, _)| p)
        .product()
}

pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

pub fn is_square(n: u64) -> bool {
    let r = isqrt(n);
    r * r == n
}

pub fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut r = 1u128;
    let mut base = (b % m) as u128;
    let m128 = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % m128;
        }
        base = base * base % m128;
        e >>= 1;
    }
    r as u64
}

/// Multiplicative order of a modulo m; None unless gcd(a, m) = 1.
pub fn mult_order(a: u64, m: u64) -> Option<u64> {
    if gcd(a % m, m) != 1 && m != 1 {
        return None;
    }
    let phi = totient(m);
    let mut ord = phi;
    for (p, _) in factor(phi) {
        while ord.is_multiple_of(p) && pow_mod(a, ord / p, m) == 1 {
            ord /= p;
        }
    }
    Some(ord)
}

/// Smallest positive primitive root modulo m, if the unit group is cyclic.
pub fn primitive_root(m: u64) -> Option<u64> {
    if m <= 2 {
        return Some(1);
    }
    let phi = totient(m);
    (1..m).find(|&g| mult_order(g, m) == Some(phi))
}

/// Modular inverse of a modulo m.
pub fn inv_mod(a: i64, m: i64) -> Option<i64> {
    let e = a.rem_euclid(m).extended_gcd(&m);
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m))
}

/// Chinese remaindering for pairwise coprime moduli.
pub fn crt(residues: &[(u64, u64)]) -> (u64, u64) {
    let mut x: u128 = 0;
    let mut m: u128 = 1;
    for &(r, n) in residues {
        let n128 = n as u128;
        let inv = inv_mod((m % n128) as i64, n as i64).expect("moduli must be coprime") as u128;
        let diff = ((r as u128 % n128) + n128 - x % n128) % n128;
        let t = diff * inv % n128;
        x += m * t;
        m *= n128;
        x %= m;
    }
    (x as u64, m as u64)
}

/// Legendre symbol (a/p) for an odd prime p.
pub fn legendre(a: i64, p: u64) -> i32 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=isqrt(n)).filter(|d| n.is_multiple_of(*d)).collect();
    let mut hi: Vec<u64> = out.iter().rev().map(|d| n / d).collect();
    if let (Some(a), Some(b)) = (out.last(), hi.first()) {
        if a == b {
            hi.remove(0);
        }
    }
    out.extend(hi);
    out
}

/// Möbius function.
pub fn moebius(n: u64) -> i32 {
    let f = factor(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        assert_eq!(factor(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(totient(16), 8);
        assert_eq!(totient(1), 1);
        assert_eq!(squarefree_part(72), 2);
        assert_eq!(primitive_root(5), Some(2));
        assert_eq!(primitive_root(7), Some(3));
        assert_eq!(primitive_root(9), Some(2));
        assert_eq!(primitive_root(8), None);
        assert_eq!(crt(&[(2, 5), (1, 12)]), (37, 60));
        assert_eq!(legendre(2, 5), -1);
        assert_eq!(legendre(-1, 7), -1);
        assert_eq!(divisors(36), vec![1, 2, 3, 4, 6, 9, 12, 18, 36]);
        assert_eq!(moebius(30), -1);
        assert_eq!(isqrt(99), 9);
        assert_eq!(mult_order(2, 7), Some(3));
    }
}
