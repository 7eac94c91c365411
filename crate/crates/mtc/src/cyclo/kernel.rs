//! Coefficient kernels, generic over the integer type.
//!
//! Every routine returns `None` on overflow so callers can run the i128 path
//! first and redo the work over `BigInt` only when needed.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed, ToPrimitive};

use super::table::table;
use crate::arith;

pub trait Coeff:
    Clone + Debug + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul + From<i64>
{
    fn small(&self) -> Option<i64>;
    fn big(&self) -> BigInt;
}

impl Coeff for i128 {
    fn small(&self) -> Option<i64> {
        i64::try_from(*self).ok()
    }
    fn big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coeff for BigInt {
    fn small(&self) -> Option<i64> {
        self.to_i64()
    }
    fn big(&self) -> BigInt {
        self.clone()
    }
}

/// Value Σ num[j] ζ_n^j / den in the power basis of ℚ(ζ_n).
#[derive(Clone, Debug)]
pub struct Raw<T> {
    pub n: usize,
    pub num: Vec<T>,
    pub den: T,
}

#[inline]
fn fma<T: Coeff>(acc: &mut T, a: &T, b: &T) -> Option<()> {
    *acc = acc.checked_add(&a.checked_mul(b)?)?;
    Some(())
}

#[inline]
fn add_into<T: Coeff>(acc: &mut T, a: &T) -> Option<()> {
    *acc = acc.checked_add(a)?;
    Some(())
}

/// Reduce a length-n exponent vector modulo Φ_n.
pub fn reduce<T: Coeff>(n: usize, raw: Vec<T>) -> Option<Vec<T>> {
    let t = table(n);
    let phi = t.phi;
    let mut raw = raw;
    let tail: Vec<T> = raw.split_off(phi);
    for (off, c) in tail.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for &(j, r) in t.row(phi + off) {
            fma(&mut raw[j as usize], c, &T::from(r))?;
        }
    }
    Some(raw)
}

/// Fold a raw exponent vector at conductor 2m (m odd) down to m using ζ_{2m} = −ζ_m^{(m+1)/2}.
pub fn fold_twice_odd<T: Coeff>(n: usize, raw: Vec<T>) -> Option<(usize, Vec<T>)> {
    debug_assert!(n % 4 == 2);
    let m = n / 2;
    let h = m.div_ceil(2);
    let mut out = vec![T::zero(); m];
    for (j, c) in raw.into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = (j * h) % m;
        if j % 2 == 0 {
            add_into(&mut out[e], &c)?;
        } else {
            out[e] = out[e].checked_sub(&c)?;
        }
    }
    Some((m, out))
}

/// Divide out the common content so gcd(num, den) = 1 and den > 0.
pub fn normalize<T: Coeff>(mut num: Vec<T>, mut den: T) -> (Vec<T>, T) {
    if num.iter().all(|c| c.is_zero()) {
        return (vec![T::zero()], T::one());
    }
    let mut g = den.abs();
    for c in &num {
        if g.is_one() {
            break;
        }
        g = g.gcd(c);
    }
    if den.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for c in num.iter_mut() {
            *c = c.div_floor(&g);
        }
        den = den.div_floor(&g);
    }
    (num, den)
}

/// Lift a reduced vector from conductor m to a multiple n, reduced mod Φ_n.
pub fn lift<T: Coeff>(m: usize, num: &[T], n: usize) -> Option<Vec<T>> {
    if m == n {
        return Some(num.to_vec());
    }
    let s = n / m;
    let mut raw = vec![T::zero(); n];
    for (j, c) in num.iter().enumerate() {
        if !c.is_zero() {
            raw[(j * s) % n] = c.clone();
        }
    }
    reduce(n, raw)
}

fn inv_mod(a: usize, m: usize) -> usize {
    if m == 1 {
        0
    } else {
        arith::inv_mod(a as i64, m as i64).expect("coprime") as usize
    }
}

/// Try to rewrite x ∈ ℚ(ζ_n) in a subfield ℚ(ζ_{n/p}) for one prime p.
fn descend_once<T: Coeff>(n: usize, x: &[T]) -> Option<Option<(usize, Vec<T>)>> {
    for (p, e) in arith::factor(n as u64) {
        let p = p as usize;
        if (p == 2 && e >= 3) || (p != 2 && e >= 2) {
            // Φ_n(x) = Φ_{n/p}(x^p): only exponents divisible by p may survive
            if x.iter().enumerate().all(|(j, c)| j % p == 0 || c.is_zero()) {
                let y: Vec<T> = x.iter().step_by(p).cloned().collect();
                return Some(Some((n / p, y)));
            }
            continue;
        }
        // q = p (odd, exactly dividing) or q = 4 (exactly dividing)
        let q = if p == 2 { 4 } else { p };
        if p == 2 && e != 2 {
            continue;
        }
        let m = n / q;
        let u = inv_mod(q % m.max(1), m);
        let v = inv_mod(m % q, q);
        let half = if p == 2 { 2 } else { 1 };
        let mut a0 = vec![T::zero(); m];
        let mut a1 = vec![T::zero(); m];
        for (j, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = (v * j) % q;
            let idx = if m == 1 { 0 } else { (u * j) % m };
            if t == 0 {
                add_into(&mut a0[idx], c)?;
            } else if t == half {
                add_into(&mut a1[idx], c)?;
            }
        }
        let mut y = a0;
        for (a, b) in y.iter_mut().zip(a1.iter()) {
            *a = a.checked_sub(b)?;
        }
        let y = reduce(m, y)?;
        if lift(m, &y, n)?.as_slice() == x {
            return Some(Some((m, y)));
        }
    }
    Some(None)
}

/// Reduce a raw length-n vector, fold 2 mod 4 conductors, descend to the
/// minimal conductor and normalize.
pub fn finish<T: Coeff>(n: usize, raw: Vec<T>, den: T) -> Option<Raw<T>> {
    let (mut n, raw) = if n % 4 == 2 {
        fold_twice_odd(n, raw)?
    } else {
        (n, raw)
    };
    let mut num = reduce(n, raw)?;
    if num.iter().all(|c| c.is_zero()) {
        return Some(Raw { n: 1, num: vec![T::zero()], den: T::one() });
    }
    while n > 1 {
        match descend_once(n, &num)? {
            Some((m, y)) => {
                n = m;
                num = y;
            }
            None => break,
        }
    }
    let (num, den) = normalize(num, den);
    Some(Raw { n, num, den })
}

pub fn add<T: Coeff>(a: &Raw<T>, b: &Raw<T>, negate_b: bool) -> Option<Raw<T>> {
    let n = arith::lcm(a.n as u64, b.n as u64) as usize;
    let g = a.den.gcd(&b.den);
    let sa = b.den.div_floor(&g);
    let sb = a.den.div_floor(&g);
    let den = a.den.checked_mul(&sa)?;
    let mut raw = vec![T::zero(); n];
    let (ka, kb) = (n / a.n, n / b.n);
    for (j, c) in a.num.iter().enumerate() {
        if !c.is_zero() {
            fma(&mut raw[(j * ka) % n], c, &sa)?;
        }
    }
    let sb = if negate_b { -sb } else { sb };
    for (j, c) in b.num.iter().enumerate() {
        if !c.is_zero() {
            fma(&mut raw[(j * kb) % n], c, &sb)?;
        }
    }
    finish(n, raw, den)
}

pub fn mul<T: Coeff>(a: &Raw<T>, b: &Raw<T>) -> Option<Raw<T>> {
    let n = arith::lcm(a.n as u64, b.n as u64) as usize;
    let den = a.den.checked_mul(&b.den)?;
    let (ka, kb) = (n / a.n, n / b.n);
    let mut raw = vec![T::zero(); n];
    let bnz: Vec<(usize, &T)> = b
        .num
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| ((j * kb) % n, c))
        .collect();
    for (i, c) in a.num.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let ei = (i * ka) % n;
        for &(ej, d) in &bnz {
            let e = ei + ej;
            let e = if e >= n { e - n } else { e };
            fma(&mut raw[e], c, d)?;
        }
    }
    finish(n, raw, den)
}

/// σ_k with k already reduced mod n and coprime to n.
pub fn galois<T: Coeff>(a: &Raw<T>, k: usize) -> Option<Raw<T>> {
    let n = a.n;
    let mut raw = vec![T::zero(); n];
    for (j, c) in a.num.iter().enumerate() {
        if !c.is_zero() {
            raw[(j * k) % n] = c.clone();
        }
    }
    let num = reduce(n, raw)?;
    Some(Raw { n, num, den: a.den.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(n: usize, num: Vec<i128>) -> Raw<i128> {
        Raw { n, num, den: 1 }
    }

    #[test]
    fn zeta6_folds_to_conductor_3() {
        let mut v = vec![0i128; 6];
        v[1] = 1;
        let r = finish(6, v, 1i128).unwrap();
        assert_eq!(r.n, 3);
        // −ζ_3^2 = 1 + ζ_3 in the basis {1, ζ_3}
        assert_eq!(r.num, vec![1, 1]);
    }

    #[test]
    fn i_squared_is_rational() {
        let i = raw(4, vec![0, 1]);
        let r = mul(&i, &i).unwrap();
        assert_eq!((r.n, r.num, r.den), (1, vec![-1], 1));
    }

    #[test]
    fn sqrt2_lives_at_8() {
        let mut v = vec![0i128; 8];
        v[1] = 1;
        v[7] = 1;
        let r = finish(8, v, 1).unwrap();
        assert_eq!(r.n, 8);
        let sq = mul(&r, &r).unwrap();
        assert_eq!((sq.n, sq.num), (1, vec![2]));
    }

    #[test]
    fn overflow_reports_none() {
        let a = Raw { n: 1, num: vec![i128::MAX / 2 + 1], den: 1 };
        assert!(add(&a, &a, false).is_none());
        let b = Raw { n: 1, num: vec![BigInt::from(i128::MAX / 2 + 1)], den: BigInt::from(1) };
        assert!(add(&b, &b, false).is_some());
    }
}
