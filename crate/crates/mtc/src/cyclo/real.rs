//! Exact sign of real cyclotomic numbers by rational interval refinement.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::CycNumber;
use crate::Rational;

#[derive(Clone, Debug)]
struct Interval {
    lo: Rational,
    hi: Rational,
}

fn pow2(p: u32) -> BigInt {
    BigInt::one() << p
}

/// Round outward to dyadic rationals with p fractional bits.
fn widen(lo: &Rational, hi: &Rational, p: u32) -> Interval {
    let s = Rational::from_integer(pow2(p));
    let l = (lo * &s).floor() / &s;
    let h = (hi * &s).ceil() / &s;
    Interval { lo: l, hi: h }
}

/// Bracket atan(1/x) between consecutive partial sums of its alternating series.
fn atan_inv(x: u64, p: u32) -> Interval {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let eps = Rational::new(BigInt::one(), pow2(p + 4));
    let mut sum = Rational::zero();
    let mut pw = x.clone();
    let mut k: u64 = 0;
    loop {
        let term = Rational::new(BigInt::one(), &pw * BigInt::from(2 * k + 1));
        let next = if k.is_multiple_of(2) { &sum + &term } else { &sum - &term };
        if term < eps {
            let (lo, hi) = if next < sum { (next, sum) } else { (sum, next) };
            return widen(&lo, &hi, p + 2);
        }
        sum = next;
        pw = &pw * &x2;
        k += 1;
    }
}

fn pi_bounds(p: u32) -> Interval {
    let a = atan_inv(5, p + 6);
    let b = atan_inv(239, p + 6);
    let s16 = Rational::from_integer(BigInt::from(16));
    let s4 = Rational::from_integer(BigInt::from(4));
    let lo = &s16 * &a.lo - &s4 * &b.hi;
    let hi = &s16 * &a.hi - &s4 * &b.lo;
    widen(&lo, &hi, p + 2)
}

/// Taylor partial sums of cos at an exact rational 0 ≤ x ≤ 2, which bracket cos(x).
fn cos_at(x: &Rational, p: u32) -> Interval {
    let x2 = x * x;
    let eps = Rational::new(BigInt::one(), pow2(p + 4));
    let mut term = Rational::one();
    let mut sum = Rational::one();
    let mut k: u64 = 1;
    loop {
        term = -(&term * &x2) / Rational::from_integer(BigInt::from((2 * k - 1) * (2 * k)));
        let next = &sum + &term;
        if term.abs() < eps {
            let (lo, hi) = if next < sum { (next, sum) } else { (sum, next) };
            return widen(&lo, &hi, p + 2);
        }
        sum = next;
        k += 1;
    }
}

/// Enclosure of cos(2π j / n).
fn cos_2pi(j: u64, n: u64, pi: &Interval, p: u32) -> Interval {
    let j = j % n;
    // fold the angle into [0, π/2] keeping track of the sign
    let (mut a, b) = (j, n);
    if 2 * a > b {
        a = b - a;
    }
    let mut sign = 1;
    if 4 * a > b {
        // cos(2π a/b) = −cos(π (b − 2a)/b)
        sign = -1;
    }
    let (num, den) = if sign == 1 { (2 * a, b) } else { (b - 2 * a, b) };
    // angle = π · num / den, with num/den ≤ 1/2
    let f = Rational::new(BigInt::from(num), BigInt::from(den));
    let x_lo = &pi.lo * &f;
    let x_hi = &pi.hi * &f;
    // cos is decreasing on [0, π/2]
    let lo = cos_at(&x_hi, p).lo;
    let hi = cos_at(&x_lo, p).hi;
    if sign == 1 {
        Interval { lo, hi }
    } else {
        Interval { lo: -hi, hi: -lo }
    }
}

fn real_part_enclosure(a: &CycNumber, p: u32) -> Interval {
    let n = a.conductor();
    let pi = pi_bounds(p);
    let mut lo = Rational::zero();
    let mut hi = Rational::zero();
    for (j, c) in a.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let iv = cos_2pi(j as u64, n, &pi, p);
        if c.is_positive() {
            lo += c * &iv.lo;
            hi += c * &iv.hi;
        } else {
            lo += c * &iv.hi;
            hi += c * &iv.lo;
        }
    }
    Interval { lo, hi }
}

impl CycNumber {
    /// Sign of a real cyclotomic number, decided exactly; None if not real.
    pub fn real_sign(&self) -> Option<Ordering> {
        if !self.is_real() {
            return None;
        }
        if let Some(q) = self.as_rational() {
            return Some(q.cmp(&Rational::zero()));
        }
        let mut p = 48;
        loop {
            let iv = real_part_enclosure(self, p);
            if iv.lo.is_positive() {
                return Some(Ordering::Greater);
            }
            if iv.hi.is_negative() {
                return Some(Ordering::Less);
            }
            p *= 2;
        }
    }

    /// Compare two real cyclotomic numbers exactly.
    pub fn cmp_real(&self, other: &Self) -> Option<Ordering> {
        (self - other).real_sign()
    }
}
