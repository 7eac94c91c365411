use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::kernel::{self, Coeff, Raw};
use crate::arith;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("galois index {k} is not coprime to conductor {n}")]
    NotCoprime { k: i64, n: u64 },
}

/// Exact element of a cyclotomic field, stored in the power basis of its
/// minimal conductor over a common positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNumber {
    n: u32,
    repr: Repr,
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(Box<[i64]>, i64),
    Big(Box<[BigInt]>, BigInt),
}

fn pack<T: Coeff>(r: Raw<T>) -> CycNumber {
    let n = u32::try_from(r.n).expect("conductor overflow");
    let small: Option<Vec<i64>> = r.num.iter().map(|c| c.small()).collect();
    match (small, r.den.small()) {
        (Some(num), Some(den)) => CycNumber { n, repr: Repr::Small(num.into(), den) },
        _ => CycNumber {
            n,
            repr: Repr::Big(r.num.iter().map(|c| c.big()).collect(), r.den.big()),
        },
    }
}

impl CycNumber {
    fn raw_small(&self) -> Option<Raw<i128>> {
        match &self.repr {
            Repr::Small(num, den) => Some(Raw {
                n: self.n as usize,
                num: num.iter().map(|&c| c as i128).collect(),
                den: *den as i128,
            }),
            Repr::Big(..) => None,
        }
    }

    fn raw_big(&self) -> Raw<BigInt> {
        match &self.repr {
            Repr::Small(num, den) => Raw {
                n: self.n as usize,
                num: num.iter().map(|&c| BigInt::from(c)).collect(),
                den: BigInt::from(*den),
            },
            Repr::Big(num, den) => Raw { n: self.n as usize, num: num.to_vec(), den: den.clone() },
        }
    }

    fn binary<F, G>(&self, other: &Self, small: F, big: G) -> Self
    where
        F: Fn(&Raw<i128>, &Raw<i128>) -> Option<Raw<i128>>,
        G: Fn(&Raw<BigInt>, &Raw<BigInt>) -> Option<Raw<BigInt>>,
    {
        if let (Some(a), Some(b)) = (self.raw_small(), other.raw_small()) {
            if let Some(r) = small(&a, &b) {
                return pack(r);
            }
        }
        pack(big(&self.raw_big(), &other.raw_big()).expect("bigint arithmetic cannot overflow"))
    }

    fn unary<F, G>(&self, small: F, big: G) -> Self
    where
        F: Fn(&Raw<i128>) -> Option<Raw<i128>>,
        G: Fn(&Raw<BigInt>) -> Option<Raw<BigInt>>,
    {
        if let Some(a) = self.raw_small() {
            if let Some(r) = small(&a) {
                return pack(r);
            }
        }
        pack(big(&self.raw_big()).expect("bigint arithmetic cannot overflow"))
    }

    pub fn zero() -> Self {
        Self::from_i64(0)
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    pub fn from_i64(v: i64) -> Self {
        CycNumber { n: 1, repr: Repr::Small(vec![v].into(), 1) }
    }

    pub fn from_integer(v: &BigInt) -> Self {
        pack(Raw { n: 1, num: vec![v.clone()], den: BigInt::one() })
    }

    pub fn from_rational(q: &Rational) -> Self {
        pack(Raw { n: 1, num: vec![q.numer().clone()], den: q.denom().clone() })
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        Self::from_rational(&Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// ζ_n^k.
    pub fn zeta(n: u64, k: i64) -> Self {
        Self::canonicalize(n, &[(k, Rational::one())])
    }

    /// Build the canonical conductor-minimal form of Σ c ζ_n^k.
    pub fn canonicalize(n: u64, terms: &[(i64, Rational)]) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let n = n as usize;
        let mut den = BigInt::one();
        for (_, c) in terms {
            den = den.lcm(c.denom());
        }
        let mut raw = vec![BigInt::zero(); n];
        for (k, c) in terms {
            let e = k.rem_euclid(n as i64) as usize;
            raw[e] += c.numer() * (&den / c.denom());
        }
        let small: Option<Vec<i128>> = raw.iter().map(|c| c.small().map(i128::from)).collect();
        if let (Some(s), Some(d)) = (small, den.small()) {
            if let Some(r) = kernel::finish(n, s, d as i128) {
                return pack(r);
            }
        }
        pack(kernel::finish(n, raw, den).expect("bigint arithmetic cannot overflow"))
    }

    pub fn conductor(&self) -> u64 {
        self.n as u64
    }

    pub fn degree(&self) -> usize {
        match &self.repr {
            Repr::Small(v, _) => v.len(),
            Repr::Big(v, _) => v.len(),
        }
    }

    /// Common denominator of the power-basis coordinates.
    pub fn denominator(&self) -> BigInt {
        match &self.repr {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(_, d) => d.clone(),
        }
    }

    /// Numerators over the common denominator.
    pub fn numerators(&self) -> Vec<BigInt> {
        match &self.repr {
            Repr::Small(v, _) => v.iter().map(|&c| BigInt::from(c)).collect(),
            Repr::Big(v, _) => v.to_vec(),
        }
    }

    /// Power-basis coordinates, length φ(conductor).
    pub fn coeffs(&self) -> Vec<Rational> {
        let d = self.denominator();
        self.numerators()
            .into_iter()
            .map(|c| Rational::new(c, d.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Small(v, _) => self.n == 1 && v[0] == 0,
            Repr::Big(..) => false,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Small(v, d) => self.n == 1 && v[0] == 1 && *d == 1,
            Repr::Big(..) => false,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.n == 1
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.n == 1 {
            Some(self.coeffs().remove(0))
        } else {
            None
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    pub fn as_i64(&self) -> Option<i64> {
        match &self.repr {
            Repr::Small(v, 1) if self.n == 1 => Some(v[0]),
            _ => None,
        }
    }

    pub fn is_real(&self) -> bool {
        self.n <= 2 || self.conj() == *self
    }

    pub fn galois(&self, k: i64) -> Result<Self, CycError> {
        let n = self.n as i64;
        if arith::gcd(k.unsigned_abs(), n as u64) != 1 {
            return Err(CycError::NotCoprime { k, n: n as u64 });
        }
        let k = k.rem_euclid(n) as usize;
        if k == 1 % (n as usize) || self.n == 1 {
            return Ok(self.clone());
        }
        Ok(self.unary(|a| kernel::galois(a, k), |a| kernel::galois(a, k)))
    }

    /// Complex conjugate, σ_{−1}.
    pub fn conj(&self) -> Self {
        self.galois(-1).expect("-1 is a unit")
    }

    pub fn scale(&self, q: &Rational) -> Self {
        self * &CycNumber::from_rational(q)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = CycNumber::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn powi(&self, e: i64) -> Result<Self, CycError> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// Distinct Galois conjugates, starting with self.
    pub fn conjugates(&self) -> Vec<Self> {
        let n = self.n as u64;
        let mut out = vec![self.clone()];
        for k in 2..n.max(2) {
            if arith::gcd(k, n) != 1 {
                continue;
            }
            let c = self.galois(k as i64).expect("coprime");
            if !out.contains(&c) {
                out.push(c);
            }
        }
        out
    }

    /// Field norm from ℚ(self) down to ℚ.
    pub fn norm(&self) -> Rational {
        self.conjugates()
            .iter()
            .fold(CycNumber::one(), |acc, c| &acc * c)
            .as_rational()
            .expect("product over a Galois orbit is rational")
    }

    pub fn inv(&self) -> Result<Self, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(CycNumber::from_rational(&q.recip()));
        }
        let conj = self.conjugates();
        let others = conj[1..]
            .iter()
            .fold(CycNumber::one(), |acc, c| &acc * c);
        let norm = (&others * self)
            .as_rational()
            .expect("product over a Galois orbit is rational");
        Ok(others.scale(&norm.recip()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, CycError> {
        Ok(self * &other.inv()?)
    }

    /// Principal square root of a nonzero integer inside a cyclotomic field.
    pub fn embed_sqrt(m: i64) -> Self {
        assert!(m != 0, "embed_sqrt(0) is not defined");
        let a = m.unsigned_abs();
        let k = arith::squarefree_part(a);
        let f = arith::isqrt(a / k);
        let mut root = CycNumber::from_i64(f as i64);
        for p in arith::primes_of(k) {
            root = &root * &sqrt_prime(p);
        }
        if m < 0 {
            root = &root * &CycNumber::zeta(4, 1);
        }
        root
    }

    /// Least n ≥ 1 with self^n = 1, if self is a root of unity.
    pub fn order_of_root(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let c = self.n as u64;
        let cands: &[u64] = if c % 2 == 1 { &[c, 2 * c] } else { &[c] };
        for &d in cands {
            if self.pow(d).is_one() {
                let mut ord = d;
                for p in arith::primes_of(d) {
                    while ord % p == 0 && self.pow(ord / p).is_one() {
                        ord /= p;
                    }
                }
                return Some(ord);
            }
        }
        None
    }

    fn cmp_coeffs(&self, other: &Self) -> Ordering {
        let (da, db) = (self.denominator(), other.denominator());
        for (a, b) in self.numerators().iter().zip(other.numerators().iter()) {
            let o = (a * &db).cmp(&(b * &da));
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    }
}

fn sqrt_prime(p: u64) -> CycNumber {
    if p == 2 {
        return &CycNumber::zeta(8, 1) + &CycNumber::zeta(8, 7);
    }
    // quadratic Gauss sum: √p if p ≡ 1 mod 4, i√p if p ≡ 3 mod 4
    let terms: Vec<(i64, Rational)> = (0..p)
        .map(|j| (((j * j) % p) as i64, Rational::one()))
        .collect();
    let g = CycNumber::canonicalize(p, &terms);
    if p % 4 == 1 {
        g
    } else {
        &g * &CycNumber::zeta(4, 3)
    }
}

impl PartialOrd for CycNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A total order for deterministic sorting; not the order of the reals.
impl Ord for CycNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| self.cmp_coeffs(other))
    }
}

impl Default for CycNumber {
    fn default() -> Self {
        CycNumber::zero()
    }
}

impl<'a> Add<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn add(self, rhs: &CycNumber) -> CycNumber {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        self.binary(rhs, |a, b| kernel::add(a, b, false), |a, b| kernel::add(a, b, false))
    }
}

impl<'a> Sub<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn sub(self, rhs: &CycNumber) -> CycNumber {
        if rhs.is_zero() {
            return self.clone();
        }
        self.binary(rhs, |a, b| kernel::add(a, b, true), |a, b| kernel::add(a, b, true))
    }
}

impl<'a> Mul<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn mul(self, rhs: &CycNumber) -> CycNumber {
        if self.is_zero() || rhs.is_zero() {
            return CycNumber::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        self.binary(rhs, kernel::mul, kernel::mul)
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        let repr = match &self.repr {
            Repr::Small(v, d) => match v.iter().map(|c| c.checked_neg()).collect::<Option<Vec<_>>>() {
                Some(v) => Repr::Small(v.into(), *d),
                None => Repr::Big(v.iter().map(|&c| -BigInt::from(c)).collect(), BigInt::from(*d)),
            },
            Repr::Big(v, d) => {
                let r = Raw { n: self.n as usize, num: v.iter().map(|c| -c).collect(), den: d.clone() };
                return pack(r);
            }
        };
        CycNumber { n: self.n, repr }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $m(self, rhs: CycNumber) -> CycNumber { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $m(self, rhs: &CycNumber) -> CycNumber { (&self).$m(rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        -&self
    }
}

impl std::iter::Sum for CycNumber {
    fn sum<I: Iterator<Item = CycNumber>>(iter: I) -> CycNumber {
        iter.fold(CycNumber::zero(), |a, b| &a + &b)
    }
}

impl From<i64> for CycNumber {
    fn from(v: i64) -> Self {
        CycNumber::from_i64(v)
    }
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs = self.coeffs();
        let mut first = true;
        for (j, c) in coeffs.iter().enumerate() {
            if c.is_zero() && !(self.is_zero() && j == 0) {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let basis = match j {
                0 => String::new(),
                1 => format!("z{}", self.n),
                _ => format!("z{}^{}", self.n, j),
            };
            if basis.is_empty() {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write!(f, "{}", basis)?;
            } else {
                write!(f, "{}*{}", a, basis)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64, k: i64) -> CycNumber {
        CycNumber::zeta(n, k)
    }

    #[test]
    fn defining_relations() {
        assert_eq!(z(4, 2), CycNumber::from_i64(-1));
        assert_eq!(&z(3, 1) + &z(3, 2), CycNumber::from_i64(-1));
        let s2 = &z(8, 1) + &z(8, 7);
        assert_eq!(&s2 * &s2, CycNumber::from_i64(2));
        assert_eq!(CycNumber::canonicalize(40, &[]), CycNumber::zero());
        assert_eq!(CycNumber::canonicalize(40, &[]).conductor(), 1);
    }

    #[test]
    fn zeta6_is_minus_zeta3_squared() {
        let a = z(6, 1);
        assert_eq!(a.conductor(), 3);
        assert_eq!(a, -z(3, 2));
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(CycNumber::embed_sqrt(2), &z(8, 1) + &z(8, 7));
        let s5 = &CycNumber::one() + &(&(&z(5, 1) + &z(5, 4)) * &CycNumber::from_i64(2));
        assert_eq!(CycNumber::embed_sqrt(5), s5);
        assert_eq!(CycNumber::embed_sqrt(-1), z(4, 1));
        for m in [-12i64, -7, -3, 3, 6, 7, 12, 18, 28] {
            let r = CycNumber::embed_sqrt(m);
            assert_eq!(&r * &r, CycNumber::from_i64(m), "m = {m}");
            assert_eq!((4 * m.unsigned_abs()) % r.conductor(), 0);
        }
    }

    #[test]
    fn galois_examples() {
        assert_eq!(z(5, 1).galois(2).unwrap(), z(5, 2));
        let s5 = CycNumber::embed_sqrt(5);
        assert_eq!(s5.galois(2).unwrap(), -s5);
        assert!(z(5, 1).galois(5).is_err());
    }

    #[test]
    fn inverse() {
        let s2 = CycNumber::embed_sqrt(2);
        let inv = s2.inv().unwrap();
        assert_eq!(inv, s2.scale(&Rational::new(1.into(), 2.into())));
        assert_eq!(CycNumber::zero().inv(), Err(CycError::DivisionByZero));
        let a = &z(7, 1) + &CycNumber::from_i64(3);
        assert!((&a * &a.inv().unwrap()).is_one());
    }

    #[test]
    fn root_orders() {
        assert_eq!(z(16, 3).order_of_root(), Some(16));
        assert_eq!(CycNumber::one().order_of_root(), Some(1));
        assert_eq!(CycNumber::from_i64(-1).order_of_root(), Some(2));
        assert_eq!(CycNumber::embed_sqrt(2).order_of_root(), None);
        assert_eq!(z(6, 1).order_of_root(), Some(6));
        assert_eq!(z(12, 5).order_of_root(), Some(12));
    }

    #[test]
    fn rational_and_real() {
        assert_eq!(
            (&z(3, 1) + &z(3, 2)).as_rational(),
            Some(Rational::from_integer(BigInt::from(-1)))
        );
        assert!(CycNumber::embed_sqrt(2).is_real());
        assert!(!z(5, 1).is_real());
    }

    #[test]
    fn big_path_round_trips() {
        let big = CycNumber::from_integer(&(BigInt::from(i64::MAX) * 4));
        let x = &big * &z(5, 1);
        let y = &x - &x;
        assert!(y.is_zero());
        let w = &(&x * &x) * &(&big.inv().unwrap() * &big.inv().unwrap());
        assert_eq!(w, z(5, 2));
    }
}
