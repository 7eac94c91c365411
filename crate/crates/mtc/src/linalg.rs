//! Exact linear algebra over integer rings.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Square matrix stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    pub n: usize,
    pub a: Vec<T>,
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn zeros(n: usize) -> Self {
        Matrix { n, a: vec![T::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.a[i * n + i] = T::one();
        }
        m
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut a = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                a.push(f(i, j));
            }
        }
        Matrix { n, a }
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.a[i * self.n + j]
    }

    pub fn mul(&self, other: &Self) -> Self
    where
        T: std::ops::Mul<Output = T> + std::ops::Add<Output = T>,
    {
        let n = self.n;
        Self::from_fn(n, |i, j| {
            (0..n).fold(T::zero(), |acc, k| {
                acc + self.get(i, k).clone() * other.get(k, j).clone()
            })
        })
    }

    pub fn trace(&self) -> T
    where
        T: std::ops::Add<Output = T>,
    {
        (0..self.n).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }
}

/// Determinant by fraction-free Bareiss elimination.
pub fn determinant<T: Clone + Integer + Signed>(m: &Matrix<T>) -> T {
    let n = m.n;
    if n == 0 {
        return T::one();
    }
    let mut a = m.a.clone();
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            match (k + 1..n).find(|&r| !a[r * n + k].is_zero()) {
                Some(r) => {
                    for c in 0..n {
                        a.swap(k * n + c, r * n + c);
                    }
                    sign = -sign;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i * n + j].clone() * a[k * n + k].clone()
                    - a[i * n + k].clone() * a[k * n + j].clone();
                a[i * n + j] = v / prev.clone();
            }
        }
        prev = a[k * n + k].clone();
    }
    sign * a[n * n - 1].clone()
}

/// Characteristic polynomial det(xI − A), constant term first, by Faddeev–LeVerrier.
///
/// All divisions are exact for integer matrices.
pub fn charpoly<T: Clone + Integer + Signed + From<i64>>(m: &Matrix<T>) -> Vec<T> {
    let n = m.n;
    let mut c = vec![T::zero(); n + 1];
    c[n] = T::one();
    let mut mk = Matrix::<T>::zeros(n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = m.mul(&mk);
        for i in 0..n {
            let v = next.a[i * n + i].clone() + c[n - k + 1].clone();
            next.a[i * n + i] = v;
        }
        let am = m.mul(&next);
        let tr = am.trace();
        c[n - k] = -(tr / T::from(k as i64));
        mk = next;
    }
    c
}

/// Evaluate a polynomial (constant term first) at x.
pub fn eval<T: Clone + Integer>(p: &[T], x: &T) -> T {
    p.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
}

/// Coefficients of p(x + s).
pub fn shift<T: Clone + Integer>(p: &[T], s: &T) -> Vec<T> {
    let mut out = vec![T::zero(); p.len()];
    // Horner in the ring of polynomials
    for c in p.iter().rev() {
        let mut next = vec![T::zero(); p.len()];
        for i in 0..p.len() {
            if out[i].is_zero() {
                continue;
            }
            next[i] = next[i].clone() + out[i].clone() * s.clone();
            if i + 1 < p.len() {
                next[i + 1] = next[i + 1].clone() + out[i].clone();
            }
        }
        next[0] = next[0].clone() + c.clone();
        out = next;
    }
    out
}

/// Sign changes in the coefficient sequence, zeros skipped.
pub fn sign_changes<T: Clone + Signed>(p: &[T]) -> usize {
    let mut last: Option<bool> = None;
    let mut n = 0;
    for c in p {
        if c.is_zero() {
            continue;
        }
        let pos = c.is_positive();
        if let Some(l) = last {
            if l != pos {
                n += 1;
            }
        }
        last = Some(pos);
    }
    n
}

/// Integer roots of an integer polynomial, by the rational root test on the
/// lowest nonzero coefficient.
pub fn integer_roots(p: &[i64]) -> Vec<i64> {
    let mut roots = Vec::new();
    let lead = p.iter().position(|&c| c != 0);
    let Some(low) = lead else { return roots };
    if low > 0 {
        roots.push(0);
    }
    let c0 = p[low].unsigned_abs();
    let q: Vec<i128> = p[low..].iter().map(|&c| c as i128).collect();
    for d in crate::arith::divisors(c0) {
        for x in [d as i128, -(d as i128)] {
            let v = q.iter().rev().try_fold(0i128, |acc, &c| acc.checked_mul(x)?.checked_add(c));
            if v == Some(0) {
                roots.push(x as i64);
            }
        }
    }
    roots.sort();
    roots
}
