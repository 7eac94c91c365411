//! Per-conductor reduction tables: x^e mod Φ_n for 0 ≤ e < n.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::arith;

pub(crate) struct Table {
    pub phi: usize,
    /// rows[e] = sparse (j, c) with x^e ≡ Σ c x^j mod Φ_n; only e ≥ phi is stored.
    rows: Vec<Vec<(u32, i64)>>,
}

impl Table {
    pub fn row(&self, e: usize) -> &[(u32, i64)] {
        &self.rows[e - self.phi]
    }
}

/// Integer coefficients of the n-th cyclotomic polynomial, constant term first.
pub(crate) fn cyclotomic_poly(n: u64) -> Vec<i64> {
    let mut num: Vec<i128> = vec![1];
    let mut dens = Vec::new();
    for d in arith::divisors(n) {
        match arith::moebius(n / d) {
            1 => num = mul_xd_minus_1(&num, d as usize),
            -1 => dens.push(d as usize),
            _ => {}
        }
    }
    for d in dens {
        num = div_xd_minus_1(&num, d);
    }
    num.into_iter().map(|c| c as i64).collect()
}

fn mul_xd_minus_1(p: &[i128], d: usize) -> Vec<i128> {
    let mut out = vec![0i128; p.len() + d];
    for (i, &c) in p.iter().enumerate() {
        out[i + d] += c;
        out[i] -= c;
    }
    out
}

fn div_xd_minus_1(p: &[i128], d: usize) -> Vec<i128> {
    // p = q * (x^d - 1), solved from the top degree down
    let deg = p.len() - 1;
    let mut rem = p.to_vec();
    let mut q = vec![0i128; deg - d + 1];
    for i in (0..q.len()).rev() {
        let c = rem[i + d];
        q[i] = c;
        rem[i + d] -= c;
        rem[i] += c;
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    q
}

fn build(n: usize) -> Table {
    let phi = arith::totient(n as u64) as usize;
    let cyc = cyclotomic_poly(n as u64);
    let mut rows = Vec::with_capacity(n - phi);
    // cur = x^e reduced, dense
    let mut cur = vec![0i128; phi];
    cur[phi - 1] = 1; // x^{phi-1}
    for _ in phi..n {
        // multiply by x
        let top = cur[phi - 1];
        for j in (1..phi).rev() {
            cur[j] = cur[j - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for j in 0..phi {
                cur[j] -= top * cyc[j] as i128;
            }
        }
        rows.push(
            cur.iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(j, &c)| (j as u32, i64::try_from(c).expect("reduction table overflow")))
                .collect(),
        );
    }
    Table { phi, rows }
}

pub(crate) fn table(n: usize) -> Arc<Table> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Table>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&n) {
        return t.clone();
    }
    let t = Arc::new(build(n));
    cache.lock().unwrap().entry(n).or_insert(t).clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_poly(5), vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn rows_reduce_powers() {
        let t = table(5);
        // x^4 = -(1 + x + x^2 + x^3)
        assert_eq!(t.row(4), &[(0, -1), (1, -1), (2, -1), (3, -1)]);
        let t = table(8);
        assert_eq!(t.row(7), &[(3, -1)]);
    }
}
