//! Constructors for pointed, Ising and metaplectic modular data, and a small
//! spec grammar naming them.
//!
//! Family specs:
//!
//! ```text
//! pointed:z4:q=1/8
//! pointed:z2xz2:q=0,0:b=1/2      b lists b_ij for i < j in order
//! ising:nu=3
//! metaplectic:n=5,s=1,u=0
//! prod:[ising:nu=1|pointed:z3:q=1/3]
//! ```

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::json;
use thiserror::Error;

use crate::arith;
use crate::cyclo::CycNumber;
use crate::fusion::FusionRing;
use crate::moddata::{ModError, ModularDatum};
use crate::symmetry;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("the bilinear form is degenerate")]
    Degenerate,
    #[error("metaplectic constraint solve found no solution for N = {n}, s = {s}")]
    NoSolution { n: u64, s: i8 },
    #[error("cannot parse family spec: {0}")]
    Parse(String),
    #[error(transparent)]
    Mod(#[from] ModError),
}

fn bad(msg: impl Into<String>) -> FamilyError {
    FamilyError::BadParameter(msg.into())
}

/// Finite abelian group ⊕ ℤ_{n_i} with a quadratic form
/// q(x) = Σ q_i x_i² + Σ_{i<j} b_ij x_i x_j mod 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricGroup {
    factors: Vec<u64>,
    q: Vec<Rational>,
    /// b_ij for i < j, row by row.
    b: Vec<Rational>,
}

fn frac_mod1(x: &Rational) -> Rational {
    x - x.floor()
}

fn e2pi(x: &Rational) -> CycNumber {
    let x = frac_mod1(x);
    let den = x.denom().to_u64().expect("small denominator");
    let num = x.numer().to_i64().expect("small numerator");
    CycNumber::zeta(den, num)
}

impl MetricGroup {
    pub fn new(factors: Vec<u64>, q: Vec<Rational>, b: Vec<Rational>) -> Result<Self, FamilyError> {
        let r = factors.len();
        if factors.iter().any(|&n| n < 2) {
            return Err(bad("cyclic factors must have order at least 2"));
        }
        if q.len() != r || b.len() != r * r.saturating_sub(1) / 2 {
            return Err(bad("need one q per factor and one b per pair of factors"));
        }
        let int = |x: &Rational| x.is_integer();
        for (i, &n) in factors.iter().enumerate() {
            let n = Rational::from_integer(n.into());
            if !int(&(&n * &q[i] * Rational::from_integer(2.into()))) || !int(&(&n * &n * &q[i])) {
                return Err(bad(format!("q_{i} is not well defined on Z{}", factors[i])));
            }
        }
        let mut idx = 0;
        for i in 0..r {
            for j in i + 1..r {
                let bij = &b[idx];
                for n in [factors[i], factors[j]] {
                    if !int(&(bij * Rational::from_integer(n.into()))) {
                        return Err(bad(format!("b_{i}{j} is not well defined")));
                    }
                }
                idx += 1;
            }
        }
        let q = q.iter().map(frac_mod1).collect();
        let b = b.iter().map(frac_mod1).collect();
        Ok(MetricGroup { factors, q, b })
    }

    /// ℤ_n with q(1) = num/den.
    pub fn cyclic(n: u64, num: i64, den: i64) -> Result<Self, FamilyError> {
        Self::new(vec![n], vec![Rational::new(num.into(), den.into())], vec![])
    }

    /// Every nondegenerate quadratic form on ℤ_n, by increasing q(1) in [0, 1).
    pub fn cyclic_forms(n: u64) -> Vec<MetricGroup> {
        (0..2 * n as i64)
            .filter_map(|k| Self::cyclic(n, k, 2 * n as i64).ok())
            .filter(|m| m.is_nondegenerate())
            .fold(Vec::new(), |mut acc, m| {
                if !acc.contains(&m) {
                    acc.push(m);
                }
                acc
            })
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product::<u64>() as usize
    }

    /// Element with mixed-radix index x, first factor most significant.
    pub fn element(&self, mut x: usize) -> Vec<u64> {
        let mut v = vec![0; self.factors.len()];
        for i in (0..self.factors.len()).rev() {
            let n = self.factors[i] as usize;
            v[i] = (x % n) as u64;
            x /= n;
        }
        v
    }

    fn index(&self, v: &[u64]) -> usize {
        v.iter().zip(&self.factors).fold(0, |acc, (&a, &n)| acc * n as usize + (a % n) as usize)
    }

    pub fn q_of(&self, x: &[u64]) -> Rational {
        let mut acc = Rational::zero();
        for (i, &a) in x.iter().enumerate() {
            acc += &self.q[i] * Rational::from_integer((a * a).into());
        }
        let mut idx = 0;
        for i in 0..x.len() {
            for j in i + 1..x.len() {
                acc += &self.b[idx] * Rational::from_integer((x[i] * x[j]).into());
                idx += 1;
            }
        }
        frac_mod1(&acc)
    }

    /// b(x, y) = q(x + y) − q(x) − q(y) mod 1.
    pub fn b_of(&self, x: &[u64], y: &[u64]) -> Rational {
        let s: Vec<u64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        frac_mod1(&(self.q_of(&s) - self.q_of(x) - self.q_of(y)))
    }

    pub fn is_nondegenerate(&self) -> bool {
        let n = self.order();
        (1..n).all(|x| {
            let ex = self.element(x);
            (0..n).any(|y| !self.b_of(&ex, &self.element(y)).is_zero())
        })
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.order())
            .map(|x| {
                let e = self.element(x);
                if e.len() == 1 {
                    e[0].to_string()
                } else {
                    let parts: Vec<String> = e.iter().map(u64::to_string).collect();
                    format!("({})", parts.join(","))
                }
            })
            .collect()
    }
}

impl fmt::Display for MetricGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.factors.iter().map(|n| format!("z{n}")).collect();
        let q: Vec<String> = self.q.iter().map(|x| x.to_string()).collect();
        write!(f, "{}:q={}", g.join("x"), q.join(","))?;
        if !self.b.is_empty() {
            let b: Vec<String> = self.b.iter().map(|x| x.to_string()).collect();
            write!(f, ":b={}", b.join(","))?;
        }
        Ok(())
    }
}

/// S_xy = e^{−2πi b(x,y)}, θ_x = e^{2πi q(x)}.
pub fn pointed_datum(mg: &MetricGroup) -> Result<ModularDatum, FamilyError> {
    if !mg.is_nondegenerate() {
        return Err(FamilyError::Degenerate);
    }
    let n = mg.order();
    let els: Vec<Vec<u64>> = (0..n).map(|x| mg.element(x)).collect();
    let s: Vec<CycNumber> = (0..n * n)
        .into_par_iter()
        .map(|k| e2pi(&-mg.b_of(&els[k / n], &els[k % n])))
        .collect();
    let t: Vec<CycNumber> = els.iter().map(|x| e2pi(&mg.q_of(x))).collect();
    let mul: Vec<Vec<usize>> = els
        .iter()
        .map(|x| {
            els.iter()
                .map(|y| mg.index(&x.iter().zip(y).map(|(a, b)| a + b).collect::<Vec<_>>()))
                .collect()
        })
        .collect();
    let labels = mg.labels();
    let fusion = FusionRing::group_ring(labels.clone(), &mul);
    Ok(ModularDatum::from_parts_trusted(labels, s, t, fusion))
}

pub fn ising_datum(nu: i64) -> Result<ModularDatum, FamilyError> {
    if nu.rem_euclid(2) == 0 {
        return Err(bad(format!("ising needs odd nu, got {nu}")));
    }
    let one = CycNumber::one();
    let r2 = CycNumber::embed_sqrt(2);
    let s = vec![
        one.clone(),
        one.clone(),
        r2.clone(),
        one.clone(),
        one.clone(),
        -&r2,
        r2.clone(),
        -&r2,
        CycNumber::zero(),
    ];
    let t = vec![one, CycNumber::from_i64(-1), CycNumber::zeta(16, nu.rem_euclid(16))];
    let labels: Vec<String> = ["1", "ψ", "σ"].iter().map(|s| s.to_string()).collect();
    let mut n = vec![0u32; 27];
    let mut set = |i: usize, j: usize, k: usize| n[(i * 3 + j) * 3 + k] = 1;
    for i in 0..3 {
        set(0, i, i);
        set(i, 0, i);
    }
    set(1, 1, 0);
    set(1, 2, 2);
    set(2, 1, 2);
    set(2, 2, 0);
    set(2, 2, 1);
    let fusion = FusionRing::from_flat(labels.clone(), vec![0, 1, 2], n);
    Ok(ModularDatum::from_parts_trusted(labels, s, t, fusion))
}

/// Sort key of a metaplectic solution: X-block exponents (X_11, X_12, X_22)
/// of i, then the exponents of θ_{X_1}, θ_{X_2} as 16N-th roots of unity.
pub type MetaplecticKey = (u8, u8, u8, u64, u64);

type Solutions = Arc<Vec<(MetaplecticKey, ModularDatum)>>;

fn metaplectic_labels(n: u64) -> Vec<String> {
    let mut labels: Vec<String> = ["1", "g", "X1", "X2"].iter().map(|s| s.to_string()).collect();
    labels.extend((1..=(n - 1) / 2).map(|j| format!("Y{j}")));
    labels
}

fn check_metaplectic_params(n: u64, s: i8) -> Result<(), FamilyError> {
    if n < 3 || n.is_multiple_of(2) || !arith::is_squarefree(n) {
        return Err(bad(format!("metaplectic needs odd square-free N ≥ 3, got {n}")));
    }
    if s != 1 && s != -1 {
        return Err(bad(format!("metaplectic sign must be ±1, got {s}")));
    }
    Ok(())
}

/// Every certified metaplectic datum for (N, s), in canonical order.
pub fn metaplectic_solutions(n: u64, s: i8) -> Result<Solutions, FamilyError> {
    check_metaplectic_params(n, s)?;
    static CACHE: OnceLock<Mutex<HashMap<(u64, i8), Solutions>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&(n, s)) {
        return Ok(v.clone());
    }
    let sols = Arc::new(solve_metaplectic(n, s));
    if sols.is_empty() {
        return Err(FamilyError::NoSolution { n, s });
    }
    cache.lock().unwrap().insert((n, s), sols.clone());
    Ok(sols)
}

fn solve_metaplectic(n: u64, s: i8) -> Vec<(MetaplecticKey, ModularDatum)> {
    let h = ((n - 1) / 2) as usize;
    let r = 4 + h;
    let rn = CycNumber::embed_sqrt(n as i64);
    let two = CycNumber::from_i64(2);
    let si = s as i64;

    let mut base = vec![CycNumber::zero(); r * r];
    let mut put = |i: usize, j: usize, v: CycNumber| {
        base[i * r + j] = v.clone();
        base[j * r + i] = v;
    };
    put(0, 0, CycNumber::one());
    put(0, 1, CycNumber::one());
    put(1, 1, CycNumber::one());
    for x in [2, 3] {
        put(0, x, rn.clone());
        put(1, x, -&rn);
    }
    for j in 1..=h {
        put(0, 3 + j, two.clone());
        put(1, 3 + j, two.clone());
        for k in j..=h {
            let e = 2 * si * (j * k) as i64;
            put(3 + j, 3 + k, &two * &(&CycNumber::zeta(n, e) + &CycNumber::zeta(n, -e)));
        }
    }

    let mut t = vec![CycNumber::one(); r];
    for j in 1..=h {
        t[3 + j] = CycNumber::zeta(n, si * (j * j) as i64);
    }

    let combos: Vec<(u8, u8, u8)> = (0..64u8).map(|c| (c / 16, (c / 4) % 4, c % 4)).collect();
    let blocks: Vec<((u8, u8, u8), ModularDatum)> = combos
        .into_par_iter()
        .filter_map(|(a, b, c)| {
            let mut sm = base.clone();
            let x = |k: u8| &rn * &CycNumber::zeta(4, k as i64);
            sm[2 * r + 2] = x(a);
            sm[2 * r + 3] = x(b);
            sm[3 * r + 2] = x(b);
            sm[3 * r + 3] = x(c);
            let rows: Vec<Vec<CycNumber>> = sm.chunks(r).map(|c| c.to_vec()).collect();
            ModularDatum::from_matrices(rows, t.clone()).ok().map(|m| ((a, b, c), m))
        })
        .collect();

    let m16 = 16 * n;
    let labels = metaplectic_labels(n);
    let mut out: Vec<(MetaplecticKey, ModularDatum)> = blocks
        .into_par_iter()
        .flat_map_iter(|((a, b, c), m0)| {
            let f = m0.fusion().clone();
            let sflat: Vec<CycNumber> = (0..r * r).map(|k| m0.s(k / r, k % r).clone()).collect();
            let dims = m0.dims().to_vec();
            // balancing at (x, x) when x* ⊗ x avoids both X labels
            let admissible = |x: usize| -> Vec<u64> {
                let xd = f.dual(x);
                let touches_x = f.n(xd, x, 2) > 0 || f.n(xd, x, 3) > 0;
                (0..m16)
                    .filter(|&e| {
                        if touches_x {
                            return true;
                        }
                        let th = CycNumber::zeta(m16, e as i64);
                        let lhs = &(m0.s(x, x) * &th) * &th;
                        let rhs: CycNumber = (0..r)
                            .filter(|&k| f.n(xd, x, k) > 0)
                            .map(|k| (&dims[k] * &t[k]).scale(&Rational::from_integer(f.n(xd, x, k).into())))
                            .sum();
                        lhs == rhs
                    })
                    .collect()
            };
            let (e1s, e2s) = (admissible(2), admissible(3));
            let mut found = Vec::new();
            for &e1 in &e1s {
                for &e2 in &e2s {
                    let mut tt = t.clone();
                    tt[2] = CycNumber::zeta(m16, e1 as i64);
                    tt[3] = CycNumber::zeta(m16, e2 as i64);
                    let fr = FusionRing::from_flat(labels.clone(), f.duals().to_vec(), {
                        let mut v = Vec::with_capacity(r * r * r);
                        for i in 0..r {
                            for j in 0..r {
                                for k in 0..r {
                                    v.push(f.n(i, j, k));
                                }
                            }
                        }
                        v
                    });
                    let m = ModularDatum::from_parts_trusted(labels.clone(), sflat.clone(), tt, fr);
                    if !m.verify_axioms().passed() {
                        continue;
                    }
                    match symmetry::check_galois_symmetry(&m) {
                        Ok(rep) if rep.passed() => found.push(((a, b, c, e1, e2), m)),
                        _ => {}
                    }
                }
            }
            found
        })
        .collect();
    out.sort_by_key(|x| x.0);
    out
}

/// The u-th certified metaplectic datum for (N, s).
pub fn metaplectic_datum(n: u64, s: i8, u: usize) -> Result<ModularDatum, FamilyError> {
    let sols = metaplectic_solutions(n, s)?;
    sols.get(u)
        .map(|(_, m)| m.clone())
        .ok_or_else(|| bad(format!("u = {u} out of range: {} solutions for N = {n}, s = {s}", sols.len())))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyId {
    Pointed(MetricGroup),
    Ising { nu: i64 },
    Metaplectic { n: u64, s: i8, u: usize },
    Product(Vec<FamilyId>),
}

impl FamilyId {
    pub fn tag(&self) -> &'static str {
        match self {
            FamilyId::Pointed(_) => "pointed",
            FamilyId::Ising { .. } => "ising",
            FamilyId::Metaplectic { .. } => "metaplectic",
            FamilyId::Product(_) => "product",
        }
    }

    fn params(&self) -> serde_json::Value {
        match self {
            FamilyId::Pointed(mg) => json!({
                "group": mg.factors,
                "q": mg.q.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "b": mg.b.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "spec": self.to_string(),
            }),
            FamilyId::Ising { nu } => json!({ "nu": nu, "spec": self.to_string() }),
            FamilyId::Metaplectic { n, s, u } => json!({ "n": n, "s": s, "u": u, "spec": self.to_string() }),
            FamilyId::Product(fs) => json!({
                "factors": fs.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                "spec": self.to_string(),
            }),
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyId::Pointed(mg) => write!(f, "pointed:{mg}"),
            FamilyId::Ising { nu } => write!(f, "ising:nu={nu}"),
            FamilyId::Metaplectic { n, s, u } => write!(f, "metaplectic:n={n},s={s},u={u}"),
            FamilyId::Product(fs) => {
                let parts: Vec<String> = fs.iter().map(|x| x.to_string()).collect();
                write!(f, "prod:[{}]", parts.join("|"))
            }
        }
    }
}

fn parse_rational(s: &str) -> Result<Rational, FamilyError> {
    let err = || FamilyError::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((a, b)) => {
            let a: i64 = a.trim().parse().map_err(|_| err())?;
            let b: i64 = b.trim().parse().map_err(|_| err())?;
            if b == 0 {
                return Err(err());
            }
            Ok(Rational::new(a.into(), b.into()))
        }
        None => Ok(Rational::from_integer(s.trim().parse::<i64>().map_err(|_| err())?.into())),
    }
}

fn parse_kv(body: &str) -> Result<HashMap<String, String>, FamilyError> {
    body.split(',')
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| FamilyError::Parse(format!("expected key=value, got {p:?}")))
        })
        .collect()
}

fn split_top(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            '|' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

impl FromStr for FamilyId {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (tag, body) = s
            .split_once(':')
            .ok_or_else(|| FamilyError::Parse(format!("missing family tag in {s:?}")))?;
        let int = |m: &HashMap<String, String>, k: &str| -> Result<i64, FamilyError> {
            m.get(k)
                .ok_or_else(|| FamilyError::Parse(format!("missing {k}")))?
                .parse()
                .map_err(|_| FamilyError::Parse(format!("bad integer for {k}")))
        };
        match tag {
            "ising" => {
                let kv = parse_kv(body)?;
                Ok(FamilyId::Ising { nu: int(&kv, "nu")? })
            }
            "metaplectic" => {
                let kv = parse_kv(body)?;
                let n = int(&kv, "n")?;
                let sg = if kv.contains_key("s") { int(&kv, "s")? } else { 1 };
                let u = if kv.contains_key("u") { int(&kv, "u")? } else { 0 };
                if n < 0 || u < 0 {
                    return Err(bad("n and u must be nonnegative"));
                }
                Ok(FamilyId::Metaplectic { n: n as u64, s: sg.clamp(-2, 2) as i8, u: u as usize })
            }
            "pointed" => {
                let mut parts = body.split(':');
                let group = parts.next().unwrap_or("");
                let factors: Vec<u64> = group
                    .split('x')
                    .map(|z| z.trim().trim_start_matches(['z', 'Z']).parse::<u64>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| FamilyError::Parse(format!("bad group {group:?}")))?;
                let mut q = None;
                let mut b = Vec::new();
                for p in parts {
                    if let Some(v) = p.strip_prefix("q=") {
                        q = Some(v.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>()?);
                    } else if let Some(v) = p.strip_prefix("b=") {
                        b = v.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>()?;
                    } else {
                        return Err(FamilyError::Parse(format!("unexpected section {p:?}")));
                    }
                }
                let q = q.ok_or_else(|| FamilyError::Parse("pointed spec needs q=".into()))?;
                Ok(FamilyId::Pointed(MetricGroup::new(factors, q, b)?))
            }
            "prod" | "product" => {
                let inner = body
                    .strip_prefix('[')
                    .and_then(|x| x.strip_suffix(']'))
                    .ok_or_else(|| FamilyError::Parse("product spec must be [..]".into()))?;
                if inner.trim().is_empty() {
                    return Ok(FamilyId::Product(vec![]));
                }
                Ok(FamilyId::Product(split_top(inner).into_iter().map(str::parse).collect::<Result<_, _>>()?))
            }
            other => Err(FamilyError::Parse(format!("unknown family {other:?}"))),
        }
    }
}

fn trivial_datum() -> ModularDatum {
    let labels = vec!["1".to_string()];
    let fusion = FusionRing::group_ring(labels.clone(), &[vec![0]]);
    ModularDatum::from_parts_trusted(labels, vec![CycNumber::one()], vec![CycNumber::one()], fusion)
}

/// Construct the datum named by `f`, with family metadata attached.
pub fn build(f: &FamilyId) -> Result<ModularDatum, FamilyError> {
    let m = match f {
        FamilyId::Pointed(mg) => pointed_datum(mg)?,
        FamilyId::Ising { nu } => ising_datum(*nu)?,
        FamilyId::Metaplectic { n, s, u } => metaplectic_datum(*n, *s, *u)?,
        FamilyId::Product(fs) => {
            let mut acc = trivial_datum();
            for (i, x) in fs.iter().enumerate() {
                let m = build(x)?;
                acc = if i == 0 { m } else { acc.deligne_product(&m) };
            }
            acc
        }
    };
    Ok(m.with_meta(f.tag(), f.params()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_round_trip() {
        for s in [
            "pointed:z4:q=1/8",
            "pointed:z2xz2:q=0,0:b=1/2",
            "ising:nu=3",
            "metaplectic:n=5,s=1,u=0",
            "prod:[ising:nu=1|pointed:z3:q=1/3]",
        ] {
            let id: FamilyId = s.parse().unwrap();
            assert_eq!(id.to_string(), s);
        }
        assert!("ising".parse::<FamilyId>().is_err());
        assert!("torus:n=3".parse::<FamilyId>().is_err());
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(ising_datum(2), Err(FamilyError::BadParameter(_))));
        assert!(matches!(metaplectic_datum(5, 1, 4), Err(FamilyError::BadParameter(_))));
        assert!(matches!(metaplectic_datum(9, 1, 0), Err(FamilyError::BadParameter(_))));
        assert!(MetricGroup::cyclic(4, 1, 3).is_err());
        // q = 1/2 on Z2 has b = 0
        let g = MetricGroup::cyclic(2, 1, 2).unwrap();
        assert!(matches!(pointed_datum(&g), Err(FamilyError::Degenerate)));
    }

    #[test]
    fn cyclic_form_counts() {
        // q(1) = k/2n with n² q ∈ Z and 2q n coprime to n
        assert_eq!(MetricGroup::cyclic_forms(2).len(), 2);
        assert_eq!(MetricGroup::cyclic_forms(3).len(), 2);
        assert_eq!(MetricGroup::cyclic_forms(4).len(), 4);
        assert_eq!(MetricGroup::cyclic_forms(5).len(), 4);
    }

    #[test]
    fn ising_twists() {
        let m = ising_datum(1).unwrap();
        assert_eq!(m.labels(), ["1", "ψ", "σ"]);
        assert_eq!(*m.t(1), CycNumber::from_i64(-1));
        assert_eq!(*m.t(2), CycNumber::zeta(16, 1));
        assert_eq!(*m.t(2), ising_datum(17 % 16).unwrap().t(2).clone());
    }

    #[test]
    fn metaplectic_five_solutions() {
        let sols = metaplectic_solutions(5, 1).unwrap();
        let keys: Vec<MetaplecticKey> = sols.iter().map(|(k, _)| *k).collect();
        assert_eq!(keys, vec![(0, 2, 0, 0, 40), (0, 2, 0, 40, 0), (2, 0, 2, 20, 60), (2, 0, 2, 60, 20)]);
        for (_, m) in sols.iter() {
            assert!(m.verify_axioms().passed());
            assert_eq!(m.global_dim_u64(), Some(20));
        }
    }

    #[test]
    fn products_carry_meta() {
        let id: FamilyId = "prod:[ising:nu=1|pointed:z3:q=1/3]".parse().unwrap();
        let m = build(&id).unwrap();
        assert_eq!(m.rank(), 9);
        assert_eq!(m.meta().unwrap().family, "product");
        assert_eq!(build(&"prod:[]".parse().unwrap()).unwrap().rank(), 1);
    }
}
