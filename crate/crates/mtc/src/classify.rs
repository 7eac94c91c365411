//! Dimension-profile enumeration and the certificate-producing rule engine
//! for weakly integral modular categories of small rank.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;
use crate::families::{self, FamilyId, MetricGroup};
use crate::linalg;
use crate::moddata::{IntegralityKind, ModularDatum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Integral,
    WeaklyIntegral,
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "integral" => Ok(Mode::Integral),
            "weakly-integral" | "weakly_integral" | "weak" => Ok(Mode::WeaklyIntegral),
            _ => Err(format!("unknown mode {s:?} (expected integral or weakly-integral)")),
        }
    }
}

/// Sorted multiset of squared dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DimProfile {
    pub rank: usize,
    pub squared_dims: Vec<u64>,
    pub dim: u64,
}

impl DimProfile {
    pub fn new(mut squared_dims: Vec<u64>) -> Self {
        squared_dims.sort_unstable();
        DimProfile { rank: squared_dims.len(), dim: squared_dims.iter().sum(), squared_dims }
    }

    pub fn invertibles(&self) -> usize {
        self.squared_dims.iter().filter(|&&x| x == 1).count()
    }

    pub fn is_pointed(&self) -> bool {
        self.invertibles() == self.rank
    }

    pub fn is_integral(&self) -> bool {
        self.squared_dims.iter().all(|&x| arith::is_square(x))
    }

    pub fn is_strict(&self) -> bool {
        !self.is_integral()
    }

    pub fn max(&self) -> u64 {
        *self.squared_dims.last().expect("nonempty")
    }

    pub fn kind(&self) -> IntegralityKind {
        if self.is_pointed() {
            IntegralityKind::Pointed
        } else if self.is_integral() {
            IntegralityKind::Integral
        } else {
            IntegralityKind::StrictlyWeaklyIntegral
        }
    }

    fn count(&self, x: u64) -> usize {
        self.squared_dims.iter().filter(|&&y| y == x).count()
    }
}

impl fmt::Display for DimProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.squared_dims.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Primes allowed in dim C for the given rank.
pub fn allowed_primes(r: usize) -> Vec<u64> {
    match r {
        6 => vec![2, 3, 5],
        0..=7 => vec![2, 3, 5, 7],
        _ => (2..2 * r as u64).filter(|&p| arith::is_prime(p)).collect(),
    }
}

fn smooth_numbers(primes: &[u64], limit: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for &p in primes {
        let mut next = Vec::new();
        for &x in &out {
            let mut y = x;
            while y <= limit {
                next.push(y);
                match y.checked_mul(p) {
                    Some(z) => y = z,
                    None => break,
                }
            }
        }
        out = next;
    }
    out.sort_unstable();
    out
}

/// Largest denominator in an r-term unit-fraction decomposition of 1 is
/// s_r − 1 (Sylvester's sequence); past u64 range we fall back to a cap.
pub fn dim_bound(r: usize) -> u64 {
    let mut s: u128 = 2;
    for _ in 1..r {
        s = s * (s - 1) + 1;
        if s > DIM_CAP as u128 {
            return DIM_CAP;
        }
    }
    (s - 1) as u64
}

/// Cap used when the unit-fraction bound exceeds u64 (rank 8).
pub const DIM_CAP: u64 = 1_000_000_000_000_000_000;

fn gcd(a: u128, b: u128) -> u128 {
    num_integer::Integer::gcd(&a, &b)
}

struct Search<'a> {
    smooth: &'a [u64],
    limit: u64,
    out: Vec<Vec<u64>>,
}

impl Search<'_> {
    /// Σ 1/a_i = 1 with a_unit = dim and a_i = dim/d_i² for the other labels;
    /// `rest` = num/den remains, and every a chosen so far divides the final dim.
    fn go(&mut self, k: usize, start: usize, num: u128, den: u128, lcm: u128, chosen: &mut Vec<u64>) {
        if k == 0 {
            if num == 1 && den.is_multiple_of(lcm) && den <= self.limit as u128 {
                let d = den as u64;
                let mut sq: Vec<u64> = chosen.iter().map(|&a| d / a).collect();
                sq.push(1);
                sq.sort_unstable();
                self.out.push(sq);
            }
            return;
        }
        // 1/a < rest ≤ (k + 1)/a
        let lo = den / num + 1;
        let hi = (k as u128 + 1) * den / num;
        let from = start.max(self.smooth.partition_point(|&a| (a as u128) < lo));
        for idx in from..self.smooth.len() {
            let a = self.smooth[idx] as u128;
            if a > hi {
                break;
            }
            let l = lcm / gcd(lcm, a) * a;
            if l > self.limit as u128 {
                continue;
            }
            let (n2, d2) = (num * a - den, den * a);
            if n2 == 0 {
                continue;
            }
            let g = gcd(n2, d2);
            chosen.push(a as u64);
            self.go(k - 1, idx, n2 / g, d2 / g, l, chosen);
            chosen.pop();
        }
    }
}

fn all_profiles(r: usize) -> Vec<DimProfile> {
    if r == 1 {
        return vec![DimProfile::new(vec![1])];
    }
    let primes = allowed_primes(r);
    let limit = dim_bound(r);
    let smooth = smooth_numbers(&primes, limit);
    let firsts: Vec<usize> = (0..smooth.len()).filter(|&i| smooth[i] >= 2 && smooth[i] <= r as u64).collect();
    let mut found: Vec<Vec<u64>> = firsts
        .into_par_iter()
        .flat_map_iter(|i| {
            let a = smooth[i];
            let mut s = Search { smooth: &smooth, limit, out: Vec::new() };
            s.go(r - 2, i, (a - 1) as u128, a as u128, a as u128, &mut vec![a]);
            s.out
        })
        .collect();
    found.sort();
    found.dedup();
    found.into_iter().map(DimProfile::new).collect()
}

/// Every admissible profile of rank r, ordered by (dim, squared dims).
pub fn enumerate_profiles(r: usize, mode: Mode) -> Vec<DimProfile> {
    assert!((2..=8).contains(&r), "rank must be in 2..=8");
    let mut out: Vec<DimProfile> = all_profiles(r)
        .into_iter()
        .filter(|p| p.is_pointed() || p.dim / p.max() < r as u64)
        .filter(|p| match mode {
            Mode::Integral => p.is_integral(),
            Mode::WeaklyIntegral => {
                p.is_integral() || {
                    let non_sq = p.squared_dims.iter().filter(|&&x| !arith::is_square(x)).count();
                    // a single non-integral simple only occurs in Ising
                    (non_sq >= 2 || p.squared_dims == [1, 1, 2]) && p.invertibles() % 2 == 0
                }
            }
        })
        .collect();
    out.sort_by(|a, b| (a.dim, &a.squared_dims).cmp(&(b.dim, &b.squared_dims)));
    out
}

/// (d_1², d_4², dim) with dim = 1 + 3d_1² + 3d_4² admissible for a rank-7 profile.
pub fn three_plus_three_solutions() -> Vec<(u64, u64, u64)> {
    let mut out = Vec::new();
    // d_1² d_4² | dim and dim/d_4² ≤ 7 force d_1² ≤ 7 and d_4² | 1 + 3 d_1²
    for a in 1..=7u64 {
        for b in arith::divisors(1 + 3 * a) {
            if b < a {
                continue;
            }
            let d = 1 + 3 * a + 3 * b;
            if d % a != 0 || d % b != 0 {
                continue;
            }
            let p = DimProfile::new(vec![1, a, a, a, b, b, b]);
            if p.is_strict() && p.invertibles() % 2 == 1 {
                continue;
            }
            if !p.is_pointed() && d / b >= 7 {
                continue;
            }
            out.push((a, b, d));
        }
    }
    out
}

/// Hypothetical p-support-cycle shape for the dimension identities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CycleShape {
    /// The unique p-support cycle, of length `len`, on labels with d² = d2.
    Single { len: u64, d2: u64 },
    /// Exactly two p-support cycles of length (p−1)/2.
    Pair { d2a: u64, d2b: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TgalOutcome {
    pub satisfiable: bool,
    pub witness: String,
}

/// Dimension identities forced by a p-support-cycle shape.
pub fn tgal_dimension_rules(dim: u64, p: u64, shape: &CycleShape) -> TgalOutcome {
    let d = dim as u128;
    let p128 = p as u128;
    match *shape {
        CycleShape::Single { len, d2 } => {
            let lhs = d * ((p128 - 1) * (p128 - 1));
            let rhs = (len as u128).pow(2) * (d2 as u128).pow(2) * p128;
            let parity = len != (p - 1) / 2 || d2 % 2 == 0;
            TgalOutcome {
                satisfiable: lhs == rhs && parity,
                witness: format!(
                    "dim·(p−1)² = {lhs} vs l²·d⁴·p = {rhs} (p={p}, l={len}, d²={d2}){}",
                    if parity { "" } else { "; l = (p−1)/2 needs d² even" }
                ),
            }
        }
        CycleShape::Pair { d2a, d2b } => {
            let v = arith::valuation(dim, p);
            if v.is_multiple_of(2) {
                TgalOutcome {
                    satisfiable: d2a == d2b,
                    witness: format!("v_p(dim) = {v} even needs equal d² on both cycles ({d2a}, {d2b})"),
                }
            } else {
                let (a, b) = (d2a as i128, d2b as i128);
                let ok: Vec<i128> = [0i128, 1, -1]
                    .into_iter()
                    .filter(|e| 4 * dim as i128 == (a * a + b * b + e * a * b) * p as i128)
                    .collect();
                TgalOutcome {
                    satisfiable: !ok.is_empty(),
                    witness: format!(
                        "4·dim = {} vs (a² + b² + εab)·p for ε ∈ {{0, ±1}} with (a, b) = ({a}, {b}), p = {p}",
                        4 * dim
                    ),
                }
            }
        }
    }
}

/// Positive integer roots of an integer polynomial (constant term first).
pub fn positive_integer_solutions(poly: &[i64]) -> Vec<i64> {
    linalg::integer_roots(poly).into_iter().filter(|&x| x > 0).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "lowercase")]
pub enum FourMClass {
    /// Contains an object of dimension √2: Ising ⊠ cyclic of dimension m.
    A,
    /// Metaplectic of dimension 4k ⊠ cyclic of dimension n = m/k.
    B { k: u64, n: u64 },
    /// Pointed.
    C,
}

/// Trichotomy for modular data of dimension 4m, m odd and square-free.
pub fn classify_4m(m: &ModularDatum) -> Result<FourMClass, ClassifyError> {
    let pre = |s: String| ClassifyError::PreconditionFailed(s);
    let dim = m.global_dim_u64().ok_or_else(|| pre("dimension is not an integer".into()))?;
    if dim % 4 != 0 || (dim / 4) % 2 == 0 || !arith::is_squarefree(dim / 4) {
        return Err(pre(format!("dim = {dim} is not 4m with m odd and square-free")));
    }
    let mm = dim / 4;
    let sq = m.squared_dims().ok_or_else(|| pre("datum is not weakly integral".into()))?;
    if sq.contains(&2) {
        return Ok(FourMClass::A);
    }
    let non_int: Vec<u64> = sq.iter().copied().filter(|&x| !arith::is_square(x)).collect();
    if non_int.is_empty() {
        let pt = sq.iter().filter(|&&x| x == 1).count() as u64;
        if !pt.is_multiple_of(4) || pt != sq.len() as u64 {
            return Err(pre(format!("integral of dim {dim} but dim C_pt = {pt}; not pointed")));
        }
        return Ok(FourMClass::C);
    }
    let k = arith::squarefree_part(non_int[0]);
    if non_int.iter().any(|&x| arith::squarefree_part(x) != k) || mm % k != 0 {
        return Err(pre(format!("non-integral dimensions do not share one square class dividing m = {mm}")));
    }
    Ok(FourMClass::B { k, n: mm / k })
}

/// The smallest nondegenerate form on ℤ_n: q(1) = 1/2n for n even, 1/n for n odd.
pub fn standard_cyclic(n: u64) -> Option<MetricGroup> {
    if n < 2 {
        return None;
    }
    let den = if n.is_multiple_of(2) { 2 * n } else { n };
    MetricGroup::cyclic(n, 1, den as i64).ok()
}

fn first_cyclic(n: u64) -> Option<MetricGroup> {
    standard_cyclic(n)
}

fn with_cyclic(base: FamilyId, n: u64) -> Option<FamilyId> {
    if n == 1 {
        return Some(base);
    }
    Some(FamilyId::Product(vec![base, FamilyId::Pointed(first_cyclic(n)?)]))
}

/// Family shapes of dimension 4m: pointed, Ising ⊠ cyclic(m), metaplectic(k) ⊠ cyclic(m/k).
pub fn four_m_shapes(m: u64) -> Vec<(DimProfile, FamilyId)> {
    let mut out = Vec::new();
    if let Some(mg) = first_cyclic(4 * m) {
        out.push((DimProfile::new(vec![1; 4 * m as usize]), FamilyId::Pointed(mg)));
    }
    let mut ising = vec![1; 2 * m as usize];
    ising.extend(vec![2; m as usize]);
    if let Some(f) = with_cyclic(FamilyId::Ising { nu: 1 }, m) {
        out.push((DimProfile::new(ising), f));
    }
    for k in (3..=m).step_by(2) {
        if !m.is_multiple_of(k) {
            continue;
        }
        let n = m / k;
        let mut v = vec![1; 2 * n as usize];
        v.extend(vec![4; (n * (k - 1) / 2) as usize]);
        v.extend(vec![k; 2 * n as usize]);
        if let Some(f) = with_cyclic(FamilyId::Metaplectic { n: k, s: 1, u: 0 }, n) {
            out.push((DimProfile::new(v), f));
        }
    }
    out
}

/// Profiles of rank r realized by the implemented families.
pub fn family_catalog(r: usize) -> Vec<(DimProfile, FamilyId)> {
    let mut out = Vec::new();
    if let Some(mg) = first_cyclic(r as u64) {
        out.push((DimProfile::new(vec![1; r]), FamilyId::Pointed(mg)));
    }
    if r.is_multiple_of(3) {
        let n = r / 3;
        let mut v = vec![1; 2 * n];
        v.extend(vec![2; n]);
        if let Some(f) = with_cyclic(FamilyId::Ising { nu: 1 }, n as u64) {
            out.push((DimProfile::new(v), f));
        }
    }
    for k in (3..2 * r as u64).step_by(2) {
        if !arith::is_squarefree(k) || !(2 * r as u64).is_multiple_of(k + 7) {
            continue;
        }
        let n = 2 * r as u64 / (k + 7);
        let mut v = vec![1; 2 * n as usize];
        v.extend(vec![4; (n * (k - 1) / 2) as usize]);
        v.extend(vec![k; 2 * n as usize]);
        if let Some(f) = with_cyclic(FamilyId::Metaplectic { n: k, s: 1, u: 0 }, n) {
            out.push((DimProfile::new(v), f));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RuleOutcome {
    Skip,
    Pass(String),
    Exclude(String),
    Realize(FamilyId, String),
}

/// One entry of the rule registry.
pub struct Rule {
    pub id: &'static str,
    pub statement: &'static str,
    /// Cited from the literature rather than derived here.
    pub imported: bool,
    pub apply: fn(&DimProfile) -> RuleOutcome,
}

fn rule_pointed(p: &DimProfile) -> RuleOutcome {
    if !p.is_pointed() {
        return RuleOutcome::Skip;
    }
    match first_cyclic(p.rank as u64) {
        Some(mg) => RuleOutcome::Realize(FamilyId::Pointed(mg), "all squared dimensions are 1".into()),
        None => RuleOutcome::Pass("pointed profile without a cyclic metric form".into()),
    }
}

fn rule_squarefree(p: &DimProfile) -> RuleOutcome {
    if p.is_pointed() || !arith::is_squarefree(p.dim) {
        return RuleOutcome::Skip;
    }
    RuleOutcome::Exclude(format!("dim = {} is square-free, so the category is pointed, but max d² = {}", p.dim, p.max()))
}

fn rule_4m(p: &DimProfile) -> RuleOutcome {
    if !p.dim.is_multiple_of(4) || (p.dim / 4).is_multiple_of(2) || !arith::is_squarefree(p.dim / 4) {
        return RuleOutcome::Skip;
    }
    let m = p.dim / 4;
    match four_m_shapes(m).into_iter().find(|(q, _)| q == p) {
        Some((_, f)) => RuleOutcome::Realize(f, format!("dim = 4·{m} with the matching product shape")),
        None => RuleOutcome::Exclude(format!(
            "dim = 4·{m} (m odd square-free) but the profile is none of pointed, Ising ⊠ cyclic({m}), metaplectic(k) ⊠ cyclic({m}/k)"
        )),
    }
}

/// Square-free classes of the squared dimensions with their total d².
fn square_classes(p: &DimProfile) -> BTreeMap<u64, u64> {
    let mut cls = BTreeMap::new();
    for &x in &p.squared_dims {
        *cls.entry(arith::squarefree_part(x)).or_insert(0) += x;
    }
    cls
}

fn rule_gn(p: &DimProfile) -> RuleOutcome {
    if !p.is_strict() {
        return RuleOutcome::Skip;
    }
    let cls = square_classes(p);
    let e = cls.len() as u64;
    let g = p.invertibles() as u64;
    if !e.is_power_of_two() {
        return RuleOutcome::Exclude(format!("{e} square classes; an elementary 2-grading needs a power of 2"));
    }
    if let Some((k, v)) = cls.iter().find(|(_, &v)| v * e != p.dim) {
        return RuleOutcome::Exclude(format!("class {k} has total d² = {v} ≠ dim/|E| = {}/{e}", p.dim));
    }
    if !g.is_multiple_of(e) {
        return RuleOutcome::Exclude(format!("|E| = {e} does not divide |G| = {g}"));
    }
    RuleOutcome::Pass(format!("{e} square classes of total d² {} each", p.dim / e))
}

/// Does the profile admit a faithful universal grading by a group of order
/// |G| = #invertibles, with the constraints listed on `grading_ok`?
pub fn universal_grading_partition(p: &DimProfile, strict: bool) -> Option<Vec<Vec<u64>>> {
    let g = p.invertibles();
    if g == 0 || !p.dim.is_multiple_of(g as u64) {
        return None;
    }
    let target = p.dim / g as u64;
    let mut comps: Vec<Vec<u64>> = vec![Vec::new(); g];
    let mut sums = vec![0u64; g];
    comps[0].push(1);
    sums[0] = 1;
    let rest: Vec<u64> = p.squared_dims[1..].iter().rev().copied().collect();
    fn dfs(
        idx: usize,
        rest: &[u64],
        target: u64,
        comps: &mut Vec<Vec<u64>>,
        sums: &mut Vec<u64>,
        strict: bool,
    ) -> bool {
        if idx == rest.len() {
            return grading_ok(comps, strict);
        }
        let x = rest[idx];
        let mut tried_empty = false;
        for c in 0..comps.len() {
            if sums[c] + x > target {
                continue;
            }
            // empty non-trivial components are interchangeable
            if c > 0 && comps[c].is_empty() {
                if tried_empty {
                    continue;
                }
                tried_empty = true;
            }
            comps[c].push(x);
            sums[c] += x;
            if dfs(idx + 1, rest, target, comps, sums, strict) {
                return true;
            }
            comps[c].pop();
            sums[c] -= x;
        }
        false
    }
    if dfs(0, &rest, target, &mut comps, &mut sums, strict) {
        for c in comps.iter_mut() {
            c.sort_unstable();
        }
        Some(comps)
    } else {
        None
    }
}

/// Component conditions for the universal grading: equal dimensions, the
/// invertible-bearing components are translates of the trivial one, the
/// remaining components come in blocks of [G : G ∩ C_e]; in the strict case
/// C_e is integral and each component lies in one square class.
fn grading_ok(comps: &[Vec<u64>], strict: bool) -> bool {
    let g = comps.len();
    let target: u64 = comps[0].iter().sum();
    if comps.iter().any(|c| c.is_empty() || c.iter().sum::<u64>() != target) {
        return false;
    }
    let ones = |c: &Vec<u64>| c.iter().filter(|&&x| x == 1).count();
    let k = ones(&comps[0]);
    if !g.is_multiple_of(k) {
        return false;
    }
    let q = g / k;
    let mut triv = comps[0].clone();
    triv.sort_unstable();
    let with_inv: Vec<&Vec<u64>> = comps.iter().filter(|c| ones(c) > 0).collect();
    if with_inv.len() != q {
        return false;
    }
    for c in &with_inv {
        let mut s = (*c).clone();
        s.sort_unstable();
        if ones(c) != k || s != triv {
            return false;
        }
    }
    let mut counts: HashMap<Vec<u64>, usize> = HashMap::new();
    for c in comps.iter().filter(|c| ones(c) == 0) {
        let mut s = c.clone();
        s.sort_unstable();
        *counts.entry(s).or_insert(0) += 1;
    }
    if counts.values().any(|&v| v % q != 0) {
        return false;
    }
    if strict {
        if !triv.iter().all(|&x| arith::is_square(x)) {
            return false;
        }
        for c in comps {
            let k0 = arith::squarefree_part(c[0]);
            if c.iter().any(|&x| arith::squarefree_part(x) != k0) {
                return false;
            }
        }
    }
    true
}

fn rule_grading(p: &DimProfile) -> RuleOutcome {
    if p.is_pointed() {
        return RuleOutcome::Skip;
    }
    match universal_grading_partition(p, p.is_strict()) {
        Some(c) => RuleOutcome::Pass(format!("grading partition {c:?}")),
        None => RuleOutcome::Exclude(format!(
            "no partition into |G| = {} components of dimension dim/|G| compatible with the universal grading",
            p.invertibles()
        )),
    }
}

/// Disjoint cycles on non-unit labels, each of an allowed length and constant d².
fn support_configs(sq: &[u64], p: u64) -> Vec<Vec<Vec<usize>>> {
    let mut lens = vec![(p - 1) / 2, p - 1];
    lens.dedup();
    let labels: Vec<usize> = (1..sq.len()).collect();
    let mut out = Vec::new();
    fn combos(items: &[usize], k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if items.len() < k {
            return vec![];
        }
        let mut out = Vec::new();
        for (i, &x) in items.iter().enumerate() {
            for mut rest in combos(&items[i + 1..], k - 1) {
                rest.insert(0, x);
                out.push(rest);
            }
        }
        out
    }
    fn rec(
        avail: &[usize],
        cur: &mut Vec<Vec<usize>>,
        sq: &[u64],
        lens: &[u64],
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        let start = cur.last().map(|c| c[0]).unwrap_or(0);
        for &l in lens {
            let cand: Vec<usize> = avail.iter().copied().filter(|&x| x > start).collect();
            for c in combos(&cand, l as usize) {
                if c.iter().any(|&i| sq[i] != sq[c[0]]) {
                    continue;
                }
                let next: Vec<usize> = avail.iter().copied().filter(|x| !c.contains(x)).collect();
                cur.push(c);
                rec(&next, cur, sq, lens, out);
                cur.pop();
            }
        }
    }
    rec(&labels, &mut Vec::new(), sq, &lens, &mut out);
    out
}

fn config_allowed(dim: u64, p: u64, cfg: &[Vec<usize>], sq: &[u64]) -> bool {
    match cfg {
        [one] => {
            tgal_dimension_rules(dim, p, &CycleShape::Single { len: one.len() as u64, d2: sq[one[0]] }).satisfiable
        }
        [a, b] if a.len() as u64 == (p - 1) / 2 && b.len() as u64 == (p - 1) / 2 => {
            tgal_dimension_rules(dim, p, &CycleShape::Pair { d2a: sq[a[0]], d2b: sq[b[0]] }).satisfiable
        }
        _ => true,
    }
}

pub(crate) fn rule_galois(p: &DimProfile) -> RuleOutcome {
    let mut notes = Vec::new();
    for q in arith::primes_of(p.dim) {
        if q < 5 {
            continue;
        }
        let cfgs = support_configs(&p.squared_dims, q);
        if !cfgs.iter().any(|c| config_allowed(p.dim, q, c, &p.squared_dims)) {
            return RuleOutcome::Exclude(format!(
                "p = {q} divides dim = {}: none of the {} admissible {q}-support-cycle configurations satisfies the dimension identities",
                p.dim,
                cfgs.len()
            ));
        }
        notes.push(format!("p={q}: ok"));
    }
    if notes.is_empty() {
        RuleOutcome::Skip
    } else {
        RuleOutcome::Pass(notes.join(", "))
    }
}

fn rule_three_plus_three(p: &DimProfile) -> RuleOutcome {
    let s = &p.squared_dims;
    if p.rank != 7 || s[0] != 1 {
        return RuleOutcome::Skip;
    }
    let (a, b) = (s[1], s[4]);
    if s[1..4].iter().any(|&x| x != a) || s[4..].iter().any(|&x| x != b) {
        return RuleOutcome::Skip;
    }
    if three_plus_three_solutions().iter().any(|&(x, y, d)| (x, y, d) == (a, b, p.dim)) {
        RuleOutcome::Pass(format!("(d_1², d_4², dim) = ({a}, {b}, {}) is a solution", p.dim))
    } else {
        RuleOutcome::Exclude(format!(
            "shape 1 + 3·{a} + 3·{b} = {} is not among the solutions {:?}",
            p.dim,
            three_plus_three_solutions()
        ))
    }
}

fn rule_rank7_prime7(p: &DimProfile) -> RuleOutcome {
    if p.rank != 7 || !p.dim.is_multiple_of(7) || p.is_pointed() {
        return RuleOutcome::Skip;
    }
    if p.dim == 28 {
        RuleOutcome::Pass("dim = 28".into())
    } else {
        RuleOutcome::Exclude(format!("7 | dim = {} in rank 7 forces pointed or dim 28", p.dim))
    }
}

fn rule_import_rank6_integral(p: &DimProfile) -> RuleOutcome {
    if p.rank != 6 || !p.is_integral() || p.is_pointed() {
        return RuleOutcome::Skip;
    }
    RuleOutcome::Exclude("integral modular categories of rank 6 are pointed".into())
}

fn rule_import_rank7_two_primes(p: &DimProfile) -> RuleOutcome {
    if p.rank != 7 || !p.is_integral() || p.is_pointed() {
        return RuleOutcome::Skip;
    }
    let w = arith::primes_of(p.dim).len();
    if w <= 2 {
        RuleOutcome::Exclude(format!(
            "dim = {} has {w} prime factor(s); a non-pointed integral rank-7 category would contain a Tannakian Rep(H), forcing strict dim 28",
            p.dim
        ))
    } else {
        RuleOutcome::Pass(format!("dim = {} has {w} prime factors", p.dim))
    }
}

/// Integral premodular categories of rank ≤ 4 with exactly two invertibles.
pub const ADJOINT_TABLE: &[&[u64]] = &[&[1, 1, 4], &[1, 1, 4, 4]];

fn rule_import_rank6_adjoint(p: &DimProfile) -> RuleOutcome {
    if p.rank != 6 || !p.is_strict() {
        return RuleOutcome::Skip;
    }
    match p.invertibles() {
        2 => {
            let ad: Vec<u64> = p.squared_dims.iter().copied().filter(|&x| arith::is_square(x)).collect();
            if ADJOINT_TABLE.contains(&ad.as_slice()) {
                RuleOutcome::Pass(format!("adjoint subcategory {ad:?} is in the table"))
            } else {
                RuleOutcome::Exclude(format!("adjoint subcategory dimensions {ad:?} are not in {ADJOINT_TABLE:?}"))
            }
        }
        4 => {
            let non: Vec<u64> = p.squared_dims.iter().copied().filter(|&x| !arith::is_square(x)).collect();
            if non == [2, 2] {
                RuleOutcome::Pass("two objects of dimension √2".into())
            } else {
                RuleOutcome::Exclude(format!("|U| = 4 needs non-integral d² = [2, 2], got {non:?}"))
            }
        }
        _ => RuleOutcome::Skip,
    }
}

fn rule_family(p: &DimProfile) -> RuleOutcome {
    match family_catalog(p.rank).into_iter().find(|(q, _)| q == p) {
        Some((_, f)) => RuleOutcome::Realize(f, "profile of a constructed family".into()),
        None => RuleOutcome::Skip,
    }
}

/// The rule registry, in application order.
pub fn registry() -> &'static [Rule] {
    const R: &[Rule] = &[
        Rule { id: "pointed", statement: "all simple objects invertible: realized by a cyclic metric group", imported: false, apply: rule_pointed },
        Rule { id: "squarefree-dim", statement: "weakly integral of square-free dimension implies pointed", imported: false, apply: rule_squarefree },
        Rule { id: "dim-4m", statement: "dimension 4m, m odd square-free: Ising ⊠ cyclic, metaplectic ⊠ cyclic, or pointed", imported: false, apply: rule_4m },
        Rule { id: "gn-grading", statement: "strictly weakly integral: faithful grading by an elementary 2-group of square classes", imported: false, apply: rule_gn },
        Rule { id: "universal-grading", statement: "faithful universal grading by a group of order |G(C)| with equal component dimensions", imported: false, apply: rule_grading },
        Rule { id: "galois-support", statement: "p-support cycles of a p-automorphism obey the single-cycle and two-cycle dimension identities", imported: false, apply: rule_galois },
        Rule { id: "three-plus-three", statement: "rank 7 with d_1 = d_2 = d_3 ≤ d_4 = d_5 = d_6 has (d_1², d_4², dim) in a three-element list", imported: false, apply: rule_three_plus_three },
        Rule { id: "rank7-prime7", statement: "rank 7 with 7 | dim is pointed or of dimension 28", imported: false, apply: rule_rank7_prime7 },
        Rule { id: "imported:rank6-integral", statement: "integral modular categories of rank 6 are pointed", imported: true, apply: rule_import_rank6_integral },
        Rule { id: "imported:rank7-integral-two-primes", statement: "non-pointed integral rank 7 needs at least three primes in dim", imported: true, apply: rule_import_rank7_two_primes },
        Rule { id: "imported:rank6-adjoint-table", statement: "low-rank premodular classification fixes the adjoint subcategory in rank 6", imported: true, apply: rule_import_rank6_adjoint },
        Rule { id: "family-match", statement: "profile of a constructed family", imported: false, apply: rule_family },
    ];
    R
}

pub fn rule_by_id(id: &str) -> Option<&'static Rule> {
    registry().iter().find(|r| r.id == id)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Verdict {
    Excluded { rule: String, detail: String },
    Realized { rule: String, family: String },
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileRecord {
    pub rank: usize,
    pub squared_dims: Vec<u64>,
    pub dim: u64,
    pub kind: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub profile: ProfileRecord,
    pub verdict: Verdict,
    pub rule_trace: Vec<String>,
    /// The deciding rule is cited, not derived.
    pub imported: bool,
}

impl Certificate {
    pub fn dim_profile(&self) -> DimProfile {
        DimProfile::new(self.profile.squared_dims.clone())
    }

    pub fn is_realized(&self) -> bool {
        matches!(self.verdict, Verdict::Realized { .. })
    }

    pub fn is_excluded(&self) -> bool {
        matches!(self.verdict, Verdict::Excluded { .. })
    }
}

/// Run the registry on one profile.
pub fn certify(p: &DimProfile) -> Certificate {
    let mut trace = Vec::new();
    let mut verdict = Verdict::Undecided;
    let mut imported = false;
    for rule in registry() {
        match (rule.apply)(p) {
            RuleOutcome::Skip => {}
            RuleOutcome::Pass(d) => trace.push(format!("{}: pass: {d}", rule.id)),
            RuleOutcome::Exclude(d) => {
                trace.push(format!("{}: exclude: {d}", rule.id));
                verdict = Verdict::Excluded { rule: rule.id.into(), detail: d };
                imported = rule.imported;
                break;
            }
            RuleOutcome::Realize(f, d) => {
                trace.push(format!("{}: realize {f}: {d}", rule.id));
                verdict = Verdict::Realized { rule: rule.id.into(), family: f.to_string() };
                break;
            }
        }
    }
    if verdict == Verdict::Undecided {
        trace.push("no rule decides this profile".into());
    }
    Certificate {
        profile: ProfileRecord {
            rank: p.rank,
            squared_dims: p.squared_dims.clone(),
            dim: p.dim,
            kind: p.kind().to_string(),
        },
        verdict,
        rule_trace: trace,
        imported,
    }
}

/// Certificates for every enumerated profile of rank r, in enumeration order.
pub fn classify_rank(r: usize, mode: Mode) -> Vec<Certificate> {
    enumerate_profiles(r, mode).par_iter().map(certify).collect()
}

/// Independent re-verification of a certificate.
pub fn recheck(c: &Certificate) -> Result<(), String> {
    let p = c.dim_profile();
    if p.dim != c.profile.dim || p.rank != c.profile.rank {
        return Err("profile record is inconsistent".into());
    }
    match &c.verdict {
        Verdict::Undecided => Err("undecided".into()),
        Verdict::Realized { family, .. } => {
            let f: FamilyId = family.parse().map_err(|e| format!("{e}"))?;
            let m = families::build(&f).map_err(|e| format!("{e}"))?;
            let got = m.squared_dims().ok_or("family datum is not weakly integral")?;
            if DimProfile::new(got) != p {
                return Err(format!("{family} does not reproduce {p}"));
            }
            if !m.verify_axioms().passed() {
                return Err(format!("{family} fails the axioms"));
            }
            Ok(())
        }
        Verdict::Excluded { rule, .. } => {
            let ok = match rule.as_str() {
                "squarefree-dim" => !p.is_pointed() && arith::factor(p.dim).iter().all(|&(_, e)| e == 1),
                "dim-4m" => recheck_4m(&p),
                "gn-grading" => recheck_gn(&p),
                "universal-grading" => recheck_grading(&p),
                "galois-support" => recheck_galois(&p),
                "three-plus-three" => recheck_33(&p),
                "rank7-prime7" => p.rank == 7 && p.dim.is_multiple_of(7) && p.dim != 28 && !p.is_pointed(),
                "imported:rank6-integral" => p.rank == 6 && p.is_integral() && !p.is_pointed(),
                "imported:rank7-integral-two-primes" => {
                    p.rank == 7 && p.is_integral() && !p.is_pointed() && arith::factor(p.dim).len() <= 2
                }
                "imported:rank6-adjoint-table" => {
                    matches!(rule_import_rank6_adjoint(&p), RuleOutcome::Exclude(_))
                }
                other => return Err(format!("unknown rule {other}")),
            };
            if ok {
                Ok(())
            } else {
                Err(format!("rule {rule} does not exclude {p} on recheck"))
            }
        }
    }
}

fn recheck_4m(p: &DimProfile) -> bool {
    if !p.dim.is_multiple_of(4) {
        return false;
    }
    let m = p.dim / 4;
    if m.is_multiple_of(2) || arith::factor(m).iter().any(|&(_, e)| e > 1) {
        return false;
    }
    let (c1, c2) = (p.count(1) as u64, p.count(2) as u64);
    if c1 as usize == p.rank && c1 == 4 * m {
        return false;
    }
    if c1 == 2 * m && c2 == m && c1 + c2 == p.rank as u64 {
        return false;
    }
    for k in arith::divisors(m).into_iter().filter(|&k| k > 1) {
        let n = m / k;
        let (c4, ck) = (p.count(4) as u64, p.count(k) as u64);
        if c1 == 2 * n && c4 == n * (k - 1) / 2 && ck == 2 * n && (c1 + c4 + ck) as usize == p.rank {
            return false;
        }
    }
    true
}

fn recheck_gn(p: &DimProfile) -> bool {
    if p.is_integral() {
        return false;
    }
    let mut cls: HashMap<u64, u64> = HashMap::new();
    for &x in &p.squared_dims {
        let mut k = 1;
        for (q, e) in arith::factor(x) {
            if e % 2 == 1 {
                k *= q;
            }
        }
        *cls.entry(k).or_default() += x;
    }
    let e = cls.len() as u64;
    let pow2 = e & (e - 1) == 0;
    !(pow2 && cls.values().all(|&v| v * e == p.dim) && (p.invertibles() as u64).is_multiple_of(e))
}

/// Brute force over all label → component assignments.
fn recheck_grading(p: &DimProfile) -> bool {
    if p.is_pointed() {
        return false;
    }
    let g = p.invertibles();
    let r = p.rank;
    if g == 0 || !p.dim.is_multiple_of(g as u64) {
        return true;
    }
    let total = (g as u64).pow(r as u32 - 1);
    for code in 0..total {
        let mut comps = vec![Vec::new(); g];
        comps[0].push(p.squared_dims[0]);
        let mut c = code;
        for i in 1..r {
            comps[(c % g as u64) as usize].push(p.squared_dims[i]);
            c /= g as u64;
        }
        if grading_ok(&comps, p.is_strict()) {
            return false;
        }
    }
    true
}

/// Enumerate every permutation of the non-unit labels and every choice of
/// support cycles among its cycles.
pub(crate) fn recheck_galois(p: &DimProfile) -> bool {
    let sq = &p.squared_dims;
    let n = sq.len() - 1;
    for q in arith::primes_of(p.dim).into_iter().filter(|&q| q >= 5) {
        let mut perm: Vec<usize> = (0..n).collect();
        let mut possible = false;
        'perms: loop {
            let mut seen = vec![false; n];
            let mut cycles = Vec::new();
            for s in 0..n {
                if seen[s] {
                    continue;
                }
                let mut c = vec![s];
                seen[s] = true;
                let mut x = perm[s];
                while x != s {
                    seen[x] = true;
                    c.push(x);
                    x = perm[x];
                }
                cycles.push(c);
            }
            let valid: Vec<&Vec<usize>> = cycles
                .iter()
                .filter(|c| {
                    let l = c.len() as u64;
                    (l == q - 1 || l == (q - 1) / 2) && c.iter().all(|&i| sq[i + 1] == sq[c[0] + 1])
                })
                .collect();
            for mask in 1u32..(1 << valid.len()) {
                let chosen: Vec<&Vec<usize>> =
                    (0..valid.len()).filter(|b| mask & (1 << b) != 0).map(|b| valid[b]).collect();
                let half = (q - 1) / 2;
                let ok = match chosen.as_slice() {
                    [c] => {
                        let l = c.len() as u64;
                        let d2 = sq[c[0] + 1];
                        p.dim * (q - 1) * (q - 1) == l * l * d2 * d2 * q && (l != half || d2.is_multiple_of(2))
                    }
                    [a, b] if a.len() as u64 == half && b.len() as u64 == half => {
                        let (x, y) = (sq[a[0] + 1] as i128, sq[b[0] + 1] as i128);
                        if arith::valuation(p.dim, q).is_multiple_of(2) {
                            x == y
                        } else {
                            (-1..=1).any(|e: i128| 4 * p.dim as i128 == (x * x + y * y + e * x * y) * q as i128)
                        }
                    }
                    _ => true,
                };
                if ok {
                    possible = true;
                    break 'perms;
                }
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        if !possible {
            return true;
        }
    }
    false
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn recheck_33(p: &DimProfile) -> bool {
    let s = &p.squared_dims;
    if p.rank != 7 || s[0] != 1 || s[1] != s[3] || s[4] != s[6] {
        return false;
    }
    !matches!((s[1], s[4]), (1, 1) | (1, 2) | (1, 4))
}

/// Realized profiles, as (profile, family spec) pairs.
pub fn realized(certs: &[Certificate]) -> Vec<(DimProfile, String)> {
    certs
        .iter()
        .filter_map(|c| match &c.verdict {
            Verdict::Realized { family, .. } => Some((c.dim_profile(), family.clone())),
            _ => None,
        })
        .collect()
}

/// Counts per deciding rule, for summaries.
pub fn rule_counts(certs: &[Certificate]) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for c in certs {
        let key = match &c.verdict {
            Verdict::Excluded { rule, .. } => format!("excluded by {rule}"),
            Verdict::Realized { rule, .. } => format!("realized by {rule}"),
            Verdict::Undecided => "undecided".into(),
        };
        *out.entry(key).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prof(v: &[u64]) -> DimProfile {
        DimProfile::new(v.to_vec())
    }

    #[test]
    fn sylvester_bound() {
        assert_eq!(dim_bound(2), 2);
        assert_eq!(dim_bound(3), 6);
        assert_eq!(dim_bound(4), 42);
        assert_eq!(dim_bound(7), 10_650_056_950_806);
        assert_eq!(dim_bound(8), DIM_CAP);
    }

    #[test]
    fn small_rank_streams() {
        // rank 2: {1,1} only; rank 3: {1,1,1} and Ising
        assert_eq!(enumerate_profiles(2, Mode::WeaklyIntegral), vec![prof(&[1, 1])]);
        let r3 = enumerate_profiles(3, Mode::WeaklyIntegral);
        assert_eq!(r3, vec![prof(&[1, 1, 1]), prof(&[1, 1, 2])]);
        assert_eq!(enumerate_profiles(3, Mode::Integral), vec![prof(&[1, 1, 1])]);
    }

    #[test]
    fn every_profile_is_an_egyptian_identity() {
        for p in enumerate_profiles(6, Mode::WeaklyIntegral) {
            assert_eq!(p.squared_dims.iter().sum::<u64>(), p.dim);
            assert!(p.squared_dims.iter().all(|&x| p.dim % x == 0), "{p}");
            assert_eq!(p.squared_dims[0], 1);
        }
    }

    #[test]
    fn standard_cyclic_is_first_form() {
        for n in 2..=24 {
            assert_eq!(standard_cyclic(n), MetricGroup::cyclic_forms(n).into_iter().next(), "n = {n}");
        }
    }

    #[test]
    fn tgal_examples() {
        let s = tgal_dimension_rules(28, 7, &CycleShape::Single { len: 3, d2: 4 });
        assert!(s.satisfiable, "{}", s.witness);
        let odd = tgal_dimension_rules(28, 7, &CycleShape::Single { len: 3, d2: 7 });
        assert!(!odd.satisfiable);
        // 11 d⁴/4 = 2 + 5d² in d² = x: 11x² − 20x − 8 = 0
        assert!(positive_integer_solutions(&[-8, -20, 11]).is_empty());
        assert_eq!(positive_integer_solutions(&[-1, -6, 7]), vec![1]);
        // pair, v_p odd: 4·20 = (4² + 4² + 0)·5 / 2? no; (4,4,ε=−1): 16·5 = 80
        assert!(tgal_dimension_rules(20, 5, &CycleShape::Pair { d2a: 4, d2b: 4 }).satisfiable);
        assert!(!tgal_dimension_rules(20, 5, &CycleShape::Pair { d2a: 1, d2b: 4 }).satisfiable);
        assert!(tgal_dimension_rules(25, 5, &CycleShape::Pair { d2a: 5, d2b: 5 }).satisfiable);
        assert!(!tgal_dimension_rules(25, 5, &CycleShape::Pair { d2a: 1, d2b: 5 }).satisfiable);
    }

    #[test]
    fn three_plus_three() {
        assert_eq!(three_plus_three_solutions(), vec![(1, 1, 7), (1, 2, 10), (1, 4, 16)]);
    }

    #[test]
    fn grading_partitions() {
        let ising_z2 = prof(&[1, 1, 1, 1, 2, 2]);
        let parts = universal_grading_partition(&ising_z2, true).unwrap();
        assert_eq!(parts.len(), 4);
        assert!(parts.iter().all(|c| c.iter().sum::<u64>() == 2));
        let meta5 = prof(&[1, 1, 4, 4, 5, 5]);
        let parts = universal_grading_partition(&meta5, true).unwrap();
        assert_eq!(parts, vec![vec![1, 1, 4, 4], vec![5, 5]]);
        // two invertibles, but no half-dimension component containing the unit
        assert!(universal_grading_partition(&prof(&[1, 1, 2, 2, 3, 3, 6]), true).is_none());
    }

    #[test]
    fn rules_fire_in_order() {
        let c = certify(&prof(&[1, 1, 1, 1, 1, 1]));
        assert!(matches!(c.verdict, Verdict::Realized { ref rule, .. } if rule == "pointed"));
        let c = certify(&prof(&[1, 2, 3, 6, 6, 18]));
        assert!(c.is_excluded());
        let c = certify(&prof(&[1, 1, 2, 2, 2, 2]));
        assert!(matches!(c.verdict, Verdict::Excluded { ref rule, .. } if rule == "squarefree-dim"));
        let c = certify(&prof(&[1, 1, 4, 4, 4, 7, 7]));
        assert!(matches!(c.verdict, Verdict::Realized { ref family, .. } if family == "metaplectic:n=7,s=1,u=0"));
    }

    #[test]
    fn later_rules_on_their_own() {
        assert!(matches!(rule_three_plus_three(&prof(&[1, 1, 1, 1, 3, 3, 3])), RuleOutcome::Exclude(_)));
        assert!(matches!(rule_three_plus_three(&prof(&[1, 1, 1, 1, 2, 2, 2])), RuleOutcome::Pass(_)));
        assert!(matches!(rule_rank7_prime7(&prof(&[1, 1, 4, 4, 4, 7, 7])), RuleOutcome::Pass(_)));
        assert!(matches!(rule_rank7_prime7(&prof(&[1, 1, 1, 1, 1, 1, 6])), RuleOutcome::Skip));
        assert!(matches!(rule_galois(&prof(&[1, 1, 4, 4, 5, 5])), RuleOutcome::Pass(_)));
        // dim 10: the only 2-cycle is on the two labels with d² = 2, and 10·16 ≠ 4·4·5
        assert!(matches!(rule_galois(&prof(&[1, 2, 2, 5])), RuleOutcome::Exclude(_)));
        assert!(recheck_galois(&prof(&[1, 2, 2, 5])));
        assert!(!recheck_galois(&prof(&[1, 1, 4, 4, 5, 5])));
    }

    #[test]
    fn galois_rule_agrees_with_permutation_search() {
        let mut excluded = Vec::new();
        for r in 4..=7 {
            for p in all_profiles(r) {
                let fast = matches!(rule_galois(&p), RuleOutcome::Exclude(_));
                assert_eq!(fast, recheck_galois(&p), "{p}");
                if fast {
                    excluded.push(p);
                }
            }
        }
        assert!(!excluded.is_empty());
    }

    #[test]
    fn catalog_profiles_pass_the_max_bound() {
        for r in 2..=8 {
            for (p, _) in family_catalog(r) {
                assert!(p.is_pointed() || p.dim / DimProfile::max(&p) < r as u64, "{p}");
            }
        }
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("integral".parse::<Mode>(), Ok(Mode::Integral));
        assert_eq!("weakly-integral".parse::<Mode>(), Ok(Mode::WeaklyIntegral));
        assert!("both".parse::<Mode>().is_err());
    }
}
