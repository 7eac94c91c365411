//! Modular data (S, T): validation, Verlinde reconstruction, axioms and invariants.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith;
use crate::cyclo::CycNumber;
use crate::fusion::FusionRing;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("S is not symmetric at ({i},{j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("S S^† is not dim·I at ({i},{j})")]
    NotOrthogonal { i: usize, j: usize },
    #[error("Verlinde coefficient N_{{{i},{j}}}^{k} is not a nonnegative integer")]
    NonIntegerFusion { i: usize, j: usize, k: usize },
    #[error("dimension d_{i} = S_0{i} is not real and positive")]
    NonPositiveDims { i: usize },
    #[error("twist θ_{i} is invalid (θ_0 must be 1, all twists roots of unity)")]
    BadTwist { i: usize },
    #[error("anomaly p+/p- is not an 8th root of unity")]
    AnomalyNotEighthRoot,
    #[error("datum is not weakly integral")]
    NotWeaklyIntegral,
}

/// Family tag and parameters attached to constructed data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct Meta {
    pub family: String,
    pub params: serde_json::Value,
}

/// Unnormalized modular data with cached dimensions and Verlinde ring.
#[derive(Clone)]
pub struct ModularDatum {
    rank: usize,
    labels: Vec<String>,
    s: Vec<CycNumber>,
    t: Vec<CycNumber>,
    dims: Vec<CycNumber>,
    dim: CycNumber,
    fusion: FusionRing,
    meta: Option<Meta>,
}

impl fmt::Debug for ModularDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModularDatum(rank {}, dim {}, labels {:?})", self.rank, self.dim, self.labels)
    }
}

/// (s, t) = (S/D, λT) together with λ, √α and the level.
#[derive(Clone, Debug)]
pub struct NormalizedDatum {
    pub rank: usize,
    pub s: Vec<CycNumber>,
    pub t: Vec<CycNumber>,
    pub d: CycNumber,
    pub sqrt_alpha: CycNumber,
    pub lambda: CycNumber,
    pub level: u64,
}

impl NormalizedDatum {
    pub fn s(&self, i: usize, j: usize) -> &CycNumber {
        &self.s[i * self.rank + j]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Failing index tuples, empty when the check passed.
    pub witnesses: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub checks: Vec<Check>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, name: &str, witnesses: Vec<Vec<usize>>) {
        self.checks.push(Check { name: name.into(), passed: witnesses.is_empty(), witnesses });
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IntegralityKind {
    Pointed,
    Integral,
    StrictlyWeaklyIntegral,
    NotWeaklyIntegral,
}

impl fmt::Display for IntegralityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IntegralityKind::Pointed => "pointed",
            IntegralityKind::Integral => "integral",
            IntegralityKind::StrictlyWeaklyIntegral => "strictly_weakly_integral",
            IntegralityKind::NotWeaklyIntegral => "not_weakly_integral",
        })
    }
}

/// Integrality class plus the sorted multiset of d_i^2 (empty unless weakly integral).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegralityProfile {
    pub kind: IntegralityKind,
    pub squared_dims: Vec<u64>,
}

fn first_failure<F>(r: usize, f: F) -> Option<(usize, usize)>
where
    F: Fn(usize, usize) -> bool + Sync,
{
    (0..r)
        .into_par_iter()
        .filter_map(|i| (0..r).find(|&j| !f(i, j)).map(|j| (i, j)))
        .min()
}

fn all_failures<F>(r: usize, f: F) -> Vec<Vec<usize>>
where
    F: Fn(usize, usize) -> bool + Sync,
{
    let mut v: Vec<Vec<usize>> = (0..r)
        .into_par_iter()
        .flat_map_iter(|i| {
            let f = &f;
            (i..r).filter(move |&j| !f(i, j)).map(move |j| vec![i, j])
        })
        .collect();
    v.sort();
    v
}

impl ModularDatum {
    /// Validate (S, T) and build the datum.
    pub fn from_matrices(s: Vec<Vec<CycNumber>>, t: Vec<CycNumber>) -> Result<Self, ModError> {
        let r = s.len();
        if r == 0 || t.len() != r || s.iter().any(|row| row.len() != r) {
            return Err(ModError::Shape(format!(
                "S must be square and T of the same length (got {} rows, {} twists)",
                r,
                t.len()
            )));
        }
        let flat: Vec<CycNumber> = s.into_iter().flatten().collect();
        let at = |i: usize, j: usize| &flat[i * r + j];

        // globaldim as |row 0|^2 so the orthogonality test does not presuppose real dims
        let dim: CycNumber = (0..r).map(|k| at(0, k) * &at(0, k).conj()).sum();
        if let Some((i, j)) = first_failure(r, |i, j| {
            let v: CycNumber = (0..r).map(|k| at(i, k) * &at(j, k).conj()).sum();
            if i == j {
                v == dim
            } else {
                v.is_zero()
            }
        }) {
            return Err(ModError::NotOrthogonal { i, j });
        }
        if let Some((i, j)) = first_failure(r, |i, j| j <= i || at(i, j) == at(j, i)) {
            return Err(ModError::NotSymmetric { i, j });
        }
        for i in 0..r {
            let d = at(0, i);
            if !d.is_real() || d.real_sign() != Some(Ordering::Greater) {
                return Err(ModError::NonPositiveDims { i });
            }
        }
        if !at(0, 0).is_one() {
            return Err(ModError::NonPositiveDims { i: 0 });
        }
        if !t[0].is_one() {
            return Err(ModError::BadTwist { i: 0 });
        }
        for (i, th) in t.iter().enumerate() {
            if th.order_of_root().is_none() {
                return Err(ModError::BadTwist { i });
            }
        }
        let dims: Vec<CycNumber> = (0..r).map(|i| at(0, i).clone()).collect();
        let labels: Vec<String> = (0..r).map(|i| i.to_string()).collect();
        let fusion = verlinde(&flat, r, &dims, &dim, labels.clone())?;
        Ok(ModularDatum { rank: r, labels, s: flat, t, dims, dim, fusion, meta: None })
    }

    /// Assemble a datum whose axioms hold by construction.
    pub(crate) fn from_parts_trusted(
        labels: Vec<String>,
        s: Vec<CycNumber>,
        t: Vec<CycNumber>,
        fusion: FusionRing,
    ) -> Self {
        let r = labels.len();
        debug_assert_eq!(s.len(), r * r);
        let dims: Vec<CycNumber> = (0..r).map(|i| s[i].clone()).collect();
        let dim: CycNumber = dims.iter().map(|d| d * d).sum();
        ModularDatum { rank: r, labels, s, t, dims, dim, fusion, meta: None }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.rank);
        let n: Vec<u32> = {
            let f = &self.fusion;
            let r = self.rank;
            let mut v = Vec::with_capacity(r * r * r);
            for i in 0..r {
                for j in 0..r {
                    for k in 0..r {
                        v.push(f.n(i, j, k));
                    }
                }
            }
            v
        };
        self.fusion = FusionRing::from_flat(labels.clone(), self.fusion.duals().to_vec(), n);
        self.labels = labels;
        self
    }

    pub fn with_meta(mut self, family: impl Into<String>, params: serde_json::Value) -> Self {
        self.meta = Some(Meta { family: family.into(), params });
        self
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn meta(&self) -> Option<&Meta> {
        self.meta.as_ref()
    }

    pub fn s(&self, i: usize, j: usize) -> &CycNumber {
        &self.s[i * self.rank + j]
    }

    pub fn s_matrix(&self) -> Vec<Vec<CycNumber>> {
        self.s.chunks(self.rank).map(|c| c.to_vec()).collect()
    }

    pub fn t(&self, i: usize) -> &CycNumber {
        &self.t[i]
    }

    pub fn twists(&self) -> &[CycNumber] {
        &self.t
    }

    pub fn dims(&self) -> &[CycNumber] {
        &self.dims
    }

    pub fn global_dim(&self) -> &CycNumber {
        &self.dim
    }

    /// Global dimension as an integer, when it is one.
    pub fn global_dim_u64(&self) -> Option<u64> {
        self.dim.as_integer().and_then(|d| d.to_u64())
    }

    pub fn fusion(&self) -> &FusionRing {
        &self.fusion
    }

    pub fn dual(&self, i: usize) -> usize {
        self.fusion.dual(i)
    }

    /// Smallest conductor containing every S and T entry.
    pub fn conductor(&self) -> u64 {
        self.s
            .iter()
            .chain(self.t.iter())
            .fold(1, |acc, x| arith::lcm(acc, x.conductor()))
    }

    pub fn gauss_sums(&self) -> (CycNumber, CycNumber, CycNumber) {
        let d2: Vec<CycNumber> = self.dims.iter().map(|d| d * d).collect();
        let pp: CycNumber = d2.iter().zip(&self.t).map(|(a, t)| a * t).sum();
        let pm: CycNumber = d2.iter().zip(&self.t).map(|(a, t)| a * &t.conj()).sum();
        let alpha = pp.checked_div(&pm).expect("p- is nonzero for modular data");
        (pp, pm, alpha)
    }

    /// Frobenius–Schur exponent: the order of T.
    pub fn fs_exponent(&self) -> u64 {
        self.t
            .iter()
            .map(|t| t.order_of_root().expect("twists are roots of unity"))
            .fold(1, arith::lcm)
    }

    pub fn verify_axioms(&self) -> AxiomReport {
        let r = self.rank;
        let s = |i: usize, j: usize| &self.s[i * r + j];
        let t = &self.t;
        let mut rep = AxiomReport::default();

        rep.push(
            "orthogonality",
            all_failures(r, |i, j| {
                let v: CycNumber = (0..r).map(|k| s(i, k) * &s(j, k).conj()).sum();
                if i == j {
                    v == self.dim
                } else {
                    v.is_zero()
                }
            }),
        );

        let (pp, pm, alpha) = self.gauss_sums();
        // Σ_k S_ki S_kj θ_k, computed once per (i, j)
        rep.push(
            "twist equation",
            all_failures(r, |i, j| {
                let rhs: CycNumber = (0..r).map(|k| &(s(k, i) * s(k, j)) * &t[k]).sum();
                &pp * s(i, j) == &(&t[i] * &t[j]) * &rhs
            }),
        );

        let f = &self.fusion;
        let dt: Vec<CycNumber> = self.dims.iter().zip(t).map(|(d, th)| d * th).collect();
        let mut bal: Vec<Vec<usize>> = (0..r)
            .into_par_iter()
            .flat_map_iter(|i| {
                let di = f.dual(i);
                let dt = &dt;
                (0..r).filter_map(move |j| {
                    let rhs: CycNumber = (0..r)
                        .filter(|&k| f.n(di, j, k) > 0)
                        .map(|k| dt[k].scale(&crate::Rational::from_integer(f.n(di, j, k).into())))
                        .sum();
                    let lhs = &(s(i, j) * &t[i]) * &t[j];
                    (lhs != rhs).then(|| vec![i, j])
                })
            })
            .collect();
        bal.sort();
        rep.push("balancing equation", bal);

        let gauss = if &pp * &pm == self.dim { vec![] } else { vec![vec![]] };
        rep.push("gauss product", gauss);

        let n = self.fs_exponent();
        let anomaly = if alpha.pow(2 * n).is_one() { vec![] } else { vec![vec![]] };
        rep.push("anomaly order", anomaly);

        let eighth = if self.squared_dims().is_none() || alpha.pow(8).is_one() {
            vec![]
        } else {
            vec![vec![]]
        };
        rep.push("anomaly eighth root", eighth);

        let mut fs: Vec<Vec<usize>> = (0..r)
            .into_par_iter()
            .filter_map(|k| {
                let want = if f.dual(k) == k { None } else { Some(CycNumber::zero()) };
                let nu = self.fs_indicator(k);
                let ok = match want {
                    Some(z) => nu == z,
                    None => nu.is_one() || (-&nu).is_one(),
                };
                (!ok).then(|| vec![k])
            })
            .collect();
        fs.sort();
        rep.push("frobenius-schur indicator", fs);
        rep
    }

    /// Second Frobenius–Schur indicator ν_2(k) = (1/dim) Σ N_ij^k d_i d_j (θ_i/θ_j)^2.
    pub fn fs_indicator(&self, k: usize) -> CycNumber {
        let r = self.rank;
        let f = &self.fusion;
        let mut acc = CycNumber::zero();
        for i in 0..r {
            for j in 0..r {
                let m = f.n(i, j, k);
                if m == 0 {
                    continue;
                }
                let ratio = &self.t[i] * &self.t[j].conj();
                let term = &(&self.dims[i] * &self.dims[j]) * &(&ratio * &ratio);
                acc = &acc + &term.scale(&crate::Rational::from_integer(m.into()));
            }
        }
        acc.checked_div(&self.dim).expect("dim is nonzero")
    }

    /// (s, t) = (S/D, λT) with √α·D = p+ and λ = √α^5.
    pub fn normalize(&self) -> Result<NormalizedDatum, ModError> {
        let dim = self.global_dim_u64().ok_or(ModError::NotWeaklyIntegral)?;
        let (pp, _, alpha) = self.gauss_sums();
        if !alpha.pow(8).is_one() {
            return Err(ModError::AnomalyNotEighthRoot);
        }
        let root = arith::isqrt(dim);
        let d = if root * root == dim {
            CycNumber::from_i64(root as i64)
        } else {
            CycNumber::embed_sqrt(dim as i64)
        };
        let sqrt_alpha = pp.checked_div(&d).expect("D > 0");
        if !sqrt_alpha.pow(16).is_one() {
            return Err(ModError::AnomalyNotEighthRoot);
        }
        let lambda = sqrt_alpha.pow(5);
        let dinv = d.inv().expect("D > 0");
        let s: Vec<CycNumber> = self.s.iter().map(|x| x * &dinv).collect();
        let t: Vec<CycNumber> = self.t.iter().map(|x| &lambda * x).collect();
        let level = t
            .iter()
            .map(|x| x.order_of_root().expect("root of unity"))
            .fold(1, arith::lcm);
        Ok(NormalizedDatum { rank: self.rank, s, t, d, sqrt_alpha, lambda, level })
    }

    /// A ⊠ B: Kronecker S, elementwise T, tensor fusion ring.
    pub fn deligne_product(&self, other: &ModularDatum) -> ModularDatum {
        let (ra, rb) = (self.rank, other.rank);
        let r = ra * rb;
        let idx = |a: usize, b: usize| a * rb + b;
        let s: Vec<CycNumber> = (0..r * r)
            .into_par_iter()
            .map(|x| {
                let (i, j) = (x / r, x % r);
                self.s(i / rb, j / rb) * other.s(i % rb, j % rb)
            })
            .collect();
        let mut t = Vec::with_capacity(r);
        let mut labels = Vec::with_capacity(r);
        for a in 0..ra {
            for b in 0..rb {
                debug_assert_eq!(t.len(), idx(a, b));
                t.push(&self.t[a] * &other.t[b]);
                labels.push(product_label(&self.labels[a], &other.labels[b]));
            }
        }
        let fusion = self.fusion.tensor(&other.fusion);
        ModularDatum::from_parts_trusted(labels.clone(), s, t, fusion).with_labels(labels)
    }

    pub fn integrality_profile(&self) -> IntegralityProfile {
        let mut sq = Vec::with_capacity(self.rank);
        for d in &self.dims {
            match (d * d).as_integer().and_then(|x| x.to_u64()) {
                Some(x) => sq.push(x),
                None => {
                    return IntegralityProfile {
                        kind: IntegralityKind::NotWeaklyIntegral,
                        squared_dims: vec![],
                    }
                }
            }
        }
        sq.sort_unstable();
        let kind = if sq.iter().all(|&x| x == 1) {
            IntegralityKind::Pointed
        } else if sq.iter().all(|&x| arith::is_square(x)) {
            IntegralityKind::Integral
        } else {
            IntegralityKind::StrictlyWeaklyIntegral
        };
        IntegralityProfile { kind, squared_dims: sq }
    }

    /// d_i^2 as integers, when the datum is weakly integral.
    pub fn squared_dims(&self) -> Option<Vec<u64>> {
        self.dims
            .iter()
            .map(|d| (d * d).as_integer().and_then(|x| x.to_u64()))
            .collect()
    }
}

fn product_label(a: &str, b: &str) -> String {
    format!("{a}⊠{b}")
}

/// Verlinde formula N_ij^k = (1/dim) Σ_r S_ir S_jr conj(S_kr) / d_r.
pub fn verlinde(
    s: &[CycNumber],
    r: usize,
    dims: &[CycNumber],
    dim: &CycNumber,
    labels: Vec<String>,
) -> Result<FusionRing, ModError> {
    let at = |i: usize, j: usize| &s[i * r + j];
    let dim_inv = dim.inv().map_err(|_| ModError::NotOrthogonal { i: 0, j: 0 })?;
    let dinv: Vec<CycNumber> = dims
        .iter()
        .map(|d| &d.inv().expect("dims are nonzero") * &dim_inv)
        .collect();
    // b[j][k][x] = S_jx conj(S_kx)
    let conj: Vec<CycNumber> = s.iter().map(|x| x.conj()).collect();
    let rows: Vec<Result<Vec<u32>, ModError>> = (0..r)
        .into_par_iter()
        .map(|i| {
            let a: Vec<CycNumber> = (0..r).map(|x| at(i, x) * &dinv[x]).collect();
            let mut out = Vec::with_capacity(r * r);
            for j in 0..r {
                let aj: Vec<CycNumber> = (0..r).map(|x| &a[x] * at(j, x)).collect();
                for k in 0..r {
                    let v: CycNumber = (0..r).map(|x| &aj[x] * &conj[k * r + x]).sum();
                    let n = v
                        .as_integer()
                        .filter(|n| !n.is_negative())
                        .and_then(|n| n.to_u32())
                        .ok_or(ModError::NonIntegerFusion { i, j, k })?;
                    out.push(n);
                }
            }
            Ok(out)
        })
        .collect();
    let mut flat = Vec::with_capacity(r * r * r);
    for row in rows {
        flat.extend(row?);
    }
    let mut dual = vec![usize::MAX; r];
    for i in 0..r {
        for j in 0..r {
            if flat[(i * r + j) * r] == 1 {
                dual[i] = j;
            }
        }
        if dual[i] == usize::MAX {
            return Err(ModError::NonIntegerFusion { i, j: i, k: 0 });
        }
    }
    Ok(FusionRing::from_flat(labels, dual, flat))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt2() -> CycNumber {
        CycNumber::embed_sqrt(2)
    }

    pub(crate) fn ising_s() -> Vec<Vec<CycNumber>> {
        let one = CycNumber::one();
        let r2 = sqrt2();
        vec![
            vec![one.clone(), one.clone(), r2.clone()],
            vec![one.clone(), one.clone(), -&r2],
            vec![r2.clone(), -&r2, CycNumber::zero()],
        ]
    }

    fn ising(nu: i64) -> ModularDatum {
        let t = vec![CycNumber::one(), CycNumber::from_i64(-1), CycNumber::zeta(16, nu)];
        ModularDatum::from_matrices(ising_s(), t).unwrap()
    }

    #[test]
    fn ising_validates() {
        let m = ising(1);
        assert!(m.verify_axioms().passed());
        let f = m.fusion();
        assert_eq!((f.n(2, 2, 0), f.n(2, 2, 1), f.n(2, 2, 2)), (1, 1, 0));
        let (pp, pm, alpha) = m.gauss_sums();
        assert_eq!(pp, CycNumber::from_i64(2) * CycNumber::zeta(16, 1));
        assert_eq!(alpha, CycNumber::zeta(8, 1));
        assert_eq!(&pp * &pm, CycNumber::from_i64(4));
        assert_eq!(m.fs_exponent(), 16);
    }

    #[test]
    fn scaled_row_is_not_orthogonal() {
        let mut s = ising_s();
        for x in s[2].iter_mut() {
            *x = &*x * &CycNumber::from_i64(2);
        }
        let t = vec![CycNumber::one(), CycNumber::from_i64(-1), CycNumber::zeta(16, 1)];
        assert!(matches!(
            ModularDatum::from_matrices(s, t),
            Err(ModError::NotOrthogonal { .. })
        ));
    }

    #[test]
    fn trivial_datum() {
        let m = ModularDatum::from_matrices(vec![vec![CycNumber::one()]], vec![CycNumber::one()])
            .unwrap();
        assert!(m.verify_axioms().passed());
        let (pp, pm, a) = m.gauss_sums();
        assert!(pp.is_one() && pm.is_one() && a.is_one());
        assert_eq!(m.fs_exponent(), 1);
        let nd = m.normalize().unwrap();
        assert!(nd.lambda.is_one());
        assert_eq!(nd.t, vec![CycNumber::one()]);
    }

    #[test]
    fn corrupted_twist_fails_at_sigma_sigma() {
        let t = vec![
            CycNumber::one(),
            CycNumber::from_i64(-1),
            &CycNumber::zeta(16, 1) * &CycNumber::zeta(3, 1),
        ];
        let m = ModularDatum::from_matrices(ising_s(), t).unwrap();
        let rep = m.verify_axioms();
        // Eqs. (1)-(3) cannot see this change: with S_σσ = 0 and θ_ψ = −1 both sides
        // of the twist equation at (σ,σ) vanish for every θ_σ
        assert!(rep.check("twist equation").unwrap().passed);
        assert!(rep.check("balancing equation").unwrap().passed);
        assert!(!rep.check("anomaly eighth root").unwrap().passed);
        assert_eq!(rep.check("frobenius-schur indicator").unwrap().witnesses, vec![vec![2]]);
        assert!(matches!(m.normalize(), Err(ModError::AnomalyNotEighthRoot)));
    }

    #[test]
    fn flipped_psi_twist_fails_at_sigma_sigma() {
        let t = vec![CycNumber::one(), CycNumber::one(), CycNumber::zeta(16, 1)];
        let m = ModularDatum::from_matrices(ising_s(), t).unwrap();
        let rep = m.verify_axioms();
        assert!(rep.check("twist equation").unwrap().witnesses.contains(&vec![2, 2]));
    }

    #[test]
    fn semion_verlinde() {
        let one = CycNumber::one();
        let s = vec![vec![one.clone(), one.clone()], vec![one.clone(), -&one]];
        let m = ModularDatum::from_matrices(s, vec![one.clone(), CycNumber::zeta(4, 1)]).unwrap();
        assert!(m.fusion().is_pointed());
        assert_eq!(m.fusion().n(1, 1, 0), 1);
    }

    #[test]
    fn ising_normalization() {
        let m = ising(1);
        let nd = m.normalize().unwrap();
        assert_eq!(nd.d, CycNumber::from_i64(2));
        assert_eq!(nd.sqrt_alpha, CycNumber::zeta(16, 1));
        assert_eq!(nd.lambda, CycNumber::zeta(16, 5));
    }

    #[test]
    fn ising_profile_and_product() {
        let m = ising(1);
        let p = m.integrality_profile();
        assert_eq!(p.kind, IntegralityKind::StrictlyWeaklyIntegral);
        assert_eq!(p.squared_dims, vec![1, 1, 2]);
        let one = CycNumber::one();
        let triv = ModularDatum::from_matrices(vec![vec![one.clone()]], vec![one]).unwrap();
        let prod = m.deligne_product(&triv);
        assert_eq!(prod.s_matrix(), m.s_matrix());
        assert_eq!(prod.twists(), m.twists());
    }
}
