//! Galois action on labels, Galois symmetry, p-automorphisms and support
//! cycles, Müger centralizers and subgroup gradings.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith;
use crate::cyclo::CycNumber;
use crate::moddata::{Check, ModError, ModularDatum};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymError {
    #[error("no label permutation is consistent with σ_{k}")]
    NoPermutation { k: u64 },
    #[error("{p} does not divide the FS exponent")]
    PrimeNotInExponent { p: u64 },
    #[error("{p} is not an odd prime")]
    NotOddPrime { p: u64 },
    #[error("label set is not closed under fusion and duality")]
    NotASubcategory,
    #[error("label set is not a subgroup of the invertible objects")]
    NotASubgroup,
    #[error(transparent)]
    Mod(#[from] ModError),
}

/// Galois group of K_C acting on labels.
#[derive(Clone, Debug, Serialize)]
pub struct GaloisGroupDescr {
    pub field_conductor: u64,
    /// Smallest residue representing each distinct automorphism of K_C.
    pub elements: Vec<u64>,
    /// perms[x] is σ̂ for elements[x].
    pub perms: Vec<Vec<usize>>,
}

impl GaloisGroupDescr {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn perm_of(&self, k: u64) -> Option<&[usize]> {
        self.elements.iter().position(|&e| e == k).map(|x| self.perms[x].as_slice())
    }
}

/// Column ratios S_ij/d_j, the data on which σ̂ is read off.
pub struct ColumnMatcher {
    n: u64,
    cols: Vec<Vec<CycNumber>>,
    index: HashMap<Vec<CycNumber>, usize>,
}

impl ColumnMatcher {
    pub fn new(m: &ModularDatum) -> Self {
        let r = m.rank();
        let cols: Vec<Vec<CycNumber>> = (0..r)
            .into_par_iter()
            .map(|j| {
                let dinv = m.dims()[j].inv().expect("dims are positive");
                (0..r).map(|i| m.s(i, j) * &dinv).collect()
            })
            .collect();
        let index = cols.iter().cloned().enumerate().map(|(j, c)| (c, j)).collect();
        ColumnMatcher { n: splitting_conductor(m), cols, index }
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    /// σ̂ for σ_k, with k any integer coprime to the splitting conductor.
    pub fn perm(&self, k: u64) -> Result<Vec<usize>, SymError> {
        let kk = (k % self.n) as i64;
        if arith::gcd(k % self.n, self.n) != 1 && self.n > 1 {
            return Err(SymError::NoPermutation { k });
        }
        let mut out = Vec::with_capacity(self.cols.len());
        for c in &self.cols {
            let img: Vec<CycNumber> = c
                .iter()
                .map(|x| x.galois(kk.rem_euclid(x.conductor() as i64).max(1)))
                .collect::<Result<_, _>>()
                .map_err(|_| SymError::NoPermutation { k })?;
            match self.index.get(&img) {
                Some(&l) => out.push(l),
                None => return Err(SymError::NoPermutation { k }),
            }
        }
        Ok(out)
    }
}

/// Smallest n with every S entry in ℚ(ζ_n).
pub fn splitting_conductor(m: &ModularDatum) -> u64 {
    let r = m.rank();
    let mut n = 1;
    for i in 0..r {
        for j in i..r {
            n = arith::lcm(n, m.s(i, j).conductor());
        }
    }
    n
}

pub fn galois_group(m: &ModularDatum) -> Result<GaloisGroupDescr, SymError> {
    let matcher = ColumnMatcher::new(m);
    let n = matcher.conductor();
    let r = m.rank();
    let mut seen: HashMap<Vec<CycNumber>, usize> = HashMap::new();
    let mut elements = Vec::new();
    let mut perms = Vec::new();
    for k in 1..=n.max(1) {
        if arith::gcd(k, n) != 1 || (k == n && n > 1) {
            continue;
        }
        let key: Vec<CycNumber> = (0..r)
            .flat_map(|i| (i..r).map(move |j| (i, j)))
            .map(|(i, j)| {
                let x = m.s(i, j);
                x.galois((k % x.conductor()) as i64).expect("coprime")
            })
            .collect();
        if seen.contains_key(&key) {
            continue;
        }
        seen.insert(key, elements.len());
        perms.push(matcher.perm(k)?);
        elements.push(k % n.max(1));
    }
    if elements.is_empty() {
        elements.push(0);
        perms.push((0..r).collect());
    }
    Ok(GaloisGroupDescr { field_conductor: n, elements, perms })
}

#[derive(Clone, Debug, Serialize)]
pub struct SymmetryViolation {
    pub residue: u64,
    pub label: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SymmetryReport {
    /// Modulus of the residues that were tested.
    pub modulus: u64,
    pub violations: Vec<SymmetryViolation>,
}

impl SymmetryReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check σ^2(t_i) = t_{σ̂(i)} for every σ in Gal(ℚ(ζ_M)/ℚ), M covering S and t.
pub fn check_galois_symmetry(m: &ModularDatum) -> Result<SymmetryReport, SymError> {
    let nd = m.normalize()?;
    let matcher = ColumnMatcher::new(m);
    let n = matcher.conductor();
    let modulus = arith::lcm(n, nd.level);
    let ks: Vec<u64> = (1..=modulus).filter(|&k| arith::gcd(k, modulus) == 1).collect();
    let mut perm_cache: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for &k in &ks {
        let kn = k % n;
        if let std::collections::btree_map::Entry::Vacant(e) = perm_cache.entry(kn) {
            e.insert(matcher.perm(k)?);
        }
    }
    let mut violations: Vec<SymmetryViolation> = ks
        .par_iter()
        .flat_map_iter(|&k| {
            let perm = &perm_cache[&(k % n)];
            let t = &nd.t;
            (0..m.rank()).filter_map(move |i| {
                let c = t[i].conductor();
                let k2 = ((k as u128 * k as u128) % c as u128) as i64;
                let lhs = t[i].galois(k2.max(if c == 1 { 1 } else { 0 })).expect("coprime");
                (lhs != t[perm[i]]).then_some(SymmetryViolation { residue: k, label: i })
            })
        })
        .collect();
    violations.sort_by_key(|v| (v.residue, v.label));
    Ok(SymmetryReport { modulus, violations })
}

/// Residue k mod 12N with k ≡ g mod p^b (g the least primitive root) and k ≡ 1 elsewhere.
pub fn p_automorphism(m: &ModularDatum, p: u64) -> Result<PAutomorphism, SymError> {
    if p == 2 || !arith::is_prime(p) {
        return Err(SymError::NotOddPrime { p });
    }
    let fs = m.fs_exponent();
    if !fs.is_multiple_of(p) {
        return Err(SymError::PrimeNotInExponent { p });
    }
    let modulus = 12 * fs;
    let b = arith::valuation(modulus, p);
    let pb = p.pow(b);
    let g = arith::primitive_root(pb).expect("odd prime powers have primitive roots");
    let (k, _) = arith::crt(&[(g, pb), (1, modulus / pb)]);
    Ok(PAutomorphism { prime: p, modulus, residue: k, primitive_root: g })
}

#[derive(Clone, Debug, Serialize)]
pub struct PAutomorphism {
    pub prime: u64,
    pub modulus: u64,
    pub residue: u64,
    pub primitive_root: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CycleInfo {
    pub labels: Vec<usize>,
    /// v_p of the twist order on the cycle.
    pub ell: u32,
    pub is_support: bool,
    pub is_maximal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SupportCycleReport {
    pub prime: u64,
    pub automorphism: PAutomorphism,
    pub permutation: Vec<usize>,
    pub cycles: Vec<CycleInfo>,
    pub checks: Vec<Check>,
}

impl SupportCycleReport {
    pub fn support_cycles(&self) -> impl Iterator<Item = &CycleInfo> {
        self.cycles.iter().filter(|c| c.is_support)
    }

    pub fn maximal_cycles(&self) -> impl Iterator<Item = &CycleInfo> {
        self.cycles.iter().filter(|c| c.is_maximal)
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Disjoint cycles of a permutation, each starting at its least label, sorted.
pub fn cycles_of(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for s in 0..perm.len() {
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
        out.push(c);
    }
    out
}

fn check(name: &str, witnesses: Vec<Vec<usize>>) -> Check {
    Check { name: name.into(), passed: witnesses.is_empty(), witnesses }
}

pub fn support_cycles(m: &ModularDatum, p: u64) -> Result<SupportCycleReport, SymError> {
    let aut = p_automorphism(m, p)?;
    let matcher = ColumnMatcher::new(m);
    let perm = matcher.perm(aut.residue)?;
    let a = arith::valuation(m.fs_exponent(), p);
    let ords: Vec<u64> = m
        .twists()
        .iter()
        .map(|t| t.order_of_root().expect("root of unity"))
        .collect();
    let mut uniform = Vec::new();
    let cycles: Vec<CycleInfo> = cycles_of(&perm)
        .into_iter()
        .map(|c| {
            let ell = arith::valuation(ords[c[0]], p);
            if c.iter().any(|&j| arith::valuation(ords[j], p) != ell) {
                uniform.push(c.clone());
            }
            CycleInfo { is_support: ell > 0, is_maximal: ell > 0 && ell == a, ell, labels: c }
        })
        .collect();

    let phi_pa = arith::totient(p.pow(a));
    let divis: Vec<Vec<usize>> = cycles
        .iter()
        .filter(|c| c.is_support)
        .filter(|c| {
            let len = c.labels.len() as u64;
            let lo = arith::totient(p.pow(c.ell)) / 2;
            !len.is_multiple_of(lo) || !phi_pa.is_multiple_of(len)
        })
        .map(|c| c.labels.clone())
        .collect();

    let f = m.fusion();
    let c0 = cycles.iter().find(|c| c.labels[0] == 0).expect("0 lies in some cycle");
    let mut zero = Vec::new();
    if c0.labels.len() > 2 {
        zero.push(c0.labels.clone());
    }
    for &j in &c0.labels {
        if !m.t(j).is_one() {
            zero.push(vec![j]);
        }
    }
    let g = perm[0];
    if !f.is_invertible(g) || f.dual(g) != g {
        zero.push(vec![g]);
    }
    let maximal_exists = if a > 0 && !cycles.iter().any(|c| c.is_maximal) { vec![vec![]] } else { vec![] };

    let checks = vec![
        check("twist order constant on cycles", uniform),
        check("support cycle length divisibility", divis),
        check("cycle through 0", zero),
        check("maximal support cycle exists", maximal_exists),
    ];
    Ok(SupportCycleReport { prime: p, automorphism: aut, permutation: perm, cycles, checks })
}

/// {X : S_XY = d_X d_Y for all Y in D}; D must be closed under fusion and duality.
pub fn muger_centralizer(m: &ModularDatum, d: &[usize]) -> Result<Vec<usize>, SymError> {
    let f = m.fusion();
    if d.iter().any(|&y| y >= m.rank() || !d.contains(&f.dual(y))) || !f.is_fusion_closed(d) {
        return Err(SymError::NotASubcategory);
    }
    let dims = m.dims();
    Ok((0..m.rank())
        .filter(|&x| d.iter().all(|&y| *m.s(x, y) == &dims[x] * &dims[y]))
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct Component {
    /// χ(h) = S_hj/(d_h d_j) for h in H, in the order of `SubgroupAnalysis::h`.
    pub character: Vec<CycNumber>,
    pub labels: Vec<usize>,
    pub orbits: Vec<Vec<usize>>,
    /// Stabilizer in H of the first label of each orbit.
    pub stabilizers: Vec<Vec<usize>>,
    pub dim: CycNumber,
    pub is_trivial: bool,
    pub is_chi_h: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubgroupAnalysis {
    pub h: Vec<usize>,
    pub is_self_centralizing: bool,
    /// d_h θ_h for h in H, when H is self-centralizing.
    pub chi_h: Option<Vec<CycNumber>>,
    pub is_tannakian: bool,
    pub components: Vec<Component>,
    pub checks: Vec<Check>,
}

impl SubgroupAnalysis {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn component_of(&self, label: usize) -> Option<&Component> {
        self.components.iter().find(|c| c.labels.contains(&label))
    }
}

pub fn subgroup_analysis(m: &ModularDatum, h: &[usize]) -> Result<SubgroupAnalysis, SymError> {
    let f = m.fusion();
    let r = m.rank();
    let mut h: Vec<usize> = h.to_vec();
    h.sort_unstable();
    h.dedup();
    if !h.contains(&0) || h.iter().any(|&x| x >= r || !f.is_invertible(x)) || !f.is_fusion_closed(&h) {
        return Err(SymError::NotASubgroup);
    }
    let dims = m.dims();
    let self_c = h.iter().all(|&a| h.iter().all(|&b| *m.s(a, b) == &dims[a] * &dims[b]));
    let chi_h: Option<Vec<CycNumber>> =
        self_c.then(|| h.iter().map(|&x| &dims[x] * m.t(x)).collect());
    let tannakian = chi_h.as_ref().is_some_and(|c| c.iter().all(|x| x.is_one()));

    let chars: Vec<Vec<CycNumber>> = (0..r)
        .into_par_iter()
        .map(|j| {
            let dinv = dims[j].inv().expect("positive");
            h.iter().map(|&x| &(m.s(x, j) * &dinv) * &dims[x].inv().expect("positive")).collect()
        })
        .collect();
    let mut groups: Vec<(Vec<CycNumber>, Vec<usize>)> = Vec::new();
    for (j, c) in chars.into_iter().enumerate() {
        match groups.iter_mut().find(|(k, _)| *k == c) {
            Some((_, v)) => v.push(j),
            None => groups.push((c, vec![j])),
        }
    }
    let act = |g: usize, j: usize| f.g_action(g, j).expect("invertible");
    let components: Vec<Component> = groups
        .into_iter()
        .map(|(character, labels)| {
            let mut orbits: Vec<Vec<usize>> = Vec::new();
            for &j in &labels {
                if orbits.iter().any(|o| o.contains(&j)) {
                    continue;
                }
                let mut o: Vec<usize> = h.iter().map(|&g| act(g, j)).collect();
                o.sort_unstable();
                o.dedup();
                orbits.push(o);
            }
            let stabilizers = orbits
                .iter()
                .map(|o| h.iter().copied().filter(|&g| act(g, o[0]) == o[0]).collect())
                .collect();
            let dim: CycNumber = labels.iter().map(|&j| &dims[j] * &dims[j]).sum();
            let is_trivial = character.iter().all(|x| x.is_one());
            let is_chi_h = chi_h.as_ref().is_some_and(|c| *c == character);
            Component { character, labels, orbits, stabilizers, dim, is_trivial, is_chi_h }
        })
        .collect();

    let mut checks = Vec::new();
    let target = m
        .global_dim()
        .checked_div(&CycNumber::from_i64(h.len() as i64))
        .expect("nonzero");
    checks.push(check(
        "component dimension",
        components.iter().filter(|c| c.dim != target).map(|c| c.labels.clone()).collect(),
    ));
    checks.push(check(
        "component count",
        if components.len() == h.len() { vec![] } else { vec![vec![components.len()]] },
    ));
    let mut g1 = Vec::new();
    let mut g1b = Vec::new();
    let mut g3 = Vec::new();
    if self_c {
        for c in &components {
            for o in &c.orbits {
                if o.len() == 1 {
                    if tannakian && !c.is_trivial {
                        g1.push(o.clone());
                    }
                    if !tannakian && !c.is_chi_h {
                        g1b.push(o.clone());
                    }
                }
            }
        }
        if let Some(single) = components.iter().find(|c| c.orbits.len() == 1) {
            let triv = components.iter().find(|c| c.is_trivial).expect("trivial component");
            let h0 = single.stabilizers[0].len() as i64;
            let index = h.len() as i64 / h0;
            for &k in &triv.labels {
                match dims[k].as_integer() {
                    None => g3.push(vec![k]),
                    Some(dk) => {
                        let fixed = h.iter().all(|&g| act(g, k) == k);
                        if fixed && dk % index != 0.into() {
                            g3.push(vec![k]);
                        }
                    }
                }
            }
        }
    }
    checks.push(check("tannakian nontrivial component has no fixed label", g1));
    checks.push(check("fixed labels lie in the chi_H component", g1b));
    checks.push(check("single-orbit component forces integral trivial component", g3));

    let elementary2 = h.iter().all(|&g| f.product(g, g)[0].0 == 0);
    let mut comm = Vec::new();
    if self_c && elementary2 && h.len() > 1 {
        let gal = galois_group(m)?;
        for perm in &gal.perms {
            for &g in &h {
                for j in 0..r {
                    if act(g, perm[j]) != perm[act(g, j)] {
                        comm.push(vec![g, j]);
                    }
                }
            }
        }
    }
    checks.push(check("H and Galois actions commute", comm));
    Ok(SubgroupAnalysis { h, is_self_centralizing: self_c, chi_h, is_tannakian: tannakian, components, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{ising_datum, metaplectic_datum, pointed_datum, MetricGroup};

    #[test]
    fn ising_galois_group() {
        let m = ising_datum(1).unwrap();
        assert_eq!(splitting_conductor(&m), 8);
        let g = galois_group(&m).unwrap();
        assert_eq!(g.order(), 2);
        let nontrivial = g.elements.iter().find(|&&k| k != 1).unwrap();
        // σ̂ moves √2 to −√2, so the 1 and ψ columns trade places
        let perm = g.perm_of(*nontrivial).unwrap();
        assert_eq!(perm, [1, 0, 2]);
        assert!(check_galois_symmetry(&m).unwrap().passed());
    }

    #[test]
    fn semion_has_trivial_group() {
        let m = pointed_datum(&MetricGroup::cyclic(2, 1, 4).unwrap()).unwrap();
        assert_eq!(galois_group(&m).unwrap().order(), 1);
    }

    #[test]
    fn cycles_decomposition() {
        assert_eq!(cycles_of(&[1, 0, 2, 4, 5, 3]), vec![vec![0, 1], vec![2], vec![3, 4, 5]]);
    }

    #[test]
    fn metaplectic_support_cycle() {
        let m = metaplectic_datum(5, 1, 0).unwrap();
        let rep = support_cycles(&m, 5).unwrap();
        assert!(rep.passed());
        let sup: Vec<&CycleInfo> = rep.support_cycles().collect();
        assert_eq!(sup.len(), 1);
        assert_eq!(sup[0].labels.len(), 2);
        assert!(sup[0].labels.iter().all(|&i| m.dims()[i] == CycNumber::from_i64(2)));
        assert!(matches!(support_cycles(&m, 4), Err(SymError::NotOddPrime { .. })));
    }

    #[test]
    fn centralizer_and_subgroups() {
        let m = metaplectic_datum(5, 1, 0).unwrap();
        let g = m.fusion().invertibles();
        assert_eq!(g, vec![0, 1]);
        let a = subgroup_analysis(&m, &g).unwrap();
        assert!(a.passed());
        assert!(a.is_tannakian);
        assert_eq!(a.components.len(), 2);
        assert!(matches!(subgroup_analysis(&m, &[0, 2]), Err(SymError::NotASubgroup)));
        // the centralizer of the whole category is trivial
        let all: Vec<usize> = (0..m.rank()).collect();
        assert_eq!(muger_centralizer(&m, &all).unwrap(), vec![0]);
    }
}
