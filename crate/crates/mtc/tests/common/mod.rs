#![allow(dead_code)]

use mtc::families::{self, FamilyId, MetricGroup};
use mtc::{ModularDatum, Rational};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Nondegenerate forms on Z2 x Z2.
pub fn klein_forms() -> Vec<MetricGroup> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..2 {
                if let Ok(g) = MetricGroup::new(vec![2, 2], vec![q(a, 4), q(b, 4)], vec![q(c, 2)]) {
                    if g.is_nondegenerate() {
                        out.push(g);
                    }
                }
            }
        }
    }
    out
}

/// The documented family grid: pointed forms on Z_n (n ≤ 9) and Z2 x Z2,
/// Ising for odd ν < 16, metaplectic for N ∈ {3, 5, 7, 11, 13}.
pub fn family_grid() -> Vec<FamilyId> {
    let mut out = Vec::new();
    for n in 2..=9 {
        out.extend(MetricGroup::cyclic_forms(n).into_iter().map(FamilyId::Pointed));
    }
    out.extend(klein_forms().into_iter().map(FamilyId::Pointed));
    for nu in (1..16).step_by(2) {
        out.push(FamilyId::Ising { nu });
    }
    for n in [3u64, 5, 7, 11, 13] {
        for s in [1i8, -1] {
            let k = families::metaplectic_solutions(n, s).expect("metaplectic solutions").len();
            for u in 0..k {
                out.push(FamilyId::Metaplectic { n, s, u });
            }
        }
    }
    out
}

pub fn build(id: &FamilyId) -> ModularDatum {
    families::build(id).unwrap_or_else(|e| panic!("{id}: {e}"))
}
