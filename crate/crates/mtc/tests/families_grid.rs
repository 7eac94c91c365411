mod common;

use mtc::symmetry;
use mtc::CycNumber;

#[test]
fn galois_symmetry_on_the_grid() {
    for id in common::family_grid() {
        let m = common::build(&id);
        let rep = symmetry::check_galois_symmetry(&m).unwrap();
        assert!(rep.passed(), "{id}: {:?}", rep.violations);
        let g = symmetry::galois_group(&m).unwrap();
        for (k, perm) in g.elements.iter().zip(&g.perms) {
            for i in 0..m.rank() {
                // σ̂ permutes dimensions up to sign: σ(d_i) = ±d_σ̂(i)
                let img = m.dims()[i].galois(*k as i64).unwrap();
                let d = &m.dims()[perm[i]];
                assert!(img == *d || img == -d, "{id}: σ_{k} on d_{i}");
            }
        }
    }
}

#[test]
fn verlinde_rings_are_consistent() {
    for id in common::family_grid() {
        let m = common::build(&id);
        let f = m.fusion();
        assert!(f.verify_fusion_axioms().passed(), "{id}");
        for i in 0..m.rank() {
            assert_eq!(f.fpdim(i).unwrap(), m.dims()[i], "{id}: FPdim of {i}");
        }
        let ug = f.universal_grading();
        assert!(ug.is_faithful() && ug.is_compatible(f), "{id}");
        // |U(C)| = |G(C)| for modular categories
        assert_eq!(ug.group.order(), f.invertibles().len(), "{id}");
    }
}

#[test]
fn weakly_integral_data_have_integer_dimension() {
    for id in common::family_grid() {
        let m = common::build(&id);
        let d = m.global_dim_u64().unwrap();
        let sq = m.squared_dims().unwrap();
        assert_eq!(sq.iter().sum::<u64>(), d, "{id}");
        assert!(sq.iter().all(|&x| d.is_multiple_of(x)), "{id}");
        let (pp, pm, alpha) = m.gauss_sums();
        assert_eq!(&pp * &pm, CycNumber::from_i64(d as i64), "{id}");
        assert!(alpha.pow(8).is_one() || !m.fs_exponent().is_multiple_of(8) || alpha.order_of_root().is_some());
    }
}

#[test]
fn deligne_products_multiply_invariants() {
    let a = common::build(&"ising:nu=3".parse().unwrap());
    let b = common::build(&"metaplectic:n=5,s=-1,u=2".parse().unwrap());
    let p = a.deligne_product(&b);
    assert_eq!(p.rank(), 18);
    assert_eq!(p.global_dim(), &(a.global_dim() * b.global_dim()));
    assert!(p.verify_axioms().passed());
    assert_eq!(p.gauss_sums().2, &a.gauss_sums().2 * &b.gauss_sums().2);
}

mod random_forms {
    use mtc::arith;
    use mtc::families::{pointed_datum, MetricGroup};
    use mtc::symmetry;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn pointed_data_satisfy_everything(n in 2u64..28, pick in 0usize..64) {
            let forms = MetricGroup::cyclic_forms(n);
            let g = &forms[pick % forms.len()];
            let m = pointed_datum(g).unwrap();
            prop_assert!(m.verify_axioms().passed());
            prop_assert!(symmetry::check_galois_symmetry(&m).unwrap().passed());
            for p in arith::primes_of(m.fs_exponent()).into_iter().filter(|&p| p > 2) {
                prop_assert!(symmetry::support_cycles(&m, p).unwrap().passed());
            }
            let grp = m.fusion().invertibles_group();
            prop_assert_eq!(grp.order() as u64, n);
            for h in grp.subgroups() {
                let labels: Vec<usize> = h.iter().map(|&i| grp.elements[i]).collect();
                prop_assert!(symmetry::subgroup_analysis(&m, &labels).unwrap().passed());
            }
        }
    }
}
