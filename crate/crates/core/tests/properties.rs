//! Property tests for the structural invariants.

mod common;

use proptest::prelude::*;

use common::{q, Dense};
use hlanti::action::{semidirect, Action};
use hlanti::cat1::{cat1_round_trip, validate_cat1, xmod_round_trip};
use hlanti::cohomology::{build_extension, section_independence_check};
use hlanti::corpus::{derived_extension_xmod, k3, m4, m4_bundle};
use hlanti::exactq::{kernel_basis, rref, solve, Mat, Scalar};
use hlanti::hla::{check_morphism, validate_hla, Hla};
use hlanti::io::{emit, load, Bundle};
use hlanti::representation::{direct_sum_criterion, HomModule};

fn scalar() -> impl Strategy<Value = Scalar> {
    (-3i64..=3, 1i64..=3).prop_map(|(n, d)| Scalar::frac(n, d))
}

fn nonzero() -> impl Strategy<Value = Scalar> {
    scalar().prop_filter("nonzero", |s| !s.is_zero())
}

fn matrix(r: usize, c: usize) -> impl Strategy<Value = Mat> {
    prop::collection::vec(scalar(), r * c)
        .prop_map(move |v| Mat::from_fn(r, c, |i, j| v[i * c + j].clone()))
}

fn invertible(n: usize) -> impl Strategy<Value = Mat> {
    matrix(n, n).prop_filter("invertible", |m| m.inverse().is_some())
}

/// Arbitrary (usually invalid) algebra with dims ≤ (2,2).
fn any_algebra() -> impl Strategy<Value = Hla> {
    (1usize..=2, 1usize..=2).prop_flat_map(|(n0, n1)| {
        (
            matrix(n0, n0),
            matrix(n1, n1),
            prop::collection::vec((0..n0, 0..n0, 0..n0, scalar()), 0..4),
            prop::collection::vec((0..n0, 0..n1, 0..n1, scalar()), 0..4),
            prop::collection::vec((0..n1, 0..n1, 0..n0, scalar()), 0..4),
        )
            .prop_map(move |(al, be, ee, eo, br)| {
                let mut a = Hla::new("random", n0, n1);
                a.alpha = al;
                a.beta = be;
                for (i, j, k, v) in ee {
                    a.set_even_even(i, j, k, v);
                }
                for (i, j, k, v) in eo {
                    a.set_even_odd(i, j, k, v);
                }
                for (i, j, k, v) in br {
                    if i != j {
                        a.set_bracket(i, j, k, v).unwrap();
                    }
                }
                a
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn storage_symmetries(a in any_algebra()) {
        for (i, j, k, v) in a.m00().entries() {
            prop_assert_eq!(&a.m00().get(j, i, k), v);
        }
        for (i, j, k, v) in a.brk().entries() {
            prop_assert_eq!(a.brk().get(j, i, k), -v);
        }
    }

    #[test]
    fn validator_agrees_with_dense_oracle(a in any_algebra()) {
        let lib: std::collections::BTreeSet<String> =
            hlanti::report::families(&validate_hla(&a).unwrap());
        let oracle: std::collections::BTreeSet<String> =
            Dense::of(&a).failing_families().into_iter().map(String::from).collect();
        prop_assert_eq!(lib, oracle);
    }

    #[test]
    fn json_round_trip_of_arbitrary_algebras(a in any_algebra()) {
        let b = Bundle::Algebra(a);
        prop_assert_eq!(load(&emit(&b)).unwrap(), b);
    }

    #[test]
    fn identity_is_always_a_morphism(a in any_algebra()) {
        let r = check_morphism(&a, &a, &Mat::identity(a.dim_even), &Mat::identity(a.dim_odd)).unwrap();
        prop_assert!(r.is_empty());
    }

    #[test]
    fn k3_family_is_valid_and_transports(mu in nonzero(), p0 in invertible(1), p1 in invertible(2)) {
        let a = k3(&mu).unwrap();
        prop_assert!(validate_hla(&a).unwrap().is_empty());
        let b = a.transport(&p0, &p1).unwrap();
        prop_assert!(validate_hla(&b).unwrap().is_empty());
        prop_assert!(check_morphism(&a, &b, &p0, &p1).unwrap().is_empty());
    }

    #[test]
    fn representation_iff_direct_sum(
        mu in nonzero(),
        m0 in 0usize..=2,
        m1 in 0usize..=2,
        seed in prop::collection::vec(scalar(), 40),
    ) {
        let a = k3(&mu).unwrap();
        let mut it = seed.into_iter().cycle();
        let mut next = || it.next().unwrap();
        let mut v = HomModule::zero(&a, m0, m1);
        v.alpha_v = Mat::from_fn(m0, m0, |_, _| next());
        v.beta_v = Mat::from_fn(m1, m1, |_, _| next());
        for t in [&mut v.rho0_even, &mut v.rho0_odd, &mut v.rho1_on_even, &mut v.rho1_on_odd] {
            let (d1, d2, d3) = t.dims();
            if d1 * d2 * d3 > 0 {
                t.set(0, 0, 0, next());
            }
        }
        let ds = direct_sum_criterion(&a, &v).unwrap();
        prop_assert_eq!(ds.rep_valid, ds.algebra_valid);
    }

    #[test]
    fn adjoint_semidirect_is_valid(mu in nonzero()) {
        for a in [k3(&mu).unwrap(), m4(&mu).unwrap()] {
            let sd = semidirect(&Action::adjoint(&a)).unwrap();
            prop_assert!(validate_hla(&sd.algebra).unwrap().is_empty());
        }
    }

    #[test]
    fn m4_bundle_cat1_and_round_trips(mu in nonzero()) {
        let b = m4_bundle(&mu).unwrap();
        prop_assert!(validate_cat1(&b.cat1).unwrap().is_empty());
        let f = xmod_round_trip(&b.xmod).unwrap();
        prop_assert!(f.check().unwrap().is_empty() && f.is_invertible());
        let g = cat1_round_trip(&b.cat1).unwrap();
        prop_assert!(g.check().unwrap().is_empty() && g.is_invertible());
    }

    #[test]
    fn kernel_and_solve(m in matrix(3, 4), x in prop::collection::vec(scalar(), 4)) {
        let k = kernel_basis(&m);
        prop_assert_eq!(k.cols() + m.rank(), 4);
        prop_assert!((&m * &k).is_zero());
        let (r, _) = rref(&m);
        prop_assert_eq!(rref(&r).0, r);
        let b = m.apply(&x);
        let y = solve(&m, &b).unwrap();
        prop_assert_eq!(m.apply(&y), b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn change_of_sections_on_random_seeds(a in 0u64..1000, b in 0u64..1000) {
        let e = build_extension(&derived_extension_xmod().unwrap()).unwrap();
        let out = section_independence_check(&e, a, b).unwrap();
        prop_assert!(out.holds);
    }
}

#[test]
fn oracle_sees_the_bracket_scale_as_valid() {
    let mut a = k3(&q("2")).unwrap();
    a.set_bracket(0, 1, 0, Scalar::one()).unwrap();
    assert!(Dense::of(&a).failing_families().is_empty());
}
