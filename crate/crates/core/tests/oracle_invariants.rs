//! Cross-module invariants: the coefficient equation agrees with the
//! Schouten oracle on arbitrary coefficient assignments (not only on
//! constructed specs), complement roots never have zero image, and the
//! torsion stays within its structural bounds on larger enumerations.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};

use maxrank_core::brackets::{check_coefficient_equation, BracketSpec};
use maxrank_core::multivec::{bivector_from_spec, kappa0, phi};
use maxrank_core::rootsys::{RootSystem, TypeLabel};
use maxrank_core::scalars::CycQ;
use maxrank_core::subsystems::{
    apply_chain, enumerate_subsystems, gamma_of_set, EnumerateOptions, Step, Subsystem,
};

fn build(s: &str) -> Arc<RootSystem> {
    Arc::new(RootSystem::build(TypeLabel::parse(s).unwrap()).unwrap())
}

fn random_value(rng: &mut rand::rngs::StdRng) -> CycQ {
    let z3 = CycQ::root_of_unity(3).unwrap();
    match rng.gen_range(0..6) {
        0 => CycQ::zero(),
        1 => CycQ::one(),
        2 => CycQ::from_int(-1),
        3 => CycQ::from_int(rng.gen_range(2..=3)),
        4 => CycQ::from_ratio(1, 2),
        _ => z3,
    }
}

/// Random antisymmetric class-constant coefficient maps must satisfy the
/// coefficient equation exactly when their bivector squares to the scaled
/// invariant trivector.
#[test]
fn equation_agrees_with_schouten_oracle_on_random_assignments() {
    let cases: Vec<(&str, Vec<Step>)> = vec![
        ("A2", vec![Step::Levi(vec![])]),
        ("B2", vec![Step::Levi(vec![])]),
        ("B2", vec![Step::Dynkin { index: 1, n: 2 }]),
        ("G2", vec![Step::Levi(vec![])]),
        ("G2", vec![Step::Dynkin { index: 1, n: 3 }]),
        ("A3", vec![Step::Levi(vec![])]),
        ("A3", vec![Step::Levi(vec![0, 2])]),
        ("A3", vec![Step::Dynkin { index: 1, n: 2 }]),
    ];
    let mut rng = rand::rngs::StdRng::seed_from_u64(20260809);
    let k0 = kappa0();
    let mut agreements = 0usize;
    let mut nontrivial = 0usize;
    for (algebra, chain) in &cases {
        let rs = build(algebra);
        let sub = apply_chain(rs.clone(), chain).unwrap();
        let gamma = sub.gamma();
        let group = &gamma.group;
        let phi_m = phi(&rs).project_to_m(&sub);
        // positive-representative classes
        let mut pos_classes = Vec::new();
        for r in sub.complement() {
            if r < rs.num_positive() {
                let img = gamma.images[r].clone();
                if !pos_classes.contains(&img) {
                    pos_classes.push(img);
                }
            }
        }
        for _ in 0..100 {
            // random antisymmetric assignment keyed by classes
            let mut coeffs: BTreeMap<_, _> = BTreeMap::new();
            for class in &pos_classes {
                let v = random_value(&mut rng);
                let neg = group.neg(class);
                if neg == *class {
                    coeffs.insert(class.clone(), CycQ::zero());
                } else {
                    coeffs.insert(class.clone(), v.clone());
                    coeffs.insert(neg, -v);
                }
            }
            // fill any complement classes missed by representatives
            for r in sub.complement() {
                coeffs.entry(gamma.images[r].clone()).or_insert_with(CycQ::zero);
            }
            let kappa2 = match rng.gen_range(0..4) {
                0 => CycQ::zero(),
                1 => CycQ::one(),
                2 => CycQ::from_int(-1),
                _ => CycQ::from_int(2),
            };
            let spec = BracketSpec::explicit(&sub, &gamma, coeffs, kappa2.clone()).unwrap();
            let equation = check_coefficient_equation(&spec, group, &kappa2).holds;
            let s = bivector_from_spec(&spec, &sub, &gamma).unwrap();
            let ss = s.schouten(&s, &rs).project_to_m(&sub);
            let oracle = ss == phi_m.scale(&(&kappa2 * &k0));
            assert_eq!(
                equation, oracle,
                "{algebra}/{chain:?}: equation verdict and oracle verdict diverge"
            );
            agreements += 1;
            if equation {
                nontrivial += 1;
            }
        }
    }
    assert!(agreements >= 800);
    // sanity: the suite must exercise satisfied instances too
    assert!(nontrivial > 0, "no satisfied instances drawn");
}

/// All shared types are immutable after construction and safe to hand to
/// worker threads.
#[test]
fn core_types_are_send_and_sync() {
    fn check<T: Send + Sync>() {}
    check::<RootSystem>();
    check::<Subsystem>();
    check::<CycQ>();
    check::<maxrank_core::multivec::Multivector>();
    check::<maxrank_core::abelian::AbelianGroup>();
    check::<maxrank_core::abelian::Subgroup>();
    check::<BracketSpec>();
}

/// Every complement root of every enumerated subsystem has nonzero image.
#[test]
fn complement_roots_have_nonzero_images() {
    for s in ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2"] {
        let rs = build(s);
        let opts = EnumerateOptions::new(&rs);
        let en = enumerate_subsystems(&rs, &opts);
        for key in en.sets() {
            let set: BTreeSet<usize> = key.iter().copied().collect();
            let gamma = gamma_of_set(&rs, &set);
            let sub = Subsystem::from_root_set(rs.clone(), set).unwrap();
            let zero = gamma.zero_image_complement_roots(&sub);
            assert!(
                zero.is_empty(),
                "{s}: complement roots with zero image in {key:?}: {zero:?}"
            );
        }
    }
}

/// On a bounded enumeration of the rank-6 odd orthogonal algebra, every
/// torsion group is elementary 2-abelian and every invariant factor stays
/// at most 6.
#[test]
fn b6_torsion_is_elementary_two_abelian() {
    let rs = build("B6");
    let opts = EnumerateOptions { max_steps: 3, max_n: 3, orbits: false, node_budget: 100_000 };
    let en = enumerate_subsystems(&rs, &opts);
    assert!(en.records.len() > 100);
    for key in en.sets() {
        let set: BTreeSet<usize> = key.iter().copied().collect();
        let gamma = gamma_of_set(&rs, &set);
        for d in gamma.group.invariant_factors() {
            assert_eq!(d, &BigInt::from(2), "B6 torsion factor {d} != 2");
        }
    }
}
