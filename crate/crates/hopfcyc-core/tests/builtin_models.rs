//! Whole-pipeline checks on the shipped models through the public API.

use hopfcyc_core::bicomplex::Bicomplex;
use hopfcyc_core::cochain::CochainMaps;
use hopfcyc_core::cyclic::CyclicModule;
use hopfcyc_core::hopf::Structure;
use hopfcyc_core::lie::{CEComplex, CeCochain};
use hopfcyc_core::models::{self, MatchedPairModel};
use hopfcyc_core::{qf, ScalarExpr, Var, Q};
use num_traits::One;

const NAMES: [&str; 4] = ["diamond", "heisenberg", "abelian-plane", "shear"];

fn model(name: &str) -> MatchedPairModel {
    models::builtin(name).unwrap()
}

fn basis(idx: &[usize]) -> CeCochain {
    [(idx.to_vec(), Q::one())].into_iter().collect()
}

#[test]
fn betti_numbers() {
    for (name, betti) in [("diamond", vec![1, 1, 0, 1, 1]), ("heisenberg", vec![1, 2, 2, 1]), ("abelian-plane", vec![1, 2, 1])] {
        let ce = CEComplex::new(&model(name).algebra().unwrap());
        assert!(ce.d_squared_vanishes(), "{name}");
        assert_eq!(ce.cohomology().betti, betti, "{name}");
    }
}

#[test]
fn matched_pair_and_group_axioms_hold() {
    for name in NAMES {
        let m = model(name);
        assert!(m.lie.validate().is_empty(), "{name}");
        assert!(m.lie.bicrossed_lie().is_ok(), "{name}");
        assert!(m.group.axiom_violations().unwrap().is_empty(), "{name}");
        assert!(m.group.gamma_violations().unwrap().is_empty(), "{name}");
        assert!(m.group.lie_compat_violations(&m.lie).unwrap().is_empty(), "{name}");
    }
}

#[test]
fn hopf_structures_of_the_shear_model() {
    let h = model("shear").bicrossed().unwrap();
    assert!(h.verify_rep_hopf(2).is_empty());
    assert!(h.verify_u_hopf(3).is_empty());
    assert!(h.verify_matched_hopf(2, 2).is_empty());
    assert!(h.verify_bicrossed_hopf(Structure::Cop, 1, 1).is_empty());
    assert!(h.verify_mpi(Structure::Cop, 2).is_empty());
    assert!(h.verify_sayd(Structure::Cop, 2).is_empty());
    let cm = CyclicModule::new(&h, Structure::Cop);
    let words: Vec<_> = (0..=3).flat_map(|n| cm.test_words(n, 4)).collect();
    assert!(cm.verify_lambda_identities(&words).is_empty());
}

#[test]
fn transfer_of_the_diamond_top_class() {
    let m = model("diamond");
    let c = CochainMaps::new(&m).unwrap();
    let omega = basis(&[1, 2, 3]);
    assert!(c.verify_chain_map(&omega).unwrap().is_empty());
    // 𝓔(θ₂∧θ₃∧θ₄) in bidegree (3,0) is the signed volume of the
    // coordinate simplex: (1/6)·det[(x_k − x₀, y_k − y₀, z_k − z₀)]_{k=1..3}.
    let e = c.e_map(&omega, 3, 0).unwrap();
    let v = |n: &str, k: u32| ScalarExpr::var(Var::indexed(n, k));
    let row = |k: u32| [&v("x", k) - &v("x", 0), &v("y", k) - &v("y", 0), &v("z", k) - &v("z", 0)];
    let (a, b, d) = (row(1), row(2), row(3));
    let det = &(&(&a[0] * &(&(&b[1] * &d[2]) - &(&b[2] * &d[1]))) - &(&a[1] * &(&(&b[0] * &d[2]) - &(&b[2] * &d[0]))))
        + &(&a[2] * &(&(&b[0] * &d[1]) - &(&b[1] * &d[0])));
    assert_eq!(e.coeff(&[]), det.scale(&qf(1, 6)));
    // the class survives the round trip back to Lie algebra cochains
    assert_eq!(c.natural_inv_j(&c.e_components(&omega).unwrap()).unwrap(), omega);
}

#[test]
fn step_bicomplexes_of_both_actions() {
    for name in ["diamond", "shear"] {
        let bc = Bicomplex::new(&model(name)).unwrap();
        let xs: Vec<_> = (0..=2).flat_map(|p| bc.test_cochains(p, 2, 3)).collect();
        assert!(bc.verify_step_identities(&xs).unwrap().is_empty(), "{name}");
        assert!(bc.volume_is_delta_twisted(), "{name}");
    }
}
