mod common;

use ybtwist::matrix::{kron_all, unit_tensor_sum};
use ybtwist::multi_twist::{coproduct_twists, n_twist, Flavor};
use ybtwist::{
    curious_observations, linearize, twist_closed_form, twist_from_eigen, validate_solution, LyubashenkoData,
    RingMatrix,
};

#[test]
fn l2_basis_action() {
    let rc = linearize(&common::l2(), true);
    // (0,0)↦(1,1), (0,1)↦(0,1), (1,0)↦(1,0), (1,1)↦(0,0)
    assert_eq!(rc, RingMatrix::permutation(&[3, 1, 2, 0]));
    assert_eq!(validate_solution(&common::l2()).checks.len(), 3);
}

#[test]
fn l2_twist_and_its_inverse() {
    let v = RingMatrix::permutation(&[1, 0]);
    let i = RingMatrix::identity(2);
    assert_eq!(twist_closed_form(&common::l2()), kron_all([&i, &v]));
    assert_eq!(twist_from_eigen(&common::l2()).unwrap(), kron_all([&i, &v.inverse().unwrap()]));
}

#[test]
fn lyubashenko_r_is_v_inverse_tensor_v() {
    let d = LyubashenkoData::from_cycles("(0 1 2)", 3).unwrap();
    assert_eq!(linearize(&d.solution(), false), kron_all([&d.v_inv, &d.v]));
    // 𝒱 = Σ e_{x,τ(x)}
    let v = unit_tensor_sum(3, 1, (0..3).map(|x| [(x, d.tau_perm[x])]));
    assert_eq!(d.v, v);
}

#[test]
fn lyubashenko_coproduct_twists() {
    let d = LyubashenkoData::from_cycles("(0 1 2)", 3).unwrap();
    let i = RingMatrix::identity(3);
    let v2 = d.v_pow(2);
    let (f0_12, f01_2) = coproduct_twists(&d.solution(), Flavor::F);
    assert_eq!(f0_12, kron_all([&i, &d.v, &d.v]));
    assert_eq!(f01_2, kron_all([&i, &i, &v2]));
}

#[test]
fn lyubashenko_moved_twist() {
    // ℱ₁₂…N₀ = 𝒱₀ᴺ 𝒱_N^{N−1} ⋯ 𝒱₃² 𝒱₂
    let d = LyubashenkoData::from_cycles("(0 1 2 3)", 4).unwrap();
    let family = n_twist(&d.solution(), 3, Flavor::F).unwrap();
    let want = kron_all([&d.v_pow(3), &RingMatrix::identity(4), &d.v_pow(1), &d.v_pow(2)]);
    assert_eq!(family.moved_last(), want);
    let g = n_twist(&d.solution(), 3, Flavor::G).unwrap();
    let g_sum = unit_tensor_sum(
        4,
        4,
        (0..256).map(|i| {
            let xs = ybtwist::matrix::digits(i, 4, 4);
            (0..4)
                .map(|k| ((0..3 - k).fold(xs[k], |a, _| d.tau_perm[a]), xs[k]))
                .collect::<Vec<_>>()
        }),
    );
    assert_eq!(g.full, g_sum);
    assert_eq!(g.split_first, kron_all([&d.v_pow(-3), &RingMatrix::identity(64)]));
}

#[test]
fn l2_counit_of_r() {
    let d = LyubashenkoData::from_cycles("(0 1)", 2).unwrap();
    assert_eq!(d.v, unit_tensor_sum(2, 1, [[(0, 1)], [(1, 0)]]));
    let obs = curious_observations(&d).unwrap();
    assert!(obs.passed("counit/r-left"));
    assert!(obs.passed("counit/r-right"));
    assert!(obs.passed("delta1/counit-anomaly"));
}
