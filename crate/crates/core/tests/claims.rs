//! Counts and structural claims for the explicit families.

use chm_core::analysis::{aligned_block_positions, census, real_block_search, shared_corner_pairs, RealBlock};
use chm_core::families::{
    build_bjorck, build_fourier, build_h2, build_hermitian, first_valid_szollosi, hermitian_theta_min, H2Params,
    HermitianParams,
};
use chm_core::mub::{exclusion_verdict, VerdictStatus};
use chm_core::{Tolerances, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_h2(rng: &mut ChaCha8Rng) -> H2Params {
    let t = std::f64::consts::TAU;
    let mut p = H2Params::from_arg(rng.gen_range(0.0..t), rng.gen_range(0.0..t), rng.gen_range(0.0..t));
    let [s2, s3, s4] = H2Params::all_signs()[rng.gen_range(0..8)];
    (p.s2, p.s3, p.s4) = (s2, s3, s4);
    p
}

#[test]
fn generic_h2_census_is_nine() {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut nine = 0;
    for _ in 0..100 {
        let h = build_h2(&random_h2(&mut rng), &tol).unwrap();
        let c = census(&h, &tol);
        nine += (c.count == 9) as usize;
        for pos in aligned_block_positions() {
            assert!(c.contains(&pos));
        }
    }
    assert!(nine >= 95, "{nine}");
}

#[test]
fn generic_h2_has_no_real_block() {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..100 {
        let h = build_h2(&random_h2(&mut rng), &tol).unwrap();
        assert!(real_block_search(&h, 2, 3, &tol).unwrap().blocks.is_empty());
        assert!(real_block_search(&h, 3, 2, &tol).unwrap().blocks.is_empty());
    }
}

#[test]
fn real_first_two_rows_when_z1_is_minus_one() {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let mut p = random_h2(&mut rng);
        p.z1 = C64::new(-1.0, 0.0);
        let h = build_h2(&p, &tol).unwrap();
        let four = real_block_search(&h, 2, 4, &tol).unwrap();
        assert!(four.blocks.contains(&RealBlock {
            rows: vec![0, 1],
            cols: vec![0, 1, 2, 3]
        }));
        assert!(!real_block_search(&h, 2, 3, &tol).unwrap().blocks.is_empty());
        assert!(exclusion_verdict(&h, &tol).unwrap().is_excluded());
    }
}

#[test]
fn family_counts_exceed_nine() {
    let tol = Tolerances::default();
    assert!(census(&build_bjorck().unwrap(), &tol).count > 9);
    let t0 = hermitian_theta_min();
    for k in 0..20 {
        let s = k as f64 / 19.0;
        let theta = if k % 2 == 0 { t0 + s * (std::f64::consts::PI - t0) } else { -t0 - s * (std::f64::consts::PI - t0) };
        let h = build_hermitian(&HermitianParams::new(theta, 1), &tol).unwrap();
        let c = census(&h, &tol);
        assert!(c.count > 18, "theta {theta}: {}", c.count);
        assert!(!shared_corner_pairs(&c).is_empty());
    }
    for alpha in [C64::new(0.0, 0.0), C64::new(0.3, 0.2), C64::new(0.5, 0.0), C64::new(-0.4, 0.6), C64::new(0.1, -0.7)] {
        let (_, h) = first_valid_szollosi(alpha, &tol).unwrap();
        assert!(census(&h, &tol).count > 9, "alpha {alpha}");
    }
}

#[test]
fn fourier_verdict_and_shared_corners() {
    let tol = Tolerances::default();
    let f = build_fourier(6).unwrap();
    let c = census(&f, &tol);
    assert_eq!(c.count, 45);
    assert!(!shared_corner_pairs(&c).is_empty());
    assert_eq!(exclusion_verdict(&f, &tol).unwrap().status, VerdictStatus::ExcludedNineCount);
}
