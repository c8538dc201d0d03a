//! Fixtures shared by the benchmarks.

use chm_core::families::{build_bjorck, build_fourier, build_h2, build_hermitian, H2Params, HermitianParams};
use chm_core::{Chm, Tolerances};

pub fn fixtures() -> Vec<(&'static str, Chm)> {
    let tol = Tolerances::default();
    vec![
        ("fourier", build_fourier(6).expect("fourier")),
        ("bjorck", build_bjorck().expect("bjorck")),
        ("h2", build_h2(&H2Params::from_arg(0.7, 1.3, 0.4), &tol).expect("h2")),
        ("hermitian", build_hermitian(&HermitianParams::new(2.0, 1), &tol).expect("hermitian")),
    ]
}
