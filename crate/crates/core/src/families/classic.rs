use std::f64::consts::TAU;

use crate::chm::{validate_chm, Chm};
use crate::error::{ChmError, Result};
use crate::matrix::{cis, CMatrix, C64, I};
use crate::tol::Tolerances;

/// The Fourier matrix, entry `(j, k) = e^{2 pi i j k / d}`.
pub fn build_fourier(d: usize) -> Result<Chm> {
    if d < 2 {
        return Err(ChmError::InvalidDimension(d));
    }
    let m = CMatrix::from_fn(d, d, |j, k| cis(TAU * ((j * k) % d) as f64 / d as f64));
    validate_chm(m, &Tolerances::default())
}

/// The parameter `d = (1 - sqrt 3)/2 + i sqrt(sqrt 3 / 2)` of the circulant matrix.
pub fn bjorck_d() -> C64 {
    let s3 = 3.0_f64.sqrt();
    C64::new((1.0 - s3) / 2.0, (s3 / 2.0).sqrt())
}

/// Bjorck's circulant CHM with first row `(1, i d, -d, -i, -d*, i d*)`.
pub fn build_bjorck() -> Result<Chm> {
    let d = bjorck_d();
    let one = C64::new(1.0, 0.0);
    let first = [one, I * d, -d, -I, -d.conj(), I * d.conj()];
    let m = CMatrix::from_fn(6, 6, |r, c| first[(c + 6 - r) % 6]);
    validate_chm(m, &Tolerances::default())
}
