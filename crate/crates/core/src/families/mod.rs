//! Constructors for the explicit CHM families.

mod classic;
mod hermitian;
mod karlsson;
mod symmetric;
mod szollosi;

pub use classic::{bjorck_d, build_bjorck, build_fourier};
pub use hermitian::{
    build_hermitian, hermitian_matrix, hermitian_scalars, hermitian_theta_allowed,
    hermitian_theta_min, HermitianParams,
};
pub use karlsson::{
    ab_coefficients, assemble_h2, build_h2, derive_h2, f2, mobius_apply, mobius_inverse_apply,
    ABCoeffs, H2Derived, H2Params, Mobius, MobiusKind,
};
pub use symmetric::{
    all_symmetric_params, build_symmetric_h2, symmetric_h2_instance, PhiSign, SymmetricInstance,
    SymmetricParams,
};
pub use szollosi::{
    build_szollosi, cubic_roots, discriminant_d, first_valid_szollosi, szollosi_matrix,
    SzollosiParams,
};

use serde::{Deserialize, Serialize};

use crate::chm::Chm;
use crate::error::{ChmError, Result};
use crate::tol::Tolerances;

pub const FAMILY_NAMES: [&str; 6] = ["fourier", "h2", "bjorck", "szollosi", "hermitian", "symmetric"];

/// A family name with concrete parameters. Serializes as
/// `{"family": "...", "params": {...}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "lowercase")]
pub enum FamilySpec {
    Fourier { d: usize },
    H2(H2Params),
    Bjorck,
    Szollosi(SzollosiParams),
    Hermitian(HermitianParams),
    Symmetric(SymmetricParams),
}

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Fourier { .. } => "fourier",
            FamilySpec::H2(_) => "h2",
            FamilySpec::Bjorck => "bjorck",
            FamilySpec::Szollosi(_) => "szollosi",
            FamilySpec::Hermitian(_) => "hermitian",
            FamilySpec::Symmetric(_) => "symmetric",
        }
    }

    pub fn build(&self, tol: &Tolerances) -> Result<Chm> {
        match self {
            FamilySpec::Fourier { d } => build_fourier(*d),
            FamilySpec::H2(p) => build_h2(p, tol),
            FamilySpec::Bjorck => build_bjorck(),
            FamilySpec::Szollosi(p) => build_szollosi(p, tol),
            FamilySpec::Hermitian(p) => build_hermitian(p, tol),
            FamilySpec::Symmetric(p) => p.build(tol),
        }
    }

    pub fn provenance(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("family spec serializes")
    }
}

pub fn check_family_name(name: &str) -> Result<&'static str> {
    FAMILY_NAMES
        .iter()
        .find(|&&n| n == name)
        .copied()
        .ok_or_else(|| ChmError::UnknownFamily(name.to_string()))
}
