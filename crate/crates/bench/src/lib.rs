//! Fixtures shared by the benchmarks.

use ghw_core::{build_code, DefiningSetCode, FieldSpec, QuadraticForm, Scalar};

/// The code of the identity form at level `a` over `F_{p^m}`.
pub fn identity_code(p: u32, m: usize, a: u32) -> DefiningSetCode {
    let spec = FieldSpec::new(p, m).expect("valid field");
    build_code(&QuadraticForm::identity(spec), Scalar(a)).expect("non-empty defining set")
}
