//! Defining-set codes from non-degenerate quadratic forms over `F_{p^m}`
//! (odd `p`), with their generalized Hamming weights computed by exhaustive
//! search and by closed form.

pub mod code;
pub mod error;
pub mod field;
pub mod formulas;
mod linalg;
pub mod quadform;
pub mod search;
pub mod subspace;

pub use code::{
    build_code, ghw_lemma1, ghw_lemma1_with, ghw_wei, ghw_wei_with, weight_hierarchy, Codeword,
    DefiningSetCode, SearchMethod, SearchOptions, WeightHierarchy,
};
pub use error::{Error, Result};
pub use field::{default_modulus, quadratic_character, ArithOp, FieldElement, FieldSpec, PrimeField, Scalar};
pub use formulas::{ghw_closed_form, predicted_length, prop1_count, v_func, HierarchyPrediction};
pub use quadform::{
    master_sign, parse_modulus, Diagonalization, FormDescriptor, FormClassification, Parity, QuadraticForm, Restriction, TheoremTag,
};
pub use search::{find_totally_isotropic, self_dual_subspace, Certification, IsotropicOutcome, SelfDualOutcome};
pub use subspace::{gaussian_binomial, Subspace, SubspaceEnumerator};
