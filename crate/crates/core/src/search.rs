//! Greedy construction of totally isotropic and self-dual subspaces.
//!
//! Starting from `H_0 = {0}`, each step adds the isotropic vector of smallest
//! integer encoding in `H_k^⊥ \ H_k`. For `2r < m`, and for `2r = m` when the
//! discriminant sign permits a self-dual subspace, the step never runs out of
//! candidates. Every witness is re-verified before it is returned.

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::quadform::{master_sign, QuadraticForm};
use crate::subspace::{Subspace, SubspaceEnumerator};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsotropicOutcome {
    Found {
        space: Subspace,
        /// Vectors in the order they were chosen.
        generators: Vec<FieldElement>,
    },
    /// No candidate extended the isotropic subspace past dimension `reached`.
    NotFound { reached: usize },
}

/// How a self-duality verdict was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certification {
    /// A witness was built and checked to equal its own dual.
    Witness,
    /// Every subspace of half dimension was checked.
    Exhaustive { checked: u64 },
    /// Only the discriminant-sign criterion was evaluated.
    SignCondition,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfDualOutcome {
    pub exists: bool,
    pub witness: Option<Subspace>,
    pub certification: Certification,
}

fn require_nondegenerate(f: &QuadraticForm) -> Result<()> {
    let rank = f.rank();
    if rank != f.m() {
        return Err(Error::Degenerate { rank, m: f.m() });
    }
    Ok(())
}

/// Grows a totally isotropic subspace to dimension `r`.
pub fn find_totally_isotropic(f: &QuadraticForm, r: usize) -> Result<IsotropicOutcome> {
    require_nondegenerate(f)?;
    let spec = f.spec();
    let m = f.m();
    if r > m {
        return Err(Error::DimensionOutOfRange { r, max: m });
    }
    let mut space = Subspace::zero(spec.prime_field(), m);
    let mut generators = Vec::with_capacity(r);
    while space.dim() < r {
        let perp = f.dual_space(&space)?;
        let next = spec.elements().skip(1).find(|x| {
            let c = x.coeffs();
            perp.contains(c) && !space.contains(c) && f.evaluate(c).is_zero()
        });
        let Some(alpha) = next else {
            return Ok(IsotropicOutcome::NotFound {
                reached: space.dim(),
            });
        };
        space = space.sum(&Subspace::span(spec, std::slice::from_ref(&alpha))?);
        generators.push(alpha);
    }
    if space.dim() != r || !f.is_totally_isotropic(&space) {
        return Err(Error::Verification(format!(
            "greedy result {space} is not a totally isotropic {r}-space"
        )));
    }
    Ok(IsotropicOutcome::Found { space, generators })
}

/// Decides whether a self-dual subspace (`H = H^⊥`, `dim H = m/2`) exists,
/// and builds one unless `check_only`. Negative answers are certified by
/// exhaustion for `m <= 4`, or whenever `exhaustive` is set.
pub fn self_dual_subspace(f: &QuadraticForm, check_only: bool, exhaustive: bool) -> Result<SelfDualOutcome> {
    let m = f.m();
    if m % 2 != 0 {
        return Err(Error::OddDimension { m });
    }
    require_nondegenerate(f)?;
    let s = m / 2;
    let exists = f.discriminant_sign() == master_sign(f.p(), m);

    if exists {
        if check_only {
            return Ok(SelfDualOutcome {
                exists,
                witness: None,
                certification: Certification::SignCondition,
            });
        }
        let space = match find_totally_isotropic(f, s)? {
            IsotropicOutcome::Found { space, .. } => space,
            IsotropicOutcome::NotFound { reached } => {
                return Err(Error::Verification(format!(
                    "sign condition holds but the greedy extension stopped at dimension {reached}"
                )))
            }
        };
        if f.dual_space(&space)? != space {
            return Err(Error::Verification(format!("witness {space} is not self-dual")));
        }
        return Ok(SelfDualOutcome {
            exists,
            witness: Some(space),
            certification: Certification::Witness,
        });
    }

    if m <= 4 || exhaustive {
        let en = SubspaceEnumerator::for_field(f.spec(), s)?;
        for h in en.iter() {
            if f.is_totally_isotropic(&h) {
                return Err(Error::Verification(format!(
                    "sign condition fails but {h} is self-dual"
                )));
            }
        }
        return Ok(SelfDualOutcome {
            exists,
            witness: None,
            certification: Certification::Exhaustive { checked: en.len() },
        });
    }
    Ok(SelfDualOutcome {
        exists,
        witness: None,
        certification: Certification::SignCondition,
    })
}
