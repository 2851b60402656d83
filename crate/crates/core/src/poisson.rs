//! Invariant holomorphic Poisson bivectors: testing, enumerating, and the constructor that
//! always yields degeneration at the second page.

use serde::Serialize;

use crate::calculus::{check_bivector, CalculusContext};
use crate::error::{Error, Result};
use crate::exterior::{monomial_basis, MixedElement};
use crate::linalg::{ExactMatrix, GaussRational, Subspace};

/// A bivector `Λ ∈ g^{2,0}` with the outcome of each Poisson test.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PoissonCandidate {
    #[serde(serialize_with = "crate::io::serialize_display")]
    pub lambda: MixedElement,
    pub dbar_closed: bool,
    pub schouten_square_zero: bool,
    /// `ad_Λ` vanishes on every generator `v_j`, `ω̄_j`.
    pub ad_identically_zero: bool,
}

impl PoissonCandidate {
    pub fn is_holomorphic_poisson(&self) -> bool {
        self.dbar_closed && self.schouten_square_zero
    }
}

/// Evaluates `∂̄Λ`, `[Λ, Λ]` and `ad_Λ` on generators exactly.
pub fn is_holomorphic_poisson(ctx: &CalculusContext, lambda: &MixedElement) -> Result<PoissonCandidate> {
    check_bivector(lambda)?;
    Ok(PoissonCandidate {
        lambda: lambda.clone(),
        dbar_closed: ctx.dbar(lambda).is_zero(),
        schouten_square_zero: ctx.schouten(lambda, lambda).is_zero(),
        ad_identically_zero: ctx.generators().iter().all(|g| ctx.ad(lambda, g).is_zero()),
    })
}

/// The `∂̄`-closed bivectors and those among a basis of them that are Poisson.
#[derive(Clone, Debug)]
pub struct HolomorphicBivectors {
    /// `ker ∂̄ ⊆ g^{2,0}` in the coordinates of the monomial basis `v_a ∧ v_b`, `a < b`.
    pub space: Subspace,
    /// The echelon basis of `space` as bivectors.
    pub basis: Vec<MixedElement>,
    /// Basis elements verified to satisfy `[Λ, Λ] = 0`; all of `basis` when `J` is abelian.
    pub poisson: Vec<MixedElement>,
    /// Every element of `space` is Poisson, which holds for abelian `J`.
    pub every_element_poisson: bool,
}

/// Solves `∂̄Λ = 0` on `g^{2,0}`.
pub fn holomorphic_bivector_space(ctx: &CalculusContext) -> HolomorphicBivectors {
    let n = ctx.complex_dim();
    let source = monomial_basis(n, 2, 0);
    let target = monomial_basis(n, 2, 1);
    let index = crate::exterior::basis_index(&target);
    let cols: Vec<Vec<GaussRational>> = source
        .iter()
        .map(|m| {
            ctx.dbar(&MixedElement::monomial(*m, GaussRational::one()))
                .coordinates(&index, target.len())
                .expect("∂̄ maps g^{2,0} into A^{2,1}")
        })
        .collect();
    let space = ExactMatrix::from_columns(target.len(), &cols).kernel_basis();
    let basis: Vec<MixedElement> =
        space.basis().row_vecs().iter().map(|v| MixedElement::from_coordinates(&source, v)).collect();
    let abelian = ctx.is_abelian();
    let poisson = if abelian {
        basis.clone()
    } else {
        basis.iter().filter(|l| ctx.schouten(l, l).is_zero()).cloned().collect()
    };
    HolomorphicBivectors { space, basis, poisson, every_element_poisson: abelian }
}

/// The constructor behind degeneration at `E_2`.
///
/// With `dim c^{1,0} ≥ 2`, `Λ = A ∧ B` for the first two echelon generators of `c^{1,0}`, and
/// `ad_Λ ≡ 0`. With `dim c^{1,0} = 1`, `Λ = C ∧ V` where `C` spans `t^{s+1,(1,0)}` and `V` is
/// the first echelon generator of `t^{s,(1,0)}`.
pub fn theorem2_lambda(ctx: &CalculusContext) -> Result<PoissonCandidate> {
    if !ctx.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let n = ctx.complex_dim();
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    let grading = ctx.grading();
    let center = grading.center_10.basis().row_vecs();
    let lambda = match center.len() {
        0 => return Err(Error::Internal("c^{1,0} is zero for a nilpotent algebra".into())),
        1 => {
            let step = grading.step;
            let top = grading.t(step).basis().row_vecs();
            if top.len() != 1 {
                return Err(Error::Internal(format!("t^{{s+1,(1,0)}} has dimension {} with dim c^{{1,0}} = 1", top.len())));
            }
            let below = if step >= 2 { grading.t(step - 1).basis().row_vecs() } else { Vec::new() };
            let Some(v) = below.first() else {
                return Err(Error::Internal("t^{s,(1,0)} is zero: g_J^s ⊂ g_J^{s-1} is not strict".into()));
            };
            MixedElement::from_vector_coords(&top[0]).wedge(&MixedElement::from_vector_coords(v))
        }
        _ => MixedElement::from_vector_coords(&center[0]).wedge(&MixedElement::from_vector_coords(&center[1])),
    };
    let candidate = is_holomorphic_poisson(ctx, &lambda)?;
    if !candidate.is_holomorphic_poisson() {
        return Err(Error::Internal(format!("constructed Λ = {lambda} is not holomorphic Poisson")));
    }
    if center.len() >= 2 && !candidate.ad_identically_zero {
        return Err(Error::Internal(format!("ad_Λ ≠ 0 for central Λ = {lambda}")));
    }
    Ok(candidate)
}
