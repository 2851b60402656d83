use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::complex::BigradedComplex;
use crate::calculus::CalculusContext;
use crate::error::{Error, Result};
use crate::exterior::{basis_index, monomial_basis, MixedElement, MixedMonomial};
use crate::linalg::{ExactMatrix, GaussRational};

/// `D^{p,q} = g^{*(0,p+q)} ⊗ c^{p,0} ⊗ t^{ℓ−p,0}` for a fixed coefficient degree `ℓ`, with
/// `∂̄_c : D^{p,q} → D^{p+1,q}` and `∂̄_t : D^{p,q} → D^{p,q+1}`.
///
/// Bases use the adapted vectors `u_1, …, u_k` (the echelon basis of `c^{1,0}`) followed by
/// `u_{k+1}, …, u_n` (the canonical complement `t^{1,0}`). A monomial `u_S ∧ ω̄_F` lies in
/// `D^{p,q}` with `p = |S ∩ {1..k}|` and `q = |F| − p`.
#[derive(Clone, Debug)]
pub struct DBicomplex {
    pub ell: usize,
    pub center_dim: usize,
    /// Adapted monomials of form degree `m`, in the order of the standard monomial basis.
    pub bases: Vec<Vec<MixedMonomial>>,
    /// `∂̄_c` and `∂̄_t` from form degree `m` to `m + 1`, in adapted coordinates.
    pub dbar_c: Vec<ExactMatrix>,
    pub dbar_t: Vec<ExactMatrix>,
}

/// Result of comparing the total cohomology of `D` with `H^m(g^{ℓ,0})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrosscheckReport {
    pub ell: usize,
    /// `dim D^{p,q}` keyed `"p,q"`.
    pub block_dims: BTreeMap<String, usize>,
    /// `dim H^m_total(D)` for `m = 0..=n_c`.
    pub bicomplex: Vec<usize>,
    /// `dim H^m(g^{ℓ,0})` for `m = 0..=n_c`, from the `∂̄` matrices.
    pub dolbeault: Vec<usize>,
    /// `∂̄_c² = 0`, `∂̄_t² = 0` and `∂̄_c ∂̄_t + ∂̄_t ∂̄_c = 0` all hold.
    pub bicomplex_identities: bool,
    /// `∂̄_c` and `∂̄_t` respect the `(p, q)` blocks.
    pub blocks_respected: bool,
    pub agrees: bool,
}

impl DBicomplex {
    pub fn build(ctx: &CalculusContext, ell: usize) -> Result<DBicomplex> {
        if !ctx.is_abelian() {
            return Err(Error::NotAbelian);
        }
        let n = ctx.complex_dim();
        if ell > n {
            return Err(Error::InvalidParameter(format!("coefficient degree {ell} exceeds {n}")));
        }
        let grading = ctx.grading();
        let mut adapted: Vec<Vec<GaussRational>> = grading.center_10.basis().row_vecs();
        let center_dim = adapted.len();
        adapted.extend(grading.center_complement_10.basis().row_vecs());
        let u: Vec<MixedElement> = adapted.iter().map(|v| MixedElement::from_vector_coords(v)).collect();

        let standard: Vec<Vec<MixedMonomial>> = (0..=n).map(|m| monomial_basis(n, ell, m)).collect();
        let mut change = Vec::new();
        let mut change_inv = Vec::new();
        for basis in &standard {
            let index = basis_index(basis);
            let cols: Vec<Vec<GaussRational>> = basis
                .iter()
                .map(|mono| {
                    let mut e = MixedElement::one();
                    for a in mono.vec_indices() {
                        e = e.wedge(&u[a]);
                    }
                    let forms = MixedMonomial::new(&[], &mono.form_indices());
                    e.wedge(&MixedElement::monomial(forms, GaussRational::one()))
                        .coordinates(&index, basis.len())
                        .expect("adapted monomials stay in A^{ℓ,m}")
                })
                .collect();
            let p = ExactMatrix::from_columns(basis.len(), &cols);
            let inv = p
                .inverse()
                .ok_or_else(|| Error::Internal("adapted basis is not a basis".into()))?;
            change.push(p);
            change_inv.push(inv);
        }

        let mut dbar_c = Vec::new();
        let mut dbar_t = Vec::new();
        for m in 0..=n {
            let source = &standard[m];
            let target = standard.get(m + 1).cloned().unwrap_or_default();
            let index: HashMap<MixedMonomial, usize> = basis_index(&target);
            let mut cols_c = Vec::new();
            let mut cols_t = Vec::new();
            for mono in source {
                let (c, t) = ctx.dbar_split(&MixedElement::monomial(*mono, GaussRational::one()))?;
                let coords = |e: &MixedElement| {
                    e.coordinates(&index, target.len())
                        .map_err(|x| Error::Internal(format!("{x} leaves A^({ell},{})", m + 1)))
                };
                cols_c.push(coords(&c)?);
                cols_t.push(coords(&t)?);
            }
            let to_adapted = |cols: &[Vec<GaussRational>]| {
                let standard_matrix = ExactMatrix::from_columns(target.len(), cols);
                match change_inv.get(m + 1) {
                    Some(inv) => inv.mul(&standard_matrix).mul(&change[m]),
                    None => ExactMatrix::zeros(0, source.len()),
                }
            };
            dbar_c.push(to_adapted(&cols_c));
            dbar_t.push(to_adapted(&cols_t));
        }
        Ok(DBicomplex { ell, center_dim, bases: standard, dbar_c, dbar_t })
    }

    /// The `p` index of an adapted monomial.
    pub fn center_degree(&self, mono: &MixedMonomial) -> usize {
        mono.vec_indices().iter().filter(|&&a| a < self.center_dim).count()
    }

    /// `dim D^{p,q}`; `q = m − p` is negative when the form degree `m` is below `p`.
    pub fn block_dims(&self) -> BTreeMap<(usize, i64), usize> {
        let mut dims = BTreeMap::new();
        for (m, basis) in self.bases.iter().enumerate() {
            for mono in basis {
                let p = self.center_degree(mono);
                *dims.entry((p, m as i64 - p as i64)).or_insert(0) += 1;
            }
        }
        dims
    }

    fn blocks_respected(&self) -> bool {
        let n = self.bases.len() - 1;
        (0..n).all(|m| {
            let (src, tgt) = (&self.bases[m], &self.bases[m + 1]);
            (0..tgt.len()).all(|i| {
                (0..src.len()).all(|j| {
                    let (pi, pj) = (self.center_degree(&tgt[i]), self.center_degree(&src[j]));
                    (self.dbar_c[m].get(i, j).is_zero() || pi == pj + 1)
                        && (self.dbar_t[m].get(i, j).is_zero() || pi == pj)
                })
            })
        })
    }

    fn identities_hold(&self) -> bool {
        let n = self.bases.len() - 1;
        (0..n.saturating_sub(1)).all(|m| {
            let (c0, c1, t0, t1) = (&self.dbar_c[m], &self.dbar_c[m + 1], &self.dbar_t[m], &self.dbar_t[m + 1]);
            c1.mul(c0).is_zero() && t1.mul(t0).is_zero() && c1.mul(t0).add(&t1.mul(c0)).is_zero()
        })
    }

    /// `dim H^m` of the total complex `(⊕_{p+q=m} D^{p,q}, ∂̄_c + ∂̄_t)`.
    pub fn total_cohomology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.dbar_c.iter().zip(&self.dbar_t).map(|(c, t)| c.add(t).rank()).collect();
        (0..self.bases.len())
            .map(|m| self.bases[m].len() - ranks[m] - if m == 0 { 0 } else { ranks[m - 1] })
            .collect()
    }
}

/// Computes `H^m(g^{ℓ,0})` twice: from `∂̄` directly, and as the total cohomology of `D`.
pub fn d_bicomplex_crosscheck(ctx: &CalculusContext, ell: usize) -> Result<CrosscheckReport> {
    let d = DBicomplex::build(ctx, ell)?;
    let bicomplex = d.total_cohomology_dims();
    let dolbeault = BigradedComplex::assemble(ctx, &MixedElement::zero())?.dolbeault_dims()[ell].clone();
    let block_dims = d.block_dims().into_iter().map(|((p, q), n)| (format!("{p},{q}"), n)).collect();
    let blocks_respected = d.blocks_respected();
    let bicomplex_identities = d.identities_hold();
    let agrees = bicomplex == dolbeault && blocks_respected && bicomplex_identities;
    Ok(CrosscheckReport { ell, block_dims, bicomplex, dolbeault, bicomplex_identities, blocks_respected, agrees })
}
