use std::collections::{BTreeMap, HashMap};

use crate::calculus::{check_bivector, CalculusContext};
use crate::error::{Error, Result};
use crate::exterior::{basis_index, monomial_basis, MixedElement, MixedMonomial};
use crate::linalg::{quotient_map, ExactMatrix, GaussRational, Subspace};

/// A cohomology space: its dimension and a basis of coset representatives.
#[derive(Clone, Debug, PartialEq)]
pub struct Cohomology {
    pub dim: usize,
    pub representatives: Vec<MixedElement>,
}

/// The Poisson bi-complex `(A^{•,•}, ad_Λ, ∂̄)` as exact matrices.
///
/// `dbar[(p,q)]` maps `A^{p,q} → A^{p,q+1}` and `ad[(p,q)]` maps `A^{p,q} → A^{p+1,q}`; maps
/// leaving the range `0..=n_c` have zero rows.
#[derive(Clone, Debug)]
pub struct BigradedComplex {
    n_c: usize,
    lambda: MixedElement,
    bases: BTreeMap<(usize, usize), Vec<MixedMonomial>>,
    dbar: BTreeMap<(usize, usize), ExactMatrix>,
    ad: BTreeMap<(usize, usize), ExactMatrix>,
}

/// Diagnoses why `Λ` fails to be holomorphic Poisson, if it does.
pub(crate) fn poisson_failure(ctx: &CalculusContext, lambda: &MixedElement) -> Result<Option<String>> {
    check_bivector(lambda)?;
    let dbar = ctx.dbar(lambda);
    let square = ctx.schouten(lambda, lambda);
    Ok(match (dbar.is_zero(), square.is_zero()) {
        (true, true) => None,
        (false, _) => Some(format!("∂̄Λ = {dbar} is not zero")),
        (true, false) => Some(format!("[Λ,Λ] = {square} is not zero")),
    })
}

impl BigradedComplex {
    /// Assembles every `∂̄` and `ad_Λ` matrix in the canonical monomial order.
    pub fn assemble(ctx: &CalculusContext, lambda: &MixedElement) -> Result<BigradedComplex> {
        let n = ctx.complex_dim();
        let bases = (0..=n)
            .flat_map(|p| (0..=n).map(move |q| ((p, q), monomial_basis(n, p, q))))
            .collect();
        BigradedComplex::assemble_with_bases(ctx, lambda, bases)
    }

    /// Assembles with caller-chosen orderings of each `A^{p,q}` basis.
    pub fn assemble_with_bases(
        ctx: &CalculusContext,
        lambda: &MixedElement,
        bases: BTreeMap<(usize, usize), Vec<MixedMonomial>>,
    ) -> Result<BigradedComplex> {
        if let Some(reason) = poisson_failure(ctx, lambda)? {
            return Err(Error::NotHolomorphicPoisson(reason));
        }
        let n = ctx.complex_dim();
        for p in 0..=n {
            for q in 0..=n {
                let mut given = bases.get(&(p, q)).cloned().unwrap_or_default();
                given.sort();
                if given != monomial_basis(n, p, q) {
                    return Err(Error::Malformed(format!("basis of A^({p},{q}) is not a monomial basis")));
                }
            }
        }
        let indices: BTreeMap<(usize, usize), HashMap<MixedMonomial, usize>> =
            bases.iter().map(|(k, b)| (*k, basis_index(b))).collect();

        let matrix_of = |source: (usize, usize), target: (usize, usize), op: &dyn Fn(&MixedElement) -> MixedElement| {
            let cols: Vec<Vec<GaussRational>> = bases[&source]
                .iter()
                .map(|m| {
                    let image = op(&MixedElement::monomial(*m, GaussRational::one()));
                    match indices.get(&target) {
                        Some(index) => image.coordinates(index, bases[&target].len()),
                        None if image.is_zero() => Ok(Vec::new()),
                        None => Err(*image.terms().next().unwrap().0),
                    }
                })
                .collect::<std::result::Result<_, _>>()
                .map_err(|m| Error::Internal(format!("image term {m} leaves A^{target:?}")))?;
            let rows = bases.get(&target).map_or(0, Vec::len);
            Ok::<_, Error>(ExactMatrix::from_columns(rows, &cols))
        };

        let mut dbar = BTreeMap::new();
        let mut ad = BTreeMap::new();
        for p in 0..=n {
            for q in 0..=n {
                dbar.insert((p, q), matrix_of((p, q), (p, q + 1), &|e| ctx.dbar(e))?);
                ad.insert((p, q), matrix_of((p, q), (p + 1, q), &|e| ctx.ad(lambda, e))?);
            }
        }
        let complex = BigradedComplex { n_c: n, lambda: lambda.clone(), bases, dbar, ad };
        complex.verify()?;
        Ok(complex)
    }

    fn verify(&self) -> Result<()> {
        let n = self.n_c;
        for p in 0..=n {
            for q in 0..=n {
                if q < n && !self.dbar[&(p, q + 1)].mul(&self.dbar[&(p, q)]).is_zero() {
                    return Err(Error::Internal(format!("∂̄² ≠ 0 on A^({p},{q})")));
                }
                if p < n && !self.ad[&(p + 1, q)].mul(&self.ad[&(p, q)]).is_zero() {
                    return Err(Error::Internal(format!("ad_Λ² ≠ 0 on A^({p},{q})")));
                }
                if p < n && q < n {
                    let a = self.dbar[&(p + 1, q)].mul(&self.ad[&(p, q)]);
                    let b = self.ad[&(p, q + 1)].mul(&self.dbar[&(p, q)]);
                    if !a.add(&b).is_zero() {
                        return Err(Error::Internal(format!("∂̄ ad_Λ + ad_Λ ∂̄ ≠ 0 on A^({p},{q})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn complex_dim(&self) -> usize {
        self.n_c
    }

    pub fn lambda(&self) -> &MixedElement {
        &self.lambda
    }

    /// The ordered monomial basis of `A^{p,q}`; empty outside `0..=n_c`.
    pub fn basis(&self, p: usize, q: usize) -> &[MixedMonomial] {
        self.bases.get(&(p, q)).map_or(&[], Vec::as_slice)
    }

    /// `∂̄ : A^{p,q} → A^{p,q+1}`.
    pub fn dbar_matrix(&self, p: usize, q: usize) -> &ExactMatrix {
        &self.dbar[&(p, q)]
    }

    /// `ad_Λ : A^{p,q} → A^{p+1,q}`.
    pub fn ad_matrix(&self, p: usize, q: usize) -> &ExactMatrix {
        &self.ad[&(p, q)]
    }

    /// Every assembled matrix, keyed by operator name and source bidegree.
    pub fn matrices(&self) -> impl Iterator<Item = (&'static str, (usize, usize), &ExactMatrix)> {
        self.dbar
            .iter()
            .map(|(k, m)| ("dbar", *k, m))
            .chain(self.ad.iter().map(|(k, m)| ("ad", *k, m)))
    }

    /// `H^q(g^{p,0})`, the cohomology of `∂̄` at `A^{p,q}`.
    pub fn dolbeault_cohomology(&self, p: usize, q: usize) -> Cohomology {
        let n = self.n_c;
        if p > n || q > n {
            return Cohomology { dim: 0, representatives: Vec::new() };
        }
        let len = self.basis(p, q).len();
        let kernel = self.dbar[&(p, q)].kernel_basis();
        let image = if q == 0 { Subspace::zero(len) } else { self.dbar[&(p, q - 1)].image() };
        let quotient = quotient_map(&image, &kernel).expect("im ∂̄ ⊆ ker ∂̄");
        let basis = self.basis(p, q);
        let representatives = quotient
            .section
            .basis()
            .row_vecs()
            .iter()
            .map(|v| MixedElement::from_coordinates(basis, v))
            .collect();
        Cohomology { dim: quotient.dim(), representatives }
    }

    /// Dimensions `dim H^q(g^{p,0})` indexed `[p][q]`.
    pub fn dolbeault_dims(&self) -> Vec<Vec<usize>> {
        let n = self.n_c;
        let ranks: BTreeMap<(usize, usize), usize> = self.dbar.iter().map(|(k, m)| (*k, m.rank())).collect();
        (0..=n)
            .map(|p| {
                (0..=n)
                    .map(|q| {
                        let len = self.basis(p, q).len();
                        let below = if q == 0 { 0 } else { ranks[&(p, q - 1)] };
                        len - ranks[&(p, q)] - below
                    })
                    .collect()
            })
            .collect()
    }

    /// The total complex in degree `k`.
    pub fn total(&self, k: usize) -> TotalDegree {
        let n = self.n_c;
        let mut basis = Vec::new();
        let mut starts = Vec::new();
        for p in 0..=n {
            starts.push(basis.len());
            if k >= p && k - p <= n {
                basis.extend_from_slice(self.basis(p, k - p));
            }
        }
        starts.push(basis.len());
        TotalDegree { degree: k, basis, starts }
    }

    /// `∂̄_Λ : K^k → K^{k+1}` in the bases of [`BigradedComplex::total`].
    pub fn total_differential(&self, k: usize) -> ExactMatrix {
        let source = self.total(k);
        let target = self.total(k + 1);
        let mut m = ExactMatrix::zeros(target.len(), source.len());
        for p in 0..=self.n_c {
            if k < p || k - p > self.n_c {
                continue;
            }
            let q = k - p;
            let col0 = source.starts[p];
            let mut place = |block: &ExactMatrix, row0: usize| {
                for i in 0..block.rows() {
                    for j in 0..block.cols() {
                        let x = block.get(i, j);
                        if !x.is_zero() {
                            m.set(row0 + i, col0 + j, x.clone());
                        }
                    }
                }
            };
            if q < self.n_c {
                place(&self.dbar[&(p, q)], target.starts[p]);
            }
            if p < self.n_c {
                place(&self.ad[&(p, q)], target.starts[p + 1]);
            }
        }
        m
    }

    /// `H^k_Λ`; zero for `k > 2 n_c`.
    pub fn poisson_cohomology(&self, k: usize) -> Cohomology {
        if k > 2 * self.n_c {
            return Cohomology { dim: 0, representatives: Vec::new() };
        }
        let total = self.total(k);
        let kernel = self.total_differential(k).kernel_basis();
        let image = if k == 0 { Subspace::zero(total.len()) } else { self.total_differential(k - 1).image() };
        let quotient = quotient_map(&image, &kernel).expect("im ∂̄_Λ ⊆ ker ∂̄_Λ");
        let representatives =
            quotient.section.basis().row_vecs().iter().map(|v| total.element(v)).collect();
        Cohomology { dim: quotient.dim(), representatives }
    }

    /// `dim H^k_Λ` for `k = 0..=2 n_c`.
    pub fn poisson_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = (0..=2 * self.n_c).map(|k| self.total_differential(k).rank()).collect();
        (0..=2 * self.n_c)
            .map(|k| self.total(k).len() - ranks[k] - if k == 0 { 0 } else { ranks[k - 1] })
            .collect()
    }
}

/// The basis of `K^k`, ordered by increasing vector degree `p`.
#[derive(Clone, Debug)]
pub struct TotalDegree {
    pub degree: usize,
    pub basis: Vec<MixedMonomial>,
    /// `starts[p]` is the first coordinate of bidegree `≥ p`; `starts[n_c + 1] = len`.
    starts: Vec<usize>,
}

impl TotalDegree {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Number of coordinates of vector degree `< p`; saturates outside the range.
    pub fn filtration_start(&self, p: i64) -> usize {
        if p <= 0 {
            0
        } else {
            self.starts[(p as usize).min(self.starts.len() - 1)]
        }
    }

    /// `F^p K^k` as a coordinate subspace.
    pub fn filtration(&self, p: i64) -> Subspace {
        Subspace::coordinate(self.len(), self.filtration_start(p)..self.len())
    }

    pub fn element(&self, coords: &[GaussRational]) -> MixedElement {
        MixedElement::from_coordinates(&self.basis, coords)
    }

    pub fn coordinates(&self, e: &MixedElement) -> Result<Vec<GaussRational>> {
        e.coordinates(&basis_index(&self.basis), self.len())
            .map_err(|m| Error::Internal(format!("{m} is not in K^{}", self.degree)))
    }
}
