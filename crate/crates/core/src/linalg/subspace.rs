use super::matrix::ExactMatrix;
use super::scalar::GaussRational;
use crate::error::LinalgError;

/// A linear subspace of `ℚ(i)^n`, stored as the reduced row-echelon basis.
///
/// The echelon basis is canonical, so two equal subspaces compare equal field by field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: ExactMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: ExactMatrix::zeros(0, ambient), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: ExactMatrix::identity(ambient), pivots: (0..ambient).collect() }
    }

    /// The span of the standard basis vectors with the given indices.
    pub fn coordinate(ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut idx: Vec<usize> = indices.into_iter().collect();
        idx.sort_unstable();
        idx.dedup();
        let rows = idx
            .iter()
            .map(|&k| {
                let mut v = vec![GaussRational::zero(); ambient];
                v[k] = GaussRational::one();
                v
            })
            .collect();
        Subspace { ambient, basis: ExactMatrix::from_rows(ambient, rows), pivots: idx }
    }

    /// The span of arbitrary (possibly dependent) vectors.
    pub fn from_vectors(ambient: usize, vectors: Vec<Vec<GaussRational>>) -> Self {
        if vectors.is_empty() {
            return Subspace::zero(ambient);
        }
        Subspace::from_matrix_rows(&ExactMatrix::from_rows(ambient, vectors))
    }

    /// The row space of a matrix.
    pub fn from_matrix_rows(m: &ExactMatrix) -> Self {
        let r = m.rref();
        let rows: Vec<usize> = (0..r.rank).collect();
        let cols: Vec<usize> = (0..m.cols()).collect();
        Subspace { ambient: m.cols(), basis: r.matrix.select(&rows, &cols), pivots: r.pivots }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    /// Echelon basis, one vector per row.
    pub fn basis(&self) -> &ExactMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    /// Subtracts the echelon basis from `v` so that `v` vanishes on all pivot columns.
    fn reduce(&self, v: &mut [GaussRational]) {
        for (i, &p) in self.pivots.iter().enumerate() {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (j, b) in self.basis.row(i).iter().enumerate() {
                if !b.is_zero() {
                    v[j] -= &(&f * b);
                }
            }
        }
    }

    pub fn contains(&self, v: &[GaussRational]) -> bool {
        assert_eq!(v.len(), self.ambient, "ambient dimension mismatch");
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(GaussRational::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.ambient == self.ambient && other.basis.row_vecs().iter().all(|v| self.contains(v))
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is not in the subspace.
    pub fn coordinates(&self, v: &[GaussRational]) -> Option<Vec<GaussRational>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other)?;
        Ok(Subspace::from_matrix_rows(&self.basis.vstack(&other.basis)))
    }

    /// The annihilator `{y : Σ yᵢ xᵢ = 0 for all x in self}` under the bilinear pairing.
    ///
    /// A vector lies in `self` exactly when every annihilator row pairs to zero with it.
    pub fn annihilator(&self) -> Subspace {
        self.basis.kernel_basis()
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient));
        }
        if self.dim() == self.ambient {
            return Ok(other.clone());
        }
        if other.dim() == other.ambient {
            return Ok(self.clone());
        }
        let stacked = self.annihilator().basis.vstack(&other.annihilator().basis);
        Ok(stacked.kernel_basis())
    }

    /// Image of this subspace under `m` (a `target × ambient` matrix).
    pub fn image_under(&self, m: &ExactMatrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient, "dimension mismatch in image");
        Subspace::from_vectors(m.rows(), self.basis.row_vecs().iter().map(|v| m.mul_vec(v)).collect())
    }

    /// Preimage `{x : m·x ∈ target}` for a `target.ambient × n` matrix `m`.
    pub fn preimage(m: &ExactMatrix, target: &Subspace) -> Subspace {
        assert_eq!(m.rows(), target.ambient, "dimension mismatch in preimage");
        if target.dim() == target.ambient {
            return Subspace::full(m.cols());
        }
        let ann = target.annihilator();
        ann.basis.mul(m).kernel_basis()
    }

    /// The canonical complement of `self` inside `total`: the echelon basis of `total`
    /// reduced modulo `self`. Its pivots are disjoint from the pivots of `self`.
    pub fn complement_in(&self, total: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(total)?;
        let reduced: Vec<Vec<GaussRational>> = total
            .basis
            .row_vecs()
            .into_iter()
            .map(|mut v| {
                self.reduce(&mut v);
                v
            })
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect();
        Ok(Subspace::from_vectors(self.ambient, reduced))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::DimensionMismatch { left: self.ambient, right: other.ambient });
        }
        Ok(())
    }
}

/// The quotient `total / sub` with a chosen section and the projection onto it.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    /// Representatives of a basis of the quotient: the canonical complement of `sub` in `total`.
    pub section: Subspace,
    /// `dim × ambient` matrix; restricted to `total` it kills `sub` and sends the `j`-th
    /// section vector to the `j`-th unit vector.
    pub projection: ExactMatrix,
}

impl QuotientMap {
    pub fn dim(&self) -> usize {
        self.section.dim()
    }

    /// Projects `v` (assumed to lie in the total space) to quotient coordinates.
    pub fn project(&self, v: &[GaussRational]) -> Vec<GaussRational> {
        self.projection.mul_vec(v)
    }
}

/// Builds the quotient `total / sub`. Fails unless `sub ⊆ total`.
pub fn quotient_map(sub: &Subspace, total: &Subspace) -> Result<QuotientMap, LinalgError> {
    sub.check_ambient(total)?;
    if !total.contains_subspace(sub) {
        return Err(LinalgError::NotASubspace);
    }
    let section = sub.complement_in(total)?;
    let n = sub.ambient;
    let mut projection = ExactMatrix::zeros(section.dim(), n);
    // coefficient j of x is x[cp_j] - Σ_s x[sp_s] · sub_row_s[cp_j]
    for (j, &cp) in section.pivots.iter().enumerate() {
        projection.set(j, cp, GaussRational::one());
        for (s, &sp) in sub.pivots.iter().enumerate() {
            let c = sub.basis.get(s, cp);
            if !c.is_zero() {
                projection.set(j, sp, -c);
            }
        }
    }
    Ok(QuotientMap { section, projection })
}
