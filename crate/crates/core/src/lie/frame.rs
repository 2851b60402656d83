use super::presentation::{AlgebraPresentation, FrameConvention, StructureConstants};
use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, GaussRational, Subspace};

/// A basis `v_1, …, v_n` of `g^{1,0}` together with the complexified structure constants in
/// the frame `(v_1, …, v_n, v̄_1, …, v̄_n)`.
///
/// Frame coordinates are vectors of length `2n`: the first `n` entries are the `(1,0)` part, the
/// last `n` the `(0,1)` part.
#[derive(Clone, Debug)]
pub struct ComplexFrame {
    n_c: usize,
    /// `v_j` in real-basis coordinates.
    vectors: Vec<Vec<GaussRational>>,
    /// Columns are `v_1..v_n, v̄_1..v̄_n` in real coordinates.
    from_frame: ExactMatrix,
    to_frame: ExactMatrix,
    structure: StructureConstants,
    bracket_vv: Vec<Vec<Vec<GaussRational>>>,
    bracket_vvbar: Vec<Vec<Vec<GaussRational>>>,
    integrable: bool,
    abelian: bool,
}

impl ComplexFrame {
    /// Builds the frame; fails unless `J` is an integrable complex structure.
    pub fn of(p: &AlgebraPresentation) -> Result<ComplexFrame> {
        let frame = ComplexFrame::eigenframe(p)?;
        if !frame.integrable {
            return Err(Error::NotIntegrable);
        }
        Ok(frame)
    }

    /// Builds the frame without requiring integrability. `J² = −I` is still required.
    pub(crate) fn eigenframe(p: &AlgebraPresentation) -> Result<ComplexFrame> {
        p.check_shape()?;
        let n = p.dim;
        let jm = p.j_matrix();
        if !jm.mul(&jm).add(&ExactMatrix::identity(n)).is_zero() {
            return Err(Error::Malformed("J does not square to -I".into()));
        }
        let mut shifted = jm.clone();
        for k in 0..n {
            let d = shifted.get(k, k) - &GaussRational::i();
            shifted.set(k, k, d);
        }
        let eigen = shifted.kernel_basis();
        debug_assert_eq!(eigen.dim() * 2, n);
        let scale = match p.frame {
            FrameConvention::Echelon => GaussRational::one(),
            FrameConvention::HalfEchelon => GaussRational::ratio(1, 2),
        };
        let vectors: Vec<Vec<GaussRational>> =
            eigen.basis().row_vecs().into_iter().map(|v| v.iter().map(|x| x * &scale).collect()).collect();
        ComplexFrame::from_vectors(p, vectors)
    }

    /// Builds a frame from an explicit basis of `g^{1,0}` given in real coordinates.
    pub fn from_vectors(p: &AlgebraPresentation, vectors: Vec<Vec<GaussRational>>) -> Result<ComplexFrame> {
        let n = p.dim;
        let n_c = vectors.len();
        if 2 * n_c != n || vectors.iter().any(|v| v.len() != n) {
            return Err(Error::Malformed("frame must contain dim/2 vectors of length dim".into()));
        }
        let jm = p.j_matrix();
        for v in &vectors {
            let jv = jm.mul_vec(v);
            let iv: Vec<GaussRational> = v.iter().map(|x| x * &GaussRational::i()).collect();
            if jv != iv {
                return Err(Error::Malformed("frame vector is not in the +i eigenspace of J".into()));
            }
        }
        let mut columns = vectors.clone();
        columns.extend(vectors.iter().map(|v| v.iter().map(GaussRational::conj).collect::<Vec<_>>()));
        let from_frame = ExactMatrix::from_columns(n, &columns);
        let to_frame = from_frame
            .inverse()
            .ok_or_else(|| Error::Malformed("frame vectors are linearly dependent".into()))?;
        let structure = p.structure_constants();

        let mut frame = ComplexFrame {
            n_c,
            vectors,
            from_frame,
            to_frame,
            structure,
            bracket_vv: Vec::new(),
            bracket_vvbar: Vec::new(),
            integrable: true,
            abelian: true,
        };
        let real = |k: usize| frame.from_frame.column(k);
        let mut bvv = vec![vec![Vec::new(); n_c]; n_c];
        let mut bvvb = vec![vec![Vec::new(); n_c]; n_c];
        for a in 0..n_c {
            for b in 0..n_c {
                bvv[a][b] = frame.to_frame.mul_vec(&frame.structure.bracket(&real(a), &real(b)));
                bvvb[a][b] = frame.to_frame.mul_vec(&frame.structure.bracket(&real(a), &real(n_c + b)));
            }
        }
        frame.integrable = bvv.iter().flatten().all(|c| c[n_c..].iter().all(GaussRational::is_zero));
        frame.abelian = bvv.iter().flatten().all(|c| c.iter().all(GaussRational::is_zero));
        frame.bracket_vv = bvv;
        frame.bracket_vvbar = bvvb;
        Ok(frame)
    }

    pub fn complex_dim(&self) -> usize {
        self.n_c
    }

    pub fn real_dim(&self) -> usize {
        2 * self.n_c
    }

    pub fn is_integrable(&self) -> bool {
        self.integrable
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    /// `v_j` in real-basis coordinates.
    pub fn vector(&self, j: usize) -> &[GaussRational] {
        &self.vectors[j]
    }

    pub fn vectors(&self) -> &[Vec<GaussRational>] {
        &self.vectors
    }

    /// `[v_a, v_b]` in frame coordinates.
    pub fn bracket_vv(&self, a: usize, b: usize) -> &[GaussRational] {
        &self.bracket_vv[a][b]
    }

    /// `[v_a, v̄_b]` in frame coordinates.
    pub fn bracket_vvbar(&self, a: usize, b: usize) -> &[GaussRational] {
        &self.bracket_vvbar[a][b]
    }

    /// `[v̄_a, v̄_b]`, the conjugate of `[v_a, v_b]`, in frame coordinates.
    pub fn bracket_vbarvbar(&self, a: usize, b: usize) -> Vec<GaussRational> {
        self.conjugate(&self.bracket_vv[a][b])
    }

    /// Complex conjugation in frame coordinates swaps the two halves.
    pub fn conjugate(&self, x: &[GaussRational]) -> Vec<GaussRational> {
        let n = self.n_c;
        x[n..].iter().chain(&x[..n]).map(GaussRational::conj).collect()
    }

    /// Complexified bracket of two vectors given in frame coordinates.
    pub fn bracket(&self, x: &[GaussRational], y: &[GaussRational]) -> Vec<GaussRational> {
        let xr = self.from_frame.mul_vec(x);
        let yr = self.from_frame.mul_vec(y);
        self.to_frame.mul_vec(&self.structure.bracket(&xr, &yr))
    }

    /// Frame coordinates of a complexified vector given in real coordinates.
    pub fn to_frame(&self, real: &[GaussRational]) -> Vec<GaussRational> {
        self.to_frame.mul_vec(real)
    }

    pub fn from_frame(&self, frame: &[GaussRational]) -> Vec<GaussRational> {
        self.from_frame.mul_vec(frame)
    }

    /// The `(1,0)` part of a real subspace, as a subspace of `ℂ^{n_c}` in `v`-coordinates.
    pub fn holomorphic_part(&self, real: &Subspace) -> Subspace {
        let vecs = real.basis().row_vecs().iter().map(|x| self.to_frame(x)[..self.n_c].to_vec()).collect();
        Subspace::from_vectors(self.n_c, vecs)
    }

    /// The complexification of a `J`-invariant real subspace, in frame coordinates.
    pub fn complexify(&self, real: &Subspace) -> Subspace {
        let vecs = real.basis().row_vecs().iter().map(|x| self.to_frame(x)).collect();
        Subspace::from_vectors(2 * self.n_c, vecs)
    }

    pub fn structure(&self) -> &StructureConstants {
        &self.structure
    }
}
