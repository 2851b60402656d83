use super::frame::ComplexFrame;
use super::presentation::AlgebraPresentation;
use crate::error::{Error, Result};
use crate::linalg::{GaussRational, Subspace};

/// The gradings carried by a nilpotent Lie algebra with complex structure.
///
/// Real subspaces live in real-basis coordinates; `(1,0)` subspaces live in `v`-coordinates.
#[derive(Clone, Debug)]
pub struct Grading {
    /// `g^0 = g, g^1 = [g, g], …, g^{step} = 0`.
    pub central_series: Vec<Subspace>,
    /// Nilpotency step `s + 1`: the first index with `g^{s+1} = 0`.
    pub step: usize,
    pub center: Subspace,
    /// `c^{1,0} = c_ℂ ∩ g^{1,0}`.
    pub center_10: Subspace,
    /// Canonical complement of `c^{1,0}` in `g^{1,0}`.
    pub center_complement_10: Subspace,
    /// `g_J^k = g^k + J g^k` for `k = 0..=step`.
    pub j_filtration: Vec<Subspace>,
    /// `(1,0)` parts of `g_J^k`.
    pub j_filtration_10: Vec<Subspace>,
    /// `t^{k,(1,0)}` for `k = 1..=step`, stored at index `k - 1`, with
    /// `g_J^{k−1,(1,0)} = t^{k,(1,0)} ⊕ g_J^{k,(1,0)}`.
    pub t_pieces: Vec<Subspace>,
}

impl Grading {
    pub fn of(p: &AlgebraPresentation) -> Result<Grading> {
        let frame = ComplexFrame::eigenframe(p)?;
        Grading::with_frame(p, &frame)
    }

    pub fn with_frame(p: &AlgebraPresentation, frame: &ComplexFrame) -> Result<Grading> {
        let central_series = p.central_series();
        if !central_series.last().is_some_and(Subspace::is_zero) {
            return Err(Error::NotNilpotent);
        }
        let step = central_series.len() - 1;
        let n = p.dim;
        let n_c = frame.complex_dim();
        let sc = frame.structure();
        let jm = p.j_matrix();

        let unit = |k: usize| {
            let mut e = vec![GaussRational::zero(); n];
            e[k] = GaussRational::one();
            e
        };
        // Center: x with [x, e_k] = 0 for all k. Stack the linear maps x ↦ [x, e_k].
        let mut rows = Vec::new();
        for k in 0..n {
            let ek = unit(k);
            for out in 0..n {
                rows.push((0..n).map(|i| sc.bracket(&unit(i), &ek)[out].clone()).collect::<Vec<_>>());
            }
        }
        let center = crate::linalg::ExactMatrix::from_rows(n, rows).kernel_basis();

        // c^{1,0}: a ∈ ℂ^{n_c} with [Σ a_j v_j, v_b] = [Σ a_j v_j, v̄_b] = 0.
        let mut rows = Vec::new();
        for b in 0..n_c {
            for out in 0..2 * n_c {
                rows.push((0..n_c).map(|a| frame.bracket_vv(a, b)[out].clone()).collect::<Vec<_>>());
                rows.push((0..n_c).map(|a| frame.bracket_vvbar(a, b)[out].clone()).collect::<Vec<_>>());
            }
        }
        let center_10 = crate::linalg::ExactMatrix::from_rows(n_c, rows).kernel_basis();
        let center_complement_10 = center_10.complement_in(&Subspace::full(n_c))?;

        let j_filtration: Vec<Subspace> = central_series
            .iter()
            .map(|g| {
                let mut vecs = g.basis().row_vecs();
                vecs.extend(g.basis().row_vecs().iter().map(|v| jm.mul_vec(v)).collect::<Vec<_>>());
                Subspace::from_vectors(n, vecs)
            })
            .collect();
        let j_filtration_10: Vec<Subspace> = j_filtration.iter().map(|g| frame.holomorphic_part(g)).collect();
        let t_pieces = (1..=step)
            .map(|k| j_filtration_10[k].complement_in(&j_filtration_10[k - 1]))
            .collect::<std::result::Result<Vec<_>, _>>()?;

        Ok(Grading {
            central_series,
            step,
            center,
            center_10,
            center_complement_10,
            j_filtration,
            j_filtration_10,
            t_pieces,
        })
    }

    /// `t^{k,(1,0)}` for `1 ≤ k ≤ step`.
    pub fn t(&self, k: usize) -> &Subspace {
        &self.t_pieces[k - 1]
    }

    /// The index `s` with `step = s + 1`.
    pub fn s(&self) -> usize {
        self.step.saturating_sub(1)
    }
}
