use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, GaussRational, Rational, Subspace};

/// How the basis of `g^{1,0}` is normalized when it is extracted from `J`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FrameConvention {
    /// Echelon basis of the `+i` eigenspace of `J` (leading coefficient 1).
    #[default]
    Echelon,
    /// Half the echelon basis, so that `v = ½(x − iJx)` when the leading coordinate is `x`.
    HalfEchelon,
}

/// One stored bracket relation `[e_i, e_j] = Σ_k out[k] e_k` with `i < j` (zero-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketRelation {
    pub i: usize,
    pub j: usize,
    pub out: BTreeMap<usize, Rational>,
}

/// A real Lie algebra with rational structure constants and a rational almost complex
/// structure. This is the single source of truth every other structure is derived from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraPresentation {
    pub name: Option<String>,
    pub dim: usize,
    pub brackets: Vec<BracketRelation>,
    /// `j[row][col]`: `J e_col = Σ_row j[row][col] e_row`.
    pub j: Vec<Vec<Rational>>,
    pub frame: FrameConvention,
}

/// Outcome of [`AlgebraPresentation::validate`]. Each flag is one independent check.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ValidationReport {
    /// Every stored relation has `i < j` and no pair is listed twice.
    pub well_formed: bool,
    pub jacobi: bool,
    pub j_squared_minus_identity: bool,
    pub nilpotent: bool,
    /// `g^{1,0}` is closed under the bracket (vanishing Nijenhuis tensor).
    pub integrable: bool,
    /// `[JA, JB] = [A, B]` for all basis pairs.
    pub abelian: bool,
}

impl ValidationReport {
    /// All structural checks pass; `abelian` is a property, not a requirement.
    pub fn is_valid(&self) -> bool {
        self.well_formed && self.jacobi && self.j_squared_minus_identity && self.nilpotent && self.integrable
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        for (ok, name) in [
            (self.well_formed, "well-formed brackets"),
            (self.jacobi, "Jacobi identity"),
            (self.j_squared_minus_identity, "J^2 = -I"),
            (self.nilpotent, "nilpotency"),
            (self.integrable, "integrability"),
        ] {
            if !ok {
                out.push(name);
            }
        }
        out
    }
}

/// Dense structure constants `c[i][j][k]`, antisymmetric in `i, j`.
#[derive(Clone, Debug)]
pub struct StructureConstants {
    dim: usize,
    c: Vec<Vec<Vec<GaussRational>>>,
}

impl StructureConstants {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `[e_i, e_j]` in coordinates.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[GaussRational] {
        &self.c[i][j]
    }

    /// Bracket of two (complexified) vectors in real-basis coordinates.
    pub fn bracket(&self, x: &[GaussRational], y: &[GaussRational]) -> Vec<GaussRational> {
        let mut out = vec![GaussRational::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                let coeff = xi * yj;
                for (k, c) in self.c[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &(&coeff * c);
                    }
                }
            }
        }
        out
    }

    /// `[U, g]`: the span of brackets of a basis of `u` with every basis vector.
    pub fn bracket_with_algebra(&self, u: &Subspace) -> Subspace {
        let mut vecs = Vec::new();
        for x in u.basis().row_vecs() {
            for k in 0..self.dim {
                let mut e = vec![GaussRational::zero(); self.dim];
                e[k] = GaussRational::one();
                vecs.push(self.bracket(&x, &e));
            }
        }
        Subspace::from_vectors(self.dim, vecs)
    }
}

/// `(i, j, [(k, c)])`: `[e_i, e_j] = Σ c e_k`, zero-based.
pub type BracketTerms = (usize, usize, Vec<(usize, Rational)>);

impl AlgebraPresentation {
    /// Builds a presentation from zero-based bracket terms.
    pub fn new(dim: usize, brackets: Vec<BracketTerms>, j: Vec<Vec<Rational>>) -> Self {
        AlgebraPresentation {
            name: None,
            dim,
            brackets: brackets
                .into_iter()
                .map(|(i, jj, out)| BracketRelation {
                    i,
                    j: jj,
                    out: out.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
                })
                .collect(),
            j,
            frame: FrameConvention::Echelon,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn with_frame(mut self, frame: FrameConvention) -> Self {
        self.frame = frame;
        self
    }

    pub fn complex_dim(&self) -> usize {
        self.dim / 2
    }

    /// Index-range and shape checks that must hold before anything else can be computed.
    pub fn check_shape(&self) -> Result<()> {
        if !self.dim.is_multiple_of(2) {
            return Err(Error::Malformed(format!("real dimension {} is odd", self.dim)));
        }
        if self.j.len() != self.dim || self.j.iter().any(|r| r.len() != self.dim) {
            return Err(Error::Malformed(format!("J must be a {0}x{0} matrix", self.dim)));
        }
        for b in &self.brackets {
            if b.i >= self.dim || b.j >= self.dim {
                return Err(Error::Malformed(format!("bracket index out of range in [e{}, e{}]", b.i + 1, b.j + 1)));
            }
            if let Some(&k) = b.out.keys().find(|&&k| k >= self.dim) {
                return Err(Error::Malformed(format!("output index e{} out of range", k + 1)));
            }
        }
        Ok(())
    }

    pub fn structure_constants(&self) -> StructureConstants {
        let n = self.dim;
        let mut c = vec![vec![vec![GaussRational::zero(); n]; n]; n];
        for b in &self.brackets {
            if b.i == b.j {
                continue;
            }
            for (&k, v) in &b.out {
                let g = GaussRational::real(v.clone());
                c[b.i][b.j][k] += &g;
                c[b.j][b.i][k] -= &g;
            }
        }
        StructureConstants { dim: n, c }
    }

    /// `J` as a matrix acting on column vectors of real-basis coordinates.
    pub fn j_matrix(&self) -> ExactMatrix {
        ExactMatrix::from_rows(
            self.dim,
            self.j.iter().map(|r| r.iter().map(|x| GaussRational::real(x.clone())).collect()).collect(),
        )
    }

    /// Descending central series `g = g^0 ⊃ g^1 ⊃ …`, ending at the first repeated or zero
    /// term. The algebra is nilpotent iff the last entry is zero.
    pub fn central_series(&self) -> Vec<Subspace> {
        let sc = self.structure_constants();
        let mut series = vec![Subspace::full(self.dim)];
        loop {
            let last = series.last().expect("nonempty");
            if last.is_zero() {
                break;
            }
            let next = sc.bracket_with_algebra(last);
            let stalled = next.dim() == last.dim();
            series.push(next);
            if stalled {
                break;
            }
        }
        series
    }

    pub fn validate(&self) -> Result<ValidationReport> {
        self.check_shape()?;
        let n = self.dim;
        let sc = self.structure_constants();

        let mut seen = std::collections::BTreeSet::new();
        let well_formed = self.brackets.iter().all(|b| b.i < b.j && seen.insert((b.i, b.j)));

        let unit = |k: usize| {
            let mut e = vec![GaussRational::zero(); n];
            e[k] = GaussRational::one();
            e
        };
        let mut jacobi = true;
        'outer: for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let (ea, eb, ec) = (unit(a), unit(b), unit(c));
                    let t1 = sc.bracket(&ea, &sc.bracket(&eb, &ec));
                    let t2 = sc.bracket(&eb, &sc.bracket(&ec, &ea));
                    let t3 = sc.bracket(&ec, &sc.bracket(&ea, &eb));
                    if (0..n).any(|k| !(&(&t1[k] + &t2[k]) + &t3[k]).is_zero()) {
                        jacobi = false;
                        break 'outer;
                    }
                }
            }
        }

        let jm = self.j_matrix();
        let j2 = jm.mul(&jm);
        let j_squared_minus_identity = (0..n).all(|i| {
            (0..n).all(|k| {
                let want = if i == k { GaussRational::from_integer(-1) } else { GaussRational::zero() };
                *j2.get(i, k) == want
            })
        });

        let nilpotent = self.central_series().last().is_some_and(Subspace::is_zero);

        let jcol = |k: usize| jm.column(k);
        let mut integrable = j_squared_minus_identity;
        let mut abelian = j_squared_minus_identity;
        if j_squared_minus_identity {
            for a in 0..n {
                for b in a + 1..n {
                    let (ja, jb) = (jcol(a), jcol(b));
                    let plain = sc.basis_bracket(a, b).to_vec();
                    let jj = sc.bracket(&ja, &jb);
                    if jj != plain {
                        abelian = false;
                    }
                    // Nijenhuis: [JX,JY] - J[JX,Y] - J[X,JY] - [X,Y]
                    let t2 = jm.mul_vec(&sc.bracket(&ja, &unit(b)));
                    let t3 = jm.mul_vec(&sc.bracket(&unit(a), &jb));
                    if (0..n).any(|k| !(&(&(&jj[k] - &t2[k]) - &t3[k]) - &plain[k]).is_zero()) {
                        integrable = false;
                    }
                }
            }
        }
        if abelian && !integrable {
            return Err(Error::Internal("abelian complex structure failed the integrability check".into()));
        }

        Ok(ValidationReport { well_formed, jacobi, j_squared_minus_identity, nilpotent, integrable, abelian })
    }
}
