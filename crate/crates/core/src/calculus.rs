//! The operators on `K•`: `∂̄`, its splitting `∂̄_c + ∂̄_t`, the Schouten bracket, and
//! `∂̄_Λ = ∂̄ + ad_Λ`.
//!
//! All operators are determined by their values on generators:
//!
//! * `∂̄ v_a = Σ_j [v_a, v̄_j]^{1,0} ∧ ω̄_j`
//! * `∂̄ ω̄_j` is the `(0,2)` part of `dω̄_j`, where `dα(X, Y) = −α([X, Y])` on invariant forms
//! * `[v_a, v_b]` is the Lie bracket, `[v_k, ω̄_j] = ι_{v_k} dω̄_j`, `[ω̄_i, ω̄_j] = 0`
//!
//! `∂̄` is extended as an odd derivation, the bracket by the graded Leibniz rule
//! `[a, b∧c] = [a,b]∧c + (−1)^{(|a|−1)|b|} b∧[a,c]`.

use crate::error::{Error, Result};
use crate::exterior::{interior, Generator, MixedElement, MixedMonomial, ScratchForm, ScratchTwoForm};
use crate::lie::{AlgebraPresentation, ComplexFrame, Grading};
use crate::linalg::{ExactMatrix, GaussRational};

/// Frame, grading and the generator-level data of every operator, computed once.
#[derive(Clone, Debug)]
pub struct CalculusContext {
    frame: ComplexFrame,
    grading: Grading,
    n_c: usize,
    dbar_vec: Vec<MixedElement>,
    dbar_vec_c: Vec<MixedElement>,
    dbar_vec_t: Vec<MixedElement>,
    d_form_bar: Vec<ScratchTwoForm>,
    d_form: Vec<ScratchTwoForm>,
    dbar_form: Vec<MixedElement>,
    bracket_vec_vec: Vec<Vec<MixedElement>>,
    bracket_vec_form: Vec<Vec<MixedElement>>,
}

impl CalculusContext {
    /// Builds the context; requires an integrable complex structure on a nilpotent algebra.
    pub fn new(p: &AlgebraPresentation) -> Result<CalculusContext> {
        let frame = ComplexFrame::of(p)?;
        let grading = Grading::with_frame(p, &frame)?;
        Ok(CalculusContext::from_parts(frame, grading))
    }

    pub fn from_parts(frame: ComplexFrame, grading: Grading) -> CalculusContext {
        let n = frame.complex_dim();
        let hol = |v: &[GaussRational]| MixedElement::from_vector_coords(&v[..n]);

        let dbar_of = |a: usize, filter: &dyn Fn(&[GaussRational]) -> Vec<GaussRational>| {
            let mut e = MixedElement::zero();
            for j in 0..n {
                let y = filter(&frame.bracket_vvbar(a, j)[..n]);
                e.add_scaled(&MixedElement::from_vector_coords(&y).wedge(&MixedElement::form(j)), &GaussRational::one());
            }
            e
        };
        let dbar_vec: Vec<MixedElement> = (0..n).map(|a| dbar_of(a, &|y| y.to_vec())).collect();

        // Projection onto c^{1,0} along its canonical complement.
        let pi_c = center_projector(&grading, n);
        let dbar_vec_c: Vec<MixedElement> = (0..n).map(|a| dbar_of(a, &|y| pi_c.mul_vec(y))).collect();
        let dbar_vec_t: Vec<MixedElement> = dbar_vec.iter().zip(&dbar_vec_c).map(|(d, c)| d.minus(c)).collect();

        let two_form = |component: usize| {
            let mut t = ScratchTwoForm::zero();
            for a in 0..n {
                for b in 0..n {
                    let c = -&frame.bracket_vvbar(a, b)[component];
                    t.add(ScratchForm::Holomorphic(a), ScratchForm::Antiholomorphic(b), c);
                    if a < b {
                        let c = -&frame.bracket_vv(a, b)[component];
                        t.add(ScratchForm::Holomorphic(a), ScratchForm::Holomorphic(b), c);
                        let c = -&frame.bracket_vbarvbar(a, b)[component];
                        t.add(ScratchForm::Antiholomorphic(a), ScratchForm::Antiholomorphic(b), c);
                    }
                }
            }
            t
        };
        let d_form_bar: Vec<ScratchTwoForm> = (0..n).map(|j| two_form(n + j)).collect();
        let d_form: Vec<ScratchTwoForm> = (0..n).map(two_form).collect();
        let dbar_form = d_form_bar.iter().map(ScratchTwoForm::antiholomorphic_part).collect();

        let bracket_vec_vec =
            (0..n).map(|a| (0..n).map(|b| hol(frame.bracket_vv(a, b))).collect()).collect();
        let bracket_vec_form =
            (0..n).map(|k| (0..n).map(|j| interior(k, &d_form_bar[j])).collect()).collect();

        CalculusContext {
            frame,
            grading,
            n_c: n,
            dbar_vec,
            dbar_vec_c,
            dbar_vec_t,
            d_form_bar,
            d_form,
            dbar_form,
            bracket_vec_vec,
            bracket_vec_form,
        }
    }

    pub fn frame(&self) -> &ComplexFrame {
        &self.frame
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn complex_dim(&self) -> usize {
        self.n_c
    }

    pub fn is_abelian(&self) -> bool {
        self.frame.is_abelian()
    }

    /// `dω̄_j` as a scratch 2-form.
    pub fn d_form_bar(&self, j: usize) -> &ScratchTwoForm {
        &self.d_form_bar[j]
    }

    /// `dω_j` as a scratch 2-form.
    pub fn d_form(&self, j: usize) -> &ScratchTwoForm {
        &self.d_form[j]
    }

    /// `[v_k, ω̄_j]`.
    pub fn bracket_vector_form(&self, k: usize, j: usize) -> &MixedElement {
        &self.bracket_vec_form[k][j]
    }

    fn dbar_generator(&self, g: Generator) -> &MixedElement {
        match g {
            Generator::Vector(a) => &self.dbar_vec[a],
            Generator::Form(j) => &self.dbar_form[j],
        }
    }

    pub fn dbar(&self, e: &MixedElement) -> MixedElement {
        e.map_monomials(|m| derivation(m, |g| self.dbar_generator(g).clone()))
    }

    /// `(∂̄_c e, ∂̄_t e)`: the parts of `∂̄ e` whose new vector lies in `c^{1,0}` resp. in its
    /// complement. Requires an abelian complex structure.
    pub fn dbar_split(&self, e: &MixedElement) -> Result<(MixedElement, MixedElement)> {
        if !self.is_abelian() {
            return Err(Error::NotAbelian);
        }
        let c = e.map_monomials(|m| {
            derivation(m, |g| match g {
                Generator::Vector(a) => self.dbar_vec_c[a].clone(),
                Generator::Form(_) => MixedElement::zero(),
            })
        });
        let t = e.map_monomials(|m| {
            derivation(m, |g| match g {
                Generator::Vector(a) => self.dbar_vec_t[a].clone(),
                Generator::Form(_) => MixedElement::zero(),
            })
        });
        Ok((c, t))
    }

    fn generator_bracket(&self, g: Generator, h: Generator) -> MixedElement {
        match (g, h) {
            (Generator::Vector(a), Generator::Vector(b)) => self.bracket_vec_vec[a][b].clone(),
            (Generator::Vector(k), Generator::Form(j)) => self.bracket_vec_form[k][j].clone(),
            (Generator::Form(j), Generator::Vector(k)) => self.bracket_vec_form[k][j].neg(),
            (Generator::Form(_), Generator::Form(_)) => MixedElement::zero(),
        }
    }

    /// The Schouten bracket `[a, b]`.
    pub fn schouten(&self, a: &MixedElement, b: &MixedElement) -> MixedElement {
        let mut out = MixedElement::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                out.add_scaled(&self.schouten_monomials(ma, mb), &(ca * cb));
            }
        }
        out
    }

    /// `[a_1…a_k, b_1…b_l] = Σ (−1)^{i+j} [a_i, b_j] ∧ a_1…â_i…a_k ∧ b_1…b̂_j…b_l`.
    fn schouten_monomials(&self, a: &MixedMonomial, b: &MixedMonomial) -> MixedElement {
        let mut out = MixedElement::zero();
        let (ka, kb) = (a.degree(), b.degree());
        for i in 0..ka {
            let (gi, si, rest_a) = a.remove_at(i);
            for j in 0..kb {
                let (gj, sj, rest_b) = b.remove_at(j);
                let br = self.generator_bracket(gi, gj);
                if br.is_zero() {
                    continue;
                }
                let Some((s_rest, rest)) = rest_a.wedge(&rest_b) else {
                    continue;
                };
                let term = br.wedge(&MixedElement::monomial(rest, GaussRational::one()));
                let negative = si ^ sj ^ s_rest;
                out.add_scaled(&term, &GaussRational::from_integer(if negative { -1 } else { 1 }));
            }
        }
        out
    }

    /// `ad_Λ e = [Λ, e]`.
    pub fn ad(&self, lambda: &MixedElement, e: &MixedElement) -> MixedElement {
        self.schouten(lambda, e)
    }

    /// `∂̄_Λ e = ∂̄ e + [Λ, e]` for a bivector `Λ ∈ g^{2,0}`.
    pub fn dbar_lambda(&self, lambda: &MixedElement, e: &MixedElement) -> Result<MixedElement> {
        check_bivector(lambda)?;
        Ok(self.dbar(e).plus(&self.ad(lambda, e)))
    }

    /// Every generator `v_j`, `ω̄_j`.
    pub fn generators(&self) -> Vec<MixedElement> {
        (0..self.n_c)
            .map(MixedElement::vector)
            .chain((0..self.n_c).map(MixedElement::form))
            .collect()
    }
}

/// Fails unless `Λ` is zero or homogeneous of bidegree `(2, 0)`.
pub fn check_bivector(lambda: &MixedElement) -> Result<()> {
    if lambda.is_homogeneous_of(2, 0) {
        Ok(())
    } else {
        Err(Error::WrongBidegree { expected: (2, 0) })
    }
}

/// Extends a map on generators to a monomial as an odd derivation.
fn derivation(m: &MixedMonomial, mut on_generator: impl FnMut(Generator) -> MixedElement) -> MixedElement {
    let gens = m.generators();
    let mut out = MixedElement::zero();
    for (i, &g) in gens.iter().enumerate() {
        let dg = on_generator(g);
        if dg.is_zero() {
            continue;
        }
        let (prefix, suffix) = split_monomial(&gens, i);
        let term = MixedElement::monomial(prefix, GaussRational::one())
            .wedge(&dg)
            .wedge(&MixedElement::monomial(suffix, GaussRational::one()));
        out.add_scaled(&term, &GaussRational::from_integer(if i % 2 == 1 { -1 } else { 1 }));
    }
    out
}

fn split_monomial(gens: &[Generator], i: usize) -> (MixedMonomial, MixedMonomial) {
    let build = |slice: &[Generator]| {
        let vecs: Vec<usize> = slice.iter().filter_map(|g| if let Generator::Vector(a) = g { Some(*a) } else { None }).collect();
        let forms: Vec<usize> = slice.iter().filter_map(|g| if let Generator::Form(a) = g { Some(*a) } else { None }).collect();
        MixedMonomial::new(&vecs, &forms)
    };
    (build(&gens[..i]), build(&gens[i + 1..]))
}

fn center_projector(grading: &Grading, n: usize) -> ExactMatrix {
    let c = grading.center_10.basis().row_vecs();
    let t = grading.center_complement_10.basis().row_vecs();
    let k = c.len();
    let mut cols = c;
    cols.extend(t);
    let b = ExactMatrix::from_columns(n, &cols);
    let b_inv = b.inverse().expect("c ⊕ t spans g^{1,0}");
    let mut keep = ExactMatrix::zeros(n, n);
    for i in 0..k {
        keep.set(i, i, GaussRational::one());
    }
    b.mul(&keep).mul(&b_inv)
}
