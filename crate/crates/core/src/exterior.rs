//! Sparse elements of `K• = Λ•(g^{1,0} ⊕ g^{*(0,1)})`.
//!
//! Generators are the vectors `v_1..v_n` and the `(0,1)`-forms `ω̄_1..ω̄_n`, all of odd degree.
//! A monomial is written with all vectors first and all forms after, each in ascending order;
//! reordering generators into this form contributes the Koszul sign.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::linalg::GaussRational;

/// Largest supported complex dimension (generators are packed into 32-bit masks).
pub const MAX_COMPLEX_DIM: usize = 16;

/// A generator of `K•`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// `v_j`
    Vector(usize),
    /// `ω̄_j`
    Form(usize),
}

/// A canonical monomial `v_I ∧ ω̄_J`, with `I` and `J` stored as bitmasks.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct MixedMonomial {
    vecs: u32,
    forms: u32,
}

impl MixedMonomial {
    pub const ONE: MixedMonomial = MixedMonomial { vecs: 0, forms: 0 };

    pub fn new(vecs: &[usize], forms: &[usize]) -> Self {
        let mut m = MixedMonomial::ONE;
        for &i in vecs {
            assert!(i < MAX_COMPLEX_DIM);
            m.vecs |= 1 << i;
        }
        for &j in forms {
            assert!(j < MAX_COMPLEX_DIM);
            m.forms |= 1 << j;
        }
        m
    }

    pub fn from_masks(vecs: u32, forms: u32) -> Self {
        MixedMonomial { vecs, forms }
    }

    pub fn vec_mask(&self) -> u32 {
        self.vecs
    }

    pub fn form_mask(&self) -> u32 {
        self.forms
    }

    pub fn vec_indices(&self) -> Vec<usize> {
        bits(self.vecs)
    }

    pub fn form_indices(&self) -> Vec<usize> {
        bits(self.forms)
    }

    /// `(number of vectors, number of forms)`.
    pub fn bidegree(&self) -> (usize, usize) {
        (self.vecs.count_ones() as usize, self.forms.count_ones() as usize)
    }

    pub fn degree(&self) -> usize {
        let (p, q) = self.bidegree();
        p + q
    }

    /// Generators in canonical written order.
    pub fn generators(&self) -> Vec<Generator> {
        bits(self.vecs)
            .into_iter()
            .map(Generator::Vector)
            .chain(bits(self.forms).into_iter().map(Generator::Form))
            .collect()
    }

    fn packed(&self) -> u64 {
        self.vecs as u64 | ((self.forms as u64) << 32)
    }

    fn from_packed(x: u64) -> Self {
        MixedMonomial { vecs: x as u32, forms: (x >> 32) as u32 }
    }

    /// `self ∧ other = sign · monomial`, or `None` when a generator repeats.
    pub fn wedge(&self, other: &MixedMonomial) -> Option<(bool, MixedMonomial)> {
        let (a, b) = (self.packed(), other.packed());
        if a & b != 0 {
            return None;
        }
        // Count pairs (i in a, j in b) with i > j: each needs one transposition.
        let mut swaps = 0u32;
        let mut rest = b;
        while rest != 0 {
            let j = rest.trailing_zeros();
            rest &= rest - 1;
            swaps += (a >> j >> 1).count_ones();
        }
        Some((swaps % 2 == 1, MixedMonomial::from_packed(a | b)))
    }

    /// Removes the generator at position `pos` of the written order, returning the sign
    /// `(−1)^pos` of moving it to the front.
    pub fn remove_at(&self, pos: usize) -> (Generator, bool, MixedMonomial) {
        let gens = self.generators();
        let g = gens[pos];
        let mut m = *self;
        match g {
            Generator::Vector(i) => m.vecs &= !(1 << i),
            Generator::Form(j) => m.forms &= !(1 << j),
        }
        (g, pos % 2 == 1, m)
    }
}

fn bits(mut x: u32) -> Vec<usize> {
    let mut out = Vec::with_capacity(x.count_ones() as usize);
    while x != 0 {
        out.push(x.trailing_zeros() as usize);
        x &= x - 1;
    }
    out
}

/// Lexicographic comparison of two equal-size index sets stored as masks.
fn lex_masks(a: u32, b: u32) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    let low = (a ^ b).trailing_zeros();
    if a & (1 << low) != 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

impl Ord for MixedMonomial {
    /// Bidegree first, then the vector index set, then the form index set, lexicographically.
    fn cmp(&self, other: &Self) -> Ordering {
        self.bidegree()
            .cmp(&other.bidegree())
            .then_with(|| lex_masks(self.vecs, other.vecs))
            .then_with(|| lex_masks(self.forms, other.forms))
    }
}

impl PartialOrd for MixedMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MixedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.packed() == 0 {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .generators()
            .into_iter()
            .map(|g| match g {
                Generator::Vector(i) => format!("v{}", i + 1),
                Generator::Form(j) => format!("ω̄{}", j + 1),
            })
            .collect();
        write!(f, "{}", parts.join("^"))
    }
}

impl fmt::Debug for MixedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All monomials of bidegree `(p, q)` in canonical order.
pub fn monomial_basis(n_c: usize, p: usize, q: usize) -> Vec<MixedMonomial> {
    let vecs = subsets(n_c, p);
    let forms = subsets(n_c, q);
    let mut out = Vec::with_capacity(vecs.len() * forms.len());
    for &v in &vecs {
        for &w in &forms {
            out.push(MixedMonomial { vecs: v, forms: w });
        }
    }
    out
}

/// `k`-subsets of `{0..n}` as masks, in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<u32> {
    let mut out = Vec::new();
    fn rec(start: usize, n: usize, k: usize, acc: u32, out: &mut Vec<u32>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..n {
            if n - i < k {
                break;
            }
            rec(i + 1, n, k - 1, acc | (1 << i), out);
        }
    }
    rec(0, n, k, 0, &mut out);
    out
}

/// A finite sum of monomials with nonzero Gaussian-rational coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MixedElement {
    terms: BTreeMap<MixedMonomial, GaussRational>,
}

impl MixedElement {
    pub fn zero() -> Self {
        MixedElement::default()
    }

    pub fn one() -> Self {
        MixedElement::monomial(MixedMonomial::ONE, GaussRational::one())
    }

    pub fn monomial(m: MixedMonomial, c: GaussRational) -> Self {
        let mut e = MixedElement::zero();
        e.add_term(m, c);
        e
    }

    /// `v_i` (zero-based).
    pub fn vector(i: usize) -> Self {
        MixedElement::monomial(MixedMonomial::new(&[i], &[]), GaussRational::one())
    }

    /// `ω̄_j` (zero-based).
    pub fn form(j: usize) -> Self {
        MixedElement::monomial(MixedMonomial::new(&[], &[j]), GaussRational::one())
    }

    pub fn generator(g: Generator) -> Self {
        match g {
            Generator::Vector(i) => MixedElement::vector(i),
            Generator::Form(j) => MixedElement::form(j),
        }
    }

    /// `Σ c_j v_j` from `(1,0)` coordinates.
    pub fn from_vector_coords(coords: &[GaussRational]) -> Self {
        let mut e = MixedElement::zero();
        for (j, c) in coords.iter().enumerate() {
            e.add_term(MixedMonomial::new(&[j], &[]), c.clone());
        }
        e
    }

    /// `Σ c_j ω̄_j` from coordinates.
    pub fn from_form_coords(coords: &[GaussRational]) -> Self {
        let mut e = MixedElement::zero();
        for (j, c) in coords.iter().enumerate() {
            e.add_term(MixedMonomial::new(&[], &[j]), c.clone());
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MixedMonomial, &GaussRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &MixedMonomial) -> GaussRational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: MixedMonomial, c: GaussRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &MixedElement, c: &GaussRational) {
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            self.add_term(*m, x * c);
        }
    }

    pub fn scale(&self, c: &GaussRational) -> MixedElement {
        let mut out = MixedElement::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> MixedElement {
        self.scale(&GaussRational::from_integer(-1))
    }

    pub fn plus(&self, other: &MixedElement) -> MixedElement {
        let mut out = self.clone();
        out.add_scaled(other, &GaussRational::one());
        out
    }

    pub fn minus(&self, other: &MixedElement) -> MixedElement {
        let mut out = self.clone();
        out.add_scaled(other, &GaussRational::from_integer(-1));
        out
    }

    /// Exterior product with the Koszul sign rule (all generators odd).
    pub fn wedge(&self, other: &MixedElement) -> MixedElement {
        let mut out = MixedElement::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if let Some((neg, m)) = a.wedge(b) {
                    let c = x * y;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        out
    }

    /// Components by bidegree; they sum to `self`.
    pub fn bidegree_split(&self) -> BTreeMap<(usize, usize), MixedElement> {
        let mut out: BTreeMap<(usize, usize), MixedElement> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.bidegree()).or_default().add_term(*m, c.clone());
        }
        out
    }

    /// The common bidegree of all terms, if homogeneous. Zero has no bidegree.
    pub fn bidegree(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys().map(MixedMonomial::bidegree);
        let first = it.next()?;
        it.all(|b| b == first).then_some(first)
    }

    /// The common total degree of all terms, if homogeneous.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(MixedMonomial::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// `true` when the element is zero or homogeneous of bidegree `(p, q)`.
    pub fn is_homogeneous_of(&self, p: usize, q: usize) -> bool {
        self.terms.keys().all(|m| m.bidegree() == (p, q))
    }

    /// Coordinates with respect to an ordered monomial basis. Terms outside the basis are
    /// reported as an error carrying the offending monomial.
    pub fn coordinates(&self, index: &HashMap<MixedMonomial, usize>, len: usize) -> Result<Vec<GaussRational>, MixedMonomial> {
        let mut v = vec![GaussRational::zero(); len];
        for (m, c) in &self.terms {
            let k = *index.get(m).ok_or(*m)?;
            v[k] = c.clone();
        }
        Ok(v)
    }

    pub fn from_coordinates(basis: &[MixedMonomial], coords: &[GaussRational]) -> MixedElement {
        let mut e = MixedElement::zero();
        for (m, c) in basis.iter().zip(coords) {
            e.add_term(*m, c.clone());
        }
        e
    }

    /// Applies a linear map given on monomials.
    pub fn map_monomials(&self, mut f: impl FnMut(&MixedMonomial) -> MixedElement) -> MixedElement {
        let mut out = MixedElement::zero();
        for (m, c) in &self.terms {
            out.add_scaled(&f(m), c);
        }
        out
    }
}

/// Builds the lookup table `monomial → position` for a basis.
pub fn basis_index(basis: &[MixedMonomial]) -> HashMap<MixedMonomial, usize> {
    basis.iter().enumerate().map(|(k, m)| (*m, k)).collect()
}

impl fmt::Display for MixedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = (c.im.is_zero() && c.re.is_negative()) || (c.re.is_zero() && c.im.is_negative());
            let shown = if negative { -c } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = m.to_string();
            if shown.is_one() {
                write!(f, "{mono}")?;
            } else if shown.is_real() || shown.re.is_zero() {
                if mono == "1" {
                    write!(f, "{shown}")?;
                } else {
                    write!(f, "{shown} {mono}")?;
                }
            } else {
                write!(f, "({shown}) {mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MixedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A generator of the scratch space of 1-forms: `ω_k` (type `(1,0)`) or `ω̄_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ScratchForm {
    Holomorphic(usize),
    Antiholomorphic(usize),
}

/// A 2-form over `ω_1..ω_n, ω̄_1..ω̄_n`, used only transiently to hold exterior derivatives
/// of invariant forms. Keys are ordered pairs `a < b` meaning `a ∧ b`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScratchTwoForm {
    terms: BTreeMap<(ScratchForm, ScratchForm), GaussRational>,
}

impl ScratchTwoForm {
    pub fn zero() -> Self {
        ScratchTwoForm::default()
    }

    /// Adds `c · a ∧ b`, normalizing the order of the pair.
    pub fn add(&mut self, a: ScratchForm, b: ScratchForm, c: GaussRational) {
        if a == b || c.is_zero() {
            return;
        }
        let (key, c) = if a < b { ((a, b), c) } else { ((b, a), -c) };
        let slot = self.terms.entry(key).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(ScratchForm, ScratchForm), &GaussRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The `(0,2)` part, as an element of `K•`.
    pub fn antiholomorphic_part(&self) -> MixedElement {
        let mut out = MixedElement::zero();
        for ((a, b), c) in &self.terms {
            if let (ScratchForm::Antiholomorphic(i), ScratchForm::Antiholomorphic(j)) = (a, b) {
                out.add_scaled(&MixedElement::form(*i).wedge(&MixedElement::form(*j)), c);
            }
        }
        out
    }
}

/// Contraction `ι_{v_i}` of a scratch 2-form, pairing `⟨v_i, ω_j⟩ = δ_ij`, `⟨v_i, ω̄_j⟩ = 0`.
///
/// The result is returned as a `(0,1)`-form; `(1,0)`-form components (which arise only from a
/// `(2,0)` part of the argument) are projected away since they do not belong to `K•`.
pub fn interior(i: usize, against: &ScratchTwoForm) -> MixedElement {
    let mut out = MixedElement::zero();
    for ((a, b), c) in &against.terms {
        // ι_v(a ∧ b) = a(v) b − b(v) a
        if *a == ScratchForm::Holomorphic(i) {
            if let ScratchForm::Antiholomorphic(j) = b {
                out.add_term(MixedMonomial::new(&[], &[*j]), c.clone());
            }
        }
        if *b == ScratchForm::Holomorphic(i) {
            if let ScratchForm::Antiholomorphic(j) = a {
                out.add_term(MixedMonomial::new(&[], &[*j]), -c);
            }
        }
    }
    out
}
