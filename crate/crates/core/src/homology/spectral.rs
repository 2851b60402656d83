use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use super::complex::{BigradedComplex, TotalDegree};
use crate::error::{Error, Result};
use crate::exterior::MixedElement;
use crate::linalg::{quotient_map, ExactMatrix, GaussRational, QuotientMap, Subspace};

/// One page `E_r` of the spectral sequence of the filtration by vector degree.
#[derive(Clone, Debug)]
pub struct SpectralPage {
    pub r: usize,
    pub dims: BTreeMap<(usize, usize), usize>,
    /// Representatives of a basis of `E_r^{p,q}`, as elements of `K^{p+q}`.
    pub representatives: BTreeMap<(usize, usize), Vec<MixedElement>>,
    /// `d_r : E_r^{p,q} → E_r^{p+r,q−r+1}` in the representative bases; present when the
    /// target bidegree exists.
    pub differentials: BTreeMap<(usize, usize), ExactMatrix>,
}

impl SpectralPage {
    pub fn dim(&self, p: usize, q: usize) -> usize {
        self.dims.get(&(p, q)).copied().unwrap_or(0)
    }

    /// `d_r` out of `(p, q)`, or `None` if the target bidegree is out of range.
    pub fn differential(&self, p: usize, q: usize) -> Option<&ExactMatrix> {
        self.differentials.get(&(p, q))
    }

    pub fn is_degenerate(&self) -> bool {
        self.differentials.values().all(ExactMatrix::is_zero)
    }

    /// `Σ_{p+q=k} dim E_r^{p,q}`.
    pub fn total_dim(&self, k: usize) -> usize {
        self.dims.iter().filter(|((p, q), _)| p + q == k).map(|(_, d)| d).sum()
    }
}

/// Whether `d_r = 0` for every `r ≥ 2`, or the first `(r, p, q)` where it is not.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    DegeneratesAtE2,
    FailsAt { r: usize, p: usize, q: usize },
}

impl Verdict {
    /// Stable machine-readable form: `degenerates-at-E2` or `fails-at-(r,p,q)`.
    pub fn code(&self) -> String {
        match self {
            Verdict::DegeneratesAtE2 => "degenerates-at-E2".to_string(),
            Verdict::FailsAt { r, p, q } => format!("fails-at-({r},{p},{q})"),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::DegeneratesAtE2 => f.write_str("degenerates-at-E2"),
            Verdict::FailsAt { r, p, q } => write!(f, "fails at r={r} (p={p},q={q})"),
        }
    }
}

/// Subspaces of the filtered total complex, memoized.
///
/// `Z_r^p(k) = F^p K^k ∩ D⁻¹(F^{p+r} K^{k+1})`. Because every `F^p` is a trailing coordinate
/// block, this is the kernel of the block of `D` with columns in `F^p` and rows below `F^{p+r}`.
struct Lattice {
    totals: Vec<TotalDegree>,
    differentials: Vec<ExactMatrix>,
    cycles: HashMap<(usize, usize, i64), Subspace>,
}

impl Lattice {
    fn new(complex: &BigradedComplex) -> Lattice {
        let top = 2 * complex.complex_dim();
        let totals = (0..=top + 1).map(|k| complex.total(k)).collect();
        let differentials = (0..=top).map(|k| complex.total_differential(k)).collect();
        Lattice { totals, differentials, cycles: HashMap::new() }
    }

    fn cycles(&mut self, k: usize, r: usize, p: i64) -> Subspace {
        if let Some(z) = self.cycles.get(&(k, r, p)) {
            return z.clone();
        }
        let source = &self.totals[k];
        let target = &self.totals[k + 1];
        let len = source.len();
        let col0 = source.filtration_start(p);
        let row_end = target.filtration_start(p + r as i64);
        let d = &self.differentials[k];
        let block = d.select(&(0..row_end).collect::<Vec<_>>(), &(col0..len).collect::<Vec<_>>());
        let kernel = block.kernel_basis();
        let vectors = kernel
            .basis()
            .row_vecs()
            .into_iter()
            .map(|v| {
                let mut full = vec![GaussRational::zero(); len];
                full[col0..].clone_from_slice(&v);
                full
            })
            .collect();
        let z = Subspace::from_vectors(len, vectors);
        self.cycles.insert((k, r, p), z.clone());
        z
    }

    /// `E_r^{p,q} = Z_r^p / (Z_{r−1}^{p+1} + D Z_{r−1}^{p−r+1})` in degree `k = p + q`.
    fn page_quotient(&mut self, r: usize, p: usize, q: usize) -> Result<QuotientMap> {
        let k = p + q;
        let p = p as i64;
        let r_i = r as i64;
        let z = self.cycles(k, r, p);
        let mut boundary = self.cycles(k, r - 1, p + 1);
        if k > 0 {
            let from_below = self.cycles(k - 1, r - 1, p - r_i + 1);
            let image = from_below.image_under(&self.differentials[k - 1]);
            boundary = boundary.sum(&image)?;
        }
        quotient_map(&boundary, &z).map_err(|_| Error::Internal(format!("B_{r} ⊄ Z_{r} at ({p},{q})")))
    }
}

impl BigradedComplex {
    /// Pages `E_1, …, E_{r_max}` with their differentials.
    ///
    /// Consecutive pages are checked against `dim E_{r+1} = dim ker d_r − dim im d_r`.
    pub fn spectral_pages(&self, r_max: usize) -> Result<Vec<SpectralPage>> {
        if r_max == 0 {
            return Err(Error::InvalidParameter("r_max must be at least 1".into()));
        }
        let n = self.complex_dim();
        let mut lattice = Lattice::new(self);
        let mut pages = Vec::new();
        for r in 1..=r_max {
            let mut quotients = BTreeMap::new();
            for p in 0..=n {
                for q in 0..=n {
                    quotients.insert((p, q), lattice.page_quotient(r, p, q)?);
                }
            }
            let mut page = SpectralPage {
                r,
                dims: BTreeMap::new(),
                representatives: BTreeMap::new(),
                differentials: BTreeMap::new(),
            };
            for (&(p, q), quotient) in &quotients {
                let total = &lattice.totals[p + q];
                let reps: Vec<Vec<GaussRational>> = quotient.section.basis().row_vecs();
                page.dims.insert((p, q), quotient.dim());
                page.representatives.insert((p, q), reps.iter().map(|v| total.element(v)).collect());
                if p + r > n || q + 1 < r {
                    continue;
                }
                let target_key = (p + r, q + 1 - r);
                let target = &quotients[&target_key];
                let z_target = lattice.cycles(p + q + 1, r, (p + r) as i64);
                let d = &lattice.differentials[p + q];
                let mut cols = Vec::new();
                for v in &reps {
                    let image = d.mul_vec(v);
                    if !z_target.contains(&image) {
                        return Err(Error::Internal(format!("D maps E_{r}^({p},{q}) outside Z_{r}")));
                    }
                    cols.push(target.project(&image));
                }
                page.differentials.insert((p, q), ExactMatrix::from_columns(target.dim(), &cols));
            }
            if let Some(previous) = pages.last() {
                check_successor(previous, &page)?;
            }
            pages.push(page);
        }
        Ok(pages)
    }

    /// Coordinates of the class of `e ∈ K^{p+q}` in `E_r^{p,q}` with respect to the
    /// representatives of [`Self::spectral_pages`], or `None` if `e ∉ Z_r^p`.
    pub fn class_coordinates(&self, r: usize, p: usize, q: usize, e: &MixedElement) -> Result<Option<Vec<GaussRational>>> {
        if r == 0 {
            return Err(Error::InvalidParameter("pages start at r = 1".into()));
        }
        let mut lattice = Lattice::new(self);
        let coords = lattice.totals[p + q].coordinates(e)?;
        if !lattice.cycles(p + q, r, p as i64).contains(&coords) {
            return Ok(None);
        }
        Ok(Some(lattice.page_quotient(r, p, q)?.project(&coords)))
    }

    /// `E_∞`, which equals `E_{n_c+1}`.
    pub fn limit_page(&self) -> Result<SpectralPage> {
        Ok(self.spectral_pages(self.complex_dim() + 1)?.pop().expect("at least one page"))
    }

    /// Checks `d_r` for `2 ≤ r ≤ n_c + 1` and cross-checks `Σ_{p+q=k} dim E_∞^{p,q} = dim H^k_Λ`.
    pub fn degeneration_verdict(&self) -> Result<Verdict> {
        let pages = self.spectral_pages(self.complex_dim() + 1)?;
        self.verdict_from_pages(&pages)
    }

    /// The verdict for pages `E_1, …, E_{n_c+1}` already computed by [`Self::spectral_pages`].
    pub fn verdict_from_pages(&self, pages: &[SpectralPage]) -> Result<Verdict> {
        let n = self.complex_dim();
        if pages.len() < n + 1 {
            return Err(Error::InvalidParameter(format!("need {} pages, got {}", n + 1, pages.len())));
        }
        let limit = &pages[n];
        let poisson = self.poisson_dims();
        for (k, &dim) in poisson.iter().enumerate() {
            if limit.total_dim(k) != dim {
                return Err(Error::Internal(format!(
                    "Σ dim E_∞ = {} but dim H^{k}_Λ = {dim}",
                    limit.total_dim(k)
                )));
            }
        }
        for page in &pages[1..=n] {
            if let Some((&(p, q), _)) = page.differentials.iter().find(|(_, m)| !m.is_zero()) {
                return Ok(Verdict::FailsAt { r: page.r, p, q });
            }
        }
        Ok(Verdict::DegeneratesAtE2)
    }
}

fn check_successor(page: &SpectralPage, next: &SpectralPage) -> Result<()> {
    let r = page.r;
    for (&(p, q), &dim) in &next.dims {
        let out_rank = page.differential(p, q).map_or(0, ExactMatrix::rank);
        let incoming = if p >= r { page.differential(p - r, q + r - 1) } else { None };
        let in_rank = incoming.map_or(0, ExactMatrix::rank);
        let expected = page.dim(p, q) - out_rank - in_rank;
        if dim != expected {
            return Err(Error::Internal(format!(
                "dim E_{}^({p},{q}) = {dim} but ker d_{r} − im d_{r} = {expected}",
                r + 1
            )));
        }
    }
    Ok(())
}
