//! The report document and its three renderings. Every number appears in all formats.

use std::collections::BTreeMap;
use std::fmt::Write;

use nilpoisson::homology::CrosscheckReport;
use nilpoisson::{ValidationReport, Verdict};
use serde::Serialize;

use crate::args::Format;

/// Top-level keys are fixed: algebra, lambda, e_pages, verdict, cohomology, timings.
#[derive(Serialize, Default)]
pub struct Report {
    pub algebra: AlgebraSection,
    pub lambda: Option<LambdaSection>,
    pub e_pages: Option<Vec<PageSection>>,
    pub verdict: Option<VerdictSection>,
    pub cohomology: Option<CohomologySection>,
    /// Seconds per phase.
    pub timings: BTreeMap<String, f64>,
}

#[derive(Serialize, Default)]
pub struct AlgebraSection {
    pub name: Option<String>,
    pub dim: usize,
    pub validation: Option<ValidationReport>,
    pub valid: bool,
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure: Option<StructureSection>,
}

#[derive(Serialize)]
pub struct StructureSection {
    pub complex_dim: usize,
    pub abelian: bool,
    /// Nilpotency step: the first k with g^k = 0.
    pub step: usize,
    pub central_series_dims: Vec<usize>,
    pub j_filtration_dims: Vec<usize>,
    pub center_dim: usize,
    pub center_10_dim: usize,
    /// `dim t^{k,(1,0)}` for k = 1..=step.
    pub t_dims: Vec<usize>,
    /// `v_j` in the real basis e_1 … e_{2n}.
    pub frame: Vec<String>,
}

#[derive(Serialize)]
pub struct LambdaSection {
    pub expr: String,
    pub source: &'static str,
    pub dbar_closed: bool,
    pub schouten_square_zero: bool,
    pub ad_identically_zero: bool,
    pub holomorphic_poisson: bool,
}

#[derive(Serialize)]
pub struct PageSection {
    pub r: usize,
    /// `dims[p][q] = dim E_r^{p,q}`.
    pub dims: Vec<Vec<usize>>,
    /// `(p, q, rank)` for every nonzero `d_r` out of `E_r^{p,q}`.
    pub nonzero_differentials: Vec<(usize, usize, usize)>,
}

#[derive(Serialize)]
pub struct VerdictSection {
    pub code: String,
    pub description: String,
    pub degenerates_at_e2: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<FirstFailure>,
}

#[derive(Serialize)]
pub struct FirstFailure {
    pub r: usize,
    pub p: usize,
    pub q: usize,
}

impl From<Verdict> for VerdictSection {
    fn from(v: Verdict) -> Self {
        VerdictSection {
            code: v.code(),
            description: v.to_string(),
            degenerates_at_e2: v == Verdict::DegeneratesAtE2,
            first_failure: match v {
                Verdict::DegeneratesAtE2 => None,
                Verdict::FailsAt { r, p, q } => Some(FirstFailure { r, p, q }),
            },
        }
    }
}

#[derive(Serialize, Default)]
pub struct CohomologySection {
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub dolbeault: Vec<DolbeaultEntry>,
    /// `dim H^k_Λ` for k = 0..=2n_c.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poisson: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub crosscheck: Vec<CrosscheckReport>,
}

/// `H^q(g^{p,0})` with representatives as coefficient lists over `basis`.
#[derive(Serialize)]
pub struct DolbeaultEntry {
    pub p: usize,
    pub q: usize,
    pub dim: usize,
    pub basis: Vec<String>,
    pub representatives: Vec<Vec<String>>,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("reports serialize") + "\n",
            Format::Table => self.table(),
            Format::Csv => self.csv(),
        }
    }

    fn table(&self) -> String {
        let mut out = String::new();
        let a = &self.algebra;
        let _ = writeln!(out, "algebra: {} (real dimension {})", a.name.as_deref().unwrap_or("<unnamed>"), a.dim);
        if let Some(v) = &a.validation {
            for (name, ok) in [
                ("well-formed brackets", v.well_formed),
                ("Jacobi identity", v.jacobi),
                ("J^2 = -1", v.j_squared_minus_identity),
                ("nilpotent", v.nilpotent),
                ("integrable", v.integrable),
                ("abelian J", v.abelian),
            ] {
                let _ = writeln!(out, "  {name:<22}{}", if ok { "yes" } else { "no" });
            }
            let _ = writeln!(out, "  {:<22}{}", "valid", if a.valid { "yes" } else { "no" });
        }
        if let Some(s) = &a.structure {
            let _ = writeln!(out, "  complex dimension     {}", s.complex_dim);
            let _ = writeln!(out, "  step                  {}", s.step);
            let _ = writeln!(out, "  dim g^k               {:?}", s.central_series_dims);
            let _ = writeln!(out, "  dim g_J^k             {:?}", s.j_filtration_dims);
            let _ = writeln!(out, "  dim center            {} (c^{{1,0}}: {})", s.center_dim, s.center_10_dim);
            let _ = writeln!(out, "  dim t^{{k,(1,0)}}       {:?}", s.t_dims);
            let _ = writeln!(out, "v-frame:");
            for (j, v) in s.frame.iter().enumerate() {
                let _ = writeln!(out, "  v{} = {v}", j + 1);
            }
        }
        if let Some(l) = &self.lambda {
            let _ = writeln!(out, "lambda: {} ({})", l.expr, l.source);
            let _ = writeln!(out, "  dbar-closed           {}", yes(l.dbar_closed));
            let _ = writeln!(out, "  [L,L] = 0             {}", yes(l.schouten_square_zero));
            let _ = writeln!(out, "  ad_L = 0              {}", yes(l.ad_identically_zero));
            let _ = writeln!(out, "  holomorphic Poisson   {}", yes(l.holomorphic_poisson));
        }
        if let Some(c) = &self.cohomology {
            if !c.dolbeault.is_empty() {
                let _ = writeln!(out, "Dolbeault cohomology dim H^q(g^{{p,0}}):");
                out.push_str(&grid(c.dolbeault.iter().map(|e| (e.p, e.q, e.dim))));
            }
            if let Some(p) = &c.poisson {
                let _ = writeln!(out, "Poisson cohomology dim H^k_L, k = 0..{}:", p.len() - 1);
                let _ = writeln!(out, "  {}", join(p));
            }
            for x in &c.crosscheck {
                let _ = writeln!(
                    out,
                    "crosscheck l={}: bicomplex {} | dolbeault {} | {}",
                    x.ell,
                    join(&x.bicomplex),
                    join(&x.dolbeault),
                    if x.agrees { "agree" } else { "DISAGREE" }
                );
            }
        }
        if let Some(pages) = &self.e_pages {
            for page in pages {
                let _ = writeln!(out, "E_{} (rows p, columns q):", page.r);
                let cells = page.dims.iter().enumerate().flat_map(|(p, row)| row.iter().enumerate().map(move |(q, d)| (p, q, *d)));
                out.push_str(&grid(cells));
                for (p, q, rank) in &page.nonzero_differentials {
                    let _ = writeln!(out, "  d_{} nonzero on E_{}^{{{p},{q}}} (rank {rank})", page.r, page.r);
                }
            }
        }
        if let Some(v) = &self.verdict {
            if v.degenerates_at_e2 {
                let _ = writeln!(out, "verdict: {}", v.code);
            } else {
                let _ = writeln!(out, "verdict: {} ({})", v.code, v.description);
            }
        }
        out
    }

    fn csv(&self) -> String {
        let mut out = String::from("quantity,r,p,q,k,dim\n");
        let mut row = |quantity: &str, r: Option<usize>, p: Option<usize>, q: Option<usize>, k: Option<usize>, dim: usize| {
            let cell = |x: Option<usize>| x.map(|x| x.to_string()).unwrap_or_default();
            let _ = writeln!(out, "{quantity},{},{},{},{},{dim}", cell(r), cell(p), cell(q), cell(k));
        };
        if let Some(s) = &self.algebra.structure {
            for (k, d) in s.central_series_dims.iter().enumerate() {
                row("central_series", None, None, None, Some(k), *d);
            }
            for (k, d) in s.t_dims.iter().enumerate() {
                row("t_10", None, None, None, Some(k + 1), *d);
            }
        }
        if let Some(c) = &self.cohomology {
            for e in &c.dolbeault {
                row("dolbeault", None, Some(e.p), Some(e.q), None, e.dim);
            }
            for (k, d) in c.poisson.iter().flatten().enumerate() {
                row("poisson", None, None, None, Some(k), *d);
            }
            for x in &c.crosscheck {
                for (m, d) in x.bicomplex.iter().enumerate() {
                    row(&format!("bicomplex_l{}", x.ell), None, None, None, Some(m), *d);
                }
            }
        }
        for page in self.e_pages.iter().flatten() {
            for (p, dims) in page.dims.iter().enumerate() {
                for (q, d) in dims.iter().enumerate() {
                    row("E", Some(page.r), Some(p), Some(q), None, *d);
                }
            }
        }
        out
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

/// Aligned `p \ q` table from `(p, q, dim)` cells.
fn grid(cells: impl Iterator<Item = (usize, usize, usize)>) -> String {
    let mut rows: BTreeMap<usize, BTreeMap<usize, usize>> = BTreeMap::new();
    for (p, q, d) in cells {
        rows.entry(p).or_default().insert(q, d);
    }
    let qs: Vec<usize> = rows.values().flat_map(|r| r.keys().copied()).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    let width = rows.values().flat_map(|r| r.values()).map(|d| d.to_string().len()).max().unwrap_or(1).max(3);
    let mut out = String::new();
    let _ = write!(out, "  {:>5}", "p\\q");
    for q in &qs {
        let _ = write!(out, " {q:>width$}");
    }
    out.push('\n');
    for (p, r) in &rows {
        let _ = write!(out, "  {p:>5}");
        for q in &qs {
            match r.get(q) {
                Some(d) => {
                    let _ = write!(out, " {d:>width$}");
                }
                None => {
                    let _ = write!(out, " {:>width$}", ".");
                }
            }
        }
        out.push('\n');
    }
    out
}
