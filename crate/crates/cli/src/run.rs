use std::collections::BTreeMap;
use std::time::Instant;

use nilpoisson::homology::d_bicomplex_crosscheck;
use nilpoisson::{
    catalog, io, is_holomorphic_poisson, parse_lambda, theorem2_lambda, AlgebraPresentation, BigradedComplex,
    CalculusContext, Error, GaussRational, LambdaExpr, MixedElement,
};

use crate::args::{Command, Common};
use crate::report::{AlgebraSection, CohomologySection, DolbeaultEntry, LambdaSection, PageSection, Report, StructureSection};

pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Malformed(_)
            | Error::NotNilpotent
            | Error::NotIntegrable
            | Error::NotAbelian
            | Error::NotHolomorphicPoisson(_) => 1,
            Error::Scalar(_)
            | Error::Lambda(_)
            | Error::File(_)
            | Error::UnknownAlgebra(_)
            | Error::InvalidParameter(_)
            | Error::WrongBidegree { .. }
            | Error::DimensionTooSmall(_) => 2,
            Error::Linalg(_) | Error::Internal(_) => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

struct Timer(BTreeMap<String, f64>, Instant);

impl Timer {
    fn new() -> Self {
        Timer(BTreeMap::new(), Instant::now())
    }

    fn lap(&mut self, phase: &str) {
        self.0.insert(phase.to_string(), self.1.elapsed().as_secs_f64());
        self.1 = Instant::now();
    }
}

fn load(c: &Common) -> Result<AlgebraPresentation, Failure> {
    match (&c.algebra, &c.file) {
        (Some(spec), None) => Ok(catalog::load_spec(spec)?),
        (None, Some(path)) => Ok(io::read_algebra(path)?),
        _ => Err(usage("give exactly one of --algebra or --file")),
    }
}

fn lambda(c: &Common, ctx: &CalculusContext) -> Result<Option<(MixedElement, &'static str)>, Failure> {
    if let Some(src) = &c.lambda {
        let expr = parse_lambda(src).map_err(|e| usage(format!("--lambda: {e}")))?;
        return Ok(Some((expr.bind(ctx.complex_dim())?, "expression")));
    }
    if c.theorem2 {
        return Ok(Some((theorem2_lambda(ctx)?.lambda, "theorem2")));
    }
    Ok(None)
}

fn required(l: Option<(MixedElement, &'static str)>, command: &str) -> Result<(MixedElement, &'static str), Failure> {
    l.ok_or_else(|| usage(format!("`{command}` needs --lambda or --theorem2")))
}

fn lambda_section(ctx: &CalculusContext, l: &MixedElement, source: &'static str) -> Result<LambdaSection, Failure> {
    let cand = is_holomorphic_poisson(ctx, l)?;
    let expr = LambdaExpr::from_element(l).map(|e| e.to_string()).unwrap_or_else(|| l.to_string());
    Ok(LambdaSection {
        expr,
        source,
        dbar_closed: cand.dbar_closed,
        schouten_square_zero: cand.schouten_square_zero,
        ad_identically_zero: cand.ad_identically_zero,
        holomorphic_poisson: cand.is_holomorphic_poisson(),
    })
}

/// `Σ c_k e_k` with 1-based indices.
fn real_combination(coords: &[GaussRational]) -> String {
    let mut out = String::new();
    for (k, c) in coords.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let pure_real_negative = c.im.is_zero() && c.re.is_negative();
        let pure_imag_negative = c.re.is_zero() && c.im.is_negative();
        let (sign, mag) = if pure_real_negative || pure_imag_negative { ('-', -c) } else { ('+', c.clone()) };
        let coeff = if mag == GaussRational::one() {
            String::new()
        } else if !mag.re.is_zero() && !mag.im.is_zero() {
            format!("({mag}) ")
        } else {
            format!("{mag} ")
        };
        if out.is_empty() {
            if sign == '-' {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        out.push_str(&format!("{coeff}e{}", k + 1));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn structure(ctx: &CalculusContext) -> StructureSection {
    let g = ctx.grading();
    StructureSection {
        complex_dim: ctx.complex_dim(),
        abelian: ctx.is_abelian(),
        step: g.step,
        central_series_dims: g.central_series.iter().map(|s| s.dim()).collect(),
        j_filtration_dims: g.j_filtration.iter().map(|s| s.dim()).collect(),
        center_dim: g.center.dim(),
        center_10_dim: g.center_10.dim(),
        t_dims: g.t_pieces.iter().map(|s| s.dim()).collect(),
        frame: ctx.frame().vectors().iter().map(|v| real_combination(v)).collect(),
    }
}

fn dolbeault(complex: &BigradedComplex, coef: Option<usize>) -> Result<Vec<DolbeaultEntry>, Failure> {
    let n = complex.complex_dim();
    let ps: Vec<usize> = match coef {
        Some(l) if l > n => return Err(usage(format!("--coef {l} exceeds the complex dimension {n}"))),
        Some(l) => vec![l],
        None => (0..=n).collect(),
    };
    let mut out = Vec::new();
    for p in ps {
        for q in 0..=n {
            let h = complex.dolbeault_cohomology(p, q);
            let basis = complex.basis(p, q);
            out.push(DolbeaultEntry {
                p,
                q,
                dim: h.dim,
                basis: basis.iter().map(|m| m.to_string()).collect(),
                representatives: h
                    .representatives
                    .iter()
                    .map(|r| basis.iter().map(|m| r.coefficient(m).to_string()).collect())
                    .collect(),
            });
        }
    }
    Ok(out)
}

/// Builds the report and the exit status it implies.
pub fn execute(command: &Command) -> Result<(Report, u8), Failure> {
    let c = command.common();
    let mut timer = Timer::new();
    let presentation = load(c)?;
    let validation = presentation.validate()?;
    let mut report = Report {
        algebra: AlgebraSection {
            name: presentation.name.clone(),
            dim: presentation.dim,
            valid: validation.is_valid(),
            failures: validation.failures().iter().map(|s| s.to_string()).collect(),
            validation: Some(validation.clone()),
            structure: None,
        },
        ..Report::default()
    };
    timer.lap("validate");
    if let Command::Validate(_) = command {
        report.timings = timer.0;
        return Ok((report, if validation.is_valid() { 0 } else { 1 }));
    }
    if !validation.is_valid() {
        return Err(Failure { code: 1, message: format!("algebra fails validation: {}", validation.failures().join(", ")) });
    }
    let ctx = CalculusContext::new(&presentation)?;
    report.algebra.structure = Some(structure(&ctx));
    timer.lap("context");
    let lambda = lambda(c, &ctx)?;
    if let Some((l, source)) = &lambda {
        report.lambda = Some(lambda_section(&ctx, l, source)?);
    }
    let n = ctx.complex_dim();
    let status = match command {
        Command::Validate(_) => unreachable!("handled above"),
        Command::Info(_) => 0,
        Command::Cohomology(_) => {
            let l = lambda.as_ref().map(|(l, _)| l.clone()).unwrap_or_else(MixedElement::zero);
            let complex = BigradedComplex::assemble(&ctx, &l)?;
            timer.lap("assemble");
            let mut section = CohomologySection { dolbeault: dolbeault(&complex, c.coef)?, ..Default::default() };
            if lambda.is_some() {
                section.poisson = Some(complex.poisson_dims());
            }
            report.cohomology = Some(section);
            timer.lap("cohomology");
            0
        }
        Command::Poisson(_) => {
            let (l, _) = required(lambda, "poisson")?;
            if !report.lambda.as_ref().is_some_and(|s| s.holomorphic_poisson) {
                report.timings = timer.0;
                return Ok((report, 1));
            }
            let complex = BigradedComplex::assemble(&ctx, &l)?;
            timer.lap("assemble");
            report.cohomology = Some(CohomologySection { poisson: Some(complex.poisson_dims()), ..Default::default() });
            timer.lap("cohomology");
            0
        }
        Command::Spectral(_) | Command::Degeneration(_) => {
            let (l, _) = required(lambda, command.name())?;
            let complex = BigradedComplex::assemble(&ctx, &l)?;
            timer.lap("assemble");
            let shown = c.pages.map(|r| r as usize).unwrap_or(n + 1);
            let pages = complex.spectral_pages(shown.max(n + 1))?;
            timer.lap("pages");
            report.verdict = Some(complex.verdict_from_pages(&pages)?.into());
            if let Command::Spectral(_) = command {
                report.e_pages = Some(
                    pages[..shown]
                        .iter()
                        .map(|page| PageSection {
                            r: page.r,
                            dims: (0..=n).map(|p| (0..=n).map(|q| page.dim(p, q)).collect()).collect(),
                            nonzero_differentials: page
                                .differentials
                                .iter()
                                .filter(|(_, m)| !m.is_zero())
                                .map(|(&(p, q), m)| (p, q, m.rank()))
                                .collect(),
                        })
                        .collect(),
                );
            }
            timer.lap("report");
            0
        }
        Command::Crosscheck(_) => {
            let ells: Vec<usize> = match c.coef {
                Some(l) => vec![l],
                None => (0..=n).collect(),
            };
            let reports = ells.into_iter().map(|l| d_bicomplex_crosscheck(&ctx, l)).collect::<Result<Vec<_>, _>>()?;
            timer.lap("crosscheck");
            let agrees = reports.iter().all(|r| r.agrees);
            report.cohomology = Some(CohomologySection { crosscheck: reports, ..Default::default() });
            if agrees {
                0
            } else {
                3
            }
        }
    };
    report.timings = timer.0;
    Ok((report, status))
}
