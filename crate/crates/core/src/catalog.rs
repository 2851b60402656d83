//! Preset algebras: the tower family, flat tori, and the Kodaira surface algebra.
//!
//! All presets use the real basis `x_1, y_1, x_2, y_2, …` (zero-based indices `2k`, `2k + 1`)
//! with `J x_k = y_k`, and the frame `v_k = ½(x_k − i y_k)`.

use crate::error::{Error, Result};
use crate::lie::{AlgebraPresentation, FrameConvention};
use crate::linalg::Rational;

fn standard_j(n_c: usize) -> Vec<Vec<Rational>> {
    let dim = 2 * n_c;
    let mut j = vec![vec![Rational::zero(); dim]; dim];
    for k in 0..n_c {
        // J x_k = y_k, J y_k = -x_k
        j[2 * k + 1][2 * k] = Rational::one();
        j[2 * k][2 * k + 1] = -Rational::one();
    }
    j
}

/// The `n`-step tower over the Kodaira surface:
/// `[x1, y1] = y2`, `[x1, xk] = [y1, yk] = x_{k+1}`, `[x1, yk] = −[y1, xk] = y_{k+1}` for
/// `2 ≤ k ≤ n − 1`.
pub fn tower(n: usize) -> Result<AlgebraPresentation> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("tower requires n >= 2, got {n}")));
    }
    let x = |k: usize| 2 * (k - 1);
    let y = |k: usize| 2 * (k - 1) + 1;
    let one = Rational::one;
    let mut brackets = vec![(x(1), y(1), vec![(y(2), one())])];
    for k in 2..n {
        brackets.push((x(1), x(k), vec![(x(k + 1), one())]));
        brackets.push((y(1), y(k), vec![(x(k + 1), one())]));
        brackets.push((x(1), y(k), vec![(y(k + 1), one())]));
        brackets.push((y(1), x(k), vec![(y(k + 1), -one())]));
    }
    Ok(AlgebraPresentation::new(2 * n, brackets, standard_j(n))
        .with_name(format!("tower:{n}"))
        .with_frame(FrameConvention::HalfEchelon))
}

/// The abelian algebra `ℝ^{2n}` with its standard complex structure.
pub fn torus(n: usize) -> Result<AlgebraPresentation> {
    if n < 1 {
        return Err(Error::InvalidParameter("torus requires n >= 1".into()));
    }
    Ok(AlgebraPresentation::new(2 * n, vec![], standard_j(n))
        .with_name(format!("torus:{n}"))
        .with_frame(FrameConvention::HalfEchelon))
}

/// `[e1, e2] = e3` with `J e1 = e2`, `J e3 = e4`.
pub fn kodaira() -> AlgebraPresentation {
    AlgebraPresentation::new(4, vec![(0, 1, vec![(2, Rational::one())])], standard_j(2))
        .with_name("kodaira")
        .with_frame(FrameConvention::HalfEchelon)
}

/// Loads a preset by name with an optional parameter: `tower`, `torus`, `kodaira`.
pub fn load(name: &str, param: Option<usize>) -> Result<AlgebraPresentation> {
    let need = |what: &str| {
        param.ok_or_else(|| Error::InvalidParameter(format!("{what} needs a size parameter, e.g. {what}:4")))
    };
    match name {
        "tower" => tower(need("tower")?),
        "torus" => torus(need("torus")?),
        "kodaira" => match param {
            None => Ok(kodaira()),
            Some(_) => Err(Error::InvalidParameter("kodaira takes no parameter".into())),
        },
        other => Err(Error::UnknownAlgebra(other.to_string())),
    }
}

/// Parses `name[:param]`, e.g. `tower:4` or `kodaira`.
pub fn load_spec(spec: &str) -> Result<AlgebraPresentation> {
    match spec.split_once(':') {
        Some((name, p)) => {
            let n = p.trim().parse().map_err(|_| Error::InvalidParameter(format!("`{p}` is not a size")))?;
            load(name.trim(), Some(n))
        }
        None => load(spec.trim(), None),
    }
}
