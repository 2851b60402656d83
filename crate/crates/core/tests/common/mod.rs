#![allow(dead_code, clippy::needless_range_loop)]

use nalgebra::DMatrix;
use nilpoisson::lie::{AlgebraPresentation, FrameConvention};
use nilpoisson::{catalog, CalculusContext, ExactMatrix, GaussRational, MixedElement, Rational};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn v(i: usize) -> MixedElement {
    MixedElement::vector(i - 1)
}

pub fn w(j: usize) -> MixedElement {
    MixedElement::form(j - 1)
}

pub fn q(n: i64, d: i64) -> GaussRational {
    GaussRational::ratio(n, d)
}

pub fn ctx(p: &AlgebraPresentation) -> CalculusContext {
    CalculusContext::new(p).unwrap()
}

/// `2 v1∧v4 − v2∧v3` on tower(4).
pub fn counterexample_pi() -> MixedElement {
    v(1).wedge(&v(4)).scale(&q(2, 1)).minus(&v(2).wedge(&v(3)))
}

/// `v_{n−3}∧v_n − v_{n−2}∧v_{n−1}` on tower(n), n ≥ 5.
pub fn high_step_pi(n: usize) -> MixedElement {
    v(n - 3).wedge(&v(n)).minus(&v(n - 2).wedge(&v(n - 1)))
}

pub fn catalog_entries() -> Vec<AlgebraPresentation> {
    vec![
        catalog::torus(1).unwrap(),
        catalog::torus(2).unwrap(),
        catalog::torus(3).unwrap(),
        catalog::kodaira(),
        catalog::tower(2).unwrap(),
        catalog::tower(3).unwrap(),
        catalog::tower(4).unwrap(),
    ]
}

pub fn standard_j(n_c: usize) -> Vec<Vec<Rational>> {
    let mut j = vec![vec![Rational::zero(); 2 * n_c]; 2 * n_c];
    for k in 0..n_c {
        j[2 * k + 1][2 * k] = Rational::one();
        j[2 * k][2 * k + 1] = -Rational::one();
    }
    j
}

/// The complex Heisenberg (Iwasawa) algebra: `[v1, v2] = v3`, `[v_a, v̄_b] = 0`. Its complex
/// structure is integrable but not abelian.
pub fn iwasawa() -> AlgebraPresentation {
    let one = Rational::one;
    let (x1, y1, x2, y2, x3, y3) = (0, 1, 2, 3, 4, 5);
    AlgebraPresentation::new(
        6,
        vec![
            (x1, x2, vec![(x3, one())]),
            (x1, y2, vec![(y3, one())]),
            (y1, x2, vec![(y3, one())]),
            (y1, y2, vec![(x3, -one())]),
        ],
        standard_j(3),
    )
    .with_name("iwasawa")
    .with_frame(FrameConvention::HalfEchelon)
}

fn small_gauss(rng: &mut ChaCha8Rng) -> GaussRational {
    let re = Rational::new(rng.random_range(-3..=3), rng.random_range(1..=2));
    let im = if rng.random_bool(0.5) { Rational::zero() } else { Rational::new(rng.random_range(-2..=2), 1) };
    GaussRational::new(re, im)
}

/// A random 2-step algebra with abelian complex structure of complex dimension `n_c`.
///
/// The first `bottom` frame vectors bracket into the remaining ones:
/// `[v_a, v̄_b] = Σ_k (A^k_{ab} v_k − conj(A^k_{ba}) v̄_k)`, `[v_a, v_b] = 0`. With
/// `v = ½(x − iy)` the real brackets follow from `x = v + v̄`, `y = i(v − v̄)`.
/// When `conjugate` is set the presentation is rewritten in a random rational basis.
pub fn random_abelian(seed: u64, n_c: usize, bottom: usize, conjugate: bool) -> AlgebraPresentation {
    assert!(bottom >= 1 && bottom < n_c);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = vec![vec![vec![GaussRational::zero(); n_c]; n_c]; n_c];
    for row in a.iter_mut().take(bottom) {
        for entry in row.iter_mut().take(bottom) {
            for c in entry.iter_mut().skip(bottom) {
                if rng.random_bool(0.6) {
                    *c = small_gauss(&mut rng);
                }
            }
        }
    }
    // frame coordinates: 0..n_c for v, n_c..2n_c for v̄
    let vvbar = |x: usize, y: usize| -> Vec<GaussRational> {
        let mut out = vec![GaussRational::zero(); 2 * n_c];
        for k in 0..n_c {
            out[k] = a[x][y][k].clone();
            out[n_c + k] = -a[y][x][k].conj();
        }
        out
    };
    let frame_bracket = |s: usize, t: usize| -> Vec<GaussRational> {
        match (s < n_c, t < n_c) {
            (true, false) => vvbar(s, t - n_c),
            (false, true) => vvbar(t, s - n_c).iter().map(|c| -c).collect(),
            _ => vec![GaussRational::zero(); 2 * n_c],
        }
    };
    // real basis vector in frame coordinates
    let real = |r: usize| -> Vec<GaussRational> {
        let k = r / 2;
        let mut out = vec![GaussRational::zero(); 2 * n_c];
        if r.is_multiple_of(2) {
            out[k] = GaussRational::one();
            out[n_c + k] = GaussRational::one();
        } else {
            out[k] = GaussRational::i();
            out[n_c + k] = -GaussRational::i();
        }
        out
    };
    let dim = 2 * n_c;
    let mut brackets = Vec::new();
    for r1 in 0..dim {
        for r2 in r1 + 1..dim {
            let (e1, e2) = (real(r1), real(r2));
            let mut out = vec![GaussRational::zero(); 2 * n_c];
            for s in 0..2 * n_c {
                for t in 0..2 * n_c {
                    if e1[s].is_zero() || e2[t].is_zero() {
                        continue;
                    }
                    let c = &e1[s] * &e2[t];
                    for (o, b) in out.iter_mut().zip(frame_bracket(s, t)) {
                        *o += &(&c * &b);
                    }
                }
            }
            let mut terms = Vec::new();
            for k in 0..n_c {
                assert_eq!(out[n_c + k], out[k].conj(), "bracket is not real");
                if !out[k].re.is_zero() {
                    terms.push((2 * k, out[k].re.clone()));
                }
                if !out[k].im.is_zero() {
                    terms.push((2 * k + 1, out[k].im.clone()));
                }
            }
            if !terms.is_empty() {
                brackets.push((r1, r2, terms));
            }
        }
    }
    let p = AlgebraPresentation::new(dim, brackets, standard_j(n_c)).with_frame(FrameConvention::HalfEchelon);
    if conjugate {
        change_basis(&p, &random_invertible(&mut rng, dim))
    } else {
        p
    }
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> ExactMatrix {
    loop {
        let rows: Vec<Vec<GaussRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            GaussRational::one()
                        } else if rng.random_bool(0.3) {
                            GaussRational::from_integer(rng.random_range(-2..=2))
                        } else {
                            GaussRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        let m = ExactMatrix::from_rows(n, rows);
        if m.inverse().is_some() {
            return m;
        }
    }
}

/// Rewrites `p` in the basis `e'_i = Σ_j P[j][i] e_j`.
pub fn change_basis(p: &AlgebraPresentation, basis: &ExactMatrix) -> AlgebraPresentation {
    let n = p.dim;
    let inv = basis.inverse().expect("invertible basis change");
    let sc = p.structure_constants();
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let b = inv.mul_vec(&sc.bracket(&basis.column(i), &basis.column(j)));
            let terms: Vec<(usize, Rational)> =
                b.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.re.clone())).collect();
            if !terms.is_empty() {
                brackets.push((i, j, terms));
            }
        }
    }
    let j = inv.mul(&p.j_matrix()).mul(basis);
    let j_rows = (0..n).map(|r| (0..n).map(|c| j.get(r, c).re.clone()).collect()).collect();
    AlgebraPresentation::new(n, brackets, j_rows)
}

/// Rank of an exact matrix computed in floating point by singular values.
pub fn numeric_rank(m: &ExactMatrix, threshold: f64) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    let dm = DMatrix::from_fn(m.rows(), m.cols(), |i, j| {
        let (re, im) = m.get(i, j).to_f64_pair();
        Complex64::new(re, im)
    });
    let sv = dm.svd(false, false).singular_values;
    sv.iter().filter(|s| **s > threshold).count()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
