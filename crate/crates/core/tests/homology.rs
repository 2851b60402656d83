#![allow(clippy::needless_range_loop)]

mod common;

use std::collections::BTreeMap;

use common::*;
use nilpoisson::exterior::monomial_basis;
use nilpoisson::homology::{self, d_bicomplex_crosscheck, BigradedComplex, Verdict};
use nilpoisson::{catalog, theorem2_lambda, Error, ExactMatrix, GaussRational, MixedElement};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn zero() -> MixedElement {
    MixedElement::zero()
}

#[test]
fn torus_matrices_vanish() {
    let c = ctx(&catalog::torus(2).unwrap());
    let complex = BigradedComplex::assemble(&c, &zero()).unwrap();
    assert!(complex.matrices().all(|(_, _, m)| m.is_zero()));
}

#[test]
fn tower_four_dbar_on_vectors_has_rank_three() {
    let c = ctx(&catalog::tower(4).unwrap());
    let complex = BigradedComplex::assemble(&c, &counterexample_pi()).unwrap();
    let m = complex.dbar_matrix(1, 0);
    assert_eq!((m.rows(), m.cols()), (16, 4));
    assert_eq!(m.rank(), 3);
    let h = complex.dolbeault_cohomology(1, 0);
    assert_eq!(h.dim, 1);
    assert_eq!(h.representatives, vec![v(4)]);
}

#[test]
fn tower_four_ad_sends_second_form_to_v4_w1() {
    let c = ctx(&catalog::tower(4).unwrap());
    let complex = BigradedComplex::assemble(&c, &counterexample_pi()).unwrap();
    let m = complex.ad_matrix(0, 1);
    let source = complex.basis(0, 1);
    let target = complex.basis(1, 1);
    let col = source.iter().position(|x| MixedElement::monomial(*x, GaussRational::one()) == w(2)).unwrap();
    let row = target.iter().position(|x| MixedElement::monomial(*x, GaussRational::one()) == v(4).wedge(&w(1))).unwrap();
    assert_eq!(m.get(row, col), &q(1, 1));
    let nonzero = (0..m.rows()).filter(|&i| !m.get(i, col).is_zero()).count();
    assert_eq!(nonzero, 1);
}

#[test]
fn assembly_rejects_non_poisson_bivectors() {
    let c = ctx(&catalog::tower(4).unwrap());
    match BigradedComplex::assemble(&c, &v(1).wedge(&v(2))) {
        Err(Error::NotHolomorphicPoisson(msg)) => assert!(msg.contains("∂̄Λ")),
        other => panic!("unexpected {other:?}"),
    }
    let iw = ctx(&iwasawa());
    match BigradedComplex::assemble(&iw, &v(1).wedge(&v(2)).plus(&v(1).wedge(&v(3)))) {
        Err(Error::NotHolomorphicPoisson(msg)) => assert!(msg.contains("[Λ,Λ]"), "{msg}"),
        other => panic!("unexpected {other:?}"),
    }
    assert!(matches!(BigradedComplex::assemble(&c, &v(1)), Err(Error::WrongBidegree { .. })));
}

#[test]
fn torus_dolbeault_is_binomial() {
    for n in 1..=4 {
        let c = ctx(&catalog::torus(n).unwrap());
        let dims = BigradedComplex::assemble(&c, &zero()).unwrap().dolbeault_dims();
        for p in 0..=n {
            for qq in 0..=n {
                assert_eq!(dims[p][qq], binomial(n, p) * binomial(n, qq));
            }
        }
    }
}

#[test]
fn pure_forms_of_abelian_structures() {
    for p in catalog_entries() {
        let c = ctx(&p);
        let n = c.complex_dim();
        let dims = BigradedComplex::assemble(&c, &zero()).unwrap().dolbeault_dims();
        for qq in 0..=n {
            assert_eq!(dims[0][qq], binomial(n, qq), "{:?} q = {qq}", p.name);
        }
    }
}

#[test]
fn euler_characteristic_of_each_column_vanishes() {
    let mut algebras = catalog_entries();
    algebras.push(iwasawa());
    algebras.push(random_abelian(3, 4, 2, true));
    for p in algebras {
        let c = ctx(&p);
        let dims = BigradedComplex::assemble(&c, &zero()).unwrap().dolbeault_dims();
        for (pp, column) in dims.iter().enumerate() {
            let chi: i64 = column.iter().enumerate().map(|(qq, d)| if qq % 2 == 0 { *d as i64 } else { -(*d as i64) }).sum();
            assert_eq!(chi, 0, "{:?} p = {pp}", p.name);
        }
    }
}

#[test]
fn zero_bivector_gives_direct_sum() {
    for p in [catalog::tower(3).unwrap(), catalog::kodaira(), iwasawa()] {
        let c = ctx(&p);
        let complex = BigradedComplex::assemble(&c, &zero()).unwrap();
        let dolbeault = complex.dolbeault_dims();
        let n = c.complex_dim();
        let poisson = complex.poisson_dims();
        for k in 0..=2 * n {
            let sum: usize = (0..=n.min(k)).filter(|pp| k - pp <= n).map(|pp| dolbeault[pp][k - pp]).sum();
            assert_eq!(poisson[k], sum, "k = {k}");
        }
        let pages = complex.spectral_pages(n + 1).unwrap();
        assert!(pages.iter().all(|page| page.is_degenerate()));
        assert_eq!(pages[0].dims, pages[n].dims);
        assert_eq!(complex.poisson_cohomology(2 * n + 1).dim, 0);
    }
}

#[test]
fn poisson_representatives_are_closed() {
    let c = ctx(&catalog::tower(4).unwrap());
    let pi = counterexample_pi();
    let complex = BigradedComplex::assemble(&c, &pi).unwrap();
    for k in 0..=8 {
        let h = complex.poisson_cohomology(k);
        assert_eq!(h.representatives.len(), h.dim);
        for r in &h.representatives {
            assert!(c.dbar_lambda(&pi, r).unwrap().is_zero());
        }
    }
}

// E_r dims of tower(4) with 2v1∧v4 − v2∧v3, rows p = 0..4, columns q = 0..4.
const E1: [[usize; 5]; 5] = [[1, 4, 6, 4, 1], [1, 4, 6, 4, 1], [2, 8, 12, 8, 2], [1, 4, 6, 4, 1], [1, 4, 6, 4, 1]];
const E2: [[usize; 5]; 5] = [[1, 2, 4, 4, 1], [1, 2, 2, 2, 1], [2, 6, 8, 6, 2], [1, 2, 2, 2, 1], [1, 4, 4, 2, 1]];
const E_INF: [[usize; 5]; 5] = [[1, 2, 3, 2, 1], [1, 2, 2, 2, 1], [2, 5, 4, 5, 2], [1, 2, 2, 2, 1], [1, 2, 3, 2, 1]];
const H_PI: [usize; 9] = [1, 3, 7, 10, 10, 10, 7, 3, 1];

fn table(dims: &BTreeMap<(usize, usize), usize>) -> [[usize; 5]; 5] {
    let mut t = [[0; 5]; 5];
    for (&(p, qq), &d) in dims {
        t[p][qq] = d;
    }
    t
}

#[test]
fn counterexample_page_tables() {
    let c = ctx(&catalog::tower(4).unwrap());
    let complex = BigradedComplex::assemble(&c, &counterexample_pi()).unwrap();
    let pages = complex.spectral_pages(5).unwrap();
    assert_eq!(table(&pages[0].dims), E1);
    assert_eq!(table(&pages[1].dims), E2);
    for page in &pages[2..] {
        assert_eq!(table(&page.dims), E_INF);
    }
    assert_eq!(complex.poisson_dims(), H_PI);
    assert_eq!(complex.verdict_from_pages(&pages).unwrap(), Verdict::FailsAt { r: 2, p: 0, q: 2 });
    // d_2 vanishes in lower degrees, so (0, 2) is the first failure in (r, p, q) order.
    assert!(pages[1].differential(0, 1).unwrap().is_zero());
    assert!(pages[1].differential(1, 1).unwrap().is_zero());
}

#[test]
fn counterexample_second_differential() {
    let c = ctx(&catalog::tower(4).unwrap());
    let pi = counterexample_pi();
    let complex = BigradedComplex::assemble(&c, &pi).unwrap();
    let pages = complex.spectral_pages(2).unwrap();
    // ω̄2∧ω̄3 lifts to the 2-cycle ω̄2∧ω̄3 + v3∧ω̄3, whose boundary is −2 v3∧v4∧ω̄2.
    let x = w(2).wedge(&w(3));
    let zig = x.plus(&v(3).wedge(&w(3)));
    let boundary = c.dbar_lambda(&pi, &zig).unwrap();
    assert_eq!(boundary, v(3).wedge(&v(4)).wedge(&w(2)).scale(&q(-2, 1)));
    let class = complex.class_coordinates(2, 0, 2, &zig).unwrap().unwrap();
    assert!(class.iter().any(|x| !x.is_zero()));
    let image = complex.class_coordinates(2, 2, 1, &boundary).unwrap().unwrap();
    assert!(image.iter().any(|x| !x.is_zero()));
    assert_eq!(pages[1].differential(0, 2).unwrap().mul_vec(&class), image);
    // ω̄2∧ω̄3 alone is not a 2-cycle.
    assert!(complex.class_coordinates(2, 0, 2, &x).unwrap().is_none());
}

#[test]
fn high_step_family_degenerates() {
    let c = ctx(&catalog::tower(5).unwrap());
    let complex = BigradedComplex::assemble(&c, &high_step_pi(5)).unwrap();
    assert_eq!(complex.degeneration_verdict().unwrap(), Verdict::DegeneratesAtE2);
}

#[test]
fn theorem2_degenerates_on_small_catalog() {
    for p in [catalog::kodaira(), catalog::tower(3).unwrap(), catalog::torus(2).unwrap()] {
        let c = ctx(&p);
        let lambda = theorem2_lambda(&c).unwrap().lambda;
        assert_eq!(homology::degeneration_verdict(&c, &lambda).unwrap(), Verdict::DegeneratesAtE2, "{:?}", p.name);
    }
}

#[test]
fn pages_satisfy_monotonicity_and_convergence() {
    let c = ctx(&catalog::tower(4).unwrap());
    for lambda in [counterexample_pi(), v(3).wedge(&v(4)), theorem2_lambda(&c).unwrap().lambda] {
        let complex = BigradedComplex::assemble(&c, &lambda).unwrap();
        let pages = complex.spectral_pages(6).unwrap();
        for pair in pages.windows(2) {
            for (key, d) in &pair[1].dims {
                assert!(*d <= pair[0].dims[key]);
            }
        }
        assert_eq!(pages[4].dims, pages[5].dims);
        let e1 = complex.dolbeault_dims();
        for (&(p, qq), &d) in &pages[0].dims {
            assert_eq!(d, e1[p][qq]);
        }
        let poisson = complex.poisson_dims();
        for (k, dim) in poisson.iter().enumerate() {
            assert_eq!(pages[5].total_dim(k), *dim);
        }
    }
}

#[test]
fn page_representatives_are_cycles() {
    let c = ctx(&catalog::tower(4).unwrap());
    let pi = counterexample_pi();
    let complex = BigradedComplex::assemble(&c, &pi).unwrap();
    let pages = complex.spectral_pages(3).unwrap();
    for page in &pages {
        for (&(p, qq), reps) in &page.representatives {
            assert_eq!(reps.len(), page.dims[&(p, qq)]);
            for (i, rep) in reps.iter().enumerate() {
                let coords = complex.class_coordinates(page.r, p, qq, rep).unwrap().expect("representative is a cycle");
                let mut unit = vec![GaussRational::zero(); reps.len()];
                unit[i] = GaussRational::one();
                assert_eq!(coords, unit);
            }
        }
    }
}

/// Solves `m x = b` exactly, if possible.
fn solve(m: &ExactMatrix, b: &[GaussRational]) -> Option<Vec<GaussRational>> {
    let mut cols: Vec<Vec<GaussRational>> = (0..m.cols()).map(|j| m.column(j)).collect();
    cols.push(b.iter().map(|x| -x).collect());
    let kernel = ExactMatrix::from_columns(m.rows(), &cols).kernel_basis();
    let last = m.cols();
    let v = kernel.basis().row_vecs().into_iter().find(|v| !v[last].is_zero())?;
    let s = v[last].inv();
    Some(v[..last].iter().map(|x| x * &s).collect())
}

/// The element-wise description of `d_2`: for `a0 ∈ A^{p,q}` with `∂̄ a0 = 0` and
/// `ad a0 = −∂̄ a1`, `d_2[a0] = [ad a1]`. Checked on random combinations of representatives.
#[test]
fn second_differential_matches_chain_chase() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (p, lambda) in [(catalog::tower(4).unwrap(), counterexample_pi()), (catalog::tower(3).unwrap(), v(2).wedge(&v(3)))] {
        let c = ctx(&p);
        let n = c.complex_dim();
        let complex = BigradedComplex::assemble(&c, &lambda).unwrap();
        let pages = complex.spectral_pages(2).unwrap();
        let e2 = &pages[1];
        for (&(pp, qq), reps) in &e2.representatives {
            let Some(d2) = e2.differential(pp, qq) else { continue };
            if reps.is_empty() {
                continue;
            }
            for _ in 0..3 {
                let coeffs: Vec<GaussRational> =
                    (0..reps.len()).map(|_| GaussRational::from_integer(rng.random_range(-2..=2))).collect();
                let mut z = MixedElement::zero();
                for (r, cf) in reps.iter().zip(&coeffs) {
                    z.add_scaled(r, cf);
                }
                let a0 = z.bidegree_split().remove(&(pp, qq)).unwrap_or_default();
                assert!(c.dbar(&a0).is_zero());
                let target_basis = monomial_basis(n, pp + 1, qq);
                let index = nilpoisson::exterior::basis_index(&target_basis);
                let rhs = c.ad(&lambda, &a0).neg().coordinates(&index, target_basis.len()).unwrap();
                let a1 = solve(complex.dbar_matrix(pp + 1, qq - 1), &rhs).expect("ad a0 is ∂̄-exact on E_2");
                let a1 = MixedElement::from_coordinates(complex.basis(pp + 1, qq - 1), &a1);
                let image = c.ad(&lambda, &a1);
                let chased = complex.class_coordinates(2, pp + 2, qq - 1, &image).unwrap().expect("ad a1 is a 2-cycle");
                assert_eq!(d2.mul_vec(&coeffs), chased, "({pp},{qq})");
            }
        }
    }
}

#[test]
fn dimensions_do_not_depend_on_basis_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let c = ctx(&catalog::tower(4).unwrap());
    let pi = counterexample_pi();
    let reference = BigradedComplex::assemble(&c, &pi).unwrap();
    let ref_pages = reference.spectral_pages(3).unwrap();
    for _ in 0..2 {
        let mut bases = BTreeMap::new();
        for p in 0..=4 {
            for qq in 0..=4 {
                let mut b = monomial_basis(4, p, qq);
                b.shuffle(&mut rng);
                bases.insert((p, qq), b);
            }
        }
        let shuffled = BigradedComplex::assemble_with_bases(&c, &pi, bases).unwrap();
        assert_eq!(shuffled.dolbeault_dims(), reference.dolbeault_dims());
        assert_eq!(shuffled.poisson_dims(), reference.poisson_dims());
        let pages = shuffled.spectral_pages(3).unwrap();
        for (a, b) in pages.iter().zip(&ref_pages) {
            assert_eq!(a.dims, b.dims);
        }
    }
}

#[test]
fn shuffled_bases_must_be_permutations() {
    let c = ctx(&catalog::tower(2).unwrap());
    let mut bases = BTreeMap::new();
    for p in 0..=2 {
        for qq in 0..=2 {
            bases.insert((p, qq), monomial_basis(2, p, qq));
        }
    }
    bases.get_mut(&(1, 1)).unwrap().pop();
    assert!(matches!(BigradedComplex::assemble_with_bases(&c, &zero(), bases), Err(Error::Malformed(_))));
}

#[test]
fn crosscheck_agrees_on_catalog() {
    for (p, ells) in [(catalog::torus(3).unwrap(), vec![0, 1, 2, 3]), (catalog::kodaira(), vec![0, 1, 2]), (catalog::tower(4).unwrap(), vec![2])] {
        let c = ctx(&p);
        for ell in ells {
            let report = d_bicomplex_crosscheck(&c, ell).unwrap();
            assert!(report.agrees, "{:?} ℓ = {ell}: {report:?}", p.name);
            assert!(report.blocks_respected && report.bicomplex_identities);
            let total: usize = report.block_dims.values().sum();
            let n = c.complex_dim();
            assert_eq!(total, binomial(n, ell) * (1 << n));
        }
    }
    let torus = d_bicomplex_crosscheck(&ctx(&catalog::torus(3).unwrap()), 2).unwrap();
    assert_eq!(torus.bicomplex, vec![3, 9, 9, 3]);
}

#[test]
fn crosscheck_requires_abelian_structure() {
    assert!(matches!(d_bicomplex_crosscheck(&ctx(&iwasawa()), 1), Err(Error::NotAbelian)));
}

#[test]
fn crosscheck_on_random_abelian_algebras() {
    for seed in 0..4 {
        let p = random_abelian(seed, 4, 2, seed % 2 == 1);
        let c = ctx(&p);
        for ell in 0..=2 {
            assert!(d_bicomplex_crosscheck(&c, ell).unwrap().agrees, "seed {seed} ℓ = {ell}");
        }
    }
}

#[test]
fn iwasawa_cohomology() {
    let c = ctx(&iwasawa());
    let complex = BigradedComplex::assemble(&c, &zero()).unwrap();
    // ∂̄ vanishes on vectors and ∂̄ω̄3 = −ω̄1∧ω̄2: H^1(g^{0,0}) is spanned by ω̄1, ω̄2.
    assert_eq!(c.dbar(&w(3)), w(1).wedge(&w(2)).neg());
    let dims = complex.dolbeault_dims();
    assert_eq!(dims[0], vec![1, 2, 2, 1]);
    assert_eq!(dims[1], vec![3, 6, 6, 3]);
}
