//! Exact ranks against floating-point singular values.

mod common;

use common::*;
use nilpoisson::homology::BigradedComplex;
use nilpoisson::{catalog, MixedElement};

fn check(complex: &BigradedComplex) -> usize {
    let mut count = 0;
    for (kind, (p, q), m) in complex.matrices() {
        assert_eq!(m.rank(), numeric_rank(m, 1e-8), "{kind} at ({p},{q})");
        count += 1;
    }
    for k in 0..=2 * complex.complex_dim() {
        let d = complex.total_differential(k);
        assert_eq!(d.rank(), numeric_rank(&d, 1e-8), "D at degree {k}");
    }
    count
}

#[test]
fn tower_four_ranks_agree() {
    let c = ctx(&catalog::tower(4).unwrap());
    let complex = BigradedComplex::assemble(&c, &counterexample_pi()).unwrap();
    assert!(check(&complex) > 0);
}

#[test]
fn random_abelian_ranks_agree() {
    for seed in 0..3 {
        let c = ctx(&random_abelian(seed, 3, 1, true));
        check(&BigradedComplex::assemble(&c, &MixedElement::zero()).unwrap());
    }
    let c = ctx(&iwasawa());
    check(&BigradedComplex::assemble(&c, &v(2).wedge(&v(3))).unwrap());
}
