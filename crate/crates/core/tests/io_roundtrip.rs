mod common;

use common::*;
use nilpoisson::homology::BigradedComplex;
use nilpoisson::io::{read_algebra, write_algebra};
use nilpoisson::{catalog, CalculusContext, MixedElement};

fn temp_path(name: &str) -> std::path::PathBuf {
    std::env::temp_dir().join(format!("nilpoisson-{}-{name}.json", std::process::id()))
}

#[test]
fn written_files_reload_identically() {
    let mut algebras = catalog_entries();
    algebras.push(iwasawa());
    algebras.push(random_abelian(3, 3, 1, true));
    for (k, p) in algebras.iter().enumerate() {
        let path = temp_path(&k.to_string());
        write_algebra(&path, p).unwrap();
        let back = read_algebra(&path).unwrap();
        std::fs::remove_file(&path).unwrap();
        assert_eq!(&back, p);
        assert_eq!(back.validate().unwrap(), p.validate().unwrap());
        let (c1, c2) = (CalculusContext::new(p).unwrap(), CalculusContext::new(&back).unwrap());
        assert_eq!(c1.grading().step, c2.grading().step);
        assert_eq!(c1.grading().center_10, c2.grading().center_10);
        let d1 = BigradedComplex::assemble(&c1, &MixedElement::zero()).unwrap().dolbeault_dims();
        let d2 = BigradedComplex::assemble(&c2, &MixedElement::zero()).unwrap().dolbeault_dims();
        assert_eq!(d1, d2);
    }
}

#[test]
fn counterexample_survives_round_trip() {
    let path = temp_path("tower4");
    write_algebra(&path, &catalog::tower(4).unwrap()).unwrap();
    let back = read_algebra(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    let complex = BigradedComplex::assemble(&ctx(&back), &counterexample_pi()).unwrap();
    assert_eq!(complex.poisson_dims(), vec![1, 3, 7, 10, 10, 10, 7, 3, 1]);
}

#[test]
fn missing_file_is_an_error() {
    assert!(read_algebra(temp_path("absent")).is_err());
}
