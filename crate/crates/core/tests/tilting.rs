mod common;

use std::collections::BTreeSet;

use annulus::tilting::{bizley_count, binomial, enumerate_lattice_paths, is_dyck, sheaf_class_formula};
use annulus::Curve;
use common::*;

#[test]
fn census_matches_brute_force() {
    for (p, q) in [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (2, 3), (3, 2), (3, 3)] {
        let s = surface(p, q);
        let brute = brute_force_classes(&s);
        assert_eq!(brute.len() as u64, sheaf_class_formula(p as u64, q as u64), "({p},{q})");
        let classes: BTreeSet<Vec<Curve>> = s.tilting_classes().unwrap().into_iter().collect();
        assert_eq!(classes.len(), brute.len());
        let mapped: BTreeSet<Vec<Curve>> = brute.iter().map(|t| s.se_canonical(t).unwrap()).collect();
        assert_eq!(mapped, classes, "({p},{q})");
        for t in &brute {
            assert!(s.is_triangulation(t).unwrap());
            assert_eq!(s.se_canonical(&s.se_shift(t, 5)).unwrap(), s.se_canonical(t).unwrap());
        }
    }
}

#[test]
fn paths_and_dyck_counts() {
    for p in 1..=5 {
        for q in 1..=5 {
            let s = surface(p, q);
            let paths = enumerate_lattice_paths(p, q);
            assert_eq!(paths.len() as u64, binomial((p + q) as u64, p as u64));
            for path in &paths {
                let t = s.path_to_tilting(path).unwrap();
                assert!(s.is_triangulation(&t).unwrap());
                assert_eq!(&s.tilting_to_path(&t).unwrap(), path);
            }
            let dyck = paths.iter().filter(|pt| is_dyck(p, q, pt)).count() as u64;
            assert_eq!(bizley_count(p, q).unwrap(), dyck);
        }
    }
}

#[test]
fn se_shift_is_tau_inverse() {
    let s = surface(2, 3);
    for t in s.tilting_classes().unwrap().into_iter().take(20) {
        let sh = s.se_shift(&t, 1);
        let mut a: Vec<_> = sh.iter().map(|&c| s.phi(c).unwrap()).collect();
        let mut b: Vec<_> = t.iter().map(|&c| s.tau_inv(s.phi(c).unwrap())).collect();
        a.sort_by_key(|x| x.to_string());
        b.sort_by_key(|x| x.to_string());
        assert_eq!(a, b);
        assert_eq!(s.se_shift(&sh, -1), t);
    }
}
