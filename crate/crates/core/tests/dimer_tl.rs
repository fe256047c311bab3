use std::collections::BTreeSet;

use dimerweb::dimer::{self, boundary_subset, enumerate_matchings, grassmann_point, matroid};
use dimerweb::network::PlanarNetwork;
use dimerweb::poly::Polynomial;
use dimerweb::tl::{self, compatible, enumerate_pairings, enumerate_tl_subgraphs, tl_immanants};

fn fixture(name: &str) -> PlanarNetwork {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    PlanarNetwork::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn every_matching_has_k_boundary_indices() {
    for name in ["c4.net", "grid33.net", "lollipop.net"] {
        let net = fixture(name);
        let k = net.stats().k as usize;
        for m in enumerate_matchings(&net) {
            assert_eq!(boundary_subset(&net, &m).len(), k, "{name}");
        }
    }
}

#[test]
fn grid_faces_and_stats() {
    let net = fixture("grid33.net");
    assert_eq!(net.n(), 8);
    let inner = net.faces().iter().filter(|f| !f.outer).count();
    assert_eq!(inner, 4);
    let st = net.stats();
    assert_eq!((st.d, st.dprime, st.k), (-1, 4, 3));
}

#[test]
fn grid_plucker_relations_and_tl_sweep() {
    let net = fixture("grid33.net");
    assert!(dimer::verify_plucker(&net).passed());
    let r = tl::verify_tl_sweep(&net);
    assert!(r.passed(), "{r}");
    assert_eq!(r.checked, 56 * 56);
}

#[test]
fn lollipop_point() {
    let net = fixture("lollipop.net");
    assert_eq!(enumerate_matchings(&net).len(), 1);
    let pt = grassmann_point(&net).unwrap();
    assert_eq!(pt.get(&[3, 4]), Polynomial::one());
    assert_eq!(pt.support().len(), 1);
    let a = tl::pairing_ensemble(&net);
    assert_eq!(a.into_iter().map(|p| p.to_string()).collect::<Vec<_>>(), vec!["arcs=;T={3,4}"]);
}

#[test]
fn rotation_shifts_coordinates() {
    let net = fixture("c4.net");
    let rot = net.cyclic_rotate();
    let (p, q) = (grassmann_point(&net).unwrap(), grassmann_point(&rot).unwrap());
    for (i, f) in &q.coords {
        let shifted: Vec<usize> = i.iter().map(|x| x % 4 + 1).collect();
        let mut sorted = shifted.clone();
        sorted.sort();
        assert_eq!(f, &p.get(&sorted), "I = {i:?}");
    }
    let lol = fixture("lollipop.net").cyclic_rotate();
    let m: Vec<_> = matroid(&lol).unwrap().into_iter().collect();
    assert_eq!(m, vec![vec![2, 3]]);
}

#[test]
fn double_dimer_mass() {
    // each ordered pair of matchings is one of 2^(#paths + #cycles) splittings
    for name in ["c4.net", "grid33.net"] {
        let net = fixture(name);
        let z: Polynomial = enumerate_matchings(&net).iter().map(|m| m.weight(&net)).sum();
        let mass: Polynomial = enumerate_tl_subgraphs(&net)
            .into_iter()
            .map(|(s, _, w)| w.scale(&dimerweb::poly::int(1 << s.paths())))
            .sum();
        assert_eq!(mass, &z * &z, "{name}");
    }
}

#[test]
fn dropping_the_arc_condition_overcounts() {
    let net = fixture("c4.net");
    let table = tl_immanants(&net);
    let pt = grassmann_point(&net).unwrap();
    let (i, j) = (vec![1, 2], vec![3, 4]);
    let loose: Polynomial = table
        .iter()
        .filter(|(p, _)| p.tags.is_empty() && p.support() == vec![1, 2, 3, 4])
        .map(|(_, f)| f)
        .sum();
    let strict: Polynomial = table.iter().filter(|(p, _)| compatible(p, &i, &j)).map(|(_, f)| f).sum();
    assert_eq!(strict, &pt.get(&i) * &pt.get(&j));
    assert_ne!(loose, strict);
}

#[test]
fn theta_is_a_bijection() {
    for (k, n) in [(1, 3), (2, 4), (2, 5), (3, 6)] {
        let images: BTreeSet<_> = tl::standard_pairs(k, n)
            .iter()
            .map(|(i, j)| tl::theta(i, j).unwrap())
            .collect();
        let all: BTreeSet<_> = enumerate_pairings(k, n).into_iter().collect();
        assert_eq!(images, all, "k={k} n={n}");
        assert_eq!(tl::standard_pairs(k, n).len(), all.len());
    }
}

#[test]
fn inequalities_on_fixtures() {
    for name in ["c4.net", "grid33.net"] {
        let r = tl::verify_inequalities(&fixture(name), 10, 7);
        assert!(r.passed(), "{r}");
    }
    let at_one = fixture("c4.net").map_weights(|_| Polynomial::one());
    let pt = grassmann_point(&at_one).unwrap();
    assert!(&pt.get(&[1, 4]) * &pt.get(&[2, 3]) == Polynomial::one());
    assert!(&pt.get(&[1, 3]) * &pt.get(&[2, 4]) == Polynomial::from_int(2));
}
