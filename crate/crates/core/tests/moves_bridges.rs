use dimerweb::dimer::grassmann_point;
use dimerweb::moves::{self, add_bridge, apply_move, bridge_family, lollipop_graph, Move};
use dimerweb::network::{Color, PlanarNetwork};
use dimerweb::poly::Polynomial;

fn fixture(name: &str) -> PlanarNetwork {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    PlanarNetwork::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn p(s: &str) -> Polynomial {
    Polynomial::parse(s).unwrap()
}

#[test]
fn shipped_bridge_families_match_the_constructor() {
    use Color::*;
    let a = bridge_family(&[Black, Black, White, White], &[2, 1]).unwrap();
    let b = bridge_family(&[Black, White, Black, White], &[1, 3]).unwrap();
    assert_eq!(fixture("bridges_bbww_2_1.net").serialize(), a.with_name("bridges_bbww_2_1").serialize());
    assert_eq!(fixture("bridges_bwbw_1_3.net").serialize(), b.with_name("bridges_bwbw_1_3").serialize());
}

#[test]
fn bridge_on_two_lollipops_adds_a_linear_coordinate() {
    let base = lollipop_graph(&[Color::Black, Color::White]);
    let before = grassmann_point(&base).unwrap();
    assert_eq!(before.support().len(), 1);
    let net = add_bridge(&base, 1, "t").unwrap();
    let after = grassmann_point(&net).unwrap();
    assert_eq!(after.get(&[2]), Polynomial::one());
    assert_eq!(after.get(&[1]), p("t"));
}

#[test]
fn iterated_bridges_parametrize_the_square_cell() {
    use Color::*;
    let net = bridge_family(&[Black, Black, White, White], &[2, 1, 3, 2]).unwrap();
    let pt = grassmann_point(&net).unwrap();
    assert_eq!(pt.support().len(), 6);
    for f in pt.coords.values() {
        assert!(f.variables().iter().all(|v| v.starts_with('t')));
    }
    assert!(dimerweb::dimer::verify_plucker(&net).passed());
}

#[test]
fn moves_on_decorated_network() {
    let net = fixture("decorated.net");
    let sites: Vec<String> = moves::move_sites(&net).iter().map(|m| m.kind().to_string()).collect();
    for kind in ["gauge", "contract", "merge", "leaf", "dipole"] {
        assert!(sites.iter().any(|s| s == kind), "{kind}");
    }
    let leaf = apply_move(&net, &Move::parse("leaf v").unwrap()).unwrap();
    assert_eq!(leaf.alpha.unwrap().num, p("q"));
    let merged = apply_move(&net, &Move::parse("merge a a2").unwrap()).unwrap();
    let a = merged.network.edge_index("a").unwrap();
    assert_eq!(merged.network.edge(a).weight, p("a + p"));
    let boundary = apply_move(&net, &Move::parse("contract m3").unwrap()).unwrap();
    let e3 = boundary.network.edge_index("e3").unwrap();
    let (x, y) = boundary.network.edge(e3).ends;
    let names = [boundary.network.vertex_name(x), boundary.network.vertex_name(y)];
    assert!(names.contains(&"b3") && names.contains(&"W1"));
}

#[test]
fn moves_that_do_not_apply_are_rejected() {
    let net = fixture("c4.net");
    for m in ["contract W", "leaf W", "dipole a", "merge a b", "square W B"] {
        assert!(apply_move(&net, &Move::parse(m).unwrap()).is_err(), "{m}");
    }
    assert!(add_bridge(&net, 4, "t").is_err());
}
