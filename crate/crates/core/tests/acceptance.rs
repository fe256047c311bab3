//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line. Run with `--nocapture` to see the lines.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dimerweb::dimer::{self, enumerate_matchings, matroid, sort_closed_check};
use dimerweb::moves::{self, apply_move, bridge_family, Move};
use dimerweb::network::{Color, PlanarNetwork};
use dimerweb::poly::{linear_rank, Polynomial};
use dimerweb::ssyt::count_ssyt;
use dimerweb::tl;
use dimerweb::web::{Feature, Web};
use dimerweb::webimm;

fn fixture(name: &str) -> PlanarNetwork {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    PlanarNetwork::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn p(s: &str) -> Polynomial {
    Polynomial::parse(s).unwrap()
}

fn key(text: &str) -> String {
    Web::parse(text).unwrap().key()
}

fn outcome(n: u32, title: &str, ok: bool, detail: String) {
    println!("criterion {n:2} {} {title}: {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {n} failed: {detail}");
}

fn reference_table() -> BTreeMap<String, Polynomial> {
    let path = format!("{}/../../fixtures/c4_webs.tsv", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let (w, f) = l.split_once('\t').unwrap();
            (key(w), p(f))
        })
        .collect()
}

#[test]
fn criterion_01_example_table() {
    let table = webimm::web_immanants(&fixture("c4.net"));
    let reference = reference_table();
    let got = |k: &str| table.get(&key(k)).map(|x| x.1.clone()).unwrap_or_default();
    let verbatim = reference.iter().filter(|(k, f)| table.get(*k).map(|x| &x.1) == Some(f)).count();
    let named = got("web n=4; tags{2,4}") == p("3*(a^2*b*c^2*d + a*b^2*c*d^2) + a^3*c^3 + b^3*d^3")
        && got("web n=4; arc 2>1; arc 4>3") == p("a*c")
        && got("web n=4; tags{2}; arc 3>4") == p("a^3*c^2 + 2*a^2*b*c*d + a*b^2*d^2");
    let (r14, r34) = (key("web n=4; tags{1,4}"), key("web n=4; tags{3,4}"));
    let swapped = table[&r14].1 == reference[&r34] && table[&r34].1 == reference[&r14];
    let sweep = webimm::verify_triple_sweep(&fixture("c4.net"));
    let ok = table.len() == 50 && reference.len() == 50 && verbatim >= 48 && named && swapped && sweep.passed();
    outcome(
        1,
        "c4 web immanant table",
        ok,
        format!(
            "{} immanants, {verbatim}/50 verbatim, named rows {named}, {{1,4}}/{{3,4}} exchanged {swapped}, triple identity {}",
            table.len(),
            sweep.passed()
        ),
    );
}

#[test]
fn criterion_02_linear_independence() {
    let net = fixture("c4.net");
    let fd: Vec<Polynomial> = webimm::web_immanants(&net).into_values().map(|x| x.1).collect();
    let ft: Vec<Polynomial> = tl::tl_immanants(&net).into_values().collect();
    let (rd, rt) = (linear_rank(&fd), linear_rank(&ft));
    let ok = fd.len() == 50 && rd == 50 && ft.len() == 20 && rt == 20;
    outcome(2, "linear independence", ok, format!("rank F_D {rd}/{}, rank F_TL {rt}/{}", fd.len(), ft.len()));
}

#[test]
fn criterion_03_counting() {
    let pairings = tl::enumerate_pairings(2, 4).len() as u64;
    let webs = webimm::web_ensemble(&fixture("c4.net")).len() as u64;
    let (s2, s3) = (count_ssyt(&[2, 2], 4), count_ssyt(&[3, 3], 4));
    let ok = pairings == 20 && s2 == 20 && webs == 50 && s3 == 50;
    outcome(3, "counting identities", ok, format!("|A_2,4| {pairings}, SSYT(2,2) {s2}, |D(c4)| {webs}, SSYT(3,3) {s3}"));
}

#[test]
fn criterion_04_double_dimer_sweep() {
    let c4 = tl::verify_tl_sweep(&fixture("c4.net"));
    let grid = tl::verify_tl_sweep(&fixture("grid33.net"));
    let ok = c4.passed() && c4.checked == 36 && grid.passed();
    outcome(4, "double-dimer product sweep", ok, format!("{c4}; {grid}"));
}

#[test]
fn criterion_05_triple_dimer_sweep() {
    let r = webimm::verify_triple_sweep(&fixture("c4.net"));
    let ok = r.passed() && r.checked >= 216;
    outcome(5, "triple-dimer product sweep", ok, r.to_string());
}

#[test]
fn criterion_06_plucker_relations() {
    let bases = [fixture("c4.net"), fixture("grid33.net")];
    let mut reports: Vec<String> = Vec::new();
    let mut ok = true;
    for net in &bases {
        let r = dimer::verify_plucker(net);
        ok &= r.passed() && r.checked > 0;
        reports.push(r.to_string());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut seen = BTreeSet::new();
    let mut variants = 0;
    let mut attempts = 0;
    while variants < 20 && attempts < 1000 {
        attempts += 1;
        let base = &bases[attempts % 2];
        let mut ids: Vec<String> = base.edges().iter().map(|e| e.id.clone()).collect();
        ids.shuffle(&mut rng);
        let count = 1 + attempts % 3;
        let mut chosen: Vec<String> = ids.into_iter().take(count).collect();
        chosen.sort();
        if !seen.insert((base.name().to_string(), chosen.clone())) {
            continue;
        }
        let Some(net) = chosen.iter().try_fold(base.clone(), |n, id| n.delete_edge(id)) else {
            continue;
        };
        if enumerate_matchings(&net).is_empty() {
            continue;
        }
        variants += 1;
        ok &= dimer::verify_plucker(&net).passed();
    }
    ok &= variants == 20;
    outcome(6, "Plucker relations", ok, format!("{}; {variants} edge-deleted variants", reports.join("; ")));
}

#[test]
fn criterion_07_move_invariance() {
    let c4 = fixture("c4.net");
    let square = apply_move(&c4, &Move::parse("square B B1 s").unwrap()).unwrap();
    let alpha_ok = square.alpha.as_ref().is_some_and(|a| a.num == p("a*c + b*d") && a.den.is_one());
    let r = moves::verify_move_invariance(&c4, &square);
    let grid_ran = r.checked > 0;
    let mut ok = alpha_ok && r.passed() && grid_ran;
    let mut lines = vec![format!("square alpha=ac+bd {alpha_ok} {r}")];
    let sites: [(&str, &[&str]); 3] = [
        ("c4.net", &["gauge W 2*g"]),
        ("grid33.net", &["gauge x22 g"]),
        ("decorated.net", &["gauge B1 3*g", "contract m1", "contract m3", "merge a a2", "leaf v", "dipole z"]),
    ];
    for (name, list) in sites {
        let net = fixture(name);
        for m in list {
            let applied = apply_move(&net, &Move::parse(m).unwrap());
            let passed = applied.as_ref().is_ok_and(|a| moves::verify_move_invariance(&net, a).passed());
            ok &= passed;
            lines.push(format!("{name} `{m}` {}", if passed { "pass" } else { "FAIL" }));
        }
    }
    outcome(7, "move invariance", ok, lines.join("; "));
}

fn elliptic_test_webs() -> Vec<Web> {
    let mut webs: Vec<Web> = [
        "web n=2; w v1(1,v2,v2); b v2(2,v1,v1)",
        "web n=4; b v1(1,v2,v4); w v2(2,v3,v1); b v3(3,v4,v2); w v4(4,v1,v3)",
        "web n=4; loops=2; b v1(1,v2,v4); w v2(2,v3,v1); b v3(3,v4,v2); w v4(4,v1,v3)",
        "web n=2; loops=1; arc 2>1",
    ]
    .iter()
    .map(|t| Web::parse(t).unwrap())
    .collect();
    let mut keys: BTreeSet<String> = webs.iter().map(|w| w.key()).collect();
    let mut found: Vec<Web> = webimm::enumerate_weblike(&fixture("grid33.net"))
        .iter()
        .map(|(g, _)| webimm::web_of(&fixture("grid33.net"), g))
        .filter(|w| !w.is_nonelliptic())
        .filter(|w| keys.insert(w.key()))
        .collect();
    found.sort_by_key(|w| (std::cmp::Reverse(w.num_nodes()), w.key()));
    webs.extend(found.into_iter().take(10 - webs.len()));
    webs
}

#[test]
fn criterion_08_confluence() {
    let webs = elliptic_test_webs();
    let has = |f: fn(&Feature) -> bool| webs.iter().any(|w| w.features().iter().any(f));
    let kinds = has(|f| matches!(f, Feature::Loop)) && has(|f| matches!(f, Feature::Bigon { .. })) && has(|f| matches!(f, Feature::Square { .. }));
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut ok = webs.len() == 10 && kinds;
    let mut orders = 0;
    for w in &webs {
        let base = w.reduce();
        ok &= base.terms().all(|(t, _)| t.degree() == w.degree() && t.is_nonelliptic());
        for _ in 0..100 {
            ok &= w.reduce_random(&mut rng) == base;
            orders += 1;
        }
    }
    outcome(8, "reduction confluence", ok, format!("{} webs, loop/bigon/square present {kinds}, {orders} random orders", webs.len()));
}

fn bridge_bases() -> Vec<(String, PlanarNetwork)> {
    use Color::*;
    vec![
        ("c4".into(), fixture("c4.net")),
        ("lollipop".into(), fixture("lollipop.net")),
        ("BBWW+2".into(), bridge_family(&[Black, Black, White, White], &[2]).unwrap()),
        ("BWBW+1,3".into(), bridge_family(&[Black, White, Black, White], &[1, 3]).unwrap()),
    ]
}

#[test]
fn criterion_09_bridge_transitions() {
    let mut ok = true;
    let mut tl_cases: BTreeSet<&str> = BTreeSet::new();
    let mut web_cases: BTreeMap<&str, usize> = BTreeMap::new();
    let mut bases = 0;
    for (name, base) in bridge_bases() {
        bases += 1;
        for i in 1..base.n() {
            let (r, cases) = moves::verify_bridge_tl(&base, i).unwrap();
            ok &= r.passed();
            if !r.passed() {
                println!("{name} i={i}: {r}");
            }
            tl_cases.extend(cases.keys());
            let (r, cases) = moves::verify_bridge_web(&base, i).unwrap();
            ok &= r.passed();
            if !r.passed() {
                println!("{name} i={i}: {r}");
            }
            for (c, k) in cases {
                *web_cases.entry(c).or_default() += k;
            }
        }
    }
    ok &= tl_cases.len() == 8 && bases >= 3;
    outcome(
        9,
        "bridge transitions",
        ok,
        format!("{bases} bases, {} TL cases exercised, new-D cases {web_cases:?}", tl_cases.len()),
    );
}

#[test]
fn criterion_10_unitriangularity() {
    let (r, m) = tl::verify_unitriangular(&fixture("c4.net"));
    let ok = r.passed() && m.rows.len() == 20 && m.cols.len() == 20;
    outcome(10, "unitriangular transition matrix", ok, format!("{}x{} {r}", m.rows.len(), m.cols.len()));
}

#[test]
fn criterion_11_inequalities() {
    let a = tl::verify_inequalities(&fixture("c4.net"), 100, 11);
    let b = tl::verify_inequalities(&fixture("grid33.net"), 100, 12);
    let fixtures = ["c4.net", "grid33.net", "lollipop.net", "decorated.net"];
    let closed = fixtures.iter().all(|f| sort_closed_check(&matroid(&fixture(f)).unwrap()));
    let ok = a.passed() && b.passed() && closed;
    outcome(11, "sort inequalities", ok, format!("{a}; {b}; sort-closed {closed}"));
}

#[test]
fn criterion_12_bases_on_cells() {
    use Color::*;
    let c4 = fixture("c4.net");
    let nets = vec![
        ("c4-b".to_string(), c4.delete_edge("b").unwrap()),
        ("c4-a".to_string(), c4.delete_edge("a").unwrap()),
        ("BBWW+2,1".to_string(), bridge_family(&[Black, Black, White, White], &[2, 1]).unwrap()),
        ("BWBW+1,3".to_string(), bridge_family(&[Black, White, Black, White], &[1, 3]).unwrap()),
        ("BBWW+2,1,3".to_string(), bridge_family(&[Black, Black, White, White], &[2, 1, 3]).unwrap()),
    ];
    let mut ok = nets.len() >= 4;
    let mut lines = Vec::new();
    for (name, net) in &nets {
        let m = matroid(net).unwrap();
        let top = m.len() == dimer::subsets(net.n(), net.stats().k as usize).len();
        let r2 = moves::basis_rank_check(net, 2);
        let r3 = moves::basis_rank_check(net, 3);
        let st = moves::verify_ensemble_stability(net, 3, 12);
        let good = !top && r2.passed() && r3.passed() && st.passed();
        ok &= good;
        lines.push(format!(
            "{name} |A|={} |D|={} {}",
            tl::tl_immanants(net).len(),
            webimm::web_immanants(net).len(),
            if good { "pass" } else { "FAIL" }
        ));
    }
    outcome(12, "bases on non-top cells", ok, lines.join("; "));
}
