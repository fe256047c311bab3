//! Weblike subgraphs (triple-dimer overlays), web immanants and the
//! triple-product expansion.
//!
//! A weblike subgraph is stored through an edge multiplicity in {0,1,2,3}
//! summing to 3 at every interior vertex. Along a bivalent chain the
//! multiplicities alternate, so the multiplicities are fixed by the
//! subgraph except on cycles, where the representative has multiplicity 1
//! on the cycle's lowest edge.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;

use crate::dimer::{self, fmt_subset, Matching, Subset};
use crate::network::{Color, PlanarNetwork};
use crate::par;
use crate::poly::{Polynomial, Rational};
use crate::report::Report;
use crate::web::{Labeling, Reducer, Web};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeblikeComponent {
    /// Contains a trivalent vertex.
    Branched { edges: Vec<usize> },
    /// Boundary-to-boundary path, edges listed from `from` (1-based).
    Path { from: usize, to: usize, edges: Vec<usize> },
    Cycle { edges: Vec<usize> },
    Dipole(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeblikeSubgraph {
    pub mult: Vec<u8>,
    pub components: Vec<WeblikeComponent>,
}

/// Every multiplicity vector with sum 3 at each interior vertex and at
/// most one used edge per boundary vertex.
fn multiplicities(net: &PlanarNetwork) -> Vec<Vec<u8>> {
    let m = net.edges().len();
    let nv = net.num_vertices();
    let mut last = vec![None; nv];
    for e in 0..m {
        let (a, b) = net.edge(e).ends;
        last[a] = Some(e);
        last[b] = Some(e);
    }
    let mut load = vec![0u8; nv];
    let mut mult = vec![0u8; m];
    let mut out = Vec::new();
    fn go(
        net: &PlanarNetwork,
        e: usize,
        last: &[Option<usize>],
        load: &mut [u8],
        mult: &mut [u8],
        out: &mut Vec<Vec<u8>>,
    ) {
        if e == mult.len() {
            out.push(mult.to_vec());
            return;
        }
        let (a, b) = net.edge(e).ends;
        for x in 0..=3u8 {
            let fits = [a, b].iter().all(|&v| {
                let after = load[v] + x;
                if net.is_boundary(v) {
                    after <= 3
                } else {
                    after <= 3 && (last[v] != Some(e) || after == 3)
                }
            });
            if !fits {
                continue;
            }
            load[a] += x;
            load[b] += x;
            mult[e] = x;
            go(net, e + 1, last, load, mult, out);
            load[a] -= x;
            load[b] -= x;
        }
        mult[e] = 0;
    }
    if net.interior_vertices().any(|v| net.degree(v) == 0) {
        return out;
    }
    go(net, 0, &last, &mut load, &mut mult, &mut out);
    out
}

fn g_degree(net: &PlanarNetwork, mult: &[u8], v: usize) -> usize {
    net.rotation(v).iter().filter(|&&e| mult[e] > 0).count()
}

/// Walk a chain from `start` along `first` through bivalent vertices.
fn walk_chain(net: &PlanarNetwork, mult: &[u8], start: usize, first: usize) -> (usize, Vec<usize>) {
    let mut edges = vec![first];
    let mut v = net.other_end(first, start);
    let mut e = first;
    while !net.is_boundary(v) && g_degree(net, mult, v) == 2 && v != start {
        let nxt = *net
            .rotation(v)
            .iter()
            .find(|&&f| f != e && mult[f] > 0)
            .unwrap();
        if nxt == first {
            break;
        }
        edges.push(nxt);
        v = net.other_end(nxt, v);
        e = nxt;
    }
    (v, edges)
}

/// Component structure of a multiplicity vector, with cycles normalised.
fn analyse(net: &PlanarNetwork, mult: &[u8]) -> WeblikeSubgraph {
    let mut mult = mult.to_vec();
    let m = mult.len();
    let mut comps = Vec::new();
    for e in 0..m {
        if mult[e] == 3 {
            comps.push(WeblikeComponent::Dipole(e));
        }
    }
    let (_, comp) = crate::planar::components(
        net.num_vertices(),
        &(0..m)
            .filter(|&e| mult[e] == 1 || mult[e] == 2)
            .map(|e| net.edge(e).ends)
            .collect::<Vec<_>>(),
    );
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for e in 0..m {
        if mult[e] == 1 || mult[e] == 2 {
            groups.entry(comp[net.edge(e).ends.0]).or_default().push(e);
        }
    }
    for edges in groups.into_values() {
        let verts: Vec<usize> = edges
            .iter()
            .flat_map(|&e| [net.edge(e).ends.0, net.edge(e).ends.1])
            .unique()
            .collect();
        if verts.iter().any(|&v| !net.is_boundary(v) && g_degree(net, &mult, v) == 3) {
            comps.push(WeblikeComponent::Branched { edges });
            continue;
        }
        match verts.iter().find(|&&v| net.is_boundary(v)) {
            Some(&a) => {
                let first = net.boundary_edge(a + 1);
                let (b, path) = walk_chain(net, &mult, a, first);
                // oriented along the multiplicity-1 edges, black to white
                let e1 = *path.iter().find(|&&e| mult[e] == 1).unwrap();
                let pos = path.iter().position(|&e| e == e1).unwrap();
                let entry = if pos == 0 {
                    a
                } else {
                    let prev = net.edge(path[pos - 1]).ends;
                    let (x, y) = net.edge(e1).ends;
                    if prev.0 == x || prev.1 == x {
                        x
                    } else {
                        y
                    }
                };
                let forward = net.color(entry) == Color::Black;
                comps.push(if forward {
                    WeblikeComponent::Path {
                        from: a + 1,
                        to: b + 1,
                        edges: path,
                    }
                } else {
                    let mut rev = path;
                    rev.reverse();
                    WeblikeComponent::Path {
                        from: b + 1,
                        to: a + 1,
                        edges: rev,
                    }
                });
            }
            None => {
                let lowest = edges[0];
                let start = net.edge(lowest).ends.0;
                let (_, cyc) = walk_chain(net, &mult, start, lowest);
                if mult[lowest] == 2 {
                    for &e in &cyc {
                        mult[e] = 3 - mult[e];
                    }
                }
                comps.push(WeblikeComponent::Cycle { edges: cyc });
            }
        }
    }
    WeblikeSubgraph { mult, components: comps }
}

/// Weight from the component rules: alternating exponents on paths
/// (starting at 1 after a white first vertex), exponent 1 at even distance
/// from a trivalent vertex and 2 at odd distance, two alternations summed
/// on cycles, cubes on dipoles.
pub fn weight(net: &PlanarNetwork, g: &WeblikeSubgraph) -> Polynomial {
    let w = |e: usize| &net.edge(e).weight;
    let alternating = |edges: &[usize], first: u32| -> Polynomial {
        edges
            .iter()
            .enumerate()
            .map(|(i, &e)| w(e).pow(if i % 2 == 0 { first } else { 3 - first }))
            .product()
    };
    let mut total = Polynomial::one();
    for c in &g.components {
        let part = match c {
            WeblikeComponent::Dipole(e) => w(*e).pow(3),
            WeblikeComponent::Cycle { edges } => alternating(edges, 1) + alternating(edges, 2),
            WeblikeComponent::Path { from, edges, .. } => {
                let v = net.other_end(edges[0], from - 1);
                alternating(edges, if net.color(v) == Color::White { 1 } else { 2 })
            }
            WeblikeComponent::Branched { edges } => {
                let mut exp: HashMap<usize, u32> = HashMap::new();
                for &e in edges {
                    let (a, b) = net.edge(e).ends;
                    for v in [a, b] {
                        if !net.is_boundary(v) && g_degree(net, &g.mult, v) == 3 && !exp.contains_key(&e) {
                            let (_, chain) = walk_chain(net, &g.mult, v, e);
                            for (i, &f) in chain.iter().enumerate() {
                                exp.insert(f, if i % 2 == 0 { 1 } else { 2 });
                            }
                        }
                    }
                }
                edges.iter().map(|&e| w(e).pow(exp[&e])).product()
            }
        };
        total *= &part;
    }
    total
}

/// Every weblike subgraph with its weight; pure paths appear once per
/// orientation.
pub fn enumerate_weblike(net: &PlanarNetwork) -> Vec<(WeblikeSubgraph, Polynomial)> {
    let all = multiplicities(net);
    let gs: Vec<WeblikeSubgraph> = par::map(&all, |m| analyse(net, m))
        .into_iter()
        .zip(&all)
        .filter(|(g, m)| &g.mult == *m)
        .map(|(g, _)| g)
        .collect();
    par::map(&gs, |g| {
        let w = weight(net, g);
        (g.clone(), w)
    })
}

/// The web of a weblike subgraph together with the web edge carrying each
/// network edge (bivalent chains become single edges).
fn web_and_chains(net: &PlanarNetwork, g: &WeblikeSubgraph) -> (Web, Vec<Option<usize>>) {
    let n = net.n();
    let mult = &g.mult;
    let tri: Vec<usize> = net
        .interior_vertices()
        .filter(|&v| g_degree(net, mult, v) == 3)
        .collect();
    let node_of: HashMap<usize, usize> = tri.iter().enumerate().map(|(i, &v)| (v, n + i)).collect();
    let web_node = |v: usize| if net.is_boundary(v) { v } else { node_of[&v] };
    let mut chain_of: Vec<Option<usize>> = vec![None; mult.len()];
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut loops = 0;
    let mut tags = std::collections::BTreeSet::new();
    for c in &g.components {
        match c {
            WeblikeComponent::Dipole(e) => {
                let (a, b) = net.edge(*e).ends;
                for v in [a, b] {
                    if net.is_boundary(v) && net.color(v) == Color::Black {
                        tags.insert(v + 1);
                    }
                }
            }
            WeblikeComponent::Cycle { .. } => loops += 1,
            _ => {}
        }
    }
    for i in 0..n {
        let e = net.boundary_edge(i + 1);
        if net.color(i) == Color::White && mult[e] == 0 {
            tags.insert(i + 1);
        }
    }
    let starts: Vec<usize> = (0..n).chain(tri.iter().copied()).collect();
    for &s in &starts {
        for &e in net.rotation(s) {
            if !(mult[e] == 1 || mult[e] == 2) || chain_of[e].is_some() {
                continue;
            }
            let (end, chain) = walk_chain(net, mult, s, e);
            let idx = edges.len();
            for &f in &chain {
                chain_of[f] = Some(idx);
            }
            // direction of the multiplicity-1 edges, black to white
            let e1 = *chain.iter().find(|&&f| mult[f] == 1).unwrap();
            let (x, y) = net.edge(e1).ends;
            let black = if net.color(x) == Color::Black { x } else { y };
            let pos = chain.iter().position(|&f| f == e1).unwrap();
            let before = if pos == 0 {
                s
            } else {
                let (p, q) = net.edge(chain[pos - 1]).ends;
                if p == x || q == x {
                    x
                } else {
                    y
                }
            };
            let from_start = before == black;
            let (t, h) = if from_start { (s, end) } else { (end, s) };
            edges.push((web_node(t), web_node(h)));
        }
    }
    let mut rot: Vec<Vec<usize>> = vec![Vec::new(); n + tri.len()];
    for i in 0..n {
        if let Some(c) = chain_of[net.boundary_edge(i + 1)] {
            rot[i].push(c);
        }
    }
    for (k, &v) in tri.iter().enumerate() {
        rot[n + k] = net
            .rotation(v)
            .iter()
            .filter_map(|&e| chain_of[e])
            .collect();
    }
    let colors = tri.iter().map(|&v| net.color(v)).collect();
    let web = Web::from_parts(n, tags, loops, colors, edges, rot).expect("weblike subgraph yields a valid web");
    (web, chain_of)
}

/// Components of the subgraph with the given edge multiplicities.
pub fn subgraph_from_mult(net: &PlanarNetwork, mult: &[u8]) -> WeblikeSubgraph {
    analyse(net, mult)
}

pub fn web_of(net: &PlanarNetwork, g: &WeblikeSubgraph) -> Web {
    web_and_chains(net, g).0
}

/// Web immanants keyed by the exact code of the non-elliptic web.
pub type WebTable = BTreeMap<String, (Web, Polynomial)>;

fn collect_table(items: Vec<(Web, Polynomial)>) -> WebTable {
    let mut by_web: BTreeMap<String, (Web, Polynomial)> = BTreeMap::new();
    for (w, p) in items {
        by_web.entry(w.key()).or_insert_with(|| (w, Polynomial::zero())).1 += &p;
    }
    let mut reducer = Reducer::default();
    let mut table = WebTable::new();
    for (w, p) in by_web.into_values() {
        for (d, c) in reducer.reduce(&w).terms() {
            let entry = table.entry(d.key()).or_insert_with(|| (d.clone(), Polynomial::zero()));
            entry.1 += &p.scale(&Rational::from_integer(c.into()));
        }
    }
    table.retain(|_, (_, p)| !p.is_zero());
    table
}

/// F_D(N) for every non-elliptic D with F_D ≠ 0.
pub fn web_immanants(net: &PlanarNetwork) -> WebTable {
    let gs = enumerate_weblike(net);
    let items = par::map(&gs, |(g, w)| (web_of(net, g), w.clone()));
    collect_table(items)
}

pub fn web_immanant(net: &PlanarNetwork, d: &Web) -> Polynomial {
    web_immanants(net)
        .remove(&d.key())
        .map(|(_, p)| p)
        .unwrap_or_default()
}

pub fn web_ensemble(net: &PlanarNetwork) -> Vec<Web> {
    web_immanants(net).into_values().map(|(w, _)| w).collect()
}

/// Overlay three matchings: the weblike subgraph, its web and the labeling
/// the triple induces (a multiplicity-1 edge carries the index of its
/// matching, a multiplicity-2 edge the index of the matching missing it).
pub fn triple_overlay(net: &PlanarNetwork, ms: [&Matching; 3]) -> (WeblikeSubgraph, Web, Labeling) {
    let m = net.edges().len();
    let mut mult = vec![0u8; m];
    let mut label = vec![0u8; m];
    for pi in ms {
        for &e in &pi.edges {
            mult[e] += 1;
        }
    }
    for e in 0..m {
        let inside: Vec<u8> = (0..3).filter(|&l| ms[l].edges.contains(&e)).map(|l| l as u8 + 1).collect();
        label[e] = match inside.len() {
            1 => inside[0],
            2 => 6 - inside[0] - inside[1],
            _ => 0,
        };
    }
    let g = analyse(net, &mult);
    let (web, chain_of) = web_and_chains(net, &g);
    let mut web_labels = vec![0u8; web.edges().len()];
    for e in 0..m {
        if let Some(c) = chain_of[e] {
            debug_assert!(web_labels[c] == 0 || web_labels[c] == label[e], "label changes along a chain");
            web_labels[c] = label[e];
        }
    }
    let loops = g
        .components
        .iter()
        .filter_map(|c| match c {
            WeblikeComponent::Cycle { edges } => Some(label[edges[0]]),
            _ => None,
        })
        .collect();
    (
        g,
        web,
        Labeling {
            edges: web_labels,
            loops,
        },
    )
}

/// F_D aggregated over ordered triples of matchings: each triple adds
/// wt(Π1)wt(Π2)wt(Π3)·reduce(W)_D / #labelings(W).
pub fn web_immanants_by_triples(net: &PlanarNetwork) -> WebTable {
    let ms = dimer::enumerate_matchings(net);
    let triples: Vec<[&Matching; 3]> = ms
        .iter()
        .cartesian_product(ms.iter())
        .cartesian_product(ms.iter())
        .map(|((a, b), c)| [a, b, c])
        .collect();
    let items = par::map(&triples, |t| {
        let (_, web, _) = triple_overlay(net, *t);
        let w = &(&t[0].weight(net) * &t[1].weight(net)) * &t[2].weight(net);
        let l = web.count_labelings();
        (web, w.scale(&Rational::new(1.into(), (l as i64).into())))
    });
    collect_table(items)
}

/// Σ_G #labelings(W(G))·wt(G), which equals Z³.
pub fn labelled_mass(net: &PlanarNetwork) -> Polynomial {
    let gs = enumerate_weblike(net);
    par::map(&gs, |(g, w)| {
        let l = web_of(net, g).count_labelings() as i64;
        w.scale(&Rational::from_integer(l.into()))
    })
    .into_iter()
    .sum()
}

fn triple_product(pt: &dimer::GrassmannPoint, i: &[usize], j: &[usize], k: &[usize]) -> Polynomial {
    &(&pt.get(i) * &pt.get(j)) * &pt.get(k)
}

fn expansion(table: &WebTable, i: &[usize], j: &[usize], k: &[usize]) -> Polynomial {
    table
        .values()
        .map(|(d, f)| {
            let a = d.count_consistent([i, j, k]) as i64;
            f.scale(&Rational::from_integer(a.into()))
        })
        .sum()
}

/// Direct sum of wt(Π1)wt(Π2)wt(Π3) over triples with the given subsets.
fn direct_triple_sum(net: &PlanarNetwork, ms: &[Matching], i: &[usize], j: &[usize], k: &[usize]) -> Polynomial {
    let pick = |s: &[usize]| -> Polynomial {
        ms.iter()
            .filter(|m| dimer::boundary_subset(net, m) == s)
            .map(|m| m.weight(net))
            .sum()
    };
    &(&pick(i) * &pick(j)) * &pick(k)
}

/// Δ_IΔ_JΔ_K = Σ_D a(I,J,K;D) F_D, with the left side also summed directly
/// over triples of matchings.
pub fn verify_triple_identity(net: &PlanarNetwork, i: &[usize], j: &[usize], k: &[usize]) -> Report {
    let ms = dimer::enumerate_matchings(net);
    let pt = dimer::all_pluckers(net, &ms);
    let table = web_immanants(net);
    let mut r = Report::new("triple-identity");
    check_triple(&mut r, net, &ms, &pt, &table, i, j, k);
    r
}

#[allow(clippy::too_many_arguments)]
fn check_triple(
    r: &mut Report,
    net: &PlanarNetwork,
    ms: &[Matching],
    pt: &dimer::GrassmannPoint,
    table: &WebTable,
    i: &[usize],
    j: &[usize],
    k: &[usize],
) {
    let lhs = triple_product(pt, i, j, k);
    let rhs = expansion(table, i, j, k);
    let direct = direct_triple_sum(net, ms, i, j, k);
    r.check(lhs == rhs && lhs == direct, || {
        format!("I={} J={} K={}", fmt_subset(i), fmt_subset(j), fmt_subset(k))
    });
}

/// The triple identity over all ordered triples of k-subsets.
pub fn verify_triple_sweep(net: &PlanarNetwork) -> Report {
    let ms = dimer::enumerate_matchings(net);
    let pt = dimer::all_pluckers(net, &ms);
    let table = web_immanants(net);
    let subs = dimer::subsets(pt.n, pt.k);
    let triples: Vec<(&Subset, &Subset, &Subset)> = subs
        .iter()
        .cartesian_product(subs.iter())
        .cartesian_product(subs.iter())
        .map(|((a, b), c)| (a, b, c))
        .collect();
    let results = par::map(&triples, |(i, j, k)| {
        let mut r = Report::new("");
        check_triple(&mut r, net, &ms, &pt, &table, i, j, k);
        r
    });
    let mut report = Report::new("triple-sweep");
    for r in results {
        report.merge(r);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> PlanarNetwork {
        PlanarNetwork::parse(include_str!("../../../fixtures/c4.net")).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s).unwrap()
    }

    fn find(net: &PlanarNetwork, edges: &[&str], m: u8) -> (WeblikeSubgraph, Polynomial) {
        let mut want: Vec<usize> = edges.iter().map(|e| net.edge_index(e).unwrap()).collect();
        want.sort_unstable();
        enumerate_weblike(net)
            .into_iter()
            .find(|(g, _)| {
                let support: Vec<usize> = (0..g.mult.len()).filter(|&e| g.mult[e] > 0).collect();
                support == want && want.iter().all(|&e| m == 0 || g.mult[e] == m)
            })
            .unwrap()
    }

    #[test]
    fn weights_of_simple_subgraphs() {
        let net = c4();
        let (g, w) = find(&net, &["e1", "e2", "e3", "e4"], 3);
        assert_eq!(w, Polynomial::one());
        assert_eq!(web_of(&net, &g), Web::tagged(4, &[1, 3]));
        let (_, w) = find(&net, &["a", "c"], 3);
        assert_eq!(w, p("a^3*c^3"));
        let (g, w) = find(&net, &["a", "b", "c", "d"], 0);
        assert_eq!(w, p("a*b^2*c*d^2 + a^2*b*c^2*d"));
        assert_eq!(web_of(&net, &g), Web::tagged(4, &[2, 4]).with_loops(1));
    }

    #[test]
    fn mass_is_cube_of_partition_function() {
        let net = c4();
        let z: Polynomial = dimer::enumerate_matchings(&net).iter().map(|m| m.weight(&net)).sum();
        assert_eq!(labelled_mass(&net), z.pow(3));
    }

    #[test]
    fn web_degrees_are_3k() {
        let net = c4();
        for (g, _) in enumerate_weblike(&net) {
            assert_eq!(web_of(&net, &g).degree(), 6);
        }
    }

    #[test]
    fn overlay_of_boundary_matchings() {
        let net = c4();
        let ms = dimer::enumerate_matchings(&net);
        let by_ids = |ids: &[&str]| ms.iter().find(|m| m.edge_ids(&net) == ids).unwrap();
        let all = by_ids(&["e1", "e2", "e3", "e4"]);
        let (_, web, _) = triple_overlay(&net, [all, all, all]);
        assert_eq!(web, Web::tagged(4, &[1, 3]));
        let (_, web, lab) = triple_overlay(&net, [by_ids(&["a", "c"]), by_ids(&["b", "d"]), all]);
        assert_eq!(web.degree(), 6);
        assert_eq!(web.num_nodes(), 8);
        assert!(web.enumerate_labelings().contains(&lab));
    }

    #[test]
    fn two_routes_to_the_immanants_agree() {
        let net = c4();
        assert_eq!(web_immanants(&net), web_immanants_by_triples(&net));
    }

    #[test]
    fn named_immanants() {
        let net = c4();
        let f = |s: &str| web_immanant(&net, &Web::parse(s).unwrap());
        assert_eq!(
            f("web n=4; tags{2,4}"),
            p("3*a^2*b*c^2*d + 3*a*b^2*c*d^2 + a^3*c^3 + b^3*d^3")
        );
        assert_eq!(f("web n=4; arc 2>1; arc 4>3"), p("a*c"));
        assert_eq!(f("web n=4; tags{2}; arc 3>4"), p("a^3*c^2 + 2*a^2*b*c*d + a*b^2*d^2"));
    }

    #[test]
    fn lollipop_ensemble() {
        let net = PlanarNetwork::parse(include_str!("../../../fixtures/lollipop.net")).unwrap();
        let ens = web_ensemble(&net);
        assert_eq!(ens, vec![Web::tagged(4, &[3, 4])]);
    }

    #[test]
    fn triple_identity_examples() {
        let net = c4();
        assert!(verify_triple_identity(&net, &[1, 3], &[1, 3], &[1, 3]).passed());
        assert!(verify_triple_identity(&net, &[2, 4], &[2, 4], &[2, 4]).passed());
    }
}
