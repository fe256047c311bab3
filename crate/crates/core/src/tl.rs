//! Temperley-Lieb immanants: partial non-crossing pairings, double-dimer
//! subgraphs, the pairing basis of degree two and its properties.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::dimer::{self, fmt_subset, GrassmannPoint, Subset};
use crate::network::{Color, PlanarNetwork};
use crate::par;
use crate::poly::{Polynomial, Rational};
use crate::report::Report;

/// A partial non-crossing pairing (τ, T): arcs `(a, b)` with `a < b`, sorted,
/// and the tag set T.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pairing {
    pub arcs: Vec<(usize, usize)>,
    pub tags: Vec<usize>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TlError {
    #[error("pair ({0}), ({1}) is not standard")]
    NotStandard(String, String),
    #[error("cannot parse pairing `{0}`")]
    Parse(String),
}

impl Pairing {
    pub fn new(mut arcs: Vec<(usize, usize)>, mut tags: Vec<usize>) -> Pairing {
        for a in &mut arcs {
            if a.0 > a.1 {
                *a = (a.1, a.0);
            }
        }
        arcs.sort_unstable();
        tags.sort_unstable();
        Pairing { arcs, tags }
    }

    pub fn k(&self) -> usize {
        self.arcs.len() + self.tags.len()
    }

    /// Boundary vertices used by arcs.
    pub fn support(&self) -> Subset {
        let mut s: Vec<usize> = self.arcs.iter().flat_map(|&(a, b)| [a, b]).collect();
        s.sort_unstable();
        s
    }

    pub fn is_noncrossing(&self) -> bool {
        arcs_noncrossing(&self.arcs)
    }

    /// Heights of the Dyck path with up-steps at left ends and down-steps at
    /// right ends of the arcs, read in increasing order of the support.
    pub fn heights(&self) -> Vec<i32> {
        let lefts: BTreeSet<usize> = self.arcs.iter().map(|a| a.0).collect();
        let mut h = 0;
        self.support()
            .iter()
            .map(|x| {
                h += if lefts.contains(x) { 1 } else { -1 };
                h
            })
            .collect()
    }

    /// The standard pair mapped to this pairing by θ.
    pub fn theta_inverse(&self) -> (Subset, Subset) {
        let mut i: Vec<usize> = self.tags.clone();
        let mut j = self.tags.clone();
        for &(a, b) in &self.arcs {
            i.push(a);
            j.push(b);
        }
        i.sort_unstable();
        j.sort_unstable();
        (i, j)
    }

    pub fn parse(s: &str) -> Result<Pairing, TlError> {
        let err = || TlError::Parse(s.to_string());
        let s = s.trim();
        let rest = s.strip_prefix("arcs=").ok_or_else(err)?;
        let (arcs_part, tags_part) = rest.split_once(";T=").ok_or_else(err)?;
        let mut arcs = Vec::new();
        for chunk in arcs_part.split(')').filter(|c| !c.is_empty()) {
            let inner = chunk.strip_prefix('(').ok_or_else(err)?;
            let (a, b) = inner.split_once('-').ok_or_else(err)?;
            arcs.push((a.parse().map_err(|_| err())?, b.parse().map_err(|_| err())?));
        }
        let inner = tags_part
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(err)?;
        let tags = inner
            .split(',')
            .filter(|t| !t.is_empty())
            .map(|t| t.trim().parse().map_err(|_| err()))
            .collect::<Result<Vec<usize>, _>>()?;
        Ok(Pairing::new(arcs, tags))
    }
}

impl fmt::Display for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "arcs=")?;
        for (a, b) in &self.arcs {
            write!(f, "({a}-{b})")?;
        }
        write!(f, ";T={{{}}}", fmt_subset(&self.tags))
    }
}

pub fn arcs_noncrossing(arcs: &[(usize, usize)]) -> bool {
    for (x, &(a, b)) in arcs.iter().enumerate() {
        for &(c, d) in &arcs[x + 1..] {
            let (a, b) = (a.min(b), a.max(b));
            let inside = |p: usize| a < p && p < b;
            if inside(c) != inside(d) {
                return false;
            }
        }
    }
    true
}

/// Non-crossing perfect matchings of a sorted point set.
fn noncrossing_matchings(points: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if points.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for j in (1..points.len()).step_by(2) {
        for inner in noncrossing_matchings(&points[1..j]) {
            for outer in noncrossing_matchings(&points[j + 1..]) {
                let mut m = vec![(points[0], points[j])];
                m.extend(inner.iter().copied());
                m.extend(outer.iter().copied());
                out.push(m);
            }
        }
    }
    out
}

/// The set A_{k,n}, sorted.
pub fn enumerate_pairings(k: usize, n: usize) -> Vec<Pairing> {
    let mut out = Vec::new();
    for t in 0..=k.min(n) {
        for tags in dimer::subsets(n, t) {
            let rest: Vec<usize> = (1..=n).filter(|x| !tags.contains(x)).collect();
            let s = 2 * (k - t);
            if s > rest.len() {
                continue;
            }
            for sup in itertools::Itertools::combinations(rest.iter().copied(), s) {
                for arcs in noncrossing_matchings(&sup) {
                    out.push(Pairing::new(arcs, tags.clone()));
                }
            }
        }
    }
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TlComponent {
    Path { ends: (usize, usize), edges: Vec<usize> },
    Cycle { edges: Vec<usize> },
    SingleEdge(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TlSubgraph {
    pub components: Vec<TlComponent>,
}

impl TlSubgraph {
    pub fn cycles(&self) -> usize {
        self.components
            .iter()
            .filter(|c| matches!(c, TlComponent::Cycle { .. }))
            .count()
    }

    pub fn paths(&self) -> usize {
        self.components
            .iter()
            .filter(|c| matches!(c, TlComponent::Path { .. }))
            .count()
    }
}

/// Edge subsets in which every interior vertex has degree 1 or 2, boundary
/// vertices degree at most 1, and degree-1 interior vertices only occur in
/// single-edge components.
fn tl_edge_sets(net: &PlanarNetwork) -> Vec<Vec<usize>> {
    let m = net.edges().len();
    let nv = net.num_vertices();
    // last edge index at each vertex, to know when its degree is final
    let mut last = vec![None; nv];
    for e in 0..m {
        let (a, b) = net.edge(e).ends;
        last[a] = Some(e);
        last[b] = Some(e);
    }
    let mut deg = vec![0usize; nv];
    let mut chosen = Vec::new();
    let mut out = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn go(
        net: &PlanarNetwork,
        e: usize,
        last: &[Option<usize>],
        deg: &mut [usize],
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if e == net.edges().len() {
            let ok = chosen.iter().all(|&x| {
                let (a, b) = net.edge(x).ends;
                let leaf = |v: usize| !net.is_boundary(v) && deg[v] == 1;
                (!leaf(a) && !leaf(b)) || (deg[a] == 1 && deg[b] == 1)
            });
            if ok && net.interior_vertices().all(|v| deg[v] >= 1) {
                out.push(chosen.clone());
            }
            return;
        }
        let (a, b) = net.edge(e).ends;
        let cap = |v: usize| if net.is_boundary(v) { 1 } else { 2 };
        let finished_ok = |deg: &[usize], v: usize| last[v] != Some(e) || net.is_boundary(v) || deg[v] >= 1;
        // include
        if deg[a] < cap(a) && deg[b] < cap(b) {
            deg[a] += 1;
            deg[b] += 1;
            chosen.push(e);
            go(net, e + 1, last, deg, chosen, out);
            chosen.pop();
            deg[a] -= 1;
            deg[b] -= 1;
        }
        // exclude
        if finished_ok(deg, a) && finished_ok(deg, b) {
            go(net, e + 1, last, deg, chosen, out);
        }
    }
    if net.interior_vertices().any(|v| net.degree(v) == 0) {
        return out;
    }
    go(net, 0, &last, &mut deg, &mut chosen, &mut out);
    out
}

fn decompose(net: &PlanarNetwork, edges: &[usize]) -> TlSubgraph {
    let nv = net.num_vertices();
    let mut inc: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for &e in edges {
        let (a, b) = net.edge(e).ends;
        inc[a].push(e);
        inc[b].push(e);
    }
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    let mut comps = Vec::new();
    let walk = |start: usize, first: usize, seen: &mut BTreeSet<usize>| -> (usize, Vec<usize>) {
        let mut path = vec![first];
        seen.insert(first);
        let mut v = net.other_end(first, start);
        let mut e = first;
        while inc[v].len() == 2 {
            let nxt = if inc[v][0] == e { inc[v][1] } else { inc[v][0] };
            if seen.contains(&nxt) {
                break;
            }
            seen.insert(nxt);
            path.push(nxt);
            v = net.other_end(nxt, v);
            e = nxt;
        }
        (v, path)
    };
    for &e in edges {
        if seen.contains(&e) {
            continue;
        }
        let (a, b) = net.edge(e).ends;
        if inc[a].len() == 1 && inc[b].len() == 1 {
            seen.insert(e);
            comps.push(TlComponent::SingleEdge(e));
        }
    }
    for i in 0..net.n() {
        if let [e] = inc[i][..] {
            if seen.contains(&e) {
                continue;
            }
            let (end, path) = walk(i, e, &mut seen);
            comps.push(TlComponent::Path {
                ends: (i + 1, end + 1),
                edges: path,
            });
        }
    }
    for &e in edges {
        if seen.contains(&e) {
            continue;
        }
        let (a, _) = net.edge(e).ends;
        let (_, cyc) = walk(a, e, &mut seen);
        comps.push(TlComponent::Cycle { edges: cyc });
    }
    TlSubgraph { components: comps }
}

fn pairing_and_weight(net: &PlanarNetwork, sub: &TlSubgraph) -> (Pairing, Polynomial) {
    let mut arcs = Vec::new();
    let mut used = vec![false; net.n()];
    let mut doubled = vec![false; net.n()];
    let mut w = Polynomial::one();
    for c in &sub.components {
        match c {
            TlComponent::Path { ends, edges } => {
                arcs.push(*ends);
                used[ends.0 - 1] = true;
                used[ends.1 - 1] = true;
                for &e in edges {
                    w *= &net.edge(e).weight;
                }
            }
            TlComponent::Cycle { edges } => {
                w = w.scale(&crate::poly::int(2));
                for &e in edges {
                    w *= &net.edge(e).weight;
                }
            }
            TlComponent::SingleEdge(e) => {
                let (a, b) = net.edge(*e).ends;
                for v in [a, b] {
                    if net.is_boundary(v) {
                        used[v] = true;
                        doubled[v] = true;
                    }
                }
                w *= &net.edge(*e).weight.pow(2);
            }
        }
    }
    let tags = (0..net.n())
        .filter(|&v| match net.color(v) {
            Color::Black => doubled[v],
            Color::White => !used[v],
        })
        .map(|v| v + 1)
        .collect();
    (Pairing::new(arcs, tags), w)
}

/// Every TL subgraph with its pairing and weight.
pub fn enumerate_tl_subgraphs(net: &PlanarNetwork) -> Vec<(TlSubgraph, Pairing, Polynomial)> {
    let sets = tl_edge_sets(net);
    par::map(&sets, |s| {
        let sub = decompose(net, s);
        let (p, w) = pairing_and_weight(net, &sub);
        (sub, p, w)
    })
}

/// F_{τ,T}(N) for every pairing with a TL subgraph.
pub fn tl_immanants(net: &PlanarNetwork) -> BTreeMap<Pairing, Polynomial> {
    let mut table: BTreeMap<Pairing, Polynomial> = BTreeMap::new();
    for (_, p, w) in enumerate_tl_subgraphs(net) {
        *table.entry(p).or_default() += &w;
    }
    table.retain(|_, f| !f.is_zero());
    table
}

pub fn tl_immanant(net: &PlanarNetwork, p: &Pairing) -> Polynomial {
    enumerate_tl_subgraphs(net)
        .into_iter()
        .filter(|(_, q, _)| q == p)
        .map(|(_, _, w)| w)
        .sum()
}

fn diff(a: &[usize], b: &[usize]) -> Subset {
    a.iter().filter(|x| !b.contains(x)).copied().collect()
}

fn inter(a: &[usize], b: &[usize]) -> Subset {
    a.iter().filter(|x| b.contains(x)).copied().collect()
}

pub fn compatible(p: &Pairing, i: &[usize], j: &[usize]) -> bool {
    let (ij, ji) = (diff(i, j), diff(j, i));
    let mut sym: Vec<usize> = ij.iter().chain(ji.iter()).copied().collect();
    sym.sort_unstable();
    p.support() == sym
        && p.tags == inter(i, j)
        && p.arcs.iter().all(|&(a, b)| {
            (ij.contains(&a) && ji.contains(&b)) || (ij.contains(&b) && ji.contains(&a))
        })
}

/// Checks Δ_I Δ_J = Σ F_{τ,T} over pairings compatible with (I, J).
pub fn verify_tl_identity_with(
    pt: &GrassmannPoint,
    table: &BTreeMap<Pairing, Polynomial>,
    i: &[usize],
    j: &[usize],
) -> bool {
    let lhs = &pt.get(i) * &pt.get(j);
    let rhs: Polynomial = table
        .iter()
        .filter(|(p, _)| compatible(p, i, j))
        .map(|(_, f)| f)
        .sum();
    lhs == rhs
}

pub fn verify_tl_identity(net: &PlanarNetwork, i: &[usize], j: &[usize]) -> Report {
    let mut r = Report::new("tl-identity");
    let pt = dimer::all_pluckers(net, &dimer::enumerate_matchings(net));
    let table = tl_immanants(net);
    r.check(verify_tl_identity_with(&pt, &table, i, j), || {
        format!("I={} J={}", fmt_subset(i), fmt_subset(j))
    });
    r
}

/// Product-expansion sweep over all ordered pairs of k-subsets.
pub fn verify_tl_sweep(net: &PlanarNetwork) -> Report {
    let mut report = Report::new("tl-sweep");
    let pt = dimer::all_pluckers(net, &dimer::enumerate_matchings(net));
    let table = tl_immanants(net);
    let subs = dimer::subsets(pt.n, pt.k);
    let pairs: Vec<(&Subset, &Subset)> = subs.iter().flat_map(|i| subs.iter().map(move |j| (i, j))).collect();
    let res = par::map(&pairs, |(i, j)| verify_tl_identity_with(&pt, &table, i, j));
    for ((i, j), ok) in pairs.iter().zip(res) {
        report.check(ok, || format!("I={} J={}", fmt_subset(i), fmt_subset(j)));
    }
    report
}

pub fn is_standard(i: &[usize], j: &[usize]) -> bool {
    i.len() == j.len() && i.iter().zip(j).all(|(a, b)| a <= b)
}

/// θ: the pairing read off the Dyck path with up-steps at I\J and
/// down-steps at J\I, each up-step matched to the first down-step its
/// rightward ray hits.
pub fn theta(i: &[usize], j: &[usize]) -> Result<Pairing, TlError> {
    if !is_standard(i, j) {
        return Err(TlError::NotStandard(fmt_subset(i), fmt_subset(j)));
    }
    let (ij, ji) = (diff(i, j), diff(j, i));
    let mut steps: Vec<(usize, bool)> = ij.iter().map(|&x| (x, true)).chain(ji.iter().map(|&x| (x, false))).collect();
    steps.sort_unstable();
    let mut stack = Vec::new();
    let mut arcs = Vec::new();
    for (x, up) in steps {
        if up {
            stack.push(x);
        } else {
            let a = stack.pop().expect("standard pairs give Dyck paths");
            arcs.push((a, x));
        }
    }
    Ok(Pairing::new(arcs, inter(i, j)))
}

pub fn standard_pairs(k: usize, n: usize) -> Vec<(Subset, Subset)> {
    let subs = dimer::subsets(n, k);
    let mut out = Vec::new();
    for (x, i) in subs.iter().enumerate() {
        for j in &subs[x..] {
            if is_standard(i, j) {
                out.push((i.clone(), j.clone()));
            } else if is_standard(j, i) {
                out.push((j.clone(), i.clone()));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// P weakly below Q: same support and tags, heights pointwise ≤.
pub fn weakly_below(p: &Pairing, q: &Pairing) -> bool {
    p.tags == q.tags
        && p.support() == q.support()
        && p.heights().iter().zip(q.heights()).all(|(a, b)| *a <= b)
}

/// Total order refining "weakly below": block by (T, S), then by area, then
/// by the height sequence.
pub fn dyck_key(p: &Pairing) -> (Vec<usize>, Vec<usize>, i32, Vec<i32>) {
    let h = p.heights();
    (p.tags.clone(), p.support(), h.iter().sum(), h)
}

#[derive(Clone, Debug)]
pub struct TransitionMatrix {
    pub rows: Vec<(Subset, Subset)>,
    pub cols: Vec<Pairing>,
    pub entries: Vec<Vec<Polynomial>>,
}

/// Expands each standard monomial Δ_IΔ_J in the F basis of `table` (via
/// compatibility), orders both sides by the refined Dyck order and checks
/// unitriangularity with θ on the diagonal. The expansion is checked
/// symbolically and the F's are checked independent.
pub fn verify_unitriangular(net: &PlanarNetwork) -> (Report, TransitionMatrix) {
    let mut report = Report::new("unitriangular");
    let pt = dimer::all_pluckers(net, &dimer::enumerate_matchings(net));
    let table = tl_immanants(net);
    let (k, n) = (pt.k, pt.n);
    let mut rows = standard_pairs(k, n);
    rows.sort_by_key(|(i, j)| dyck_key(&theta(i, j).unwrap()));
    let mut cols = enumerate_pairings(k, n);
    cols.sort_by_key(dyck_key);
    let fs: Vec<Polynomial> = cols.iter().map(|c| table.get(c).cloned().unwrap_or_default()).collect();
    report.check(crate::poly::linear_rank(&fs) == cols.len(), || {
        "immanants are linearly dependent".into()
    });
    report.check(rows.len() == cols.len(), || {
        format!("{} standard pairs vs {} pairings", rows.len(), cols.len())
    });
    let one = Polynomial::one();
    let entries: Vec<Vec<Polynomial>> = rows
        .iter()
        .map(|(i, j)| {
            cols.iter()
                .map(|c| if compatible(c, i, j) { one.clone() } else { Polynomial::zero() })
                .collect()
        })
        .collect();
    for (r, (i, j)) in rows.iter().enumerate() {
        let lhs = &pt.get(i) * &pt.get(j);
        let rhs: Polynomial = entries[r].iter().zip(&fs).map(|(m, f)| m * f).sum();
        report.check(lhs == rhs, || format!("expansion of ({})({})", fmt_subset(i), fmt_subset(j)));
        let th = theta(i, j).unwrap();
        for (c, col) in cols.iter().enumerate() {
            let nz = !entries[r][c].is_zero();
            if c == r {
                report.check(col == &th && entries[r][c].is_one(), || {
                    format!("diagonal at ({})({})", fmt_subset(i), fmt_subset(j))
                });
            } else if nz {
                report.check(c > r && weakly_below(&th, col), || {
                    format!("entry ({})({}) x {col}", fmt_subset(i), fmt_subset(j))
                });
            }
        }
    }
    (report, TransitionMatrix { rows, cols, entries })
}

/// (sort1, sort2, min, max) of a pair of k-subsets.
pub fn sort_min_max(i: &[usize], j: &[usize]) -> (Subset, Subset, Subset, Subset) {
    let mut all: Vec<usize> = i.iter().chain(j).copied().collect();
    all.sort_unstable();
    let s1: Subset = all.iter().step_by(2).copied().collect();
    let s2: Subset = all.iter().skip(1).step_by(2).copied().collect();
    let (ij, ji, common) = (diff(i, j), diff(j, i), inter(i, j));
    let mut mn: Subset = ij.iter().zip(&ji).map(|(a, b)| *a.min(b)).chain(common.iter().copied()).collect();
    let mut mx: Subset = ij.iter().zip(&ji).map(|(a, b)| *a.max(b)).chain(common.iter().copied()).collect();
    mn.sort_unstable();
    mx.sort_unstable();
    (s1, s2, mn, mx)
}

/// Random positive rational assignment for the given variables.
pub fn random_positive_weights(vars: &[String], rng: &mut impl Rng) -> HashMap<String, Rational> {
    vars.iter()
        .map(|v| {
            let num: i64 = rng.gen_range(1..=30);
            let den: i64 = rng.gen_range(1..=30);
            (v.clone(), crate::poly::rat(num, den))
        })
        .collect()
}

/// Δ_IΔ_J ≤ Δ_min Δ_max ≤ Δ_sort1 Δ_sort2 at random positive weights.
pub fn verify_inequalities(net: &PlanarNetwork, trials: usize, seed: u64) -> Report {
    let mut report = Report::new("inequalities");
    let pt = dimer::all_pluckers(net, &dimer::enumerate_matchings(net));
    let vars = net.variables();
    let subs = dimer::subsets(pt.n, pt.k);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let assignments: Vec<HashMap<String, Rational>> =
        (0..trials).map(|_| random_positive_weights(&vars, &mut rng)).collect();
    let results = par::map(&assignments, |asg| {
        let val: HashMap<&Subset, Rational> = pt
            .coords
            .iter()
            .map(|(i, p)| (i, p.evaluate(asg).expect("all variables assigned")))
            .collect();
        let mut fails = Vec::new();
        let mut count = 0;
        for i in &subs {
            for j in &subs {
                let (s1, s2, mn, mx) = sort_min_max(i, j);
                let a = &val[i] * &val[j];
                let b = &val[&mn] * &val[&mx];
                let c = &val[&s1] * &val[&s2];
                count += 1;
                if !(a <= b && b <= c) {
                    fails.push(format!("I={} J={}", fmt_subset(i), fmt_subset(j)));
                }
            }
        }
        (count, fails)
    });
    for (count, fails) in results {
        report.checked += count;
        report.failures.extend(fails);
    }
    report
}

/// A(N): pairings with nonzero immanant.
pub fn pairing_ensemble(net: &PlanarNetwork) -> BTreeSet<Pairing> {
    tl_immanants(net).into_keys().collect()
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

    fn pr(s: &str) -> Pairing {
        Pairing::parse(s).unwrap()
    }

    #[test]
    fn pairing_counts() {
        assert_eq!(enumerate_pairings(2, 4).len(), 20);
        assert_eq!(enumerate_pairings(0, 5).len(), 1);
        let a12 = enumerate_pairings(1, 2);
        assert_eq!(a12.len(), 3);
        assert!(a12.contains(&pr("arcs=(1-2);T={}")));
        assert!(a12.contains(&pr("arcs=;T={1}")));
        assert!(a12.contains(&pr("arcs=;T={2}")));
    }

    #[test]
    fn pairing_text_roundtrip() {
        let q = Pairing::new(vec![(3, 4), (1, 2)], vec![]);
        assert_eq!(q.to_string(), "arcs=(1-2)(3-4);T={}");
        assert_eq!(pr(&q.to_string()), q);
        assert_eq!(pr("arcs=;T={2,4}").tags, vec![2, 4]);
    }

    #[test]
    fn c4_immanants() {
        let t = tl_immanants(&c4());
        assert_eq!(t[&pr("arcs=;T={2,4}")], p("a^2*c^2 + 2*a*b*c*d + b^2*d^2"));
        assert_eq!(t[&pr("arcs=(1-2)(3-4);T={}")], p("a*c"));
        assert_eq!(t[&pr("arcs=(1-4)(2-3);T={}")], p("b*d"));
        assert_eq!(t.len(), 20);
    }

    #[test]
    fn compatibility_examples() {
        let comp = |i: &[usize], j: &[usize]| -> Vec<String> {
            enumerate_pairings(2, 4)
                .into_iter()
                .filter(|q| compatible(q, i, j))
                .map(|q| q.to_string())
                .collect()
        };
        assert_eq!(comp(&[1, 3], &[2, 4]), vec!["arcs=(1-2)(3-4);T={}", "arcs=(1-4)(2-3);T={}"]);
        assert_eq!(comp(&[2, 4], &[2, 4]), vec!["arcs=;T={2,4}"]);
        assert_eq!(comp(&[1, 2], &[3, 4]), vec!["arcs=(1-4)(2-3);T={}"]);
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta(&[1, 3], &[2, 4]).unwrap(), pr("arcs=(1-2)(3-4);T={}"));
        assert_eq!(theta(&[1, 2], &[3, 4]).unwrap(), pr("arcs=(1-4)(2-3);T={}"));
        assert_eq!(theta(&[1, 2], &[2, 3]).unwrap(), pr("arcs=(1-3);T={2}"));
        assert!(theta(&[2, 4], &[1, 3]).is_err());
    }

    #[test]
    fn sort_min_max_example() {
        let (s1, s2, mn, mx) = sort_min_max(&[1, 4], &[2, 3]);
        assert_eq!((s1, s2, mn, mx), (vec![1, 3], vec![2, 4], vec![1, 3], vec![2, 4]));
        let (s1, s2, mn, mx) = sort_min_max(&[2, 4], &[2, 4]);
        assert!(s1 == s2 && mn == mx && s1 == mn);
    }

    #[test]
    fn c4_identity_and_triangularity() {
        let net = c4();
        assert!(verify_tl_identity(&net, &[1, 3], &[2, 4]).passed());
        assert!(verify_tl_sweep(&net).passed());
        let (r, m) = verify_unitriangular(&net);
        assert!(r.passed(), "{r}");
        assert_eq!(m.rows.len(), 20);
    }
}
