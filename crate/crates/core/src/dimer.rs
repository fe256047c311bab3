//! Dimer configurations, boundary measurements and the Grassmann point.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use thiserror::Error;

use crate::network::{Color, PlanarNetwork};
use crate::par;
use crate::poly::Polynomial;
use crate::report::Report;
use crate::tl::sort_min_max;

/// A sorted subset of `1..=n`.
pub type Subset = Vec<usize>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DimerError {
    #[error("expected a {expected}-subset, got {got:?}")]
    WrongSize { expected: usize, got: Vec<usize> },
    #[error("no dimer configurations")]
    NoMatchings,
}

/// Almost perfect matching: sorted edge indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    pub edges: Vec<usize>,
}

impl Matching {
    pub fn weight(&self, net: &PlanarNetwork) -> Polynomial {
        self.edges.iter().map(|&e| net.edge(e).weight.clone()).product()
    }

    pub fn edge_ids<'a>(&self, net: &'a PlanarNetwork) -> Vec<&'a str> {
        self.edges.iter().map(|&e| net.edge(e).id.as_str()).collect()
    }
}

pub fn subsets(n: usize, k: usize) -> Vec<Subset> {
    (1..=n).combinations(k).collect()
}

pub fn fmt_subset(s: &[usize]) -> String {
    s.iter().map(|i| i.to_string()).join(",")
}

/// All dimer configurations, ordered lexicographically by edge-id sets.
pub fn enumerate_matchings(net: &PlanarNetwork) -> Vec<Matching> {
    let mut used = vec![false; net.num_vertices()];
    let mut chosen = Vec::new();
    let mut out = Vec::new();
    let interior: Vec<usize> = net.interior_vertices().collect();
    fn go(
        net: &PlanarNetwork,
        interior: &[usize],
        pos: usize,
        used: &mut [bool],
        chosen: &mut Vec<usize>,
        out: &mut Vec<Matching>,
    ) {
        let Some(&v) = interior[pos..].iter().find(|&&v| !used[v]) else {
            let mut edges = chosen.clone();
            edges.sort_unstable();
            out.push(Matching { edges });
            return;
        };
        used[v] = true;
        for &e in net.rotation(v) {
            let u = net.other_end(e, v);
            if !used[u] {
                used[u] = true;
                chosen.push(e);
                go(net, interior, pos, used, chosen, out);
                chosen.pop();
                used[u] = false;
            }
        }
        used[v] = false;
    }
    go(net, &interior, 0, &mut used, &mut chosen, &mut out);
    out.sort();
    out
}

/// I(Π): black boundary vertices that are used together with white
/// boundary vertices that are not.
pub fn boundary_subset(net: &PlanarNetwork, m: &Matching) -> Subset {
    let mut used = vec![false; net.n()];
    for &e in &m.edges {
        let (a, b) = net.edge(e).ends;
        for v in [a, b] {
            if net.is_boundary(v) {
                used[v] = true;
            }
        }
    }
    (0..net.n())
        .filter(|&v| used[v] == (net.color(v) == Color::Black))
        .map(|v| v + 1)
        .collect()
}

/// Sign of the permutation sorting `seq`, and the sorted sequence; sign 0
/// on a repeated index.
pub fn sort_sign(seq: &[usize]) -> (i32, Subset) {
    let mut s = seq.to_vec();
    let mut sign = 1;
    for i in 0..s.len() {
        for j in 0..s.len() - 1 - i {
            if s[j] > s[j + 1] {
                s.swap(j, j + 1);
                sign = -sign;
            } else if s[j] == s[j + 1] {
                return (0, s);
            }
        }
    }
    if s.windows(2).any(|w| w[0] == w[1]) {
        return (0, s);
    }
    (sign, s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrassmannPoint {
    pub k: usize,
    pub n: usize,
    pub coords: BTreeMap<Subset, Polynomial>,
}

impl GrassmannPoint {
    pub fn get(&self, i: &[usize]) -> Polynomial {
        self.coords.get(i).cloned().unwrap_or_default()
    }

    /// Δ for an unsorted index sequence, antisymmetric in its entries.
    pub fn signed(&self, seq: &[usize]) -> Polynomial {
        let (sign, sorted) = sort_sign(seq);
        match sign {
            0 => Polynomial::zero(),
            1 => self.get(&sorted),
            _ => -&self.get(&sorted),
        }
    }

    pub fn support(&self) -> BTreeSet<Subset> {
        self.coords
            .iter()
            .filter(|(_, p)| !p.is_zero())
            .map(|(i, _)| i.clone())
            .collect()
    }
}

/// Δ_I for every k-subset I (zero entries included).
pub fn all_pluckers(net: &PlanarNetwork, matchings: &[Matching]) -> GrassmannPoint {
    let k = net.stats().k.max(0) as usize;
    let n = net.n();
    let mut coords: BTreeMap<Subset, Polynomial> =
        subsets(n, k).into_iter().map(|s| (s, Polynomial::zero())).collect();
    let weighted = par::map(matchings, |m| (boundary_subset(net, m), m.weight(net)));
    for (i, w) in weighted {
        *coords.entry(i).or_default() += &w;
    }
    GrassmannPoint { k, n, coords }
}

pub fn plucker(net: &PlanarNetwork, i: &[usize]) -> Result<Polynomial, DimerError> {
    let k = net.stats().k.max(0) as usize;
    if i.len() != k {
        return Err(DimerError::WrongSize {
            expected: k,
            got: i.to_vec(),
        });
    }
    let (sign, sorted) = sort_sign(i);
    let total: Polynomial = enumerate_matchings(net)
        .iter()
        .filter(|m| boundary_subset(net, m) == sorted)
        .map(|m| m.weight(net))
        .sum();
    Ok(match sign {
        0 => Polynomial::zero(),
        1 => total,
        _ => -&total,
    })
}

pub fn plucker_signed(net: &PlanarNetwork, seq: &[usize]) -> Result<Polynomial, DimerError> {
    plucker(net, seq)
}

pub fn grassmann_point(net: &PlanarNetwork) -> Result<GrassmannPoint, DimerError> {
    let ms = enumerate_matchings(net);
    if ms.is_empty() {
        return Err(DimerError::NoMatchings);
    }
    Ok(all_pluckers(net, &ms))
}

pub fn matroid(net: &PlanarNetwork) -> Result<BTreeSet<Subset>, DimerError> {
    Ok(grassmann_point(net)?.support())
}

/// Checks Σ_r (-1)^r Δ_{i, j_r} Δ_{j - j_r} = 0 for every sorted (k-1)-list
/// i and (k+1)-list j.
pub fn verify_plucker_point(pt: &GrassmannPoint) -> Report {
    let mut report = Report::new("plucker");
    let (k, n) = (pt.k, pt.n);
    if k == 0 || k >= n {
        return report;
    }
    let is = subsets(n, k - 1);
    let js = subsets(n, k + 1);
    let instances: Vec<(&Subset, &Subset)> = is.iter().cartesian_product(js.iter()).collect();
    let results = par::map(&instances, |(i, j)| {
        let mut total = Polynomial::zero();
        for r in 0..j.len() {
            let mut left = (*i).clone();
            left.push(j[r]);
            let right: Vec<usize> = j.iter().enumerate().filter(|&(s, _)| s != r).map(|(_, &x)| x).collect();
            let term = &pt.signed(&left) * &pt.get(&right);
            if r % 2 == 0 {
                total -= &term;
            } else {
                total += &term;
            }
        }
        total.is_zero()
    });
    for ((i, j), ok) in instances.iter().zip(results) {
        report.check(ok, || format!("i=({}) j=({})", fmt_subset(i), fmt_subset(j)));
    }
    report
}

pub fn verify_plucker(net: &PlanarNetwork) -> Report {
    match grassmann_point(net) {
        Ok(pt) => verify_plucker_point(&pt),
        Err(_) => Report::new("plucker"),
    }
}

pub fn sort_closed_check(m: &BTreeSet<Subset>) -> bool {
    m.iter().all(|i| {
        m.iter().all(|j| {
            let (s1, s2, _, _) = sort_min_max(i, j);
            m.contains(&s1) && m.contains(&s2)
        })
    })
}
