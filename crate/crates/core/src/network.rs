//! Weighted planar bipartite networks in a disk.
//!
//! Boundary vertices `b1..bn` sit clockwise on the circle, each joined by a
//! single edge to an interior vertex. The embedding is a rotation system:
//! for every vertex, the clockwise cyclic order of its edges.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

use crate::planar::{self, Dart};
use crate::poly::{Polynomial, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Color::Black => "black",
            Color::White => "white",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NetworkError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("non-bipartite edge `{0}`")]
    NonBipartite(String),
    #[error("boundary vertex b{0} has degree {1}, expected 1")]
    BoundaryDegree(usize, usize),
    #[error("boundary-boundary edge `{0}`")]
    BoundaryBoundaryEdge(String),
    #[error("embedding failure: {0}")]
    Embedding(String),
    #[error("dangling rotation reference: {0}")]
    DanglingRotation(String),
    #[error("edge `{0}` has zero weight")]
    ZeroWeight(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub ends: (usize, usize),
    pub weight: Polynomial,
}

/// Unvalidated network description, keyed by vertex names.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RawNetwork {
    pub name: String,
    pub n: usize,
    pub interior: Vec<(String, Color)>,
    pub edges: Vec<(String, String, String, Polynomial)>,
    pub rot: Vec<(String, Vec<String>)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlanarNetwork {
    name: String,
    n: usize,
    names: Vec<String>,
    colors: Vec<Color>,
    edges: Vec<Edge>,
    rot: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NetworkStats {
    pub d: i64,
    pub dprime: i64,
    pub k: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<Dart>,
    pub outer: bool,
}

pub fn boundary_name(i: usize) -> String {
    format!("b{i}")
}

fn boundary_index(name: &str, n: usize) -> Option<usize> {
    let i: usize = name.strip_prefix('b')?.parse().ok()?;
    (1..=n).contains(&i).then_some(i)
}

impl RawNetwork {
    pub fn parse(text: &str) -> Result<RawNetwork, NetworkError> {
        let mut raw = RawNetwork::default();
        let mut seen_n = false;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let syn = |msg: &str| NetworkError::Syntax {
                line: lineno + 1,
                msg: msg.to_string(),
            };
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks[0] {
                "network" => raw.name = toks.get(1).unwrap_or(&"").to_string(),
                "n" => {
                    raw.n = toks
                        .get(1)
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| syn("expected `n <int>`"))?;
                    seen_n = true;
                }
                "interior" => {
                    if toks.len() != 3 {
                        return Err(syn("expected `interior <id> <black|white>`"));
                    }
                    let c = match toks[2] {
                        "black" => Color::Black,
                        "white" => Color::White,
                        _ => return Err(syn("color must be black or white")),
                    };
                    raw.interior.push((toks[1].to_string(), c));
                }
                "edge" => {
                    if toks.len() < 5 {
                        return Err(syn("expected `edge <id> <a> <b> <weight>`"));
                    }
                    let w = Polynomial::parse(&toks[4..].join(" "))
                        .map_err(|e| syn(&e.to_string()))?;
                    raw.edges.push((
                        toks[1].to_string(),
                        toks[2].to_string(),
                        toks[3].to_string(),
                        w,
                    ));
                }
                "rot" => {
                    if toks.len() < 2 {
                        return Err(syn("expected `rot <vertex> <edges...>`"));
                    }
                    raw.rot.push((
                        toks[1].to_string(),
                        toks[2..].iter().map(|s| s.to_string()).collect(),
                    ));
                }
                "end" => break,
                other => return Err(syn(&format!("unknown directive `{other}`"))),
            }
        }
        if !seen_n {
            return Err(NetworkError::Syntax {
                line: 0,
                msg: "missing `n` line".into(),
            });
        }
        Ok(raw)
    }
}

impl PlanarNetwork {
    pub fn parse(text: &str) -> Result<PlanarNetwork, NetworkError> {
        Self::from_raw(RawNetwork::parse(text)?)
    }

    pub fn from_raw(raw: RawNetwork) -> Result<PlanarNetwork, NetworkError> {
        let n = raw.n;
        let mut interior = raw.interior;
        interior.sort_by(|a, b| a.0.cmp(&b.0));
        let mut names: Vec<String> = (1..=n).map(boundary_name).collect();
        let mut colors = vec![Color::Black; n];
        let mut index: HashMap<String, usize> = HashMap::new();
        for (i, nm) in names.iter().enumerate() {
            index.insert(nm.clone(), i);
        }
        for (id, c) in interior {
            if index.contains_key(&id) || boundary_index(&id, usize::MAX).is_some() {
                return Err(NetworkError::DuplicateId(id));
            }
            index.insert(id.clone(), names.len());
            names.push(id);
            colors.push(c);
        }
        let mut edges_raw = raw.edges;
        edges_raw.sort_by(|a, b| a.0.cmp(&b.0));
        let mut edges = Vec::with_capacity(edges_raw.len());
        let mut edge_index: HashMap<String, usize> = HashMap::new();
        for (id, a, b, w) in edges_raw {
            if edge_index.contains_key(&id) {
                return Err(NetworkError::DuplicateId(id));
            }
            let ia = *index.get(&a).ok_or_else(|| NetworkError::UnknownVertex(a.clone()))?;
            let ib = *index.get(&b).ok_or_else(|| NetworkError::UnknownVertex(b.clone()))?;
            if ia < n && ib < n {
                return Err(NetworkError::BoundaryBoundaryEdge(id));
            }
            if ia == ib || (ia >= n && ib >= n && colors[ia] == colors[ib]) {
                return Err(NetworkError::NonBipartite(id));
            }
            if w.is_zero() {
                return Err(NetworkError::ZeroWeight(id));
            }
            edge_index.insert(id.clone(), edges.len());
            edges.push(Edge {
                id,
                ends: (ia, ib),
                weight: w,
            });
        }
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); names.len()];
        for (ei, e) in edges.iter().enumerate() {
            incident[e.ends.0].push(ei);
            incident[e.ends.1].push(ei);
        }
        for i in 0..n {
            if incident[i].len() != 1 {
                return Err(NetworkError::BoundaryDegree(i + 1, incident[i].len()));
            }
            let e = &edges[incident[i][0]];
            let other = if e.ends.0 == i { e.ends.1 } else { e.ends.0 };
            colors[i] = colors[other].flip();
        }
        let mut rot: Vec<Option<Vec<usize>>> = vec![None; names.len()];
        for (v, list) in raw.rot {
            let vi = *index
                .get(&v)
                .ok_or_else(|| NetworkError::DanglingRotation(format!("vertex `{v}`")))?;
            let mut r = Vec::with_capacity(list.len());
            for e in list {
                let ei = *edge_index
                    .get(&e)
                    .ok_or_else(|| NetworkError::DanglingRotation(format!("edge `{e}` at `{v}`")))?;
                if !incident[vi].contains(&ei) {
                    return Err(NetworkError::DanglingRotation(format!(
                        "edge `{e}` is not incident to `{v}`"
                    )));
                }
                r.push(ei);
            }
            let as_set: BTreeSet<usize> = r.iter().copied().collect();
            if as_set.len() != r.len() || r.len() != incident[vi].len() {
                return Err(NetworkError::Embedding(format!(
                    "rotation at `{v}` must list each incident edge once"
                )));
            }
            if rot[vi].replace(r).is_some() {
                return Err(NetworkError::DuplicateId(format!("rot {v}")));
            }
        }
        let rot: Vec<Vec<usize>> = rot
            .into_iter()
            .enumerate()
            .map(|(v, r)| match r {
                Some(r) => Ok(r),
                None if incident[v].len() <= 2 => Ok(incident[v].clone()),
                None => Err(NetworkError::Embedding(format!(
                    "missing rotation at `{}`",
                    names[v]
                ))),
            })
            .collect::<Result<_, _>>()?;
        let net = PlanarNetwork {
            name: raw.name,
            n,
            names,
            colors,
            edges,
            rot,
        };
        net.check_embedding()?;
        Ok(net)
    }

    /// The network with boundary circle edges added: edge `m + i - 1`
    /// joins `b_i` to `b_{i+1}`. The rotation at `b_i` is
    /// (own edge, circle edge to `b_{i-1}`, circle edge to `b_{i+1}`).
    fn augmented(&self) -> (Vec<(usize, usize)>, Vec<Vec<usize>>) {
        let mut ends: Vec<(usize, usize)> = self.edges.iter().map(|e| e.ends).collect();
        let mut rot = self.rot.clone();
        let m = ends.len();
        let n = self.n;
        if n >= 2 {
            for i in 0..n {
                ends.push((i, (i + 1) % n));
            }
            for (i, r) in rot.iter_mut().enumerate().take(n) {
                let prev = m + (i + n - 1) % n;
                let next = m + i;
                r.push(prev);
                r.push(next);
            }
        }
        (ends, rot)
    }

    fn check_embedding(&self) -> Result<(), NetworkError> {
        let (ends, rot) = self.augmented();
        let chi = planar::euler_characteristics(self.names.len(), &ends, &rot);
        if let Some((c, x)) = chi.iter().enumerate().find(|(_, &x)| x != 2) {
            return Err(NetworkError::Embedding(format!(
                "component {c} has Euler characteristic {x} (boundary order or rotations inconsistent)"
            )));
        }
        Ok(())
    }

    pub fn to_raw(&self) -> RawNetwork {
        RawNetwork {
            name: self.name.clone(),
            n: self.n,
            interior: (self.n..self.names.len())
                .map(|v| (self.names[v].clone(), self.colors[v]))
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| {
                    (
                        e.id.clone(),
                        self.names[e.ends.0].clone(),
                        self.names[e.ends.1].clone(),
                        e.weight.clone(),
                    )
                })
                .collect(),
            rot: (0..self.names.len())
                .filter(|&v| self.rot[v].len() >= 2)
                .map(|v| {
                    (
                        self.names[v].clone(),
                        self.rot[v].iter().map(|&e| self.edges[e].id.clone()).collect(),
                    )
                })
                .collect(),
        }
    }

    pub fn serialize(&self) -> String {
        let raw = self.to_raw();
        let mut s = String::new();
        writeln!(s, "network {}", raw.name).unwrap();
        writeln!(s, "n {}", raw.n).unwrap();
        for (id, c) in &raw.interior {
            writeln!(s, "interior {id} {}", c.name()).unwrap();
        }
        for (id, a, b, w) in &raw.edges {
            writeln!(s, "edge {id} {a} {b} {}", w.canonical_string().replace(' ', "")).unwrap();
        }
        for (v, list) in &raw.rot {
            writeln!(s, "rot {v} {}", list.join(" ")).unwrap();
        }
        s.push_str("end\n");
        s
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_vertices(&self) -> usize {
        self.names.len()
    }

    pub fn is_boundary(&self, v: usize) -> bool {
        v < self.n
    }

    pub fn interior_vertices(&self) -> std::ops::Range<usize> {
        self.n..self.names.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|x| x == name)
    }

    pub fn color(&self, v: usize) -> Color {
        self.colors[v]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn edge_ends(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|e| e.ends).collect()
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rot[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rot
    }

    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e].ends;
        if a == v {
            b
        } else {
            a
        }
    }

    /// The unique edge at boundary vertex `i` (1-based).
    pub fn boundary_edge(&self, i: usize) -> usize {
        self.rot[i - 1][0]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rot[v].len()
    }

    pub fn stats(&self) -> NetworkStats {
        let mut d = 0i64;
        for v in self.interior_vertices() {
            d += match self.colors[v] {
                Color::White => 1,
                Color::Black => -1,
            };
        }
        let dprime = (0..self.n).filter(|&v| self.colors[v] == Color::White).count() as i64;
        NetworkStats {
            d,
            dprime,
            k: d + dprime,
        }
    }

    /// Sorted list of variables appearing in edge weights.
    pub fn variables(&self) -> Vec<String> {
        let mut vs: Vec<String> = self.edges.iter().flat_map(|e| e.weight.variables()).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Face walks of the embedded graph. A face touching the boundary is
    /// outer; a component without boundary has its longest walk flagged.
    pub fn faces(&self) -> Vec<Face> {
        let ends = self.edge_ends();
        let walks = planar::trace_faces(&ends, &self.rot);
        let (_, comp) = planar::components(self.names.len(), &ends);
        let has_boundary: BTreeSet<usize> = (0..self.n).map(|v| comp[v]).collect();
        let mut longest: BTreeMap<usize, usize> = BTreeMap::new();
        for (fi, w) in walks.iter().enumerate() {
            let c = comp[w[0].tail(&ends)];
            if has_boundary.contains(&c) {
                continue;
            }
            let best = longest.entry(c).or_insert(fi);
            if walks[*best].len() < w.len() {
                *best = fi;
            }
        }
        let flagged: BTreeSet<usize> = longest.into_values().collect();
        walks
            .into_iter()
            .enumerate()
            .map(|(fi, darts)| {
                let outer = flagged.contains(&fi) || darts.iter().any(|d| d.tail(&ends) < self.n);
                Face { darts, outer }
            })
            .collect()
    }

    /// Relabel boundary vertex i as i-1 (and 1 as n).
    pub fn cyclic_rotate(&self) -> PlanarNetwork {
        let n = self.n;
        let rename = |s: &str| -> String {
            match boundary_index(s, n) {
                Some(i) => boundary_name(if i == 1 { n } else { i - 1 }),
                None => s.to_string(),
            }
        };
        let mut raw = self.to_raw();
        for e in &mut raw.edges {
            e.1 = rename(&e.1);
            e.2 = rename(&e.2);
        }
        for r in &mut raw.rot {
            r.0 = rename(&r.0);
        }
        PlanarNetwork::from_raw(raw).expect("rotation preserves validity")
    }

    /// Apply `f` to every edge weight.
    pub fn map_weights(&self, mut f: impl FnMut(&Edge) -> Polynomial) -> PlanarNetwork {
        let mut out = self.clone();
        for e in &mut out.edges {
            e.weight = f(e);
        }
        out
    }

    /// Substitute numeric values for weight variables.
    pub fn specialize(&self, values: &HashMap<String, Rational>) -> PlanarNetwork {
        let subs: HashMap<String, Polynomial> = values
            .iter()
            .map(|(k, v)| (k.clone(), Polynomial::constant(v.clone())))
            .collect();
        self.map_weights(|e| e.weight.substitute(&subs))
    }

    /// Every edge weight replaced by the variable named after the edge.
    pub fn generic(&self) -> PlanarNetwork {
        self.map_weights(|e| Polynomial::var(&e.id))
    }

    /// Remove an interior edge; `None` if the edge touches the boundary.
    pub fn delete_edge(&self, id: &str) -> Option<PlanarNetwork> {
        let e = self.edge_index(id)?;
        let (a, b) = self.edges[e].ends;
        if a < self.n || b < self.n {
            return None;
        }
        let mut raw = self.to_raw();
        raw.edges.retain(|x| x.0 != id);
        for r in &mut raw.rot {
            r.1.retain(|x| x != id);
        }
        PlanarNetwork::from_raw(raw).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const C4: &str = include_str!("../../../fixtures/c4.net");

    #[test]
    fn c4_parses_with_expected_stats() {
        let n = PlanarNetwork::parse(C4).unwrap();
        assert_eq!(n.n(), 4);
        assert_eq!(n.stats(), NetworkStats { d: 0, dprime: 2, k: 2 });
        let faces = n.faces();
        assert_eq!(faces.len(), 2);
        assert_eq!(faces.iter().filter(|f| !f.outer).count(), 1);
        assert_eq!(faces.iter().find(|f| !f.outer).unwrap().darts.len(), 4);
    }

    #[test]
    fn reversed_boundary_order_is_rejected() {
        let n = PlanarNetwork::parse(C4).unwrap();
        let mut raw = n.to_raw();
        for e in &mut raw.edges {
            for end in [&mut e.1, &mut e.2] {
                if let Some(i) = boundary_index(end, 4) {
                    *end = boundary_name(5 - i);
                }
            }
        }
        assert!(matches!(
            PlanarNetwork::from_raw(raw),
            Err(NetworkError::Embedding(_))
        ));
    }

    #[test]
    fn invariant_violations_are_reported() {
        let bb = "network x\nn 2\nedge e b1 b2 1\nend\n";
        assert_eq!(
            PlanarNetwork::parse(bb),
            Err(NetworkError::BoundaryBoundaryEdge("e".into()))
        );
        let nb = "network x\nn 0\ninterior u black\ninterior v black\nedge e u v 1\nend\n";
        assert_eq!(PlanarNetwork::parse(nb), Err(NetworkError::NonBipartite("e".into())));
        let deg = "network x\nn 1\ninterior u black\nend\n";
        assert_eq!(PlanarNetwork::parse(deg), Err(NetworkError::BoundaryDegree(1, 0)));
        let dang = "network x\nn 0\ninterior u black\ninterior v white\nedge e u v 1\nrot u f\nend\n";
        assert!(matches!(
            PlanarNetwork::parse(dang),
            Err(NetworkError::DanglingRotation(_))
        ));
    }

    #[test]
    fn dipole_has_one_face() {
        let text = "network d\nn 0\ninterior u black\ninterior v white\nedge e u v 1\nend\n";
        let n = PlanarNetwork::parse(text).unwrap();
        let f = n.faces();
        assert_eq!(f.len(), 1);
        assert!(f[0].outer);
    }

    #[test]
    fn serialize_roundtrip_and_rotation_order() {
        let n = PlanarNetwork::parse(C4).unwrap();
        assert_eq!(PlanarNetwork::parse(&n.serialize()).unwrap(), n);
        let mut r = n.clone();
        for _ in 0..4 {
            r = r.cyclic_rotate();
        }
        assert_eq!(r, n);
    }
}
