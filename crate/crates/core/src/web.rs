//! A2 webs in a disk with tagged boundary vertices, and their reduction to
//! non-elliptic webs.
//!
//! Nodes `0..n` are the boundary vertices `1..n`; the rest are trivalent
//! interior vertices. Edges run from black to white (boundary ends take
//! whatever direction the other end forces, boundary arcs carry their own).
//! Vertexless loops are only counted: every reduction treats them as a
//! factor 3, wherever they sit.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use itertools::Itertools;
use rand::Rng;
use thiserror::Error;

use crate::network::Color;
use crate::planar::{self, Dart};
use crate::report::Report;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WebError {
    #[error("invalid web: {0}")]
    Invalid(String),
    #[error("cannot parse web: {0}")]
    Parse(String),
}

#[derive(Clone, Debug)]
pub struct Web {
    n: usize,
    tags: BTreeSet<usize>,
    loops: u32,
    color: Vec<Option<Color>>,
    rot: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl PartialEq for Web {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for Web {}

/// How a web meets a boundary vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Source,
    Sink,
    Tagged,
    Unused,
}

/// A reducible configuration.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Feature {
    Loop,
    Bigon { nodes: [usize; 2], edges: [usize; 2] },
    Square { nodes: [usize; 4], edges: [usize; 4] },
}

impl Web {
    pub fn empty(n: usize) -> Web {
        Web {
            n,
            tags: BTreeSet::new(),
            loops: 0,
            color: vec![None; n],
            rot: vec![Vec::new(); n],
            edges: Vec::new(),
        }
    }

    pub fn tagged(n: usize, tags: &[usize]) -> Web {
        let mut w = Web::empty(n);
        w.tags = tags.iter().copied().collect();
        w
    }

    /// Build from raw parts; `interior` colours nodes `n..`, `rot` covers
    /// every node (boundary entries list their single edge, if any).
    pub fn from_parts(
        n: usize,
        tags: BTreeSet<usize>,
        loops: u32,
        interior: Vec<Color>,
        edges: Vec<(usize, usize)>,
        rot: Vec<Vec<usize>>,
    ) -> Result<Web, WebError> {
        let mut color = vec![None; n];
        color.extend(interior.into_iter().map(Some));
        let w = Web {
            n,
            tags,
            loops,
            color,
            rot,
            edges,
        };
        w.validate()?;
        Ok(w)
    }

    fn validate(&self) -> Result<(), WebError> {
        let bad = |m: String| Err(WebError::Invalid(m));
        let nn = self.color.len();
        if self.rot.len() != nn {
            return bad("rotation table size".into());
        }
        let mut inc: Vec<Vec<usize>> = vec![Vec::new(); nn];
        for (e, &(t, h)) in self.edges.iter().enumerate() {
            if t >= nn || h >= nn || t == h {
                return bad(format!("edge {e} has bad ends"));
            }
            if self.color[t] == Some(Color::White) || self.color[h] == Some(Color::Black) {
                return bad(format!("edge {e} is not directed black to white"));
            }
            inc[t].push(e);
            inc[h].push(e);
        }
        for v in 0..nn {
            let mut r = self.rot[v].clone();
            r.sort_unstable();
            let mut i = inc[v].clone();
            i.sort_unstable();
            if r != i {
                return bad(format!("rotation at node {v} does not match its edges"));
            }
            let want = if v < self.n { i.len().min(1) } else { 3 };
            if i.len() != want {
                return bad(format!("node {v} has degree {}", i.len()));
            }
        }
        for &t in &self.tags {
            if t == 0 || t > self.n || !inc[t - 1].is_empty() {
                return bad(format!("tag {t} on a used or missing boundary vertex"));
            }
        }
        let (ends, rot) = self.augmented();
        let chi = planar::euler_characteristics(nn, &ends, &rot);
        if chi.iter().any(|&x| x != 2) {
            return bad("rotation system is not a planar disk embedding".into());
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tags(&self) -> &BTreeSet<usize> {
        &self.tags
    }

    pub fn loops(&self) -> u32 {
        self.loops
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn num_nodes(&self) -> usize {
        self.color.len()
    }

    pub fn color(&self, v: usize) -> Option<Color> {
        self.color[v]
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rot[v]
    }

    pub fn with_loops(mut self, loops: u32) -> Web {
        self.loops = loops;
        self
    }

    fn other_end(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// The edge at boundary vertex `i` (1-based), if used.
    pub fn boundary_edge(&self, i: usize) -> Option<usize> {
        self.rot[i - 1].first().copied()
    }

    /// Edges plus boundary circle edges `b_i -> b_{i+1}`; rotation at `b_i`
    /// is (own edge, circle to `b_{i-1}`, circle to `b_{i+1}`).
    fn augmented(&self) -> (Vec<(usize, usize)>, Vec<Vec<usize>>) {
        let mut ends = self.edges.clone();
        let mut rot = self.rot.clone();
        let m = ends.len();
        let n = self.n;
        if n >= 2 {
            for i in 0..n {
                ends.push((i, (i + 1) % n));
            }
            for (i, r) in rot.iter_mut().enumerate().take(n) {
                r.push(m + (i + n - 1) % n);
                r.push(m + i);
            }
        }
        (ends, rot)
    }

    pub fn degree(&self) -> usize {
        let mut d = 3 * self.tags.len();
        for i in 0..self.n {
            if let Some(&e) = self.rot[i].first() {
                let other = self.other_end(e, i);
                d += match self.color[other] {
                    None => 3,
                    Some(Color::White) => 1,
                    Some(Color::Black) => 2,
                };
            }
        }
        // each arc was counted from both ends
        let arcs = self.arcs().len();
        let d = d - 3 * arcs;
        debug_assert_eq!(d % 3, 0, "web degree not divisible by 3");
        d
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut a: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|&&(t, h)| t < self.n && h < self.n)
            .map(|&(t, h)| (t + 1, h + 1))
            .collect();
        a.sort_unstable();
        a
    }

    /// Boundary vertices that carry an edge.
    pub fn used(&self) -> BTreeSet<usize> {
        (1..=self.n).filter(|&i| !self.rot[i - 1].is_empty()).collect()
    }

    pub fn role(&self, i: usize) -> Role {
        match self.boundary_edge(i) {
            Some(e) if self.edges[e].0 == i - 1 => Role::Source,
            Some(_) => Role::Sink,
            None if self.tags.contains(&i) => Role::Tagged,
            None => Role::Unused,
        }
    }

    /// Join the strands at boundary vertices `i` and `j` into one edge; only
    /// possible when one is a source and the other a sink.
    pub fn join_boundary(&self, i: usize, j: usize) -> Option<Web> {
        let (src, snk) = match (self.role(i), self.role(j)) {
            (Role::Source, Role::Sink) => (i, j),
            (Role::Sink, Role::Source) => (j, i),
            _ => return None,
        };
        let out = self.boundary_edge(src).unwrap();
        let inn = self.boundary_edge(snk).unwrap();
        let mut w = self.clone();
        if out == inn {
            w.loops += 1;
            w.edges[out] = (usize::MAX, usize::MAX);
        } else {
            let head = self.edges[out].1;
            let tail = self.edges[inn].0;
            // the strand now runs tail -> head through edge `inn`
            w.edges[inn] = (tail, head);
            for x in w.rot[head].iter_mut() {
                if *x == out {
                    *x = inn;
                }
            }
            w.edges[out] = (usize::MAX, usize::MAX);
        }
        w.rot[src - 1].clear();
        w.rot[snk - 1].clear();
        Some(w.drop_dead_edges())
    }

    fn drop_dead_edges(mut self) -> Web {
        let keep: Vec<usize> = (0..self.edges.len()).filter(|&e| self.edges[e].0 != usize::MAX).collect();
        let map: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        self.edges = keep.iter().map(|&e| self.edges[e]).collect();
        for r in self.rot.iter_mut() {
            for x in r.iter_mut() {
                *x = map[x];
            }
        }
        self
    }

    pub fn features(&self) -> Vec<Feature> {
        let mut out = Vec::new();
        if self.loops > 0 {
            out.push(Feature::Loop);
        }
        let (ends, rot) = self.augmented();
        let m = self.edges.len();
        for face in planar::trace_faces(&ends, &rot) {
            if face.iter().any(|d| d.edge >= m) {
                continue;
            }
            let nodes: Vec<usize> = face.iter().map(|d| d.tail(&ends)).collect();
            let distinct: BTreeSet<usize> = nodes.iter().copied().collect();
            if distinct.len() != nodes.len() || nodes.iter().any(|&v| v < self.n) {
                continue;
            }
            match face.len() {
                2 => out.push(Feature::Bigon {
                    nodes: [nodes[0], nodes[1]],
                    edges: [face[0].edge, face[1].edge],
                }),
                4 => out.push(Feature::Square {
                    nodes: [nodes[0], nodes[1], nodes[2], nodes[3]],
                    edges: [face[0].edge, face[1].edge, face[2].edge, face[3].edge],
                }),
                _ => {}
            }
        }
        out
    }

    pub fn is_nonelliptic(&self) -> bool {
        self.features().is_empty()
    }

    /// Nodes reachable from the boundary.
    fn boundary_component(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_nodes()];
        let mut queue: VecDeque<usize> = (0..self.n).collect();
        for i in 0..self.n {
            seen[i] = true;
        }
        while let Some(v) = queue.pop_front() {
            for &e in &self.rot[v] {
                let u = self.other_end(e, v);
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        seen
    }

    /// Number the interior nodes reachable from `roots` breadth first; each
    /// node's rotation is read from the edge it was reached by.
    fn bfs_number(&self, roots: &[(usize, usize)]) -> (Vec<usize>, HashMap<usize, usize>, HashMap<usize, usize>) {
        let mut order = Vec::new();
        let mut num: HashMap<usize, usize> = HashMap::new();
        let mut start: HashMap<usize, usize> = HashMap::new();
        let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
        let mut visit = |v: usize, s: usize, queue: &mut VecDeque<(usize, usize)>| {
            if v >= self.n && !num.contains_key(&v) {
                num.insert(v, order.len());
                start.insert(v, s);
                order.push(v);
                queue.push_back((v, s));
            }
        };
        for &(v, s) in roots {
            if v < self.n {
                if let Some(&e) = self.rot[v].first() {
                    let u = self.other_end(e, v);
                    let pos = self.rot[u].iter().position(|&x| x == e).unwrap();
                    visit(u, pos, &mut queue);
                }
            } else {
                visit(v, s, &mut queue);
            }
        }
        while let Some((v, s)) = queue.pop_front() {
            for k in 0..3 {
                let e = self.rot[v][(s + k) % 3];
                let u = self.other_end(e, v);
                let pos = self.rot[u].iter().position(|&x| x == e).unwrap();
                visit(u, pos, &mut queue);
            }
        }
        (order, num, start)
    }

    fn describe(
        &self,
        order: &[usize],
        num: &HashMap<usize, usize>,
        start: &HashMap<usize, usize>,
        offset: usize,
        exact: bool,
    ) -> Vec<String> {
        order
            .iter()
            .map(|&v| {
                let s = start[&v];
                let nbrs: Vec<String> = (0..3)
                    .map(|k| {
                        let e = self.rot[v][(s + k) % 3];
                        let u = self.other_end(e, v);
                        if u < self.n {
                            (u + 1).to_string()
                        } else {
                            let mut t = format!("v{}", num[&u] + offset + 1);
                            if exact {
                                let pos = self.rot[u].iter().position(|&x| x == e).unwrap();
                                t.push_str(&format!(":{}", (pos + 3 - start[&u]) % 3));
                            }
                            t
                        }
                    })
                    .collect();
                let c = if self.color[v] == Some(Color::Black) { 'b' } else { 'w' };
                format!("{c} v{}({})", num[&v] + offset + 1, nbrs.join(","))
            })
            .collect()
    }

    fn code(&self, exact: bool) -> String {
        let mut items = vec![format!("web n={}", self.n)];
        if !self.tags.is_empty() {
            items.push(format!("tags{{{}}}", self.tags.iter().join(",")));
        }
        if self.loops > 0 {
            items.push(format!("loops={}", self.loops));
        }
        for (t, h) in self.arcs() {
            items.push(format!("arc {t}>{h}"));
        }
        let roots: Vec<(usize, usize)> = (0..self.n).map(|i| (i, 0)).collect();
        let (order, num, start) = self.bfs_number(&roots);
        items.extend(self.describe(&order, &num, &start, 0, exact));
        // closed components, each rooted at its lexicographically least code
        let reached = self.boundary_component();
        let mut done = vec![false; self.num_nodes()];
        let mut closed: Vec<(String, usize, usize)> = Vec::new();
        for v in self.n..self.num_nodes() {
            if reached[v] || done[v] {
                continue;
            }
            let mut best: Option<(String, usize, usize)> = None;
            let (comp, _, _) = self.bfs_number(&[(v, 0)]);
            for &r in &comp {
                done[r] = true;
                for s in 0..3 {
                    let (o, nm, st) = self.bfs_number(&[(r, s)]);
                    let c = self.describe(&o, &nm, &st, 0, true).join("; ");
                    if best.as_ref().is_none_or(|b| c < b.0) {
                        best = Some((c, r, s));
                    }
                }
            }
            closed.push(best.unwrap());
        }
        closed.sort();
        let mut offset = order.len();
        for (_, r, s) in closed {
            let (o, nm, st) = self.bfs_number(&[(r, s)]);
            items.push("closed".to_string());
            items.extend(self.describe(&o, &nm, &st, offset, exact));
            offset += o.len();
        }
        items.join("; ")
    }

    /// Canonical text form, identical for webs isotopic rel boundary.
    pub fn canonical(&self) -> String {
        self.code(false)
    }

    /// Exact key: the canonical form together with the slot each edge
    /// occupies at its far end (distinguishes parallel edges).
    pub fn key(&self) -> String {
        self.code(true)
    }

    pub fn parse(text: &str) -> Result<Web, WebError> {
        parse_web(text)
    }

    /// Replace a removed region: `removed` nodes and `dropped` edges vanish,
    /// and each pair of slots `(node, edge)` in `joins` is connected through
    /// the region. Strands are followed from outside to outside; strands
    /// that never leave the region become loops.
    fn splice(&self, removed: &[usize], dropped: &[usize], joins: &[((usize, usize), (usize, usize))]) -> Web {
        let is_removed = |v: usize| removed.contains(&v);
        let mut partner: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
        for &(a, b) in joins {
            partner.insert(a, b);
            partner.insert(b, a);
        }
        let legs: Vec<usize> = (0..self.edges.len())
            .filter(|e| !dropped.contains(e))
            .filter(|&e| is_removed(self.edges[e].0) || is_removed(self.edges[e].1))
            .collect();
        let mut visited: HashSet<usize> = HashSet::new();
        let mut new_edges: Vec<(usize, usize)> = Vec::new();
        let mut replace: HashMap<(usize, usize), usize> = HashMap::new();
        let mut loops = self.loops;
        for &l in &legs {
            if visited.contains(&l) {
                continue;
            }
            let (a, b) = self.edges[l];
            let (o, r) = if !is_removed(a) {
                (a, b)
            } else if !is_removed(b) {
                (b, a)
            } else {
                continue;
            };
            let forward = a == o;
            visited.insert(l);
            let mut cur = (r, l);
            let end = loop {
                let (r2, l2) = partner[&cur];
                visited.insert(l2);
                let x = self.other_end(l2, r2);
                debug_assert_eq!(self.edges[l2] == (r2, x), forward, "strand orientation flips");
                if !is_removed(x) {
                    break (x, l2);
                }
                cur = (x, l2);
            };
            let idx = new_edges.len();
            new_edges.push(if forward { (o, end.0) } else { (end.0, o) });
            replace.insert((o, l), idx);
            replace.insert(end, idx);
        }
        for &l in &legs {
            if visited.contains(&l) {
                continue;
            }
            let start = (self.edges[l].1, l);
            let mut cur = start;
            loop {
                visited.insert(cur.1);
                let (r2, l2) = partner[&cur];
                visited.insert(l2);
                cur = (self.other_end(l2, r2), l2);
                if cur == start {
                    break;
                }
            }
            loops += 1;
        }
        let legset: HashSet<usize> = legs.iter().copied().collect();
        let keep_nodes: Vec<usize> = (0..self.num_nodes()).filter(|&v| !is_removed(v)).collect();
        let node_map: HashMap<usize, usize> = keep_nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let keep_edges: Vec<usize> = (0..self.edges.len())
            .filter(|e| !dropped.contains(e) && !legset.contains(e))
            .collect();
        let edge_map: HashMap<usize, usize> = keep_edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut edges: Vec<(usize, usize)> = keep_edges
            .iter()
            .map(|&e| (node_map[&self.edges[e].0], node_map[&self.edges[e].1]))
            .collect();
        let base = edges.len();
        edges.extend(new_edges.iter().map(|&(t, h)| (node_map[&t], node_map[&h])));
        let rot: Vec<Vec<usize>> = keep_nodes
            .iter()
            .map(|&v| {
                self.rot[v]
                    .iter()
                    .map(|&e| match edge_map.get(&e) {
                        Some(&i) => i,
                        None => base + replace[&(v, e)],
                    })
                    .collect()
            })
            .collect();
        Web {
            n: self.n,
            tags: self.tags.clone(),
            loops,
            color: keep_nodes.iter().map(|&v| self.color[v]).collect(),
            rot,
            edges,
        }
    }

    fn third_edge(&self, v: usize, face_edges: &[usize]) -> usize {
        *self.rot[v]
            .iter()
            .find(|e| !face_edges.contains(e))
            .expect("trivalent vertex has an edge off the face")
    }

    /// One reduction step: the resulting webs with integer coefficients.
    pub fn apply(&self, f: &Feature) -> Vec<(i64, Web)> {
        match f {
            Feature::Loop => {
                let mut w = self.clone();
                w.loops -= 1;
                vec![(3, w)]
            }
            Feature::Bigon { nodes, edges } => {
                let [u, v] = *nodes;
                let fu = self.third_edge(u, edges);
                let fv = self.third_edge(v, edges);
                vec![(2, self.splice(nodes, edges, &[((u, fu), (v, fv))]))]
            }
            Feature::Square { nodes, edges } => {
                let legs: Vec<(usize, usize)> = nodes
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| {
                        let face: Vec<usize> = vec![edges[i], edges[(i + 3) % 4]];
                        (v, self.third_edge(v, &face))
                    })
                    .collect();
                let s1 = self.splice(nodes, edges, &[(legs[0], legs[1]), (legs[2], legs[3])]);
                let s2 = self.splice(nodes, edges, &[(legs[1], legs[2]), (legs[3], legs[0])]);
                vec![(1, s1), (1, s2)]
            }
        }
    }

    /// Reduction with the deterministic strategy (first feature).
    pub fn reduce(&self) -> WebCombination {
        Reducer::default().reduce(self)
    }

    /// Reduction choosing a uniformly random feature at every step.
    pub fn reduce_random(&self, rng: &mut impl Rng) -> WebCombination {
        let feats = self.features();
        if feats.is_empty() {
            return WebCombination::single(self.clone(), 1);
        }
        let f = &feats[rng.gen_range(0..feats.len())];
        let mut out = WebCombination::default();
        for (c, w) in self.apply(f) {
            out.add_scaled(&w.reduce_random(rng), c);
        }
        out
    }

    /// Label choices for every edge plus loops, ignoring boundary data.
    pub fn enumerate_labelings(&self) -> Vec<Labeling> {
        let mut out = Vec::new();
        self.label_search(&vec![None; self.edges.len()], &mut |labels| {
            out.push(labels.to_vec());
        });
        let loop_choices: Vec<Vec<u8>> = (0..self.loops).map(|_| vec![1u8, 2, 3]).multi_cartesian_product().collect();
        let loop_choices = if self.loops == 0 { vec![vec![]] } else { loop_choices };
        out.into_iter()
            .flat_map(|e| {
                loop_choices.iter().map(move |l| Labeling {
                    edges: e.clone(),
                    loops: l.clone(),
                })
            })
            .collect()
    }

    pub fn find_labeling(&self) -> Option<Labeling> {
        let mut found = None;
        self.label_search(&vec![None; self.edges.len()], &mut |labels| {
            if found.is_none() {
                found = Some(labels.to_vec());
            }
        });
        found.map(|edges| Labeling {
            edges,
            loops: vec![1; self.loops as usize],
        })
    }

    pub fn count_labelings(&self) -> u64 {
        let mut c = 0u64;
        self.label_search(&vec![None; self.edges.len()], &mut |_| c += 1);
        c * 3u64.pow(self.loops)
    }

    fn label_search(&self, fixed: &[Option<u8>], visit: &mut dyn FnMut(&[u8])) {
        let mut labels: Vec<u8> = vec![0; self.edges.len()];
        fn go(w: &Web, e: usize, fixed: &[Option<u8>], labels: &mut Vec<u8>, visit: &mut dyn FnMut(&[u8])) {
            if e == w.edges.len() {
                visit(labels);
                return;
            }
            let choices: Vec<u8> = match fixed[e] {
                Some(l) => vec![l],
                None => vec![1, 2, 3],
            };
            let (t, h) = w.edges[e];
            for l in choices {
                let clash = [t, h].iter().any(|&v| {
                    v >= w.n && w.rot[v].iter().any(|&f| f < e && labels[f] == l)
                });
                if !clash {
                    labels[e] = l;
                    go(w, e + 1, fixed, labels, visit);
                }
            }
            labels[e] = 0;
        }
        go(self, 0, fixed, &mut labels, visit);
    }

    /// a(I,J,K;W): labelings consistent with the boundary data. At boundary
    /// vertex i, an edge labelled j leaving i requires i ∈ I_j only; an
    /// edge labelled j entering i requires i in the other two sets only; a
    /// tag requires i in all three; an unused untagged i lies in none.
    pub fn count_consistent(&self, sets: [&[usize]; 3]) -> u64 {
        let mut fixed: Vec<Option<u8>> = vec![None; self.edges.len()];
        for i in 1..=self.n {
            let member = [0, 1, 2].map(|s| sets[s].contains(&i));
            let count = member.iter().filter(|&&x| x).count();
            match self.boundary_edge(i) {
                None => {
                    let want = if self.tags.contains(&i) { 3 } else { 0 };
                    if count != want {
                        return 0;
                    }
                }
                Some(e) => {
                    let source = self.edges[e].0 == i - 1;
                    let label = if source && count == 1 {
                        member.iter().position(|&x| x).unwrap()
                    } else if !source && count == 2 {
                        member.iter().position(|&x| !x).unwrap()
                    } else {
                        return 0;
                    };
                    let label = label as u8 + 1;
                    match fixed[e] {
                        Some(l) if l != label => return 0,
                        _ => fixed[e] = Some(label),
                    }
                }
            }
        }
        let mut c = 0u64;
        self.label_search(&fixed, &mut |_| c += 1);
        c * 3u64.pow(self.loops)
    }

    pub fn darts_of_face(&self) -> Vec<Vec<Dart>> {
        let (ends, rot) = self.augmented();
        planar::trace_faces(&ends, &rot)
    }
}

impl fmt::Display for Web {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

/// Labels in {1,2,3} per edge (web edge order) and per loop.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Labeling {
    pub edges: Vec<u8>,
    pub loops: Vec<u8>,
}

pub fn web_eq(a: &Web, b: &Web) -> bool {
    a.key() == b.key()
}

/// Integer combination of non-elliptic webs keyed by exact code.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WebCombination {
    terms: BTreeMap<String, (Web, i64)>,
}

impl WebCombination {
    pub fn single(w: Web, c: i64) -> Self {
        let mut out = WebCombination::default();
        out.add(w, c);
        out
    }

    pub fn add(&mut self, w: Web, c: i64) {
        if c == 0 {
            return;
        }
        let key = w.key();
        let entry = self.terms.entry(key.clone()).or_insert((w, 0));
        entry.1 += c;
        if entry.1 == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &WebCombination, c: i64) {
        for (w, k) in other.terms.values() {
            self.add(w.clone(), k * c);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Web, i64)> {
        self.terms.values().map(|(w, c)| (w, *c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Web) -> i64 {
        self.terms.get(&w.key()).map_or(0, |t| t.1)
    }

    /// Coefficient of the web with exact key `key`.
    pub fn coefficient_of_key(&self, key: &str) -> i64 {
        self.terms.get(key).map_or(0, |t| t.1)
    }

    pub fn keys(&self) -> impl Iterator<Item = &String> {
        self.terms.keys()
    }
}

impl fmt::Display for WebCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .values()
            .map(|(w, c)| format!("{c} [{}]", w.canonical()))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Memoised deterministic reduction.
#[derive(Default)]
pub struct Reducer {
    memo: HashMap<String, WebCombination>,
}

impl Reducer {
    pub fn reduce(&mut self, w: &Web) -> WebCombination {
        let key = w.key();
        if let Some(r) = self.memo.get(&key) {
            return r.clone();
        }
        let feats = w.features();
        let out = match feats.first() {
            None => WebCombination::single(w.clone(), 1),
            Some(f) => {
                let mut acc = WebCombination::default();
                for (c, w2) in w.apply(f) {
                    let r = self.reduce(&w2);
                    acc.add_scaled(&r, c);
                }
                acc
            }
        };
        self.memo.insert(key, out.clone());
        out
    }
}

fn parse_web(text: &str) -> Result<Web, WebError> {
    let err = |m: &str| WebError::Parse(format!("{m} in `{text}`"));
    let items: Vec<&str> = text.split(';').map(str::trim).filter(|s| !s.is_empty()).collect();
    let head = items.first().ok_or_else(|| err("empty"))?;
    let n: usize = head
        .strip_prefix("web n=")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| err("expected `web n=<int>`"))?;
    let mut tags = BTreeSet::new();
    let mut loops = 0u32;
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    let mut verts: Vec<(String, Color, Vec<String>)> = Vec::new();
    for item in &items[1..] {
        if let Some(t) = item.strip_prefix("tags{").and_then(|t| t.strip_suffix('}')) {
            for x in t.split(',').filter(|x| !x.trim().is_empty()) {
                tags.insert(x.trim().parse().map_err(|_| err("bad tag"))?);
            }
        } else if let Some(l) = item.strip_prefix("loops=") {
            loops = l.trim().parse().map_err(|_| err("bad loop count"))?;
        } else if let Some(a) = item.strip_prefix("arc ") {
            let (t, h) = a.split_once('>').ok_or_else(|| err("bad arc"))?;
            arcs.push((
                t.trim().parse().map_err(|_| err("bad arc"))?,
                h.trim().parse().map_err(|_| err("bad arc"))?,
            ));
        } else if *item == "closed" {
            continue;
        } else {
            let (c, rest) = item.split_once(' ').ok_or_else(|| err("bad vertex"))?;
            let color = match c {
                "b" => Color::Black,
                "w" => Color::White,
                _ => return Err(err("vertex colour must be b or w")),
            };
            let (name, list) = rest.split_once('(').ok_or_else(|| err("bad vertex"))?;
            let list = list.strip_suffix(')').ok_or_else(|| err("bad vertex"))?;
            let nbrs: Vec<String> = list
                .split(',')
                .map(|s| s.trim().split(':').next().unwrap().to_string())
                .collect();
            if nbrs.len() != 3 {
                return Err(err("interior vertices are trivalent"));
            }
            verts.push((name.trim().to_string(), color, nbrs));
        }
    }
    let index: HashMap<&str, usize> = verts.iter().enumerate().map(|(i, v)| (v.0.as_str(), n + i)).collect();
    let nn = n + verts.len();
    let resolve = |s: &str| -> Result<usize, WebError> {
        if let Some(&v) = index.get(s) {
            return Ok(v);
        }
        match s.parse::<usize>() {
            Ok(i) if (1..=n).contains(&i) => Ok(i - 1),
            _ => Err(err(&format!("unknown vertex `{s}`"))),
        }
    };
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut rot: Vec<Vec<Option<usize>>> = vec![Vec::new(); nn];
    for (t, h) in &arcs {
        let (t, h) = (resolve(&t.to_string())?, resolve(&h.to_string())?);
        rot[t].push(Some(edges.len()));
        rot[h].push(Some(edges.len()));
        edges.push((t, h));
    }
    // slots between pairs of interior vertices, to be paired up afterwards
    let mut pending: BTreeMap<(usize, usize), (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for (i, (_, color, nbrs)) in verts.iter().enumerate() {
        let v = n + i;
        for (slot, s) in nbrs.iter().enumerate() {
            let u = resolve(s)?;
            rot[v].push(None);
            if u < n {
                let e = edges.len();
                edges.push(if *color == Color::Black { (v, u) } else { (u, v) });
                rot[v][slot] = Some(e);
                rot[u].push(Some(e));
            } else {
                let key = (v.min(u), v.max(u));
                let entry = pending.entry(key).or_default();
                if v < u {
                    entry.0.push(slot);
                } else {
                    entry.1.push(slot);
                }
            }
        }
    }
    let groups: Vec<((usize, usize), (Vec<usize>, Vec<usize>))> = pending.into_iter().collect();
    for ((a, b), (sa, sb)) in &groups {
        if sa.len() != sb.len() || a == b {
            return Err(err("adjacency lists disagree"));
        }
        let ca = verts[a - n].1;
        let cb = verts[b - n].1;
        if ca == cb {
            return Err(err("edge joins two vertices of one colour"));
        }
    }
    let choices: Vec<Vec<Vec<usize>>> = groups
        .iter()
        .map(|(_, (sa, _))| (0..sa.len()).permutations(sa.len()).collect())
        .collect();
    let colors: Vec<Color> = verts.iter().map(|v| v.1).collect();
    let combos: Vec<Vec<&Vec<usize>>> = if choices.is_empty() {
        vec![vec![]]
    } else {
        choices.iter().map(|c| c.iter()).multi_cartesian_product().collect()
    };
    let mut last_err = err("no planar pairing of parallel edges");
    for combo in combos {
        let mut edges2 = edges.clone();
        let mut rot2 = rot.clone();
        for (((a, b), (sa, sb)), perm) in groups.iter().zip(&combo) {
            for (x, &p) in perm.iter().enumerate() {
                let e = edges2.len();
                let (black, white) = if colors[a - n] == Color::Black { (*a, *b) } else { (*b, *a) };
                edges2.push((black, white));
                rot2[*a][sa[x]] = Some(e);
                rot2[*b][sb[p]] = Some(e);
            }
        }
        let rot2: Vec<Vec<usize>> = rot2.into_iter().map(|r| r.into_iter().map(Option::unwrap).collect()).collect();
        match Web::from_parts(n, tags.clone(), loops, colors.clone(), edges2, rot2) {
            Ok(w) => return Ok(w),
            Err(e) => last_err = e,
        }
    }
    Err(last_err)
}

/// a(I,J,K;W) = Σ_D W_D a(I,J,K;D) for the reduction of `w`.
pub fn verify_reduction_labeling(w: &Web, sets: [&[usize]; 3]) -> Report {
    let mut r = Report::new("reduction-labeling");
    let lhs = w.count_consistent(sets) as i64;
    let rhs: i64 = w
        .reduce()
        .terms()
        .map(|(d, c)| c * d.count_consistent(sets) as i64)
        .sum();
    r.check(lhs == rhs, || format!("{w}: {lhs} != {rhs} for {sets:?}"));
    r
}
