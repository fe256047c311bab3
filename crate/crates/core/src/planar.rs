//! Combinatorial maps given by rotation systems.
//!
//! A map is a list of edges (pairs of node indices) together with, for each
//! node, the clockwise cyclic order of its incident edges. Faces are the
//! orbits of the dart permutation `u -> v` ↦ (next edge after `vu` in the
//! rotation at `v`), oriented away from `v`.

/// A directed copy of an edge: `forward` runs from `ends.0` to `ends.1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub edge: usize,
    pub forward: bool,
}

impl Dart {
    pub fn tail(self, ends: &[(usize, usize)]) -> usize {
        let (a, b) = ends[self.edge];
        if self.forward {
            a
        } else {
            b
        }
    }

    pub fn head(self, ends: &[(usize, usize)]) -> usize {
        let (a, b) = ends[self.edge];
        if self.forward {
            b
        } else {
            a
        }
    }

    pub fn reverse(self) -> Dart {
        Dart {
            edge: self.edge,
            forward: !self.forward,
        }
    }
}

/// Successor of `d` in its face walk.
pub fn next_dart(d: Dart, ends: &[(usize, usize)], rot: &[Vec<usize>]) -> Dart {
    let v = d.head(ends);
    let r = &rot[v];
    let pos = r
        .iter()
        .position(|&e| e == d.edge)
        .expect("dart edge missing from rotation");
    let e = r[(pos + 1) % r.len()];
    Dart {
        edge: e,
        forward: ends[e].0 == v,
    }
}

/// All face walks of the map. Every dart lies on exactly one walk.
pub fn trace_faces(ends: &[(usize, usize)], rot: &[Vec<usize>]) -> Vec<Vec<Dart>> {
    let mut seen = vec![[false; 2]; ends.len()];
    let mut faces = Vec::new();
    for e in 0..ends.len() {
        for forward in [true, false] {
            if seen[e][forward as usize] {
                continue;
            }
            let start = Dart { edge: e, forward };
            let mut walk = Vec::new();
            let mut d = start;
            loop {
                seen[d.edge][d.forward as usize] = true;
                walk.push(d);
                d = next_dart(d, ends, rot);
                if d == start {
                    break;
                }
            }
            faces.push(walk);
        }
    }
    faces
}

/// Connected components of the nodes, as a component index per node.
pub fn components(nodes: usize, ends: &[(usize, usize)]) -> (usize, Vec<usize>) {
    let mut parent: Vec<usize> = (0..nodes).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    for &(a, b) in ends {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
        }
    }
    let mut label = vec![usize::MAX; nodes];
    let mut count = 0;
    let mut comp = vec![0; nodes];
    for v in 0..nodes {
        let r = find(&mut parent, v);
        if label[r] == usize::MAX {
            label[r] = count;
            count += 1;
        }
        comp[v] = label[r];
    }
    (count, comp)
}

/// Euler characteristic V - E + F of every connected component.
pub fn euler_characteristics(nodes: usize, ends: &[(usize, usize)], rot: &[Vec<usize>]) -> Vec<i64> {
    let (count, comp) = components(nodes, ends);
    let mut chi = vec![0i64; count];
    for v in 0..nodes {
        chi[comp[v]] += 1;
    }
    for &(a, _) in ends {
        chi[comp[a]] -= 1;
    }
    for f in trace_faces(ends, rot) {
        chi[comp[f[0].tail(ends)]] += 1;
    }
    // an isolated node has no darts but bounds one face
    for v in 0..nodes {
        if rot[v].is_empty() {
            chi[comp[v]] += 1;
        }
    }
    chi
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_has_two_faces() {
        let ends = vec![(0, 1), (1, 2), (2, 3), (3, 0)];
        let rot = vec![vec![3, 0], vec![0, 1], vec![1, 2], vec![2, 3]];
        let faces = trace_faces(&ends, &rot);
        assert_eq!(faces.len(), 2);
        assert!(faces.iter().all(|f| f.len() == 4));
        assert_eq!(euler_characteristics(4, &ends, &rot), vec![2]);
    }

    #[test]
    fn nonplanar_rotation_detected() {
        // K4 with a twisted rotation at one node
        let ends = vec![(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)];
        let good = vec![vec![0, 1, 2], vec![0, 5, 3], vec![1, 3, 4], vec![2, 4, 5]];
        let mut bad = good.clone();
        bad[0] = vec![0, 2, 1];
        let chi_good = euler_characteristics(4, &ends, &good)[0];
        let chi_bad = euler_characteristics(4, &ends, &bad)[0];
        assert!(chi_good == 2 || chi_bad == 2);
        assert_ne!(chi_good, chi_bad);
    }
}
