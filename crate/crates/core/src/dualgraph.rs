//! Stable dual graphs: the combinatorial modular operad.
//!
//! A [`DualGraph`] has genus-labelled vertices, a multiset of edges (self-loops
//! allowed) and legs labelled `1..=n`. Grafting glues leg 1 of the second
//! graph to leg `i` of the first; contraction joins two legs of one graph.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permops::{close_up, Permutation};

pub const DEFAULT_VERTEX_CAP: usize = 8;

/// `n >= 3 - 2g`.
pub fn is_stable(g: u32, n: usize) -> bool {
    n as i64 >= 3 - 2 * g as i64
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GradedSignature {
    pub g: u32,
    pub n: usize,
}

impl GradedSignature {
    pub fn new(g: u32, n: usize) -> Result<Self> {
        if !is_stable(g, n) {
            return Err(Error::validation(format!("signature ({g},{n}) is unstable")));
        }
        Ok(GradedSignature { g, n })
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DualGraph {
    genera: Vec<u32>,
    edges: Vec<(usize, usize)>,
    legs: Vec<usize>,
}

impl DualGraph {
    /// `legs[l - 1]` is the vertex carrying leg `l`.
    pub fn new(genera: Vec<u32>, edges: Vec<(usize, usize)>, legs: Vec<usize>) -> Result<Self> {
        let v = genera.len();
        if v == 0 {
            return Err(Error::validation("a dual graph needs at least one vertex"));
        }
        if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a >= v || b >= v) {
            return Err(Error::validation(format!("edge ({a},{b}) references a missing vertex")));
        }
        if let Some(l) = legs.iter().position(|&x| x >= v) {
            return Err(Error::validation(format!("leg {} references a missing vertex", l + 1)));
        }
        let mut edges: Vec<(usize, usize)> =
            edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        edges.sort_unstable();
        let g = DualGraph { genera, edges, legs };
        if !g.is_connected() {
            return Err(Error::validation("dual graph is not connected"));
        }
        for vert in 0..v {
            let valence = g.valence(vert);
            if !is_stable(g.genera[vert], valence) {
                return Err(Error::validation(format!(
                    "vertex {vert} (genus {}) has valence {valence} and is unstable",
                    g.genera[vert]
                )));
            }
        }
        Ok(g)
    }

    /// One vertex of genus `g` carrying legs `1..=n`.
    pub fn corolla(g: u32, n: usize) -> Result<Self> {
        DualGraph::new(vec![g], vec![], vec![0; n])
    }

    pub fn genera(&self) -> &[u32] {
        &self.genera
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn legs(&self) -> &[usize] {
        &self.legs
    }

    pub fn vertex_count(&self) -> usize {
        self.genera.len()
    }

    pub fn leg_count(&self) -> usize {
        self.legs.len()
    }

    /// Legs plus edge-ends at `v`; a self-loop contributes two ends.
    pub fn valence(&self, v: usize) -> usize {
        let legs = self.legs.iter().filter(|&&x| x == v).count();
        let ends: usize = self
            .edges
            .iter()
            .map(|&(a, b)| usize::from(a == v) + usize::from(b == v))
            .sum();
        legs + ends
    }

    fn is_connected(&self) -> bool {
        let n = self.genera.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        let root = find(&mut parent, 0);
        (0..n).all(|x| find(&mut parent, x) == root)
    }

    /// Sum of vertex genera plus the first Betti number.
    pub fn total_genus(&self) -> u32 {
        let betti = self.edges.len() + 1 - self.genera.len();
        self.genera.iter().sum::<u32>() + betti as u32
    }

    pub fn signature(&self) -> GradedSignature {
        GradedSignature { g: self.total_genus(), n: self.leg_count() }
    }

    /// `G1 ∘_i G2`: leg `i` of `self` and leg 1 of `other` become an edge.
    /// Legs `1..i` keep their labels, legs `2..=n` of `other` become
    /// `i..=i+n-2`, and legs `i+1..=m` of `self` move up by `n - 2`.
    pub fn graft(&self, i: usize, other: &DualGraph) -> Result<DualGraph> {
        let (m, n) = (self.leg_count(), other.leg_count());
        if m == 0 || n == 0 {
            return Err(Error::index("grafting needs a leg on both graphs"));
        }
        if i == 0 || i > m {
            return Err(Error::index(format!("leg {i} outside 1..={m}")));
        }
        let off = self.vertex_count();
        let mut genera = self.genera.clone();
        genera.extend_from_slice(&other.genera);
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(a, b)| (a + off, b + off)));
        edges.push((self.legs[i - 1], other.legs[0] + off));
        let mut legs = Vec::with_capacity(m + n - 2);
        legs.extend_from_slice(&self.legs[..i - 1]);
        legs.extend(other.legs[1..].iter().map(|&v| v + off));
        legs.extend_from_slice(&self.legs[i..]);
        DualGraph::new(genera, edges, legs)
    }

    /// `ξ_ij`: legs `i`, `j` become an edge; remaining labels close up in order.
    pub fn contract(&self, i: usize, j: usize) -> Result<DualGraph> {
        let n = self.leg_count();
        if i == j {
            return Err(Error::index(format!("cannot contract leg {i} with itself")));
        }
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::index(format!("legs {i}, {j} outside 1..={n}")));
        }
        let mut edges = self.edges.clone();
        edges.push((self.legs[i - 1], self.legs[j - 1]));
        let legs = (1..=n)
            .filter(|&l| close_up(i, j, l).is_some())
            .map(|l| self.legs[l - 1])
            .collect();
        DualGraph::new(self.genera.clone(), edges, legs)
    }

    /// Leg labelled `l` becomes labelled `rho(l)`.
    pub fn relabel(&self, rho: &Permutation) -> Result<DualGraph> {
        if rho.len() != self.leg_count() {
            return Err(Error::Dimension(format!(
                "permutation of {} letters on a graph with {} legs",
                rho.len(),
                self.leg_count()
            )));
        }
        let mut legs = vec![0; self.legs.len()];
        for (l, &v) in self.legs.iter().enumerate() {
            legs[rho.apply(l + 1) - 1] = v;
        }
        Ok(DualGraph { genera: self.genera.clone(), edges: self.edges.clone(), legs })
    }

    pub fn canonical_form(&self) -> Result<CanonicalGraph> {
        self.canonical_form_with_cap(DEFAULT_VERTEX_CAP)
    }

    /// Minimal encoding over all vertex orders compatible with an
    /// iso-invariant colour refinement.
    pub fn canonical_form_with_cap(&self, cap: usize) -> Result<CanonicalGraph> {
        let nv = self.vertex_count();
        if nv > cap {
            return Err(Error::CapExceeded { vertices: nv, cap });
        }
        let colours = self.refined_colours();
        let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (v, &c) in colours.iter().enumerate() {
            classes.entry(c).or_default().push(v);
        }
        let classes: Vec<Vec<usize>> = classes.into_values().collect();
        let mut best: Option<CanonicalGraph> = None;
        let mut order = Vec::with_capacity(nv);
        self.search_orders(&classes, 0, &mut vec![false; nv], &mut order, &mut best);
        Ok(best.expect("at least one vertex order"))
    }

    fn search_orders(
        &self,
        classes: &[Vec<usize>],
        class: usize,
        used: &mut Vec<bool>,
        order: &mut Vec<usize>,
        best: &mut Option<CanonicalGraph>,
    ) {
        if class == classes.len() {
            let enc = self.encode(order);
            if best.as_ref().is_none_or(|b| enc < *b) {
                *best = Some(enc);
            }
            return;
        }
        let members = &classes[class];
        let placed = members.iter().filter(|&&v| used[v]).count();
        if placed == members.len() {
            self.search_orders(classes, class + 1, used, order, best);
            return;
        }
        for &v in members {
            if used[v] {
                continue;
            }
            used[v] = true;
            order.push(v);
            self.search_orders(classes, class, used, order, best);
            order.pop();
            used[v] = false;
        }
    }

    /// `order[k]` is the old vertex placed at position `k`.
    fn encode(&self, order: &[usize]) -> CanonicalGraph {
        let mut pos = vec![0; order.len()];
        for (k, &v) in order.iter().enumerate() {
            pos[v] = k;
        }
        let genera = order.iter().map(|&v| self.genera[v]).collect();
        let mut edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (pos[a], pos[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        edges.sort_unstable();
        let legs = self.legs.iter().map(|&v| pos[v]).collect();
        CanonicalGraph { genera, edges, legs }
    }

    fn refined_colours(&self) -> Vec<usize> {
        let nv = self.vertex_count();
        let mut leg_sets: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for (l, &v) in self.legs.iter().enumerate() {
            leg_sets[v].push(l + 1);
        }
        let initial: Vec<(u32, Vec<usize>, usize)> =
            (0..nv).map(|v| (self.genera[v], leg_sets[v].clone(), self.valence(v))).collect();
        let mut colours = rank(&initial);
        loop {
            let sigs: Vec<(usize, Vec<usize>)> = (0..nv)
                .map(|v| {
                    let mut nb: Vec<usize> = Vec::new();
                    for &(a, b) in &self.edges {
                        if a == v {
                            nb.push(colours[b]);
                        }
                        if b == v {
                            nb.push(colours[a]);
                        }
                    }
                    nb.sort_unstable();
                    (colours[v], nb)
                })
                .collect();
            let next = rank(&sigs);
            let count = |c: &[usize]| c.iter().collect::<std::collections::BTreeSet<_>>().len();
            if count(&next) == count(&colours) {
                return next;
            }
            colours = next;
        }
    }
}

fn rank<T: Ord + Clone>(sigs: &[T]) -> Vec<usize> {
    let mut sorted: Vec<T> = sigs.to_vec();
    sorted.sort();
    sorted.dedup();
    sigs.iter().map(|s| sorted.binary_search(s).unwrap()).collect()
}

/// Isomorphism-class encoding: equal iff the graphs are isomorphic
/// respecting leg labels and vertex genera.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct CanonicalGraph {
    genera: Vec<u32>,
    edges: Vec<(usize, usize)>,
    legs: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct VertexWire {
    genus: u32,
}

#[derive(Serialize, Deserialize)]
struct GraphWire {
    vertices: Vec<VertexWire>,
    edges: Vec<[usize; 2]>,
    legs: Vec<(usize, usize)>,
}

impl Serialize for DualGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphWire {
            vertices: self.genera.iter().map(|&genus| VertexWire { genus }).collect(),
            edges: self.edges.iter().map(|&(a, b)| [a, b]).collect(),
            legs: self.legs.iter().enumerate().map(|(l, &v)| (l + 1, v)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DualGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = GraphWire::deserialize(d)?;
        let n = w.legs.len();
        let mut legs = vec![usize::MAX; n];
        for (label, v) in w.legs {
            if label == 0 || label > n || legs[label - 1] != usize::MAX {
                return Err(D::Error::custom(format!("leg labels must be exactly 1..={n}")));
            }
            legs[label - 1] = v;
        }
        DualGraph::new(
            w.vertices.into_iter().map(|v| v.genus).collect(),
            w.edges.into_iter().map(|[a, b]| (a, b)).collect(),
            legs,
        )
        .map_err(D::Error::custom)
    }
}

/// Random stable connected graph with exactly `legs` legs and at most
/// `max_vertices` vertices, by rejection sampling.
pub fn random_graph<R: Rng>(rng: &mut R, legs: usize, max_vertices: usize, max_genus: u32) -> DualGraph {
    loop {
        let nv = rng.gen_range(1..=max_vertices.max(1));
        let genera: Vec<u32> = (0..nv).map(|_| rng.gen_range(0..=max_genus)).collect();
        let mut edges: Vec<(usize, usize)> = (1..nv).map(|v| (rng.gen_range(0..v), v)).collect();
        let extra = rng.gen_range(0..=1);
        for _ in 0..extra {
            edges.push((rng.gen_range(0..nv), rng.gen_range(0..nv)));
        }
        let leg_vertices: Vec<usize> = (0..legs).map(|_| rng.gen_range(0..nv)).collect();
        if let Ok(g) = DualGraph::new(genera, edges, leg_vertices) {
            return g;
        }
    }
}
