//! The Hoffman graph value type and its subgraph primitives.
//!
//! A Hoffman graph is a simple graph whose vertices carry one of two labels,
//! slim or fat. Fat vertices are pairwise non-adjacent and each has at least
//! one slim neighbor. Vertices `0..slim_count` are slim and the rest are fat;
//! every subgraph operation reindexes densely with the slim vertices first and
//! reports where each new vertex came from.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// Dense vertex index within a single graph.
pub type VertexId = usize;

const WORD: usize = 64;

fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

/// A validated Hoffman graph. Immutable once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HoffmanGraph {
    slim: usize,
    fat: usize,
    words: usize,
    rows: Vec<u64>,
}

/// Result of an induced-subgraph operation: the subgraph plus, for each of its
/// vertices, the vertex of the parent it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Induced {
    pub graph: HoffmanGraph,
    pub origin: Vec<VertexId>,
}

/// Unchecked adjacency builder. Callers that guarantee validity finish with
/// [`GraphBuilder::build`], which re-checks the Hoffman conditions in debug
/// builds.
#[derive(Clone, Debug)]
pub(crate) struct GraphBuilder {
    slim: usize,
    fat: usize,
    words: usize,
    rows: Vec<u64>,
}

impl GraphBuilder {
    pub(crate) fn new(slim: usize, fat: usize) -> Self {
        let n = slim + fat;
        let words = words_for(n);
        GraphBuilder {
            slim,
            fat,
            words,
            rows: vec![0; n * words],
        }
    }

    pub(crate) fn add_edge(&mut self, u: VertexId, v: VertexId) {
        debug_assert!(u != v);
        self.rows[u * self.words + v / WORD] |= 1 << (v % WORD);
        self.rows[v * self.words + u / WORD] |= 1 << (u % WORD);
    }

    pub(crate) fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.rows[u * self.words + v / WORD] >> (v % WORD) & 1 == 1
    }

    pub(crate) fn build(self) -> HoffmanGraph {
        let g = HoffmanGraph {
            slim: self.slim,
            fat: self.fat,
            words: self.words,
            rows: self.rows,
        };
        debug_assert_eq!(g.check(), Ok(()));
        g
    }

    pub(crate) fn try_build(self) -> Result<HoffmanGraph> {
        let g = HoffmanGraph {
            slim: self.slim,
            fat: self.fat,
            words: self.words,
            rows: self.rows,
        };
        g.check()?;
        Ok(g)
    }
}

impl HoffmanGraph {
    /// Validates raw vertex counts and an edge list. Never repairs the input.
    pub fn new(slim_count: usize, fat_count: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let n = slim_count + fat_count;
        let mut b = GraphBuilder::new(slim_count, fat_count);
        for &(u, v) in edges {
            if u == v {
                return Err(Error::MalformedEdge(u, v, "loop"));
            }
            if u >= n || v >= n {
                return Err(Error::MalformedEdge(u, v, "endpoint out of range"));
            }
            if b.has_edge(u, v) {
                return Err(Error::MalformedEdge(u, v, "duplicate edge"));
            }
            b.add_edge(u, v);
        }
        b.try_build()
    }

    /// The graph with no vertices.
    pub fn empty() -> Self {
        GraphBuilder::new(0, 0).build()
    }

    /// Checks the two Hoffman conditions.
    pub(crate) fn check(&self) -> Result<()> {
        for f in self.fat_vertices() {
            if let Some(g) = self.neighbors(f).find(|&g| g >= self.slim) {
                return Err(Error::FatFatEdge(f.min(g), f.max(g)));
            }
            if self.neighbors(f).next().is_none() {
                return Err(Error::IsolatedFat(f));
            }
        }
        Ok(())
    }

    pub fn slim_count(&self) -> usize {
        self.slim
    }

    pub fn fat_count(&self) -> usize {
        self.fat
    }

    /// Total number of vertices.
    pub fn order(&self) -> usize {
        self.slim + self.fat
    }

    pub fn is_empty(&self) -> bool {
        self.order() == 0
    }

    pub fn is_slim(&self, v: VertexId) -> bool {
        v < self.slim
    }

    pub fn slim_vertices(&self) -> std::ops::Range<VertexId> {
        0..self.slim
    }

    pub fn fat_vertices(&self) -> std::ops::Range<VertexId> {
        self.slim..self.order()
    }

    pub(crate) fn words(&self) -> usize {
        self.words
    }

    pub(crate) fn row(&self, v: VertexId) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.rows[u * self.words + v / WORD] >> (v % WORD) & 1 == 1
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.row(v).iter().enumerate().flat_map(|(w, &bits)| BitIter(bits).map(move |b| w * WORD + b))
    }

    pub fn slim_neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        let slim = self.slim;
        self.neighbors(v).take_while(move |&u| u < slim)
    }

    pub fn fat_neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        let slim = self.slim;
        self.neighbors(v).filter(move |&u| u >= slim)
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `|N_f(x) ∩ N_f(y)|`.
    pub fn common_fat_count(&self, x: VertexId, y: VertexId) -> usize {
        let (rx, ry) = (self.row(x), self.row(y));
        let first = self.slim / WORD;
        let mut count = 0;
        for w in first..self.words {
            let mut bits = rx[w] & ry[w];
            if w == first {
                bits &= !0u64 << (self.slim % WORD);
            }
            count += bits.count_ones() as usize;
        }
        count
    }

    pub fn edge_count(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// All edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.order() {
            out.extend(self.neighbors(u).filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    /// Every slim vertex has a fat neighbor.
    pub fn is_fat_graph(&self) -> bool {
        self.slim_vertices().all(|x| self.fat_neighbors(x).next().is_some())
    }

    /// The induced graph on the slim vertices.
    pub fn slim_subgraph(&self) -> SlimGraph {
        let mut b = GraphBuilder::new(self.slim, 0);
        for x in self.slim_vertices() {
            for y in self.slim_neighbors(x).filter(|&y| y > x) {
                b.add_edge(x, y);
            }
        }
        SlimGraph(b.build())
    }

    fn normalize(&self, set: &[VertexId]) -> Result<Vec<VertexId>> {
        let mut v = set.to_vec();
        v.sort_unstable();
        v.dedup();
        if let Some(&bad) = v.iter().find(|&&x| x >= self.order()) {
            return Err(Error::VertexOutOfRange(bad, self.order()));
        }
        Ok(v)
    }

    fn induced_sorted(&self, sorted: &[VertexId]) -> Result<Induced> {
        let mut index = vec![usize::MAX; self.order()];
        for (i, &v) in sorted.iter().enumerate() {
            index[v] = i;
        }
        let slim = sorted.iter().take_while(|&&v| v < self.slim).count();
        let mut b = GraphBuilder::new(slim, sorted.len() - slim);
        for (i, &v) in sorted.iter().enumerate() {
            for u in self.neighbors(v) {
                let j = index[u];
                if j != usize::MAX && j > i {
                    b.add_edge(i, j);
                }
            }
        }
        for &v in sorted.iter().skip(slim) {
            if !self.slim_neighbors(v).any(|u| index[u] != usize::MAX) {
                return Err(Error::InvalidInduced(v));
            }
        }
        Ok(Induced {
            graph: b.build(),
            origin: sorted.to_vec(),
        })
    }

    /// The Hoffman subgraph induced by `set`. Fails if a retained fat vertex
    /// would lose all of its slim neighbors.
    pub fn induced(&self, set: &[VertexId]) -> Result<Induced> {
        let sorted = self.normalize(set)?;
        self.induced_sorted(&sorted)
    }

    /// The subgraph induced by the slim vertices `slims` together with all of
    /// their fat neighbors.
    pub fn slim_closed_induced(&self, slims: &[VertexId]) -> Result<Induced> {
        let mut sorted = self.normalize(slims)?;
        if let Some(&bad) = sorted.iter().find(|&&x| x >= self.slim) {
            return Err(Error::NotSlim(bad));
        }
        let mut fats: Vec<VertexId> = sorted.iter().flat_map(|&x| self.fat_neighbors(x)).collect();
        fats.sort_unstable();
        fats.dedup();
        sorted.extend(fats);
        self.induced_sorted(&sorted)
    }

    /// The subgraph induced by everything except `set`.
    pub fn remove(&self, set: &[VertexId]) -> Result<Induced> {
        let drop = self.normalize(set)?;
        let keep: Vec<VertexId> = (0..self.order()).filter(|v| drop.binary_search(v).is_err()).collect();
        self.induced_sorted(&keep)
    }

    /// Relabels by `image[v]`, which must send slim vertices to slim positions.
    pub fn permuted(&self, image: &[VertexId]) -> HoffmanGraph {
        debug_assert!(self.slim_vertices().all(|v| image[v] < self.slim));
        let mut b = GraphBuilder::new(self.slim, self.fat);
        for (u, v) in self.edges() {
            b.add_edge(image[u], image[v]);
        }
        b.build()
    }
}

impl fmt::Debug for HoffmanGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HoffmanGraph")
            .field("slim", &self.slim)
            .field("fat", &self.fat)
            .field("edges", &self.edges())
            .finish()
    }
}

pub(crate) struct BitIter(pub(crate) u64);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(b)
    }
}

/// An ordinary graph, stored as a Hoffman graph without fat vertices.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SlimGraph(HoffmanGraph);

impl SlimGraph {
    pub fn new(vertex_count: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        HoffmanGraph::new(vertex_count, 0, edges).map(SlimGraph)
    }

    pub fn vertex_count(&self) -> usize {
        self.0.slim
    }

    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.0.adjacent(u, v)
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.0.neighbors(v)
    }

    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        self.0.edges()
    }

    pub fn as_hoffman(&self) -> &HoffmanGraph {
        &self.0
    }

    pub fn into_hoffman(self) -> HoffmanGraph {
        self.0
    }

    /// Same vertex set, complemented edge set.
    pub fn complement(&self) -> SlimGraph {
        let n = self.vertex_count();
        let mut b = GraphBuilder::new(n, 0);
        for u in 0..n {
            for v in u + 1..n {
                if !self.adjacent(u, v) {
                    b.add_edge(u, v);
                }
            }
        }
        SlimGraph(b.build())
    }

    /// The induced subgraph on `set`, reindexed in increasing order.
    pub fn induced(&self, set: &[VertexId]) -> Result<SlimGraph> {
        self.0.induced(set).map(|i| SlimGraph(i.graph))
    }

    /// Nonempty and connected. The empty graph is not connected.
    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for v in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == n
    }
}

impl TryFrom<HoffmanGraph> for SlimGraph {
    type Error = Error;

    fn try_from(g: HoffmanGraph) -> Result<Self> {
        match g.fat_vertices().next() {
            Some(f) => Err(Error::NotSlim(f)),
            None => Ok(SlimGraph(g)),
        }
    }
}

impl From<SlimGraph> for HoffmanGraph {
    fn from(g: SlimGraph) -> Self {
        g.0
    }
}

/// Connected components of the graph on `0..n` given by `adjacent`.
pub(crate) fn components(n: usize, adjacent: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut comp = vec![usize::MAX; n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        comp[s] = id;
        let mut members = vec![s];
        let mut i = 0;
        while i < members.len() {
            let u = members[i];
            i += 1;
            for (v, c) in comp.iter_mut().enumerate() {
                if *c == usize::MAX && adjacent(u, v) {
                    *c = id;
                    members.push(v);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h2() -> HoffmanGraph {
        HoffmanGraph::new(1, 2, &[(0, 1), (0, 2)]).unwrap()
    }

    fn h3() -> HoffmanGraph {
        HoffmanGraph::new(2, 1, &[(0, 2), (1, 2)]).unwrap()
    }

    fn h5() -> HoffmanGraph {
        HoffmanGraph::new(3, 1, &[(0, 1), (0, 3), (1, 3), (2, 3)]).unwrap()
    }

    fn h5p() -> HoffmanGraph {
        HoffmanGraph::new(3, 1, &[(0, 3), (1, 3), (2, 3)]).unwrap()
    }

    fn h1() -> HoffmanGraph {
        HoffmanGraph::new(1, 1, &[(0, 1)]).unwrap()
    }

    #[test]
    fn validate_examples() {
        assert_eq!(h1().edges(), vec![(0, 1)]);
        assert_eq!(HoffmanGraph::new(0, 1, &[]), Err(Error::IsolatedFat(0)));
        assert_eq!(
            HoffmanGraph::new(1, 2, &[(0, 1), (0, 2), (1, 2)]),
            Err(Error::FatFatEdge(1, 2))
        );
        assert!(matches!(HoffmanGraph::new(2, 0, &[(1, 1)]), Err(Error::MalformedEdge(1, 1, _))));
        assert!(matches!(HoffmanGraph::new(2, 0, &[(0, 2)]), Err(Error::MalformedEdge(0, 2, _))));
        assert!(matches!(
            HoffmanGraph::new(2, 0, &[(0, 1), (1, 0)]),
            Err(Error::MalformedEdge(1, 0, _))
        ));
        assert!(HoffmanGraph::empty().is_empty());
    }

    #[test]
    fn slim_subgraphs() {
        let s = h2().slim_subgraph();
        assert_eq!(s.vertex_count(), 1);
        assert!(s.edges().is_empty());
        let s = h3().slim_subgraph();
        assert_eq!(s.vertex_count(), 2);
        assert!(s.edges().is_empty());
    }

    #[test]
    fn induced_examples() {
        let g = h5();
        let all: Vec<_> = (0..g.order()).collect();
        assert_eq!(g.induced(&all).unwrap().graph, g);
        assert_eq!(h5p().induced(&[1, 3]).unwrap().graph, h1());
        let k1 = h2().induced(&[0]).unwrap().graph;
        assert_eq!((k1.slim_count(), k1.fat_count()), (1, 0));
        assert_eq!(h2().induced(&[1]), Err(Error::InvalidInduced(1)));
        assert_eq!(h2().induced(&[7]), Err(Error::VertexOutOfRange(7, 3)));
    }

    #[test]
    fn slim_closed_examples() {
        let g = h5();
        assert_eq!(g.slim_closed_induced(&[0, 1, 2]).unwrap().graph, g);
        let pair = g.slim_closed_induced(&[0, 1]).unwrap();
        assert_eq!(pair.graph, HoffmanGraph::new(2, 1, &[(0, 1), (0, 2), (1, 2)]).unwrap());
        assert_eq!(pair.origin, vec![0, 1, 3]);
        assert_eq!(g.slim_closed_induced(&[0, 2]).unwrap().graph, h3());
        assert_eq!(g.slim_closed_induced(&[3]), Err(Error::NotSlim(3)));
    }

    #[test]
    fn remove_examples() {
        assert_eq!(h3().remove(&[0]).unwrap().graph, h1());
        assert_eq!(h3().remove(&[]).unwrap().graph, h3());
        assert_eq!(h2().remove(&[2]).unwrap().graph, h1());
        assert_eq!(h2().remove(&[0]), Err(Error::InvalidInduced(1)));
    }

    #[test]
    fn complement_examples() {
        let k3 = SlimGraph::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert!(k3.complement().edges().is_empty());
        let p3 = SlimGraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3.complement().edges(), vec![(0, 2)]);
        assert_eq!(p3.complement().complement(), p3);
    }

    #[test]
    fn connectivity() {
        assert!(SlimGraph::new(1, &[]).unwrap().is_connected());
        assert!(!SlimGraph::new(2, &[]).unwrap().is_connected());
        assert!(!SlimGraph::new(0, &[]).unwrap().is_connected());
        let oct = SlimGraph::new(6, &[(0, 1), (0, 2), (0, 4), (0, 5), (1, 2), (1, 3), (1, 5), (2, 3), (2, 4), (3, 4), (3, 5), (4, 5)]).unwrap();
        assert!(oct.is_connected());
    }

    #[test]
    fn common_fats_across_word_boundary() {
        // 70 slims force the fat range to start mid-word.
        let slim = 70;
        let edges = vec![(0, 70), (1, 70), (0, 71), (1, 71), (0, 1)];
        let mut all = edges.clone();
        for x in 2..slim {
            all.push((x, 72));
        }
        let g = HoffmanGraph::new(slim, 3, &all).unwrap();
        assert_eq!(g.common_fat_count(0, 1), 2);
        assert_eq!(g.common_fat_count(2, 3), 1);
        assert_eq!(g.common_fat_count(0, 2), 0);
        assert_eq!(g.fat_neighbors(0).collect::<Vec<_>>(), vec![70, 71]);
    }
}
