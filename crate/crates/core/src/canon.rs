//! Canonical labeling and automorphism groups of slim/fat labeled graphs.
//!
//! The search is individualization-refinement: an ordered vertex partition is
//! refined to equitable, a vertex of the first non-singleton cell is
//! individualized, and the process repeats until the partition is discrete.
//! Each node carries a trace of its refinement; the canonical leaf minimizes
//! (trace sequence, adjacency bits). Automorphisms found on the way prune
//! sibling subtrees in the same orbit of the pointwise stabilizer of the
//! current prefix.
//!
//! The group order comes from the stabilizer chain along the first path: at
//! every level, each vertex of the target cell is either already in the orbit
//! of the first-path choice or is tested for an automorphism mapping onto it.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{HoffmanGraph, VertexId};

/// A vertex permutation in image notation: `images()[v]` is the image of `v`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<VertexId>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// `images` must be a bijection on `0..images.len()`.
    pub fn from_images(images: Vec<VertexId>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Permutation(images))
    }

    pub fn images(&self) -> &[VertexId] {
        &self.0
    }

    pub fn apply(&self, v: VertexId) -> VertexId {
        self.0[v]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v] = i;
        }
        Permutation(inv)
    }

    /// `self` after `first`: `v -> self(first(v))`.
    pub fn after(&self, first: &Permutation) -> Permutation {
        Permutation(first.0.iter().map(|&v| self.0[v]).collect())
    }

    /// Whether the permutation maps `g` onto itself, labels included.
    pub fn is_automorphism_of(&self, g: &HoffmanGraph) -> bool {
        self.0.len() == g.order()
            && (0..g.order()).all(|v| g.is_slim(v) == g.is_slim(self.0[v]))
            && g.edges().iter().all(|&(u, v)| g.adjacent(self.0[u], self.0[v]))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.0 {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Canonical certificate plus the relabeling onto the canonical
/// representative. Equal certificates iff isomorphic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CanonicalForm {
    certificate: Vec<u8>,
    relabeling: Permutation,
}

impl CanonicalForm {
    pub fn certificate(&self) -> &[u8] {
        &self.certificate
    }

    pub fn hex(&self) -> String {
        hex::encode(&self.certificate)
    }

    /// Maps each original vertex to its canonical position. Slim vertices
    /// stay in the slim range.
    pub fn relabeling(&self) -> &Permutation {
        &self.relabeling
    }

    pub fn into_certificate(self) -> Vec<u8> {
        self.certificate
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AutomorphismGroup {
    generators: Vec<Permutation>,
    order: u128,
}

impl AutomorphismGroup {
    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }
}

type Cells = Vec<Vec<VertexId>>;
type Trace = Vec<u32>;

struct Leaf {
    traces: Vec<Trace>,
    cert: Vec<u8>,
    lab: Vec<VertexId>,
}

struct Node {
    cells: Cells,
    trace: Trace,
}

struct Search<'a> {
    g: &'a HoffmanGraph,
    gens: Vec<Vec<VertexId>>,
}

/// Union-find orbits of the generators that fix `prefix` pointwise.
fn orbits(n: usize, gens: &[Vec<VertexId>], prefix: &[VertexId]) -> Vec<VertexId> {
    let mut parent: Vec<VertexId> = (0..n).collect();
    fn find(p: &mut [VertexId], mut v: VertexId) -> VertexId {
        while p[v] != v {
            p[v] = p[p[v]];
            v = p[v];
        }
        v
    }
    for gen in gens.iter().filter(|g| prefix.iter().all(|&p| g[p] == p)) {
        for (v, &w) in gen.iter().enumerate() {
            let (a, b) = (find(&mut parent, v), find(&mut parent, w));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    (0..n).map(|v| find(&mut parent, v)).collect()
}

impl<'a> Search<'a> {
    fn new(g: &'a HoffmanGraph) -> Self {
        Search { g, gens: Vec::new() }
    }

    fn initial(&self, colors: &[u32]) -> Node {
        let mut keys: Vec<u32> = colors.to_vec();
        keys.sort_unstable();
        keys.dedup();
        let cells: Cells = keys
            .iter()
            .map(|&k| (0..colors.len()).filter(|&v| colors[v] == k).collect())
            .collect();
        let mut trace: Trace = cells.iter().map(|c| c.len() as u32).collect();
        let mut node = Node { cells, trace: Vec::new() };
        self.refine(&mut node.cells, &mut trace);
        node.trace = trace;
        node
    }

    /// Refines `cells` to an equitable partition, appending a label-free
    /// record of every split to `trace`.
    fn refine(&self, cells: &mut Cells, trace: &mut Trace) {
        let words = self.g.words();
        let mut mask = vec![0u64; words];
        let mut s = 0;
        while s < cells.len() {
            mask.iter_mut().for_each(|w| *w = 0);
            for &v in &cells[s] {
                mask[v / 64] |= 1 << (v % 64);
            }
            let mut out: Cells = Vec::with_capacity(cells.len() + 1);
            let mut split = false;
            for (ci, cell) in cells.iter().enumerate() {
                if cell.len() == 1 {
                    out.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(u32, VertexId)> = cell
                    .iter()
                    .map(|&v| {
                        let row = self.g.row(v);
                        let c: u32 = row.iter().zip(&mask).map(|(a, b)| (a & b).count_ones()).sum();
                        (c, v)
                    })
                    .collect();
                if keyed.iter().all(|k| k.0 == keyed[0].0) {
                    out.push(cell.clone());
                    continue;
                }
                keyed.sort_unstable();
                split = true;
                trace.extend([u32::MAX, s as u32, ci as u32]);
                let mut start = 0;
                while start < keyed.len() {
                    let c = keyed[start].0;
                    let end = start + keyed[start..].iter().take_while(|k| k.0 == c).count();
                    trace.extend([c, (end - start) as u32]);
                    out.push(keyed[start..end].iter().map(|k| k.1).collect());
                    start = end;
                }
            }
            if split {
                *cells = out;
                s = 0;
            } else {
                s += 1;
            }
        }
        trace.push(cells.len() as u32);
    }

    fn child(&self, node: &Node, v: VertexId) -> Node {
        let mut cells: Cells = Vec::with_capacity(node.cells.len() + 1);
        let mut trace = Vec::new();
        for (ci, c) in node.cells.iter().enumerate() {
            if c.len() > 1 && c.contains(&v) {
                trace.push(ci as u32);
                cells.push(vec![v]);
                cells.push(c.iter().copied().filter(|&u| u != v).collect());
            } else {
                cells.push(c.clone());
            }
        }
        self.refine(&mut cells, &mut trace);
        Node { cells, trace }
    }

    fn target(cells: &Cells) -> Option<usize> {
        cells.iter().position(|c| c.len() > 1)
    }

    fn certificate(&self, lab: &[VertexId]) -> Vec<u8> {
        let g = self.g;
        let n = lab.len();
        let mut out = Vec::with_capacity(9 + n * n / 16 + 1);
        out.push(b'H');
        out.extend((g.slim_count() as u32).to_be_bytes());
        out.extend((g.fat_count() as u32).to_be_bytes());
        let mut acc = 0u8;
        let mut used = 0;
        for i in 0..n {
            let row = g.row(lab[i]);
            for &lj in &lab[i + 1..] {
                acc = acc << 1 | (row[lj / 64] >> (lj % 64) & 1) as u8;
                used += 1;
                if used == 8 {
                    out.push(acc);
                    acc = 0;
                    used = 0;
                }
            }
        }
        if used > 0 {
            out.push(acc << (8 - used));
        }
        out
    }

    fn lab(cells: &Cells) -> Vec<VertexId> {
        cells.iter().map(|c| c[0]).collect()
    }

    fn add_generator(&mut self, from: &[VertexId], to: &[VertexId]) {
        let mut gamma = vec![0; from.len()];
        for (&a, &b) in from.iter().zip(to) {
            gamma[a] = b;
        }
        if gamma.iter().enumerate().all(|(i, &v)| i == v) || self.gens.contains(&gamma) {
            return;
        }
        debug_assert!(Permutation(gamma.clone()).is_automorphism_of(self.g));
        self.gens.push(gamma);
    }

    fn first_path(&self, root: Node) -> (Vec<Node>, Vec<VertexId>) {
        let mut nodes = vec![root];
        let mut chosen = Vec::new();
        while let Some(t) = Self::target(&nodes.last().unwrap().cells) {
            let v = nodes.last().unwrap().cells[t][0];
            let next = self.child(nodes.last().unwrap(), v);
            chosen.push(v);
            nodes.push(next);
        }
        (nodes, chosen)
    }

    /// Looks below `node` (at `depth` on the first path) for a leaf that
    /// matches the first leaf, returning it.
    fn find_match(
        &self,
        node: &Node,
        depth: usize,
        prefix: &mut Vec<VertexId>,
        path: &[Node],
        first_cert: &[u8],
    ) -> Option<Vec<VertexId>> {
        if node.trace != path[depth].trace {
            return None;
        }
        let Some(t) = Self::target(&node.cells) else {
            let lab = Self::lab(&node.cells);
            return (self.certificate(&lab) == first_cert).then_some(lab);
        };
        let orb = orbits(self.g.order(), &self.gens, prefix);
        let mut failed: Vec<VertexId> = Vec::new();
        for &u in &node.cells[t] {
            if failed.iter().any(|&f| orb[f] == orb[u]) {
                continue;
            }
            let c = self.child(node, u);
            prefix.push(u);
            let found = self.find_match(&c, depth + 1, prefix, path, first_cert);
            prefix.pop();
            if found.is_some() {
                return found;
            }
            failed.push(u);
        }
        None
    }

    /// Exact group order via the stabilizer chain along the first path.
    fn group(&mut self, path: &[Node], chosen: &[VertexId]) -> u128 {
        let n = self.g.order();
        let first_lab = Self::lab(&path.last().unwrap().cells);
        let first_cert = self.certificate(&first_lab);
        let mut order: u128 = 1;
        for level in (0..chosen.len()).rev() {
            let node = &path[level];
            let v = chosen[level];
            let prefix = &chosen[..level];
            let t = Self::target(&node.cells).expect("first path node has a target cell");
            let mut orb = orbits(n, &self.gens, prefix);
            for &w in &node.cells[t] {
                if orb[w] == orb[v] {
                    continue;
                }
                let c = self.child(node, w);
                let mut pre = prefix.to_vec();
                pre.push(w);
                if let Some(lab) = self.find_match(&c, level + 1, &mut pre, path, &first_cert) {
                    self.add_generator(&first_lab, &lab);
                    orb = orbits(n, &self.gens, prefix);
                }
            }
            let size = (0..n).filter(|&u| orb[u] == orb[v]).count() as u128;
            order = order.checked_mul(size).expect("automorphism group order overflows u128");
        }
        order
    }

    fn canon(&mut self, node: &Node, traces: &mut Vec<Trace>, prefix: &mut Vec<VertexId>, best: &mut Option<Leaf>) {
        traces.push(node.trace.clone());
        let mut prune = false;
        if let Some(b) = best.as_ref() {
            let d = traces.len().min(b.traces.len());
            prune = traces[..d].cmp(&b.traces[..d]) == Ordering::Greater;
        }
        if !prune {
            match Self::target(&node.cells) {
                None => {
                    let lab = Self::lab(&node.cells);
                    let cert = self.certificate(&lab);
                    let ord = match best.as_ref() {
                        None => Ordering::Less,
                        Some(b) => (traces.as_slice(), cert.as_slice()).cmp(&(b.traces.as_slice(), b.cert.as_slice())),
                    };
                    match ord {
                        Ordering::Less => {
                            *best = Some(Leaf {
                                traces: traces.clone(),
                                cert,
                                lab,
                            })
                        }
                        Ordering::Equal => {
                            let from = best.as_ref().unwrap().lab.clone();
                            self.add_generator(&from, &lab);
                        }
                        Ordering::Greater => {}
                    }
                }
                Some(t) => {
                    let mut explored: Vec<VertexId> = Vec::new();
                    for &u in &node.cells[t] {
                        let orb = orbits(self.g.order(), &self.gens, prefix);
                        if explored.iter().any(|&e| orb[e] == orb[u]) {
                            continue;
                        }
                        explored.push(u);
                        let c = self.child(node, u);
                        prefix.push(u);
                        self.canon(&c, traces, prefix, best);
                        prefix.pop();
                    }
                }
            }
        }
        traces.pop();
    }
}

struct Analysis {
    form: CanonicalForm,
    group: AutomorphismGroup,
}

fn analyze(g: &HoffmanGraph, colors: &[u32]) -> Analysis {
    let mut s = Search::new(g);
    let root = s.initial(colors);
    let (path, chosen) = s.first_path(Node {
        cells: root.cells.clone(),
        trace: root.trace.clone(),
    });
    let order = s.group(&path, &chosen);
    let mut best = None;
    s.canon(&root, &mut Vec::new(), &mut Vec::new(), &mut best);
    let best = best.expect("search tree has a leaf");
    let mut relabeling = vec![0; g.order()];
    for (pos, &v) in best.lab.iter().enumerate() {
        relabeling[v] = pos;
    }
    let mut generators: Vec<Permutation> = s.gens.into_iter().map(Permutation).collect();
    generators.sort();
    Analysis {
        form: CanonicalForm {
            certificate: best.cert,
            relabeling: Permutation(relabeling),
        },
        group: AutomorphismGroup { generators, order },
    }
}

fn label_colors(g: &HoffmanGraph) -> Vec<u32> {
    (0..g.order()).map(|v| (!g.is_slim(v)) as u32).collect()
}

pub fn canonical_form(h: &HoffmanGraph) -> CanonicalForm {
    analyze(h, &label_colors(h)).form
}

/// Canonical form and full automorphism group from a single search.
pub fn canonical_form_and_group(h: &HoffmanGraph) -> (CanonicalForm, AutomorphismGroup) {
    let a = analyze(h, &label_colors(h));
    (a.form, a.group)
}

/// The canonical representative of `h`'s isomorphism class.
pub fn canonical_graph(h: &HoffmanGraph) -> (HoffmanGraph, CanonicalForm) {
    let form = canonical_form(h);
    (h.permuted(form.relabeling().images()), form)
}

pub fn is_isomorphic(a: &HoffmanGraph, b: &HoffmanGraph) -> bool {
    a.slim_count() == b.slim_count()
        && a.fat_count() == b.fat_count()
        && a.edge_count() == b.edge_count()
        && canonical_form(a).certificate == canonical_form(b).certificate
}

/// Label-preserving automorphisms.
pub fn automorphism_group(h: &HoffmanGraph) -> AutomorphismGroup {
    analyze(h, &label_colors(h)).group
}

/// Automorphisms fixing every slim vertex.
pub fn slim_fixing_automorphisms(h: &HoffmanGraph) -> AutomorphismGroup {
    let s = h.slim_count() as u32;
    let colors: Vec<u32> = (0..h.order()).map(|v| if h.is_slim(v) { v as u32 } else { s }).collect();
    analyze(h, &colors).group
}

/// Whether some isomorphism `a -> b` restricts to `shared_slim` on the slim
/// vertices. With `shared_slim` the identity this is equivalence of covers.
///
/// Fat vertices only see slim vertices, so such an isomorphism must send each
/// fat vertex of `a` to a fat vertex of `b` with the corresponding slim
/// neighborhood; a bijection exists iff the multisets of mapped
/// neighborhoods agree.
pub fn cover_equivalent(a: &HoffmanGraph, b: &HoffmanGraph, shared_slim: &[VertexId]) -> Result<bool> {
    let s = a.slim_count();
    if b.slim_count() != s || shared_slim.len() != s || Permutation::from_images(shared_slim.to_vec()).is_none() {
        return Err(Error::SlimMismatch);
    }
    for x in 0..s {
        for y in x + 1..s {
            if a.adjacent(x, y) != b.adjacent(shared_slim[x], shared_slim[y]) {
                return Err(Error::SlimMismatch);
            }
        }
    }
    if a.fat_count() != b.fat_count() {
        return Ok(false);
    }
    let mut left: Vec<Vec<VertexId>> = a
        .fat_vertices()
        .map(|f| {
            let mut n: Vec<VertexId> = a.slim_neighbors(f).map(|x| shared_slim[x]).collect();
            n.sort_unstable();
            n
        })
        .collect();
    let mut right: Vec<Vec<VertexId>> = b.fat_vertices().map(|f| b.slim_neighbors(f).collect()).collect();
    left.sort();
    right.sort();
    Ok(left == right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::Catalog;
    use crate::graph::SlimGraph;
    use proptest::prelude::*;

    fn octahedron() -> HoffmanGraph {
        SlimGraph::new(6, &[(0, 1), (0, 2), (0, 4), (0, 5), (1, 2), (1, 3), (1, 5), (2, 3), (2, 4), (3, 4), (3, 5), (4, 5)])
            .unwrap()
            .into_hoffman()
    }

    /// Brute-force oracle: every label-preserving permutation.
    fn brute_force_auts(g: &HoffmanGraph) -> u128 {
        fn rec(g: &HoffmanGraph, img: &mut Vec<usize>, used: &mut Vec<bool>, count: &mut u128) {
            let v = img.len();
            if v == g.order() {
                *count += 1;
                return;
            }
            for w in 0..g.order() {
                if used[w] || g.is_slim(v) != g.is_slim(w) {
                    continue;
                }
                if (0..v).any(|u| g.adjacent(u, v) != g.adjacent(img[u], w)) {
                    continue;
                }
                used[w] = true;
                img.push(w);
                rec(g, img, used, count);
                img.pop();
                used[w] = false;
            }
        }
        let mut count = 0;
        rec(g, &mut Vec::new(), &mut vec![false; g.order()], &mut count);
        count
    }

    #[test]
    fn group_orders() {
        assert_eq!(automorphism_group(&Catalog::H2.graph()).order(), 2);
        assert_eq!(automorphism_group(&Catalog::H3.graph()).order(), 2);
        assert_eq!(brute_force_auts(&octahedron()), 48);
        assert_eq!(automorphism_group(&octahedron()).order(), 48);
        assert_eq!(automorphism_group(&HoffmanGraph::empty()).order(), 1);
        for gen in automorphism_group(&octahedron()).generators() {
            assert!(gen.is_automorphism_of(&octahedron()));
        }
    }

    #[test]
    fn slim_fixing_examples() {
        assert_eq!(slim_fixing_automorphisms(&Catalog::H2.graph()).order(), 2);
        assert_eq!(slim_fixing_automorphisms(&Catalog::H3.graph()).order(), 1);
        assert_eq!(slim_fixing_automorphisms(&Catalog::H5.graph()).order(), 1);
    }

    #[test]
    fn certificates_separate_labels() {
        let h1 = Catalog::H1.graph();
        let h2 = Catalog::H2.graph();
        assert_ne!(canonical_form(&h1).certificate(), canonical_form(&h2).certificate());
        // same underlying graph (a path on three vertices), different labels
        let a = HoffmanGraph::new(2, 1, &[(0, 2), (1, 2)]).unwrap();
        let b = HoffmanGraph::new(3, 0, &[(0, 2), (1, 2)]).unwrap();
        assert!(!is_isomorphic(&a, &b));
        let shared = HoffmanGraph::new(2, 1, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert!(!is_isomorphic(&Catalog::H3.graph(), &shared));
    }

    #[test]
    fn canonical_graph_is_fixed_point() {
        let g = Catalog::H5.graph();
        let (c, form) = canonical_graph(&g);
        let (c2, form2) = canonical_graph(&c);
        assert_eq!(c, c2);
        assert_eq!(form.certificate(), form2.certificate());
        assert!(form2.relabeling().is_identity() || automorphism_group(&c).order() > 1);
    }

    #[test]
    fn cover_equivalence_basics() {
        let g = Catalog::H5.graph();
        assert_eq!(cover_equivalent(&g, &g, &[0, 1, 2]), Ok(true));
        assert_eq!(cover_equivalent(&g, &g, &[1, 0, 2]), Ok(true));
        assert_eq!(cover_equivalent(&g, &g, &[0, 2, 1]), Err(Error::SlimMismatch));
        assert_eq!(cover_equivalent(&g, &g, &[0, 1]), Err(Error::SlimMismatch));
    }

    fn arb_hoffman(max_slim: usize, max_fat: usize) -> impl Strategy<Value = HoffmanGraph> {
        (1..=max_slim, 0..=max_fat).prop_flat_map(|(s, f)| {
            let slim_pairs = s * (s - 1) / 2;
            (
                proptest::collection::vec(any::<bool>(), slim_pairs),
                proptest::collection::vec(1u32..(1 << s), f),
            )
                .prop_map(move |(se, masks)| {
                    let mut edges = Vec::new();
                    let mut k = 0;
                    for u in 0..s {
                        for v in u + 1..s {
                            if se[k] {
                                edges.push((u, v));
                            }
                            k += 1;
                        }
                    }
                    for (i, m) in masks.iter().enumerate() {
                        for x in 0..s {
                            if m >> x & 1 == 1 {
                                edges.push((x, s + i));
                            }
                        }
                    }
                    HoffmanGraph::new(s, f, &edges).unwrap()
                })
        })
    }

    fn shuffle(g: &HoffmanGraph, seed: &[usize]) -> HoffmanGraph {
        // label-preserving permutation derived from the seed
        let mut slim: Vec<usize> = g.slim_vertices().collect();
        let mut fat: Vec<usize> = g.fat_vertices().collect();
        for (i, &r) in seed.iter().enumerate() {
            if !slim.is_empty() {
                let a = i % slim.len();
                let b = r % slim.len();
                slim.swap(a, b);
            }
            if !fat.is_empty() {
                let a = i % fat.len();
                let b = r % fat.len();
                fat.swap(a, b);
            }
        }
        let mut image = vec![0; g.order()];
        for (new, &old) in slim.iter().chain(&fat).enumerate() {
            image[old] = new;
        }
        g.permuted(&image)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn certificate_is_invariant(g in arb_hoffman(5, 4), seed in proptest::collection::vec(0usize..100, 8)) {
            let h = shuffle(&g, &seed);
            prop_assert_eq!(canonical_form(&g).hex(), canonical_form(&h).hex());
            let (cg, _) = canonical_graph(&g);
            let (ch, _) = canonical_graph(&h);
            prop_assert_eq!(cg, ch);
        }

        #[test]
        fn group_order_matches_brute_force(g in arb_hoffman(5, 3)) {
            let grp = automorphism_group(&g);
            prop_assert_eq!(grp.order(), brute_force_auts(&g));
            for gen in grp.generators() {
                prop_assert!(gen.is_automorphism_of(&g));
            }
        }
    }
}
