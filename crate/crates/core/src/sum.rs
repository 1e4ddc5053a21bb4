//! Sums of Hoffman graphs.
//!
//! A sum splits the slim vertices into parts; each addend is the part plus all
//! of its fat neighbors. Across addends, two slim vertices share at most one
//! fat vertex, and they share one exactly when they are adjacent. The
//! indecomposable decomposition is unique and is computed directly: slim
//! vertices `x`, `y` are linked when `w(x, y) != 0`, and the connected
//! components of that relation are the addends.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::family;
use crate::graph::{components, GraphBuilder, HoffmanGraph, Induced, VertexId};

/// `w(x, y) = [x ~ y] - |N_f(x) ∩ N_f(y)|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(pub i64);

pub fn w_value(h: &HoffmanGraph, x: VertexId, y: VertexId) -> Result<Weight> {
    for v in [x, y] {
        if v >= h.order() {
            return Err(Error::VertexOutOfRange(v, h.order()));
        }
        if !h.is_slim(v) {
            return Err(Error::NotSlim(v));
        }
    }
    if x == y {
        return Err(Error::SameVertex(x));
    }
    Ok(raw_weight(h, x, y))
}

fn raw_weight(h: &HoffmanGraph, x: VertexId, y: VertexId) -> Weight {
    Weight(h.adjacent(x, y) as i64 - h.common_fat_count(x, y) as i64)
}

/// A sum decomposition of `parent`, stored as slim-vertex parts ordered by
/// their smallest vertex. Built by [`decompose`] every part is indecomposable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    parent: HoffmanGraph,
    parts: Vec<Vec<VertexId>>,
}

impl Decomposition {
    /// Accepts explicit parts after checking that they form a sum of
    /// indecomposable addends.
    pub fn from_parts(parent: HoffmanGraph, mut parts: Vec<Vec<VertexId>>) -> Result<Self> {
        for p in &mut parts {
            p.sort_unstable();
        }
        parts.sort();
        if !validate_sum(&parent, &parts)? {
            return Err(Error::SumConditionViolated(
                sum_violation(&parent, &parts).unwrap_or_default(),
            ));
        }
        let d = Decomposition { parent, parts };
        for i in 0..d.len() {
            if !is_indecomposable(&d.addend(i).graph)? {
                return Err(Error::SumConditionViolated(format!("addend {:?} is decomposable", d.parts[i])));
            }
        }
        Ok(d)
    }

    pub fn parent(&self) -> &HoffmanGraph {
        &self.parent
    }

    pub fn parts(&self) -> &[Vec<VertexId>] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The `i`-th addend with its embedding into the parent.
    pub fn addend(&self, i: usize) -> Induced {
        self.parent
            .slim_closed_induced(&self.parts[i])
            .expect("parts hold slim vertices")
    }

    pub fn addends(&self) -> Vec<HoffmanGraph> {
        (0..self.len()).map(|i| self.addend(i).graph).collect()
    }

    /// Index of the part holding slim vertex `x`.
    pub fn part_of(&self, x: VertexId) -> Option<usize> {
        self.parts.iter().position(|p| p.binary_search(&x).is_ok())
    }
}

/// The unique indecomposable decomposition.
pub fn decompose(h: &HoffmanGraph) -> Result<Decomposition> {
    if h.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let parts = components(h.slim_count(), |x, y| x != y && raw_weight(h, x, y).0 != 0);
    // every fat vertex has a slim neighbor, so the closures cover V(h)
    debug_assert!(h
        .fat_vertices()
        .all(|f| parts.iter().any(|p| p.iter().any(|&x| h.adjacent(x, f)))));
    let d = Decomposition {
        parent: h.clone(),
        parts,
    };
    debug_assert_eq!(sum_violation(h, &d.parts), None);
    Ok(d)
}

pub fn is_indecomposable(h: &HoffmanGraph) -> Result<bool> {
    decompose(h).map(|d| d.len() == 1)
}

fn check_partition(h: &HoffmanGraph, parts: &[Vec<VertexId>]) -> Result<()> {
    let mut seen = vec![false; h.slim_count()];
    for p in parts {
        if p.is_empty() {
            return Err(Error::NotAPartition("empty part".into()));
        }
        for &x in p {
            if x >= h.slim_count() {
                return Err(Error::NotAPartition(format!("{x} is not a slim vertex")));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::NotAPartition(format!("{x} appears twice")));
            }
        }
    }
    if let Some(x) = seen.iter().position(|&s| !s) {
        return Err(Error::NotAPartition(format!("{x} is not covered")));
    }
    Ok(())
}

/// First violated sum condition, if any. Assumes `parts` partitions the slim
/// vertices.
fn sum_violation(h: &HoffmanGraph, parts: &[Vec<VertexId>]) -> Option<String> {
    let addends: Vec<Induced> = parts
        .iter()
        .map(|p| h.slim_closed_induced(p).expect("slim parts"))
        .collect();
    // (1) every vertex of h lies in some addend
    let mut covered = vec![false; h.order()];
    for a in &addends {
        for &v in &a.origin {
            covered[v] = true;
        }
    }
    if let Some(v) = covered.iter().position(|&c| !c) {
        return Some(format!("vertex {v} lies in no addend"));
    }
    // (3) fat neighborhoods are inherited
    for a in &addends {
        for (i, &x) in a.origin.iter().enumerate().take(a.graph.slim_count()) {
            let inner: Vec<VertexId> = a.graph.fat_neighbors(i).map(|f| a.origin[f]).collect();
            let outer: Vec<VertexId> = h.fat_neighbors(x).collect();
            if inner != outer {
                return Some(format!("fat neighborhood of {x} is not inherited"));
            }
        }
    }
    // (4) and (5) across addends
    let mut part_of = vec![0; h.slim_count()];
    for (i, p) in parts.iter().enumerate() {
        for &x in p {
            part_of[x] = i;
        }
    }
    for x in h.slim_vertices() {
        for y in x + 1..h.slim_count() {
            if part_of[x] == part_of[y] {
                continue;
            }
            let common = h.common_fat_count(x, y);
            if common > 1 {
                return Some(format!("slim vertices {x} and {y} share {common} fat vertices"));
            }
            if (common == 1) != h.adjacent(x, y) {
                return Some(format!("adjacency of {x} and {y} does not match their shared fat vertices"));
            }
        }
    }
    None
}

/// Whether `h` is the sum of the closed induced subgraphs on `parts`.
pub fn validate_sum(h: &HoffmanGraph, parts: &[Vec<VertexId>]) -> Result<bool> {
    check_partition(h, parts)?;
    Ok(sum_violation(h, parts).is_none())
}

/// One fat vertex of one addend template.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FatSlot {
    pub addend: usize,
    /// Index among the template's fat vertices, starting at 0.
    pub fat: usize,
}

/// Addend templates plus a partition of all their fat vertices; each group
/// becomes one fat vertex of the composed sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FatSlotAssignment {
    pub addend_templates: Vec<HoffmanGraph>,
    pub groups: Vec<Vec<FatSlot>>,
}

impl FatSlotAssignment {
    /// Every template fat vertex in a group of its own.
    pub fn disjoint(addend_templates: Vec<HoffmanGraph>) -> Self {
        let groups = addend_templates
            .iter()
            .enumerate()
            .flat_map(|(a, t)| (0..t.fat_count()).map(move |fat| vec![FatSlot { addend: a, fat }]))
            .collect();
        FatSlotAssignment {
            addend_templates,
            groups,
        }
    }

    fn check(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidAssignment(m));
        let t = &self.addend_templates;
        if let Some(a) = t.iter().position(|g| g.slim_count() == 0) {
            return bad(format!("template {a} has no slim vertices"));
        }
        let mut seen: Vec<Vec<bool>> = t.iter().map(|g| vec![false; g.fat_count()]).collect();
        let mut shared = BTreeSet::new();
        for (gi, group) in self.groups.iter().enumerate() {
            if group.is_empty() {
                return bad(format!("group {gi} is empty"));
            }
            for (k, s) in group.iter().enumerate() {
                if s.addend >= t.len() || s.fat >= t[s.addend].fat_count() {
                    return bad(format!("group {gi} names a nonexistent slot {s:?}"));
                }
                if std::mem::replace(&mut seen[s.addend][s.fat], true) {
                    return bad(format!("slot {s:?} is used twice"));
                }
                for other in &group[..k] {
                    if other.addend == s.addend {
                        return bad(format!("group {gi} holds two fat vertices of addend {}", s.addend));
                    }
                    let pair = (other.addend.min(s.addend), other.addend.max(s.addend));
                    if !shared.insert(pair) {
                        return bad(format!("addends {} and {} share more than one group", pair.0, pair.1));
                    }
                }
            }
        }
        for (a, row) in seen.iter().enumerate() {
            if let Some(f) = row.iter().position(|&s| !s) {
                return bad(format!("fat {f} of addend {a} is in no group"));
            }
        }
        Ok(())
    }

    /// Slim-vertex parts of the composed graph, one per template.
    pub fn parts(&self) -> Vec<Vec<VertexId>> {
        let mut start = 0;
        self.addend_templates
            .iter()
            .map(|t| {
                let p = (start..start + t.slim_count()).collect();
                start += t.slim_count();
                p
            })
            .collect()
    }
}

/// Builds the sum described by `assignment`: disjoint union of the templates,
/// each fat group merged into one vertex, and a slim edge between addends
/// exactly where they share a merged fat vertex.
pub fn compose_sum(assignment: &FatSlotAssignment) -> Result<HoffmanGraph> {
    assignment.check()?;
    let t = &assignment.addend_templates;
    let parts = assignment.parts();
    let slim: usize = t.iter().map(|g| g.slim_count()).sum();
    let mut b = GraphBuilder::new(slim, assignment.groups.len());
    for (a, g) in t.iter().enumerate() {
        let off = parts[a].first().copied().unwrap_or(0);
        for (u, v) in g.edges() {
            if v < g.slim_count() {
                b.add_edge(off + u, off + v);
            }
        }
    }
    for (gi, group) in assignment.groups.iter().enumerate() {
        let fat = slim + gi;
        let mut members: Vec<(usize, VertexId)> = Vec::new();
        for s in group {
            let g = &t[s.addend];
            let off = parts[s.addend][0];
            for x in g.slim_neighbors(g.slim_count() + s.fat) {
                b.add_edge(off + x, fat);
                members.push((s.addend, off + x));
            }
        }
        for (i, &(a, x)) in members.iter().enumerate() {
            for &(c, y) in &members[..i] {
                if a != c && !b.has_edge(x, y) {
                    b.add_edge(x, y);
                }
            }
        }
    }
    let h = b.try_build()?;
    match sum_violation(&h, &parts) {
        None => Ok(h),
        Some(why) => Err(Error::SumConditionViolated(why)),
    }
}

/// Replaces every addend isomorphic to h1 by a copy of h2, attaching one new
/// fat vertex to its slim vertex. Every other addend must lie in O.
pub fn tilde(h: &HoffmanGraph) -> Result<HoffmanGraph> {
    if h.is_empty() {
        return Ok(h.clone());
    }
    let d = decompose(h)?;
    let mut lonely = Vec::new();
    for i in 0..d.len() {
        let a = d.addend(i).graph;
        if a.slim_count() == 1 && a.fat_count() == 1 {
            lonely.push(d.parts()[i][0]);
        } else if !family::is_member_o(&a) {
            return Err(Error::AddendOutsideScope(d.parts()[i].clone()));
        }
    }
    if lonely.is_empty() {
        return Ok(h.clone());
    }
    let mut b = GraphBuilder::new(h.slim_count(), h.fat_count() + lonely.len());
    for (u, v) in h.edges() {
        b.add_edge(u, v);
    }
    for (k, &x) in lonely.iter().enumerate() {
        b.add_edge(x, h.order() + k);
    }
    Ok(b.build())
}

/// The closed induced subgraph on a slim set, split along a parent sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    /// The closed induced subgraph of the parent on the chosen slim set.
    pub whole: Induced,
    /// Nonempty intersections with the parent's parts, in `whole` coordinates.
    pub parts: Vec<Vec<VertexId>>,
}

impl Restriction {
    pub fn addends(&self) -> Vec<HoffmanGraph> {
        self.parts
            .iter()
            .map(|p| self.whole.graph.slim_closed_induced(p).expect("slim parts").graph)
            .collect()
    }
}

/// Restricts a sum to the slim set `x`, addend by addend. Empty
/// intersections are dropped.
pub fn restrict_sum(d: &Decomposition, x: &[VertexId]) -> Result<Restriction> {
    let whole = d.parent().slim_closed_induced(x)?;
    let mut new_index = vec![usize::MAX; d.parent().order()];
    for (i, &v) in whole.origin.iter().enumerate() {
        new_index[v] = i;
    }
    let parts = d
        .parts()
        .iter()
        .map(|p| {
            p.iter()
                .filter(|&&v| new_index[v] != usize::MAX)
                .map(|&v| new_index[v])
                .collect::<Vec<_>>()
        })
        .filter(|p| !p.is_empty())
        .collect();
    Ok(Restriction { whole, parts })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::canon::is_isomorphic;
    use crate::family::Catalog;

    fn c4_with_fat() -> HoffmanGraph {
        // a=0 b=1 c=2 d=3, fat 4 on all slims
        HoffmanGraph::new(4, 1, &[(0, 2), (0, 3), (1, 2), (1, 3), (0, 4), (1, 4), (2, 4), (3, 4)]).unwrap()
    }

    #[test]
    fn w_examples() {
        let h3 = Catalog::H3.graph();
        assert_eq!(w_value(&h3, 0, 1), Ok(Weight(-1)));
        assert_eq!(w_value(&h3, 1, 0), Ok(Weight(-1)));
        let shared = HoffmanGraph::new(2, 1, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(w_value(&shared, 0, 1), Ok(Weight(0)));
        let bare = HoffmanGraph::new(2, 2, &[(0, 1), (0, 2), (1, 3)]).unwrap();
        assert_eq!(w_value(&bare, 0, 1), Ok(Weight(1)));
        assert_eq!(w_value(&h3, 0, 0), Err(Error::SameVertex(0)));
        assert_eq!(w_value(&h3, 0, 2), Err(Error::NotSlim(2)));
    }

    #[test]
    fn decompose_examples() {
        let h3 = Catalog::H3.graph();
        assert_eq!(decompose(&h3).unwrap().parts(), &[vec![0, 1]]);
        let d = decompose(&c4_with_fat()).unwrap();
        assert_eq!(d.parts(), &[vec![0, 1], vec![2, 3]]);
        for a in d.addends() {
            assert!(is_isomorphic(&a, &h3));
        }
        assert_eq!(decompose(&HoffmanGraph::empty()), Err(Error::EmptyGraph));
    }

    #[test]
    fn indecomposable_examples() {
        assert!(is_indecomposable(&Catalog::H2.graph()).unwrap());
        assert!(is_indecomposable(&Catalog::H3.graph()).unwrap());
        let shared = HoffmanGraph::new(2, 1, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert!(!is_indecomposable(&shared).unwrap());
    }

    #[test]
    fn validate_sum_examples() {
        let h5 = Catalog::H5.graph();
        assert!(validate_sum(&h5, &[vec![0, 1, 2]]).unwrap());
        let c4 = c4_with_fat();
        assert!(validate_sum(&c4, &[vec![0, 1], vec![2, 3]]).unwrap());
        assert!(!validate_sum(&c4, &[vec![0, 2], vec![1, 3]]).unwrap());
        assert!(matches!(validate_sum(&c4, &[vec![0, 1]]), Err(Error::NotAPartition(_))));
        assert!(matches!(validate_sum(&c4, &[vec![0, 1], vec![1, 2, 3]]), Err(Error::NotAPartition(_))));
    }

    #[test]
    fn compose_examples() {
        let h3 = Catalog::H3.graph();
        let merged = FatSlotAssignment {
            addend_templates: vec![h3.clone(), h3.clone()],
            groups: vec![vec![FatSlot { addend: 0, fat: 0 }, FatSlot { addend: 1, fat: 0 }]],
        };
        assert!(is_isomorphic(&compose_sum(&merged).unwrap(), &c4_with_fat()));

        let h2 = Catalog::H2.graph();
        assert_eq!(compose_sum(&FatSlotAssignment::disjoint(vec![h2.clone()])).unwrap(), h2);

        let tri = triangle_cover();
        assert_eq!((tri.slim_count(), tri.fat_count()), (3, 3));
        assert_eq!(tri.slim_subgraph().edges(), vec![(0, 1), (0, 2), (1, 2)]);
        for f in tri.fat_vertices() {
            assert_eq!(tri.slim_neighbors(f).count(), 2);
        }
    }

    pub(crate) fn triangle_cover() -> HoffmanGraph {
        let h2 = Catalog::H2.graph();
        let s = |addend, fat| FatSlot { addend, fat };
        compose_sum(&FatSlotAssignment {
            addend_templates: vec![h2.clone(), h2.clone(), h2],
            groups: vec![vec![s(0, 0), s(1, 0)], vec![s(1, 1), s(2, 0)], vec![s(2, 1), s(0, 1)]],
        })
        .unwrap()
    }

    #[test]
    fn compose_rejects_bad_assignments() {
        let h2 = Catalog::H2.graph();
        let s = |addend, fat| FatSlot { addend, fat };
        let same_addend = FatSlotAssignment {
            addend_templates: vec![h2.clone()],
            groups: vec![vec![s(0, 0), s(0, 1)]],
        };
        assert!(matches!(compose_sum(&same_addend), Err(Error::InvalidAssignment(_))));
        let double = FatSlotAssignment {
            addend_templates: vec![h2.clone(), h2.clone()],
            groups: vec![vec![s(0, 0), s(1, 0)], vec![s(0, 1), s(1, 1)]],
        };
        assert!(matches!(compose_sum(&double), Err(Error::InvalidAssignment(_))));
        let missing = FatSlotAssignment {
            addend_templates: vec![h2],
            groups: vec![vec![s(0, 0)]],
        };
        assert!(matches!(compose_sum(&missing), Err(Error::InvalidAssignment(_))));
    }

    #[test]
    fn tilde_examples() {
        let h1 = Catalog::H1.graph();
        assert!(is_isomorphic(&tilde(&h1).unwrap(), &Catalog::H2.graph()));
        let c4 = c4_with_fat();
        assert_eq!(tilde(&c4).unwrap(), c4);
        let shared = HoffmanGraph::new(2, 1, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let t = tilde(&shared).unwrap();
        assert_eq!(t.fat_count(), 3);
        assert_eq!(decompose(&t).unwrap().len(), 2);
        // a slim path with one fat is neither h1 nor in O
        let p3 = HoffmanGraph::new(3, 1, &[(0, 1), (1, 2), (0, 3), (1, 3), (2, 3)]).unwrap();
        assert!(!is_indecomposable(&p3).unwrap());
        assert_eq!(tilde(&p3).unwrap().fat_count(), 2);
        let bad = HoffmanGraph::new(2, 0, &[(0, 1)]).unwrap();
        assert!(matches!(tilde(&bad), Err(Error::AddendOutsideScope(_))));
    }

    #[test]
    fn restrict_examples() {
        let c4 = c4_with_fat();
        let d = decompose(&c4).unwrap();
        let all = restrict_sum(&d, &[0, 1, 2, 3]).unwrap();
        assert_eq!(all.addends(), d.addends());
        let ac = restrict_sum(&d, &[0, 2]).unwrap();
        assert_eq!(ac.parts, vec![vec![0], vec![1]]);
        for a in ac.addends() {
            assert!(is_isomorphic(&a, &Catalog::H1.graph()));
        }
        assert!(validate_sum(&ac.whole.graph, &ac.parts).unwrap());
        assert!(restrict_sum(&d, &[]).unwrap().parts.is_empty());
    }

    #[test]
    fn decomposition_from_parts_checks() {
        let c4 = c4_with_fat();
        assert!(Decomposition::from_parts(c4.clone(), vec![vec![3, 2], vec![0, 1]]).is_ok());
        assert!(matches!(
            Decomposition::from_parts(c4.clone(), vec![vec![0, 1, 2, 3]]),
            Err(Error::SumConditionViolated(_))
        ));
        assert!(matches!(
            Decomposition::from_parts(c4, vec![vec![0, 2], vec![1, 3]]),
            Err(Error::SumConditionViolated(_))
        ));
    }
}
