//! Isomorph-free generation of sums of family members and of their slim
//! subgraphs, plus exhaustive strict-cover search for a labeled graph.
//!
//! Sums are grown one addend at a time. A sum whose addends are linked by
//! shared fat vertices always has an addend whose removal keeps the rest
//! linked, so every linked sum on `n` slim vertices arises by attaching one
//! member to a linked sum on fewer slim vertices. Each level is deduplicated
//! by canonical form; slim connectivity is applied only at the target order.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::canon::{canonical_form, canonical_form_and_group, canonical_graph, CanonicalForm};
use crate::error::{Error, Result};
use crate::family::FamilySpec;
use crate::graph::{GraphBuilder, HoffmanGraph, SlimGraph, VertexId};
use crate::sum::{decompose, restrict_sum, tilde, Decomposition};

#[derive(Clone, Debug)]
pub struct SumMember {
    /// Canonical representative.
    pub graph: HoffmanGraph,
    pub decomposition: Decomposition,
    pub form: CanonicalForm,
    pub aut_order: u128,
}

/// Every sum of family members on `slim_order` slim vertices with a
/// connected slim subgraph, one per isomorphism class, sorted by certificate.
#[derive(Clone, Debug)]
pub struct SumFamily {
    pub family: FamilySpec,
    pub slim_order: usize,
    pub members: Vec<SumMember>,
}

#[derive(Clone, Debug)]
pub struct LineGraphMember {
    /// Canonical representative.
    pub graph: SlimGraph,
    pub form: CanonicalForm,
    pub aut_order: u128,
}

/// The distinct slim subgraphs of a [`SumFamily`], sorted by certificate.
#[derive(Clone, Debug)]
pub struct LineGraphFamily {
    pub family: FamilySpec,
    pub order: usize,
    pub members: Vec<LineGraphMember>,
}

impl SumFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

impl LineGraphFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Index of the member isomorphic to `g`.
    pub fn position(&self, g: &SlimGraph) -> Option<usize> {
        let cert = canonical_form(g.as_hoffman()).into_certificate();
        self.members
            .binary_search_by(|m| m.form.certificate().cmp(&cert))
            .ok()
    }
}

/// Attaches a copy of `t` to `s`. `slots[j]` names the fat vertex of `s`
/// (as an index among its fats) that template fat `j` merges into, or `None`
/// for a fresh fat vertex. Fails when two slim vertices would share two fats.
fn attach(s: &HoffmanGraph, t: &HoffmanGraph, slots: &[Option<usize>]) -> Option<HoffmanGraph> {
    let (ns, nf) = (s.slim_count(), s.fat_count());
    let k = t.slim_count();
    let fresh = slots.iter().filter(|x| x.is_none()).count();
    let slim = ns + k;
    let mut b = GraphBuilder::new(slim, nf + fresh);
    let old = |v: VertexId| if v < ns { v } else { v + k };
    for (u, v) in s.edges() {
        b.add_edge(old(u), old(v));
    }
    let mut target = Vec::with_capacity(slots.len());
    let mut next = slim + nf;
    for slot in slots {
        match slot {
            Some(f) => target.push(slim + f),
            None => {
                target.push(next);
                next += 1;
            }
        }
    }
    for (u, v) in t.edges() {
        if v < k {
            b.add_edge(ns + u, ns + v);
        } else {
            b.add_edge(ns + u, target[v - k]);
        }
    }
    for x in 0..k {
        let mut common = vec![0u8; ns];
        for (j, slot) in slots.iter().enumerate() {
            let Some(f) = slot else { continue };
            if !t.adjacent(x, k + j) {
                continue;
            }
            for y in s.slim_neighbors(ns + f) {
                common[y] += 1;
                if common[y] > 1 {
                    return None;
                }
                b.add_edge(ns + x, y);
            }
        }
    }
    Some(b.build())
}

/// All ways to route the fat slots of `t` into the fats of `s`: distinct
/// existing fats or fresh ones, with at least one shared fat when `s` is
/// nonempty.
fn slot_choices(s: &HoffmanGraph, t: &HoffmanGraph) -> Vec<Vec<Option<usize>>> {
    let nf = s.fat_count();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(t.fat_count());
    fn rec(j: usize, m: usize, nf: usize, cur: &mut Vec<Option<usize>>, out: &mut Vec<Vec<Option<usize>>>) {
        if j == m {
            if nf == 0 || cur.iter().any(Option::is_some) {
                out.push(cur.clone());
            }
            return;
        }
        cur.push(None);
        rec(j + 1, m, nf, cur, out);
        cur.pop();
        for f in 0..nf {
            if cur.contains(&Some(f)) {
                continue;
            }
            cur.push(Some(f));
            rec(j + 1, m, nf, cur, out);
            cur.pop();
        }
    }
    rec(0, t.fat_count(), nf, &mut cur, &mut out);
    out
}

type Level = BTreeMap<Vec<u8>, HoffmanGraph>;

fn insert_canonical(level: &mut Level, g: &HoffmanGraph) {
    let (c, form) = canonical_graph(g);
    level.entry(form.into_certificate()).or_insert(c);
}

/// Linked sums, by slim count `1..=n`.
fn linked_sums(h: &FamilySpec, n: usize) -> Vec<Level> {
    let mut levels: Vec<Level> = vec![Level::new(); n + 1];
    for m in h.members() {
        if (1..=n).contains(&m.slim_count()) {
            insert_canonical(&mut levels[m.slim_count()], m);
        }
    }
    for size in 2..=n {
        let mut jobs: Vec<(&HoffmanGraph, &HoffmanGraph)> = Vec::new();
        for t in h.members() {
            let k = t.slim_count();
            if k < size {
                jobs.extend(levels[size - k].values().map(|s| (s, t)));
            }
        }
        let found: Vec<(Vec<u8>, HoffmanGraph)> = jobs
            .into_par_iter()
            .flat_map_iter(|(s, t)| {
                let mut local = Level::new();
                for slots in slot_choices(s, t) {
                    if let Some(g) = attach(s, t, &slots) {
                        insert_canonical(&mut local, &g);
                    }
                }
                local.into_iter()
            })
            .collect();
        levels[size].extend(found);
    }
    levels
}

fn check_in_o(h: &FamilySpec) -> Result<()> {
    if h.is_subset_of_o() {
        Ok(())
    } else {
        Err(Error::FamilyOutsideO)
    }
}

/// All isomorphism classes of sums of members of `h` with `n` slim vertices
/// and a connected slim subgraph.
pub fn enumerate_sums(h: &FamilySpec, n: usize) -> Result<SumFamily> {
    check_in_o(h)?;
    let mut levels = linked_sums(h, n);
    let top = std::mem::take(&mut levels[n]);
    let members = top
        .into_values()
        .collect::<Vec<_>>()
        .into_par_iter()
        .filter(|g| g.slim_subgraph().is_connected())
        .map(|g| {
            let (form, group) = canonical_form_and_group(&g);
            let decomposition = decompose(&g).expect("enumerated sums are nonempty");
            SumMember {
                graph: g,
                decomposition,
                form,
                aut_order: group.order(),
            }
        })
        .collect();
    Ok(SumFamily {
        family: h.clone(),
        slim_order: n,
        members,
    })
}

/// The distinct slim subgraphs of the members of `x`.
pub fn slim_line_graphs(x: &SumFamily) -> Result<LineGraphFamily> {
    if !x.family.is_closed() {
        return Err(Error::FamilyNotClosed);
    }
    let mut seen: BTreeMap<Vec<u8>, SlimGraph> = BTreeMap::new();
    for m in &x.members {
        let s = m.graph.slim_subgraph();
        let (c, form) = canonical_graph(s.as_hoffman());
        seen.entry(form.into_certificate())
            .or_insert_with(|| SlimGraph::try_from(c).expect("slim subgraph has no fats"));
    }
    let members = seen
        .into_values()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|graph| {
            let (form, group) = canonical_form_and_group(graph.as_hoffman());
            LineGraphMember {
                graph,
                form,
                aut_order: group.order(),
            }
        })
        .collect();
    Ok(LineGraphFamily {
        family: x.family.clone(),
        order: x.slim_order,
        members,
    })
}

/// A strict cover of the slim graph induced on `x`: the restriction of the
/// sum `parts` to `x`, with every h1 addend completed to h2.
pub fn cover_from_parent(parts: &Decomposition, x: &[VertexId]) -> Result<HoffmanGraph> {
    let r = restrict_sum(parts, x)?;
    tilde(&r.whole.graph)
}

/// Strict covers of the labeled graph `g` by sums of members of `h`, one per
/// equivalence class, with fat vertices capped at `2 |V(g)|`.
pub fn find_covers(g: &SlimGraph, h: &FamilySpec) -> Result<Vec<HoffmanGraph>> {
    find_covers_with_cap(g, h, 2 * g.vertex_count())
}

pub const MAX_COVER_ORDER: usize = 32;

/// As [`find_covers`] with an explicit fat-count cap.
///
/// In a sum of members of O two slim vertices share at most one fat vertex,
/// adjacent ones exactly one, and each slim vertex has one or two fats. The
/// search assigns fats vertex by vertex under those constraints and keeps the
/// candidates whose decomposition uses only family members. Covers of a
/// labeled graph are equivalent exactly when their fat neighborhoods agree as
/// multisets, so those multisets index the classes.
pub fn find_covers_with_cap(g: &SlimGraph, h: &FamilySpec, cap: usize) -> Result<Vec<HoffmanGraph>> {
    if !h.is_closed() {
        return Err(Error::FamilyNotClosed);
    }
    let n = g.vertex_count();
    if n > MAX_COVER_ORDER {
        return Err(Error::GraphTooLarge(n, MAX_COVER_ORDER));
    }
    let mut search = CoverSearch {
        g,
        family: h,
        cap: cap.min(64),
        fats: Vec::new(),
        of: vec![0; n],
        found: BTreeSet::new(),
    };
    search.place(0);
    Ok(search
        .found
        .into_iter()
        .map(|key| cover_graph(g, &key))
        .collect())
}

fn cover_graph(g: &SlimGraph, neighborhoods: &[u64]) -> HoffmanGraph {
    let n = g.vertex_count();
    let mut b = GraphBuilder::new(n, neighborhoods.len());
    for (u, v) in g.edges() {
        b.add_edge(u, v);
    }
    for (i, &mask) in neighborhoods.iter().enumerate() {
        for x in (0..n).filter(|&x| mask >> x & 1 == 1) {
            b.add_edge(x, n + i);
        }
    }
    b.build()
}

struct CoverSearch<'a> {
    g: &'a SlimGraph,
    family: &'a FamilySpec,
    cap: usize,
    /// Slim neighborhoods of the fats created so far.
    fats: Vec<u64>,
    /// Fats of each slim vertex, as a mask over `fats`.
    of: Vec<u64>,
    found: BTreeSet<Vec<u64>>,
}

impl CoverSearch<'_> {
    fn admissible(&self, v: VertexId, chosen: u64) -> bool {
        (0..v).all(|u| {
            let common = (self.of[u] & chosen).count_ones();
            if self.g.adjacent(u, v) {
                common == 1
            } else {
                common <= 1
            }
        })
    }

    fn place(&mut self, v: VertexId) {
        let n = self.g.vertex_count();
        if v == n {
            self.accept();
            return;
        }
        let existing = self.fats.len();
        let mut options: Vec<(u64, usize)> = Vec::new();
        for a in 0..existing {
            options.push((1 << a, 0));
            options.push((1 << a, 1));
            for b in a + 1..existing {
                options.push((1 << a | 1 << b, 0));
            }
        }
        options.push((0, 1));
        options.push((0, 2));
        for (chosen, fresh) in options {
            if existing + fresh > self.cap || !self.admissible(v, chosen) {
                continue;
            }
            for f in 0..existing {
                if chosen >> f & 1 == 1 {
                    self.fats[f] |= 1 << v;
                }
            }
            let mut mask = chosen;
            for i in 0..fresh {
                self.fats.push(1 << v);
                mask |= 1 << (existing + i);
            }
            self.of[v] = mask;
            self.place(v + 1);
            self.of[v] = 0;
            self.fats.truncate(existing);
            for f in 0..existing {
                if chosen >> f & 1 == 1 {
                    self.fats[f] &= !(1 << v);
                }
            }
        }
    }

    fn accept(&mut self) {
        let mut key = self.fats.clone();
        key.sort_unstable();
        if self.found.contains(&key) {
            return;
        }
        let cover = cover_graph(self.g, &key);
        let Ok(d) = decompose(&cover) else { return };
        if d.addends().iter().all(|a| self.family.contains(a)) {
            self.found.insert(key);
        }
    }
}
