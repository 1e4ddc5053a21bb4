//! Named Hoffman graphs, the family O, closures and prefix families.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::ser::{Serialize, SerializeMap, SerializeSeq, Serializer};

use crate::canon::{canonical_form, canonical_graph};
use crate::error::{Error, Result};
use crate::graph::{HoffmanGraph, VertexId};
use crate::sum::is_indecomposable;

/// The named graphs of the catalog.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Catalog {
    /// One slim vertex on one fat vertex.
    H1,
    /// One slim vertex on two fat vertices.
    H2,
    /// Two nonadjacent slim vertices sharing a fat vertex.
    H3,
    /// A slim edge plus an isolated slim vertex, all under one fat vertex.
    H5,
    /// Three independent slim vertices under one fat vertex.
    H5p,
}

impl Catalog {
    pub const ALL: [Catalog; 5] = [Catalog::H1, Catalog::H2, Catalog::H3, Catalog::H5, Catalog::H5p];

    pub fn name(self) -> &'static str {
        match self {
            Catalog::H1 => "h1",
            Catalog::H2 => "h2",
            Catalog::H3 => "h3",
            Catalog::H5 => "h5",
            Catalog::H5p => "h5p",
        }
    }

    pub fn graph(self) -> HoffmanGraph {
        let (s, f, e): (usize, usize, &[(VertexId, VertexId)]) = match self {
            Catalog::H1 => (1, 1, &[(0, 1)]),
            Catalog::H2 => (1, 2, &[(0, 1), (0, 2)]),
            Catalog::H3 => (2, 1, &[(0, 2), (1, 2)]),
            Catalog::H5 => (3, 1, &[(0, 1), (0, 3), (1, 3), (2, 3)]),
            Catalog::H5p => (3, 1, &[(0, 3), (1, 3), (2, 3)]),
        };
        HoffmanGraph::new(s, f, e).expect("catalog graphs are valid")
    }

    /// The catalog entry isomorphic to `h`, if any.
    pub fn identify(h: &HoffmanGraph) -> Option<Catalog> {
        let cert = canonical_form(h);
        Catalog::ALL
            .into_iter()
            .find(|c| canonical_form(&c.graph()).certificate() == cert.certificate())
    }
}

impl fmt::Display for Catalog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Catalog {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Catalog::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown catalog graph `{s}` (expected one of h1, h2, h3, h5, h5p)"))
    }
}

fn is_h2(h: &HoffmanGraph) -> bool {
    h.slim_count() == 1 && h.fat_count() == 2 && h.edge_count() == 2
}

/// Membership in O: h2, or an indecomposable fat graph with at least two
/// slim vertices and exactly one fat vertex.
pub fn is_member_o(h: &HoffmanGraph) -> bool {
    if is_h2(h) {
        return true;
    }
    if h.fat_count() != 1 || h.slim_count() < 2 {
        return false;
    }
    let fat = h.slim_count();
    h.slim_vertices().all(|x| h.adjacent(x, fat)) && is_indecomposable(h).unwrap_or(false)
}

/// A finite family of pairwise non-isomorphic Hoffman graphs, held in
/// canonical form and ordered by slim count, then certificate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    members: Vec<HoffmanGraph>,
    certificates: Vec<Vec<u8>>,
}

impl FamilySpec {
    /// Rejects isomorphic duplicates; indices in the error refer to `members`.
    pub fn new(members: Vec<HoffmanGraph>) -> Result<Self> {
        let mut seen: BTreeMap<(usize, Vec<u8>), (usize, HoffmanGraph)> = BTreeMap::new();
        for (i, m) in members.iter().enumerate() {
            let (g, form) = canonical_graph(m);
            let key = (m.slim_count(), form.into_certificate());
            if let Some(&(j, _)) = seen.get(&key) {
                return Err(Error::DuplicateMember(j, i));
            }
            seen.insert(key, (i, g));
        }
        let mut certificates = Vec::with_capacity(seen.len());
        let mut out = Vec::with_capacity(seen.len());
        for ((_, cert), (_, g)) in seen {
            certificates.push(cert);
            out.push(g);
        }
        Ok(FamilySpec {
            members: out,
            certificates,
        })
    }

    pub fn from_catalog(names: &[Catalog]) -> Result<Self> {
        FamilySpec::new(names.iter().map(|c| c.graph()).collect())
    }

    pub fn members(&self) -> &[HoffmanGraph] {
        &self.members
    }

    pub fn certificates(&self) -> &[Vec<u8>] {
        &self.certificates
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Index of the member isomorphic to `h`.
    pub fn position(&self, h: &HoffmanGraph) -> Option<usize> {
        let cert = canonical_form(h);
        self.certificates.iter().position(|c| c.as_slice() == cert.certificate())
    }

    pub fn contains(&self, h: &HoffmanGraph) -> bool {
        self.position(h).is_some()
    }

    pub fn contains_h2(&self) -> bool {
        self.contains(&Catalog::H2.graph())
    }

    pub fn is_subset_of_o(&self) -> bool {
        self.members.iter().all(is_member_o)
    }

    /// Whether the family equals its closure.
    pub fn is_closed(&self) -> bool {
        matches!(bar_closure(self), Ok(c) if c == *self)
    }

    /// Member names, catalog names where they apply.
    pub fn names(&self) -> Vec<String> {
        self.members
            .iter()
            .enumerate()
            .map(|(i, m)| match Catalog::identify(m) {
                Some(c) => c.name().to_string(),
                None => format!("g{i}[{}s]", m.slim_count()),
            })
            .collect()
    }
}

impl fmt::Debug for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FamilySpec{{{}}}", self.names().join(","))
    }
}

impl Serialize for FamilySpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Member<'a>(&'a str, &'a [u8], &'a HoffmanGraph);
        impl Serialize for Member<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(3))?;
                m.serialize_entry("name", self.0)?;
                m.serialize_entry("certificate", &hex::encode(self.1))?;
                m.serialize_entry("hgf", &crate::io::write_hgf(self.2))?;
                m.end()
            }
        }
        let names = self.names();
        let mut seq = s.serialize_seq(Some(self.len()))?;
        for ((name, cert), g) in names.iter().zip(&self.certificates).zip(&self.members) {
            seq.serialize_element(&Member(name, cert, g))?;
        }
        seq.end()
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names().join(","))
    }
}

/// h2 together with every O-member occurring as a closed induced subgraph of
/// a member of `h`.
pub fn bar_closure(h: &FamilySpec) -> Result<FamilySpec> {
    let mut found: BTreeMap<Vec<u8>, HoffmanGraph> = BTreeMap::new();
    let h2 = Catalog::H2.graph();
    found.insert(canonical_form(&h2).into_certificate(), h2);
    for (i, m) in h.members().iter().enumerate() {
        if !is_member_o(m) {
            return Err(Error::MemberOutsideO(i));
        }
        let s = m.slim_count();
        if s < 2 {
            continue;
        }
        assert!(s < 32, "family members are small");
        for mask in 1u32..(1 << s) {
            if mask.count_ones() < 2 {
                continue;
            }
            let set: Vec<VertexId> = (0..s).filter(|&x| mask >> x & 1 == 1).collect();
            let sub = m.slim_closed_induced(&set)?.graph;
            if is_member_o(&sub) {
                found.entry(canonical_form(&sub).into_certificate()).or_insert(sub);
            }
        }
    }
    FamilySpec::new(found.into_values().collect())
}

/// The first `m + 1` members of the closure, ordered by slim count with
/// ties broken by certificate.
pub fn family_prefix(h: &FamilySpec, m: usize) -> Result<FamilySpec> {
    let closed = bar_closure(h)?;
    let keep = (m + 1).min(closed.len());
    Ok(FamilySpec {
        members: closed.members[..keep].to_vec(),
        certificates: closed.certificates[..keep].to_vec(),
    })
}

/// Lower bound on N_H: `2|V_s| + 2` over closure members with a disconnected
/// slim subgraph, and never below 7.
pub fn lower_bound(h: &FamilySpec) -> Result<usize> {
    Ok(bar_closure(h)?
        .members()
        .iter()
        .filter(|m| !m.slim_subgraph().is_connected())
        .map(|m| 2 * m.slim_count() + 2)
        .fold(7, usize::max))
}
