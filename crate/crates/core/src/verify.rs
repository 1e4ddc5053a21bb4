//! The uniqueness certificate for one order, per-graph uniqueness checks, and
//! the search for N_H.

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::canon::slim_fixing_automorphisms;
use crate::enumerate::{enumerate_sums, find_covers, slim_line_graphs, LineGraphFamily};
use crate::error::{Error, Result};
use crate::family::{bar_closure, lower_bound, Catalog, FamilySpec};
use crate::graph::{HoffmanGraph, SlimGraph};
use crate::io::{write_graph6, write_hgf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    /// Every connected slim line graph of the order has a unique strict cover.
    UniqueCovers,
    /// The certificate does not apply. This is not a refutation.
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::UniqueCovers => "UNIQUE_COVERS",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutMismatch {
    pub cover: String,
    pub cover_aut: u128,
    pub slim_aut: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub family: FamilySpec,
    pub order: usize,
    pub x_count: usize,
    pub y_count: usize,
    pub x_certificates: Vec<String>,
    pub y_certificates: Vec<String>,
    /// Sums other than h2 with an automorphism fixing every slim vertex.
    pub aut_star_violations: Vec<String>,
    pub aut_mismatches: Vec<AutMismatch>,
    pub verdict: Verdict,
}

fn graph6<S: Serializer>(g: &SlimGraph, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&write_graph6(g))
}

fn hgf_list<S: Serializer>(gs: &[HoffmanGraph], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(gs.iter().map(write_hgf))
}

/// A graph with at least two pairwise non-equivalent strict covers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CounterexampleWitness {
    #[serde(serialize_with = "graph6")]
    pub graph: SlimGraph,
    #[serde(serialize_with = "hgf_list")]
    pub cover_classes: Vec<HoffmanGraph>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverUniqueness {
    Unique(HoffmanGraph),
    NotUnique(CounterexampleWitness),
    NoCover,
}

impl CoverUniqueness {
    pub fn is_unique(&self) -> bool {
        matches!(self, CoverUniqueness::Unique(_))
    }

    pub fn witness(&self) -> Option<&CounterexampleWitness> {
        match self {
            CoverUniqueness::NotUnique(w) => Some(w),
            _ => None,
        }
    }
}

fn require_closed_with_h2(h: &FamilySpec) -> Result<()> {
    if !h.contains_h2() {
        return Err(Error::MissingH2);
    }
    if !h.is_closed() {
        return Err(Error::FamilyNotClosed);
    }
    Ok(())
}

fn report_from(h: &FamilySpec, order: usize) -> Result<(VerificationReport, LineGraphFamily)> {
    let x = enumerate_sums(h, order)?;
    let y = slim_line_graphs(&x)?;
    let checks: Vec<(bool, Option<AutMismatch>)> = x
        .members
        .par_iter()
        .map(|m| {
            let is_h2 = Catalog::identify(&m.graph) == Some(Catalog::H2);
            let star = !is_h2 && !slim_fixing_automorphisms(&m.graph).is_trivial();
            let image = y
                .position(&m.graph.slim_subgraph())
                .expect("slim subgraphs of sums lie in the line graph family");
            let slim_aut = y.members[image].aut_order;
            let mismatch = (slim_aut != m.aut_order).then(|| AutMismatch {
                cover: m.form.hex(),
                cover_aut: m.aut_order,
                slim_aut,
            });
            (star, mismatch)
        })
        .collect();
    let mut aut_star_violations = Vec::new();
    let mut aut_mismatches = Vec::new();
    for (m, (star, mismatch)) in x.members.iter().zip(checks) {
        if star {
            aut_star_violations.push(m.form.hex());
        }
        aut_mismatches.extend(mismatch);
    }
    let verdict = if x.len() == y.len() && aut_star_violations.is_empty() && aut_mismatches.is_empty() {
        Verdict::UniqueCovers
    } else {
        Verdict::Inconclusive
    };
    let report = VerificationReport {
        family: h.clone(),
        order,
        x_count: x.len(),
        y_count: y.len(),
        x_certificates: x.members.iter().map(|m| m.form.hex()).collect(),
        y_certificates: y.members.iter().map(|m| m.form.hex()).collect(),
        aut_star_violations,
        aut_mismatches,
        verdict,
    };
    Ok((report, y))
}

/// Checks the four-condition certificate at order `n` for a closed family
/// containing h2. Surjectivity of the slim-subgraph map holds by
/// construction once the family is closed.
pub fn verify_order(h: &FamilySpec, n: usize) -> Result<VerificationReport> {
    require_closed_with_h2(h)?;
    Ok(report_from(h, n)?.0)
}

/// Exhaustive cover search for one labeled graph.
pub fn check_unique_for_graph(g: &SlimGraph, h: &FamilySpec) -> Result<CoverUniqueness> {
    let mut covers = find_covers(g, h)?;
    Ok(match covers.len() {
        0 => CoverUniqueness::NoCover,
        1 => CoverUniqueness::Unique(covers.pop().unwrap()),
        _ => CoverUniqueness::NotUnique(CounterexampleWitness {
            graph: g.clone(),
            cover_classes: covers,
        }),
    })
}

/// The first member of `y`, in certificate order, without a unique cover.
pub fn first_witness(y: &LineGraphFamily, h: &FamilySpec) -> Result<Option<CounterexampleWitness>> {
    let checks: Vec<Option<CounterexampleWitness>> = y
        .members
        .par_iter()
        .map(|m| check_unique_for_graph(&m.graph, h).map(|c| c.witness().cloned()))
        .collect::<Result<_>>()?;
    Ok(checks.into_iter().flatten().next())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderEvidence {
    pub order: usize,
    /// The lower bound alone rules this order out.
    pub below_bound: bool,
    pub report: Option<VerificationReport>,
    pub witness: Option<CounterexampleWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NhSearch {
    pub family: FamilySpec,
    pub lower_bound: usize,
    pub max_order: usize,
    /// The first certified order, if any up to `max_order`.
    pub n_h: Option<usize>,
    /// Every order from 7 below `n_h` is ruled out by the bound or a witness.
    pub exact: bool,
    pub evidence: Vec<OrderEvidence>,
}

/// Searches for N_H. Orders from `max(7, lower bound)` are certified in
/// turn, with a counterexample search at each inconclusive one; orders from 6
/// below that are searched for counterexamples too. The result is exact when
/// every order from 7 below it is ruled out by the bound or by a witness.
pub fn search_nh(h: &FamilySpec, n_max: usize) -> Result<NhSearch> {
    if !h.contains_h2() {
        return Err(Error::MissingH2);
    }
    if !h.is_subset_of_o() {
        return Err(Error::FamilyOutsideO);
    }
    let closed = bar_closure(h)?;
    let bound = lower_bound(&closed)?;
    let mut evidence = Vec::new();
    let mut n_h = None;
    for n in bound.max(7)..=n_max {
        let (report, y) = report_from(&closed, n)?;
        let done = report.verdict == Verdict::UniqueCovers;
        let witness = if done { None } else { first_witness(&y, &closed)? };
        evidence.push(OrderEvidence {
            order: n,
            below_bound: false,
            report: Some(report),
            witness,
        });
        if done {
            n_h = Some(n);
            break;
        }
    }
    let mut below = Vec::new();
    for m in 6..bound.max(7).min(n_max + 1) {
        let x = enumerate_sums(&closed, m)?;
        let y = slim_line_graphs(&x)?;
        below.push(OrderEvidence {
            order: m,
            below_bound: m < bound,
            report: None,
            witness: first_witness(&y, &closed)?,
        });
    }
    below.append(&mut evidence);
    let exact = n_h.is_some_and(|n| {
        below
            .iter()
            .filter(|e| e.order >= 7 && e.order < n)
            .all(|e| e.below_bound || e.witness.is_some())
    });
    Ok(NhSearch {
        family: closed,
        lower_bound: bound,
        max_order: n_max,
        n_h,
        exact,
        evidence: below,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::{cover_equivalent, is_isomorphic};
    use crate::family::Catalog::*;

    fn closed(c: &[Catalog]) -> FamilySpec {
        bar_closure(&FamilySpec::from_catalog(c).unwrap()).unwrap()
    }

    fn k3() -> SlimGraph {
        SlimGraph::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap()
    }

    #[test]
    fn family_preconditions() {
        let no_h2 = FamilySpec::from_catalog(&[H3]).unwrap();
        assert_eq!(verify_order(&no_h2, 3), Err(Error::MissingH2));
        let open = FamilySpec::from_catalog(&[H2, H5]).unwrap();
        assert_eq!(verify_order(&open, 3), Err(Error::FamilyNotClosed));
        assert_eq!(search_nh(&no_h2, 8), Err(Error::MissingH2));
        let outside = FamilySpec::from_catalog(&[H1, H2]).unwrap();
        assert_eq!(search_nh(&outside, 8), Err(Error::FamilyOutsideO));
    }

    #[test]
    fn triangle_has_two_covers() {
        let c = check_unique_for_graph(&k3(), &closed(&[H2])).unwrap();
        let w = c.witness().expect("K3 has two covers");
        assert_eq!(w.cover_classes.len(), 2);
        assert_eq!(cover_equivalent(&w.cover_classes[0], &w.cover_classes[1], &[0, 1, 2]), Ok(false));
        let k1 = SlimGraph::new(1, &[]).unwrap();
        assert!(check_unique_for_graph(&k1, &closed(&[H2])).unwrap().is_unique());
    }

    #[test]
    fn uncoverable_graph() {
        // the claw is not a line graph
        let claw = SlimGraph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(check_unique_for_graph(&claw, &closed(&[H2])).unwrap(), CoverUniqueness::NoCover);
    }

    #[test]
    fn small_orders_are_inconclusive_for_h2() {
        let r = verify_order(&closed(&[H2]), 3).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert_eq!((r.x_count, r.y_count), (3, 2));
    }

    #[test]
    fn reports_are_deterministic() {
        let f = closed(&[H2, H3]);
        let a = serde_json::to_string(&verify_order(&f, 6).unwrap()).unwrap();
        let b = serde_json::to_string(&verify_order(&f, 6).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn witness_graph_is_a_line_graph() {
        let f = closed(&[H2]);
        let y = slim_line_graphs(&enumerate_sums(&f, 6).unwrap()).unwrap();
        let w = first_witness(&y, &f).unwrap().expect("order 6 has a counterexample");
        for c in &w.cover_classes {
            assert!(is_isomorphic(&c.slim_subgraph().into_hoffman(), w.graph.as_hoffman()));
        }
    }
}
