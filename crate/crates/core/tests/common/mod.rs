#![allow(dead_code)]

use hoffman::{
    compose_sum, io, Catalog, FatSlot, FatSlotAssignment, HoffmanGraph, SlimGraph, VertexId,
};
use rand::Rng;

pub fn fixture(name: &str) -> String {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn fixture_graph(name: &str) -> HoffmanGraph {
    io::read_hgf(&fixture(name)).unwrap()
}

pub fn octahedron() -> SlimGraph {
    SlimGraph::try_from(fixture_graph("octahedron.hgf")).unwrap()
}

pub fn k3() -> SlimGraph {
    io::read_graph6(&fixture("k3.g6")).unwrap()
}

fn fats_of(h: &HoffmanGraph, x: VertexId) -> Vec<VertexId> {
    h.fat_vertices().filter(|&f| h.adjacent(x, f)).collect()
}

/// Whether slims `a` and `b` split `h` as a sum: every cross pair shares at
/// most one fat, and shares one exactly when adjacent.
fn splits(h: &HoffmanGraph, a: &[VertexId], b: &[VertexId]) -> bool {
    a.iter().all(|&x| {
        let fx = fats_of(h, x);
        b.iter().all(|&y| {
            let common = fats_of(h, y).iter().filter(|f| fx.contains(f)).count();
            common <= 1 && (common == 1) == h.adjacent(x, y)
        })
    })
}

/// Brute-force decomposition: split the slim set into any two nonempty
/// halves forming a sum, recurse into both, stop when no split exists.
pub fn bipartition_oracle(h: &HoffmanGraph) -> Vec<Vec<VertexId>> {
    fn rec(h: &HoffmanGraph, slims: Vec<VertexId>, out: &mut Vec<Vec<VertexId>>) {
        let n = slims.len();
        for mask in 1u64..(1 << (n - 1)) {
            // slims[n - 1] always lands in `b`
            let a: Vec<_> = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| slims[i]).collect();
            let b: Vec<_> = (0..n).filter(|&i| mask >> i & 1 == 0).map(|i| slims[i]).collect();
            if splits(h, &a, &b) {
                rec(h, a, out);
                rec(h, b, out);
                return;
            }
        }
        out.push(slims);
    }
    let mut out = Vec::new();
    rec(h, h.slim_vertices().collect(), &mut out);
    for p in &mut out {
        p.sort_unstable();
    }
    out.sort();
    out
}

/// Calls `f` on every valid labeled Hoffman graph with `s` slims and `fat`
/// fats.
pub fn for_each_hoffman(s: usize, fat: usize, mut f: impl FnMut(&HoffmanGraph)) {
    let pairs: Vec<(usize, usize)> = (0..s).flat_map(|u| (u + 1..s).map(move |v| (u, v))).collect();
    let subsets = (1usize << s) - 1;
    let mut fat_masks = vec![1usize; fat];
    for slim_mask in 0u32..(1 << pairs.len()) {
        fat_masks.iter_mut().for_each(|m| *m = 1);
        loop {
            let mut edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| slim_mask >> i & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            for (j, &m) in fat_masks.iter().enumerate() {
                edges.extend((0..s).filter(|&x| m >> x & 1 == 1).map(|x| (x, s + j)));
            }
            f(&HoffmanGraph::new(s, fat, &edges).unwrap());
            // odometer over nonempty neighborhoods
            let mut j = 0;
            while j < fat && fat_masks[j] == subsets {
                fat_masks[j] = 1;
                j += 1;
            }
            if j == fat {
                break;
            }
            fat_masks[j] += 1;
        }
    }
}

pub const TEMPLATES: [Catalog; 5] = [Catalog::H1, Catalog::H2, Catalog::H3, Catalog::H5, Catalog::H5p];

/// A random sum of catalog graphs with at most `max_slim` slim vertices,
/// returned with its addend parts.
pub fn random_sum(rng: &mut impl Rng, max_slim: usize) -> (HoffmanGraph, Vec<Vec<VertexId>>) {
    loop {
        let mut templates = Vec::new();
        let mut slims = 0;
        let target = rng.gen_range(1..=max_slim);
        while slims < target {
            let t = TEMPLATES[rng.gen_range(0..TEMPLATES.len())].graph();
            if slims + t.slim_count() > max_slim {
                continue;
            }
            slims += t.slim_count();
            templates.push(t);
        }
        let mut groups: Vec<Vec<FatSlot>> = Vec::new();
        for (addend, t) in templates.iter().enumerate() {
            for fat in 0..t.fat_count() {
                let slot = FatSlot { addend, fat };
                let k = rng.gen_range(0..=groups.len());
                if k == groups.len() {
                    groups.push(vec![slot]);
                } else {
                    groups[k].push(slot);
                }
            }
        }
        let a = FatSlotAssignment {
            addend_templates: templates,
            groups,
        };
        if let Ok(h) = compose_sum(&a) {
            return (h, a.parts());
        }
    }
}
