//! Isomorphism decisions for carpet graphs.
//!
//! The fast procedures compare invariants: distance sequences for rooted
//! finite approximations, and cofinality of tails up to the dihedral group
//! for the unrooted limit graphs. The backtracking search in this module
//! decides isomorphism exactly on small graphs and is used to check the
//! fast procedures.

use std::collections::{BTreeMap, VecDeque};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::addressing::{words_for_coord, Coord, Isometry};
use crate::ball::limit_ball;
use crate::error::{CarpetError, Result};
use crate::graph::{Atlas, CarpetGraph, DistanceSeq};
use crate::word::{cofinal, dihedral_group, FiniteWord, GroupElement, InfiniteWord};

/// Largest graph the backtracking oracle accepts.
pub const ORACLE_MAX_VERTICES: usize = 10_000;

/// Largest level [`automorphisms`] will search.
pub const AUTOMORPHISM_MAX_LEVEL: u32 = 4;

/// Plain undirected graph on `0..n` with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        SimpleGraph { adj }
    }

    pub fn from_carpet(g: &CarpetGraph) -> Self {
        SimpleGraph {
            adj: (0..g.vertex_count() as u32)
                .map(|v| g.neighbors(v).iter().map(|&u| u as usize).collect())
                .collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    fn bfs(&self, sources: &[usize]) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.adj.len()];
        let mut queue = VecDeque::new();
        for &s in sources {
            dist[s] = 0;
            queue.push_back(s);
        }
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if dist[v] == u32::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }
}

/// Per-vertex invariant: degree, sorted neighbour degrees, hop distance to
/// the nearest degree-2 vertex, and distance from the root when rooted.
type Invariant = (usize, Vec<usize>, u32, u32);

fn invariants(g: &SimpleGraph, root: Option<usize>) -> Vec<Invariant> {
    let deg2: Vec<usize> = (0..g.vertex_count())
        .filter(|&v| g.adj[v].len() == 2)
        .collect();
    let to_deg2 = g.bfs(&deg2);
    let from_root = match root {
        Some(r) => g.bfs(&[r]),
        None => vec![0; g.vertex_count()],
    };
    (0..g.vertex_count())
        .map(|v| {
            let mut nd: Vec<usize> = g.adj[v].iter().map(|&u| g.adj[u].len()).collect();
            nd.sort_unstable();
            (g.adj[v].len(), nd, to_deg2[v], from_root[v])
        })
        .collect()
}

/// Invariants of both graphs replaced by shared class numbers.
fn classes(a: &[Invariant], b: &[Invariant]) -> (Vec<usize>, Vec<usize>) {
    let mut ids: BTreeMap<&Invariant, usize> = BTreeMap::new();
    for inv in a.iter().chain(b) {
        let next = ids.len();
        ids.entry(inv).or_insert(next);
    }
    (
        a.iter().map(|i| ids[i]).collect(),
        b.iter().map(|i| ids[i]).collect(),
    )
}

/// Backtracking search for isomorphisms `g1 → g2` respecting the classes.
/// `visit` receives each complete mapping and returns whether to continue.
struct Matcher<'a> {
    g1: &'a SimpleGraph,
    g2: &'a SimpleGraph,
    class1: Vec<usize>,
    class2: Vec<usize>,
    order: Vec<usize>,
    /// For `order[k]`, an earlier-ordered neighbour if any.
    anchor: Vec<Option<usize>>,
}

impl<'a> Matcher<'a> {
    fn new(
        g1: &'a SimpleGraph,
        g2: &'a SimpleGraph,
        class1: Vec<usize>,
        class2: Vec<usize>,
        start: usize,
    ) -> Self {
        let n = g1.vertex_count();
        // rarest classes first when a new component starts
        let mut freq = BTreeMap::new();
        for &c in &class1 {
            *freq.entry(c).or_insert(0usize) += 1;
        }
        let mut starts: Vec<usize> = (0..n).collect();
        starts.sort_by_key(|&v| (freq[&class1[v]], v));

        let mut rank = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut anchor = Vec::with_capacity(n);
        for s in std::iter::once(start).chain(starts) {
            if n == 0 || rank[s] != usize::MAX {
                continue;
            }
            rank[s] = order.len();
            order.push(s);
            anchor.push(None);
            let mut head = order.len() - 1;
            while head < order.len() {
                let u = order[head];
                head += 1;
                for &v in &g1.adj[u] {
                    if rank[v] == usize::MAX {
                        rank[v] = order.len();
                        order.push(v);
                        anchor.push(Some(u));
                    }
                }
            }
        }
        Matcher {
            g1,
            g2,
            class1,
            class2,
            order,
            anchor,
        }
    }

    fn candidates(&self, k: usize, map: &[usize], used: &[bool]) -> Vec<usize> {
        let v = self.order[k];
        let want = self.class1[v];
        let pool: Vec<usize> = match self.anchor[k] {
            Some(p) => self.g2.adj[map[p]].clone(),
            None => (0..self.g2.vertex_count()).collect(),
        };
        let mapped_nbrs: Vec<usize> = self.g1.adj[v]
            .iter()
            .copied()
            .filter(|&u| map[u] != usize::MAX)
            .collect();
        pool.into_iter()
            .filter(|&c| !used[c] && self.class2[c] == want)
            .filter(|&c| mapped_nbrs.iter().all(|&u| self.g2.has_edge(map[u], c)))
            .filter(|&c| self.g2.adj[c].iter().filter(|&&x| used[x]).count() == mapped_nbrs.len())
            .collect()
    }

    fn run(&self, forced_first: Option<usize>, mut visit: impl FnMut(&[usize]) -> bool) {
        let n = self.order.len();
        if n == 0 {
            visit(&[]);
            return;
        }
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; self.g2.vertex_count()];
        let mut cands: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut next = vec![0usize; n];
        let mut current: Vec<Option<usize>> = vec![None; n];

        cands[0] = match forced_first {
            Some(t) => self
                .candidates(0, &map, &used)
                .into_iter()
                .filter(|&c| c == t)
                .collect(),
            None => self.candidates(0, &map, &used),
        };
        let mut depth = 0usize;
        loop {
            if let Some(c) = current[depth].take() {
                map[self.order[depth]] = usize::MAX;
                used[c] = false;
            }
            if next[depth] < cands[depth].len() {
                let c = cands[depth][next[depth]];
                next[depth] += 1;
                map[self.order[depth]] = c;
                used[c] = true;
                current[depth] = Some(c);
                if depth + 1 == n {
                    if !visit(&map) {
                        return;
                    }
                } else {
                    depth += 1;
                    cands[depth] = self.candidates(depth, &map, &used);
                    next[depth] = 0;
                }
            } else if depth == 0 {
                return;
            } else {
                depth -= 1;
            }
        }
    }
}

/// Exact isomorphism test by backtracking. With `roots = Some((r1, r2))`
/// only isomorphisms sending `r1` to `r2` count.
pub fn graph_iso_bruteforce(
    g1: &SimpleGraph,
    g2: &SimpleGraph,
    roots: Option<(usize, usize)>,
) -> Result<bool> {
    for g in [g1, g2] {
        if g.vertex_count() > ORACLE_MAX_VERTICES {
            return Err(CarpetError::InvalidArgument(format!(
                "graph with {} vertices exceeds the oracle limit of {ORACLE_MAX_VERTICES}",
                g.vertex_count()
            )));
        }
    }
    if let Some((r1, r2)) = roots {
        if r1 >= g1.vertex_count() || r2 >= g2.vertex_count() {
            return Err(CarpetError::InvalidArgument(
                "root index out of range".into(),
            ));
        }
    }
    if g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return Ok(false);
    }
    let inv1 = invariants(g1, roots.map(|r| r.0));
    let inv2 = invariants(g2, roots.map(|r| r.1));
    let (mut s1, mut s2) = (inv1.clone(), inv2.clone());
    s1.sort();
    s2.sort();
    if s1 != s2 {
        return Ok(false);
    }
    let (class1, class2) = classes(&inv1, &inv2);
    let start = roots.map_or(0, |r| r.0);
    let matcher = Matcher::new(g1, g2, class1, class2, start);
    let mut found = false;
    matcher.run(roots.map(|r| r.1), |_| {
        found = true;
        false
    });
    Ok(found)
}

/// All automorphisms of `g`, each as the image array `perm[v]`.
pub fn automorphisms(g: &CarpetGraph) -> Result<Vec<Vec<u32>>> {
    if g.level() > AUTOMORPHISM_MAX_LEVEL {
        return Err(CarpetError::InvalidArgument(format!(
            "automorphism search is limited to level {AUTOMORPHISM_MAX_LEVEL}, got {}",
            g.level()
        )));
    }
    let sg = SimpleGraph::from_carpet(g);
    let inv = invariants(&sg, None);
    let (c1, c2) = classes(&inv, &inv);
    let mut freq = BTreeMap::new();
    for &c in &c1 {
        *freq.entry(c).or_insert(0usize) += 1;
    }
    let start = (0..sg.vertex_count())
        .min_by_key(|&v| (freq[&c1[v]], v))
        .unwrap_or(0);
    let matcher = Matcher::new(&sg, &sg, c1, c2, start);
    let mut out = Vec::new();
    matcher.run(None, |m| {
        out.push(m.iter().map(|&v| v as u32).collect());
        true
    });
    out.sort();
    Ok(out)
}

/// The square symmetry that acts on `g`'s coordinates as `perm`, if any.
pub fn isometry_of(g: &CarpetGraph, perm: &[u32]) -> Option<Isometry> {
    Isometry::all().into_iter().find(|iso| {
        (0..g.vertex_count() as u32)
            .all(|v| iso.apply(g.coord(v), g.side()) == g.coord(perm[v as usize]))
    })
}

/// Outcome of an unrooted comparison. `witness` is `σ ∈ G` with
/// `σ(tail(left))` cofinal to `tail(right)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IsoVerdict {
    pub isomorphic: bool,
    pub witness: Option<GroupElement>,
}

impl Serialize for IsoVerdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("IsoVerdict", 2)?;
        st.serialize_field("isomorphic", &self.isomorphic)?;
        st.serialize_field("witness", &self.witness.map(|w| w.cycle_notation()))?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedPair {
    pub left: InfiniteWord,
    pub right: InfiniteWord,
    pub depth: u32,
}

/// Rooted isomorphism of `Γ^N_left` and `Γ^N_right`, decided by comparing
/// distance sequences through depth `N`.
pub fn rooted_iso_finite(p: &RootedPair) -> Result<bool> {
    let atlas = Atlas::global();
    Ok(atlas.d_sequence(&p.left, p.depth)? == atlas.d_sequence(&p.right, p.depth)?)
}

/// If the distance sequences differ by depth `max_depth`, the least radius
/// at which the rooted limit balls are not isomorphic.
pub fn find_witness_radius(
    left: &InfiniteWord,
    right: &InfiniteWord,
    max_depth: u32,
) -> Result<Option<u32>> {
    let atlas = Atlas::global();
    let dl = atlas.d_sequence(left, max_depth)?;
    let dr = atlas.d_sequence(right, max_depth)?;
    let Some(k) = dl.first_difference(&dr) else {
        return Ok(None);
    };
    let max_radius = (2 * 3u32.pow(k - 1) + 2).min(64);
    for r in 1..=max_radius {
        let (gl, rl) = limit_ball(left, r)?.to_graph();
        let (gr, rr) = limit_ball(right, r)?.to_graph();
        if !graph_iso_bruteforce(&gl, &gr, Some((rl, rr)))? {
            return Ok(Some(r));
        }
    }
    Err(CarpetError::WitnessNotFound {
        left: left.to_string(),
        right: right.to_string(),
        max_radius,
    })
}

/// Unrooted isomorphism of limit graphs: some `σ ∈ G` makes the tails
/// cofinal. Root letters play no part. The first witness in the order of
/// [`dihedral_group`] is reported.
pub fn unrooted_iso(left: &InfiniteWord, right: &InfiniteWord) -> IsoVerdict {
    let witness = dihedral_group()
        .into_iter()
        .find(|sigma| cofinal(&sigma.apply(&left.tail), &right.tail));
    IsoVerdict {
        isomorphic: witness.is_some(),
        witness,
    }
}

/// The image of `w` under the symmetry realizing `sigma`: the root corner
/// moves with the symmetry and the tail is relabelled letterwise.
pub fn transport(w: &InfiniteWord, sigma: &GroupElement) -> InfiniteWord {
    let iso = Isometry::for_element(sigma).expect("every group element is a square symmetry");
    InfiniteWord::from_tail(iso.root_image(w.root), sigma.apply(&w.tail))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassMember {
    pub word: InfiniteWord,
    /// Witness from the class representative (the first member) to this word.
    pub witness: GroupElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoClass {
    pub members: Vec<ClassMember>,
}

impl IsoClass {
    pub fn representative(&self) -> &InfiniteWord {
        &self.members[0].word
    }
}

/// Partition `words` into unrooted isomorphism classes, in first-seen order.
pub fn classify(words: &[InfiniteWord]) -> Vec<IsoClass> {
    let mut classes: Vec<IsoClass> = Vec::new();
    for w in words {
        let hit = classes
            .iter_mut()
            .find_map(|c| unrooted_iso(c.representative(), w).witness.map(|s| (c, s)));
        match hit {
            Some((class, witness)) => class.members.push(ClassMember {
                word: w.clone(),
                witness,
            }),
            None => classes.push(IsoClass {
                members: vec![ClassMember {
                    word: w.clone(),
                    witness: GroupElement::IDENTITY,
                }],
            }),
        }
    }
    classes
}

/// One ordered vertex pair on which distance-sequence equality and the
/// existence of an automorphism disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgreementMismatch {
    pub u: Coord,
    pub v: Coord,
    pub dseq_u: DistanceSeq,
    pub dseq_v: DistanceSeq,
    pub automorphic: bool,
}

#[derive(Clone, Debug, Default)]
pub struct AgreementReport {
    pub level: u32,
    pub vertices: usize,
    pub pairs: usize,
    pub agreeing: usize,
    pub mismatches: Vec<AgreementMismatch>,
    /// Vertices whose representative words disagree on the sequence.
    pub ambiguous: Vec<Coord>,
}

impl AgreementReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.ambiguous.is_empty()
    }
}

/// Distance sequence `(d_2, ..., d_|w|)` of a finite word.
pub fn d_sequence_of_word(atlas: &Atlas, w: &FiniteWord) -> Result<DistanceSeq> {
    let values = (2..=w.level())
        .map(|i| {
            let prefix = FiniteWord::new(w.root, w.digits[..i as usize - 1].to_vec());
            atlas.internal_distance(i, crate::addressing::word_to_coord(&prefix))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DistanceSeq::new(values))
}

/// Compares, over all ordered vertex pairs of `Γ_level`, equality of
/// distance sequences against membership in one automorphism orbit.
pub fn orbit_agreement(level: u32) -> Result<AgreementReport> {
    if level < 2 {
        return Err(CarpetError::InvalidArgument(
            "distance sequences start at level 2".into(),
        ));
    }
    let atlas = Atlas::global();
    let data = atlas.level(level)?;
    let g = &data.graph;
    let autos = automorphisms(g)?;
    let n = g.vertex_count();

    let mut orbit = vec![usize::MAX; n];
    for v in 0..n {
        if orbit[v] == usize::MAX {
            for a in &autos {
                orbit[a[v] as usize] = v;
            }
        }
    }

    let mut report = AgreementReport {
        level,
        vertices: n,
        ..AgreementReport::default()
    };
    let mut dseqs = Vec::with_capacity(n);
    for v in 0..n as u32 {
        let c = g.coord(v);
        let words = words_for_coord(c, level)?;
        let seqs = words
            .iter()
            .map(|w| d_sequence_of_word(atlas, w))
            .collect::<Result<Vec<_>>>()?;
        if seqs.windows(2).any(|p| p[0] != p[1]) {
            report.ambiguous.push(c);
        }
        dseqs.push(seqs.into_iter().next().ok_or_else(|| {
            CarpetError::InvalidArgument(format!("vertex {c} has no naming word"))
        })?);
    }
    for u in 0..n {
        for v in 0..n {
            report.pairs += 1;
            let same_seq = dseqs[u] == dseqs[v];
            let automorphic = orbit[u] == orbit[v];
            if same_seq == automorphic {
                report.agreeing += 1;
            } else {
                report.mismatches.push(AgreementMismatch {
                    u: g.coord(u as u32),
                    v: g.coord(v as u32),
                    dseq_u: dseqs[u].clone(),
                    dseq_v: dseqs[v].clone(),
                    automorphic,
                });
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::ball_at_level;
    use crate::graph::build_cells;

    fn word(s: &str) -> InfiniteWord {
        s.parse().unwrap()
    }

    fn cycle(n: usize) -> SimpleGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        SimpleGraph::from_edges(n, &edges)
    }

    #[test]
    fn oracle_on_small_graphs() {
        assert!(graph_iso_bruteforce(&cycle(6), &cycle(6), None).unwrap());
        let two_triangles =
            SimpleGraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        assert!(!graph_iso_bruteforce(&cycle(6), &two_triangles, None).unwrap());
        assert!(graph_iso_bruteforce(&two_triangles, &two_triangles, Some((0, 4))).unwrap());
        // path rooted at an end vs rooted in the middle
        let path = SimpleGraph::from_edges(3, &[(0, 1), (1, 2)]);
        assert!(!graph_iso_bruteforce(&path, &path, Some((0, 1))).unwrap());
        assert!(graph_iso_bruteforce(&path, &path, Some((0, 2))).unwrap());
        let empty = SimpleGraph::from_edges(0, &[]);
        assert!(graph_iso_bruteforce(&empty, &empty, None).unwrap());
    }

    #[test]
    fn oracle_size_guard() {
        let big = SimpleGraph::from_edges(ORACLE_MAX_VERTICES + 1, &[]);
        assert!(graph_iso_bruteforce(&big, &big, None).is_err());
    }

    #[test]
    fn oracle_on_carpet_levels_and_balls() {
        let g2 = SimpleGraph::from_carpet(&build_cells(2).unwrap());
        assert!(graph_iso_bruteforce(&g2, &g2, None).unwrap());
        let ball = |w: &str| ball_at_level(&word(w), 2, 4).unwrap().to_graph();
        let (a, ra) = ball("a:(0)");
        let (b, rb) = ball("b:(2)");
        let (c, rc) = ball("a:(7)");
        assert!(graph_iso_bruteforce(&a, &b, Some((ra, rb))).unwrap());
        assert!(!graph_iso_bruteforce(&a, &c, Some((ra, rc))).unwrap());
    }

    #[test]
    fn automorphism_counts() {
        for n in 1..=3 {
            let g = build_cells(n).unwrap();
            let autos = automorphisms(&g).unwrap();
            assert_eq!(autos.len(), 8, "level {n}");
            let id: Vec<u32> = (0..g.vertex_count() as u32).collect();
            assert!(autos.contains(&id));
            for a in &autos {
                assert!(isometry_of(&g, a).is_some());
            }
        }
        assert!(automorphisms(&build_cells(5).unwrap()).is_err());
    }

    #[test]
    fn rooted_finite_examples() {
        let pair = |l: &str, r: &str, depth| RootedPair {
            left: word(l),
            right: word(r),
            depth,
        };
        assert!(rooted_iso_finite(&pair("a:(0)", "c:(4)", 4)).unwrap());
        assert!(!rooted_iso_finite(&pair("a:(0)", "a:(7)", 2)).unwrap());
        assert!(rooted_iso_finite(&pair("b:3(61)", "b:3(61)", 5)).unwrap());
        assert!(rooted_iso_finite(&pair("a:(0)", "a:(0)", 1)).is_err());
    }

    #[test]
    fn witness_radius_examples() {
        let r = find_witness_radius(&word("a:(0)"), &word("a:(7)"), 4).unwrap();
        assert!(matches!(r, Some(r) if r <= 3), "{r:?}");
        assert_eq!(
            find_witness_radius(&word("a:(0)"), &word("c:(4)"), 6).unwrap(),
            None
        );
        let w = word("d:12(34)");
        assert_eq!(find_witness_radius(&w, &w, 5).unwrap(), None);
    }

    #[test]
    fn unrooted_examples() {
        let v = unrooted_iso(&word("a:(0)"), &word("c:(4)"));
        assert!(v.isomorphic);
        assert_eq!(v.witness, Some(GroupElement::R.pow(2)));
        let v = unrooted_iso(&word("a:(0)"), &word("d:(0)"));
        assert_eq!(v.witness, Some(GroupElement::IDENTITY));
        let v = unrooted_iso(&word("a:(0)"), &word("a:(7)"));
        assert!(!v.isomorphic);
        assert_eq!(v.witness, None);
    }

    #[test]
    fn verdict_json() {
        let v = unrooted_iso(&word("a:(0)"), &word("c:(4)"));
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"isomorphic":true,"witness":"(04)(15)(26)(37)"}"#
        );
        let v = unrooted_iso(&word("a:(0)"), &word("a:(7)"));
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"isomorphic":false,"witness":null}"#
        );
    }

    #[test]
    fn classify_examples() {
        let ws: Vec<_> = ["a:(0)", "c:(4)", "a:(7)"]
            .iter()
            .map(|s| word(s))
            .collect();
        let classes = classify(&ws);
        assert_eq!(classes.len(), 2);
        assert_eq!(classes[0].members.len(), 2);
        assert_eq!(classes[1].members[0].word, ws[2]);
        assert_eq!(classify(&ws[..1]).len(), 1);

        let odd: Vec<_> = ["a:(01)", "a:(03)", "a:(05)", "a:(07)"]
            .iter()
            .map(|s| word(s))
            .collect();
        for class in classify(&odd) {
            for m in &class.members {
                let v = unrooted_iso(class.representative(), &m.word);
                assert_eq!(v.witness, Some(m.witness));
            }
        }
    }

    #[test]
    fn unrooted_relation_is_an_equivalence() {
        let ws: Vec<_> = [
            "a:(0)",
            "b:(2)",
            "c:1(4)",
            "d:(6)",
            "a:(7)",
            "b:(3)",
            "a:(01)",
            "c:(45)",
            "d:7(23)",
            "a:(10)",
            "b:(0011)",
            "c:(4477)",
            "a:5(2211)",
        ]
        .iter()
        .map(|s| word(s))
        .collect();
        for a in &ws {
            assert!(unrooted_iso(a, a).isomorphic);
            for b in &ws {
                let ab = unrooted_iso(a, b);
                assert_eq!(ab.isomorphic, unrooted_iso(b, a).isomorphic);
                for c in &ws {
                    let bc = unrooted_iso(b, c);
                    if let (Some(s1), Some(s2)) = (ab.witness, bc.witness) {
                        let composed = s2.compose(&s1);
                        assert!(cofinal(&composed.apply(&a.tail), &c.tail));
                    }
                }
            }
        }
    }

    #[test]
    fn transported_words_keep_their_distance_sequences() {
        for w in ["a:(0)", "b:3(61)", "c:(275)", "d:40(1)"] {
            let w = word(w);
            let base = crate::graph::d_sequence(&w, 5).unwrap();
            for sigma in dihedral_group() {
                assert_eq!(
                    crate::graph::d_sequence(&transport(&w, &sigma), 5).unwrap(),
                    base
                );
            }
        }
    }

    #[test]
    fn sequences_match_orbits_on_level_two() {
        let report = orbit_agreement(2).unwrap();
        assert_eq!(report.pairs, 256);
        assert!(report.passed(), "{:?}", report.mismatches.first());
    }
}
