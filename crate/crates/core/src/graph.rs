//! Construction of the level-`n` carpet graph `Γ_n`, its outer and internal
//! boundaries, BFS distances and the per-level distance sequences.
//!
//! Two builders exist on purpose. [`build_cells`] scans the lattice using the
//! base-3 cell predicate; [`build_recursive`] glues eight translated copies
//! of the previous level. They must agree vertex-for-vertex and
//! edge-for-edge.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::addressing::{
    cell_present, model_layout, side_length, sides_of_coord, word_to_coord, Coord,
};
use crate::error::{CarpetError, Result};
use crate::limits::check_level;
use crate::word::{InfiniteWord, Letter};

pub type VertexId = u32;

const UNREACHED: u32 = u32::MAX;

/// The finite carpet graph `Γ_n` in its planar embedding.
///
/// Vertex ids follow the canonical coordinate order (row-major from the
/// bottom-left), so two graphs with the same vertex and edge sets are equal
/// field-for-field.
#[derive(Clone, PartialEq, Eq)]
pub struct CarpetGraph {
    level: u32,
    side: u64,
    coords: Vec<Coord>,
    offsets: Vec<usize>,
    neighbors: Vec<VertexId>,
    boundary: Vec<VertexId>,
    internal_boundary: Vec<VertexId>,
}

impl fmt::Debug for CarpetGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CarpetGraph")
            .field("level", &self.level)
            .field("vertices", &self.vertex_count())
            .field("edges", &self.edge_count())
            .finish()
    }
}

impl CarpetGraph {
    pub fn level(&self) -> u32 {
        self.level
    }

    /// Side length `3^{n-1}` of the bounding square.
    pub fn side(&self) -> u64 {
        self.side
    }

    pub fn vertex_count(&self) -> usize {
        self.coords.len()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn coords(&self) -> &[Coord] {
        &self.coords
    }

    pub fn coord(&self, v: VertexId) -> Coord {
        self.coords[v as usize]
    }

    pub fn vertex(&self, c: Coord) -> Option<VertexId> {
        self.coords.binary_search(&c).ok().map(|i| i as VertexId)
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        let v = v as usize;
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    /// All edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        (0..self.vertex_count() as VertexId).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&v| v > u)
                .map(move |&v| (u, v))
        })
    }

    /// The outer boundary `B_n` (level ≥ 2).
    pub fn boundary(&self) -> Result<&[VertexId]> {
        self.require_level_two("boundary")?;
        Ok(&self.boundary)
    }

    /// The internal boundary `I_b(n)` (level ≥ 2).
    pub fn internal_boundary(&self) -> Result<&[VertexId]> {
        self.require_level_two("internal boundary")?;
        Ok(&self.internal_boundary)
    }

    fn require_level_two(&self, what: &str) -> Result<()> {
        if self.level < 2 {
            return Err(CarpetError::InvalidArgument(format!(
                "the {what} is defined from level 2; got level {}",
                self.level
            )));
        }
        Ok(())
    }

    /// Assembles a graph from coordinate sets. `vertices` and `edges` may
    /// contain duplicates and need not be sorted.
    fn from_parts(
        level: u32,
        mut vertices: Vec<Coord>,
        edges: Vec<(Coord, Coord)>,
        mut internal: Vec<Coord>,
    ) -> Result<Self> {
        let side = side_length(level)?;
        vertices.sort_unstable();
        vertices.dedup();
        let id = |c: &Coord| vertices.binary_search(c).map(|i| i as VertexId);

        let mut pairs = Vec::with_capacity(edges.len() * 2);
        for (a, b) in &edges {
            let (Ok(u), Ok(v)) = (id(a), id(b)) else {
                return Err(CarpetError::InvalidArgument(format!(
                    "edge {a}-{b} has an endpoint outside the vertex set"
                )));
            };
            if u == v {
                return Err(CarpetError::InvalidArgument(format!("self-loop at {a}")));
            }
            pairs.push((u, v));
            pairs.push((v, u));
        }
        pairs.sort_unstable();
        pairs.dedup();

        let mut offsets = vec![0usize; vertices.len() + 1];
        for &(u, _) in &pairs {
            offsets[u as usize + 1] += 1;
        }
        for i in 0..vertices.len() {
            offsets[i + 1] += offsets[i];
        }
        let neighbors = pairs.into_iter().map(|(_, v)| v).collect();

        internal.sort_unstable();
        internal.dedup();
        let internal_boundary = internal
            .iter()
            .map(|c| {
                id(c).map_err(|_| {
                    CarpetError::InvalidArgument(format!(
                        "internal boundary point {c} is not a vertex"
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let boundary = outer_boundary(level, side, &vertices);

        Ok(CarpetGraph {
            level,
            side,
            coords: vertices,
            offsets,
            neighbors,
            boundary,
            internal_boundary,
        })
    }
}

fn outer_boundary(level: u32, side: u64, coords: &[Coord]) -> Vec<VertexId> {
    if level < 2 {
        return Vec::new();
    }
    coords
        .iter()
        .enumerate()
        .filter(|(_, &c)| !sides_of_coord(c, side).is_empty())
        .map(|(i, _)| i as VertexId)
        .collect()
}

/// Builds `Γ_n` directly on the lattice: vertices are the corners of kept
/// unit cells, edges their sides.
pub fn build_cells(n: u32) -> Result<CarpetGraph> {
    check_level(n)?;
    let side = side_length(n)?;
    let cells = side as usize;
    let dim = cells + 1;

    let mut kept = vec![false; cells * cells];
    for j in 0..cells {
        for i in 0..cells {
            kept[j * cells + i] = cell_present(i as i128, j as i128, side);
        }
    }
    let cell = |i: isize, j: isize| -> bool {
        i >= 0
            && j >= 0
            && (i as usize) < cells
            && (j as usize) < cells
            && kept[j as usize * cells + i as usize]
    };
    let removed = |i: isize, j: isize| -> bool {
        i >= 0 && j >= 0 && (i as usize) < cells && (j as usize) < cells && !cell(i, j)
    };

    let mut ids = vec![UNREACHED; dim * dim];
    let mut coords = Vec::new();
    let mut internal = Vec::new();
    for y in 0..dim as isize {
        for x in 0..dim as isize {
            if cell(x, y) || cell(x - 1, y) || cell(x, y - 1) || cell(x - 1, y - 1) {
                let id = coords.len() as VertexId;
                ids[y as usize * dim + x as usize] = id;
                coords.push(Coord::new(x as u64, y as u64));
                if removed(x, y) || removed(x - 1, y) || removed(x, y - 1) || removed(x - 1, y - 1)
                {
                    internal.push(id);
                }
            }
        }
    }

    // Neighbour lists come out sorted: below < left < right < above.
    let mut offsets = Vec::with_capacity(coords.len() + 1);
    let mut neighbors = Vec::with_capacity(coords.len() * 4);
    offsets.push(0);
    for c in &coords {
        let (x, y) = (c.x as isize, c.y as isize);
        let at = |x: isize, y: isize| ids[y as usize * dim + x as usize];
        if y > 0 && (cell(x, y - 1) || cell(x - 1, y - 1)) {
            neighbors.push(at(x, y - 1));
        }
        if x > 0 && (cell(x - 1, y) || cell(x - 1, y - 1)) {
            neighbors.push(at(x - 1, y));
        }
        if (x as usize) < cells && (cell(x, y) || cell(x, y - 1)) {
            neighbors.push(at(x + 1, y));
        }
        if (y as usize) < cells && (cell(x, y) || cell(x - 1, y)) {
            neighbors.push(at(x, y + 1));
        }
        offsets.push(neighbors.len());
    }
    neighbors.shrink_to_fit();

    let boundary = outer_boundary(n, side, &coords);
    Ok(CarpetGraph {
        level: n,
        side,
        coords,
        offsets,
        neighbors,
        boundary,
        internal_boundary: if n >= 2 { internal } else { Vec::new() },
    })
}

struct RawLevel {
    vertices: Vec<Coord>,
    edges: Vec<(Coord, Coord)>,
    internal: Vec<Coord>,
}

/// Builds `Γ_n` by placing eight translated copies of `Γ_{n-1}` on the
/// model layout and merging coincident points. The internal boundary is
/// carried along: the copies' internal boundaries plus the perimeter of the
/// new middle square.
pub fn build_recursive(n: u32) -> Result<CarpetGraph> {
    check_level(n)?;
    let raw = recursive_level(n);
    CarpetGraph::from_parts(n, raw.vertices, raw.edges, raw.internal)
}

fn recursive_level(n: u32) -> RawLevel {
    if n == 1 {
        let square = [
            Coord::new(0, 0),
            Coord::new(1, 0),
            Coord::new(1, 1),
            Coord::new(0, 1),
        ];
        let edges = (0..4)
            .map(|k| order(square[k], square[(k + 1) % 4]))
            .collect();
        return RawLevel {
            vertices: square.to_vec(),
            edges,
            internal: Vec::new(),
        };
    }
    let prev = recursive_level(n - 1);
    let sub = 3u64.pow(n - 2);
    let layout = model_layout();
    let mut out = RawLevel {
        vertices: Vec::with_capacity(prev.vertices.len() * 8),
        edges: Vec::with_capacity(prev.edges.len() * 8),
        internal: Vec::with_capacity(prev.internal.len() * 8 + 4 * sub as usize),
    };
    for l in Letter::ALL {
        let (ox, oy) = layout.offset_of(l);
        let shift = |c: &Coord| Coord::new(c.x + ox * sub, c.y + oy * sub);
        out.vertices.extend(prev.vertices.iter().map(shift));
        out.edges
            .extend(prev.edges.iter().map(|(a, b)| (shift(a), shift(b))));
        out.internal.extend(prev.internal.iter().map(shift));
    }
    out.internal.extend(middle_square_perimeter(sub));
    out.vertices.sort_unstable();
    out.vertices.dedup();
    out.edges.sort_unstable();
    out.edges.dedup();
    out.internal.sort_unstable();
    out.internal.dedup();
    out
}

fn order(a: Coord, b: Coord) -> (Coord, Coord) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Lattice points on the boundary of `[sub, 2·sub]²`.
fn middle_square_perimeter(sub: u64) -> impl Iterator<Item = Coord> {
    let (lo, hi) = (sub, 2 * sub);
    (lo..hi).flat_map(move |t| {
        [
            Coord::new(t, lo),
            Coord::new(hi, t),
            Coord::new(hi + lo - t, hi),
            Coord::new(lo, hi + lo - t),
        ]
    })
}

/// `I_b(n)` as coordinates, by the recursive definition alone.
pub fn internal_boundary_by_recursion(n: u32) -> Result<Vec<Coord>> {
    if n < 2 {
        return Err(CarpetError::InvalidArgument(
            "the internal boundary is defined from level 2".into(),
        ));
    }
    check_level(n)?;
    Ok(recursive_level(n).internal)
}

/// `(11/70)·8^n + (8/15)·3^n + 8/7`, evaluated exactly over the common
/// denominator 210.
pub fn vertex_count_closed_form(n: u32) -> Result<u128> {
    if n == 0 || n > 40 {
        return Err(CarpetError::InvalidArgument(format!(
            "vertex count formula evaluated for levels 1..=40, got {n}"
        )));
    }
    let numerator = 33 * 8u128.pow(n) + 112 * 3u128.pow(n) + 240;
    debug_assert_eq!(numerator % 210, 0);
    Ok(numerator / 210)
}

pub fn degree_histogram(g: &CarpetGraph) -> BTreeMap<usize, usize> {
    let mut hist = BTreeMap::new();
    for v in 0..g.vertex_count() as VertexId {
        *hist.entry(g.degree(v)).or_insert(0) += 1;
    }
    hist
}

/// Hop distances from the nearest of `sources`; unreachable vertices get `u32::MAX`.
pub fn distances_from(g: &CarpetGraph, sources: &[VertexId]) -> Vec<u32> {
    let mut dist = vec![UNREACHED; g.vertex_count()];
    let mut queue = VecDeque::with_capacity(sources.len());
    for &s in sources {
        if dist[s as usize] == UNREACHED {
            dist[s as usize] = 0;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        let du = dist[u as usize];
        for &v in g.neighbors(u) {
            if dist[v as usize] == UNREACHED {
                dist[v as usize] = du + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Shortest hop count from `source` to the nearest of `targets`.
pub fn bfs_distance(g: &CarpetGraph, source: Coord, targets: &[Coord]) -> Result<u32> {
    let lookup = |c: Coord| {
        g.vertex(c).ok_or_else(|| {
            CarpetError::InvalidArgument(format!("{c} is not a vertex of level {}", g.level()))
        })
    };
    if targets.is_empty() {
        return Err(CarpetError::InvalidArgument("empty target set".into()));
    }
    let s = lookup(source)?;
    let ts = targets
        .iter()
        .map(|&c| lookup(c))
        .collect::<Result<Vec<_>>>()?;

    // Run from the target side and stop once the source is settled.
    let mut dist = vec![UNREACHED; g.vertex_count()];
    let mut queue = VecDeque::new();
    for &t in &ts {
        if dist[t as usize] == UNREACHED {
            dist[t as usize] = 0;
            queue.push_back(t);
        }
    }
    while let Some(u) = queue.pop_front() {
        if u == s {
            return Ok(dist[u as usize]);
        }
        for &v in g.neighbors(u) {
            if dist[v as usize] == UNREACHED {
                dist[v as usize] = dist[u as usize] + 1;
                queue.push_back(v);
            }
        }
    }
    Err(CarpetError::Unreachable(source.to_string()))
}

/// `(d_2, ..., d_N)`: at each level `i`, the hop distance in `Γ_i` from the
/// vertex of `w_i` to the internal boundary `I_b(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct DistanceSeq {
    values: Vec<u32>,
}

impl DistanceSeq {
    pub fn new(values: Vec<u32>) -> Self {
        DistanceSeq { values }
    }

    /// Values in order, starting at level 2.
    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// `d_level`, for `level ≥ 2`.
    pub fn at(&self, level: u32) -> Option<u32> {
        level
            .checked_sub(2)
            .and_then(|k| self.values.get(k as usize).copied())
    }

    pub fn depth(&self) -> u32 {
        self.values.len() as u32 + 1
    }

    /// First level where the two sequences differ.
    pub fn first_difference(&self, other: &DistanceSeq) -> Option<u32> {
        self.values
            .iter()
            .zip(&other.values)
            .position(|(a, b)| a != b)
            .map(|k| k as u32 + 2)
    }
}

impl fmt::Display for DistanceSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, v) in self.values.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

/// A built level together with each vertex's distance to `I_b`.
pub struct LevelData {
    pub graph: CarpetGraph,
    pub to_internal: Vec<u32>,
}

/// Memoized levels, shared read-only once built.
#[derive(Default)]
pub struct Atlas {
    levels: Mutex<BTreeMap<u32, Arc<LevelData>>>,
}

impl Atlas {
    pub fn new() -> Self {
        Atlas::default()
    }

    /// The process-wide atlas used by the free functions.
    pub fn global() -> &'static Atlas {
        static GLOBAL: OnceLock<Atlas> = OnceLock::new();
        GLOBAL.get_or_init(Atlas::new)
    }

    pub fn level(&self, n: u32) -> Result<Arc<LevelData>> {
        check_level(n)?;
        let mut levels = self.levels.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(data) = levels.get(&n) {
            return Ok(Arc::clone(data));
        }
        let graph = build_cells(n)?;
        let to_internal = if n >= 2 {
            distances_from(&graph, &graph.internal_boundary)
        } else {
            Vec::new()
        };
        let data = Arc::new(LevelData { graph, to_internal });
        levels.insert(n, Arc::clone(&data));
        Ok(data)
    }

    /// `d_i` for the vertex at `c` in `Γ_i`.
    pub fn internal_distance(&self, level: u32, c: Coord) -> Result<u32> {
        if level < 2 {
            return Err(CarpetError::InvalidArgument(
                "distances to the internal boundary start at level 2".into(),
            ));
        }
        let data = self.level(level)?;
        let v = data.graph.vertex(c).ok_or_else(|| {
            CarpetError::InvalidArgument(format!("{c} is not a vertex of level {level}"))
        })?;
        match data.to_internal[v as usize] {
            UNREACHED => Err(CarpetError::Unreachable(c.to_string())),
            d => Ok(d),
        }
    }

    pub fn d_sequence(&self, w: &InfiniteWord, depth: u32) -> Result<DistanceSeq> {
        if depth < 2 {
            return Err(CarpetError::InvalidArgument(format!(
                "distance sequences need depth at least 2, got {depth}"
            )));
        }
        check_level(depth)?;
        let values = (2..=depth)
            .map(|i| {
                let c = word_to_coord(&w.prefix(i as usize)?);
                self.internal_distance(i, c)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DistanceSeq { values })
    }
}

pub fn d_sequence(w: &InfiniteWord, depth: u32) -> Result<DistanceSeq> {
    Atlas::global().d_sequence(w, depth)
}

impl Serialize for CarpetGraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let edges: Vec<[VertexId; 2]> = self.edges().map(|(u, v)| [u, v]).collect();
        let mut st = serializer.serialize_struct("CarpetGraph", 6)?;
        st.serialize_field("level", &self.level)?;
        st.serialize_field("vertex_count", &self.vertex_count())?;
        st.serialize_field("vertices", &self.coords)?;
        st.serialize_field("edges", &edges)?;
        st.serialize_field("boundary", &self.boundary)?;
        st.serialize_field("internal_boundary", &self.internal_boundary)?;
        st.end()
    }
}
