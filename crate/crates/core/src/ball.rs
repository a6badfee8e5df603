//! Rooted balls in the limit graph `Γ_w`.
//!
//! The root's level-`n` block is an induced subgraph of every later level,
//! and distances inside it never shrink: a detour through a neighbouring
//! copy leaves and re-enters along a straight shared side. New vertices can
//! therefore only enter a radius-`r` ball through a ball vertex at distance
//! `< r` that sits on a block side still waiting to be glued. Once no such
//! vertex exists the ball is final. [`stabilization_level`] finds the first
//! level where that holds.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::addressing::{
    cell_present, model_layout, side_length, sides_of_coord, word_to_coord, Coord, Side,
    MAX_ADDRESS_LEVEL,
};
use crate::error::{CarpetError, Result};
use crate::iso::SimpleGraph;
use crate::word::InfiniteWord;

/// The radius-`r` ball around the root, with vertices stored as offsets
/// from the root's coordinate.
#[derive(Clone, Debug)]
pub struct RootedBall {
    radius: u32,
    root_word: InfiniteWord,
    level: u32,
    offsets: Vec<(i64, i64)>,
    distances: Vec<u32>,
    edges: Vec<(usize, usize)>,
}

impl RootedBall {
    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn root_word(&self) -> &InfiniteWord {
        &self.root_word
    }

    /// Level the ball was read from.
    pub fn level(&self) -> u32 {
        self.level
    }

    /// Vertex offsets `(dx, dy)`, sorted by row then column.
    pub fn offsets(&self) -> &[(i64, i64)] {
        &self.offsets
    }

    pub fn distances(&self) -> &[u32] {
        &self.distances
    }

    /// Edges as index pairs into [`offsets`](Self::offsets), `i < j`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len()
    }

    pub fn root_index(&self) -> usize {
        self.offsets
            .binary_search_by_key(&(0, 0), |&(dx, dy)| (dy, dx))
            .expect("the root is always in its ball")
    }

    /// Same radius, same offsets, same edges.
    pub fn offset_identical(&self, other: &RootedBall) -> bool {
        self.radius == other.radius && self.offsets == other.offsets && self.edges == other.edges
    }

    /// Whether every vertex and edge of `self` appears in `other`.
    pub fn is_subgraph_of(&self, other: &RootedBall) -> bool {
        let index: BTreeMap<(i64, i64), usize> = other
            .offsets
            .iter()
            .enumerate()
            .map(|(i, &o)| (o, i))
            .collect();
        let mut map = Vec::with_capacity(self.offsets.len());
        for o in &self.offsets {
            match index.get(o) {
                Some(&i) => map.push(i),
                None => return false,
            }
        }
        self.edges.iter().all(|&(a, b)| {
            let (u, v) = (map[a].min(map[b]), map[a].max(map[b]));
            other.edges.binary_search(&(u, v)).is_ok()
        })
    }

    /// The ball as an abstract graph, with the root's index.
    pub fn to_graph(&self) -> (SimpleGraph, usize) {
        (
            SimpleGraph::from_edges(self.offsets.len(), &self.edges),
            self.root_index(),
        )
    }
}

impl Serialize for RootedBall {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let vertices: Vec<[i64; 2]> = self.offsets.iter().map(|&(x, y)| [x, y]).collect();
        let edges: Vec<[usize; 2]> = self.edges.iter().map(|&(u, v)| [u, v]).collect();
        let mut st = serializer.serialize_struct("RootedBall", 6)?;
        st.serialize_field("radius", &self.radius)?;
        st.serialize_field("root", "(0,0)")?;
        st.serialize_field("word", &self.root_word.to_string())?;
        st.serialize_field("level", &self.level)?;
        st.serialize_field("vertices", &vertices)?;
        st.serialize_field("edges", &edges)?;
        st.end()
    }
}

/// Lattice neighbours of a vertex of the level with side length `n`.
fn lattice_neighbors(c: Coord, n: u64) -> impl Iterator<Item = Coord> {
    let (x, y) = (c.x as i128, c.y as i128);
    let below = c.y > 0 && (cell_present(x, y - 1, n) || cell_present(x - 1, y - 1, n));
    let left = c.x > 0 && (cell_present(x - 1, y, n) || cell_present(x - 1, y - 1, n));
    let right = c.x < n && (cell_present(x, y, n) || cell_present(x, y - 1, n));
    let above = c.y < n && (cell_present(x, y, n) || cell_present(x - 1, y, n));
    [
        below.then(|| Coord::new(c.x, c.y.wrapping_sub(1))),
        left.then(|| Coord::new(c.x.wrapping_sub(1), c.y)),
        right.then(|| Coord::new(c.x + 1, c.y)),
        above.then(|| Coord::new(c.x, c.y + 1)),
    ]
    .into_iter()
    .flatten()
}

/// BFS ball of radius `r` around `w_n` in `Γ_n`, explored on the lattice
/// without materializing the level.
pub fn ball_at_level(w: &InfiniteWord, r: u32, n: u32) -> Result<RootedBall> {
    let (ball, _) = explore(w, r, n)?;
    Ok(ball)
}

// Also returns the absolute coordinates, aligned with the ball's offsets.
fn explore(w: &InfiniteWord, r: u32, n: u32) -> Result<(RootedBall, Vec<Coord>)> {
    let side = side_length(n)?;
    let root = word_to_coord(&w.prefix(n as usize)?);

    let mut dist: BTreeMap<Coord, u32> = BTreeMap::from([(root, 0)]);
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        let du = dist[&u];
        if du == r {
            continue;
        }
        for v in lattice_neighbors(u, side) {
            dist.entry(v).or_insert_with(|| {
                queue.push_back(v);
                du + 1
            });
        }
    }

    // BTreeMap iteration follows the canonical coordinate order, which is
    // also the (dy, dx) order of the offsets.
    let coords: Vec<Coord> = dist.keys().copied().collect();
    let index: BTreeMap<Coord, usize> = coords.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut edges = Vec::new();
    for (i, &c) in coords.iter().enumerate() {
        for v in lattice_neighbors(c, side) {
            if let Some(&j) = index.get(&v) {
                if i < j {
                    edges.push((i, j));
                }
            }
        }
    }
    edges.sort_unstable();

    let offsets = coords
        .iter()
        .map(|c| (c.x as i64 - root.x as i64, c.y as i64 - root.y as i64))
        .collect();
    let distances = coords.iter().map(|c| dist[c]).collect();
    Ok((
        RootedBall {
            radius: r,
            root_word: w.clone(),
            level: n,
            offsets,
            distances,
            edges,
        },
        coords,
    ))
}

/// What eventually happens to one side of the root's block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "fate", content = "level")]
pub enum SideFate {
    /// Shared with a sibling copy from this level on.
    GluedAt(u32),
    /// Faces the removed middle square from this level on.
    SealedAt(u32),
    /// Stays on the outer boundary at every level.
    OuterForever,
}

impl SideFate {
    pub fn is_glued(self) -> bool {
        matches!(self, SideFate::GluedAt(_))
    }
}

impl fmt::Display for SideFate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SideFate::GluedAt(l) => write!(f, "glued_at({l})"),
            SideFate::SealedAt(l) => write!(f, "sealed_at({l})"),
            SideFate::OuterForever => f.write_str("outer_forever"),
        }
    }
}

/// The fates of the four sides of the root's level-`level` block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SideFates {
    pub level: u32,
    fates: [SideFate; 4],
}

impl SideFates {
    pub fn get(&self, side: Side) -> SideFate {
        self.fates[side as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = (Side, SideFate)> + '_ {
        Side::ALL.into_iter().map(|s| (s, self.get(s)))
    }
}

/// Side fates of the root's base square (level 1).
pub fn side_fates(w: &InfiniteWord) -> SideFates {
    side_fates_at(w, 1)
}

/// Side fates of the root's level-`level` block. The block sits at position
/// `x_level` inside level `level + 1`; a side that stays outer is inherited
/// by the enclosing block, so the scan continues with the next letter. One
/// full period past the preperiod decides `outer_forever`.
pub fn side_fates_at(w: &InfiniteWord, level: u32) -> SideFates {
    let layout = model_layout();
    let start = level.max(1) as usize;
    let pre = w.tail.preperiod().len();
    let end = start.max(pre + 1) + w.tail.period().len();
    let mut fates = [SideFate::OuterForever; 4];
    for side in Side::ALL {
        for j in start..end {
            let x = w.tail.nth(j - 1);
            if layout.glued[x.index()].contains(side) {
                fates[side as usize] = SideFate::GluedAt(j as u32 + 1);
                break;
            }
            if layout.sealed[x.index()].contains(side) {
                fates[side as usize] = SideFate::SealedAt(j as u32 + 1);
                break;
            }
        }
    }
    SideFates {
        level: level.max(1),
        fates,
    }
}

/// Whether the radius-`r` ball read at level `n` can never change again.
pub fn is_certified(w: &InfiniteWord, r: u32, n: u32) -> Result<bool> {
    let (ball, coords) = explore(w, r, n)?;
    let side = side_length(n)?;
    let fates = side_fates_at(w, n);
    Ok(coords
        .iter()
        .zip(ball.distances())
        .filter(|(_, &d)| d < r)
        .all(|(&c, _)| {
            sides_of_coord(c, side)
                .iter()
                .all(|s| !fates.get(s).is_glued())
        }))
}

/// The least level from which the radius-`r` ball around the root is final.
pub fn stabilization_level(w: &InfiniteWord, r: u32) -> Result<u32> {
    for n in 1..=MAX_ADDRESS_LEVEL {
        if is_certified(w, r, n)? {
            return Ok(n);
        }
    }
    Err(CarpetError::ResourceLimit {
        level: MAX_ADDRESS_LEVEL + 1,
        cap: MAX_ADDRESS_LEVEL,
    })
}

/// The radius-`r` ball of the limit graph `Γ_w`.
pub fn limit_ball(w: &InfiniteWord, r: u32) -> Result<RootedBall> {
    let n = stabilization_level(w, r)?;
    ball_at_level(w, r, n)
}
