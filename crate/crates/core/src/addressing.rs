//! The rigid planar embedding of the carpet graphs.
//!
//! `Γ_n` occupies the square `[0, 3^{n-1}]²` with unit edges. The copy of
//! `Γ_{n-1}` at position `x` of the model graph is translated by
//! `3^{n-2} · offset(x)`; copies are never rotated or reflected.

use std::fmt;

use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};

use crate::error::{CarpetError, Result};
use crate::word::{FiniteWord, GroupElement, Letter, RootLetter};

/// Highest level whose coordinates fit comfortably in `u64`/`i64`.
pub const MAX_ADDRESS_LEVEL: u32 = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Coord {
    pub x: u64,
    pub y: u64,
}

impl Coord {
    pub const fn new(x: u64, y: u64) -> Self {
        Coord { x, y }
    }
}

/// Canonical vertex order: by row (`y`), then by column.
impl Ord for Coord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.y, self.x).cmp(&(other.y, other.x))
    }
}

impl PartialOrd for Coord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl Serialize for Coord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(2)?;
        t.serialize_element(&self.x)?;
        t.serialize_element(&self.y)?;
        t.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Bottom,
    Right,
    Top,
    Left,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::Bottom, Side::Right, Side::Top, Side::Left];

    pub fn opposite(self) -> Side {
        match self {
            Side::Bottom => Side::Top,
            Side::Right => Side::Left,
            Side::Top => Side::Bottom,
            Side::Left => Side::Right,
        }
    }

    fn bit(self) -> u8 {
        1 << (self as u8)
    }

    pub fn name(self) -> &'static str {
        match self {
            Side::Bottom => "bottom",
            Side::Right => "right",
            Side::Top => "top",
            Side::Left => "left",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A subset of the four sides.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct SideSet(u8);

impl SideSet {
    pub const EMPTY: SideSet = SideSet(0);

    pub const fn of(sides: &[Side]) -> SideSet {
        let mut bits = 0;
        let mut i = 0;
        while i < sides.len() {
            bits |= 1 << (sides[i] as u8);
            i += 1;
        }
        SideSet(bits)
    }

    pub fn insert(&mut self, side: Side) {
        self.0 |= side.bit();
    }

    pub fn contains(self, side: Side) -> bool {
        self.0 & side.bit() != 0
    }

    pub fn union(self, other: SideSet) -> SideSet {
        SideSet(self.0 | other.0)
    }

    pub fn intersection(self, other: SideSet) -> SideSet {
        SideSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: SideSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = Side> {
        Side::ALL.into_iter().filter(move |s| self.contains(*s))
    }
}

impl fmt::Debug for SideSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for SideSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, s) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("}")
    }
}

impl FromIterator<Side> for SideSet {
    fn from_iter<I: IntoIterator<Item = Side>>(iter: I) -> Self {
        let mut set = SideSet::EMPTY;
        for s in iter {
            set.insert(s);
        }
        set
    }
}

/// Placement of the eight copies in the model graph.
///
/// For each position: its cell in the 3×3 grid, and which of its sides are
/// shared with a sibling copy (`glued`), face the removed centre (`sealed`),
/// or lie on the outer square (`outer`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelLayout {
    pub offset: [(u8, u8); 8],
    pub glued: [SideSet; 8],
    pub sealed: [SideSet; 8],
    pub outer: [SideSet; 8],
}

use Side::{Bottom, Left, Right, Top};

const LAYOUT: ModelLayout = ModelLayout {
    offset: [
        (0, 0),
        (1, 0),
        (2, 0),
        (2, 1),
        (2, 2),
        (1, 2),
        (0, 2),
        (0, 1),
    ],
    glued: [
        SideSet::of(&[Right, Top]),
        SideSet::of(&[Left, Right]),
        SideSet::of(&[Left, Top]),
        SideSet::of(&[Bottom, Top]),
        SideSet::of(&[Bottom, Left]),
        SideSet::of(&[Right, Left]),
        SideSet::of(&[Right, Bottom]),
        SideSet::of(&[Top, Bottom]),
    ],
    sealed: [
        SideSet::EMPTY,
        SideSet::of(&[Top]),
        SideSet::EMPTY,
        SideSet::of(&[Left]),
        SideSet::EMPTY,
        SideSet::of(&[Bottom]),
        SideSet::EMPTY,
        SideSet::of(&[Right]),
    ],
    outer: [
        SideSet::of(&[Bottom, Left]),
        SideSet::of(&[Bottom]),
        SideSet::of(&[Bottom, Right]),
        SideSet::of(&[Right]),
        SideSet::of(&[Right, Top]),
        SideSet::of(&[Top]),
        SideSet::of(&[Top, Left]),
        SideSet::of(&[Left]),
    ],
};

pub fn model_layout() -> &'static ModelLayout {
    &LAYOUT
}

impl ModelLayout {
    pub fn offset_of(&self, l: Letter) -> (u64, u64) {
        let (ox, oy) = self.offset[l.index()];
        (ox as u64, oy as u64)
    }

    /// The position whose cell is `(ox, oy)`, if any (the centre has none).
    pub fn position_at(&self, ox: u8, oy: u8) -> Option<Letter> {
        self.offset
            .iter()
            .position(|&o| o == (ox, oy))
            .map(|k| Letter::ALL[k])
    }

    /// The letters at which a block keeps `side` on the outer square.
    pub fn preserving(&self, side: Side) -> impl Iterator<Item = Letter> + '_ {
        Letter::ALL
            .into_iter()
            .filter(move |l| self.outer[l.index()].contains(side))
    }
}

/// Side length `3^{level-1}` of `Γ_level`.
pub fn side_length(level: u32) -> Result<u64> {
    if level == 0 {
        return Err(CarpetError::InvalidArgument("levels start at 1".into()));
    }
    if level > MAX_ADDRESS_LEVEL {
        return Err(CarpetError::InvalidArgument(format!(
            "level {level} exceeds the addressable maximum {MAX_ADDRESS_LEVEL}"
        )));
    }
    Ok(3u64.pow(level - 1))
}

pub fn root_coord(y: RootLetter) -> Coord {
    match y {
        RootLetter::A => Coord::new(0, 0),
        RootLetter::B => Coord::new(1, 0),
        RootLetter::C => Coord::new(1, 1),
        RootLetter::D => Coord::new(0, 1),
    }
}

/// Position of the vertex named by `w` inside `Γ_{|w|}`.
pub fn word_to_coord(w: &FiniteWord) -> Coord {
    let layout = model_layout();
    let mut c = root_coord(w.root);
    let mut scale = 1u64;
    for &l in &w.digits {
        let (ox, oy) = layout.offset_of(l);
        c.x += scale * ox;
        c.y += scale * oy;
        scale *= 3;
    }
    c
}

pub fn same_vertex(u: &FiniteWord, v: &FiniteWord) -> Result<bool> {
    if u.len() != v.len() {
        return Err(CarpetError::InvalidArgument(format!(
            "words {u} and {v} have different lengths"
        )));
    }
    Ok(word_to_coord(u) == word_to_coord(v))
}

/// Whether unit cell `(i, j)` survives in `Γ_level`: no base-3 digit place
/// holds a 1 in both indices.
pub fn cell_kept(i: u64, j: u64, level: u32) -> Result<bool> {
    let n = side_length(level)?;
    if i >= n || j >= n {
        return Err(CarpetError::InvalidArgument(format!(
            "cell ({i},{j}) outside the {n}x{n} grid of level {level}"
        )));
    }
    Ok(cell_kept_unchecked(i, j))
}

#[inline]
pub(crate) fn cell_kept_unchecked(mut i: u64, mut j: u64) -> bool {
    while i > 0 && j > 0 {
        if i % 3 == 1 && j % 3 == 1 {
            return false;
        }
        i /= 3;
        j /= 3;
    }
    true
}

/// Cell `(i, j)` of the level with side length `n`, where indices outside
/// the grid count as absent.
#[inline]
pub(crate) fn cell_present(i: i128, j: i128, n: u64) -> bool {
    i >= 0 && j >= 0 && (i as u64) < n && (j as u64) < n && cell_kept_unchecked(i as u64, j as u64)
}

/// Sides of the outer square that `c` lies on.
pub fn sides_of_coord(c: Coord, n: u64) -> SideSet {
    let mut s = SideSet::EMPTY;
    if c.y == 0 {
        s.insert(Side::Bottom);
    }
    if c.x == n {
        s.insert(Side::Right);
    }
    if c.y == n {
        s.insert(Side::Top);
    }
    if c.x == 0 {
        s.insert(Side::Left);
    }
    s
}

/// Outer sides the vertex named by `w` lies on, decided geometrically.
pub fn boundary_sides(w: &FiniteWord) -> Result<SideSet> {
    if w.len() < 2 {
        return Err(CarpetError::InvalidArgument(
            "level too small: boundary vertices are defined from level 2".into(),
        ));
    }
    let n = side_length(w.level())?;
    Ok(sides_of_coord(word_to_coord(w), n))
}

/// The letter-pattern characterization of boundary words. It only sees the
/// given representative, so it can miss sides reached by another word
/// naming the same vertex; [`boundary_sides`] is authoritative.
pub fn boundary_sides_by_letters(w: &FiniteWord) -> Result<SideSet> {
    if w.len() < 2 {
        return Err(CarpetError::InvalidArgument(
            "level too small: boundary vertices are defined from level 2".into(),
        ));
    }
    let layout = model_layout();
    Ok(Side::ALL
        .into_iter()
        .filter(|&side| {
            let (r1, r2) = match side {
                Side::Bottom => (RootLetter::A, RootLetter::B),
                Side::Right => (RootLetter::B, RootLetter::C),
                Side::Top => (RootLetter::C, RootLetter::D),
                Side::Left => (RootLetter::D, RootLetter::A),
            };
            (w.root == r1 || w.root == r2)
                && w.digits
                    .iter()
                    .all(|d| layout.outer[d.index()].contains(side))
        })
        .collect())
}

/// Whether `w` names one of the four degree-2 corners of `Γ_{|w|}`.
pub fn is_corner(w: &FiniteWord) -> bool {
    let Ok(n) = side_length(w.level()) else {
        return false;
    };
    let c = word_to_coord(w);
    (c.x == 0 || c.x == n) && (c.y == 0 || c.y == n)
}

/// Every word of length `level` naming the vertex at `c`, sorted. Empty if
/// `c` is not a vertex of `Γ_level`.
pub fn words_for_coord(c: Coord, level: u32) -> Result<Vec<FiniteWord>> {
    side_length(level)?;
    let mut out = Vec::new();
    let mut digits = Vec::with_capacity(level as usize - 1);
    collect_words(c, level, &mut digits, &mut out);
    for w in &mut out {
        w.digits.reverse();
    }
    out.sort();
    Ok(out)
}

// `digits` is built outermost-first and reversed by the caller.
fn collect_words(c: Coord, level: u32, digits: &mut Vec<Letter>, out: &mut Vec<FiniteWord>) {
    if level == 1 {
        if let Some(root) = RootLetter::ALL.into_iter().find(|&y| root_coord(y) == c) {
            out.push(FiniteWord::new(root, digits.clone()));
        }
        return;
    }
    let sub = 3u64.pow(level - 2);
    let layout = model_layout();
    for l in Letter::ALL {
        let (ox, oy) = layout.offset_of(l);
        let (bx, by) = (ox * sub, oy * sub);
        if c.x >= bx && c.x <= bx + sub && c.y >= by && c.y <= by + sub {
            digits.push(l);
            collect_words(Coord::new(c.x - bx, c.y - by), level - 1, digits, out);
            digits.pop();
        }
    }
}

/// The lexicographically least word naming the same vertex as `w`.
pub fn canonical_word(w: &FiniteWord) -> FiniteWord {
    words_for_coord(word_to_coord(w), w.level())
        .ok()
        .and_then(|ws| ws.into_iter().next())
        .unwrap_or_else(|| w.clone())
}

/// A symmetry of the square: optional transpose `(x,y) ↦ (y,x)` followed by
/// `quarter_turns` anticlockwise rotations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Isometry {
    pub mirrored: bool,
    pub quarter_turns: u8,
}

impl Isometry {
    pub const IDENTITY: Isometry = Isometry {
        mirrored: false,
        quarter_turns: 0,
    };

    pub fn all() -> [Isometry; 8] {
        std::array::from_fn(|k| Isometry {
            mirrored: k >= 4,
            quarter_turns: (k % 4) as u8,
        })
    }

    /// Image of `c` in the square `[0, side]²`.
    pub fn apply(&self, c: Coord, side: u64) -> Coord {
        let (mut x, mut y) = if self.mirrored {
            (c.y, c.x)
        } else {
            (c.x, c.y)
        };
        for _ in 0..self.quarter_turns {
            (x, y) = (side - y, x);
        }
        Coord::new(x, y)
    }

    /// The permutation this symmetry induces on the eight model positions.
    pub fn position_permutation(&self) -> GroupElement {
        let layout = model_layout();
        let mut image = [0u8; 8];
        for l in Letter::ALL {
            let (ox, oy) = layout.offset[l.index()];
            // cell centres in doubled coordinates on a side-6 square
            let centre = Coord::new(2 * ox as u64 + 1, 2 * oy as u64 + 1);
            let moved = self.apply(centre, 6);
            let target = layout
                .position_at(((moved.x - 1) / 2) as u8, ((moved.y - 1) / 2) as u8)
                .expect("square symmetries fix the centre cell");
            image[l.index()] = target.value();
        }
        GroupElement::from_image(image).expect("a symmetry permutes the positions")
    }

    /// The symmetry whose action on positions is `sigma`.
    pub fn for_element(sigma: &GroupElement) -> Option<Isometry> {
        Isometry::all()
            .into_iter()
            .find(|iso| iso.position_permutation() == *sigma)
    }

    /// Image of a root corner of the base 4-cycle.
    pub fn root_image(&self, y: RootLetter) -> RootLetter {
        let moved = self.apply(root_coord(y), 1);
        RootLetter::ALL
            .into_iter()
            .find(|&r| root_coord(r) == moved)
            .expect("symmetries permute the corners")
    }
}
