//! Words over the position alphabet `X = {0..7}` and the root alphabet
//! `Y = {a,b,c,d}`, the letterwise action of the dihedral group on tails,
//! and the cofinality relation.
//!
//! Text syntax: `<root>:<preperiod>(<period>)` for infinite words, e.g.
//! `a:206(13)`, and `<root>:<digits>` for finite words, e.g. `a:206`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{CarpetError, ParseError, Result};

/// A position letter in `0..=7`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Letter(u8);

impl Letter {
    pub const ALL: [Letter; 8] = [
        Letter(0),
        Letter(1),
        Letter(2),
        Letter(3),
        Letter(4),
        Letter(5),
        Letter(6),
        Letter(7),
    ];

    pub fn new(value: u8) -> Result<Self> {
        if value <= 7 {
            Ok(Letter(value))
        } else {
            Err(CarpetError::InvalidArgument(format!(
                "letter {value} is outside 0..=7"
            )))
        }
    }

    #[inline]
    pub fn value(self) -> u8 {
        self.0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl TryFrom<u8> for Letter {
    type Error = CarpetError;

    fn try_from(value: u8) -> Result<Self> {
        Letter::new(value)
    }
}

impl From<Letter> for u8 {
    fn from(l: Letter) -> u8 {
        l.0
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Root letter; names one of the four vertices of the base 4-cycle,
/// anticlockwise from the bottom-left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RootLetter {
    A,
    B,
    C,
    D,
}

impl RootLetter {
    pub const ALL: [RootLetter; 4] = [RootLetter::A, RootLetter::B, RootLetter::C, RootLetter::D];

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'a' => Some(RootLetter::A),
            'b' => Some(RootLetter::B),
            'c' => Some(RootLetter::C),
            'd' => Some(RootLetter::D),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            RootLetter::A => 'a',
            RootLetter::B => 'b',
            RootLetter::C => 'c',
            RootLetter::D => 'd',
        }
    }
}

impl fmt::Display for RootLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A finite word `y x_1 ... x_{n-1}` of length `n = 1 + digits.len()`.
///
/// Ordering is lexicographic: root first, then the digits in reading order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteWord {
    pub root: RootLetter,
    pub digits: Vec<Letter>,
}

impl FiniteWord {
    pub fn new(root: RootLetter, digits: Vec<Letter>) -> Self {
        FiniteWord { root, digits }
    }

    /// Word length, counting the root letter.
    pub fn len(&self) -> usize {
        self.digits.len() + 1
    }

    /// Always false: a finite word carries at least its root letter.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// The level of the approximation this word addresses a vertex of.
    pub fn level(&self) -> u32 {
        self.len() as u32
    }
}

impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.root)?;
        for d in &self.digits {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// The `X`-part `x_1 x_2 ...` of an infinite word, eventually periodic.
///
/// Representations are not canonical: `(0)` and `0(00)` denote the same
/// sequence. Use [`TailSequence::semantic_eq`] for equality of sequences.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TailSequence {
    preperiod: Vec<Letter>,
    period: Vec<Letter>,
}

impl TailSequence {
    pub fn new(preperiod: Vec<Letter>, period: Vec<Letter>) -> Result<Self> {
        if period.is_empty() {
            return Err(CarpetError::InvalidArgument(
                "period of an infinite word must be nonempty".into(),
            ));
        }
        Ok(TailSequence { preperiod, period })
    }

    /// The constant sequence `l l l ...`.
    pub fn constant(l: Letter) -> Self {
        TailSequence {
            preperiod: Vec::new(),
            period: vec![l],
        }
    }

    pub fn preperiod(&self) -> &[Letter] {
        &self.preperiod
    }

    pub fn period(&self) -> &[Letter] {
        &self.period
    }

    /// The `i`-th letter (1-indexed).
    pub fn letter_at(&self, i: usize) -> Result<Letter> {
        if i == 0 {
            return Err(CarpetError::InvalidArgument(
                "tail positions are 1-indexed".into(),
            ));
        }
        Ok(self.nth(i - 1))
    }

    /// The letter at 0-indexed position `k`.
    #[inline]
    pub(crate) fn nth(&self, k: usize) -> Letter {
        if k < self.preperiod.len() {
            self.preperiod[k]
        } else {
            self.period[(k - self.preperiod.len()) % self.period.len()]
        }
    }

    /// The first `n` letters.
    pub fn take(&self, n: usize) -> Vec<Letter> {
        (0..n).map(|k| self.nth(k)).collect()
    }

    /// Equality as infinite sequences.
    pub fn semantic_eq(&self, other: &TailSequence) -> bool {
        let start = self.preperiod.len().max(other.preperiod.len());
        let span = lcm(self.period.len(), other.period.len());
        (0..start + span).all(|k| self.nth(k) == other.nth(k))
    }
}

impl fmt::Display for TailSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.preperiod {
            write!(f, "{d}")?;
        }
        f.write_str("(")?;
        for d in &self.period {
            write!(f, "{d}")?;
        }
        f.write_str(")")
    }
}

/// An eventually periodic infinite word `y · preperiod · period^ω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InfiniteWord {
    pub root: RootLetter,
    pub tail: TailSequence,
}

impl InfiniteWord {
    pub fn new(root: RootLetter, preperiod: Vec<Letter>, period: Vec<Letter>) -> Result<Self> {
        Ok(InfiniteWord {
            root,
            tail: TailSequence::new(preperiod, period)?,
        })
    }

    pub fn from_tail(root: RootLetter, tail: TailSequence) -> Self {
        InfiniteWord { root, tail }
    }

    /// The prefix `w_n = y x_1 ... x_{n-1}`.
    pub fn prefix(&self, n: usize) -> Result<FiniteWord> {
        if n == 0 {
            return Err(CarpetError::InvalidArgument(
                "prefix length must be at least 1".into(),
            ));
        }
        Ok(FiniteWord::new(self.root, self.tail.take(n - 1)))
    }
}

impl fmt::Display for InfiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.root, self.tail)
    }
}

/// Either kind of word, as accepted on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Word {
    Finite(FiniteWord),
    Infinite(InfiniteWord),
}

impl FromStr for Word {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        parse_word(s)
    }
}

impl FromStr for FiniteWord {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        match parse_word(s)? {
            Word::Finite(w) => Ok(w),
            Word::Infinite(_) => Err(ParseError::new(
                s,
                s.find('(').unwrap_or(0),
                "expected a finite word (no parenthesized period)",
            )),
        }
    }
}

impl FromStr for InfiniteWord {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        match parse_word(s)? {
            Word::Infinite(w) => Ok(w),
            Word::Finite(_) => Err(ParseError::new(
                s,
                s.chars().count(),
                "expected an infinite word with a parenthesized period, e.g. a:(0)",
            )),
        }
    }
}

fn parse_word(s: &str) -> std::result::Result<Word, ParseError> {
    let chars: Vec<char> = s.chars().collect();
    let Some(&first) = chars.first() else {
        return Err(ParseError::new(s, 0, "empty word"));
    };
    let root = RootLetter::from_char(first)
        .ok_or_else(|| ParseError::new(s, 0, "root letter must be one of a, b, c, d"))?;
    if chars.get(1) != Some(&':') {
        return Err(ParseError::new(s, 1, "expected ':' after the root letter"));
    }

    let mut preperiod = Vec::new();
    let mut period: Option<Vec<Letter>> = None;
    let mut pos = 2;
    while pos < chars.len() {
        let c = chars[pos];
        match c {
            '(' => {
                if period.is_some() {
                    return Err(ParseError::new(s, pos, "only one period group is allowed"));
                }
                let mut digits = Vec::new();
                pos += 1;
                loop {
                    match chars.get(pos) {
                        Some(')') => break,
                        Some(&d) => {
                            digits.push(parse_digit(s, pos, d)?);
                            pos += 1;
                        }
                        None => return Err(ParseError::new(s, pos, "unclosed period group")),
                    }
                }
                if digits.is_empty() {
                    return Err(ParseError::new(s, pos, "period must be nonempty"));
                }
                period = Some(digits);
                if pos + 1 != chars.len() {
                    return Err(ParseError::new(
                        s,
                        pos + 1,
                        "unexpected input after the period group",
                    ));
                }
            }
            _ => preperiod.push(parse_digit(s, pos, c)?),
        }
        pos += 1;
    }

    Ok(match period {
        Some(period) => Word::Infinite(InfiniteWord {
            root,
            tail: TailSequence { preperiod, period },
        }),
        None => Word::Finite(FiniteWord::new(root, preperiod)),
    })
}

fn parse_digit(s: &str, pos: usize, c: char) -> std::result::Result<Letter, ParseError> {
    match c.to_digit(10) {
        Some(d) if d <= 7 => Ok(Letter(d as u8)),
        _ => Err(ParseError::new(
            s,
            pos,
            format!("invalid letter '{c}', expected a digit 0-7"),
        )),
    }
}

/// A permutation of `X`, stored as its image array.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    image: [u8; 8],
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement {
        image: [0, 1, 2, 3, 4, 5, 6, 7],
    };

    /// The rotation `(1357)(2460)`.
    pub const R: GroupElement = GroupElement {
        image: [2, 3, 4, 5, 6, 7, 0, 1],
    };

    /// The reflection `(04)(13)(57)`.
    pub const S: GroupElement = GroupElement {
        image: [4, 3, 2, 1, 0, 7, 6, 5],
    };

    pub fn from_image(image: [u8; 8]) -> Result<Self> {
        let mut seen = [false; 8];
        for &v in &image {
            if v > 7 || seen[v as usize] {
                return Err(CarpetError::InvalidArgument(format!(
                    "{image:?} is not a permutation of 0..=7"
                )));
            }
            seen[v as usize] = true;
        }
        Ok(GroupElement { image })
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[1,3,5,7], &[2,4,6,0]]`.
    pub fn from_cycles(cycles: &[&[u8]]) -> Result<Self> {
        let mut image = GroupElement::IDENTITY.image;
        for cycle in cycles {
            for (k, &from) in cycle.iter().enumerate() {
                let to = cycle[(k + 1) % cycle.len()];
                if from > 7 || to > 7 {
                    return Err(CarpetError::InvalidArgument(format!(
                        "cycle entry outside 0..=7 in {cycle:?}"
                    )));
                }
                image[from as usize] = to;
            }
        }
        GroupElement::from_image(image)
    }

    pub fn image(&self) -> [u8; 8] {
        self.image
    }

    #[inline]
    pub fn apply_letter(&self, l: Letter) -> Letter {
        Letter(self.image[l.index()])
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        let mut image = [0u8; 8];
        for (i, slot) in image.iter_mut().enumerate() {
            *slot = self.image[other.image[i] as usize];
        }
        GroupElement { image }
    }

    pub fn inverse(&self) -> GroupElement {
        let mut image = [0u8; 8];
        for (i, &v) in self.image.iter().enumerate() {
            image[v as usize] = i as u8;
        }
        GroupElement { image }
    }

    pub fn pow(&self, k: u32) -> GroupElement {
        (0..k).fold(GroupElement::IDENTITY, |acc, _| self.compose(&acc))
    }

    /// Letterwise image of a tail; preperiod and period lengths are kept.
    pub fn apply(&self, t: &TailSequence) -> TailSequence {
        TailSequence {
            preperiod: t.preperiod.iter().map(|&l| self.apply_letter(l)).collect(),
            period: t.period.iter().map(|&l| self.apply_letter(l)).collect(),
        }
    }

    /// Disjoint-cycle notation, each cycle starting at its least element,
    /// fixed points omitted. The identity prints as `()`.
    pub fn cycle_notation(&self) -> String {
        let mut out = String::new();
        let mut seen = [false; 8];
        for start in 0..8u8 {
            if seen[start as usize] || self.image[start as usize] == start {
                continue;
            }
            out.push('(');
            let mut cur = start;
            while !seen[cur as usize] {
                seen[cur as usize] = true;
                out.push(char::from(b'0' + cur));
                cur = self.image[cur as usize];
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_notation())
    }
}

/// The eight elements of `G = <r, s>` in the fixed order
/// `e, r, r², r³, s, sr, sr², sr³` (where `sr` applies `r` first).
pub fn dihedral_group() -> [GroupElement; 8] {
    let r = GroupElement::R;
    let s = GroupElement::S;
    let mut out = [GroupElement::IDENTITY; 8];
    for k in 0..4 {
        out[k] = r.pow(k as u32);
        out[4 + k] = s.compose(&r.pow(k as u32));
    }
    out
}

/// Whether two tails differ in only finitely many positions.
///
/// Past `max(preperiod lengths)` both are periodic with period
/// `lcm(period lengths)`, so a single window of that length decides it.
pub fn cofinal(u: &TailSequence, v: &TailSequence) -> bool {
    let start = u.preperiod.len().max(v.preperiod.len());
    let span = lcm(u.period.len(), v.period.len());
    (start..start + span).all(|k| u.nth(k) == v.nth(k))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}
