//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use carpet_core::{Coord, FiniteWord, Letter, RootLetter};

/// Positions of the eight copies in the 3x3 block, counterclockwise from
/// the bottom-left corner.
pub const POSITIONS: [(u64, u64); 8] = [
    (0, 0),
    (1, 0),
    (2, 0),
    (2, 1),
    (2, 2),
    (1, 2),
    (0, 2),
    (0, 1),
];

/// Every word of the given length (root letter plus `len - 1` digits).
pub fn all_words(len: usize) -> Vec<FiniteWord> {
    let mut out = Vec::new();
    for root in RootLetter::ALL {
        let mut digits = vec![0u8; len - 1];
        loop {
            let letters = digits.iter().map(|&d| Letter::new(d).unwrap()).collect();
            out.push(FiniteWord::new(root, letters));
            let mut k = 0;
            while k < digits.len() && digits[k] == 7 {
                digits[k] = 0;
                k += 1;
            }
            if k == digits.len() {
                break;
            }
            digits[k] += 1;
        }
    }
    out
}

/// Labelled gluing: a level-k copy placed at position `p` is the level-(k-1)
/// carpet translated by `3^(k-2) * p`; the vertex named by `y x_1 .. x_m` is
/// the root corner carried through each placement in turn.
pub fn glued_coord(w: &FiniteWord) -> Coord {
    let (mut x, mut y) = match w.root {
        RootLetter::A => (0, 0),
        RootLetter::B => (1, 0),
        RootLetter::C => (1, 1),
        RootLetter::D => (0, 1),
    };
    let mut scale = 1u64;
    for l in &w.digits {
        let (px, py) = POSITIONS[l.value() as usize];
        x += scale * px;
        y += scale * py;
        scale *= 3;
    }
    Coord::new(x, y)
}

/// Kept cells of the level-n carpet by literal 8-copy recursion.
pub fn recursive_cells(n: u32) -> BTreeSet<(u64, u64)> {
    let mut cells = BTreeSet::from([(0u64, 0u64)]);
    let mut side = 1u64;
    for _ in 1..n {
        let mut next = BTreeSet::new();
        for &(px, py) in &POSITIONS {
            for &(i, j) in &cells {
                next.insert((px * side + i, py * side + j));
            }
        }
        cells = next;
        side *= 3;
    }
    cells
}

/// Lattice corners of removed cells of the level-n carpet. Corners strictly
/// inside a large hole are included; callers intersect with the vertex set.
pub fn hole_vertices(n: u32) -> BTreeSet<Coord> {
    let cells = recursive_cells(n);
    let side = 3u64.pow(n - 1);
    let mut out = BTreeSet::new();
    for i in 0..side {
        for j in 0..side {
            if !cells.contains(&(i, j)) {
                for (dx, dy) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
                    out.insert(Coord::new(i + dx, j + dy));
                }
            }
        }
    }
    out
}

/// `num / den` for the vertex count `(11/70) 8^n + (8/15) 3^n + 8/7`,
/// summed as exact fractions over the common denominator 210.
pub fn closed_form_fraction(n: u32) -> (u128, u128) {
    let terms = [
        (11u128, 70u128, 8u128.pow(n)),
        (8, 15, 3u128.pow(n)),
        (8, 7, 1),
    ];
    let den = 210u128;
    let num = terms.iter().map(|&(a, b, p)| a * (den / b) * p).sum();
    (num, den)
}
