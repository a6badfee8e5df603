mod common;

use std::collections::{BTreeMap, BTreeSet};

use carpet_core::addressing::{boundary_sides_by_letters, cell_kept, is_corner, sides_of_coord};
use carpet_core::ball::is_certified;
use carpet_core::graph::distances_from;
use carpet_core::iso::transport;
use carpet_core::*;
use proptest::prelude::*;

use common::{all_words, recursive_cells};

#[test]
fn words_cover_every_vertex() {
    for n in 1..=5 {
        let g = build_cells(n).unwrap();
        let coords: BTreeSet<Coord> = all_words(n as usize).iter().map(word_to_coord).collect();
        assert_eq!(
            coords.len() as u128,
            vertex_count_closed_form(n).unwrap(),
            "n={n}"
        );
        assert_eq!(coords.into_iter().collect::<Vec<_>>(), g.coords(), "n={n}");
    }
}

#[test]
fn letter_pattern_sides_match_geometry() {
    for n in 2..=5 {
        let side = 3u64.pow(n - 1);
        let mut by_vertex: BTreeMap<Coord, SideSet> = BTreeMap::new();
        for w in all_words(n as usize) {
            let letters = boundary_sides_by_letters(&w).unwrap();
            let geometric = boundary_sides(&w).unwrap();
            assert!(
                letters.is_subset(geometric),
                "{w}: {letters} not within {geometric}"
            );
            let entry = by_vertex.entry(word_to_coord(&w)).or_insert(SideSet::EMPTY);
            *entry = entry.union(letters);
        }
        let mut on_boundary = 0;
        for (c, sides) in &by_vertex {
            assert_eq!(*sides, sides_of_coord(*c, side), "n={n} at {c}");
            on_boundary += usize::from(!sides.is_empty());
        }
        assert_eq!(on_boundary as u64, 4 * 3u64.pow(n - 1), "n={n}");
    }
}

#[test]
fn digit_rule_matches_copy_recursion() {
    for n in 1..=6 {
        let side = 3u64.pow(n - 1);
        let cells = recursive_cells(n);
        for i in 0..side {
            for j in 0..side {
                assert_eq!(
                    cell_kept(i, j, n).unwrap(),
                    cells.contains(&(i, j)),
                    "n={n} ({i},{j})"
                );
            }
        }
    }
}

#[test]
fn corners_are_the_degree_two_vertices() {
    for n in 2..=4 {
        let g = build_cells(n).unwrap();
        for w in all_words(n as usize) {
            let v = g.vertex(word_to_coord(&w)).unwrap();
            assert_eq!(is_corner(&w), g.degree(v) == 2, "{w}");
        }
    }
}

#[test]
fn holes_stay_off_the_outer_boundary_and_graphs_connect() {
    for n in 2..=6 {
        let g = build_cells(n).unwrap();
        let b: BTreeSet<u32> = g.boundary().unwrap().iter().copied().collect();
        assert!(
            g.internal_boundary()
                .unwrap()
                .iter()
                .all(|v| !b.contains(v)),
            "n={n}"
        );
        let reach = distances_from(&g, &[0]);
        assert!(reach.iter().all(|&d| d != u32::MAX), "n={n} disconnected");
    }
}

#[test]
fn symmetries_preserve_both_boundaries() {
    for n in 2..=4 {
        let g = build_cells(n).unwrap();
        let coords = |ids: &[u32]| -> BTreeSet<Coord> { ids.iter().map(|&v| g.coord(v)).collect() };
        let b = coords(g.boundary().unwrap());
        let ib = coords(g.internal_boundary().unwrap());
        for iso in Isometry::all() {
            let image = |s: &BTreeSet<Coord>| -> BTreeSet<Coord> {
                s.iter().map(|&c| iso.apply(c, g.side())).collect()
            };
            assert_eq!(image(&b), b, "n={n} {iso:?}");
            assert_eq!(image(&ib), ib, "n={n} {iso:?}");
        }
    }
}

#[test]
fn differing_sequences_give_a_witness_radius() {
    let words = ["a:(0)", "a:(7)", "b:(1)", "c:2(5)", "d:(03)", "a:11(6)"];
    for (i, s) in words.iter().enumerate() {
        for t in &words[i + 1..] {
            let (u, v): (InfiniteWord, InfiniteWord) = (s.parse().unwrap(), t.parse().unwrap());
            if d_sequence(&u, 4).unwrap() != d_sequence(&v, 4).unwrap() {
                let r = find_witness_radius(&u, &v, 4).unwrap();
                assert!(r.is_some(), "{u} vs {v}");
            }
        }
    }
}

/// Equal distance sequences do not force isomorphic balls: the corner of
/// the carpet and the bottom-side vertex three steps along it agree on
/// every d_k but differ in degree from level 3 on.
#[test]
fn equal_sequences_with_different_balls() {
    let (u, v): (InfiniteWord, InfiniteWord) =
        ("a:(0)".parse().unwrap(), "b:2(0)".parse().unwrap());
    assert_eq!(d_sequence(&u, 6).unwrap(), d_sequence(&v, 6).unwrap());
    let (gu, ru) = limit_ball(&u, 1).unwrap().to_graph();
    let (gv, rv) = limit_ball(&v, 1).unwrap().to_graph();
    assert!(!graph_iso_bruteforce(&gu, &gv, Some((ru, rv))).unwrap());
}

fn infinite_word() -> impl Strategy<Value = InfiniteWord> {
    (
        0usize..4,
        prop::collection::vec(0u8..8, 0..4),
        prop::collection::vec(0u8..8, 1..4),
    )
        .prop_map(|(root, pre, per)| {
            let letters = |v: Vec<u8>| v.into_iter().map(|d| Letter::new(d).unwrap()).collect();
            InfiniteWord::new(RootLetter::ALL[root], letters(pre), letters(per)).unwrap()
        })
}

fn element() -> impl Strategy<Value = GroupElement> {
    (0usize..8).prop_map(|k| dihedral_group()[k])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn unrooted_iso_is_an_equivalence(
        u in infinite_word(),
        s1 in element(),
        s2 in element(),
        pre1 in prop::collection::vec(0u8..8, 0..3),
        pre2 in prop::collection::vec(0u8..8, 0..3),
    ) {
        let perturb = |w: InfiniteWord, pre: Vec<u8>| {
            let mut head: Vec<Letter> = pre.into_iter().map(|d| Letter::new(d).unwrap()).collect();
            let keep = w.tail.take(w.tail.preperiod().len() + w.tail.period().len());
            let skip = head.len().min(keep.len());
            head.extend_from_slice(&keep[skip..]);
            InfiniteWord::new(w.root, head, w.tail.period().to_vec()).unwrap()
        };
        let v = perturb(transport(&u, &s1), pre1);
        let w = perturb(transport(&v, &s2), pre2);

        prop_assert_eq!(unrooted_iso(&u, &u).witness, Some(GroupElement::IDENTITY));
        let uv = unrooted_iso(&u, &v);
        let vw = unrooted_iso(&v, &w);
        prop_assert!(uv.isomorphic && vw.isomorphic);
        prop_assert!(unrooted_iso(&v, &u).isomorphic);
        let composed = vw.witness.unwrap().compose(&uv.witness.unwrap());
        prop_assert!(cofinal(&composed.apply(&u.tail), &w.tail));
        prop_assert!(unrooted_iso(&u, &w).isomorphic);
    }

    #[test]
    fn symmetries_carry_distance_sequences(w in infinite_word(), sigma in element()) {
        let moved = transport(&w, &sigma);
        prop_assert_eq!(d_sequence(&w, 5).unwrap(), d_sequence(&moved, 5).unwrap());
    }

    #[test]
    fn sequences_are_prefix_consistent(w in infinite_word(), m in 2u32..5) {
        let long = d_sequence(&w, 5).unwrap();
        let short = d_sequence(&w, m).unwrap();
        prop_assert_eq!(&long.values()[..short.values().len()], short.values());
    }

    #[test]
    fn balls_grow_then_settle(w in infinite_word(), r in 0u32..5) {
        let n0 = stabilization_level(&w, r).unwrap();
        prop_assert!(is_certified(&w, r, n0).unwrap());
        let mut prev = ball_at_level(&w, r, 1).unwrap();
        for n in 2..=n0 + 3 {
            let next = ball_at_level(&w, r, n).unwrap();
            prop_assert!(prev.is_subgraph_of(&next), "level {} -> {}", n - 1, n);
            if n > n0 {
                prop_assert!(next.offset_identical(&prev), "changed at level {}", n);
            }
            prev = next;
        }
    }
}
