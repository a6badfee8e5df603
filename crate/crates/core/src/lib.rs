//! Finite Sierpiński carpet graphs `Γ_n`, word addressing of their
//! vertices, rooted balls of the infinite limit graphs `Γ_w`, and the
//! isomorphism classification of those limit graphs.
//!
//! Vertices are identified by integer coordinates in a fixed planar
//! embedding; words `y x_1 x_2 ...` over `{a,b,c,d} × {0..7}^∞` address
//! them.

pub mod addressing;
pub mod ball;
pub mod error;
pub mod graph;
pub mod iso;
pub mod limits;
pub mod word;

pub use addressing::{
    boundary_sides, canonical_word, cell_kept, is_corner, model_layout, root_coord, same_vertex,
    word_to_coord, Coord, Isometry, ModelLayout, Side, SideSet,
};
pub use ball::{ball_at_level, limit_ball, side_fates, stabilization_level, RootedBall, SideFate};
pub use error::{CarpetError, ParseError, Result};
pub use graph::{
    bfs_distance, build_cells, build_recursive, d_sequence, degree_histogram,
    vertex_count_closed_form, CarpetGraph, DistanceSeq,
};
pub use iso::{
    automorphisms, classify, find_witness_radius, graph_iso_bruteforce, rooted_iso_finite,
    unrooted_iso, IsoVerdict, RootedPair, SimpleGraph,
};
pub use word::{
    cofinal, dihedral_group, FiniteWord, GroupElement, InfiniteWord, Letter, RootLetter,
    TailSequence, Word,
};
