//! Signed and regular tilings of lattice regions by ribbon L n-ominoes
//! (n odd), decided through Gröbner-basis reduction over the integers.
//!
//! A lattice region corresponds to the 0/1 polynomial summing x^α y^β
//! over its cells, and a placement of a tile corresponds to a monomial
//! multiple of the tile's polynomial. A region has a signed tiling —
//! placements with ±1 multiplicities whose signed sum is exactly the
//! region — precisely when its polynomial lies in the lattice ideal
//! generated by the four tile orientations, up to a monomial factor
//! that the unit xy − 1 in the ideal makes irrelevant here.
//!
//! The crate makes that criterion effective and cross-checked:
//!
//! - [`poly`]: sparse ℤ[x, y] arithmetic under the degree-then-x term
//!   order everything else relies on.
//! - [`groebner`]: two reduction disciplines over ℤ (exact-coefficient
//!   and Euclidean-remainder), S- and G-polynomials, a Buchberger-style
//!   completion, and replayable reduction certificates.
//! - [`tiles`]: regions, tile families, placements, and signed tilings,
//!   with JSON and ASCII forms.
//! - [`decide`]: the tileability decision procedure plus the staircase
//!   remainder analysis for rectangles.
//! - [`oracle`]: independent integer-linear-algebra and exhaustive
//!   searches that confirm or refute the algebraic verdicts.
//! - [`invariants`]: ribbon walk encodings and the signed boundary
//!   invariant obstructing replication of the L shape.
//! - [`barnes`]: exact evaluation on the ideal's vanishing set inside a
//!   cyclotomic quotient ring.
//! - [`constructions`]: explicit verified regular tilings of
//!   rectangles.

pub mod barnes;
pub mod constructions;
pub mod decide;
pub mod groebner;
pub mod invariants;
pub mod oracle;
pub mod poly;
pub mod tiles;

pub use decide::{signed_tileable, Decider, Decision, Verdict};
pub use groebner::{complete, d_reduce, e_reduce, is_groebner, CompletedBasis, CompletionLimits};
pub use poly::{Monomial, Polynomial, Var};
pub use tiles::{
    basis_polynomials, tileset, tileset_extended, Cell, Placement, Region, SignedTiling, Tile,
    TileSet,
};
