//! Explicit regular tilings (all weights +1) of rectangles by the
//! ribbon L n-omino family.
//!
//! Two tiles pair into a 2×n or n×2 brick: horizontally, the row tile
//! and its mirror interlock as G₃@(0,0) ∪ G₄@(1,0) = [0,n)×[0,2);
//! vertically, the column pair interlocks as G₁@(0,0) ∪ G₂@(0,1) =
//! [0,2)×[0,n). Any rectangle with one side divisible by n and the
//! other even is therefore tileable by bricks.
//!
//! Beyond bricks, a 3n×(3n+1) rectangle — neither side condition holds —
//! is tiled by partitioning it into six brick-friendly sub-rectangles
//! plus two single L tiles absorbing the leftover 2n cells. Gluing that
//! block to brick regions tiles every a×b rectangle with a odd ≥ 3n and
//! b even, divisible by n, and ≥ 3n+1.
//!
//! Every constructor re-verifies its output as an exact partition
//! (disjoint, full coverage, weights all +1) before returning it.

use crate::oracle::verify_signed;
use crate::tiles::{tileset, Placement, Region, SignedTiling, TileError, TileSet};
use std::collections::BTreeMap;
use thiserror::Error;

/// Failure modes of the explicit constructions.
#[derive(Debug, Error)]
pub enum ConstructionError {
    /// A stated precondition on the rectangle dimensions fails.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// Invalid tile-family parameter.
    #[error(transparent)]
    Tile(#[from] TileError),
    /// The assembled placement list failed the partition check; this
    /// indicates a bug, never bad user input.
    #[error("construction failed its own partition verification")]
    VerificationFailed,
}

fn placement(tile: &str, dx: i64, dy: i64) -> Placement {
    Placement {
        tile: tile.to_string(),
        dx,
        dy,
        weight: 1,
    }
}

/// Two tiles forming the horizontal brick [ox, ox+n) × [oy, oy+2).
fn horizontal_brick(out: &mut Vec<Placement>, ox: i64, oy: i64) {
    out.push(placement("G3", ox, oy));
    out.push(placement("G4", ox + 1, oy));
}

/// Two tiles forming the vertical brick [ox, ox+2) × [oy, oy+n).
fn vertical_brick(out: &mut Vec<Placement>, ox: i64, oy: i64) {
    out.push(placement("G1", ox, oy));
    out.push(placement("G2", ox, oy + 1));
}

/// Fills [x0, x1) × [y0, y1) with horizontal bricks; requires
/// n | (x1−x0) and (y1−y0) even.
fn fill_horizontal(out: &mut Vec<Placement>, n: i64, x0: i64, x1: i64, y0: i64, y1: i64) {
    debug_assert!((x1 - x0) % n == 0 && (y1 - y0) % 2 == 0);
    let mut y = y0;
    while y < y1 {
        let mut x = x0;
        while x < x1 {
            horizontal_brick(out, x, y);
            x += n;
        }
        y += 2;
    }
}

/// Fills [x0, x1) × [y0, y1) with vertical bricks; requires
/// (x1−x0) even and n | (y1−y0).
fn fill_vertical(out: &mut Vec<Placement>, n: i64, x0: i64, x1: i64, y0: i64, y1: i64) {
    debug_assert!((x1 - x0) % 2 == 0 && (y1 - y0) % n == 0);
    let mut x = x0;
    while x < x1 {
        let mut y = y0;
        while y < y1 {
            vertical_brick(out, x, y);
            y += n;
        }
        x += 2;
    }
}

fn finish(
    placements: Vec<Placement>,
    target: &Region,
    ts: &TileSet,
) -> Result<SignedTiling, ConstructionError> {
    let tiling = SignedTiling {
        placements,
        tiles: BTreeMap::new(),
    };
    if tiling.placements.iter().all(|p| p.weight == 1) && verify_signed(&tiling, target, Some(ts))
    {
        Ok(tiling)
    } else {
        Err(ConstructionError::VerificationFailed)
    }
}

/// Tiles a p-high, q-wide rectangle with 2×n / n×2 bricks. Requires
/// one side divisible by n and the other even.
pub fn brick_tilings(p: u32, q: u32, n: u32) -> Result<SignedTiling, ConstructionError> {
    let ts = tileset(n)?;
    if p == 0 || q == 0 {
        return Err(ConstructionError::Precondition(
            "rectangle sides must be positive".to_string(),
        ));
    }
    let (pp, qq, nn) = (i64::from(p), i64::from(q), i64::from(n));
    let mut placements = Vec::new();
    if q % n == 0 && p % 2 == 0 {
        fill_horizontal(&mut placements, nn, 0, qq, 0, pp);
    } else if p % n == 0 && q % 2 == 0 {
        fill_vertical(&mut placements, nn, 0, qq, 0, pp);
    } else {
        return Err(ConstructionError::Precondition(format!(
            "need one side divisible by {n} and the other even; got {p}×{q}"
        )));
    }
    finish(placements, &Region::rectangle(q, p), &ts)
}

/// Tiles the 3n-high, (3n+1)-wide rectangle: six brick-packed
/// sub-rectangles plus two individual L tiles covering the final 2n
/// cells. Uses exactly 3(3n+1) tiles.
pub fn rect_3n_3n1(n: u32) -> Result<SignedTiling, ConstructionError> {
    let ts = tileset(n)?;
    let nn = i64::from(n);
    let mut placements = Vec::new();
    // Left stack: [0,n)×[0,2n) then [0,n+1)×[2n,3n).
    fill_horizontal(&mut placements, nn, 0, nn, 0, 2 * nn);
    fill_vertical(&mut placements, nn, 0, nn + 1, 2 * nn, 3 * nn);
    // Right stack: [2n,3n+1)×[0,n) then [2n+1,3n+1)×[n,3n).
    fill_vertical(&mut placements, nn, 2 * nn, 3 * nn + 1, 0, nn);
    fill_horizontal(&mut placements, nn, 2 * nn + 1, 3 * nn + 1, nn, 3 * nn);
    // Middle columns: [n,2n)×[0,2n−2) below, [n+1,2n+1)×[2n−1,3n) above.
    fill_horizontal(&mut placements, nn, nn, 2 * nn, 0, 2 * nn - 2);
    fill_horizontal(&mut placements, nn, nn + 1, 2 * nn + 1, 2 * nn - 1, 3 * nn);
    // The remaining 2n cells form two interlocking L tiles.
    placements.push(placement("G3", nn, 2 * nn - 2));
    placements.push(placement("G2", 2 * nn - 1, nn));
    finish(placements, &Region::rectangle(3 * n + 1, 3 * n), &ts)
}

/// Tiles an a-high, b-wide rectangle where a is odd and ≥ 3n while b is
/// even, divisible by n, and ≥ 3n+1: the 3n×(3n+1) block sits in the
/// bottom-left corner and bricks fill the rest.
pub fn odd_even_rectangle(a: u32, b: u32, n: u32) -> Result<SignedTiling, ConstructionError> {
    let ts = tileset(n)?;
    if a % 2 == 0 {
        return Err(ConstructionError::Precondition(format!(
            "odd side must be odd; got {a}"
        )));
    }
    if a < 3 * n {
        return Err(ConstructionError::Precondition(format!(
            "odd side must be at least 3n = {}; got {a}",
            3 * n
        )));
    }
    if b % 2 != 0 {
        return Err(ConstructionError::Precondition(format!(
            "even side must be even; got {b}"
        )));
    }
    if b % n != 0 {
        return Err(ConstructionError::Precondition(format!(
            "even side must be divisible by {n}; got {b}"
        )));
    }
    if b < 3 * n + 1 {
        return Err(ConstructionError::Precondition(format!(
            "even side must be at least 3n+1 = {}; got {b}",
            3 * n + 1
        )));
    }
    let (aa, bb, nn) = (i64::from(a), i64::from(b), i64::from(n));
    let mut placements = rect_3n_3n1(n)?.placements;
    // Right of the corner block: width b−(3n+1) is even (both b and
    // 3n+1 are even), height 3n is a multiple of n.
    if bb > 3 * nn + 1 {
        fill_vertical(&mut placements, nn, 3 * nn + 1, bb, 0, 3 * nn);
    }
    // Above everything: full width b (divisible by n), even height a−3n.
    if aa > 3 * nn {
        fill_horizontal(&mut placements, nn, 0, bb, 3 * nn, aa);
    }
    finish(placements, &Region::rectangle(b, a), &ts)
}
