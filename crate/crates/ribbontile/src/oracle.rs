//! Brute-force ground truth, independent of the algebra: signed tilings
//! by solving an integer linear system, regular tilings by backtracking
//! exact cover, and the cell-by-cell verifier both routes share with the
//! Gröbner pipeline.
//!
//! The linear route sets up one ℤ-variable per tile placement inside a
//! margin-inflated bounding box and asks for per-cell weight sums of 1
//! inside the region and 0 elsewhere in the box. Solvability is decided
//! by a column-echelon (Hermite-style) elimination with exact integer
//! arithmetic; a solution is recovered by replaying the recorded column
//! operations backwards. Because signed tilings may need support outside
//! the region and no a-priori bound on that support is known here, a
//! failure only ever means "none within this margin" — never a global
//! negative. Global negatives come from the algebra.

use crate::tiles::{Cell, Placement, Region, SignedTiling, TileSet};
use std::collections::BTreeMap;
use thiserror::Error;

/// Errors from oracle searches.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("expanded box has {0} cells, exceeding the cap {1}")]
    BoxTooLarge(usize, usize),
    #[error("integer overflow during elimination (entries exceeded i128)")]
    Overflow,
    #[error("placement references unknown tile id {0:?}")]
    UnknownTile(String),
    #[error("recovered weight does not fit in i64")]
    WeightOverflow,
    #[error("internal: solver output failed verification")]
    UnsoundSolution,
}

/// Exact per-cell weight accounting: every region cell must sum to 1,
/// every other touched cell to 0, and each placement must resolve to a
/// known shape and carry a nonzero weight.
pub fn verify_signed(tiling: &SignedTiling, region: &Region, ambient: Option<&TileSet>) -> bool {
    let mut sums: BTreeMap<Cell, i128> = BTreeMap::new();
    for pl in &tiling.placements {
        if pl.weight == 0 {
            return false;
        }
        let Some(shape) = tiling.shape_of(&pl.tile, ambient) else {
            return false;
        };
        for c in shape.iter() {
            *sums.entry(Cell::new(c.x + pl.dx, c.y + pl.dy)).or_insert(0) +=
                i128::from(pl.weight);
        }
    }
    for (cell, sum) in &sums {
        let want = if region.contains(cell) { 1 } else { 0 };
        if *sum != want {
            return false;
        }
    }
    // Region cells never touched by any placement must still sum to 1 —
    // impossible — unless the region is empty there; catch them.
    region.iter().all(|c| sums.get(c).copied().unwrap_or(0) == 1)
}

/// The integer linear system of a signed-tiling search.
pub struct DioSystem {
    /// One column per placement (tile index into the tile set, dx, dy),
    /// in lexicographic order for reproducibility.
    pub placements: Vec<(usize, i64, i64)>,
    /// Row-major cell×placement incidence matrix over the expanded box.
    pub matrix: Vec<Vec<i128>>,
    /// 1 on region cells, 0 elsewhere in the box.
    pub target: Vec<i128>,
    /// The expanded box as (min_x, min_y, max_x, max_y).
    pub bounds: (i64, i64, i64, i64),
}

/// Builds the cell×placement system over the region's bounding box
/// inflated by `margin` on all sides.
pub fn dio_system(
    region: &Region,
    ts: &TileSet,
    margin: u32,
    box_cap: usize,
) -> Result<DioSystem, OracleError> {
    let Some((bx0, by0, bx1, by1)) = region.bounding_box() else {
        return Ok(DioSystem {
            placements: Vec::new(),
            matrix: Vec::new(),
            target: Vec::new(),
            bounds: (0, 0, -1, -1),
        });
    };
    let m = i64::from(margin);
    let (x0, y0, x1, y1) = (bx0 - m, by0 - m, bx1 + m, by1 + m);
    let width = (x1 - x0 + 1) as usize;
    let height = (y1 - y0 + 1) as usize;
    let n_cells = width * height;
    if n_cells > box_cap {
        return Err(OracleError::BoxTooLarge(n_cells, box_cap));
    }
    let cell_index = |c: &Cell| -> Option<usize> {
        if c.x < x0 || c.x > x1 || c.y < y0 || c.y > y1 {
            None
        } else {
            Some(((c.y - y0) as usize) * width + (c.x - x0) as usize)
        }
    };
    let mut placements = Vec::new();
    let mut columns: Vec<Vec<usize>> = Vec::new();
    for (ti, tile) in ts.tiles.iter().enumerate() {
        let (_, _, tw, th) = tile.cells.bounding_box().unwrap();
        for dx in x0..=(x1 - tw) {
            for dy in y0..=(y1 - th) {
                let idxs: Vec<usize> = tile
                    .cells
                    .iter()
                    .map(|c| cell_index(&Cell::new(c.x + dx, c.y + dy)).unwrap())
                    .collect();
                placements.push((ti, dx, dy));
                columns.push(idxs);
            }
        }
    }
    let mut matrix = vec![vec![0i128; placements.len()]; n_cells];
    for (j, idxs) in columns.iter().enumerate() {
        for &i in idxs {
            matrix[i][j] = 1;
        }
    }
    let mut target = vec![0i128; n_cells];
    for c in region.iter() {
        target[cell_index(c).unwrap()] = 1;
    }
    Ok(DioSystem {
        placements,
        matrix,
        target,
        bounds: (x0, y0, x1, y1),
    })
}

/// A recorded elementary column operation (right-multiplication by a
/// unimodular matrix).
#[derive(Clone, Copy, Debug)]
enum ColOp {
    /// column[dst] += q · column[src]
    AddMul { dst: usize, src: usize, q: i128 },
    Swap(usize, usize),
    Negate(usize),
}

fn checked_addmul(a: i128, q: i128, b: i128) -> Result<i128, OracleError> {
    q.checked_mul(b)
        .and_then(|qb| a.checked_add(qb))
        .ok_or(OracleError::Overflow)
}

/// Solves `matrix · w = target` over ℤ.
///
/// Column echelon with gcd pivoting: row by row, the entries in the
/// active columns are combined (always subtracting multiples of the
/// current smallest) until a single pivot remains; the elementary
/// operations are logged. Forward substitution on the echelon form gives
/// `z` with `H·z = target` (divisibility and residual checks decide
/// solvability), and replaying the log backwards on `z` yields `w`.
fn solve_diophantine(sys: &DioSystem) -> Result<Option<Vec<i128>>, OracleError> {
    let n_rows = sys.matrix.len();
    let n_cols = sys.placements.len();
    if n_rows == 0 {
        return Ok(Some(Vec::new()));
    }
    let mut h: Vec<Vec<i128>> = sys.matrix.clone();
    let mut ops: Vec<ColOp> = Vec::new();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut col = 0usize;
    for row in 0..n_rows {
        if col >= n_cols {
            break;
        }
        // Gcd elimination across columns col..: repeatedly reduce by the
        // smallest nonzero entry until one survivor remains.
        loop {
            let mut best: Option<(usize, i128)> = None;
            for j in col..n_cols {
                let v = h[row][j];
                if v != 0 && best.map_or(true, |(_, b)| v.abs() < b.abs()) {
                    best = Some((j, v));
                }
            }
            let Some((jmin, vmin)) = best else { break };
            let mut others = false;
            for j in col..n_cols {
                if j == jmin || h[row][j] == 0 {
                    continue;
                }
                others = true;
                let q = -(h[row][j] / vmin); // truncated quotient shrinks |entry|
                if q != 0 {
                    for r in 0..n_rows {
                        h[r][j] = checked_addmul(h[r][j], q, h[r][jmin])?;
                    }
                    ops.push(ColOp::AddMul {
                        dst: j,
                        src: jmin,
                        q,
                    });
                }
            }
            if !others {
                // Lone survivor: move it to the pivot position.
                if jmin != col {
                    for r in 0..n_rows {
                        h[r].swap(jmin, col);
                    }
                    ops.push(ColOp::Swap(jmin, col));
                }
                if h[row][col] < 0 {
                    for r in 0..n_rows {
                        h[r][col] = -h[r][col];
                    }
                    ops.push(ColOp::Negate(col));
                }
                pivots.push((row, col));
                col += 1;
                break;
            }
        }
    }
    // Forward substitution: columns right of a pivot vanish on its row.
    let mut z = vec![0i128; n_cols];
    let mut residual = sys.target.clone();
    for &(row, c) in &pivots {
        let need = residual[row];
        let piv = h[row][c];
        if need % piv != 0 {
            return Ok(None);
        }
        let zi = need / piv;
        if zi != 0 {
            z[c] = zi;
            for r in 0..n_rows {
                residual[r] = checked_addmul(residual[r], -zi, h[r][c])?;
            }
        }
    }
    if residual.iter().any(|&v| v != 0) {
        return Ok(None);
    }
    // Replay the column operations backwards on the vector.
    let mut w = z;
    for op in ops.iter().rev() {
        match *op {
            ColOp::AddMul { dst, src, q } => {
                w[src] = checked_addmul(w[src], q, w[dst])?;
            }
            ColOp::Swap(i, j) => w.swap(i, j),
            ColOp::Negate(i) => w[i] = w[i].checked_neg().ok_or(OracleError::Overflow)?,
        }
    }
    Ok(Some(w))
}

/// Default cap on the expanded box (cells).
pub const DEFAULT_BOX_CAP: usize = 40_000;

/// Searches for an integer-weight signed tiling supported inside the
/// margin-inflated bounding box. `Ok(None)` means none exists **within
/// this margin** — larger margins may still succeed.
pub fn signed_search(
    region: &Region,
    ts: &TileSet,
    margin: u32,
) -> Result<Option<SignedTiling>, OracleError> {
    signed_search_capped(region, ts, margin, DEFAULT_BOX_CAP)
}

pub fn signed_search_capped(
    region: &Region,
    ts: &TileSet,
    margin: u32,
    box_cap: usize,
) -> Result<Option<SignedTiling>, OracleError> {
    if region.is_empty() {
        return Ok(Some(SignedTiling::default()));
    }
    let sys = dio_system(region, ts, margin, box_cap)?;
    let Some(w) = solve_diophantine(&sys)? else {
        return Ok(None);
    };
    let mut placements = Vec::new();
    for (j, &(ti, dx, dy)) in sys.placements.iter().enumerate() {
        if w[j] == 0 {
            continue;
        }
        let weight = i64::try_from(w[j]).map_err(|_| OracleError::WeightOverflow)?;
        placements.push(Placement {
            tile: ts.tiles[ti].id.clone(),
            dx,
            dy,
            weight,
        });
    }
    let tiling = SignedTiling {
        placements,
        tiles: Default::default(),
    };
    if !verify_signed(&tiling, region, Some(ts)) {
        return Err(OracleError::UnsoundSolution);
    }
    Ok(Some(tiling))
}

/// Exact-cover search limits.
#[derive(Clone, Copy, Debug)]
pub struct CoverLimits {
    /// Maximum number of search-tree nodes expanded.
    pub max_nodes: u64,
}

impl Default for CoverLimits {
    fn default() -> Self {
        CoverLimits { max_nodes: 5_000_000 }
    }
}

/// Outcome of an exact-cover search.
#[derive(Clone, Debug)]
pub enum CoverOutcome {
    /// A partition of the region into tiles (all weights +1).
    Found(SignedTiling),
    /// The full search space was explored; no partition exists.
    Exhausted,
    /// The node cap fired before the search finished.
    CappedOut,
}

/// Backtracking exact cover: partitions the region into translated tiles
/// (weights all +1). Deterministic most-constrained-cell-first strategy;
/// an optional `hint` tiling is verified and returned first if it already
/// partitions the region.
pub fn exact_cover(
    region: &Region,
    ts: &TileSet,
    limits: &CoverLimits,
    hint: Option<&SignedTiling>,
) -> CoverOutcome {
    if let Some(h) = hint {
        if h.placements.iter().all(|p| p.weight == 1) && verify_signed(h, region, Some(ts)) {
            return CoverOutcome::Found(h.clone());
        }
    }
    if region.is_empty() {
        return CoverOutcome::Found(SignedTiling::default());
    }
    let sizes: Vec<usize> = ts.tiles.iter().map(|t| t.cells.len()).collect();
    if let Some(&s) = sizes.first() {
        if sizes.iter().all(|&x| x == s) && region.len() % s != 0 {
            return CoverOutcome::Exhausted;
        }
    }
    let mut remaining = region.clone();
    let mut stack: Vec<Placement> = Vec::new();
    let mut nodes = 0u64;
    fn candidates_for(
        cell: &Cell,
        remaining: &Region,
        ts: &TileSet,
    ) -> Vec<(usize, i64, i64)> {
        let mut out = Vec::new();
        for (ti, tile) in ts.tiles.iter().enumerate() {
            for anchor in tile.cells.iter() {
                let dx = cell.x - anchor.x;
                let dy = cell.y - anchor.y;
                if tile
                    .cells
                    .iter()
                    .all(|c| remaining.contains(&Cell::new(c.x + dx, c.y + dy)))
                {
                    out.push((ti, dx, dy));
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
    fn search(
        remaining: &mut Region,
        ts: &TileSet,
        stack: &mut Vec<Placement>,
        nodes: &mut u64,
        max_nodes: u64,
    ) -> Result<bool, ()> {
        if remaining.is_empty() {
            return Ok(true);
        }
        *nodes += 1;
        if *nodes > max_nodes {
            return Err(());
        }
        // Most-constrained cell: fewest placements that could cover it.
        let mut best: Option<(Cell, Vec<(usize, i64, i64)>)> = None;
        for cell in remaining.iter() {
            let cands = candidates_for(cell, remaining, ts);
            let better = best.as_ref().map_or(true, |(_, b)| cands.len() < b.len());
            if better {
                let empty = cands.is_empty();
                best = Some((*cell, cands));
                if empty {
                    break;
                }
            }
        }
        let (_, cands) = best.unwrap();
        for (ti, dx, dy) in cands {
            let tile = &ts.tiles[ti];
            for c in tile.cells.iter() {
                remaining.remove(&Cell::new(c.x + dx, c.y + dy));
            }
            stack.push(Placement {
                tile: tile.id.clone(),
                dx,
                dy,
                weight: 1,
            });
            if search(remaining, ts, stack, nodes, max_nodes)? {
                return Ok(true);
            }
            stack.pop();
            for c in tile.cells.iter() {
                remaining.insert(Cell::new(c.x + dx, c.y + dy));
            }
        }
        Ok(false)
    }
    match search(&mut remaining, ts, &mut stack, &mut nodes, limits.max_nodes) {
        Err(()) => CoverOutcome::CappedOut,
        Ok(true) => {
            let tiling = SignedTiling {
                placements: stack,
                tiles: Default::default(),
            };
            debug_assert!(verify_signed(&tiling, region, Some(ts)));
            CoverOutcome::Found(tiling)
        }
        Ok(false) => CoverOutcome::Exhausted,
    }
}
