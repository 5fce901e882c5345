//! Rendering of signed tilings and regions to text grids and SVG.
//!
//! The ASCII form prints per-cell weight sums over the bounding box of all
//! touched cells, top row first: `-` for negative sums, digits for sums
//! 0–9, `+` for anything larger. A valid signed tiling therefore renders
//! as 1s on the target region and 0s everywhere else, with cancellations
//! invisible.
//!
//! The SVG form draws one polygon per placement by tracing the boundary of
//! its translated shape counter-clockwise (interior on the left). Fill
//! color is assigned per tile id from a fixed palette; the stroke is blue
//! for positive weights and red for negative ones. Output bytes are a pure
//! function of the input: coordinates stay integral and placements are
//! drawn in their stored order.

use ribbontile::tiles::{Cell, Region, SignedTiling, TileSet};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use thiserror::Error;

/// Rendering failures. Geometry itself cannot fail; only shape lookup can.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum RenderError {
    #[error("placement references unknown tile id {0:?}")]
    UnknownTile(String),
}

fn cell_weights(
    t: &SignedTiling,
    ambient: Option<&TileSet>,
) -> Result<BTreeMap<Cell, i64>, RenderError> {
    let mut sums = BTreeMap::new();
    for pl in &t.placements {
        let shape = t
            .shape_of(&pl.tile, ambient)
            .ok_or_else(|| RenderError::UnknownTile(pl.tile.clone()))?;
        for c in shape.iter() {
            *sums.entry(Cell::new(c.x + pl.dx, c.y + pl.dy)).or_insert(0) += pl.weight;
        }
    }
    Ok(sums)
}

/// Per-cell weight sums of a tiling as a text grid over the bounding box
/// of every touched cell. An empty tiling yields an empty string.
pub fn ascii_weights(
    t: &SignedTiling,
    ambient: Option<&TileSet>,
) -> Result<String, RenderError> {
    let sums = cell_weights(t, ambient)?;
    let Some(first) = sums.keys().next() else {
        return Ok(String::new());
    };
    let (mut x0, mut y0, mut x1, mut y1) = (first.x, first.y, first.x, first.y);
    for c in sums.keys() {
        x0 = x0.min(c.x);
        y0 = y0.min(c.y);
        x1 = x1.max(c.x);
        y1 = y1.max(c.y);
    }
    let mut out = String::new();
    for y in (y0..=y1).rev() {
        for x in x0..=x1 {
            let w = sums.get(&Cell::new(x, y)).copied().unwrap_or(0);
            out.push(match w {
                i64::MIN..=-1 => '-',
                0..=9 => (b'0' + w as u8) as char,
                _ => '+',
            });
        }
        if y > y0 {
            out.push('\n');
        }
    }
    Ok(out)
}

/// Renders a bare region as a `#`/`.` grid (same orientation as the
/// weight grid).
pub fn ascii_region(r: &Region) -> String {
    r.to_ascii()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Dir {
    R,
    U,
    L,
    D,
}

impl Dir {
    fn left(self) -> Dir {
        match self {
            Dir::R => Dir::U,
            Dir::U => Dir::L,
            Dir::L => Dir::D,
            Dir::D => Dir::R,
        }
    }

    fn right(self) -> Dir {
        self.left().left().left()
    }

    fn back(self) -> Dir {
        self.left().left()
    }

    fn step(self, v: (i64, i64)) -> (i64, i64) {
        match self {
            Dir::R => (v.0 + 1, v.1),
            Dir::U => (v.0, v.1 + 1),
            Dir::L => (v.0 - 1, v.1),
            Dir::D => (v.0, v.1 - 1),
        }
    }
}

/// Whether the lattice edge leaving vertex `v` in direction `d` has the
/// filled cell set on its left and empty space on its right.
fn edge_on_boundary(cells: &BTreeSet<Cell>, v: (i64, i64), d: Dir) -> bool {
    let (x, y) = v;
    let (left, right) = match d {
        Dir::R => (Cell::new(x, y), Cell::new(x, y - 1)),
        Dir::U => (Cell::new(x - 1, y), Cell::new(x, y)),
        Dir::L => (Cell::new(x - 1, y - 1), Cell::new(x - 1, y)),
        Dir::D => (Cell::new(x, y - 1), Cell::new(x - 1, y - 1)),
    };
    cells.contains(&left) && !cells.contains(&right)
}

/// Traces the outer boundary of a set of cells counter-clockwise, starting
/// at the bottom-left corner of the lowest-then-leftmost cell. Interior
/// stays on the left; at each vertex the walk prefers turning left, then
/// straight, then right, so touching corners are resolved consistently.
fn trace_boundary(cells: &BTreeSet<Cell>) -> Vec<(i64, i64)> {
    let Some(start_cell) = cells.iter().min_by_key(|c| (c.y, c.x)) else {
        return Vec::new();
    };
    let start = ((start_cell.x, start_cell.y), Dir::R);
    debug_assert!(edge_on_boundary(cells, start.0, start.1));
    let (mut v, mut d) = start;
    let mut pts = Vec::new();
    loop {
        pts.push(v);
        let nv = d.step(v);
        let nd = [d.left(), d, d.right(), d.back()]
            .into_iter()
            .find(|&c| edge_on_boundary(cells, nv, c))
            .expect("boundary walk left the edge set");
        v = nv;
        d = nd;
        if (v, d) == start {
            return pts;
        }
    }
}

const PALETTE: [&str; 8] = [
    "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5",
];
const STROKE_POS: &str = "#1f4e9c";
const STROKE_NEG: &str = "#c0392b";

/// Renders a tiling as an SVG document: one boundary polygon per
/// placement, filled by tile id and stroked by weight sign.
pub fn svg(
    t: &SignedTiling,
    ambient: Option<&TileSet>,
    cell_size: u32,
) -> Result<String, RenderError> {
    let s = i64::from(cell_size.max(1));
    let mut shapes: Vec<(&ribbontile::tiles::Placement, BTreeSet<Cell>)> = Vec::new();
    for pl in &t.placements {
        let shape = t
            .shape_of(&pl.tile, ambient)
            .ok_or_else(|| RenderError::UnknownTile(pl.tile.clone()))?;
        let cells = shape
            .iter()
            .map(|c| Cell::new(c.x + pl.dx, c.y + pl.dy))
            .collect();
        shapes.push((pl, cells));
    }

    let mut bbox: Option<(i64, i64, i64, i64)> = None;
    for (_, cells) in &shapes {
        for c in cells {
            bbox = Some(match bbox {
                None => (c.x, c.y, c.x, c.y),
                Some((x0, y0, x1, y1)) => {
                    (x0.min(c.x), y0.min(c.y), x1.max(c.x), y1.max(c.y))
                }
            });
        }
    }
    let Some((x0, y0, x1, y1)) = bbox else {
        return Ok(concat!(
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="0" height="0" viewBox="0 0 0 0">"#,
            "</svg>\n"
        )
        .to_string());
    };
    let width = (x1 - x0 + 1) * s;
    let height = (y1 - y0 + 1) * s;
    // Vertex (vx, vy) in cell coordinates maps to SVG with y flipped so
    // larger y is drawn higher.
    let map = |(vx, vy): (i64, i64)| ((vx - x0) * s, (y1 + 1 - vy) * s);

    let ids: BTreeSet<&str> = shapes.iter().map(|(pl, _)| pl.tile.as_str()).collect();
    let color_of: BTreeMap<&str, &str> = ids
        .iter()
        .enumerate()
        .map(|(i, id)| (*id, PALETTE[i % PALETTE.len()]))
        .collect();

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    for (pl, cells) in &shapes {
        let pts = trace_boundary(cells);
        let mut d = String::new();
        for (i, &v) in pts.iter().enumerate() {
            let (px, py) = map(v);
            let _ = write!(d, "{}{px},{py}", if i == 0 { "M" } else { " L" });
        }
        d.push_str(" Z");
        let stroke = if pl.weight < 0 { STROKE_NEG } else { STROKE_POS };
        let dash = if pl.weight < 0 { r#" stroke-dasharray="6,4""# } else { "" };
        let _ = writeln!(
            out,
            r#"<path d="{d}" fill="{fill}" fill-opacity="0.75" stroke="{stroke}"{dash} stroke-width="2"><title>{id} at ({dx},{dy}) weight {weight}</title></path>"#,
            fill = color_of[pl.tile.as_str()],
            id = pl.tile,
            dx = pl.dx,
            dy = pl.dy,
            weight = pl.weight,
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}
