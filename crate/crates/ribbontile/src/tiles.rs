//! Lattice regions, the ribbon L tile families, and the region ↔
//! polynomial dictionary.
//!
//! A region is a finite set of unit cells addressed by their lower-left
//! corner. The cell at (α, β) corresponds to the monomial x^α y^β, and a
//! region corresponds to the sum of its cell monomials — an
//! all-coefficients-1 polynomial. Signed tilings of a region are exactly
//! the expressions of (a diagonal shift of) its polynomial inside the
//! ideal generated by the tile polynomials, which is why the whole
//! decision pipeline runs on this encoding.
//!
//! For odd n = 2k+1 ≥ 5, the library `Tn` holds the four translation
//! orientations of the ribbon L n-omino, `TildeTn` adds a 2×2 square, and
//! `Bn` is the three-element polynomial basis their ideal is compared
//! against: B₁ = 1+y+…+y^{k+1}+x+…+x^{k−1}, B₂ = 1+y+…+y^k+x+…+x^k,
//! B₃ = xy−1.

use crate::poly::{Polynomial, Var};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

/// A unit lattice cell, addressed by its lower-left corner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub x: i64,
    pub y: i64,
}

impl Cell {
    pub fn new(x: i64, y: i64) -> Self {
        Cell { x, y }
    }
}

/// A finite set of cells. Connectivity is not required: the signed-tiling
/// algebra never needs it, and disconnected differences arise naturally.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Region {
    cells: BTreeSet<Cell>,
}

/// Errors from region constructors and parsers.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum RegionError {
    #[error("unexpected character {what:?} at line {line}, column {col}")]
    BadChar { line: usize, col: usize, what: char },
    #[error("region JSON malformed: {0}")]
    BadJson(String),
}

impl Region {
    /// The empty region.
    pub fn empty() -> Self {
        Region::default()
    }

    pub fn from_cells<I: IntoIterator<Item = Cell>>(it: I) -> Self {
        Region {
            cells: it.into_iter().collect(),
        }
    }

    /// The rectangle [0, width) × [0, height).
    pub fn rectangle(width: u32, height: u32) -> Self {
        let mut cells = BTreeSet::new();
        for x in 0..width {
            for y in 0..height {
                cells.insert(Cell::new(i64::from(x), i64::from(y)));
            }
        }
        Region { cells }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, c: &Cell) -> bool {
        self.cells.contains(c)
    }

    pub fn insert(&mut self, c: Cell) -> bool {
        self.cells.insert(c)
    }

    pub fn remove(&mut self, c: &Cell) -> bool {
        self.cells.remove(c)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter()
    }

    /// Set union.
    pub fn union(&self, other: &Region) -> Region {
        Region {
            cells: self.cells.union(&other.cells).copied().collect(),
        }
    }

    /// Set difference `self \ other`.
    pub fn difference(&self, other: &Region) -> Region {
        Region {
            cells: self.cells.difference(&other.cells).copied().collect(),
        }
    }

    pub fn is_disjoint(&self, other: &Region) -> bool {
        self.cells.is_disjoint(&other.cells)
    }

    /// Translate every cell by (dx, dy).
    pub fn translate(&self, dx: i64, dy: i64) -> Region {
        Region {
            cells: self
                .cells
                .iter()
                .map(|c| Cell::new(c.x + dx, c.y + dy))
                .collect(),
        }
    }

    /// (min_x, min_y, max_x, max_y) of the occupied cells.
    pub fn bounding_box(&self) -> Option<(i64, i64, i64, i64)> {
        let mut it = self.cells.iter();
        let first = it.next()?;
        let (mut x0, mut y0, mut x1, mut y1) = (first.x, first.y, first.x, first.y);
        for c in it {
            x0 = x0.min(c.x);
            y0 = y0.min(c.y);
            x1 = x1.max(c.x);
            y1 = y1.max(c.y);
        }
        Some((x0, y0, x1, y1))
    }

    /// Translation taking the minimum corner of the bounding box to the
    /// origin, together with the translated region.
    pub fn normalized(&self) -> (Region, (i64, i64)) {
        match self.bounding_box() {
            None => (Region::empty(), (0, 0)),
            Some((x0, y0, _, _)) => (self.translate(-x0, -y0), (x0, y0)),
        }
    }

    /// Whether no two cells share a NE diagonal (all x−y values distinct).
    pub fn is_ribbon_shaped(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.cells.iter().all(|c| seen.insert(c.x - c.y))
    }

    /// Whether the region is edge-connected.
    pub fn is_connected(&self) -> bool {
        let Some(start) = self.cells.iter().next() else {
            return true;
        };
        let mut seen = BTreeSet::new();
        let mut stack = vec![*start];
        seen.insert(*start);
        while let Some(c) = stack.pop() {
            for (dx, dy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                let nb = Cell::new(c.x + dx, c.y + dy);
                if self.cells.contains(&nb) && seen.insert(nb) {
                    stack.push(nb);
                }
            }
        }
        seen.len() == self.cells.len()
    }

    /// Emits the ASCII picture: `#` for cell, `.` for empty, rows top
    /// (largest y) to bottom, columns left to right over the bounding
    /// box. The picture is translation-blind, so it is drawn from the
    /// normalized region; the empty region gives the empty string.
    pub fn to_ascii(&self) -> String {
        let Some((x0, y0, x1, y1)) = self.bounding_box() else {
            return String::new();
        };
        let mut rows = Vec::new();
        for y in (y0..=y1).rev() {
            let row: String = (x0..=x1)
                .map(|x| if self.contains(&Cell::new(x, y)) { '#' } else { '.' })
                .collect();
            rows.push(row);
        }
        rows.join("\n")
    }

    /// Parses the ASCII picture produced by [`Region::to_ascii`]. The
    /// top text row is the highest y; the result is normalized so its
    /// bounding box starts at the origin.
    pub fn from_ascii(text: &str) -> Result<Region, RegionError> {
        let lines: Vec<&str> = text.lines().collect();
        let mut cells = BTreeSet::new();
        let height = lines.len() as i64;
        for (row, line) in lines.iter().enumerate() {
            for (col, ch) in line.chars().enumerate() {
                match ch {
                    '#' => {
                        cells.insert(Cell::new(col as i64, height - 1 - row as i64));
                    }
                    '.' | ' ' => {}
                    what => {
                        return Err(RegionError::BadChar {
                            line: row + 1,
                            col: col + 1,
                            what,
                        })
                    }
                }
            }
        }
        Ok(Region { cells }.normalized().0)
    }

    /// Converts to the sum-of-monomials polynomial after translating the
    /// minimum corner to the origin; returns the translation that maps
    /// the normalized region back onto `self` (i.e. the original minimum
    /// corner).
    pub fn to_poly(&self) -> (Polynomial, (i64, i64)) {
        let Some((x0, y0, _, _)) = self.bounding_box() else {
            return (Polynomial::zero(), (0, 0));
        };
        let p = Polynomial::from_terms(self.cells.iter().map(|c| {
            let ex = u32::try_from(c.x - x0).expect("region span exceeds u32");
            let ey = u32::try_from(c.y - y0).expect("region span exceeds u32");
            (num_bigint::BigInt::from(1), crate::poly::Monomial::new(ex, ey))
        }));
        (p, (x0, y0))
    }

    /// Inverse of [`Region::to_poly`] at the origin: succeeds exactly
    /// when every coefficient is 1.
    pub fn from_poly(p: &Polynomial) -> Option<Region> {
        use num_traits::One;
        let mut cells = BTreeSet::new();
        for (m, c) in p.terms() {
            if !c.is_one() {
                return None;
            }
            cells.insert(Cell::new(i64::from(m.x), i64::from(m.y)));
        }
        Some(Region { cells })
    }
}

impl FromIterator<Cell> for Region {
    fn from_iter<T: IntoIterator<Item = Cell>>(iter: T) -> Self {
        Region::from_cells(iter)
    }
}

impl Serialize for Region {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let cells: Vec<[i64; 2]> = self.cells.iter().map(|c| [c.x, c.y]).collect();
        let mut st = s.serialize_struct("Region", 1)?;
        st.serialize_field("cells", &cells)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Region {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            cells: Vec<[i64; 2]>,
        }
        let raw = Raw::deserialize(d)?;
        Ok(Region::from_cells(
            raw.cells.into_iter().map(|[x, y]| Cell::new(x, y)),
        ))
    }
}

/// A tile: an identified region normalized to have its bounding-box
/// minimum corner at the origin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tile {
    pub id: String,
    pub cells: Region,
}

impl Tile {
    /// Builds a tile, normalizing the cells to the origin.
    pub fn new(id: impl Into<String>, cells: Region) -> Self {
        Tile {
            id: id.into(),
            cells: cells.normalized().0,
        }
    }

    /// The tile's polynomial (normalized, so translation is (0,0)).
    pub fn polynomial(&self) -> Polynomial {
        self.cells.to_poly().0
    }
}

/// One weighted, translated tile of a signed tiling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Placement {
    /// Tile id, resolved against the tiling's own dictionary first and
    /// the ambient tile set second.
    pub tile: String,
    pub dx: i64,
    pub dy: i64,
    #[serde(rename = "w")]
    pub weight: i64,
}

/// A weighted tiling certificate: per-cell weight sums must be 1 inside
/// the target region and 0 outside (checked by the oracle module).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedTiling {
    pub placements: Vec<Placement>,
    /// Shapes for tile ids that are not part of a standard library
    /// (e.g. the staircase ribbon tiles of leftover regions).
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub tiles: BTreeMap<String, Region>,
}

impl SignedTiling {
    /// Looks up the shape for a placement id: the tiling's own dictionary
    /// wins, then the optional ambient tile set.
    pub fn shape_of<'a>(&'a self, id: &str, ambient: Option<&'a TileSet>) -> Option<&'a Region> {
        self.tiles.get(id).or_else(|| {
            ambient.and_then(|ts| ts.tiles.iter().find(|t| t.id == id).map(|t| &t.cells))
        })
    }

    /// Total number of placements.
    pub fn len(&self) -> usize {
        self.placements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.placements.is_empty()
    }
}

/// Errors from the tile library constructors.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum TileError {
    #[error("tile library requires odd n ≥ 5, got {0}")]
    InvalidN(u32),
    #[error("inflation factor must be ≥ 1")]
    InvalidInflation,
}

/// A named family of tiles with their polynomials.
#[derive(Clone, Debug)]
pub struct TileSet {
    /// Odd tile size n = 2k+1 (the 2×2 extra tile of `TildeTn` keeps the
    /// family's n).
    pub n: u32,
    pub k: u32,
    pub name: String,
    pub tiles: Vec<Tile>,
    /// `generators[i]` = polynomial of `tiles[i]` (normalized).
    pub generators: Vec<Polynomial>,
}

impl TileSet {
    fn from_tiles(n: u32, name: String, tiles: Vec<Tile>) -> Self {
        let generators = tiles.iter().map(Tile::polynomial).collect();
        TileSet {
            n,
            k: (n - 1) / 2,
            name,
            tiles,
            generators,
        }
    }

    /// Shape lookup by id.
    pub fn tile(&self, id: &str) -> Option<&Tile> {
        self.tiles.iter().find(|t| t.id == id)
    }
}

fn check_n(n: u32) -> Result<u32, TileError> {
    if n < 5 || n % 2 == 0 {
        Err(TileError::InvalidN(n))
    } else {
        Ok((n - 1) / 2)
    }
}

/// The four ribbon L n-omino orientations, ids G1..G4.
///
/// Shapes (m = 2k−1 = n−2):
/// G1 = column (0,0)..(0,m) plus (1,0);      polynomial 1+y+…+y^m + x
/// G2 = cell (0,m) plus column (1,0)..(1,m); polynomial y^m + x(1+…+y^m)
/// G3 = row (0,0)..(m,0) plus (0,1);         polynomial 1+x+…+x^m + y
/// G4 = row (0,1)..(m,1) plus (m,0);         polynomial y(1+…+x^m) + x^m
pub fn tileset(n: u32) -> Result<TileSet, TileError> {
    let k = check_n(n)?;
    let m = i64::from(2 * k - 1);
    let g1 = Region::from_cells((0..=m).map(|y| Cell::new(0, y)).chain([Cell::new(1, 0)]));
    let g2 = Region::from_cells((0..=m).map(|y| Cell::new(1, y)).chain([Cell::new(0, m)]));
    let g3 = Region::from_cells((0..=m).map(|x| Cell::new(x, 0)).chain([Cell::new(0, 1)]));
    let g4 = Region::from_cells((0..=m).map(|x| Cell::new(x, 1)).chain([Cell::new(m, 0)]));
    Ok(TileSet::from_tiles(
        n,
        format!("T{n}"),
        vec![
            Tile::new("G1", g1),
            Tile::new("G2", g2),
            Tile::new("G3", g3),
            Tile::new("G4", g4),
        ],
    ))
}

/// `tileset(n)` plus the 2×2 square tile `SQ` (polynomial 1+x+y+xy).
pub fn tileset_extended(n: u32) -> Result<TileSet, TileError> {
    let mut ts = tileset(n)?;
    let sq = Region::from_cells([
        Cell::new(0, 0),
        Cell::new(1, 0),
        Cell::new(0, 1),
        Cell::new(1, 1),
    ]);
    ts.name = format!("T{n}~");
    ts.tiles.push(Tile::new("SQ", sq));
    ts.generators.push(ts.tiles.last().unwrap().polynomial());
    Ok(ts)
}

/// The three-element basis [B₁, B₂, B₃] for odd n = 2k+1:
/// B₁ = 1+y+…+y^{k+1} + x+…+x^{k−1} (head y^{k+1}),
/// B₂ = 1+y+…+y^k + x+…+x^k (head x^k),
/// B₃ = xy − 1 (head xy). All head coefficients are 1.
pub fn basis_polynomials(n: u32) -> Result<[Polynomial; 3], TileError> {
    let k = check_n(n)?;
    let x = Polynomial::monomial(1, 0);
    let b1 = Polynomial::geometric(Var::Y, k + 2) + &x * Polynomial::geometric(Var::X, k - 1);
    let b2 = Polynomial::geometric(Var::Y, k + 1) + &x * Polynomial::geometric(Var::X, k);
    let b3 = Polynomial::monomial(1, 1) - Polynomial::one();
    Ok([b1, b2, b3])
}

/// Which tile/basis family to fetch from the library.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Library {
    /// The four ribbon L n-omino orientations.
    Tn,
    /// The three-polynomial basis their ideal is compared against.
    Bn,
    /// Tn plus the 2×2 square.
    TildeTn,
}

/// Library output: tiles or bare basis polynomials.
#[derive(Clone, Debug)]
pub enum LibraryOutput {
    Tiles(TileSet),
    Basis(Vec<Polynomial>),
}

/// Unified library accessor.
pub fn tileset_library(which: Library, n: u32) -> Result<LibraryOutput, TileError> {
    Ok(match which {
        Library::Tn => LibraryOutput::Tiles(tileset(n)?),
        Library::TildeTn => LibraryOutput::Tiles(tileset_extended(n)?),
        Library::Bn => LibraryOutput::Basis(basis_polynomials(n)?.to_vec()),
    })
}

/// L-shaped regions: the bare n-omino or its k-inflated copy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LShape {
    /// Row of n−1 cells plus one cell atop the left end.
    LNomino,
    /// Every cell of the n-omino replaced by a k×k block:
    /// [0, k(n−1)) × [0, k) ∪ [0, k) × [k, 2k).
    InflatedL,
}

/// Builds an L n-omino or its k-inflated copy (area k²·n).
pub fn l_shape(kind: LShape, n: u32, k: u32) -> Result<Region, TileError> {
    check_n(n)?;
    if k == 0 {
        return Err(TileError::InvalidInflation);
    }
    let (n, k) = (i64::from(n), i64::from(k));
    let region = match kind {
        LShape::LNomino => Region::from_cells(
            (0..n - 1)
                .map(|x| Cell::new(x, 0))
                .chain([Cell::new(0, 1)]),
        ),
        LShape::InflatedL => {
            let mut cells = BTreeSet::new();
            for x in 0..k * (n - 1) {
                for y in 0..k {
                    cells.insert(Cell::new(x, y));
                }
            }
            for x in 0..k {
                for y in k..2 * k {
                    cells.insert(Cell::new(x, y));
                }
            }
            Region { cells }
        }
    };
    Ok(region)
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_ascii())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s).unwrap()
    }

    #[test]
    fn single_cell_polynomial() {
        let r = Region::from_cells([Cell::new(0, 0)]);
        assert_eq!(r.to_poly().0, Polynomial::one());
    }

    #[test]
    fn horizontal_bar_polynomial() {
        let r = Region::rectangle(5, 1);
        assert_eq!(r.to_poly().0, p("x^4+x^3+x^2+x+1"));
    }

    #[test]
    fn translation_recorded() {
        let r = Region::from_cells([Cell::new(3, -2), Cell::new(4, -2)]);
        let (poly, (tx, ty)) = r.to_poly();
        assert_eq!(poly, p("x+1"));
        assert_eq!((tx, ty), (3, -2));
    }

    #[test]
    fn poly_region_inverse() {
        let r = Region::rectangle(3, 2);
        let (poly, _) = r.to_poly();
        assert_eq!(Region::from_poly(&poly), Some(r));
        assert_eq!(Region::from_poly(&p("2*x+1")), None);
    }

    #[test]
    fn g2_polynomial_matches_closed_form() {
        // k=2: y³ + x(1+y+y²+y³) = x*y^3+y^3+x*y^2+x*y+x
        let ts = tileset(5).unwrap();
        let g2 = &ts.generators[1];
        assert_eq!(*g2, p("y^3+x*y^3+x*y^2+x*y+x"));
    }

    #[test]
    fn generators_match_condensed_forms() {
        for n in [5u32, 7, 9, 11, 13, 25] {
            let k = (n - 1) / 2;
            let ts = tileset(n).unwrap();
            let x = Polynomial::monomial(1, 0);
            let y = Polynomial::monomial(0, 1);
            let gy = Polynomial::geometric(Var::Y, 2 * k);
            let gx = Polynomial::geometric(Var::X, 2 * k);
            let expect = [
                &gy + &x,
                Polynomial::monomial(0, 2 * k - 1) + &x * &gy,
                &gx + &y,
                &y * &gx + Polynomial::monomial(2 * k - 1, 0),
            ];
            for (g, e) in ts.generators.iter().zip(&expect) {
                assert_eq!(g, e, "n={n}");
            }
            for t in &ts.tiles {
                assert_eq!(t.cells.len() as u32, n);
                assert!(t.cells.is_ribbon_shaped(), "{} not ribbon", t.id);
                assert!(t.cells.is_connected());
            }
        }
    }

    #[test]
    fn basis_matches_published_k2_forms() {
        let [b1, b2, b3] = basis_polynomials(5).unwrap();
        assert_eq!(b1, p("y^3+y^2+y+x+1"));
        assert_eq!(b2, p("y^2+y+x^2+x+1"));
        assert_eq!(b3, p("x*y-1"));
    }

    #[test]
    fn basis_heads() {
        for n in [5u32, 7, 9, 25] {
            let k = (n - 1) / 2;
            let [b1, b2, b3] = basis_polynomials(n).unwrap();
            assert_eq!(b1.head_monomial().unwrap(), crate::poly::Monomial::new(0, k + 1));
            assert_eq!(b2.head_monomial().unwrap(), crate::poly::Monomial::new(k, 0));
            assert_eq!(b3.head_monomial().unwrap(), crate::poly::Monomial::new(1, 1));
        }
    }

    #[test]
    fn extended_set_has_square() {
        let ts = tileset_extended(5).unwrap();
        assert_eq!(ts.tiles.len(), 5);
        assert_eq!(*ts.generators.last().unwrap(), p("x*y+x+y+1"));
    }

    #[test]
    fn invalid_n_rejected() {
        assert!(tileset(4).is_err());
        assert!(tileset(3).is_err());
        assert!(basis_polynomials(6).is_err());
    }

    #[test]
    fn l_shapes_areas() {
        let l = l_shape(LShape::LNomino, 5, 1).unwrap();
        assert_eq!(l.len(), 5);
        assert_eq!(l, l_shape(LShape::InflatedL, 5, 1).unwrap());
        let infl = l_shape(LShape::InflatedL, 5, 2).unwrap();
        assert_eq!(infl.len(), 4 * 5);
        let infl3 = l_shape(LShape::InflatedL, 7, 3).unwrap();
        assert_eq!(infl3.len(), 9 * 7);
    }

    #[test]
    fn ascii_round_trip() {
        let r = Region::from_cells([Cell::new(0, 0), Cell::new(1, 0), Cell::new(0, 1)]);
        assert_eq!(r.to_ascii(), "#.\n##");
        assert_eq!(Region::from_ascii("#.\n##").unwrap(), r);
        let l = l_shape(LShape::InflatedL, 5, 2).unwrap();
        assert_eq!(Region::from_ascii(&l.to_ascii()).unwrap(), l);
        assert_eq!(Region::from_ascii("").unwrap(), Region::empty());
        assert!(matches!(
            Region::from_ascii("#?\n##"),
            Err(RegionError::BadChar { line: 1, col: 2, what: '?' })
        ));
    }

    #[test]
    fn json_round_trip() {
        let r = Region::from_cells([Cell::new(-3, 2), Cell::new(0, 0)]);
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(text, r#"{"cells":[[-3,2],[0,0]]}"#);
        let back: Region = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn tiling_json_shape() {
        let t = SignedTiling {
            placements: vec![Placement {
                tile: "G1".into(),
                dx: 0,
                dy: 0,
                weight: 1,
            }],
            tiles: BTreeMap::new(),
        };
        let text = serde_json::to_string(&t).unwrap();
        assert_eq!(
            text,
            r#"{"placements":[{"tile":"G1","dx":0,"dy":0,"w":1}]}"#
        );
        let back: SignedTiling = serde_json::from_str(&text).unwrap();
        assert_eq!(back, t);
    }
}
