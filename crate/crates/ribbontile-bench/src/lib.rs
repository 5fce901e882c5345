//! Shared fixtures for the pipeline benchmarks.

use ribbontile::poly::Polynomial;
use ribbontile::tiles::Region;

/// The polynomial of a p×q rectangle anchored at the origin.
pub fn rect_poly(p: u32, q: u32) -> Polynomial {
    Region::rectangle(q, p).to_poly().0
}
