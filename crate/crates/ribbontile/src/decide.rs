//! Signed-tileability decisions.
//!
//! A region admits a signed tiling by a tile set exactly when some
//! diagonal shift (xy)^N of its polynomial lies in the ideal generated by
//! the tile polynomials (the shift family (xy)^N is cofinal among test
//! monomials, which is all the membership criterion requires). The
//! decision procedure therefore: completes the tile generators into a
//! verified basis once, E-reduces the shifted region polynomial, and
//! reads the verdict off the normal form.
//!
//! When xy−1 lies in the tile ideal — true for the ribbon L families,
//! where it is basis element B₃ — multiplication by xy fixes residues, so
//! the N = 0 reduction alone is conclusive in both directions and `No`
//! verdicts are final. For tile sets without that element the procedure
//! tries shifts up to a caller-supplied bound and can only answer
//! `NoUpToBound` negatively.
//!
//! Rectangles additionally get the one-variable remainder treatment: the
//! p×q rectangle collapses onto the staircase polynomial
//! P_{p,q}(x) = Σ_{i<p} (x^i + … + x^{p+q−2−i}), and signed tileability
//! is equivalent to Q(x) = 1+x+…+x^{n−1} dividing P_{p,q}, which holds
//! exactly when n divides p or q.

use crate::groebner::{
    complete, e_reduce, CompletedBasis, CompletionError, CompletionLimits, ReductionCertificate,
};
use crate::oracle::verify_signed;
use crate::poly::{Monomial, Polynomial, Var};
use crate::tiles::{l_shape, LShape, Placement, Region, SignedTiling, TileError, TileSet};
use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

/// Outcome of a tileability query.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// Signed tiling exists; a certificate is attached.
    Yes,
    /// No signed tiling exists (conclusive: xy−1 is in the tile ideal).
    No,
    /// No shift up to the bound vanished; inconclusive for tile sets
    /// whose ideal is not known to contain xy−1.
    NoUpToBound,
}

/// A decision with its evidence.
#[derive(Clone, Debug, Serialize)]
pub struct Decision {
    pub verdict: Verdict,
    /// Diagonal shift exponent N at which the reduction vanished (0 for
    /// negative verdicts).
    pub shift: u32,
    /// The reduction trace for (xy)^N · f_R over the completed basis.
    pub certificate: Option<ReductionCertificate>,
    /// Tile-level certificate (populated for Yes by
    /// [`Decider::tiling_from_certificate`] or `decide_with_tiling`).
    pub tiling: Option<SignedTiling>,
    /// Nonzero normal form witnessing a negative verdict.
    pub witness: Option<Polynomial>,
}

/// Errors from decision construction.
#[derive(Debug, Error)]
pub enum DecideError {
    #[error("basis completion failed: {0}")]
    Completion(#[from] CompletionError),
    #[error("tile library: {0}")]
    Tile(#[from] TileError),
    #[error("certificate weight does not fit in i64")]
    WeightOverflow,
    #[error("internal: constructed tiling failed verification")]
    UnsoundTiling,
}

/// A tile set together with its completed, verified basis. Building one
/// runs Buchberger completion once; decisions afterwards are single
/// reductions.
#[derive(Clone, Debug)]
pub struct Decider {
    pub tileset: TileSet,
    pub basis: CompletedBasis,
    /// Whether xy−1 E-reduces to zero modulo the basis, making N = 0
    /// conclusive and `No` verdicts final.
    pub has_diagonal_unit: bool,
}

impl Decider {
    /// Completes the tile set's generators and checks for xy−1.
    pub fn new(tileset: TileSet) -> Result<Decider, DecideError> {
        Self::with_limits(tileset, &CompletionLimits::default())
    }

    pub fn with_limits(
        tileset: TileSet,
        limits: &CompletionLimits,
    ) -> Result<Decider, DecideError> {
        let basis = complete(&tileset.generators, limits)?;
        let diag = Polynomial::monomial(1, 1) - Polynomial::one();
        let has_diagonal_unit = e_reduce(&diag, &basis.elements).normal_form.is_zero();
        Ok(Decider {
            tileset,
            basis,
            has_diagonal_unit,
        })
    }

    /// Decides signed tileability of `region`, trying diagonal shifts
    /// N = 0..=max_shift (just N = 0 when xy−1 is in the ideal).
    pub fn decide(&self, region: &Region, max_shift: u32) -> Decision {
        let (f, _) = region.to_poly();
        if f.is_zero() {
            return Decision {
                verdict: Verdict::Yes,
                shift: 0,
                certificate: Some(e_reduce(&f, &self.basis.elements)),
                tiling: Some(SignedTiling::default()),
                witness: None,
            };
        }
        let top = if self.has_diagonal_unit { 0 } else { max_shift };
        let mut first_witness = None;
        for n_shift in 0..=top {
            let shifted = shift_poly(&f, n_shift);
            let cert = e_reduce(&shifted, &self.basis.elements);
            if cert.normal_form.is_zero() {
                return Decision {
                    verdict: Verdict::Yes,
                    shift: n_shift,
                    certificate: Some(cert),
                    tiling: None,
                    witness: None,
                };
            }
            if first_witness.is_none() {
                first_witness = Some(cert);
            }
        }
        let cert = first_witness.unwrap();
        Decision {
            verdict: if self.has_diagonal_unit {
                Verdict::No
            } else {
                Verdict::NoUpToBound
            },
            shift: 0,
            witness: Some(cert.normal_form.clone()),
            certificate: Some(cert),
            tiling: None,
        }
    }

    /// Decides and, on Yes, attaches the tile-level certificate.
    pub fn decide_with_tiling(
        &self,
        region: &Region,
        max_shift: u32,
    ) -> Result<Decision, DecideError> {
        let mut d = self.decide(region, max_shift);
        if d.verdict == Verdict::Yes && d.tiling.is_none() {
            let cert = d.certificate.as_ref().unwrap();
            d.tiling = Some(self.tiling_from_certificate(cert, region, d.shift)?);
        }
        Ok(d)
    }

    /// Converts a vanishing reduction of (xy)^N · f_R into weighted tile
    /// placements.
    ///
    /// The certificate gives (xy)^N·f = Σ_h q_h·basis[h]; each basis
    /// element carries an exact combination basis[h] = Σ_j rep_{h,j}·G_j
    /// over the original generators, so the weight polynomial of tile j
    /// is W_j = Σ_h q_h·rep_{h,j}. Every term c·x^a y^b of W_j becomes a
    /// placement of tile j at (a−N+tx, b−N+ty) with weight c, where
    /// (tx, ty) undoes the region's normalizing translation. The result
    /// is verified cell-by-cell before being returned.
    pub fn tiling_from_certificate(
        &self,
        cert: &ReductionCertificate,
        region: &Region,
        shift: u32,
    ) -> Result<SignedTiling, DecideError> {
        let (_, (tx, ty)) = region.to_poly();
        let n_gens = self.tileset.generators.len();
        let mut weight_polys = vec![Polynomial::zero(); n_gens];
        for (&h, q) in &cert.quotients {
            for (wp, rep) in weight_polys.iter_mut().zip(&self.basis.reps[h]) {
                *wp = &*wp + &(q * rep);
            }
        }
        let mut placements = Vec::new();
        for (j, wp) in weight_polys.iter().enumerate() {
            let id = self.tileset.tiles[j].id.clone();
            for (m, c) in wp.terms() {
                let weight = c.to_i64().ok_or(DecideError::WeightOverflow)?;
                placements.push(Placement {
                    tile: id.clone(),
                    dx: i64::from(m.x) - i64::from(shift) + tx,
                    dy: i64::from(m.y) - i64::from(shift) + ty,
                    weight,
                });
            }
        }
        let tiling = SignedTiling {
            placements,
            tiles: Default::default(),
        };
        if !verify_signed(&tiling, region, Some(&self.tileset)) {
            return Err(DecideError::UnsoundTiling);
        }
        Ok(tiling)
    }
}

/// Multiplies by (xy)^n.
fn shift_poly(f: &Polynomial, n: u32) -> Polynomial {
    if n == 0 {
        return f.clone();
    }
    let mut g = f.clone();
    g.scale_term(&num_bigint::BigInt::from(1), &Monomial::new(n, n));
    g
}

/// One-shot convenience: completes the tile set and decides. Callers
/// sweeping many regions should build a [`Decider`] once instead.
pub fn signed_tileable(
    region: &Region,
    tileset: &TileSet,
    max_shift: u32,
) -> Result<Decision, DecideError> {
    Decider::new(tileset.clone())?.decide_with_tiling(region, max_shift)
}

/// Decision for the k-inflated L n-omino. The verdict is expected to be
/// Yes for every valid (n, k); the certificate is computed, not assumed.
pub fn inflated_l_decision(decider: &Decider, k: u32) -> Result<Decision, DecideError> {
    let region = l_shape(LShape::InflatedL, decider.tileset.n, k)?;
    decider.decide_with_tiling(&region, 0)
}

/// Remainder analysis of a p×q rectangle against Q(x) = 1+x+…+x^{n−1},
/// via the staircase polynomial obtained by collapsing the rectangle
/// along its NE diagonals.
#[derive(Clone, Debug, Serialize)]
pub struct RemainderAnalysis {
    /// Sides with q ≥ p (swapped if the input came the other way).
    pub p: u32,
    pub q: u32,
    pub swapped: bool,
    pub n: u32,
    /// p+q−1 = n·m + r with 0 ≤ r < n.
    pub m: u32,
    pub r: u32,
    /// p = n·s + t with 0 ≤ t < n.
    pub s: u32,
    pub t: u32,
    /// The staircase polynomial Σ_{i<p} (x^i + … + x^{p+q−2−i}).
    pub ppq: Polynomial,
    /// The divisor 1+x+…+x^{n−1}.
    pub q_poly: Polynomial,
    pub quotient: Polynomial,
    pub remainder: Polynomial,
    pub divisible: bool,
}

/// Builds P_{p,q} as the sum of p nested all-ones rows and divides by
/// Q(x); divisibility of the staircase is equivalent to signed
/// tileability of the rectangle.
pub fn rect_remainder(p: u32, q: u32, n: u32) -> RemainderAnalysis {
    assert!(p >= 1 && q >= 1, "rectangle sides must be positive");
    assert!(n >= 5 && n % 2 == 1, "modulus must be odd ≥ 5");
    let swapped = q < p;
    let (p, q) = if swapped { (q, p) } else { (p, q) };
    let mut ppq = Polynomial::zero();
    for i in 0..p {
        // x^i + x^{i+1} + … + x^{p+q−2−i}
        let len = p + q - 1 - 2 * i;
        let mut row = Polynomial::geometric(Var::X, len);
        row.scale_term(&num_bigint::BigInt::from(1), &Monomial::new(i, 0));
        ppq = ppq + row;
    }
    let q_poly = Polynomial::geometric(Var::X, n);
    // Q is monic, so D-reduction by {Q} is exact long division in ℤ[x].
    let cert = crate::groebner::d_reduce(&ppq, std::slice::from_ref(&q_poly));
    let remainder = cert.normal_form.clone();
    let quotient = cert.quotient(0);
    let divisible = remainder.is_zero();
    RemainderAnalysis {
        p,
        q,
        swapped,
        n,
        m: (p + q - 1) / n,
        r: (p + q - 1) % n,
        s: p / n,
        t: p % n,
        ppq,
        q_poly,
        quotient,
        remainder,
        divisible,
    }
}

/// The closed-form rectangle criterion: a p×q rectangle is signed-tileable
/// by the ribbon L n-ominoes exactly when n divides p or q.
pub fn rect_divisibility(p: u32, q: u32, n: u32) -> bool {
    p % n == 0 || q % n == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::verify_certificate;
    use crate::tiles::tileset;

    fn decider5() -> Decider {
        Decider::new(tileset(5).unwrap()).unwrap()
    }

    #[test]
    fn bar_and_small_rectangles() {
        let d = decider5();
        assert!(d.has_diagonal_unit);
        let yes = d.decide(&Region::rectangle(5, 1), 0);
        assert_eq!(yes.verdict, Verdict::Yes);
        assert!(verify_certificate(yes.certificate.as_ref().unwrap()));
        let no = d.decide(&Region::rectangle(4, 3), 0);
        assert_eq!(no.verdict, Verdict::No);
        assert!(!no.witness.as_ref().unwrap().is_zero());
    }

    #[test]
    fn empty_region_trivially_yes() {
        let d = decider5();
        let dec = d.decide(&Region::empty(), 0);
        assert_eq!(dec.verdict, Verdict::Yes);
        assert!(dec.tiling.unwrap().is_empty());
    }

    #[test]
    fn yes_verdict_converts_to_verified_tiling() {
        let d = decider5();
        let dec = d.decide_with_tiling(&Region::rectangle(5, 2), 0).unwrap();
        assert_eq!(dec.verdict, Verdict::Yes);
        let tiling = dec.tiling.unwrap();
        assert!(!tiling.is_empty());
        assert!(verify_signed(
            &tiling,
            &Region::rectangle(5, 2),
            Some(&d.tileset)
        ));
    }

    #[test]
    fn translated_region_same_verdict_and_valid_tiling() {
        let d = decider5();
        let region = Region::rectangle(5, 3).translate(-7, 11);
        let dec = d.decide_with_tiling(&region, 0).unwrap();
        assert_eq!(dec.verdict, Verdict::Yes);
        assert!(verify_signed(&dec.tiling.unwrap(), &region, Some(&d.tileset)));
    }

    #[test]
    fn residue_unchanged_by_diagonal_shift() {
        let d = decider5();
        let (f, _) = Region::rectangle(3, 3).to_poly();
        let nf0 = e_reduce(&f, &d.basis.elements).normal_form;
        let nf1 = e_reduce(&shift_poly(&f, 1), &d.basis.elements).normal_form;
        let nf2 = e_reduce(&shift_poly(&f, 2), &d.basis.elements).normal_form;
        assert_eq!(nf0, nf1);
        assert_eq!(nf1, nf2);
        assert!(!nf0.is_zero());
    }

    #[test]
    fn inflated_l_all_yes() {
        let d = decider5();
        for k in 1..=3 {
            let dec = inflated_l_decision(&d, k).unwrap();
            assert_eq!(dec.verdict, Verdict::Yes, "k={k}");
            let region = l_shape(LShape::InflatedL, 5, k).unwrap();
            assert!(verify_signed(&dec.tiling.unwrap(), &region, Some(&d.tileset)));
        }
    }

    #[test]
    fn staircase_profile_and_product_form() {
        // P_{p,q} = ((x^p−1)/(x−1))·((x^q−1)/(x−1)); leading profile 1,2,3…
        for (p, q) in [(1u32, 1u32), (2, 3), (3, 4), (5, 5), (4, 9)] {
            let a = rect_remainder(p, q, 5).ppq;
            let b = Polynomial::geometric(Var::X, p.min(q)) * Polynomial::geometric(Var::X, p.max(q));
            assert_eq!(a, b, "p={p} q={q}");
        }
        let ppq = rect_remainder(3, 4, 5).ppq;
        assert_eq!(ppq.to_string(), "x^5+2*x^4+3*x^3+3*x^2+2*x+1");
    }

    #[test]
    fn remainder_verdicts() {
        let a = rect_remainder(5, 5, 5);
        assert!(a.divisible);
        assert!(a.remainder.is_zero());
        let b = rect_remainder(1, 1, 5);
        assert!(!b.divisible);
        assert_eq!(b.remainder, Polynomial::one());
        let c = rect_remainder(3, 4, 5);
        assert!(!c.divisible);
        // Division identity: P = quotient·Q + remainder.
        let back = &c.quotient * &c.q_poly + &c.remainder;
        assert_eq!(back, c.ppq);
        assert!(c.remainder.degree().unwrap_or(0) < 4);
    }

    #[test]
    fn remainder_parameters() {
        let a = rect_remainder(12, 4, 5); // swaps to p=4, q=12
        assert!(a.swapped);
        assert_eq!((a.p, a.q), (4, 12));
        assert_eq!((a.m, a.r), (3, 0)); // p+q−1 = 15 = 3·5
        assert_eq!((a.s, a.t), (0, 4));
    }

    #[test]
    fn grid_agreement_small() {
        let d = decider5();
        for p in 1..=10u32 {
            for q in 1..=10u32 {
                let gro = d.decide(&Region::rectangle(q, p), 0).verdict == Verdict::Yes;
                let rem = rect_remainder(p, q, 5).divisible;
                let div = rect_divisibility(p, q, 5);
                assert_eq!(gro, div, "groebner vs closed form at {p}x{q}");
                assert_eq!(rem, div, "remainder vs closed form at {p}x{q}");
            }
        }
    }
}
