//! Evaluation of region polynomials on the vanishing set of the tile
//! ideal, carried out exactly inside ℤ[t]/(1 + t + … + t^{n−1}).
//!
//! Eliminating x from the tile generators shows their common zeros are
//! the points (ε^{n−1}, ε) with ε ranging over the roots of
//! Q_n(t) = 1 + t + … + t^{n−1} (all n-th roots of unity except 1).
//! Substituting x ↦ t^{n−1}, y ↦ t and reducing modulo Q_n therefore
//! evaluates a polynomial at every such point simultaneously, with exact
//! integer arithmetic and no dependence on Q_n being irreducible: the
//! residue is zero exactly when the polynomial vanishes on the whole
//! variety, which for rational-coefficient combinations is equivalent to
//! signed tileability with rational weights.
//!
//! Inside the quotient t^n = 1 (since x^n − 1 = (x−1)·Q_n), so t is a
//! unit and translation of a region only multiplies its value by a unit
//! — vanishing is translation-invariant, as it must be.
//!
//! The companion checks certify the radicality witnesses: the univariate
//! polynomials 1+x+…+x^{2k} and 1+y+…+y^{2k} lie in the tile ideal via
//! one-line combinations, and a square-free factorization identity
//! underlies the variety computation.

use crate::poly::{Polynomial, Var};
use crate::tiles::{basis_polynomials, tileset, Region, TileError};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;

/// A residue in ℤ[t]/(1 + t + … + t^{n−1}), stored on the basis
/// 1, t, …, t^{n−2}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicElement {
    pub n: u32,
    /// coeffs[i] is the coefficient of t^i, 0 ≤ i ≤ n−2.
    pub coeffs: Vec<BigInt>,
}

impl CyclotomicElement {
    /// The zero residue.
    pub fn zero(n: u32) -> Self {
        CyclotomicElement {
            n,
            coeffs: vec![BigInt::zero(); (n - 1) as usize],
        }
    }

    /// The residue of c · t^e (exponent taken modulo n; t^{n−1} folds to
    /// −(1 + t + … + t^{n−2})).
    pub fn monomial(n: u32, e: i64, c: BigInt) -> Self {
        let mut z = Self::zero(n);
        z.add_monomial(e, &c);
        z
    }

    /// Adds c · t^e in place.
    pub fn add_monomial(&mut self, e: i64, c: &BigInt) {
        let e = e.rem_euclid(i64::from(self.n)) as usize;
        if e == (self.n - 1) as usize {
            for slot in self.coeffs.iter_mut() {
                *slot -= c;
            }
        } else {
            self.coeffs[e] += c;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(BigInt::is_zero)
    }

    pub fn add(&self, other: &CyclotomicElement) -> CyclotomicElement {
        assert_eq!(self.n, other.n, "mixed moduli");
        CyclotomicElement {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn neg(&self) -> CyclotomicElement {
        CyclotomicElement {
            n: self.n,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn sub(&self, other: &CyclotomicElement) -> CyclotomicElement {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &CyclotomicElement) -> CyclotomicElement {
        assert_eq!(self.n, other.n, "mixed moduli");
        let m = (self.n - 1) as usize;
        let mut out = CyclotomicElement::zero(self.n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out.add_monomial((i + j) as i64, &(a * b));
            }
        }
        debug_assert_eq!(out.coeffs.len(), m);
        out
    }
}

/// Substitutes x ↦ t^{n−1}, y ↦ t into a polynomial: the monomial
/// x^a y^b lands on t^{(n−1)a+b mod n}.
pub fn eval_poly_variety(p: &Polynomial, n: u32) -> CyclotomicElement {
    let mut acc = CyclotomicElement::zero(n);
    let nn = i64::from(n);
    for (m, c) in p.terms() {
        let e = ((nn - 1) * i64::from(m.x) + i64::from(m.y)).rem_euclid(nn);
        acc.add_monomial(e, c);
    }
    acc
}

/// Evaluates a region's cell sum at every variety point at once: the
/// cell (α, β) contributes t^{(n−1)α+β mod n}. Zero output is
/// equivalent to rational-weight signed tileability by the ribbon L
/// n-omino family.
pub fn eval_variety(r: &Region, n: u32) -> CyclotomicElement {
    let mut acc = CyclotomicElement::zero(n);
    let nn = i64::from(n);
    let one = BigInt::from(1);
    for c in r.iter() {
        let e = ((nn - 1) * c.x + c.y).rem_euclid(nn);
        acc.add_monomial(e, &one);
    }
    acc
}

/// Floating-point diagnostic: |f_R(ε^{n−1}, ε)| at each primitive-or-not
/// n-th root ε = e^{2πij/n}, j = 1..n−1. Never used for verdicts.
pub fn eval_variety_float(r: &Region, n: u32) -> Vec<f64> {
    let (poly, _) = r.to_poly();
    (1..n)
        .map(|j| {
            let theta = 2.0 * std::f64::consts::PI * f64::from(j) / f64::from(n);
            let eps = Complex64::new(theta.cos(), theta.sin());
            let x = eps.powu(n - 1);
            poly.eval_complex(x, eps).norm()
        })
        .collect()
}

/// Report of the variety/radicality certification for one n.
#[derive(Clone, Debug, Serialize)]
pub struct VarietyReport {
    pub n: u32,
    /// Each tile generator evaluates to zero in ℤ[t]/Q_n.
    pub generators_vanish: bool,
    /// xy − 1 evaluates to zero (t^{n−1} · t = 1).
    pub diagonal_vanishes: bool,
    /// y^{2k−1}(y−1)² − (y^{2k}−1)² = −(Σ_{i≤2k} y^i)(Σ_{i≤2k−2} y^i)(y−1)²
    /// as an exact polynomial identity.
    pub factorization_identity: bool,
    /// x·G₃ − B₃ expands to 1+x+…+x^{2k}.
    pub witness_x: bool,
    /// y·G₁ − B₃ expands to 1+y+…+y^{2k}.
    pub witness_y: bool,
    /// Largest float-diagnostic magnitude of a generator over the variety
    /// points (informational only).
    pub float_residual: f64,
}

impl VarietyReport {
    pub fn all_hold(&self) -> bool {
        self.generators_vanish
            && self.diagonal_vanishes
            && self.factorization_identity
            && self.witness_x
            && self.witness_y
    }
}

/// Runs the full certification for one n: generator vanishing, the
/// square-free factorization identity, and both radical witnesses.
pub fn variety_and_radical_checks(n: u32) -> Result<VarietyReport, TileError> {
    let ts = tileset(n)?;
    let [_, _, b3] = basis_polynomials(n)?;
    let k = ts.k;
    let generators_vanish = ts
        .generators
        .iter()
        .all(|g| eval_poly_variety(g, n).is_zero());
    let diagonal_vanishes = eval_poly_variety(&b3, n).is_zero();

    let y = Polynomial::monomial(0, 1);
    let x = Polynomial::monomial(1, 0);
    let y_minus_1_sq = {
        let d = &y - &Polynomial::one();
        &d * &d
    };
    let lhs = Polynomial::monomial(0, 2 * k - 1) * &y_minus_1_sq - {
        let d = Polynomial::monomial(0, 2 * k) - Polynomial::one();
        &d * &d
    };
    let rhs = -(Polynomial::geometric(Var::Y, 2 * k + 1)
        * Polynomial::geometric(Var::Y, 2 * k - 1)
        * &y_minus_1_sq);
    let factorization_identity = lhs == rhs;

    // G₃ and G₁ are generators[2] and [0] in library order.
    let witness_x = &x * &ts.generators[2] - &b3 == Polynomial::geometric(Var::X, 2 * k + 1);
    let witness_y = &y * &ts.generators[0] - &b3 == Polynomial::geometric(Var::Y, 2 * k + 1);

    let float_residual = ts
        .generators
        .iter()
        .flat_map(|g| {
            let region = Region::from_poly(g).expect("generators are 0/1 polynomials");
            eval_variety_float(&region, n)
        })
        .fold(0.0f64, f64::max);

    Ok(VarietyReport {
        n,
        generators_vanish,
        diagonal_vanishes,
        factorization_identity,
        witness_x,
        witness_y,
        float_residual,
    })
}
