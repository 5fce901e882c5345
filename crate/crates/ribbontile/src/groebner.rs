//! Gröbner-basis machinery over ℤ: D-reduction, E-reduction, critical
//! pairs, the Buchberger-style completeness test, and completion.
//!
//! Two reduction relations drive everything.  A **D-step** removes a whole
//! monomial `a·t` of `f` using `p` when both the head term and the head
//! coefficient of `p` divide it: `f → f − (a/HC(p))·(t/HT(p))·p`.  An
//! **E-step** only requires head-term divisibility and replaces the
//! coefficient by its unique remainder in `[0, |HC(p)|)`.  D-normal forms
//! witness ideal membership during completion; E-normal forms are the
//! canonical representatives once a basis has passed the completeness
//! test, and they are what the tiling decision procedure compares.
//!
//! A basis is complete when every S-polynomial D-reduces to zero and every
//! G-polynomial (the gcd combination of two heads) is top-D-reducible.
//! `complete` saturates a generating set under that test while tracking,
//! for every basis element, an exact expression as a combination of the
//! original generators — the decision procedure later converts those
//! expressions into weighted tile placements.

use crate::poly::{Monomial, Polynomial};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// A checkable trace of one reduction: `input = Σ quotients[i]·basis[i] +
/// normal_form`, exactly.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ReductionCertificate {
    /// The polynomial that was reduced.
    pub input: Polynomial,
    /// The basis used, in the order the reducer consulted it.
    pub basis: Vec<Polynomial>,
    /// Nonzero quotients, keyed by basis index.
    pub quotients: BTreeMap<usize, Polynomial>,
    /// The remainder left when no further step applies.
    pub normal_form: Polynomial,
}

impl ReductionCertificate {
    /// The quotient for basis index `i` (zero if absent).
    pub fn quotient(&self, i: usize) -> Polynomial {
        self.quotients.get(&i).cloned().unwrap_or_default()
    }
}

/// Checks the certificate identity `input = Σ quotients[i]·basis[i] +
/// normal_form` by exact expansion.
pub fn verify_certificate(c: &ReductionCertificate) -> bool {
    let mut acc = c.normal_form.clone();
    for (&i, q) in &c.quotients {
        match c.basis.get(i) {
            Some(b) => acc = acc + q * b,
            None => return false,
        }
    }
    acc == c.input
}

/// Which reduction relation a step uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum StepKind {
    /// Remove a whole monomial (head coefficient must divide).
    Whole,
    /// Replace a coefficient by its remainder in `[0, |HC|)`.
    Remainder,
}

/// Shared reduction engine.
///
/// Strategy, fixed for reproducibility: always act on the largest
/// reducible monomial, trying basis elements in their given order and
/// taking the first that applies.  After a step at monomial `m`, larger
/// monomials are untouched, so scanning resumes at `m`.
fn reduce(f: &Polynomial, basis: &[Polynomial], kind: StepKind) -> ReductionCertificate {
    let heads: Vec<(Monomial, BigInt)> = basis
        .iter()
        .map(|p| {
            let (t, c) = p
                .leading()
                .expect("reduction basis members must be nonzero");
            (*t, c.clone())
        })
        .collect();
    let find_step = |rem: &Polynomial, bound: Option<&Monomial>| -> Option<(usize, Monomial, BigInt)> {
        for (m, c) in rem.terms_at_most(bound) {
            for (i, (ht, hc)) in heads.iter().enumerate() {
                if !ht.divides(m) {
                    continue;
                }
                match kind {
                    StepKind::Whole => {
                        if (c % hc).is_zero() {
                            return Some((i, *m, c / hc));
                        }
                    }
                    StepKind::Remainder => {
                        let r = c.mod_floor(&hc.abs());
                        let q = (c - &r) / hc;
                        if !q.is_zero() {
                            return Some((i, *m, q));
                        }
                    }
                }
            }
        }
        None
    };
    let mut rem = f.clone();
    let mut quotients: Vec<Polynomial> = vec![Polynomial::zero(); basis.len()];
    // Inclusive upper bound on monomials that may still be reducible: a
    // step at m only alters monomials ≤ m, so everything above stays in
    // normal form once scanned past.
    let mut bound: Option<Monomial> = None;
    while let Some((i, m, q)) = find_step(&rem, bound.as_ref()) {
        let qm = m
            .checked_div(&heads[i].0)
            .expect("divisibility was just established");
        rem.add_scaled(&-&q, &qm, &basis[i]);
        quotients[i].add_term(q, qm);
        bound = Some(m);
    }
    ReductionCertificate {
        input: f.clone(),
        basis: basis.to_vec(),
        quotients: quotients
            .into_iter()
            .enumerate()
            .filter(|(_, q)| !q.is_zero())
            .collect(),
        normal_form: rem,
    }
}

/// D-reduces `f` modulo `basis` until no monomial can be removed whole.
///
/// The result's normal form has no monomial `a·t` with `HT(g) | t` and
/// `HC(g) | a` for any basis member `g`.
pub fn d_reduce(f: &Polynomial, basis: &[Polynomial]) -> ReductionCertificate {
    reduce(f, basis, StepKind::Whole)
}

/// E-reduces `f` modulo `basis`: coefficients of head-term-divisible
/// monomials are driven into `[0, |HC|)` by unique-remainder division.
///
/// Modulo a basis that passes [`is_groebner`], the normal form is a
/// canonical representative of `f`'s residue class, so `f` lies in the
/// ideal exactly when the normal form is zero.
pub fn e_reduce(f: &Polynomial, basis: &[Polynomial]) -> ReductionCertificate {
    reduce(f, basis, StepKind::Remainder)
}

/// The two combination polynomials attached to a pair of basis elements.
#[derive(Clone, Debug)]
pub struct CriticalPair {
    /// Indices of the pair within the basis (set by callers; `0,1` when
    /// built directly from two polynomials).
    pub i: usize,
    pub j: usize,
    /// `b₁s₁g₁ − b₂s₂g₂`: heads cancel at the lcm of the head monomials.
    pub s_poly: Polynomial,
    /// gcd combination `c₁s₁g₁ + c₂s₂g₂` whose head coefficient is
    /// `gcd(HC(g₁), HC(g₂))`; equal head coefficients short-circuit to
    /// `g₁` itself.
    pub g_poly: Polynomial,
    /// lcm of the two head monomials (pair-selection key).
    pub lcm: Monomial,
    /// Cofactor data for rebuilding the combinations: `s1`,`s2` are the
    /// monomial multipliers, `b1`,`b2` and `c1`,`c2` the coefficients.
    pub s1: Monomial,
    pub s2: Monomial,
    pub b1: BigInt,
    pub b2: BigInt,
    pub c1: BigInt,
    pub c2: BigInt,
    /// Whether `g_poly` is literally `g₁` (equal head coefficients).
    pub g_is_first: bool,
}

/// Least common multiple of two nonzero integers, normalized positive.
fn lcm_big(a: &BigInt, b: &BigInt) -> BigInt {
    (a / a.gcd(b) * b).abs()
}

/// Extended gcd `d = c₁a₁ + c₂a₂` with `d = gcd(a₁,a₂) ≥ 0` and `|c₁|`
/// minimal (ties broken toward positive `c₁`).
fn bezout_min_c1(a1: &BigInt, a2: &BigInt) -> (BigInt, BigInt, BigInt) {
    let eg = a1.extended_gcd(a2);
    let (mut d, mut c1) = (eg.gcd, eg.x);
    if d.is_negative() {
        d = -d;
        c1 = -c1;
    }
    // General solution: c₁ + k·(a₂/d). Pick the representative of
    // smallest absolute value, preferring the positive one on ties.
    let step = (a2 / &d).abs();
    if !step.is_zero() {
        c1 = c1.mod_floor(&step); // now 0 ≤ c₁ < step
        let alt = &c1 - &step; // the negative representative
        if alt.abs() < c1.abs() || (alt.abs() == c1.abs() && alt.is_positive()) {
            c1 = alt;
        }
    }
    let c2 = (&d - &c1 * a1) / a2;
    debug_assert_eq!(&c1 * a1 + &c2 * a2, d);
    (d, c1, c2)
}

/// Builds the S- and G-polynomials of `(g1, g2)`.
///
/// With `tᵢ = HT(gᵢ)`, `aᵢ = HC(gᵢ)`, `t = lcm(t₁,t₂) = sᵢtᵢ` and
/// `a = lcm(a₁,a₂) = bᵢaᵢ`: `S = b₁s₁g₁ − b₂s₂g₂` (heads cancel) and
/// `G = c₁s₁g₁ + c₂s₂g₂` where `gcd(a₁,a₂) = c₁a₁ + c₂a₂`.  When
/// `a₁ = a₂` the G-polynomial is taken to be `g₁` itself, whose head
/// already witnesses the gcd condition.
pub fn s_and_g_polynomials(g1: &Polynomial, g2: &Polynomial) -> CriticalPair {
    let (t1, a1) = g1.leading().expect("s/g of zero polynomial");
    let (t2, a2) = g2.leading().expect("s/g of zero polynomial");
    let t = t1.lcm(t2);
    let s1 = t.checked_div(t1).unwrap();
    let s2 = t.checked_div(t2).unwrap();
    let a = lcm_big(a1, a2);
    let b1 = &a / a1;
    let b2 = &a / a2;
    let mut s_poly = Polynomial::zero();
    s_poly.add_scaled(&b1, &s1, g1);
    s_poly.add_scaled(&-&b2, &s2, g2);
    let (g_poly, c1, c2, g_is_first) = if a1 == a2 {
        (g1.clone(), BigInt::one(), BigInt::zero(), true)
    } else {
        let (_d, c1, c2) = bezout_min_c1(a1, a2);
        let mut g = Polynomial::zero();
        g.add_scaled(&c1, &s1, g1);
        g.add_scaled(&c2, &s2, g2);
        (g, c1, c2, false)
    };
    CriticalPair {
        i: 0,
        j: 1,
        s_poly,
        g_poly,
        lcm: t,
        s1,
        s2,
        b1,
        b2,
        c1,
        c2,
        g_is_first,
    }
}

/// One failed pair in a completeness report.
#[derive(Clone, Debug, Serialize)]
pub struct PairFailure {
    pub i: usize,
    pub j: usize,
    /// `"s"` when the S-polynomial left a nonzero normal form, `"g"` when
    /// the G-polynomial's head is not top-reducible.
    pub kind: String,
    /// The offending normal form / G-polynomial.
    pub witness: Polynomial,
}

/// Report produced by [`is_groebner`].
#[derive(Clone, Debug, Serialize)]
pub struct GroebnerReport {
    pub is_groebner: bool,
    pub failures: Vec<PairFailure>,
}

/// Whether the head monomial of `f` can be removed whole by some basis
/// member (head term divides, head coefficient divides).
fn top_reducible(f: &Polynomial, basis: &[Polynomial]) -> bool {
    let Some((t, c)) = f.leading() else {
        return true; // zero has nothing to reduce
    };
    basis.iter().any(|g| {
        let (gt, gc) = g.leading().unwrap();
        gt.divides(t) && (c % gc).is_zero()
    })
}

/// Completeness test: every S-polynomial must D-reduce to zero and every
/// G-polynomial must be top-D-reducible modulo the basis.
pub fn is_groebner(basis: &[Polynomial]) -> GroebnerReport {
    let mut failures = Vec::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            let pair = s_and_g_polynomials(&basis[i], &basis[j]);
            let s_nf = d_reduce(&pair.s_poly, basis).normal_form;
            if !s_nf.is_zero() {
                failures.push(PairFailure {
                    i,
                    j,
                    kind: "s".into(),
                    witness: s_nf,
                });
            }
            if !top_reducible(&pair.g_poly, basis) {
                failures.push(PairFailure {
                    i,
                    j,
                    kind: "g".into(),
                    witness: pair.g_poly.clone(),
                });
            }
        }
    }
    GroebnerReport {
        is_groebner: failures.is_empty(),
        failures,
    }
}

/// Resource caps for [`complete`].
#[derive(Clone, Copy, Debug)]
pub struct CompletionLimits {
    /// Maximum number of critical pairs processed.
    pub max_pairs: usize,
    /// Maximum number of basis elements accumulated.
    pub max_basis: usize,
}

impl Default for CompletionLimits {
    fn default() -> Self {
        CompletionLimits {
            max_pairs: 200_000,
            max_basis: 4_000,
        }
    }
}

/// Why a completion run stopped early.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CompletionError {
    #[error("pair cap exhausted after {0} pairs; basis incomplete")]
    PairCapExceeded(usize),
    #[error("basis size cap {0} reached; basis incomplete")]
    BasisCapExceeded(usize),
    #[error("completion requires at least one nonzero generator")]
    NoGenerators,
    #[error("completed basis failed the completeness self-check")]
    SelfCheckFailed,
}

/// A saturated basis with exact provenance for every element.
#[derive(Clone, Debug)]
pub struct CompletedBasis {
    /// The generators completion started from.
    pub generators: Vec<Polynomial>,
    /// The completed basis (passes [`is_groebner`]).
    pub elements: Vec<Polynomial>,
    /// `elements[i] = Σ_j reps[i][j] · generators[j]`, exactly.
    pub reps: Vec<Vec<Polynomial>>,
    /// Number of critical pairs processed.
    pub pairs_processed: usize,
}

impl CompletedBasis {
    /// Re-expands every element from its stored combination and compares;
    /// any mismatch indicates internal corruption.
    pub fn verify_reps(&self) -> bool {
        self.elements.iter().zip(&self.reps).all(|(e, rep)| {
            let mut acc = Polynomial::zero();
            for (r, g) in rep.iter().zip(&self.generators) {
                acc = acc + r * g;
            }
            acc == *e
        })
    }
}

/// Saturates `generators` under the completeness test (Buchberger loop
/// over ℤ, normal pair-selection strategy: smallest head-lcm first, ties
/// by index).  Every added element is the D-normal form of an S- or
/// G-polynomial and carries an exact combination of the original
/// generators.  Zero generators are skipped; exact duplicates are kept
/// out of the working basis; no further minimization is performed.
pub fn complete(
    generators: &[Polynomial],
    limits: &CompletionLimits,
) -> Result<CompletedBasis, CompletionError> {
    let n_gens = generators.len();
    let mut elements: Vec<Polynomial> = Vec::new();
    let mut reps: Vec<Vec<Polynomial>> = Vec::new();
    let add = |elements: &mut Vec<Polynomial>,
                   reps: &mut Vec<Vec<Polynomial>>,
                   p: Polynomial,
                   rep: Vec<Polynomial>|
     -> Option<usize> {
        if p.is_zero() || elements.contains(&p) {
            return None;
        }
        elements.push(p);
        reps.push(rep);
        Some(elements.len() - 1)
    };
    for (j, g) in generators.iter().enumerate() {
        let mut rep = vec![Polynomial::zero(); n_gens];
        rep[j] = Polynomial::one();
        add(&mut elements, &mut reps, g.clone(), rep);
    }
    if elements.is_empty() {
        return Err(CompletionError::NoGenerators);
    }

    // Pair queue keyed by (lcm of heads, i, j): BTreeSet iteration order
    // is exactly the normal selection strategy.
    let mut queue: BTreeSet<(Monomial, usize, usize)> = BTreeSet::new();
    let enqueue_with = |queue: &mut BTreeSet<(Monomial, usize, usize)>,
                        elements: &[Polynomial],
                        i: usize,
                        j: usize| {
        let ti = elements[i].head_monomial().unwrap();
        let tj = elements[j].head_monomial().unwrap();
        queue.insert((ti.lcm(&tj), i, j));
    };
    for i in 0..elements.len() {
        for j in (i + 1)..elements.len() {
            enqueue_with(&mut queue, &elements, i, j);
        }
    }

    // Subtracting the quotient expansion from a combination's own rep
    // yields the rep of the reduction's normal form.
    let rep_of_reduction = |cert: &ReductionCertificate, combo_rep: Vec<Polynomial>, reps: &[Vec<Polynomial>]| {
        let mut rep = combo_rep;
        for (&l, q) in &cert.quotients {
            for (slot, r) in rep.iter_mut().zip(&reps[l]) {
                *slot = &*slot - &(q * r);
            }
        }
        rep
    };

    let mut pairs_processed = 0usize;
    while let Some(&(lcm, i, j)) = queue.iter().next() {
        queue.remove(&(lcm, i, j));
        if pairs_processed >= limits.max_pairs {
            return Err(CompletionError::PairCapExceeded(pairs_processed));
        }
        pairs_processed += 1;
        let pair = s_and_g_polynomials(&elements[i], &elements[j]);

        // Combination reps for s_poly and g_poly over the generators.
        let combine = |coef1: &BigInt,
                       m1: &Monomial,
                       coef2: &BigInt,
                       m2: &Monomial,
                       reps: &[Vec<Polynomial>]| {
            let mut rep = vec![Polynomial::zero(); n_gens];
            for ((slot, ri), rj) in rep.iter_mut().zip(&reps[i]).zip(&reps[j]) {
                let mut acc = Polynomial::zero();
                acc.add_scaled(coef1, m1, ri);
                acc.add_scaled(coef2, m2, rj);
                *slot = acc;
            }
            rep
        };

        let s_cert = d_reduce(&pair.s_poly, &elements);
        if !s_cert.normal_form.is_zero() {
            let combo_rep = combine(&pair.b1, &pair.s1, &-&pair.b2, &pair.s2, &reps);
            let rep = rep_of_reduction(&s_cert, combo_rep, &reps);
            if let Some(new) = add(&mut elements, &mut reps, s_cert.normal_form.clone(), rep) {
                if elements.len() > limits.max_basis {
                    return Err(CompletionError::BasisCapExceeded(limits.max_basis));
                }
                for l in 0..new {
                    enqueue_with(&mut queue, &elements, l, new);
                }
            }
        }

        if !pair.g_is_first {
            let g_cert = d_reduce(&pair.g_poly, &elements);
            if !g_cert.normal_form.is_zero() {
                let combo_rep = combine(&pair.c1, &pair.s1, &pair.c2, &pair.s2, &reps);
                let rep = rep_of_reduction(&g_cert, combo_rep, &reps);
                if let Some(new) = add(&mut elements, &mut reps, g_cert.normal_form.clone(), rep) {
                    if elements.len() > limits.max_basis {
                        return Err(CompletionError::BasisCapExceeded(limits.max_basis));
                    }
                    for l in 0..new {
                        enqueue_with(&mut queue, &elements, l, new);
                    }
                }
            }
        }
    }

    let basis = CompletedBasis {
        generators: generators.to_vec(),
        elements,
        reps,
        pairs_processed,
    };
    if !is_groebner(&basis.elements).is_groebner || !basis.verify_reps() {
        return Err(CompletionError::SelfCheckFailed);
    }
    Ok(basis)
}
