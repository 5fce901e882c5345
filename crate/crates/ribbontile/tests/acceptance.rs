//! The twelve-point acceptance gate.
//!
//! A single sequential test walks all criteria in order and prints one
//! `[PASS]` line each (visible with
//! `cargo test --test acceptance -- --nocapture`). Stated runtime
//! budgets are asserted, not just reported.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ribbontile::barnes::{eval_variety, variety_and_radical_checks};
use ribbontile::constructions::{brick_tilings, odd_even_rectangle, rect_3n_3n1};
use ribbontile::decide::{inflated_l_decision, rect_remainder, Decider, Verdict};
use ribbontile::groebner::{
    complete, e_reduce, is_groebner, s_and_g_polynomials, verify_certificate, CompletionLimits,
};
use ribbontile::invariants::{
    encode_ribbon, f1, leftover_region, leftover_tiling, replication_verdict, tiling_f1_sum,
    Conclusion, ReplicationCase,
};
use ribbontile::oracle::{signed_search, verify_signed};
use ribbontile::poly::{Monomial, Polynomial, Var};
use ribbontile::tiles::{basis_polynomials, tileset, tileset_extended, Cell, Region};
use std::time::{Duration, Instant};

fn geom(v: Var, len: u32) -> Polynomial {
    Polynomial::geometric(v, len)
}

fn xp(a: u32) -> Polynomial {
    Polynomial::monomial(a, 0)
}

fn yp(b: u32) -> Polynomial {
    Polynomial::monomial(0, b)
}

fn pass(idx: u32, what: &str, t0: Instant) {
    println!("[PASS] criterion {idx:2}: {what} ({:.2?})", t0.elapsed());
}

/// 1. The three-element basis passes the completeness test for
/// k = 2..12 and its S-polynomial reduction identities hold symbolically.
fn criterion_1() {
    let t0 = Instant::now();
    for k in 2u32..=12 {
        let n = 2 * k + 1;
        let [b1, b2, b3] = basis_polynomials(n).unwrap();
        let report = is_groebner(&[b1.clone(), b2.clone(), b3.clone()]);
        assert!(report.is_groebner, "k={k}: {:?}", report.failures);

        // S(B₁,B₂) = x^k·B₁ − y^{k+1}·B₂
        //          = −y^k·B₁ + x^{k−1}·B₂
        //            + (x^{k−1}(1+…+y^{k−1}) − y^k(1+…+x^{k−2}))·B₃.
        let s12 = s_and_g_polynomials(&b1, &b2).s_poly;
        assert_eq!(s12, xp(k) * &b1 - yp(k + 1) * &b2, "k={k}");
        let cof = xp(k - 1) * geom(Var::Y, k) - yp(k) * geom(Var::X, k - 1);
        assert_eq!(s12, -(yp(k) * &b1) + xp(k - 1) * &b2 + cof * &b3, "k={k}");

        // S(B₁,B₃) = x·B₁ − y^k·B₃ = B₂ + (1+…+y^{k−1})·B₃.
        let s13 = s_and_g_polynomials(&b1, &b3).s_poly;
        assert_eq!(s13, xp(1) * &b1 - yp(k) * &b3, "k={k}");
        assert_eq!(s13, &b2 + &(geom(Var::Y, k) * &b3), "k={k}");

        // S(B₂,B₃) = y·B₂ − x^{k−1}·B₃ = B₁ + (1+…+x^{k−2})·B₃.
        let s23 = s_and_g_polynomials(&b2, &b3).s_poly;
        assert_eq!(s23, yp(1) * &b2 - xp(k - 1) * &b3, "k={k}");
        assert_eq!(s23, &b1 + &(geom(Var::X, k - 1) * &b3), "k={k}");
    }
    assert!(t0.elapsed() < Duration::from_secs(5), "budget exceeded");
    pass(1, "three-element basis complete + reduction identities, k=2..12", t0);
}

/// 2. The tile generators and the three-element basis generate the same
/// ideal, k = 2..12; the explicit combination producing xy−1 expands
/// exactly.
fn criterion_2() {
    let t0 = Instant::now();
    let limits = CompletionLimits::default();
    for k in 2u32..=12 {
        let n = 2 * k + 1;
        let ts = tileset(n).unwrap();
        let basis: Vec<Polynomial> = basis_polynomials(n).unwrap().to_vec();
        for g in &ts.generators {
            assert!(
                e_reduce(g, &basis).normal_form.is_zero(),
                "k={k}: generator not in basis ideal"
            );
        }

        // xy−1 = −G₁ + G₂ + (−xy·γ₁ + y·γ₂)·G₃ + xy·γ₂·G₄ with
        // γ₁ = 1+y+…+y^{2k−3} and γ₂ = 1+y²+…+y^{2(k−2)}.
        let gamma1 = geom(Var::Y, 2 * k - 2);
        let mut gamma2 = Polynomial::zero();
        for i in 0..=(k - 2) {
            gamma2 = gamma2 + yp(2 * i);
        }
        let xy = Polynomial::monomial(1, 1);
        let combo = -&ts.generators[0]
            + &ts.generators[1]
            + (-(&xy * &gamma1) + yp(1) * &gamma2) * &ts.generators[2]
            + &xy * &gamma2 * &ts.generators[3];
        assert_eq!(combo, &xy - &Polynomial::one(), "k={k}: combination");

        let completed = complete(&ts.generators, &limits).unwrap();
        for e in &completed.elements {
            assert!(
                e_reduce(e, &basis).normal_form.is_zero(),
                "k={k}: completed element escapes basis ideal"
            );
        }
        for b in &basis {
            assert!(
                e_reduce(b, &completed.elements).normal_form.is_zero(),
                "k={k}: basis element escapes generator ideal"
            );
        }
    }
    assert!(t0.elapsed() < Duration::from_secs(30), "budget exceeded");
    pass(2, "generators and basis generate the same ideal, k=2..12", t0);
}

struct RectangleSweep {
    deciders: Vec<(u32, Decider)>,
    /// (n, p, q) triples the algebra answered Yes.
    yes_cases: Vec<(u32, u32, u32)>,
}

/// 3. For n ∈ {5,7,9} and every rectangle with 1 ≤ p,q ≤ 3n, the ideal
/// decision equals (n|p or n|q) and the univariate staircase remainder
/// reaches the identical verdict.
fn criterion_3() -> RectangleSweep {
    let t0 = Instant::now();
    let mut deciders = Vec::new();
    let mut yes_cases = Vec::new();
    for n in [5u32, 7, 9] {
        let decider = Decider::new(tileset(n).unwrap()).unwrap();
        assert!(decider.has_diagonal_unit, "xy−1 must lie in the ideal");
        for p in 1..=3 * n {
            for q in 1..=3 * n {
                let region = Region::rectangle(q, p);
                let verdict = decider.decide(&region, 0).verdict;
                let expected = p % n == 0 || q % n == 0;
                assert_eq!(
                    verdict == Verdict::Yes,
                    expected,
                    "n={n} p={p} q={q}: ideal verdict"
                );
                assert_ne!(verdict, Verdict::NoUpToBound, "verdicts must be final");
                let remainder = rect_remainder(p, q, n);
                assert_eq!(
                    remainder.divisible, expected,
                    "n={n} p={p} q={q}: staircase remainder verdict"
                );
                if expected {
                    yes_cases.push((n, p, q));
                }
            }
        }
        deciders.push((n, decider));
    }
    assert!(t0.elapsed() < Duration::from_secs(120), "budget exceeded");
    pass(3, "rectangle grid: ideal and staircase verdicts match divisibility", t0);
    RectangleSweep { deciders, yes_cases }
}

/// 4. Every Yes from criterion 3 converts to a signed tiling whose
/// per-cell sums are exactly 1 inside and 0 outside.
fn criterion_4(sweep: &RectangleSweep) {
    let t0 = Instant::now();
    let mut built = 0usize;
    for &(n, p, q) in &sweep.yes_cases {
        let decider = &sweep.deciders.iter().find(|(m, _)| *m == n).unwrap().1;
        let region = Region::rectangle(q, p);
        let decision = decider.decide_with_tiling(&region, 0).unwrap();
        let tiling = decision.tiling.expect("Yes must carry a tiling");
        assert!(
            verify_signed(&tiling, &region, Some(&decider.tileset)),
            "n={n} p={p} q={q}"
        );
        built += 1;
    }
    assert_eq!(built, sweep.yes_cases.len());
    pass(4, "every Yes rectangle yields a verified signed tiling", t0);
}

/// 5. The Hermite-normal-form oracle agrees with the ideal verdicts on
/// the n=5, p,q ≤ 8 grid for margins 0..=3.
fn criterion_5(sweep: &RectangleSweep) {
    let t0 = Instant::now();
    let ts = tileset(5).unwrap();
    let decider = &sweep.deciders.iter().find(|(m, _)| *m == 5).unwrap().1;
    for p in 1u32..=8 {
        for q in 1..=8 {
            let region = Region::rectangle(q, p);
            let yes = decider.decide(&region, 0).verdict == Verdict::Yes;
            let mut found_at = None;
            for margin in 0u32..=3 {
                match signed_search(&region, &ts, margin).unwrap() {
                    Some(t) => {
                        assert!(verify_signed(&t, &region, Some(&ts)), "p={p} q={q}");
                        found_at = Some(margin);
                        break;
                    }
                    None => continue,
                }
            }
            if yes {
                assert!(
                    found_at.is_some(),
                    "p={p} q={q}: integer-linear oracle missed a provable tiling"
                );
            } else {
                assert!(
                    found_at.is_none(),
                    "p={p} q={q}: oracle claims a tiling the ideal refutes"
                );
            }
        }
    }
    assert!(t0.elapsed() < Duration::from_secs(120), "budget exceeded");
    pass(5, "integer-linear oracle concordance on the 8×8 grid, margins ≤ 3", t0);
}

/// 6. Inflated-L regions are signed-tileable with verified certificates
/// for (n,k) ∈ {5,7}×{1,2,3,4}.
fn criterion_6(sweep: &RectangleSweep) {
    let t0 = Instant::now();
    for n in [5u32, 7] {
        let decider = &sweep.deciders.iter().find(|(m, _)| *m == n).unwrap().1;
        for k in 1u32..=4 {
            let d = inflated_l_decision(decider, k).unwrap();
            assert_eq!(d.verdict, Verdict::Yes, "n={n} k={k}");
            assert!(d.tiling.is_some(), "n={n} k={k}: certificate missing");
        }
    }
    pass(6, "inflated-L regions all signed-tileable, (n,k) ∈ {5,7}×{1..4}", t0);
}

/// 7. Ribbon walk encodings: the four n=5 tiles give exactly
/// {0111, 0001, 1110, 1000}; every family tile up to n=25 has f₁ = ±1;
/// bars have f₁ = 0.
fn criterion_7() {
    let t0 = Instant::now();
    let ts = tileset(5).unwrap();
    let mut encodings: Vec<String> = ts
        .tiles
        .iter()
        .map(|t| encode_ribbon(&t.cells).unwrap().to_string())
        .collect();
    encodings.sort();
    assert_eq!(encodings, ["0001", "0111", "1000", "1110"]);

    let mut n = 5;
    while n <= 25 {
        let ts = tileset(n).unwrap();
        for t in &ts.tiles {
            let e = encode_ribbon(&t.cells).unwrap();
            assert_eq!(f1(&e).abs(), 1, "n={n} tile={}", t.id);
        }
        let h = encode_ribbon(&Region::rectangle(n, 1)).unwrap();
        let v = encode_ribbon(&Region::rectangle(1, n)).unwrap();
        assert_eq!(f1(&h), 0, "horizontal bar n={n}");
        assert_eq!(f1(&v), 0, "vertical bar n={n}");
        n += 2;
    }
    pass(7, "walk encodings and f₁ values match across the family", t0);
}

/// 8. Replication obstruction: both parity regimes come out impossible
/// with the expected evidence.
fn criterion_8() {
    let t0 = Instant::now();
    for (n, k) in [(5u32, 5u32), (5, 15)] {
        let v = replication_verdict(n, k).unwrap();
        assert_eq!(v.case, ReplicationCase::OddDivisibleByN, "n={n} k={k}");
        assert_eq!(v.conclusion, Conclusion::Impossible, "n={n} k={k}");
        assert_eq!(v.region_f1, Some(0), "n={n} k={k}");
        assert_eq!(v.tiles_needed % 2, 1, "n={n} k={k}: k² must be odd");
    }
    for (n, k) in [(5u32, 2u32), (5, 4), (7, 4)] {
        let v = replication_verdict(n, k).unwrap();
        assert_eq!(v.case, ReplicationCase::EvenNotDivisibleByN, "n={n} k={k}");
        assert_eq!(v.conclusion, Conclusion::Impossible, "n={n} k={k}");
        let r = k % n;
        let region = leftover_region(n, r).unwrap();
        let tiling = leftover_tiling(n, r).unwrap();
        assert_eq!(tiling.placements.len() as u32, r, "n={n} k={k}: tile count");
        assert!(tiling.placements.iter().all(|p| p.weight == 1));
        assert!(verify_signed(&tiling, &region, None), "n={n} k={k}");
        let expected_sum = if 2 * r < n { 1 } else { -1 };
        assert_eq!(
            tiling_f1_sum(&tiling, None).unwrap(),
            expected_sum,
            "n={n} k={k}: leftover invariant"
        );
        assert_eq!(v.region_f1, Some(expected_sum), "n={n} k={k}");
    }
    pass(8, "replication impossibility in both parity regimes", t0);
}

/// 9. Adding the 2×2 square makes the ideal contain 1: completion of the
/// extended generators reaches a unit, so the single cell reduces to 0.
fn criterion_9() {
    let t0 = Instant::now();
    for n in [5u32, 7, 9, 11, 13] {
        let ts = tileset_extended(n).unwrap();
        let completed = complete(&ts.generators, &CompletionLimits::default()).unwrap();
        assert!(
            completed.elements.contains(&Polynomial::one()),
            "n={n}: completion lacks the constant 1"
        );
        let cell = Polynomial::one();
        assert!(
            e_reduce(&cell, &completed.elements).normal_form.is_zero(),
            "n={n}: single cell does not reduce to 0"
        );
    }
    assert!(t0.elapsed() < Duration::from_secs(60), "budget exceeded");
    pass(9, "square-extended ideal contains 1 for n ∈ {5,7,9,11,13}", t0);
}

/// 10. Cyclotomic evaluation: rectangles vanish exactly per
/// divisibility on the criterion-3 grid; generators vanish; the radical
/// witnesses expand correctly for k = 2..12.
fn criterion_10() {
    let t0 = Instant::now();
    for n in [5u32, 7, 9] {
        for p in 1..=3 * n {
            for q in 1..=3 * n {
                let region = Region::rectangle(q, p);
                let zero = eval_variety(&region, n).is_zero();
                assert_eq!(zero, p % n == 0 || q % n == 0, "n={n} p={p} q={q}");
            }
        }
    }
    for k in 2u32..=12 {
        let n = 2 * k + 1;
        let report = variety_and_radical_checks(n).unwrap();
        assert!(report.generators_vanish, "n={n}");
        assert!(report.diagonal_vanishes, "n={n}");
        assert!(report.factorization_identity, "n={n}");
        assert!(report.witness_x, "n={n}");
        assert!(report.witness_y, "n={n}");
    }
    pass(10, "cyclotomic evaluation and radical witnesses", t0);
}

/// 11. Explicit constructions: bricks, the 3n×(3n+1) block for
/// n ∈ {5,7,9}, and the odd×even rectangles all verify; the n=5 corner
/// block uses exactly 48 tiles.
fn criterion_11() {
    let t0 = Instant::now();
    let ts5 = tileset(5).unwrap();
    let checks: Vec<(Region, ribbontile::tiles::SignedTiling)> = vec![
        (Region::rectangle(5, 2), brick_tilings(2, 5, 5).unwrap()),
        (Region::rectangle(10, 4), brick_tilings(4, 10, 5).unwrap()),
        (Region::rectangle(2, 5), brick_tilings(5, 2, 5).unwrap()),
        (Region::rectangle(16, 15), rect_3n_3n1(5).unwrap()),
        (Region::rectangle(20, 15), odd_even_rectangle(15, 20, 5).unwrap()),
        (Region::rectangle(20, 17), odd_even_rectangle(17, 20, 5).unwrap()),
    ];
    for (region, tiling) in &checks {
        assert!(tiling.placements.iter().all(|p| p.weight == 1));
        assert!(verify_signed(tiling, region, Some(&ts5)));
    }
    assert_eq!(rect_3n_3n1(5).unwrap().placements.len(), 48);
    for n in [7u32, 9] {
        let ts = tileset(n).unwrap();
        let t = rect_3n_3n1(n).unwrap();
        assert_eq!(t.placements.len() as u32, 3 * (3 * n + 1), "n={n}");
        assert!(verify_signed(
            &t,
            &Region::rectangle(3 * n + 1, 3 * n),
            Some(&ts)
        ));
    }
    pass(11, "explicit brick/corner/odd-even tilings all verify", t0);
}

/// 12. Randomized laws: certificate replay on 200 random reductions,
/// total-order laws on 10⁵ monomial pairs, region I/O round-trips.
fn criterion_12() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_cafe);

    let random_poly = |rng: &mut ChaCha8Rng, terms: usize, span: u32| {
        let mut p = Polynomial::zero();
        for _ in 0..terms {
            let c = rng.gen_range(-9i64..=9);
            let m = Polynomial::constant(BigInt::from(c))
                * Polynomial::monomial(rng.gen_range(0..span), rng.gen_range(0..span));
            p = p + m;
        }
        p
    };

    // Certificate replay on 200 random reductions against mixed bases.
    let mut bases: Vec<Vec<Polynomial>> = vec![
        basis_polynomials(5).unwrap().to_vec(),
        basis_polynomials(9).unwrap().to_vec(),
        tileset(5).unwrap().generators,
    ];
    for _ in 0..3 {
        let mut b = Vec::new();
        while b.len() < 3 {
            let cand = random_poly(&mut rng, 4, 5);
            if !cand.is_zero() {
                b.push(cand);
            }
        }
        bases.push(b);
    }
    for i in 0..200 {
        let f = random_poly(&mut rng, 8, 7);
        let basis = &bases[i % bases.len()];
        let cert = if i % 2 == 0 {
            e_reduce(&f, basis)
        } else {
            ribbontile::groebner::d_reduce(&f, basis)
        };
        assert!(verify_certificate(&cert), "replay #{i}");
        assert_eq!(cert.input, f);
    }

    // Total-order laws on 10⁵ random monomial pairs.
    let draw = |rng: &mut ChaCha8Rng| -> Monomial {
        Monomial::new(rng.gen_range(0..60), rng.gen_range(0..60))
    };
    for i in 0..100_000 {
        let (a, b, c) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
        // Totality + antisymmetry.
        assert_eq!(a.cmp(&b), b.cmp(&a).reverse(), "#{i}");
        assert_eq!(a == b, a.cmp(&b).is_eq(), "#{i}");
        // Transitivity through a middle element.
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        if c >= lo && c <= hi {
            assert!(lo <= hi && lo <= c && c <= hi, "#{i}");
        }
        // Multiplication respects the order.
        if a < b {
            assert!(a.mul(&c) < b.mul(&c), "#{i}");
        }
        // One is the global minimum.
        assert!(Monomial::ONE <= a, "#{i}");
    }

    // Region I/O round-trips: JSON is exact; ASCII normalizes.
    for i in 0..50 {
        let cells: Vec<Cell> = (0..rng.gen_range(1..25))
            .map(|_| Cell::new(rng.gen_range(-9i64..9), rng.gen_range(-9i64..9)))
            .collect();
        let region = Region::from_cells(cells);
        let json = serde_json::to_string(&region).unwrap();
        let back: Region = serde_json::from_str(&json).unwrap();
        assert_eq!(region, back, "json #{i}");
        let (normalized, _) = region.normalized();
        assert_eq!(
            Region::from_ascii(&normalized.to_ascii()).unwrap(),
            normalized,
            "ascii #{i}"
        );
    }
    pass(12, "randomized replay, order-law, and round-trip checks", t0);
}

#[test]
fn acceptance_criteria() {
    criterion_1();
    criterion_2();
    let sweep = criterion_3();
    criterion_4(&sweep);
    criterion_5(&sweep);
    criterion_6(&sweep);
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
}
