//! `ribbontile` — decide, certify, construct, and render signed tilings of
//! lattice regions by ribbon L n-ominoes.
//!
//! Every run prints one machine-readable JSON document to stdout;
//! diagnostics go to stderr. The exit code encodes the verdict so shell
//! harnesses can sweep parameter grids without parsing JSON:
//!
//! * `0` — success / positive verdict (tileable, valid, zero, found);
//! * `1` — negative verdict (not tileable, invalid, nonzero, not found);
//! * `2` — usage error, I/O error, or an inconclusive outcome (search cap
//!   hit, shift bound exhausted without a conclusive basis).
//!
//! Region files are accepted in two formats, sniffed by the first
//! non-whitespace byte: JSON `{"cells":[[x,y],…]}` or an ASCII grid of
//! `#`/`.` rows (top row = highest y). Tilings and reduction certificates
//! are always JSON as produced by this tool.

mod render;

use clap::{Args, Parser, Subcommand};
use ribbontile::barnes::{eval_variety, eval_variety_float, variety_and_radical_checks};
use ribbontile::constructions::{
    brick_tilings, odd_even_rectangle, rect_3n_3n1, ConstructionError,
};
use ribbontile::decide::{rect_remainder, DecideError, Decider, Verdict};
use ribbontile::groebner::{
    complete, d_reduce, e_reduce, is_groebner, verify_certificate, CompletionError,
    CompletionLimits, ReductionCertificate,
};
use ribbontile::invariants::{
    encode_ribbon, f1, leftover_region, leftover_tiling, replication_verdict, tiling_f1_sum,
    Conclusion, InvariantError,
};
use ribbontile::oracle::{
    exact_cover, signed_search, verify_signed, CoverLimits, CoverOutcome, OracleError,
};
use ribbontile::poly::{ParseError, Polynomial};
use ribbontile::tiles::{
    basis_polynomials, tileset, tileset_extended, Region, RegionError, SignedTiling, TileError,
    TileSet,
};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use thiserror::Error;

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_ERROR: u8 = 2;

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Tile(#[from] TileError),
    #[error("{0}")]
    Region(#[from] RegionError),
    #[error("{0}")]
    Decide(#[from] DecideError),
    #[error("oracle: {0}")]
    Oracle(#[from] OracleError),
    #[error("{0}")]
    Invariant(#[from] InvariantError),
    #[error("{0}")]
    Construction(#[from] ConstructionError),
    #[error("completion: {0}")]
    Completion(#[from] CompletionError),
    #[error("polynomial: {0}")]
    Poly(#[from] ParseError),
    #[error("render: {0}")]
    Render(#[from] render::RenderError),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Parser)]
#[command(
    name = "ribbontile",
    version,
    about = "Signed tilings of lattice regions by ribbon L n-ominoes",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide signed tileability of a region via basis reduction.
    Decide(DecideArgs),
    /// Print a polynomial family; optionally verify or complete it.
    Basis(BasisArgs),
    /// Reduce a polynomial modulo a family and print the certificate.
    Reduce(ReduceArgs),
    /// Integer-linear-algebra search for signed tilings and exact covers.
    Oracle(OracleArgs),
    /// Build verified regular tilings of rectangles.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Ribbon encodings and the boundary invariant.
    #[command(subcommand)]
    Invariant(InvariantCmd),
    /// Evaluate regions on the vanishing variety of the tile ideal.
    Barnes(BarnesArgs),
    /// Render a tiling or region as an ASCII grid or SVG.
    Render(RenderArgs),
    /// Re-check a stored certificate or tiling file.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct DecideArgs {
    /// Tile family: T<n> for the four L orientations, T<n>~ to add the
    /// 2×2 square.
    #[arg(long, default_value = "T5")]
    tileset: String,
    /// Rectangle sides: height and width.
    #[arg(long, num_args = 2, value_names = ["P", "Q"], conflicts_with_all = ["region", "grid"])]
    rect: Option<Vec<u32>>,
    /// Region file (JSON or ASCII grid).
    #[arg(long, conflicts_with = "grid")]
    region: Option<PathBuf>,
    /// Sweep all rectangles 1..=P × 1..=Q and report one verdict each.
    #[arg(long, num_args = 2, value_names = ["P", "Q"])]
    grid: Option<Vec<u32>>,
    /// Highest diagonal shift (xy)^N to try before giving up.
    #[arg(long, default_value_t = 0)]
    max_shift: u32,
    /// Include the reduction certificate in the output.
    #[arg(long)]
    certificate: bool,
    /// Recover and include a signed tiling for Yes verdicts.
    #[arg(long)]
    tiling: bool,
    /// Include the one-variable remainder analysis (rectangles only).
    #[arg(long)]
    remainder: bool,
}

#[derive(Args)]
struct BasisArgs {
    /// Tile size n (odd, ≥ 5).
    #[arg(short)]
    n: u32,
    /// Which family: the three-element basis, the tile generators, or
    /// the generators with the 2×2 square.
    #[arg(long, value_parser = ["basis", "tiles", "extended"], default_value = "basis")]
    family: String,
    /// Check the Buchberger criterion (S-polynomials reduce to zero,
    /// G-polynomials top-reducible) and report the result.
    #[arg(long)]
    verify: bool,
    /// Run completion on the family and include the completed basis.
    #[arg(long)]
    complete: bool,
}

#[derive(Args)]
struct ReduceArgs {
    /// Polynomial to reduce, e.g. "x*y-1" or "x^2+3*y-2".
    #[arg(long)]
    poly: String,
    /// Modulus family: B<n> (basis), T<n> or T<n>~ (tile generators).
    #[arg(long = "mod")]
    modulus: String,
    /// Reduction kind: "e" leaves Euclidean remainders in [0, |HC|),
    /// "d" only removes exactly divisible terms.
    #[arg(long, value_parser = ["e", "d"], default_value = "e")]
    kind: String,
    /// Multiply the input by (xy)^N before reducing.
    #[arg(long, default_value_t = 0)]
    shift: u32,
    /// Complete the modulus family first and reduce against the result.
    #[arg(long)]
    complete: bool,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long, default_value = "T5")]
    tileset: String,
    /// Rectangle sides: height and width.
    #[arg(long, num_args = 2, value_names = ["P", "Q"])]
    rect: Option<Vec<u32>>,
    /// Region file (JSON or ASCII grid).
    #[arg(long)]
    region: Option<PathBuf>,
    /// Allow placements overhanging the bounding box by this much.
    #[arg(long, default_value_t = 0)]
    margin: u32,
    /// Search for a regular (all weights +1, disjoint) tiling instead of
    /// a signed one.
    #[arg(long)]
    exact_cover: bool,
    /// Node cap for the exact-cover search.
    #[arg(long, default_value_t = 5_000_000)]
    max_nodes: u64,
    /// Include the tiling in the output when one is found.
    #[arg(long)]
    tiling: bool,
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Tile a p×q rectangle by two-tile bricks (needs one side divisible
    /// by n, the other even).
    Brick(BrickArgs),
    /// The 3n × (3n+1) rectangle tiling built from six brick blocks and
    /// two single tiles.
    #[command(name = "3n3n1")]
    Rect3n3n1(Rect3nArgs),
    /// Tile an a×b rectangle with a odd, b even and divisible by n,
    /// both at least about 3n.
    Oddeven(OddEvenArgs),
}

#[derive(Args)]
struct BrickArgs {
    /// Tile size n (odd, ≥ 5).
    #[arg(short)]
    n: u32,
    /// Rectangle sides: height and width.
    #[arg(long, num_args = 2, value_names = ["P", "Q"])]
    rect: Vec<u32>,
    /// Write the tiling JSON to this file instead of embedding it.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Rect3nArgs {
    /// Tile size n (odd, ≥ 5).
    #[arg(short)]
    n: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OddEvenArgs {
    /// Tile size n (odd, ≥ 5).
    #[arg(short)]
    n: u32,
    /// Rectangle sides: height (odd) and width (even, divisible by n).
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    rect: Vec<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum InvariantCmd {
    /// Binary encoding and f₁ of a ribbon polyomino.
    Encode(EncodeArgs),
    /// Weighted f₁ sum of a tiling's placements.
    F1sum(F1SumArgs),
    /// Parity obstruction for the L tiling its own k-inflated copy.
    Replication(ReplicationArgs),
    /// The leftover staircase region and its r-ribbon tiling.
    Leftover(LeftoverArgs),
}

#[derive(Args)]
struct EncodeArgs {
    /// Tile id inside --tileset (e.g. G1).
    #[arg(long, conflicts_with = "region")]
    tile: Option<String>,
    #[arg(long)]
    tileset: Option<String>,
    /// Region file (JSON or ASCII grid).
    #[arg(long)]
    region: Option<PathBuf>,
}

#[derive(Args)]
struct F1SumArgs {
    /// Tiling file (JSON).
    #[arg(long)]
    tiling: PathBuf,
    #[arg(long)]
    tileset: Option<String>,
}

#[derive(Args)]
struct ReplicationArgs {
    /// Tile size n (odd, ≥ 5).
    #[arg(short)]
    n: u32,
    /// Inflation factor.
    #[arg(short)]
    k: u32,
}

#[derive(Args)]
struct LeftoverArgs {
    /// Tile size n (odd, ≥ 5).
    #[arg(short)]
    n: u32,
    /// Residue r = k mod n with 0 < r < n and r ≠ (n±1)/2.
    #[arg(short)]
    r: u32,
}

#[derive(Args)]
struct BarnesArgs {
    /// Tile size n (odd, ≥ 5).
    #[arg(short)]
    n: u32,
    /// Rectangle sides: height and width.
    #[arg(long, num_args = 2, value_names = ["P", "Q"], conflicts_with = "region")]
    rect: Option<Vec<u32>>,
    /// Region file (JSON or ASCII grid).
    #[arg(long)]
    region: Option<PathBuf>,
    /// Also report float magnitudes at the n−1 primitive root points.
    #[arg(long)]
    float: bool,
    /// Run the generator-vanishing, factorization, and radical-witness
    /// certification for this n instead of evaluating a region.
    #[arg(long, conflicts_with_all = ["rect", "region", "float"])]
    check: bool,
}

#[derive(Args)]
struct RenderArgs {
    /// Tiling file (JSON).
    #[arg(long, conflicts_with = "region")]
    tiling: Option<PathBuf>,
    /// Region file (JSON or ASCII grid).
    #[arg(long)]
    region: Option<PathBuf>,
    /// Tile family used to resolve placement shapes.
    #[arg(long, default_value = "T5")]
    tileset: String,
    /// Write an SVG document to this file.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// SVG cell size in pixels.
    #[arg(long, default_value_t = 24)]
    cell_size: u32,
}

#[derive(Args)]
struct VerifyArgs {
    /// Reduction-certificate file (JSON) to replay.
    #[arg(long, conflicts_with_all = ["tiling", "region"])]
    certificate: Option<PathBuf>,
    /// Tiling file (JSON) to check against --region.
    #[arg(long, requires = "region")]
    tiling: Option<PathBuf>,
    /// Region file the tiling must cover exactly once.
    #[arg(long)]
    region: Option<PathBuf>,
    #[arg(long, default_value = "T5")]
    tileset: String,
}

/// Parses `T5` / `t5` / `T5~` (or bare `5`, `5~`) into a tile set.
fn parse_tileset(spec: &str) -> Result<TileSet, CliError> {
    let (body, extended) = match spec.strip_suffix('~') {
        Some(b) => (b, true),
        None => (spec, false),
    };
    let digits = body.strip_prefix(['T', 't']).unwrap_or(body);
    let n: u32 = digits
        .parse()
        .map_err(|_| usage(format!("unrecognized tile family {spec:?}; expected e.g. T5 or T5~")))?;
    Ok(if extended { tileset_extended(n)? } else { tileset(n)? })
}

/// Parses a modulus family: `B<n>` for the three-element basis, otherwise
/// a tile family as in [`parse_tileset`].
fn parse_modulus(spec: &str) -> Result<(String, Vec<Polynomial>), CliError> {
    if let Some(digits) = spec.strip_prefix(['B', 'b']) {
        let n: u32 = digits
            .parse()
            .map_err(|_| usage(format!("unrecognized family {spec:?}; expected e.g. B5, T5, T5~")))?;
        let basis = basis_polynomials(n)?;
        return Ok((format!("B{n}"), basis.to_vec()));
    }
    let ts = parse_tileset(spec)?;
    Ok((ts.name.clone(), ts.generators))
}

/// Reads a region file: JSON if the first non-space byte is `{`,
/// otherwise an ASCII `#`/`.` grid.
fn read_region(path: &Path) -> Result<Region, CliError> {
    let text = std::fs::read_to_string(path)?;
    if text.trim_start().starts_with('{') {
        Ok(serde_json::from_str(&text)?)
    } else {
        Ok(Region::from_ascii(&text)?)
    }
}

fn read_tiling(path: &Path) -> Result<SignedTiling, CliError> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

fn rect_pair(rect: &[u32], what: &str) -> Result<(u32, u32), CliError> {
    match rect {
        [p, q] if *p > 0 && *q > 0 => Ok((*p, *q)),
        [_, _] => Err(usage(format!("{what} sides must be positive"))),
        _ => Err(usage(format!("{what} takes exactly two sides"))),
    }
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Yes => "Yes",
        Verdict::No => "No",
        Verdict::NoUpToBound => "NoUpToBound",
    }
}

fn verdict_exit(v: Verdict) -> u8 {
    match v {
        Verdict::Yes => EXIT_OK,
        Verdict::No => EXIT_NEGATIVE,
        Verdict::NoUpToBound => EXIT_ERROR,
    }
}

fn remainder_json(p: u32, q: u32, n: u32) -> Value {
    let a = rect_remainder(p, q, n);
    json!({
        "p": a.p,
        "q": a.q,
        "n": a.n,
        "staircase": a.ppq.to_string(),
        "divisor": a.q_poly.to_string(),
        "quotient": a.quotient.to_string(),
        "remainder": a.remainder.to_string(),
        "divisible": a.divisible,
    })
}

fn run_decide(args: DecideArgs) -> Result<(Value, u8), CliError> {
    let ts = parse_tileset(&args.tileset)?;
    let n = ts.n;
    let decider = Decider::new(ts)?;

    if let Some(grid) = &args.grid {
        let (pmax, qmax) = rect_pair(grid, "--grid")?;
        let mut rows = Vec::new();
        for p in 1..=pmax {
            for q in 1..=qmax {
                let region = Region::rectangle(q, p);
                let d = decider.decide(&region, args.max_shift);
                let mut row = json!({
                    "p": p,
                    "q": q,
                    "verdict": verdict_str(d.verdict),
                });
                if args.remainder {
                    row["remainder"] = remainder_json(p, q, n);
                }
                rows.push(row);
            }
        }
        let out = json!({
            "tileset": decider.tileset.name,
            "max_shift": args.max_shift,
            "grid": rows,
        });
        return Ok((out, EXIT_OK));
    }

    let (region, rect_sides) = if let Some(rect) = &args.rect {
        let (p, q) = rect_pair(rect, "--rect")?;
        (Region::rectangle(q, p), Some((p, q)))
    } else if let Some(path) = &args.region {
        (read_region(path)?, None)
    } else {
        return Err(usage("decide needs one of --rect, --region, --grid"));
    };

    let decision = if args.tiling {
        decider.decide_with_tiling(&region, args.max_shift)?
    } else {
        decider.decide(&region, args.max_shift)
    };

    let mut out = json!({
        "tileset": decider.tileset.name,
        "verdict": verdict_str(decision.verdict),
        "shift": decision.shift,
        "cells": region.len(),
        "conclusive": decision.verdict != Verdict::NoUpToBound,
    });
    if let Some(w) = &decision.witness {
        out["witness"] = json!(w.to_string());
    }
    if args.certificate {
        if let Some(c) = &decision.certificate {
            out["certificate"] = serde_json::to_value(c)?;
        }
    }
    if args.tiling {
        if let Some(t) = &decision.tiling {
            out["tiling"] = serde_json::to_value(t)?;
            out["tiles"] = json!(t.len());
        }
    }
    if args.remainder {
        let (p, q) = rect_sides.ok_or_else(|| usage("--remainder needs --rect"))?;
        out["remainder"] = remainder_json(p, q, n);
    }
    Ok((out, verdict_exit(decision.verdict)))
}

fn run_basis(args: BasisArgs) -> Result<(Value, u8), CliError> {
    let (name, polys) = match args.family.as_str() {
        "basis" => {
            let b = basis_polynomials(args.n)?;
            (format!("B{}", args.n), b.to_vec())
        }
        "tiles" => {
            let ts = tileset(args.n)?;
            (ts.name.clone(), ts.generators)
        }
        "extended" => {
            let ts = tileset_extended(args.n)?;
            (ts.name.clone(), ts.generators)
        }
        other => return Err(usage(format!("unknown family {other:?}"))),
    };
    let mut out = json!({
        "n": args.n,
        "family": name,
        "polynomials": polys.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
    });
    let mut code = EXIT_OK;
    if args.verify {
        let report = is_groebner(&polys);
        out["is_groebner"] = json!(report.is_groebner);
        out["failures"] = json!(report
            .failures
            .iter()
            .map(|f| json!({
                "i": f.i,
                "j": f.j,
                "kind": f.kind.as_str(),
                "witness": f.witness.to_string(),
            }))
            .collect::<Vec<_>>());
        if !report.is_groebner {
            code = EXIT_NEGATIVE;
        }
    }
    if args.complete {
        let done = complete(&polys, &CompletionLimits::default())?;
        out["completed"] = json!({
            "elements": done.elements.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "pairs_processed": done.pairs_processed,
            "representations_verified": done.verify_reps(),
        });
    }
    Ok((out, code))
}

fn run_reduce(args: ReduceArgs) -> Result<(Value, u8), CliError> {
    let input = Polynomial::parse(&args.poly)?;
    let (name, mut modulus) = parse_modulus(&args.modulus)?;
    if args.complete {
        modulus = complete(&modulus, &CompletionLimits::default())?.elements;
    }
    let shifted = if args.shift > 0 {
        let xy = Polynomial::monomial(1, 1);
        let mut acc = input.clone();
        for _ in 0..args.shift {
            acc = &acc * &xy;
        }
        acc
    } else {
        input.clone()
    };
    let cert = match args.kind.as_str() {
        "d" => d_reduce(&shifted, &modulus),
        _ => e_reduce(&shifted, &modulus),
    };
    let zero = cert.normal_form.is_zero();
    let out = json!({
        "input": input.to_string(),
        "shift": args.shift,
        "kind": args.kind,
        "modulus": name,
        "completed": args.complete,
        "normal_form": cert.normal_form.to_string(),
        "zero": zero,
        "certificate": serde_json::to_value(&cert)?,
        "replay_ok": verify_certificate(&cert),
    });
    Ok((out, if zero { EXIT_OK } else { EXIT_NEGATIVE }))
}

fn run_oracle(args: OracleArgs) -> Result<(Value, u8), CliError> {
    let ts = parse_tileset(&args.tileset)?;
    let region = if let Some(rect) = &args.rect {
        let (p, q) = rect_pair(rect, "--rect")?;
        Region::rectangle(q, p)
    } else if let Some(path) = &args.region {
        read_region(path)?
    } else {
        return Err(usage("oracle needs one of --rect, --region"));
    };

    if args.exact_cover {
        let limits = CoverLimits { max_nodes: args.max_nodes };
        let outcome = exact_cover(&region, &ts, &limits, None);
        let (out, code) = match outcome {
            CoverOutcome::Found(t) => {
                let verified = verify_signed(&t, &region, Some(&ts));
                let mut o = json!({
                    "search": "exact-cover",
                    "outcome": "Found",
                    "tiles": t.len(),
                    "verified": verified,
                });
                if args.tiling {
                    o["tiling"] = serde_json::to_value(&t)?;
                }
                (o, if verified { EXIT_OK } else { EXIT_ERROR })
            }
            CoverOutcome::Exhausted => (
                json!({"search": "exact-cover", "outcome": "Exhausted"}),
                EXIT_NEGATIVE,
            ),
            CoverOutcome::CappedOut => (
                json!({"search": "exact-cover", "outcome": "CappedOut", "max_nodes": args.max_nodes}),
                EXIT_ERROR,
            ),
        };
        return Ok((out, code));
    }

    match signed_search(&region, &ts, args.margin)? {
        Some(t) => {
            let verified = verify_signed(&t, &region, Some(&ts));
            let mut out = json!({
                "search": "signed",
                "margin": args.margin,
                "found": true,
                "tiles": t.len(),
                "verified": verified,
            });
            if args.tiling {
                out["tiling"] = serde_json::to_value(&t)?;
            }
            Ok((out, if verified { EXIT_OK } else { EXIT_ERROR }))
        }
        None => Ok((
            json!({"search": "signed", "margin": args.margin, "found": false}),
            EXIT_NEGATIVE,
        )),
    }
}

fn construct_output(
    target: String,
    n: u32,
    tiling: SignedTiling,
    region: &Region,
    out_file: Option<&Path>,
) -> Result<(Value, u8), CliError> {
    let ts = tileset(n)?;
    let verified = verify_signed(&tiling, region, Some(&ts));
    let mut out = json!({
        "target": target,
        "n": n,
        "tiles": tiling.len(),
        "verified": verified,
    });
    match out_file {
        Some(path) => {
            std::fs::write(path, serde_json::to_string_pretty(&tiling)?)?;
            out["out"] = json!(path.display().to_string());
        }
        None => out["tiling"] = serde_json::to_value(&tiling)?,
    }
    Ok((out, if verified { EXIT_OK } else { EXIT_ERROR }))
}

fn run_construct(cmd: ConstructCmd) -> Result<(Value, u8), CliError> {
    match cmd {
        ConstructCmd::Brick(a) => {
            let (p, q) = rect_pair(&a.rect, "--rect")?;
            let t = brick_tilings(p, q, a.n)?;
            let region = Region::rectangle(q, p);
            construct_output(format!("{p}x{q} rectangle"), a.n, t, &region, a.out.as_deref())
        }
        ConstructCmd::Rect3n3n1(a) => {
            let t = rect_3n_3n1(a.n)?;
            let region = Region::rectangle(3 * a.n + 1, 3 * a.n);
            construct_output(
                format!("{}x{} rectangle", 3 * a.n, 3 * a.n + 1),
                a.n,
                t,
                &region,
                a.out.as_deref(),
            )
        }
        ConstructCmd::Oddeven(a) => {
            let (p, q) = rect_pair(&a.rect, "--rect")?;
            let t = odd_even_rectangle(p, q, a.n)?;
            let region = Region::rectangle(q, p);
            construct_output(format!("{p}x{q} rectangle"), a.n, t, &region, a.out.as_deref())
        }
    }
}

fn run_invariant(cmd: InvariantCmd) -> Result<(Value, u8), CliError> {
    match cmd {
        InvariantCmd::Encode(a) => {
            let region = match (&a.tile, &a.region) {
                (Some(id), None) => {
                    let spec = a.tileset.as_deref().unwrap_or("T5");
                    let ts = parse_tileset(spec)?;
                    let tile = ts
                        .tile(id)
                        .ok_or_else(|| usage(format!("no tile {id:?} in {}", ts.name)))?;
                    tile.cells.clone()
                }
                (None, Some(path)) => read_region(path)?,
                _ => return Err(usage("encode needs exactly one of --tile, --region")),
            };
            let enc = encode_ribbon(&region)?;
            let out = json!({
                "cells": region.len(),
                "encoding": enc.to_string(),
                "f1": f1(&enc),
            });
            Ok((out, EXIT_OK))
        }
        InvariantCmd::F1sum(a) => {
            let t = read_tiling(&a.tiling)?;
            let ts = a.tileset.as_deref().map(parse_tileset).transpose()?;
            let sum = tiling_f1_sum(&t, ts.as_ref())?;
            Ok((json!({"placements": t.len(), "f1_sum": sum}), EXIT_OK))
        }
        InvariantCmd::Replication(a) => {
            let v = replication_verdict(a.n, a.k)?;
            let mut out = serde_json::to_value(&v)?;
            if let Some(w) = &v.witness {
                out["witness_tiles"] = json!(w.len());
            }
            let code = match v.conclusion {
                Conclusion::Impossible => EXIT_NEGATIVE,
                Conclusion::Undecided => EXIT_ERROR,
            };
            Ok((out, code))
        }
        InvariantCmd::Leftover(a) => {
            let region = leftover_region(a.n, a.r)?;
            let tiling = leftover_tiling(a.n, a.r)?;
            let verified = verify_signed(&tiling, &region, None);
            let sum = tiling_f1_sum(&tiling, None)?;
            let out = json!({
                "n": a.n,
                "r": a.r,
                "cells": region.len(),
                "region": serde_json::to_value(&region)?,
                "tiles": tiling.len(),
                "f1_sum": sum,
                "verified": verified,
                "tiling": serde_json::to_value(&tiling)?,
            });
            Ok((out, if verified { EXIT_OK } else { EXIT_ERROR }))
        }
    }
}

fn run_barnes(args: BarnesArgs) -> Result<(Value, u8), CliError> {
    if args.check {
        let report = variety_and_radical_checks(args.n)?;
        let all = report.all_hold();
        let mut out = serde_json::to_value(&report)?;
        out["all_hold"] = json!(all);
        return Ok((out, if all { EXIT_OK } else { EXIT_NEGATIVE }));
    }
    let region = if let Some(rect) = &args.rect {
        let (p, q) = rect_pair(rect, "--rect")?;
        Region::rectangle(q, p)
    } else if let Some(path) = &args.region {
        read_region(path)?
    } else {
        return Err(usage("barnes needs one of --rect, --region, --check"));
    };
    let value = eval_variety(&region, args.n);
    let zero = value.is_zero();
    let mut out = json!({
        "n": args.n,
        "cells": region.len(),
        "coefficients": value.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "zero": zero,
    });
    if args.float {
        out["float_magnitudes"] = json!(eval_variety_float(&region, args.n));
    }
    Ok((out, if zero { EXIT_OK } else { EXIT_NEGATIVE }))
}

fn run_render(args: RenderArgs) -> Result<(Value, u8), CliError> {
    let (tiling, ambient) = if let Some(path) = &args.tiling {
        (read_tiling(path)?, Some(parse_tileset(&args.tileset)?))
    } else if let Some(path) = &args.region {
        let region = read_region(path)?;
        if args.svg.is_none() {
            return Ok((json!({"ascii": render::ascii_region(&region)}), EXIT_OK));
        }
        // Render a bare region as a single anonymous unit-weight placement.
        let mut t = SignedTiling::default();
        t.tiles.insert("region".into(), region);
        t.placements.push(ribbontile::tiles::Placement {
            tile: "region".into(),
            dx: 0,
            dy: 0,
            weight: 1,
        });
        (t, None)
    } else {
        return Err(usage("render needs one of --tiling, --region"));
    };

    match &args.svg {
        Some(path) => {
            let doc = render::svg(&tiling, ambient.as_ref(), args.cell_size)?;
            std::fs::write(path, &doc)?;
            let out = json!({
                "svg": path.display().to_string(),
                "bytes": doc.len(),
                "paths": tiling.len(),
            });
            Ok((out, EXIT_OK))
        }
        None => {
            let grid = render::ascii_weights(&tiling, ambient.as_ref())?;
            Ok((json!({"ascii": grid}), EXIT_OK))
        }
    }
}

fn run_verify(args: VerifyArgs) -> Result<(Value, u8), CliError> {
    if let Some(path) = &args.certificate {
        let text = std::fs::read_to_string(path)?;
        let cert: ReductionCertificate = serde_json::from_str(&text)?;
        let valid = verify_certificate(&cert);
        let out = json!({
            "kind": "reduction",
            "valid": valid,
            "input": cert.input.to_string(),
            "normal_form": cert.normal_form.to_string(),
        });
        return Ok((out, if valid { EXIT_OK } else { EXIT_NEGATIVE }));
    }
    match (&args.tiling, &args.region) {
        (Some(tpath), Some(rpath)) => {
            let tiling = read_tiling(tpath)?;
            let region = read_region(rpath)?;
            let ts = parse_tileset(&args.tileset)?;
            let valid = verify_signed(&tiling, &region, Some(&ts));
            let out = json!({
                "kind": "tiling",
                "valid": valid,
                "placements": tiling.len(),
                "cells": region.len(),
            });
            Ok((out, if valid { EXIT_OK } else { EXIT_NEGATIVE }))
        }
        _ => Err(usage(
            "verify needs --certificate FILE or --tiling FILE --region FILE",
        )),
    }
}

fn run(cli: Cli) -> Result<(Value, u8), CliError> {
    match cli.command {
        Command::Decide(a) => run_decide(a),
        Command::Basis(a) => run_basis(a),
        Command::Reduce(a) => run_reduce(a),
        Command::Oracle(a) => run_oracle(a),
        Command::Construct(c) => run_construct(c),
        Command::Invariant(c) => run_invariant(c),
        Command::Barnes(a) => run_barnes(a),
        Command::Render(a) => run_render(a),
        Command::Verify(a) => run_verify(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((value, code)) => {
            println!("{value}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            println!("{}", json!({"error": e.to_string()}));
            ExitCode::from(EXIT_ERROR)
        }
    }
}
