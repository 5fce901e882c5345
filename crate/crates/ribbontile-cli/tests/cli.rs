//! End-to-end tests of the `ribbontile` binary: exit codes, JSON output
//! shapes, file round-trips, and deterministic rendering.

use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ribbontile"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    let text = String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8");
    serde_json::from_str(&text).unwrap_or_else(|e| panic!("stdout is JSON ({e}): {text}"))
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn temp_path(stem: &str) -> PathBuf {
    std::env::temp_dir().join(format!("ribbontile-test-{}-{stem}", std::process::id()))
}

#[test]
fn decide_rejects_3x4_with_exit_1() {
    let out = run(&["decide", "--tileset", "T5", "--rect", "3", "4"]);
    assert_eq!(code(&out), 1);
    let v = json_of(&out);
    assert_eq!(v["verdict"], "No");
    assert_eq!(v["conclusive"], true);
}

#[test]
fn decide_accepts_4x5_with_certificate_and_tiling() {
    let out = run(&[
        "decide", "--rect", "4", "5", "--certificate", "--tiling",
    ]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["verdict"], "Yes");
    assert_eq!(v["shift"], 0);
    assert!(v["certificate"]["normal_form"].is_string());
    assert!(v["tiling"]["placements"].as_array().unwrap().len() > 0);
}

#[test]
fn decide_grid_sweep_matches_divisibility() {
    let out = run(&["decide", "--grid", "6", "6", "--remainder"]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    for row in v["grid"].as_array().unwrap() {
        let (p, q) = (row["p"].as_u64().unwrap(), row["q"].as_u64().unwrap());
        let expected = if p % 5 == 0 || q % 5 == 0 { "Yes" } else { "No" };
        assert_eq!(row["verdict"], expected, "at {p}x{q}");
        assert_eq!(row["remainder"]["divisible"], expected == "Yes");
    }
}

#[test]
fn decide_reads_region_files_in_both_formats() {
    let ascii = temp_path("region.txt");
    std::fs::write(&ascii, "#####\n#####\n").unwrap();
    let out = run(&["decide", "--region", ascii.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "2x5 rectangle is tileable");

    let json_file = temp_path("region.json");
    let cells: Vec<[i64; 2]> = (0..5).flat_map(|x| [[x, 0], [x, 1]]).collect();
    std::fs::write(
        &json_file,
        serde_json::to_string(&serde_json::json!({ "cells": cells })).unwrap(),
    )
    .unwrap();
    let out2 = run(&["decide", "--region", json_file.to_str().unwrap()]);
    assert_eq!(code(&out2), 0);
    assert_eq!(json_of(&out2)["verdict"], "Yes");

    std::fs::remove_file(&ascii).ok();
    std::fs::remove_file(&json_file).ok();
}

#[test]
fn basis_verify_reports_groebner() {
    let out = run(&["basis", "-n", "7", "--verify"]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["is_groebner"], true);
    assert_eq!(v["polynomials"].as_array().unwrap().len(), 3);
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn basis_tiles_family_is_not_groebner_but_completes() {
    let out = run(&["basis", "-n", "5", "--family", "tiles", "--verify", "--complete"]);
    assert_eq!(code(&out), 1, "raw tile generators fail the criterion");
    let v = json_of(&out);
    assert_eq!(v["is_groebner"], false);
    assert_eq!(v["completed"]["representations_verified"], true);
}

#[test]
fn reduce_generator_to_zero_modulo_basis() {
    let out = run(&["reduce", "--poly", "x*y-1", "--mod", "B5"]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["zero"], true);
    assert_eq!(v["replay_ok"], true);
    assert_eq!(v["normal_form"], "0");
}

#[test]
fn reduce_nonmember_exits_1() {
    let out = run(&["reduce", "--poly", "x+1", "--mod", "B5"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json_of(&out)["zero"], false);
}

#[test]
fn reduce_malformed_polynomial_exits_2() {
    let out = run(&["reduce", "--poly", "x^+bad", "--mod", "B5"]);
    assert_eq!(code(&out), 2);
    assert!(json_of(&out)["error"].is_string());
}

#[test]
fn oracle_finds_brick_cover_and_signed_tiling() {
    let out = run(&["oracle", "--rect", "2", "5", "--exact-cover"]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["outcome"], "Found");
    assert_eq!(v["tiles"], 2);
    assert_eq!(v["verified"], true);

    let out2 = run(&["oracle", "--rect", "2", "5", "--tiling"]);
    assert_eq!(code(&out2), 0);
    let v2 = json_of(&out2);
    assert_eq!(v2["found"], true);
    assert_eq!(v2["verified"], true);
    assert!(v2["tiling"]["placements"].as_array().unwrap().len() > 0);
}

#[test]
fn oracle_reports_no_solution_with_exit_1() {
    let out = run(&["oracle", "--rect", "3", "4", "--margin", "2"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json_of(&out)["found"], false);
}

#[test]
fn construct_writes_verified_corner_tiling() {
    let file = temp_path("3n3n1.json");
    let out = run(&["construct", "3n3n1", "-n", "5", "--out", file.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["tiles"], 48);
    assert_eq!(v["verified"], true);
    assert_eq!(v["target"], "15x16 rectangle");

    // The written file re-verifies through an independent run.
    let region = temp_path("3n3n1-region.txt");
    let grid: String = (0..15)
        .map(|_| "#".repeat(16))
        .collect::<Vec<_>>()
        .join("\n");
    std::fs::write(&region, grid).unwrap();
    let check = run(&[
        "verify",
        "--tiling",
        file.to_str().unwrap(),
        "--region",
        region.to_str().unwrap(),
    ]);
    assert_eq!(code(&check), 0);
    assert_eq!(json_of(&check)["valid"], true);

    std::fs::remove_file(&file).ok();
    std::fs::remove_file(&region).ok();
}

#[test]
fn construct_rejects_bad_bricks_with_exit_2() {
    let out = run(&["construct", "brick", "-n", "5", "--rect", "3", "7"]);
    assert_eq!(code(&out), 2);
    assert!(json_of(&out)["error"]
        .as_str()
        .unwrap()
        .contains("divisible"));
}

#[test]
fn construct_oddeven_embeds_tiling_without_out() {
    let out = run(&["construct", "oddeven", "-n", "5", "--rect", "15", "20"]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["tiles"], 60);
    assert_eq!(v["verified"], true);
    assert_eq!(
        v["tiling"]["placements"].as_array().unwrap().len(),
        60
    );
}

#[test]
fn invariant_encode_tile_and_replication_verdicts() {
    let out = run(&["invariant", "encode", "--tile", "G1", "--tileset", "T5"]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["encoding"], "1110");
    assert_eq!(v["f1"], 1);

    let rep = run(&["invariant", "replication", "-n", "5", "-k", "4"]);
    assert_eq!(code(&rep), 1, "parity obstruction applies");
    let rv = json_of(&rep);
    assert_eq!(rv["conclusion"], "Impossible");
    assert_eq!(rv["case"], "EvenNotDivisibleByN");

    let open = run(&["invariant", "replication", "-n", "5", "-k", "3"]);
    assert_eq!(code(&open), 2, "no parity argument applies");
    assert_eq!(json_of(&open)["conclusion"], "Undecided");
}

#[test]
fn invariant_leftover_and_f1sum_round_trip() {
    let out = run(&["invariant", "leftover", "-n", "7", "-r", "2"]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["tiles"], 2);
    assert_eq!(v["f1_sum"], 1);
    assert_eq!(v["verified"], true);

    let tiling = temp_path("leftover.json");
    std::fs::write(&tiling, serde_json::to_string(&v["tiling"]).unwrap()).unwrap();
    let sum = run(&["invariant", "f1sum", "--tiling", tiling.to_str().unwrap()]);
    assert_eq!(code(&sum), 0);
    assert_eq!(json_of(&sum)["f1_sum"], 1);
    std::fs::remove_file(&tiling).ok();
}

#[test]
fn barnes_evaluation_tracks_divisibility() {
    let yes = run(&["barnes", "-n", "5", "--rect", "5", "7"]);
    assert_eq!(code(&yes), 0);
    assert_eq!(json_of(&yes)["zero"], true);

    let no = run(&["barnes", "-n", "5", "--rect", "3", "4", "--float"]);
    assert_eq!(code(&no), 1);
    let v = json_of(&no);
    assert_eq!(v["zero"], false);
    let mags = v["float_magnitudes"].as_array().unwrap();
    assert_eq!(mags.len(), 4);
    assert!(mags.iter().all(|m| m.as_f64().unwrap() > 1e-3));

    let check = run(&["barnes", "-n", "9", "--check"]);
    assert_eq!(code(&check), 0);
    assert_eq!(json_of(&check)["all_hold"], true);
}

#[test]
fn render_ascii_shows_weight_sums() {
    let file = temp_path("brick.json");
    let out = run(&["construct", "brick", "-n", "5", "--rect", "2", "5", "--out", file.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let render = run(&["render", "--tiling", file.to_str().unwrap()]);
    assert_eq!(code(&render), 0);
    assert_eq!(json_of(&render)["ascii"], "11111\n11111");
    std::fs::remove_file(&file).ok();
}

#[test]
fn render_svg_is_deterministic_with_one_path_per_placement() {
    let file = temp_path("corner.json");
    run(&["construct", "3n3n1", "-n", "5", "--out", file.to_str().unwrap()]);
    let svg_a = temp_path("a.svg");
    let svg_b = temp_path("b.svg");
    let ra = run(&["render", "--tiling", file.to_str().unwrap(), "--svg", svg_a.to_str().unwrap()]);
    let rb = run(&["render", "--tiling", file.to_str().unwrap(), "--svg", svg_b.to_str().unwrap()]);
    assert_eq!(code(&ra), 0);
    assert_eq!(code(&rb), 0);
    let a = std::fs::read(&svg_a).unwrap();
    let b = std::fs::read(&svg_b).unwrap();
    assert_eq!(a, b, "same input must produce identical bytes");
    let text = String::from_utf8(a).unwrap();
    assert_eq!(text.matches("<path").count(), 48);
    assert!(text.contains("stroke=\"#1f4e9c\""));
    std::fs::remove_file(&file).ok();
    std::fs::remove_file(&svg_a).ok();
    std::fs::remove_file(&svg_b).ok();
}

#[test]
fn verify_replays_certificates_and_rejects_tampering() {
    let out = run(&["reduce", "--poly", "x^2+y^2+x+y+1", "--mod", "B5"]);
    let cert = json_of(&out)["certificate"].clone();
    let path = temp_path("cert.json");
    std::fs::write(&path, serde_json::to_string(&cert).unwrap()).unwrap();
    let ok = run(&["verify", "--certificate", path.to_str().unwrap()]);
    assert_eq!(code(&ok), 0);
    assert_eq!(json_of(&ok)["valid"], true);

    let mut tampered = cert;
    tampered["input"] = Value::String("x^2+y^2+x+y+2".into());
    std::fs::write(&path, serde_json::to_string(&tampered).unwrap()).unwrap();
    let bad = run(&["verify", "--certificate", path.to_str().unwrap()]);
    assert_eq!(code(&bad), 1);
    assert_eq!(json_of(&bad)["valid"], false);
    std::fs::remove_file(&path).ok();
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&run(&["decide", "--badflag"])), 2);
    assert_eq!(code(&run(&["nonsense"])), 2);
    assert_eq!(code(&run(&["decide"])), 2);
    assert_eq!(code(&run(&["decide", "--tileset", "Q9", "--rect", "2", "2"])), 2);
    assert_eq!(code(&run(&["basis", "-n", "4"])), 2);
}
