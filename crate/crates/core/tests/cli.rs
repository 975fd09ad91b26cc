use std::fs;

use npf::cli::run;
use npf::series::SeriesFile;

fn npf(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("npf").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn edges_on_remark() {
    let (code, out, _) = npf(&["edges", "--input", "@remark"]);
    assert_eq!(code, 0);
    let line = out.lines().find(|l| l.starts_with("[(1,1,1),(2,2,0)]")).expect("edge listed");
    assert!(line.contains("loose=true descendant=true"));
    assert!(line.ends_with("f|_E = x1*x2*x3 + x1^2*x2^2"));
}

#[test]
fn factor_node_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("node.series");
    fs::write(&input, "vars x y\ny^2 - x^2 - x^3\n").unwrap();
    let out_path = dir.path().join("node.series");
    let transcript = dir.path().join("t.json");
    let (code, out, err) = npf(&[
        "factor",
        "--input",
        input.to_str().unwrap(),
        "--split",
        "y-x || y+x",
        "--trunc",
        "5",
        "--out",
        out_path.to_str().unwrap(),
        "--transcript",
        transcript.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("residual 0"));
    let f = SeriesFile::parse(&fs::read_to_string(&input).unwrap()).unwrap().series;
    let g = SeriesFile::parse(&fs::read_to_string(dir.path().join("node.g.series")).unwrap()).unwrap();
    let h = SeriesFile::parse(&fs::read_to_string(dir.path().join("node.h.series")).unwrap()).unwrap();
    assert_eq!(g.series.truncation(), Some(5));
    assert!(f.sub(&g.series.mul(&h.series)).truncate(5).is_zero());
    let t: serde_json::Value = serde_json::from_str(&fs::read_to_string(&transcript).unwrap()).unwrap();
    assert_eq!(t["schema"], "npf/1");
    assert!(!t["weights"].as_array().unwrap().is_empty());
}

#[test]
fn factor_json_and_auto_edge() {
    let (code, out, _) = npf(&["factor-monic", "--input", "@node", "--trunc", "8", "--format", "json"]);
    assert_eq!(code, 0);
    let j: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(j["schema"], "npf/1");
    assert_eq!(j["residual_zero"], true);
    assert_eq!(j["mode"], "Monic");
}

#[test]
fn exit_codes() {
    // Several loose edges and no --edge.
    assert_eq!(npf(&["factor", "--input", "@remark", "--trunc", "8"]).0, 2);
    // G divisible by x2.
    let bad = ["factor", "--input", "@remark", "--edge", "1,1,1;2,2,0", "--split", "x2*x3 + x1*x2^2 || x1", "--trunc", "8"];
    let (code, _, err) = npf(&bad);
    assert_eq!(code, 2);
    assert!(err.contains("divisible by the variable x2"));
    let good = ["factor", "--input", "@remark", "--edge", "1,1,1;2,2,0", "--split", "x3 + x1*x2 || x1*x2", "--trunc", "8"];
    assert_eq!(npf(&good).0, 0);
    // Not an edge.
    assert_eq!(npf(&["factor", "--input", "@remark", "--edge", "1,1,1;3,3,3", "--trunc", "8"]).0, 4);
    // Descendant edge needed for the monic lift.
    assert_eq!(npf(&["factor-monic", "--input", "@fig3", "--edge", "1,1,1;2,0,2", "--trunc", "6"]).0, 4);
    // Compact but not loose.
    assert_eq!(npf(&["factor", "--input", "@fig2", "--edge", "1,1,1;3,2,0", "--trunc", "6"]).0, 4);
    // Parse error.
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.series");
    fs::write(&p, "x1 + * x2").unwrap();
    assert_eq!(npf(&["parse", "--input", p.to_str().unwrap()]).0, 3);
    // Unknown flag.
    assert_eq!(npf(&["edges", "--input", "@node", "--frobnicate"]).0, 2);
    // Missing file.
    assert_eq!(npf(&["parse", "--input", "/nonexistent/x.series"]).0, 1);
}

#[test]
fn render_fig4() {
    let (code, out, _) = npf(&["render", "--input", "@fig4", "--format", "svg"]);
    assert_eq!(code, 0);
    assert_eq!(out.matches("class=\"compact loose\"").count(), 3);
    let (code, out, _) = npf(&["render", "--input", "@fig3"]);
    assert_eq!(code, 0);
    let j: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(j["compact_edges"].as_array().unwrap().len(), 3);
}

#[test]
fn screen_json() {
    let (code, out, _) = npf(&["screen", "--input", "@remark", "--trunc", "6", "--json"]);
    assert_eq!(code, 0);
    let j: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(j["status"], "ReducibleWithWitness");
    assert_eq!(j["witness"]["residual_zero"], true);
    let (_, out, _) = npf(&["screen", "--input", "@cusp", "--trunc", "6", "--json"]);
    assert!(out.contains("PassesNecessaryConditions"));
}

#[test]
fn grading_and_newton() {
    let (code, out, _) = npf(&["grading", "--direction", "2,3,-4"]);
    assert_eq!(code, 0);
    let j: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(j["direction"], serde_json::json!([2, 3, -4]));
    assert_eq!(j["basis"].as_array().unwrap().len(), 2);
    let (code, out, _) = npf(&["grading", "--edge", "(1,1,1);(2,2,0)"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"xi_sum\""));
    let (code, out, _) = npf(&["newton", "--input", "@fig2"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("4 vertices"));
}

#[test]
fn parse_round_trip_and_determinism() {
    let (_, text, _) = npf(&["parse", "--input", "@fig4"]);
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("f.series");
    fs::write(&p, &text).unwrap();
    let (code, again, _) = npf(&["parse", "--input", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(text, again);
    let (_, json1, _) = npf(&["parse", "--input", "@fig4", "--format", "json"]);
    let (_, json2, _) = npf(&["parse", "--input", "@fig4", "--format", "json"]);
    assert_eq!(json1, json2);
    let (_, r, _) = npf(&["restrict", "--input", "@remark", "--edge", "(2,2,0),(1,1,1)"]);
    assert_eq!(r.trim(), "x1*x2*x3 + x1^2*x2^2");
}
