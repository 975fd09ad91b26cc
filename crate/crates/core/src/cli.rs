//! Command-line front end. `run` is the whole program minus process exit,
//! so it can be driven from tests.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::acceptance::{format_line, run_all, DEFAULT_SEED};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::geometry::{primitive_direction, render, EdgeDescriptor, Polyhedron};
use crate::grading::{monic_in_last, Grading};
use crate::lifting::{lift, LiftMode, LiftRequest, LiftResult, Segment};
use crate::screen::{edge_split, reducibility_witness};
use crate::series::json::{to_json_string, to_json_value, SCHEMA};
use crate::series::{Exponent, Series, SeriesFile};

#[derive(Parser, Debug)]
#[command(name = "npf", version, about = "Newton polyhedra and loose-edge factorization of power series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a series and print it in canonical form.
    Parse(InputArgs),
    /// Vertices of the Newton polyhedron with their certificates.
    Newton(InputArgs),
    /// Compact edges with loose/descendant flags and restrictions.
    Edges(InputArgs),
    /// Restriction of the series to an edge.
    Restrict(RestrictArgs),
    /// Basis, rays and sample graded pieces of an edge grading.
    Grading(GradingArgs),
    /// Lift a split of the edge restriction to a factorization.
    Factor(FactorArgs),
    /// Monic (Weierstrass) lift along a descendant edge.
    FactorMonic(FactorArgs),
    /// Reducibility witness or necessary-condition report.
    Screen(ScreenArgs),
    /// SVG staircase (2 variables) or JSON mesh.
    Render(RenderArgs),
    /// Run the acceptance checks and print a pass/fail table.
    Selftest(SelftestArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Svg,
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Series file (text or JSON); `@name` selects a bundled fixture.
    #[arg(long)]
    input: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args, Debug)]
struct RestrictArgs {
    #[arg(long)]
    input: String,
    /// Edge endpoints, e.g. "1,1,1;2,2,0".
    #[arg(long)]
    edge: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args, Debug)]
struct GradingArgs {
    /// Segment endpoints, e.g. "1,1,1;2,2,0".
    #[arg(long, conflicts_with = "direction", required_unless_present = "direction")]
    edge: Option<String>,
    /// Primitive edge direction, e.g. "2,3,-4".
    #[arg(long, allow_hyphen_values = true)]
    direction: Option<String>,
    /// Sample pieces for the weights of all exponents up to this degree.
    #[arg(long, default_value_t = 2)]
    samples: i64,
}

#[derive(Args, Debug)]
struct FactorArgs {
    #[arg(long)]
    input: String,
    /// Loose edge "a;b"; defaults to the unique suitable loose edge.
    #[arg(long)]
    edge: Option<String>,
    /// Split "G || H" of the edge restriction; derived from it by default.
    #[arg(long)]
    split: Option<String>,
    #[arg(long)]
    trunc: u32,
    /// Writes `<stem>.g.<ext>` and `<stem>.h.<ext>`; a `.json` extension
    /// selects JSON.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Per-weight log of the graded recursion, as JSON.
    #[arg(long)]
    transcript: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args, Debug)]
struct ScreenArgs {
    #[arg(long)]
    input: String,
    #[arg(long)]
    trunc: u32,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct RenderArgs {
    #[arg(long)]
    input: String,
    /// Defaults to svg in two variables, json otherwise.
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SelftestArgs {
    /// Overrides NPF_SEED.
    #[arg(long)]
    seed: Option<u64>,
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Parse(a) => parse_cmd(a, out),
        Command::Newton(a) => newton_cmd(a, out),
        Command::Edges(a) => edges_cmd(a, out),
        Command::Restrict(a) => restrict_cmd(a, out),
        Command::Grading(a) => grading_cmd(a, out),
        Command::Factor(a) => factor_cmd(a, LiftMode::General, out),
        Command::FactorMonic(a) => factor_cmd(a, LiftMode::Monic, out),
        Command::Screen(a) => screen_cmd(a, out),
        Command::Render(a) => render_cmd(a, out),
        Command::Selftest(a) => selftest_cmd(a, out),
    }
}

fn read_input(spec: &str) -> Result<SeriesFile> {
    if let Some(name) = spec.strip_prefix('@') {
        return fixtures::load(name);
    }
    SeriesFile::parse(&std::fs::read_to_string(spec)?)
}

fn no_svg(f: Format) -> Result<()> {
    if f == Format::Svg {
        return Err(Error::Precondition("svg output is only available from `render`".into()));
    }
    Ok(())
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn ratio_strings(v: &[num_rational::BigRational]) -> Vec<String> {
    v.iter().map(|q| format!("{}/{}", q.numer(), q.denom())).collect()
}

/// Integers of `s`, ignoring brackets and separators.
fn integers(s: &str) -> Result<Vec<i64>> {
    s.split(|c: char| !(c.is_ascii_digit() || c == '-'))
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse().map_err(|_| Error::Syntax { position: 0, message: format!("bad integer '{t}' in '{s}'") })
        })
        .collect()
}

/// `"a;b"`, `"(1,1,1),(2,2,0)"` and friends: with a `;` the halves are the
/// endpoints, otherwise the integers are split evenly.
fn parse_edge(s: &str, n: usize) -> Result<(Exponent, Exponent)> {
    let (a, b) = match s.split_once(';') {
        Some((x, y)) => (integers(x)?, integers(y)?),
        None => {
            let all = integers(s)?;
            let (x, y) = all.split_at(all.len() / 2);
            (x.to_vec(), y.to_vec())
        }
    };
    if a.len() != n || b.len() != n {
        return Err(Error::Syntax {
            position: 0,
            message: format!("edge '{s}' needs two exponents with {n} entries each"),
        });
    }
    if a.iter().chain(&b).any(|&x| x < 0) {
        return Err(Error::NegativeExponent { position: 0 });
    }
    Ok((Exponent(a), Exponent(b)))
}

fn edge_text(e: &EdgeDescriptor) -> String {
    format!("[{},{}]", e.a, e.b)
}

fn segment_text(s: &Segment) -> String {
    format!("[{},{}]", s.start, s.end)
}

fn parse_cmd(a: InputArgs, out: &mut dyn Write) -> Result<i32> {
    no_svg(a.format)?;
    let file = read_input(&a.input)?;
    match a.format {
        Format::Json => writeln!(out, "{}", to_json_string(&file))?,
        _ => write!(out, "{}", file.to_text())?,
    }
    Ok(0)
}

fn newton_cmd(a: InputArgs, out: &mut dyn Write) -> Result<i32> {
    no_svg(a.format)?;
    let file = read_input(&a.input)?;
    let p = Polyhedron::new(&file.series)?;
    let cert = |v: &Exponent| ratio_strings(p.certificate(v).unwrap_or(&[]));
    match a.format {
        Format::Json => {
            let verts: Vec<Value> =
                p.vertices().iter().map(|v| json!({"point": v, "certificate": cert(v)})).collect();
            let j = json!({
                "schema": SCHEMA,
                "dimension": p.n(),
                "support_size": p.support().len(),
                "vertices": verts,
            });
            write!(out, "{}", pretty(&j))?;
        }
        _ => {
            writeln!(out, "{} vertices, {} support points", p.vertices().len(), p.support().len())?;
            for v in p.vertices() {
                writeln!(out, "{v} xi=({})", cert(v).join(","))?;
            }
        }
    }
    Ok(0)
}

fn edges_cmd(a: InputArgs, out: &mut dyn Write) -> Result<i32> {
    no_svg(a.format)?;
    let file = read_input(&a.input)?;
    let p = Polyhedron::new(&file.series)?;
    let edges = p.compact_edges();
    let restr = |e: &EdgeDescriptor| file.series.restrict_to_segment(&e.a, &e.b);
    match a.format {
        Format::Json => {
            let list: Vec<Value> = edges
                .iter()
                .map(|e| {
                    json!({
                        "a": e.a, "b": e.b, "c": e.c,
                        "loose": e.loose, "descendant": e.descendant,
                        "restriction": file.format(&restr(e)),
                    })
                })
                .collect();
            let j = json!({
                "schema": SCHEMA,
                "compact_edges": list,
                "loose_count": edges.iter().filter(|e| e.loose).count(),
            });
            write!(out, "{}", pretty(&j))?;
        }
        _ => {
            for e in &edges {
                writeln!(
                    out,
                    "{} c=({}) loose={} descendant={} f|_E = {}",
                    edge_text(e),
                    e.c.iter().map(i64::to_string).collect::<Vec<_>>().join(","),
                    e.loose,
                    e.descendant,
                    file.format(&restr(e))
                )?;
            }
            let loose = edges.iter().filter(|e| e.loose).count();
            writeln!(out, "{} compact edges, {loose} loose", edges.len())?;
        }
    }
    Ok(0)
}

fn restrict_cmd(a: RestrictArgs, out: &mut dyn Write) -> Result<i32> {
    no_svg(a.format)?;
    let file = read_input(&a.input)?;
    let (x, y) = parse_edge(&a.edge, file.series.n())?;
    let e = Polyhedron::new(&file.series)?.edge(&x, &y)?;
    let r = SeriesFile::new(file.series.restrict_to_segment(&e.a, &e.b).as_polynomial(), Some(file.vars.clone()));
    match a.format {
        Format::Json => writeln!(out, "{}", to_json_string(&r))?,
        _ => writeln!(out, "{}", r.format(&r.series))?,
    }
    Ok(0)
}

fn grading_cmd(a: GradingArgs, out: &mut dyn Write) -> Result<i32> {
    let c = match (&a.edge, &a.direction) {
        (Some(e), _) => {
            let n = integers(e)?.len() / 2;
            let (x, y) = parse_edge(e, n)?;
            if x == y {
                return Err(Error::Precondition("edge endpoints coincide".into()));
            }
            primitive_direction(&x, &y)
        }
        (None, Some(d)) => integers(d)?,
        (None, None) => unreachable!("clap requires one of them"),
    };
    let gr = Grading::from_direction(&c)?;
    let n = gr.n();
    let mut weights = Vec::new();
    let mut e = vec![0i64; n];
    collect_weights(&gr, 0, a.samples.max(0), &mut e, &mut weights);
    weights.sort_by(|x, y| crate::grading::weight_order(x, y));
    weights.dedup();
    let pieces: Vec<Value> = weights
        .iter()
        .map(|w| {
            let p = gr.graded_piece(w);
            json!({"weight": w, "dim": p.dim(), "points": p.points})
        })
        .collect();
    let j = json!({
        "schema": SCHEMA,
        "direction": gr.direction(),
        "basis": gr.basis(),
        "completion": gr.completion(),
        "rays": gr.rays(),
        "xi_sum": gr.xi_sum(),
        "pieces": pieces,
    });
    write!(out, "{}", pretty(&j))?;
    Ok(0)
}

fn collect_weights(gr: &Grading, k: usize, left: i64, e: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if k == e.len() {
        out.push(gr.weight(&Exponent(e.clone())));
        return;
    }
    for v in 0..=left {
        e[k] = v;
        collect_weights(gr, k + 1, left - v, e, out);
    }
    e[k] = 0;
}

/// The unique loose edge (descendant for Monic mode).
fn auto_edge(p: &Polyhedron, mode: LiftMode) -> Result<EdgeDescriptor> {
    let mut cands: Vec<EdgeDescriptor> =
        p.loose_edges().into_iter().filter(|e| mode == LiftMode::General || e.descendant).collect();
    match cands.len() {
        0 => Err(Error::NoLooseEdge),
        1 => Ok(cands.remove(0)),
        _ => Err(Error::AmbiguousEdge),
    }
}

fn parse_split(file: &SeriesFile, s: &str) -> Result<(Series, Series)> {
    let Some((g, h)) = s.split_once("||") else {
        return Err(Error::Syntax { position: 0, message: "split must have the form 'G || H'".into() });
    };
    Ok((file.parse_in_ring(g.trim())?, file.parse_in_ring(h.trim())?))
}

fn auto_split(f: &Series, edge: &EdgeDescriptor, mode: LiftMode) -> Result<(Series, Series)> {
    let Some((g, h, _)) = edge_split(f, edge)? else {
        return Err(Error::Precondition(
            "the edge restriction is a power of one irreducible; pass --split explicitly".into(),
        ));
    };
    if mode == LiftMode::Monic && !monic_in_last(&g) && monic_in_last(&h) {
        return Ok((h, g));
    }
    Ok((g, h))
}

/// `dir/stem.g.ext`, `dir/stem.h.ext` for `dir/stem.ext`.
fn factor_paths(p: &Path) -> (PathBuf, PathBuf, bool) {
    let ext = p.extension().and_then(|e| e.to_str()).unwrap_or("series").to_string();
    let stem = p.file_stem().and_then(|s| s.to_str()).unwrap_or("factor").to_string();
    let dir = p.parent().unwrap_or(Path::new(""));
    (dir.join(format!("{stem}.g.{ext}")), dir.join(format!("{stem}.h.{ext}")), ext == "json")
}

fn factor_cmd(a: FactorArgs, mode: LiftMode, out: &mut dyn Write) -> Result<i32> {
    no_svg(a.format)?;
    let file = read_input(&a.input)?;
    let f = &file.series;
    let p = Polyhedron::new(f)?;
    let edge = match &a.edge {
        Some(s) => {
            let (x, y) = parse_edge(s, f.n())?;
            p.edge(&x, &y)?
        }
        None => auto_edge(&p, mode)?,
    };
    let (g, h) = match &a.split {
        Some(s) => parse_split(&file, s)?,
        None => auto_split(f, &edge, mode)?,
    };
    let req = LiftRequest { f: f.clone(), edge, g, h, truncation: a.trunc, mode };
    let res = lift(&req)?;
    let wrap = |s: &Series| SeriesFile::new(s.clone(), Some(file.vars.clone()));
    if let Some(path) = &a.out {
        let (gp, hp, as_json) = factor_paths(path);
        for (p, s) in [(&gp, &res.g), (&hp, &res.h)] {
            let body = if as_json { to_json_string(&wrap(s)) + "\n" } else { wrap(s).to_text() };
            std::fs::write(p, body)?;
        }
    }
    if let Some(path) = &a.transcript {
        std::fs::write(path, pretty(&res.transcript_json()))?;
    }
    match a.format {
        Format::Json => {
            let j = json!({
                "schema": SCHEMA,
                "mode": res.mode,
                "edge": req.edge,
                "split": {"G": file.format(&res.split_g), "H": file.format(&res.split_h)},
                "g": to_json_value(&wrap(&res.g)),
                "h": to_json_value(&wrap(&res.h)),
                "e1": res.e1,
                "e2": res.e2,
                "truncation": a.trunc,
                "internal_horizon": res.internal_horizon,
                "residual_zero": res.residual.is_zero(),
            });
            write!(out, "{}", pretty(&j))?;
        }
        _ => write_lift_text(out, &file, &req.edge, &res, a.trunc)?,
    }
    Ok(0)
}

fn write_lift_text(out: &mut dyn Write, file: &SeriesFile, edge: &EdgeDescriptor, res: &LiftResult, d: u32) -> Result<()> {
    writeln!(out, "edge {}", edge_text(edge))?;
    writeln!(out, "G = {}", file.format(&res.split_g))?;
    writeln!(out, "H = {}", file.format(&res.split_h))?;
    writeln!(out, "g = {}", file.format(&res.g))?;
    writeln!(out, "h = {}", file.format(&res.h))?;
    writeln!(out, "E1 = {}  E2 = {}", segment_text(&res.e1), segment_text(&res.e2))?;
    writeln!(out, "truncation {d}, internal horizon {}", res.internal_horizon)?;
    let r = if res.residual.is_zero() { "0".to_string() } else { file.format(&res.residual) };
    writeln!(out, "residual {r}")?;
    Ok(())
}

fn screen_cmd(a: ScreenArgs, out: &mut dyn Write) -> Result<i32> {
    let file = read_input(&a.input)?;
    let v = reducibility_witness(&file.series, a.trunc)?;
    if a.json {
        write!(out, "{}", pretty(&v.to_json()))?;
        return Ok(0);
    }
    let r = &v.report;
    writeln!(out, "status {}", serde_json::to_value(v.status).expect("serializable").as_str().unwrap_or(""))?;
    writeln!(out, "{} vertices, {} compact edges, {} loose", r.vertex_count, r.compact_edge_count, r.loose_edge_count)?;
    if let Some(e) = &r.chosen_edge {
        writeln!(out, "edge {}", edge_text(e))?;
    }
    if let Some(w) = &v.witness {
        writeln!(out, "split {:?}: G = {}, H = {}", w.source, file.format(&w.g), file.format(&w.h))?;
        writeln!(out, "g = {}", file.format(&w.lift.g))?;
        writeln!(out, "h = {}", file.format(&w.lift.h))?;
        writeln!(out, "residual 0 mod degree > {}", a.trunc)?;
    }
    if let Some(nc) = &r.necessary {
        writeln!(out, "unique compact edge: {}", nc.unique_compact_edge)?;
        writeln!(out, "edge polynomial {} is c*F^k: {}", nc.edge_polynomial, nc.edge_poly_is_cfk)?;
        if let Some((base, k)) = &nc.irreducible_base {
            writeln!(out, "F = {base}, k = {k}")?;
        }
        writeln!(out, "binomial power form: {}", nc.binomial_power_form)?;
    }
    Ok(0)
}

fn render_cmd(a: RenderArgs, out: &mut dyn Write) -> Result<i32> {
    let file = read_input(&a.input)?;
    let p = Polyhedron::new(&file.series)?;
    let edges = p.compact_edges();
    let fmt = a.format.unwrap_or(if p.n() == 2 { Format::Svg } else { Format::Json });
    let body = match fmt {
        Format::Svg => render::svg(&p, &edges)?,
        Format::Json => pretty(&render::mesh(&p, &edges)),
        Format::Text => return Err(Error::Precondition("render supports svg and json".into())),
    };
    match &a.out {
        Some(path) => std::fs::write(path, body)?,
        None => write!(out, "{body}")?,
    }
    Ok(0)
}

fn selftest_cmd(a: SelftestArgs, out: &mut dyn Write) -> Result<i32> {
    let seed = a
        .seed
        .or_else(|| std::env::var("NPF_SEED").ok().and_then(|s| s.parse().ok()))
        .unwrap_or(DEFAULT_SEED);
    writeln!(out, "selftest (seed {seed})")?;
    let outcomes = run_all(seed);
    for o in &outcomes {
        writeln!(out, "{}", format_line(o))?;
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    writeln!(out, "{} passed, {failed} failed", outcomes.len() - failed)?;
    Ok(if failed == 0 { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_syntax() {
        let (a, b) = parse_edge("(1,1,1);(2,2,0)", 3).unwrap();
        assert_eq!((a.0, b.0), (vec![1, 1, 1], vec![2, 2, 0]));
        let (a, b) = parse_edge("[(0,2),(2,0)]", 2).unwrap();
        assert_eq!((a.0, b.0), (vec![0, 2], vec![2, 0]));
        assert!(parse_edge("1,2;3", 2).is_err());
    }

    #[test]
    fn out_paths() {
        let (g, h, j) = factor_paths(Path::new("d/node.json"));
        assert_eq!((g, h, j), (PathBuf::from("d/node.g.json"), PathBuf::from("d/node.h.json"), true));
        let (g, _, j) = factor_paths(Path::new("node"));
        assert_eq!((g, j), (PathBuf::from("node.g.series"), false));
    }
}
