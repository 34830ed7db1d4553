//! Command-line front end. `run` parses arguments, executes one command and
//! returns the exit code with the rendered report.
//!
//! Exit codes: 0 when every check passes, 1 when a check or fixture fails,
//! 2 for bad arguments or unreadable input.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use rand::SeedableRng;
use serde_json::{json, Value};

use crate::combinatorics::{check_ground, Rational, Subset};
use crate::delta_matroid::{closure_order, group_elements, DeltaMatroid};
use crate::error::{Error, Result};
use crate::fan5::{load_sigma5, n4_invariance_check, n4_ray_sum};
use crate::fixtures::{AppendixEntry, FixtureSource};
use crate::polyhedra::{edge_oracle, exchange_oracle, regular_subdivision, Cell, Subdivision, WeightVector};
use crate::strata::certify_smooth;
use crate::wick::{
    check_cayley, check_circuits, check_plucker_products, check_quadrics, matroid_of_wick, wick_vector, SkewMatrix,
};

#[derive(Parser, Debug)]
#[command(name = "spinortrop", version, about = "Exact checks on even delta-matroids, Wick vectors and the fan of TS(5)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Args, Debug)]
struct Output {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct Fixtures {
    /// Directory replacing the bundled fixtures.
    #[arg(long, value_name = "DIR")]
    fixtures: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Regular subdivision of Δ(n) induced by a weight vector.
    Subdivide {
        #[arg(long, default_value_t = 5)]
        n: usize,
        /// JSON map over E(n), a ray sum such as r3+r4+r6+r9, or @FILE.
        #[arg(long)]
        weights: String,
        #[command(flatten)]
        out: Output,
    },
    /// Smoothness certificate for a subdivision given by weights or by
    /// reference index.
    Certify {
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, conflicts_with = "index")]
        weights: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        index: Option<i32>,
        #[command(flatten)]
        fixtures: Fixtures,
        #[command(flatten)]
        out: Output,
    },
    /// Recompute the reference subdivisions of Δ(5) and compare.
    VerifyAppendix {
        #[arg(long, allow_hyphen_values = true)]
        index: Option<i32>,
        #[command(flatten)]
        fixtures: Fixtures,
        #[command(flatten)]
        out: Output,
    },
    /// Gale-rank certificates, dimensions, star gluing and the n = 4 check.
    VerifyFan {
        #[command(flatten)]
        out: Output,
    },
    /// Recompute the two nontrivial subdivisions of Δ(4) and compare.
    VerifyTable2 {
        #[command(flatten)]
        fixtures: Fixtures,
        #[command(flatten)]
        out: Output,
    },
    /// Quadric and circuit identities on one matrix or on random samples.
    WickCheck {
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Skew matrix as JSON ({"n":5,"entries":{"01":"3/2",...}}) or @FILE.
        #[arg(long)]
        matrix: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Face counts of Σ₅ and their orbits under G₅.
    Orbits {
        #[command(flatten)]
        out: Output,
    },
}

struct Report {
    pass: bool,
    json: Value,
    text: String,
    dot: Option<String>,
}

/// Parses `argv` (including the program name), runs the command and
/// returns `(exit code, output)`.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            return (code, e.render().to_string());
        }
    };
    let format = match &cli.command {
        Command::Subdivide { out, .. }
        | Command::Certify { out, .. }
        | Command::VerifyAppendix { out, .. }
        | Command::VerifyFan { out }
        | Command::VerifyTable2 { out, .. }
        | Command::WickCheck { out, .. }
        | Command::Orbits { out } => out.format,
    };
    match execute(cli.command) {
        Ok(rep) => {
            let code = if rep.pass { 0 } else { 1 };
            match format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&rep.json).expect("report serializes");
                    s.push('\n');
                    (code, s)
                }
                Format::Text => (code, rep.text),
                Format::Dot => match rep.dot {
                    Some(d) => (code, d),
                    None => (2, "error: this command has no graph output; use --format json or text\n".into()),
                },
            }
        }
        Err(e) => {
            let code = if matches!(e, Error::Fixture(_)) { 1 } else { 2 };
            (code, format!("error: {e}\n"))
        }
    }
}

fn execute(cmd: Command) -> Result<Report> {
    match cmd {
        Command::Subdivide { n, weights, .. } => subdivide(n, &weights),
        Command::Certify {
            n,
            weights,
            index,
            fixtures,
            ..
        } => certify(n, weights.as_deref(), index, &FixtureSource::resolve(fixtures.fixtures.as_deref())),
        Command::VerifyAppendix { index, fixtures, .. } => {
            verify_appendix(index, &FixtureSource::resolve(fixtures.fixtures.as_deref()))
        }
        Command::VerifyFan { .. } => verify_fan(),
        Command::VerifyTable2 { fixtures, .. } => verify_table2(&FixtureSource::resolve(fixtures.fixtures.as_deref())),
        Command::WickCheck {
            n,
            samples,
            seed,
            matrix,
            ..
        } => wick_check(n, samples, seed, matrix.as_deref()),
        Command::Orbits { .. } => orbits(),
    }
}

/// Reads `@FILE` arguments; anything else is returned as is.
fn read_arg(text: &str) -> Result<String> {
    match text.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{path}: {e}"))),
        None => Ok(text.to_string()),
    }
}

/// A JSON map over `E(n)`, `0`, or a sum of ray names `rK`, optionally with
/// integer multiples `2r3`.
pub fn parse_weights(n: usize, text: &str) -> Result<WeightVector> {
    check_ground(n)?;
    let text = read_arg(text)?;
    let t = text.trim();
    if t.starts_with('{') {
        let v: Value = serde_json::from_str(t).map_err(|e| Error::Invalid(format!("weights: {e}")))?;
        return WeightVector::from_json(n, &v);
    }
    if t == "0" {
        return Ok(WeightVector::zero(&DeltaMatroid::full(n)?));
    }
    let mut rays = Vec::new();
    for term in t.split('+') {
        let term = term.trim();
        let (mult, ray) = match term.find('r') {
            Some(0) => (1usize, &term[1..]),
            Some(p) => (
                term[..p]
                    .trim_end_matches('*')
                    .parse()
                    .map_err(|_| Error::Invalid(format!("weight term {term:?}")))?,
                &term[p + 1..],
            ),
            None => return Err(Error::Invalid(format!("weight term {term:?}"))),
        };
        let k: usize = ray.parse().map_err(|_| Error::Invalid(format!("weight term {term:?}")))?;
        rays.extend(std::iter::repeat_n(k, mult));
    }
    match n {
        4 => n4_ray_sum(&rays),
        5 => load_sigma5().ray_sum(&rays),
        _ => Err(Error::Invalid("ray sums are defined for n = 4 and n = 5".into())),
    }
}

fn subdivision_text(sub: &Subdivision) -> String {
    let mut s = String::new();
    for (i, c) in sub.cells().iter().enumerate() {
        s.push_str(&format!("M{i}: {{{}}}\n", c.strings().join(", ")));
    }
    let edges: Vec<String> = sub.graph_edges().iter().map(|(i, j)| format!("{i}-{j}")).collect();
    s.push_str(&format!("edges: {}\n", edges.join(" ")));
    s
}

fn subdivide(n: usize, weights: &str) -> Result<Report> {
    let w = parse_weights(n, weights)?;
    let sub = regular_subdivision(&DeltaMatroid::full(n)?, &w)?;
    let mut json = sub.to_json();
    json["matroidal"] = json!(sub.is_matroidal());
    let mut text = subdivision_text(&sub);
    text.push_str(&format!("matroidal: {}\n", sub.is_matroidal()));
    Ok(Report {
        pass: true,
        json,
        text,
        dot: Some(sub.to_dot("subdivision")),
    })
}

fn certify(n: usize, weights: Option<&str>, index: Option<i32>, src: &FixtureSource) -> Result<Report> {
    let sub = match (weights, index) {
        (Some(w), None) => regular_subdivision(&DeltaMatroid::full(n)?, &parse_weights(n, w)?)?,
        (None, Some(i)) => appendix_entry(src, i)?.subdivision()?,
        _ => return Err(Error::Invalid("certify needs exactly one of --weights and --index".into())),
    };
    if !sub.is_matroidal() {
        return Ok(Report {
            pass: false,
            json: json!({ "matroidal": false }),
            text: "subdivision is not matroidal\n".into(),
            dot: Some(sub.to_dot("subdivision")),
        });
    }
    let cert = certify_smooth(&sub)?;
    let verified = cert.verify(&sub);
    let mut json = cert.to_json();
    json["verified"] = json!(verified);
    json["cells"] = json!(sub.cells().len());
    let mut text = format!("{cert}\nwitness re-checked: {verified}\n");
    if let crate::strata::Certificate::Undecided { presentation, .. } = &cert {
        text.push_str(&presentation.to_string());
    }
    Ok(Report {
        pass: verified,
        json,
        text,
        dot: Some(sub.to_dot("subdivision")),
    })
}

fn appendix_entry(src: &FixtureSource, index: i32) -> Result<AppendixEntry> {
    src.appendix()?
        .entry(index)
        .cloned()
        .ok_or_else(|| Error::Invalid(format!("no reference subdivision {index}")))
}

fn cell_set(cells: &[Cell]) -> BTreeSet<Vec<Subset>> {
    cells.iter().map(|c| c.label.clone()).collect()
}

fn edge_set(edges: impl IntoIterator<Item = (usize, usize)>) -> BTreeSet<(usize, usize)> {
    edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect()
}

/// Comparison of a computed subdivision with a reference cell list.
struct Comparison {
    cells_match: bool,
    missing: Vec<Vec<String>>,
    extra: Vec<Vec<String>>,
    oracles: bool,
    edges_match: bool,
    ordered: Option<Subdivision>,
}

fn compare(computed: &Subdivision, reference: &[Cell], edges: &[[usize; 2]]) -> Comparison {
    let got = cell_set(computed.cells());
    let want = cell_set(reference);
    let strings = |c: &Vec<Subset>| c.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let missing: Vec<_> = want.difference(&got).map(strings).collect();
    let extra: Vec<_> = got.difference(&want).map(strings).collect();
    let n = computed.n();
    let oracles = computed.cells().iter().all(|c| exchange_oracle(n, c) && edge_oracle(c));
    let cells_match = missing.is_empty() && extra.is_empty();
    let (edges_match, ordered) = if cells_match {
        let ordered = Subdivision::from_cells(computed.matroid().clone(), reference.to_vec());
        let ok = edge_set(ordered.graph_edges()) == edge_set(edges.iter().map(|e| (e[0], e[1])));
        (ok, Some(ordered))
    } else {
        (false, None)
    };
    Comparison {
        cells_match,
        missing,
        extra,
        oracles,
        edges_match,
        ordered,
    }
}

fn verify_appendix(index: Option<i32>, src: &FixtureSource) -> Result<Report> {
    let fixture = src.appendix()?;
    let s5 = load_sigma5();
    let full = DeltaMatroid::full(5)?;
    let entries: Vec<&AppendixEntry> = match index {
        Some(i) => vec![fixture
            .entry(i)
            .ok_or_else(|| Error::Invalid(format!("no reference subdivision {i}")))?],
        None => fixture.subdivisions.iter().collect(),
    };
    let mut pass = true;
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut dot = String::new();
    for e in entries {
        let w = s5.ray_sum(&e.rays)?;
        let computed = regular_subdivision(&full, &w)?;
        let cmp = compare(&computed, &e.cell_list(), &e.edges);
        let ok = cmp.cells_match && cmp.oracles && cmp.edges_match;
        pass &= ok;
        let errata: Vec<Value> = e
            .errata
            .iter()
            .map(|x| {
                json!({
                    "cell": x.cell,
                    "printed": x.printed.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                    "reason": x.reason,
                })
            })
            .collect();
        rows.push(json!({
            "index": e.index,
            "rays": e.rays,
            "cells": computed.cells().len(),
            "cells_match": cmp.cells_match,
            "missing": cmp.missing,
            "extra": cmp.extra,
            "oracles": cmp.oracles,
            "edges_match": cmp.edges_match,
            "errata": errata,
            "pass": ok,
        }));
        text.push_str(&format!(
            "subdivision {:>2}: {} ({} cells, cells {}, oracles {}, edges {}{})\n",
            e.index,
            if ok { "PASS" } else { "FAIL" },
            computed.cells().len(),
            yes(cmp.cells_match),
            yes(cmp.oracles),
            yes(cmp.edges_match),
            if e.errata.is_empty() { "" } else { ", erratum applied" },
        ));
        let shown = cmp.ordered.as_ref().unwrap_or(&computed);
        dot.push_str(&shown.to_dot(&format!("subdivision {}", e.index)));
    }
    Ok(Report {
        pass,
        json: json!({ "command": "verify-appendix", "pass": pass, "subdivisions": rows }),
        text,
        dot: Some(dot),
    })
}

fn yes(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "mismatch"
    }
}

fn verify_table2(src: &FixtureSource) -> Result<Report> {
    let fixture = src.table2()?;
    let full = DeltaMatroid::full(4)?;
    let mut pass = true;
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut dot = String::new();
    for e in &fixture.subdivisions {
        let computed = regular_subdivision(&full, &n4_ray_sum(&e.rays)?)?;
        let cmp = compare(&computed, &e.cell_list(), &e.edges);
        let ok = cmp.cells_match && cmp.oracles && cmp.edges_match;
        pass &= ok;
        rows.push(json!({
            "name": e.name,
            "cells_match": cmp.cells_match,
            "missing": cmp.missing,
            "extra": cmp.extra,
            "oracles": cmp.oracles,
            "edges_match": cmp.edges_match,
            "pass": ok,
        }));
        text.push_str(&format!(
            "w = {}: {} (cells {}, oracles {}, edges {})\n",
            e.name,
            if ok { "PASS" } else { "FAIL" },
            yes(cmp.cells_match),
            yes(cmp.oracles),
            yes(cmp.edges_match)
        ));
        dot.push_str(&cmp.ordered.as_ref().unwrap_or(&computed).to_dot(&e.name));
    }
    Ok(Report {
        pass,
        json: json!({ "command": "verify-table2", "pass": pass, "subdivisions": rows }),
        text,
        dot: Some(dot),
    })
}

fn verify_fan() -> Result<Report> {
    let s5 = load_sigma5();
    let mut gale = Vec::new();
    let mut text = String::new();
    let mut gale_ok = true;
    for rep in s5.representatives() {
        if let Some(r) = s5.gale_rank_check(rep.index)? {
            gale_ok &= r.pass;
            text.push_str(&format!(
                "Gale rank τ{}: rank {} expected {} {}\n",
                r.row,
                r.rank,
                r.expected,
                if r.pass { "PASS" } else { "FAIL" }
            ));
            gale.push(r);
        }
    }
    let dims = s5.dim_consistency();
    let dims_ok = dims.iter().all(|(_, want, got)| want == got);
    text.push_str(&format!("dimensions: {}\n", if dims_ok { "PASS" } else { "FAIL" }));
    let glue = s5.glue_check()?;
    text.push_str(&format!("star gluing: {}\n", if glue.pass() { "PASS" } else { "FAIL" }));
    let n4 = n4_invariance_check()?;
    text.push_str(&format!("n = 4 functionals: {}\n", if n4.pass() { "PASS" } else { "FAIL" }));
    let pass = gale_ok && dims_ok && glue.pass() && n4.pass();
    let json = json!({
        "command": "verify-fan",
        "pass": pass,
        "gale": gale,
        "dimensions": dims.iter().map(|(r, w, g)| json!({ "row": r, "expected": w, "span": g })).collect::<Vec<_>>(),
        "dimensions_ok": dims_ok,
        "glue": glue,
        "glue_ok": glue.pass(),
        "n4": n4,
        "n4_ok": n4.pass(),
    });
    Ok(Report {
        pass,
        json,
        text,
        dot: None,
    })
}

fn wick_check(n: usize, samples: usize, seed: u64, matrix: Option<&str>) -> Result<Report> {
    check_ground(n)?;
    let matrices: Vec<SkewMatrix<Rational>> = match matrix {
        Some(m) => {
            let v: Value =
                serde_json::from_str(read_arg(m)?.trim()).map_err(|e| Error::Invalid(format!("matrix: {e}")))?;
            vec![SkewMatrix::from_json(&v)?]
        }
        None => {
            if n > 6 {
                return Err(Error::Invalid("random samples are limited to n <= 6".into()));
            }
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            (0..samples).map(|_| SkewMatrix::random(n, &mut rng, 9, 5)).collect()
        }
    };
    let mut counts = [0usize; 5];
    let mut single = Value::Null;
    for x in &matrices {
        let q = wick_vector(x);
        let m = matroid_of_wick(&q)?;
        let checks = [
            check_quadrics(&q),
            m.satisfies_exchange() && m.is_even(),
            check_cayley(x),
            check_plucker_products(x),
            check_circuits(x).pass(),
        ];
        for (c, ok) in counts.iter_mut().zip(checks) {
            *c += ok as usize;
        }
        if matrices.len() == 1 {
            single = json!({
                "q": q.entries().into_iter()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(s, v)| (s.to_string(), json!(crate::combinatorics::format_rational(&v))))
                    .collect::<serde_json::Map<_, _>>(),
                "matroid": m.sorted_strings(),
            });
        }
    }
    let total = matrices.len();
    let names = ["quadrics", "even_delta_matroid", "cayley", "plucker_products", "circuits"];
    let pass = counts.iter().all(|&c| c == total);
    let mut text = String::new();
    let mut passed = serde_json::Map::new();
    for (name, c) in names.iter().zip(counts) {
        text.push_str(&format!("{name}: {c}/{total}\n"));
        passed.insert(name.to_string(), json!(c));
    }
    Ok(Report {
        pass,
        json: json!({ "command": "wick-check", "pass": pass, "samples": total, "passed": passed, "matrix": single }),
        text,
        dot: None,
    })
}

fn orbits() -> Result<Report> {
    let s5 = load_sigma5();
    let rep = s5.orbit_fvector()?;
    let order = group_elements(5)?.len();
    let closure = closure_order(5)?;
    let mut by_dim = vec![0usize; rep.fvector.len()];
    for &(row, size) in &rep.orbit_sizes {
        if let Some(r) = s5.representative(row) {
            let k = r.dim - 5;
            if k < by_dim.len() {
                by_dim[k] += size;
            }
        }
    }
    let sizes_ok = by_dim == rep.fvector;
    let pass = rep.representatives_inequivalent && sizes_ok && order == closure;
    let text = format!(
        "f-vector: {:?}\norbits per dimension: {:?}\n|G5| = {} (closure {})\norbit sizes sum to f-vector: {}\n",
        rep.fvector, rep.orbit_counts, order, closure, sizes_ok
    );
    Ok(Report {
        pass,
        json: json!({
            "command": "orbits",
            "pass": pass,
            "fvector": rep.fvector,
            "orbit_counts": rep.orbit_counts,
            "orbit_sizes": rep.orbit_sizes,
            "representatives_inequivalent": rep.representatives_inequivalent,
            "group_order": order,
            "closure_order": closure,
        }),
        text,
        dot: None,
    })
}
