use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use torusknot::census::{
    build_census_logged, emit, parse_expected, render_svg, stats, verify_expected, EmitFormat, EXPECTED_POLYS,
};
use torusknot::enumerate::{dedupe_projections, enum_graphs, enum_shadows, fingerprint_text, is_prime};
use torusknot::invariant::{canonical_invariant, graded_x, kauffman_x, resolve_state, State};
use torusknot::moves::{equivalence_search, simplify, SearchOutcome};
use torusknot::{decode_diagram, encode_diagram, TorusDiagram};

#[derive(Parser)]
#[command(name = "torusknot", version, about = "Knots in the thickened torus with few crossings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the connected 4-regular multigraphs with at most N vertices.
    EnumGraphs {
        #[arg(long, default_value_t = 4)]
        max_vertices: usize,
    },
    /// List torus projections with exactly N crossings.
    EnumProjections {
        #[arg(long)]
        crossings: usize,
        /// Include local and composite projections.
        #[arg(long)]
        all: bool,
        /// Print a JSON summary instead of one line per projection.
        #[arg(long)]
        json: bool,
    },
    /// Compute X for a diagram given in TKC form.
    Invariant {
        code: String,
        /// Also list every state with its circle counts.
        #[arg(long)]
        verbose: bool,
    },
    /// Remove kinks and cancelling bigons greedily.
    Simplify { code: String },
    /// Search for a move sequence between two diagrams.
    Equiv {
        first: String,
        second: String,
        #[arg(long, default_value_t = 6)]
        max_crossings: usize,
        #[arg(long, default_value_t = 200_000)]
        max_steps: usize,
    },
    /// Build the knot table.
    Census {
        #[arg(long, default_value_t = 4)]
        max_crossings: usize,
        /// JSON output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also print the table in this format on stdout.
        #[arg(long, value_enum)]
        emit: Option<Format>,
        /// Write one SVG per record into this directory.
        #[arg(long)]
        render_dir: Option<PathBuf>,
        /// Expected polynomials (`label: poly` lines), or `builtin`.
        #[arg(long)]
        verify: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Latex,
}

fn parse(code: &str) -> Result<TorusDiagram> {
    decode_diagram(code).with_context(|| format!("cannot read diagram {code:?}"))
}

fn enum_graphs_cmd(max_vertices: usize) -> Result<ExitCode> {
    if max_vertices > 4 {
        bail!("at most 4 vertices are supported");
    }
    for g in enum_graphs(max_vertices) {
        println!(
            "{} vertices={} loops={} max_multiplicity={} loop_or_multi_edge={}",
            g.graph_type().0,
            g.vertices(),
            g.loop_count(),
            g.max_multiplicity(),
            g.lemma1_check()
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn enum_projections_cmd(n: usize, all: bool, as_json: bool) -> Result<ExitCode> {
    if n > 4 {
        bail!("at most 4 crossings are supported");
    }
    let records = dedupe_projections(enum_shadows(n).into_iter().filter(|p| all || is_prime(p)));
    if as_json {
        let items: Vec<_> = records
            .iter()
            .map(|p| {
                json!({
                    "name": p.name,
                    "type": p.graph_type.0.to_string(),
                    "fingerprint": fingerprint_text(&p.fingerprint),
                    "prime": p.prime,
                    "key": p.key,
                    "tkc": torusknot::encode_projection(&p.projection),
                })
            })
            .collect();
        let summary = json!({ "crossings": n, "count": records.len(), "projections": items });
        println!("{}", serde_json::to_string_pretty(&summary)?);
    } else {
        for p in &records {
            println!(
                "{} type={} {} prime={} {}",
                p.name,
                p.graph_type.0,
                fingerprint_text(&p.fingerprint),
                p.prime,
                torusknot::encode_projection(&p.projection)
            );
        }
        println!("{} projections", records.len());
    }
    Ok(ExitCode::SUCCESS)
}

fn invariant_cmd(code: &str, verbose: bool) -> Result<ExitCode> {
    let d = parse(code)?;
    println!("X = {}", kauffman_x(&d));
    println!("canonical = {}", canonical_invariant(&d));
    println!("writhe = {}", d.writhe());
    println!("class = {}", d.knot_class());
    if verbose {
        let n = d.crossings();
        for bits in 0..1u64 << n {
            let s = State::from_index(n, bits);
            let r = resolve_state(&d, &s);
            let markers: String = s.markers.iter().map(|m| format!("{m:?}")).collect();
            println!("state {markers}: trivial={} essential={}", r.gamma, r.delta);
        }
        for (grade, p) in &graded_x(&d).0 {
            match grade {
                Some(k) => println!("grade {k}: {p}"),
                None => println!("grade -: {p}"),
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn equiv_cmd(a: &str, b: &str, max_crossings: usize, max_steps: usize) -> Result<ExitCode> {
    let (a, b) = (parse(a)?, parse(b)?);
    match equivalence_search(&a, &b, max_crossings, max_steps) {
        Ok(SearchOutcome::Equivalent { depth }) => {
            println!("equivalent (depth {depth})");
            Ok(ExitCode::SUCCESS)
        }
        Ok(SearchOutcome::NotFound) => {
            let separated = graded_x(&a).separates(&graded_x(&b));
            println!("not found within {max_crossings} crossings{}", if separated { "; invariants differ" } else { "" });
            Ok(ExitCode::from(1))
        }
        Err(e) => {
            println!("{e}");
            Ok(ExitCode::from(2))
        }
    }
}

fn census_cmd(
    max_crossings: usize,
    out: Option<PathBuf>,
    format: Option<Format>,
    render_dir: Option<PathBuf>,
    verify: Option<String>,
) -> Result<ExitCode> {
    let (table, log) = build_census_logged(max_crossings)?;
    let json_text = emit(&table, EmitFormat::Json);
    match &out {
        Some(path) => fs::write(path, &json_text).with_context(|| format!("writing {}", path.display()))?,
        None => println!("{json_text}"),
    }
    if let Some(f) = format {
        let f = match f {
            Format::Csv => EmitFormat::Csv,
            Format::Latex => EmitFormat::Latex,
        };
        print!("{}", emit(&table, f));
    }
    if let Some(dir) = &render_dir {
        fs::create_dir_all(dir)?;
        for r in &table.records {
            fs::write(dir.join(format!("{}.svg", r.name)), render_svg(&r.diagram))?;
        }
    }
    let s = stats(&table);
    eprintln!(
        "{} knots from {} projections (per crossing number {:?}); {} candidates, {} reducible, {} not minimal, {} merged, {} separated",
        s.records,
        s.projections,
        s.per_crossings,
        log.candidates,
        log.reducible,
        log.non_minimal,
        log.invariant_merges.len(),
        log.separated.len()
    );
    let mut ok = true;
    for (a, b) in &log.unresolved {
        eprintln!("unresolved pair: {a} / {b}");
        ok = false;
    }
    if let Some(source) = verify {
        let text = if source == "builtin" {
            EXPECTED_POLYS.to_string()
        } else {
            fs::read_to_string(&source).with_context(|| format!("reading {source}"))?
        };
        let expected = parse_expected(&text).map_err(|(line, e)| anyhow::anyhow!("{source}:{line}: {e}"))?;
        let report = verify_expected(&table, &expected);
        for (label, name, mirrored) in &report.matched {
            eprintln!("match {label} -> {name}{}", if *mirrored { " (mirror)" } else { "" });
        }
        eprintln!(
            "verified {} of {}; unmatched expected {:?}; unmatched records {:?}",
            report.matched.len(),
            expected.len(),
            report.unmatched_expected,
            report.unmatched_records
        );
        ok &= report.is_perfect();
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> Result<ExitCode> {
    match Cli::parse().command {
        Command::EnumGraphs { max_vertices } => enum_graphs_cmd(max_vertices),
        Command::EnumProjections { crossings, all, json } => enum_projections_cmd(crossings, all, json),
        Command::Invariant { code, verbose } => invariant_cmd(&code, verbose),
        Command::Simplify { code } => {
            println!("{}", encode_diagram(&simplify(&parse(&code)?)));
            Ok(ExitCode::SUCCESS)
        }
        Command::Equiv {
            first,
            second,
            max_crossings,
            max_steps,
        } => equiv_cmd(&first, &second, max_crossings, max_steps),
        Command::Census {
            max_crossings,
            out,
            emit,
            render_dir,
            verify,
        } => census_cmd(max_crossings, out, emit, render_dir, verify),
    }
}
