//! `finegraph`: classify cliques, measure widths, build witnesses and chain
//! certificates, and run the property suite.

mod io;
mod suite;
mod svg;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use finegraph::arc_graphs::{bouquet_chain, verify_chain};
use finegraph::fine_graph::{classify_clique3, is_edge, is_vertex, necklace_witness_f, refute_n, CliqueType, EdgeKind};
use finegraph::germs_width::{distance_path, germ_width, relative_width, Width, WidthResult};
use finegraph::surfaces::{SurfaceModel, TorusCurve};

use crate::io::{envelope, lift_of, InputError};

#[derive(Parser)]
#[command(name = "finegraph", version, about = "Exact computations in fine curve graphs of the torus and annuli")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Torus,
    Cannulus,
    Oannulus,
    Plane,
}

#[derive(Subcommand)]
enum Command {
    /// Edge tag of two curves or clique type of three.
    Classify {
        input: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Relative width and distance of two arcs, curves or germs.
    Width {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "cannulus")]
        model: Model,
        /// Also build an explicit shortest path.
        #[arg(long)]
        path: bool,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Witness set of a necklace, or a refuting curve for any other
    /// 3-clique (further curves are the alpha curves).
    Witness {
        input: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Bouquet chain certificate between the edges (a,b) and (a,c).
    Chain {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Re-check a chain certificate.
    VerifyChain { input: PathBuf },
    /// Run the seeded property suite.
    Suite {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Labeled edge fixture to check in addition to the built-in ones.
        #[arg(long = "fixture")]
        fixtures: Vec<PathBuf>,
    },
}

/// Failure with its exit status.
enum Fail {
    Violation(String),
    Parse(String),
    NotAVertex(String),
    InfiniteWidth,
    Other(String),
}

impl Fail {
    fn code(&self) -> u8 {
        match self {
            Fail::Violation(_) => 1,
            Fail::Parse(_) => 2,
            Fail::NotAVertex(_) => 3,
            Fail::InfiniteWidth => 4,
            Fail::Other(_) => 5,
        }
    }

    fn message(&self) -> String {
        match self {
            Fail::Violation(m) | Fail::Parse(m) | Fail::NotAVertex(m) | Fail::Other(m) => m.clone(),
            Fail::InfiniteWidth => "relative width is infinite; no path exists".into(),
        }
    }
}

impl From<InputError> for Fail {
    fn from(e: InputError) -> Fail {
        Fail::Parse(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| Fail::Parse(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Fail> {
    fs::write(path, text).map_err(|e| Fail::Other(format!("{}: {e}", path.display())))
}

fn print(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("values serialize"));
}

fn require_vertices(curves: &[TorusCurve]) -> Result<(), Fail> {
    match curves.iter().position(|c| !is_vertex(c)) {
        Some(i) => Err(Fail::NotAVertex(format!("curve {i} is not a vertex: it is separating or not simple"))),
        None => Ok(()),
    }
}

fn edge_json(e: &EdgeKind) -> Value {
    match e {
        EdgeKind::NonEdge => json!({"edge": "non_edge"}),
        EdgeKind::DisjointEdge => json!({"edge": "disjoint"}),
        EdgeKind::TransverseEdge(p) => json!({"edge": "transverse", "point": p}),
    }
}

fn classify(input: &Path, svg_out: Option<&Path>) -> Result<(), Fail> {
    let curves = io::parse_curves(&read(input)?)?;
    require_vertices(&curves)?;
    let out = match curves.as_slice() {
        [a, b] => envelope("edge", &edge_json(&is_edge(a, b).map_err(|e| Fail::Other(e.to_string()))?)),
        [a, b, c] => match classify_clique3(a, b, c) {
            Ok(r) => envelope("clique", &r),
            Err(e) => envelope("clique", &json!({"clique_type": null, "reason": e.to_string()})),
        },
        _ => return Err(Fail::Parse("expected 2 or 3 curves".into())),
    };
    if let Some(p) = svg_out {
        write(p, &svg::torus(&curves))?;
    }
    print(&out);
    Ok(())
}

fn width_json(w: &WidthResult) -> Value {
    json!({"K": w.k, "width": w.width, "distance": w.width.distance()})
}

fn width(input: &Path, model: Model, want_path: bool, svg_out: Option<&Path>) -> Result<(), Fail> {
    let text = read(input)?;
    let other = |e: &dyn std::fmt::Display| Fail::Other(e.to_string());
    let out = match model {
        Model::Torus => {
            let (a, b) = io::parse_curve_pair(&text)?;
            let w = relative_width(&a, &b).map_err(|e| other(&e))?;
            if let Some(p) = svg_out {
                write(p, &svg::torus(&[a, b]))?;
            }
            if want_path {
                return Err(Fail::Other("explicit paths are built for annulus arcs only".into()));
            }
            width_json(&w)
        }
        Model::Cannulus | Model::Oannulus => {
            let m = if matches!(model, Model::Cannulus) { SurfaceModel::CompactAnnulus } else { SurfaceModel::OpenAnnulus };
            let (a, b) = io::parse_arc_pair(&text, m)?;
            let w = relative_width(&a, &b).map_err(|e| other(&e))?;
            let mut v = width_json(&w);
            let mut drawn = vec![a.clone(), b.clone()];
            if want_path {
                if w.width == Width::Infinite {
                    return Err(Fail::InfiniteWidth);
                }
                let path = distance_path(&a, &b).map_err(|e| other(&e))?;
                v["path"] = json!(path.iter().map(|x| x.lift().to_vec()).collect::<Vec<_>>());
                drawn = path;
            }
            if let Some(p) = svg_out {
                write(p, &svg::annulus(&drawn))?;
            }
            v
        }
        Model::Plane => {
            let (a, b) = io::parse_germ_pair(&text)?;
            let g = germ_width(&a, &b).map_err(|e| other(&e))?;
            if want_path {
                if g.width == Width::Infinite {
                    return Err(Fail::InfiniteWidth);
                }
                return Err(Fail::Other("explicit paths are not built for germs".into()));
            }
            json!({"K": null, "width": g.width, "distance": g.width.distance(), "comparable": g.comparable})
        }
    };
    print(&envelope("width", &out));
    Ok(())
}

fn witness(input: &Path, svg_out: Option<&Path>) -> Result<(), Fail> {
    let curves = io::parse_curves(&read(input)?)?;
    require_vertices(&curves)?;
    if curves.len() < 3 {
        return Err(Fail::Parse("expected at least 3 curves".into()));
    }
    let (a, b, c) = (&curves[0], &curves[1], &curves[2]);
    let rep = classify_clique3(a, b, c).map_err(|e| Fail::Other(e.to_string()))?;
    let (out, mut drawn) = if rep.clique_type == CliqueType::Necklace {
        let f = necklace_witness_f(a, b, c).map_err(|e| Fail::Other(e.to_string()))?;
        let v = envelope("witness_set", &json!({"curves": f.iter().map(lift_of).collect::<Vec<_>>()}));
        (v, f)
    } else {
        let d = refute_n(a, b, c, &curves[3..]).map_err(|e| Fail::Other(e.to_string()))?;
        let v = envelope("refutation", &json!({"clique_type": rep.clique_type, "curve": lift_of(&d)}));
        (v, vec![d])
    };
    if let Some(p) = svg_out {
        let mut all = curves[..3].to_vec();
        all.append(&mut drawn);
        write(p, &svg::torus(&all))?;
    }
    print(&out);
    Ok(())
}

fn chain(input: &Path, out: Option<&Path>, svg_out: Option<&Path>) -> Result<(), Fail> {
    let curves = io::parse_curves(&read(input)?)?;
    require_vertices(&curves)?;
    let [a, b, c] = curves.as_slice() else {
        return Err(Fail::Parse("expected 3 curves".into()));
    };
    let cert = bouquet_chain(a, b, c).map_err(|e| Fail::Other(e.to_string()))?;
    let v = envelope("chain_certificate", &json!({"certificate": cert}));
    let text = serde_json::to_string_pretty(&v).expect("values serialize");
    if let Some(dir) = out {
        fs::create_dir_all(dir).map_err(|e| Fail::Other(e.to_string()))?;
        write(&dir.join("chain_certificate.json"), &text)?;
    }
    if let Some(p) = svg_out {
        let mut all = vec![a.clone()];
        all.extend(cert.moves.iter().map(|m| m.to.clone()));
        write(p, &svg::torus(&all))?;
    }
    println!("{text}");
    Ok(())
}

fn verify(input: &Path) -> Result<(), Fail> {
    let cert = io::parse_certificate(&read(input)?)?;
    let violations = verify_chain(&cert);
    let accepted = violations.is_empty();
    print(&envelope("chain_verdict", &json!({"accepted": accepted, "moves": cert.moves.len(), "violations": violations})));
    if accepted {
        Ok(())
    } else {
        Err(Fail::Violation("certificate rejected".into()))
    }
}

fn run_suite(seed: u64, out: Option<&Path>, fixtures: &[PathBuf]) -> Result<(), Fail> {
    let mut cfg = suite::SuiteConfig { seed, ..Default::default() };
    for p in fixtures {
        cfg.fixtures.push(io::parse_edge_fixture(&read(p)?, &p.display().to_string())?);
    }
    let report = suite::run(&cfg);
    let v = envelope("suite_report", &report);
    let text = serde_json::to_string_pretty(&v).expect("values serialize");
    if let Some(dir) = out {
        fs::create_dir_all(dir).map_err(|e| Fail::Other(e.to_string()))?;
        write(&dir.join("suite_report.json"), &text)?;
    }
    for c in &report.checks {
        let status = if c.violations.is_empty() { "ok" } else { "FAIL" };
        eprintln!("{status:4} {:28} {:4} cases", c.name, c.cases);
        for v in &c.violations {
            eprintln!("     violated {}: {}", v.invariant, v.case);
        }
    }
    println!("{text}");
    if report.passed {
        Ok(())
    } else {
        let names: Vec<&str> = report.checks.iter().flat_map(|c| c.violations.iter().map(|v| v.invariant)).collect();
        Err(Fail::Violation(format!("invariant violated: {}", names.join(", "))))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.command {
        Command::Classify { input, svg } => classify(input, svg.as_deref()),
        Command::Width { input, model, path, svg } => width(input, *model, *path, svg.as_deref()),
        Command::Witness { input, svg } => witness(input, svg.as_deref()),
        Command::Chain { input, out, svg } => chain(input, out.as_deref(), svg.as_deref()),
        Command::VerifyChain { input } => verify(input),
        Command::Suite { seed, out, fixtures } => run_suite(*seed, out.as_deref(), fixtures),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
