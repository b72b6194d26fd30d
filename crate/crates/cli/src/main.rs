mod svg;
mod wire;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use annulus::tilting::{enumerate_lattice_paths, is_dyck, LatticePath};
use annulus::{BraidWord, Curve, MapClass, SearchBudget, SheafClass, Side, Surface};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use wire::{parse, to_json, SurfaceDoc, WireCurve, WireSheaf};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl From<annulus::Error> for CliError {
    fn from(e: annulus::Error) -> Self {
        match e {
            annulus::Error::InternalInvariantViolation(_) | annulus::Error::SearchExhausted(_) => {
                CliError::Internal(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

/// Arc and sheaf computations on the annulus A(p,q) and the weighted
/// projective line X(p,q).
#[derive(Parser)]
#[command(name = "annulus", version)]
struct Cli {
    /// Marked points on the inner boundary.
    #[arg(long, global = true)]
    p: Option<i64>,
    /// Marked points on the outer boundary.
    #[arg(long, global = true)]
    q: Option<i64>,
    /// Surface as a JSON document {"surface":{"p":..,"q":..}}, instead of --p/--q.
    #[arg(long, global = true)]
    surface: Option<String>,
    /// Print one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Pair {
    /// Source sheaf (JSON).
    #[arg(long)]
    from: String,
    /// Target sheaf (JSON).
    #[arg(long)]
    to: String,
}

#[derive(Args)]
struct Coll {
    /// JSON array of curves.
    #[arg(long)]
    collection: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sheaf of a curve, or with --sheaf the curve of a sheaf.
    Phi {
        #[arg(long, conflicts_with = "sheaf", required_unless_present = "sheaf")]
        curve: Option<String>,
        #[arg(long)]
        sheaf: Option<String>,
    },
    /// dim Hom(from, to).
    Hom(Pair),
    /// dim Ext^1(from, to).
    Ext(Pair),
    /// Shape of the nonzero maps from -> to.
    Classify(Pair),
    /// Image of a crossing morphism, factored as epi then mono.
    Factor(Pair),
    /// Kernel of an epimorphism, as (bundle, torsion).
    Kernel(Pair),
    /// Cokernel of a monomorphism, as (inf-tube part, 0-tube part).
    Cokernel(Pair),
    /// Left or right mutation of an exceptional pair of arcs.
    Mutate {
        #[arg(long)]
        first: String,
        #[arg(long)]
        second: String,
        #[arg(long, value_enum, default_value = "left")]
        side: SideArg,
    },
    /// Whether a list of arcs is an ordered exceptional collection.
    Check(Coll),
    /// Completes an exceptional collection to p+q arcs.
    Complete(Coll),
    /// Applies a braid word (JSON array of signed letters, rightmost first).
    Braid {
        #[command(flatten)]
        coll: Coll,
        #[arg(long)]
        word: String,
    },
    /// A braid word taking a maximal collection to the canonical fan.
    Normalize {
        #[command(flatten)]
        coll: Coll,
        #[arg(long, default_value_t = SearchBudget::default().max_states)]
        max_states: usize,
    },
    /// Triangulations and tilting objects.
    Tilting {
        #[command(subcommand)]
        cmd: TiltCmd,
    },
    /// Lattice paths from (0,0) to (p,q).
    Paths {
        /// Only (p,q)-Dyck paths.
        #[arg(long)]
        dyck: bool,
    },
    /// Counts of tilting bundles, fundamental bundles and tilting sheaves up to τ.
    Census,
    /// Writes an SVG strip diagram.
    Render {
        #[command(flatten)]
        coll: Coll,
        /// Strip window x0 x1.
        #[arg(long, num_args = 2, allow_negative_numbers = true, default_values_t = [0.0, 2.0])]
        window: Vec<f64>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum TiltCmd {
    /// One canonical triangulation per se-class.
    Classes,
    /// Canonical representative of a triangulation's se-class.
    Canonical(Coll),
    /// Lattice path of a tilting bundle.
    Path(Coll),
    /// Tilting bundle of a lattice path (JSON array of [x,y]).
    FromPath {
        #[arg(long)]
        path: String,
    },
}

struct Output {
    text: String,
    json: Value,
}

fn out(text: impl Into<String>, json: Value) -> Output {
    Output { text: text.into(), json }
}

fn surface(cli: &Cli) -> Result<Surface, CliError> {
    let (p, q) = match (&cli.surface, cli.p, cli.q) {
        (Some(doc), None, None) => {
            let d: SurfaceDoc = parse("--surface", doc)?;
            (d.surface.p, d.surface.q)
        }
        (None, Some(p), Some(q)) => (p, q),
        _ => return Err(CliError::Input("give either --p and --q, or --surface".into())),
    };
    Ok(Surface::new(p, q)?)
}

fn curve(s: &Surface, what: &str, text: &str) -> Result<Curve, CliError> {
    let w: WireCurve = parse(what, text)?;
    Ok(s.canonical(w.into())?)
}

fn arcs(s: &Surface, text: &str) -> Result<Vec<Curve>, CliError> {
    let ws: Vec<WireCurve> = parse("--collection", text)?;
    ws.into_iter()
        .map(|w| {
            let c = s.canonical(w.into())?;
            if !s.is_arc(c) {
                return Err(CliError::Input(format!("{c} is not an arc")));
            }
            Ok(c)
        })
        .collect()
}

fn sheaf(s: &Surface, what: &str, text: &str) -> Result<SheafClass, CliError> {
    parse::<WireSheaf>(what, text)?.to_sheaf(s)
}

fn sheaf_json(x: SheafClass) -> Result<Value, CliError> {
    Ok(serde_json::to_value(WireSheaf::from_sheaf(x)?).unwrap())
}

fn curves_json(cs: &[Curve]) -> Value {
    serde_json::to_value(cs.iter().map(|&c| WireCurve::from(c)).collect::<Vec<_>>()).unwrap()
}

fn curves_text(cs: &[Curve]) -> String {
    cs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

fn path_text(path: &LatticePath) -> String {
    path.iter().map(|(x, y)| format!("({x},{y})")).collect::<Vec<_>>().join(" ")
}

fn pair(s: &Surface, p: &Pair) -> Result<(SheafClass, SheafClass), CliError> {
    Ok((sheaf(s, "--from", &p.from)?, sheaf(s, "--to", &p.to)?))
}

fn two_sheaves(a: SheafClass, b: SheafClass) -> Result<Output, CliError> {
    Ok(out(format!("{a} {b}"), json!([sheaf_json(a)?, sheaf_json(b)?])))
}

fn dispatch(cli: &Cli) -> Result<Output, CliError> {
    let s = surface(cli)?;
    Ok(match &cli.cmd {
        Cmd::Phi { curve: Some(c), .. } => {
            let x = s.phi(curve(&s, "--curve", c)?)?;
            out(x.to_string(), sheaf_json(x)?)
        }
        Cmd::Phi { sheaf: Some(x), .. } => {
            let c = s.phi_inv(sheaf(&s, "--sheaf", x)?)?;
            out(c.to_string(), serde_json::to_value(WireCurve::from(c)).unwrap())
        }
        Cmd::Phi { .. } => return Err(CliError::Input("phi needs --curve or --sheaf".into())),
        Cmd::Hom(p) => {
            let (x, y) = pair(&s, p)?;
            let d = s.hom_dim(x, y)?;
            out(d.to_string(), json!(d))
        }
        Cmd::Ext(p) => {
            let (x, y) = pair(&s, p)?;
            let d = s.ext1_dim(x, y)?;
            out(d.to_string(), json!(d))
        }
        Cmd::Classify(p) => {
            let (x, y) = pair(&s, p)?;
            let (text, v) = match s.classify_nonzero(x, y)? {
                MapClass::Mono { identity: true } => ("identity", json!({"class": "mono", "identity": true})),
                MapClass::Mono { identity: false } => ("mono", json!({"class": "mono", "identity": false})),
                MapClass::Epi => ("epi", json!({"class": "epi"})),
                MapClass::NoNonzeroMap => ("none", json!({"class": "none"})),
                MapClass::Mixed => ("mixed", json!({"class": "mixed"})),
            };
            out(text, v)
        }
        Cmd::Factor(p) => {
            let (x, y) = pair(&s, p)?;
            let z = s.epi_mono_factor(x, y)?;
            out(z.to_string(), sheaf_json(z)?)
        }
        Cmd::Kernel(p) => {
            let (x, y) = pair(&s, p)?;
            let (a, b) = s.kernel_of_epi(x, y)?;
            two_sheaves(a, b)?
        }
        Cmd::Cokernel(p) => {
            let (x, y) = pair(&s, p)?;
            let (a, b) = s.cokernel_of_mono(x, y)?;
            two_sheaves(a, b)?
        }
        Cmd::Mutate { first, second, side } => {
            let a = curve(&s, "--first", first)?;
            let b = curve(&s, "--second", second)?;
            let side = match side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
            };
            let c = s.mutate_pair(a, b, side)?;
            out(c.to_string(), serde_json::to_value(WireCurve::from(c)).unwrap())
        }
        Cmd::Check(c) => {
            let l = arcs(&s, &c.collection)?;
            let ok = s.is_ordered_exceptional_collection(&l)?;
            let order = s.order_collection(&l)?;
            let text = match (&order, ok) {
                (_, true) => "ordered exceptional collection".to_string(),
                (Some(o), false) => format!("not in order; admissible order: {}", curves_text(o)),
                (None, false) => "not an exceptional collection".to_string(),
            };
            out(text, json!({"ordered": ok, "order": order.as_deref().map(curves_json)}))
        }
        Cmd::Complete(c) => {
            let l = s.complete_to_maximal(&arcs(&s, &c.collection)?)?;
            out(curves_text(&l), curves_json(&l))
        }
        Cmd::Braid { coll, word } => {
            let w = BraidWord(parse("--word", word)?);
            let l = s.apply_braid(&arcs(&s, &coll.collection)?, &w)?;
            out(curves_text(&l), curves_json(&l))
        }
        Cmd::Normalize { coll, max_states } => {
            let w = s.normalize_to_theta(&arcs(&s, &coll.collection)?, SearchBudget { max_states: *max_states })?;
            let text = if w.is_empty() { "identity".to_string() } else { w.to_string() };
            out(text, json!(w.0))
        }
        Cmd::Tilting { cmd } => tilting(&s, cmd)?,
        Cmd::Paths { dyck } => {
            let paths: Vec<LatticePath> = enumerate_lattice_paths(s.p(), s.q())
                .into_iter()
                .filter(|pt| !dyck || is_dyck(s.p(), s.q(), pt))
                .collect();
            let text = paths.iter().map(path_text).collect::<Vec<_>>().join("\n");
            out(text, json!(paths))
        }
        Cmd::Census => {
            let c = s.census()?;
            let v = json!({
                "bundle_classes": c.bundle_classes,
                "fundamental": c.fundamental,
                "sheaf_classes": c.sheaf_classes,
            });
            out(v.to_string(), v)
        }
        Cmd::Render { coll, window, out: path } => {
            let (x0, x1) = (window[0], window[1]);
            if !(x0 < x1) || !x0.is_finite() || !x1.is_finite() {
                return Err(CliError::Input(format!("invalid window [{x0}, {x1}]")));
            }
            let l = arcs(&s, &coll.collection)?;
            let doc = svg::render(&s, &l, x0, x1);
            std::fs::write(path, &doc).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            let n = doc.matches(r#"class="arc""#).count();
            out(format!("wrote {} ({n} curves)", path.display()), json!({"file": path.display().to_string(), "curves": n}))
        }
    })
}

fn tilting(s: &Surface, cmd: &TiltCmd) -> Result<Output, CliError> {
    Ok(match cmd {
        TiltCmd::Classes => {
            let cs = s.tilting_classes()?;
            let text = cs.iter().map(|t| curves_text(t)).collect::<Vec<_>>().join("\n");
            out(text, Value::Array(cs.iter().map(|t| curves_json(t)).collect()))
        }
        TiltCmd::Canonical(c) => {
            let t = arcs(s, &c.collection)?;
            if !s.is_triangulation(&t)? {
                return Err(CliError::Input("collection is not a triangulation".into()));
            }
            let r = s.se_canonical(&t)?;
            out(curves_text(&r), curves_json(&r))
        }
        TiltCmd::Path(c) => {
            let path = s.tilting_to_path(&arcs(s, &c.collection)?)?;
            out(path_text(&path), json!(path))
        }
        TiltCmd::FromPath { path } => {
            let path: LatticePath = parse("--path", path)?;
            let t = s.path_to_tilting(&path)?;
            out(curves_text(&t), curves_json(&t))
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // usage errors are invalid input, not internal failures
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match dispatch(&cli) {
        Ok(o) => {
            // a closed pipe downstream is not an error of ours
            let mut stdout = std::io::stdout().lock();
            let _ = if cli.json {
                writeln!(stdout, "{}", to_json(&o.json))
            } else if !o.text.is_empty() {
                writeln!(stdout, "{}", o.text)
            } else {
                Ok(())
            };
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
