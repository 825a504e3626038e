//! Command-line front end for `torusmaps`.
//!
//! [`run`] takes the argument vector and two sinks and returns the process
//! exit code: 0 on success, 1 when a check fails or the verdict is negative,
//! 2 on usage or input errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use torusmaps::cone_metric::{
    check_counting_relations, check_family, cone_points, degree_profiles,
};
use torusmaps::constructions::{catalogue_text, CATALOGUE};
use torusmaps::enumeration::{
    certify_non_toroidal, enumerate_maps, min_genus_search, Budget, EnumOptions, EnumSpec,
    GenusOutcome, TheoremId, Verdict, VerifyOptions,
};
use torusmaps::holonomy::{burgers_vector, develop_walk};
use torusmaps::{
    classify_surface, develop, parse_map, render_svg, serialize_map, skeleton_and_girth, DualLoop,
    Family, Graph, Motion, RenderOptions, Report, SurfaceMap,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable naming a directory of `NAME.map` catalogue files.
pub const DATA_ENV: &str = "TORUSMAPS_DATA";

#[derive(Debug, Parser)]
#[command(
    name = "torusmaps",
    version,
    about = "Maps on the torus, cone metrics and exact holonomy"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a MAP file and check that it is a map on a surface of Euler characteristic 0.
    Validate {
        file: PathBuf,
        /// Also require every face to have this family's length.
        #[arg(long)]
        family: Option<Family>,
    },
    /// Print counts, degrees, girth and (for a polygon family) cone points.
    Stats {
        file: PathBuf,
        #[arg(long)]
        family: Option<Family>,
    },
    /// Holonomy group, fundamental pair and, with --loop, the motion of one loop.
    Holonomy {
        file: PathBuf,
        #[arg(long)]
        family: Family,
        #[arg(long = "loop")]
        dual_loop: Option<DualLoop>,
    },
    /// Burgers vector of a dual loop with trivial rotational holonomy.
    Burgers {
        file: PathBuf,
        #[arg(long)]
        family: Family,
        #[arg(long = "loop")]
        dual_loop: DualLoop,
    },
    /// Develop a walk of unit steps with the given left turns.
    Walk {
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        turns: Vec<i64>,
        #[arg(long)]
        family: Family,
    },
    /// Exhaustively check one statement up to a vertex bound.
    Verify {
        #[arg(long)]
        theorem: TheoremId,
        #[arg(long)]
        max_vertices: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Count (and optionally dump) torus maps up to isomorphism.
    Enumerate {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        max_vertices: usize,
        /// Exceptional degrees; all other vertices are regular.
        #[arg(long, value_delimiter = ',')]
        degrees: Option<Vec<usize>>,
        #[arg(long)]
        min_vertices: Option<usize>,
        /// Write every representative as a MAP file into this directory.
        #[arg(long)]
        dump: Option<PathBuf>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Print or write a catalogue entry.
    Catalogue {
        /// Entry name, or `list`.
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether a graph cannot embed in the torus.
    Certify {
        graph: PathBuf,
        /// Fall back to the exact genus search when counting is inconclusive.
        #[arg(long)]
        search: bool,
        #[arg(long, default_value_t = 1)]
        genus_cap: u64,
        #[arg(long)]
        budget_seconds: Option<u64>,
    },
    /// Draw the development as SVG.
    Render {
        file: PathBuf,
        #[arg(long)]
        family: Family,
        #[arg(long)]
        out: PathBuf,
        #[arg(long = "loop")]
        dual_loop: Option<DualLoop>,
        #[arg(long, default_value_t = 40.0)]
        scale: f64,
        /// Draw copies × copies translated domains when the map is flat.
        #[arg(long, default_value_t = 1)]
        copies: usize,
    },
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long)]
    budget_seconds: Option<u64>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

impl RunArgs {
    fn budget(&self) -> Budget {
        Budget {
            seconds: self.budget_seconds,
            nodes: None,
        }
    }
}

/// A failure that maps onto an exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Check,
}

impl From<torusmaps::Error> for Failure {
    fn from(e: torusmaps::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return code;
        }
    };
    let mut buf = String::new();
    let result = dispatch(cli.command, &mut buf, err);
    // a half-written report is not emitted for bad input
    if !matches!(result, Err(Failure::Usage(_))) {
        let _ = out.write_all(buf.as_bytes());
    }
    let _ = out.flush();
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Check) => EXIT_FAIL,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_map(path: &Path) -> std::result::Result<SurfaceMap, Failure> {
    parse_map(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn verdict(report: &Report, out: &mut String) -> Outcome {
    let _ = write!(out, "{report}");
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn motion_line(m: &Motion) -> String {
    format!("rotation {} translation {}", m.rot, m.trans)
}

fn dispatch(cmd: Command, out: &mut String, err: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Validate { file, family } => validate(&load_map(&file)?, family, out),
        Command::Stats { file, family } => stats(&load_map(&file)?, family, out),
        Command::Holonomy {
            file,
            family,
            dual_loop,
        } => holonomy(&load_map(&file)?, family, dual_loop.as_ref(), out),
        Command::Burgers {
            file,
            family,
            dual_loop,
        } => burgers(&load_map(&file)?, family, &dual_loop, out),
        Command::Walk { turns, family } => walk(&turns, family, out),
        Command::Verify {
            theorem,
            max_vertices,
            run,
        } => {
            let opts = VerifyOptions {
                max_vertices,
                threads: run.threads,
                budget: run.budget(),
            };
            let start = Instant::now();
            let report = torusmaps::enumeration::verify_theorem(theorem, &opts)?;
            // Wall time goes to stderr so stdout stays byte-identical.
            let _ = writeln!(err, "elapsed: {:.3}s", start.elapsed().as_secs_f64());
            verdict(&report, out)
        }
        Command::Enumerate {
            family,
            max_vertices,
            degrees,
            min_vertices,
            dump,
            run,
        } => {
            let mut spec = EnumSpec::new(family, max_vertices);
            if let Some(d) = degrees {
                spec = spec.exceptional(&d);
            }
            if let Some(v) = min_vertices {
                spec = spec.with_min_vertices(v);
            }
            enumerate(&spec, &run, dump.as_deref(), out, err)
        }
        Command::Catalogue { name, out: path } => catalogue(&name, path.as_deref(), out),
        Command::Certify {
            graph,
            search,
            genus_cap,
            budget_seconds,
        } => {
            let text = read(&graph)?;
            let g = Graph::parse(&text).map_err(|e| usage(format!("{}: {e}", graph.display())))?;
            certify(&g, search, genus_cap, budget_seconds, out)
        }
        Command::Render {
            file,
            family,
            out: path,
            dual_loop,
            scale,
            copies,
        } => {
            if !(scale.is_finite() && scale > 0.0) {
                return Err(usage("--scale must be positive"));
            }
            let m = load_map(&file)?;
            let opts = RenderOptions {
                scale,
                copies: copies.max(1),
                highlight: dual_loop,
            };
            let svg = render_svg(&m, family, &opts)?;
            write_file(&path, &svg)?;
            let _ = writeln!(out, "wrote {}", path.display());
            Ok(())
        }
    }
}

fn validate(m: &SurfaceMap, family: Option<Family>, out: &mut String) -> Outcome {
    let s = classify_surface(m);
    let mut r = Report::new(format!("validate {}", m.name()));
    r.field("vertices", s.vertices)
        .field("edges", s.edges)
        .field("faces", s.faces)
        .field("chi", s.chi)
        .field("orientable", s.orientable)
        .field("surface", surface_name(s.chi, s.orientable));
    if s.chi != 0 {
        r.fail(format!("Euler characteristic is {}, not 0", s.chi));
    }
    if let Some(f) = family {
        r.field("family", f);
        if let Err(e) = check_family(m, f) {
            r.fail(e.to_string());
        } else {
            let rel = check_counting_relations(&degree_profiles(m), Some(f));
            r.field("counting_relations", rel.passed);
            if !rel.passed {
                r.fail("counting relations do not hold");
            }
        }
    }
    verdict(&r, out)
}

fn surface_name(chi: i64, orientable: bool) -> String {
    match (chi, orientable) {
        (2, true) => "sphere".into(),
        (0, true) => "torus".into(),
        (1, false) => "projective-plane".into(),
        (0, false) => "klein-bottle".into(),
        (c, true) => format!("orientable-genus-{}", (2 - c) / 2),
        (c, false) => format!("nonorientable-genus-{}", 2 - c),
    }
}

/// The family whose face length every face has, if any.
fn infer_family(m: &SurfaceMap) -> Option<Family> {
    let lens = m.face_lengths();
    let first = *lens.first()?;
    if lens.iter().any(|&l| l != first) {
        return None;
    }
    [
        Family::Triangulation,
        Family::Quadrangulation,
        Family::Hexangulation,
    ]
    .into_iter()
    .find(|f| f.face_len() == first)
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn stats(m: &SurfaceMap, family: Option<Family>, out: &mut String) -> Outcome {
    let s = classify_surface(m);
    let (_, girth) = skeleton_and_girth(m);
    let mut degrees = m.vertex_degrees();
    degrees.sort_unstable();
    let mut faces = m.face_lengths();
    faces.sort_unstable();
    let mut r = Report::new(format!("stats {}", m.name()));
    r.field("vertices", s.vertices)
        .field("edges", s.edges)
        .field("faces", s.faces)
        .field("chi", s.chi)
        .field("orientable", s.orientable)
        .field("surface", surface_name(s.chi, s.orientable))
        .field("degrees", join(&degrees))
        .field("face_lengths", join(&faces))
        .field("girth", girth);
    if let Some(f) = family.or_else(|| infer_family(m)) {
        r.field("family", f);
        let cones = cone_points(m, f)?;
        let pts: Vec<String> = cones
            .cone_points()
            .iter()
            .map(|(v, u)| format!("{v}:{u}"))
            .collect();
        r.field(
            "cone_points",
            if pts.is_empty() {
                "none".into()
            } else {
                pts.join(",")
            },
        );
        r.field("total_units", cones.total_units());
        if let Some(n) = cones.n_prime() {
            r.field("n_prime", n);
        }
    }
    verdict(&r, out)
}

fn holonomy(m: &SurfaceMap, family: Family, lp: Option<&DualLoop>, out: &mut String) -> Outcome {
    let dev = develop(m, family)?;
    let h = dev.holonomy_group();
    let _ = writeln!(out, "H = {h}");
    let mut r = Report::new(format!("holonomy of {}", m.name()));
    r.field("family", family).field("holonomy", &h);
    for (i, g) in h.generator_loops.iter().enumerate() {
        r.line(format!("generator loop {i}: {g}"));
    }
    if let Ok(pair) = dev.fundamental_pair() {
        r.line(format!(
            "alpha = {}: {}",
            pair.alpha,
            motion_line(&pair.h_alpha)
        ));
        r.line(format!(
            "beta = {}: {}",
            pair.beta,
            motion_line(&pair.h_beta)
        ));
        r.line(format!("[alpha,beta]: {}", motion_line(&pair.h_commutator)));
        r.field("alpha", &pair.alpha)
            .field("beta", &pair.beta)
            .field("h_alpha", motion_line(&pair.h_alpha))
            .field("h_beta", motion_line(&pair.h_beta))
            .field("h_commutator", motion_line(&pair.h_commutator));
    }
    if let Some(t) = dev.translation_lattice() {
        r.field("translation_basis", format!("{} {}", t.basis.u, t.basis.v));
        r.field("translation_index", t.index);
    }
    if let Some(lp) = lp {
        let hm = dev.loop_holonomy(lp)?;
        r.field("loop", lp).field("h_loop", motion_line(&hm));
    }
    verdict(&r, out)
}

fn burgers(m: &SurfaceMap, family: Family, lp: &DualLoop, out: &mut String) -> Outcome {
    let dev = develop(m, family)?;
    let hm = dev.loop_holonomy(lp)?;
    let mut r = Report::new(format!("Burgers vector of loop {lp} in {}", m.name()));
    r.field("loop", lp).field("h_loop", motion_line(&hm));
    match burgers_vector(&hm) {
        Some(b) => {
            r.field("burgers", &b).field("norm", b.norm());
        }
        None => {
            r.field("burgers", "none");
            r.fail(format!("loop has rotational holonomy {}", hm.rot));
        }
    }
    verdict(&r, out)
}

fn walk(turns: &[i64], family: Family, out: &mut String) -> Outcome {
    let m: Motion = develop_walk(turns, family);
    let mut r = Report::new(format!("walk of {} steps", turns.len()));
    r.field("family", family)
        .field("rotation", m.rot)
        .field("translation", &m.trans)
        .field("translation_norm", m.trans.norm());
    if let Some(b) = burgers_vector(&m) {
        r.field("burgers", b);
    }
    verdict(&r, out)
}

fn enumerate(
    spec: &EnumSpec,
    run: &RunArgs,
    dump: Option<&Path>,
    out: &mut String,
    err: &mut dyn Write,
) -> Outcome {
    if let Some(dir) = dump {
        fs::create_dir_all(dir).map_err(|e| usage(format!("{}: {e}", dir.display())))?;
    }
    let opts = EnumOptions {
        threads: run.threads,
        budget: run.budget(),
    };
    let mut maps = Vec::new();
    let outcome = enumerate_maps(spec, &opts, |m| {
        if dump.is_some() {
            maps.push(m.clone());
        }
    })?;
    let _ = writeln!(err, "elapsed: {:.3}s", outcome.elapsed.as_secs_f64());
    if let Some(dir) = dump {
        for m in &maps {
            write_file(&dir.join(format!("{}.map", m.name())), &serialize_map(m))?;
        }
    }
    let mut r = Report::new(format!("enumerate {spec}"));
    for (v, c) in &outcome.per_size {
        r.line(format!("V={v}: {c}"));
        r.field(format!("v{v}"), c);
    }
    r.field("classes", outcome.count)
        .field("nodes", outcome.nodes)
        .field("partial", outcome.partial);
    if outcome.partial {
        r.fail("budget exhausted; counts are lower bounds");
    }
    verdict(&r, out)
}

fn catalogue(name: &str, path: Option<&Path>, out: &mut String) -> Outcome {
    if name == "list" {
        for n in CATALOGUE {
            let _ = writeln!(out, "{n}");
        }
        return Ok(());
    }
    let text = match std::env::var_os(DATA_ENV) {
        Some(dir) => read(&Path::new(&dir).join(format!("{name}.map")))?,
        None => catalogue_text(name)?.to_string(),
    };
    // refuse to emit something that does not parse
    parse_map(&text).map_err(|e| usage(format!("{name}: {e}")))?;
    match path {
        Some(p) => {
            write_file(p, &text)?;
            let _ = writeln!(out, "wrote {}", p.display());
        }
        None => out.push_str(&text),
    }
    Ok(())
}

fn certify(g: &Graph, search: bool, cap: u64, seconds: Option<u64>, out: &mut String) -> Outcome {
    let cert = certify_non_toroidal(g);
    let _ = write!(out, "{cert}");
    if cert.verdict != Verdict::Unknown {
        return Ok(());
    }
    if !search {
        return Err(Failure::Check);
    }
    let budget = Budget {
        seconds,
        nodes: None,
    };
    let _ = writeln!(out, "search genus_cap={cap}");
    match min_genus_search(g, cap, budget) {
        GenusOutcome::Witness { map, genus } => {
            let _ = writeln!(
                out,
                "search=witness\ngenus={genus}\ntoroidal={}",
                genus <= 1
            );
            out.push_str(&serialize_map(&map));
            Ok(())
        }
        GenusOutcome::Exhausted { nodes, by_counting } => {
            let _ = writeln!(
                out,
                "search=exhausted\nnodes={nodes}\nby_counting={by_counting}"
            );
            Ok(())
        }
        GenusOutcome::BudgetExceeded { nodes } => {
            let _ = writeln!(out, "search=budget-exceeded\nnodes={nodes}");
            Err(Failure::Check)
        }
        GenusOutcome::Disconnected => {
            let _ = writeln!(out, "search=disconnected");
            Err(Failure::Check)
        }
    }
}
