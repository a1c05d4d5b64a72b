//! Argument parsing and the subcommands. Every command writes its report
//! to `out` and diagnostics to `err`, and returns the exit code.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::{Path as FsPath, PathBuf};

use agq_core::check::check_against_formulas;
use agq_core::generate::{random_ag_pair, GeneratorParams};
use agq_core::oracle::{default_cutoff, Oracle};
use agq_core::syzygy::format_decomposition;
use agq_core::{
    parse_agq, resolve_symbolic, AlmostGentlePair, CycleCondition, DimReport, HomDim, ModuleSpec, Termination, VertexId,
};
use clap::{Args, Parser, Subcommand};

use crate::dot::emit_dot;
use crate::json::{report_json, to_text};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "agq", version, about = "Homological dimensions of almost gentle algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct ModuleArg {
    /// The simple module at a vertex.
    #[arg(long, value_name = "V")]
    simple: Option<String>,
    /// The indecomposable injective at a vertex.
    #[arg(long, value_name = "V")]
    injective: Option<String>,
    /// The directed string module of a path, as comma separated arrows.
    #[arg(long, value_name = "ARROWS")]
    string: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that the file describes an almost gentle pair.
    Validate { file: PathBuf },
    /// Global dimension.
    Gldim {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        witness: bool,
    },
    /// Self-injective dimension of the algebra as a module over itself.
    Injdim {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        witness: bool,
    },
    /// Projective dimension of one module.
    Pdim {
        file: PathBuf,
        #[command(flatten)]
        module: ModuleArg,
    },
    /// Longest forbidden paths and forbidden cycles.
    Forbidden {
        file: PathBuf,
        /// Only the longest forbidden path starting at this vertex.
        #[arg(long, value_name = "V")]
        from: Option<String>,
        /// List the forbidden cycles.
        #[arg(long)]
        cycles: bool,
    },
    /// Minimal projective resolution, level by level.
    Resolve {
        file: PathBuf,
        #[command(flatten)]
        module: ModuleArg,
        #[arg(long, value_name = "N", default_value_t = 10)]
        max_steps: usize,
        /// Also resolve with exact linear algebra.
        #[arg(long)]
        oracle: bool,
    },
    /// Gorenstein status with the cycle criterion.
    Gorenstein {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Compare the closed forms with the linear algebra oracle.
    Check {
        file: PathBuf,
        /// Resolution length after which the oracle stops.
        #[arg(long, value_name = "N")]
        cutoff: Option<u64>,
    },
    /// Seeded random almost gentle pairs in `.agq` form.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long, value_name = "N", default_value_t = 8)]
        max_vertices: usize,
        #[arg(long, value_name = "M", default_value_t = 14)]
        max_arrows: usize,
        /// Number of algebras, with consecutive seeds.
        #[arg(long, value_name = "K", default_value_t = 1)]
        count: u64,
        /// Write one file per algebra into this directory.
        #[arg(long, value_name = "DIR")]
        emit: Option<PathBuf>,
        #[arg(long)]
        no_loops: bool,
        /// Chance that an in/out pair becomes a relation, as `p/q`.
        #[arg(long, value_name = "P/Q", default_value = "1/2")]
        density: String,
    },
    /// Graphviz rendering of the quiver and its relations.
    Dot { file: PathBuf },
}

/// Reported failure: a message for stderr and an exit code.
struct Failure(String, i32);

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure(e.to_string(), EXIT_INPUT)
    }
}

fn input(msg: impl Into<String>) -> Failure {
    Failure(msg.into(), EXIT_INPUT)
}

type Outcome = Result<i32, Failure>;

fn error_prefix() -> &'static str {
    match std::env::var("AGQ_COLOR").as_deref() {
        Ok("1") => "\x1b[31merror\x1b[0m",
        _ => "error",
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_INPUT
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure(msg, code)) => {
            let _ = writeln!(err, "{}: {msg}", error_prefix());
            code
        }
    }
}

fn read(file: &FsPath) -> Result<String, Failure> {
    std::fs::read_to_string(file).map_err(|e| input(format!("{}: {e}", file.display())))
}

fn load(file: &FsPath) -> Result<AlmostGentlePair, Failure> {
    let text = read(file)?;
    let spec = parse_agq(&text).map_err(|e| input(format!("{}:{e}", file.display())))?;
    spec.build()
        .map_err(|report| input(format!("{}: invalid bound quiver\n{}", file.display(), report.to_string().trim_end())))
}

fn vertex(pair: &AlmostGentlePair, name: &str) -> Result<VertexId, Failure> {
    pair.vertex(name).map_err(|e| input(e.to_string()))
}

fn module_spec(pair: &AlmostGentlePair, m: &ModuleArg) -> Result<ModuleSpec, Failure> {
    if let Some(v) = &m.simple {
        return Ok(ModuleSpec::Simple(vertex(pair, v)?));
    }
    if let Some(v) = &m.injective {
        return Ok(ModuleSpec::Injective(vertex(pair, v)?));
    }
    let names = m.string.as_deref().expect("one module flag is required");
    let p = pair.path_from_names(names).map_err(|e| input(e.to_string()))?;
    if p.is_empty() {
        return Err(input("--string needs at least one arrow"));
    }
    if !pair.basis_paths().contains(&p) {
        return Err(input(format!("{} is zero in the algebra", pair.format_path(&p))));
    }
    Ok(ModuleSpec::DirString(p))
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Validate { file } => validate(&file, out),
        Command::Gldim { file, json, witness } => {
            let pair = load(&file)?;
            let r = HomDim::new(&pair).global_dimension();
            dimension(&pair, &r, json, witness, out)
        }
        Command::Injdim { file, json, witness } => {
            let pair = load(&file)?;
            let r = HomDim::new(&pair).self_injective_dimension();
            dimension(&pair, &r, json, witness, out)
        }
        Command::Pdim { file, module } => {
            let pair = load(&file)?;
            let hd = HomDim::new(&pair);
            let r = match module_spec(&pair, &module)? {
                ModuleSpec::Simple(v) => hd.pdim_simple(v),
                ModuleSpec::Injective(v) => hd.pdim_injective(v),
                ModuleSpec::DirString(p) => hd.pdim_directed_string(&p),
                ModuleSpec::Projective(_) => unreachable!("not offered on the command line"),
            };
            writeln!(out, "{}", r.value)?;
            Ok(EXIT_OK)
        }
        Command::Forbidden { file, from, cycles } => forbidden(&load(&file)?, from.as_deref(), cycles, out),
        Command::Resolve { file, module, max_steps, oracle } => {
            let pair = load(&file)?;
            let spec = module_spec(&pair, &module)?;
            resolve(&pair, &spec, max_steps, oracle, out)
        }
        Command::Gorenstein { file, json } => gorenstein(&load(&file)?, json, out),
        Command::Check { file, cutoff } => {
            let pair = load(&file)?;
            let cutoff = cutoff.unwrap_or_else(|| default_cutoff(&pair));
            let r = check_against_formulas(&pair, cutoff);
            writeln!(
                out,
                "{}: {} comparisons, {} mismatches (cutoff {})",
                r.algebra,
                r.comparisons,
                r.mismatches.len(),
                r.cutoff
            )?;
            for m in &r.mismatches {
                writeln!(out, "  {m}")?;
            }
            Ok(if r.agrees() { EXIT_OK } else { EXIT_MISMATCH })
        }
        Command::Random { seed, max_vertices, max_arrows, count, emit, no_loops, density } => {
            let relation_density = parse_density(&density)?;
            if max_vertices == 0 {
                return Err(input("--max-vertices must be positive"));
            }
            let params = GeneratorParams { seed, max_vertices, max_arrows, loop_allowed: !no_loops, relation_density };
            random(&params, count, emit.as_deref(), out)
        }
        Command::Dot { file } => {
            write!(out, "{}", emit_dot(&load(&file)?))?;
            Ok(EXIT_OK)
        }
    }
}

fn validate(file: &FsPath, out: &mut dyn Write) -> Outcome {
    let text = read(file)?;
    let spec = parse_agq(&text).map_err(|e| input(format!("{}:{e}", file.display())))?;
    match spec.build() {
        Ok(pair) => {
            let report = agq_core::validate_bound_quiver(pair.quiver(), pair.relations());
            writeln!(
                out,
                "{}: valid ({} vertices, {} arrows, {} relations)",
                pair.name(),
                pair.vertex_count(),
                pair.arrow_count(),
                pair.relations().len()
            )?;
            write!(out, "{report}")?;
            Ok(EXIT_OK)
        }
        Err(report) => {
            write!(out, "{report}")?;
            writeln!(out, "note: `rel A B` means the path A then B is zero")?;
            Err(input(format!("{}: invalid bound quiver", file.display())))
        }
    }
}

fn dimension(pair: &AlmostGentlePair, r: &DimReport, json: bool, witness: bool, out: &mut dyn Write) -> Outcome {
    if json {
        write!(out, "{}", to_text(&report_json(pair)))?;
        return Ok(EXIT_OK);
    }
    writeln!(out, "{}", r.value)?;
    if witness {
        writeln!(out, "witness: {}", r.witness.display(pair))?;
        if let Some(v) = r.attained_at {
            writeln!(out, "attained at: {}", pair.vertex_name(v))?;
        }
        writeln!(out, "method: {}", r.method)?;
    }
    Ok(EXIT_OK)
}

fn forbidden(pair: &AlmostGentlePair, from: Option<&str>, cycles: bool, out: &mut dyn Write) -> Outcome {
    let hd = HomDim::new(pair);
    let fp = hd.forbidden();
    if let Some(name) = from {
        let (len, walk) = fp.from_vertex(vertex(pair, name)?);
        writeln!(out, "{len}\t{}", walk.display(pair))?;
    } else if !cycles {
        for v in pair.vertices() {
            let (len, walk) = fp.from_vertex(v);
            writeln!(out, "{}\t{len}\t{}", pair.vertex_name(v), walk.display(pair))?;
        }
    }
    if cycles {
        let list = fp.cycles(agq_core::forbidden::DEFAULT_CYCLE_CAP);
        for c in &list.cycles {
            writeln!(out, "cycle\t{}", pair.format_arrows(c))?;
        }
        if list.truncated {
            writeln!(out, "(cycle list truncated)")?;
        }
    }
    Ok(EXIT_OK)
}

fn format_cover(pair: &AlmostGentlePair, cover: &std::collections::BTreeMap<VertexId, u64>) -> String {
    let parts: Vec<String> = cover
        .iter()
        .map(|(v, &n)| {
            let p = format!("P({})", pair.vertex_name(*v));
            if n == 1 {
                p
            } else {
                format!("{p}^{n}")
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn format_dims(pair: &AlmostGentlePair, dims: &[u64]) -> String {
    let parts: Vec<String> = dims
        .iter()
        .enumerate()
        .filter(|(_, &d)| d > 0)
        .map(|(i, d)| format!("{}:{d}", pair.vertex_name(VertexId(i))))
        .collect();
    format!("{{{}}}", parts.join(", "))
}

fn resolve(pair: &AlmostGentlePair, spec: &ModuleSpec, max_steps: usize, oracle: bool, out: &mut dyn Write) -> Outcome {
    let res = resolve_symbolic(pair, spec, max_steps);
    for (k, level) in res.levels.iter().enumerate() {
        writeln!(out, "P{k}: {}", format_cover(pair, &level.cover))?;
        writeln!(out, "Omega{}: {}", k + 1, format_decomposition(pair, &level.syzygy))?;
    }
    match (res.terminated, res.length()) {
        (Termination::Projective, Some(n)) => writeln!(out, "length {n}")?,
        _ => writeln!(out, "not finished after {max_steps} steps")?,
    }
    if oracle {
        let mut o = Oracle::new(pair);
        let rep = o.rep(spec).map_err(|e| input(e.to_string()))?;
        let r = o.resolve(&rep, max_steps as u64 + 1);
        for (k, level) in r.levels.iter().enumerate() {
            writeln!(out, "oracle P{k}: {}", format_cover(pair, &level.top))?;
            writeln!(out, "oracle Omega{} dims: {}", k + 1, format_dims(pair, &level.syzygy_dims))?;
        }
        let periodic = if r.periodic { " (periodic)" } else { "" };
        writeln!(out, "oracle pdim {}{periodic}", r.pdim)?;
    }
    Ok(EXIT_OK)
}

fn gorenstein(pair: &AlmostGentlePair, json: bool, out: &mut dyn Write) -> Outcome {
    if json {
        write!(out, "{}", to_text(&report_json(pair)))?;
        return Ok(EXIT_OK);
    }
    let g = HomDim::new(pair).gorenstein_report();
    writeln!(out, "global dimension: {}", g.gldim.value)?;
    writeln!(out, "self-injective dimension: {}", g.injdim.value)?;
    writeln!(out, "gorenstein: {}", if g.gorenstein { "yes" } else { "no" })?;
    match &g.cycle_witness {
        Some(w) => {
            let c = match w.condition {
                CycleCondition::A => "A",
                CycleCondition::B => "B",
            };
            writeln!(
                out,
                "cycle criterion: condition {c} at {} with arrow {} on cycle {}",
                pair.vertex_name(w.vertex),
                pair.arrow_name(w.arrow),
                pair.format_arrows(&w.cycle)
            )?;
        }
        None => writeln!(out, "cycle criterion: not met")?,
    }
    writeln!(out, "injective envelope pdim: {}", g.envelope_pdim)?;
    writeln!(out, "note: {}", g.auslander_note)?;
    Ok(EXIT_OK)
}

fn parse_density(s: &str) -> Result<num_rational::Ratio<u32>, Failure> {
    let bad = || input(format!("--density expects p/q with 0 <= p <= q, got {s:?}"));
    let (p, q) = s.split_once('/').ok_or_else(bad)?;
    let (p, q): (u32, u32) = (p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?);
    if q == 0 || p > q {
        return Err(bad());
    }
    Ok(num_rational::Ratio::new(p, q))
}

fn random(params: &GeneratorParams, count: u64, emit: Option<&FsPath>, out: &mut dyn Write) -> Outcome {
    if let Some(dir) = emit {
        std::fs::create_dir_all(dir).map_err(|e| input(format!("{}: {e}", dir.display())))?;
    }
    for k in 0..count {
        let seed = params.seed.wrapping_add(k);
        let (pair, text) = random_ag_pair(&GeneratorParams { seed, ..params.clone() });
        match emit {
            Some(dir) => {
                let path = dir.join(format!("{}.agq", pair.name()));
                std::fs::write(&path, &text).map_err(|e| input(format!("{}: {e}", path.display())))?;
                writeln!(out, "{}", path.display())?;
            }
            None => {
                if k > 0 {
                    writeln!(out)?;
                }
                write!(out, "{text}")?;
            }
        }
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture(name: &str) -> String {
        format!("{}/../core/fixtures/{name}.agq", env!("CARGO_MANIFEST_DIR"))
    }

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let argv = std::iter::once("agq").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["gldim", &fixture("fig1")]).0, EXIT_OK);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
        let (code, _, err) = call(&["gldim", &fixture("fig1"), "--bogus"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(err.contains("Usage"), "{err}");
        assert_eq!(call(&["frobnicate"]).0, EXIT_INPUT);
        assert_eq!(call(&["gldim", "/nonexistent/x.agq"]).0, EXIT_INPUT);
        assert_eq!(call(&["pdim", &fixture("fig1")]).0, EXIT_INPUT);
        assert_eq!(call(&["pdim", &fixture("fig1"), "--simple", "1", "--injective", "1"]).0, EXIT_INPUT);
        assert_eq!(call(&["pdim", &fixture("fig1"), "--simple", "nope"]).0, EXIT_INPUT);
        assert_eq!(call(&["pdim", &fixture("fig1"), "--string", "a_1_2,a_2_3"]).0, EXIT_INPUT);
    }

    #[test]
    fn validate_reports_the_violation() {
        let (code, out, err) = call(&["validate", &fixture("loop_norel")]);
        assert_eq!(code, EXIT_INPUT);
        assert!(out.contains("NonzeroCycle"), "{out}");
        assert!(err.starts_with("error: "), "{err}");
        let (code, out, _) = call(&["validate", &fixture("fig1")]);
        assert_eq!(code, EXIT_OK);
        assert!(out.starts_with("FIG1: valid"));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let dir = std::env::temp_dir().join(format!("agq-parse-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let f = dir.join("bad.agq");
        std::fs::write(&f, "arrow a : 1 -> 2\narrow b : 2 => 3\n").unwrap();
        let (code, _, err) = call(&["gldim", f.to_str().unwrap()]);
        std::fs::remove_dir_all(&dir).unwrap();
        assert_eq!(code, EXIT_INPUT);
        assert!(err.contains("bad.agq:2:"), "{err}");
    }

    #[test]
    fn dimensions_and_strings() {
        assert_eq!(call(&["gldim", &fixture("fig1")]).1, "4\n");
        assert_eq!(call(&["gldim", &fixture("cyc2")]).1, "inf\n");
        assert_eq!(call(&["injdim", &fixture("cyc2")]).1, "0\n");
        assert_eq!(call(&["pdim", &fixture("fig1"), "--string", "a_1_2"]).1, "2\n");
        assert_eq!(call(&["pdim", &fixture("fig1"), "--injective", "2R"]).1, "4\n");
        let (_, out, _) = call(&["injdim", &fixture("cyc2e"), "--witness"]);
        assert!(out.starts_with("inf\nwitness: "), "{out}");
    }

    #[test]
    fn forbidden_listing() {
        let (_, out, _) = call(&["forbidden", &fixture("fig1"), "--from", "1"]);
        assert_eq!(out, "4\ta_1_2 a_2_3 a_3_4 a_4_5\n");
        let (_, out, _) = call(&["forbidden", &fixture("cyc2"), "--cycles"]);
        assert_eq!(out, "cycle\ta b\n");
        let (_, out, _) = call(&["forbidden", &fixture("cyc2")]);
        assert_eq!(out.lines().count(), 2);
    }

    #[test]
    fn json_is_stable() {
        let (_, a, _) = call(&["gorenstein", &fixture("fig1"), "--json"]);
        let (_, b, _) = call(&["gldim", &fixture("fig1"), "--json"]);
        assert_eq!(a, b);
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["algebra"], "FIG1");
        assert_eq!(v["valid"], true);
    }

    #[test]
    fn check_agrees_on_fixtures() {
        let (code, out, _) = call(&["check", &fixture("fig1"), "--cutoff", "20"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains(" 0 mismatches"), "{out}");
    }

    #[test]
    fn random_text_and_files() {
        let (_, one, _) = call(&["random", "--seed", "5"]);
        assert_eq!(one, random_ag_pair(&GeneratorParams::with_seed(5)).1);
        let (_, two, _) = call(&["random", "--seed", "5", "--count", "2"]);
        assert!(two.starts_with(&one) && two.contains("\n\nalgebra R6\n"));
        let dir = std::env::temp_dir().join(format!("agq-emit-{}", std::process::id()));
        let (code, out, _) = call(&["random", "--seed", "5", "--count", "3", "--emit", dir.to_str().unwrap()]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.lines().count(), 3);
        assert_eq!(std::fs::read_to_string(dir.join("R5.agq")).unwrap(), one);
        std::fs::remove_dir_all(&dir).unwrap();
        assert_eq!(call(&["random", "--seed", "1", "--density", "3/2"]).0, EXIT_INPUT);
        let (_, out, _) = call(&["random", "--seed", "1", "--no-loops", "--max-vertices", "3", "--max-arrows", "4"]);
        assert!(agq_core::load_agq(&out).unwrap().vertex_count() <= 3);
    }

    #[test]
    fn resolve_reports_levels() {
        let (_, out, _) = call(&["resolve", &fixture("cyc2"), "--simple", "1", "--max-steps", "3", "--oracle"]);
        assert!(out.contains("not finished after 3 steps"), "{out}");
        assert!(out.contains("(periodic)"), "{out}");
    }
}
