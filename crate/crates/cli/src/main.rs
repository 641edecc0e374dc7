//! versuper: check, classify and lift Lie superalgebras in Ver₄⁺ from JSON files.
//!
//! Reports are line-delimited JSON on stdout, or short tables with `--pretty`.
//! Exit codes: 0 pass, 1 mathematical failure, 2 input error, 3 resource guard.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use versuper::catalog::{self, Outcome};
use versuper::classify::{enumerate_superstructures, DEFAULT_BUDGET};
use versuper::envelop::{
    build_rewrite, confluence_check, dims_oracle, graded_dims, hilbert_closed_form, Flavor, DEFAULT_WORD_BUDGET,
};
use versuper::io::{AlgebraFile, Loaded};
use versuper::mixed::{check_mixed, check_operadic, lift_to, JacobiForm, LiftStatus, DEFAULT_LIFT_BUDGET};
use versuper::scalars::GaloisField;
use versuper::supermod::{decompose, SuperDim};
use versuper::verlie::{
    alternator_analysis, check_operadic_axioms, check_pbw_condition, check_restricted, check_superalgebra, gl,
    gl_formula_superdim,
};
use versuper::Error;

#[derive(Parser)]
#[command(name = "versuper", version, about = "Lie superalgebras in Ver4+ over fields of characteristic 2")]
struct Cli {
    /// Human-readable tables instead of JSON lines.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Plain,
    Super,
    Restricted,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Flavor {
        match f {
            FlavorArg::Plain => Flavor::Plain,
            FlavorArg::Super => Flavor::Super,
            FlavorArg::Restricted => Flavor::Restricted,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Confluence,
    Dims,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Run the axiom suites that apply to a file.
    Check {
        path: PathBuf,
        #[arg(long)]
        require_weakly_alternating: bool,
        #[arg(long)]
        require_pbw: bool,
        /// Run the file's expect block instead.
        #[arg(long)]
        expect: bool,
    },
    /// Confluence certificate and graded dimensions of an enveloping algebra.
    Pbw {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "super")]
        flavor: FlavorArg,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
        #[arg(long, value_enum, default_value = "both")]
        mode: Mode,
    },
    /// Super-structures of a given superdimension up to isomorphism.
    Classify {
        path: PathBuf,
        #[arg(long)]
        m0: usize,
        #[arg(long)]
        m1: usize,
        /// Extension degree m of GF(2^m) to classify over (1 or 2).
        #[arg(long)]
        field: Option<u8>,
    },
    /// Lift a Lie superalgebra to a mixed one over R/t^order.
    Lift {
        path: PathBuf,
        #[arg(long)]
        order: u32,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// gl(n0|n1|n2) as an algebra file with its superdimension.
    Gl {
        n0: usize,
        n1: usize,
        n2: usize,
        #[arg(long, default_value_t = 1)]
        field: u8,
    },
    /// The built-in catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Get { name: String },
    /// Write every entry to DIR/<name>.json.
    Export { dir: PathBuf },
    /// Run every expect block and print one summary line.
    Selftest {
        /// Read entries from this directory instead of the built-in catalog.
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

/// A finished command: report lines and the exit code.
struct Report {
    lines: Vec<Value>,
    pretty: Vec<String>,
    code: u8,
}

impl Report {
    fn new(code: u8) -> Self {
        Report { lines: Vec::new(), pretty: Vec::new(), code }
    }

    fn line(mut self, v: Value) -> Self {
        self.lines.push(v);
        self
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Usage(_) | Error::Malformed(_) => 2,
        Error::Domain(_) => 1,
        Error::Resource { .. } => 3,
    }
}

fn budget_from_env(default: usize) -> Result<usize, Error> {
    match std::env::var("VERSUPER_BUDGET") {
        Ok(s) => s.trim().parse().map_err(|_| Error::usage(format!("VERSUPER_BUDGET must be an integer, got {s:?}"))),
        Err(_) => Ok(default),
    }
}

fn read_file(path: &Path) -> Result<AlgebraFile, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::usage(format!("{}: {e}", path.display())))?;
    AlgebraFile::parse(&text)
}

fn to_json<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn cmd_check(path: &Path, weak: bool, pbw: bool, expect: bool) -> Result<Report, Error> {
    let file = read_file(path)?;
    if expect {
        let outcomes = catalog::run_expect(&file, budget_from_env(DEFAULT_LIFT_BUDGET)?, budget_from_env(DEFAULT_BUDGET)?)?;
        return Ok(outcome_report(&file.name, &outcomes));
    }
    let loaded = file.load()?;
    let mut report = json!({ "kind": file.kind, "name": file.name });
    let mut passed = true;
    match &loaded {
        Loaded::Module(m) => {
            report["superdim"] = to_json(&decompose(m)?.superdim);
        }
        Loaded::Verlie { algebra, structure, restricted } => {
            let operadic = check_operadic_axioms(algebra);
            passed &= operadic.passed();
            report["operadic"] = to_json(&operadic);
            if let Some(s) = structure {
                let sup = check_superalgebra(algebra, s);
                passed &= sup.passed();
                report["super"] = to_json(&sup);
                if let Some(r) = restricted {
                    let res = check_restricted(algebra, s, r)?;
                    passed &= res.passed();
                    report["restricted"] = to_json(&res);
                }
            }
            let alt = alternator_analysis(algebra);
            let pbw_ok = check_pbw_condition(algebra);
            report["pbw_condition"] = json!(pbw_ok);
            report["alternator"] = to_json(&alt);
            if weak && !alt.is_weakly_alternating {
                passed = false;
                report["required"] = json!("weakly alternating");
            }
            if pbw && !pbw_ok {
                passed = false;
                report["required"] = json!("PBW condition");
            }
        }
        Loaded::Mixed(g) => {
            let r = if g.is_standard() { check_mixed(g)? } else { check_operadic(g, JacobiForm::Braided) };
            passed &= r.passed();
            report["mixed"] = to_json(&r);
        }
    }
    report["passed"] = json!(passed);
    let mut out = Report::new(if passed { 0 } else { 1 });
    out.pretty.push(format!("{}: {}", file.name, if passed { "pass" } else { "FAIL" }));
    Ok(out.line(report))
}

fn outcome_report(name: &str, outcomes: &[Outcome]) -> Report {
    let passed = outcomes.iter().all(|o| o.passed);
    let mut out = Report::new(if passed { 0 } else { 1 });
    for o in outcomes {
        out.pretty.push(format!(
            "{name} {:<22} {} (expected {}, got {})",
            o.key,
            if o.passed { "pass" } else { "FAIL" },
            o.expected,
            o.actual
        ));
        out.lines.push(json!({ "name": name, "outcome": o }));
    }
    out.lines.push(json!({ "name": name, "expectations": outcomes.len(), "passed": passed }));
    out
}

fn plain_superdim(l: &versuper::verlie::VerLieAlgebra) -> SuperDim {
    let r = l.module().image().len();
    SuperDim::new(l.dim() - 2 * r, 0, r)
}

fn cmd_pbw(path: &Path, flavor: Flavor, max_degree: usize, mode: Mode) -> Result<Report, Error> {
    let file = read_file(path)?;
    let Loaded::Verlie { algebra, structure, restricted } = file.load()? else {
        return Err(Error::usage("pbw needs a verlie file"));
    };
    let sd = match &structure {
        Some(s) if flavor != Flavor::Plain => decompose(&s.module(&algebra)?)?.superdim,
        _ => plain_superdim(&algebra),
    };
    let closed = hilbert_closed_form(flavor, sd, max_degree);
    let rs = match build_rewrite(&algebra, structure.as_ref(), restricted.as_ref(), flavor) {
        Ok(rs) => rs,
        Err(Error::Domain(msg)) if mode != Mode::Confluence => {
            // Without PBW the rewriting system is not available; report the true dimensions instead.
            let oracle = dims_oracle(&algebra, structure.as_ref(), restricted.as_ref(), flavor, max_degree, DEFAULT_WORD_BUDGET)?;
            let mut out = Report::new(1);
            out.pretty.push(format!("{}: PBW fails ({msg})", file.name));
            out.pretty.push(format!("  dims   {:?}", oracle.series));
            out.pretty.push(format!("  closed {closed:?}"));
            return Ok(out.line(json!({
                "name": file.name,
                "flavor": flavor,
                "pbw": false,
                "reason": msg,
                "series": oracle.series,
                "closed_form": closed,
                "oracle": oracle,
            })));
        }
        Err(e) => return Err(e),
    };
    let mut report = json!({ "name": file.name, "flavor": flavor, "generators": rs.names() });
    let mut passed = true;
    let mut out = Report::new(0);
    if mode != Mode::Dims {
        let c = confluence_check(&rs, true);
        passed &= c.passed();
        out.pretty.push(format!("{}: confluence {} ({} ambiguities)", file.name, c.status, c.ambiguities_checked));
        report["confluence"] = to_json(&c);
    }
    if mode != Mode::Confluence {
        let series = graded_dims(&rs, max_degree);
        let matches = series == closed;
        passed &= matches;
        out.pretty.push(format!("  series {series:?}"));
        out.pretty.push(format!("  closed {closed:?} {}", if matches { "match" } else { "MISMATCH" }));
        report["series"] = json!(series);
        report["closed_form"] = json!(closed);
        report["matches_closed_form"] = json!(matches);
    }
    report["passed"] = json!(passed);
    out.code = if passed { 0 } else { 1 };
    Ok(out.line(report))
}

fn base_change(file: &AlgebraFile, degree: Option<u8>) -> Result<AlgebraFile, Error> {
    let Some(m) = degree else {
        return Ok(file.clone());
    };
    let target = GaloisField::new(m)?;
    if target == file.field {
        return Ok(file.clone());
    }
    if file.field != GaloisField::GF2 {
        return Err(Error::usage("base change is only supported from GF(2)"));
    }
    // Encodings of 0 and 1 agree in every GF(2^m).
    let mut out = file.clone();
    out.field = target;
    Ok(out)
}

/// Table cells [x,y'], [y,y], [y',y], [x,y] and α for algebras on 1+P with basis (y', x, y).
fn one_plus_p_row(file: &AlgebraFile, l: &versuper::verlie::VerLieAlgebra, s: &versuper::verlie::SuperStructure) -> Option<String> {
    if file.basis != ["y'", "x", "y"] {
        return None;
    }
    let show = |v: Vec<versuper::scalars::FieldScalar>| -> String {
        let terms: Vec<String> = v
            .iter()
            .zip(&file.basis)
            .filter(|(c, _)| c.value() != 0)
            .map(|(c, n)| if c.value() == 1 { n.clone() } else { format!("{}{n}", c.value()) })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    };
    let x = vec![l.field().zero(), l.field().one(), l.field().zero()];
    let alpha = s.q(l, &x).map(show).unwrap_or_else(|| "-".into());
    Some(format!(
        "{:>6} {:>6} {:>6} {:>8} {:>6}",
        show(l.basis_bracket(1, 0)),
        show(l.basis_bracket(2, 2)),
        show(l.basis_bracket(0, 2)),
        show(l.basis_bracket(1, 2)),
        alpha
    ))
}

fn cmd_classify(path: &Path, m0: usize, m1: usize, field: Option<u8>) -> Result<Report, Error> {
    let file = base_change(&read_file(path)?, field)?;
    let Loaded::Verlie { algebra, .. } = file.load()? else {
        return Err(Error::usage("classify needs a verlie file"));
    };
    let orbits = enumerate_superstructures(&algebra, m0, m1, budget_from_env(DEFAULT_BUDGET)?)?;
    let mut out = Report::new(0);
    out.pretty.push(format!("{}: {} orbit(s) of superdimension ({m0}, {m1}, ·)", file.name, orbits.len()));
    if file.basis == ["y'", "x", "y"] {
        out.pretty.push(format!("{:>6} {:>6} {:>6} {:>8} {:>6}", "[x,y']", "[y,y]", "[y',y]", "[x,y]", "Q(x)"));
    }
    for (i, o) in orbits.iter().enumerate() {
        let rep = AlgebraFile::from_verlie(
            &format!("{}_orbit{i}", file.name),
            &algebra,
            Some(&o.representative),
            None,
            file.basis.clone(),
        );
        match one_plus_p_row(&file, &algebra, &o.representative) {
            Some(row) => out.pretty.push(row),
            None => out.pretty.push(format!("orbit {i}: size {} stabilizer {}", o.orbit_size, o.stabilizer_size)),
        }
        out.lines.push(json!({
            "orbit": i,
            "superdim": o.superdim,
            "orbit_size": o.orbit_size,
            "stabilizer_size": o.stabilizer_size,
            "representative": rep,
        }));
    }
    out.lines.push(json!({ "name": file.name, "m0": m0, "m1": m1, "orbits": orbits.len() }));
    Ok(out)
}

fn cmd_lift(path: &Path, order: u32, budget: Option<usize>) -> Result<Report, Error> {
    let file = read_file(path)?;
    let Loaded::Verlie { algebra, structure: Some(s), .. } = file.load()? else {
        return Err(Error::usage("lift needs a verlie file with a structure block"));
    };
    let budget = match budget {
        Some(b) => b,
        None => budget_from_env(DEFAULT_LIFT_BUDGET)?,
    };
    let r = lift_to(&algebra, &s, order, budget)?;
    let code = match r.status {
        LiftStatus::Lifted => 0,
        LiftStatus::Obstructed => 1,
        LiftStatus::ExhaustedSearch => 3,
    };
    let mut out = Report::new(code);
    out.pretty.push(format!("{}: {:?}, reached R/t^{} of R/t^{order}", file.name, r.status, r.achieved_order));
    if let Some(o) = &r.obstruction {
        out.pretty.push(format!("  obstruction at order {} in blocks {:?}", o.order, o.blocks));
        for (name, w, res) in &o.equations {
            out.pretty.push(format!("    {name}: weight {w}, residue {res}"));
        }
    }
    let mut report = to_json(&r);
    report["name"] = json!(file.name);
    Ok(out.line(report))
}

fn cmd_gl(n0: usize, n1: usize, n2: usize, field: u8) -> Result<Report, Error> {
    let f = GaloisField::new(field)?;
    if n0 + n1 + 2 * n2 == 0 {
        return Err(Error::usage("gl needs a nonzero module"));
    }
    let g = gl(f, n0, n1, n2);
    let sd = decompose(&g.structure.module(&g.algebra)?)?.superdim;
    let n = n0 + n1 + 2 * n2;
    let names = (0..n * n).map(|i| format!("E{}{}", i / n, i % n)).collect();
    let file = AlgebraFile::from_verlie(&format!("gl_{n0}{n1}{n2}"), &g.algebra, Some(&g.structure), None, names);
    let mut out = Report::new(0);
    out.pretty.push(format!("gl({n0}|{n1}|{n2}): superdim ({}, {}, {})", sd.m0, sd.m1, sd.m2));
    Ok(out.line(json!({
        "superdim": sd,
        "formula_superdim": gl_formula_superdim(n0, n1, n2),
        "algebra": file,
    })))
}

fn load_dir(dir: &Path) -> Result<Vec<AlgebraFile>, Error> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Error::usage(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths.iter().map(|p| read_file(p)).collect()
}

fn cmd_catalog(action: CatalogAction) -> Result<Report, Error> {
    match action {
        CatalogAction::List => {
            let mut out = Report::new(0);
            for f in catalog::all()? {
                out.pretty.push(format!("{:<40} {}", f.name, f.description));
                out.lines.push(json!({ "name": f.name, "kind": f.kind, "description": f.description }));
            }
            Ok(out)
        }
        CatalogAction::Get { name } => {
            let f = catalog::get(&name)?;
            let mut out = Report::new(0);
            out.pretty.push(f.to_json());
            Ok(out.line(to_json(&f)))
        }
        CatalogAction::Export { dir } => {
            std::fs::create_dir_all(&dir).map_err(|e| Error::usage(format!("{}: {e}", dir.display())))?;
            let files = catalog::all()?;
            for f in &files {
                let p = dir.join(format!("{}.json", f.name));
                std::fs::write(&p, f.to_json()).map_err(|e| Error::usage(format!("{}: {e}", p.display())))?;
            }
            let mut out = Report::new(0);
            out.pretty.push(format!("wrote {} files to {}", files.len(), dir.display()));
            Ok(out.line(json!({ "written": files.len() })))
        }
        CatalogAction::Selftest { dir } => {
            let files = match dir {
                Some(d) => load_dir(&d)?,
                None => catalog::all()?,
            };
            let (lift_budget, classify_budget) = (budget_from_env(DEFAULT_LIFT_BUDGET)?, budget_from_env(DEFAULT_BUDGET)?);
            let mut out = Report::new(0);
            let (mut checked, mut failed) = (0, Vec::new());
            for f in files.iter().filter(|f| f.expect.is_some()) {
                checked += 1;
                let ok = match catalog::run_expect(f, lift_budget, classify_budget) {
                    Ok(outcomes) => {
                        let bad: Vec<&Outcome> = outcomes.iter().filter(|o| !o.passed).collect();
                        for o in &bad {
                            out.pretty.push(format!("{} {}: expected {}, got {}", f.name, o.key, o.expected, o.actual));
                            out.lines.push(json!({ "name": f.name, "outcome": o }));
                        }
                        bad.is_empty()
                    }
                    Err(e) => {
                        out.pretty.push(format!("{}: {e}", f.name));
                        out.lines.push(json!({ "name": f.name, "error": e.to_string() }));
                        false
                    }
                };
                if !ok {
                    failed.push(f.name.clone());
                }
            }
            let passed = failed.is_empty();
            out.code = if passed { 0 } else { 1 };
            out.pretty.push(format!("selftest: {} of {checked} files pass", checked - failed.len()));
            Ok(out.line(json!({ "selftest": if passed { "pass" } else { "fail" }, "files": checked, "failed": failed })))
        }
    }
}

fn run(cli: Cli) -> Result<Report, Error> {
    match cli.command {
        Command::Check { path, require_weakly_alternating, require_pbw, expect } => {
            cmd_check(&path, require_weakly_alternating, require_pbw, expect)
        }
        Command::Pbw { path, flavor, max_degree, mode } => cmd_pbw(&path, flavor.into(), max_degree, mode),
        Command::Classify { path, m0, m1, field } => cmd_classify(&path, m0, m1, field),
        Command::Lift { path, order, budget } => cmd_lift(&path, order, budget),
        Command::Gl { n0, n1, n2, field } => cmd_gl(n0, n1, n2, field),
        Command::Catalog { action } => cmd_catalog(action),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let pretty = cli.pretty;
    match run(cli) {
        Ok(r) => {
            if pretty {
                for l in &r.pretty {
                    println!("{l}");
                }
            } else {
                for l in &r.lines {
                    println!("{l}");
                }
            }
            ExitCode::from(r.code)
        }
        Err(e) => {
            let code = exit_code(&e);
            if pretty {
                eprintln!("error: {e}");
            } else {
                println!("{}", json!({ "error": e.to_string(), "exit": code }));
            }
            ExitCode::from(code)
        }
    }
}
