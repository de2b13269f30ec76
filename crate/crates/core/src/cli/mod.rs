//! The `chevdioph` command line: argument parsing, configuration, output
//! formatting and exit codes.

mod cache;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub use cache::TableCache;

use crate::chevalley::{representation_for, RepKind, Representation, EXTRASPECIAL_V1};
use crate::decomp::{bruhat_audit, bruhat_decompose, utv_decompose, UtvInput, WordFactor, DEFAULT_ORACLE_BUDGET, DEFAULT_REWRITE_BUDGET};
use crate::dioph::{
    default_carrier, double_centralizer_report, e_define_subgroup, gamma_set, solution_set, target_elements,
    verify_carrier_axioms, verify_ring_isomorphism, Carrier, RingInterpretation, Target,
};
use crate::error::{Error, Result};
use crate::group::{
    enumerate_group, verify_relations, verify_relations_symbolic, GenKind, GroupContext, DEFAULT_ELEMENT_CAP,
};
use crate::reduce::{
    compile_group_to_ring, compile_ring_to_group, context_of, load_corpus, parse_system, run_roundtrip,
    solve_group_system, solve_ring_system, GroupVarEncoding, System, DEFAULT_ASSIGNMENT_BUDGET,
};
use crate::rings::{FinRing, Ring};
use crate::rootsys::{build_root_system, generate_weyl, RootSystemId};
use crate::words::{parse_word, Word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERDICT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    JsonLines,
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct Config {
    /// Largest group that may be enumerated.
    #[arg(long, global = true, env = "CHEVDIOPH_BUDGET_ELEMS", default_value_t = DEFAULT_ELEMENT_CAP)]
    pub budget_elems: usize,
    /// Largest number of search nodes for a solver.
    #[arg(long, global = true, env = "CHEVDIOPH_BUDGET_ASSIGN", default_value_t = DEFAULT_ASSIGNMENT_BUDGET)]
    pub budget_assign: u64,
    #[arg(long, global = true, env = "CHEVDIOPH_FORMAT", value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Directory for derived tables; caching is off without it.
    #[arg(long, global = true, env = "CHEVDIOPH_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Ignore the cache directory.
    #[arg(long, global = true)]
    pub seedless: bool,
    #[arg(long, global = true, env = "CHEVDIOPH_CONVENTION", default_value = EXTRASPECIAL_V1)]
    pub convention: String,
}

#[derive(Debug, Parser)]
#[command(name = "chevdioph", version, about = "Chevalley groups over finite rings and equation reductions")]
pub struct Cli {
    #[command(flatten)]
    pub config: Config,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct ContextArgs {
    #[arg(long)]
    pub system: String,
    /// `ad`, `sl` or `sp`.
    #[arg(long, default_value = "ad")]
    pub rep: String,
    #[arg(long)]
    pub ring: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DecomposeMode {
    Bruhat,
    Utv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    R2g,
    G2r,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the roots of a system.
    Roots { system: String },
    /// Weyl group order and length distribution.
    Weyl {
        system: String,
        #[arg(long, default_value_t = 100_000)]
        cap: usize,
    },
    /// Structure constants and commutator coefficients as a chevtab table.
    Commtab {
        #[arg(long)]
        system: String,
        #[arg(long, default_value = "ad")]
        rep: String,
    },
    /// Steinberg relations, symbolically or over a finite ring.
    Relcheck {
        #[arg(long)]
        system: String,
        #[arg(long, default_value = "ad")]
        rep: String,
        /// Check over this ring; symbolic over Z[t,u] when absent.
        #[arg(long)]
        ring: Option<String>,
    },
    /// Bruhat or Gauss form of one element.
    Decompose {
        #[arg(long, value_enum)]
        mode: DecomposeMode,
        #[command(flatten)]
        ctx: ContextArgs,
        #[arg(long)]
        element: String,
    },
    /// Bruhat cell census of the whole group.
    Audit {
        #[command(flatten)]
        ctx: ContextArgs,
    },
    /// Roots whose unit unipotent commutes with x_root(1).
    Gamma {
        #[command(flatten)]
        ctx: ContextArgs,
        #[arg(long)]
        root: String,
    },
    /// Double centralizer against its predicted form.
    Dcent {
        #[command(flatten)]
        ctx: ContextArgs,
        #[arg(long)]
        root: String,
    },
    /// A pp-formula defining a root subgroup or the Y set.
    Edefine {
        #[command(flatten)]
        ctx: ContextArgs,
        /// `X<root>` or `Y`.
        #[arg(long)]
        target: String,
        #[arg(long, value_enum, default_value_t = Emit::Text)]
        emit: Emit,
        /// Enumerate the solution set and compare it with the subgroup.
        #[arg(long)]
        verify: bool,
    },
    /// Ring interpretation checks on the carrier.
    Ringcheck {
        #[command(flatten)]
        ctx: ContextArgs,
        /// `X<root>` or `Y`; chosen automatically when absent.
        #[arg(long)]
        carrier: Option<String>,
    },
    /// Compile a system to the other side.
    Reduce {
        #[arg(value_enum)]
        direction: Direction,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "out")]
        output: Option<PathBuf>,
        /// Target group for r2g as `<system> <rep>`; read from `# context` or SL3 otherwise.
        #[arg(long)]
        context: Option<String>,
        /// For g2r: encode group variables as products of L sweeps of root unipotents.
        #[arg(long)]
        elementary: Option<usize>,
    },
    /// Decide a system exhaustively.
    Solve {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        count: bool,
    },
    /// Compile every corpus file and check equisolvability.
    Roundtrip {
        #[arg(long)]
        corpus: PathBuf,
    },
}

/// Collected output lines, rendered per [`Format`].
struct Out {
    format: Format,
    lines: Vec<String>,
}

impl Out {
    fn record(&mut self, text: impl Into<String>, value: Value) {
        let line = match self.format {
            Format::Text => text.into(),
            Format::JsonLines => value.to_string(),
        };
        self.lines.push(line);
    }

    /// Multi-line text kept whole in JSON.
    fn block(&mut self, key: &str, text: &str) {
        match self.format {
            Format::Text => self.lines.extend(text.lines().map(str::to_string)),
            Format::JsonLines => self.lines.push(json!({ key: text }).to_string()),
        }
    }
}

/// Runs one command line; returns the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let help = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = if help { write!(stdout, "{}", e.render()) } else { write!(stderr, "{}", e.render()) };
            return if help { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let mut out = Out { format: cli.config.format, lines: Vec::new() };
    let status = execute(&cli, &mut out);
    for line in &out.lines {
        let _ = writeln!(stdout, "{line}");
    }
    match status {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded | Error::CapExceeded(_) => EXIT_BUDGET,
        Error::InFile { inner, .. } => exit_code(inner),
        Error::Syntax { .. }
        | Error::UnknownSymbol(_)
        | Error::UnknownSystem(_)
        | Error::UnknownConvention(_)
        | Error::IllegalRank { .. }
        | Error::KindMismatch { .. }
        | Error::BadRingSpec(_)
        | Error::BadModulus(_)
        | Error::ReducibleModulusPolynomial
        | Error::Io(_) => EXIT_USAGE,
        _ => EXIT_VERDICT,
    }
}

fn verdict(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_VERDICT
    }
}

fn representation(system: &str, rep: &str, convention: &str) -> Result<Arc<Representation>> {
    if convention != EXTRASPECIAL_V1 {
        return Err(Error::UnknownConvention(convention.to_string()));
    }
    representation_for(system.parse()?, RepKind::parse(rep)?)
}

fn context(args: &ContextArgs, cfg: &Config) -> Result<GroupContext<FinRing>> {
    let rep = representation(&args.system, &args.rep, &cfg.convention)?;
    Ok(GroupContext::new(rep, FinRing::parse(&args.ring)?))
}

fn cache(cfg: &Config) -> TableCache {
    match (&cfg.cache_dir, cfg.seedless) {
        (Some(d), false) => TableCache::new(Some(d)),
        _ => TableCache::disabled(),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn execute(cli: &Cli, out: &mut Out) -> Result<i32> {
    let cfg = &cli.config;
    match &cli.command {
        Command::Roots { system } => roots(system, out),
        Command::Weyl { system, cap } => weyl(system, *cap, out),
        Command::Commtab { system, rep } => {
            let rep = representation(system, rep, &cfg.convention)?;
            let comm = cache(cfg).commutator_table(&rep)?;
            let text = crate::chevalley::export_tables(&rep.table, &comm);
            for line in text.lines() {
                out.record(line, json!({ "record": line }));
            }
            Ok(EXIT_OK)
        }
        Command::Relcheck { system, rep, ring } => relcheck(cfg, system, rep, ring.as_deref(), out),
        Command::Decompose { mode, ctx, element } => decompose(cfg, *mode, ctx, element, out),
        Command::Audit { ctx } => audit(cfg, ctx, out),
        Command::Gamma { ctx, root } => {
            let c = context(ctx, cfg)?;
            let a = c.rs().parse_root(root)?;
            let names: Vec<String> = gamma_set(&c, a).members.iter().map(|&b| c.rs().name(b)).collect();
            out.record(
                format!("Gamma({}) = {{{}}} ({} roots)", c.rs().name(a), names.join(", "), names.len()),
                json!({ "root": c.rs().name(a), "gamma": names }),
            );
            Ok(EXIT_OK)
        }
        Command::Dcent { ctx, root } => {
            let c = context(ctx, cfg)?;
            let a = c.rs().parse_root(root)?;
            let table = enumerate_group(&c, cfg.budget_elems)?;
            let r = double_centralizer_report(&c, &table, a)?;
            out.record(
                format!(
                    "root {}: verdict {}, |C| = {}, |predicted| = {}, unexpected {}, missing {}",
                    c.rs().name(a),
                    r.verdict(),
                    r.computed.len(),
                    r.predicted.len(),
                    r.unexpected.len(),
                    r.missing.len()
                ),
                json!({
                    "root": c.rs().name(a), "verdict": r.verdict(), "centralizer": r.computed.len(),
                    "predicted": r.predicted.len(), "unexpected": r.unexpected.len(), "missing": r.missing.len(),
                }),
            );
            Ok(verdict(r.equal()))
        }
        Command::Edefine { ctx, target, emit: Emit::Text, verify } => edefine(cfg, ctx, target, *verify, out),
        Command::Ringcheck { ctx, carrier } => ringcheck(cfg, ctx, carrier.as_deref(), out),
        Command::Reduce { direction, input, output, context, elementary } => {
            reduce(*direction, input, output.as_deref(), context.as_deref(), *elementary, out)
        }
        Command::Solve { input, count } => solve(cfg, input, *count, out),
        Command::Roundtrip { corpus } => {
            let entries = load_corpus(corpus)?;
            let report = run_roundtrip(&entries, cfg.budget_elems, cfg.budget_assign)?;
            for e in &report.entries {
                let status = if e.passed() { "ok" } else { "FAIL" };
                out.record(
                    format!(
                        "{} {}: source {}, target {}, reparse {}, pullback {}",
                        status,
                        e.name,
                        e.pair.source,
                        e.pair.target,
                        e.reparses,
                        e.pair.pullback.map_or("-".to_string(), |p| p.to_string())
                    ),
                    json!({
                        "name": e.name, "passed": e.passed(), "source": e.pair.source.to_string(),
                        "target": e.pair.target.to_string(), "reparses": e.reparses, "pullback": e.pair.pullback,
                    }),
                );
            }
            let passed = report.entries.iter().filter(|e| e.passed()).count();
            out.record(
                format!("{passed}/{} passed", report.entries.len()),
                json!({ "passed": passed, "total": report.entries.len() }),
            );
            Ok(verdict(report.all_passed()))
        }
    }
}

fn roots(system: &str, out: &mut Out) -> Result<i32> {
    let id: RootSystemId = system.parse()?;
    let rs = build_root_system(id)?;
    for i in 0..rs.len() {
        let positive = rs.is_positive(i);
        out.record(
            format!(
                "{:>3} {:<16} {:<24} height {:>2} {}",
                i,
                rs.name(i),
                rs.coord_string(i),
                rs.height(i),
                if positive { "positive" } else { "negative" }
            ),
            json!({
                "index": i, "name": rs.name(i), "coords": rs.coord_string(i),
                "height": rs.height(i), "positive": positive,
            }),
        );
    }
    out.record(
        format!("{} roots, {} positive", rs.len(), rs.num_positive()),
        json!({ "roots": rs.len(), "positive": rs.num_positive() }),
    );
    Ok(EXIT_OK)
}

fn weyl(system: &str, cap: usize, out: &mut Out) -> Result<i32> {
    let rs = build_root_system(system.parse()?)?;
    let elems = generate_weyl(&rs, cap)?;
    let mut by_length = std::collections::BTreeMap::new();
    for w in &elems {
        *by_length.entry(w.reduced_word.len()).or_insert(0usize) += 1;
    }
    out.record(format!("|W({})| = {}", rs.id, elems.len()), json!({ "system": rs.id.to_string(), "order": elems.len() }));
    for (l, n) in by_length {
        out.record(format!("length {l}: {n}"), json!({ "length": l, "count": n }));
    }
    Ok(EXIT_OK)
}

fn relcheck(cfg: &Config, system: &str, rep: &str, ring: Option<&str>, out: &mut Out) -> Result<i32> {
    let rep = representation(system, rep, &cfg.convention)?;
    let report = match ring {
        Some(r) => verify_relations(&GroupContext::new(rep.clone(), FinRing::parse(r)?))?,
        None => verify_relations_symbolic(&rep, &cache(cfg).commutator_table(&rep)?),
    };
    let mut names: Vec<&str> = report.checks.iter().map(|c| c.relation).collect();
    names.dedup();
    for name in names {
        let total = report.count(name);
        let failed = report.checks.iter().filter(|c| c.relation == name && !c.passed).count();
        out.record(
            format!("{name}: {} passed, {failed} failed", total - failed),
            json!({ "relation": name, "passed": total - failed, "failed": failed }),
        );
    }
    for f in report.failures() {
        out.record(format!("FAIL {} {}", f.relation, f.instance), json!({ "failure": f.relation, "instance": f.instance }));
    }
    Ok(verdict(report.all_passed()))
}

/// A product of generator literals with parameters in the ring, if `w` is one.
fn word_factors(c: &GroupContext<FinRing>, w: &Word) -> Result<Option<Vec<WordFactor<u16>>>> {
    let parts = match w {
        Word::Prod(v) => v.clone(),
        Word::Gen(_) => vec![w.clone()],
        _ => return Ok(None),
    };
    let syms = c.ring.symbols();
    let lookup = |s: &str| syms.iter().find(|(n, _)| n == s).map(|(_, v)| *v);
    let mut out = Vec::new();
    for p in parts {
        let Word::Gen(lit) = p else { return Ok(None) };
        let t = lit.param.eval(&c.ring, &lookup)?;
        out.push(match lit.kind {
            GenKind::X => WordFactor::X(lit.root, t),
            GenKind::H => WordFactor::H(lit.root, t),
            GenKind::W => WordFactor::W(lit.root, t),
        });
    }
    Ok(Some(out))
}

fn decompose(cfg: &Config, mode: DecomposeMode, args: &ContextArgs, element: &str, out: &mut Out) -> Result<i32> {
    let c = context(args, cfg)?;
    let word = parse_word(element, c.rs())?;
    let g = crate::words::Evaluator::new(&c, None).eval(&word, &|_| None)?;
    let text = match mode {
        DecomposeMode::Bruhat => bruhat_decompose(&c, &g)?.display(&c),
        DecomposeMode::Utv => {
            let comm = cache(cfg).commutator_table(&c.rep)?;
            let input = match word_factors(&c, &word)? {
                Some(f) => UtvInput::Word(f),
                None => UtvInput::Matrix(g),
            };
            match utv_decompose(&c, &comm, &input, DEFAULT_REWRITE_BUDGET) {
                Ok(f) => f.display(&c),
                Err(Error::NotInBigCell) => {
                    out.record("NotInBigCell", json!({ "form": Value::Null, "reason": "NotInBigCell" }));
                    return Ok(EXIT_OK);
                }
                Err(e) => return Err(e),
            }
        }
    };
    out.record(text.clone(), json!({ "form": text }));
    Ok(EXIT_OK)
}

fn audit(cfg: &Config, args: &ContextArgs, out: &mut Out) -> Result<i32> {
    let c = context(args, cfg)?;
    let table = enumerate_group(&c, cfg.budget_elems)?;
    let a = bruhat_audit(&c, &table, DEFAULT_ORACLE_BUDGET)?;
    for (cell, n) in &a.census {
        out.record(format!("{cell}\t{n}"), json!({ "cell": cell, "count": n }));
    }
    let sum: usize = a.census.values().sum();
    out.record(
        format!("total {sum} of {}, non-unique {}", a.total, a.non_unique.len()),
        json!({ "total": sum, "order": a.total, "non_unique": a.non_unique.len() }),
    );
    Ok(verdict(sum == a.total && a.non_unique.is_empty()))
}

fn edefine(cfg: &Config, args: &ContextArgs, target: &str, verify: bool, out: &mut Out) -> Result<i32> {
    let c = context(args, cfg)?;
    let target = Target::parse(target, c.rs())?;
    let comm = cache(cfg).commutator_table(&c.rep)?;
    let formula = e_define_subgroup(&c, &comm, target)?;
    let header = format!("group {} {};", c.rep.label(), FinRing::parse(&args.ring)?.spec());
    out.block("formula", &formula.to_text(&header, c.rs()));
    if !verify {
        return Ok(EXIT_OK);
    }
    let table = enumerate_group(&c, cfg.budget_elems)?;
    let mut got = solution_set(&c, &table, &formula, cfg.budget_assign)?;
    let mut want = target_elements(&c, &table, target)?;
    got.sort_unstable();
    want.sort_unstable();
    out.record(
        format!("# solutions {}, subgroup {}, {}", got.len(), want.len(), if got == want { "equal" } else { "different" }),
        json!({ "solutions": got.len(), "subgroup": want.len(), "equal": got == want }),
    );
    Ok(verdict(got == want))
}

fn ringcheck(cfg: &Config, args: &ContextArgs, carrier: Option<&str>, out: &mut Out) -> Result<i32> {
    let c = context(args, cfg)?;
    let comm = cache(cfg).commutator_table(&c.rep)?;
    let carrier = match carrier {
        Some(t) => Carrier::from(Target::parse(t, c.rs())?),
        None => default_carrier(&c, &comm)?,
    };
    let interp = RingInterpretation::new(&c, &comm, carrier)?;
    let iso = verify_ring_isomorphism(&interp)?;
    out.record(
        format!(
            "carrier {}: {} pairs, add failures {}, mul failures {}, injectivity failures {}",
            interp.target().label(c.rs()),
            iso.pairs,
            iso.add_failures.len(),
            iso.mul_failures.len(),
            iso.injectivity_failures.len()
        ),
        json!({
            "carrier": interp.target().label(c.rs()), "pairs": iso.pairs, "add_failures": iso.add_failures.len(),
            "mul_failures": iso.mul_failures.len(), "injectivity_failures": iso.injectivity_failures.len(),
        }),
    );
    let axioms = verify_carrier_axioms(&interp)?;
    out.record(
        format!(
            "axioms: {} triples, associativity failures {}, distributivity failures {}, commutativity failures {}",
            axioms.triples,
            axioms.associativity_failures,
            axioms.distributivity_failures,
            axioms.commutativity_failures
        ),
        json!({
            "triples": axioms.triples, "associativity_failures": axioms.associativity_failures,
            "distributivity_failures": axioms.distributivity_failures,
            "commutativity_failures": axioms.commutativity_failures,
        }),
    );
    Ok(verdict(iso.passed() && axioms.passed()))
}

fn reduce(
    direction: Direction,
    input: &Path,
    output: Option<&Path>,
    ctx: Option<&str>,
    elementary: Option<usize>,
    out: &mut Out,
) -> Result<i32> {
    let src = parse_system(&read(input)?)?;
    let compiled = match (direction, &src) {
        (Direction::R2g, System::Ring(r)) => {
            let rep = match ctx {
                Some(text) => {
                    let (id, kind) = text.split_once(' ').ok_or_else(|| Error::UnknownSymbol(text.to_string()))?;
                    representation_for(id.trim().parse()?, RepKind::parse(kind.trim())?)?
                }
                None => context_of(&src)?,
            };
            let (g, size) = compile_ring_to_group(r, rep, None)?;
            out.record(
                format!(
                    "# circuit {} nodes, target {} vars and {} equations, linear bound {}",
                    size.circuit_size(),
                    size.target_vars,
                    size.target_equations,
                    size.linear_bound()
                ),
                json!({
                    "circuit": size.circuit_size(), "target_vars": size.target_vars,
                    "target_equations": size.target_equations, "linear_bound": size.linear_bound(),
                }),
            );
            System::Group(g)
        }
        (Direction::G2r, System::Group(g)) => {
            let enc = elementary.map_or(GroupVarEncoding::Scheme, GroupVarEncoding::Elementary);
            System::Ring(compile_group_to_ring(g, enc)?)
        }
        _ => return Err(Error::UnknownSymbol(format!("{:?} does not apply to this input", direction))),
    };
    let text = compiled.to_string();
    match output {
        Some(p) => std::fs::write(p, &text).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?,
        None => out.block("system", &text),
    }
    Ok(EXIT_OK)
}

fn solve(cfg: &Config, input: &Path, count: bool, out: &mut Out) -> Result<i32> {
    let sys = parse_system(&read(input)?)?;
    let (sat, witness, n) = match &sys {
        System::Ring(r) => {
            let s = solve_ring_system(r, count, cfg.budget_assign)?;
            let ring = r.finite_ring()?;
            let w = s.witness.map(|w| {
                r.vars.iter().zip(&w).map(|(v, a)| format!("{v} = {}", ring.format(a))).collect::<Vec<_>>()
            });
            (s.satisfiable, w, s.count)
        }
        System::Group(g) => {
            let s = solve_group_system(g, count, cfg.budget_elems, cfg.budget_assign)?;
            let ctx = g.context()?;
            let w = s.witness.map(|w| {
                g.vars.iter().zip(&w).map(|(v, m)| format!("{v} = {}", ctx.format(m))).collect::<Vec<_>>()
            });
            (s.satisfiable, w, s.count)
        }
    };
    let label = if sat { "SAT" } else { "UNSAT" };
    out.record(label, json!({ "verdict": label, "witness": witness, "count": n }));
    if let Some(w) = &witness {
        for line in w {
            out.record(line.clone(), json!({ "assignment": line }));
        }
    }
    if let Some(n) = n {
        out.record(format!("count {n}"), json!({ "count": n }));
    }
    Ok(EXIT_OK)
}
