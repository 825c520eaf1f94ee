mod expr;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value as Json};

use loomlab::atlas::{classify_33_looms, enumerate_r2_looms, property_battery, AtlasError, ClassifyOptions};
use loomlab::covers::{nu, tau, CoverError, IntCertificate};
use loomlab::fraclp::{fractional_edge_chromatic, nu_star, t_max, FracCertificate};
use loomlab::hypercore::isomorphic_colored;
use loomlab::loom::{
    audit_lemmas_with, conjecture_report, loom_closure_with, loom_quantities_with, verify_loom_with, Loom,
    Outcome, VerificationReport, VerifyOptions,
};
use loomlab::weave::{blow_up, blow_up_loom, blowup_matching_audit, BlowupSpec, Verify, WeaveError};
use loomlab::{Graph, Hypergraph};

use expr::{parse_and_eval, EvalError, Value};

#[derive(Parser)]
#[command(name = "loomlab", version, about = "Exact covering and matching numbers, looms and their constructions")]
struct Cli {
    /// Machine-readable output; errors go to stderr as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel searches (LOOMLAB_THREADS takes precedence).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Node budget for each exact covering or closed-set search.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Quantity {
    Tau,
    Nu,
    Taustar,
    Nustar,
    Chistar,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    #[value(name = "33")]
    ThreeThree,
    #[value(name = "r2")]
    R2,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact tau, nu, tau*, nu* of a hypergraph (or of A and B together), or chi*_e of a graph.
    Compute { quantity: Quantity, file: PathBuf },
    /// Check a loom or a certificate.
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
    /// Evaluate a construction expression.
    Construct {
        expr: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Accept composition and blow-up theorems instead of re-verifying every axiom.
        #[arg(long)]
        inherit: bool,
    },
    /// One loom-closure round on a pair.
    Closure { a: PathBuf, b: Option<PathBuf> },
    /// Classify small looms up to isomorphism.
    Classify {
        kind: Kind,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        max_classes: Option<usize>,
        /// Write the atlas here.
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Compare the class keys with an earlier atlas.
        #[arg(long)]
        against: Option<PathBuf>,
    },
    /// Seeded random checks of the fractional-cover statements.
    Battery {
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
        r: Vec<usize>,
    },
    /// Structural lemmas and conjecture instances for a loom, or the matching audit of a blow-up spec.
    Audit { file: PathBuf },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Verify the loom axioms for A and B (two hypergraph files, or one loom file).
    Loom { a: PathBuf, b: Option<PathBuf> },
    /// Re-check an integral or fractional certificate against a hypergraph.
    Cert { hypergraph: PathBuf, cert: PathBuf },
    /// Re-verify every class of an atlas file.
    Atlas { file: PathBuf },
}

#[derive(Debug)]
enum Fail {
    Usage(String),
    Verification(String),
    Budget(String),
    Internal(String),
}

impl Fail {
    fn code(&self) -> u8 {
        match self {
            Fail::Usage(_) => 64,
            Fail::Verification(_) => 2,
            Fail::Budget(_) => 3,
            Fail::Internal(_) => 1,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Fail::Usage(_) => "usage",
            Fail::Verification(_) => "verification",
            Fail::Budget(_) => "budget",
            Fail::Internal(_) => "internal",
        }
    }

    fn message(&self) -> &str {
        match self {
            Fail::Usage(m) | Fail::Verification(m) | Fail::Budget(m) | Fail::Internal(m) => m,
        }
    }
}

fn from_cover(e: CoverError) -> Fail {
    match e {
        CoverError::BudgetExceeded { .. } => Fail::Budget(e.to_string()),
        CoverError::Hyper(h) => Fail::Usage(h.to_string()),
    }
}

/// For reports already printed on stdout.
fn from_report(r: &VerificationReport) -> Fail {
    if r.undecided() {
        Fail::Budget("verification undecided within the budget".into())
    } else {
        Fail::Verification("not a loom".into())
    }
}

fn with_report(r: &VerificationReport) -> Fail {
    match from_report(r) {
        Fail::Budget(m) => Fail::Budget(format!("{m}:\n{r}")),
        f => Fail::Verification(format!("{}:\n{r}", f.message())),
    }
}

fn from_weave(e: WeaveError) -> Fail {
    match e {
        WeaveError::Cover(c) => from_cover(c),
        WeaveError::Verification(r) => with_report(&r),
        WeaveError::Closure(c) => with_report(&c.report),
        WeaveError::ConditionFailed(_) | WeaveError::HypothesisUnmet(_) => Fail::Verification(e.to_string()),
        other => Fail::Usage(other.to_string()),
    }
}

fn from_atlas(e: AtlasError) -> Fail {
    match e {
        AtlasError::BudgetExceeded { .. } => Fail::Budget(e.to_string()),
        AtlasError::Cover(c) => from_cover(c),
        AtlasError::Weave(w) => from_weave(w),
        AtlasError::TooLarge(_) | AtlasError::Unsupported(_) | AtlasError::TooManyClasses(_) => Fail::Usage(e.to_string()),
        AtlasError::Verification(r) => with_report(&r),
        other => Fail::Internal(other.to_string()),
    }
}

struct Ctx {
    json: bool,
    budget: Option<u64>,
}

impl Ctx {
    fn opts(&self) -> VerifyOptions {
        VerifyOptions { budget: self.budget }
    }

    fn emit<T: Serialize>(&self, value: &T, human: impl FnOnce() -> String) {
        if self.json {
            emit_text(&format!("{}\n", serde_json::to_string_pretty(value).expect("serializable output")));
        } else {
            emit_text(&human());
        }
    }
}

/// Write to stdout; a closed pipe (e.g. `| head`) ends the process quietly.
fn emit_text(text: &str) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: stdout: {e}");
        std::process::exit(1);
    }
}

fn read_text(path: &Path) -> Result<String, Fail> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|e| Fail::Usage(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))
}

fn read_json(path: &Path) -> Result<Json, Fail> {
    serde_json::from_str(&read_text(path)?).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))
}

fn parse<T: serde::de::DeserializeOwned>(v: Json, what: &str, path: &Path) -> Result<T, Fail> {
    serde_json::from_value(v).map_err(|e| Fail::Usage(format!("{}: not {what}: {e}", path.display())))
}

/// A hypergraph file, or a pair file read as the union of its two sides.
fn load_hypergraph(path: &Path) -> Result<Hypergraph, Fail> {
    let v = read_json(path)?;
    if v.get("edges").is_some() {
        return parse(v, "a hypergraph", path);
    }
    let (a, b) = pair_from(v, path)?;
    a.union(&b).map_err(|e| Fail::Usage(e.to_string()))
}

fn pair_from(v: Json, path: &Path) -> Result<(Hypergraph, Hypergraph), Fail> {
    let (Some(a), Some(b)) = (v.get("A"), v.get("B")) else {
        return Err(Fail::Usage(format!("{}: expected a hypergraph or an object with A and B", path.display())));
    };
    Ok((parse(a.clone(), "a hypergraph", path)?, parse(b.clone(), "a hypergraph", path)?))
}

fn load_pair(a: &Path, b: Option<&Path>) -> Result<(Hypergraph, Hypergraph), Fail> {
    match b {
        Some(b) => Ok((load_hypergraph(a)?, load_hypergraph(b)?)),
        None => pair_from(read_json(a)?, a),
    }
}

fn compute(ctx: &Ctx, q: Quantity, file: &Path) -> Result<(), Fail> {
    let h = load_hypergraph(file)?;
    match q {
        Quantity::Tau | Quantity::Nu => {
            let c = if matches!(q, Quantity::Tau) { tau(&h, ctx.budget) } else { nu(&h, ctx.budget) };
            let c = c.map_err(from_cover)?;
            ctx.emit(&c, || report::int_certificate(&c));
        }
        Quantity::Taustar | Quantity::Nustar => {
            let c = nu_star(&h).map_err(|e| Fail::Usage(e.to_string()))?;
            ctx.emit(&c, || report::frac_certificate(&c));
        }
        Quantity::Chistar => {
            let g = Graph::from_hypergraph(h).map_err(|e| Fail::Usage(e.to_string()))?;
            let value = fractional_edge_chromatic(&g).map_err(|e| Fail::Usage(e.to_string()))?;
            let t = t_max(&g).map_err(|e| Fail::Usage(e.to_string()))?;
            let out = json!({
                "value": value.to_string(),
                "max_degree": g.max_degree(),
                "t_max": t.as_ref().map(|(v, _)| v.to_string()),
                "t_set": t.as_ref().map(|(_, u)| u.to_vec()),
            });
            ctx.emit(&out, || report::chistar(&value, g.max_degree(), t.as_ref()));
        }
    }
    Ok(())
}

fn verify_pair(ctx: &Ctx, a: &Hypergraph, b: &Hypergraph) -> Result<Loom, Fail> {
    match verify_loom_with(a, b, &ctx.opts()) {
        Ok(l) => Ok(l),
        Err(r) => {
            ctx.emit(&r, || r.to_string());
            Err(from_report(&r))
        }
    }
}

fn verify(ctx: &Ctx, what: &VerifyCmd) -> Result<(), Fail> {
    match what {
        VerifyCmd::Loom { a, b } => {
            let (a, b) = load_pair(a, b.as_deref())?;
            let l = verify_pair(ctx, &a, &b)?;
            ctx.emit(&l, || format!("{}{}: all axioms pass\n", l.report(), report::loom_title(&l)));
        }
        VerifyCmd::Cert { hypergraph, cert } => {
            let h = load_hypergraph(hypergraph)?;
            let v = read_json(cert)?;
            let (kind, problem) = if v.get("primal").is_some() {
                let c: FracCertificate = parse(v, "a fractional certificate", cert)?;
                (format!("fractional certificate of value {}", c.value), c.check(&h).err())
            } else {
                let c: IntCertificate = parse(v, "an integral certificate", cert)?;
                let ok = c.validate(&h);
                let name = format!("{:?}", c.quantity).to_lowercase();
                (format!("{name} witness of size {}", c.value), (!ok).then(|| "witness is not feasible".to_string()))
            };
            let out = json!({ "certificate": kind, "valid": problem.is_none(), "problem": problem });
            ctx.emit(&out, || match &problem {
                None => format!("{kind}: valid\n"),
                Some(p) => format!("{kind}: INVALID ({p})\n"),
            });
            if let Some(p) = problem {
                return Err(Fail::Verification(p));
            }
        }
        VerifyCmd::Atlas { file } => {
            let v = read_json(file)?;
            let classes = v
                .get("classes")
                .and_then(Json::as_array)
                .ok_or_else(|| Fail::Usage(format!("{}: not an atlas", file.display())))?;
            let mut looms = Vec::new();
            for c in classes {
                let (a, b) = pair_from(c.clone(), file)?;
                let l = verify_loom_with(&a, &b, &ctx.opts()).map_err(|r| with_report(&r))?;
                looms.push(l);
            }
            let colored = |l: &Loom| -> Vec<(u8, loomlab::EdgeSet)> {
                l.a().edges().iter().map(|&e| (0, e)).chain(l.b().edges().iter().map(|&e| (1, e))).collect()
            };
            for (i, x) in looms.iter().enumerate() {
                for (j, y) in looms.iter().enumerate().skip(i + 1) {
                    if isomorphic_colored(x.n(), &colored(x), y.n(), &colored(y)).is_some() {
                        return Err(Fail::Verification(format!("classes {} and {} are isomorphic", i + 1, j + 1)));
                    }
                }
            }
            let out = json!({ "classes": looms.len(), "verified": true, "pairwise_non_isomorphic": true });
            ctx.emit(&out, || format!("{} classes: every loom verifies, no two are isomorphic\n", looms.len()));
        }
    }
    Ok(())
}

fn construct(ctx: &Ctx, src: &str, out: Option<&Path>, inherit: bool) -> Result<(), Fail> {
    let mode = match (inherit, ctx.budget) {
        (true, _) => Verify::Inherit,
        (false, Some(b)) => Verify::Budgeted(VerifyOptions { budget: Some(b) }),
        (false, None) => Verify::Full,
    };
    let value = parse_and_eval(src, &mode).map_err(|e| match e {
        EvalError::Expr(e) => {
            Fail::Usage(format!("{e}\n  {src}\n  {}^", " ".repeat(src.chars().take(e.column.saturating_sub(1)).count())))
        }
        EvalError::Weave(w) => from_weave(w),
        EvalError::Io(m) => Fail::Usage(m),
    })?;
    let (data, summary) = match &value {
        Value::Loom(l) => (serde_json::to_value(l), report::loom_summary(l)),
        Value::Graph(g) => (serde_json::to_value(g.as_hypergraph()), report::hypergraph_summary("graph", g.as_hypergraph())),
        Value::Hypergraph(h) => (serde_json::to_value(h), report::hypergraph_summary("hypergraph", h)),
    };
    let data = data.map_err(|e| Fail::Internal(e.to_string()))?;
    match out {
        None => emit_text(&format!("{}\n", serde_json::to_string_pretty(&data).expect("json"))),
        Some(path) => {
            let text = serde_json::to_string_pretty(&data).expect("json") + "\n";
            std::fs::write(path, text).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))?;
            ctx.emit(&json!({ "output": path, "summary": summary }), || format!("{summary}\nwritten to {}\n", path.display()));
        }
    }
    Ok(())
}

fn closure(ctx: &Ctx, a: &Path, b: Option<&Path>) -> Result<(), Fail> {
    let (a, b) = load_pair(a, b)?;
    match loom_closure_with(&a, &b, &ctx.opts()) {
        Ok(l) => {
            ctx.emit(&l, || format!("{}\n{}", report::loom_summary(&l), report::loom_edges(&l)));
            Ok(())
        }
        Err(f) => {
            ctx.emit(&f, || report::closure_failure(&f));
            Err(from_report(&f.report))
        }
    }
}

fn classify(ctx: &Ctx, kind: Kind, r: Option<usize>, max: Option<usize>, out: Option<&Path>, against: Option<&Path>) -> Result<(), Fail> {
    let res = match kind {
        Kind::ThreeThree => classify_33_looms(&ClassifyOptions { budget: ctx.budget }),
        Kind::R2 => {
            let r = r.ok_or_else(|| Fail::Usage("classify r2 needs --r".into()))?;
            enumerate_r2_looms(r, max)
        }
    }
    .map_err(from_atlas)?;
    if let Some(path) = out {
        let text = serde_json::to_string_pretty(&res).expect("json") + "\n";
        std::fs::write(path, text).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))?;
    }
    let diff = match against {
        Some(path) => {
            let old = read_json(path)?;
            let keys = |v: &Json| -> std::collections::BTreeSet<String> {
                v.get("classes")
                    .and_then(Json::as_array)
                    .map(|cs| cs.iter().filter_map(|c| c.get("key")?.as_str().map(String::from)).collect())
                    .unwrap_or_default()
            };
            let now = keys(&serde_json::to_value(&res).expect("json"));
            let before = keys(&old);
            Some((now.difference(&before).cloned().collect::<Vec<_>>(), before.difference(&now).cloned().collect::<Vec<_>>()))
        }
        None => None,
    };
    if ctx.json {
        let mut v = serde_json::to_value(&res).expect("json");
        if let Some((added, removed)) = &diff {
            v["diff"] = json!({ "added": added, "removed": removed });
        }
        emit_text(&format!("{}\n", serde_json::to_string_pretty(&v).expect("json")));
    } else {
        emit_text(&report::classification(&res));
        if let Some((added, removed)) = &diff {
            emit_text(&report::atlas_diff(added, removed));
        }
    }
    if !res.property_failures.is_empty() {
        return Err(Fail::Verification(format!("{} structural property failures", res.property_failures.len())));
    }
    if diff.is_some_and(|(a, r)| !a.is_empty() || !r.is_empty()) {
        return Err(Fail::Verification("class keys differ from the reference atlas".into()));
    }
    Ok(())
}

fn battery(ctx: &Ctx, count: usize, seed: u64, rs: &[usize]) -> Result<(), Fail> {
    let rep = property_battery(count, seed, rs).map_err(from_atlas)?;
    ctx.emit(&rep, || report::battery(&rep));
    match rep.total_violations() {
        0 => Ok(()),
        k => Err(Fail::Verification(format!("{k} violations"))),
    }
}

fn audit(ctx: &Ctx, file: &Path) -> Result<(), Fail> {
    let text = read_text(file)?;
    let v: Json = serde_json::from_str(&text).map_err(|e| Fail::Usage(format!("{}: {e}", file.display())))?;
    if v.get("P").is_some() {
        let spec = BlowupSpec::from_json(&text).map_err(from_weave)?;
        let outcome = blow_up(&spec).map_err(from_weave)?;
        if !outcome.report.holds() {
            ctx.emit(&outcome.report, || format!("{}\n", outcome.report));
            return Err(Fail::Verification(outcome.report.to_string()));
        }
        let mode = ctx.budget.map_or(Verify::Full, |b| Verify::Budgeted(VerifyOptions { budget: Some(b) }));
        let l = blow_up_loom(&spec, &mode).map_err(from_weave)?;
        let audit = blowup_matching_audit(&spec, &l).map_err(from_weave)?;
        let out = json!({ "conditions": outcome.report, "result": { "r": l.r(), "s": l.s(), "vertices": l.vertices().len() }, "matching": audit });
        ctx.emit(&out, || report::blowup_audit(&outcome.report, &l, &audit));
        let sides = [&audit.a_side, &audit.b_side];
        if sides.iter().flat_map(|s| s.iter()).any(|s| s.matching_transfer == Outcome::Fails || s.fractional_transfer == Outcome::Fails) {
            return Err(Fail::Verification("a matching transfer statement failed".into()));
        }
        return Ok(());
    }
    let (a, b) = pair_from(v, file)?;
    let l = verify_pair(ctx, &a, &b)?;
    let lemmas = audit_lemmas_with(&l, &ctx.opts());
    let q = loom_quantities_with(&l, &ctx.opts());
    let conj = conjecture_report(&l, &q);
    let out = json!({ "r": l.r(), "s": l.s(), "vertices": l.vertices().len(), "lemmas": lemmas, "quantities": q, "conjectures": conj });
    ctx.emit(&out, || report::loom_audit(&l, &lemmas, &q, &conj));
    let failed = lemmas.findings.iter().chain(&conj.findings).filter(|f| f.outcome == Outcome::Fails).count();
    if failed > 0 {
        return Err(Fail::Verification(format!("{failed} statements failed")));
    }
    Ok(())
}

fn setup_threads(flag: Option<usize>) -> Result<(), Fail> {
    let env = match std::env::var("LOOMLAB_THREADS") {
        Ok(s) => Some(s.trim().parse::<usize>().map_err(|_| Fail::Usage(format!("LOOMLAB_THREADS={s} is not a number")))?),
        Err(_) => None,
    };
    if let Some(n) = env.or(flag) {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Fail::Internal(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Fail> {
    setup_threads(cli.threads)?;
    let ctx = Ctx { json: cli.json, budget: cli.budget };
    match &cli.cmd {
        Cmd::Compute { quantity, file } => compute(&ctx, *quantity, file),
        Cmd::Verify { what } => verify(&ctx, what),
        Cmd::Construct { expr, out, inherit } => construct(&ctx, expr, out.as_deref(), *inherit),
        Cmd::Closure { a, b } => closure(&ctx, a, b.as_deref()),
        Cmd::Classify { kind, r, max_classes, out, against } => {
            classify(&ctx, *kind, *r, *max_classes, out.as_deref(), against.as_deref())
        }
        Cmd::Battery { count, seed, r } => battery(&ctx, *count, *seed, r),
        Cmd::Audit { file } => audit(&ctx, file),
    }
}

fn main() -> ExitCode {
    let json = std::env::args().any(|a| a == "--json");
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                emit_text(&e.to_string());
                return ExitCode::SUCCESS;
            }
            if json {
                eprintln!("{}", json!({ "error": { "code": 64, "kind": "usage", "message": e.to_string() } }));
            } else {
                eprint!("{e}");
            }
            return ExitCode::from(64);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if json {
                eprintln!("{}", json!({ "error": { "code": f.code(), "kind": f.kind(), "message": f.message() } }));
            } else {
                eprintln!("error: {}", f.message());
            }
            ExitCode::from(f.code())
        }
    }
}
