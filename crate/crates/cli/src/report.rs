//! Human-readable renderings. Vertices print 1-based.

use std::fmt::Write;

use loomlab::atlas::{check_statement, BatteryReport, ClassificationResult};
use loomlab::covers::IntCertificate;
use loomlab::fraclp::FracCertificate;
use loomlab::loom::{ClosureFailure, ConjectureReport, Finding, LemmaAudit, Loom, LoomQuantities, Outcome};
use loomlab::weave::{BlowupMatchingAudit, BlowupReport, SideAudit};
use loomlab::{EdgeSet, Hypergraph, Rational};

fn sets(edges: &[EdgeSet]) -> String {
    edges.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

pub fn int_certificate(c: &IntCertificate) -> String {
    let name = format!("{:?}", c.quantity).to_lowercase();
    let what = if name == "tau" { "cover" } else { "matching" };
    format!("{name} = {}\n{what}: {}\nsearch nodes: {}\n", c.value, sets(&c.witness), c.nodes)
}

pub fn frac_certificate(c: &FracCertificate) -> String {
    let mut s = format!("nu* = tau* = {}\n", c.value);
    let primal: Vec<String> = c.primal.iter().map(|(e, w)| format!("{e}:{w}")).collect();
    let dual: Vec<String> =
        c.dual.iter().enumerate().filter(|(_, w)| **w != Rational::default()).map(|(v, w)| format!("{}:{w}", v + 1)).collect();
    let _ = writeln!(s, "matching weights: {}", primal.join(" "));
    let _ = writeln!(s, "cover weights: {}", dual.join(" "));
    s
}

pub fn chistar(value: &Rational, max_degree: usize, t: Option<&(Rational, EdgeSet)>) -> String {
    let mut s = format!("chi*_e = {value}\nmax degree = {max_degree}\n");
    match t {
        Some((v, u)) => {
            let _ = writeln!(s, "t = {v} on {u}");
        }
        None => s.push_str("t: no odd set of size >= 3\n"),
    }
    s
}

pub fn loom_title(l: &Loom) -> String {
    format!("({},{})-loom on {} vertices", l.r(), l.s(), l.vertices().len())
}

pub fn loom_summary(l: &Loom) -> String {
    format!("{}, |A| = {}, |B| = {}, basis: {:?}", loom_title(l), l.a().len(), l.b().len(), l.report().basis)
}

pub fn loom_edges(l: &Loom) -> String {
    format!("A: {}\nB: {}\n", sets(l.a().edges()), sets(l.b().edges()))
}

pub fn hypergraph_summary(kind: &str, h: &Hypergraph) -> String {
    format!("{kind} on {} vertices with {} edges", h.n(), h.len())
}

pub fn closure_failure(f: &ClosureFailure) -> String {
    let mut s = String::new();
    if f.precondition {
        s.push_str("the pair does not meet the closure preconditions\n");
    } else {
        s.push_str("the closed pair is not a loom\n");
    }
    s.push_str(&f.report.to_string());
    if let Some((a, b)) = &f.closed {
        let _ = writeln!(s, "closed A ({} edges): {}", a.len(), sets(a.edges()));
        let _ = writeln!(s, "closed B ({} edges): {}", b.len(), sets(b.edges()));
    }
    s
}

pub fn classification(res: &ClassificationResult) -> String {
    let mut s = format!("({},{})-looms: {} classes\n", res.r, res.s, res.classes.len());
    let _ = writeln!(s, "indecomposable classes: {}", res.indecomposable_count);
    let _ = writeln!(s, "decomposable classes: {}", res.decomposable_count);
    for (i, c) in res.classes.iter().enumerate() {
        let shape = if c.decomposable { format!("decomposable, {} top factors", c.top_factors) } else { "indecomposable".into() };
        let blocks = c
            .blocks
            .as_ref()
            .map(|q| format!(", blocks {}", q.iter().map(ToString::to_string).collect::<Vec<_>>().join("+")))
            .unwrap_or_default();
        let _ = writeln!(s, "  {:>2}. {}  |A| = {:>2}  |B| = {:>2}  {shape}{blocks}", i + 1, &c.key[..12], c.loom.a().len(), c.loom.b().len());
    }
    let st = &res.stats;
    let _ = writeln!(
        s,
        "search: {} closed sets, {} candidates, {} looms, {} rejected, {:.2?}",
        st.closed_sets, st.candidates, st.looms, st.rejected, st.wall
    );
    for f in &res.property_failures {
        let _ = writeln!(s, "PROPERTY FAILURE: {f}");
    }
    s
}

pub fn atlas_diff(added: &[String], removed: &[String]) -> String {
    if added.is_empty() && removed.is_empty() {
        return "same classes as the reference atlas\n".into();
    }
    let mut s = String::new();
    for k in added {
        let _ = writeln!(s, "+ {k}");
    }
    for k in removed {
        let _ = writeln!(s, "- {k}");
    }
    s
}

pub fn battery(rep: &BatteryReport) -> String {
    let rs: Vec<String> = rep.uniformities.iter().map(ToString::to_string).collect();
    let mut s = format!("{} samples per uniformity r in {{{}}}, seed {}\n", rep.count, rs.join(","), rep.seed);
    for t in &rep.tallies {
        let _ = writeln!(
            s,
            "  {:<28} {:>5} checked  {:>3} violations   {}",
            t.name,
            t.checked,
            t.violations,
            check_statement(t.name).unwrap_or("")
        );
    }
    for v in &rep.violations {
        let _ = writeln!(s, "VIOLATION r = {} sample {} {}: {}", v.r, v.sample, v.check, v.detail);
    }
    let _ = writeln!(s, "digest: {}", rep.digest);
    s
}

fn outcome(o: Outcome) -> &'static str {
    match o {
        Outcome::Holds => "holds",
        Outcome::Fails => "FAILS",
        Outcome::OutOfDomain => "n/a",
        Outcome::Undetermined => "????",
    }
}

fn finding(s: &mut String, f: &Finding) {
    let _ = writeln!(s, "  [{:<5}] {}: {}", outcome(f.outcome), f.statement, f.detail);
    if !f.witness.is_empty() {
        let _ = writeln!(s, "          witness: {}", sets(&f.witness));
    }
}

pub fn loom_audit(l: &Loom, lemmas: &LemmaAudit, q: &LoomQuantities, c: &ConjectureReport) -> String {
    let mut s = format!("{}\nstructural statements:\n", loom_title(l));
    lemmas.findings.iter().for_each(|f| finding(&mut s, f));
    let tau = if q.tau.exact { q.tau.upper.to_string() } else { format!("[{}, {}]", q.tau.lower, q.tau.upper) };
    let nu = q.nu.as_ref().map_or("?".into(), |c| c.value.to_string());
    let _ = writeln!(
        s,
        "quantities: tau = {tau}, nu = {nu}, tau* = {}, tau*(A) = {}, tau*(B) = {}",
        q.tau_star.value, q.tau_star_a.value, q.tau_star_b.value
    );
    s.push_str("open statements:\n");
    c.findings.iter().for_each(|f| finding(&mut s, f));
    let pin = c.pinning_set.map_or("none".into(), |p| p.to_string());
    let _ = writeln!(s, "pinning set: {pin}");
    let _ = writeln!(s, "tau <= r + s - 2 without the pinnability hypothesis: {}", outcome(c.unconditional_cover_bound));
    s
}

fn side(s: &mut String, name: &str, a: &Option<SideAudit>) {
    let Some(a) = a else {
        let _ = writeln!(s, "  {name} side: skipped");
        return;
    };
    let _ = writeln!(
        s,
        "  {name} side: q = {}, outer nu = {}, d = {}, result nu = {}",
        a.q,
        a.outer_nu,
        a.d,
        a.result_nu.map_or("?".into(), |v| v.to_string())
    );
    let _ = writeln!(s, "    perfect matching transfer: {}", outcome(a.matching_transfer));
    let _ = writeln!(s, "    fractional transfer: {} (outer nu* = {}, result nu* = {})", outcome(a.fractional_transfer), a.outer_nu_star, a.result_nu_star);
    if !a.detail.is_empty() {
        let _ = writeln!(s, "    {}", a.detail);
    }
}

pub fn blowup_audit(r: &BlowupReport, l: &Loom, a: &BlowupMatchingAudit) -> String {
    let mut s = format!("{r}\nresult: {}\nmatching audit:\n", loom_title(l));
    side(&mut s, "A", &a.a_side);
    side(&mut s, "B", &a.b_side);
    for k in &a.skipped {
        let _ = writeln!(s, "  skipped: {k}");
    }
    s
}
