//! Report documents: a JSON value plus a plain-text rendering, both
//! deterministic functions of the input.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use crate::criteria::{
    self, CriteriaReport, DegreeVerdict, EquivalenceGroup, EquivalenceSuite, ExtensionScenario,
    HeredityReport,
};
use crate::error::Result;
use crate::exactness::{self, ESideData, ExactnessReport, LinearChain, PositionResult};
use crate::linalg::{FpVector, Subspace};
use crate::module::CyclicGroupModule;
use crate::ring::{RingElement, RingModel};

pub const REPORT_SCHEMA: &str = "galcoh.report/1";

/// Overall outcome, mapped to the process exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExitStatus {
    Ok,
    Incomplete,
    InputError,
    Inconsistent,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        match self {
            ExitStatus::Ok => 0,
            ExitStatus::Incomplete => 1,
            ExitStatus::InputError => 2,
            ExitStatus::Inconsistent => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReportDocument {
    pub status: ExitStatus,
    pub json: Value,
    pub text: String,
}

impl ReportDocument {
    fn new(kind: &str, status: ExitStatus, body: Value, text: String) -> Self {
        let mut json = json!({ "schema": REPORT_SCHEMA, "kind": kind, "status": status });
        if let (Value::Object(target), Value::Object(extra)) = (&mut json, body) {
            target.extend(extra);
        }
        ReportDocument { status, json, text }
    }

    pub fn to_json_string(&self) -> String {
        let mut out = serde_json::to_string_pretty(&self.json).expect("reports serialize");
        out.push('\n');
        out
    }
}

fn subspace_json(s: &Subspace) -> Value {
    json!({ "dim": s.dim(), "ambient": s.ambient_dim(), "basis": s.basis().to_rows() })
}

fn class_text(ring: &RingModel, x: &RingElement) -> String {
    let terms: Vec<String> = x
        .coords()
        .support()
        .map(|(i, c)| {
            let label = ring.basis_label(x.degree(), i);
            if c == 1 {
                label
            } else {
                format!("{c}*{label}")
            }
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn scenario_echo(s: &ExtensionScenario) -> Value {
    let ring = s.ring();
    let coords = |x: &RingElement| x.coords().to_u32();
    let top = s.degree_cap().min(ring.top_degree());
    let bases: Vec<Value> = (0..=top)
        .map(|n| json!({ "degree": n, "dim": ring.h_dim(n), "labels": ring.basis_labels(n) }))
        .collect();
    json!({
        "name": s.name(),
        "p": s.field().p(),
        "model": ring.describe(),
        "a_class": coords(s.a_class()),
        "xi_class": coords(s.xi_class()),
        "minus_one_class": coords(s.minus_one_class()),
        "sum_of_squares": s.sum_of_squares(),
        "degree_cap": s.degree_cap(),
        "bases": bases,
    })
}

fn scenario_text(s: &ExtensionScenario, out: &mut String) {
    let ring = s.ring();
    let _ = writeln!(out, "scenario {} (p = {})", s.name(), s.field().p());
    let _ = writeln!(out, "model: {}", ring.describe());
    let _ = writeln!(out, "a = {}", class_text(ring, s.a_class()));
    let _ = writeln!(
        out,
        "xi = {}, (-1) = {}, sum of two squares: {}",
        class_text(ring, s.xi_class()),
        class_text(ring, s.minus_one_class()),
        yes_no(s.sum_of_squares())
    );
    let _ = writeln!(out, "degree cap: {}", s.degree_cap());
}

fn verdict_json(s: &ExtensionScenario, v: &DegreeVerdict) -> Value {
    let w = &v.witnesses;
    let mut witnesses = json!({
        "ann_prev": subspace_json(&w.ann_prev),
        "ann": subspace_json(&w.ann),
        "cup": subspace_json(&w.cup),
    });
    if let Some(x) = &w.xi_cup {
        witnesses["xi_cup"] = subspace_json(x);
    }
    if let Some(x) = &w.trivial_bound {
        witnesses["trivial_bound"] = subspace_json(x);
    }
    json!({
        "degree": v.degree,
        "h_dim": s.ring().h_dim(v.degree),
        "free": v.free,
        "trivial": v.trivial,
        "witnesses": witnesses,
    })
}

fn verdict_table(s: &ExtensionScenario, report: &CriteriaReport, out: &mut String) {
    let _ = writeln!(out, "\ndegree  dim H^n(F)  free  trivial  dim ann  dim a∪H^(n-1)");
    for v in &report.verdicts {
        let _ = writeln!(
            out,
            "{:<7} {:<11} {:<5} {:<8} {:<8} {}",
            v.degree,
            s.ring().h_dim(v.degree),
            yes_no(v.free),
            yes_no(v.trivial),
            v.witnesses.ann.dim(),
            v.witnesses.cup.dim()
        );
    }
}

fn group_text(g: &EquivalenceGroup, out: &mut String) {
    let _ = writeln!(out, "  degree {} {}:", g.degree, g.name);
    for c in &g.conditions {
        let _ = writeln!(out, "    [{}] {}", if c.holds { "x" } else { " " }, c.label);
    }
}

fn heredity_text(h: &HeredityReport, out: &mut String) {
    let list = |v: &[usize]| {
        v.iter()
            .map(|n| n.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    let _ = writeln!(
        out,
        "heredity: {}",
        if h.passed() { "no violations" } else { "VIOLATED" }
    );
    if !h.free_violations.is_empty() {
        let note = if h.free_required { "violation" } else { "permitted" };
        let _ = writeln!(
            out,
            "  freeness lost at degree(s) {} ({note})",
            list(&h.free_violations)
        );
    }
    if !h.trivial_violations.is_empty() {
        let _ = writeln!(out, "  triviality lost at degree(s) {}", list(&h.trivial_violations));
    }
    for v in &h.property_violations {
        let _ = writeln!(out, "  property lost: {v}");
    }
    if h.degree_one_not_free == Some(false) {
        let _ = writeln!(out, "  H^1(E) reported free where it never is");
    }
    if !h.propagation_violations.is_empty() {
        let _ = writeln!(
            out,
            "  freeness should propagate but fails at {}",
            list(&h.propagation_violations)
        );
    }
}

fn exactness_text(r: &ExactnessReport, out: &mut String) {
    let _ = writeln!(out, "exactness: {}", if r.passed() { "all checks pass" } else { "DEFECTS" });
    for c in r.four_term.iter().chain(&r.trivial_sequence) {
        let status = if c.passed() {
            "exact".to_string()
        } else {
            format!("fails at {:?}", c.failing_positions())
        };
        let _ = writeln!(out, "  {} (m = {}): {status}", c.sequence, c.degree);
    }
    for l in &r.lemmas {
        for c in &l.checks {
            let state = match c.holds {
                None => "n/a",
                Some(true) => "holds",
                Some(false) => "FAILS",
            };
            let _ = writeln!(out, "  degree {}: {}: {state}", l.degree, c.name);
        }
    }
}

fn invariants_json(report: &CriteriaReport) -> Value {
    json!({ "cf": report.cf, "ct": report.ct, "cd": report.cd, "tail": report.tail })
}

/// Full evaluation: verdicts, invariants, heredity, equivalences and, with
/// E-side data, every exactness check.
pub fn scenario_document(
    s: &ExtensionScenario,
    eside: Option<&ESideData>,
    threads: usize,
) -> Result<ReportDocument> {
    let report = if threads > 1 {
        criteria::evaluate_parallel(s, threads)?
    } else {
        criteria::evaluate(s)?
    };
    let heredity = criteria::hereditary_check(s, &report)?;
    let suite: EquivalenceSuite = criteria::equivalence_suite(s, eside)?;
    let exact = eside.map(|d| exactness::verify_all(s, d)).transpose()?;

    let mut status = ExitStatus::Ok;
    if !report.is_complete() {
        status = ExitStatus::Incomplete;
    }
    let exact_ok = exact.as_ref().is_none_or(ExactnessReport::passed);
    if !suite.consistent() || !heredity.passed() || !exact_ok {
        status = ExitStatus::Inconsistent;
    }

    let mut body = json!({
        "scenario": scenario_echo(s),
        "verdicts": report.verdicts.iter().map(|v| verdict_json(s, v)).collect::<Vec<_>>(),
        "invariants": invariants_json(&report),
        "heredity": heredity,
        "equivalence": { "consistent": suite.consistent(), "groups": suite.groups },
    });
    if let Some(e) = &exact {
        body["exactness"] = serde_json::to_value(e).expect("serializable");
    }

    let mut text = String::new();
    scenario_text(s, &mut text);
    verdict_table(s, &report, &mut text);
    let _ = writeln!(text, "\ncf = {}\nct = {}\ncd = {}", report.cf, report.ct, report.cd);
    if let Some(t) = report.tail {
        let _ = writeln!(
            text,
            "from degree {} on: free {}, trivial {}",
            t.from_degree,
            yes_no(t.free),
            yes_no(t.trivial)
        );
    }
    heredity_text(&heredity, &mut text);
    let _ = writeln!(
        text,
        "equivalences: {} groups, {}",
        suite.groups.len(),
        if suite.consistent() { "all consistent" } else { "DISAGREEMENT" }
    );
    for g in suite.disagreements() {
        group_text(g, &mut text);
    }
    if let Some(e) = &exact {
        exactness_text(e, &mut text);
    }
    let _ = writeln!(text, "status: {}", status_word(status));
    Ok(ReportDocument::new("scenario", status, body, text))
}

fn status_word(s: ExitStatus) -> &'static str {
    match s {
        ExitStatus::Ok => "ok",
        ExitStatus::Incomplete => "incomplete",
        ExitStatus::InputError => "input error",
        ExitStatus::Inconsistent => "inconsistent",
    }
}

/// Verdicts and equivalence groups at a single degree.
pub fn criteria_document(
    s: &ExtensionScenario,
    eside: Option<&ESideData>,
    degree: usize,
) -> Result<ReportDocument> {
    let v = criteria::evaluate_degree(s, degree)?;
    let groups = criteria::equivalence_groups(s, degree, eside)?;
    let consistent = groups.iter().all(EquivalenceGroup::agrees);
    let status = if consistent { ExitStatus::Ok } else { ExitStatus::Inconsistent };
    let body = json!({
        "scenario": scenario_echo(s),
        "verdict": verdict_json(s, &v),
        "equivalence": { "consistent": consistent, "groups": groups },
    });
    let mut text = String::new();
    scenario_text(s, &mut text);
    let _ = writeln!(
        text,
        "\ndegree {degree}: free {}, trivial {}",
        yes_no(v.free),
        yes_no(v.trivial)
    );
    for g in &groups {
        group_text(g, &mut text);
    }
    let _ = writeln!(text, "status: {}", status_word(status));
    Ok(ReportDocument::new("criteria", status, body, text))
}

pub fn module_document(m: &CyclicGroupModule, vectors: &[FpVector]) -> Result<ReportDocument> {
    let blocks = m.decompose();
    let lengths = vectors
        .iter()
        .map(|v| m.cyclic_length(v))
        .collect::<Result<Vec<_>>>()?;
    let body = json!({
        "module": {
            "p": m.field().p(),
            "dim": m.dim(),
            "fixed_points": subspace_json(&m.fixed_points()),
            "norm_image": subspace_json(&m.norm_image()),
            "free": m.is_free(),
            "trivial": m.is_trivial(),
            "h2_dim": m.h2_dim(),
            "blocks": blocks.lengths,
            "cyclic_lengths": lengths,
        }
    });
    let mut text = String::new();
    let _ = writeln!(text, "module of dimension {} over F_{}", m.dim(), m.field().p());
    let _ = writeln!(text, "fixed points: dim {}", m.fixed_points().dim());
    let _ = writeln!(text, "norm image: dim {}", m.norm_image().dim());
    let _ = writeln!(text, "blocks: {:?}", blocks.lengths);
    let _ = writeln!(text, "free: {}, trivial: {}", yes_no(m.is_free()), yes_no(m.is_trivial()));
    let _ = writeln!(text, "dim H^2(G, M): {}", m.h2_dim());
    for (v, l) in vectors.iter().zip(&lengths) {
        let _ = writeln!(text, "cyclic length of {:?}: {l}", v.to_u32());
    }
    Ok(ReportDocument::new("module", ExitStatus::Ok, body, text))
}

fn positions_text(positions: &[PositionResult], out: &mut String) {
    for r in positions {
        let _ = writeln!(
            out,
            "  position {}: {} (kernel excess {}, image excess {})",
            r.position,
            if r.exact() { "exact" } else { "NOT exact" },
            r.kernel_excess,
            r.image_excess
        );
    }
}

/// Exactness of a bare chain, or every check on a scenario with E-side data.
pub fn exactness_document(
    chain: Option<&LinearChain>,
    scenario: Option<(&ExtensionScenario, &ESideData)>,
) -> Result<ReportDocument> {
    let mut text = String::new();
    let mut body = json!({});
    let mut status = ExitStatus::Ok;
    if let Some(c) = chain {
        let positions = exactness::verify_exact(c)?;
        let exact = positions.iter().all(PositionResult::exact);
        body["chain"] = json!({ "dims": c.dims(), "exact": exact, "positions": positions });
        let _ = writeln!(text, "chain with dimensions {:?}: {}", c.dims(), if exact { "exact" } else { "not exact" });
        positions_text(&positions, &mut text);
    }
    if let Some((s, d)) = scenario {
        let report = exactness::verify_all(s, d)?;
        if !report.passed() {
            status = ExitStatus::Inconsistent;
        }
        body["scenario"] = scenario_echo(s);
        body["exactness"] = serde_json::to_value(&report).expect("serializable");
        scenario_text(s, &mut text);
        exactness_text(&report, &mut text);
    }
    let _ = writeln!(text, "status: {}", status_word(status));
    Ok(ReportDocument::new("exactness", status, body, text))
}
