//! Structured command output, rendered as JSON or plain text.

use std::fmt::Write as _;

use serde::Serialize;

pub const SCHEMA: &str = "mapspace-report/1";

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub cap: i32,
    pub warnings: Vec<String>,
    #[serde(flatten)]
    pub body: Body,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Body {
    Analyze(Analyze),
    MapModel(MapModel),
    SplitCheck(SplitCheck),
    Decompose(Decompose),
    Selftest(Selftest),
}

/// A value computed from degrees up to `within_cap` only.
#[derive(Clone, Debug, Serialize)]
pub struct Capped<T> {
    pub value: T,
    pub within_cap: i32,
}

#[derive(Clone, Debug, Serialize)]
pub struct GenRow {
    pub name: String,
    pub degree: i32,
    pub differential: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RankRow {
    pub degree: i32,
    pub rank: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SullivanInfo {
    pub name: String,
    pub generators: Vec<GenRow>,
    pub minimal: bool,
    pub d1_depth: Option<u32>,
    pub whitehead_length: Option<u32>,
    pub d_length: String,
    pub cup_length: Capped<u32>,
    pub betti: Capped<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LieInfo {
    pub name: String,
    pub generators: Vec<GenRow>,
    pub minimal: bool,
    pub dimension: i32,
    pub homology_ranks: Capped<Vec<RankRow>>,
    pub chain_betti: Capped<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AttachInfo {
    pub name: String,
    pub lie: String,
    pub cell: i32,
    pub cycle: String,
    pub bracket_length: Capped<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Analyze {
    pub sullivan: Vec<SullivanInfo>,
    pub lie: Vec<LieInfo>,
    pub attaches: Vec<AttachInfo>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MapModel {
    pub source: String,
    pub target: String,
    pub q: String,
    pub based_generators: Option<Vec<GenRow>>,
    pub based_generator_count: usize,
    pub generators: Vec<GenRow>,
    pub betti: Capped<Vec<usize>>,
    pub homotopy_ranks: Vec<RankRow>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub invariant: String,
    pub degree: i32,
    pub attached: usize,
    pub product: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Gamma {
    pub v: String,
    pub gamma: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub gammas: Vec<Gamma>,
    pub product_generators: Vec<GenRow>,
    pub generator_counts: Vec<RankRow>,
    pub betti_product: Vec<usize>,
    pub betti_attached: Vec<usize>,
    pub transcript: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SplitCheck {
    pub source: String,
    pub attach: String,
    pub cell: i32,
    pub target: String,
    pub q: String,
    pub verdict: String,
    pub bracket_length: Option<String>,
    pub whitehead_length: Option<u32>,
    pub d1_depth: Option<u32>,
    pub failed_hypothesis: Option<String>,
    pub certificate: Option<Certificate>,
    pub witness: Option<Witness>,
    pub blocking_degree: Option<i32>,
    pub reason: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CellRow {
    pub cell: String,
    pub dim: i32,
    pub verdict: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Decompose {
    pub source: String,
    pub target: String,
    pub succeeded: bool,
    pub cells: Vec<CellRow>,
    pub counts: Vec<RankRow>,
    pub product_generators: Vec<GenRow>,
    pub homotopy_ranks: Vec<RankRow>,
    pub failure: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Selftest {
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl Report {
    pub fn new(cap: i32, body: Body) -> Self {
        Self { schema: SCHEMA, cap, warnings: vec![], body }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        match &self.body {
            Body::Analyze(a) => text_analyze(&mut out, a),
            Body::MapModel(m) => text_map_model(&mut out, m, self.cap),
            Body::SplitCheck(s) => text_split(&mut out, s),
            Body::Decompose(d) => text_decompose(&mut out, d),
            Body::Selftest(s) => text_selftest(&mut out, s),
        }
        out
    }
}

fn gens(out: &mut String, rows: &[GenRow]) {
    let w = rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
    for r in rows {
        let _ = writeln!(out, "  {:<w$}  deg {:>3}  d = {}", r.name, r.degree, r.differential);
    }
}

fn ranks(rows: &[RankRow]) -> String {
    rows.iter().map(|r| format!("{}:{}", r.degree, r.rank)).collect::<Vec<_>>().join(" ")
}

fn list(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn text_analyze(out: &mut String, a: &Analyze) {
    for s in &a.sullivan {
        let _ = writeln!(out, "sullivan {}", s.name);
        gens(out, &s.generators);
        let opt = |x: Option<u32>| x.map_or("-".to_string(), |v| v.to_string());
        let _ = writeln!(out, "  minimal: {}", s.minimal);
        let _ = writeln!(out, "  d1-depth: {}", opt(s.d1_depth));
        let _ = writeln!(out, "  whitehead length: {}", opt(s.whitehead_length));
        let _ = writeln!(out, "  d-length: {}", s.d_length);
        let _ = writeln!(out, "  cup length: {} (within cap {})", s.cup_length.value, s.cup_length.within_cap);
        let _ = writeln!(out, "  betti: {} (within cap {})", list(&s.betti.value), s.betti.within_cap);
    }
    for l in &a.lie {
        let _ = writeln!(out, "lie {}", l.name);
        gens(out, &l.generators);
        let _ = writeln!(out, "  minimal: {}", l.minimal);
        let _ = writeln!(out, "  dimension: {}", l.dimension);
        let _ = writeln!(out, "  homology ranks: {}", ranks(&l.homology_ranks.value));
        let _ = writeln!(out, "  chain betti: {}", list(&l.chain_betti.value));
    }
    for t in &a.attaches {
        let _ = writeln!(
            out,
            "attach {} on {} (cell {}): {}  bracket length {}",
            t.name, t.lie, t.cell, t.cycle, t.bracket_length.value
        );
    }
}

fn text_map_model(out: &mut String, m: &MapModel, cap: i32) {
    let _ = writeln!(out, "based model of F_*({}, {}), q = {}", m.source, m.target, m.q);
    let _ = writeln!(out, "{} based generators", m.based_generator_count);
    if let Some(b) = &m.based_generators {
        gens(out, b);
    }
    let _ = writeln!(out, "minimal model ({} generators)", m.generators.len());
    gens(out, &m.generators);
    let _ = writeln!(out, "betti (degrees < {cap}): {}", list(&m.betti.value));
    let _ = writeln!(out, "homotopy ranks: {}", ranks(&m.homotopy_ranks));
}

fn text_split(out: &mut String, s: &SplitCheck) {
    let _ = writeln!(out, "split-check {} on {} (cell {}) into {}", s.attach, s.source, s.cell, s.target);
    let _ = writeln!(out, "verdict: {}", s.verdict);
    if let Some(b) = &s.bracket_length {
        let _ = writeln!(
            out,
            "bl = {b}, WL = {}, d1-depth = {}",
            s.whitehead_length.unwrap_or(0),
            s.d1_depth.unwrap_or(0)
        );
    }
    if let Some(h) = &s.failed_hypothesis {
        let _ = writeln!(out, "failed hypothesis: {h}");
    }
    match &s.certificate {
        Some(c) => {
            let _ = writeln!(
                out,
                "non-splitting certificate: {} differs in degree {} ({} vs {} for the product)",
                c.invariant, c.degree, c.attached, c.product
            );
        }
        None if s.verdict == "HypothesisFails" => {
            let _ = writeln!(out, "no non-splitting certificate: the fibration may still split");
        }
        None => {}
    }
    if let Some(w) = &s.witness {
        for g in &w.gammas {
            let _ = writeln!(out, "gamma_{} = {}", g.v, g.gamma);
        }
        let _ = writeln!(out, "product model generators per degree: {}", ranks(&w.generator_counts));
        for t in &w.transcript {
            let _ = writeln!(out, "  {t}");
        }
    }
    if let (Some(d), Some(r)) = (s.blocking_degree, &s.reason) {
        let _ = writeln!(out, "blocked in degree {d}: {r}");
    }
}

fn text_decompose(out: &mut String, d: &Decompose) {
    let _ = writeln!(out, "decompose F_*({}, {})", d.source, d.target);
    for c in &d.cells {
        let _ = writeln!(out, "  cell {} (dim {}): {}", c.cell, c.dim, c.verdict);
    }
    if d.succeeded {
        let prod: Vec<String> = d.counts.iter().map(|r| format!("(Omega^{} Y)^{}", r.degree, r.rank)).collect();
        let _ = writeln!(out, "F_*(X, Y) ~ {}", prod.join(" x "));
        let _ = writeln!(out, "homotopy ranks: {}", ranks(&d.homotopy_ranks));
    }
    if let Some(f) = &d.failure {
        let _ = writeln!(out, "failed: {f}");
    }
}

fn text_selftest(out: &mut String, s: &Selftest) {
    for c in &s.checks {
        let _ = writeln!(out, "[{}] {}: {}", c.status, c.name, c.detail);
    }
    let _ = writeln!(out, "{} passed, {} failed, {} skipped", s.passed, s.failed, s.skipped);
}
