//! The `analyze`, `map-model`, `split-check` and `decompose` commands.

use std::collections::BTreeMap;

use mapspace_core::chains::rho_reduction;
use mapspace_core::invariants::{cup_length, d1_depth, d_length, whitehead_length, MinimalModel};
use mapspace_core::lie::{FreeDgl, LieElement};
use mapspace_core::mapping::*;
use mapspace_core::{fmt_rational, q, FreeCdga, GenId, Q};
use thiserror::Error;

use crate::model::{lie_element, parse, Attach, Block, BlockKind, ModelFile, ParseError};
use crate::report::*;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] mapspace_core::Error),
}

impl CliError {
    /// Process exit code: 2 for bad input, 3 for a failed internal check.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(mapspace_core::Error::Internal(_)) => 3,
            _ => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Clone, Debug)]
pub struct Options {
    pub cap: Option<i32>,
    pub q: Q,
    pub minimal: bool,
}

impl Default for Options {
    fn default() -> Self {
        Self { cap: None, q: q(1), minimal: false }
    }
}

/// Block and attach names picked on the command line.
#[derive(Clone, Debug, Default)]
pub struct Selection {
    pub x: Option<String>,
    pub y: Option<String>,
    pub attach: Option<String>,
}

pub struct Outcome {
    pub report: Report,
    /// A hypothesis of the splitting theorem failed.
    pub hypothesis_failed: bool,
}

pub struct Input {
    pub file: ModelFile,
    pub cap: i32,
}

impl Input {
    pub fn parse(src: &str, opts: &Options) -> CliResult<Self> {
        let file = parse(src)?;
        let cap = opts.cap.unwrap_or_else(|| file.cap_or_default());
        if cap < 2 {
            return Err(CliError::Input(format!("cap {cap} is too small")));
        }
        Ok(Self { file, cap })
    }

    fn pick(&self, name: Option<&str>, kind: BlockKind) -> CliResult<&Block> {
        let what = if kind == BlockKind::Lie { "lie" } else { "sullivan" };
        let b = match name {
            Some(n) => self.file.block(n).ok_or_else(|| CliError::Input(format!("no block named {n}")))?,
            None => self.file.first(kind).ok_or_else(|| CliError::Input(format!("no {what} block")))?,
        };
        if b.kind != kind {
            return Err(CliError::Input(format!("{} is not a {what} block", b.name)));
        }
        Ok(b)
    }

    /// The Lie block as a DGL, truncated just above its generators and
    /// attaching cycles.
    fn dgl(&self, b: &Block, scale: &Q) -> CliResult<FreeDgl> {
        let top = b.gens.iter().map(|g| g.1).max().unwrap_or(0);
        let cells = self.file.attaches.iter().filter(|a| a.lie == b.name).map(|a| a.cell - 2).max().unwrap_or(0);
        Ok(b.to_dgl(self.cap.min(top.max(cells) + 1), scale)?)
    }

    fn pick_attach(&self, name: Option<&str>) -> CliResult<&Attach> {
        match name {
            Some(n) => self.file.attach(n).ok_or_else(|| CliError::Input(format!("no attach named {n}"))),
            None => self.file.attaches.first().ok_or_else(|| CliError::Input("no attach declaration".into())),
        }
    }
}

fn gen_rows(a: &FreeCdga) -> Vec<GenRow> {
    (0..a.ngens() as GenId)
        .map(|g| GenRow { name: a.name(g).to_string(), degree: a.degree(g), differential: a.display(a.dv(g)) })
        .collect()
}

fn lie_rows(x: &FreeDgl) -> Vec<GenRow> {
    let lie = x.lie();
    (0..lie.ngens())
        .map(|g| GenRow {
            name: lie.names()[g].clone(),
            degree: lie.degrees()[g],
            differential: lie.display(x.d_generator(g as GenId)),
        })
        .collect()
}

fn count_rows(a: &FreeCdga) -> Vec<RankRow> {
    let mut m: BTreeMap<i32, usize> = BTreeMap::new();
    for &d in a.degrees() {
        *m.entry(d).or_default() += 1;
    }
    m.into_iter().map(|(degree, rank)| RankRow { degree, rank }).collect()
}

fn nonzero(rows: impl Iterator<Item = (i32, usize)>) -> Vec<RankRow> {
    rows.filter(|r| r.1 > 0).map(|(degree, rank)| RankRow { degree, rank }).collect()
}

fn dimension(x: &FreeDgl) -> i32 {
    1 + x.lie().degrees().iter().copied().max().unwrap_or(-1)
}

fn attach_cycle(x: &FreeDgl, a: &Attach, scale: &Q) -> CliResult<LieElement> {
    let z = lie_element(x.lie(), &a.expr, a.cell - 2)?.scale(scale);
    if !x.is_cycle(&z) {
        return Err(CliError::Core(mapspace_core::Error::InvalidModel(format!(
            "attach {}: {} is not a cycle",
            a.name,
            x.lie().display(&z)
        ))));
    }
    Ok(z)
}

fn hypothesis_text(r: &FailureReport) -> String {
    match &r.hypothesis {
        FailedHypothesis::Connectivity { conn, needed } => format!("connectivity: Conn(Y) = {conn} < {needed}"),
        FailedHypothesis::BracketLength => {
            format!("bracket length: bl = {} <= WL = {}", r.bracket_length, r.whitehead_length)
        }
    }
}

pub fn analyze(input: &Input, opts: &Options) -> CliResult<Outcome> {
    let cap = input.cap;
    let mut body = Analyze { sullivan: vec![], lie: vec![], attaches: vec![] };
    for b in &input.file.blocks {
        match b.kind {
            BlockKind::Sullivan => {
                let a = b.to_cdga(cap)?;
                let minimal = a.is_minimal();
                let (depth, wl) = if minimal {
                    let m = MinimalModel::new(a.clone())?;
                    (Some(d1_depth(&m)), Some(whitehead_length(&m)?))
                } else {
                    (None, None)
                };
                body.sullivan.push(SullivanInfo {
                    name: b.name.clone(),
                    generators: gen_rows(&a),
                    minimal,
                    d1_depth: depth,
                    whitehead_length: wl,
                    d_length: d_length(&a).to_string(),
                    cup_length: Capped { value: cup_length(&a, cap - 1), within_cap: cap - 1 },
                    betti: Capped { value: a.betti(cap - 1), within_cap: cap - 1 },
                });
            }
            BlockKind::Lie => {
                let x = input.dgl(b, &opts.q)?;
                let h = x.homology();
                let rho = rho_reduction(&x)?;
                let lcap = x.cap();
                body.lie.push(LieInfo {
                    name: b.name.clone(),
                    generators: lie_rows(&x),
                    minimal: x.check().minimal,
                    dimension: dimension(&x),
                    homology_ranks: Capped { value: nonzero((1..lcap).map(|n| (n, h.dim(n)))), within_cap: lcap - 1 },
                    chain_betti: Capped { value: rho.chain_ranks, within_cap: lcap - 1 },
                });
            }
        }
    }
    for a in &input.file.attaches {
        let b = input.pick(Some(&a.lie), BlockKind::Lie)?;
        let x = input.dgl(b, &opts.q)?;
        let z = attach_cycle(&x, a, &opts.q)?;
        body.attaches.push(AttachInfo {
            name: a.name.clone(),
            lie: a.lie.clone(),
            cell: a.cell,
            cycle: x.lie().display(&z),
            bracket_length: Capped { value: bracket_length(&x, &z)?.to_string(), within_cap: x.cap() - 1 },
        });
    }
    Ok(Outcome { report: Report::new(cap, Body::Analyze(body)), hypothesis_failed: false })
}

pub fn map_model(input: &Input, sel: &Selection, opts: &Options) -> CliResult<Outcome> {
    let cap = input.cap;
    let xb = input.pick(sel.x.as_deref(), BlockKind::Lie)?;
    let yb = input.pick(sel.y.as_deref(), BlockKind::Sullivan)?;
    let x = input.dgl(xb, &opts.q)?;
    let y = yb.to_minimal(cap)?;
    let bs = based_model(&x, &y)?;
    check_vanishing(&bs)?;
    let red = minimal_reduce(&bs)?;
    let body = MapModel {
        source: xb.name.clone(),
        target: yb.name.clone(),
        q: fmt_rational(&opts.q),
        based_generators: (!opts.minimal).then(|| gen_rows(bs.cdga())),
        based_generator_count: bs.cdga().ngens(),
        generators: gen_rows(&red.model),
        betti: Capped { value: red.model.betti(cap - 1), within_cap: cap - 1 },
        homotopy_ranks: nonzero((1..cap).map(|n| (n, red.rank(n)))),
    };
    Ok(Outcome { report: Report::new(cap, Body::MapModel(body)), hypothesis_failed: false })
}

pub fn split_check(input: &Input, sel: &Selection, opts: &Options) -> CliResult<Outcome> {
    let cap = input.cap;
    let a = input.pick_attach(sel.attach.as_deref())?;
    let xb = input.pick(Some(&a.lie), BlockKind::Lie)?;
    let yb = input.pick(sel.y.as_deref(), BlockKind::Sullivan)?;
    let x = input.dgl(xb, &opts.q)?;
    let y = yb.to_minimal(cap)?;
    let z = attach_cycle(&x, a, &opts.q)?;
    let verdict = splitting_check(&x, &z, &y, cap)?;
    let mut body = SplitCheck {
        source: xb.name.clone(),
        attach: a.name.clone(),
        cell: a.cell,
        target: yb.name.clone(),
        q: fmt_rational(&opts.q),
        verdict: verdict.name().to_string(),
        bracket_length: None,
        whitehead_length: None,
        d1_depth: None,
        failed_hypothesis: None,
        certificate: None,
        witness: None,
        blocking_degree: None,
        reason: None,
    };
    match &verdict {
        Verdict::Splits(w) => {
            body.bracket_length = Some(w.bracket_length.to_string());
            body.whitehead_length = Some(w.whitehead_length);
            body.d1_depth = Some(w.d1_depth);
            body.witness = Some(Witness {
                gammas: w
                    .gammas
                    .iter()
                    .map(|(v, g)| Gamma { v: y.cdga().name(*v).to_string(), gamma: w.bs.cdga().display(g) })
                    .collect(),
                product_generators: gen_rows(&w.product),
                generator_counts: count_rows(&w.product),
                betti_product: w.betti_product.clone(),
                betti_attached: w.betti_attached.clone(),
                transcript: w.transcript.clone(),
            });
        }
        Verdict::HypothesisFails(r) => {
            body.bracket_length = Some(r.bracket_length.to_string());
            body.whitehead_length = Some(r.whitehead_length);
            body.d1_depth = Some(r.d1_depth);
            body.failed_hypothesis = Some(hypothesis_text(r));
            body.certificate = r.certificate.as_ref().map(|c| Certificate {
                invariant: c.invariant.clone(),
                degree: c.degree,
                attached: c.attached,
                product: c.product,
            });
        }
        Verdict::UnknownWithinCap { degree, reason } => {
            body.blocking_degree = Some(*degree);
            body.reason = Some(reason.clone());
        }
    }
    let failed = matches!(verdict, Verdict::HypothesisFails(_));
    Ok(Outcome { report: Report::new(cap, Body::SplitCheck(body)), hypothesis_failed: failed })
}

pub fn decompose_cmd(input: &Input, sel: &Selection, opts: &Options) -> CliResult<Outcome> {
    let cap = input.cap;
    let xb = input.pick(sel.x.as_deref(), BlockKind::Lie)?;
    let yb = input.pick(sel.y.as_deref(), BlockKind::Sullivan)?;
    let x = input.dgl(xb, &opts.q)?;
    let y = yb.to_minimal(cap)?;
    let dec = decompose(&x, &y, cap)?;
    let cells = dec
        .steps
        .iter()
        .map(|s| CellRow {
            cell: s.name.clone(),
            dim: s.dim,
            verdict: s.verdict.as_ref().map_or("NullAttachingMap", |v| v.name()).to_string(),
        })
        .collect();
    let failure = dec.failure().map(|s| match &s.verdict {
        Some(Verdict::HypothesisFails(r)) => format!("cell {} (dim {}): {}", s.name, s.dim, hypothesis_text(r)),
        Some(Verdict::UnknownWithinCap { degree, reason }) => {
            format!("cell {} (dim {}): unknown within cap, degree {degree}: {reason}", s.name, s.dim)
        }
        _ => format!("cell {}", s.name),
    });
    let body = Decompose {
        source: xb.name.clone(),
        target: yb.name.clone(),
        succeeded: dec.succeeded(),
        cells,
        counts: dec.counts.iter().map(|(&degree, &rank)| RankRow { degree, rank }).collect(),
        product_generators: dec.product.as_ref().map(gen_rows).unwrap_or_default(),
        homotopy_ranks: if dec.succeeded() {
            nonzero((1..cap).map(|n| (n, homotopy_ranks_from_counts(&dec.counts, &y, n))))
        } else {
            vec![]
        },
        failure,
    };
    let failed = !dec.succeeded();
    Ok(Outcome { report: Report::new(cap, Body::Decompose(body)), hypothesis_failed: failed })
}
