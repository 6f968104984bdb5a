//! The analysis report and its canonical JSON form.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::analyzer::{
    condition_report, make_context, ordered_simples, proven_iso_degree, shortcut_order_exists, stratifying_check,
    verdict_cm_equivalence, verdict_evt_homological_iso, verdict_gorenstein_transfer, verdict_singular_equivalence,
    Condition, ConditionReport, GorensteinTransfer, OrderedSimples, ShortcutRoute, Status, StratifyingCheck, Verdict,
};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::hochschild::{fg_transfer_with, FgTransferReport, HHReport};
use crate::quiver::{build_algebra, QuiverPresentation};
use crate::resolution::DimBound;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dims {
    pub lambda: usize,
    pub corner: usize,
    pub ideal: usize,
    pub quotient: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub name: String,
    /// sha256 of the source text.
    pub sha256: String,
    pub field: FieldSpec,
    pub maxlen: usize,
    pub vertices: Vec<String>,
    pub idempotent: String,
    pub idempotent_vertices: Vec<String>,
    pub dims: Dims,
    pub corner_quiver: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub evt_homological_iso: Verdict,
    pub singular_equivalence: Verdict,
    pub gorenstein: GorensteinTransfer,
    pub cm_equivalence: Verdict,
    /// The Hochschild comparison is lifted to the top-level `hochschild` key.
    pub fg_precondition: FgTransferReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderedSimplesSection {
    #[serde(flatten)]
    pub result: OrderedSimples,
    pub shortcut_routes: Vec<ShortcutRoute>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub tool_version: String,
    pub cutoff: usize,
    pub hh_degree: Option<usize>,
    /// Ext isomorphisms are established above this degree.
    pub proven_iso_degree: Option<usize>,
    /// Wall-clock milliseconds per phase; only present when requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub input: InputDigest,
    pub conditions: ConditionReport,
    pub verdicts: Verdicts,
    pub stratifying: StratifyingCheck,
    pub ordered_simples: OrderedSimplesSection,
    pub hochschild: Option<HHReport>,
    pub meta: Meta,
}

#[derive(Debug, Clone)]
pub struct AnalysisOptions {
    pub cutoff: usize,
    pub maxlen: Option<usize>,
    /// `None` skips the Hochschild comparison.
    pub hh_degree: Option<usize>,
    pub timings: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { cutoff: 30, maxlen: None, hh_degree: Some(6), timings: false }
    }
}

pub fn sha256_hex(text: &str) -> String {
    format!("{:x}", Sha256::digest(text.as_bytes()))
}

/// Runs the full analysis of `(Λ, a)` for a presentation, over `field`
/// (which overrides the declared field).
pub fn analyze<F: Field>(
    name: &str,
    source: &str,
    qp: &QuiverPresentation,
    idempotent: &str,
    field: &F,
    opts: &AnalysisOptions,
) -> Result<AnalysisReport> {
    let mut timings = BTreeMap::new();
    let mut clock = Instant::now();
    let mut lap = |phase: &str, timings: &mut BTreeMap<String, u64>| {
        timings.insert(phase.to_string(), clock.elapsed().as_millis() as u64);
        clock = Instant::now();
    };
    let qp = qp.with_field(field.spec());
    let maxlen = opts.maxlen.unwrap_or_else(|| qp.default_maxlen());
    let lambda = std::sync::Arc::new(build_algebra(&qp, field, maxlen)?.algebra);
    let a = qp.idempotent(idempotent)?;
    let ctx = make_context(&lambda, a.clone())?;
    lap("build", &mut timings);

    let cutoff = opts.cutoff;
    let conditions = condition_report(&ctx, cutoff);
    lap("conditions", &mut timings);
    let evt = verdict_evt_homological_iso(&conditions);
    let singular = verdict_singular_equivalence(&conditions);
    let gorenstein = verdict_gorenstein_transfer(&ctx, &evt, cutoff);
    let cm = verdict_cm_equivalence(&gorenstein, &evt);
    lap("verdicts", &mut timings);
    let stratifying = stratifying_check(&ctx, cutoff)?;
    lap("stratifying", &mut timings);
    let ordered = OrderedSimplesSection {
        result: ordered_simples(&ctx, cutoff),
        shortcut_routes: shortcut_order_exists(&qp, &a),
    };
    lap("ordered_simples", &mut timings);

    let mut fg = fg_transfer_with(&ctx, evt.clone(), cutoff, opts.hh_degree);
    let hochschild = fg.hochschild.take();
    lap("hochschild", &mut timings);

    Ok(AnalysisReport {
        input: InputDigest {
            name: name.to_string(),
            sha256: sha256_hex(source),
            field: field.spec(),
            maxlen,
            vertices: qp.vertices.clone(),
            idempotent: idempotent.to_string(),
            idempotent_vertices: a.vertices().iter().map(|&v| qp.vertices[v].clone()).collect(),
            dims: Dims {
                lambda: lambda.dim(),
                corner: ctx.corner().dim(),
                ideal: ctx.ideal_dim(),
                quotient: ctx.quotient_dim(),
            },
            corner_quiver: fg.corner.clone(),
        },
        verdicts: Verdicts {
            evt_homological_iso: evt,
            singular_equivalence: singular,
            gorenstein,
            cm_equivalence: cm,
            fg_precondition: fg,
        },
        stratifying,
        ordered_simples: ordered,
        hochschild,
        meta: Meta {
            tool_version: TOOL_VERSION.to_string(),
            cutoff,
            hh_degree: opts.hh_degree,
            proven_iso_degree: proven_iso_degree(&conditions),
            timings_ms: opts.timings.then_some(timings),
        },
        conditions,
    })
}

/// Pretty JSON with sorted keys.
pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String> {
    // `Value` keeps object keys in a BTreeMap, so the round trip sorts them
    let v = serde_json::to_value(value).map_err(|e| Error::Unsupported(format!("serialize: {e}")))?;
    let mut s = serde_json::to_string_pretty(&v).map_err(|e| Error::Unsupported(format!("serialize: {e}")))?;
    s.push('\n');
    Ok(s)
}

pub fn from_json(text: &str) -> Result<AnalysisReport> {
    serde_json::from_str(text).map_err(|e| Error::Unsupported(format!("report JSON: {e}")))
}

/// Differences between a report and a reference computed with a different
/// cutoff that break monotonicity: a finite value may only turn into
/// `AtLeast` when the cutoff shrinks, a status may only move between Holds
/// and Unknown in the matching direction, and Fails never changes.
pub fn cutoff_inconsistencies(reference: &AnalysisReport, other: &AnalysisReport) -> Vec<String> {
    let mut out = Vec::new();
    let (rc, oc) = (reference.meta.cutoff, other.meta.cutoff);
    let cond = |name: &str, r: &Condition, o: &Condition, out: &mut Vec<String>| match (r.value, o.value) {
        (DimBound::Finite(a), DimBound::Finite(b)) if a != b => out.push(format!("{name}: {a} vs {b}")),
        (DimBound::Finite(a), DimBound::AtLeast(_)) if a <= oc => {
            out.push(format!("{name}: {a} lost at cutoff {oc}"))
        }
        (DimBound::AtLeast(_), DimBound::Finite(b)) if b <= rc => {
            out.push(format!("{name}: {b} missed at cutoff {rc}"))
        }
        _ => {}
    };
    let (r, o) = (&reference.conditions, &other.conditions);
    cond("alpha", &r.alpha, &o.alpha, &mut out);
    cond("beta", &r.beta, &o.beta, &mut out);
    cond("gamma", &r.gamma, &o.gamma, &mut out);
    cond("delta", &r.delta, &o.delta, &mut out);
    let status = |name: &str, r: Status, o: Status, out: &mut Vec<String>| {
        let bad = match (r, o) {
            (Status::Fails, x) | (x, Status::Fails) => r != x || o != x,
            (Status::Holds, Status::Unknown) => oc >= rc,
            (Status::Unknown, Status::Holds) => oc <= rc,
            _ => false,
        };
        if bad {
            out.push(format!("{name}: {r:?} vs {o:?}"));
        }
    };
    let (rv, ov) = (&reference.verdicts, &other.verdicts);
    status("evt_homological_iso", rv.evt_homological_iso.status, ov.evt_homological_iso.status, &mut out);
    status("singular_equivalence", rv.singular_equivalence.status, ov.singular_equivalence.status, &mut out);
    status("cm_equivalence", rv.cm_equivalence.status, ov.cm_equivalence.status, &mut out);
    status("fg_precondition", rv.fg_precondition.precondition, ov.fg_precondition.precondition, &mut out);
    status("stratifying", reference.stratifying.stratifying, other.stratifying.stratifying, &mut out);
    out
}
