//! Plain-text renderings of reports.

use std::fmt::Write;

use recollement::analyzer::{Condition, ShortcutRoute, TriangularReport, TriangularSide, Verdict};
use recollement::hochschild::HHReport;
use recollement::report::AnalysisReport;
use recollement::resolution::{Bound, Gorenstein};
use recollement::FieldSpec;

fn bound(c: &Condition) -> Bound {
    Bound { value: c.value, periodic: c.periodic }
}

fn gorenstein(g: &Gorenstein) -> String {
    match g {
        Gorenstein::Holds { value } => format!("Gorenstein of dimension {value}"),
        Gorenstein::Unknown { cutoff, left, right } => {
            format!("unknown at cutoff {cutoff} (left id {left}, right id {right})")
        }
    }
}

fn verdict(out: &mut String, title: &str, v: &Verdict) {
    let bound = v.bound.map(|b| format!(", bound {b}")).unwrap_or_default();
    let _ = writeln!(out, "{title:<36}{}{bound}", v.status);
    for n in &v.notes {
        let _ = writeln!(out, "    {n}");
    }
    for d in &v.diagnostics {
        let _ = writeln!(out, "    ! {d}");
    }
}

pub fn analysis(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let i = &r.input;
    let label = |v: &usize| i.vertices[*v].clone();
    let _ = writeln!(
        out,
        "{} over {}, a = {} {{{}}}",
        i.name,
        i.field,
        i.idempotent,
        i.idempotent_vertices.join(", ")
    );
    let _ = writeln!(
        out,
        "dim Λ = {}, corner aΛa = {} (dim {}), dim ΛaΛ = {}, dim Λ/ΛaΛ = {}",
        i.dims.lambda, i.corner_quiver, i.dims.corner, i.dims.ideal, i.dims.quotient
    );
    let c = &r.conditions;
    let _ = writeln!(out, "\nconditions (cutoff {})", c.cutoff);
    for (name, what, cond) in [
        ("alpha", "max id of the simples outside a", &c.alpha),
        ("beta", "pd of aΛ over aΛa", &c.beta),
        ("gamma", "max pd of the simples outside a", &c.gamma),
        ("delta", "pd of Λa over aΛa", &c.delta),
    ] {
        let _ = writeln!(out, "  {name:<6} {what:<34} {}", bound(cond));
    }
    let v = &r.verdicts;
    out.push('\n');
    verdict(&mut out, "eventually homological isomorphism", &v.evt_homological_iso);
    if let Some(d) = r.meta.proven_iso_degree {
        let _ = writeln!(out, "    Ext groups agree in every degree above {d}");
    }
    verdict(&mut out, "singular equivalence", &v.singular_equivalence);
    let g = &v.gorenstein;
    let _ = writeln!(
        out,
        "{:<36}{}",
        "Gorenstein transfer",
        if g.transfer_asserted { "asserted" } else { "not asserted" }
    );
    let _ = writeln!(out, "    Λ: {}", gorenstein(&g.lambda));
    let _ = writeln!(out, "    aΛa: {}", gorenstein(&g.corner));
    if let Some(x) = &g.contradiction {
        let _ = writeln!(out, "    ! {x}");
    }
    verdict(&mut out, "stable CM equivalence", &v.cm_equivalence);
    let fg = &v.fg_precondition;
    let _ = writeln!(out, "{:<36}{}", "fg transfer hypotheses", fg.precondition);
    let _ = writeln!(out, "    {}", fg.conclusion);
    if let Some(x) = &fg.refusal {
        let _ = writeln!(out, "    {x}");
    }

    let s = &r.stratifying;
    let _ = writeln!(
        out,
        "\n{:<36}{} (dim Λa⊗aΛ = {}, dim ΛaΛ = {}, rank of multiplication {}; Tor vanishing {} through degree {})",
        "stratifying ideal", s.stratifying, s.tensor_dim, s.ideal_dim, s.mult_rank, s.tor_vanishing.status, s.tor_vanishing.checked_through
    );
    let o = &r.ordered_simples;
    match (&o.result.order, &o.result.cycle) {
        (Some(order), _) => {
            let names: Vec<_> = order.iter().map(label).collect();
            let _ = writeln!(out, "{:<36}{} ({:?})", "ordered simples", names.join(" > "), o.result.soundness);
        }
        (None, Some(cycle)) => {
            let names: Vec<_> = cycle.iter().map(label).collect();
            let _ = writeln!(out, "{:<36}none, Ext cycle through {{{}}}", "ordered simples", names.join(", "));
        }
        (None, None) => {
            let _ = writeln!(out, "{:<36}none", "ordered simples");
        }
    }
    for route in &o.shortcut_routes {
        let why = match route {
            ShortcutRoute::PdRoute => "no relation starts outside a",
            ShortcutRoute::IdRoute => "no relation ends outside a",
        };
        let _ = writeln!(out, "    shortcut: {why}");
    }
    if let Some(h) = &r.hochschild {
        let _ = writeln!(out, "\nHochschild cohomology over {}", h.field);
        out.push_str(&hh_table(h));
    }
    out
}

pub fn hh_table(r: &HHReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:>4}  {:>6}  {:>6}  agree", "j", "Λ", "aΛa");
    for j in 0..=r.max_degree {
        let (a, b) = (r.dims_lambda[j], r.dims_corner[j]);
        let mark = if j >= r.predicted_agreement_from { "  (guaranteed)" } else { "" };
        let _ = writeln!(out, "{j:>4}  {a:>6}  {b:>6}  {}{mark}", if a == b { "yes" } else { "no" });
    }
    let observed = r.observed_agreement_from.map_or_else(|| "never".to_string(), |j| format!("from {j}"));
    let _ = writeln!(out, "predicted agreement from {}, observed {observed}", r.predicted_agreement_from);
    out
}

fn side(out: &mut String, s: &TriangularSide) {
    let _ = writeln!(out, "\ncomparison with {}", s.partner);
    for h in &s.hypotheses {
        let b = Bound { value: h.value, periodic: h.periodic };
        let _ = writeln!(out, "  {:<20} {b}", h.name);
    }
    let _ = writeln!(out, "  {:<20} {}", "singular equivalence", s.singular_equivalence);
    let _ = writeln!(out, "  {:<20} {}", "Gorenstein transfer", s.gorenstein_transfer);
    let _ = writeln!(out, "  {:<20} {}", "fg transfer", s.fg_transfer);
    let _ = writeln!(out, "  {:<20} {}", "CM equivalence", s.cm_equivalence);
    let _ = writeln!(out, "  {} is {}", s.partner, gorenstein(&s.partner_gorenstein));
}

pub fn triangular(r: &TriangularReport, field: FieldSpec) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "triangular algebra of dim {} over {field}", r.lambda_dim);
    let _ = writeln!(out, "  gldim Σ = {}, gldim Γ = {}", r.gldim_sigma, r.gldim_gamma);
    let _ = writeln!(out, "  pd of M over Γ = {}, over Σ = {}", r.pd_gamma_m, r.pd_m_sigma);
    let _ = writeln!(out, "  Λ: {}", gorenstein(&r.lambda_gorenstein));
    side(&mut out, &r.towards_sigma);
    side(&mut out, &r.towards_gamma);
    out
}
