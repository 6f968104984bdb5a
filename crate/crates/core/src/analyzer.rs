//! The recollement `(mod Λ/⟨a⟩, mod Λ, mod aΛa)` attached to an idempotent
//! `a`, the four finiteness conditions on it and the verdicts they imply.

use std::sync::Arc;

use petgraph::algo::{tarjan_scc, toposort};
use petgraph::graphmap::DiGraphMap;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Idempotent, QuotientMap};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::fixtures::TriangularData;
use crate::linalg::Matrix;
use crate::module::{hom_from_bimodule, hom_from_bimodule_with_basis, tensor_over, Bimodule, ModuleRep};
use crate::quiver::QuiverPresentation;
use crate::resolution::{
    injective_dimension, is_gorenstein, projective_dimension, tor_dim, with_resolution, Bound, DimBound, GlobalKind,
    Gorenstein, Periodicity,
};

/// Everything derived from a pair `(Λ, a)`.
pub struct IdempotentContext<F: Field> {
    lambda: Arc<Algebra<F>>,
    a: Idempotent,
    corner: Arc<Algebra<F>>,
    inclusion: Vec<usize>,
    ideal_basis: Vec<Vec<F::Elem>>,
    quotient: Option<(Arc<Algebra<F>>, QuotientMap<F>)>,
    outside: Vec<usize>,
    semisimple_part: ModuleRep<F>,
    lambda_a: Bimodule<F>,
    a_lambda: Bimodule<F>,
    la_order: Vec<usize>,
    al_order: Vec<usize>,
}

impl<F: Field> std::fmt::Debug for IdempotentContext<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IdempotentContext")
            .field("lambda_dim", &self.lambda.dim())
            .field("a", &self.a)
            .field("corner_dim", &self.corner.dim())
            .field("ideal_dim", &self.ideal_basis.len())
            .finish()
    }
}

pub fn make_context<F: Field>(lambda: &Arc<Algebra<F>>, a: Idempotent) -> Result<IdempotentContext<F>> {
    let n = lambda.vertex_count();
    if let Some(&v) = a.vertices().iter().find(|&&v| v >= n) {
        return Err(Error::UnknownVertex(v.to_string()));
    }
    let (corner, inclusion) = lambda.corner(&a)?;
    let corner = Arc::new(corner);
    let ideal_basis = lambda.two_sided_ideal(&a);
    let outside = a.complement(n);
    let quotient = if outside.is_empty() {
        None
    } else {
        let q = lambda.quotient(&ideal_basis)?;
        Some((Arc::new(q.algebra), q.map))
    };
    let semisimple_part = ModuleRep::semisimple(lambda, &outside);
    let all: Vec<usize> = (0..lambda.dim()).collect();
    let la_basis: Vec<usize> = all.iter().copied().filter(|&b| a.contains(lambda.right_vertex(b))).collect();
    let al_basis: Vec<usize> = all.iter().copied().filter(|&b| a.contains(lambda.left_vertex(b))).collect();
    let lambda_a = Bimodule::inside(lambda, (lambda, &all), (&corner, &inclusion), &la_basis)?;
    let a_lambda = Bimodule::inside(lambda, (&corner, &inclusion), (lambda, &all), &al_basis)?;
    Ok(IdempotentContext {
        la_order: Bimodule::inside_order(lambda, &la_basis),
        al_order: Bimodule::inside_order(lambda, &al_basis),
        lambda: lambda.clone(),
        a,
        corner,
        inclusion,
        ideal_basis,
        quotient,
        outside,
        semisimple_part,
        lambda_a,
        a_lambda,
    })
}

/// The six functors of the recollement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Functor {
    E,
    L,
    R,
    Q,
    P,
    I,
}

impl std::str::FromStr for Functor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "e" => Ok(Functor::E),
            "l" => Ok(Functor::L),
            "r" => Ok(Functor::R),
            "q" => Ok(Functor::Q),
            "p" => Ok(Functor::P),
            "i" => Ok(Functor::I),
            _ => Err(Error::Unsupported(format!("unknown functor '{s}'"))),
        }
    }
}

impl<F: Field> IdempotentContext<F> {
    pub fn lambda(&self) -> &Arc<Algebra<F>> {
        &self.lambda
    }

    pub fn idempotent(&self) -> &Idempotent {
        &self.a
    }

    pub fn corner(&self) -> &Arc<Algebra<F>> {
        &self.corner
    }

    /// Basis indices of `Λ` making up the corner, in corner order.
    pub fn inclusion(&self) -> &[usize] {
        &self.inclusion
    }

    pub fn ideal_basis(&self) -> &[Vec<F::Elem>] {
        &self.ideal_basis
    }

    pub fn ideal_dim(&self) -> usize {
        self.ideal_basis.len()
    }

    /// `Λ/⟨a⟩`, or `None` when it is zero.
    pub fn quotient(&self) -> Option<&Arc<Algebra<F>>> {
        self.quotient.as_ref().map(|(q, _)| q)
    }

    pub fn quotient_dim(&self) -> usize {
        self.quotient().map_or(0, |q| q.dim())
    }

    /// Vertices of `Λ` outside `a`; quotient vertex `n` is `quotient_vertices()[n]`.
    pub fn quotient_vertices(&self) -> &[usize] {
        &self.outside
    }

    pub fn semisimple_part(&self) -> &ModuleRep<F> {
        &self.semisimple_part
    }

    /// `Λa` as a `Λ`-`aΛa`-bimodule.
    pub fn lambda_a(&self) -> &Bimodule<F> {
        &self.lambda_a
    }

    /// `aΛ` as an `aΛa`-`Λ`-bimodule.
    pub fn a_lambda(&self) -> &Bimodule<F> {
        &self.a_lambda
    }

    fn quotient_parts(&self) -> Result<(&Arc<Algebra<F>>, &QuotientMap<F>)> {
        self.quotient
            .as_ref()
            .map(|(q, m)| (q, m))
            .ok_or_else(|| Error::Inapplicable("the quotient algebra is zero".into()))
    }

    pub fn apply(&self, which: Functor, x: &ModuleRep<F>) -> Result<ModuleRep<F>> {
        match which {
            Functor::E => self.e(x),
            Functor::L => self.l(x),
            Functor::R => self.r(x),
            Functor::Q => self.q(x),
            Functor::P => self.p(x),
            Functor::I => self.i(x),
        }
    }

    /// `aX` over the corner.
    pub fn e(&self, x: &ModuleRep<F>) -> Result<ModuleRep<F>> {
        expect_over(x, &self.lambda, "e")?;
        x.restrict(&self.corner, self.a.vertices(), &self.inclusion)
    }

    /// `Λa ⊗_{aΛa} Y`.
    pub fn l(&self, y: &ModuleRep<F>) -> Result<ModuleRep<F>> {
        expect_over(y, &self.corner, "l")?;
        Ok(tensor_over(&self.lambda_a, y)?.module)
    }

    /// `Hom_{aΛa}(aΛ, Y)`.
    pub fn r(&self, y: &ModuleRep<F>) -> Result<ModuleRep<F>> {
        expect_over(y, &self.corner, "r")?;
        hom_from_bimodule(&self.a_lambda, y)
    }

    /// `X / ⟨a⟩X` over the quotient.
    pub fn q(&self, x: &ModuleRep<F>) -> Result<ModuleRep<F>> {
        expect_over(x, &self.lambda, "q")?;
        let (qa, map) = self.quotient_parts()?;
        let s = x.generated(&self.a_unit_vectors(x));
        let (top, _) = x.quotient(&s)?;
        top.restrict(qa, &self.outside, map.kept())
    }

    /// The largest submodule of `X` killed by `⟨a⟩`, over the quotient.
    pub fn p(&self, x: &ModuleRep<F>) -> Result<ModuleRep<F>> {
        expect_over(x, &self.lambda, "p")?;
        let (qa, map) = self.quotient_parts()?;
        let (sub, _) = self.annihilator(x)?;
        sub.restrict(qa, &self.outside, map.kept())
    }

    /// Inflation along `Λ ↠ Λ/⟨a⟩`.
    pub fn i(&self, z: &ModuleRep<F>) -> Result<ModuleRep<F>> {
        let (qa, map) = self.quotient_parts()?;
        expect_over(z, qa, "i")?;
        z.inflate(&self.lambda, &self.outside, |g| map.project(&self.lambda.unit(g)))
    }

    fn a_unit_vectors(&self, x: &ModuleRep<F>) -> Vec<Vec<F::Elem>> {
        let f = x.field();
        self.a_positions(x)
            .into_iter()
            .map(|i| {
                let mut v = vec![f.zero(); x.dim()];
                v[i] = f.one();
                v
            })
            .collect()
    }

    /// Positions of `aX` inside `X`, in the order `e(X)` uses.
    fn a_positions(&self, x: &ModuleRep<F>) -> Vec<usize> {
        self.a.vertices().iter().flat_map(|&v| x.block(v)).collect()
    }

    fn annihilator(&self, x: &ModuleRep<F>) -> Result<(ModuleRep<F>, Matrix<F>)> {
        let f = x.field();
        let mut rows = Vec::new();
        for &b in &self.al_order {
            let act = x.action(b);
            for r in 0..act.rows() {
                rows.push(act.row(r).to_vec());
            }
        }
        let vectors = if rows.is_empty() {
            Vec::new()
        } else {
            Matrix::from_rows(f, rows)?.kernel_basis().columns()
        };
        x.submodule(&x.span(&vectors))
    }

    /// The counit `l(e(B)) → B`, `λ ⊗ x ↦ λx`, with its matrix (`dim B × dim l(e(B))`).
    pub fn counit(&self, b: &ModuleRep<F>) -> Result<(ModuleRep<F>, Matrix<F>)> {
        let f = b.field();
        let eb = self.e(b)?;
        let t = tensor_over(&self.lambda_a, &eb)?;
        let pos = self.a_positions(b);
        let columns: Vec<Vec<F::Elem>> =
            t.pairs.iter().map(|&(k, y)| b.action(self.la_order[k]).column(pos[y])).collect();
        let ambient = Matrix::from_columns(f, b.dim(), &columns);
        let d = t.module.dim();
        let mut section = Vec::with_capacity(d);
        for i in 0..d {
            let mut e = vec![f.zero(); d];
            e[i] = f.one();
            let s = t
                .projection
                .solve(&e)?
                .ok_or_else(|| Error::InvalidModule("tensor projection is not surjective".into()))?;
            section.push(s);
        }
        let section = Matrix::from_columns(f, t.pairs.len(), &section);
        Ok((t.module, ambient.mul(&section)))
    }

    /// The unit `B → r(e(B))`, `x ↦ (λ ↦ λx)`, with its matrix (`dim r(e(B)) × dim B`).
    pub fn unit(&self, b: &ModuleRep<F>) -> Result<(ModuleRep<F>, Matrix<F>)> {
        let f = b.field();
        let eb = self.e(b)?;
        let (reb, basis) = hom_from_bimodule_with_basis(&self.a_lambda, &eb)?;
        let pos = self.a_positions(b);
        let flat = |m: &Matrix<F>| -> Vec<F::Elem> { (0..m.rows()).flat_map(|r| m.row(r).to_vec()).collect() };
        let len = eb.dim() * self.al_order.len();
        let system = Matrix::from_columns(f, len, &basis.iter().map(flat).collect::<Vec<_>>());
        let mut columns = Vec::with_capacity(b.dim());
        for j in 0..b.dim() {
            let mut phi = Matrix::zeros(f, eb.dim(), self.al_order.len());
            for (c, &g) in self.al_order.iter().enumerate() {
                let act = b.action(g);
                for (r, &p) in pos.iter().enumerate() {
                    phi.set(r, c, act.get(p, j).clone());
                }
            }
            let coords = system
                .solve(&flat(&phi))?
                .ok_or_else(|| Error::InvalidModule("x ↦ (λ ↦ λx) is not a module map".into()))?;
            columns.push(coords);
        }
        Ok((reb.clone(), Matrix::from_columns(f, reb.dim(), &columns)))
    }
}

fn expect_over<F: Field>(x: &ModuleRep<F>, alg: &Arc<Algebra<F>>, functor: &str) -> Result<()> {
    if x.algebra().same_as(alg) {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch(format!("functor {functor} applied to a module over the wrong algebra")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Fails,
    Unknown,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::Unknown => "unknown",
        })
    }
}

impl Status {
    fn of(holds: bool) -> Self {
        if holds {
            Status::Holds
        } else {
            Status::Unknown
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub value: DimBound,
    pub periodic: Option<Periodicity>,
    pub status: Status,
}

impl From<Bound> for Condition {
    fn from(b: Bound) -> Self {
        Condition { value: b.value, periodic: b.periodic, status: Status::of(b.is_finite()) }
    }
}

impl Condition {
    fn finite(&self) -> Option<usize> {
        self.value.finite()
    }

    fn certified_infinite(&self) -> bool {
        self.periodic.is_some()
    }
}

/// `(α)` id of the quotient simples, `(β)` pd of `aΛ` over the corner,
/// `(γ)` pd of the quotient simples, `(δ)` pd of `Λa` over the opposite corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub alpha: Condition,
    pub beta: Condition,
    pub gamma: Condition,
    pub delta: Condition,
    pub cutoff: usize,
}

pub fn condition_report<F: Field>(ctx: &IdempotentContext<F>, cutoff: usize) -> ConditionReport {
    let simples = |f: fn(&ModuleRep<F>, usize) -> Bound| {
        let bounds: Vec<Bound> = ctx
            .outside
            .par_iter()
            .map(|&v| f(&ModuleRep::simple(&ctx.lambda, v), cutoff))
            .collect();
        Bound::max_of(bounds)
    };
    let ((alpha, gamma), (beta, delta)) = rayon::join(
        || rayon::join(|| simples(injective_dimension), || simples(projective_dimension)),
        || {
            rayon::join(
                || projective_dimension(&ctx.a_lambda.left_module(), cutoff),
                || projective_dimension(&ctx.lambda_a.right_module(), cutoff),
            )
        },
    );
    ConditionReport {
        alpha: alpha.into(),
        beta: beta.into(),
        gamma: gamma.into(),
        delta: delta.into(),
        cutoff,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub bound: Option<usize>,
    pub notes: Vec<String>,
    /// Internal inconsistencies; nonempty only when the engine contradicts a theorem.
    pub diagnostics: Vec<String>,
}

impl Verdict {
    fn new(status: Status) -> Self {
        Verdict { status, bound: None, notes: Vec::new(), diagnostics: Vec::new() }
    }
}

fn describe(name: &str, c: &Condition, cutoff: usize) -> String {
    match c.value {
        DimBound::Finite(d) => format!("{name} = {d}"),
        DimBound::AtLeast(_) if c.certified_infinite() => {
            let p = c.periodic.expect("checked");
            format!("{name} is infinite (syzygies {} and {} agree)", p.from, p.to)
        }
        DimBound::AtLeast(_) => format!("{name} unresolved at cutoff {cutoff}"),
    }
}

/// `e` is an eventually homological isomorphism when `(α)∧(β)` or `(γ)∧(δ)`.
pub fn verdict_evt_homological_iso(report: &ConditionReport) -> Verdict {
    let c = report.cutoff;
    let ab = report.alpha.finite().zip(report.beta.finite()).map(|(a, b)| a + b);
    let gd = report.gamma.finite().zip(report.delta.finite()).map(|(g, d)| g + d);
    let mut v = match (ab, gd) {
        (None, None) => {
            let mut v = Verdict::new(Status::Unknown);
            for (name, cond) in [
                ("alpha", &report.alpha),
                ("beta", &report.beta),
                ("gamma", &report.gamma),
                ("delta", &report.delta),
            ] {
                if !cond.value.is_finite() {
                    v.notes.push(describe(name, cond, c));
                }
            }
            v
        }
        _ => {
            let mut v = Verdict::new(Status::Holds);
            v.bound = [ab, gd].into_iter().flatten().min();
            if let Some(s) = ab {
                v.notes.push(format!("alpha + beta = {s}"));
            }
            if let Some(s) = gd {
                v.notes.push(format!("gamma + delta = {s}"));
            }
            v
        }
    };
    // (α)∧(β) and (γ)∧(δ) are equivalent
    let clash = |pair: Option<usize>, x: &Condition, y: &Condition, names: &str| {
        (pair.is_some() && (x.certified_infinite() || y.certified_infinite()))
            .then(|| format!("{names} certified infinite although the other pair is finite"))
    };
    v.diagnostics.extend(clash(ab, &report.gamma, &report.delta, "gamma/delta"));
    v.diagnostics.extend(clash(gd, &report.alpha, &report.beta, "alpha/beta"));
    v
}

/// The degree above which the argument behind the evt-iso bound actually
/// yields Ext isomorphisms: each vanishing hypothesis starts one degree past
/// the injective or projective dimension, so this is one more than the bound.
pub fn proven_iso_degree(report: &ConditionReport) -> Option<usize> {
    verdict_evt_homological_iso(report).bound.map(|b| b + 1)
}

/// Singular equivalence between `Λ` and the corner when `(β)` and `(γ)` hold.
pub fn verdict_singular_equivalence(report: &ConditionReport) -> Verdict {
    let c = report.cutoff;
    let holds = report.beta.value.is_finite() && report.gamma.value.is_finite();
    let mut v = Verdict::new(Status::of(holds));
    v.notes.push(describe("beta", &report.beta, c));
    v.notes.push(describe("gamma", &report.gamma, c));
    v
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GorensteinTransfer {
    pub lambda: Gorenstein,
    pub corner: Gorenstein,
    /// The theorem ties the two together (the eventual isomorphism holds).
    pub transfer_asserted: bool,
    pub contradiction: Option<String>,
}

fn certified_not_gorenstein(g: &Gorenstein) -> bool {
    match g {
        Gorenstein::Holds { .. } => false,
        Gorenstein::Unknown { left, right, .. } => left.certified_infinite() || right.certified_infinite(),
    }
}

pub fn verdict_gorenstein_transfer<F: Field>(ctx: &IdempotentContext<F>, evt: &Verdict, cutoff: usize) -> GorensteinTransfer {
    let (lambda, corner) = rayon::join(|| is_gorenstein(&ctx.lambda, cutoff), || is_gorenstein(&ctx.corner, cutoff));
    let transfer_asserted = evt.status == Status::Holds;
    let contradiction = (transfer_asserted
        && ((lambda.holds() && certified_not_gorenstein(&corner))
            || (corner.holds() && certified_not_gorenstein(&lambda))))
    .then(|| "Gorenstein property decided differently on the two sides".to_string());
    GorensteinTransfer { lambda, corner, transfer_asserted, contradiction }
}

/// Stable CM categories agree when `Λ` is Gorenstein and `e` is an eventual isomorphism.
pub fn verdict_cm_equivalence(gorenstein: &GorensteinTransfer, evt: &Verdict) -> Verdict {
    let holds = gorenstein.lambda.holds() && evt.status == Status::Holds;
    let mut v = Verdict::new(Status::of(holds));
    if !gorenstein.lambda.holds() {
        v.notes.push("Gorenstein property of the algebra not established".into());
    }
    if evt.status != Status::Holds {
        v.notes.push("eventual homological isomorphism not established".into());
    }
    v
}

/// A module with a name for reports.
pub type Sample<F> = (String, ModuleRep<F>);

/// All simples, all indecomposable projectives and the regular module.
pub fn default_samples<F: Field>(lambda: &Arc<Algebra<F>>) -> Vec<Sample<F>> {
    let name = |v: usize| lambda.label(lambda.vertices()[v]).trim_start_matches('e').to_string();
    let n = lambda.vertex_count();
    let mut out: Vec<Sample<F>> = (0..n).map(|v| (format!("S{}", name(v)), ModuleRep::simple(lambda, v))).collect();
    out.extend((0..n).map(|v| (format!("P{}", name(v)), ModuleRep::projective(lambda, v))));
    out.push(("regular".into(), ModuleRep::regular(lambda)));
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtMismatch {
    pub first: String,
    pub second: String,
    pub degree: usize,
    pub over_lambda: usize,
    pub over_corner: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtAgreement {
    pub bound: usize,
    pub window: usize,
    pub comparisons: usize,
    pub mismatches: Vec<ExtMismatch>,
}

impl ExtAgreement {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares `dim Ext^j_Λ(M, N)` with `dim Ext^j_{aΛa}(aM, aN)` for
/// `bound < j ≤ bound + window` over all pairs of samples.
pub fn verify_ext_agreement<F: Field>(
    ctx: &IdempotentContext<F>,
    bound: usize,
    window: usize,
    samples: &[Sample<F>],
) -> Result<ExtAgreement> {
    let restricted = samples.iter().map(|(_, m)| ctx.e(m)).collect::<Result<Vec<_>>>()?;
    let degrees = bound + 1..=bound + window;
    let per_first: Vec<Result<Vec<ExtMismatch>>> = (0..samples.len())
        .into_par_iter()
        .map(|i| {
            let mut out = Vec::new();
            for j in 0..samples.len() {
                for d in degrees.clone() {
                    let over_lambda = crate::resolution::ext_dim(&samples[i].1, &samples[j].1, d)?;
                    let over_corner = crate::resolution::ext_dim(&restricted[i], &restricted[j], d)?;
                    if over_lambda != over_corner {
                        out.push(ExtMismatch {
                            first: samples[i].0.clone(),
                            second: samples[j].0.clone(),
                            degree: d,
                            over_lambda,
                            over_corner,
                        });
                    }
                }
            }
            Ok(out)
        })
        .collect();
    let mut mismatches = Vec::new();
    for r in per_first {
        mismatches.extend(r?);
    }
    Ok(ExtAgreement { bound, window, comparisons: samples.len().pow(2) * window, mismatches })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Soundness {
    /// Every probed pair had a finite or periodic bound, so vanishing in higher degrees is implied.
    Certified,
    Heuristic,
}

/// `Ext^degree_Λ(S_from, S_to) ≠ 0`, vertices of `Λ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtEdge {
    pub from: usize,
    pub to: usize,
    pub degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderedSimples {
    /// Vertices of `Λ` outside `a`, smallest first.
    pub order: Option<Vec<usize>>,
    pub soundness: Soundness,
    pub edges: Vec<ExtEdge>,
    /// Vertices of a strongly connected block of edges that rules out any order.
    pub cycle: Option<Vec<usize>>,
}

/// A total order on the quotient simples with `S ⪯ S' ⟹ Ext^{>0}(S, S') = 0`.
///
/// `Ext^j(S_u, S_v)` is read off the minimal resolution of `S_u` as the
/// multiplicity of `P_v` in degree `j`. A pair is probed up to the smaller of
/// `pd S_u` and `id S_v` when either is finite, through one full period when
/// the resolution of `S_u` is periodic, and up to `cutoff` otherwise.
pub fn ordered_simples<F: Field>(ctx: &IdempotentContext<F>, cutoff: usize) -> OrderedSimples {
    let lambda = &ctx.lambda;
    let nodes = &ctx.outside;
    let pd: Vec<Bound> = nodes.par_iter().map(|&u| projective_dimension(&ModuleRep::simple(lambda, u), cutoff)).collect();
    let id: Vec<Bound> = nodes.par_iter().map(|&v| injective_dimension(&ModuleRep::simple(lambda, v), cutoff)).collect();
    let probes: Vec<(Vec<ExtEdge>, bool)> = nodes
        .par_iter()
        .enumerate()
        .map(|(i, &u)| {
            let mut edges = Vec::new();
            let mut certified = true;
            let own = match (pd[i].value.finite(), pd[i].periodic) {
                (Some(d), _) => Some(d),
                (None, Some(p)) => Some(p.to.max(1)),
                _ => None,
            };
            let depths: Vec<(usize, usize)> = nodes
                .iter()
                .enumerate()
                .map(|(k, &v)| {
                    let depth = match (own, id[k].value.finite()) {
                        (Some(a), Some(b)) => a.min(b),
                        (Some(a), None) | (None, Some(a)) => a,
                        (None, None) => {
                            certified = false;
                            cutoff
                        }
                    };
                    (v, depth)
                })
                .collect();
            let deepest = depths.iter().map(|&(_, d)| d).max().unwrap_or(0);
            with_resolution(&ModuleRep::simple(lambda, u), deepest + 1, |r| {
                for &(v, depth) in &depths {
                    if let Some(j) = (1..=depth).find(|&j| r.multiplicities(j)[v] > 0) {
                        edges.push(ExtEdge { from: u, to: v, degree: j });
                    }
                }
            });
            (edges, certified)
        })
        .collect();
    let certified = probes.iter().all(|(_, c)| *c);
    let edges: Vec<ExtEdge> = probes.into_iter().flat_map(|(e, _)| e).collect();
    let soundness = if certified { Soundness::Certified } else { Soundness::Heuristic };

    // an edge u → v forces v strictly below u
    let mut graph = DiGraphMap::<usize, ()>::new();
    for &u in nodes {
        graph.add_node(u);
    }
    for e in &edges {
        graph.add_edge(e.from, e.to, ());
    }
    match toposort(&graph, None) {
        Ok(mut order) => {
            order.reverse();
            OrderedSimples { order: Some(order), soundness, edges, cycle: None }
        }
        Err(_) => {
            let cycle = tarjan_scc(&graph)
                .into_iter()
                .find(|c| c.len() > 1 || graph.contains_edge(c[0], c[0]))
                .map(|mut c| {
                    c.sort_unstable();
                    c
                });
            OrderedSimples { order: None, soundness, edges, cycle }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShortcutRoute {
    /// No relation starts outside `a`, so quotient simples have pd at most one.
    PdRoute,
    /// No relation ends outside `a`, so quotient simples have id at most one.
    IdRoute,
}

/// Purely syntactic sufficient conditions for an order on the quotient simples.
pub fn shortcut_order_exists(qp: &QuiverPresentation, a: &Idempotent) -> Vec<ShortcutRoute> {
    let ends = qp.relation_endpoints();
    let outside: Vec<usize> = a.complement(qp.vertices.len());
    let mut routes = Vec::new();
    if outside.iter().all(|&v| !ends[v].0) {
        routes.push(ShortcutRoute::PdRoute);
    }
    if outside.iter().all(|&v| !ends[v].1) {
        routes.push(ShortcutRoute::IdRoute);
    }
    routes
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorVanishing {
    pub status: Status,
    /// Degrees `1..=checked_through` were computed.
    pub checked_through: usize,
    pub first_nonzero: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratifyingCheck {
    pub tensor_dim: usize,
    pub ideal_dim: usize,
    pub mult_rank: usize,
    pub mult_map_bijective: bool,
    pub tor_vanishing: TorVanishing,
    pub stratifying: Status,
}

/// Is `⟨a⟩` stratifying: `Λa ⊗_{aΛa} aΛ → ΛaΛ` bijective and
/// `Tor^{aΛa}_{>0}(Λa, aΛ) = 0`.
pub fn stratifying_check<F: Field>(ctx: &IdempotentContext<F>, cutoff: usize) -> Result<StratifyingCheck> {
    let f = ctx.lambda.field();
    let al = ctx.a_lambda.left_module();
    let t = tensor_over(&ctx.lambda_a, &al)?;
    let columns: Vec<Vec<F::Elem>> = t
        .pairs
        .iter()
        .map(|&(k, y)| ctx.lambda.densify(ctx.lambda.product(ctx.la_order[k], ctx.al_order[y])))
        .collect();
    let mult_rank = if columns.is_empty() { 0 } else { Matrix::from_columns(f, ctx.lambda.dim(), &columns).rank() };
    let tensor_dim = t.module.dim();
    let mult_map_bijective = tensor_dim == mult_rank;

    let la = ctx.lambda_a.right_module();
    let (beta, delta) = rayon::join(|| projective_dimension(&al, cutoff), || projective_dimension(&la, cutoff));
    let horizon = |b: &Bound| b.value.finite().or(b.periodic.map(|p| p.to.max(1)));
    let (limit, certified) = match [horizon(&beta), horizon(&delta)].into_iter().flatten().min() {
        Some(d) => (d, true),
        None => (cutoff, false),
    };
    let mut first_nonzero = None;
    for i in 1..=limit {
        if tor_dim(&la, &al, i)? != 0 {
            first_nonzero = Some(i);
            break;
        }
    }
    let status = match first_nonzero {
        Some(_) => Status::Fails,
        None => Status::of(certified),
    };
    let tor_vanishing = TorVanishing { status, checked_through: first_nonzero.unwrap_or(limit), first_nonzero };
    let stratifying = match (mult_map_bijective, status) {
        (false, _) | (_, Status::Fails) => Status::Fails,
        (true, Status::Holds) => Status::Holds,
        _ => Status::Unknown,
    };
    Ok(StratifyingCheck { tensor_dim, ideal_dim: ctx.ideal_dim(), mult_rank, mult_map_bijective, tor_vanishing, stratifying })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub name: &'static str,
    pub value: DimBound,
    pub periodic: Option<Periodicity>,
}

impl Hypothesis {
    fn new(name: &'static str, b: Bound) -> Self {
        Hypothesis { name, value: b.value, periodic: b.periodic }
    }
}

/// Consequences of comparing `Λ` with one diagonal entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangularSide {
    /// `"sigma"` or `"gamma"`.
    pub partner: &'static str,
    pub hypotheses: Vec<Hypothesis>,
    pub singular_equivalence: Status,
    pub gorenstein_transfer: Status,
    pub fg_transfer: Status,
    pub partner_gorenstein: Gorenstein,
    /// Stable CM categories of `Λ` and the partner agree.
    pub cm_equivalence: Status,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangularReport {
    pub lambda_dim: usize,
    pub gldim_sigma: Bound,
    pub gldim_gamma: Bound,
    /// `pd` of `M` as a left `Γ`-module.
    pub pd_gamma_m: Bound,
    /// `pd` of `M` as a right `Σ`-module.
    pub pd_m_sigma: Bound,
    pub lambda_gorenstein: Gorenstein,
    pub towards_gamma: TriangularSide,
    pub towards_sigma: TriangularSide,
    /// Condition reports for `a` = the `Σ`-vertices and `a` = the `Γ`-vertices.
    pub sigma_corner: ConditionReport,
    pub gamma_corner: ConditionReport,
}

/// Analysis of `Λ = (Σ 0; M Γ)` through its two corner recollements.
pub fn triangular_verdicts<F: Field>(data: &TriangularData<F>, cutoff: usize) -> Result<TriangularReport> {
    use crate::resolution::global_invariant;
    let lambda = data.algebra()?;
    let ns = data.sigma.vertex_count();
    let n = lambda.vertex_count();
    let sigma_ctx = make_context(&lambda, Idempotent::new(n, 0..ns)?)?;
    let gamma_ctx = make_context(&lambda, Idempotent::new(n, ns..n)?)?;
    let gldim_sigma = global_invariant(&data.sigma, GlobalKind::Gldim, cutoff);
    let gldim_gamma = global_invariant(&data.gamma, GlobalKind::Gldim, cutoff);
    let pd_gamma_m = projective_dimension(&data.bimodule.left_module(), cutoff);
    let pd_m_sigma = projective_dimension(&data.bimodule.right_module(), cutoff);
    let lambda_gorenstein = is_gorenstein(&lambda, cutoff);
    let sigma_gorenstein = is_gorenstein(&data.sigma, cutoff);
    let gamma_gorenstein = is_gorenstein(&data.gamma, cutoff);

    let both = |x: &Bound, y: &Bound| Status::of(x.is_finite() && y.is_finite());
    let towards_gamma = {
        let s = both(&gldim_sigma, &pd_gamma_m);
        TriangularSide {
            partner: "gamma",
            hypotheses: vec![Hypothesis::new("gldim sigma", gldim_sigma), Hypothesis::new("pd_gamma M", pd_gamma_m)],
            singular_equivalence: s,
            gorenstein_transfer: s,
            fg_transfer: s,
            cm_equivalence: Status::of(s == Status::Holds && gamma_gorenstein.holds()),
            partner_gorenstein: gamma_gorenstein,
        }
    };
    let towards_sigma = {
        let s = both(&gldim_gamma, &pd_m_sigma);
        TriangularSide {
            partner: "sigma",
            hypotheses: vec![Hypothesis::new("gldim gamma", gldim_gamma), Hypothesis::new("pd M_sigma", pd_m_sigma)],
            singular_equivalence: Status::of(gldim_gamma.is_finite()),
            gorenstein_transfer: s,
            fg_transfer: s,
            cm_equivalence: Status::of(s == Status::Holds && sigma_gorenstein.holds()),
            partner_gorenstein: sigma_gorenstein,
        }
    };
    Ok(TriangularReport {
        lambda_dim: lambda.dim(),
        gldim_sigma,
        gldim_gamma,
        pd_gamma_m,
        pd_m_sigma,
        lambda_gorenstein,
        towards_gamma,
        towards_sigma,
        sigma_corner: condition_report(&sigma_ctx, cutoff),
        gamma_corner: condition_report(&gamma_ctx, cutoff),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::fixtures;

    fn ctx(name: &str) -> IdempotentContext<PrimeField> {
        let f = PrimeField::new(101).unwrap();
        let qp = fixtures::presentation(name).unwrap();
        let lambda = fixtures::build_over(&qp, &f, None).unwrap();
        make_context(&lambda, qp.idempotent("a").unwrap()).unwrap()
    }

    #[test]
    fn fix_b_context_dimensions() {
        let c = ctx("fix_b");
        assert_eq!((c.corner().dim(), c.ideal_dim(), c.quotient_dim()), (2, 10, 3));
        assert_eq!(c.semisimple_part().vertex_dims(), vec![0, 1, 1]);
        assert_eq!(c.e(&ModuleRep::regular(c.lambda())).unwrap().dim(), 6);
    }

    #[test]
    fn fix_b_conditions_and_verdicts() {
        let c = ctx("fix_b");
        let r = condition_report(&c, 20);
        let vals: Vec<DimBound> = [r.alpha, r.beta, r.gamma, r.delta].iter().map(|c| c.value).collect();
        assert_eq!(vals, vec![DimBound::Finite(3), DimBound::Finite(0), DimBound::Finite(3), DimBound::Finite(0)]);
        let evt = verdict_evt_homological_iso(&r);
        assert_eq!((evt.status, evt.bound), (Status::Holds, Some(3)));
        assert!(evt.diagnostics.is_empty());
        assert_eq!(verdict_singular_equivalence(&r).status, Status::Holds);
    }

    #[test]
    fn fix_b_is_not_stratifying() {
        let s = stratifying_check(&ctx("fix_b"), 20).unwrap();
        assert_eq!((s.tensor_dim, s.ideal_dim, s.mult_rank), (12, 10, 10));
        assert!(!s.mult_map_bijective);
        assert_eq!(s.tor_vanishing.first_nonzero, None);
        assert_eq!(s.stratifying, Status::Fails);
    }
}
