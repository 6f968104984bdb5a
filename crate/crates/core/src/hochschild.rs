//! Hochschild cohomology as Ext over the enveloping algebra, and the
//! comparison between `Λ` and a corner `aΛa`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Idempotent};
use crate::analyzer::{condition_report, verdict_evt_homological_iso, IdempotentContext, Status, Verdict};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::linalg::Matrix;
use crate::module::{hom_k_bimodule, outer_tensor, Bimodule, ModuleRep};
use crate::resolution::{ext_dim, projective_dimension, Bound};

/// Largest `dim Λ` accepted for enveloping-algebra work.
pub const DEFAULT_DIM_CAP: usize = 16;

/// Whether `Λ/rad ⊗ Λ^op/rad` is semisimple for the reason available here:
/// `Λ` is split basic, so the product is `k^{n²}`.
pub fn semisimple_scope_check<F: Field>(a: &Algebra<F>) -> bool {
    a.is_split_basic() && a.verify_axioms().is_empty()
}

fn scope_guard<F: Field>(a: &Algebra<F>, cap: usize) -> Result<()> {
    if !semisimple_scope_check(a) {
        return Err(Error::ScopeViolation(
            "algebra is not split basic; the top of the enveloping algebra need not be semisimple".into(),
        ));
    }
    if a.dim() > cap {
        return Err(Error::ScopeViolation(format!(
            "dimension {} exceeds the enveloping-algebra cap {cap}; raise the cap to proceed",
            a.dim()
        )));
    }
    Ok(())
}

/// `Λᵉ = Λ ⊗ Λ^op` and `Λ` as a module over it.
pub struct Enveloping<F: Field> {
    pub algebra: Arc<Algebra<F>>,
    pub regular: ModuleRep<F>,
}

pub fn enveloping<F: Field>(a: &Arc<Algebra<F>>, cap: usize) -> Result<Enveloping<F>> {
    scope_guard(a, cap)?;
    let env = Arc::new(a.tensor(&a.opposite_arc())?);
    let regular = Bimodule::regular(a).as_tensor_module(&env)?;
    Ok(Enveloping { algebra: env, regular })
}

/// `ε = a ⊗ a^op` as a vertex set of `Λᵉ`.
pub fn epsilon(vertex_count: usize, a: &Idempotent) -> Result<Idempotent> {
    let vs = a.vertices();
    Idempotent::new(
        vertex_count * vertex_count,
        vs.iter().flat_map(|&u| vs.iter().map(move |&v| u * vertex_count + v)),
    )
}

/// `dim HH^j` for `0 ≤ j ≤ max_degree`.
pub fn hh_dims<F: Field>(a: &Arc<Algebra<F>>, max_degree: usize) -> Result<Vec<usize>> {
    hh_dims_capped(a, max_degree, DEFAULT_DIM_CAP)
}

pub fn hh_dims_capped<F: Field>(a: &Arc<Algebra<F>>, max_degree: usize, cap: usize) -> Result<Vec<usize>> {
    let env = enveloping(a, cap)?;
    (0..=max_degree).map(|j| ext_dim(&env.regular, &env.regular, j)).collect()
}

/// `dim Z(Λ)` from the equations `z·b = b·z`.
pub fn center_dim_oracle<F: Field>(a: &Algebra<F>) -> usize {
    let d = a.dim();
    if d == 0 {
        return 0;
    }
    let mut rows = Vec::with_capacity(d * d);
    for b in 0..d {
        let m = a.right_mult_matrix(b).sub(&a.left_mult_matrix(b));
        for r in 0..d {
            rows.push(m.row(r).to_vec());
        }
    }
    d - Matrix::from_rows(a.field(), rows).expect("square rows").rank()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HHReport {
    pub field: FieldSpec,
    pub max_degree: usize,
    pub dims_lambda: Vec<usize>,
    pub dims_corner: Vec<usize>,
    /// First degree the comparison theorem guarantees.
    pub predicted_agreement_from: usize,
    /// Smallest `j0` with agreement on `j0..=max_degree`; `None` if the last degree differs.
    pub observed_agreement_from: Option<usize>,
    pub scope_ok: bool,
}

impl HHReport {
    /// Agreement everywhere from the predicted degree through `max_degree`.
    pub fn agrees_beyond_prediction(&self) -> bool {
        (self.predicted_agreement_from..=self.max_degree).all(|j| self.dims_lambda[j] == self.dims_corner[j])
    }
}

/// Compares `HH^*(Λ)` with `HH^*(aΛa)`.
pub fn hh_compare<F: Field>(ctx: &IdempotentContext<F>, max_degree: usize, cutoff: usize) -> Result<HHReport> {
    let lambda = ctx.lambda();
    for alg in [lambda, ctx.corner()] {
        scope_guard(alg, DEFAULT_DIM_CAP)?;
    }
    let report = condition_report(ctx, cutoff);
    let evt = verdict_evt_homological_iso(&report);
    if evt.status != Status::Holds {
        return Err(Error::Inapplicable(format!(
            "eventual homological isomorphism not established: {}",
            evt.notes.join("; ")
        )));
    }
    let fin = |c: &crate::analyzer::Condition| c.value.finite();
    let predicted = match (fin(&report.alpha), fin(&report.beta), fin(&report.gamma), fin(&report.delta)) {
        (Some(al), Some(be), Some(ga), Some(de)) => al.max(ga) + be + de + 2,
        _ => {
            return Err(Error::Inapplicable(
                "the comparison bound needs all four conditions finite".into(),
            ))
        }
    };
    let (dims_lambda, dims_corner) =
        rayon::join(|| hh_dims(lambda, max_degree), || hh_dims(ctx.corner(), max_degree));
    let (dims_lambda, dims_corner) = (dims_lambda?, dims_corner?);
    let observed = if dims_lambda[max_degree] != dims_corner[max_degree] {
        None
    } else {
        let mut j0 = max_degree;
        while j0 > 0 && dims_lambda[j0 - 1] == dims_corner[j0 - 1] {
            j0 -= 1;
        }
        Some(j0)
    };
    Ok(HHReport {
        field: lambda.field().spec(),
        max_degree,
        dims_lambda,
        dims_corner,
        predicted_agreement_from: predicted,
        observed_agreement_from: observed,
        scope_ok: true,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DualityCheck {
    pub degree: usize,
    /// `dim Ext^j_{Λᵉ}(Λ, M ⊗_k D(N))`.
    pub via_enveloping: usize,
    /// `dim Ext^j_Λ(N, M)`.
    pub via_algebra: usize,
}

impl DualityCheck {
    pub fn holds(&self) -> bool {
        self.via_enveloping == self.via_algebra
    }
}

pub fn ext_duality_check<F: Field>(
    env: &Enveloping<F>,
    m: &ModuleRep<F>,
    n: &ModuleRep<F>,
    j: usize,
) -> Result<DualityCheck> {
    let hom = hom_k_bimodule(m, n, &env.algebra)?;
    Ok(DualityCheck {
        degree: j,
        via_enveloping: ext_dim(&env.regular, &hom, j)?,
        via_algebra: ext_dim(n, m, j)?,
    })
}

/// `lhs ≤ rhs` when `rhs` is finite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PdInequality {
    pub lhs: Bound,
    pub rhs: Option<usize>,
}

impl PdInequality {
    /// `None` when the right side is not finite, so there is nothing to check.
    pub fn holds(&self) -> Option<bool> {
        self.rhs.map(|r| self.lhs.value.finite().is_some_and(|l| l <= r))
    }
}

/// `pd_{Σ⊗Γ}(M ⊗_k N) ≤ pd_Σ M + pd_Γ N`.
pub fn pd_tensor_check<F: Field>(m: &ModuleRep<F>, n: &ModuleRep<F>, cutoff: usize) -> Result<PdInequality> {
    let ab = Arc::new(m.algebra().tensor(n.algebra())?);
    let mn = outer_tensor(m, n, &ab)?;
    let (pm, pn) = (projective_dimension(m, cutoff), projective_dimension(n, cutoff));
    let rhs = pm.value.finite().zip(pn.value.finite()).map(|(a, b)| a + b);
    Ok(PdInequality { lhs: projective_dimension(&mn, cutoff.max(rhs.unwrap_or(0))), rhs })
}

/// `pd_{εΛᵉε}(εΛᵉ) ≤ pd_{aΛa}(aΛ) + pd_{(aΛa)^op}(Λa)`.
pub fn pd_epsilon_check<F: Field>(ctx: &IdempotentContext<F>, cutoff: usize) -> Result<PdInequality> {
    let lambda = ctx.lambda();
    let env = enveloping(lambda, DEFAULT_DIM_CAP)?;
    let eps = epsilon(lambda.vertex_count(), ctx.idempotent())?;
    let e = &env.algebra;
    let (corner, inclusion) = e.corner(&eps)?;
    let corner = Arc::new(corner);
    let ids: Vec<usize> = (0..e.dim()).collect();
    let basis: Vec<usize> = ids.iter().copied().filter(|&b| eps.contains(e.left_vertex(b))).collect();
    let eps_env = Bimodule::inside(e, (&corner, &inclusion), (e, &ids), &basis)?.left_module();
    let beta = projective_dimension(&ctx.a_lambda().left_module(), cutoff);
    let delta = projective_dimension(&ctx.lambda_a().right_module(), cutoff);
    let rhs = beta.value.finite().zip(delta.value.finite()).map(|(a, b)| a + b);
    Ok(PdInequality { lhs: projective_dimension(&eps_env, cutoff), rhs })
}

pub const FG_DISCLAIMER: &str = "the fg property itself (noetherian Hochschild cohomology and finitely generated \
Ext of the top) is not decided; only the hypotheses of the transfer and its dimension-level consequences are checked";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FgTransferReport {
    pub scope_ok: bool,
    pub evt_iso: Verdict,
    /// Status of the transfer's hypotheses.
    pub precondition: Status,
    pub corner: String,
    pub hochschild: Option<HHReport>,
    pub refusal: Option<String>,
    pub conclusion: String,
    pub disclaimer: String,
}

pub fn fg_transfer_report<F: Field>(ctx: &IdempotentContext<F>, cutoff: usize, max_degree: usize) -> FgTransferReport {
    let evt_iso = verdict_evt_homological_iso(&condition_report(ctx, cutoff));
    fg_transfer_with(ctx, evt_iso, cutoff, Some(max_degree))
}

/// As [`fg_transfer_report`] with the evt verdict already at hand; `None`
/// skips the Hochschild comparison.
pub fn fg_transfer_with<F: Field>(
    ctx: &IdempotentContext<F>,
    evt_iso: Verdict,
    cutoff: usize,
    max_degree: Option<usize>,
) -> FgTransferReport {
    let scope_ok = semisimple_scope_check(ctx.lambda());
    let precondition = if scope_ok && evt_iso.status == Status::Holds { Status::Holds } else { Status::Unknown };
    let corner = ctx.corner().quiver(ctx.corner().dim() + 1).describe();
    let (hochschild, refusal) = match (precondition, max_degree) {
        (Status::Holds, Some(d)) => match hh_compare(ctx, d, cutoff) {
            Ok(r) => (Some(r), None),
            Err(e) => (None, Some(e.to_string())),
        },
        (Status::Holds, None) => (None, None),
        _ => (None, Some("hypotheses of the transfer not established".to_string())),
    };
    let conclusion = if precondition == Status::Holds {
        format!("fg(Λ) ⟺ fg({corner})")
    } else {
        "no transfer asserted".to_string()
    };
    FgTransferReport {
        scope_ok,
        evt_iso,
        precondition,
        corner,
        hochschild,
        refusal,
        conclusion,
        disclaimer: FG_DISCLAIMER.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::fixtures;

    #[test]
    fn trivial_algebra_is_separable() {
        let f = PrimeField::new(101).unwrap();
        let k = fixtures::algebra("k", &f).unwrap();
        assert_eq!(hh_dims(&k, 5).unwrap(), vec![1, 0, 0, 0, 0, 0]);
        let a2 = fixtures::algebra("a2", &f).unwrap();
        assert_eq!(hh_dims(&a2, 5).unwrap(), vec![1, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn dual_numbers_depend_on_characteristic() {
        for (p, expect) in [(101, vec![2, 1, 1, 1, 1]), (2, vec![2, 2, 2, 2, 2])] {
            let f = PrimeField::new(p).unwrap();
            let c = fixtures::algebra("fix_c", &f).unwrap();
            let env = enveloping(&c, DEFAULT_DIM_CAP).unwrap();
            assert_eq!((env.algebra.dim(), env.regular.dim()), (4, 2));
            assert_eq!(hh_dims(&c, 4).unwrap(), expect, "p = {p}");
        }
    }
}
