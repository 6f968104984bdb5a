//! Property checks shared by the proptest suites and the acceptance run.
//! Each returns `Err` with a description on the first violated assertion.

use rand::Rng;
use recollement::analyzer::{make_context, IdempotentContext};
use recollement::field::is_prime;
use recollement::hochschild::{pd_epsilon_check, pd_tensor_check, DEFAULT_DIM_CAP};
use recollement::linalg::Matrix;
use recollement::module::sample::{random_idempotent, random_module, random_vector};
use recollement::resolution::{ext_dim, injective_dimension, projective_dimension, resolve, DimBound};
use recollement::{seeded_rng, Algebra, Field, ModuleRep, PrimeField, Rationals};

use super::{algebra, f101};

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

macro_rules! ensure_eq {
    ($a:expr, $b:expr, $what:expr) => {{
        let (a, b) = (&$a, &$b);
        if a != b {
            return Err(format!("{}: {:?} != {:?}", $what, a, b));
        }
    }};
}

const CUTOFF: usize = 12;

fn random_matrix<F: Field>(f: &F, rows: usize, cols: usize, seed: u64) -> Matrix<F> {
    let mut rng = seeded_rng(seed);
    // sparse-ish so that rank deficiency actually occurs
    let data = (0..rows)
        .map(|_| {
            random_vector(f, cols, &mut rng)
                .into_iter()
                .map(|x| if rng.gen_bool(0.4) { f.zero() } else { x })
                .collect()
        })
        .collect();
    Matrix::from_rows(f, data).unwrap()
}

fn rank_nullity_over<F: Field>(m: &Matrix<F>) -> Check {
    let f = m.field();
    let k = m.kernel_basis();
    ensure_eq!(m.rank() + k.cols(), m.cols(), "rank + nullity");
    ensure!(m.mul(&k).is_zero(), "kernel basis not annihilated");
    ensure_eq!(m.rank(), m.transpose().rank(), "row rank vs column rank");
    let r = m.rref();
    ensure_eq!((r.rank, r.pivots.len(), r.reduced.rank()), (m.rank(), m.rank(), m.rank()), "rref rank");
    // same row space
    ensure_eq!(m.vstack(&r.reduced).rank(), m.rank(), "row space");
    for (row, &c) in r.pivots.iter().enumerate() {
        ensure!(f.is_one(r.reduced.get(row, c)), "pivot {row} is not 1");
        for other in 0..r.reduced.rows() {
            ensure!(other == row || f.is_zero(r.reduced.get(other, c)), "pivot column {c} not cleared");
        }
    }
    Ok(())
}

/// `p = 0` means the rationals.
pub fn rank_nullity(rows: usize, cols: usize, p: u64, seed: u64) -> Check {
    if p == 0 {
        rank_nullity_over(&random_matrix(&Rationals::new(), rows, cols, seed))
    } else {
        assert!(is_prime(p));
        rank_nullity_over(&random_matrix(&PrimeField::new(p).unwrap(), rows, cols, seed))
    }
}

/// On `Λ`, `Λ^op`, `Λ ⊗ Λ^op` and a random corner.
pub fn associativity(name: &str, seed: u64) -> Check {
    let f = f101();
    let lambda = algebra(name, &f);
    let mut rng = seeded_rng(seed);
    let derived: Vec<Algebra<PrimeField>> = vec![
        lambda.opposite(),
        lambda.tensor(&lambda.opposite()).unwrap(),
        lambda.corner(&random_idempotent(lambda.vertex_count(), &mut rng)).unwrap().0,
    ];
    for alg in std::iter::once(lambda.as_ref()).chain(derived.iter()) {
        let d = alg.dim();
        let (x, y, z) = (random_vector(&f, d, &mut rng), random_vector(&f, d, &mut rng), random_vector(&f, d, &mut rng));
        ensure_eq!(alg.mul_elems(&alg.mul_elems(&x, &y), &z), alg.mul_elems(&x, &alg.mul_elems(&y, &z)), "(xy)z vs x(yz)");
    }
    Ok(())
}

/// `id M`, computed as `pd` of the dual, is the top degree with
/// `Ext(S, M) ≠ 0` for some simple `S`; and `D` is an involution.
pub fn duality(name: &str, seed: u64) -> Check {
    let f = f101();
    let lambda = algebra(name, &f);
    let m = random_module(&lambda, &mut seeded_rng(seed));
    let id = injective_dimension(&m, CUTOFF);
    let simples: Vec<_> = (0..lambda.vertex_count()).map(|v| ModuleRep::simple(&lambda, v)).collect();
    let ext_nonzero = |j: usize| simples.iter().any(|s| ext_dim(s, &m, j).unwrap() > 0);
    match id.value {
        DimBound::Finite(d) => {
            ensure!(ext_nonzero(d), "Ext^{d}(S, M) vanishes although id M = {d}");
            ensure!((d + 1..=d + 3).all(|j| !ext_nonzero(j)), "Ext above id M = {d}");
        }
        DimBound::AtLeast(c) => ensure!(ext_nonzero(c), "Ext^{c}(S, M) vanishes although id M >= {c}"),
    }
    ensure!(m.dual().dual().find_isomorphism(&m).unwrap().is_some(), "DDM is not M");
    Ok(())
}

pub fn minimality(name: &str, seed: u64) -> Check {
    let f = f101();
    let lambda = algebra(name, &f);
    let m = random_module(&lambda, &mut seeded_rng(seed));
    let r = resolve(&m, 6);
    ensure!(r.is_complex(), "d∘d ≠ 0");
    ensure!(r.is_minimal(), "not minimal");
    ensure_eq!(r.multiplicities(0), m.top_dims(), "projective cover vs top");
    Ok(())
}

/// `dim M = Σ (-1)^j dim P_j` whenever `pd M` is finite.
pub fn euler(name: &str, seed: u64) -> Check {
    let f = f101();
    let lambda = algebra(name, &f);
    let m = random_module(&lambda, &mut seeded_rng(seed));
    let proj: Vec<i64> = (0..lambda.vertex_count()).map(|v| lambda.projective_basis(v).len() as i64).collect();
    if let Some(d) = projective_dimension(&m, CUTOFF).value.finite() {
        let r = resolve(&m, d + 1);
        let chi: i64 = (0..=d)
            .map(|j| {
                let size: i64 = r.multiplicities(j).iter().zip(&proj).map(|(&c, &p)| c as i64 * p).sum();
                if j % 2 == 0 {
                    size
                } else {
                    -size
                }
            })
            .sum();
        ensure_eq!(chi, m.dim() as i64, "Euler characteristic");
    }
    Ok(())
}

fn context(name: &str, seed: u64) -> (IdempotentContext<PrimeField>, rand_chacha::ChaCha8Rng) {
    let f = f101();
    let lambda = algebra(name, &f);
    let mut rng = seeded_rng(seed);
    let a = random_idempotent(lambda.vertex_count(), &mut rng);
    (make_context(&lambda, a).unwrap(), rng)
}

fn a_positions(ctx: &IdempotentContext<PrimeField>, x: &ModuleRep<PrimeField>) -> Vec<usize> {
    ctx.idempotent().vertices().iter().flat_map(|&v| x.block(v)).collect()
}

/// The six adjunctions on Hom dimensions, and `e∘i = 0`, `q∘l = 0`, `p∘r = 0`.
pub fn adjunctions(name: &str, seed: u64) -> Check {
    let (ctx, mut rng) = context(name, seed);
    let lambda = ctx.lambda().clone();
    let x = random_module(&lambda, &mut rng);
    let y = random_module(ctx.corner(), &mut rng);
    let (ly, ry, ex) = (ctx.l(&y).unwrap(), ctx.r(&y).unwrap(), ctx.e(&x).unwrap());
    ensure_eq!(ly.hom_dim(&x).unwrap(), y.hom_dim(&ex).unwrap(), "Hom(lY, X) vs Hom(Y, eX)");
    ensure_eq!(x.hom_dim(&ry).unwrap(), ex.hom_dim(&y).unwrap(), "Hom(X, rY) vs Hom(eX, Y)");
    if let Some(gamma) = ctx.quotient().cloned() {
        ensure!(ctx.q(&ly).unwrap().is_zero(), "q∘l ≠ 0");
        ensure!(ctx.p(&ry).unwrap().is_zero(), "p∘r ≠ 0");
        let z = random_module(&gamma, &mut rng);
        let iz = ctx.i(&z).unwrap();
        ensure!(ctx.e(&iz).unwrap().is_zero(), "e∘i ≠ 0");
        ensure_eq!(ctx.q(&x).unwrap().hom_dim(&z).unwrap(), x.hom_dim(&iz).unwrap(), "Hom(qX, Z) vs Hom(X, iZ)");
        ensure_eq!(iz.hom_dim(&x).unwrap(), z.hom_dim(&ctx.p(&x).unwrap()).unwrap(), "Hom(iZ, X) vs Hom(Z, pX)");
    }
    Ok(())
}

/// `e(l(Y)) ≅ Y ≅ e(r(Y))`; the counit `le(B) → B` is a module map whose
/// kernel and cokernel live away from `a`; the unit is bijective over `a`.
pub fn units(name: &str, seed: u64) -> Check {
    let (ctx, mut rng) = context(name, seed);
    let y = random_module(ctx.corner(), &mut rng);
    ensure!(ctx.e(&ctx.l(&y).unwrap()).unwrap().find_isomorphism(&y).unwrap().is_some(), "e(l(Y)) ≇ Y");
    ensure!(ctx.e(&ctx.r(&y).unwrap()).unwrap().find_isomorphism(&y).unwrap().is_some(), "e(r(Y)) ≇ Y");

    let f = f101();
    let b = random_module(ctx.lambda(), &mut rng);
    let pos = a_positions(&ctx, &b);
    let (leb, counit) = ctx.counit(&b).unwrap();
    for g in 0..ctx.lambda().dim() {
        ensure_eq!(counit.mul(leb.action(g)), b.action(g).mul(&counit), "counit is not linear over Λ");
    }
    let kernel = counit.kernel_basis();
    let kpos = a_positions(&ctx, &leb);
    for c in 0..kernel.cols() {
        ensure!(kpos.iter().all(|&i| f.is_zero(kernel.get(i, c))), "kernel of the counit meets a");
    }
    let rank = counit.rank();
    for &i in &pos {
        let mut aug = counit.columns();
        let mut e = vec![f.zero(); b.dim()];
        e[i] = f.one();
        aug.push(e);
        ensure_eq!(Matrix::from_columns(&f, b.dim(), &aug).rank(), rank, "cokernel of the counit meets a");
    }
    let (reb, unit) = ctx.unit(&b).unwrap();
    let rpos = a_positions(&ctx, &reb);
    ensure_eq!(rpos.len(), pos.len(), "dim a·r(e(B)) vs dim aB");
    ensure_eq!(unit.select(&rpos, &pos).rank(), pos.len(), "unit not bijective over a");
    Ok(())
}

/// `pd (M ⊗_k N) ≤ pd M + pd N`; pairs with a large tensor algebra are skipped.
pub fn pd_tensor(first: &str, second: &str, seed: u64) -> Check {
    let f = f101();
    let (a, b) = (algebra(first, &f), algebra(second, &f));
    if a.dim() * b.dim() > 60 {
        return Ok(());
    }
    let mut rng = seeded_rng(seed);
    let m = random_module(&a, &mut rng);
    let n = random_module(&b, &mut rng);
    let check = pd_tensor_check(&m, &n, 8).unwrap();
    ensure!(check.holds() != Some(false), "{check:?}");
    Ok(())
}

/// `pd_{εΛᵉε}(εΛᵉ) ≤ pd(aΛ) + pd(Λa)`; algebras above the enveloping cap are skipped.
pub fn pd_epsilon(name: &str, seed: u64) -> Check {
    let (ctx, _) = context(name, seed);
    if ctx.lambda().dim() > DEFAULT_DIM_CAP {
        return Ok(());
    }
    let check = pd_epsilon_check(&ctx, 8).unwrap();
    ensure!(check.holds() != Some(false), "{check:?}");
    Ok(())
}
