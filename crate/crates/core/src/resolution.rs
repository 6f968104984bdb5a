//! Minimal projective resolutions, Ext and Tor dimensions, and the
//! cutoff-bounded invariants built on them.
//!
//! A free module `P = ⊕ Λ e_{v_i}` is stored by its summand vertices; the
//! coordinates of summand `i` are the basis elements of `Λ e_{v_i}` in
//! increasing order. Each stage records the images of its generators, so
//! stage `j ≥ 1` is the differential `P_j → P_{j-1}` and stage 0 is the
//! cover `P_0 → M`.

use std::any::{Any, TypeId};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Echelon, Matrix};
use crate::module::ModuleRep;

/// Syzygies larger than this are not compared for periodicity.
const PERIODICITY_DIM_LIMIT: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum DimBound {
    Finite(usize),
    /// Still nonzero at the cutoff stage.
    AtLeast(usize),
}

impl DimBound {
    pub fn is_finite(&self) -> bool {
        matches!(self, DimBound::Finite(_))
    }

    pub fn finite(&self) -> Option<usize> {
        match *self {
            DimBound::Finite(d) => Some(d),
            DimBound::AtLeast(_) => None,
        }
    }

    /// Maximum, where any unresolved part makes the result unresolved.
    pub fn max(self, other: DimBound) -> DimBound {
        match (self, other) {
            (DimBound::Finite(a), DimBound::Finite(b)) => DimBound::Finite(a.max(b)),
            (DimBound::AtLeast(a), DimBound::AtLeast(b)) => DimBound::AtLeast(a.max(b)),
            (DimBound::AtLeast(a), _) | (_, DimBound::AtLeast(a)) => DimBound::AtLeast(a),
        }
    }
}

impl fmt::Display for DimBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimBound::Finite(d) => write!(f, "{d}"),
            DimBound::AtLeast(n) => write!(f, ">={n}"),
        }
    }
}

/// `Ω^from ≅ Ω^to` with `from < to`, so the resolution never stops.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Periodicity {
    pub from: usize,
    pub to: usize,
}

/// A dimension bound together with a periodicity certificate when one was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bound {
    pub value: DimBound,
    pub periodic: Option<Periodicity>,
}

impl Bound {
    pub fn finite(d: usize) -> Self {
        Bound { value: DimBound::Finite(d), periodic: None }
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_finite()
    }

    pub fn certified_infinite(&self) -> bool {
        self.periodic.is_some()
    }

    /// Maximum of several bounds; a certificate is kept from an unresolved part.
    pub fn max_of(bounds: impl IntoIterator<Item = Bound>) -> Bound {
        let mut out = Bound::finite(0);
        for b in bounds {
            let value = out.value.max(b.value);
            let periodic = if value.is_finite() { None } else { out.periodic.or(b.periodic) };
            out = Bound { value, periodic };
        }
        out
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)?;
        if let Some(p) = self.periodic {
            write!(f, " (periodic: syzygies {} and {} agree)", p.from, p.to)?;
        }
        Ok(())
    }
}

/// Per-vertex bases of the indecomposable projectives.
#[derive(Debug)]
struct Tables {
    basis: Vec<Vec<usize>>,
    pos: Vec<Vec<usize>>,
}

impl Tables {
    fn new<F: Field>(alg: &Algebra<F>) -> Self {
        let n = alg.vertex_count();
        let basis: Vec<Vec<usize>> = (0..n).map(|v| alg.projective_basis(v)).collect();
        let pos = basis
            .iter()
            .map(|b| {
                let mut p = vec![usize::MAX; alg.dim()];
                for (i, &x) in b.iter().enumerate() {
                    p[x] = i;
                }
                p
            })
            .collect();
        Tables { basis, pos }
    }
}

/// One free module of a resolution together with its outgoing map.
#[derive(Debug, Clone)]
pub struct Stage<F: Field> {
    vertices: Vec<usize>,
    offsets: Vec<usize>,
    /// Image of each generator `e_{v_i}` in the previous stage (or in `M`).
    images: Vec<Vec<F::Elem>>,
}

impl<F: Field> Stage<F> {
    /// Vertex of each indecomposable summand.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn rank(&self) -> usize {
        self.vertices.len()
    }

    pub fn dim(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }

    pub fn images(&self) -> &[Vec<F::Elem>] {
        &self.images
    }

    pub fn summand(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i + 1]
    }

    /// Number of copies of `P(v)` for each vertex `v`.
    pub fn multiplicities(&self, vertex_count: usize) -> Vec<usize> {
        let mut m = vec![0; vertex_count];
        for &v in &self.vertices {
            m[v] += 1;
        }
        m
    }
}

fn layout(tables: &Tables, vertices: &[usize]) -> Vec<usize> {
    let mut offsets = vec![0];
    for &v in vertices {
        offsets.push(offsets.last().unwrap() + tables.basis[v].len());
    }
    offsets
}

/// Global coordinates of `e_u P` for every vertex `u`.
fn blocks<F: Field>(alg: &Algebra<F>, tables: &Tables, vertices: &[usize], offsets: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); alg.vertex_count()];
    for (i, &v) in vertices.iter().enumerate() {
        for (l, &b) in tables.basis[v].iter().enumerate() {
            out[alg.left_vertex(b)].push(offsets[i] + l);
        }
    }
    out
}

/// `b · x` for `x` in a free module.
fn free_mul<F: Field>(alg: &Algebra<F>, tables: &Tables, vertices: &[usize], offsets: &[usize], b: usize, x: &[F::Elem]) -> Vec<F::Elem> {
    let f = alg.field();
    let mut out = vec![f.zero(); x.len()];
    for (i, &v) in vertices.iter().enumerate() {
        for (l, &bp) in tables.basis[v].iter().enumerate() {
            let c = &x[offsets[i] + l];
            if f.is_zero(c) {
                continue;
            }
            for (k, s) in alg.product(b, bp) {
                f.mul_add_assign(&mut out[offsets[i] + tables.pos[v][*k]], c, s);
            }
        }
    }
    out
}

/// The space a new stage maps onto: either the module itself or a free module.
enum Target<'a, F: Field> {
    Module(&'a ModuleRep<F>),
    Free { vertices: &'a [usize], offsets: &'a [usize] },
}

impl<F: Field> Target<'_, F> {
    fn blocks(&self, alg: &Algebra<F>, tables: &Tables) -> Vec<Vec<usize>> {
        match self {
            Target::Module(m) => (0..alg.vertex_count()).map(|v| m.block(v).collect()).collect(),
            Target::Free { vertices, offsets } => blocks(alg, tables, vertices, offsets),
        }
    }

    fn apply(&self, alg: &Algebra<F>, tables: &Tables, b: usize, x: &[F::Elem]) -> Vec<F::Elem> {
        match self {
            Target::Module(m) => m.apply(b, x),
            Target::Free { vertices, offsets } => free_mul(alg, tables, vertices, offsets, b, x),
        }
    }
}

/// A submodule given block by block by kernel-style bases: in block `u`,
/// vector `r` has a unit at `free[u][r]` and zeros at the other free positions.
struct Kernel<F: Field> {
    vectors: Vec<Vec<Vec<F::Elem>>>,
    free: Vec<Vec<usize>>,
}

impl<F: Field> Kernel<F> {
    fn dim(&self) -> usize {
        self.vectors.iter().map(Vec::len).sum()
    }
}

/// Generators of `K` modulo `J K`, grouped by vertex.
fn top_generators<F: Field>(alg: &Algebra<F>, tables: &Tables, space: &Target<'_, F>, space_blocks: &[Vec<usize>], k: &Kernel<F>) -> Vec<(usize, Vec<F::Elem>)> {
    let f = alg.field();
    let n = alg.vertex_count();
    let per_vertex: Vec<Vec<Vec<F::Elem>>> = (0..n)
        .into_par_iter()
        .map(|u| {
            if k.vectors[u].is_empty() {
                return Vec::new();
            }
            let local = |x: &[F::Elem]| space_blocks[u].iter().map(|&g| x[g].clone()).collect::<Vec<_>>();
            let mut ech = Echelon::new(f, space_blocks[u].len());
            for &g in alg.generators() {
                if alg.left_vertex(g) != u {
                    continue;
                }
                for x in &k.vectors[alg.right_vertex(g)] {
                    let y = space.apply(alg, tables, g, x);
                    ech.insert(&local(&y));
                    if ech.rank() == space_blocks[u].len() {
                        break;
                    }
                }
            }
            k.vectors[u].iter().filter(|x| ech.insert(&local(x))).cloned().collect()
        })
        .collect();
    per_vertex.into_iter().enumerate().flat_map(|(u, gs)| gs.into_iter().map(move |g| (u, g))).collect()
}

/// Kernel of the map `P → target` given by generator images.
fn kernel_of<F: Field>(alg: &Algebra<F>, tables: &Tables, stage: &Stage<F>, target: &Target<'_, F>) -> Kernel<F> {
    let f = alg.field();
    let n = alg.vertex_count();
    let src_blocks = blocks(alg, tables, &stage.vertices, &stage.offsets);
    let dst_blocks = target.blocks(alg, tables);
    // where each source coordinate sits: (summand, basis element)
    let mut coord_source = vec![(0usize, 0usize); stage.dim()];
    for (i, &v) in stage.vertices.iter().enumerate() {
        for (l, &b) in tables.basis[v].iter().enumerate() {
            coord_source[stage.offsets[i] + l] = (i, b);
        }
    }
    let per_vertex: Vec<(Vec<Vec<F::Elem>>, Vec<usize>)> = (0..n)
        .into_par_iter()
        .map(|u| {
            let cols = &src_blocks[u];
            let rows = &dst_blocks[u];
            if cols.is_empty() {
                return (Vec::new(), Vec::new());
            }
            let mut m = Matrix::zeros(f, rows.len(), cols.len());
            for (c, &g) in cols.iter().enumerate() {
                let (i, b) = coord_source[g];
                let y = target.apply(alg, tables, b, &stage.images[i]);
                for (r, &gr) in rows.iter().enumerate() {
                    if !f.is_zero(&y[gr]) {
                        m.set(r, c, y[gr].clone());
                    }
                }
            }
            let rref = m.rref();
            let mut is_pivot = vec![false; cols.len()];
            for &p in &rref.pivots {
                is_pivot[p] = true;
            }
            let free: Vec<usize> = (0..cols.len()).filter(|&c| !is_pivot[c]).collect();
            let vectors = free
                .iter()
                .map(|&fc| {
                    let mut x = vec![f.zero(); stage.dim()];
                    x[cols[fc]] = f.one();
                    for (r, &pc) in rref.pivots.iter().enumerate() {
                        x[cols[pc]] = f.neg(rref.reduced.get(r, fc));
                    }
                    x
                })
                .collect();
            (vectors, free.iter().map(|&c| cols[c]).collect())
        })
        .collect();
    let (vectors, free) = per_vertex.into_iter().unzip();
    Kernel { vectors, free }
}

/// The kernel as a module in its own right.
fn kernel_module<F: Field>(alg: &Arc<Algebra<F>>, tables: &Tables, stage: &Stage<F>, k: &Kernel<F>) -> Result<ModuleRep<F>> {
    let f = alg.field();
    let n = alg.vertex_count();
    let dims: Vec<usize> = k.vectors.iter().map(Vec::len).collect();
    let mut offsets = vec![0];
    for d in &dims {
        offsets.push(offsets.last().unwrap() + d);
    }
    let total = offsets[n];
    let mut arrows = Vec::with_capacity(alg.generators().len());
    for &g in alg.generators() {
        let (u, w) = (alg.left_vertex(g), alg.right_vertex(g));
        let mut m = Matrix::zeros(f, total, total);
        for (c, x) in k.vectors[w].iter().enumerate() {
            let y = free_mul(alg, tables, &stage.vertices, &stage.offsets, g, x);
            for (r, &fc) in k.free[u].iter().enumerate() {
                if !f.is_zero(&y[fc]) {
                    m.set(offsets[u] + r, offsets[w] + c, y[fc].clone());
                }
            }
        }
        arrows.push(m);
    }
    ModuleRep::from_blocks(alg, &dims, arrows)
}

/// A minimal projective resolution computed up to some number of stages.
#[derive(Debug, Clone)]
pub struct Resolution<F: Field> {
    module: ModuleRep<F>,
    tables: Arc<Tables>,
    stages: Vec<Arc<Stage<F>>>,
    terminated: bool,
    /// Syzygies `Ω^0 = M, Ω^1, …` kept for periodicity checks (None when too large).
    syzygies: Vec<Option<ModuleRep<F>>>,
    periodic: Option<Periodicity>,
}

impl<F: Field> Resolution<F> {
    pub fn new(module: &ModuleRep<F>) -> Self {
        let tables = Arc::new(Tables::new(module.algebra()));
        let small = (module.dim() <= PERIODICITY_DIM_LIMIT).then(|| module.clone());
        Resolution {
            module: module.clone(),
            tables,
            stages: Vec::new(),
            terminated: module.is_zero(),
            syzygies: vec![small],
            periodic: None,
        }
    }

    pub fn module(&self) -> &ModuleRep<F> {
        &self.module
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        self.module.algebra()
    }

    /// Stages computed so far.
    pub fn stages(&self) -> &[Arc<Stage<F>>] {
        &self.stages
    }

    /// Whether the resolution is known to stop after the last stage.
    pub fn terminated(&self) -> bool {
        self.terminated
    }

    pub fn periodicity(&self) -> Option<Periodicity> {
        self.periodic
    }

    /// `Some(pd)` when the resolution is known to stop.
    pub fn length(&self) -> Option<usize> {
        self.terminated.then(|| self.stages.len().saturating_sub(1))
    }

    /// Stage `j`, or `None` when it is zero or not computed.
    pub fn stage(&self, j: usize) -> Option<&Stage<F>> {
        self.stages.get(j).map(|s| s.as_ref())
    }

    /// Multiplicity vector of stage `j` (zero beyond the end).
    pub fn multiplicities(&self, j: usize) -> Vec<usize> {
        let n = self.algebra().vertex_count();
        self.stage(j).map_or_else(|| vec![0; n], |s| s.multiplicities(n))
    }

    /// Computes stages until `count` exist or the resolution stops.
    pub fn extend(&mut self, count: usize) {
        while !self.terminated && self.stages.len() < count {
            self.step();
        }
    }

    /// Like [`Resolution::extend`], but also stops once periodicity is certified.
    pub fn extend_until_periodic(&mut self, count: usize) {
        while !self.terminated && self.periodic.is_none() && self.stages.len() < count {
            self.step();
        }
    }

    fn step(&mut self) {
        let alg = self.module.algebra().clone();
        let tables = self.tables.clone();
        let (kernel, space_blocks, prev) = match self.stages.last() {
            None => {
                let m = &self.module;
                let f = alg.field();
                let vectors = (0..alg.vertex_count())
                    .map(|v| {
                        m.block(v)
                            .map(|i| {
                                let mut x = vec![f.zero(); m.dim()];
                                x[i] = f.one();
                                x
                            })
                            .collect()
                    })
                    .collect();
                let free = (0..alg.vertex_count()).map(|v| m.block(v).collect()).collect();
                let target = Target::Module(m);
                let sb = target.blocks(&alg, &tables);
                (Kernel { vectors, free }, sb, None)
            }
            Some(last) => {
                let target = if self.stages.len() == 1 {
                    Target::Module(&self.module)
                } else {
                    let p = &self.stages[self.stages.len() - 2];
                    Target::Free { vertices: &p.vertices, offsets: &p.offsets }
                };
                let k = kernel_of(&alg, &tables, last, &target);
                let sb = blocks(&alg, &tables, &last.vertices, &last.offsets);
                (k, sb, Some(last.clone()))
            }
        };
        if kernel.dim() == 0 {
            self.terminated = true;
            return;
        }
        if let Some(prev) = &prev {
            let idx = self.syzygies.len();
            let syz = (kernel.dim() <= PERIODICITY_DIM_LIMIT)
                .then(|| kernel_module(&alg, &tables, prev, &kernel).ok())
                .flatten();
            if self.periodic.is_none() {
                if let Some(s) = &syz {
                    self.periodic = self.find_period(s, idx);
                }
            }
            self.syzygies.push(syz);
        }
        let space = match &prev {
            None => Target::Module(&self.module),
            Some(p) => Target::Free { vertices: &p.vertices, offsets: &p.offsets },
        };
        let gens = top_generators(&alg, &tables, &space, &space_blocks, &kernel);
        let vertices: Vec<usize> = gens.iter().map(|(u, _)| *u).collect();
        let offsets = layout(&tables, &vertices);
        let images = gens.into_iter().map(|(_, x)| x).collect();
        self.stages.push(Arc::new(Stage { vertices, offsets, images }));
    }

    fn find_period(&self, syz: &ModuleRep<F>, idx: usize) -> Option<Periodicity> {
        let dims = syz.vertex_dims();
        let top = syz.top_dims();
        for (i, earlier) in self.syzygies.iter().enumerate() {
            let Some(e) = earlier else { continue };
            if e.is_zero() || e.vertex_dims() != dims || e.top_dims() != top {
                continue;
            }
            if let Ok(Some(_)) = e.find_isomorphism(syz) {
                return Some(Periodicity { from: i, to: idx });
            }
        }
        None
    }

    /// Every generator image lies in the radical of the previous stage,
    /// i.e. no image has a coefficient on a summand's own idempotent.
    pub fn is_minimal(&self) -> bool {
        let alg = self.algebra();
        let f = alg.field();
        self.stages.iter().enumerate().skip(1).all(|(j, s)| {
            let prev = &self.stages[j - 1];
            s.images.iter().all(|x| {
                prev.vertices.iter().enumerate().all(|(i, &v)| {
                    let l = self.tables.pos[v][alg.vertices()[v]];
                    f.is_zero(&x[prev.offsets[i] + l])
                })
            })
        })
    }

    /// `d_{j} ∘ d_{j+1} = 0` and `ε ∘ d_1 = 0` on every generator.
    pub fn is_complex(&self) -> bool {
        let alg = self.algebra();
        let f = alg.field();
        (1..self.stages.len()).all(|j| {
            let (s, prev) = (&self.stages[j], &self.stages[j - 1]);
            s.images.iter().all(|x| {
                let mut total: Option<Vec<F::Elem>> = None;
                for (i, &v) in prev.vertices.iter().enumerate() {
                    for (l, &b) in self.tables.basis[v].iter().enumerate() {
                        let c = &x[prev.offsets[i] + l];
                        if f.is_zero(c) {
                            continue;
                        }
                        let y = if j == 1 {
                            self.module.apply(b, &prev.images[i])
                        } else {
                            let pp = &self.stages[j - 2];
                            free_mul(alg, &self.tables, &pp.vertices, &pp.offsets, b, &prev.images[i])
                        };
                        let t = total.get_or_insert_with(|| vec![f.zero(); y.len()]);
                        for (a, yb) in t.iter_mut().zip(&y) {
                            f.mul_add_assign(a, c, yb);
                        }
                    }
                }
                total.is_none_or(|t| t.iter().all(|c| f.is_zero(c)))
            })
        })
    }

    /// Matrix of `Hom(P_j, N) → Hom(P_{j+1}, N)`.
    fn coboundary(&self, n: &ModuleRep<F>, j: usize) -> Matrix<F> {
        let alg = self.algebra();
        let f = alg.field();
        let cdim = |s: Option<&Stage<F>>| s.map_or(0, |s| s.vertices.iter().map(|&v| n.block(v).len()).sum());
        let (src, dst) = (self.stage(j), self.stage(j + 1));
        let mut m = Matrix::zeros(f, cdim(dst), cdim(src));
        let (Some(src), Some(dst)) = (src, dst) else { return m };
        let src_off = cochain_offsets(n, &src.vertices);
        let dst_off = cochain_offsets(n, &dst.vertices);
        for (k, g) in dst.images.iter().enumerate() {
            let wk = dst.vertices[k];
            for (i, &v) in src.vertices.iter().enumerate() {
                for (l, &b) in self.tables.basis[v].iter().enumerate() {
                    let c = &g[src.offsets[i] + l];
                    if f.is_zero(c) {
                        continue;
                    }
                    let act = n.action(b);
                    for (r, nr) in n.block(wk).enumerate() {
                        for (cc, nc) in n.block(v).enumerate() {
                            let x = act.get(nr, nc);
                            if !f.is_zero(x) {
                                let e = f.mul(c, x);
                                let cur = m.get(dst_off[k] + r, src_off[i] + cc).clone();
                                m.set(dst_off[k] + r, src_off[i] + cc, f.add(&cur, &e));
                            }
                        }
                    }
                }
            }
        }
        m
    }

    /// Matrix of `M ⊗ P_j → M ⊗ P_{j-1}` for a right module given over the opposite algebra.
    fn boundary(&self, mr: &ModuleRep<F>, j: usize) -> Matrix<F> {
        let alg = self.algebra();
        let f = alg.field();
        let cdim = |s: Option<&Stage<F>>| s.map_or(0, |s| s.vertices.iter().map(|&v| mr.block(v).len()).sum());
        let src = self.stage(j);
        let dst = if j == 0 { None } else { self.stage(j - 1) };
        let mut m = Matrix::zeros(f, cdim(dst), cdim(src));
        let (Some(src), Some(dst)) = (src, dst) else { return m };
        let src_off = cochain_offsets(mr, &src.vertices);
        let dst_off = cochain_offsets(mr, &dst.vertices);
        for (k, g) in src.images.iter().enumerate() {
            let wk = src.vertices[k];
            for (i, &v) in dst.vertices.iter().enumerate() {
                for (l, &b) in self.tables.basis[v].iter().enumerate() {
                    let c = &g[dst.offsets[i] + l];
                    if f.is_zero(c) {
                        continue;
                    }
                    let act = mr.action(b);
                    for (r, nr) in mr.block(v).enumerate() {
                        for (cc, nc) in mr.block(wk).enumerate() {
                            let x = act.get(nr, nc);
                            if !f.is_zero(x) {
                                let e = f.mul(c, x);
                                let cur = m.get(dst_off[i] + r, src_off[k] + cc).clone();
                                m.set(dst_off[i] + r, src_off[k] + cc, f.add(&cur, &e));
                            }
                        }
                    }
                }
            }
        }
        m
    }

    /// `dim Ext^j(M, N)`; needs `j + 2` stages.
    pub fn ext_dim(&self, n: &ModuleRep<F>, j: usize) -> Result<usize> {
        if !self.module.algebra().same_as(n.algebra()) {
            return Err(Error::AlgebraMismatch("Ext arguments live over different algebras".into()));
        }
        self.check_depth(j + 2)?;
        let cj = self.stage(j).map_or(0, |s| s.vertices.iter().map(|&v| n.block(v).len()).sum::<usize>());
        let out = self.coboundary(n, j).rank();
        let inc = if j == 0 { 0 } else { self.coboundary(n, j - 1).rank() };
        Ok(cj - out - inc)
    }

    /// `dim Tor_j(M_r, N)` for `N` the resolved module; needs `j + 2` stages.
    pub fn tor_dim(&self, mr: &ModuleRep<F>, j: usize) -> Result<usize> {
        if !mr.algebra().same_as(&self.algebra().opposite_arc()) {
            return Err(Error::AlgebraMismatch("right module must live over the opposite algebra".into()));
        }
        self.check_depth(j + 2)?;
        let cj = self.stage(j).map_or(0, |s| s.vertices.iter().map(|&v| mr.block(v).len()).sum::<usize>());
        let out = self.boundary(mr, j).rank();
        let inc = self.boundary(mr, j + 1).rank();
        Ok(cj - out - inc)
    }

    fn check_depth(&self, stages: usize) -> Result<()> {
        if self.terminated || self.stages.len() >= stages {
            Ok(())
        } else {
            Err(Error::Unsupported(format!("resolution has {} stages, {stages} needed", self.stages.len())))
        }
    }

    /// The syzygy `Ω^j` as a module when it was small enough to keep.
    pub fn syzygy(&self, j: usize) -> Option<&ModuleRep<F>> {
        self.syzygies.get(j).and_then(Option::as_ref)
    }
}

fn cochain_offsets<F: Field>(n: &ModuleRep<F>, vertices: &[usize]) -> Vec<usize> {
    let mut off = vec![0];
    for &v in vertices {
        off.push(off.last().unwrap() + n.block(v).len());
    }
    off
}

type CacheKey = (TypeId, u64);
type CacheMap = HashMap<CacheKey, Arc<dyn Any + Send + Sync>>;

fn cache() -> &'static Mutex<CacheMap> {
    static CACHE: OnceLock<Mutex<CacheMap>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn entry<F: Field>(m: &ModuleRep<F>) -> Arc<Mutex<Resolution<F>>> {
    let key = (TypeId::of::<F>(), m.fingerprint());
    let mut map = cache().lock().expect("resolution cache poisoned");
    let any = map
        .entry(key)
        .or_insert_with(|| Arc::new(Mutex::new(Resolution::new(m))) as Arc<dyn Any + Send + Sync>)
        .clone();
    drop(map);
    any.downcast::<Mutex<Resolution<F>>>().expect("cache entry type")
}

/// Runs `f` on the cached resolution of `m`, extended to at least `stages` stages.
pub fn with_resolution<F: Field, R>(m: &ModuleRep<F>, stages: usize, f: impl FnOnce(&Resolution<F>) -> R) -> R {
    let e = entry(m);
    let mut r = e.lock().expect("resolution poisoned");
    r.extend(stages);
    f(&r)
}

/// A snapshot of the cached resolution with at least `stages` stages.
pub fn resolve<F: Field>(m: &ModuleRep<F>, stages: usize) -> Resolution<F> {
    with_resolution(m, stages, Resolution::clone)
}

/// Drops every cached resolution.
pub fn clear_cache() {
    cache().lock().expect("resolution cache poisoned").clear();
}

pub fn ext_dim<F: Field>(m: &ModuleRep<F>, n: &ModuleRep<F>, j: usize) -> Result<usize> {
    with_resolution(m, j + 2, |r| r.ext_dim(n, j))
}

/// `dim Tor_j(M_r, N)` with `M_r` a left module over the opposite algebra.
pub fn tor_dim<F: Field>(mr: &ModuleRep<F>, n: &ModuleRep<F>, j: usize) -> Result<usize> {
    with_resolution(n, j + 2, |r| r.tor_dim(mr, j))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DimKind {
    Pd,
    Id,
}

pub fn projective_dimension<F: Field>(m: &ModuleRep<F>, cutoff: usize) -> Bound {
    let e = entry(m);
    let mut r = e.lock().expect("resolution poisoned");
    r.extend_until_periodic(cutoff + 1);
    match r.length() {
        Some(d) if d <= cutoff => Bound::finite(d),
        _ => Bound { value: DimBound::AtLeast(cutoff), periodic: r.periodicity() },
    }
}

/// `id_A M = pd_{A^op} D(M)`.
pub fn injective_dimension<F: Field>(m: &ModuleRep<F>, cutoff: usize) -> Bound {
    projective_dimension(&m.dual(), cutoff)
}

pub fn dim_bound<F: Field>(m: &ModuleRep<F>, kind: DimKind, cutoff: usize) -> Bound {
    match kind {
        DimKind::Pd => projective_dimension(m, cutoff),
        DimKind::Id => injective_dimension(m, cutoff),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GlobalKind {
    Gldim,
    Spli,
    Silp,
}

pub fn global_invariant<F: Field>(alg: &Arc<Algebra<F>>, kind: GlobalKind, cutoff: usize) -> Bound {
    let n = alg.vertex_count();
    let bounds: Vec<Bound> = (0..n)
        .into_par_iter()
        .map(|v| match kind {
            GlobalKind::Gldim => projective_dimension(&ModuleRep::simple(alg, v), cutoff),
            GlobalKind::Spli => projective_dimension(&ModuleRep::injective(alg, v), cutoff),
            GlobalKind::Silp => injective_dimension(&ModuleRep::projective(alg, v), cutoff),
        })
        .collect();
    Bound::max_of(bounds)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum Gorenstein {
    Holds { value: usize },
    /// One side is unresolved at the cutoff; `left` is `id Λ_Λ`'s mirror `id _ΛΛ`.
    Unknown { cutoff: usize, left: Bound, right: Bound },
}

impl Gorenstein {
    pub fn holds(&self) -> bool {
        matches!(self, Gorenstein::Holds { .. })
    }
}

/// Injective dimension of the left regular module (`silp`) and of the right
/// regular module (`spli`).
pub fn is_gorenstein<F: Field>(alg: &Arc<Algebra<F>>, cutoff: usize) -> Gorenstein {
    let left = global_invariant(alg, GlobalKind::Silp, cutoff);
    let right = global_invariant(alg, GlobalKind::Spli, cutoff);
    match (left.value, right.value) {
        (DimBound::Finite(a), DimBound::Finite(b)) => Gorenstein::Holds { value: a.max(b) },
        _ => Gorenstein::Unknown { cutoff, left, right },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::quiver::{build_algebra, parse_algebra_file};

    fn alg(src: &str) -> Arc<Algebra<PrimeField>> {
        let qp = parse_algebra_file(src).unwrap();
        let f = PrimeField::new(qp.field.characteristic()).unwrap();
        Arc::new(build_algebra(&qp, &f, 8).unwrap().algebra)
    }

    #[test]
    fn dual_numbers_simple_is_periodic() {
        let a = alg("field 101\nvertex v\narrow x v v\nrelation x.x\n");
        let s = ModuleRep::simple(&a, 0);
        let b = projective_dimension(&s, 6);
        assert_eq!(b.value, DimBound::AtLeast(6));
        assert_eq!(b.periodic, Some(Periodicity { from: 0, to: 1 }));
        let r = resolve(&s, 5);
        assert!(r.is_minimal() && r.is_complex());
        for j in 0..4 {
            assert_eq!(r.ext_dim(&s, j).unwrap(), 1);
        }
    }

    #[test]
    fn two_cycle_pd_of_second_simple() {
        let a = alg("field 101\nvertex 1 2\narrow alpha 1 2\narrow beta 2 1\nrelation alpha.beta\n");
        let s2 = ModuleRep::simple(&a, 1);
        assert_eq!(projective_dimension(&s2, 20), Bound::finite(2));
        assert_eq!(injective_dimension(&s2, 20), Bound::finite(2));
        let r = resolve(&s2, 4);
        assert_eq!(r.multiplicities(0), vec![0, 1]);
        assert_eq!(r.multiplicities(1), vec![1, 0]);
        assert_eq!(r.multiplicities(2), vec![0, 1]);
        let s1 = ModuleRep::simple(&a, 0);
        assert_eq!(ext_dim(&s2, &s1, 1).unwrap(), 1);
        assert_eq!(ext_dim(&s1, &s1, 0).unwrap(), 1);
    }

    #[test]
    fn projective_has_length_zero() {
        let a = alg("field 2\nvertex 1 2\narrow a 1 2\n");
        let p = ModuleRep::projective(&a, 0);
        assert_eq!(projective_dimension(&p, 5), Bound::finite(0));
        assert_eq!(global_invariant(&a, GlobalKind::Gldim, 5).value, DimBound::Finite(1));
    }
}
