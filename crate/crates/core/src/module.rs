//! Finite-dimensional left modules and bimodules over split basic algebras.
//!
//! A [`ModuleRep`] always uses a vertex-adapted basis: the basis vectors of
//! `e_1 M` come first, then those of `e_2 M`, and so on. Only the actions of
//! the vertices and arrows are stored; actions of the remaining basis
//! elements are derived through the algebra's word basis on demand.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::ops::Range;
use std::sync::{Arc, OnceLock};

use rand::Rng;

use crate::algebra::{Algebra, Idempotent};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{is_zero_vec, Matrix};

pub struct ModuleRep<F: Field> {
    algebra: Arc<Algebra<F>>,
    offsets: Vec<usize>,
    /// Actions of `algebra.module_generators()`, in that order.
    gens: Vec<Matrix<F>>,
    all: OnceLock<Vec<Matrix<F>>>,
}

impl<F: Field> Clone for ModuleRep<F> {
    fn clone(&self) -> Self {
        ModuleRep {
            algebra: self.algebra.clone(),
            offsets: self.offsets.clone(),
            gens: self.gens.clone(),
            all: OnceLock::new(),
        }
    }
}

impl<F: Field> std::fmt::Debug for ModuleRep<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ModuleRep").field("vertex_dims", &self.vertex_dims()).finish()
    }
}

/// A subspace of a module stored block by block in reduced echelon form.
#[derive(Debug, Clone)]
pub struct Subspace<F: Field> {
    /// Per vertex: reduced rows in block-local coordinates.
    rows: Vec<Vec<Vec<F::Elem>>>,
    pivots: Vec<Vec<usize>>,
}

impl<F: Field> Subspace<F> {
    pub fn dim(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn block_dim(&self, v: usize) -> usize {
        self.rows[v].len()
    }
}

impl<F: Field> ModuleRep<F> {
    /// Builds a module whose basis is already vertex-adapted with the given
    /// block sizes; `arrow_actions` follow `algebra.generators()`.
    pub fn from_blocks(algebra: &Arc<Algebra<F>>, block_dims: &[usize], arrow_actions: Vec<Matrix<F>>) -> Result<Self> {
        let n = algebra.vertex_count();
        if block_dims.len() != n || arrow_actions.len() != algebra.generators().len() {
            return Err(Error::InvalidModule("block or action count does not match the algebra".into()));
        }
        let mut offsets = vec![0];
        for d in block_dims {
            offsets.push(offsets.last().unwrap() + d);
        }
        let dim = offsets[n];
        if arrow_actions.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::InvalidModule("action matrices must be square of the module dimension".into()));
        }
        let f = algebra.field();
        let mut gens = Vec::with_capacity(n + arrow_actions.len());
        for v in 0..n {
            let mut p = Matrix::zeros(f, dim, dim);
            for i in offsets[v]..offsets[v + 1] {
                p.set(i, i, f.one());
            }
            gens.push(p);
        }
        gens.extend(arrow_actions);
        let m = ModuleRep { algebra: algebra.clone(), offsets, gens, all: OnceLock::new() };
        for (k, &g) in algebra.generators().iter().enumerate() {
            let (u, v) = (algebra.left_vertex(g), algebra.right_vertex(g));
            let a = &m.gens[n + k];
            for r in 0..dim {
                for c in 0..dim {
                    if !f.is_zero(a.get(r, c)) && !(m.block(u).contains(&r) && m.block(v).contains(&c)) {
                        return Err(Error::InvalidModule(format!(
                            "arrow {} does not map e_{v} M into e_{u} M",
                            algebra.label(g)
                        )));
                    }
                }
            }
        }
        Ok(m)
    }

    /// Builds a module from arbitrary actions of `algebra.module_generators()`
    /// and returns it with the change of basis (columns are the adapted basis
    /// in the original coordinates).
    pub fn adapt(algebra: &Arc<Algebra<F>>, dim: usize, gen_actions: &[Matrix<F>]) -> Result<(Self, Matrix<F>)> {
        let f = algebra.field();
        let n = algebra.vertex_count();
        if gen_actions.len() != algebra.module_generators().len() {
            return Err(Error::InvalidModule("one action per vertex and arrow expected".into()));
        }
        let mut columns = Vec::with_capacity(dim);
        let mut block_dims = Vec::with_capacity(n);
        for p in &gen_actions[..n] {
            if p.mul(p) != *p {
                return Err(Error::InvalidModule("vertex action is not idempotent".into()));
            }
            let r = p.transpose().rref();
            block_dims.push(r.rank);
            for i in 0..r.rank {
                columns.push(r.reduced.row(i).to_vec());
            }
        }
        if columns.len() != dim {
            return Err(Error::InvalidModule("vertex idempotents do not sum to the identity".into()));
        }
        let t = Matrix::from_columns(f, dim, &columns);
        let t_inv = t
            .inverse()
            .ok_or_else(|| Error::InvalidModule("vertex idempotents are not orthogonal".into()))?;
        let arrows = gen_actions[n..].iter().map(|a| t_inv.mul(&a.mul(&t))).collect();
        let m = ModuleRep::from_blocks(algebra, &block_dims, arrows)?;
        Ok((m, t))
    }

    pub fn from_actions(algebra: &Arc<Algebra<F>>, dim: usize, gen_actions: &[Matrix<F>]) -> Result<Self> {
        Self::adapt(algebra, dim, gen_actions).map(|(m, _)| m)
    }

    pub fn zero(algebra: &Arc<Algebra<F>>) -> Self {
        let arrows = algebra.generators().iter().map(|_| Matrix::zeros(algebra.field(), 0, 0)).collect();
        Self::from_blocks(algebra, &vec![0; algebra.vertex_count()], arrows).expect("zero module")
    }

    pub fn simple(algebra: &Arc<Algebra<F>>, v: usize) -> Self {
        let mut dims = vec![0; algebra.vertex_count()];
        dims[v] = 1;
        let arrows = algebra.generators().iter().map(|_| Matrix::zeros(algebra.field(), 1, 1)).collect();
        Self::from_blocks(algebra, &dims, arrows).expect("simple module")
    }

    /// Direct sum of the simples at the given vertices.
    pub fn semisimple(algebra: &Arc<Algebra<F>>, vertices: &[usize]) -> Self {
        let mut dims = vec![0; algebra.vertex_count()];
        for &v in vertices {
            dims[v] += 1;
        }
        let d: usize = dims.iter().sum();
        let arrows = algebra.generators().iter().map(|_| Matrix::zeros(algebra.field(), d, d)).collect();
        Self::from_blocks(algebra, &dims, arrows).expect("semisimple module")
    }

    /// The left ideal spanned by a set of basis elements closed under left
    /// multiplication (a union of sets `Λ e_v`, or any bigraded left ideal).
    pub fn left_ideal(algebra: &Arc<Algebra<F>>, basis: &[usize]) -> Result<(Self, Vec<usize>)> {
        let f = algebra.field();
        let mut order: Vec<usize> = basis.to_vec();
        order.sort_by_key(|&b| (algebra.left_vertex(b), b));
        order.dedup();
        let mut pos = vec![usize::MAX; algebra.dim()];
        for (i, &b) in order.iter().enumerate() {
            pos[b] = i;
        }
        let d = order.len();
        let mut dims = vec![0; algebra.vertex_count()];
        for &b in &order {
            dims[algebra.left_vertex(b)] += 1;
        }
        let mut arrows = Vec::new();
        for &g in algebra.generators() {
            let mut m = Matrix::zeros(f, d, d);
            for (c, &b) in order.iter().enumerate() {
                for (k, x) in algebra.product(g, b) {
                    if pos[*k] == usize::MAX {
                        return Err(Error::InvalidModule("basis set is not closed under left multiplication".into()));
                    }
                    m.set(pos[*k], c, x.clone());
                }
            }
            arrows.push(m);
        }
        Ok((Self::from_blocks(algebra, &dims, arrows)?, order))
    }

    /// `Λ e_v`.
    pub fn projective(algebra: &Arc<Algebra<F>>, v: usize) -> Self {
        Self::left_ideal(algebra, &algebra.projective_basis(v)).expect("projective").0
    }

    /// The left regular module.
    pub fn regular(algebra: &Arc<Algebra<F>>) -> Self {
        let all: Vec<usize> = (0..algebra.dim()).collect();
        Self::left_ideal(algebra, &all).expect("regular").0
    }

    /// `D(e_v Λ)`, the injective envelope of the simple at `v`.
    pub fn injective(algebra: &Arc<Algebra<F>>, v: usize) -> Self {
        let op = algebra.opposite_arc();
        Self::projective(&op, v).dual_over(algebra).expect("opposite of opposite")
    }

    /// The dual right module as a module over the opposite algebra.
    pub fn dual(&self) -> Self {
        self.dual_over(&self.algebra.opposite_arc()).expect("opposite algebra")
    }

    /// The dual over a given copy of the opposite algebra.
    pub fn dual_over(&self, target: &Arc<Algebra<F>>) -> Result<Self> {
        if target.fingerprint() != self.algebra.opposite_arc().fingerprint() {
            return Err(Error::AlgebraMismatch("dual lives over the opposite algebra".into()));
        }
        let arrows = self.gens[self.algebra.vertex_count()..].iter().map(Matrix::transpose).collect();
        Self::from_blocks(target, &self.vertex_dims(), arrows)
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.algebra
    }

    pub fn field(&self) -> &F {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn vertex_dims(&self) -> Vec<usize> {
        self.offsets.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Basis positions of `e_v M`.
    pub fn block(&self, v: usize) -> Range<usize> {
        self.offsets[v]..self.offsets[v + 1]
    }

    pub fn vertex_of(&self, i: usize) -> usize {
        self.offsets.partition_point(|&o| o <= i) - 1
    }

    /// Actions of vertices then arrows.
    pub fn generator_actions(&self) -> &[Matrix<F>] {
        &self.gens
    }

    /// Action of the `k`-th arrow of the algebra.
    pub fn arrow_action(&self, k: usize) -> &Matrix<F> {
        &self.gens[self.algebra.vertex_count() + k]
    }

    /// Action matrix of an arbitrary basis element.
    pub fn action(&self, b: usize) -> &Matrix<F> {
        &self.all_actions()[b]
    }

    pub fn all_actions(&self) -> &[Matrix<F>] {
        self.all.get_or_init(|| self.compute_all_actions())
    }

    fn compute_all_actions(&self) -> Vec<Matrix<F>> {
        let f = self.field();
        let alg = &self.algebra;
        let wb = alg.word_basis();
        let gen_pos = self.generator_positions();
        let d = self.dim();
        let mut word_mats: Vec<Matrix<F>> = Vec::with_capacity(wb.words.len());
        for (w, word) in wb.words.iter().enumerate() {
            let letter = &self.gens[gen_pos[word[0]]];
            let m = match wb.parent[w] {
                None => letter.clone(),
                Some(p) => letter.mul(&word_mats[p]),
            };
            word_mats.push(m);
        }
        (0..alg.dim())
            .map(|b| {
                if let Some(v) = alg.vertex_of_basis(b) {
                    return self.gens[v].clone();
                }
                let mut acc = Matrix::zeros(f, d, d);
                for (w, m) in word_mats.iter().enumerate() {
                    let c = wb.coords.get(w, b);
                    if !f.is_zero(c) {
                        acc.add_scaled(c, m);
                    }
                }
                acc
            })
            .collect()
    }

    fn generator_positions(&self) -> Vec<usize> {
        let mut pos = vec![usize::MAX; self.algebra.dim()];
        for (i, &g) in self.algebra.module_generators().iter().enumerate() {
            pos[g] = i;
        }
        pos
    }

    pub fn apply(&self, b: usize, v: &[F::Elem]) -> Vec<F::Elem> {
        self.action(b).mul_vec(v)
    }

    /// Checks every module axiom against the structure constants.
    pub fn verify(&self) -> Vec<String> {
        let f = self.field();
        let alg = &self.algebra;
        let d = self.dim();
        let acts = self.all_actions();
        let mut issues = Vec::new();
        let mut sum = Matrix::zeros(f, d, d);
        for &v in alg.vertices() {
            sum = sum.add(&acts[v]);
        }
        if sum != Matrix::identity(f, d) {
            issues.push("vertex actions do not sum to the identity".into());
        }
        'outer: for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let lhs = acts[i].mul(&acts[j]);
                let mut rhs = Matrix::zeros(f, d, d);
                for (k, c) in alg.product(i, j) {
                    rhs.add_scaled(c, &acts[*k]);
                }
                if lhs != rhs {
                    issues.push(format!("action fails on the product {} * {}", alg.label(i), alg.label(j)));
                    break 'outer;
                }
            }
        }
        issues
    }

    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.algebra.fingerprint().hash(&mut h);
        self.offsets.hash(&mut h);
        for g in &self.gens[self.algebra.vertex_count()..] {
            for r in 0..g.rows() {
                g.row(r).hash(&mut h);
            }
        }
        h.finish()
    }

    fn check_same_algebra(&self, other: &Self) -> Result<()> {
        if self.algebra.same_as(&other.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch("modules live over different algebras".into()))
        }
    }

    /// Basis of `Hom_Λ(self, other)`; each map is a `dim other × dim self` matrix.
    pub fn hom_space(&self, other: &Self) -> Result<Vec<Matrix<F>>> {
        self.check_same_algebra(other)?;
        let f = self.field();
        let alg = &self.algebra;
        let n = alg.vertex_count();
        // unknowns: for each vertex v a (dN_v × dM_v) block, row-major
        let mut var_off = vec![0];
        for v in 0..n {
            var_off.push(var_off[v] + self.block(v).len() * other.block(v).len());
        }
        let vars = var_off[n];
        if vars == 0 {
            return Ok(Vec::new());
        }
        let mut eqs: Vec<Vec<F::Elem>> = Vec::new();
        for (k, &g) in alg.generators().iter().enumerate() {
            let (u, v) = (alg.left_vertex(g), alg.right_vertex(g));
            let (mu, mv, nu, nv) = (self.block(u), self.block(v), other.block(u), other.block(v));
            let (am, an) = (self.arrow_action(k), other.arrow_action(k));
            // (φ_u A_M - A_N φ_v)[r, c] = 0 for r in nu, c in mv
            for (ri, r) in nu.clone().enumerate() {
                for c in mv.clone() {
                    let mut eq = vec![f.zero(); vars];
                    for (ki, kk) in mu.clone().enumerate() {
                        let x = am.get(kk, c);
                        if !f.is_zero(x) {
                            let idx = var_off[u] + ri * mu.len() + ki;
                            eq[idx] = f.add(&eq[idx], x);
                        }
                    }
                    for (ki, kk) in nv.clone().enumerate() {
                        let x = an.get(r, kk);
                        if !f.is_zero(x) {
                            let idx = var_off[v] + ki * mv.len() + (c - mv.start);
                            eq[idx] = f.sub(&eq[idx], x);
                        }
                    }
                    if !is_zero_vec(f, &eq) {
                        eqs.push(eq);
                    }
                }
            }
        }
        let kernel = if eqs.is_empty() {
            Matrix::identity(f, vars)
        } else {
            Matrix::from_rows(f, eqs)?.kernel_basis()
        };
        let mut out = Vec::with_capacity(kernel.cols());
        for c in 0..kernel.cols() {
            let mut phi = Matrix::zeros(f, other.dim(), self.dim());
            for v in 0..n {
                let (mv, nv) = (self.block(v), other.block(v));
                for (ri, r) in nv.clone().enumerate() {
                    for (ci, cc) in mv.clone().enumerate() {
                        phi.set(r, cc, kernel.get(var_off[v] + ri * mv.len() + ci, c).clone());
                    }
                }
            }
            out.push(phi);
        }
        Ok(out)
    }

    pub fn hom_dim(&self, other: &Self) -> Result<usize> {
        Ok(self.hom_space(other)?.len())
    }

    /// An explicit isomorphism `self → other`, if one is found among the Hom
    /// basis and a batch of seeded random combinations of it.
    pub fn find_isomorphism(&self, other: &Self) -> Result<Option<Matrix<F>>> {
        if self.vertex_dims() != other.vertex_dims() {
            return Ok(None);
        }
        if self.dim() == 0 {
            return Ok(Some(Matrix::zeros(self.field(), 0, 0)));
        }
        let basis = self.hom_space(other)?;
        if basis.is_empty() {
            return Ok(None);
        }
        let f = self.field();
        for h in &basis {
            if h.rank() == self.dim() {
                return Ok(Some(h.clone()));
            }
        }
        let mut rng = crate::seeded_rng(self.fingerprint() ^ other.fingerprint().rotate_left(17));
        let range = match f.spec().characteristic() {
            0 => 1000,
            p => p.min(1 << 20) as i64,
        };
        for _ in 0..48 {
            let mut h = Matrix::zeros(f, other.dim(), self.dim());
            for b in &basis {
                let c = f.from_i64(rng.gen_range(0..range));
                h.add_scaled(&c, b);
            }
            if h.rank() == self.dim() {
                return Ok(Some(h));
            }
        }
        Ok(None)
    }

    /// Direct sum; blocks interleave so the result stays vertex-adapted.
    pub fn direct_sum(parts: &[&Self]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::InvalidModule("empty direct sum".into()))?;
        for p in parts {
            first.check_same_algebra(p)?;
        }
        let alg = first.algebra.clone();
        let f = alg.field();
        let n = alg.vertex_count();
        let mut dims = vec![0; n];
        // position of (part, local index) in the sum
        let mut place: Vec<Vec<usize>> = parts.iter().map(|p| vec![0; p.dim()]).collect();
        let mut next = 0;
        for (v, dv) in dims.iter_mut().enumerate() {
            for (pi, p) in parts.iter().enumerate() {
                for i in p.block(v) {
                    place[pi][i] = next;
                    next += 1;
                    *dv += 1;
                }
            }
        }
        let total = next;
        let mut arrows = Vec::new();
        for k in 0..alg.generators().len() {
            let mut m = Matrix::zeros(f, total, total);
            for (pi, p) in parts.iter().enumerate() {
                let a = p.arrow_action(k);
                for r in 0..p.dim() {
                    for c in 0..p.dim() {
                        let x = a.get(r, c);
                        if !f.is_zero(x) {
                            m.set(place[pi][r], place[pi][c], x.clone());
                        }
                    }
                }
            }
            arrows.push(m);
        }
        Self::from_blocks(&alg, &dims, arrows)
    }

    /// Span of the given vectors, split into vertex components.
    pub fn span(&self, vectors: &[Vec<F::Elem>]) -> Subspace<F> {
        let f = self.field();
        let n = self.algebra.vertex_count();
        let mut rows = Vec::with_capacity(n);
        let mut pivots = Vec::with_capacity(n);
        for v in 0..n {
            let blk = self.block(v);
            let local: Vec<Vec<F::Elem>> = vectors
                .iter()
                .map(|x| x[blk.clone()].to_vec())
                .filter(|x| !is_zero_vec(f, x))
                .collect();
            if local.is_empty() {
                rows.push(Vec::new());
                pivots.push(Vec::new());
                continue;
            }
            let r = Matrix::from_rows(f, local).expect("equal lengths").rref();
            rows.push((0..r.rank).map(|i| r.reduced.row(i).to_vec()).collect());
            pivots.push(r.pivots.clone());
        }
        Subspace { rows, pivots }
    }

    /// The submodule generated by the given vectors.
    pub fn generated(&self, vectors: &[Vec<F::Elem>]) -> Subspace<F> {
        let mut current = self.span(vectors);
        loop {
            let basis = self.subspace_vectors(&current);
            let mut all = basis.clone();
            for k in 0..self.algebra.generators().len() {
                for x in &basis {
                    all.push(self.arrow_action(k).mul_vec(x));
                }
            }
            let next = self.span(&all);
            if next.dim() == current.dim() {
                return current;
            }
            current = next;
        }
    }

    /// Basis vectors of a subspace in full module coordinates.
    pub fn subspace_vectors(&self, s: &Subspace<F>) -> Vec<Vec<F::Elem>> {
        let f = self.field();
        let mut out = Vec::with_capacity(s.dim());
        for v in 0..s.rows.len() {
            let blk = self.block(v);
            for r in &s.rows[v] {
                let mut x = vec![f.zero(); self.dim()];
                x[blk.clone()].clone_from_slice(r);
                out.push(x);
            }
        }
        out
    }

    /// Reduces `x` modulo the subspace (block-local pivots become zero).
    fn reduce(&self, s: &Subspace<F>, x: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        let mut x = x.to_vec();
        for v in 0..s.rows.len() {
            let start = self.offsets[v];
            for (row, &p) in s.rows[v].iter().zip(&s.pivots[v]) {
                let c = x[start + p].clone();
                if f.is_zero(&c) {
                    continue;
                }
                let c = f.neg(&c);
                for (i, y) in row.iter().enumerate() {
                    f.mul_add_assign(&mut x[start + i], &c, y);
                }
            }
        }
        x
    }

    pub fn contains(&self, s: &Subspace<F>, x: &[F::Elem]) -> bool {
        is_zero_vec(self.field(), &self.reduce(s, x))
    }

    /// The submodule on a subspace closed under the action, and its inclusion
    /// matrix (`dim self × dim sub`).
    pub fn submodule(&self, s: &Subspace<F>) -> Result<(Self, Matrix<F>)> {
        let f = self.field();
        let basis = self.subspace_vectors(s);
        let d = basis.len();
        let n = self.algebra.vertex_count();
        let dims: Vec<usize> = (0..n).map(|v| s.block_dim(v)).collect();
        let mut sub_off = vec![0];
        for v in 0..n {
            sub_off.push(sub_off[v] + dims[v]);
        }
        let mut arrows = Vec::new();
        for k in 0..self.algebra.generators().len() {
            let a = self.arrow_action(k);
            let mut m = Matrix::zeros(f, d, d);
            for (c, x) in basis.iter().enumerate() {
                let y = a.mul_vec(x);
                if !self.contains(s, &y) {
                    return Err(Error::InvalidModule("subspace is not a submodule".into()));
                }
                for v in 0..n {
                    let start = self.offsets[v];
                    for (i, &p) in s.pivots[v].iter().enumerate() {
                        let coef = &y[start + p];
                        if !f.is_zero(coef) {
                            m.set(sub_off[v] + i, c, coef.clone());
                        }
                    }
                }
            }
            arrows.push(m);
        }
        let inclusion = Matrix::from_columns(f, self.dim(), &basis);
        Ok((Self::from_blocks(&self.algebra, &dims, arrows)?, inclusion))
    }

    /// The quotient by a submodule and the projection matrix (`dim quotient × dim self`).
    pub fn quotient(&self, s: &Subspace<F>) -> Result<(Self, Matrix<F>)> {
        let f = self.field();
        let n = self.algebra.vertex_count();
        let mut kept = Vec::new();
        let mut dims = vec![0; n];
        for v in 0..n {
            for i in 0..self.block(v).len() {
                if !s.pivots[v].contains(&i) {
                    kept.push(self.offsets[v] + i);
                    dims[v] += 1;
                }
            }
        }
        let d = kept.len();
        let project = |x: &[F::Elem]| -> Vec<F::Elem> {
            let r = self.reduce(s, x);
            kept.iter().map(|&k| r[k].clone()).collect()
        };
        let mut proj = Matrix::zeros(f, d, self.dim());
        for c in 0..self.dim() {
            let mut e = vec![f.zero(); self.dim()];
            e[c] = f.one();
            for (r, x) in project(&e).into_iter().enumerate() {
                proj.set(r, c, x);
            }
        }
        let mut arrows = Vec::new();
        for k in 0..self.algebra.generators().len() {
            let a = self.arrow_action(k);
            let mut m = Matrix::zeros(f, d, d);
            for (c, &kc) in kept.iter().enumerate() {
                let y = project(&a.column(kc));
                for (r, x) in y.into_iter().enumerate() {
                    m.set(r, c, x);
                }
            }
            arrows.push(m);
        }
        Ok((Self::from_blocks(&self.algebra, &dims, arrows)?, proj))
    }

    /// `J·M`, the radical of the module.
    pub fn radical_subspace(&self) -> Subspace<F> {
        let mut images = Vec::new();
        for k in 0..self.algebra.generators().len() {
            let a = self.arrow_action(k);
            for c in 0..self.dim() {
                let col = a.column(c);
                if !is_zero_vec(self.field(), &col) {
                    images.push(col);
                }
            }
        }
        self.span(&images)
    }

    /// `M / JM` as vertex multiplicities.
    pub fn top_dims(&self) -> Vec<usize> {
        let rad = self.radical_subspace();
        (0..self.algebra.vertex_count()).map(|v| self.block(v).len() - rad.block_dim(v)).collect()
    }

    /// Transports the module along an algebra map that sends basis element `i`
    /// of `target` to basis element `basis_map[i]` of the source algebra and
    /// vertex `n` of `target` to vertex `vertex_map[n]`. Only the blocks of the
    /// mapped vertices survive. This realizes both `a·M` over a corner and a
    /// module annihilated by `⟨a⟩` viewed over `Λ/⟨a⟩`.
    pub fn restrict(&self, target: &Arc<Algebra<F>>, vertex_map: &[usize], basis_map: &[usize]) -> Result<Self> {
        let f = self.field();
        if vertex_map.len() != target.vertex_count() || basis_map.len() != target.dim() {
            return Err(Error::AlgebraMismatch("restriction maps do not fit the target algebra".into()));
        }
        let mut positions = Vec::new();
        let mut dims = Vec::new();
        for &v in vertex_map {
            let blk = self.block(v);
            dims.push(blk.len());
            positions.extend(blk);
        }
        let d = positions.len();
        let mut arrows = Vec::new();
        for &g in target.generators() {
            let a = self.action(basis_map[g]);
            let mut m = Matrix::zeros(f, d, d);
            for (r, &pr) in positions.iter().enumerate() {
                for (c, &pc) in positions.iter().enumerate() {
                    m.set(r, c, a.get(pr, pc).clone());
                }
            }
            arrows.push(m);
        }
        Self::from_blocks(target, &dims, arrows)
    }

    /// Inflation along a surjection `source → target`: `project` maps a
    /// source basis element to target coordinates and `vertex_map` sends
    /// target vertex `n` to a source vertex. Source vertices outside the image
    /// get zero blocks.
    pub fn inflate(
        &self,
        source: &Arc<Algebra<F>>,
        vertex_map: &[usize],
        project: impl Fn(usize) -> Vec<F::Elem>,
    ) -> Result<Self> {
        let f = self.field();
        let d = self.dim();
        let mut dims = vec![0; source.vertex_count()];
        for (n, &v) in vertex_map.iter().enumerate() {
            dims[v] = self.block(n).len();
        }
        // new order is by source vertex; map each target-block position
        let mut order = Vec::with_capacity(d);
        let mut by_source: Vec<(usize, usize)> = vertex_map.iter().enumerate().map(|(n, &v)| (v, n)).collect();
        by_source.sort();
        for (_, n) in by_source {
            order.extend(self.block(n));
        }
        let mut arrows = Vec::new();
        for &g in source.generators() {
            let coords = project(g);
            let mut acc = Matrix::zeros(f, d, d);
            for (q, c) in coords.iter().enumerate() {
                if !f.is_zero(c) {
                    acc.add_scaled(c, self.action(q));
                }
            }
            arrows.push(acc.select(&order, &order));
        }
        Self::from_blocks(source, &dims, arrows)
    }
}

/// A `Γ`-`Σ`-bimodule with a bigraded basis sorted by (left vertex, right vertex).
#[derive(Clone)]
pub struct Bimodule<F: Field> {
    left: Arc<Algebra<F>>,
    right: Arc<Algebra<F>>,
    left_vertex: Vec<usize>,
    right_vertex: Vec<usize>,
    /// Action of every left basis element.
    left_actions: Vec<Matrix<F>>,
    /// `m ↦ m·σ` for every right basis element.
    right_actions: Vec<Matrix<F>>,
}

impl<F: Field> std::fmt::Debug for Bimodule<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Bimodule").field("dim", &self.dim()).finish()
    }
}

fn word_actions<F: Field>(alg: &Algebra<F>, gens: &[Matrix<F>], dim: usize, right: bool) -> Vec<Matrix<F>> {
    let f = alg.field();
    let wb = alg.word_basis();
    let mut pos = vec![usize::MAX; alg.dim()];
    for (i, &g) in alg.module_generators().iter().enumerate() {
        pos[g] = i;
    }
    let mut word_mats: Vec<Matrix<F>> = Vec::with_capacity(wb.words.len());
    for (w, word) in wb.words.iter().enumerate() {
        let letter = &gens[pos[word[0]]];
        let m = match (wb.parent[w], right) {
            (None, _) => letter.clone(),
            // m·(g w) = (m·g)·w
            (Some(p), true) => word_mats[p].mul(letter),
            (Some(p), false) => letter.mul(&word_mats[p]),
        };
        word_mats.push(m);
    }
    (0..alg.dim())
        .map(|b| {
            let mut acc = Matrix::zeros(f, dim, dim);
            for (w, m) in word_mats.iter().enumerate() {
                let c = wb.coords.get(w, b);
                if !f.is_zero(c) {
                    acc.add_scaled(c, m);
                }
            }
            acc
        })
        .collect()
}

impl<F: Field> Bimodule<F> {
    /// Builds a bimodule from the actions of the module generators (vertices
    /// then arrows) of each side, rebasing to a bigraded basis.
    pub fn from_generator_actions(
        left: &Arc<Algebra<F>>,
        right: &Arc<Algebra<F>>,
        dim: usize,
        left_gens: &[Matrix<F>],
        right_gens: &[Matrix<F>],
    ) -> Result<Self> {
        if left.field() != right.field() {
            return Err(Error::FieldMismatch(left.field().spec().to_string(), right.field().spec().to_string()));
        }
        if left_gens.len() != left.module_generators().len() || right_gens.len() != right.module_generators().len() {
            return Err(Error::BimoduleAxioms("one action per vertex and arrow expected on each side".into()));
        }
        if left_gens.iter().chain(right_gens).any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::BimoduleAxioms("action matrices must be square of the bimodule dimension".into()));
        }
        let la = word_actions(left, left_gens, dim, false);
        let ra = word_actions(right, right_gens, dim, true);
        let raw = Bimodule {
            left: left.clone(),
            right: right.clone(),
            left_vertex: vec![0; dim],
            right_vertex: vec![0; dim],
            left_actions: la,
            right_actions: ra,
        };
        let issues = raw.verify();
        if !issues.is_empty() {
            return Err(Error::BimoduleAxioms(issues.join("; ")));
        }
        raw.bigraded()
    }

    /// The bimodule spanned by a set of basis elements of `Λ` that is closed
    /// under left multiplication by the image of `left` and right
    /// multiplication by the image of `right`. The maps send basis indices of
    /// `left`/`right` to basis indices of `lambda`.
    pub fn inside(
        lambda: &Algebra<F>,
        left: (&Arc<Algebra<F>>, &[usize]),
        right: (&Arc<Algebra<F>>, &[usize]),
        basis: &[usize],
    ) -> Result<Self> {
        let f = lambda.field();
        let order = Self::inside_order(lambda, basis);
        let mut pos = vec![usize::MAX; lambda.dim()];
        for (i, &b) in order.iter().enumerate() {
            pos[b] = i;
        }
        let d = order.len();
        let build = |img: usize, on_left: bool| -> Result<Matrix<F>> {
            let mut m = Matrix::zeros(f, d, d);
            for (c, &b) in order.iter().enumerate() {
                let p = if on_left { lambda.product(img, b) } else { lambda.product(b, img) };
                for (k, x) in p {
                    if pos[*k] == usize::MAX {
                        return Err(Error::BimoduleAxioms("basis set is not closed under the actions".into()));
                    }
                    m.set(pos[*k], c, x.clone());
                }
            }
            Ok(m)
        };
        let left_actions = left.1.iter().map(|&i| build(i, true)).collect::<Result<Vec<_>>>()?;
        let right_actions = right.1.iter().map(|&i| build(i, false)).collect::<Result<Vec<_>>>()?;
        let vertex_in = |alg: &Algebra<F>, map: &[usize], lv: usize| {
            (0..alg.vertex_count()).find(|&n| map[alg.vertices()[n]] == lambda.vertices()[lv])
        };
        let mut left_vertex = Vec::with_capacity(d);
        let mut right_vertex = Vec::with_capacity(d);
        for &b in &order {
            let lv = vertex_in(left.0, left.1, lambda.left_vertex(b))
                .ok_or_else(|| Error::BimoduleAxioms("left vertex outside the left algebra".into()))?;
            let rv = vertex_in(right.0, right.1, lambda.right_vertex(b))
                .ok_or_else(|| Error::BimoduleAxioms("right vertex outside the right algebra".into()))?;
            left_vertex.push(lv);
            right_vertex.push(rv);
        }
        Ok(Bimodule {
            left: left.0.clone(),
            right: right.0.clone(),
            left_vertex,
            right_vertex,
            left_actions,
            right_actions,
        })
    }

    /// The basis elements of `lambda` behind the basis of [`Bimodule::inside`], in order.
    pub fn inside_order(lambda: &Algebra<F>, basis: &[usize]) -> Vec<usize> {
        let mut order = basis.to_vec();
        order.sort_by_key(|&b| (lambda.left_vertex(b), lambda.right_vertex(b), b));
        order
    }

    /// `Λ` as a bimodule over itself.
    pub fn regular(lambda: &Arc<Algebra<F>>) -> Self {
        let ids: Vec<usize> = (0..lambda.dim()).collect();
        Self::inside(lambda, (lambda, &ids), (lambda, &ids), &ids).expect("regular bimodule")
    }

    pub fn left(&self) -> &Arc<Algebra<F>> {
        &self.left
    }

    pub fn right(&self) -> &Arc<Algebra<F>> {
        &self.right
    }

    pub fn dim(&self) -> usize {
        self.left_vertex.len()
    }

    pub fn left_action(&self, b: usize) -> &Matrix<F> {
        &self.left_actions[b]
    }

    pub fn right_action(&self, b: usize) -> &Matrix<F> {
        &self.right_actions[b]
    }

    /// `(left vertex, right vertex)` of basis vector `i`.
    pub fn vertices_of(&self, i: usize) -> (usize, usize) {
        (self.left_vertex[i], self.right_vertex[i])
    }

    pub fn verify(&self) -> Vec<String> {
        let f = self.left.field();
        let d = self.dim();
        let mut issues = Vec::new();
        let id = Matrix::identity(f, d);
        let sum = |alg: &Algebra<F>, acts: &[Matrix<F>]| {
            alg.vertices().iter().fold(Matrix::zeros(f, d, d), |acc, &v| acc.add(&acts[v]))
        };
        if sum(&self.left, &self.left_actions) != id {
            issues.push("left vertex actions do not sum to the identity".into());
        }
        if sum(&self.right, &self.right_actions) != id {
            issues.push("right vertex actions do not sum to the identity".into());
        }
        let check = |alg: &Algebra<F>, acts: &[Matrix<F>], right: bool| -> Option<String> {
            for i in 0..alg.dim() {
                for j in 0..alg.dim() {
                    let lhs = if right { acts[j].mul(&acts[i]) } else { acts[i].mul(&acts[j]) };
                    let mut rhs = Matrix::zeros(f, d, d);
                    for (k, c) in alg.product(i, j) {
                        rhs.add_scaled(c, &acts[*k]);
                    }
                    if lhs != rhs {
                        let side = if right { "right" } else { "left" };
                        return Some(format!("{side} action fails on {} * {}", alg.label(i), alg.label(j)));
                    }
                }
            }
            None
        };
        issues.extend(check(&self.left, &self.left_actions, false));
        issues.extend(check(&self.right, &self.right_actions, true));
        'comm: for l in &self.left_actions {
            for r in &self.right_actions {
                if l.mul(r) != r.mul(l) {
                    issues.push("left and right actions do not commute".into());
                    break 'comm;
                }
            }
        }
        issues
    }

    /// The same bimodule on a basis of the pieces `e_u M f_v`, sorted by `(u, v)`.
    pub fn bigraded(&self) -> Result<Self> {
        let f = self.left.field();
        let d = self.dim();
        let mut columns = Vec::with_capacity(d);
        let mut left_vertex = Vec::with_capacity(d);
        let mut right_vertex = Vec::with_capacity(d);
        for (u, &eu) in self.left.vertices().iter().enumerate() {
            for (v, &fv) in self.right.vertices().iter().enumerate() {
                let p = self.left_actions[eu].mul(&self.right_actions[fv]);
                let r = p.transpose().rref();
                for i in 0..r.rank {
                    columns.push(r.reduced.row(i).to_vec());
                    left_vertex.push(u);
                    right_vertex.push(v);
                }
            }
        }
        if columns.len() != d {
            return Err(Error::BimoduleAxioms("vertex idempotents do not decompose the bimodule".into()));
        }
        let t = Matrix::from_columns(f, d, &columns);
        let t_inv = t.inverse().ok_or_else(|| Error::BimoduleAxioms("vertex pieces are not independent".into()))?;
        let conj = |m: &Matrix<F>| t_inv.mul(&m.mul(&t));
        Ok(Bimodule {
            left: self.left.clone(),
            right: self.right.clone(),
            left_vertex,
            right_vertex,
            left_actions: self.left_actions.iter().map(conj).collect(),
            right_actions: self.right_actions.iter().map(conj).collect(),
        })
    }

    /// Underlying left module over the left algebra.
    pub fn left_module(&self) -> ModuleRep<F> {
        let n = self.left.vertex_count();
        let mut dims = vec![0; n];
        for &u in &self.left_vertex {
            dims[u] += 1;
        }
        let arrows = self.left.generators().iter().map(|&g| self.left_actions[g].clone()).collect();
        ModuleRep::from_blocks(&self.left, &dims, arrows).expect("basis sorted by left vertex")
    }

    /// Underlying right module, as a left module over the opposite of the right algebra.
    pub fn right_module(&self) -> ModuleRep<F> {
        let op = self.right.opposite_arc();
        let gens: Vec<Matrix<F>> =
            self.right.module_generators().iter().map(|&g| self.right_actions[g].clone()).collect();
        ModuleRep::from_actions(&op, self.dim(), &gens).expect("right actions form a module")
    }

    /// The bimodule as a left module over `left ⊗ right^op`.
    pub fn as_tensor_module(&self, env: &Arc<Algebra<F>>) -> Result<ModuleRep<F>> {
        let dr = self.right.dim();
        if env.dim() != self.left.dim() * dr {
            return Err(Error::AlgebraMismatch("enveloping algebra has the wrong dimension".into()));
        }
        let gens: Vec<Matrix<F>> = env
            .module_generators()
            .iter()
            .map(|&g| self.left_actions[g / dr].mul(&self.right_actions[g % dr]))
            .collect();
        ModuleRep::from_actions(env, self.dim(), &gens)
    }
}

/// `B ⊗_A N` for an `L`-`A`-bimodule `B` and a left `A`-module `N`.
pub struct TensorProduct<F: Field> {
    /// The tensor product as a left `L`-module.
    pub module: ModuleRep<F>,
    /// Pairs `(bimodule basis index, module basis index)` spanning the
    /// ambient space, in ambient order.
    pub pairs: Vec<(usize, usize)>,
    /// Projection from the ambient space onto `module`.
    pub projection: Matrix<F>,
}

impl<F: Field> TensorProduct<F> {
    /// Coordinates in `module` of the class of `k ⊗ y`.
    pub fn class_of(&self, k: usize, y: usize) -> Option<Vec<F::Elem>> {
        self.pairs.iter().position(|&p| p == (k, y)).map(|i| self.projection.column(i))
    }
}

pub fn tensor_over<F: Field>(b: &Bimodule<F>, n: &ModuleRep<F>) -> Result<TensorProduct<F>> {
    let a = b.right();
    if !a.same_as(n.algebra()) {
        return Err(Error::AlgebraMismatch("tensor factors live over different algebras".into()));
    }
    let f = a.field();
    let l = b.left();
    // ambient space: b_k ⊗ y with y in the block of k's right vertex, sorted by k's left vertex
    let mut pairs = Vec::new();
    for k in 0..b.dim() {
        for y in n.block(b.right_vertex[k]) {
            pairs.push((k, y));
        }
    }
    pairs.sort_by_key(|&(k, y)| (b.left_vertex[k], k, y));
    let index = |k: usize, y: usize| pairs.binary_search_by_key(&(b.left_vertex[k], k, y), |&(k2, y2)| (b.left_vertex[k2], k2, y2)).ok();
    let dim = pairs.len();
    let mut dims = vec![0; l.vertex_count()];
    for &(k, _) in &pairs {
        dims[b.left_vertex[k]] += 1;
    }
    let mut arrows = Vec::new();
    for &g in l.generators() {
        let act = b.left_action(g);
        let mut m = Matrix::zeros(f, dim, dim);
        for (c, &(k, y)) in pairs.iter().enumerate() {
            for r in 0..b.dim() {
                let x = act.get(r, k);
                if !f.is_zero(x) {
                    let i = index(r, y).expect("left action preserves the right vertex");
                    m.set(i, c, x.clone());
                }
            }
        }
        arrows.push(m);
    }
    let ambient = ModuleRep::from_blocks(l, &dims, arrows)?;

    let mut relations = Vec::new();
    for (gi, &g) in a.generators().iter().enumerate() {
        let (u, v) = (a.left_vertex(g), a.right_vertex(g));
        let rg = b.right_action(g);
        let ng = n.arrow_action(gi);
        for k in (0..b.dim()).filter(|&k| b.right_vertex[k] == u) {
            let kg = rg.column(k);
            for y in n.block(v) {
                let mut rel = vec![f.zero(); dim];
                for (r, x) in kg.iter().enumerate() {
                    if !f.is_zero(x) {
                        let i = index(r, y).expect("k·g has right vertex v");
                        rel[i] = f.add(&rel[i], x);
                    }
                }
                for yy in n.block(u) {
                    let x = ng.get(yy, y);
                    if !f.is_zero(x) {
                        let i = index(k, yy).expect("k has right vertex u");
                        rel[i] = f.sub(&rel[i], x);
                    }
                }
                if !is_zero_vec(f, &rel) {
                    relations.push(rel);
                }
            }
        }
    }
    let sub = ambient.span(&relations);
    let (module, projection) = ambient.quotient(&sub)?;
    Ok(TensorProduct { module, pairs, projection })
}

/// `M ⊗_A N` for a right module `M` (given over `A^op`) and a left module `N`; dimension only.
pub fn tensor_dim<F: Field>(m: &ModuleRep<F>, n: &ModuleRep<F>) -> Result<usize> {
    let a = n.algebra();
    if m.algebra().fingerprint() != a.opposite_arc().fingerprint() {
        return Err(Error::AlgebraMismatch("the right factor must be a module over the opposite algebra".into()));
    }
    let f = a.field();
    let mut index = vec![Vec::new(); m.dim()];
    let mut count = 0;
    for (x, slot) in index.iter_mut().enumerate() {
        for _ in n.block(m.vertex_of(x)) {
            slot.push(count);
            count += 1;
        }
    }
    let pos = |x: usize, y: usize| index[x][y - n.block(m.vertex_of(x)).start];
    let mut relations = Vec::new();
    for (gi, &g) in a.generators().iter().enumerate() {
        let (u, v) = (a.left_vertex(g), a.right_vertex(g));
        // right action m·g = (op action of g) m; m ∈ M e_u, y ∈ e_v N
        let mg = m.arrow_action(gi);
        let ng = n.arrow_action(gi);
        for x in m.block(u) {
            let xg = mg.column(x);
            for y in n.block(v) {
                let mut rel = vec![f.zero(); count];
                for (r, c) in xg.iter().enumerate() {
                    if !f.is_zero(c) {
                        let i = pos(r, y);
                        rel[i] = f.add(&rel[i], c);
                    }
                }
                for yy in n.block(u) {
                    let c = ng.get(yy, y);
                    if !f.is_zero(c) {
                        let i = pos(x, yy);
                        rel[i] = f.sub(&rel[i], c);
                    }
                }
                if !is_zero_vec(f, &rel) {
                    relations.push(rel);
                }
            }
        }
    }
    let rank = if relations.is_empty() { 0 } else { Matrix::from_rows(f, relations)?.rank() };
    Ok(count - rank)
}

/// `Hom_A(B, Y)` for an `A`-`L`-bimodule `B` and a left `A`-module `Y`, as a
/// left `L`-module via `(l·φ)(x) = φ(x·l)`.
pub fn hom_from_bimodule<F: Field>(b: &Bimodule<F>, y: &ModuleRep<F>) -> Result<ModuleRep<F>> {
    Ok(hom_from_bimodule_with_basis(b, y)?.0)
}

/// [`hom_from_bimodule`] together with the maps `B → Y` behind its basis.
pub fn hom_from_bimodule_with_basis<F: Field>(b: &Bimodule<F>, y: &ModuleRep<F>) -> Result<(ModuleRep<F>, Vec<Matrix<F>>)> {
    let l = b.right();
    let f = l.field();
    let bm = b.left_module();
    let basis = bm.hom_space(y)?;
    let d = basis.len();
    let flat = |m: &Matrix<F>| -> Vec<F::Elem> { (0..m.rows()).flat_map(|r| m.row(r).to_vec()).collect() };
    let columns: Vec<Vec<F::Elem>> = basis.iter().map(flat).collect();
    let len = y.dim() * bm.dim();
    let system = Matrix::from_columns(f, len, &columns);
    let mut gens = Vec::new();
    for &g in &l.module_generators() {
        let mut m = Matrix::zeros(f, d, d);
        for (c, phi) in basis.iter().enumerate() {
            let image = phi.mul(b.right_action(g));
            let coords = system
                .solve(&flat(&image))?
                .ok_or_else(|| Error::InvalidModule("Hom space is not closed under the action".into()))?;
            for (r, x) in coords.into_iter().enumerate() {
                m.set(r, c, x);
            }
        }
        gens.push(m);
    }
    let (module, t) = ModuleRep::adapt(l, d, &gens)?;
    let adapted = (0..d)
        .map(|i| {
            let mut acc = Matrix::zeros(f, y.dim(), bm.dim());
            for (c, phi) in basis.iter().enumerate() {
                if !f.is_zero(t.get(c, i)) {
                    acc.add_scaled(t.get(c, i), phi);
                }
            }
            acc
        })
        .collect();
    Ok((module, adapted))
}

/// `M ⊗_k N` over `A ⊗ B` for modules over `A` and `B`.
pub fn outer_tensor<F: Field>(m: &ModuleRep<F>, n: &ModuleRep<F>, ab: &Arc<Algebra<F>>) -> Result<ModuleRep<F>> {
    let db = n.algebra().dim();
    if ab.dim() != m.algebra().dim() * db {
        return Err(Error::AlgebraMismatch("tensor algebra has the wrong dimension".into()));
    }
    let gens: Vec<Matrix<F>> =
        ab.module_generators().iter().map(|&g| m.action(g / db).kron(n.action(g % db))).collect();
    ModuleRep::from_actions(ab, m.dim() * n.dim(), &gens)
}

/// `Hom_k(N, M) ≅ M ⊗_k D(N)` as a left module over `A ⊗ A^op`.
pub fn hom_k_bimodule<F: Field>(m: &ModuleRep<F>, n: &ModuleRep<F>, env: &Arc<Algebra<F>>) -> Result<ModuleRep<F>> {
    outer_tensor(m, &n.dual(), env)
}

/// Helpers for randomized checks: small modules obtained as quotients of
/// projectives by random submodules.
pub mod sample {
    use super::*;

    pub fn random_vector<F: Field, R: Rng>(f: &F, len: usize, rng: &mut R) -> Vec<F::Elem> {
        let range = match f.spec().characteristic() {
            0 => 7,
            p => p.min(1 << 20) as i64,
        };
        (0..len).map(|_| f.from_i64(rng.gen_range(0..range) - if range == 7 { 3 } else { 0 })).collect()
    }

    /// `P / U` where `P` is a sum of one or two random indecomposable
    /// projectives and `U` is generated by random vectors of `J·P`.
    pub fn random_module<F: Field, R: Rng>(alg: &Arc<Algebra<F>>, rng: &mut R) -> ModuleRep<F> {
        let n = alg.vertex_count();
        let count = rng.gen_range(1..=2);
        let ps: Vec<ModuleRep<F>> = (0..count).map(|_| ModuleRep::projective(alg, rng.gen_range(0..n))).collect();
        let refs: Vec<&ModuleRep<F>> = ps.iter().collect();
        let p = ModuleRep::direct_sum(&refs).expect("same algebra");
        let rad = p.radical_subspace();
        let rad_vectors = p.subspace_vectors(&rad);
        if rad_vectors.is_empty() {
            return p;
        }
        let f = alg.field();
        let gens: Vec<Vec<F::Elem>> = (0..rng.gen_range(0..=2))
            .map(|_| {
                let c = random_vector(f, rad_vectors.len(), rng);
                let mut x = vec![f.zero(); p.dim()];
                for (ci, v) in c.iter().zip(&rad_vectors) {
                    for (xi, vi) in x.iter_mut().zip(v) {
                        f.mul_add_assign(xi, ci, vi);
                    }
                }
                // keep it homogeneous so it generates a proper submodule
                let v = p.vertex_of(rng.gen_range(0..p.dim()));
                for i in 0..p.dim() {
                    if !p.block(v).contains(&i) {
                        x[i] = f.zero();
                    }
                }
                x
            })
            .collect();
        let sub = p.generated(&gens);
        p.quotient(&sub).expect("submodule").0
    }

    /// A random idempotent (nonempty vertex subset).
    pub fn random_idempotent<R: Rng>(vertex_count: usize, rng: &mut R) -> Idempotent {
        loop {
            let vs: Vec<usize> = (0..vertex_count).filter(|_| rng.gen_bool(0.5)).collect();
            if let Ok(a) = Idempotent::new(vertex_count, vs) {
                return a;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Provenance;
    use crate::field::PrimeField;

    fn dual_numbers() -> Arc<Algebra<PrimeField>> {
        let f = PrimeField::new(101).unwrap();
        let products = vec![vec![(0, 1)], vec![(1, 1)], vec![(1, 1)], vec![]];
        Arc::new(
            Algebra::from_parts(f, vec!["e".into(), "x".into()], products, vec![0], vec![1], Provenance::Custom).unwrap(),
        )
    }

    #[test]
    fn simple_and_projective() {
        let a = dual_numbers();
        let s = ModuleRep::simple(&a, 0);
        let p = ModuleRep::projective(&a, 0);
        assert_eq!(s.dim(), 1);
        assert_eq!(p.dim(), 2);
        assert!(p.verify().is_empty());
        assert_eq!(s.hom_dim(&s).unwrap(), 1);
        assert_eq!(p.hom_dim(&s).unwrap(), 1);
        assert_eq!(p.hom_dim(&p).unwrap(), 2);
        assert_eq!(p.top_dims(), vec![1]);
    }

    #[test]
    fn tensor_of_simples_over_dual_numbers() {
        let a = dual_numbers();
        let s = ModuleRep::simple(&a, 0);
        let sop = ModuleRep::simple(&a.opposite_arc(), 0);
        assert_eq!(tensor_dim(&sop, &s).unwrap(), 1);
        let reg = Bimodule::regular(&a);
        let t = tensor_over(&reg, &s).unwrap();
        assert_eq!(t.module.dim(), 1);
    }

    #[test]
    fn quotient_of_projective_is_simple() {
        let a = dual_numbers();
        let p = ModuleRep::projective(&a, 0);
        let rad = p.radical_subspace();
        let (q, _) = p.quotient(&rad).unwrap();
        assert!(q.find_isomorphism(&ModuleRep::simple(&a, 0)).unwrap().is_some());
    }
}
