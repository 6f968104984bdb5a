//! Finite-dimensional split basic algebras given by structure constants.
//!
//! Every basis element is vertex-bigraded: for each `b` there are unique
//! vertices `u`, `v` with `e_u · b · e_v = b`. Vertex idempotents and a
//! basis of the radical are part of the basis, so corner algebras are
//! subset selections and radicals never have to be computed.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{is_zero_vec, Echelon, Matrix};
use crate::module::Bimodule;

/// Sparse coordinate vector: `(basis index, coefficient)` with nonzero coefficients.
pub type Sparse<E> = Vec<(usize, E)>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Quiver,
    Corner,
    Tensor,
    Quotient,
    Triangular,
    Opposite,
    Custom,
}

/// Marker for "no unique vertex" in the bigrading tables.
const UNGRADED: usize = usize::MAX;

pub struct Algebra<F: Field> {
    field: F,
    labels: Vec<String>,
    products: Vec<Sparse<F::Elem>>,
    vertices: Vec<usize>,
    radical: Vec<usize>,
    provenance: Provenance,
    left_vertex: Vec<usize>,
    right_vertex: Vec<usize>,
    vertex_of_basis: Vec<Option<usize>>,
    generators: Vec<usize>,
    fingerprint: u64,
    words: OnceLock<WordBasis<F>>,
    op: OnceLock<Arc<Algebra<F>>>,
}

impl<F: Field> std::fmt::Debug for Algebra<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Algebra")
            .field("field", &self.field.spec())
            .field("dim", &self.dim())
            .field("vertices", &self.vertices.len())
            .field("provenance", &self.provenance)
            .finish()
    }
}

/// The set of vertices whose idempotents sum to `a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Idempotent {
    vertices: Vec<usize>,
}

impl Idempotent {
    pub fn new(vertex_count: usize, vertices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut vs: Vec<usize> = vertices.into_iter().collect();
        vs.sort_unstable();
        vs.dedup();
        if vs.is_empty() {
            return Err(Error::EmptyIdempotent);
        }
        if let Some(&v) = vs.iter().find(|&&v| v >= vertex_count) {
            return Err(Error::UnknownVertex(v.to_string()));
        }
        Ok(Idempotent { vertices: vs })
    }

    pub fn all(vertex_count: usize) -> Self {
        Idempotent { vertices: (0..vertex_count).collect() }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Vertices outside the idempotent.
    pub fn complement(&self, vertex_count: usize) -> Vec<usize> {
        (0..vertex_count).filter(|v| !self.contains(*v)).collect()
    }

    pub fn is_full(&self, vertex_count: usize) -> bool {
        self.vertices.len() == vertex_count
    }
}

/// Words in the generators whose products form a basis, and the change of
/// basis expressing each basis element through them.
#[derive(Debug, Clone)]
pub struct WordBasis<F: Field> {
    /// Each word lists basis indices `[g_k, …, g_1]`, standing for `g_k ⋯ g_1`.
    pub words: Vec<Vec<usize>>,
    /// Index of the word with the leading letter removed.
    pub parent: Vec<Option<usize>>,
    /// Column `i` holds the coordinates of basis element `i` in the word basis.
    pub coords: Matrix<F>,
}

impl<F: Field> Algebra<F> {
    /// Builds an algebra from raw parts. Only shapes are validated here; use
    /// [`Algebra::verify_axioms`] for the algebraic invariants.
    pub fn from_parts(
        field: F,
        labels: Vec<String>,
        products: Vec<Sparse<F::Elem>>,
        vertices: Vec<usize>,
        radical: Vec<usize>,
        provenance: Provenance,
    ) -> Result<Self> {
        let dim = labels.len();
        if products.len() != dim * dim {
            return Err(Error::InvalidAlgebra(format!(
                "expected {} products for dimension {dim}, got {}",
                dim * dim,
                products.len()
            )));
        }
        let bad_index = products.iter().flatten().any(|(k, _)| *k >= dim)
            || vertices.iter().chain(&radical).any(|&k| k >= dim);
        if bad_index {
            return Err(Error::InvalidAlgebra("basis index out of range".into()));
        }
        let products: Vec<Sparse<F::Elem>> = products
            .into_iter()
            .map(|mut p| {
                p.retain(|(_, c)| !field.is_zero(c));
                p.sort_by_key(|(k, _)| *k);
                p
            })
            .collect();

        let mut vertex_of_basis = vec![None; dim];
        for (n, &v) in vertices.iter().enumerate() {
            vertex_of_basis[v] = Some(n);
        }
        let one = field.one();
        let is_fixed = |p: &Sparse<F::Elem>, b: usize| p.len() == 1 && p[0].0 == b && p[0].1 == one;
        let mut left_vertex = vec![UNGRADED; dim];
        let mut right_vertex = vec![UNGRADED; dim];
        for b in 0..dim {
            let lefts: Vec<usize> =
                (0..vertices.len()).filter(|&n| is_fixed(&products[vertices[n] * dim + b], b)).collect();
            let rights: Vec<usize> =
                (0..vertices.len()).filter(|&n| is_fixed(&products[b * dim + vertices[n]], b)).collect();
            if lefts.len() == 1 {
                left_vertex[b] = lefts[0];
            }
            if rights.len() == 1 {
                right_vertex[b] = rights[0];
            }
        }

        let mut alg = Algebra {
            field,
            labels,
            products,
            vertices,
            radical,
            provenance,
            left_vertex,
            right_vertex,
            vertex_of_basis,
            generators: Vec::new(),
            fingerprint: 0,
            words: OnceLock::new(),
            op: OnceLock::new(),
        };
        alg.generators = alg.compute_generators();
        alg.fingerprint = alg.compute_fingerprint();
        Ok(alg)
    }

    fn compute_generators(&self) -> Vec<usize> {
        let d = self.dim();
        let mut j2 = Echelon::new(&self.field, d);
        for &r in &self.radical {
            for &s in &self.radical {
                let p = self.product(r, s);
                if !p.is_empty() {
                    j2.insert(&self.densify(p));
                }
            }
        }
        let mut gens = Vec::new();
        for &r in &self.radical {
            if j2.insert(&self.unit(r)) {
                gens.push(r);
            }
        }
        gens
    }

    fn compute_fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.field.spec().hash(&mut h);
        self.dim().hash(&mut h);
        self.vertices.hash(&mut h);
        self.radical.hash(&mut h);
        self.products.hash(&mut h);
        h.finish()
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, b: usize) -> &str {
        &self.labels[b]
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Basis indices of the vertex idempotents, in vertex order.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn radical(&self) -> &[usize] {
        &self.radical
    }

    /// Radical basis elements spanning `J/J²` (the arrows).
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Structural identity: equal for algebras with equal constants, idempotents and radical.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn same_as(&self, other: &Self) -> bool {
        self.fingerprint == other.fingerprint && self.dim() == other.dim()
    }

    /// Coordinates of `b_i · b_j`.
    #[inline]
    pub fn product(&self, i: usize, j: usize) -> &Sparse<F::Elem> {
        &self.products[i * self.dim() + j]
    }

    /// Vertex `u` with `e_u · b = b` (the target of a path).
    #[inline]
    pub fn left_vertex(&self, b: usize) -> usize {
        self.left_vertex[b]
    }

    /// Vertex `v` with `b · e_v = b` (the source of a path).
    #[inline]
    pub fn right_vertex(&self, b: usize) -> usize {
        self.right_vertex[b]
    }

    pub fn vertex_of_basis(&self, b: usize) -> Option<usize> {
        self.vertex_of_basis[b]
    }

    pub fn is_radical(&self, b: usize) -> bool {
        self.vertex_of_basis[b].is_none()
    }

    pub fn unit(&self, b: usize) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[b] = self.field.one();
        v
    }

    pub fn densify(&self, s: &Sparse<F::Elem>) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.dim()];
        for (k, c) in s {
            v[*k] = c.clone();
        }
        v
    }

    /// Product of two arbitrary elements in basis coordinates.
    pub fn mul_elems(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim()];
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !f.is_zero(c)) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !f.is_zero(c)) {
                let c = f.mul(xi, yj);
                for (k, s) in self.product(i, j) {
                    f.mul_add_assign(&mut out[k.to_owned()], &c, s);
                }
            }
        }
        out
    }

    /// Matrix of `x ↦ b·x` on the algebra.
    pub fn left_mult_matrix(&self, b: usize) -> Matrix<F> {
        let d = self.dim();
        let mut m = Matrix::zeros(&self.field, d, d);
        for j in 0..d {
            for (k, c) in self.product(b, j) {
                m.set(*k, j, c.clone());
            }
        }
        m
    }

    /// Matrix of `x ↦ x·b` on the algebra.
    pub fn right_mult_matrix(&self, b: usize) -> Matrix<F> {
        let d = self.dim();
        let mut m = Matrix::zeros(&self.field, d, d);
        for j in 0..d {
            for (k, c) in self.product(j, b) {
                m.set(*k, j, c.clone());
            }
        }
        m
    }

    /// Basis elements of `Λ e_v`, i.e. with source `v`.
    pub fn projective_basis(&self, v: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&b| self.right_vertex(b) == v).collect()
    }

    /// Basis elements of `e_v Λ`, i.e. with target `v`.
    pub fn left_ideal_basis(&self, v: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&b| self.left_vertex(b) == v).collect()
    }

    /// Generating set used for module data: vertex idempotents then arrows.
    pub fn module_generators(&self) -> Vec<usize> {
        self.vertices.iter().chain(&self.generators).copied().collect()
    }

    /// Whether the structural split-basic shape holds: vertex idempotents
    /// and radical basis partition the basis and everything is bigraded.
    pub fn is_split_basic(&self) -> bool {
        let d = self.dim();
        let mut seen = vec![false; d];
        for &b in self.vertices.iter().chain(&self.radical) {
            if seen[b] {
                return false;
            }
            seen[b] = true;
        }
        seen.iter().all(|&s| s)
            && (0..d).all(|b| self.left_vertex[b] != UNGRADED && self.right_vertex[b] != UNGRADED)
    }

    /// Lists every violated invariant; empty iff the algebra is valid.
    pub fn verify_axioms(&self) -> Vec<String> {
        let f = &self.field;
        let d = self.dim();
        let mut issues = Vec::new();

        'assoc: for i in 0..d {
            for j in 0..d {
                let ij = self.densify(self.product(i, j));
                for k in 0..d {
                    let lhs = self.mul_elems(&ij, &self.unit(k));
                    let jk = self.densify(self.product(j, k));
                    let rhs = self.mul_elems(&self.unit(i), &jk);
                    if lhs != rhs {
                        issues.push(format!(
                            "associativity fails on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        ));
                        break 'assoc;
                    }
                }
            }
        }

        let mut identity = vec![f.zero(); d];
        for &v in &self.vertices {
            identity[v] = f.one();
        }
        for b in 0..d {
            let u = self.unit(b);
            if self.mul_elems(&identity, &u) != u || self.mul_elems(&u, &identity) != u {
                issues.push(format!("sum of vertex idempotents is not an identity on {}", self.labels[b]));
                break;
            }
        }
        for (n, &u) in self.vertices.iter().enumerate() {
            for (m, &v) in self.vertices.iter().enumerate() {
                let expected = if n == m { self.unit(u) } else { vec![f.zero(); d] };
                if self.densify(self.product(u, v)) != expected {
                    issues.push(format!("vertex idempotents {} and {} are not orthogonal idempotents", self.labels[u], self.labels[v]));
                }
            }
        }

        let mut in_radical = vec![false; d];
        for &r in &self.radical {
            in_radical[r] = true;
        }
        'ideal: for &r in &self.radical {
            for b in 0..d {
                let escapes = |p: &Sparse<F::Elem>| p.iter().any(|(k, _)| !in_radical[*k]);
                if escapes(self.product(b, r)) || escapes(self.product(r, b)) {
                    issues.push(format!("radical is not a two-sided ideal ({} with {})", self.labels[r], self.labels[b]));
                    break 'ideal;
                }
            }
        }
        if !self.radical_is_nilpotent() {
            issues.push("radical is not nilpotent".into());
        }

        if !self.is_split_basic() {
            issues.push("basis is not split basic: vertices and radical must partition a bigraded basis".into());
        }
        if d - self.radical.len().min(d) != self.vertices.len() {
            issues.push(format!(
                "dim Λ/J = {} but there are {} vertex idempotents",
                d.saturating_sub(self.radical.len()),
                self.vertices.len()
            ));
        }
        issues
    }

    fn radical_is_nilpotent(&self) -> bool {
        let d = self.dim();
        let mut power: Vec<Vec<F::Elem>> = self.radical.iter().map(|&r| self.unit(r)).collect();
        for _ in 0..=d {
            if power.is_empty() {
                return true;
            }
            let mut next = Echelon::new(&self.field, d);
            for x in &power {
                for &r in &self.radical {
                    let y = self.mul_elems(x, &self.unit(r));
                    if !is_zero_vec(&self.field, &y) {
                        next.insert(&y);
                    }
                }
            }
            power = next.basis().to_vec();
        }
        power.is_empty()
    }

    /// Generator words spanning the algebra and the coordinates of each basis
    /// element in them. Cached.
    pub fn word_basis(&self) -> &WordBasis<F> {
        self.words.get_or_init(|| self.compute_word_basis())
    }

    fn compute_word_basis(&self) -> WordBasis<F> {
        let d = self.dim();
        let mut span = Echelon::new(&self.field, d);
        let mut words: Vec<Vec<usize>> = Vec::new();
        let mut parent: Vec<Option<usize>> = Vec::new();
        let mut vectors: Vec<Vec<F::Elem>> = Vec::new();
        let mut layer: Vec<usize> = Vec::new();
        for &b in self.vertices.iter().chain(&self.generators) {
            let v = self.unit(b);
            if span.insert(&v) {
                layer.push(words.len());
                words.push(vec![b]);
                parent.push(None);
                vectors.push(v);
            }
        }
        while span.rank() < d && !layer.is_empty() {
            let mut next = Vec::new();
            for &w in &layer {
                for &g in &self.generators {
                    let v = self.mul_elems(&self.unit(g), &vectors[w]);
                    if span.insert(&v) {
                        let mut word = vec![g];
                        word.extend(&words[w]);
                        next.push(words.len());
                        words.push(word);
                        parent.push(Some(w));
                        vectors.push(v);
                    }
                }
            }
            layer = next;
        }
        assert_eq!(span.rank(), d, "vertices and arrows must generate the algebra");
        let w = Matrix::from_columns(&self.field, d, &vectors);
        let coords = w.inverse().expect("word vectors form a basis");
        WordBasis { words, parent, coords }
    }

    /// Shared handle to the opposite algebra, built once.
    pub fn opposite_arc(&self) -> Arc<Algebra<F>> {
        self.op.get_or_init(|| Arc::new(self.opposite())).clone()
    }

    pub fn opposite(&self) -> Algebra<F> {
        let d = self.dim();
        let products = (0..d * d).map(|n| self.products[(n % d) * d + n / d].clone()).collect();
        Algebra::from_parts(
            self.field.clone(),
            self.labels.clone(),
            products,
            self.vertices.clone(),
            self.radical.clone(),
            Provenance::Opposite,
        )
        .expect("opposite of a well-formed algebra")
    }

    /// `A ⊗_k B` on basis pairs `(i, j) ↦ i * dim B + j`.
    pub fn tensor(&self, other: &Algebra<F>) -> Result<Algebra<F>> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.spec().to_string(), other.field.spec().to_string()));
        }
        if !self.is_split_basic() || !other.is_split_basic() {
            return Err(Error::ScopeViolation(
                "tensor products are only formed for split basic algebras, whose tops tensor to a semisimple algebra".into(),
            ));
        }
        let f = &self.field;
        let (da, db) = (self.dim(), other.dim());
        let d = da * db;
        let labels = (0..d).map(|n| format!("{}⊗{}", self.labels[n / db], other.labels[n % db])).collect();
        let mut products = Vec::with_capacity(d * d);
        for x in 0..d {
            let (i1, j1) = (x / db, x % db);
            for y in 0..d {
                let (i2, j2) = (y / db, y % db);
                let pa = self.product(i1, i2);
                let pb = other.product(j1, j2);
                let mut out = Vec::with_capacity(pa.len() * pb.len());
                for (k, c) in pa {
                    for (l, e) in pb {
                        out.push((k * db + l, f.mul(c, e)));
                    }
                }
                products.push(out);
            }
        }
        let vertices = self
            .vertices
            .iter()
            .flat_map(|&u| other.vertices.iter().map(move |&v| u * db + v))
            .collect();
        let radical = (0..d).filter(|&n| self.is_radical(n / db) || other.is_radical(n % db)).collect();
        Algebra::from_parts(f.clone(), labels, products, vertices, radical, Provenance::Tensor)
    }

    /// The corner algebra `aΛa` and the inclusion of its basis into `Λ`'s.
    pub fn corner(&self, a: &Idempotent) -> Result<(Algebra<F>, Vec<usize>)> {
        if a.vertices().is_empty() {
            return Err(Error::EmptyIdempotent);
        }
        let inclusion: Vec<usize> = (0..self.dim())
            .filter(|&b| a.contains(self.left_vertex(b)) && a.contains(self.right_vertex(b)))
            .collect();
        let mut position = vec![usize::MAX; self.dim()];
        for (n, &b) in inclusion.iter().enumerate() {
            position[b] = n;
        }
        let mut products = Vec::with_capacity(inclusion.len().pow(2));
        for &i in &inclusion {
            for &j in &inclusion {
                products.push(self.product(i, j).iter().map(|(k, c)| (position[*k], c.clone())).collect());
            }
        }
        let labels = inclusion.iter().map(|&b| self.labels[b].clone()).collect();
        let vertices = a.vertices().iter().map(|&v| position[self.vertices[v]]).collect();
        let radical = inclusion.iter().filter(|&&b| self.is_radical(b)).map(|&b| position[b]).collect();
        let c = Algebra::from_parts(self.field.clone(), labels, products, vertices, radical, Provenance::Corner)?;
        Ok((c, inclusion))
    }

    /// Reduced basis of the two-sided ideal `ΛaΛ`.
    pub fn two_sided_ideal(&self, a: &Idempotent) -> Vec<Vec<F::Elem>> {
        let d = self.dim();
        let mut rows = Vec::new();
        for i in 0..d {
            if !a.contains(self.right_vertex(i)) {
                continue;
            }
            for j in 0..d {
                if self.left_vertex(j) == self.right_vertex(i) {
                    let p = self.product(i, j);
                    if !p.is_empty() {
                        rows.push(self.densify(p));
                    }
                }
            }
        }
        reduced_basis(&self.field, d, rows)
    }

    /// `Λ / I` for a two-sided ideal `I` given by a spanning set.
    pub fn quotient(&self, ideal: &[Vec<F::Elem>]) -> Result<Quotient<F>> {
        let f = &self.field;
        let d = self.dim();
        let ideal = reduced_basis(f, d, ideal.to_vec());
        let mut span = Echelon::new(f, d);
        for v in &ideal {
            span.insert(v);
        }
        for v in &ideal {
            for b in 0..d {
                let u = self.unit(b);
                if !span.contains(&self.mul_elems(&u, v)) || !span.contains(&self.mul_elems(v, &u)) {
                    return Err(Error::NotAnIdeal);
                }
            }
        }
        let map = QuotientMap::new(f, d, ideal);
        let kept = map.kept.clone();
        let mut products = Vec::with_capacity(kept.len().pow(2));
        for &i in &kept {
            for &j in &kept {
                let image = map.project(&self.densify(self.product(i, j)));
                products.push(image.into_iter().enumerate().filter(|(_, c)| !f.is_zero(c)).collect());
            }
        }
        let position = |b: usize| kept.iter().position(|&k| k == b);
        let labels = kept.iter().map(|&b| self.labels[b].clone()).collect();
        let vertices = self.vertices.iter().filter_map(|&v| position(v)).collect();
        let radical = self.radical.iter().filter_map(|&r| position(r)).collect();
        let algebra = Algebra::from_parts(f.clone(), labels, products, vertices, radical, Provenance::Quotient)?;
        Ok(Quotient { algebra, map })
    }

    /// The triangular matrix algebra `(Σ 0; M Γ)` for a `Γ`-`Σ`-bimodule `M`.
    /// Basis order: `Σ`, then `M`, then `Γ`.
    pub fn triangular(sigma: &Arc<Algebra<F>>, gamma: &Arc<Algebra<F>>, m: &Bimodule<F>) -> Result<Algebra<F>> {
        if sigma.field != gamma.field {
            return Err(Error::FieldMismatch(sigma.field.spec().to_string(), gamma.field.spec().to_string()));
        }
        if !m.left().same_as(gamma) || !m.right().same_as(sigma) {
            return Err(Error::BimoduleAxioms("bimodule must be a Γ-Σ-bimodule".into()));
        }
        let issues = m.verify();
        if !issues.is_empty() {
            return Err(Error::BimoduleAxioms(issues.join("; ")));
        }
        let m = m.bigraded()?;
        let f = &sigma.field;
        let (ds, dm, dg) = (sigma.dim(), m.dim(), gamma.dim());
        let d = ds + dm + dg;
        let (m0, g0) = (ds, ds + dm);
        let mut products = vec![Vec::new(); d * d];
        for i in 0..ds {
            for j in 0..ds {
                products[i * d + j] = sigma.product(i, j).clone();
            }
        }
        for i in 0..dg {
            for j in 0..dg {
                products[(g0 + i) * d + g0 + j] = gamma.product(i, j).iter().map(|(k, c)| (g0 + k, c.clone())).collect();
            }
        }
        for k in 0..dm {
            for j in 0..ds {
                let col = m.right_action(j).column(k);
                products[(m0 + k) * d + j] = sparse_from(f, &col, m0);
            }
            for i in 0..dg {
                let col = m.left_action(i).column(k);
                products[(g0 + i) * d + m0 + k] = sparse_from(f, &col, m0);
            }
        }
        let mut labels: Vec<String> = sigma.labels.iter().map(|l| format!("Σ:{l}")).collect();
        labels.extend((0..dm).map(|k| format!("M:{k}")));
        labels.extend(gamma.labels.iter().map(|l| format!("Γ:{l}")));
        let vertices = sigma.vertices.iter().copied().chain(gamma.vertices.iter().map(|v| g0 + v)).collect();
        let radical = sigma
            .radical
            .iter()
            .copied()
            .chain(m0..g0)
            .chain(gamma.radical.iter().map(|r| g0 + r))
            .collect();
        Algebra::from_parts(f.clone(), labels, products, vertices, radical, Provenance::Triangular)
    }

    /// The quiver of the algebra (arrows = a basis of `e_u (J/J²) e_v`) and a
    /// minimal set of relations among arrow paths of length at most `maxlen`.
    pub fn quiver(&self, maxlen: usize) -> QuiverSkeleton {
        let f = &self.field;
        let arrows: Vec<(String, usize, usize)> = self
            .generators
            .iter()
            .map(|&g| (self.labels[g].clone(), self.right_vertex(g), self.left_vertex(g)))
            .collect();
        // paths as arrow-index words, written left-to-right as composed (last applied first)
        let mut paths: Vec<Vec<usize>> = Vec::new();
        let mut values: Vec<Vec<F::Elem>> = Vec::new();
        let mut frontier: Vec<usize> = Vec::new();
        for (n, &g) in self.generators.iter().enumerate() {
            frontier.push(paths.len());
            paths.push(vec![n]);
            values.push(self.unit(g));
        }
        let mut by_length: Vec<Vec<usize>> = vec![Vec::new(), frontier.clone()];
        for _ in 2..=maxlen {
            let mut next = Vec::new();
            for &p in &frontier {
                let head = paths[p][0];
                for (n, arrow) in arrows.iter().enumerate() {
                    if arrow.1 == arrows[head].2 {
                        let mut w = vec![n];
                        w.extend(&paths[p]);
                        let v = self.mul_elems(&self.unit(self.generators[n]), &values[p]);
                        next.push(paths.len());
                        paths.push(w);
                        values.push(v);
                    }
                }
            }
            by_length.push(next.clone());
            frontier = next;
        }

        let total = paths.len();
        let index: std::collections::HashMap<&[usize], usize> =
            paths.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        let mut ideal = Echelon::new(f, total);
        let mut relations: Vec<Vec<(String, Vec<usize>)>> = Vec::new();
        for len in 2..=maxlen.max(1) {
            let upto: Vec<usize> = (1..=len).flat_map(|l| by_length.get(l).cloned().unwrap_or_default()).collect();
            let columns: Vec<Vec<F::Elem>> = upto.iter().map(|&p| values[p].clone()).collect();
            let eval = Matrix::from_columns(f, self.dim(), &columns);
            let kernel = eval.kernel_basis();
            for c in 0..kernel.cols() {
                let mut v = vec![f.zero(); total];
                for (row, &p) in upto.iter().enumerate() {
                    v[p] = kernel.get(row, c).clone();
                }
                if ideal.contains(&v) {
                    continue;
                }
                relations.push(
                    v.iter()
                        .enumerate()
                        .filter(|(_, c)| !f.is_zero(c))
                        .map(|(p, c)| (f.format(c), paths[p].clone()))
                        .collect(),
                );
                // close the ideal under multiplication by arrows on either side
                let mut queue = vec![v];
                while let Some(r) = queue.pop() {
                    if !ideal.insert(&r) {
                        continue;
                    }
                    for n in 0..arrows.len() {
                        for left in [true, false] {
                            let mut out = vec![f.zero(); total];
                            let mut ok = true;
                            for (p, c) in r.iter().enumerate().filter(|(_, c)| !f.is_zero(c)) {
                                let mut w = paths[p].clone();
                                if left {
                                    w.insert(0, n);
                                } else {
                                    w.push(n);
                                }
                                if !composable(&arrows, &w) {
                                    continue;
                                }
                                match index.get(w.as_slice()) {
                                    Some(&i) => out[i] = f.add(&out[i], c),
                                    None => ok = false,
                                }
                            }
                            if ok && !is_zero_vec(f, &out) {
                                queue.push(out);
                            }
                        }
                    }
                }
            }
        }
        QuiverSkeleton { vertex_count: self.vertex_count(), arrows, relations, valid_up_to: maxlen }
    }
}

fn composable(arrows: &[(String, usize, usize)], word: &[usize]) -> bool {
    word.windows(2).all(|w| arrows[w[1]].2 == arrows[w[0]].1)
}

fn sparse_from<F: Field>(f: &F, v: &[F::Elem], offset: usize) -> Sparse<F::Elem> {
    v.iter().enumerate().filter(|(_, c)| !f.is_zero(c)).map(|(k, c)| (offset + k, c.clone())).collect()
}

/// Reduced row-echelon basis of the span of `rows`.
pub fn reduced_basis<F: Field>(f: &F, len: usize, rows: Vec<Vec<F::Elem>>) -> Vec<Vec<F::Elem>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(f, rows).expect("equal lengths");
    debug_assert_eq!(m.cols(), len);
    let r = m.rref();
    (0..r.rank).map(|i| r.reduced.row(i).to_vec()).collect()
}

/// Projection `Λ → Λ/I` expressed on the kept (non-pivot) basis elements.
#[derive(Debug, Clone)]
pub struct QuotientMap<F: Field> {
    field: F,
    ideal: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
    kept: Vec<usize>,
}

impl<F: Field> QuotientMap<F> {
    fn new(f: &F, dim: usize, ideal: Vec<Vec<F::Elem>>) -> Self {
        let pivots: Vec<usize> =
            ideal.iter().map(|r| r.iter().position(|c| !f.is_zero(c)).expect("nonzero row")).collect();
        let kept = (0..dim).filter(|b| !pivots.contains(b)).collect();
        QuotientMap { field: f.clone(), ideal, pivots, kept }
    }

    /// Basis of the ideal in reduced echelon form.
    pub fn ideal(&self) -> &[Vec<F::Elem>] {
        &self.ideal
    }

    /// Basis indices of `Λ` that survive as the quotient's basis.
    pub fn kept(&self) -> &[usize] {
        &self.kept
    }

    /// Coordinates of the class of `v` in the quotient basis.
    pub fn project(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut v = v.to_vec();
        for (row, &p) in self.ideal.iter().zip(&self.pivots) {
            if f.is_zero(&v[p]) {
                continue;
            }
            let c = f.neg(&v[p]);
            for (x, y) in v.iter_mut().zip(row) {
                f.mul_add_assign(x, &c, y);
            }
        }
        self.kept.iter().map(|&k| v[k].clone()).collect()
    }
}

/// A quotient algebra together with its projection.
#[derive(Debug)]
pub struct Quotient<F: Field> {
    pub algebra: Algebra<F>,
    pub map: QuotientMap<F>,
}

/// Quiver of an algebra recovered from its structure constants.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuiverSkeleton {
    pub vertex_count: usize,
    /// `(label, source, target)`
    pub arrows: Vec<(String, usize, usize)>,
    /// Each relation is a list of `(coefficient, arrow word)`; words are
    /// written right-to-left (the last entry acts first).
    pub relations: Vec<Vec<(String, Vec<usize>)>>,
    pub valid_up_to: usize,
}

impl QuiverSkeleton {
    /// Short human-readable name, e.g. `k[x]/x^2` for a truncated polynomial ring.
    pub fn describe(&self) -> String {
        match (self.vertex_count, self.arrows.len(), self.relations.as_slice()) {
            (0, _, _) => "0".into(),
            (1, 0, _) => "k".into(),
            (1, 1, [rel]) if rel.len() == 1 => format!("k[x]/x^{}", rel[0].1.len()),
            (1, 1, []) => format!("k[x] (no relation up to length {})", self.valid_up_to),
            (n, 0, _) => format!("k^{n}"),
            (n, m, rels) => format!("quiver with {n} vertices, {m} arrows, {} relations", rels.len()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn dual_numbers(f: &PrimeField) -> Algebra<PrimeField> {
        // basis {e, x}, x² = 0
        let products = vec![vec![(0, 1)], vec![(1, 1)], vec![(1, 1)], vec![]];
        Algebra::from_parts(*f, vec!["e".into(), "x".into()], products, vec![0], vec![1], Provenance::Custom).unwrap()
    }

    #[test]
    fn dual_numbers_are_valid() {
        let f = PrimeField::new(101).unwrap();
        let a = dual_numbers(&f);
        assert!(a.verify_axioms().is_empty(), "{:?}", a.verify_axioms());
        assert_eq!(a.generators(), &[1]);
        assert_eq!(a.quiver(4).describe(), "k[x]/x^2");
    }

    #[test]
    fn corrupted_square_is_reported() {
        let f = PrimeField::new(101).unwrap();
        let products = vec![vec![(0, 1)], vec![(1, 1)], vec![(1, 1)], vec![(0, 1)]];
        let a = Algebra::from_parts(f, vec!["e".into(), "x".into()], products, vec![0], vec![1], Provenance::Custom)
            .unwrap();
        let issues = a.verify_axioms();
        assert!(issues.iter().any(|i| i.contains("radical")), "{issues:?}");
    }

    #[test]
    fn tensor_radical_count() {
        let f = PrimeField::new(101).unwrap();
        let a = dual_numbers(&f);
        let t = a.tensor(&a).unwrap();
        assert_eq!(t.dim(), 4);
        assert_eq!(t.radical().len(), 3);
        assert!(t.verify_axioms().is_empty());
    }

    #[test]
    fn empty_idempotent_rejected() {
        assert!(matches!(Idempotent::new(3, []), Err(Error::EmptyIdempotent)));
        assert!(Idempotent::new(3, [3]).is_err());
        assert_eq!(Idempotent::new(3, [2, 0, 2]).unwrap().complement(3), vec![1]);
    }
}
