//! Quivers with relations and the `.qalg` text format.
//!
//! Paths compose right to left: in the word `alpha.beta` the arrow `beta`
//! acts first, so the word is defined when `target(beta) = source(alpha)`.
//!
//! ```text
//! # two-cycle with one zero relation
//! field 101
//! vertex 1 2
//! arrow alpha 1 2
//! arrow beta 2 1
//! relation alpha.beta
//! idempotent a = 1
//! ```

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{Algebra, Idempotent, Provenance, Sparse};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A linear combination of parallel paths of length at least two.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Relation {
    /// Coefficient and arrow word (leftmost arrow acts last).
    pub terms: Vec<(BigRational, Vec<usize>)>,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuiverPresentation {
    pub field: FieldSpec,
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation>,
    /// Named idempotents as vertex index sets.
    pub idempotents: Vec<(String, Vec<usize>)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RemovalMode {
    /// No relation starts at the vertex.
    Singular,
    /// No relation starts or ends at the vertex.
    Fg,
}

struct Cursor<'a> {
    line: usize,
    text: &'a str,
}

impl Cursor<'_> {
    fn err(&self, token: &str, message: impl Into<String>) -> ParseError {
        let column = self.text.find(token).map_or(1, |c| c + 1);
        ParseError { line: self.line, column, message: message.into() }
    }
}

fn parse_coeff(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n = n.parse().ok()?;
            let d: num_bigint::BigInt = d.parse().ok()?;
            (!d.is_zero()).then(|| BigRational::new(n, d))
        }
        None => s.parse().ok().map(BigRational::from_integer),
    }
}

impl FromStr for QuiverPresentation {
    type Err = ParseError;

    fn from_str(text: &str) -> std::result::Result<Self, ParseError> {
        parse_algebra_file(text)
    }
}

pub fn parse_algebra_file(text: &str) -> std::result::Result<QuiverPresentation, ParseError> {
    let mut field = None;
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut relations = Vec::new();
    let mut idempotents = Vec::new();
    let mut pending_relations = Vec::new();
    let mut pending_idempotents = Vec::new();

    for (n, raw) in text.lines().enumerate() {
        let cur = Cursor { line: n + 1, text: raw };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let keyword = tokens.next().unwrap();
        match keyword {
            "field" => {
                let v = tokens.next().ok_or_else(|| cur.err(keyword, "field needs a value"))?;
                field = Some(if v == "rational" || v == "Q" {
                    FieldSpec::Rational
                } else {
                    let p: u64 = v.parse().map_err(|_| cur.err(v, format!("bad field '{v}'")))?;
                    FieldSpec::prime(p).map_err(|_| cur.err(v, format!("{p} is not a prime")))?
                });
            }
            "vertex" => {
                for name in tokens {
                    if vertices.iter().any(|v| v == name) {
                        return Err(cur.err(name, format!("duplicate vertex '{name}'")));
                    }
                    vertices.push(name.to_string());
                }
            }
            "arrow" => {
                let parts: Vec<&str> = tokens.collect();
                let [name, s, t] = parts[..] else {
                    return Err(cur.err(keyword, "expected: arrow <name> <source> <target>"));
                };
                let find = |v: &str| {
                    vertices.iter().position(|x| x == v).ok_or_else(|| cur.err(v, format!("unknown vertex '{v}'")))
                };
                if arrows.iter().any(|a| a.name == name) || name.contains('.') {
                    return Err(cur.err(name, format!("invalid or duplicate arrow name '{name}'")));
                }
                arrows.push(Arrow { name: name.to_string(), source: find(s)?, target: find(t)? });
            }
            "relation" => pending_relations.push((n + 1, raw.to_string(), tokens.map(String::from).collect::<Vec<_>>())),
            "idempotent" => {
                let rest = line["idempotent".len()..].trim();
                pending_idempotents.push((n + 1, raw.to_string(), rest.to_string()));
            }
            other => return Err(cur.err(other, format!("unknown keyword '{other}'"))),
        }
    }

    for (line, raw, tokens) in pending_relations {
        let cur = Cursor { line, text: &raw };
        relations.push(parse_relation(&cur, &tokens, &arrows)?);
    }
    for (line, raw, rest) in pending_idempotents {
        let cur = Cursor { line, text: &raw };
        let (name, list) = rest.split_once('=').ok_or_else(|| cur.err("idempotent", "expected: idempotent <name> = <vertex>,..."))?;
        let name = name.trim();
        if name.is_empty() {
            return Err(cur.err("idempotent", "idempotent needs a name"));
        }
        let mut vs = Vec::new();
        for v in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            vs.push(vertices.iter().position(|x| x == v).ok_or_else(|| cur.err(v, format!("unknown vertex '{v}'")))?);
        }
        if vs.is_empty() {
            return Err(cur.err(name, "idempotent has no vertices"));
        }
        vs.sort_unstable();
        vs.dedup();
        idempotents.push((name.to_string(), vs));
    }

    let field = field.ok_or(ParseError { line: 1, column: 1, message: "missing 'field' line".into() })?;
    if vertices.is_empty() {
        return Err(ParseError { line: 1, column: 1, message: "no vertices declared".into() });
    }
    Ok(QuiverPresentation { field, vertices, arrows, relations, idempotents })
}

fn parse_relation(cur: &Cursor<'_>, tokens: &[String], arrows: &[Arrow]) -> std::result::Result<Relation, ParseError> {
    let mut terms: Vec<(BigRational, Vec<usize>)> = Vec::new();
    let mut i = 0;
    let mut sign = BigRational::one();
    let mut coeff: Option<BigRational> = None;
    while i < tokens.len() {
        let t = tokens[i].as_str();
        i += 1;
        match t {
            "+" => sign = BigRational::one(),
            "-" => sign = -BigRational::one(),
            _ if t.starts_with(|c: char| c.is_ascii_digit() || c == '-' || c == '+') => {
                let (s, body) = match t.strip_prefix('-') {
                    Some(b) => (-BigRational::one(), b),
                    None => (BigRational::one(), t.strip_prefix('+').unwrap_or(t)),
                };
                if body.is_empty() {
                    sign = s;
                    continue;
                }
                let c = parse_coeff(body).ok_or_else(|| cur.err(t, format!("bad coefficient '{t}'")))?;
                coeff = Some(&sign * s * c);
            }
            word => {
                let mut path = Vec::new();
                for name in word.split('.') {
                    let a = arrows
                        .iter()
                        .position(|a| a.name == name)
                        .ok_or_else(|| cur.err(name, format!("unknown arrow '{name}'")))?;
                    path.push(a);
                }
                for w in path.windows(2) {
                    if arrows[w[1]].target != arrows[w[0]].source {
                        return Err(cur.err(
                            word,
                            format!("'{word}' is not composable: {} does not end where {} starts", arrows[w[1]].name, arrows[w[0]].name),
                        ));
                    }
                }
                if path.len() < 2 {
                    return Err(cur.err(word, format!("relation term '{word}' has length < 2")));
                }
                let c = coeff.take().unwrap_or_else(|| sign.clone());
                sign = BigRational::one();
                if !c.is_zero() {
                    terms.push((c, path));
                }
            }
        }
    }
    let Some(first) = terms.first() else {
        return Err(cur.err("relation", "relation has no terms"));
    };
    let source = arrows[*first.1.last().unwrap()].source;
    let target = arrows[first.1[0]].target;
    for (_, p) in &terms {
        if arrows[*p.last().unwrap()].source != source || arrows[p[0]].target != target {
            return Err(cur.err("relation", "relation terms are not parallel paths"));
        }
    }
    Ok(Relation { terms, source, target })
}

impl QuiverPresentation {
    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn idempotent(&self, name: &str) -> Result<Idempotent> {
        if name == "all" && !self.idempotents.iter().any(|(n, _)| n == "all") {
            return Ok(Idempotent::all(self.vertices.len()));
        }
        let (_, vs) = self
            .idempotents
            .iter()
            .find(|(n, _)| n == name)
            .ok_or_else(|| Error::UnknownVertex(format!("idempotent '{name}' is not declared")))?;
        Idempotent::new(self.vertices.len(), vs.iter().copied())
    }

    pub fn default_maxlen(&self) -> usize {
        2 * (self.arrows.len() + 1)
    }

    /// Per vertex: (some relation starts here, some relation ends here).
    pub fn relation_endpoints(&self) -> Vec<(bool, bool)> {
        let mut out = vec![(false, false); self.vertices.len()];
        for r in &self.relations {
            out[r.source].0 = true;
            out[r.target].1 = true;
        }
        out
    }

    /// The largest vertex set eligible for removal in the given mode.
    pub fn removable_vertices(&self, mode: RemovalMode) -> Vec<usize> {
        self.relation_endpoints()
            .iter()
            .enumerate()
            .filter(|(_, (s, e))| match mode {
                RemovalMode::Singular => !s,
                RemovalMode::Fg => !s && !e,
            })
            .map(|(v, _)| v)
            .collect()
    }

    fn word_label(&self, word: &[usize]) -> String {
        word.iter().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join(".")
    }

    /// The presentation with the field replaced.
    pub fn with_field(&self, field: FieldSpec) -> Self {
        QuiverPresentation { field, ..self.clone() }
    }
}

/// A path: a vertex (empty word) or an arrow word, leftmost arrow last.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub word: Vec<usize>,
}

/// Output of [`build_algebra`]: the algebra and the path behind each basis element.
#[derive(Debug)]
pub struct BuiltAlgebra<F: Field> {
    pub algebra: Algebra<F>,
    pub paths: Vec<Path>,
    pub maxlen: usize,
}

/// Sparse reduction system on the truncated path space. Columns are path
/// indices ordered so that index 0 is the largest path (longest first, then
/// lexicographically largest).
struct Reducer<F: Field> {
    field: F,
    rows: HashMap<usize, BTreeMap<usize, F::Elem>>,
}

impl<F: Field> Reducer<F> {
    /// Full reduction; the result only has non-pivot columns.
    fn reduce(&self, v: BTreeMap<usize, F::Elem>) -> BTreeMap<usize, F::Elem> {
        let f = &self.field;
        let mut v = v;
        let mut out = BTreeMap::new();
        while let Some((c, x)) = v.pop_first() {
            if f.is_zero(&x) {
                continue;
            }
            match self.rows.get(&c) {
                None => {
                    out.insert(c, x);
                }
                Some(row) => {
                    let neg = f.neg(&x);
                    for (k, y) in row.iter().skip(1) {
                        let e = v.entry(*k).or_insert_with(|| f.zero());
                        f.mul_add_assign(e, &neg, y);
                    }
                }
            }
        }
        out
    }

    /// Inserts `v` if it is not already in the span; returns whether it was new.
    fn insert(&mut self, v: BTreeMap<usize, F::Elem>) -> bool {
        let f = self.field.clone();
        let r = self.reduce(v);
        let Some((&lead, x)) = r.iter().next() else {
            return false;
        };
        let inv = f.inv(x).expect("nonzero");
        let row: BTreeMap<usize, F::Elem> = r.iter().map(|(k, y)| (*k, f.mul(y, &inv))).collect();
        // keep rows fully reduced against the new pivot
        for other in self.rows.values_mut() {
            if let Some(c) = other.get(&lead).cloned() {
                let neg = f.neg(&c);
                for (k, y) in &row {
                    let e = other.entry(*k).or_insert_with(|| f.zero());
                    f.mul_add_assign(e, &neg, y);
                }
                other.retain(|_, y| !f.is_zero(y));
            }
        }
        self.rows.insert(lead, row);
        true
    }
}

/// Normal forms of composable words in the coordinates of the normal basis.
struct NormalForms<'a, F: Field> {
    field: &'a F,
    cap: usize,
    index: &'a HashMap<(usize, Vec<usize>), usize>,
    red: &'a Reducer<F>,
    basis_pos: &'a HashMap<usize, usize>,
    basis_words: Vec<Vec<usize>>,
}

impl<F: Field> NormalForms<'_, F> {
    fn of(&self, source: usize, word: &[usize], memo: &mut HashMap<(usize, Vec<usize>), Sparse<F::Elem>>) -> Sparse<F::Elem> {
        let key = (source, word.to_vec());
        if let Some(r) = memo.get(&key) {
            return r.clone();
        }
        let f = self.field;
        let result: Sparse<F::Elem> = if word.len() <= self.cap {
            let i = self.index[&key];
            let mut v = BTreeMap::new();
            v.insert(i, f.one());
            self.red.reduce(v).into_iter().map(|(c, x)| (self.basis_pos[&c], x)).collect()
        } else {
            // reduce the rightmost `cap` letters first, then recombine
            let (head, tail) = word.split_at(word.len() - self.cap);
            let mut acc: BTreeMap<usize, F::Elem> = BTreeMap::new();
            for (b, c) in self.of(source, tail, memo) {
                let mut w = head.to_vec();
                w.extend(&self.basis_words[b]);
                for (k, x) in self.of(source, &w, memo) {
                    let e = acc.entry(k).or_insert_with(|| f.zero());
                    f.mul_add_assign(e, &c, &x);
                }
            }
            acc.into_iter().filter(|(_, x)| !f.is_zero(x)).collect()
        };
        memo.insert(key, result.clone());
        result
    }
}

/// Builds `kQ/⟨ρ⟩` by linear reduction on paths of length at most `maxlen + 1`.
pub fn build_algebra<F: Field>(qp: &QuiverPresentation, field: &F, maxlen: usize) -> Result<BuiltAlgebra<F>> {
    if field.spec() != qp.field {
        return Err(Error::FieldMismatch(qp.field.to_string(), field.spec().to_string()));
    }
    let f = field;
    let cap = maxlen + 1;
    let arrows = &qp.arrows;

    // all paths up to length cap
    let mut all: Vec<Path> = (0..qp.vertices.len()).map(|v| Path { source: v, target: v, word: vec![] }).collect();
    let mut frontier: Vec<Path> = arrows
        .iter()
        .enumerate()
        .map(|(i, a)| Path { source: a.source, target: a.target, word: vec![i] })
        .collect();
    for _ in 1..=cap {
        let mut next = Vec::new();
        for p in &frontier {
            for (i, a) in arrows.iter().enumerate() {
                if a.source == p.target {
                    let mut word = vec![i];
                    word.extend(&p.word);
                    next.push(Path { source: p.source, target: a.target, word });
                }
            }
        }
        all.append(&mut frontier);
        frontier = next;
        if all.len() > 2_000_000 {
            return Err(Error::Unsupported("path space too large; lower maxlen".into()));
        }
    }
    // longest first, then lexicographically largest
    all.sort_by(|a, b| b.word.len().cmp(&a.word.len()).then_with(|| b.word.cmp(&a.word)).then_with(|| b.source.cmp(&a.source)));
    let index: HashMap<(usize, Vec<usize>), usize> =
        all.iter().enumerate().map(|(i, p)| ((p.source, p.word.clone()), i)).collect();
    let lookup = |source: usize, word: &[usize]| index.get(&(source, word.to_vec())).copied();

    let coeffs: Vec<Vec<(F::Elem, Vec<usize>)>> = qp
        .relations
        .iter()
        .map(|r| {
            r.terms
                .iter()
                .map(|(c, w)| {
                    let e = f
                        .parse(&c.to_string())
                        .ok_or_else(|| Error::Unsupported(format!("coefficient {c} is not defined over {}", f.spec())))?;
                    Ok((e, w.clone()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    let mut red = Reducer { field: f.clone(), rows: HashMap::new() };
    let mut queue: VecDeque<Vec<(F::Elem, Vec<usize>, usize)>> = VecDeque::new();
    let to_vec = |terms: &[(F::Elem, Vec<usize>, usize)]| -> BTreeMap<usize, F::Elem> {
        let mut m = BTreeMap::new();
        for (c, w, s) in terms {
            let i = lookup(*s, w).expect("path within cap");
            let e = m.entry(i).or_insert_with(|| f.zero());
            *e = f.add(e, c);
        }
        m
    };
    for (r, terms) in qp.relations.iter().zip(&coeffs) {
        let t: Vec<(F::Elem, Vec<usize>, usize)> = terms.iter().map(|(c, w)| (c.clone(), w.clone(), r.source)).collect();
        if t.iter().all(|(_, w, _)| w.len() <= cap) && red.insert(to_vec(&t)) {
            queue.push_back(t);
        }
    }
    while let Some(t) = queue.pop_front() {
        let (source, target) = (t[0].2, arrows[t[0].1[0]].target);
        let longest = t.iter().map(|(_, w, _)| w.len()).max().unwrap();
        if longest >= cap {
            continue;
        }
        for (i, a) in arrows.iter().enumerate() {
            if a.source == target {
                let left: Vec<_> = t
                    .iter()
                    .map(|(c, w, s)| {
                        let mut nw = vec![i];
                        nw.extend(w);
                        (c.clone(), nw, *s)
                    })
                    .collect();
                if red.insert(to_vec(&left)) {
                    queue.push_back(left);
                }
            }
            if a.target == source {
                let right: Vec<_> = t
                    .iter()
                    .map(|(c, w, _)| {
                        let mut nw = w.clone();
                        nw.push(i);
                        (c.clone(), nw, a.source)
                    })
                    .collect();
                if red.insert(to_vec(&right)) {
                    queue.push_back(right);
                }
            }
        }
    }

    let remaining = all.iter().enumerate().filter(|(i, p)| p.word.len() == maxlen && !red.rows.contains_key(i)).count();
    if remaining > 0 {
        return Err(Error::NotAdmissibleWithinBound { maxlen, remaining });
    }

    let mut normal: Vec<usize> = (0..all.len()).filter(|i| all[*i].word.len() < maxlen && !red.rows.contains_key(i)).collect();
    normal.sort_by(|&a, &b| {
        let (pa, pb) = (&all[a], &all[b]);
        let va = pa.word.is_empty().then_some(pa.source);
        let vb = pb.word.is_empty().then_some(pb.source);
        (pa.word.len(), va, &pa.word).cmp(&(pb.word.len(), vb, &pb.word))
    });
    let basis_pos: HashMap<usize, usize> = normal.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let paths: Vec<Path> = normal.iter().map(|&i| all[i].clone()).collect();
    let d = paths.len();

    let nf = NormalForms {
        field: f,
        cap,
        index: &index,
        red: &red,
        basis_pos: &basis_pos,
        basis_words: paths.iter().map(|p| p.word.clone()).collect(),
    };
    let mut memo: HashMap<(usize, Vec<usize>), Sparse<F::Elem>> = HashMap::new();
    let mut products = Vec::with_capacity(d * d);
    for p in &paths {
        for q in &paths {
            if p.source != q.target {
                products.push(Vec::new());
                continue;
            }
            let mut w = p.word.clone();
            w.extend(&q.word);
            products.push(nf.of(q.source, &w, &mut memo));
        }
    }
    let labels: Vec<String> = paths
        .iter()
        .map(|p| if p.word.is_empty() { format!("e{}", qp.vertices[p.source]) } else { qp.word_label(&p.word) })
        .collect();
    let vertices: Vec<usize> = (0..qp.vertices.len())
        .map(|v| paths.iter().position(|p| p.word.is_empty() && p.source == v).expect("vertex path is normal"))
        .collect();
    let radical: Vec<usize> = (0..d).filter(|i| !paths[*i].word.is_empty()).collect();
    let algebra = Algebra::from_parts(f.clone(), labels, products, vertices, radical, Provenance::Quiver)?;
    Ok(BuiltAlgebra { algebra, paths, maxlen })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    const FIX_A: &str = "field 101\nvertex 1 2\narrow alpha 1 2\narrow beta 2 1\nrelation alpha.beta\nidempotent a = 1\n";

    #[test]
    fn parses_two_cycle() {
        let qp = parse_algebra_file(FIX_A).unwrap();
        assert_eq!(qp.vertices.len(), 2);
        assert_eq!(qp.arrows.len(), 2);
        assert_eq!(qp.relations.len(), 1);
        assert_eq!(qp.relations[0].source, 1);
        assert_eq!(qp.relations[0].target, 1);
    }

    #[test]
    fn undeclared_arrow_reports_location() {
        let err = parse_algebra_file("field 2\nvertex 1\nrelation x.x\n").unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.message.contains("unknown arrow"));
    }

    #[test]
    fn non_composable_and_short_relations_rejected() {
        let src = "field 2\nvertex 1 2\narrow a 1 2\nrelation a.a\n";
        assert!(parse_algebra_file(src).unwrap_err().message.contains("composable"));
        let src = "field 2\nvertex 1\narrow x 1 1\nrelation x\n";
        assert!(parse_algebra_file(src).unwrap_err().message.contains("length < 2"));
        assert!(parse_algebra_file("field 4\nvertex 1\n").is_err());
    }

    #[test]
    fn builds_two_cycle() {
        let qp = parse_algebra_file(FIX_A).unwrap();
        let f = PrimeField::new(101).unwrap();
        let b = build_algebra(&qp, &f, 8).unwrap();
        assert_eq!(b.algebra.labels(), &["e1", "e2", "alpha", "beta", "beta.alpha"]);
        assert!(b.algebra.verify_axioms().is_empty());
    }

    #[test]
    fn commutativity_relation() {
        // square with a commutativity relation: dim = 4 vertices + 4 arrows + 1 path
        let src = "field 101\nvertex 1 2 3 4\narrow a 1 2\narrow b 2 4\narrow c 1 3\narrow d 3 4\nrelation b.a - d.c\n";
        let qp = parse_algebra_file(src).unwrap();
        let f = PrimeField::new(101).unwrap();
        let b = build_algebra(&qp, &f, 6).unwrap();
        assert_eq!(b.algebra.dim(), 9);
        assert!(b.algebra.verify_axioms().is_empty());
    }

    #[test]
    fn free_loop_is_not_certified() {
        let qp = parse_algebra_file("field 2\nvertex 1\narrow x 1 1\n").unwrap();
        let f = PrimeField::new(2).unwrap();
        assert!(matches!(build_algebra(&qp, &f, 4), Err(Error::NotAdmissibleWithinBound { .. })));
    }
}
