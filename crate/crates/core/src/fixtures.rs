//! The bundled example corpus and the triangular-spec JSON format.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::module::Bimodule;
use crate::quiver::{build_algebra, parse_algebra_file, QuiverPresentation};

/// Bundled presentations by name.
pub const QUIVERS: &[(&str, &str)] = &[
    ("a2", include_str!("../fixtures/a2.qalg")),
    ("fix_a", include_str!("../fixtures/fix_a.qalg")),
    ("fix_b", include_str!("../fixtures/fix_b.qalg")),
    ("fix_c", include_str!("../fixtures/fix_c.qalg")),
    ("k", include_str!("../fixtures/k.qalg")),
    ("kk", include_str!("../fixtures/kk.qalg")),
    ("nakayama_2_2", include_str!("../fixtures/nakayama_2_2.qalg")),
    ("nakayama_3_2", include_str!("../fixtures/nakayama_3_2.qalg")),
];

/// Bundled triangular specs by name.
pub const TRIANGULAR: &[(&str, &str)] = &[("fix_t", include_str!("../fixtures/fix_t.json"))];

pub fn quiver_source(name: &str) -> Option<&'static str> {
    let name = name.strip_suffix(".qalg").unwrap_or(name);
    QUIVERS.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn presentation(name: &str) -> Result<QuiverPresentation> {
    let src = quiver_source(name).ok_or_else(|| Error::Unsupported(format!("no bundled fixture '{name}'")))?;
    Ok(parse_algebra_file(src)?)
}

/// Builds a presentation over `field` (which overrides the declared one).
pub fn build_over<F: Field>(qp: &QuiverPresentation, field: &F, maxlen: Option<usize>) -> Result<Arc<Algebra<F>>> {
    let qp = qp.with_field(field.spec());
    let maxlen = maxlen.unwrap_or_else(|| qp.default_maxlen());
    Ok(Arc::new(build_algebra(&qp, field, maxlen)?.algebra))
}

/// A bundled fixture built over `field`.
pub fn algebra<F: Field>(name: &str, field: &F) -> Result<Arc<Algebra<F>>> {
    build_over(&presentation(name)?, field, None)
}

/// A matrix entry: an integer or a `"num/den"` string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BimoduleSpec {
    pub dim: usize,
    /// Actions of left-algebra generators, keyed by basis label.
    #[serde(default)]
    pub left_actions: BTreeMap<String, Vec<Vec<Entry>>>,
    /// Actions `m ↦ m·σ` of right-algebra generators, keyed by basis label.
    #[serde(default)]
    pub right_actions: BTreeMap<String, Vec<Vec<Entry>>>,
}

/// `Λ = (Σ 0; M Γ)` with `M` a `Γ`-`Σ`-bimodule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangularSpec {
    /// Path (or bundled name) of the `.qalg` file for `Σ`.
    pub sigma: String,
    pub gamma: String,
    pub bimodule: BimoduleSpec,
}

/// The pieces of a triangular algebra, ready for analysis.
#[derive(Debug)]
pub struct TriangularData<F: Field> {
    pub sigma: Arc<Algebra<F>>,
    pub gamma: Arc<Algebra<F>>,
    pub bimodule: Bimodule<F>,
}

impl TriangularSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Unsupported(format!("triangular spec: {e}")))
    }

    /// Builds `Σ`, `Γ` and `M`; `load` turns the `sigma`/`gamma` entries into `.qalg` text.
    pub fn build<F: Field>(&self, field: &F, load: impl Fn(&str) -> Result<String>) -> Result<TriangularData<F>> {
        let sigma = build_over(&parse_algebra_file(&load(&self.sigma)?)?, field, None)?;
        let gamma = build_over(&parse_algebra_file(&load(&self.gamma)?)?, field, None)?;
        let b = &self.bimodule;
        let left = actions(&gamma, &b.left_actions, b.dim, "left")?;
        let right = actions(&sigma, &b.right_actions, b.dim, "right")?;
        let bimodule = Bimodule::from_generator_actions(&gamma, &sigma, b.dim, &left, &right)?;
        Ok(TriangularData { sigma, gamma, bimodule })
    }
}

impl<F: Field> TriangularData<F> {
    pub fn algebra(&self) -> Result<Arc<Algebra<F>>> {
        Ok(Arc::new(Algebra::triangular(&self.sigma, &self.gamma, &self.bimodule)?))
    }
}

fn actions<F: Field>(alg: &Algebra<F>, given: &BTreeMap<String, Vec<Vec<Entry>>>, dim: usize, side: &str) -> Result<Vec<Matrix<F>>> {
    let f = alg.field();
    for label in given.keys() {
        if !alg.module_generators().iter().any(|&g| alg.label(g) == label) {
            return Err(Error::BimoduleAxioms(format!("{side} action for unknown generator '{label}'")));
        }
    }
    alg.module_generators()
        .iter()
        .map(|&g| match given.get(alg.label(g)) {
            Some(rows) => {
                let rows = rows
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|e| {
                                let s = match e {
                                    Entry::Int(i) => i.to_string(),
                                    Entry::Text(t) => t.clone(),
                                };
                                f.parse(&s).ok_or_else(|| Error::BimoduleAxioms(format!("bad entry '{s}'")))
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                let m = Matrix::from_rows(f, rows)?;
                if m.rows() != dim || m.cols() != dim {
                    return Err(Error::BimoduleAxioms(format!("{side} action of '{}' is not {dim}x{dim}", alg.label(g))));
                }
                Ok(m)
            }
            // a lone vertex acts as the identity; other vertices must be given
            None if alg.vertex_of_basis(g).is_some() && alg.vertex_count() == 1 => Ok(Matrix::identity(f, dim)),
            None if alg.vertex_of_basis(g).is_some() => {
                Err(Error::BimoduleAxioms(format!("{side} action of vertex '{}' must be given", alg.label(g))))
            }
            None => Ok(Matrix::zeros(f, dim, dim)),
        })
        .collect()
}

/// The bundled triangular fixture, with its parts resolved from the corpus.
pub fn triangular<F: Field>(name: &str, field: &F) -> Result<TriangularData<F>> {
    let text = TRIANGULAR
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, s)| *s)
        .ok_or_else(|| Error::Unsupported(format!("no bundled triangular fixture '{name}'")))?;
    TriangularSpec::from_json(text)?.build(field, |p| {
        quiver_source(p)
            .map(str::to_string)
            .ok_or_else(|| Error::Unsupported(format!("no bundled fixture '{p}'")))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn every_fixture_builds() {
        let f = PrimeField::new(101).unwrap();
        for (name, _) in QUIVERS {
            let a = algebra(name, &f).unwrap();
            assert!(a.verify_axioms().is_empty(), "{name}");
        }
        let t = triangular("fix_t", &f).unwrap().algebra().unwrap();
        assert_eq!(t.dim(), 4);
        assert!(t.verify_axioms().is_empty());
    }
}
