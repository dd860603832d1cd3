//! JSON documents for posets, algebras, modules and families, and the built-in fixtures.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::FinDimAlgebra;
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Scalar, Subspace};
use crate::posetalg::{fixtures, incidence_algebra, simple_modules, Poset};
use crate::repmod::{simples_of, ModuleFamily, RightModule};

/// A scalar as written in documents: an integer or a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarText {
    Int(i64),
    Text(String),
}

impl ScalarText {
    pub fn to_scalar(&self, field: Field) -> Result<Scalar> {
        match self {
            ScalarText::Int(n) => Ok(field.from_i64(*n)),
            ScalarText::Text(t) => field.parse_scalar(t),
        }
    }

    pub fn from_scalar(x: &Scalar) -> ScalarText {
        let t = x.to_text();
        match t.parse::<i64>() {
            Ok(n) => ScalarText::Int(n),
            Err(_) => ScalarText::Text(t),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetDoc {
    pub elements: Vec<String>,
    pub greater_than: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub field: String,
    pub dim: usize,
    pub basis: Vec<String>,
    pub unit: Vec<ScalarText>,
    /// `table[i][j][k]`: coefficient of basis element `k` in `b_i b_j`.
    pub table: Vec<Vec<Vec<ScalarText>>>,
    /// Spanning vectors of the radical, needed for prime fields.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radical: Option<Vec<Vec<ScalarText>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    pub dim: usize,
    /// One `dim x dim` matrix per algebra basis element, acting on row vectors.
    pub action: Vec<Vec<Vec<ScalarText>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDoc {
    /// An inline algebra or poset document, or `"fixture:<name>"`.
    pub algebra: Value,
    pub modules: Vec<ModuleDoc>,
}

/// A parsed input: the algebra, its family, and the poset when there is one.
#[derive(Clone, Debug)]
pub struct Problem {
    pub algebra: FinDimAlgebra,
    pub family: ModuleFamily,
    pub poset: Option<Poset>,
}

impl Problem {
    pub fn from_poset(p: Poset, field: Field) -> Problem {
        let algebra = incidence_algebra(&p, field);
        let family = simple_modules(&p, &algebra);
        Problem { algebra, family, poset: Some(p) }
    }

    /// An algebra with the family of its simple modules.
    pub fn from_algebra(algebra: FinDimAlgebra) -> Result<Problem> {
        let family = simples_of(&algebra)?.family;
        Ok(Problem { algebra, family, poset: None })
    }

    /// Restricts to the members with the given 1-based indices.
    pub fn select(self, members: &[usize]) -> Result<Problem> {
        if members.is_empty() {
            return Ok(self);
        }
        if let Some(&m) = members.iter().find(|&&m| m == 0 || m > self.family.len()) {
            return Err(Error::InvalidInput(format!("member {m} out of range 1..={}", self.family.len())));
        }
        let idx: Vec<usize> = members.iter().map(|m| m - 1).collect();
        let family = self.family.subfamily(&idx)?;
        Ok(Problem { family, ..self })
    }
}

fn scalars(field: Field, xs: &[ScalarText]) -> Result<Vec<Scalar>> {
    xs.iter().map(|x| x.to_scalar(field)).collect()
}

fn texts(xs: &[Scalar]) -> Vec<ScalarText> {
    xs.iter().map(ScalarText::from_scalar).collect()
}

pub fn poset_from_doc(doc: &PosetDoc) -> Result<Poset> {
    Poset::new(doc.elements.clone(), &doc.greater_than)
}

pub fn poset_to_doc(p: &Poset) -> PosetDoc {
    PosetDoc { elements: p.elements().to_vec(), greater_than: p.hasse_pairs() }
}

/// Builds the algebra; `field` overrides the document's own field descriptor.
pub fn algebra_from_doc(doc: &AlgebraDoc, field: Option<Field>) -> Result<FinDimAlgebra> {
    let field = match field {
        Some(f) => f,
        None => Field::parse(&doc.field)?,
    };
    let n = doc.dim;
    if doc.basis.len() != n || doc.unit.len() != n || doc.table.len() != n {
        return Err(Error::DimensionMismatch(format!("algebra document of dim {n} has inconsistent lengths")));
    }
    let mut table = Vec::with_capacity(n);
    for (i, row) in doc.table.iter().enumerate() {
        if row.len() != n || row.iter().any(|v| v.len() != n) {
            return Err(Error::DimensionMismatch(format!("table row {i} is not {n} x {n}")));
        }
        table.push(row.iter().map(|v| scalars(field, v)).collect::<Result<Vec<_>>>()?);
    }
    let unit = scalars(field, &doc.unit)?;
    let algebra = FinDimAlgebra::from_structure_constants(field, doc.basis.clone(), table, unit)?;
    match &doc.radical {
        Some(vs) => {
            let vectors = vs
                .iter()
                .map(|v| {
                    if v.len() != n {
                        return Err(Error::DimensionMismatch("radical vector has the wrong length".into()));
                    }
                    scalars(field, v)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(algebra.with_radical_hint(Subspace::from_spanning(field, n, vectors)))
        }
        None => Ok(algebra),
    }
}

pub fn algebra_to_doc(a: &FinDimAlgebra) -> AlgebraDoc {
    let n = a.dim();
    let table = (0..n).map(|i| (0..n).map(|j| texts(a.product(i, j))).collect()).collect();
    AlgebraDoc {
        field: a.field().descriptor(),
        dim: n,
        basis: a.labels().to_vec(),
        unit: texts(a.unit()),
        table,
        radical: a.radical_hint().map(|r| r.vectors().iter().map(|v| texts(v)).collect()),
    }
}

pub fn module_from_doc(doc: &ModuleDoc, algebra: &FinDimAlgebra) -> Result<RightModule> {
    let f = algebra.field();
    let d = doc.dim;
    let action = doc
        .action
        .iter()
        .map(|m| {
            if m.len() != d || m.iter().any(|r| r.len() != d) {
                return Err(Error::DimensionMismatch(format!("action matrix is not {d} x {d}")));
            }
            let rows = m.iter().map(|r| scalars(f, r)).collect::<Result<Vec<_>>>()?;
            Ok(Matrix::from_rows(f, d, rows))
        })
        .collect::<Result<Vec<_>>>()?;
    RightModule::new(algebra, d, action)
}

pub fn module_to_doc(m: &RightModule) -> ModuleDoc {
    let action = m.actions().iter().map(|x| x.row_vectors().iter().map(|r| texts(r)).collect()).collect();
    ModuleDoc { dim: m.dim(), action }
}

/// Names of the built-in fixtures, in listing order.
pub fn fixture_names() -> Vec<String> {
    let mut names: Vec<String> = fixtures::catalog().into_iter().map(|(n, _)| n.to_string()).collect();
    names.extend(["k", "m2", "kronecker"].map(String::from));
    names
}

/// The JSON document of a fixture over the given field.
pub fn fixture_document(name: &str, field: Field) -> Result<Value> {
    if let Some(p) = fixtures::poset(name) {
        return Ok(serde_json::to_value(poset_to_doc(&p))?);
    }
    let value = match name {
        "k" => serde_json::to_value(algebra_to_doc(&fixtures::trivial_algebra(field)))?,
        "m2" => serde_json::to_value(algebra_to_doc(&fixtures::matrix_algebra(field, 2)))?,
        "kronecker" => serde_json::to_value(FamilyDoc {
            algebra: serde_json::to_value(algebra_to_doc(&fixtures::kronecker_algebra(field)))?,
            modules: vec![module_to_doc(&fixtures::kronecker_module(field))],
        })?,
        _ => return Err(Error::InvalidInput(format!("unknown fixture {name:?}"))),
    };
    Ok(value)
}

/// Interprets a poset, algebra or family document. An optional `"kind"` key selects the type;
/// otherwise it is inferred from the keys present.
pub fn problem_from_value(value: &Value, field: Option<Field>) -> Result<Problem> {
    if let Some(name) = value.as_str().and_then(|s| s.strip_prefix("fixture:")) {
        let f = field.unwrap_or(Field::Rational);
        return problem_from_value(&fixture_document(name, f)?, Some(f));
    }
    let obj = value.as_object().ok_or_else(|| Error::InvalidInput("document must be a JSON object".into()))?;
    let mut obj = obj.clone();
    let kind = match obj.remove("kind") {
        Some(Value::String(k)) => k,
        Some(_) => return Err(Error::InvalidInput("\"kind\" must be a string".into())),
        None if obj.contains_key("modules") => "family".into(),
        None if obj.contains_key("elements") => "poset".into(),
        None if obj.contains_key("table") => "algebra".into(),
        None => return Err(Error::InvalidInput("cannot tell the document kind from its keys".into())),
    };
    let value = Value::Object(obj);
    match kind.as_str() {
        "poset" => {
            let doc: PosetDoc = serde_json::from_value(value).map_err(bad_doc)?;
            Ok(Problem::from_poset(poset_from_doc(&doc)?, field.unwrap_or(Field::Rational)))
        }
        "algebra" => {
            let doc: AlgebraDoc = serde_json::from_value(value).map_err(bad_doc)?;
            Problem::from_algebra(algebra_from_doc(&doc, field)?)
        }
        "family" => {
            let doc: FamilyDoc = serde_json::from_value(value).map_err(bad_doc)?;
            let base = problem_from_value(&doc.algebra, field)?;
            if doc.modules.is_empty() {
                return Err(Error::InvalidInput("family document lists no modules".into()));
            }
            let members = doc.modules.iter().map(|m| module_from_doc(m, &base.algebra)).collect::<Result<Vec<_>>>()?;
            Ok(Problem { family: ModuleFamily::new(members)?, ..base })
        }
        other => Err(Error::InvalidInput(format!("unknown document kind {other:?}"))),
    }
}

pub fn problem_from_str(text: &str, field: Option<Field>) -> Result<Problem> {
    let value: Value = serde_json::from_str(text).map_err(bad_doc)?;
    problem_from_value(&value, field)
}

fn bad_doc(e: serde_json::Error) -> Error {
    Error::InvalidInput(format!("malformed document: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_text_round_trip() {
        let f = Field::Rational;
        for t in ["3", "-2", "1/2", "-7/3"] {
            let x = f.parse_scalar(t).unwrap();
            assert_eq!(ScalarText::from_scalar(&x).to_scalar(f).unwrap(), x);
        }
        assert_eq!(ScalarText::from_scalar(&f.from_i64(4)), ScalarText::Int(4));
        assert!(ScalarText::Text("1/0".into()).to_scalar(f).is_err());
        assert!(ScalarText::Text("1/7".into()).to_scalar(Field::Prime(7)).is_err());
    }

    #[test]
    fn poset_document_round_trip() {
        let p = fixtures::diamond();
        let doc = poset_to_doc(&p);
        assert_eq!(doc.elements.len(), 4);
        let text = serde_json::to_string(&doc).unwrap();
        let back = problem_from_str(&text, None).unwrap();
        assert_eq!(back.algebra.dim(), 9);
        assert_eq!(back.family.len(), 4);
    }

    #[test]
    fn algebra_document_round_trip() {
        let a = fixtures::matrix_algebra(Field::Rational, 2);
        let doc = algebra_to_doc(&a);
        let back = algebra_from_doc(&doc, None).unwrap();
        assert_eq!(algebra_to_doc(&back), doc);
        let prob = problem_from_value(&serde_json::to_value(&doc).unwrap(), None).unwrap();
        assert_eq!(prob.family.dims(), vec![2]);
    }

    #[test]
    fn family_document_with_fixture_reference() {
        let text = r#"{"algebra": "fixture:chain2", "modules": [{"dim": 1, "action": [[[1]], [[0]], [[0]]]}]}"#;
        let prob = problem_from_str(text, None).unwrap();
        assert_eq!(prob.family.len(), 1);
        let bad = r#"{"algebra": "fixture:chain2", "modules": [{"dim": 1, "action": [[[1]], [[1]], [[1]]]}]}"#;
        assert!(problem_from_str(bad, None).is_err());
    }

    #[test]
    fn malformed_documents_are_rejected() {
        for text in [
            "[1, 2]",
            r#"{"foo": 1}"#,
            r#"{"elements": ["a"], "greater_than": [["a", "b"]]}"#,
            r#"{"kind": "algebra", "field": "Q", "dim": 1, "basis": ["1"], "unit": [1], "table": [[[1, 2]]]}"#,
            r#"{"field": "Q", "dim": 1, "basis": ["1"], "unit": [1], "table": [[[2]]]}"#,
            "not json",
        ] {
            assert!(problem_from_str(text, None).is_err(), "{text}");
        }
    }

    #[test]
    fn every_fixture_parses() {
        for name in fixture_names() {
            let doc = fixture_document(&name, Field::Rational).unwrap();
            problem_from_value(&doc, None).unwrap();
        }
        assert!(fixture_document("nope", Field::Rational).is_err());
    }

    #[test]
    fn member_selection() {
        let prob = Problem::from_poset(fixtures::diamond(), Field::Rational);
        assert_eq!(prob.clone().select(&[1, 4]).unwrap().family.len(), 2);
        assert!(prob.select(&[5]).is_err());
    }
}
