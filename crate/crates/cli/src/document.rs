//! Problem documents: JSON input, validated into core types.

use std::collections::BTreeMap;
use std::sync::Arc;

use clusterkit_core::{make_field, Elem, Error, FiniteField, LieAlgebra, LieModule, Matrix, Subalgebra};
use serde::Deserialize;

/// A scalar: an integer (reduced mod p) or base-p digits, lowest degree first.
#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Digits(Vec<i64>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldInput {
    pub p: u64,
    #[serde(default = "one")]
    pub m: usize,
}

fn one() -> usize {
    1
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraInput {
    pub dim: usize,
    #[serde(default)]
    pub names: Option<Vec<String>>,
    #[serde(default)]
    pub brackets: Vec<(usize, usize, Vec<Scalar>)>,
    pub pmap: Vec<Vec<Scalar>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleInput {
    /// Name of a subalgebra; the module is over the whole algebra if absent.
    #[serde(default)]
    pub over: Option<String>,
    pub dim: usize,
    pub action: Vec<Vec<Vec<Scalar>>>,
}

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(tag = "command", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Task {
    Cluster { module: String },
    Decompose { module: String, #[serde(default)] wrt: Option<String> },
    Amenable { module: String },
    Induce { module: String, subalgebra: String, cobasis_values: Vec<Scalar> },
    Homcluster { source: String, target: String },
    OracleCompare { module: String },
}

impl Task {
    pub fn command(&self) -> &'static str {
        match self {
            Task::Cluster { .. } => "cluster",
            Task::Decompose { .. } => "decompose",
            Task::Amenable { .. } => "amenable",
            Task::Induce { .. } => "induce",
            Task::Homcluster { .. } => "homcluster",
            Task::OracleCompare { .. } => "oracle-compare",
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDocument {
    pub field: FieldInput,
    pub algebra: AlgebraInput,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleInput>,
    #[serde(default)]
    pub subalgebras: BTreeMap<String, Vec<usize>>,
    #[serde(default)]
    pub tasks: Vec<Task>,
}

pub struct Document {
    pub field: FiniteField,
    pub algebra: Arc<LieAlgebra>,
    pub subalgebras: BTreeMap<String, Subalgebra>,
    pub modules: BTreeMap<String, LieModule>,
    /// Subalgebra each module is over, if not the whole algebra.
    pub module_over: BTreeMap<String, String>,
    pub tasks: Vec<Task>,
}

pub enum ParseError {
    Syntax { message: String, line: usize, column: usize },
    Semantic(Error),
}

impl From<Error> for ParseError {
    fn from(e: Error) -> Self {
        ParseError::Semantic(e)
    }
}

fn semantic(msg: String) -> ParseError {
    ParseError::Semantic(Error::DimensionMismatch(msg))
}

/// Interprets a scalar in `field`; integers and digits are reduced mod p.
pub fn scalar(field: &FiniteField, s: &Scalar) -> Result<Elem, ParseError> {
    let p = field.characteristic() as i64;
    match s {
        Scalar::Int(n) => Ok(field.from_int(*n)),
        Scalar::Digits(d) => {
            if d.len() > field.degree() {
                return Err(semantic(format!("{} digits for a field of degree {} over GF({p})", d.len(), field.degree())));
            }
            let digits: Vec<u64> = d.iter().map(|x| x.rem_euclid(p) as u64).collect();
            Ok(field.from_coeffs(&digits)?)
        }
    }
}

fn vector(field: &FiniteField, v: &[Scalar], len: usize, what: &str) -> Result<Vec<Elem>, ParseError> {
    if v.len() != len {
        return Err(semantic(format!("{what} has {} coordinates, expected {len}", v.len())));
    }
    v.iter().map(|s| scalar(field, s)).collect()
}

fn matrix(field: &FiniteField, rows: &[Vec<Scalar>], dim: usize, what: &str) -> Result<Matrix, ParseError> {
    if rows.len() != dim {
        return Err(semantic(format!("{what} has {} rows, expected {dim}", rows.len())));
    }
    let rows = rows
        .iter()
        .enumerate()
        .map(|(i, r)| vector(field, r, dim, &format!("row {i} of {what}")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_rows(field, rows)?)
}

pub fn parse(text: &str) -> Result<Document, ParseError> {
    let raw: RawDocument = serde_json::from_str(text).map_err(|e| ParseError::Syntax {
        message: e.to_string(),
        line: e.line(),
        column: e.column(),
    })?;
    build(raw)
}

fn build(raw: RawDocument) -> Result<Document, ParseError> {
    let field = make_field(raw.field.p, raw.field.m)?;
    let a = &raw.algebra;
    let n = a.dim;
    let names = match &a.names {
        Some(names) if names.len() != n => return Err(semantic(format!("{} names for dimension {n}", names.len()))),
        Some(names) => names.clone(),
        None => (0..n).map(|i| format!("e{i}")).collect(),
    };
    let mut brackets = Vec::new();
    for (i, j, v) in &a.brackets {
        if *i >= n || *j >= n {
            return Err(semantic(format!("bracket index ({i}, {j}) out of range for dimension {n}")));
        }
        brackets.push((*i, *j, vector(&field, v, n, &format!("bracket [{i}, {j}]"))?));
    }
    if a.pmap.len() != n {
        return Err(semantic(format!("p-map lists {} images, expected {n}", a.pmap.len())));
    }
    let pmap = a
        .pmap
        .iter()
        .enumerate()
        .map(|(i, v)| vector(&field, v, n, &format!("p-map image of basis element {i}")))
        .collect::<Result<Vec<_>, _>>()?;
    let algebra = Arc::new(LieAlgebra::new(&field, names, &brackets, pmap)?);

    let mut subalgebras = BTreeMap::new();
    for (name, indices) in &raw.subalgebras {
        if let Some(i) = indices.iter().find(|&&i| i >= n) {
            return Err(semantic(format!("subalgebra {name}: index {i} out of range for dimension {n}")));
        }
        subalgebras.insert(name.clone(), Subalgebra::new(&algebra, indices)?);
    }

    let mut modules = BTreeMap::new();
    let mut module_over = BTreeMap::new();
    for (name, input) in &raw.modules {
        let over = match &input.over {
            None => algebra.clone(),
            Some(s) => {
                let sub = subalgebras
                    .get(s)
                    .ok_or_else(|| semantic(format!("module {name} is over unknown subalgebra {s}")))?;
                module_over.insert(name.clone(), s.clone());
                Arc::new(sub.to_algebra()?)
            }
        };
        if input.action.len() != over.dim() {
            return Err(semantic(format!("module {name} lists {} action matrices, expected {}", input.action.len(), over.dim())));
        }
        let action = input
            .action
            .iter()
            .enumerate()
            .map(|(i, rows)| matrix(&field, rows, input.dim, &format!("action of {} on {name}", over.names()[i])))
            .collect::<Result<Vec<_>, _>>()?;
        modules.insert(name.clone(), LieModule::new(&over, action)?);
    }

    for task in &raw.tasks {
        let (mods, subs): (Vec<&String>, Vec<&String>) = match task {
            Task::Cluster { module } | Task::Amenable { module } | Task::OracleCompare { module } => (vec![module], vec![]),
            Task::Decompose { module, wrt } => (vec![module], wrt.iter().collect()),
            Task::Induce { module, subalgebra, .. } => (vec![module], vec![subalgebra]),
            Task::Homcluster { source, target } => (vec![source, target], vec![]),
        };
        if let Some(m) = mods.iter().find(|m| !modules.contains_key(**m)) {
            return Err(semantic(format!("{} task refers to unknown module {m}", task.command())));
        }
        if let Some(s) = subs.iter().find(|s| !subalgebras.contains_key(**s)) {
            return Err(semantic(format!("{} task refers to unknown subalgebra {s}", task.command())));
        }
    }

    Ok(Document { field, algebra, subalgebras, modules, module_over, tasks: raw.tasks })
}

#[cfg(test)]
mod tests {
    use super::*;

    const ROTATION: &str = r#"{
        "field": {"p": 3, "m": 1},
        "algebra": {"dim": 2, "names": ["x", "y"], "brackets": [[0, 1, [0, 1]]], "pmap": [[1, 0], [0, 0]]},
        "subalgebras": {"S": [0]},
        "modules": {"W": {"over": "S", "dim": 2, "action": [[[0, -1], [1, 0]]]}},
        "tasks": []
    }"#;

    #[test]
    fn parses_rotation_fixture() {
        let Ok(doc) = parse(ROTATION) else { panic!("parse failed") };
        assert_eq!(doc.algebra.dim(), 2);
        assert_eq!(doc.modules["W"].dim(), 2);
        assert_eq!(doc.modules["W"].rho_basis(0).get(0, 1), Elem(2));
        assert!(doc.tasks.is_empty());
    }

    #[test]
    fn out_of_range_bracket_is_semantic() {
        let text = ROTATION.replace("[[0, 1, [0, 1]]]", "[[0, 2, [0, 1]]]");
        assert!(matches!(parse(&text), Err(ParseError::Semantic(_))));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse("{\n  \"field\": {\"p\": 3,}\n}") {
            Err(ParseError::Syntax { line, .. }) => assert_eq!(line, 2),
            _ => panic!("expected a syntax error"),
        }
    }

    #[test]
    fn digit_scalars() {
        let f = make_field(3, 2).unwrap();
        assert_eq!(scalar(&f, &Scalar::Digits(vec![0, 1])).ok(), Some(f.from_coeffs(&[0, 1]).unwrap()));
        assert_eq!(scalar(&f, &Scalar::Int(-1)).ok(), Some(f.from_int(2)));
        assert!(scalar(&f, &Scalar::Digits(vec![0, 0, 1])).is_err());
    }
}
