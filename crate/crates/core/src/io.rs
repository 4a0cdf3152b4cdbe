//! JSON file format for extensions `R ⊆ S` inside a structure-table algebra.

use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{Algebra, Element, Subalgebra};
use crate::error::{Error, Result};
use crate::field::{Field, FieldDescriptor};

/// Verdicts an instance is known to have. Absent fields are unconstrained.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pw: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub co_pw: Option<bool>,
    /// One of `a`, `b`, `c`, `d`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case: Option<String>,
    /// `inert`, `decomposed`, `ramified` or `not-minimal`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minimal_type: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice_nodes: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub atoms: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub geometric: Option<bool>,
    /// The sampled definitional scan must exhibit a witness.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub definition_witness: Option<bool>,
    /// Minimal types along `chain`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step_types: Option<Vec<String>>,
    /// Minimal types of `R ⊂ R[x]` for the listed generators.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator_types: Option<Vec<String>>,
}

/// On-disk form. Scalars use the field's JSON encoding.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionFile {
    pub id: String,
    pub field: FieldDescriptor,
    pub dim: usize,
    #[serde(default)]
    pub basis: Vec<String>,
    /// `table[i][j]` is the coordinate vector of `b_i b_j`.
    pub table: Vec<Vec<Vec<Value>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<Value>>,
    #[serde(rename = "R_basis")]
    pub r_basis: Vec<Vec<Value>>,
    /// Upper subalgebra; the whole algebra when absent.
    #[serde(rename = "T_basis", default, skip_serializing_if = "Option::is_none")]
    pub t_basis: Option<Vec<Vec<Value>>>,
    /// Optional chain of subalgebras from `R` to the upper end.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain: Option<Vec<Vec<Vec<Value>>>>,
    /// Generators whose monogenic steps are classified.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<Value>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
}

/// A validated extension `R ⊆ S` inside `alg`.
#[derive(Debug, Clone)]
pub struct Extension {
    pub id: String,
    pub alg: Algebra,
    pub r: Subalgebra,
    pub s: Subalgebra,
    pub chain: Option<Vec<Subalgebra>>,
    pub generators: Vec<Element>,
    pub expected: Option<Expected>,
    pub notes: Option<String>,
}

fn parse_vec(f: &Field, v: &[Value], dim: usize, what: &str) -> Result<Element> {
    if v.len() != dim {
        return Err(Error::Parse(format!("{}: expected {} coordinates, found {}", what, dim, v.len())));
    }
    v.iter().enumerate().map(|(i, c)| f.from_json(c).map_err(|e| Error::Parse(format!("{}[{}]: {}", what, i, e)))).collect()
}

fn parse_subalgebra(alg: &Algebra, rows: &[Vec<Value>], what: &str) -> Result<Subalgebra> {
    let vecs = rows
        .iter()
        .enumerate()
        .map(|(i, r)| parse_vec(alg.field(), r, alg.dim(), &format!("{}[{}]", what, i)))
        .collect::<Result<Vec<_>>>()?;
    let space = alg.span(vecs);
    Subalgebra::new(alg, space).map_err(|e| Error::Parse(format!("{}: {}", what, e)))
}

impl FromStr for ExtensionFile {
    type Err = Error;

    /// Parse JSON text, reporting the line and column of syntax errors.
    fn from_str(text: &str) -> Result<ExtensionFile> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("line {}, column {}: {}", e.line(), e.column(), e)))
    }
}

impl ExtensionFile {
    pub fn to_string_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn load(&self) -> Result<Extension> {
        let field = Field::new(&self.field)?;
        let n = self.dim;
        if self.table.len() != n {
            return Err(Error::Parse(format!("table has {} rows, dim is {}", self.table.len(), n)));
        }
        let mut table = Vec::with_capacity(n);
        for (i, row) in self.table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Parse(format!("table[{}] has {} entries, dim is {}", i, row.len(), n)));
            }
            let parsed =
                row.iter().enumerate().map(|(j, v)| parse_vec(&field, v, n, &format!("table[{}][{}]", i, j))).collect::<Result<Vec<_>>>()?;
            table.push(parsed);
        }
        let unit = self.unit.as_ref().map(|u| parse_vec(&field, u, n, "unit")).transpose()?;
        let names = if self.basis.is_empty() { (0..n).map(|i| format!("b{}", i)).collect() } else { self.basis.clone() };
        if names.len() != n {
            return Err(Error::Parse(format!("{} basis names, dim is {}", names.len(), n)));
        }
        let alg = Algebra::new(field, table, unit, names)?;
        let r = parse_subalgebra(&alg, &self.r_basis, "R_basis")?;
        let s = match &self.t_basis {
            Some(t) => parse_subalgebra(&alg, t, "T_basis")?,
            None => alg.full(),
        };
        if !s.contains_space(alg.field(), &r) {
            return Err(Error::Parse("R_basis is not contained in the upper algebra".into()));
        }
        let chain = match &self.chain {
            None => None,
            Some(c) => Some(
                c.iter()
                    .enumerate()
                    .map(|(i, rows)| parse_subalgebra(&alg, rows, &format!("chain[{}]", i)))
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        let generators = match &self.generators {
            None => Vec::new(),
            Some(g) => g
                .iter()
                .enumerate()
                .map(|(i, v)| parse_vec(alg.field(), v, n, &format!("generators[{}]", i)))
                .collect::<Result<Vec<_>>>()?,
        };
        Ok(Extension {
            id: self.id.clone(),
            alg,
            r,
            s,
            chain,
            generators,
            expected: self.expected.clone(),
            notes: self.notes.clone(),
        })
    }
}

impl Extension {
    pub fn from_json(text: &str) -> Result<Extension> {
        text.parse::<ExtensionFile>()?.load()
    }

    pub fn to_file(&self) -> ExtensionFile {
        let f = self.alg.field();
        let vec = |v: &Element| -> Vec<Value> { v.iter().map(|c| f.to_json(c)).collect() };
        let rows = |t: &Subalgebra| -> Vec<Vec<Value>> { t.rows().iter().map(vec).collect() };
        ExtensionFile {
            id: self.id.clone(),
            field: f.descriptor().clone(),
            dim: self.alg.dim(),
            basis: self.alg.names().to_vec(),
            table: self.alg.table().iter().map(|row| row.iter().map(vec).collect()).collect(),
            unit: Some(vec(self.alg.unit())),
            r_basis: rows(&self.r),
            t_basis: (self.s.dim() != self.alg.dim()).then(|| rows(&self.s)),
            chain: self.chain.as_ref().map(|c| c.iter().map(rows).collect()),
            generators: (!self.generators.is_empty()).then(|| self.generators.iter().map(vec).collect()),
            expected: self.expected.clone(),
            notes: self.notes.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        self.to_file().to_string_pretty()
    }
}
