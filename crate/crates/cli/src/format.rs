//! JSON instance, pattern and reduction-input files.
//!
//! Rationals are written as strings, `"p"` or `"p/q"`, so values survive a
//! round trip exactly. Plain JSON integers are accepted on input.

use std::fmt;
use std::path::Path;

use blockqap::classes::{BlockSpec, Expand, MatrixSpec, MultiCutSpec, OneLambdaOneSpec, ProductSpec, SumSpec};
use blockqap::{parse_rational, Rational, SymMatrix};
use serde::{Deserialize, Serialize};

use crate::Failure;

/// A rational as it appears in a file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Text(String),
    Int(i64),
}

impl Num {
    pub fn parse(&self, at: &dyn fmt::Display) -> Result<Rational, Failure> {
        match self {
            Num::Int(x) => Ok(blockqap::int(*x)),
            Num::Text(s) => parse_rational(s).map_err(|e| Failure::input(format!("{at}: {e}"))),
        }
    }
}

impl From<&Rational> for Num {
    fn from(x: &Rational) -> Self {
        Num::Text(x.to_string())
    }
}

pub fn nums(xs: &[Rational]) -> Vec<Num> {
    xs.iter().map(Num::from).collect()
}

pub fn num_rows(m: &SymMatrix) -> Vec<Vec<Num>> {
    m.rows().map(nums).collect()
}

fn parse_vec(xs: &[Num], at: &str) -> Result<Vec<Rational>, Failure> {
    xs.iter()
        .enumerate()
        .map(|(i, x)| x.parse(&format_args!("{at}[{i}]")))
        .collect()
}

fn parse_rows(rows: &[Vec<Num>], at: &str) -> Result<SymMatrix, Failure> {
    let rows = rows
        .iter()
        .enumerate()
        .map(|(i, row)| parse_vec(row, &format!("{at}[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    SymMatrix::new(rows).map_err(|e| Failure::input(format!("{at}: {e}")))
}

/// One matrix, either dense or as a structured description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum MatrixDoc {
    Dense { rows: Vec<Vec<Num>> },
    Product { alpha: Vec<Num> },
    Sum { alpha: Vec<Num> },
    Block { pattern: Vec<Vec<Num>>, sizes: Vec<usize> },
    Multicut { sizes: Vec<usize> },
    OneLambdaOne { lambda: Num, r: usize, s: usize, t: usize },
}

impl MatrixDoc {
    pub fn to_spec(&self, at: &str) -> Result<MatrixSpec, Failure> {
        let invalid = |e: blockqap::Error| Failure::input(format!("{at}: {e}"));
        Ok(match self {
            MatrixDoc::Dense { rows } => MatrixSpec::Dense(parse_rows(rows, &format!("{at}.rows"))?),
            MatrixDoc::Product { alpha } => {
                MatrixSpec::Product(ProductSpec::new(parse_vec(alpha, &format!("{at}.alpha"))?).map_err(invalid)?)
            }
            MatrixDoc::Sum { alpha } => MatrixSpec::Sum(SumSpec {
                alpha: parse_vec(alpha, &format!("{at}.alpha"))?,
            }),
            MatrixDoc::Block { pattern, sizes } => {
                let pattern = parse_rows(pattern, &format!("{at}.pattern"))?;
                MatrixSpec::Block(BlockSpec::new(pattern, sizes.clone()).map_err(invalid)?)
            }
            MatrixDoc::Multicut { sizes } => MatrixSpec::MultiCut(MultiCutSpec::new(sizes.clone()).map_err(invalid)?),
            MatrixDoc::OneLambdaOne { lambda, r, s, t } => {
                let lambda = lambda.parse(&format_args!("{at}.lambda"))?;
                MatrixSpec::OneLambdaOne(OneLambdaOneSpec::new(lambda, *r, *s, *t).map_err(invalid)?)
            }
        })
    }

    pub fn from_spec(spec: &MatrixSpec) -> Self {
        match spec {
            MatrixSpec::Dense(m) => MatrixDoc::Dense { rows: num_rows(m) },
            MatrixSpec::Product(p) => MatrixDoc::Product { alpha: nums(p.alpha()) },
            MatrixSpec::Sum(s) => MatrixDoc::Sum { alpha: nums(&s.alpha) },
            MatrixSpec::Block(b) => MatrixDoc::Block {
                pattern: num_rows(b.pattern()),
                sizes: b.sizes().to_vec(),
            },
            MatrixSpec::MultiCut(c) => MatrixDoc::Multicut {
                sizes: c.sizes().to_vec(),
            },
            MatrixSpec::OneLambdaOne(o) => MatrixDoc::OneLambdaOne {
                lambda: Num::from(o.lambda()),
                r: o.r,
                s: o.s,
                t: o.t,
            },
        }
    }
}

/// Record of how a reduced instance was built.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ReductionRecord {
    Partition {
        values: Vec<Num>,
        pattern: Vec<Vec<Num>>,
        k: u64,
        l: u64,
        n: usize,
        m: usize,
        block_sizes: Vec<usize>,
        /// 1-based pattern indices kept after dropping zero coordinates.
        support: Vec<usize>,
        r: usize,
        s: usize,
        lower: Vec<Num>,
        upper: Vec<Num>,
        x_star: Vec<Num>,
        threshold: Num,
    },
    Bisection {
        vertices: usize,
        edges: Vec<[usize; 2]>,
        t: u64,
        threshold: Num,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold: Option<Num>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduction: Option<ReductionRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub a: MatrixDoc,
    pub b: MatrixDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

/// Parsed instance: both specs, checked to have equal dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub a: MatrixSpec,
    pub b: MatrixSpec,
    pub metadata: Option<Metadata>,
}

impl InstanceFile {
    pub fn new(a: &MatrixSpec, b: &MatrixSpec, metadata: Option<Metadata>) -> Self {
        InstanceFile {
            a: MatrixDoc::from_spec(a),
            b: MatrixDoc::from_spec(b),
            metadata,
        }
    }

    pub fn to_instance(&self) -> Result<Instance, Failure> {
        let a = self.a.to_spec("a")?;
        let b = self.b.to_spec("b")?;
        if a.dim() != b.dim() {
            return Err(Failure::input(format!(
                "a is {0} × {0} but b is {1} × {1}",
                a.dim(),
                b.dim()
            )));
        }
        if a.dim() == 0 {
            return Err(Failure::input("instance has dimension zero"));
        }
        if let Some(t) = self.metadata.as_ref().and_then(|m| m.threshold.as_ref()) {
            t.parse(&"metadata.threshold")?;
        }
        Ok(Instance {
            a,
            b,
            metadata: self.metadata.clone(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternFile {
    pub pattern: Vec<Vec<Num>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

impl PatternFile {
    pub fn to_matrix(&self) -> Result<SymMatrix, Failure> {
        parse_rows(&self.pattern, "pattern")
    }
}

/// Input of `reduce partition`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionInput {
    pub pattern: Vec<Vec<Num>>,
    pub values: Vec<Num>,
}

impl PartitionInput {
    pub fn parse(&self) -> Result<(SymMatrix, Vec<Rational>), Failure> {
        Ok((
            parse_rows(&self.pattern, "pattern")?,
            parse_vec(&self.values, "values")?,
        ))
    }
}

/// Input of `reduce bisection`; vertices are numbered from 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BisectionInput {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
    pub t: u64,
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

pub fn read_instance(path: &Path) -> Result<Instance, Failure> {
    read_json::<InstanceFile>(path)?
        .to_instance()
        .map_err(|f| f.context(path.display()))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("documents serialize");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use blockqap::{int, int_matrix, rat};

    #[test]
    fn rationals_are_strings() {
        let doc = MatrixDoc::from_spec(&MatrixSpec::Product(ProductSpec::new(vec![rat(1, 2), int(3)]).unwrap()));
        let text = serde_json::to_string(&doc).unwrap();
        assert_eq!(text, r#"{"kind":"product","alpha":["1/2","3"]}"#);
    }

    #[test]
    fn integers_are_accepted() {
        let doc: MatrixDoc = serde_json::from_str(r#"{"kind":"dense","rows":[[1,"1/2"],["2/4",0]]}"#).unwrap();
        let spec = doc.to_spec("a").unwrap();
        assert_eq!(
            spec,
            MatrixSpec::Dense(SymMatrix::new(vec![vec![int(1), rat(1, 2)], vec![rat(1, 2), int(0)]]).unwrap())
        );
    }

    #[test]
    fn errors_name_the_position() {
        let doc: MatrixDoc = serde_json::from_str(r#"{"kind":"dense","rows":[["1","1/0"],["0","0"]]}"#).unwrap();
        let err = doc.to_spec("a").unwrap_err();
        assert!(err.message.contains("a.rows[0][1]"), "{}", err.message);
        assert!(err.message.contains("zero denominator"));
        let doc: MatrixDoc = serde_json::from_str(r#"{"kind":"dense","rows":[["1","2"],["0","0"]]}"#).unwrap();
        assert!(doc.to_spec("b").is_err());
    }

    #[test]
    fn every_kind_round_trips() {
        let specs = vec![
            MatrixSpec::Dense(int_matrix([[1, 2], [2, 3]])),
            MatrixSpec::Sum(SumSpec {
                alpha: vec![rat(-1, 3), int(2)],
            }),
            MatrixSpec::Block(BlockSpec::new(int_matrix([[0, 2], [2, 1]]), vec![0, 2]).unwrap()),
            MatrixSpec::MultiCut(MultiCutSpec::new(vec![1, 1]).unwrap()),
            MatrixSpec::OneLambdaOne(OneLambdaOneSpec::new(rat(3, 2), 1, 0, 1).unwrap()),
        ];
        for spec in specs {
            let file = InstanceFile::new(&spec, &spec, None);
            let back: InstanceFile = serde_json::from_str(&to_json(&file)).unwrap();
            assert_eq!(back.to_instance().unwrap().a, spec);
        }
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let file = InstanceFile::new(
            &MatrixSpec::MultiCut(MultiCutSpec::new(vec![1, 1]).unwrap()),
            &MatrixSpec::MultiCut(MultiCutSpec::new(vec![1]).unwrap()),
            None,
        );
        assert!(file.to_instance().is_err());
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(serde_json::from_str::<MatrixDoc>(r#"{"kind":"multicut","sizes":[1],"extra":1}"#).is_err());
        assert!(serde_json::from_str::<MatrixDoc>(r#"{"kind":"circulant","sizes":[1]}"#).is_err());
    }
}
