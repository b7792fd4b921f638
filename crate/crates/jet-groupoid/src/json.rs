//! JSON formats for germs, tensors, Christoffel symbols and jets.
//!
//! Matrices are row-major nested arrays. A germ file is
//! `{n, K, N, group_tag, terms: [{exponents, matrix}]}` with zero terms
//! omitted; a jet file is `{n, k, N, group_tag, g, xi: [tensor, …]}`
//! where each tensor is `{order, base_dim, entries}` and `entries` nests
//! one array level per index slot (`μ₁` outermost). Christoffel files
//! list nonzero components keyed by 1-based `(sigma, mu, nu)`.
//!
//! Deserialization funnels through the validating constructors, so a
//! malformed file reports the violated invariant.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::connection::ChristoffelGerm;
use crate::error::{Error, Result};
use crate::germ::{MatrixGerm, ScalarGerm};
use crate::jets::TrivializedJet;
use crate::lie::{GroupElement, GroupTag};
use crate::tensor::GValuedTensor;

pub(crate) fn matrix_to_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

pub(crate) fn matrix_from_rows(rows: &[Vec<f64>]) -> Result<DMatrix<f64>> {
    let nrows = rows.len();
    if nrows == 0 {
        return Err(Error::Input("matrix has no rows".into()));
    }
    let ncols = rows[0].len();
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::Input("matrix rows have unequal lengths".into()));
    }
    Ok(DMatrix::from_fn(nrows, ncols, |i, j| rows[i][j]))
}

fn matrix_value(m: &DMatrix<f64>) -> Value {
    serde_json::to_value(matrix_to_rows(m)).expect("matrices serialize")
}

fn matrix_from_value(v: &Value) -> Result<DMatrix<f64>> {
    let rows: Vec<Vec<f64>> = serde_json::from_value(v.clone())
        .map_err(|e| Error::Input(format!("expected a numeric matrix: {e}")))?;
    matrix_from_rows(&rows)
}

/// Entries of an order-`j` tensor as `j` levels of nested arrays
/// (a bare matrix for order 0).
fn entries_to_value(order: usize, base_dim: usize, entries: &[DMatrix<f64>]) -> Value {
    if order == 0 {
        return matrix_value(&entries[0]);
    }
    let chunk = entries.len() / base_dim;
    Value::Array(
        (0..base_dim)
            .map(|mu| {
                entries_to_value(order - 1, base_dim, &entries[mu * chunk..(mu + 1) * chunk])
            })
            .collect(),
    )
}

fn entries_from_value(order: usize, base_dim: usize, v: &Value, out: &mut Vec<DMatrix<f64>>) -> Result<()> {
    if order == 0 {
        out.push(matrix_from_value(v)?);
        return Ok(());
    }
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Input("tensor entries must nest one array per index".into()))?;
    if arr.len() != base_dim {
        return Err(Error::Input(format!(
            "tensor entry level has {} children, expected base_dim {base_dim}",
            arr.len()
        )));
    }
    for child in arr {
        entries_from_value(order - 1, base_dim, child, out)?;
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct TensorJson {
    order: usize,
    base_dim: usize,
    entries: Value,
}

impl GValuedTensor {
    /// Serializes as `{order, base_dim, entries}`; the group tag is
    /// carried by the enclosing jet file.
    pub fn to_json_value(&self) -> Value {
        serde_json::to_value(TensorJson {
            order: self.order(),
            base_dim: self.base_dim(),
            entries: entries_to_value(self.order(), self.base_dim(), self.entries()),
        })
        .expect("tensors serialize")
    }

    /// Parses `{order, base_dim, entries}` and validates membership for
    /// the given tag.
    pub fn from_json_value(v: &Value, tag: GroupTag) -> Result<Self> {
        let t: TensorJson = serde_json::from_value(v.clone())
            .map_err(|e| Error::Input(format!("tensor schema: {e}")))?;
        let mut entries = Vec::new();
        entries_from_value(t.order, t.base_dim, &t.entries, &mut entries)?;
        GValuedTensor::new(t.order, t.base_dim, tag, entries)
    }
}

#[derive(Serialize, Deserialize)]
struct GermTermJson {
    exponents: Vec<usize>,
    matrix: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
struct GermJson {
    n: usize,
    #[serde(rename = "K")]
    truncation: usize,
    #[serde(rename = "N")]
    nsize: usize,
    group_tag: GroupTag,
    terms: Vec<GermTermJson>,
}

impl Serialize for MatrixGerm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .terms()
            .filter(|(_, m)| m.iter().any(|&x| x != 0.0))
            .map(|(e, m)| GermTermJson {
                exponents: e.clone(),
                matrix: matrix_to_rows(m),
            })
            .collect();
        GermJson {
            n: self.base_dim(),
            truncation: self.truncation(),
            nsize: self.nsize(),
            group_tag: self.tag(),
            terms,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MatrixGerm {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = GermJson::deserialize(deserializer)?;
        if raw.nsize != raw.group_tag.matrix_size() {
            return Err(D::Error::custom(format!(
                "matrix size N = {} contradicts group tag {}",
                raw.nsize, raw.group_tag
            )));
        }
        let mut coeffs = BTreeMap::new();
        for term in raw.terms {
            let m = matrix_from_rows(&term.matrix).map_err(D::Error::custom)?;
            if coeffs.insert(term.exponents.clone(), m).is_some() {
                return Err(D::Error::custom(format!(
                    "duplicate germ term at exponents {:?}",
                    term.exponents
                )));
            }
        }
        MatrixGerm::new(raw.n, raw.truncation, raw.group_tag, coeffs).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct ScalarTermJson {
    exponents: Vec<usize>,
    coefficient: f64,
}

#[derive(Serialize, Deserialize)]
struct ChristoffelComponentJson {
    sigma: usize,
    mu: usize,
    nu: usize,
    terms: Vec<ScalarTermJson>,
}

#[derive(Serialize, Deserialize)]
struct ChristoffelJson {
    n: usize,
    truncation: usize,
    components: Vec<ChristoffelComponentJson>,
}

impl Serialize for ChristoffelGerm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.base_dim();
        let mut components = Vec::new();
        for sigma in 0..n {
            for mu in 0..n {
                for nu in 0..n {
                    let germ = self.component(sigma, mu, nu).expect("indices in range");
                    if germ.is_zero() {
                        continue;
                    }
                    components.push(ChristoffelComponentJson {
                        sigma: sigma + 1,
                        mu: mu + 1,
                        nu: nu + 1,
                        terms: germ
                            .terms()
                            .filter(|&(_, c)| c != 0.0)
                            .map(|(e, c)| ScalarTermJson {
                                exponents: e.clone(),
                                coefficient: c,
                            })
                            .collect(),
                    });
                }
            }
        }
        ChristoffelJson {
            n,
            truncation: self.truncation(),
            components,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ChristoffelGerm {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = ChristoffelJson::deserialize(deserializer)?;
        let mut gamma = ChristoffelGerm::zeros(raw.n, raw.truncation);
        for comp in raw.components {
            if comp.sigma == 0 || comp.mu == 0 || comp.nu == 0 {
                return Err(D::Error::custom(
                    "christoffel indices are 1-based and must be ≥ 1",
                ));
            }
            let mut coeffs = BTreeMap::new();
            for term in comp.terms {
                coeffs.insert(term.exponents, term.coefficient);
            }
            let germ = ScalarGerm::new(raw.n, raw.truncation, coeffs).map_err(D::Error::custom)?;
            gamma
                .set_component(comp.sigma - 1, comp.mu - 1, comp.nu - 1, germ)
                .map_err(D::Error::custom)?;
        }
        Ok(gamma)
    }
}

#[derive(Serialize, Deserialize)]
struct JetJson {
    n: usize,
    k: usize,
    #[serde(rename = "N")]
    nsize: usize,
    group_tag: GroupTag,
    g: Vec<Vec<f64>>,
    xi: Vec<Value>,
}

impl Serialize for TrivializedJet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        JetJson {
            n: self.base_dim(),
            k: self.order(),
            nsize: self.tag().matrix_size(),
            group_tag: self.tag(),
            g: matrix_to_rows(self.group().matrix()),
            xi: self.tensors().iter().map(GValuedTensor::to_json_value).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TrivializedJet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = JetJson::deserialize(deserializer)?;
        if raw.nsize != raw.group_tag.matrix_size() {
            return Err(D::Error::custom(format!(
                "matrix size N = {} contradicts group tag {}",
                raw.nsize, raw.group_tag
            )));
        }
        if raw.xi.len() != raw.k {
            return Err(D::Error::custom(format!(
                "jet of order k = {} carries {} tensors",
                raw.k,
                raw.xi.len()
            )));
        }
        let g_mat = matrix_from_rows(&raw.g).map_err(D::Error::custom)?;
        let g = GroupElement::new(g_mat, raw.group_tag).map_err(D::Error::custom)?;
        let xi = raw
            .xi
            .iter()
            .map(|v| {
                let t = GValuedTensor::from_json_value(v, raw.group_tag)?;
                if t.base_dim() != raw.n {
                    return Err(Error::Input(format!(
                        "tensor base_dim {} contradicts jet n = {}",
                        t.base_dim(),
                        raw.n
                    )));
                }
                Ok(t)
            })
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        TrivializedJet::from_parts(g, xi).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germ::sample_exp_germ;
    use crate::lie::so3_generators;

    fn so3_germ() -> MatrixGerm {
        let [e1, e2, e3] = so3_generators();
        sample_exp_germ(
            2,
            3,
            GroupTag::SpecialOrthogonal3,
            &[e1.clone(), e2.clone()],
            &[e3.clone(), e1, e2, e3],
        )
        .unwrap()
    }

    #[test]
    fn germ_round_trip() {
        let g = so3_germ();
        let s = serde_json::to_string(&g).unwrap();
        let back: MatrixGerm = serde_json::from_str(&s).unwrap();
        assert!(g.max_abs_diff(&back) == 0.0);
        assert_eq!(back.tag(), g.tag());
        assert_eq!(back.truncation(), 3);
    }

    #[test]
    fn germ_schema_validation() {
        // N contradicting the tag
        let bad = r#"{"n":1,"K":1,"N":2,"group_tag":"special-orthogonal(3)","terms":[]}"#;
        assert!(serde_json::from_str::<MatrixGerm>(bad).is_err());
        // exponent above truncation
        let bad = r#"{"n":1,"K":1,"N":3,"group_tag":"so3",
            "terms":[{"exponents":[2],"matrix":[[0,0,0],[0,0,0],[0,0,0]]}]}"#;
        assert!(serde_json::from_str::<MatrixGerm>(bad).is_err());
    }

    #[test]
    fn jet_round_trip() {
        let jet = so3_germ().trivialize_flat(3).unwrap();
        let s = serde_json::to_string_pretty(&jet).unwrap();
        let back: TrivializedJet = serde_json::from_str(&s).unwrap();
        assert!(jet.max_abs_diff(&back).unwrap() == 0.0);
    }

    #[test]
    fn jet_schema_validation() {
        let jet = so3_germ().trivialize_flat(2).unwrap();
        let mut v = serde_json::to_value(&jet).unwrap();
        // tamper the group matrix into something singular
        v["g"] = serde_json::json!([[0, 0, 0], [0, 0, 0], [0, 0, 0]]);
        let err = serde_json::from_value::<TrivializedJet>(v).unwrap_err();
        assert!(err.to_string().contains("invertible"), "{err}");

        let mut v = serde_json::to_value(&jet).unwrap();
        // break a tensor entry out of the subalgebra
        v["xi"][0]["entries"][0] = serde_json::json!([[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        let err = serde_json::from_value::<TrivializedJet>(v).unwrap_err();
        assert!(err.to_string().contains("residual"), "{err}");
    }

    #[test]
    fn christoffel_round_trip() {
        let mut gamma = ChristoffelGerm::zeros(2, 2);
        let mut coeffs = BTreeMap::new();
        coeffs.insert(vec![0, 0], 0.5);
        coeffs.insert(vec![1, 1], -2.0);
        gamma
            .set_component(1, 0, 1, ScalarGerm::new(2, 2, coeffs).unwrap())
            .unwrap();
        let s = serde_json::to_string(&gamma).unwrap();
        assert!(s.contains("\"sigma\":2"));
        let back: ChristoffelGerm = serde_json::from_str(&s).unwrap();
        assert_eq!(back, gamma);
    }
}
