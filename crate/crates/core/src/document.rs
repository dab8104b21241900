//! Machine-readable output documents with exact coefficients.
//!
//! `root_order` in the header is `N` with `w^N = q`; coefficients are written
//! as numerator and denominator Laurent polynomials in that `w`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coefrings::{lambda_expand, CoefError, LaurentPoly, QCoefficient};
use crate::toric::{ClassSeries, GvTable};

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error("header root_order {0} must be a positive even integer")]
    RootOrder(u32),
    #[error(transparent)]
    Coef(#[from] CoefError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub root_order: u32,
    pub variables: Vec<String>,
    pub truncation: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coefficient {
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub monomial: Vec<i64>,
    pub coefficient: Coefficient,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub header: Header,
    pub body: Vec<Entry>,
}

impl Document {
    /// With `xi_order`, each entry also carries its `ξ`-expansion (`q = e^ξ`).
    pub fn from_series(series: &ClassSeries, xi_order: Option<i32>) -> Result<Self, DocumentError> {
        let m = series.root_order();
        let mut body = Vec::new();
        for (class, c) in &series.terms {
            let c = c.minimal_root_order().rescale(m);
            let xi = match xi_order {
                Some(order) => Some(lambda_expand(&c, order)?.to_string()),
                None => None,
            };
            body.push(Entry {
                monomial: class.clone(),
                coefficient: Coefficient { num: c.numerator().to_string(), den: c.denominator().to_string() },
                xi,
            });
        }
        let header = Header { root_order: 2 * m, variables: series.variables.clone(), truncation: series.truncation };
        Ok(Document { header, body })
    }

    pub fn to_series(&self) -> Result<ClassSeries, DocumentError> {
        let n = self.header.root_order;
        if n == 0 || !n.is_multiple_of(2) {
            return Err(DocumentError::RootOrder(n));
        }
        let m = n / 2;
        let mut terms = BTreeMap::new();
        for e in &self.body {
            if e.monomial.len() != self.header.variables.len() {
                return Err(DocumentError::Malformed(format!("monomial {:?} has the wrong length", e.monomial)));
            }
            let parse = |s: &str| s.parse::<LaurentPoly>().map_err(DocumentError::Malformed);
            let num = QCoefficient::from_laurent(parse(&e.coefficient.num)?, m);
            let den = QCoefficient::from_laurent(parse(&e.coefficient.den)?, m);
            terms.insert(e.monomial.clone(), num.div(&den)?);
        }
        Ok(ClassSeries { variables: self.header.variables.clone(), truncation: self.header.truncation, terms })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(s)?)
    }

    /// One row per entry: `root_order, truncation, <exponents…>, num, den[, xi]`.
    pub fn to_csv(&self) -> Result<String, DocumentError> {
        let with_xi = self.body.iter().any(|e| e.xi.is_some());
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut head = vec!["root_order".to_string(), "truncation".to_string()];
        head.extend(self.header.variables.iter().cloned());
        head.extend(["num".to_string(), "den".to_string()]);
        if with_xi {
            head.push("xi".to_string());
        }
        w.write_record(&head)?;
        for e in &self.body {
            let mut row = vec![self.header.root_order.to_string(), self.header.truncation.to_string()];
            row.extend(e.monomial.iter().map(|x| x.to_string()));
            row.extend([e.coefficient.num.clone(), e.coefficient.den.clone()]);
            if with_xi {
                row.push(e.xi.clone().unwrap_or_default());
            }
            w.write_record(&row)?;
        }
        let bytes = w.into_inner().map_err(|e| DocumentError::Malformed(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_text(&self) -> String {
        let h = &self.header;
        let mut out = format!(
            "# w^{} = q, variables {}, edge-degree truncation {}\n",
            h.root_order,
            h.variables.join(" "),
            h.truncation
        );
        for e in &self.body {
            let mono: Vec<String> = h
                .variables
                .iter()
                .zip(&e.monomial)
                .filter(|(_, x)| **x != 0)
                .map(|(v, x)| format!("{v}^{x}"))
                .collect();
            let mono = if mono.is_empty() { "1".to_string() } else { mono.join(" ") };
            out.push_str(&format!("{mono}: ({}) / ({})\n", e.coefficient.num, e.coefficient.den));
            if let Some(x) = &e.xi {
                out.push_str(&format!("    xi: {x}\n"));
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GvEntry {
    pub class: Vec<i64>,
    pub genus: u32,
    pub n: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GvDocument {
    pub variables: Vec<String>,
    pub truncation: u32,
    pub invariants: Vec<GvEntry>,
}

impl GvDocument {
    pub fn new(table: &GvTable, truncation: u32) -> Self {
        let invariants = table
            .entries
            .iter()
            .flat_map(|(class, m)| {
                m.iter().map(move |(g, n)| GvEntry { class: class.clone(), genus: *g, n: n.to_string() })
            })
            .collect();
        GvDocument { variables: table.variables.clone(), truncation, invariants }
    }

    pub fn get(&self, class: &[i64], genus: u32) -> Option<BigInt> {
        self.invariants
            .iter()
            .find(|e| e.class == class && e.genus == genus)
            .and_then(|e| e.n.parse().ok())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn to_csv(&self) -> Result<String, DocumentError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut head: Vec<String> = self.variables.clone();
        head.extend(["genus".to_string(), "n".to_string()]);
        w.write_record(&head)?;
        for e in &self.invariants {
            let mut row: Vec<String> = e.class.iter().map(|x| x.to_string()).collect();
            row.extend([e.genus.to_string(), e.n.clone()]);
            w.write_record(&row)?;
        }
        let bytes = w.into_inner().map_err(|e| DocumentError::Malformed(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("# class ({}), genus, n\n", self.variables.join(", "));
        for e in &self.invariants {
            let class: Vec<String> = e.class.iter().map(|x| x.to_string()).collect();
            out.push_str(&format!("({})  g={}  n={}\n", class.join(", "), e.genus, e.n));
        }
        out
    }
}
