//! Machine-readable reports.
//!
//! Scalars are written as monomial lists: one entry per monomial
//! `E^eExp · v^vDeg · ∏ j_k^jExp[k]` with a coefficient `a + b·i + c·√2 + d·i√2`
//! whose parts are exact fraction strings. A relation is the list of its
//! (word, monomial) terms.

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::freealg::{Matrix, NcPoly, Relation, RelationSet, RingElem, Symbol, Word};
use crate::relations::{Status, VerificationReport};
use crate::scalar::{BaseScalar, CkScalar, Monomial, Rational};

pub const SCHEMA_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct Coeff {
    pub a: String,
    pub b: String,
    pub c: String,
    pub d: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: Coeff,
    #[serde(rename = "eExp")]
    pub e_exp: i32,
    #[serde(rename = "vDeg")]
    pub v_deg: u32,
    #[serde(rename = "jExp")]
    pub j_exp: Vec<i32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub word: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct RelationJson {
    pub label: String,
    pub terms: Vec<Term>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct WitnessJson {
    pub location: String,
    pub residual: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct CheckJson {
    pub name: String,
    pub status: String,
    pub witness: Vec<WitnessJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct PairingJson {
    pub functional: String,
    pub generator: String,
    pub value: Vec<Term>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct MatrixJson {
    pub name: String,
    /// Row-major; each entry a monomial list.
    pub rows: Vec<Vec<Vec<Term>>>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct Meta {
    pub dim: usize,
    pub basis: String,
    pub j: String,
    pub version: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub meta: Meta,
    #[serde(rename = "scalars-as")]
    pub scalars_as: String,
    pub relations: Vec<RelationJson>,
    pub checks: Vec<CheckJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pairings: Option<Vec<PairingJson>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub matrices: Option<Vec<MatrixJson>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub info: Option<serde_json::Value>,
}

impl Report {
    pub fn new(meta: Meta) -> Self {
        Report {
            meta,
            scalars_as: "monomial-list".into(),
            relations: Vec::new(),
            checks: Vec::new(),
            pairings: None,
            matrices: None,
            info: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Report> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    s.parse::<Rational>()
        .map_err(|_| Error::Parse(format!("bad fraction {s:?}")))
}

pub fn coeff_to_json(c: &BaseScalar) -> Coeff {
    let [a, b, cc, d] = c.parts();
    Coeff {
        a: a.to_string(),
        b: b.to_string(),
        c: cc.to_string(),
        d: d.to_string(),
    }
}

pub fn coeff_from_json(c: &Coeff) -> Result<BaseScalar> {
    Ok(BaseScalar::new(
        parse_rational(&c.a)?,
        parse_rational(&c.b)?,
        parse_rational(&c.c)?,
        parse_rational(&c.d)?,
    ))
}

fn term(m: &Monomial, c: &BaseScalar, word: Option<&Word>) -> Term {
    Term {
        coeff: coeff_to_json(c),
        e_exp: m.e,
        v_deg: m.v,
        j_exp: m.j.to_vec(),
        word: word.map(|w| w.iter().map(|s| s.to_string()).collect()),
    }
}

pub fn scalar_to_json(s: &CkScalar) -> Vec<Term> {
    s.terms().map(|(m, c)| term(m, c, None)).collect()
}

fn monomial_of(t: &Term, rank: usize) -> Result<Monomial> {
    if t.j_exp.len() != rank {
        return Err(Error::Parse(format!(
            "jExp of length {} for rank {rank}",
            t.j_exp.len()
        )));
    }
    Ok(Monomial {
        e: t.e_exp,
        v: t.v_deg,
        j: SmallVec::from_slice(&t.j_exp),
    })
}

pub fn scalar_from_json(ts: &[Term], rank: usize) -> Result<CkScalar> {
    let mut out = CkScalar::zero(rank);
    for t in ts {
        out = &out + &CkScalar::term(coeff_from_json(&t.coeff)?, monomial_of(t, rank)?);
    }
    Ok(out)
}

pub fn poly_to_json(p: &NcPoly) -> Vec<Term> {
    p.terms()
        .flat_map(|(w, c)| c.terms().map(move |(m, x)| term(m, x, Some(w))))
        .collect()
}

pub fn poly_from_json(ts: &[Term], rank: usize) -> Result<NcPoly> {
    let mut out = NcPoly::zero(rank);
    for t in ts {
        let word: Word = t
            .word
            .as_ref()
            .ok_or_else(|| Error::Parse("relation term without word".into()))?
            .iter()
            .map(|s| Symbol::parse(s))
            .collect::<Result<_>>()?;
        let c = CkScalar::term(coeff_from_json(&t.coeff)?, monomial_of(t, rank)?);
        out = out.add(&NcPoly::monomial(c, word));
    }
    Ok(out)
}

pub fn relations_to_json(rs: &RelationSet) -> Vec<RelationJson> {
    rs.relations
        .iter()
        .map(|r| RelationJson {
            label: r.label.clone(),
            terms: poly_to_json(&r.poly),
        })
        .collect()
}

pub fn relations_from_json(rs: &[RelationJson], rank: usize) -> Result<RelationSet> {
    let relations = rs
        .iter()
        .map(|r| {
            Ok(Relation {
                label: r.label.clone(),
                poly: poly_from_json(&r.terms, rank)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RelationSet { relations })
}

pub fn check_to_json(r: &VerificationReport) -> CheckJson {
    CheckJson {
        name: r.name.clone(),
        status: r.status.name().into(),
        witness: r
            .witness
            .iter()
            .map(|w| WitnessJson {
                location: w.location.clone(),
                residual: w.residual.clone(),
            })
            .collect(),
    }
}

pub fn status_from_json(s: &str) -> Result<Status> {
    match s {
        "pass" => Ok(Status::Pass),
        "fail" => Ok(Status::Fail),
        _ => Err(Error::Parse(format!("unknown status {s:?}"))),
    }
}

pub fn matrix_to_json(name: &str, m: &Matrix<CkScalar>) -> MatrixJson {
    MatrixJson {
        name: name.into(),
        rows: (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| scalar_to_json(m.get(i, j))).collect())
            .collect(),
    }
}

pub fn matrix_from_json(m: &MatrixJson, rank: usize) -> Result<Matrix<CkScalar>> {
    let rows = m.rows.len();
    let cols = m.rows.first().map_or(0, |r| r.len());
    let mut out = Matrix::<CkScalar>::zeros(rows, cols, rank);
    for (i, row) in m.rows.iter().enumerate() {
        if row.len() != cols {
            return Err(Error::Parse("ragged matrix".into()));
        }
        for (j, x) in row.iter().enumerate() {
            let v = scalar_from_json(x, rank)?;
            if !v.is_zero_elem() {
                out.set(i, j, v);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::HyperKind;

    #[test]
    fn scalar_round_trip() {
        let s = &CkScalar::hyper(HyperKind::Sinh, 3, 2) * &CkScalar::j_pow(2, 1, -2);
        let back = scalar_from_json(&scalar_to_json(&s), 2).unwrap();
        assert_eq!(back, s);
        let half = scalar_to_json(&CkScalar::hyper(HyperKind::Sinh, 4, 2));
        assert_eq!(half[0].coeff.a, "-1/2");
    }

    #[test]
    fn empty_relations_render_as_list() {
        let r = Report::new(Meta {
            dim: 3,
            basis: "symplectic".into(),
            j: "1,1".into(),
            version: "0".into(),
        });
        let s = r.to_json();
        assert!(s.contains("\"relations\": []"));
        assert_eq!(Report::from_json(&s).unwrap(), r);
    }
}
