use serde::{Deserialize, Serialize};

use super::{CensusRecord, CensusTable};
use crate::diagram::{decode_diagram, encode_diagram, TkcError};
use crate::lattice::Vec2;
use crate::poly::{ParseError, XPolynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmitFormat {
    Json,
    Csv,
    Latex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conventions {
    pub slot_order: String,
    pub face_rule: String,
    pub smoothing_rule: String,
}

impl Default for Conventions {
    fn default() -> Self {
        Self {
            slot_order: "slots 0..3 counterclockwise; half-edge 4c+s".into(),
            face_rule: "faces are orbits of h -> rot(pair(h))".into(),
            smoothing_rule: "over-strand on slots {0,2}: A joins slots 1-2 and 3-0, B joins 0-1 and 2-3; \
                             roles swap when the over-strand is on {1,3}"
                .into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonRecord {
    pub name: String,
    pub tkc: String,
    pub polynomial: String,
    pub invariant: String,
    pub writhe: i32,
    pub class_z: [i64; 2],
    pub class_mod2: [u8; 2],
    pub alternating: bool,
    pub projection: String,
    pub projection_key: String,
    pub fingerprint: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTable {
    pub version: String,
    pub conventions: Conventions,
    pub projections: Vec<String>,
    pub records: Vec<JsonRecord>,
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("record {0}: {1}")]
    Diagram(String, TkcError),
    #[error("record {0}: {1}")]
    Polynomial(String, ParseError),
}

impl From<&CensusTable> for JsonTable {
    fn from(t: &CensusTable) -> Self {
        Self {
            version: env!("CARGO_PKG_VERSION").into(),
            conventions: Conventions::default(),
            projections: t.projections.clone(),
            records: t
                .records
                .iter()
                .map(|r| JsonRecord {
                    name: r.name.clone(),
                    tkc: encode_diagram(&r.diagram),
                    polynomial: r.polynomial.encode(),
                    invariant: r.invariant.encode(),
                    writhe: r.writhe,
                    class_z: [r.knot_class.u, r.knot_class.v],
                    class_mod2: r.class_mod2(),
                    alternating: r.alternating,
                    projection: r.projection.clone(),
                    projection_key: r.projection_key.clone(),
                    fingerprint: r.fingerprint.clone(),
                })
                .collect(),
        }
    }
}

impl TryFrom<&JsonTable> for CensusTable {
    type Error = LoadError;

    fn try_from(j: &JsonTable) -> Result<Self, LoadError> {
        let records = j
            .records
            .iter()
            .map(|r| {
                let poly = |s: &str| XPolynomial::decode(s).map_err(|e| LoadError::Polynomial(r.name.clone(), e));
                Ok(CensusRecord {
                    name: r.name.clone(),
                    diagram: decode_diagram(&r.tkc).map_err(|e| LoadError::Diagram(r.name.clone(), e))?,
                    invariant: poly(&r.invariant)?,
                    polynomial: poly(&r.polynomial)?,
                    writhe: r.writhe,
                    knot_class: Vec2::new(r.class_z[0], r.class_z[1]),
                    alternating: r.alternating,
                    projection: r.projection.clone(),
                    projection_key: r.projection_key.clone(),
                    fingerprint: r.fingerprint.clone(),
                })
            })
            .collect::<Result<_, LoadError>>()?;
        Ok(CensusTable {
            records,
            projections: j.projections.clone(),
        })
    }
}

impl CensusTable {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&JsonTable::from(self)).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, Box<dyn std::error::Error + Send + Sync>> {
        let j: JsonTable = serde_json::from_str(text)?;
        Ok(CensusTable::try_from(&j)?)
    }
}

fn latex_poly(p: &XPolynomial) -> String {
    let mut out = String::new();
    let text = p.encode();
    let mut chars = text.chars().peekable();
    while let Some(ch) = chars.next() {
        match ch {
            '*' => out.push(' '),
            '^' => {
                let mut exp = String::new();
                while let Some(&c) = chars.peek() {
                    if c == '-' && exp.is_empty() || c.is_ascii_digit() {
                        exp.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push_str(&format!("^{{{exp}}}"));
            }
            c => out.push(c),
        }
    }
    out
}

pub fn emit(table: &CensusTable, format: EmitFormat) -> String {
    match format {
        EmitFormat::Json => table.to_json(),
        EmitFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let header = [
                "name", "tkc", "polynomial", "invariant", "writhe", "class_u", "class_v", "mod2", "alternating",
                "projection", "fingerprint",
            ];
            w.write_record(header).expect("in-memory write");
            for r in &table.records {
                let m = r.class_mod2();
                w.write_record([
                    r.name.clone(),
                    encode_diagram(&r.diagram),
                    r.polynomial.encode(),
                    r.invariant.encode(),
                    r.writhe.to_string(),
                    r.knot_class.u.to_string(),
                    r.knot_class.v.to_string(),
                    format!("{}{}", m[0], m[1]),
                    r.alternating.to_string(),
                    r.projection.clone(),
                    r.fingerprint.clone(),
                ])
                .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("fields are UTF-8")
        }
        EmitFormat::Latex => {
            let mut s = String::from("\\begin{longtable}{ll}\n");
            for r in &table.records {
                let (n, k) = r.name.split_once('_').unwrap_or((&r.name, ""));
                s.push_str(&format!("${n}_{{{k}}}$ & ${}$ \\\\\n", latex_poly(&r.polynomial)));
            }
            s.push_str("\\end{longtable}\n");
            s
        }
    }
}
