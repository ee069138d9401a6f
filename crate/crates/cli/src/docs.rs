//! On-disk document formats: UTF-8 JSON with a `type` tag, names in files,
//! dense indices internally. The `leq` arrays may list covering pairs only;
//! the reflexive-transitive closure is applied on load. Unknown fields are
//! rejected.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use tdl_core::algebra::TdlAlgebra;
use tdl_core::duality::TdlFrame;
use tdl_core::kripke::{KripkeModel, Meaning};
use tdl_core::order::{bits, FiniteDistributiveLattice, Poset};

#[derive(Debug, Error)]
pub enum DocError {
    #[error("unreadable file: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed document: missing or unknown type tag")]
    UnknownType,
    #[error("malformed document: unknown element name '{0}'")]
    UnknownName(String),
    #[error("malformed document: duplicate element name '{0}'")]
    DuplicateName(String),
    #[error("malformed document: operator {0} is missing a value for '{1}'")]
    MissingEntry(&'static str, String),
    #[error("order error: {0}")]
    Order(#[from] tdl_core::order::OrderError),
    #[error("lattice error: {0}")]
    Lattice(#[from] tdl_core::order::LatticeError),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    #[serde(rename = "type")]
    pub doc_type: String,
    pub elements: Vec<String>,
    pub leq: Vec<(String, String)>,
    #[serde(rename = "G")]
    pub g: BTreeMap<String, String>,
    #[serde(rename = "H")]
    pub h: BTreeMap<String, String>,
    #[serde(rename = "F")]
    pub f: BTreeMap<String, String>,
    #[serde(rename = "P")]
    pub p: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub neg: Option<BTreeMap<String, String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameDoc {
    #[serde(rename = "type")]
    pub doc_type: String,
    pub points: Vec<String>,
    pub leq: Vec<(String, String)>,
    #[serde(rename = "R")]
    pub r: Vec<(String, String)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDoc {
    #[serde(rename = "type")]
    pub doc_type: String,
    pub frame: FrameDoc,
    pub meaning: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScriptDoc {
    #[serde(rename = "type")]
    pub doc_type: String,
    pub script: String,
}

#[derive(Clone, Debug)]
pub enum Document {
    Algebra(AlgebraDoc),
    Frame(FrameDoc),
    Model(ModelDoc),
    Script(ScriptDoc),
}

pub fn parse_document(text: &str) -> Result<Document, DocError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let tag = value
        .get("type")
        .and_then(|t| t.as_str())
        .ok_or(DocError::UnknownType)?;
    Ok(match tag {
        "tdl-algebra" => Document::Algebra(serde_json::from_value(value)?),
        "tdl-frame" => Document::Frame(serde_json::from_value(value)?),
        "kripke-model" => Document::Model(serde_json::from_value(value)?),
        "proof-script" => Document::Script(serde_json::from_value(value)?),
        _ => return Err(DocError::UnknownType),
    })
}

pub fn load_document(path: &std::path::Path) -> Result<Document, DocError> {
    parse_document(&std::fs::read_to_string(path)?)
}

fn name_index(names: &[String]) -> Result<BTreeMap<&str, usize>, DocError> {
    let mut index = BTreeMap::new();
    for (i, n) in names.iter().enumerate() {
        if index.insert(n.as_str(), i).is_some() {
            return Err(DocError::DuplicateName(n.clone()));
        }
    }
    Ok(index)
}

fn table(
    op: &'static str,
    map: &BTreeMap<String, String>,
    names: &[String],
    index: &BTreeMap<&str, usize>,
) -> Result<Vec<usize>, DocError> {
    names
        .iter()
        .map(|n| {
            let target = map
                .get(n)
                .ok_or_else(|| DocError::MissingEntry(op, n.clone()))?;
            index
                .get(target.as_str())
                .copied()
                .ok_or_else(|| DocError::UnknownName(target.clone()))
        })
        .collect()
}

fn poset_from(names: &[String], leq: &[(String, String)]) -> Result<Poset, DocError> {
    let index = name_index(names)?;
    let pairs: Vec<(usize, usize)> = leq
        .iter()
        .map(|(a, b)| {
            Ok((
                *index
                    .get(a.as_str())
                    .ok_or_else(|| DocError::UnknownName(a.clone()))?,
                *index
                    .get(b.as_str())
                    .ok_or_else(|| DocError::UnknownName(b.clone()))?,
            ))
        })
        .collect::<Result<_, DocError>>()?;
    Ok(Poset::from_pairs(names.len(), &pairs)?)
}

/// Everything needed to run algebra commands: the names plus the parts.
/// Axiom validation is left to the caller so violations can be reported
/// with the file's own names.
pub struct LoadedAlgebra {
    pub names: Vec<String>,
    pub lattice: FiniteDistributiveLattice,
    pub g: Vec<usize>,
    pub h: Vec<usize>,
    pub f: Vec<usize>,
    pub p: Vec<usize>,
    pub neg: Option<Vec<usize>>,
}

impl LoadedAlgebra {
    /// Assemble without axiom validation; run `axiom_violations` first.
    pub fn assemble(&self) -> TdlAlgebra {
        let a = TdlAlgebra::new_unchecked(
            self.lattice.clone(),
            self.g.clone(),
            self.h.clone(),
            self.f.clone(),
            self.p.clone(),
        );
        match &self.neg {
            Some(neg) => a.with_neg(neg.clone()),
            None => a,
        }
    }
}

pub fn algebra_from_doc(doc: &AlgebraDoc) -> Result<LoadedAlgebra, DocError> {
    let names = doc.elements.clone();
    let index = name_index(&names)?;
    let poset = poset_from(&names, &doc.leq)?;
    let lattice = FiniteDistributiveLattice::from_poset(poset)?;
    Ok(LoadedAlgebra {
        g: table("G", &doc.g, &names, &index)?,
        h: table("H", &doc.h, &names, &index)?,
        f: table("F", &doc.f, &names, &index)?,
        p: table("P", &doc.p, &names, &index)?,
        neg: doc
            .neg
            .as_ref()
            .map(|m| table("neg", m, &names, &index))
            .transpose()?,
        names,
        lattice,
    })
}

pub struct LoadedFrame {
    pub names: Vec<String>,
    pub frame: TdlFrame,
}

pub fn frame_from_doc(doc: &FrameDoc) -> Result<LoadedFrame, Box<dyn std::error::Error>> {
    let names = doc.points.clone();
    let index = name_index(&names)?;
    let poset = poset_from(&names, &doc.leq)?;
    let mut r = vec![0u64; names.len()];
    for (a, b) in &doc.r {
        let x = *index
            .get(a.as_str())
            .ok_or_else(|| DocError::UnknownName(a.clone()))?;
        let y = *index
            .get(b.as_str())
            .ok_or_else(|| DocError::UnknownName(b.clone()))?;
        r[x] |= 1 << y;
    }
    let frame = TdlFrame::new(poset, r)?;
    Ok(LoadedFrame { names, frame })
}

pub fn model_from_doc(doc: &ModelDoc) -> Result<(LoadedFrame, KripkeModel), Box<dyn std::error::Error>> {
    let loaded = frame_from_doc(&doc.frame)?;
    let index = name_index(&loaded.names)?;
    let mut meaning = Meaning::new();
    for (var, points) in &doc.meaning {
        let mut mask = 0u64;
        for p in points {
            mask |= 1 << index
                .get(p.as_str())
                .copied()
                .ok_or_else(|| DocError::UnknownName(p.clone()))?;
        }
        meaning.insert(var.clone(), mask);
    }
    let model = KripkeModel::new(loaded.frame.clone(), meaning)?;
    Ok((loaded, model))
}

/// Non-reflexive order pairs in sorted name order; applying the closure on
/// load reproduces the order exactly.
fn leq_pairs(poset: &Poset, names: &[String]) -> Vec<(String, String)> {
    let mut out = Vec::new();
    for x in 0..poset.size() {
        for y in 0..poset.size() {
            if x != y && poset.leq(x, y) {
                out.push((names[x].clone(), names[y].clone()));
            }
        }
    }
    out
}

pub fn algebra_to_doc(a: &TdlAlgebra, names: &[String]) -> AlgebraDoc {
    let map = |t: &[usize]| -> BTreeMap<String, String> {
        t.iter()
            .enumerate()
            .map(|(i, &v)| (names[i].clone(), names[v].clone()))
            .collect()
    };
    AlgebraDoc {
        doc_type: "tdl-algebra".to_string(),
        elements: names.to_vec(),
        leq: leq_pairs(a.lattice().poset(), names),
        g: map(a.g_table()),
        h: map(a.h_table()),
        f: map(a.f_table()),
        p: map(a.p_table()),
        neg: a.neg_table().map(map),
    }
}

pub fn frame_to_doc(frame: &TdlFrame, names: &[String]) -> FrameDoc {
    let mut r = Vec::new();
    for x in 0..frame.size() {
        for y in bits(frame.r()[x]) {
            r.push((names[x].clone(), names[y].clone()));
        }
    }
    FrameDoc {
        doc_type: "tdl-frame".to_string(),
        points: names.to_vec(),
        leq: leq_pairs(frame.poset(), names),
        r,
    }
}

pub fn to_json(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("documents serialize");
    s.push('\n');
    s
}
