//! Proof scripts: a line-oriented text format for proof trees, plus the
//! bundled derivations shipped with the crate.
//!
//! ```text
//! # comment
//! script <name> <calculus>
//! <id> hyp : <sequent>
//! <id> <rule> <premise-id>* : <sequent>
//! qed <id>
//! ```
//!
//! Node ids must be declared before use; a file may hold many scripts.
//! Scripts whose proofs start from `hyp` leaves are derived-rule templates;
//! the others are sequent derivations from axioms alone.

use thiserror::Error;

use super::formula::{CalculusId, Sequent};
use super::proof::{check_proof_with_hypotheses, ProofTree, RuleId};
use super::semantics::{algebra_class, consequence, holds};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScriptError {
    #[error("line {0}: {1}")]
    Malformed(usize, String),
    #[error("line {0}: unknown rule '{1}'")]
    UnknownRule(usize, String),
    #[error("line {0}: unknown node id '{1}'")]
    UnknownNode(usize, String),
    #[error("line {0}: {1}")]
    Syntax(usize, String),
}

#[derive(Clone, Debug)]
pub struct Script {
    pub name: String,
    pub calc: CalculusId,
    pub hypotheses: Vec<Sequent>,
    pub root: ProofTree,
}

pub fn parse_scripts(text: &str) -> Result<Vec<Script>, ScriptError> {
    let mut out = Vec::new();
    let mut current: Option<(String, CalculusId)> = None;
    let mut nodes: Vec<(String, ProofTree)> = Vec::new();
    let mut hyps: Vec<Sequent> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("script ") {
            if current.is_some() {
                return Err(ScriptError::Malformed(
                    lineno,
                    "previous script not closed with 'qed'".into(),
                ));
            }
            let mut parts = rest.split_whitespace();
            let name = parts
                .next()
                .ok_or_else(|| ScriptError::Malformed(lineno, "missing script name".into()))?;
            let calc = parts
                .next()
                .and_then(CalculusId::from_token)
                .ok_or_else(|| ScriptError::Malformed(lineno, "missing calculus".into()))?;
            current = Some((name.to_string(), calc));
            nodes.clear();
            hyps.clear();
            continue;
        }
        let (name, calc) = current
            .clone()
            .ok_or_else(|| ScriptError::Malformed(lineno, "content before 'script'".into()))?;
        if let Some(rest) = line.strip_prefix("qed") {
            let id = rest.trim();
            let root = nodes
                .iter()
                .find(|(n, _)| n == id)
                .map(|(_, t)| t.clone())
                .ok_or_else(|| ScriptError::UnknownNode(lineno, id.to_string()))?;
            out.push(Script {
                name,
                calc,
                hypotheses: std::mem::take(&mut hyps),
                root,
            });
            current = None;
            nodes.clear();
            continue;
        }
        // <id> <rule> <premises...> : <sequent>
        let (head, seq_text) = line
            .split_once(':')
            .ok_or_else(|| ScriptError::Malformed(lineno, "missing ':'".into()))?;
        let mut words = head.split_whitespace();
        let id = words
            .next()
            .ok_or_else(|| ScriptError::Malformed(lineno, "missing node id".into()))?;
        let rule_tok = words
            .next()
            .ok_or_else(|| ScriptError::Malformed(lineno, "missing rule".into()))?;
        let rule = RuleId::from_token(rule_tok)
            .ok_or_else(|| ScriptError::UnknownRule(lineno, rule_tok.to_string()))?;
        let mut premises = Vec::new();
        for w in words {
            let t = nodes
                .iter()
                .find(|(n, _)| n == w)
                .map(|(_, t)| t.clone())
                .ok_or_else(|| ScriptError::UnknownNode(lineno, w.to_string()))?;
            premises.push(t);
        }
        let conclusion = super::parse::parse_sequent(seq_text.trim(), calc)
            .map_err(|e| ScriptError::Syntax(lineno, e.to_string()))?;
        if rule == RuleId::Hyp {
            hyps.push(conclusion.clone());
        }
        nodes.push((id.to_string(), ProofTree::node(rule, conclusion, premises)));
    }
    if current.is_some() {
        return Err(ScriptError::Malformed(0, "unterminated script".into()));
    }
    Ok(out)
}

/// Outcome of replaying one bundled script.
#[derive(Clone, Debug)]
pub struct ScriptResult {
    pub name: String,
    pub proof_ok: Result<(), String>,
    /// For plain derivations: the conclusion is a degree-consequence over
    /// the matching algebra class. For rule templates: on every algebra of
    /// the class where all hypotheses hold, the conclusion holds.
    pub semantics_ok: bool,
}

#[derive(Clone, Debug)]
pub struct ScriptsReport {
    pub calc: CalculusId,
    pub results: Vec<ScriptResult>,
}

impl ScriptsReport {
    pub fn passed(&self) -> bool {
        self.results
            .iter()
            .all(|r| r.proof_ok.is_ok() && r.semantics_ok)
    }

    pub fn failures(&self) -> Vec<&ScriptResult> {
        self.results
            .iter()
            .filter(|r| r.proof_ok.is_err() || !r.semantics_ok)
            .collect()
    }
}

/// The bundled scripts for one calculus.
pub fn bundled_scripts(calc: CalculusId) -> &'static str {
    match calc {
        CalculusId::Lt => include_str!("../../scripts/lt.txt"),
        CalculusId::LtC => include_str!("../../scripts/ltc.txt"),
        CalculusId::LtI => include_str!("../../scripts/lti.txt"),
        CalculusId::LtDm => include_str!("../../scripts/ltdm.txt"),
    }
}

/// Carrier bound for the semantic cross-check of each bundle.
pub fn bundled_class_bound(calc: CalculusId) -> usize {
    match calc {
        CalculusId::Lt => 5,
        CalculusId::LtC | CalculusId::LtI | CalculusId::LtDm => 4,
    }
}

/// Replay every bundled script of the calculus: each proof must check, and
/// each conclusion must be semantically good over the matching finite
/// algebra class.
pub fn run_bundled_proofs(calc: CalculusId) -> ScriptsReport {
    let scripts = parse_scripts(bundled_scripts(calc)).expect("bundled scripts parse");
    let class = algebra_class(calc, bundled_class_bound(calc));
    let mut results = Vec::new();
    for s in scripts {
        assert_eq!(s.calc, calc, "bundle contains a foreign script");
        let proof_ok = check_proof_with_hypotheses(&s.root, calc, &s.hypotheses)
            .map_err(|e| e.to_string());
        let semantics_ok = if s.hypotheses.is_empty() {
            consequence(&s.root.conclusion, &class).unwrap_or(false)
        } else {
            class.iter().all(|a| {
                let premises_hold = s
                    .hypotheses
                    .iter()
                    .all(|h| holds(a, h).unwrap_or(false));
                !premises_hold || holds(a, &s.root.conclusion).unwrap_or(false)
            })
        };
        results.push(ScriptResult {
            name: s.name,
            proof_ok,
            semantics_ok,
        });
    }
    ScriptsReport { calc, results }
}
