//! Frame models and relational satisfaction.
//!
//! A model is a frame plus an up-set of worlds per variable. Satisfaction
//! follows the usual box/diamond clauses along the relation and its
//! inverse; only the base signature (meet, join, bounds, G, H, F, P) has
//! frame clauses.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::duality::TdlFrame;
use crate::logic::{Formula, Sequent};
use crate::order::{bits, full_mask};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KripkeError {
    #[error("connective {0} has no frame satisfaction clause")]
    UnsupportedConnective(&'static str),
    #[error("meaning of {0} is not an up-set")]
    MeaningNotUpClosed(String),
    #[error("variable {0} has no meaning")]
    UnboundVariable(String),
    #[error("{what} of size {size} exceeds the bound {max}")]
    SizeLimit {
        what: &'static str,
        size: usize,
        max: usize,
    },
}

pub type Meaning = BTreeMap<String, u64>;

#[derive(Clone, Debug)]
pub struct KripkeModel {
    frame: TdlFrame,
    meaning: Meaning,
}

impl KripkeModel {
    pub fn new(frame: TdlFrame, meaning: Meaning) -> Result<Self, KripkeError> {
        for (var, &m) in &meaning {
            if !frame.poset().is_up_set(m) {
                return Err(KripkeError::MeaningNotUpClosed(var.clone()));
            }
        }
        Ok(KripkeModel { frame, meaning })
    }

    pub fn frame(&self) -> &TdlFrame {
        &self.frame
    }

    pub fn meaning(&self) -> &Meaning {
        &self.meaning
    }
}

/// The nine satisfaction clauses.
pub fn satisfies(m: &KripkeModel, x: usize, f: &Formula) -> Result<bool, KripkeError> {
    Ok(match f {
        Formula::Top => true,
        Formula::Bot => false,
        Formula::Var(v) => {
            let set = m
                .meaning
                .get(v)
                .ok_or_else(|| KripkeError::UnboundVariable(v.clone()))?;
            set & (1 << x) != 0
        }
        Formula::And(a, b) => satisfies(m, x, a)? && satisfies(m, x, b)?,
        Formula::Or(a, b) => satisfies(m, x, a)? || satisfies(m, x, b)?,
        Formula::G(a) => {
            let mut all = true;
            for y in bits(m.frame.r()[x]) {
                all &= satisfies(m, y, a)?;
            }
            all
        }
        Formula::H(a) => {
            let mut all = true;
            for y in 0..m.frame.size() {
                if m.frame.r()[y] & (1 << x) != 0 {
                    all &= satisfies(m, y, a)?;
                }
            }
            all
        }
        Formula::F(a) => {
            let mut any = false;
            for y in bits(m.frame.r()[x]) {
                any |= satisfies(m, y, a)?;
            }
            any
        }
        Formula::P(a) => {
            let mut any = false;
            for y in 0..m.frame.size() {
                if m.frame.r()[y] & (1 << x) != 0 {
                    any |= satisfies(m, y, a)?;
                }
            }
            any
        }
        Formula::Imp(..) => return Err(KripkeError::UnsupportedConnective("->")),
        Formula::Neg(..) | Formula::Tilde(..) => {
            return Err(KripkeError::UnsupportedConnective("~"))
        }
    })
}

/// The set of worlds satisfying the formula; always an up-set of the
/// frame's order.
pub fn extension(m: &KripkeModel, f: &Formula) -> Result<u64, KripkeError> {
    let mut out = 0u64;
    for x in 0..m.frame.size() {
        if satisfies(m, x, f)? {
            out |= 1 << x;
        }
    }
    debug_assert!(m.frame.poset().is_up_set(out));
    Ok(out)
}

/// Validity in one model: the intersected extension of the antecedent is
/// included in the united extension of the succedent (empty sides read as
/// the full set and the empty set respectively).
pub fn valid_in_model(m: &KripkeModel, s: &Sequent) -> Result<bool, KripkeError> {
    let full = full_mask(m.frame.size());
    let mut lhs = full;
    for f in &s.left {
        lhs &= extension(m, f)?;
    }
    let mut rhs = 0u64;
    for f in &s.right {
        rhs |= extension(m, f)?;
    }
    Ok(lhs & !rhs == 0)
}

const MAX_FRAME_POINTS: usize = 5;
const MAX_MEANING_VARS: usize = 3;

/// All meaning maps over the given variables, in lexicographic order over
/// the frame's canonical up-set list.
pub fn meaning_maps<'a>(
    frame: &TdlFrame,
    vars: &'a [String],
) -> impl Iterator<Item = Meaning> + 'a {
    let upsets = frame.poset().up_sets();
    let k = vars.len();
    let total = upsets.len().pow(k as u32);
    (0..total).map(move |mut code| {
        let mut m = Meaning::new();
        for v in vars {
            m.insert(v.clone(), upsets[code % upsets.len()]);
            code /= upsets.len();
        }
        m
    })
}

/// Validity in a frame: over every meaning map of the sequent's variables.
pub fn valid_in_frame(frame: &TdlFrame, s: &Sequent) -> Result<bool, KripkeError> {
    let vars: Vec<String> = s.variables().into_iter().collect();
    if vars.len() > MAX_MEANING_VARS {
        return Err(KripkeError::SizeLimit {
            what: "variable count",
            size: vars.len(),
            max: MAX_MEANING_VARS,
        });
    }
    if frame.size() > MAX_FRAME_POINTS {
        return Err(KripkeError::SizeLimit {
            what: "frame",
            size: frame.size(),
            max: MAX_FRAME_POINTS,
        });
    }
    for meaning in meaning_maps(frame, &vars) {
        let m = KripkeModel::new(frame.clone(), meaning).expect("up-sets by construction");
        if !valid_in_model(&m, s)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Search the frame census for the canonically first refuting model.
pub fn frame_countermodel(
    s: &Sequent,
    max_points: usize,
) -> Result<Option<(TdlFrame, Meaning)>, KripkeError> {
    if max_points > MAX_FRAME_POINTS {
        return Err(KripkeError::SizeLimit {
            what: "frame census",
            size: max_points,
            max: MAX_FRAME_POINTS,
        });
    }
    let vars: Vec<String> = s.variables().into_iter().collect();
    if vars.len() > MAX_MEANING_VARS {
        return Err(KripkeError::SizeLimit {
            what: "variable count",
            size: vars.len(),
            max: MAX_MEANING_VARS,
        });
    }
    for frame in crate::duality::frames_up_to(max_points) {
        for meaning in meaning_maps(&frame, &vars) {
            let m = KripkeModel::new(frame.clone(), meaning).expect("up-sets by construction");
            if !valid_in_model(&m, s)? {
                return Ok(Some((frame, m.meaning)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::complex_algebra;
    use crate::logic::{holds, parse_formula, parse_sequent, valuations, CalculusId};
    use crate::order::Poset;

    fn chain_frame() -> TdlFrame {
        let p = Poset::chain(2);
        let r = vec![p.up_set(0), p.up_set(1)];
        TdlFrame::new(p, r).unwrap()
    }

    fn model_py() -> KripkeModel {
        let mut m = Meaning::new();
        m.insert("p".into(), 0b10);
        KripkeModel::new(chain_frame(), m).unwrap()
    }

    fn fm(s: &str) -> Formula {
        parse_formula(s, CalculusId::Lt).unwrap()
    }

    fn seq(s: &str) -> Sequent {
        parse_sequent(s, CalculusId::Lt).unwrap()
    }

    #[test]
    fn satisfaction_clauses() {
        let m = model_py();
        assert!(satisfies(&m, 0, &fm("F p")).unwrap());
        assert!(!satisfies(&m, 0, &fm("G p")).unwrap());
        assert!(satisfies(&m, 0, &fm("top")).unwrap());
        assert!(!satisfies(&m, 1, &fm("bot")).unwrap());
        assert!(satisfies(&m, 1, &fm("P p")).unwrap());
        assert!(!satisfies(&m, 0, &fm("H p")).unwrap());
    }

    #[test]
    fn extensions_match_the_relational_operators() {
        let m = model_py();
        assert_eq!(extension(&m, &fm("F p")).unwrap(), 0b11);
        assert_eq!(extension(&m, &fm("G p")).unwrap(), 0b10);
        assert_eq!(extension(&m, &fm("top")).unwrap(), 0b11);
        assert_eq!(extension(&m, &fm("H p")).unwrap(), 0b00);
        assert_eq!(extension(&m, &fm("P p")).unwrap(), 0b10);
    }

    #[test]
    fn model_validity_examples() {
        let m = model_py();
        assert!(valid_in_model(&m, &seq("p => G P p")).unwrap());
        assert!(valid_in_model(&m, &seq("=> top")).unwrap());
        assert!(!valid_in_model(&m, &seq("F p => p")).unwrap());
    }

    #[test]
    fn meanings_must_be_up_sets() {
        let mut m = Meaning::new();
        m.insert("p".into(), 0b01);
        assert!(matches!(
            KripkeModel::new(chain_frame(), m),
            Err(KripkeError::MeaningNotUpClosed(_))
        ));
    }

    #[test]
    fn unsupported_connectives_are_rejected() {
        let m = model_py();
        let f = Formula::imp(Formula::var("p"), Formula::var("p"));
        assert!(matches!(
            satisfies(&m, 0, &f),
            Err(KripkeError::UnsupportedConnective("->"))
        ));
    }

    #[test]
    fn frame_validity_and_countermodels() {
        assert!(valid_in_frame(&chain_frame(), &seq("p => p")).unwrap());
        assert!(valid_in_frame(&chain_frame(), &seq("G(p|q) => G p | F q")).unwrap());

        let (frame, meaning) = frame_countermodel(&seq("G p => p"), 4)
            .unwrap()
            .expect("refutable");
        assert_eq!(frame.size(), 1);
        assert_eq!(frame.r(), &[0]);
        assert_eq!(meaning["p"], 0);

        assert!(frame_countermodel(&seq("p => G P p"), 3).unwrap().is_none());
    }

    #[test]
    fn extension_agrees_with_complex_algebra_evaluation() {
        for frame in crate::duality::frames_up_to(3) {
            let complex = complex_algebra(&frame);
            let vars = ["p".to_string(), "q".to_string()];
            let formulas = [
                fm("G p"),
                fm("H p"),
                fm("F p"),
                fm("P p"),
                fm("G (p & q)"),
                fm("F (p | H q)"),
                fm("p & F G q"),
            ];
            for env in valuations(&vars, complex.algebra.size()) {
                let meaning: Meaning = env
                    .iter()
                    .map(|(v, &i)| (v.clone(), complex.members[i]))
                    .collect();
                let m = KripkeModel::new(frame.clone(), meaning).unwrap();
                for f in &formulas {
                    let ours = extension(&m, f).unwrap();
                    let algebraic =
                        complex.members[crate::logic::evaluate(&complex.algebra, &env, f).unwrap()];
                    assert_eq!(ours, algebraic);
                }
            }
        }
    }

    #[test]
    fn frame_validity_matches_algebraic_validity() {
        let battery = [
            "p => G P p",
            "F p => p",
            "G p => p",
            "G(p|q) => G p | F q",
            "G p & F q => F (p & q)",
            "p => F p",
        ];
        for frame in crate::duality::frames_up_to(3) {
            let complex = complex_algebra(&frame);
            for text in battery {
                let s = seq(text);
                assert_eq!(
                    valid_in_frame(&frame, &s).unwrap(),
                    holds(&complex.algebra, &s).unwrap(),
                    "{text} on frame of {} points",
                    frame.size()
                );
            }
        }
    }
}
