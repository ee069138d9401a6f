//! The degree-preserving sequent systems: language, algebraic semantics,
//! proof checking, bounded backward search, countermodel scanning and the
//! bundled derivations.

pub mod formula;
pub mod parse;
pub mod proof;
pub mod script;
pub mod search;
pub mod semantics;

pub use formula::{CalculusId, Formula, Sequent};
pub use parse::{parse_formula, parse_sequent, SyntaxError};
pub use proof::{check_proof, check_proof_with_hypotheses, ProofTree, RuleId, RuleMismatch};
pub use script::{parse_scripts, run_bundled_proofs, Script, ScriptsReport};
pub use search::prove;
pub use semantics::{
    algebra_class, consequence, countermodel, evaluate, holds, valuations, EvalError, Valuation,
};
