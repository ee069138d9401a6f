//! Degree-preserving semantics over finite algebras.
//!
//! A sequent `Gamma => Delta` holds in an algebra when every valuation
//! sends the meet of the left side below the join of the right side, with
//! the empty meet read as the top and the empty join as the bottom.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::{
    enumerate_demorgan_algebras, enumerate_tdl_algebras, heyting_imp, TdlAlgebra,
};
use crate::order::distributive_lattice_census;

use super::formula::{CalculusId, Formula, Sequent};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("the algebra has no {0} structure")]
    MissingConnective(&'static str),
    #[error("unbound variable {0}")]
    UnboundVariable(String),
}

pub type Valuation = BTreeMap<String, usize>;

pub fn evaluate(a: &TdlAlgebra, env: &Valuation, f: &Formula) -> Result<usize, EvalError> {
    let l = a.lattice();
    Ok(match f {
        Formula::Top => l.top(),
        Formula::Bot => l.bottom(),
        Formula::Var(v) => *env
            .get(v)
            .ok_or_else(|| EvalError::UnboundVariable(v.clone()))?,
        Formula::And(x, y) => l.meet(evaluate(a, env, x)?, evaluate(a, env, y)?),
        Formula::Or(x, y) => l.join(evaluate(a, env, x)?, evaluate(a, env, y)?),
        Formula::Imp(x, y) => heyting_imp(l, evaluate(a, env, x)?, evaluate(a, env, y)?),
        Formula::Neg(x) => heyting_imp(l, evaluate(a, env, x)?, l.bottom()),
        Formula::Tilde(x) => {
            let neg = a
                .neg_table()
                .ok_or(EvalError::MissingConnective("De Morgan negation"))?;
            neg[evaluate(a, env, x)?]
        }
        Formula::G(x) => a.g(evaluate(a, env, x)?),
        Formula::H(x) => a.h(evaluate(a, env, x)?),
        Formula::F(x) => a.f(evaluate(a, env, x)?),
        Formula::P(x) => a.p(evaluate(a, env, x)?),
    })
}

/// All assignments of the given variables into a carrier of size `n`, in
/// lexicographic order of the value vector (variables sorted by name).
pub fn valuations<'a>(
    vars: &'a [String],
    n: usize,
) -> impl Iterator<Item = Valuation> + 'a {
    let k = vars.len();
    let total = n.checked_pow(k as u32).expect("valuation space overflow");
    (0..total).map(move |mut code| {
        let mut env = Valuation::new();
        for v in vars {
            env.insert(v.clone(), code % n);
            code /= n;
        }
        env
    })
}

/// Degree check against one algebra: the sequent's inequality under every
/// valuation of its variables.
pub fn holds(a: &TdlAlgebra, s: &Sequent) -> Result<bool, EvalError> {
    let vars: Vec<String> = s.variables().into_iter().collect();
    let l = a.lattice();
    for env in valuations(&vars, a.size()) {
        let mut lhs = l.top();
        for f in &s.left {
            lhs = l.meet(lhs, evaluate(a, &env, f)?);
        }
        let mut rhs = l.bottom();
        for f in &s.right {
            rhs = l.join(rhs, evaluate(a, &env, f)?);
        }
        if !l.leq(lhs, rhs) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Finitary degree-preserving consequence over a list of algebras.
pub fn consequence(s: &Sequent, algebras: &[TdlAlgebra]) -> Result<bool, EvalError> {
    for a in algebras {
        if !holds(a, s)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The finite algebra class matching a calculus, up to `max_size` carrier
/// elements, in canonical census order: every tense structure for the base
/// and intuitionistic systems, Boolean carriers only for the classical one,
/// and negation-equipped structures for the De Morgan one.
pub fn algebra_class(calc: CalculusId, max_size: usize) -> Vec<TdlAlgebra> {
    let mut out = Vec::new();
    for l in distributive_lattice_census(max_size) {
        match calc {
            CalculusId::Lt | CalculusId::LtI => {
                out.extend(enumerate_tdl_algebras(&l, max_size).expect("census within bound"));
            }
            CalculusId::LtC => {
                let boolean =
                    (0..l.size()).all(|x| crate::algebra::complement(&l, x).is_some());
                if boolean {
                    out.extend(
                        enumerate_tdl_algebras(&l, max_size).expect("census within bound"),
                    );
                }
            }
            CalculusId::LtDm => {
                out.extend(
                    enumerate_demorgan_algebras(&l, max_size).expect("census within bound"),
                );
            }
        }
    }
    out
}

/// Scan the algebra class for the canonically first valuation refuting the
/// sequent.
pub fn countermodel(
    s: &Sequent,
    max_size: usize,
    calc: CalculusId,
) -> Result<Option<(TdlAlgebra, Valuation)>, EvalError> {
    let vars: Vec<String> = s.variables().into_iter().collect();
    for a in algebra_class(calc, max_size) {
        let l = a.lattice();
        for env in valuations(&vars, a.size()) {
            let mut lhs = l.top();
            for f in &s.left {
                lhs = l.meet(lhs, evaluate(&a, &env, f)?);
            }
            let mut rhs = l.bottom();
            for f in &s.right {
                rhs = l.join(rhs, evaluate(&a, &env, f)?);
            }
            if !l.leq(lhs, rhs) {
                return Ok(Some((a, env)));
            }
        }
    }
    Ok(None)
}
