//! Proof trees and the rule checker.
//!
//! Axioms: `a => a`, `bot =>`, `=> top`. Structural rules: weakening on
//! either side and cut. Logical rules: the lattice rules for meet and join,
//! the block rules `[G*]` and `[*F]` (with their past mirrors `[H*]`,
//! `[*P]`) that transform the whole antecedent or succedent at once, and
//! the four adjunction axioms `[PG]`, `[GP]`, `[FH]`, `[HF]` with rigid
//! single-formula shapes. The classical extension adds two-sided negation
//! and implication rules; the intuitionistic one uses the single-succedent
//! negation rules exactly as printed; the De Morgan extension adds
//! contraposition and double-tilde introduction on each side.
//!
//! Sequent sides are sets, so rule matching infers the principal
//! decomposition by bounded search; a node is accepted when any
//! decomposition fits its rule schema.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use super::formula::{CalculusId, Formula, Sequent};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleId {
    Axiom,
    BotLeft,
    TopRight,
    WeakLeft,
    WeakRight,
    Cut,
    AndLeft,
    AndRight,
    OrLeft,
    OrRight,
    GStar,
    StarF,
    HStar,
    StarP,
    Pg,
    Gp,
    Fh,
    Hf,
    NegLeft,
    NegRight,
    ImpLeft,
    ImpRight,
    TildeContra,
    DoubleTildeLeft,
    DoubleTildeRight,
    /// Leaf standing for an assumed sequent; only allowed when checking a
    /// derived-rule template against declared hypotheses.
    Hyp,
}

impl RuleId {
    pub fn token(self) -> &'static str {
        use RuleId::*;
        match self {
            Axiom => "ax",
            BotLeft => "bot-l",
            TopRight => "top-r",
            WeakLeft => "we-i",
            WeakRight => "we-d",
            Cut => "cut",
            AndLeft => "and-l",
            AndRight => "and-r",
            OrLeft => "or-l",
            OrRight => "or-r",
            GStar => "g-star",
            StarF => "star-f",
            HStar => "h-star",
            StarP => "star-p",
            Pg => "pg",
            Gp => "gp",
            Fh => "fh",
            Hf => "hf",
            NegLeft => "neg-l",
            NegRight => "neg-r",
            ImpLeft => "imp-l",
            ImpRight => "imp-r",
            TildeContra => "tilde",
            DoubleTildeLeft => "dtilde-l",
            DoubleTildeRight => "dtilde-r",
            Hyp => "hyp",
        }
    }

    pub fn from_token(s: &str) -> Option<RuleId> {
        use RuleId::*;
        Some(match s {
            "ax" => Axiom,
            "bot-l" => BotLeft,
            "top-r" => TopRight,
            "we-i" => WeakLeft,
            "we-d" => WeakRight,
            "cut" => Cut,
            "and-l" => AndLeft,
            "and-r" => AndRight,
            "or-l" => OrLeft,
            "or-r" => OrRight,
            "g-star" => GStar,
            "star-f" => StarF,
            "h-star" => HStar,
            "star-p" => StarP,
            "pg" => Pg,
            "gp" => Gp,
            "fh" => Fh,
            "hf" => Hf,
            "neg-l" => NegLeft,
            "neg-r" => NegRight,
            "imp-l" => ImpLeft,
            "imp-r" => ImpRight,
            "tilde" => TildeContra,
            "dtilde-l" => DoubleTildeLeft,
            "dtilde-r" => DoubleTildeRight,
            "hyp" => Hyp,
            _ => return None,
        })
    }

    pub fn available_in(self, calc: CalculusId) -> bool {
        use RuleId::*;
        match self {
            NegLeft | NegRight | ImpLeft | ImpRight => {
                matches!(calc, CalculusId::LtC | CalculusId::LtI)
            }
            TildeContra | DoubleTildeLeft | DoubleTildeRight => calc == CalculusId::LtDm,
            _ => true,
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.token())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofTree {
    pub conclusion: Sequent,
    pub rule: RuleId,
    pub premises: Vec<ProofTree>,
}

impl ProofTree {
    pub fn leaf(rule: RuleId, conclusion: Sequent) -> ProofTree {
        ProofTree {
            conclusion,
            rule,
            premises: Vec::new(),
        }
    }

    pub fn node(rule: RuleId, conclusion: Sequent, premises: Vec<ProofTree>) -> ProofTree {
        ProofTree {
            conclusion,
            rule,
            premises,
        }
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(ProofTree::size).sum::<usize>()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("rule {rule} does not justify node at path {path:?}: {reason}")]
pub struct RuleMismatch {
    pub path: Vec<usize>,
    pub rule: RuleId,
    pub reason: String,
}

type Side = BTreeSet<Formula>;

fn union1(s: &Side, f: &Formula) -> Side {
    let mut out = s.clone();
    out.insert(f.clone());
    out
}

fn minus1(s: &Side, f: &Formula) -> Side {
    let mut out = s.clone();
    out.remove(f);
    out
}

/// `ctx` choices such that `ctx u {f} == s`: either `s` minus `f` or `s`
/// itself (when `f` occurs in the remaining context too).
fn contexts(s: &Side, f: &Formula) -> Vec<Side> {
    if !s.contains(f) {
        return Vec::new();
    }
    vec![minus1(s, f), s.clone()]
}

fn map_side(s: &Side, wrap: fn(Formula) -> Formula) -> Side {
    s.iter().cloned().map(wrap).collect()
}

/// Validate one node given its premises' conclusions.
fn check_node(
    c: &Sequent,
    rule: RuleId,
    prem: &[&Sequent],
    calc: CalculusId,
    hyps: &[Sequent],
) -> Result<(), String> {
    if !rule.available_in(calc) {
        return Err(format!("rule is not part of {calc}"));
    }
    let arity_ok = match rule {
        RuleId::Axiom | RuleId::BotLeft | RuleId::TopRight | RuleId::Hyp => prem.is_empty(),
        RuleId::Cut | RuleId::AndRight | RuleId::OrLeft | RuleId::ImpLeft => prem.len() == 2,
        _ => prem.len() == 1,
    };
    if !arity_ok {
        return Err(format!("wrong number of premises ({})", prem.len()));
    }
    let ok = match rule {
        RuleId::Axiom => {
            c.left.len() == 1 && c.left == c.right
        }
        RuleId::BotLeft => {
            c.right.is_empty() && c.left.len() == 1 && c.left.contains(&Formula::Bot)
        }
        RuleId::TopRight => {
            c.left.is_empty() && c.right.len() == 1 && c.right.contains(&Formula::Top)
        }
        RuleId::Hyp => hyps.contains(c),
        RuleId::WeakLeft => {
            let pm = prem[0];
            pm.right == c.right
                && pm.left.is_subset(&c.left)
                && c.left.difference(&pm.left).count() <= 1
        }
        RuleId::WeakRight => {
            let pm = prem[0];
            pm.left == c.left
                && pm.right.is_subset(&c.right)
                && c.right.difference(&pm.right).count() <= 1
        }
        RuleId::Cut => {
            let (p1, p2) = (prem[0], prem[1]);
            let candidates: Vec<&Formula> =
                p1.right.iter().chain(p2.left.iter()).collect();
            candidates.iter().any(|alpha| {
                p1.left == c.left
                    && p1.right == union1(&c.right, alpha)
                    && p2.left == union1(&c.left, alpha)
                    && p2.right == c.right
            })
        }
        RuleId::AndLeft => {
            let pm = prem[0];
            c.left.iter().any(|phi| match phi {
                Formula::And(a, b) => contexts(&c.left, phi).iter().any(|ctx| {
                    pm.left == union1(&union1(ctx, a), b) && pm.right == c.right
                }),
                _ => false,
            })
        }
        RuleId::AndRight => {
            c.right.iter().any(|phi| match phi {
                Formula::And(a, b) => contexts(&c.right, phi).iter().any(|delta| {
                    let want = |x: &Formula, y: &Formula| {
                        prem[0].left == c.left
                            && prem[1].left == c.left
                            && prem[0].right == union1(delta, x)
                            && prem[1].right == union1(delta, y)
                    };
                    want(a, b) || want(b, a)
                }),
                _ => false,
            })
        }
        RuleId::OrLeft => {
            c.left.iter().any(|phi| match phi {
                Formula::Or(a, b) => contexts(&c.left, phi).iter().any(|gamma| {
                    let want = |x: &Formula, y: &Formula| {
                        prem[0].right == c.right
                            && prem[1].right == c.right
                            && prem[0].left == union1(gamma, x)
                            && prem[1].left == union1(gamma, y)
                    };
                    want(a, b) || want(b, a)
                }),
                _ => false,
            })
        }
        RuleId::OrRight => {
            let pm = prem[0];
            c.right.iter().any(|phi| match phi {
                Formula::Or(a, b) => contexts(&c.right, phi).iter().any(|delta| {
                    pm.right == union1(&union1(delta, a), b) && pm.left == c.left
                }),
                _ => false,
            })
        }
        RuleId::GStar => {
            // premise Gamma => Delta, alpha; conclusion G Gamma => F Delta, G alpha
            let pm = prem[0];
            pm.right.iter().any(|alpha| {
                contexts(&pm.right, alpha).iter().any(|delta| {
                    c.left == map_side(&pm.left, Formula::g)
                        && c.right
                            == union1(&map_side(delta, Formula::f), &Formula::g(alpha.clone()))
                })
            })
        }
        RuleId::StarF => {
            // premise Gamma, alpha => Delta; conclusion G Gamma, F alpha => F Delta
            let pm = prem[0];
            pm.left.iter().any(|alpha| {
                contexts(&pm.left, alpha).iter().any(|gamma| {
                    c.right == map_side(&pm.right, Formula::f)
                        && c.left
                            == union1(&map_side(gamma, Formula::g), &Formula::f(alpha.clone()))
                })
            })
        }
        RuleId::HStar => {
            let pm = prem[0];
            pm.right.iter().any(|alpha| {
                contexts(&pm.right, alpha).iter().any(|delta| {
                    c.left == map_side(&pm.left, Formula::h)
                        && c.right
                            == union1(&map_side(delta, Formula::p), &Formula::h(alpha.clone()))
                })
            })
        }
        RuleId::StarP => {
            let pm = prem[0];
            pm.left.iter().any(|alpha| {
                contexts(&pm.left, alpha).iter().any(|gamma| {
                    c.right == map_side(&pm.right, Formula::p)
                        && c.left
                            == union1(&map_side(gamma, Formula::h), &Formula::p(alpha.clone()))
                })
            })
        }
        RuleId::Pg => {
            // premise alpha => Delta; conclusion P G alpha => Delta
            let pm = prem[0];
            pm.left.len() == 1 && pm.right == c.right && c.left.len() == 1 && {
                let alpha = pm.left.first().unwrap();
                c.left
                    .contains(&Formula::p(Formula::g(alpha.clone())))
            }
        }
        RuleId::Gp => {
            // premise Gamma => alpha; conclusion Gamma => G P alpha
            let pm = prem[0];
            pm.right.len() == 1 && pm.left == c.left && c.right.len() == 1 && {
                let alpha = pm.right.first().unwrap();
                c.right
                    .contains(&Formula::g(Formula::p(alpha.clone())))
            }
        }
        RuleId::Fh => {
            let pm = prem[0];
            pm.left.len() == 1 && pm.right == c.right && c.left.len() == 1 && {
                let alpha = pm.left.first().unwrap();
                c.left
                    .contains(&Formula::f(Formula::h(alpha.clone())))
            }
        }
        RuleId::Hf => {
            let pm = prem[0];
            pm.right.len() == 1 && pm.left == c.left && c.right.len() == 1 && {
                let alpha = pm.right.first().unwrap();
                c.right
                    .contains(&Formula::h(Formula::f(alpha.clone())))
            }
        }
        RuleId::NegLeft => match calc {
            // premise Gamma => Delta, alpha; conclusion ~alpha, Gamma => Delta
            CalculusId::LtC => {
                let pm = prem[0];
                pm.right.iter().any(|alpha| {
                    pm.right == union1(&c.right, alpha)
                        && c.left == union1(&pm.left, &Formula::neg(alpha.clone()))
                })
            }
            // premise Gamma => alpha; conclusion ~alpha, Gamma =>
            CalculusId::LtI => {
                let pm = prem[0];
                pm.right.len() == 1 && c.right.is_empty() && {
                    let alpha = pm.right.first().unwrap();
                    c.left == union1(&pm.left, &Formula::neg(alpha.clone()))
                }
            }
            _ => false,
        },
        RuleId::NegRight => match calc {
            // premise alpha, Gamma => Delta; conclusion Gamma => Delta, ~alpha
            CalculusId::LtC => {
                let pm = prem[0];
                c.right.iter().any(|phi| match phi {
                    Formula::Neg(alpha) => contexts(&c.right, phi).iter().any(|delta| {
                        pm.left == union1(&c.left, alpha) && pm.right == *delta
                    }),
                    _ => false,
                })
            }
            // premise alpha, Gamma => ; conclusion Gamma => ~alpha
            CalculusId::LtI => {
                let pm = prem[0];
                pm.right.is_empty() && c.right.len() == 1 && {
                    match c.right.first().unwrap() {
                        Formula::Neg(alpha) => pm.left == union1(&c.left, alpha),
                        _ => false,
                    }
                }
            }
            _ => false,
        },
        RuleId::ImpLeft => {
            // premises Gamma => Delta, alpha and beta, Gamma => Delta;
            // conclusion alpha -> beta, Gamma => Delta
            c.left.iter().any(|phi| match phi {
                Formula::Imp(alpha, beta) => contexts(&c.left, phi).iter().any(|gamma| {
                    prem[0].left == *gamma
                        && prem[0].right == union1(&c.right, alpha)
                        && prem[1].left == union1(gamma, beta)
                        && prem[1].right == c.right
                }),
                _ => false,
            })
        }
        RuleId::ImpRight => match calc {
            // premise alpha, Gamma => Delta, beta; conclusion Gamma => Delta, alpha -> beta
            CalculusId::LtC => {
                let pm = prem[0];
                c.right.iter().any(|phi| match phi {
                    Formula::Imp(alpha, beta) => contexts(&c.right, phi).iter().any(|delta| {
                        pm.left == union1(&c.left, alpha) && pm.right == union1(delta, beta)
                    }),
                    _ => false,
                })
            }
            // Single-succedent form, like the negation rules: a surviving
            // side succedent would let the rule derive excluded-middle
            // style sequents that fail on Heyting carriers.
            CalculusId::LtI => {
                let pm = prem[0];
                c.right.len() == 1 && {
                    match c.right.first().unwrap() {
                        Formula::Imp(alpha, beta) => {
                            pm.left == union1(&c.left, alpha)
                                && pm.right.len() == 1
                                && pm.right.contains(beta.as_ref())
                        }
                        _ => false,
                    }
                }
            }
            _ => false,
        },
        RuleId::TildeContra => {
            // premise alpha => beta; conclusion ~beta => ~alpha
            let pm = prem[0];
            pm.left.len() == 1
                && pm.right.len() == 1
                && c.left.len() == 1
                && c.right.len() == 1
                && {
                    let alpha = pm.left.first().unwrap();
                    let beta = pm.right.first().unwrap();
                    c.left.contains(&Formula::tilde(beta.clone()))
                        && c.right.contains(&Formula::tilde(alpha.clone()))
                }
        }
        RuleId::DoubleTildeLeft => {
            let pm = prem[0];
            c.left.iter().any(|phi| match phi {
                Formula::Tilde(inner) => match inner.as_ref() {
                    Formula::Tilde(alpha) => contexts(&c.left, phi).iter().any(|gamma| {
                        pm.left == union1(gamma, alpha) && pm.right == c.right
                    }),
                    _ => false,
                },
                _ => false,
            })
        }
        RuleId::DoubleTildeRight => {
            let pm = prem[0];
            c.right.iter().any(|phi| match phi {
                Formula::Tilde(inner) => match inner.as_ref() {
                    Formula::Tilde(alpha) => contexts(&c.right, phi).iter().any(|delta| {
                        pm.right == union1(delta, alpha) && pm.left == c.left
                    }),
                    _ => false,
                },
                _ => false,
            })
        }
    };
    if ok {
        Ok(())
    } else {
        Err("no decomposition matches the rule schema".to_string())
    }
}

fn check_rec(
    t: &ProofTree,
    calc: CalculusId,
    hyps: &[Sequent],
    path: &mut Vec<usize>,
) -> Result<(), RuleMismatch> {
    let prem: Vec<&Sequent> = t.premises.iter().map(|p| &p.conclusion).collect();
    if !t.conclusion.allowed_in(calc) {
        return Err(RuleMismatch {
            path: path.clone(),
            rule: t.rule,
            reason: format!("conclusion uses connectives outside {calc}"),
        });
    }
    check_node(&t.conclusion, t.rule, &prem, calc, hyps).map_err(|reason| RuleMismatch {
        path: path.clone(),
        rule: t.rule,
        reason,
    })?;
    for (i, p) in t.premises.iter().enumerate() {
        path.push(i);
        check_rec(p, calc, hyps, path)?;
        path.pop();
    }
    Ok(())
}

/// Verify every node of the tree against the rule schemas of the calculus.
pub fn check_proof(t: &ProofTree, calc: CalculusId) -> Result<(), RuleMismatch> {
    check_rec(t, calc, &[], &mut Vec::new())
}

/// Same, but `hyp` leaves matching one of the given sequents are accepted.
/// Used to replay derived-rule templates.
pub fn check_proof_with_hypotheses(
    t: &ProofTree,
    calc: CalculusId,
    hyps: &[Sequent],
) -> Result<(), RuleMismatch> {
    check_rec(t, calc, hyps, &mut Vec::new())
}

/// Fold a proof of `Gamma => Delta` into a proof of `meet Gamma => join
/// Delta` using the meet-left and join-right rules (weakening in a bound
/// when a side is empty). The two sequents are interprovable.
pub fn fold_to_formula_sequent(tree: ProofTree) -> ProofTree {
    let mut tree = tree;
    if tree.conclusion.left.is_empty() {
        let c = Sequent::new([Formula::Top], tree.conclusion.right.iter().cloned());
        tree = ProofTree::node(RuleId::WeakLeft, c, vec![tree]);
    }
    if tree.conclusion.right.is_empty() {
        let c = Sequent::new(tree.conclusion.left.iter().cloned(), [Formula::Bot]);
        tree = ProofTree::node(RuleId::WeakRight, c, vec![tree]);
    }
    while tree.conclusion.left.len() > 1 {
        let mut it = tree.conclusion.left.iter();
        let a = it.next().unwrap().clone();
        let b = it.next().unwrap().clone();
        let mut left: Side = tree.conclusion.left.clone();
        left.remove(&a);
        left.remove(&b);
        left.insert(Formula::and(a, b));
        let c = Sequent {
            left,
            right: tree.conclusion.right.clone(),
        };
        tree = ProofTree::node(RuleId::AndLeft, c, vec![tree]);
    }
    while tree.conclusion.right.len() > 1 {
        let mut it = tree.conclusion.right.iter();
        let a = it.next().unwrap().clone();
        let b = it.next().unwrap().clone();
        let mut right: Side = tree.conclusion.right.clone();
        right.remove(&a);
        right.remove(&b);
        right.insert(Formula::or(a, b));
        let c = Sequent {
            left: tree.conclusion.left.clone(),
            right,
        };
        tree = ProofTree::node(RuleId::OrRight, c, vec![tree]);
    }
    tree
}
