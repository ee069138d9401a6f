//! Bounded backward proof search, cut excluded.
//!
//! No cut-elimination result backs this search, so a failure is reported as
//! unknown rather than as a refutation; refutations come from the
//! countermodel scan instead. Every move strictly shrinks the total symbol
//! count of the goal, so the depth bound is a budget, not a termination
//! crutch. Returned trees always pass the checker.

use std::collections::HashMap;

use super::formula::{CalculusId, Formula, Sequent};
use super::proof::{ProofTree, RuleId};

/// Try to prove the sequent within the given depth. `None` means the
/// search space was exhausted, not that the sequent is invalid.
pub fn prove(goal: &Sequent, calc: CalculusId, depth: usize) -> Option<ProofTree> {
    let mut memo: HashMap<Sequent, MemoEntry> = HashMap::new();
    search(goal, calc, depth, &mut memo)
}

enum MemoEntry {
    Proved(ProofTree),
    /// Search failed with this much budget; retry only with more.
    FailedAt(usize),
}

fn search(
    goal: &Sequent,
    calc: CalculusId,
    depth: usize,
    memo: &mut HashMap<Sequent, MemoEntry>,
) -> Option<ProofTree> {
    match memo.get(goal) {
        Some(MemoEntry::Proved(t)) => return Some(t.clone()),
        Some(MemoEntry::FailedAt(d)) if *d >= depth => return None,
        _ => {}
    }
    if depth == 0 {
        return None;
    }
    if let Some(t) = close_directly(goal) {
        memo.insert(goal.clone(), MemoEntry::Proved(t.clone()));
        return Some(t);
    }
    for (rule, premises) in backward_moves(goal, calc) {
        let mut proved = Vec::with_capacity(premises.len());
        let mut ok = true;
        for pm in &premises {
            match search(pm, calc, depth - 1, memo) {
                Some(t) => proved.push(t),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            let t = ProofTree::node(rule, goal.clone(), proved);
            memo.insert(goal.clone(), MemoEntry::Proved(t.clone()));
            return Some(t);
        }
    }
    memo.insert(goal.clone(), MemoEntry::FailedAt(depth));
    None
}

/// Axiom plus explicit weakening steps up to the goal.
fn close_directly(goal: &Sequent) -> Option<ProofTree> {
    let axiom = if let Some(shared) = goal.left.intersection(&goal.right).next() {
        ProofTree::leaf(
            RuleId::Axiom,
            Sequent::new([shared.clone()], [shared.clone()]),
        )
    } else if goal.left.contains(&Formula::Bot) {
        ProofTree::leaf(RuleId::BotLeft, Sequent::new([Formula::Bot], []))
    } else if goal.right.contains(&Formula::Top) {
        ProofTree::leaf(RuleId::TopRight, Sequent::new([], [Formula::Top]))
    } else {
        return None;
    };
    Some(weaken_up_to(axiom, goal))
}

fn weaken_up_to(mut tree: ProofTree, goal: &Sequent) -> ProofTree {
    for f in goal.left.iter() {
        if !tree.conclusion.left.contains(f) {
            let mut c = tree.conclusion.clone();
            c.left.insert(f.clone());
            tree = ProofTree::node(RuleId::WeakLeft, c, vec![tree]);
        }
    }
    for f in goal.right.iter() {
        if !tree.conclusion.right.contains(f) {
            let mut c = tree.conclusion.clone();
            c.right.insert(f.clone());
            tree = ProofTree::node(RuleId::WeakRight, c, vec![tree]);
        }
    }
    debug_assert_eq!(&tree.conclusion, goal);
    tree
}

fn minus1(s: &std::collections::BTreeSet<Formula>, f: &Formula) -> std::collections::BTreeSet<Formula> {
    let mut out = s.clone();
    out.remove(f);
    out
}

/// All single-rule backward steps from the goal, in a fixed deterministic
/// order: logical decompositions first, the rigid adjunction and block
/// rules next, weakening last.
fn backward_moves(goal: &Sequent, calc: CalculusId) -> Vec<(RuleId, Vec<Sequent>)> {
    let mut moves = Vec::new();
    let g = goal;

    for phi in &g.left {
        if let Formula::And(a, b) = phi {
            let mut left = minus1(&g.left, phi);
            left.insert((**a).clone());
            left.insert((**b).clone());
            moves.push((
                RuleId::AndLeft,
                vec![Sequent {
                    left,
                    right: g.right.clone(),
                }],
            ));
        }
    }
    for phi in &g.right {
        if let Formula::Or(a, b) = phi {
            let mut right = minus1(&g.right, phi);
            right.insert((**a).clone());
            right.insert((**b).clone());
            moves.push((
                RuleId::OrRight,
                vec![Sequent {
                    left: g.left.clone(),
                    right,
                }],
            ));
        }
    }
    for phi in &g.right {
        if let Formula::And(a, b) = phi {
            let delta = minus1(&g.right, phi);
            let mk = |f: &Formula| {
                let mut right = delta.clone();
                right.insert(f.clone());
                Sequent {
                    left: g.left.clone(),
                    right,
                }
            };
            moves.push((RuleId::AndRight, vec![mk(a), mk(b)]));
        }
    }
    for phi in &g.left {
        if let Formula::Or(a, b) = phi {
            let gamma = minus1(&g.left, phi);
            let mk = |f: &Formula| {
                let mut left = gamma.clone();
                left.insert(f.clone());
                Sequent {
                    left,
                    right: g.right.clone(),
                }
            };
            moves.push((RuleId::OrLeft, vec![mk(a), mk(b)]));
        }
    }

    // Adjunction axiom rules: rigid shapes.
    if g.left.len() == 1 {
        if let Formula::P(inner) = g.left.first().unwrap() {
            if let Formula::G(alpha) = inner.as_ref() {
                moves.push((
                    RuleId::Pg,
                    vec![Sequent::new([(**alpha).clone()], g.right.iter().cloned())],
                ));
            }
        }
        if let Formula::F(inner) = g.left.first().unwrap() {
            if let Formula::H(alpha) = inner.as_ref() {
                moves.push((
                    RuleId::Fh,
                    vec![Sequent::new([(**alpha).clone()], g.right.iter().cloned())],
                ));
            }
        }
    }
    if g.right.len() == 1 {
        if let Formula::G(inner) = g.right.first().unwrap() {
            if let Formula::P(alpha) = inner.as_ref() {
                moves.push((
                    RuleId::Gp,
                    vec![Sequent::new(g.left.iter().cloned(), [(**alpha).clone()])],
                ));
            }
        }
        if let Formula::H(inner) = g.right.first().unwrap() {
            if let Formula::F(alpha) = inner.as_ref() {
                moves.push((
                    RuleId::Hf,
                    vec![Sequent::new(g.left.iter().cloned(), [(**alpha).clone()])],
                ));
            }
        }
    }

    // Block rules: the whole antecedent (succedent) must carry the right
    // operator shape.
    fn strip(
        side: &std::collections::BTreeSet<Formula>,
        pick: fn(&Formula) -> Option<&Formula>,
    ) -> Option<Vec<Formula>> {
        side.iter().map(|f| pick(f).cloned()).collect()
    }
    fn g_of(f: &Formula) -> Option<&Formula> {
        match f {
            Formula::G(x) => Some(x.as_ref()),
            _ => None,
        }
    }
    fn h_of(f: &Formula) -> Option<&Formula> {
        match f {
            Formula::H(x) => Some(x.as_ref()),
            _ => None,
        }
    }
    fn f_of(f: &Formula) -> Option<&Formula> {
        match f {
            Formula::F(x) => Some(x.as_ref()),
            _ => None,
        }
    }
    fn p_of(f: &Formula) -> Option<&Formula> {
        match f {
            Formula::P(x) => Some(x.as_ref()),
            _ => None,
        }
    }

    // [G*]: G Gamma => F Delta, G alpha.
    if let Some(gamma) = strip(&g.left, g_of) {
        for phi in &g.right {
            if let Formula::G(alpha) = phi {
                if let Some(delta) = strip(&minus1(&g.right, phi), f_of) {
                    let mut right: std::collections::BTreeSet<Formula> =
                        delta.into_iter().collect();
                    right.insert((**alpha).clone());
                    moves.push((
                        RuleId::GStar,
                        vec![Sequent {
                            left: gamma.iter().cloned().collect(),
                            right,
                        }],
                    ));
                }
            }
        }
    }
    if let Some(delta) = strip(&g.right, f_of) {
        for phi in &g.left {
            if let Formula::F(alpha) = phi {
                if let Some(gamma) = strip(&minus1(&g.left, phi), g_of) {
                    let mut left: std::collections::BTreeSet<Formula> =
                        gamma.into_iter().collect();
                    left.insert((**alpha).clone());
                    moves.push((
                        RuleId::StarF,
                        vec![Sequent {
                            left,
                            right: delta.iter().cloned().collect(),
                        }],
                    ));
                }
            }
        }
    }
    if let Some(gamma) = strip(&g.left, h_of) {
        for phi in &g.right {
            if let Formula::H(alpha) = phi {
                if let Some(delta) = strip(&minus1(&g.right, phi), p_of) {
                    let mut right: std::collections::BTreeSet<Formula> =
                        delta.into_iter().collect();
                    right.insert((**alpha).clone());
                    moves.push((
                        RuleId::HStar,
                        vec![Sequent {
                            left: gamma.iter().cloned().collect(),
                            right,
                        }],
                    ));
                }
            }
        }
    }
    if let Some(delta) = strip(&g.right, p_of) {
        for phi in &g.left {
            if let Formula::P(alpha) = phi {
                if let Some(gamma) = strip(&minus1(&g.left, phi), h_of) {
                    let mut left: std::collections::BTreeSet<Formula> =
                        gamma.into_iter().collect();
                    left.insert((**alpha).clone());
                    moves.push((
                        RuleId::StarP,
                        vec![Sequent {
                            left,
                            right: delta.iter().cloned().collect(),
                        }],
                    ));
                }
            }
        }
    }

    match calc {
        CalculusId::LtC => {
            for phi in &g.left {
                if let Formula::Neg(alpha) = phi {
                    let mut right = g.right.clone();
                    right.insert((**alpha).clone());
                    moves.push((
                        RuleId::NegLeft,
                        vec![Sequent {
                            left: minus1(&g.left, phi),
                            right,
                        }],
                    ));
                }
            }
            for phi in &g.right {
                if let Formula::Neg(alpha) = phi {
                    let mut left = g.left.clone();
                    left.insert((**alpha).clone());
                    moves.push((
                        RuleId::NegRight,
                        vec![Sequent {
                            left,
                            right: minus1(&g.right, phi),
                        }],
                    ));
                }
            }
        }
        CalculusId::LtI => {
            if g.right.is_empty() {
                for phi in &g.left {
                    if let Formula::Neg(alpha) = phi {
                        moves.push((
                            RuleId::NegLeft,
                            vec![Sequent::new(
                                minus1(&g.left, phi),
                                [(**alpha).clone()],
                            )],
                        ));
                    }
                }
            }
            if g.right.len() == 1 {
                if let Formula::Neg(alpha) = g.right.first().unwrap() {
                    let mut left = g.left.clone();
                    left.insert((**alpha).clone());
                    moves.push((RuleId::NegRight, vec![Sequent::new(left, [])]));
                }
            }
        }
        CalculusId::LtDm => {
            if g.left.len() == 1 && g.right.len() == 1 {
                if let (Formula::Tilde(beta), Formula::Tilde(alpha)) =
                    (g.left.first().unwrap(), g.right.first().unwrap())
                {
                    moves.push((
                        RuleId::TildeContra,
                        vec![Sequent::new([(**alpha).clone()], [(**beta).clone()])],
                    ));
                }
            }
            for phi in &g.left {
                if let Formula::Tilde(inner) = phi {
                    if let Formula::Tilde(alpha) = inner.as_ref() {
                        let mut left = minus1(&g.left, phi);
                        left.insert((**alpha).clone());
                        moves.push((
                            RuleId::DoubleTildeLeft,
                            vec![Sequent {
                                left,
                                right: g.right.clone(),
                            }],
                        ));
                    }
                }
            }
            for phi in &g.right {
                if let Formula::Tilde(inner) = phi {
                    if let Formula::Tilde(alpha) = inner.as_ref() {
                        let mut right = minus1(&g.right, phi);
                        right.insert((**alpha).clone());
                        moves.push((
                            RuleId::DoubleTildeRight,
                            vec![Sequent {
                                left: g.left.clone(),
                                right,
                            }],
                        ));
                    }
                }
            }
        }
        CalculusId::Lt => {}
    }

    if matches!(calc, CalculusId::LtC | CalculusId::LtI) {
        for phi in &g.left {
            if let Formula::Imp(alpha, beta) = phi {
                let gamma = minus1(&g.left, phi);
                let mut right = g.right.clone();
                right.insert((**alpha).clone());
                let mut left2 = gamma.clone();
                left2.insert((**beta).clone());
                moves.push((
                    RuleId::ImpLeft,
                    vec![
                        Sequent {
                            left: gamma,
                            right,
                        },
                        Sequent {
                            left: left2,
                            right: g.right.clone(),
                        },
                    ],
                ));
            }
        }
        for phi in &g.right {
            if let Formula::Imp(alpha, beta) = phi {
                if calc == CalculusId::LtI && g.right.len() != 1 {
                    continue;
                }
                let mut left = g.left.clone();
                left.insert((**alpha).clone());
                let mut right = minus1(&g.right, phi);
                right.insert((**beta).clone());
                moves.push((RuleId::ImpRight, vec![Sequent { left, right }]));
            }
        }
    }

    // Backward weakening: drop one formula.
    for phi in &g.left {
        moves.push((
            RuleId::WeakLeft,
            vec![Sequent {
                left: minus1(&g.left, phi),
                right: g.right.clone(),
            }],
        ));
    }
    for phi in &g.right {
        moves.push((
            RuleId::WeakRight,
            vec![Sequent {
                left: g.left.clone(),
                right: minus1(&g.right, phi),
            }],
        ));
    }

    moves
}
