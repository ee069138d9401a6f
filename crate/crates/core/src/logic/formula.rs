//! Formula and sequent syntax for the tense language and its extensions.

use std::collections::BTreeSet;
use std::fmt;

/// Which sequent system is active. The base system speaks only meet, join,
/// bounds and the four tense operators; the classical and intuitionistic
/// extensions add implication and negation; the De Morgan extension adds an
/// involutive tilde and treats F and P as defined connectives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CalculusId {
    Lt,
    LtC,
    LtI,
    LtDm,
}

impl CalculusId {
    pub fn token(self) -> &'static str {
        match self {
            CalculusId::Lt => "lt",
            CalculusId::LtC => "ltc",
            CalculusId::LtI => "lti",
            CalculusId::LtDm => "ltdm",
        }
    }

    pub fn from_token(s: &str) -> Option<CalculusId> {
        match s {
            "lt" => Some(CalculusId::Lt),
            "ltc" => Some(CalculusId::LtC),
            "lti" => Some(CalculusId::LtI),
            "ltdm" => Some(CalculusId::LtDm),
            _ => None,
        }
    }
}

impl fmt::Display for CalculusId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.token())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Top,
    Bot,
    Var(String),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    /// Implication; classical and intuitionistic systems only.
    Imp(Box<Formula>, Box<Formula>),
    /// Negation; classical and intuitionistic systems only.
    Neg(Box<Formula>),
    /// De Morgan tilde.
    Tilde(Box<Formula>),
    G(Box<Formula>),
    H(Box<Formula>),
    F(Box<Formula>),
    P(Box<Formula>),
}

impl Formula {
    pub fn var(name: &str) -> Formula {
        Formula::Var(name.to_string())
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn neg(a: Formula) -> Formula {
        Formula::Neg(Box::new(a))
    }

    pub fn tilde(a: Formula) -> Formula {
        Formula::Tilde(Box::new(a))
    }

    pub fn g(a: Formula) -> Formula {
        Formula::G(Box::new(a))
    }

    pub fn h(a: Formula) -> Formula {
        Formula::H(Box::new(a))
    }

    pub fn f(a: Formula) -> Formula {
        Formula::F(Box::new(a))
    }

    pub fn p(a: Formula) -> Formula {
        Formula::P(Box::new(a))
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out
    }

    fn collect_variables(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Top | Formula::Bot => {}
            Formula::Var(v) => {
                out.insert(v.clone());
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_variables(out);
                b.collect_variables(out);
            }
            Formula::Neg(a)
            | Formula::Tilde(a)
            | Formula::G(a)
            | Formula::H(a)
            | Formula::F(a)
            | Formula::P(a) => a.collect_variables(out),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Top | Formula::Bot | Formula::Var(_) => 0,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                1 + a.depth().max(b.depth())
            }
            Formula::Neg(a)
            | Formula::Tilde(a)
            | Formula::G(a)
            | Formula::H(a)
            | Formula::F(a)
            | Formula::P(a) => 1 + a.depth(),
        }
    }

    /// Connective restriction of the active calculus.
    pub fn allowed_in(&self, calc: CalculusId) -> bool {
        match self {
            Formula::Top | Formula::Bot | Formula::Var(_) => true,
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.allowed_in(calc) && b.allowed_in(calc)
            }
            Formula::Imp(a, b) => {
                matches!(calc, CalculusId::LtC | CalculusId::LtI)
                    && a.allowed_in(calc)
                    && b.allowed_in(calc)
            }
            Formula::Neg(a) => {
                matches!(calc, CalculusId::LtC | CalculusId::LtI) && a.allowed_in(calc)
            }
            Formula::Tilde(a) => calc == CalculusId::LtDm && a.allowed_in(calc),
            Formula::G(a) | Formula::H(a) => a.allowed_in(calc),
            // In the De Morgan system F and P are surface notation only;
            // parsed formulas never contain them.
            Formula::F(a) | Formula::P(a) => calc != CalculusId::LtDm && a.allowed_in(calc),
        }
    }
}

// Rendering levels mirror the grammar: implication < or < and < unary.
fn needs_parens(f: &Formula, slot: u8) -> bool {
    let level = match f {
        Formula::Imp(..) => 1,
        Formula::Or(..) => 2,
        Formula::And(..) => 3,
        _ => 4,
    };
    level < slot
}

fn render_into(f: &Formula, slot: u8, out: &mut String) {
    if needs_parens(f, slot) {
        out.push('(');
        render_into(f, 1, out);
        out.push(')');
        return;
    }
    match f {
        Formula::Top => out.push_str("top"),
        Formula::Bot => out.push_str("bot"),
        Formula::Var(v) => out.push_str(v),
        Formula::And(a, b) => {
            render_into(a, 3, out);
            out.push_str(" & ");
            render_into(b, 4, out);
        }
        Formula::Or(a, b) => {
            render_into(a, 2, out);
            out.push_str(" | ");
            render_into(b, 3, out);
        }
        Formula::Imp(a, b) => {
            render_into(a, 2, out);
            out.push_str(" -> ");
            render_into(b, 1, out);
        }
        Formula::Neg(a) | Formula::Tilde(a) => {
            out.push('~');
            render_unary_arg(a, out);
        }
        Formula::G(a) => {
            out.push('G');
            render_unary_arg(a, out);
        }
        Formula::H(a) => {
            out.push('H');
            render_unary_arg(a, out);
        }
        Formula::F(a) => {
            out.push('F');
            render_unary_arg(a, out);
        }
        Formula::P(a) => {
            out.push('P');
            render_unary_arg(a, out);
        }
    }
}

fn render_unary_arg(a: &Formula, out: &mut String) {
    out.push(' ');
    render_into(a, 4, out);
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        render_into(self, 1, &mut s);
        write!(f, "{s}")
    }
}

/// A sequent with set-valued sides: duplicates collapse and order is
/// irrelevant, so contraction and exchange are built in.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sequent {
    pub left: BTreeSet<Formula>,
    pub right: BTreeSet<Formula>,
}

impl Sequent {
    pub fn new(
        left: impl IntoIterator<Item = Formula>,
        right: impl IntoIterator<Item = Formula>,
    ) -> Sequent {
        Sequent {
            left: left.into_iter().collect(),
            right: right.into_iter().collect(),
        }
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for f in self.left.iter().chain(self.right.iter()) {
            f.collect_variables(&mut out);
        }
        out
    }

    pub fn allowed_in(&self, calc: CalculusId) -> bool {
        self.left
            .iter()
            .chain(self.right.iter())
            .all(|f| f.allowed_in(calc))
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |s: &BTreeSet<Formula>| {
            s.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        let l = side(&self.left);
        let r = side(&self.right);
        match (l.is_empty(), r.is_empty()) {
            (true, true) => write!(f, "=>"),
            (true, false) => write!(f, "=> {r}"),
            (false, true) => write!(f, "{l} =>"),
            (false, false) => write!(f, "{l} => {r}"),
        }
    }
}
