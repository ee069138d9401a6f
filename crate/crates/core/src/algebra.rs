//! Tense distributive lattice algebras.
//!
//! A `TdlAlgebra` is a finite bounded distributive lattice carrying four
//! unary operator tables G, H, F, P subject to the axioms t1-t8:
//!
//! - t1: `G1 = 1`, `H1 = 1`
//! - t2: `G(x^y) = Gx^Gy`, `H(x^y) = Hx^Hy`
//! - t3: `x <= GPx`, `x <= HFx`
//! - t4: `G(xvy) <= Gx v Fy`, `H(xvy) <= Hx v Py`
//! - t5: `F0 = 0`, `P0 = 0`
//! - t6: `F(xvy) = Fx v Fy`, `P(xvy) = Px v Py`
//! - t7: `PGx <= x`, `FHx <= x`
//! - t8: `Gx^Fy <= F(x^y)`, `Hx^Py <= P(x^y)`
//!
//! P is left adjoint to G and F is left adjoint to H, which is what makes
//! the operator pairs recoverable from G and H alone.

use std::fmt;

use thiserror::Error;

use crate::order::{bits, full_mask, FiniteDistributiveLattice};

pub type OperatorTable = Vec<usize>;

/// One axiom instance that can fail, each with its witness arity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    T1G,
    T1H,
    T2G,
    T2H,
    T3G,
    T3H,
    T4G,
    T4H,
    T5F,
    T5P,
    T6F,
    T6P,
    T7PG,
    T7FH,
    T8GF,
    T8HP,
    // Extra laws used by the alternative axiomatizations.
    T9G,
    T9H,
    T9F,
    T9P,
    T16,
    T17,
}

impl Axiom {
    pub fn tag(self) -> &'static str {
        use Axiom::*;
        match self {
            T1G | T1H => "t1",
            T2G | T2H => "t2",
            T3G | T3H => "t3",
            T4G | T4H => "t4",
            T5F | T5P => "t5",
            T6F | T6P => "t6",
            T7PG | T7FH => "t7",
            T8GF | T8HP => "t8",
            T9G | T9H | T9F | T9P => "t9",
            T16 => "t16",
            T17 => "t17",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.axiom.tag())?;
        if !self.witness.is_empty() {
            let w: Vec<String> = self.witness.iter().map(|x| x.to_string()).collect();
            write!(f, " at ({})", w.join(","))?;
        }
        Ok(())
    }
}

/// Outcome of validating operator tables: every violated axiom instance,
/// each with its lexicographically first witness.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "all axioms hold");
        }
        let items: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", items.join("; "))
    }
}

impl std::error::Error for AxiomReport {}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AdjointError {
    #[error("no adjoint value exists at element {0}")]
    NoAdjoint(usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FilterError {
    #[error("generator set is empty")]
    EmptyGenerator,
    #[error("subset is not a tense filter")]
    NotTenseFilter,
    #[error("subset is not a tense ideal")]
    NotTenseIdeal,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("carrier of size {size} exceeds the enumeration bound {max}")]
pub struct SizeLimit {
    pub size: usize,
    pub max: usize,
}

/// Which De Morgan law a supplied negation table breaks.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum DeMorganViolation {
    #[error("negation is not an involution at {0}")]
    Involution(usize),
    #[error("~(x v y) = ~x ^ ~y fails at ({0},{1})")]
    DeMorganLaw(usize, usize),
    #[error("F = ~G~ fails at {0}")]
    FutureDef(usize),
    #[error("P = ~H~ fails at {0}")]
    PastDef(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TdlAlgebra {
    lattice: FiniteDistributiveLattice,
    g: OperatorTable,
    h: OperatorTable,
    f: OperatorTable,
    p: OperatorTable,
    neg: Option<OperatorTable>,
}

impl TdlAlgebra {
    /// Validate the four tables against t1-t8 and assemble the algebra.
    /// On failure the report lists every violated axiom instance with its
    /// lexicographically first witness.
    pub fn new(
        lattice: FiniteDistributiveLattice,
        g: OperatorTable,
        h: OperatorTable,
        f: OperatorTable,
        p: OperatorTable,
    ) -> Result<Self, AxiomReport> {
        let n = lattice.size();
        assert!(
            g.len() == n && h.len() == n && f.len() == n && p.len() == n,
            "operator tables must be total on the carrier"
        );
        let violations = axiom_violations(&lattice, &g, &h, &f, &p);
        if violations.is_empty() {
            Ok(TdlAlgebra {
                lattice,
                g,
                h,
                f,
                p,
                neg: None,
            })
        } else {
            Err(AxiomReport { violations })
        }
    }

    /// Assemble without validation. Used for enumeration output (already
    /// filtered) and for building deliberately broken structures in tests.
    pub fn new_unchecked(
        lattice: FiniteDistributiveLattice,
        g: OperatorTable,
        h: OperatorTable,
        f: OperatorTable,
        p: OperatorTable,
    ) -> Self {
        TdlAlgebra {
            lattice,
            g,
            h,
            f,
            p,
            neg: None,
        }
    }

    /// Attach a De Morgan negation table. Its laws are verified by
    /// [`classify`], which is where a bad table is reported.
    pub fn with_neg(mut self, neg: OperatorTable) -> Self {
        assert!(neg.len() == self.size());
        self.neg = Some(neg);
        self
    }

    pub fn lattice(&self) -> &FiniteDistributiveLattice {
        &self.lattice
    }

    pub fn size(&self) -> usize {
        self.lattice.size()
    }

    pub fn g(&self, x: usize) -> usize {
        self.g[x]
    }

    pub fn h(&self, x: usize) -> usize {
        self.h[x]
    }

    pub fn f(&self, x: usize) -> usize {
        self.f[x]
    }

    pub fn p(&self, x: usize) -> usize {
        self.p[x]
    }

    pub fn g_table(&self) -> &[usize] {
        &self.g
    }

    pub fn h_table(&self) -> &[usize] {
        &self.h
    }

    pub fn f_table(&self) -> &[usize] {
        &self.f
    }

    pub fn p_table(&self) -> &[usize] {
        &self.p
    }

    pub fn neg_table(&self) -> Option<&[usize]> {
        self.neg.as_deref()
    }

    /// Re-run the t1-t8 validation on the stored tables.
    pub fn axiom_report(&self) -> AxiomReport {
        AxiomReport {
            violations: axiom_violations(&self.lattice, &self.g, &self.h, &self.f, &self.p),
        }
    }

    /// `dx = Gx ^ x ^ Hx`.
    pub fn d(&self, x: usize) -> usize {
        let l = &self.lattice;
        l.meet(l.meet(self.g[x], x), self.h[x])
    }

    /// `d^hat x = Fx v x v Px`.
    pub fn dhat(&self, x: usize) -> usize {
        let l = &self.lattice;
        l.join(l.join(self.f[x], x), self.p[x])
    }

    pub fn d_iter(&self, x: usize, n: usize) -> usize {
        (0..n).fold(x, |acc, _| self.d(acc))
    }

    pub fn dhat_iter(&self, x: usize, n: usize) -> usize {
        (0..n).fold(x, |acc, _| self.dhat(acc))
    }

    /// The limit of the decreasing sequence d^n x; reached within |A| steps
    /// on a finite carrier.
    pub fn d_fix(&self, x: usize) -> usize {
        let mut cur = x;
        loop {
            let next = self.d(cur);
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    pub fn dhat_fix(&self, x: usize) -> usize {
        let mut cur = x;
        loop {
            let next = self.dhat(cur);
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// `A^d = {x : dx = x}` as a mask. This set is always a 0,1-sublattice,
    /// and `dx = x` coincides with `d^hat x = x`.
    pub fn d_invariants(&self) -> u64 {
        let mut m = 0;
        for x in 0..self.size() {
            if self.d(x) == x {
                debug_assert_eq!(self.dhat(x), x);
                m |= 1 << x;
            }
        }
        debug_assert!(m & (1 << self.lattice.bottom()) != 0);
        debug_assert!(m & (1 << self.lattice.top()) != 0);
        m
    }
}

fn first_unary_witness(n: usize, mut bad: impl FnMut(usize) -> bool) -> Option<Vec<usize>> {
    (0..n).find(|&x| bad(x)).map(|x| vec![x])
}

fn first_binary_witness(n: usize, mut bad: impl FnMut(usize, usize) -> bool) -> Option<Vec<usize>> {
    for x in 0..n {
        for y in 0..n {
            if bad(x, y) {
                return Some(vec![x, y]);
            }
        }
    }
    None
}

/// Check t1-t8 on raw tables. Every violated axiom instance is reported with
/// its lexicographically first witness; the scan never stops early.
pub fn axiom_violations(
    l: &FiniteDistributiveLattice,
    g: &[usize],
    h: &[usize],
    f: &[usize],
    p: &[usize],
) -> Vec<AxiomViolation> {
    let n = l.size();
    let top = l.top();
    let bot = l.bottom();
    let mut out = Vec::new();
    let mut push = |axiom: Axiom, witness: Option<Vec<usize>>| {
        if let Some(witness) = witness {
            out.push(AxiomViolation { axiom, witness });
        }
    };

    push(Axiom::T1G, (g[top] != top).then(Vec::new));
    push(Axiom::T1H, (h[top] != top).then(Vec::new));
    push(
        Axiom::T2G,
        first_binary_witness(n, |x, y| g[l.meet(x, y)] != l.meet(g[x], g[y])),
    );
    push(
        Axiom::T2H,
        first_binary_witness(n, |x, y| h[l.meet(x, y)] != l.meet(h[x], h[y])),
    );
    push(Axiom::T3G, first_unary_witness(n, |x| !l.leq(x, g[p[x]])));
    push(Axiom::T3H, first_unary_witness(n, |x| !l.leq(x, h[f[x]])));
    push(
        Axiom::T4G,
        first_binary_witness(n, |x, y| !l.leq(g[l.join(x, y)], l.join(g[x], f[y]))),
    );
    push(
        Axiom::T4H,
        first_binary_witness(n, |x, y| !l.leq(h[l.join(x, y)], l.join(h[x], p[y]))),
    );
    push(Axiom::T5F, (f[bot] != bot).then(Vec::new));
    push(Axiom::T5P, (p[bot] != bot).then(Vec::new));
    push(
        Axiom::T6F,
        first_binary_witness(n, |x, y| f[l.join(x, y)] != l.join(f[x], f[y])),
    );
    push(
        Axiom::T6P,
        first_binary_witness(n, |x, y| p[l.join(x, y)] != l.join(p[x], p[y])),
    );
    push(Axiom::T7PG, first_unary_witness(n, |x| !l.leq(p[g[x]], x)));
    push(Axiom::T7FH, first_unary_witness(n, |x| !l.leq(f[h[x]], x)));
    push(
        Axiom::T8GF,
        first_binary_witness(n, |x, y| !l.leq(l.meet(g[x], f[y]), f[l.meet(x, y)])),
    );
    push(
        Axiom::T8HP,
        first_binary_witness(n, |x, y| !l.leq(l.meet(h[x], p[y]), p[l.meet(x, y)])),
    );
    out
}

/// The two alternative axiomatizations: (b) keeps t4, t8 and the two
/// adjunctions t16, t17; (c) keeps t4, t8, monotonicity, t3 and t7. Either
/// verdict agrees with the t1-t8 verdict on every structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxiomVariant {
    B,
    C,
}

pub fn check_alternative_axioms(a: &TdlAlgebra, variant: AxiomVariant) -> AxiomReport {
    let l = a.lattice();
    let n = a.size();
    let (g, h, f, p) = (&a.g, &a.h, &a.f, &a.p);
    let mut out = Vec::new();
    let mut push = |axiom: Axiom, witness: Option<Vec<usize>>| {
        if let Some(witness) = witness {
            out.push(AxiomViolation { axiom, witness });
        }
    };

    push(
        Axiom::T4G,
        first_binary_witness(n, |x, y| !l.leq(g[l.join(x, y)], l.join(g[x], f[y]))),
    );
    push(
        Axiom::T4H,
        first_binary_witness(n, |x, y| !l.leq(h[l.join(x, y)], l.join(h[x], p[y]))),
    );
    push(
        Axiom::T8GF,
        first_binary_witness(n, |x, y| !l.leq(l.meet(g[x], f[y]), f[l.meet(x, y)])),
    );
    push(
        Axiom::T8HP,
        first_binary_witness(n, |x, y| !l.leq(l.meet(h[x], p[y]), p[l.meet(x, y)])),
    );
    match variant {
        AxiomVariant::B => {
            push(
                Axiom::T16,
                first_binary_witness(n, |x, y| l.leq(p[x], y) != l.leq(x, g[y])),
            );
            push(
                Axiom::T17,
                first_binary_witness(n, |x, y| l.leq(f[x], y) != l.leq(x, h[y])),
            );
        }
        AxiomVariant::C => {
            for (axiom, t) in [
                (Axiom::T9G, g),
                (Axiom::T9H, h),
                (Axiom::T9F, f),
                (Axiom::T9P, p),
            ] {
                push(
                    axiom,
                    first_binary_witness(n, |x, y| l.leq(x, y) && !l.leq(t[x], t[y])),
                );
            }
            push(Axiom::T3G, first_unary_witness(n, |x| !l.leq(x, g[p[x]])));
            push(Axiom::T3H, first_unary_witness(n, |x| !l.leq(x, h[f[x]])));
            push(Axiom::T7PG, first_unary_witness(n, |x| !l.leq(p[g[x]], x)));
            push(Axiom::T7FH, first_unary_witness(n, |x| !l.leq(f[h[x]], x)));
        }
    }
    AxiomReport { violations: out }
}

/// Lattice filter generated by the elements of `gens`: the up-set of their
/// meet (the empty set generates the trivial filter `{top}`).
pub fn filter_generated(l: &FiniteDistributiveLattice, gens: u64) -> u64 {
    l.poset().up_set(l.meet_all(gens))
}

/// Lattice ideal generated by `gens`: the down-set of their join.
pub fn ideal_generated(l: &FiniteDistributiveLattice, gens: u64) -> u64 {
    l.poset().down_set(l.join_all(gens))
}

pub fn is_lattice_filter(l: &FiniteDistributiveLattice, s: u64) -> bool {
    if s == 0 || !l.poset().is_up_set(s) {
        return false;
    }
    for x in bits(s) {
        for y in bits(s) {
            if s & (1 << l.meet(x, y)) == 0 {
                return false;
            }
        }
    }
    true
}

pub fn is_lattice_ideal(l: &FiniteDistributiveLattice, s: u64) -> bool {
    if s == 0 || !l.poset().is_down_set(s) {
        return false;
    }
    for x in bits(s) {
        for y in bits(s) {
            if s & (1 << l.join(x, y)) == 0 {
                return false;
            }
        }
    }
    true
}

/// A tense filter is a lattice filter closed under G and H (equivalently
/// under d).
pub fn is_tense_filter(a: &TdlAlgebra, s: u64) -> bool {
    is_lattice_filter(a.lattice(), s)
        && bits(s).all(|x| s & (1 << a.g(x)) != 0 && s & (1 << a.h(x)) != 0)
}

/// A tense ideal is a lattice ideal closed under F and P (equivalently
/// under d^hat).
pub fn is_tense_ideal(a: &TdlAlgebra, s: u64) -> bool {
    is_lattice_ideal(a.lattice(), s)
        && bits(s).all(|x| s & (1 << a.f(x)) != 0 && s & (1 << a.p(x)) != 0)
}

/// Least tense filter containing `gens`: iterate the filters generated by
/// `d^p(gens)` until the increasing chain stabilizes, which happens within
/// |A| steps on a finite carrier.
pub fn generate_tense_filter(a: &TdlAlgebra, gens: u64) -> Result<u64, FilterError> {
    if gens == 0 {
        return Err(FilterError::EmptyGenerator);
    }
    let l = a.lattice();
    let mut stage: Vec<usize> = bits(gens).collect();
    let mut acc = filter_generated(l, gens);
    for _ in 0..a.size() {
        stage = stage.iter().map(|&x| a.d(x)).collect();
        let mask = stage.iter().fold(0u64, |m, &x| m | (1 << x));
        let next = acc | filter_generated(l, mask);
        if next == acc {
            break;
        }
        acc = next;
    }
    debug_assert!(is_tense_filter(a, acc));
    Ok(acc)
}

/// Least tense ideal containing `gens`; order dual of
/// [`generate_tense_filter`] using d^hat and joins.
pub fn generate_tense_ideal(a: &TdlAlgebra, gens: u64) -> Result<u64, FilterError> {
    if gens == 0 {
        return Err(FilterError::EmptyGenerator);
    }
    let l = a.lattice();
    let mut stage: Vec<usize> = bits(gens).collect();
    let mut acc = ideal_generated(l, gens);
    for _ in 0..a.size() {
        stage = stage.iter().map(|&x| a.dhat(x)).collect();
        let mask = stage.iter().fold(0u64, |m, &x| m | (1 << x));
        let next = acc | ideal_generated(l, mask);
        if next == acc {
            break;
        }
        acc = next;
    }
    debug_assert!(is_tense_ideal(a, acc));
    Ok(acc)
}

/// Every tense filter, in ascending mask order. On a finite carrier these
/// are exactly the principal filters of d-invariant elements, so the list
/// ordered by reverse inclusion is isomorphic to `A^d`.
pub fn all_tense_filters(a: &TdlAlgebra) -> Vec<u64> {
    let full = full_mask(a.size());
    let mut out: Vec<u64> = (0..=full)
        .filter(|&s| s != 0 && is_tense_filter(a, s))
        .collect();
    out.sort_unstable();
    out
}

pub fn all_tense_ideals(a: &TdlAlgebra) -> Vec<u64> {
    let full = full_mask(a.size());
    let mut out: Vec<u64> = (0..=full)
        .filter(|&s| s != 0 && is_tense_ideal(a, s))
        .collect();
    out.sort_unstable();
    out
}

/// The complement of `x` when it exists (unique in a distributive lattice).
pub fn complement(l: &FiniteDistributiveLattice, x: usize) -> Option<usize> {
    (0..l.size()).find(|&y| l.meet(x, y) == l.bottom() && l.join(x, y) == l.top())
}

/// The Boolean part `B(A)` of the algebra: the complemented elements, the
/// tense algebra they carry, and the old index of each new element. The
/// four operators always restrict to `B(A)`, where `F = -G-` and `P = -H-`.
pub fn boolean_elements(a: &TdlAlgebra) -> (u64, TdlAlgebra, Vec<usize>) {
    let l = a.lattice();
    let mask: u64 = (0..a.size())
        .filter(|&x| complement(l, x).is_some())
        .fold(0, |m, x| m | (1 << x));
    for x in bits(mask) {
        for (tag, t) in [("G", &a.g), ("H", &a.h), ("F", &a.f), ("P", &a.p)] {
            assert!(
                mask & (1 << t[x]) != 0,
                "{tag} does not restrict to the Boolean part"
            );
        }
        let nx = complement(l, x).unwrap();
        assert_eq!(a.f(x), complement(l, a.g(nx)).unwrap(), "F != -G- on B(A)");
        assert_eq!(a.p(x), complement(l, a.h(nx)).unwrap(), "P != -H- on B(A)");
    }
    let (sub, elems) = l.sublattice(mask);
    let reindex = |t: &[usize]| -> Vec<usize> {
        elems
            .iter()
            .map(|&old| elems.iter().position(|&e| e == t[old]).unwrap())
            .collect()
    };
    let restricted = TdlAlgebra::new(
        sub,
        reindex(&a.g),
        reindex(&a.h),
        reindex(&a.f),
        reindex(&a.p),
    )
    .expect("the Boolean part carries a tense algebra");
    (mask, restricted, elems)
}

/// Relative pseudocomplement `x -> y = max{z : z ^ x <= y}`, which always
/// exists in a finite distributive lattice.
pub fn heyting_imp(l: &FiniteDistributiveLattice, x: usize, y: usize) -> usize {
    let mut acc = l.bottom();
    for z in 0..l.size() {
        if l.leq(l.meet(z, x), y) {
            acc = l.join(acc, z);
        }
    }
    debug_assert!(l.leq(l.meet(acc, x), y));
    acc
}

/// Full implication table, row-major: entry `x * n + y` is `x -> y`.
pub fn heyting_implication(l: &FiniteDistributiveLattice) -> Vec<usize> {
    let n = l.size();
    let mut t = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            t[x * n + y] = heyting_imp(l, x, y);
        }
    }
    t
}

/// Subclass recognition: Boolean (complemented carrier, where F and P are
/// the classical duals of G and H), Heyting (automatic for a finite
/// distributive carrier), and De Morgan when a negation table is attached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassReport {
    pub boolean: bool,
    pub heyting: bool,
    pub demorgan: bool,
}

pub fn classify(a: &TdlAlgebra) -> Result<ClassReport, DeMorganViolation> {
    let l = a.lattice();
    let boolean = (0..a.size()).all(|x| complement(l, x).is_some());
    if boolean {
        for x in 0..a.size() {
            let nx = complement(l, x).unwrap();
            debug_assert_eq!(a.f(x), complement(l, a.g(nx)).unwrap());
            debug_assert_eq!(a.p(x), complement(l, a.h(nx)).unwrap());
        }
    }
    let demorgan = match &a.neg {
        None => false,
        Some(neg) => {
            validate_demorgan(l, neg, &a.g, &a.h, &a.f, &a.p)?;
            true
        }
    };
    Ok(ClassReport {
        boolean,
        heyting: true,
        demorgan,
    })
}

pub fn validate_demorgan(
    l: &FiniteDistributiveLattice,
    neg: &[usize],
    g: &[usize],
    h: &[usize],
    f: &[usize],
    p: &[usize],
) -> Result<(), DeMorganViolation> {
    let n = l.size();
    for x in 0..n {
        if neg[neg[x]] != x {
            return Err(DeMorganViolation::Involution(x));
        }
    }
    for x in 0..n {
        for y in 0..n {
            if neg[l.join(x, y)] != l.meet(neg[x], neg[y]) {
                return Err(DeMorganViolation::DeMorganLaw(x, y));
            }
        }
    }
    for x in 0..n {
        if f[x] != neg[g[neg[x]]] {
            return Err(DeMorganViolation::FutureDef(x));
        }
        if p[x] != neg[h[neg[x]]] {
            return Err(DeMorganViolation::PastDef(x));
        }
    }
    Ok(())
}

/// Left adjoint of `g`: the table `p` with `p[x] = min{y : x <= g[y]}`,
/// provided every minimum exists and the pair really satisfies
/// `p[x] <= y iff x <= g[y]` for all x, y.
pub fn left_adjoint(
    l: &FiniteDistributiveLattice,
    g: &[usize],
) -> Result<OperatorTable, AdjointError> {
    let n = l.size();
    let mut p = vec![0; n];
    for x in 0..n {
        let candidates: Vec<usize> = (0..n).filter(|&y| l.leq(x, g[y])).collect();
        let min = candidates
            .iter()
            .copied()
            .find(|&m| candidates.iter().all(|&y| l.leq(m, y)))
            .ok_or(AdjointError::NoAdjoint(x))?;
        p[x] = min;
    }
    for x in 0..n {
        for y in 0..n {
            if l.leq(p[x], y) != l.leq(x, g[y]) {
                return Err(AdjointError::NoAdjoint(x));
            }
        }
    }
    Ok(p)
}

/// All meet-preserving self-maps with `G(top) = top`, in ascending
/// lexicographic table order.
///
/// Such maps biject with monotone assignments on the meet-irreducible
/// elements: meet-irreducibles are meet-prime in a distributive lattice, so
/// the pointwise extension `G(x) = meet of g(m) over meet-irreducible
/// m >= x` preserves binary meets.
pub fn meet_preserving_maps(l: &FiniteDistributiveLattice) -> Vec<OperatorTable> {
    let mi: Vec<usize> = bits(l.meet_irreducibles()).collect();
    let mut assignment = vec![0usize; mi.len()];
    let mut out = Vec::new();
    fn rec(
        l: &FiniteDistributiveLattice,
        mi: &[usize],
        k: usize,
        assignment: &mut Vec<usize>,
        out: &mut Vec<OperatorTable>,
    ) {
        if k == mi.len() {
            let n = l.size();
            let mut table = vec![0usize; n];
            for (x, slot) in table.iter_mut().enumerate() {
                let mut acc = l.top();
                for (i, &m) in mi.iter().enumerate() {
                    if l.leq(x, m) {
                        acc = l.meet(acc, assignment[i]);
                    }
                }
                *slot = acc;
            }
            out.push(table);
            return;
        }
        for v in 0..l.size() {
            // Monotone on the meet-irreducible subposet.
            let ok = (0..k).all(|j| {
                (!l.leq(mi[j], mi[k]) || l.leq(assignment[j], v))
                    && (!l.leq(mi[k], mi[j]) || l.leq(v, assignment[j]))
            });
            if ok {
                assignment[k] = v;
                rec(l, mi, k + 1, assignment, out);
            }
        }
    }
    rec(l, &mi, 0, &mut assignment, &mut out);
    out.sort_unstable();
    out.dedup();
    out
}

/// Every tense structure on the lattice, in canonical (G table, H table)
/// lexicographic order. G and H range over the meet-preserving maps fixing
/// the top; P and F are forced as their left adjoints; candidates are kept
/// when t3, t4, t7 and t8 hold.
pub fn enumerate_tdl_algebras(
    l: &FiniteDistributiveLattice,
    max_size: usize,
) -> Result<Vec<TdlAlgebra>, SizeLimit> {
    if l.size() > max_size {
        return Err(SizeLimit {
            size: l.size(),
            max: max_size,
        });
    }
    let maps = meet_preserving_maps(l);
    let mut out = Vec::new();
    for g in &maps {
        let p = left_adjoint(l, g).expect("meet-preserving maps have left adjoints");
        for h in &maps {
            let f = left_adjoint(l, h).expect("meet-preserving maps have left adjoints");
            if tense_candidate_ok(l, g, h, &f, &p) {
                let a = TdlAlgebra::new_unchecked(l.clone(), g.clone(), h.clone(), f, p.clone());
                debug_assert!(a.axiom_report().passed());
                out.push(a);
            }
        }
    }
    Ok(out)
}

fn tense_candidate_ok(
    l: &FiniteDistributiveLattice,
    g: &[usize],
    h: &[usize],
    f: &[usize],
    p: &[usize],
) -> bool {
    let n = l.size();
    for x in 0..n {
        if !l.leq(x, g[p[x]]) || !l.leq(x, h[f[x]]) || !l.leq(p[g[x]], x) || !l.leq(f[h[x]], x) {
            return false;
        }
    }
    for x in 0..n {
        for y in 0..n {
            let j = l.join(x, y);
            if !l.leq(g[j], l.join(g[x], f[y])) || !l.leq(h[j], l.join(h[x], p[y])) {
                return false;
            }
            let m = l.meet(x, y);
            if !l.leq(l.meet(g[x], f[y]), f[m]) || !l.leq(l.meet(h[x], p[y]), p[m]) {
                return false;
            }
        }
    }
    true
}

/// All De Morgan negations on the lattice: involutive permutations turning
/// joins into meets.
pub fn demorgan_negations(l: &FiniteDistributiveLattice) -> Vec<OperatorTable> {
    let n = l.size();
    let mut out = Vec::new();
    let mut table = vec![usize::MAX; n];
    fn rec(
        l: &FiniteDistributiveLattice,
        k: usize,
        used: &mut Vec<bool>,
        table: &mut Vec<usize>,
        out: &mut Vec<OperatorTable>,
    ) {
        let n = l.size();
        if k == n {
            for x in 0..n {
                if table[table[x]] != x {
                    return;
                }
                for y in 0..n {
                    if table[l.join(x, y)] != l.meet(table[x], table[y]) {
                        return;
                    }
                }
            }
            out.push(table.clone());
            return;
        }
        for v in 0..n {
            if used[v] {
                continue;
            }
            // Antitone prune keeps the search shallow.
            let ok = (0..k).all(|j| {
                (!l.leq(j, k) || l.leq(v, table[j])) && (!l.leq(k, j) || l.leq(table[j], v))
            });
            if ok {
                used[v] = true;
                table[k] = v;
                rec(l, k + 1, used, table, out);
                used[v] = false;
            }
        }
    }
    let mut used = vec![false; n];
    rec(l, 0, &mut used, &mut table, &mut out);
    out.sort_unstable();
    out
}

/// Every De Morgan tense structure on the lattice: a negation plus
/// meet-preserving G and H with `F = ~G~` and `P = ~H~`, filtered by the
/// full axiom set. Canonical order by (negation, G, H).
pub fn enumerate_demorgan_algebras(
    l: &FiniteDistributiveLattice,
    max_size: usize,
) -> Result<Vec<TdlAlgebra>, SizeLimit> {
    if l.size() > max_size {
        return Err(SizeLimit {
            size: l.size(),
            max: max_size,
        });
    }
    let maps = meet_preserving_maps(l);
    let mut out = Vec::new();
    for neg in demorgan_negations(l) {
        for g in &maps {
            for h in &maps {
                let f: Vec<usize> = (0..l.size()).map(|x| neg[g[neg[x]]]).collect();
                let p: Vec<usize> = (0..l.size()).map(|x| neg[h[neg[x]]]).collect();
                if axiom_violations(l, g, h, &f, &p).is_empty() {
                    out.push(
                        TdlAlgebra::new_unchecked(l.clone(), g.clone(), h.clone(), f, p)
                            .with_neg(neg.clone()),
                    );
                }
            }
        }
    }
    Ok(out)
}
