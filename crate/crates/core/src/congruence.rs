//! Congruences of tense distributive lattice algebras.
//!
//! Two independent routes are both first class: the dual-side route through
//! closed tPS-sets of the prime filter space (`congruence_lattice`), and a
//! direct brute-force closure of principal congruences
//! (`congruences_bruteforce`). Their agreement is an acceptance test, not an
//! assumption.

use thiserror::Error;

use crate::algebra::{
    all_tense_filters, all_tense_ideals, heyting_imp, is_tense_filter, is_tense_ideal, SizeLimit,
    TdlAlgebra,
};
use crate::duality::{AlgebraDual, TpsSpace};
use crate::order::{bits, full_mask, FiniteDistributiveLattice};

/// A partition of the carrier, stored as a block index per element and
/// normalized so block ids appear in first-use order. Congruences compare
/// equal iff they are the same partition.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Congruence {
    blocks: Vec<usize>,
}

impl Congruence {
    pub fn from_blocks(raw: &[usize]) -> Congruence {
        let mut map: Vec<Option<usize>> = vec![None; raw.len() + 1];
        let mut next = 0;
        let mut blocks = Vec::with_capacity(raw.len());
        for &b in raw {
            let id = *map[b].get_or_insert_with(|| {
                let id = next;
                next += 1;
                id
            });
            blocks.push(id);
        }
        Congruence { blocks }
    }

    pub fn identity(n: usize) -> Congruence {
        Congruence {
            blocks: (0..n).collect(),
        }
    }

    pub fn total(n: usize) -> Congruence {
        Congruence { blocks: vec![0; n] }
    }

    pub fn size(&self) -> usize {
        self.blocks.len()
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.blocks[a] == self.blocks[b]
    }

    pub fn block_count(&self) -> usize {
        self.blocks.iter().copied().max().map_or(0, |m| m + 1)
    }

    pub fn is_identity(&self) -> bool {
        self.block_count() == self.size()
    }

    pub fn is_total(&self) -> bool {
        self.block_count() <= 1
    }

    /// `self` refines `other`: every block of `self` sits inside a block of
    /// `other` (i.e. self, as a relation, is contained in other).
    pub fn refines(&self, other: &Congruence) -> bool {
        for a in 0..self.size() {
            for b in (a + 1)..self.size() {
                if self.same(a, b) && !other.same(a, b) {
                    return false;
                }
            }
        }
        true
    }

    fn merge(&mut self, a: usize, b: usize) -> bool {
        let (x, y) = (self.blocks[a], self.blocks[b]);
        if x == y {
            return false;
        }
        let (keep, drop) = (x.min(y), x.max(y));
        for v in self.blocks.iter_mut() {
            if *v == drop {
                *v = keep;
            }
        }
        true
    }

    fn normalized(&self) -> Congruence {
        Congruence::from_blocks(&self.blocks)
    }
}

/// Compatibility with the six operations: the block of a result depends
/// only on the blocks of the arguments.
pub fn is_congruence(a: &TdlAlgebra, c: &Congruence) -> bool {
    let l = a.lattice();
    let n = a.size();
    for x in 0..n {
        for y in 0..n {
            if !c.same(x, y) {
                continue;
            }
            if !c.same(a.g(x), a.g(y))
                || !c.same(a.h(x), a.h(y))
                || !c.same(a.f(x), a.f(y))
                || !c.same(a.p(x), a.p(y))
            {
                return false;
            }
            for z in 0..n {
                if !c.same(l.meet(x, z), l.meet(y, z)) || !c.same(l.join(x, z), l.join(y, z)) {
                    return false;
                }
            }
        }
    }
    true
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("subset {0:#b} is not a tPS-set")]
pub struct NotTpsSet(pub u64);

/// Verdict of the two tPS-set clauses with the first failing pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TpsSubsetReport {
    pub subset: u64,
    pub is_tps: bool,
    /// `(x, y, clause)` for the first violated instance.
    pub witness: Option<(usize, usize, &'static str)>,
}

/// tc1: whenever `x` lies in `R^{-1}(y)` and in `Y`, some members of
/// `R(x) n Y` bracket `y` from below and above; tc2 is the mirror image
/// through the inverse relation.
pub fn is_tps_subset(space: &TpsSpace, y_set: u64) -> TpsSubsetReport {
    let n = space.size();
    let poset = space.poset();
    let bracket = |candidates: u64, y: usize| -> bool {
        let mut below = false;
        let mut above = false;
        for w in bits(candidates) {
            below |= poset.leq(w, y);
            above |= poset.leq(y, w);
        }
        below && above
    };
    let mut witness = None;
    'outer: for x in 0..n {
        if y_set & (1 << x) == 0 {
            continue;
        }
        for y in 0..n {
            if space.rinv()[y] & (1 << x) != 0 && !bracket(space.r()[x] & y_set, y) {
                // x in R^{-1}(y) means y in R(x)'s source sense: (x, y) in R.
                witness = Some((x, y, "tc1"));
                break 'outer;
            }
            if space.r()[y] & (1 << x) != 0 && !bracket(space.rinv()[x] & y_set, y) {
                witness = Some((x, y, "tc2"));
                break 'outer;
            }
        }
    }
    let is_tps = witness.is_none();
    // Order-closed subsets admit equational reformulations; keep the two
    // routes in agreement.
    if poset.is_up_set(y_set) || poset.is_down_set(y_set) {
        let gh = space.box_future(y_set) & y_set & space.box_past(y_set) == y_set;
        let fp = space.diamond_future(y_set) | y_set | space.diamond_past(y_set) == y_set;
        debug_assert_eq!(is_tps, gh);
        debug_assert_eq!(is_tps, fp);
    }
    TpsSubsetReport {
        subset: y_set,
        is_tps,
        witness,
    }
}

/// All tPS-sets of the space in ascending mask order (every subset is
/// closed in the finite discrete topology).
pub fn all_tps_subsets(space: &TpsSpace) -> Result<Vec<u64>, SizeLimit> {
    if space.size() > 20 {
        return Err(SizeLimit {
            size: space.size(),
            max: 20,
        });
    }
    Ok((0..=full_mask(space.size()))
        .filter(|&y| is_tps_subset(space, y).is_tps)
        .collect())
}

pub fn upward_tps_subsets(space: &TpsSpace) -> Result<Vec<u64>, SizeLimit> {
    Ok(all_tps_subsets(space)?
        .into_iter()
        .filter(|&y| space.poset().is_up_set(y))
        .collect())
}

pub fn downward_tps_subsets(space: &TpsSpace) -> Result<Vec<u64>, SizeLimit> {
    Ok(all_tps_subsets(space)?
        .into_iter()
        .filter(|&y| space.poset().is_down_set(y))
        .collect())
}

/// `Theta(Y)`: identify elements whose sigma-images agree on `Y`. Requires
/// `Y` to be a tPS-set of the dual space.
pub fn congruence_from_subset(
    a: &TdlAlgebra,
    dual: &AlgebraDual,
    y_set: u64,
) -> Result<Congruence, NotTpsSet> {
    if !is_tps_subset(&dual.space, y_set).is_tps {
        return Err(NotTpsSet(y_set));
    }
    let classes: Vec<u64> = dual.sigma.iter().map(|&s| s & y_set).collect();
    let mut raw = vec![0usize; a.size()];
    let mut reps: Vec<u64> = Vec::new();
    for (x, &c) in classes.iter().enumerate() {
        let id = match reps.iter().position(|&r| r == c) {
            Some(i) => i,
            None => {
                reps.push(c);
                reps.len() - 1
            }
        };
        raw[x] = id;
    }
    let cong = Congruence::from_blocks(&raw);
    debug_assert!(is_congruence(a, &cong));
    Ok(cong)
}

/// The congruence lattice computed from the dual side: `Theta(Y)` for every
/// closed tPS-set `Y`. The map is verified to be an order-reversing
/// bijection from `(C_t, subset)` onto the result.
pub fn congruence_lattice(a: &TdlAlgebra, dual: &AlgebraDual) -> Result<Vec<Congruence>, SizeLimit> {
    if a.size() > 10 {
        return Err(SizeLimit {
            size: a.size(),
            max: 10,
        });
    }
    let subsets = all_tps_subsets(&dual.space)?;
    let congs: Vec<Congruence> = subsets
        .iter()
        .map(|&y| congruence_from_subset(a, dual, y).expect("member of C_t"))
        .collect();
    for (i, yi) in subsets.iter().enumerate() {
        for (j, yj) in subsets.iter().enumerate() {
            let included = yi & !yj == 0;
            assert_eq!(
                included,
                congs[j].refines(&congs[i]),
                "Theta is not an anti-isomorphism"
            );
            if i != j {
                assert_ne!(congs[i], congs[j], "Theta is not injective");
            }
        }
    }
    let mut sorted = congs;
    sorted.sort();
    Ok(sorted)
}

/// Least congruence relating `x` and `y`: merge them and close under the
/// six operations.
pub fn principal_congruence(a: &TdlAlgebra, x: usize, y: usize) -> Congruence {
    let mut c = Congruence::identity(a.size());
    c.merge(x, y);
    close_under_operations(a, &mut c);
    c.normalized()
}

fn close_under_operations(a: &TdlAlgebra, c: &mut Congruence) {
    let l = a.lattice();
    let n = a.size();
    loop {
        let mut changed = false;
        for x in 0..n {
            for y in (x + 1)..n {
                if !c.same(x, y) {
                    continue;
                }
                changed |= c.merge(a.g(x), a.g(y));
                changed |= c.merge(a.h(x), a.h(y));
                changed |= c.merge(a.f(x), a.f(y));
                changed |= c.merge(a.p(x), a.p(y));
                for z in 0..n {
                    changed |= c.merge(l.meet(x, z), l.meet(y, z));
                    changed |= c.merge(l.join(x, z), l.join(y, z));
                }
            }
        }
        if !changed {
            return;
        }
    }
}

/// Join in the congruence lattice: union of the relations, closed back up.
pub fn join_congruences(a: &TdlAlgebra, c1: &Congruence, c2: &Congruence) -> Congruence {
    let mut c = c1.clone();
    for x in 0..a.size() {
        for y in (x + 1)..a.size() {
            if c2.same(x, y) {
                c.merge(x, y);
            }
        }
    }
    close_under_operations(a, &mut c);
    c.normalized()
}

/// Independent oracle: generate every principal congruence, then close the
/// set under pairwise joins. Deterministic output in sorted partition
/// order.
pub fn congruences_bruteforce(a: &TdlAlgebra) -> Result<Vec<Congruence>, SizeLimit> {
    if a.size() > 8 {
        return Err(SizeLimit {
            size: a.size(),
            max: 8,
        });
    }
    let n = a.size();
    let mut set: Vec<Congruence> = vec![Congruence::identity(n)];
    for x in 0..n {
        for y in (x + 1)..n {
            let c = principal_congruence(a, x, y);
            if !set.contains(&c) {
                set.push(c);
            }
        }
    }
    loop {
        let mut added = false;
        let snapshot = set.clone();
        for c1 in &snapshot {
            for c2 in &snapshot {
                let j = join_congruences(a, c1, c2);
                if !set.contains(&j) {
                    set.push(j);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    set.sort();
    Ok(set)
}

/// `sigma(S) = {T in X(A) : S subset of T}` as a point mask.
pub fn sigma_of_filter(dual: &AlgebraDual, s: u64) -> u64 {
    dual.points
        .iter()
        .enumerate()
        .filter(|(_, &t)| s & !t == 0)
        .fold(0, |m, (i, _)| m | (1 << i))
}

/// `rho(Y)`: intersection of the prime filters in the up-closed point set.
pub fn rho_of_upset(a: &TdlAlgebra, dual: &AlgebraDual, y: u64) -> u64 {
    bits(y).fold(full_mask(a.size()), |acc, i| acc & dual.points[i])
}

/// `sigma(I) = {T : T n I = empty}` for a tense ideal.
pub fn sigma_of_ideal(dual: &AlgebraDual, i_set: u64) -> u64 {
    dual.points
        .iter()
        .enumerate()
        .filter(|(_, &t)| t & i_set == 0)
        .fold(0, |m, (i, _)| m | (1 << i))
}

/// `rho(Z)`: complement of the union of the prime filters in the
/// down-closed point set.
pub fn rho_of_downset(a: &TdlAlgebra, dual: &AlgebraDual, z: u64) -> u64 {
    let union = bits(z).fold(0u64, |acc, i| acc | dual.points[i]);
    full_mask(a.size()) & !union
}

/// `Theta_S`: relate `a` and `b` when `a ^ s = b ^ s` for some member `s`.
pub fn filter_congruence(a: &TdlAlgebra, s: u64) -> Result<Congruence, crate::algebra::FilterError> {
    if !is_tense_filter(a, s) {
        return Err(crate::algebra::FilterError::NotTenseFilter);
    }
    let l = a.lattice();
    let n = a.size();
    let mut c = Congruence::identity(n);
    for x in 0..n {
        for y in (x + 1)..n {
            if bits(s).any(|m| l.meet(x, m) == l.meet(y, m)) {
                c.merge(x, y);
            }
        }
    }
    let c = c.normalized();
    debug_assert!(is_congruence(a, &c));
    Ok(c)
}

/// `Theta_I`: relate `a` and `b` when `a v i = b v i` for some member `i`.
pub fn ideal_congruence(a: &TdlAlgebra, i_set: u64) -> Result<Congruence, crate::algebra::FilterError> {
    if !is_tense_ideal(a, i_set) {
        return Err(crate::algebra::FilterError::NotTenseIdeal);
    }
    let l = a.lattice();
    let n = a.size();
    let mut c = Congruence::identity(n);
    for x in 0..n {
        for y in (x + 1)..n {
            if bits(i_set).any(|m| l.join(x, m) == l.join(y, m)) {
                c.merge(x, y);
            }
        }
    }
    let c = c.normalized();
    debug_assert!(is_congruence(a, &c));
    Ok(c)
}

/// Simplicity verdict together with the evidence the decision rests on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicityReport {
    pub simple: bool,
    /// The fast necessary condition `A^d = {0,1}` failed, settling the
    /// verdict without computing tPS-sets.
    pub precheck_fired: bool,
    /// Every element outside the bounds is driven to 0 by iterated d and
    /// to 1 by iterated d-hat.
    pub clause_b: bool,
    /// The only tense filters are the trivial ones, likewise for ideals.
    pub clause_c: bool,
    /// `A^d = {0, 1}`.
    pub clause_d: bool,
    pub tps_set_count: usize,
}

pub fn is_simple(a: &TdlAlgebra, dual: &AlgebraDual) -> SimplicityReport {
    let l = a.lattice();
    let bounds = (1u64 << l.bottom()) | (1 << l.top());
    let clause_d = a.d_invariants() == bounds;
    let clause_b = (0..a.size())
        .filter(|&x| bounds & (1 << x) == 0)
        .all(|x| a.d_fix(x) == l.bottom() && a.dhat_fix(x) == l.top());
    let clause_c = {
        let filters = all_tense_filters(a);
        let ideals = all_tense_ideals(a);
        let full = full_mask(a.size());
        filters == sorted2(1 << l.top(), full) && ideals == sorted2(1 << l.bottom(), full)
    };
    let (simple, precheck_fired, count) = if !clause_d {
        (false, true, 0)
    } else {
        let subsets = all_tps_subsets(&dual.space).expect("dual space within size bound");
        let full = full_mask(dual.points.len());
        let simple = subsets.len() == 2 && subsets == vec![0, full];
        (simple, false, subsets.len())
    };
    SimplicityReport {
        simple,
        precheck_fired,
        clause_b,
        clause_c,
        clause_d,
        tps_set_count: count,
    }
}

fn sorted2(a: u64, b: u64) -> Vec<u64> {
    let mut v = vec![a, b];
    v.sort_unstable();
    v.dedup();
    v
}

/// Subdirect irreducibility: a greatest proper closed tPS-set `Z` exists;
/// the monolith is `Theta(Z)`. Both sides of the witness are returned.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiReport {
    pub si: bool,
    /// The greatest proper tPS-set, when it exists.
    pub monolith_subset: Option<u64>,
    pub monolith: Option<Congruence>,
    /// Number of maximal proper tPS-sets; SI requires exactly one that
    /// dominates all others.
    pub maximal_proper: usize,
}

pub fn is_subdirectly_irreducible(a: &TdlAlgebra, dual: &AlgebraDual) -> SiReport {
    let subsets = all_tps_subsets(&dual.space).expect("dual space within size bound");
    let full = full_mask(dual.points.len());
    let proper: Vec<u64> = subsets.into_iter().filter(|&y| y != full).collect();
    // Greatest element: contains every other proper tPS-set.
    let greatest = proper
        .iter()
        .copied()
        .find(|&z| proper.iter().all(|&y| y & !z == 0));
    let maximal_count = proper
        .iter()
        .filter(|&&y| proper.iter().all(|&z| z == y || z & !y != 0))
        .count();
    match greatest {
        Some(z) => SiReport {
            si: true,
            monolith_subset: Some(z),
            monolith: Some(congruence_from_subset(a, dual, z).expect("member of C_t")),
            maximal_proper: maximal_count,
        },
        None => SiReport {
            si: false,
            monolith_subset: None,
            monolith: None,
            maximal_proper: maximal_count,
        },
    }
}

/// Congruences of a finite Heyting algebra (meet, join, relative
/// pseudocomplement): principal closure plus joins, like the tense case.
pub fn heyting_congruences(l: &FiniteDistributiveLattice) -> Vec<Congruence> {
    let n = l.size();
    let close = |c: &mut Congruence| loop {
        let mut changed = false;
        for x in 0..n {
            for y in (x + 1)..n {
                if !c.same(x, y) {
                    continue;
                }
                for z in 0..n {
                    changed |= c.merge(l.meet(x, z), l.meet(y, z));
                    changed |= c.merge(l.join(x, z), l.join(y, z));
                    changed |= c.merge(heyting_imp(l, x, z), heyting_imp(l, y, z));
                    changed |= c.merge(heyting_imp(l, z, x), heyting_imp(l, z, y));
                }
            }
        }
        if !changed {
            break;
        }
    };
    let mut set: Vec<Congruence> = vec![Congruence::identity(n)];
    for x in 0..n {
        for y in (x + 1)..n {
            let mut c = Congruence::identity(n);
            c.merge(x, y);
            close(&mut c);
            let c = c.normalized();
            if !set.contains(&c) {
                set.push(c);
            }
        }
    }
    loop {
        let mut added = false;
        let snapshot = set.clone();
        for c1 in &snapshot {
            for c2 in &snapshot {
                let mut j = c1.clone();
                for x in 0..n {
                    for y in (x + 1)..n {
                        if c2.same(x, y) {
                            j.merge(x, y);
                        }
                    }
                }
                close(&mut j);
                let j = j.normalized();
                if !set.contains(&j) {
                    set.push(j);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    set.sort();
    set
}

/// Congruences compatible with the Heyting implication on top of the six
/// tense-lattice operations. This is the congruence notion for tense
/// structures over Heyting carriers.
pub fn heyting_tense_congruences(a: &TdlAlgebra) -> Vec<Congruence> {
    let l = a.lattice();
    let n = a.size();
    let imp = crate::algebra::heyting_implication(l);
    let close = |c: &mut Congruence| loop {
        let mut changed = false;
        for x in 0..n {
            for y in (x + 1)..n {
                if !c.same(x, y) {
                    continue;
                }
                changed |= c.merge(a.g(x), a.g(y));
                changed |= c.merge(a.h(x), a.h(y));
                changed |= c.merge(a.f(x), a.f(y));
                changed |= c.merge(a.p(x), a.p(y));
                for z in 0..n {
                    changed |= c.merge(l.meet(x, z), l.meet(y, z));
                    changed |= c.merge(l.join(x, z), l.join(y, z));
                    changed |= c.merge(imp[x * n + z], imp[y * n + z]);
                    changed |= c.merge(imp[z * n + x], imp[z * n + y]);
                }
            }
        }
        if !changed {
            break;
        }
    };
    let mut set: Vec<Congruence> = vec![Congruence::identity(n)];
    for x in 0..n {
        for y in (x + 1)..n {
            let mut c = Congruence::identity(n);
            c.merge(x, y);
            close(&mut c);
            let c = c.normalized();
            if !set.contains(&c) {
                set.push(c);
            }
        }
    }
    loop {
        let mut added = false;
        let snapshot = set.clone();
        for c1 in &snapshot {
            for c2 in &snapshot {
                let mut j = c1.clone();
                for x in 0..n {
                    for y in (x + 1)..n {
                        if c2.same(x, y) {
                            j.merge(x, y);
                        }
                    }
                }
                close(&mut j);
                let j = j.normalized();
                if !set.contains(&j) {
                    set.push(j);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    set.sort();
    set
}

/// Unique minimal nontrivial congruence exists.
pub fn si_from_congruences(congs: &[Congruence]) -> bool {
    let nontrivial: Vec<&Congruence> = congs.iter().filter(|c| !c.is_identity()).collect();
    nontrivial
        .iter()
        .any(|m| nontrivial.iter().all(|c| m.refines(c)))
        && !nontrivial.is_empty()
}

/// Boolean-case simplicity equivalences: each clause computed
/// independently; they agree on every tense algebra over a Boolean carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanCaseReport {
    pub simple: bool,
    /// Every non-top element is sent to 0 by some d-iterate.
    pub simple_by_d: bool,
    /// Only trivial tense filters and ideals.
    pub simple_by_filters: bool,
    pub si: bool,
    /// Some non-top bound dominates a d-iterate of every non-top element.
    pub si_by_d: bool,
}

/// Heyting-case subdirect irreducibility equivalences.
///
/// Over a Heyting carrier the congruences in play are the ones compatible
/// with the implication as well (the congruence lattice of a Heyting
/// algebra is its filter lattice); plain lattice-signature SI is a strictly
/// weaker notion, e.g. the identity structure on the 3-chain is SI here
/// but not in the bare signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeytingCaseReport {
    /// SI with respect to congruences compatible with meet, join, the
    /// Heyting implication and the four tense operators.
    pub si: bool,
    /// `A^d` minus the top has a greatest element.
    pub si_by_greatest_invariant: bool,
    /// `A^d` is a subdirectly irreducible Heyting algebra.
    pub si_by_heyting_congruences: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeMorganCaseReport {
    /// `g(S) = {x : ~x not in S}` as a point index map.
    pub g_map: Vec<usize>,
    /// `(S,T) in R` implies `(g(S), g(T)) in R`.
    pub r_preserved: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubclassReport {
    pub boolean: Option<BooleanCaseReport>,
    pub heyting: HeytingCaseReport,
    pub demorgan: Option<DeMorganCaseReport>,
}

pub fn subclass_reports(a: &TdlAlgebra, dual: &AlgebraDual) -> SubclassReport {
    let l = a.lattice();
    let simple_report = is_simple(a, dual);
    let si_report = is_subdirectly_irreducible(a, dual);

    let boolean = crate::algebra::classify(a)
        .map(|c| c.boolean)
        .unwrap_or(false)
        .then(|| {
            let top = l.top();
            let simple_by_d = (0..a.size())
                .filter(|&x| x != top)
                .all(|x| a.d_fix(x) == l.bottom());
            let si_by_d = (0..a.size()).filter(|&b| b != top).any(|b| {
                (0..a.size())
                    .filter(|&x| x != top)
                    .all(|x| l.leq(a.d_fix(x), b))
            });
            BooleanCaseReport {
                simple: simple_report.simple,
                simple_by_d,
                simple_by_filters: simple_report.clause_c,
                si: si_report.si,
                si_by_d,
            }
        });

    let inv = a.d_invariants();
    let non_top: Vec<usize> = bits(inv).filter(|&x| x != l.top()).collect();
    let si_by_greatest_invariant = non_top
        .iter()
        .any(|&u| non_top.iter().all(|&x| l.leq(x, u)));
    let (sub, _) = l.sublattice(inv);
    let si_by_heyting_congruences = si_from_congruences(&heyting_congruences(&sub));
    let heyting = HeytingCaseReport {
        si: si_from_congruences(&heyting_tense_congruences(a)),
        si_by_greatest_invariant,
        si_by_heyting_congruences,
    };

    let demorgan = a.neg_table().map(|neg| {
        let g_map: Vec<usize> = dual
            .points
            .iter()
            .map(|&s| {
                let image: u64 = (0..a.size())
                    .filter(|&x| s & (1 << neg[x]) == 0)
                    .fold(0, |m, x| m | (1 << x));
                dual.points
                    .iter()
                    .position(|&p| p == image)
                    .expect("g image of a prime filter is prime")
            })
            .collect();
        let n = dual.points.len();
        let mut r_preserved = true;
        for s in 0..n {
            for t in 0..n {
                if dual.space.r()[s] & (1 << t) != 0
                    && dual.space.r()[g_map[s]] & (1 << g_map[t]) == 0
                {
                    r_preserved = false;
                }
            }
        }
        DeMorganCaseReport { g_map, r_preserved }
    });

    SubclassReport {
        boolean,
        heyting,
        demorgan,
    }
}
