//! The two finite dualities.
//!
//! On finite algebras the Priestley topology is discrete, so the dual space
//! of an algebra is just its poset of prime filters with the canonical
//! relation, clopen up-sets are all up-sets, and both the topological
//! round-trip (sigma/epsilon) and the discrete one (h/k) are honest
//! isomorphisms that this module produces as explicit index tables.

use std::fmt;

use thiserror::Error;

use crate::algebra::TdlAlgebra;
use crate::order::{bits, full_mask, up_set_lattice, FiniteDistributiveLattice, Poset};

/// `R(S)` for a relation given as successor masks per point.
pub fn rel_image(r: &[u64], s: u64) -> u64 {
    bits(s).fold(0, |acc, x| acc | r[x])
}

pub fn transpose(r: &[u64], n: usize) -> Vec<u64> {
    let mut t = vec![0u64; n];
    for x in 0..n {
        for y in bits(r[x]) {
            t[y] |= 1 << x;
        }
    }
    t
}

/// `{x : R(x) subset of Y}`, the box operator of the relation.
pub fn op_box(r: &[u64], n: usize, y: u64) -> u64 {
    (0..n).filter(|&x| r[x] & !y == 0).fold(0, |m, x| m | (1 << x))
}

/// `{x : R(x) meets Y}`, the diamond operator of the relation.
pub fn op_diamond(r: &[u64], n: usize, y: u64) -> u64 {
    (0..n).filter(|&x| r[x] & y != 0).fold(0, |m, x| m | (1 << x))
}

/// A finite tense Priestley space: a poset with a relation satisfying
/// tPS2 (`R(x)` is an order-interval of its own image) and tPS3 (the four
/// relational operators preserve up-sets). tPS1 is vacuous at finite scale.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TpsSpace {
    poset: Poset,
    r: Vec<u64>,
    rinv: Vec<u64>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TpsError {
    #[error("tPS2 fails at point {0}")]
    Interval(usize),
    #[error("tPS3 fails: {op} of up-set {upset:#b} is not an up-set")]
    NotUpSetClosed { op: &'static str, upset: u64 },
}

impl TpsSpace {
    pub fn new(poset: Poset, r: Vec<u64>) -> Result<Self, TpsError> {
        let n = poset.size();
        assert_eq!(r.len(), n);
        let rinv = transpose(&r, n);
        for x in 0..n {
            let up = poset.up_closure(r[x]);
            let down = poset.down_closure(r[x]);
            if r[x] != up & down {
                return Err(TpsError::Interval(x));
            }
        }
        let space = TpsSpace { poset, r, rinv };
        for u in space.poset.up_sets() {
            for (name, v) in [
                ("G", space.box_future(u)),
                ("H", space.box_past(u)),
                ("F", space.diamond_future(u)),
                ("P", space.diamond_past(u)),
            ] {
                if !space.poset.is_up_set(v) {
                    return Err(TpsError::NotUpSetClosed { op: name, upset: u });
                }
            }
        }
        Ok(space)
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn size(&self) -> usize {
        self.poset.size()
    }

    pub fn r(&self) -> &[u64] {
        &self.r
    }

    pub fn rinv(&self) -> &[u64] {
        &self.rinv
    }

    pub fn box_future(&self, y: u64) -> u64 {
        op_box(&self.r, self.size(), y)
    }

    pub fn box_past(&self, y: u64) -> u64 {
        op_box(&self.rinv, self.size(), y)
    }

    pub fn diamond_future(&self, y: u64) -> u64 {
        op_diamond(&self.r, self.size(), y)
    }

    pub fn diamond_past(&self, y: u64) -> u64 {
        op_diamond(&self.rinv, self.size(), y)
    }
}

/// Prime filters of the algebra: exactly the up-sets of join-irreducible
/// elements on a finite distributive carrier. Points are listed in
/// ascending mask order; `order` is inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeFilterSpace {
    pub points: Vec<u64>,
    pub order: Poset,
}

pub fn prime_filter_space(l: &FiniteDistributiveLattice) -> PrimeFilterSpace {
    let mut points: Vec<u64> = bits(l.join_irreducibles())
        .map(|j| l.poset().up_set(j))
        .collect();
    points.sort_unstable();
    if l.size() <= 10 {
        let mut brute: Vec<u64> = (1..=full_mask(l.size()))
            .filter(|&s| is_prime_filter(l, s))
            .collect();
        brute.sort_unstable();
        assert_eq!(points, brute, "join-irreducible fast path disagrees with brute force");
    }
    let n = points.len();
    let mut up = vec![0u64; n];
    for (i, &a) in points.iter().enumerate() {
        for (j, &b) in points.iter().enumerate() {
            if a & b == a {
                up[i] |= 1 << j;
            }
        }
    }
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in bits(up[i]) {
            pairs.push((i, j));
        }
    }
    let order = Poset::from_pairs(n, &pairs).expect("inclusion is a partial order");
    PrimeFilterSpace { points, order }
}

/// Proper lattice filter whose complement is closed under joins.
pub fn is_prime_filter(l: &FiniteDistributiveLattice, s: u64) -> bool {
    if s == 0 || s == full_mask(l.size()) || !crate::algebra::is_lattice_filter(l, s) {
        return false;
    }
    for x in 0..l.size() {
        for y in 0..l.size() {
            if s & (1 << x) == 0 && s & (1 << y) == 0 && s & (1 << l.join(x, y)) != 0 {
                return false;
            }
        }
    }
    true
}

/// The canonical relation on prime filters:
/// `(S, T) in R iff G^{-1}(S) subset of T subset of F^{-1}(S)`.
/// Its transpose is the relation defined the same way from H and P.
pub fn tense_relation(a: &TdlAlgebra, points: &[u64]) -> Vec<u64> {
    let n = points.len();
    let preimage = |t: &dyn Fn(usize) -> usize, s: u64| -> u64 {
        (0..a.size())
            .filter(|&x| s & (1 << t(x)) != 0)
            .fold(0, |m, x| m | (1 << x))
    };
    let mut r = vec![0u64; n];
    for (i, &s) in points.iter().enumerate() {
        let ginv = preimage(&|x| a.g(x), s);
        let finv = preimage(&|x| a.f(x), s);
        for (j, &t) in points.iter().enumerate() {
            if ginv & !t == 0 && t & !finv == 0 {
                r[i] |= 1 << j;
            }
        }
    }
    // The H/P-defined relation is the inverse of the G/F-defined one.
    let mut r_hp = vec![0u64; n];
    for (i, &s) in points.iter().enumerate() {
        let hinv = preimage(&|x| a.h(x), s);
        let pinv = preimage(&|x| a.p(x), s);
        for (j, &t) in points.iter().enumerate() {
            if hinv & !t == 0 && t & !pinv == 0 {
                r_hp[i] |= 1 << j;
            }
        }
    }
    debug_assert_eq!(r_hp, transpose(&r, n), "H/P relation is not the transpose");
    r
}

/// The dual space of an algebra together with the sigma table
/// (`sigma[a]` = mask of points containing `a`).
#[derive(Clone, Debug)]
pub struct AlgebraDual {
    pub points: Vec<u64>,
    pub space: TpsSpace,
    pub sigma: Vec<u64>,
}

pub fn dual_space(a: &TdlAlgebra) -> AlgebraDual {
    let pfs = prime_filter_space(a.lattice());
    let r = tense_relation(a, &pfs.points);
    let space = TpsSpace::new(pfs.order, r)
        .expect("the canonical relation always yields a tense Priestley space");
    let sigma: Vec<u64> = (0..a.size())
        .map(|x| {
            pfs.points
                .iter()
                .enumerate()
                .filter(|(_, &p)| p & (1 << x) != 0)
                .fold(0, |m, (i, _)| m | (1 << i))
        })
        .collect();
    AlgebraDual {
        points: pfs.points,
        space,
        sigma,
    }
}

/// The algebra of all up-sets of a poset under a relation, with the four
/// relational operators. Members are listed in ascending mask order and
/// `algebra` element `i` is the up-set `members[i]`.
#[derive(Clone, Debug)]
pub struct UpsetAlgebra {
    pub algebra: TdlAlgebra,
    pub members: Vec<u64>,
}

impl UpsetAlgebra {
    pub fn index_of(&self, upset: u64) -> usize {
        self.members
            .binary_search(&upset)
            .expect("operator image is not an up-set of the poset")
    }
}

pub fn upset_algebra(poset: &Poset, r: &[u64]) -> UpsetAlgebra {
    let (lattice, members) = up_set_lattice(poset);
    let n = poset.size();
    let rinv = transpose(r, n);
    let table = |rows: &[u64], diamond: bool| -> Vec<usize> {
        members
            .iter()
            .map(|&u| {
                let img = if diamond {
                    op_diamond(rows, n, u)
                } else {
                    op_box(rows, n, u)
                };
                members
                    .binary_search(&img)
                    .expect("relational operator image is not an up-set")
            })
            .collect()
    };
    let algebra = TdlAlgebra::new(
        lattice,
        table(r, false),
        table(&rinv, false),
        table(r, true),
        table(&rinv, true),
    )
    .expect("relational operators on up-sets satisfy t1-t8");
    UpsetAlgebra { algebra, members }
}

/// The full powerset algebra of a relation: every subset with the same four
/// relational operators. Valid for any relation whatsoever.
pub fn powerset_algebra(size: usize, r: &[u64]) -> UpsetAlgebra {
    upset_algebra(&Poset::antichain(size), r)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HomViolation {
    #[error("meet not preserved at ({0},{1})")]
    Meet(usize, usize),
    #[error("join not preserved at ({0},{1})")]
    Join(usize, usize),
    #[error("bounds not preserved")]
    Bounds,
    #[error("operator {0} not preserved at {1}")]
    Operator(&'static str, usize),
}

/// Total verification that `table` is a tense-lattice homomorphism.
pub fn is_tdl_homomorphism(
    src: &TdlAlgebra,
    dst: &TdlAlgebra,
    table: &[usize],
) -> Result<(), HomViolation> {
    let (ls, ld) = (src.lattice(), dst.lattice());
    if table[ls.bottom()] != ld.bottom() || table[ls.top()] != ld.top() {
        return Err(HomViolation::Bounds);
    }
    for x in 0..src.size() {
        for y in 0..src.size() {
            if table[ls.meet(x, y)] != ld.meet(table[x], table[y]) {
                return Err(HomViolation::Meet(x, y));
            }
            if table[ls.join(x, y)] != ld.join(table[x], table[y]) {
                return Err(HomViolation::Join(x, y));
            }
        }
        if table[src.g(x)] != dst.g(table[x]) {
            return Err(HomViolation::Operator("G", x));
        }
        if table[src.h(x)] != dst.h(table[x]) {
            return Err(HomViolation::Operator("H", x));
        }
        if table[src.f(x)] != dst.f(table[x]) {
            return Err(HomViolation::Operator("F", x));
        }
        if table[src.p(x)] != dst.p(table[x]) {
            return Err(HomViolation::Operator("P", x));
        }
    }
    Ok(())
}

/// Sigma: `a -> {points containing a}`, read as an element table into the
/// up-set algebra of the dual space. On finite algebras this is an
/// isomorphism; anything else is an internal inconsistency and aborts.
pub fn sigma_map(a: &TdlAlgebra, dual: &AlgebraDual, psi: &UpsetAlgebra) -> Vec<usize> {
    let table: Vec<usize> = dual.sigma.iter().map(|&m| psi.index_of(m)).collect();
    assert_eq!(a.size(), psi.algebra.size(), "sigma is not onto");
    let mut seen = vec![false; psi.algebra.size()];
    for &i in &table {
        assert!(!seen[i], "sigma is not injective");
        seen[i] = true;
    }
    if let Err(e) = is_tdl_homomorphism(a, &psi.algebra, &table) {
        panic!("sigma is not a homomorphism: {e}");
    }
    table
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TpsFunctionViolation {
    #[error("not monotone at ({0},{1})")]
    NotMonotone(usize, usize),
    #[error("tPSf1 fails at point {0}")]
    Forward(usize),
    #[error("tPSf2 fails at ({0},{1})")]
    Back(usize, usize),
    #[error("tPSf3 fails at ({0},{1})")]
    BackInverse(usize, usize),
}

/// Check the three tense Priestley function conditions plus monotonicity
/// (continuity is vacuous on finite discrete spaces).
pub fn is_tps_function(
    f: &[usize],
    x1: &TpsSpace,
    x2: &TpsSpace,
) -> Result<(), TpsFunctionViolation> {
    let n1 = x1.size();
    for a in 0..n1 {
        for b in 0..n1 {
            if x1.poset().leq(a, b) && !x2.poset().leq(f[a], f[b]) {
                return Err(TpsFunctionViolation::NotMonotone(a, b));
            }
        }
    }
    for x in 0..n1 {
        let image: u64 = bits(x1.r()[x]).fold(0, |m, z| m | (1 << f[z]));
        if image & !x2.r()[f[x]] != 0 {
            return Err(TpsFunctionViolation::Forward(x));
        }
        for y in bits(x2.r()[f[x]]) {
            let within = bits(x1.r()[x]);
            let mut below = false;
            let mut above = false;
            for z in within {
                below |= x2.poset().leq(f[z], y);
                above |= x2.poset().leq(y, f[z]);
            }
            if !(below && above) {
                return Err(TpsFunctionViolation::Back(x, y));
            }
        }
        for y in bits(x2.rinv()[f[x]]) {
            let mut below = false;
            let mut above = false;
            for z in bits(x1.rinv()[x]) {
                below |= x2.poset().leq(f[z], y);
                above |= x2.poset().leq(y, f[z]);
            }
            if !(below && above) {
                return Err(TpsFunctionViolation::BackInverse(x, y));
            }
        }
    }
    Ok(())
}

/// The dual of a homomorphism `h : A -> B` is the preimage map on prime
/// filters, `X(B) -> X(A)`. Verified to be a tense Priestley function.
pub fn dual_of_hom(
    h: &[usize],
    dual_a: &AlgebraDual,
    dual_b: &AlgebraDual,
) -> Result<Vec<usize>, TpsFunctionViolation> {
    let table: Vec<usize> = dual_b
        .points
        .iter()
        .map(|&s| {
            let pre: u64 = (0..h.len())
                .filter(|&x| s & (1 << h[x]) != 0)
                .fold(0, |m, x| m | (1 << x));
            dual_a
                .points
                .iter()
                .position(|&p| p == pre)
                .expect("preimage of a prime filter under a homomorphism is prime")
        })
        .collect();
    is_tps_function(&table, &dual_b.space, &dual_a.space)?;
    Ok(table)
}

/// The dual of a tense Priestley function `g : X1 -> X2` is the preimage
/// map on up-sets, `Psi(X2) -> Psi(X1)`. Verified to be a homomorphism.
pub fn dual_of_function(
    g: &[usize],
    psi1: &UpsetAlgebra,
    psi2: &UpsetAlgebra,
) -> Result<Vec<usize>, HomViolation> {
    let table: Vec<usize> = psi2
        .members
        .iter()
        .map(|&u| {
            let pre: u64 = (0..g.len())
                .filter(|&x| u & (1 << g[x]) != 0)
                .fold(0, |m, x| m | (1 << x));
            psi1.index_of(pre)
        })
        .collect();
    is_tdl_homomorphism(&psi2.algebra, &psi1.algebra, &table)?;
    Ok(table)
}

/// Epsilon: `x -> {up-sets containing x}`, an order- and R-isomorphism from
/// a finite space onto the dual of its up-set algebra. Returns the point
/// mapping; failure aborts as an internal inconsistency.
pub fn epsilon_map(space: &TpsSpace) -> Vec<usize> {
    let psi = upset_algebra(space.poset(), space.r());
    let back = dual_space(&psi.algebra);
    let table: Vec<usize> = (0..space.size())
        .map(|x| {
            let filt: u64 = psi
                .members
                .iter()
                .enumerate()
                .filter(|(_, &u)| u & (1 << x) != 0)
                .fold(0, |m, (i, _)| m | (1 << i));
            back.points
                .iter()
                .position(|&p| p == filt)
                .expect("epsilon image is not a prime filter")
        })
        .collect();
    assert_eq!(space.size(), back.points.len(), "epsilon is not onto");
    let mut seen = vec![false; back.points.len()];
    for &i in &table {
        assert!(!seen[i], "epsilon is not injective");
        seen[i] = true;
    }
    for x in 0..space.size() {
        for y in 0..space.size() {
            assert_eq!(
                space.poset().leq(x, y),
                back.space.poset().leq(table[x], table[y]),
                "epsilon does not preserve and reflect order"
            );
            assert_eq!(
                space.r()[x] & (1 << y) != 0,
                back.space.r()[table[x]] & (1 << table[y]) != 0,
                "epsilon does not preserve and reflect the relation"
            );
        }
    }
    table
}

/// Frame axiom report: every failing condition with the point witnessing it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FrameReport {
    pub failures: Vec<(&'static str, usize)>,
}

impl FrameReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for FrameReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "all frame conditions hold");
        }
        let items: Vec<String> = self
            .failures
            .iter()
            .map(|(tag, x)| format!("{tag} at {x}"))
            .collect();
        write!(f, "{}", items.join("; "))
    }
}

impl std::error::Error for FrameReport {}

/// Check K1-K5 and, independently, the equational reformulation K1*, K2*,
/// K5. The two verdicts always agree; disagreement is a bug.
pub fn frame_report(poset: &Poset, r: &[u64]) -> FrameReport {
    let n = poset.size();
    let rinv = transpose(r, n);
    let mut failures = Vec::new();
    for x in 0..n {
        let upx = poset.up_set(x);
        let downx = poset.down_set(x);
        if rel_image(r, upx) & !poset.up_closure(r[x]) != 0 {
            failures.push(("K1", x));
        }
        if rel_image(&rinv, upx) & !poset.up_closure(rinv[x]) != 0 {
            failures.push(("K2", x));
        }
        if rel_image(r, downx) & !poset.down_closure(r[x]) != 0 {
            failures.push(("K3", x));
        }
        if rel_image(&rinv, downx) & !poset.down_closure(rinv[x]) != 0 {
            failures.push(("K4", x));
        }
        if r[x] != poset.up_closure(r[x]) & poset.down_closure(r[x]) {
            failures.push(("K5", x));
        }
    }
    let mut starred = Vec::new();
    for x in 0..n {
        let upx = poset.up_set(x);
        if rel_image(r, upx) != poset.up_closure(r[x]) {
            starred.push(("K1*", x));
        }
        if rel_image(&rinv, upx) != poset.up_closure(rinv[x]) {
            starred.push(("K2*", x));
        }
        if r[x] != poset.up_closure(r[x]) & poset.down_closure(r[x]) {
            starred.push(("K5", x));
        }
    }
    assert_eq!(
        failures.is_empty(),
        starred.is_empty(),
        "K1-K5 and K1*/K2*/K5 verdicts disagree"
    );
    failures.extend(starred.into_iter().filter(|(t, _)| *t != "K5"));
    FrameReport { failures }
}

/// A poset plus a relation satisfying the frame conditions K1-K5.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TdlFrame {
    poset: Poset,
    r: Vec<u64>,
}

impl TdlFrame {
    pub fn new(poset: Poset, r: Vec<u64>) -> Result<Self, FrameReport> {
        assert_eq!(r.len(), poset.size());
        let report = frame_report(&poset, &r);
        if report.passed() {
            Ok(TdlFrame { poset, r })
        } else {
            Err(report)
        }
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn size(&self) -> usize {
        self.poset.size()
    }

    pub fn r(&self) -> &[u64] {
        &self.r
    }
}

/// Canonical frame: prime filters under inclusion with the canonical
/// relation. Always satisfies the frame conditions.
pub fn canonical_frame(a: &TdlAlgebra) -> TdlFrame {
    let dual = dual_space(a);
    TdlFrame::new(dual.space.poset().clone(), dual.space.r().to_vec())
        .expect("the canonical frame satisfies K1-K5")
}

/// Complex algebra of a frame: the up-set algebra under the relational
/// operators.
pub fn complex_algebra(frame: &TdlFrame) -> UpsetAlgebra {
    upset_algebra(frame.poset(), frame.r())
}

/// `h : A -> complex(canonical(A))`, an isomorphism on finite algebras.
/// Returns the element table.
pub fn h_embedding(a: &TdlAlgebra) -> Vec<usize> {
    let dual = dual_space(a);
    let frame = TdlFrame::new(dual.space.poset().clone(), dual.space.r().to_vec())
        .expect("canonical frame is a frame");
    let complex = complex_algebra(&frame);
    let table: Vec<usize> = dual.sigma.iter().map(|&m| complex.index_of(m)).collect();
    assert_eq!(a.size(), complex.algebra.size(), "h is not onto");
    if let Err(e) = is_tdl_homomorphism(a, &complex.algebra, &table) {
        panic!("h is not a homomorphism: {e}");
    }
    let mut seen = vec![false; table.len()];
    for &i in &table {
        assert!(!seen[i], "h is not injective");
        seen[i] = true;
    }
    table
}

/// `k : X -> canonical(complex(X))`, an order- and R-isomorphism on finite
/// frames. Returns the point mapping.
pub fn k_embedding(frame: &TdlFrame) -> Vec<usize> {
    let complex = complex_algebra(frame);
    let back = dual_space(&complex.algebra);
    let table: Vec<usize> = (0..frame.size())
        .map(|x| {
            let filt: u64 = complex
                .members
                .iter()
                .enumerate()
                .filter(|(_, &u)| u & (1 << x) != 0)
                .fold(0, |m, (i, _)| m | (1 << i));
            back.points
                .iter()
                .position(|&p| p == filt)
                .expect("k image is not a prime filter")
        })
        .collect();
    assert_eq!(frame.size(), back.points.len(), "k is not onto");
    for x in 0..frame.size() {
        for y in 0..frame.size() {
            assert_eq!(
                frame.poset().leq(x, y),
                back.space.poset().leq(table[x], table[y]),
                "k does not preserve and reflect order"
            );
            assert_eq!(
                frame.r()[x] & (1 << y) != 0,
                back.space.r()[table[x]] & (1 << table[y]) != 0,
                "k does not preserve and reflect the relation"
            );
        }
    }
    table
}

/// All frames with at most `max_points` points: poset census up to
/// isomorphism, then every relation passing the frame conditions, in
/// canonical order (poset census order, then ascending relation encoding).
pub fn frames_up_to(max_points: usize) -> Vec<TdlFrame> {
    let mut out = Vec::new();
    for poset in crate::order::posets_up_to(max_points) {
        let n = poset.size();
        let cells: u32 = (n * n) as u32;
        for code in 0u64..(1u64 << cells) {
            let r: Vec<u64> = (0..n)
                .map(|x| {
                    (0..n)
                        .filter(|&y| code & (1 << (x * n + y)) != 0)
                        .fold(0u64, |m, y| m | (1 << y))
                })
                .collect();
            if frame_report(&poset, &r).passed() {
                out.push(TdlFrame { poset: poset.clone(), r });
            }
        }
    }
    out
}

fn poset_automorphisms(poset: &Poset) -> Vec<Vec<usize>> {
    let n = poset.size();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    fn rec(poset: &Poset, k: usize, perm: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let n = poset.size();
        if k == n {
            out.push(perm.clone());
            return;
        }
        for i in k..n {
            perm.swap(k, i);
            // Order-compatibility with everything placed so far.
            let ok = (0..=k).all(|j| {
                poset.leq(j, k) == poset.leq(perm[j], perm[k])
                    && poset.leq(k, j) == poset.leq(perm[k], perm[j])
            });
            if ok {
                rec(poset, k + 1, perm, out);
            }
            perm.swap(k, i);
        }
    }
    rec(poset, 0, &mut perm, &mut out);
    out
}

fn relation_code(r: &[u64], n: usize) -> u64 {
    let mut code = 0u64;
    for x in 0..n {
        for y in bits(r[x]) {
            code |= 1 << (x * n + y);
        }
    }
    code
}

/// One frame per isomorphism class: for each census poset, the relations
/// that are lexicographically least within their orbit under the poset's
/// automorphism group. The checked duality properties are invariant under
/// frame isomorphism, so sweeps over this census lose nothing.
pub fn frames_up_to_iso(max_points: usize) -> Vec<TdlFrame> {
    let mut out = Vec::new();
    for poset in crate::order::posets_up_to(max_points) {
        let n = poset.size();
        let autos = poset_automorphisms(&poset);
        let cells: u32 = (n * n) as u32;
        'rel: for code in 0u64..(1u64 << cells) {
            let r: Vec<u64> = (0..n)
                .map(|x| {
                    (0..n)
                        .filter(|&y| code & (1 << (x * n + y)) != 0)
                        .fold(0u64, |m, y| m | (1 << y))
                })
                .collect();
            if !frame_report(&poset, &r).passed() {
                continue;
            }
            for sigma in &autos {
                let mut transformed = vec![0u64; n];
                for x in 0..n {
                    for y in bits(r[x]) {
                        transformed[sigma[x]] |= 1 << sigma[y];
                    }
                }
                if relation_code(&transformed, n) < code {
                    continue 'rel;
                }
            }
            out.push(TdlFrame { poset: poset.clone(), r });
        }
    }
    out
}
