//! Finite posets and bounded distributive lattices.
//!
//! Elements are dense indices `0..size` and every subset is a `u64` bitmask,
//! so carriers are capped at 64 elements. Families of subsets are always
//! listed in ascending numeric order of the mask, which gives deterministic,
//! diffable output everywhere downstream.

use std::fmt;

use thiserror::Error;

/// Largest supported carrier; subsets are `u64` bitmasks.
pub const MAX_ELEMENTS: usize = 64;

/// Iterate the element indices of a bitmask subset.
pub fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..MAX_ELEMENTS).filter(move |i| mask & (1 << i) != 0)
}

/// Mask of the full set `{0, .., size-1}`.
pub fn full_mask(size: usize) -> u64 {
    if size == 0 {
        0
    } else {
        u64::MAX >> (MAX_ELEMENTS - size)
    }
}

/// Render a mask as `{i, j, ..}` for diagnostics.
pub fn mask_to_string(mask: u64) -> String {
    let inner: Vec<String> = bits(mask).map(|i| i.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrderError {
    #[error("carrier of size {0} exceeds the supported maximum of {MAX_ELEMENTS}")]
    TooLarge(usize),
    #[error("pair ({0}, {1}) is out of range")]
    IndexOutOfRange(usize, usize),
    #[error("antisymmetry fails: {0} and {1} are in a cycle")]
    Cycle(usize, usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("elements {0} and {1} have no meet")]
    NoMeet(usize, usize),
    #[error("elements {0} and {1} have no join")]
    NoJoin(usize, usize),
    #[error("distributivity fails at ({0}, {1}, {2})")]
    NotDistributive(usize, usize, usize),
    #[error("the poset has no bottom or no top element")]
    NoBounds,
}

/// A finite partially ordered set on indices `0..size`.
///
/// The order is stored as one up-set mask per element: `up[x]` is
/// `{y : x <= y}` (always containing `x` itself).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poset {
    size: usize,
    up: Vec<u64>,
}

impl Poset {
    /// Build a poset from the reflexive-transitive closure of `pairs`
    /// (each `(a, b)` read as `a <= b`).
    pub fn from_pairs(size: usize, pairs: &[(usize, usize)]) -> Result<Poset, OrderError> {
        if size > MAX_ELEMENTS {
            return Err(OrderError::TooLarge(size));
        }
        let mut up: Vec<u64> = (0..size).map(|i| 1u64 << i).collect();
        for &(a, b) in pairs {
            if a >= size || b >= size {
                return Err(OrderError::IndexOutOfRange(a, b));
            }
            up[a] |= 1 << b;
        }
        // Warshall-style transitive closure on the up-masks.
        loop {
            let mut changed = false;
            for x in 0..size {
                let mut acc = up[x];
                for y in bits(up[x]) {
                    acc |= up[y];
                }
                if acc != up[x] {
                    up[x] = acc;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        for x in 0..size {
            for y in bits(up[x]) {
                if y != x && up[y] & (1 << x) != 0 {
                    return Err(OrderError::Cycle(x, y));
                }
            }
        }
        Ok(Poset { size, up })
    }

    /// The `n`-element chain `0 < 1 < .. < n-1`.
    pub fn chain(n: usize) -> Poset {
        let pairs: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Poset::from_pairs(n, &pairs).expect("chain is a poset")
    }

    /// The `n`-element antichain.
    pub fn antichain(n: usize) -> Poset {
        Poset::from_pairs(n, &[]).expect("antichain is a poset")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x] & (1 << y) != 0
    }

    /// `{y : x <= y}` as a mask.
    pub fn up_set(&self, x: usize) -> u64 {
        self.up[x]
    }

    /// `{y : y <= x}` as a mask.
    pub fn down_set(&self, x: usize) -> u64 {
        let mut m = 0;
        for y in 0..self.size {
            if self.leq(y, x) {
                m |= 1 << y;
            }
        }
        m
    }

    /// Least up-closed superset of `s`.
    pub fn up_closure(&self, s: u64) -> u64 {
        let mut m = 0;
        for x in bits(s) {
            m |= self.up[x];
        }
        m
    }

    /// Least down-closed superset of `s`.
    pub fn down_closure(&self, s: u64) -> u64 {
        let mut m = 0;
        for x in bits(s) {
            m |= self.down_set(x);
        }
        m
    }

    pub fn is_up_set(&self, s: u64) -> bool {
        self.up_closure(s) == s
    }

    pub fn is_down_set(&self, s: u64) -> bool {
        self.down_closure(s) == s
    }

    /// All up-closed subsets in ascending mask order, including the empty
    /// set and the full carrier.
    pub fn up_sets(&self) -> Vec<u64> {
        // A subset is up-closed iff every member brings its whole up-set
        // along. Scan all masks when the carrier is small, backtrack
        // otherwise.
        let full = full_mask(self.size);
        let mut out = Vec::new();
        if self.size <= 20 {
            for m in 0..=full {
                if self.is_up_set(m) {
                    out.push(m);
                }
            }
        } else {
            // Backtracking enumeration for wide carriers.
            fn rec(p: &Poset, idx: usize, cur: u64, out: &mut Vec<u64>) {
                if idx == p.size() {
                    out.push(cur);
                    return;
                }
                // Element `idx` excluded: fine only if no included element
                // forces it. Defer the check to inclusion time instead.
                rec(p, idx + 1, cur, out);
                // Element `idx` included: its whole up-set must eventually be in.
                let need = p.up_set(idx);
                rec(p, idx + 1, cur | need, out);
            }
            let mut raw = Vec::new();
            rec(self, 0, 0, &mut raw);
            raw.sort_unstable();
            raw.dedup();
            out = raw;
        }
        out
    }

    /// Restrict the order to the elements of `subset`, reindexing densely in
    /// ascending index order. Returns the subposet and the old index of each
    /// new element.
    pub fn induced(&self, subset: u64) -> (Poset, Vec<usize>) {
        let elems: Vec<usize> = bits(subset).collect();
        let size = elems.len();
        let mut up: Vec<u64> = vec![0; size];
        for (i, &x) in elems.iter().enumerate() {
            for (j, &y) in elems.iter().enumerate() {
                if self.leq(x, y) {
                    up[i] |= 1 << j;
                }
            }
        }
        (Poset { size, up }, elems)
    }

    /// Canonical encoding of the order matrix, minimized over all
    /// permutations of the carrier. Two posets are isomorphic iff their
    /// codes agree. Only sensible for small sizes.
    pub fn canonical_code(&self) -> Vec<u64> {
        let n = self.size;
        let mut best: Option<Vec<u64>> = None;
        let mut perm: Vec<usize> = (0..n).collect();
        permute(&mut perm, 0, &mut |perm| {
            // code[i] = mask of j with perm-preimage order.
            let mut code = vec![0u64; n];
            for x in 0..n {
                for y in 0..n {
                    if self.leq(x, y) {
                        code[perm[x]] |= 1 << perm[y];
                    }
                }
            }
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
        });
        best.unwrap_or_default()
    }
}

fn permute(perm: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        f(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, f);
        perm.swap(k, i);
    }
}

/// All posets with at most `max_points` points, one representative per
/// isomorphism class, in a deterministic order (by size, then by canonical
/// code).
pub fn posets_up_to(max_points: usize) -> Vec<Poset> {
    let mut out = Vec::new();
    for n in 0..=max_points {
        let mut seen: Vec<(Vec<u64>, Poset)> = Vec::new();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .collect();
        let m = pairs.len();
        for sel in 0u64..(1 << m) {
            let chosen: Vec<(usize, usize)> = (0..m)
                .filter(|k| sel & (1 << k) != 0)
                .map(|k| pairs[k])
                .collect();
            // Relations aligned with the index order are automatically
            // antisymmetric, and every poset has a linear extension, so this
            // enumeration hits every isomorphism class.
            let p = Poset::from_pairs(n, &chosen).expect("triangular relation is acyclic");
            let code = p.canonical_code();
            if !seen.iter().any(|(c, _)| *c == code) {
                seen.push((code, p));
            }
        }
        seen.sort_by(|a, b| a.0.cmp(&b.0));
        out.extend(seen.into_iter().map(|(_, p)| p));
    }
    out
}

/// A finite bounded distributive lattice presented by its order plus full
/// meet/join tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteDistributiveLattice {
    poset: Poset,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl FiniteDistributiveLattice {
    /// Compute meets, joins and bounds from the order, validating that the
    /// poset really is a bounded distributive lattice.
    pub fn from_poset(poset: Poset) -> Result<Self, LatticeError> {
        let n = poset.size();
        if n == 0 {
            return Err(LatticeError::NoBounds);
        }
        let mut meet = vec![0usize; n * n];
        let mut join = vec![0usize; n * n];
        for x in 0..n {
            for y in 0..n {
                let lower: Vec<usize> = (0..n)
                    .filter(|&z| poset.leq(z, x) && poset.leq(z, y))
                    .collect();
                let glb = lower
                    .iter()
                    .copied()
                    .find(|&g| lower.iter().all(|&z| poset.leq(z, g)));
                match glb {
                    Some(g) => meet[x * n + y] = g,
                    None => return Err(LatticeError::NoMeet(x, y)),
                }
                let upper: Vec<usize> = (0..n)
                    .filter(|&z| poset.leq(x, z) && poset.leq(y, z))
                    .collect();
                let lub = upper
                    .iter()
                    .copied()
                    .find(|&l| upper.iter().all(|&z| poset.leq(l, z)));
                match lub {
                    Some(l) => join[x * n + y] = l,
                    None => return Err(LatticeError::NoJoin(x, y)),
                }
            }
        }
        let bottom = (0..n)
            .find(|&b| (0..n).all(|x| poset.leq(b, x)))
            .ok_or(LatticeError::NoBounds)?;
        let top = (0..n)
            .find(|&t| (0..n).all(|x| poset.leq(x, t)))
            .ok_or(LatticeError::NoBounds)?;
        let l = FiniteDistributiveLattice {
            poset,
            meet,
            join,
            bottom,
            top,
        };
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z)) {
                        return Err(LatticeError::NotDistributive(x, y, z));
                    }
                }
            }
        }
        Ok(l)
    }

    pub fn size(&self) -> usize {
        self.poset.size()
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.poset.leq(x, y)
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.size() + y]
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.size() + y]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Meet of every element in `mask`; the empty meet is the top.
    pub fn meet_all(&self, mask: u64) -> usize {
        bits(mask).fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Join of every element in `mask`; the empty join is the bottom.
    pub fn join_all(&self, mask: u64) -> usize {
        bits(mask).fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Elements `x != bottom` such that `x = a v b` implies `x = a` or
    /// `x = b`, as a mask.
    pub fn join_irreducibles(&self) -> u64 {
        let n = self.size();
        let mut m = 0;
        'outer: for x in 0..n {
            if x == self.bottom {
                continue;
            }
            for a in 0..n {
                for b in 0..n {
                    if self.join(a, b) == x && a != x && b != x {
                        continue 'outer;
                    }
                }
            }
            m |= 1 << x;
        }
        m
    }

    /// Elements `x != top` such that `x = a ^ b` implies `x = a` or `x = b`,
    /// as a mask.
    pub fn meet_irreducibles(&self) -> u64 {
        let n = self.size();
        let mut m = 0;
        'outer: for x in 0..n {
            if x == self.top {
                continue;
            }
            for a in 0..n {
                for b in 0..n {
                    if self.meet(a, b) == x && a != x && b != x {
                        continue 'outer;
                    }
                }
            }
            m |= 1 << x;
        }
        m
    }

    /// The sublattice on `subset` (which must be closed under meet and join
    /// and contain the bounds), reindexed densely. Returns the lattice and
    /// the old index of each new element.
    pub fn sublattice(&self, subset: u64) -> (FiniteDistributiveLattice, Vec<usize>) {
        let (poset, elems) = self.poset.induced(subset);
        let l = FiniteDistributiveLattice::from_poset(poset)
            .expect("closed subset of a distributive lattice is one");
        debug_assert!(elems.contains(&self.bottom) && elems.contains(&self.top));
        (l, elems)
    }
}

impl fmt::Display for FiniteDistributiveLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lattice of {} elements", self.size())
    }
}

/// The lattice of up-sets of `p` under intersection and union, together with
/// the member masks in canonical (ascending mask) order.
///
/// This is the Birkhoff representation direction used throughout: every
/// finite distributive lattice arises this way from its poset of
/// join-irreducibles.
pub fn up_set_lattice(p: &Poset) -> (FiniteDistributiveLattice, Vec<u64>) {
    let members = p.up_sets();
    let size = members.len();
    assert!(size <= MAX_ELEMENTS, "too many up-sets for a lattice carrier");
    let mut up: Vec<u64> = vec![0; size];
    for (i, &a) in members.iter().enumerate() {
        for (j, &b) in members.iter().enumerate() {
            if a & b == a {
                up[i] |= 1 << j;
            }
        }
    }
    let poset = Poset { size, up };
    let l = FiniteDistributiveLattice::from_poset(poset)
        .expect("up-sets form a bounded distributive lattice");
    (l, members)
}

/// Every bounded distributive lattice with at most `max_size` elements, one
/// per isomorphism class, generated as up-set lattices of the poset census
/// (posets are capped at `max_size - 1` points since an n-point poset has at
/// least n+1 up-sets). Deterministic order.
pub fn distributive_lattice_census(max_size: usize) -> Vec<FiniteDistributiveLattice> {
    let max_points = max_size.saturating_sub(1);
    let mut out = Vec::new();
    for p in posets_up_to(max_points) {
        if p.up_sets().len() <= max_size {
            let (l, _) = up_set_lattice(&p);
            out.push(l);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn six_lattice() -> FiniteDistributiveLattice {
        // 0 < a,b; a < c,d; b < d; c,d < 1 with indices 0,a=1,b=2,c=3,d=4,1=5.
        let p = Poset::from_pairs(6, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 4), (3, 5), (4, 5)])
            .unwrap();
        FiniteDistributiveLattice::from_poset(p).unwrap()
    }

    #[test]
    fn two_chain_builds() {
        let p = Poset::from_pairs(2, &[(0, 1)]).unwrap();
        assert!(p.leq(0, 1));
        assert!(!p.leq(1, 0));
    }

    #[test]
    fn one_point_poset() {
        let p = Poset::from_pairs(1, &[]).unwrap();
        assert_eq!(p.size(), 1);
        assert!(p.leq(0, 0));
    }

    #[test]
    fn cycle_is_rejected() {
        let err = Poset::from_pairs(2, &[(0, 1), (1, 0)]).unwrap_err();
        assert!(matches!(err, OrderError::Cycle(..)));
    }

    #[test]
    fn six_element_lattice_tables() {
        let l = six_lattice();
        let (a, b, c, d) = (1, 2, 3, 4);
        assert_eq!(l.meet(a, b), 0);
        assert_eq!(l.join(a, b), d);
        assert_eq!(l.meet(c, d), a);
        assert_eq!(l.join(c, d), 5);
        assert_eq!(l.bottom(), 0);
        assert_eq!(l.top(), 5);
    }

    #[test]
    fn diamond_is_not_distributive() {
        // M3: bottom, three incomparable atoms, top.
        let p = Poset::from_pairs(
            5,
            &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
        )
        .unwrap();
        let err = FiniteDistributiveLattice::from_poset(p).unwrap_err();
        assert!(matches!(err, LatticeError::NotDistributive(..)));
    }

    #[test]
    fn join_irreducibles_examples() {
        let two = FiniteDistributiveLattice::from_poset(Poset::chain(2)).unwrap();
        assert_eq!(two.join_irreducibles(), 0b10);

        let l = six_lattice();
        assert_eq!(l.join_irreducibles(), 0b001110); // {a, b, c}

        // 2x2 Boolean lattice: join-irreducibles are the two atoms.
        let p = Poset::from_pairs(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let b4 = FiniteDistributiveLattice::from_poset(p).unwrap();
        assert_eq!(b4.join_irreducibles(), 0b0110);
    }

    #[test]
    fn up_sets_examples() {
        let one = Poset::from_pairs(1, &[]).unwrap();
        assert_eq!(one.up_sets(), vec![0b0, 0b1]);

        let chain = Poset::chain(2);
        assert_eq!(chain.up_sets(), vec![0b00, 0b10, 0b11]);

        let anti = Poset::antichain(2);
        assert_eq!(anti.up_sets(), vec![0b00, 0b01, 0b10, 0b11]);
    }

    #[test]
    fn closures() {
        let chain = Poset::chain(2);
        assert_eq!(chain.up_closure(0b01), 0b11);
        assert_eq!(chain.down_closure(0b10), 0b11);
        assert_eq!(chain.up_closure(0), 0);
        assert_eq!(chain.down_closure(0), 0);
    }

    #[test]
    fn up_set_family_is_a_distributive_lattice() {
        for p in posets_up_to(3) {
            let (l, members) = up_set_lattice(&p);
            assert_eq!(l.size(), members.len());
            // Meet and join agree with intersection and union of masks.
            for i in 0..members.len() {
                for j in 0..members.len() {
                    let inter = members[i] & members[j];
                    let union = members[i] | members[j];
                    assert_eq!(members[l.meet(i, j)], inter);
                    assert_eq!(members[l.join(i, j)], union);
                }
            }
        }
    }

    #[test]
    fn birkhoff_count_round_trip() {
        for l in distributive_lattice_census(6) {
            let ji = l.join_irreducibles();
            let (sub, _) = l.poset().induced(ji);
            assert_eq!(sub.up_sets().len(), l.size());
        }
    }

    #[test]
    fn poset_census_counts() {
        // Known counts of posets up to isomorphism on 0..=4 points.
        let by_size = |n: usize| posets_up_to(4).into_iter().filter(|p| p.size() == n).count();
        assert_eq!(by_size(0), 1);
        assert_eq!(by_size(1), 1);
        assert_eq!(by_size(2), 2);
        assert_eq!(by_size(3), 5);
        assert_eq!(by_size(4), 16);
    }

    #[test]
    fn lattice_census_sizes() {
        let sizes: Vec<usize> = distributive_lattice_census(6)
            .iter()
            .map(|l| l.size())
            .collect();
        let mut sorted = sizes.clone();
        sorted.sort_unstable();
        // Known census of distributive lattices: 1, 1, 1, 2, 3, 5 by size.
        assert_eq!(sorted, vec![1, 2, 3, 4, 4, 5, 5, 5, 6, 6, 6, 6, 6]);
    }

    proptest! {
        #[test]
        fn absorption_and_distributivity_hold(idx in 0usize..16, x in 0usize..6, y in 0usize..6, z in 0usize..6) {
            static CENSUS: std::sync::OnceLock<Vec<FiniteDistributiveLattice>> = std::sync::OnceLock::new();
            let census = CENSUS.get_or_init(|| distributive_lattice_census(6));
            let l = &census[idx % census.len()];
            let n = l.size();
            let (x, y, z) = (x % n, y % n, z % n);
            prop_assert_eq!(l.meet(x, l.join(x, y)), x);
            prop_assert_eq!(l.join(x, l.meet(x, y)), x);
            prop_assert_eq!(l.meet(x, l.join(y, z)), l.join(l.meet(x, y), l.meet(x, z)));
            prop_assert_eq!(l.join(x, l.meet(y, z)), l.meet(l.join(x, y), l.join(x, z)));
        }

        #[test]
        fn up_closure_is_a_closure_operator(pairsel in 0u64..1024, s in 0u64..32) {
            let pairs: Vec<(usize,usize)> = (0..5usize).flat_map(|i| ((i+1)..5).map(move |j| (i,j)))
                .enumerate()
                .filter(|(k, _)| pairsel & (1 << k) != 0)
                .map(|(_, p)| p)
                .collect();
            let p = Poset::from_pairs(5, &pairs).unwrap();
            let c = p.up_closure(s);
            prop_assert_eq!(c & s, s);
            prop_assert_eq!(p.up_closure(c), c);
            prop_assert!(p.is_up_set(c));
        }
    }
}
