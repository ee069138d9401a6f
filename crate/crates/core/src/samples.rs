//! Ready-made small structures used by tests, docs and the bundled CLI
//! fixtures.

use crate::algebra::TdlAlgebra;
use crate::order::{FiniteDistributiveLattice, Poset};

/// The two-element chain `0 < 1`.
pub fn two_chain() -> FiniteDistributiveLattice {
    FiniteDistributiveLattice::from_poset(Poset::chain(2)).unwrap()
}

/// The `n`-element chain.
pub fn chain_lattice(n: usize) -> FiniteDistributiveLattice {
    FiniteDistributiveLattice::from_poset(Poset::chain(n)).unwrap()
}

/// The four-element Boolean lattice `{0, u, v, 1}` with `u, v` incomparable
/// (indices 0, 1, 2, 3).
pub fn boolean_square() -> FiniteDistributiveLattice {
    let p = Poset::from_pairs(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
    FiniteDistributiveLattice::from_poset(p).unwrap()
}

/// The eight-element Boolean lattice.
pub fn boolean_cube() -> FiniteDistributiveLattice {
    let (l, _) = crate::order::up_set_lattice(&Poset::antichain(3));
    l
}

/// The six-element lattice `0 < a, b; a < c, d; b < d; c, d < 1` with
/// indices `0, a=1, b=2, c=3, d=4, 1=5`.
pub fn six_element_lattice() -> FiniteDistributiveLattice {
    let p =
        Poset::from_pairs(6, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 4), (3, 5), (4, 5)]).unwrap();
    FiniteDistributiveLattice::from_poset(p).unwrap()
}

/// The six-element simple tense algebra: G maps 0, a, b, c to b and fixes d
/// and 1; H sends 0, b to 0, a, d to a, c, 1 to 1; F sends 0 to 0, a to a
/// and everything else to c; P sends 0, b to 0, a, d to d, c, 1 to 1.
pub fn six_element_algebra() -> TdlAlgebra {
    let l = six_element_lattice();
    TdlAlgebra::new(
        l,
        vec![2, 2, 2, 2, 4, 5],
        vec![0, 1, 0, 5, 1, 5],
        vec![0, 1, 3, 3, 3, 3],
        vec![0, 4, 0, 5, 4, 5],
    )
    .expect("the six-element structure satisfies t1-t8")
}

/// All four operators are the identity; valid on any lattice.
pub fn identity_algebra(l: &FiniteDistributiveLattice) -> TdlAlgebra {
    let id: Vec<usize> = (0..l.size()).collect();
    TdlAlgebra::new(l.clone(), id.clone(), id.clone(), id.clone(), id)
        .expect("identity operators satisfy t1-t8")
}

/// G and H constantly the top, F and P constantly the bottom; valid on any
/// lattice.
pub fn constant_algebra(l: &FiniteDistributiveLattice) -> TdlAlgebra {
    let ones = vec![l.top(); l.size()];
    let zeros = vec![l.bottom(); l.size()];
    TdlAlgebra::new(l.clone(), ones.clone(), ones, zeros.clone(), zeros)
        .expect("constant operators satisfy t1-t8")
}
