//! Small named Lie algebras used by fixtures and tests.

use super::{BracketTable, LieAlgebra};
use crate::polyalg::Rat;

type Bracket<'a> = (usize, usize, &'a [(usize, Rat)]);

fn build(names: &[&str], brackets: &[Bracket]) -> LieAlgebra {
    let n = names.len();
    let mut t = BracketTable::new(names.iter().map(|s| s.to_string()).collect());
    for (i, j, terms) in brackets {
        let mut v = vec![Rat::zero(); n];
        for (k, c) in terms.iter() {
            v[*k] = c.clone();
        }
        t.set(*i, *j, v).expect("catalog bracket index order");
    }
    LieAlgebra::new(t).expect("catalog algebra satisfies Jacobi")
}

/// Affine algebra of the line: `[e1, e2] = e1`.
pub fn aff1() -> LieAlgebra {
    build(&["e1", "e2"], &[(0, 1, &[(0, Rat::one())])])
}

/// Heisenberg algebra: `[u, v] = w`.
pub fn heisenberg() -> LieAlgebra {
    build(&["u", "v", "w"], &[(0, 1, &[(2, Rat::one())])])
}

/// `sl(2)` in the basis `h, e, f`.
pub fn sl2() -> LieAlgebra {
    build(
        &["h", "e", "f"],
        &[
            (0, 1, &[(1, Rat::from_int(2))]),
            (0, 2, &[(2, Rat::from_int(-2))]),
            (1, 2, &[(0, Rat::one())]),
        ],
    )
}

/// Six-dimensional oscillator algebra with basis
/// `em1, e0, e1, e2, ec1, ec2` (`em1` is e_{-1}, `ecj` is the checked e_j):
/// `[em1, ej] = lj ecj`, `[ej, ecj] = e0`, `[em1, ecj] = -lj ej`.
pub fn oscillator(l1: Rat, l2: Rat) -> LieAlgebra {
    let (em1, e0, e1, e2, ec1, ec2) = (0, 1, 2, 3, 4, 5);
    build(
        &["em1", "e0", "e1", "e2", "ec1", "ec2"],
        &[
            (em1, e1, &[(ec1, l1.clone())]),
            (em1, e2, &[(ec2, l2.clone())]),
            (em1, ec1, &[(e1, -&l1)]),
            (em1, ec2, &[(e2, -&l2)]),
            (e1, ec1, &[(e0, Rat::one())]),
            (e2, ec2, &[(e0, Rat::one())]),
        ],
    )
}
