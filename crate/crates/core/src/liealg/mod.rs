//! Finite-dimensional Lie algebras over the rationals, bivectors on them and
//! the classical Yang-Baxter bracket.

pub mod catalog;
mod symplectic;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::polyalg::linalg::{self, Matrix};
use crate::polyalg::Rat;

pub use symplectic::{
    bivector_from_subspace_form, cocycle_check, darboux_basis, form_on_image, image_basis,
    image_form, left_symmetric_product, structure_relation_check, unimodular_check,
    CocycleVerdict, DarbouxBasis, LeftSymmetricTable, RelationFamily, StructureVerdict,
    SubspaceForm, UnimodularReport,
};

/// A vector of the algebra in basis coordinates.
pub type AlgVector = Vec<Rat>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("bracket [{0},{1}] must be given with the first index below the second")]
    UnorderedPair(usize, usize),
    #[error("Jacobi identity fails on basis triple ({i},{j},{k})")]
    Jacobi { i: usize, j: usize, k: usize },
    #[error("matrix is not antisymmetric at ({0},{1})")]
    NotAntisymmetric(usize, usize),
    #[error("degenerate input: {0}")]
    Degenerate(&'static str),
    #[error("subspace basis vectors are linearly dependent")]
    DependentBasis,
    #[error("[s{i}, s{j}] leaves the subspace")]
    NotSubalgebra { i: usize, j: usize },
    #[error("form is not a 2-cocycle on the subspace")]
    NotSymplectic,
    #[error("change-of-basis matrix is singular")]
    SingularBasisChange,
}

/// Raw structure constants, not yet known to satisfy the Jacobi identity.
///
/// `consts[i][j][k]` is the coefficient of `u_k` in `[u_i, u_j]`; the
/// antisymmetric half is filled in automatically.
#[derive(Clone, PartialEq, Eq)]
pub struct BracketTable {
    names: Vec<String>,
    consts: Vec<Vec<AlgVector>>,
}

impl BracketTable {
    pub fn new(names: Vec<String>) -> Self {
        let n = names.len();
        BracketTable {
            names,
            consts: vec![vec![vec![Rat::zero(); n]; n]; n],
        }
    }

    pub fn with_dim(n: usize) -> Self {
        BracketTable::new((1..=n).map(|i| format!("u{i}")).collect())
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Sets `[u_i, u_j] = value` for `i < j` (and `[u_j, u_i] = -value`).
    pub fn set(&mut self, i: usize, j: usize, value: AlgVector) -> Result<(), LieError> {
        let n = self.dim();
        if i >= j || j >= n {
            return Err(LieError::UnorderedPair(i, j));
        }
        if value.len() != n {
            return Err(LieError::DimensionMismatch {
                expected: n,
                got: value.len(),
            });
        }
        self.consts[j][i] = value.iter().map(|c| -c).collect();
        self.consts[i][j] = value;
        Ok(())
    }

    pub fn get(&self, i: usize, j: usize) -> &AlgVector {
        &self.consts[i][j]
    }

    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> AlgVector {
        let n = self.dim();
        let mut out = vec![Rat::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                let w = xi * yj;
                for (k, c) in self.consts[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &(&w * c);
                    }
                }
            }
        }
        out
    }
}

/// Outcome of [`jacobi_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JacobiVerdict {
    Pass,
    /// First failing triple in lexicographic order with the cyclic sum.
    Fail {
        triple: (usize, usize, usize),
        residual: AlgVector,
    },
}

impl JacobiVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, JacobiVerdict::Pass)
    }
}

pub fn jacobi_check(table: &BracketTable) -> JacobiVerdict {
    let n = table.dim();
    let e = |i: usize| unit(n, i);
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let a = table.bracket(&table.bracket(&e(i), &e(j)), &e(k));
                let b = table.bracket(&table.bracket(&e(j), &e(k)), &e(i));
                let c = table.bracket(&table.bracket(&e(k), &e(i)), &e(j));
                let residual: AlgVector = (0..n).map(|t| &(&a[t] + &b[t]) + &c[t]).collect();
                if !linalg::is_zero_vec(&residual) {
                    return JacobiVerdict::Fail {
                        triple: (i, j, k),
                        residual,
                    };
                }
            }
        }
    }
    JacobiVerdict::Pass
}

pub(crate) fn unit(n: usize, i: usize) -> AlgVector {
    let mut v = vec![Rat::zero(); n];
    v[i] = Rat::one();
    v
}

/// A Lie algebra: structure constants that passed [`jacobi_check`].
#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    table: BracketTable,
}

impl LieAlgebra {
    pub fn new(table: BracketTable) -> Result<Self, LieError> {
        match jacobi_check(&table) {
            JacobiVerdict::Pass => Ok(LieAlgebra { table }),
            JacobiVerdict::Fail { triple: (i, j, k), .. } => Err(LieError::Jacobi { i, j, k }),
        }
    }

    pub fn abelian(n: usize) -> Self {
        LieAlgebra {
            table: BracketTable::with_dim(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn names(&self) -> &[String] {
        self.table.names()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.table.names.iter().position(|n| n == name)
    }

    pub fn table(&self) -> &BracketTable {
        &self.table
    }

    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> AlgVector {
        self.table.bracket(x, y)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (i + 1..n).all(|j| linalg::is_zero_vec(self.table.get(i, j))))
    }

    /// The same algebra in the basis `u'_a = sum_b p[b][a] u_b` (the columns
    /// of `p` are the new basis vectors in old coordinates).
    pub fn change_basis(&self, p: &Matrix) -> Result<LieAlgebra, LieError> {
        let n = self.dim();
        if p.len() != n {
            return Err(LieError::DimensionMismatch {
                expected: n,
                got: p.len(),
            });
        }
        let q = linalg::inverse(p).ok_or(LieError::SingularBasisChange)?;
        let cols = linalg::transpose(p);
        let mut table = BracketTable::new(self.names().to_vec());
        for a in 0..n {
            for b in a + 1..n {
                let w = self.bracket(&cols[a], &cols[b]);
                table.set(a, b, linalg::mat_vec(&q, &w))?;
            }
        }
        Ok(LieAlgebra { table })
    }
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra(dim={}, basis={:?})", self.dim(), self.names())
    }
}

/// `r = sum_{i<j} r^{ij} u_i ^ u_j`, stored as the full antisymmetric matrix.
///
/// As a map `G* -> G`, `r(a)^i = sum_j r^{ij} a_j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgBivector {
    matrix: Matrix,
}

impl AlgBivector {
    pub fn zero(n: usize) -> Self {
        AlgBivector {
            matrix: linalg::zeros(n, n),
        }
    }

    pub fn from_matrix(matrix: Matrix) -> Result<Self, LieError> {
        let n = matrix.len();
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(LieError::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            for j in 0..n {
                if row[j] != -&matrix[j][i] {
                    return Err(LieError::NotAntisymmetric(i, j));
                }
            }
        }
        Ok(AlgBivector { matrix })
    }

    /// Sums `c * u_i ^ u_j` over the given terms; `i > j` is allowed.
    pub fn from_terms(n: usize, terms: &[(usize, usize, Rat)]) -> Result<Self, LieError> {
        let mut m = linalg::zeros(n, n);
        for (i, j, c) in terms {
            let (i, j) = (*i, *j);
            if i >= n || j >= n {
                return Err(LieError::DimensionMismatch {
                    expected: n,
                    got: i.max(j) + 1,
                });
            }
            if i == j {
                return Err(LieError::NotAntisymmetric(i, j));
            }
            m[i][j] += c;
            m[j][i] -= c;
        }
        Ok(AlgBivector { matrix: m })
    }

    /// `x ^ y` for two algebra vectors.
    pub fn wedge(x: &[Rat], y: &[Rat]) -> Self {
        let n = x.len();
        let mut m = linalg::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[i][j] = &(&x[i] * &y[j]) - &(&x[j] * &y[i]);
            }
        }
        AlgBivector { matrix: m }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn coeff(&self, i: usize, j: usize) -> &Rat {
        &self.matrix[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().all(|row| linalg::is_zero_vec(row))
    }

    pub fn apply(&self, alpha: &[Rat]) -> AlgVector {
        linalg::mat_vec(&self.matrix, alpha)
    }

    /// `r(a, b) = sum_{ij} r^{ij} a_i b_j`.
    pub fn eval(&self, a: &[Rat], b: &[Rat]) -> Rat {
        linalg::dot(a, &self.apply(b))
    }

    pub fn add(&self, other: &AlgBivector) -> AlgBivector {
        AlgBivector {
            matrix: self
                .matrix
                .iter()
                .zip(&other.matrix)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        }
    }

    /// Components in the basis whose vectors are the columns of `p`.
    pub fn change_basis(&self, p: &Matrix) -> Result<AlgBivector, LieError> {
        let q = linalg::inverse(p).ok_or(LieError::SingularBasisChange)?;
        let m = linalg::mat_mul(&linalg::mat_mul(&q, &self.matrix), &linalg::transpose(&q));
        Ok(AlgBivector { matrix: m })
    }

    /// Nonzero `(i, j, r^{ij})` with `i < j`.
    pub fn terms(&self) -> Vec<(usize, usize, Rat)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if !self.matrix[i][j].is_zero() {
                    out.push((i, j, self.matrix[i][j].clone()));
                }
            }
        }
        out
    }
}

/// Element of the third exterior power, stored on strictly increasing
/// index triples.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgTrivector {
    dim: usize,
    comps: BTreeMap<(usize, usize, usize), Rat>,
}

impl AlgTrivector {
    pub fn zero(dim: usize) -> Self {
        AlgTrivector {
            dim,
            comps: BTreeMap::new(),
        }
    }

    fn set(&mut self, i: usize, j: usize, k: usize, v: Rat) {
        if v.is_zero() {
            self.comps.remove(&(i, j, k));
        } else {
            self.comps.insert((i, j, k), v);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Component for any index order, with the permutation sign applied.
    pub fn get(&self, i: usize, j: usize, k: usize) -> Rat {
        let mut idx = [i, j, k];
        if i == j || j == k || i == k {
            return Rat::zero();
        }
        let mut sign = false;
        for a in 0..3 {
            for b in 0..2 - a {
                if idx[b] > idx[b + 1] {
                    idx.swap(b, b + 1);
                    sign = !sign;
                }
            }
        }
        let v = self
            .comps
            .get(&(idx[0], idx[1], idx[2]))
            .cloned()
            .unwrap_or_default();
        if sign {
            -v
        } else {
            v
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Rat)> {
        self.comps.iter()
    }

    /// Components in the basis whose vectors are the columns of `p`.
    pub fn change_basis(&self, p: &Matrix) -> Result<AlgTrivector, LieError> {
        let q = linalg::inverse(p).ok_or(LieError::SingularBasisChange)?;
        let n = self.dim;
        let mut out = AlgTrivector::zero(n);
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let mut s = Rat::zero();
                    for ((i, j, k), v) in &self.comps {
                        // sum over the 6 orderings of the stored triple
                        for (x, y, z, sg) in [
                            (*i, *j, *k, 1),
                            (*j, *k, *i, 1),
                            (*k, *i, *j, 1),
                            (*j, *i, *k, -1),
                            (*i, *k, *j, -1),
                            (*k, *j, *i, -1),
                        ] {
                            let t = &(&(&q[a][x] * &q[b][y]) * &q[c][z]) * v;
                            if sg > 0 {
                                s += &t;
                            } else {
                                s -= &t;
                            }
                        }
                    }
                    out.set(a, b, c, s);
                }
            }
        }
        Ok(out)
    }
}

/// `[r,r](a,b,c) = a([r(b), r(c)]) + b([r(c), r(a)]) + c([r(a), r(b)])`,
/// evaluated on dual basis triples.
pub fn yang_baxter_bracket(alg: &LieAlgebra, r: &AlgBivector) -> Result<AlgTrivector, LieError> {
    let n = alg.dim();
    if r.dim() != n {
        return Err(LieError::DimensionMismatch {
            expected: n,
            got: r.dim(),
        });
    }
    let images: Vec<AlgVector> = (0..n).map(|i| r.apply(&unit(n, i))).collect();
    let mut out = AlgTrivector::zero(n);
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let v = &(&alg.bracket(&images[j], &images[k])[i]
                    + &alg.bracket(&images[k], &images[i])[j])
                    + &alg.bracket(&images[i], &images[j])[k];
                out.set(i, j, k, v);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_passes_jacobi() {
        assert!(jacobi_check(&BracketTable::with_dim(4)).passed());
    }

    #[test]
    fn catalog_algebras_pass_jacobi() {
        assert!(jacobi_check(catalog::aff1().table()).passed());
        assert!(jacobi_check(catalog::oscillator(Rat::one(), Rat::one()).table()).passed());
        assert!(jacobi_check(catalog::heisenberg().table()).passed());
        assert!(jacobi_check(catalog::sl2().table()).passed());
    }

    #[test]
    fn jacobi_failure_reports_first_triple() {
        // [u1,u2]=u3, [u2,u3]=u1, [u1,u3]=u1 is not a Lie algebra
        let mut t = BracketTable::with_dim(3);
        let r = |a: i64, b: i64, c: i64| vec![Rat::from_int(a), Rat::from_int(b), Rat::from_int(c)];
        t.set(0, 1, r(0, 0, 1)).unwrap();
        t.set(1, 2, r(1, 0, 0)).unwrap();
        t.set(0, 2, r(1, 0, 0)).unwrap();
        match jacobi_check(&t) {
            JacobiVerdict::Fail { triple, .. } => assert_eq!(triple, (0, 1, 2)),
            JacobiVerdict::Pass => panic!("expected a Jacobi failure"),
        }
        assert!(LieAlgebra::new(t).is_err());
    }

    #[test]
    fn bracket_table_requires_ordered_pairs() {
        let mut t = BracketTable::with_dim(2);
        assert!(t.set(1, 0, vec![Rat::one(), Rat::zero()]).is_err());
        assert!(t.set(0, 1, vec![Rat::one()]).is_err());
    }

    #[test]
    fn zero_bivector_solves_yang_baxter() {
        let alg = catalog::heisenberg();
        assert!(yang_baxter_bracket(&alg, &AlgBivector::zero(3)).unwrap().is_zero());
        assert!(yang_baxter_bracket(&alg, &AlgBivector::zero(2)).is_err());
    }

    #[test]
    fn trivector_sign_convention() {
        let mut t = AlgTrivector::zero(3);
        t.set(0, 1, 2, Rat::one());
        assert_eq!(t.get(1, 0, 2), Rat::from_int(-1));
        assert_eq!(t.get(2, 0, 1), Rat::one());
        assert_eq!(t.get(0, 0, 2), Rat::zero());
    }

    #[test]
    fn bivector_terms_validate() {
        assert!(AlgBivector::from_terms(2, &[(0, 0, Rat::one())]).is_err());
        let r = AlgBivector::from_terms(3, &[(2, 0, Rat::one())]).unwrap();
        assert_eq!(r.coeff(0, 2), &Rat::from_int(-1));
        let mut bad = linalg::zeros(2, 2);
        bad[0][1] = Rat::one();
        assert!(AlgBivector::from_matrix(bad).is_err());
    }
}
