use super::{unit, AlgBivector, AlgVector, LieAlgebra, LieError};
use crate::polyalg::linalg::{self, Matrix};
use crate::polyalg::Rat;

/// A subspace `S` of the algebra together with a nondegenerate 2-form on it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubspaceForm {
    basis: Vec<AlgVector>,
    form: Matrix,
}

impl SubspaceForm {
    /// `form[a][b]` is `w(s_a, s_b)` for the given basis vectors.
    pub fn new(basis: Vec<AlgVector>, form: Matrix) -> Result<Self, LieError> {
        let p = basis.len();
        if p == 0 {
            return Err(LieError::Degenerate("empty subspace"));
        }
        let n = basis[0].len();
        if let Some(bad) = basis.iter().find(|v| v.len() != n) {
            return Err(LieError::DimensionMismatch {
                expected: n,
                got: bad.len(),
            });
        }
        if linalg::rank(&basis) < p {
            return Err(LieError::DependentBasis);
        }
        if form.len() != p || form.iter().any(|row| row.len() != p) {
            return Err(LieError::DimensionMismatch {
                expected: p,
                got: form.len(),
            });
        }
        for i in 0..p {
            for j in 0..p {
                if form[i][j] != -&form[j][i] {
                    return Err(LieError::NotAntisymmetric(i, j));
                }
            }
        }
        if linalg::det(&form).is_zero() {
            return Err(LieError::Degenerate("form is degenerate on the subspace"));
        }
        Ok(SubspaceForm { basis, form })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis[0].len()
    }

    pub fn basis(&self) -> &[AlgVector] {
        &self.basis
    }

    pub fn form(&self) -> &Matrix {
        &self.form
    }

    /// `w(a, b)` for vectors given in subspace coordinates.
    pub fn omega(&self, a: &[Rat], b: &[Rat]) -> Rat {
        linalg::dot(a, &linalg::mat_vec(&self.form, b))
    }

    /// Coordinates of an ambient vector in the subspace basis, if it lies in `S`.
    pub fn coords(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        linalg::solve(&linalg::transpose(&self.basis), v)
    }

    pub fn ambient(&self, coords: &[Rat]) -> AlgVector {
        let n = self.ambient_dim();
        let mut out = vec![Rat::zero(); n];
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                *o += &(c * x);
            }
        }
        out
    }

    /// Structure constants of `S` in its own basis, or the first pair whose
    /// bracket leaves `S`.
    fn structure(&self, alg: &LieAlgebra) -> Result<Vec<Vec<Vec<Rat>>>, (usize, usize)> {
        let p = self.dim();
        let mut c = vec![vec![vec![Rat::zero(); p]; p]; p];
        for i in 0..p {
            for j in i + 1..p {
                let w = alg.bracket(&self.basis[i], &self.basis[j]);
                let cw = self.coords(&w).ok_or((i, j))?;
                c[j][i] = cw.iter().map(|x| -x).collect();
                c[i][j] = cw;
            }
        }
        Ok(c)
    }
}

/// Reduced basis of `Im r`.
pub fn image_basis(r: &AlgBivector) -> Vec<AlgVector> {
    linalg::row_space_basis(r.matrix())
}

/// The form `w(u, v) = r(a, b)` where `r(a) = u`, `r(b) = v`, computed from
/// explicitly supplied antecedents.
pub fn form_on_image(
    r: &AlgBivector,
    basis: &[AlgVector],
    antecedents: &[AlgVector],
) -> Result<Matrix, LieError> {
    if basis.len() != antecedents.len() {
        return Err(LieError::DimensionMismatch {
            expected: basis.len(),
            got: antecedents.len(),
        });
    }
    for (u, a) in basis.iter().zip(antecedents) {
        if &r.apply(a) != u {
            return Err(LieError::Degenerate("antecedent does not map onto its basis vector"));
        }
    }
    Ok(antecedents
        .iter()
        .map(|a| antecedents.iter().map(|b| r.eval(a, b)).collect())
        .collect())
}

/// `(Im r, w_r)` with canonical antecedents: lowest-index pivots, free
/// variables zero.
pub fn image_form(alg: &LieAlgebra, r: &AlgBivector) -> Result<SubspaceForm, LieError> {
    if r.dim() != alg.dim() {
        return Err(LieError::DimensionMismatch {
            expected: alg.dim(),
            got: r.dim(),
        });
    }
    if r.is_zero() {
        return Err(LieError::Degenerate("r = 0 has an empty image"));
    }
    let basis = image_basis(r);
    let antecedents: Vec<AlgVector> = basis
        .iter()
        .map(|u| linalg::solve(r.matrix(), u).expect("image vector has an antecedent"))
        .collect();
    let form = form_on_image(r, &basis, &antecedents)?;
    SubspaceForm::new(basis, form)
}

/// `r = w# o i*`: the bivector whose image is `S` and whose form is `w`.
pub fn bivector_from_subspace_form(
    alg: &LieAlgebra,
    sf: &SubspaceForm,
) -> Result<AlgBivector, LieError> {
    if sf.ambient_dim() != alg.dim() {
        return Err(LieError::DimensionMismatch {
            expected: alg.dim(),
            got: sf.ambient_dim(),
        });
    }
    let winv_t = linalg::inverse(&linalg::transpose(sf.form()))
        .ok_or(LieError::Degenerate("form is degenerate on the subspace"))?;
    let v = linalg::transpose(&sf.basis); // n x p
    let r = linalg::mat_mul(&linalg::mat_mul(&v, &winv_t), &sf.basis);
    AlgBivector::from_matrix(r)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CocycleVerdict {
    Symplectic,
    /// `[s_i, s_j]` is not in the subspace.
    NotSubalgebra {
        pair: (usize, usize),
        bracket: AlgVector,
    },
    /// The cyclic sum is nonzero on this basis triple.
    CocycleFails {
        triple: (usize, usize, usize),
        value: Rat,
    },
}

impl CocycleVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, CocycleVerdict::Symplectic)
    }
}

/// Subalgebra closure, then `w([x,y],z) + w([y,z],x) + w([z,x],y) = 0` on
/// every basis triple of `S`.
pub fn cocycle_check(alg: &LieAlgebra, sf: &SubspaceForm) -> CocycleVerdict {
    let c = match sf.structure(alg) {
        Ok(c) => c,
        Err((i, j)) => {
            return CocycleVerdict::NotSubalgebra {
                pair: (i, j),
                bracket: alg.bracket(&sf.basis[i], &sf.basis[j]),
            }
        }
    };
    let p = sf.dim();
    let e = |i: usize| unit(p, i);
    for i in 0..p {
        for j in i + 1..p {
            for k in j + 1..p {
                let v = &(&sf.omega(&c[i][j], &e(k)) + &sf.omega(&c[j][k], &e(i)))
                    + &sf.omega(&c[k][i], &e(j));
                if !v.is_zero() {
                    return CocycleVerdict::CocycleFails {
                        triple: (i, j, k),
                        value: v,
                    };
                }
            }
        }
    }
    CocycleVerdict::Symplectic
}

/// `(e_1..e_p, f_1..f_p)` with `w(e_i, f_j) = delta_ij` and all other
/// pairings zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DarbouxBasis {
    pub e: Vec<AlgVector>,
    pub f: Vec<AlgVector>,
    /// The same vectors in subspace coordinates.
    pub e_coords: Vec<Vec<Rat>>,
    pub f_coords: Vec<Vec<Rat>>,
}

impl DarbouxBasis {
    pub fn half_dim(&self) -> usize {
        self.e.len()
    }

    /// Checks the defining pairings against `sf`.
    pub fn is_valid_for(&self, sf: &SubspaceForm) -> bool {
        let p = self.half_dim();
        (0..p).all(|i| {
            (0..p).all(|j| {
                let delta = if i == j { Rat::one() } else { Rat::zero() };
                sf.omega(&self.e_coords[i], &self.f_coords[j]) == delta
                    && sf.omega(&self.e_coords[i], &self.e_coords[j]).is_zero()
                    && sf.omega(&self.f_coords[i], &self.f_coords[j]).is_zero()
            })
        }) && 2 * p == sf.dim()
    }
}

/// Greedy symplectic Gram-Schmidt with lowest-index tie-breaking.
pub fn darboux_basis(sf: &SubspaceForm) -> Result<DarbouxBasis, LieError> {
    let p = sf.dim();
    let mut remaining: Vec<Vec<Rat>> = (0..p).map(|i| unit(p, i)).collect();
    let mut es = Vec::new();
    let mut fs = Vec::new();
    while !remaining.is_empty() {
        let e = remaining.remove(0);
        let k = remaining
            .iter()
            .position(|w| !sf.omega(&e, w).is_zero())
            .ok_or(LieError::Degenerate("form is degenerate on the subspace"))?;
        let raw = remaining.remove(k);
        let scale = sf.omega(&e, &raw).recip().unwrap();
        let f: Vec<Rat> = raw.iter().map(|x| x * &scale).collect();
        for w in remaining.iter_mut() {
            let wf = sf.omega(w, &f);
            let we = sf.omega(w, &e);
            for t in 0..p {
                let d = &(&wf * &e[t]) - &(&we * &f[t]);
                w[t] -= &d;
            }
        }
        es.push(e);
        fs.push(f);
    }
    let basis = DarbouxBasis {
        e: es.iter().map(|c| sf.ambient(c)).collect(),
        f: fs.iter().map(|c| sf.ambient(c)).collect(),
        e_coords: es,
        f_coords: fs,
    };
    assert!(basis.is_valid_for(sf), "symplectic Gram-Schmidt postcondition");
    Ok(basis)
}

/// Both unimodularity routes for a subalgebra with a form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnimodularReport {
    /// `tr(ad_{s_i}|_S)` for each basis vector.
    pub traces: Vec<Rat>,
    /// `sum_i [e_i, f_i]` over a Darboux basis.
    pub darboux_sum: AlgVector,
}

impl UnimodularReport {
    pub fn trace_route(&self) -> bool {
        self.traces.iter().all(Rat::is_zero)
    }

    pub fn darboux_route(&self) -> bool {
        linalg::is_zero_vec(&self.darboux_sum)
    }

    pub fn routes_agree(&self) -> bool {
        self.trace_route() == self.darboux_route()
    }

    pub fn unimodular(&self) -> bool {
        self.trace_route()
    }
}

/// Unimodularity of `S` by traces of `ad` and by the Darboux-basis sum.
/// The two routes agree whenever `w` is a 2-cocycle.
pub fn unimodular_check(alg: &LieAlgebra, sf: &SubspaceForm) -> Result<UnimodularReport, LieError> {
    let c = sf
        .structure(alg)
        .map_err(|(i, j)| LieError::NotSubalgebra { i, j })?;
    let p = sf.dim();
    let traces = (0..p).map(|z| (0..p).map(|b| c[z][b][b].clone()).sum()).collect();
    let darboux = darboux_basis(sf)?;
    let mut darboux_sum = vec![Rat::zero(); alg.dim()];
    for (e, f) in darboux.e.iter().zip(&darboux.f) {
        for (acc, x) in darboux_sum.iter_mut().zip(alg.bracket(e, f)) {
            *acc += &x;
        }
    }
    Ok(UnimodularReport {
        traces,
        darboux_sum,
    })
}

/// Multiplication table of the left-symmetric product on `S`, in subspace
/// coordinates: `product[i][j]` is `A_{s_i} s_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftSymmetricTable {
    pub product: Vec<Vec<Vec<Rat>>>,
    structure: Vec<Vec<Vec<Rat>>>,
}

impl LeftSymmetricTable {
    pub fn dim(&self) -> usize {
        self.product.len()
    }

    /// `A_x y` for `x`, `y` in subspace coordinates.
    pub fn apply(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        bilinear(&self.product, x, y)
    }

    fn bracket(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        bilinear(&self.structure, x, y)
    }

    /// Returns the first basis index tuple violating `A_x y - A_y x = [x,y]`
    /// (property 1) or `A_{[x,y]} z = A_x A_y z - A_y A_x z` (property 2).
    pub fn first_violation(&self) -> Option<(u8, Vec<usize>)> {
        let p = self.dim();
        let e = |i: usize| unit(p, i);
        for i in 0..p {
            for j in 0..p {
                let lhs = sub(&self.apply(&e(i), &e(j)), &self.apply(&e(j), &e(i)));
                if lhs != self.bracket(&e(i), &e(j)) {
                    return Some((1, vec![i, j]));
                }
            }
        }
        for i in 0..p {
            for j in 0..p {
                let xy = self.bracket(&e(i), &e(j));
                for k in 0..p {
                    let lhs = self.apply(&xy, &e(k));
                    let a = self.apply(&e(i), &self.apply(&e(j), &e(k)));
                    let b = self.apply(&e(j), &self.apply(&e(i), &e(k)));
                    if lhs != sub(&a, &b) {
                        return Some((2, vec![i, j, k]));
                    }
                }
            }
        }
        None
    }
}

fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn bilinear(table: &[Vec<Vec<Rat>>], x: &[Rat], y: &[Rat]) -> Vec<Rat> {
    let p = table.len();
    let mut out = vec![Rat::zero(); p];
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            let w = xi * yj;
            for (o, c) in out.iter_mut().zip(&table[i][j]) {
                *o += &(&w * c);
            }
        }
    }
    out
}

/// Solves `w(A_x y, z) = -w(y, [x, z])` for every basis pair.
pub fn left_symmetric_product(
    alg: &LieAlgebra,
    sf: &SubspaceForm,
) -> Result<LeftSymmetricTable, LieError> {
    match cocycle_check(alg, sf) {
        CocycleVerdict::Symplectic => {}
        CocycleVerdict::NotSubalgebra { pair: (i, j), .. } => {
            return Err(LieError::NotSubalgebra { i, j })
        }
        CocycleVerdict::CocycleFails { .. } => return Err(LieError::NotSymplectic),
    }
    let structure = sf.structure(alg).expect("closure already checked");
    let p = sf.dim();
    let wt = linalg::transpose(sf.form());
    let e = |i: usize| unit(p, i);
    let product = (0..p)
        .map(|i| {
            (0..p)
                .map(|j| {
                    let rhs: Vec<Rat> = (0..p)
                        .map(|c| -sf.omega(&e(j), &structure[i][c]))
                        .collect();
                    linalg::solve(&wt, &rhs).expect("nondegenerate form")
                })
                .collect()
        })
        .collect();
    Ok(LeftSymmetricTable { product, structure })
}

/// Which of the four Darboux-basis relation families failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationFamily {
    /// `C_{v_j v_k}^{u_i} + C_{v_k v_i}^{u_j} + C_{v_i v_j}^{u_k}`
    Vvv,
    /// `C_{u_j u_k}^{v_i} + C_{u_k u_i}^{v_j} + C_{u_i u_j}^{v_k}`
    Uuu,
    /// `C_{u_j u_k}^{u_i} - C_{u_k v_i}^{v_j} - C_{v_i u_j}^{v_k}`
    Uuv,
    /// `C_{v_i v_j}^{v_k} - C_{u_k v_i}^{u_j} - C_{v_j u_k}^{u_i}`
    Uvv,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructureVerdict {
    Holds,
    Violated {
        family: RelationFamily,
        indices: (usize, usize, usize),
        value: Rat,
    },
    NotSubalgebra {
        pair: (usize, usize),
    },
}

impl StructureVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, StructureVerdict::Holds)
    }
}

/// The four structure-constant relation families in a Darboux basis
/// `(u_1..u_p, v_1..v_p)` of `(S, w)`.
pub fn structure_relation_check(alg: &LieAlgebra, sf: &SubspaceForm) -> StructureVerdict {
    if let Err(pair) = sf.structure(alg) {
        return StructureVerdict::NotSubalgebra { pair };
    }
    let darboux = match darboux_basis(sf) {
        Ok(d) => d,
        Err(_) => unreachable!("SubspaceForm guarantees a nondegenerate form"),
    };
    let p = darboux.half_dim();
    // Darboux basis as rows; index t < p is u_t, t >= p is v_{t-p}
    let rows: Vec<AlgVector> = darboux.e.iter().chain(&darboux.f).cloned().collect();
    let cols = linalg::transpose(&rows);
    let mut consts = vec![vec![Vec::new(); 2 * p]; 2 * p];
    for a in 0..2 * p {
        for b in 0..2 * p {
            let w = alg.bracket(&rows[a], &rows[b]);
            consts[a][b] = linalg::solve(&cols, &w).expect("bracket stays in S");
        }
    }
    let u = |i: usize| i;
    let v = |i: usize| p + i;
    let c = |x: usize, y: usize, w: usize| consts[x][y][w].clone();
    for i in 0..p {
        for j in 0..p {
            for k in 0..p {
                let families = [
                    (
                        RelationFamily::Vvv,
                        c(v(j), v(k), u(i)) + c(v(k), v(i), u(j)) + c(v(i), v(j), u(k)),
                    ),
                    (
                        RelationFamily::Uuu,
                        c(u(j), u(k), v(i)) + c(u(k), u(i), v(j)) + c(u(i), u(j), v(k)),
                    ),
                    (
                        RelationFamily::Uuv,
                        c(u(j), u(k), u(i)) - c(u(k), v(i), v(j)) - c(v(i), u(j), v(k)),
                    ),
                    (
                        RelationFamily::Uvv,
                        c(v(i), v(j), v(k)) - c(u(k), v(i), u(j)) - c(v(j), u(k), u(i)),
                    ),
                ];
                for (family, value) in families {
                    if !value.is_zero() {
                        return StructureVerdict::Violated {
                            family,
                            indices: (i, j, k),
                            value,
                        };
                    }
                }
            }
        }
    }
    StructureVerdict::Holds
}
