#![allow(clippy::needless_range_loop)]
//! Generators and independent reference computations shared by the
//! integration suites.
#![allow(dead_code)]

use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use cybe_core::geomcalc::{Chart, KForm, VectorField};
use cybe_core::liealg::{AlgBivector, BracketTable, LieAlgebra};
use cybe_core::poisson::ActionSetup;
use cybe_core::polyalg::linalg::{self, Matrix};
use cybe_core::polyalg::{parse_poly, MultiPoly, Rat, Vars};

pub const COORDS: [&str; 4] = ["x", "y", "z", "w"];

pub fn chart(n: usize) -> Chart {
    Chart::new(&COORDS[..n]).unwrap()
}

pub fn p(chart: &Chart, s: &str) -> MultiPoly {
    parse_poly(s, chart.vars()).unwrap()
}

pub fn field(chart: &Chart, comps: &[&str]) -> VectorField {
    VectorField::new(chart, comps.iter().map(|s| p(chart, s)).collect()).unwrap()
}

pub fn one_form(chart: &Chart, comps: &[&str]) -> KForm {
    KForm::one_form(chart, comps.iter().map(|s| p(chart, s)).collect()).unwrap()
}

pub fn coframe(chart: &Chart) -> Vec<KForm> {
    (0..chart.dim()).map(|i| KForm::basis(chart, &[i])).collect()
}

pub fn int(n: i64) -> Rat {
    Rat::from_int(n)
}

pub fn unit(n: usize, i: usize) -> Vec<Rat> {
    (0..n).map(|k| if k == i { Rat::one() } else { Rat::zero() }).collect()
}

/// Sorted index sets of size `k` from `0..m`.
pub fn combos(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            go(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, k, &mut Vec::new(), &mut out);
    out
}

// ---- strategies ----

pub fn rat() -> impl Strategy<Value = Rat> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| Rat::new(n, d).unwrap())
}

pub fn small_int() -> impl Strategy<Value = Rat> {
    (-3i64..=3).prop_map(Rat::from_int)
}

/// Exponent vectors in `n` variables of total degree at most `deg`.
pub fn monomials(n: usize, deg: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..=deg {
        for mut rest in monomials(n - 1, deg - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Polynomials of total degree at most `deg` with at most `terms` terms.
pub fn poly(vars: Vars, deg: u32, terms: usize) -> impl Strategy<Value = MultiPoly> {
    let monos = monomials(vars.len(), deg);
    let k = monos.len();
    prop::collection::vec((rat(), 0..k), 0..=terms).prop_map(move |ts| {
        MultiPoly::from_terms(&vars, ts.into_iter().map(|(c, i)| (monos[i].clone(), c)))
    })
}

pub fn vector_field(chart: Chart, deg: u32) -> impl Strategy<Value = VectorField> {
    let m = chart.dim();
    prop::collection::vec(poly(chart.vars().clone(), deg, 3), m)
        .prop_map(move |comps| VectorField::new(&chart, comps).unwrap())
}

pub fn kform(chart: Chart, k: usize, deg: u32) -> impl Strategy<Value = KForm> {
    let idx = combos(chart.dim(), k);
    prop::collection::vec(poly(chart.vars().clone(), deg, 3), idx.len()).prop_map(move |cs| {
        KForm::from_components(&chart, k, idx.iter().cloned().zip(cs).collect()).unwrap()
    })
}

pub fn any_kform(chart: Chart, deg: u32) -> impl Strategy<Value = KForm> {
    let m = chart.dim();
    (0..=m).prop_flat_map(move |k| kform(chart.clone(), k, deg))
}

/// Deterministic sampling outside of `proptest!` blocks.
pub fn runner(seed: u8) -> TestRunner {
    let config = Config {
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]))
}

pub fn sample<S: Strategy>(s: &S, runner: &mut TestRunner) -> S::Value {
    s.new_tree(runner).unwrap().current()
}

// ---- reference computations ----

/// `(L_X s)_I = X(s_I) + sum_p sum_j s_{I[p -> j]} d_{I_p} X^j`.
pub fn lie_derivative_oracle(x: &VectorField, s: &KForm) -> KForm {
    let chart = s.chart().clone();
    let m = chart.dim();
    let k = s.degree();
    let mut comps = Vec::new();
    for idx in combos(m, k) {
        let mut c = x.apply(&s.get(&idx));
        for pos in 0..k {
            for j in 0..m {
                let mut jdx = idx.clone();
                jdx[pos] = j;
                let coeff = s.get(&jdx);
                if !coeff.is_zero() {
                    c = &c + &(&coeff * &x.comp(j).diff_at(idx[pos]));
                }
            }
        }
        comps.push((idx, c));
    }
    KForm::from_components(&chart, k, comps).unwrap()
}

/// `[X, Y]^i = X(Y^i) - Y(X^i)`.
pub fn bracket_oracle(x: &VectorField, y: &VectorField) -> VectorField {
    let comps = (0..x.chart().dim())
        .map(|i| &x.apply(y.comp(i)) - &y.apply(x.comp(i)))
        .collect();
    VectorField::new(x.chart(), comps).unwrap()
}

/// `e^a([r e^b, r e^c])` summed cyclically, for every `a < b < c`.
pub fn yang_baxter_oracle(alg: &LieAlgebra, r: &AlgBivector) -> bool {
    let n = alg.dim();
    let img: Vec<Vec<Rat>> = (0..n).map(|i| r.apply(&unit(n, i))).collect();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let s = &(&alg.bracket(&img[b], &img[c])[a] + &alg.bracket(&img[c], &img[a])[b])
                    + &alg.bracket(&img[a], &img[b])[c];
                if !s.is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// Closure of `span(basis)` and the cocycle identity for the form with
/// Gram matrix `w` in that basis. `None` if the span is not a subalgebra.
pub fn cocycle_oracle(alg: &LieAlgebra, basis: &[Vec<Rat>], w: &Matrix) -> Option<bool> {
    let p = basis.len();
    let cols = linalg::transpose(&basis.to_vec());
    let mut c = vec![vec![Vec::new(); p]; p];
    for a in 0..p {
        for b in 0..p {
            c[a][b] = linalg::solve(&cols, &alg.bracket(&basis[a], &basis[b]))?;
        }
    }
    let om = |coef: &[Rat], t: usize| -> Rat { (0..p).map(|s| &coef[s] * &w[s][t]).sum() };
    for a in 0..p {
        for b in a + 1..p {
            for d in b + 1..p {
                let v = &(&om(&c[a][b], d) + &om(&c[b][d], a)) + &om(&c[d][a], b);
                if !v.is_zero() {
                    return Some(false);
                }
            }
        }
    }
    Some(true)
}

/// Whether `Im r` with `w(r a, r b) = b(r a)` is a symplectic subalgebra,
/// computed from a row-reduced basis of the image.
pub fn symplectic_image_oracle(alg: &LieAlgebra, r: &AlgBivector) -> bool {
    if r.is_zero() {
        return true;
    }
    let basis = linalg::row_space_basis(r.matrix());
    let pre: Vec<Vec<Rat>> = basis.iter().map(|u| linalg::solve(r.matrix(), u).unwrap()).collect();
    let w: Matrix = (0..basis.len())
        .map(|a| (0..basis.len()).map(|b| linalg::dot(&pre[b], &basis[a])).collect())
        .collect();
    cocycle_oracle(alg, &basis, &w).unwrap_or(false)
}

/// Basis of the closed 2-forms `Z^2(g)` as antisymmetric matrices.
pub fn cocycle_space(alg: &LieAlgebra) -> Vec<Matrix> {
    let n = alg.dim();
    let pairs = combos(n, 2);
    let triples = combos(n, 3);
    let e = |i| unit(n, i);
    // unknown w_{ab}, a < b; one equation per triple
    let coeff = |x: &[Rat], t: usize, pair: &[usize]| -> Rat {
        let (a, b) = (pair[0], pair[1]);
        if b == t {
            x[a].clone()
        } else if a == t {
            -&x[b]
        } else {
            Rat::zero()
        }
    };
    let rows: Matrix = triples
        .iter()
        .map(|tr| {
            let (i, j, k) = (tr[0], tr[1], tr[2]);
            let terms = [
                (alg.bracket(&e(i), &e(j)), k),
                (alg.bracket(&e(j), &e(k)), i),
                (alg.bracket(&e(k), &e(i)), j),
            ];
            pairs
                .iter()
                .map(|pr| terms.iter().map(|(x, t)| coeff(x, *t, pr)).sum())
                .collect()
        })
        .collect();
    let sols = if rows.is_empty() {
        (0..pairs.len()).map(|i| unit(pairs.len(), i)).collect()
    } else {
        linalg::nullspace(&rows)
    };
    sols.into_iter()
        .map(|v| {
            let mut m = linalg::zeros(n, n);
            for (pr, c) in pairs.iter().zip(v) {
                m[pr[1]][pr[0]] = -&c;
                m[pr[0]][pr[1]] = c;
            }
            m
        })
        .collect()
}

pub type Bracket<'a> = (usize, usize, &'a [(usize, i64)]);

pub fn algebra(names: &[&str], brackets: &[Bracket]) -> LieAlgebra {
    let n = names.len();
    let mut t = BracketTable::new(names.iter().map(|s| s.to_string()).collect());
    for (i, j, terms) in brackets {
        let mut v = vec![Rat::zero(); n];
        for (k, c) in terms.iter() {
            v[*k] = int(*c);
        }
        t.set(*i, *j, v).unwrap();
    }
    LieAlgebra::new(t).unwrap()
}

/// Four-dimensional algebras used by the equivalence suites.
pub fn four_dim_algebras() -> Vec<(&'static str, LieAlgebra)> {
    vec![
        ("abelian", LieAlgebra::abelian(4)),
        ("heisenberg+line", algebra(&["e0", "e1", "e2", "ec1"], &[(1, 3, &[(0, 1)])])),
        ("aff1+aff1", algebra(&["a1", "a2", "b1", "b2"], &[(0, 1, &[(0, 1)]), (2, 3, &[(2, 1)])])),
        ("aff1+plane", algebra(&["a1", "a2", "b1", "b2"], &[(0, 1, &[(0, 1)])])),
        (
            "d4",
            algebra(&["e1", "e2", "e3", "e4"], &[(0, 1, &[(2, 1)]), (0, 3, &[(0, -1)]), (1, 3, &[(1, 1)])]),
        ),
    ]
}

pub fn random_matrix(n: usize, runner: &mut TestRunner) -> Matrix {
    sample(&prop::collection::vec(prop::collection::vec(-2i64..=2, n), n), runner)
        .into_iter()
        .map(|row| row.into_iter().map(int).collect())
        .collect()
}

pub fn random_invertible(n: usize, runner: &mut TestRunner) -> Matrix {
    loop {
        let m = random_matrix(n, runner);
        if !linalg::det(&m).is_zero() {
            return m;
        }
    }
}

pub fn random_antisymmetric(n: usize, runner: &mut TestRunner) -> Matrix {
    let mut m = random_matrix(n, runner);
    for i in 0..n {
        m[i][i] = Rat::zero();
        for j in 0..i {
            m[i][j] = -&m[j][i];
        }
    }
    m
}

/// A random nondegenerate element of `Z^2(g)`, if the random combination
/// hits one within a few tries.
pub fn random_symplectic_cocycle(alg: &LieAlgebra, runner: &mut TestRunner) -> Option<Matrix> {
    let space = cocycle_space(alg);
    if space.is_empty() {
        return None;
    }
    let n = alg.dim();
    for _ in 0..20 {
        let cs = sample(&prop::collection::vec(-3i64..=3, space.len()), runner);
        let mut w = linalg::zeros(n, n);
        for (b, c) in space.iter().zip(cs) {
            for i in 0..n {
                for j in 0..n {
                    w[i][j] += &(&b[i][j] * &int(c));
                }
            }
        }
        if !linalg::det(&w).is_zero() {
            return Some(w);
        }
    }
    None
}

// ---- actions ----

pub struct Example {
    pub name: String,
    pub action: ActionSetup,
    pub r: AlgBivector,
}

pub fn translations(n: usize) -> Example {
    let c = chart(n);
    let fields = (0..n).map(|i| VectorField::coordinate(&c, i)).collect();
    let terms: Vec<_> = (0..n / 2).map(|k| (2 * k, 2 * k + 1, Rat::one())).collect();
    Example {
        name: format!("translations-r{n}"),
        action: ActionSetup::new(LieAlgebra::abelian(n), c, fields).unwrap(),
        r: AlgBivector::from_terms(n, &terms).unwrap(),
    }
}

pub fn aff1_remark() -> Example {
    let c = chart(2);
    Example {
        name: "remark-aff1".into(),
        action: ActionSetup::new(
            cybe_core::liealg::catalog::aff1(),
            c.clone(),
            vec![field(&c, &["1", "0"]), field(&c, &["x", "0"])],
        )
        .unwrap(),
        r: AlgBivector::from_terms(2, &[(0, 1, Rat::one())]).unwrap(),
    }
}

/// The abelian span of `e0, e1, e2` in the oscillator algebra acting by
/// `d/dz, y d/dx, y^2 d/dx`.
pub fn oscillator_abelian() -> Example {
    let c = chart(3);
    Example {
        name: "oscillator-abelian".into(),
        action: ActionSetup::new(
            LieAlgebra::abelian(3),
            c.clone(),
            vec![field(&c, &["0", "0", "1"]), field(&c, &["y", "0", "0"]), field(&c, &["y^2", "0", "0"])],
        )
        .unwrap(),
        r: AlgBivector::from_terms(3, &[(0, 1, Rat::one())]).unwrap(),
    }
}

/// The Heisenberg-plus-line subalgebra of the oscillator algebra acting
/// freely on a 4-chart.
pub fn heisenberg_free() -> Example {
    let c = chart(4);
    let alg = algebra(&["e0", "e1", "e2", "ec1"], &[(1, 3, &[(0, 1)])]);
    Example {
        name: "heisenberg-free".into(),
        action: ActionSetup::new(
            alg,
            c.clone(),
            vec![
                field(&c, &["0", "0", "1", "0"]),
                field(&c, &["1", "0", "0", "0"]),
                field(&c, &["0", "0", "0", "1"]),
                field(&c, &["0", "1", "x", "0"]),
            ],
        )
        .unwrap(),
        r: AlgBivector::from_terms(4, &[(0, 1, Rat::one()), (2, 3, Rat::one())]).unwrap(),
    }
}

/// An abelian two-dimensional algebra acting on a 3-chart by `d/dx` and
/// `f(z) d/dx + g(z) d/dy`, with `r = c e1^e2`. Any `r` on an abelian
/// algebra solves the classical Yang-Baxter equation.
pub fn random_abelian(runner: &mut TestRunner) -> Example {
    let c = chart(3);
    let z_poly = prop::collection::vec(-3i64..=3, 3);
    let (f, g) = sample(&(z_poly.clone(), z_poly), runner);
    let in_z = |cs: &[i64]| {
        MultiPoly::from_terms(c.vars(), cs.iter().enumerate().map(|(k, a)| (vec![0, 0, k as u32], int(*a))))
    };
    let coeff = loop {
        let v = sample(&rat(), runner);
        if !v.is_zero() {
            break v;
        }
    };
    let fields = vec![
        VectorField::coordinate(&c, 0),
        VectorField::new(&c, vec![in_z(&f), in_z(&g), c.zero()]).unwrap(),
    ];
    Example {
        name: format!("random-abelian(f={}, g={}, c={coeff})", in_z(&f), in_z(&g)),
        action: ActionSetup::new(LieAlgebra::abelian(2), c, fields).unwrap(),
        r: AlgBivector::from_terms(2, &[(0, 1, coeff)]).unwrap(),
    }
}

/// `r = u^v` on the Heisenberg algebra acting by `d/dx, d/dy + x d/dz, d/dz`.
pub fn heisenberg_control() -> Example {
    let c = chart(3);
    Example {
        name: "heisenberg-control".into(),
        action: ActionSetup::new(
            cybe_core::liealg::catalog::heisenberg(),
            c.clone(),
            vec![field(&c, &["1", "0", "0"]), field(&c, &["0", "1", "x"]), field(&c, &["0", "0", "1"])],
        )
        .unwrap(),
        r: AlgBivector::from_terms(3, &[(0, 1, Rat::one())]).unwrap(),
    }
}

// ---- identity checks shared by the property suites and the acceptance runner ----

pub type Check = Result<(), String>;

pub fn expect_eq<T: PartialEq + std::fmt::Display>(what: &str, a: &T, b: &T) -> Check {
    if a == b {
        Ok(())
    } else {
        Err(format!("{what}: {a} != {b}"))
    }
}

pub fn ring_axioms(a: &MultiPoly, b: &MultiPoly, c: &MultiPoly) -> Check {
    let zero = MultiPoly::zero(a.vars());
    let one = MultiPoly::one(a.vars());
    expect_eq("a+b = b+a", &(a + b), &(b + a))?;
    expect_eq("ab = ba", &(a * b), &(b * a))?;
    expect_eq("(a+b)+c = a+(b+c)", &(&(a + b) + c), &(a + &(b + c)))?;
    expect_eq("(ab)c = a(bc)", &(&(a * b) * c), &(a * &(b * c)))?;
    expect_eq("a(b+c) = ab+ac", &(a * &(b + c)), &(&(a * b) + &(a * c)))?;
    expect_eq("a+0 = a", &(a + &zero), a)?;
    expect_eq("a*1 = a", &(a * &one), a)?;
    let a2 = a.clone();
    expect_eq("a-a = 0", &(a - &a2), &zero)?;
    expect_eq("a*0 = 0", &(a * &zero), &zero)
}

pub fn poly_roundtrip(a: &MultiPoly) -> Check {
    let back = parse_poly(&a.to_string(), a.vars()).map_err(|e| format!("reparse of {a}: {e}"))?;
    expect_eq("parse(emit(p))", &back, a)
}

pub fn d_squared(s: &KForm) -> Check {
    let dd = s.exterior_d().exterior_d();
    if dd.is_zero() {
        Ok(())
    } else {
        Err(format!("d d ({s}) = {dd}"))
    }
}

pub fn cartan(x: &VectorField, s: &KForm) -> Check {
    let oracle = lie_derivative_oracle(x, s);
    expect_eq("L_X (library vs coordinates)", &s.lie_derivative(x), &oracle)?;
    let mut rhs = s.exterior_d().interior_vector(x);
    if s.degree() > 0 {
        rhs = rhs.add(&s.interior_vector(x).exterior_d());
    }
    expect_eq("L_X = i_X d + d i_X", &oracle, &rhs)
}

pub fn vf_jacobi(x: &VectorField, y: &VectorField, z: &VectorField) -> Check {
    use cybe_core::geomcalc::vf_bracket;
    let b = |a: &VectorField, c: &VectorField| vf_bracket(a, c).unwrap();
    expect_eq("[X,Y] (library vs coordinates)", &b(x, y), &bracket_oracle(x, y))?;
    let j = b(x, &b(y, z)).add(&b(y, &b(z, x))).add(&b(z, &b(x, y)));
    if j.is_zero() {
        Ok(())
    } else {
        Err(format!("Jacobi sum = {j}"))
    }
}

/// `d(i_{X^Y} e) = i_{[X,Y]} e - i_X L_Y e + i_Y L_X e`.
pub fn identity_chain(x: &VectorField, y: &VectorField, eps: &KForm) -> Check {
    use cybe_core::geomcalc::{interior_product, vf_bracket};
    let xy = x.to_multivector().wedge(&y.to_multivector());
    let lhs = interior_product(&xy, eps).unwrap().exterior_d();
    let xy_br = vf_bracket(x, y).unwrap();
    let rhs = eps
        .interior_vector(&xy_br)
        .sub(&eps.lie_derivative(y).interior_vector(x))
        .add(&eps.lie_derivative(x).interior_vector(y));
    expect_eq("d(i_{X^Y} e)", &lhs, &rhs)
}

// ---- equivalence-suite instances ----

pub struct BivectorCase {
    pub name: String,
    pub alg: LieAlgebra,
    pub r: AlgBivector,
}

/// Known solutions moved by random basis changes, mixed with random
/// bivectors that mostly fail.
pub fn bivector_cases(count: usize, runner: &mut TestRunner) -> Vec<BivectorCase> {
    use cybe_core::liealg::catalog;
    let one = Rat::one();
    let seeds: Vec<(&str, LieAlgebra, AlgBivector)> = vec![
        ("aff1", catalog::aff1(), AlgBivector::from_terms(2, &[(0, 1, one.clone())]).unwrap()),
        ("heisenberg", catalog::heisenberg(), AlgBivector::from_terms(3, &[(0, 2, one.clone())]).unwrap()),
        ("sl2", catalog::sl2(), AlgBivector::from_terms(3, &[(0, 1, one.clone())]).unwrap()),
        (
            "oscillator",
            catalog::oscillator(one.clone(), one.clone()),
            AlgBivector::from_terms(6, &[(1, 2, one.clone()), (3, 4, one.clone())]).unwrap(),
        ),
    ];
    let mut all: Vec<(String, LieAlgebra, Option<AlgBivector>)> =
        seeds.into_iter().map(|(n, a, r)| (n.to_string(), a, Some(r))).collect();
    for (n, a) in four_dim_algebras() {
        all.push((n.to_string(), a, None));
    }
    let mut out = Vec::new();
    let mut k = 0;
    while out.len() < count {
        let (name, alg, known) = &all[k % all.len()];
        let n = alg.dim();
        let flavour = (k / all.len()) % 3;
        k += 1;
        let case = match (flavour, known) {
            (0, Some(r)) => {
                let pm = random_invertible(n, runner);
                BivectorCase {
                    name: format!("{name} known solution, random basis"),
                    alg: alg.change_basis(&pm).unwrap(),
                    r: r.change_basis(&pm).unwrap(),
                }
            }
            (0, None) => match random_symplectic_cocycle(alg, runner) {
                Some(w) => BivectorCase {
                    name: format!("{name} inverse of a symplectic cocycle"),
                    alg: alg.clone(),
                    r: AlgBivector::from_matrix(linalg::inverse(&w).unwrap()).unwrap(),
                },
                None => continue,
            },
            _ => {
                let m = random_antisymmetric(n, runner);
                if m.iter().flatten().all(Rat::is_zero) {
                    continue;
                }
                BivectorCase {
                    name: format!("{name} random bivector"),
                    alg: alg.clone(),
                    r: AlgBivector::from_matrix(m).unwrap(),
                }
            }
        };
        out.push(case);
    }
    out
}

pub struct FormCase {
    pub name: String,
    pub alg: LieAlgebra,
    pub basis: Vec<Vec<Rat>>,
    pub form: Matrix,
}

/// Nondegenerate forms on four-dimensional algebras: random cocycles
/// (which pass) and random forms (which mostly fail), written in a random
/// basis of the algebra. Includes the image of the oscillator solution.
pub fn form_cases(count: usize, runner: &mut TestRunner) -> Vec<FormCase> {
    let algs = four_dim_algebras();
    let mut out = Vec::new();
    let mut k = 0;
    while out.len() < count {
        let (name, alg) = &algs[k % algs.len()];
        let want_cocycle = (k / algs.len()).is_multiple_of(2);
        k += 1;
        let w = if want_cocycle {
            match random_symplectic_cocycle(alg, runner) {
                Some(w) => w,
                None => continue,
            }
        } else {
            let w = random_antisymmetric(4, runner);
            if linalg::det(&w).is_zero() {
                continue;
            }
            w
        };
        // rows of pm are the new basis vectors
        let pm = random_invertible(4, runner);
        let form: Matrix = (0..4)
            .map(|a| {
                (0..4)
                    .map(|b| {
                        let wb = linalg::mat_vec(&w, &pm[b]);
                        linalg::dot(&pm[a], &wb)
                    })
                    .collect()
            })
            .collect();
        out.push(FormCase {
            name: format!("{name} {}", if want_cocycle { "cocycle" } else { "random form" }),
            alg: alg.clone(),
            basis: pm,
            form,
        });
    }
    let osc = cybe_core::liealg::catalog::oscillator(Rat::one(), Rat::one());
    let r = AlgBivector::from_terms(6, &[(1, 2, Rat::one()), (3, 4, Rat::one())]).unwrap();
    let sf = cybe_core::liealg::image_form(&osc, &r).unwrap();
    out.push(FormCase {
        name: "oscillator image".into(),
        alg: osc,
        basis: sf.basis().to_vec(),
        form: sf.form().clone(),
    });
    out
}

/// The fixtures of the torsion and curvature suites; index 5 is randomized.
pub fn yb_example(i: usize, seed: u8) -> Example {
    match i % 6 {
        0 => translations(2),
        1 => translations(4),
        2 => aff1_remark(),
        3 => oscillator_abelian(),
        4 => heisenberg_free(),
        _ => random_abelian(&mut runner(seed)),
    }
}
