use super::{ActionSetup, PoissonError};
use crate::liealg::SubspaceForm;
use crate::polyalg::linalg::{self, Matrix};
use crate::polyalg::{MultiPoly, Rat, Vars};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Freeness {
    Yes,
    No,
    /// Full generic rank and every probe passes, but no maximal minor is a
    /// nonzero constant, so rank drops somewhere cannot be ruled out.
    Unknown,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FreenessReport {
    pub subspace_dim: usize,
    pub generic_rank: usize,
    pub probe_ranks: Vec<usize>,
    pub locally_free: Freeness,
    /// Column set of a maximal minor that is a nonzero constant.
    pub constant_minor: Option<Vec<usize>>,
    /// Nonzero, nonconstant maximal minors; their common zero set is where
    /// the rank drops.
    pub drop_locus: Vec<MultiPoly>,
}

/// Rank of a polynomial matrix over the field of rational functions, by
/// fraction-free elimination.
pub fn generic_rank(m: &[Vec<MultiPoly>], vars: &Vars) -> usize {
    let mut a: Vec<Vec<MultiPoly>> = m.to_vec();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut prev = MultiPoly::one(vars);
    for k in 0..rows.min(cols) {
        let Some((pr, pc)) = (k..rows)
            .flat_map(|i| (k..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_zero())
        else {
            return k;
        };
        a.swap(k, pr);
        for row in a.iter_mut() {
            row.swap(k, pc);
        }
        for i in k + 1..rows {
            for j in k + 1..cols {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("fraction-free elimination divides exactly");
            }
            a[i][k] = MultiPoly::zero(vars);
        }
        prev = a[k][k].clone();
    }
    rows.min(cols)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Rank of the fields `Gamma(s)`, `s` running over a basis of `S`,
/// symbolically and at each probe point.
pub fn local_freeness(
    a: &ActionSetup,
    s: &SubspaceForm,
    probes: &[Vec<Rat>],
) -> Result<FreenessReport, PoissonError> {
    let chart = a.chart();
    let m = chart.dim();
    for pt in probes {
        if pt.len() != m {
            return Err(PoissonError::ProbeDimension {
                expected: m,
                got: pt.len(),
            });
        }
    }
    if s.ambient_dim() != a.algebra().dim() {
        return Err(PoissonError::DimensionMismatch {
            expected: a.algebra().dim(),
            got: s.ambient_dim(),
        });
    }
    let rows: Vec<Vec<MultiPoly>> = s.basis().iter().map(|b| a.gamma(b).comps().to_vec()).collect();
    let p = rows.len();
    let generic = generic_rank(&rows, chart.vars());
    let probe_ranks: Vec<usize> = probes
        .iter()
        .map(|pt| {
            let at: Matrix = rows.iter().map(|r| r.iter().map(|c| c.eval_at(pt)).collect()).collect();
            linalg::rank(&at)
        })
        .collect();

    let mut constant_minor = None;
    let mut drop_locus = Vec::new();
    if generic == p {
        for cols in combinations(m, p) {
            let sub: Vec<Vec<MultiPoly>> =
                rows.iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect();
            let d = linalg::poly_det(&sub, chart.vars());
            if d.is_zero() {
                continue;
            }
            if d.as_constant().is_some() {
                constant_minor = Some(cols);
                break;
            }
            drop_locus.push(d);
        }
    }
    let probes_full = probe_ranks.iter().all(|&r| r == p);
    let locally_free = if generic < p || !probes_full {
        Freeness::No
    } else if constant_minor.is_some() {
        Freeness::Yes
    } else {
        Freeness::Unknown
    };
    if constant_minor.is_some() {
        drop_locus.clear();
    }
    Ok(FreenessReport {
        subspace_dim: p,
        generic_rank: generic,
        probe_ranks,
        locally_free,
        constant_minor,
        drop_locus,
    })
}
