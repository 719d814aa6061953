//! Alternating tensors with polynomial coefficients, covariant (forms) or
//! contravariant (multivectors).

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use super::{Chart, GeomError, VectorField};
use crate::polyalg::{MultiPoly, Rat};

pub trait Variance: Clone + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    fn basis_symbol(coord: &str) -> String;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Covariant;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contravariant;

impl Variance for Covariant {
    fn basis_symbol(coord: &str) -> String {
        format!("d{coord}")
    }
}

impl Variance for Contravariant {
    fn basis_symbol(coord: &str) -> String {
        format!("∂{coord}")
    }
}

/// Components are keyed by strictly increasing index tuples; zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct AltTensor<V: Variance> {
    chart: Chart,
    degree: usize,
    comps: BTreeMap<Vec<usize>, MultiPoly>,
    _v: PhantomData<V>,
}

pub type KForm = AltTensor<Covariant>;
pub type KMultivector = AltTensor<Contravariant>;

/// Sorts `idx` in place and returns the sign of the permutation, or `None`
/// if an index repeats.
fn sort_with_sign(idx: &mut [usize]) -> Option<bool> {
    let mut neg = false;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            neg = !neg;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(neg)
    }
}

impl<V: Variance> AltTensor<V> {
    /// The zero tensor of the given degree. Degrees above the chart
    /// dimension are allowed and can only hold zero.
    pub fn zero(chart: &Chart, degree: usize) -> Self {
        AltTensor {
            chart: chart.clone(),
            degree,
            comps: BTreeMap::new(),
            _v: PhantomData,
        }
    }

    pub fn function(chart: &Chart, f: MultiPoly) -> Self {
        let mut t = Self::zero(chart, 0);
        t.accumulate(Vec::new(), false, f);
        t
    }

    /// `dx^{i1} ^ ... ^ dx^{ik}` (or the contravariant analogue) for indices
    /// in any order.
    pub fn basis(chart: &Chart, idx: &[usize]) -> Self {
        Self::from_components(chart, idx.len(), vec![(idx.to_vec(), MultiPoly::one(chart.vars()))])
            .expect("basis indices within chart")
    }

    /// Builds a tensor from `(indices, coefficient)` pairs. Unsorted indices
    /// are sorted with the permutation sign; repeated indices contribute zero.
    pub fn from_components(
        chart: &Chart,
        degree: usize,
        comps: Vec<(Vec<usize>, MultiPoly)>,
    ) -> Result<Self, GeomError> {
        let mut t = Self::zero(chart, degree);
        for (mut idx, c) in comps {
            if idx.len() != degree {
                return Err(GeomError::WrongDegree {
                    expected: degree,
                    got: idx.len(),
                });
            }
            if idx.iter().any(|&i| i >= chart.dim()) {
                return Err(GeomError::DegreeTooLarge {
                    degree,
                    dim: chart.dim(),
                });
            }
            if c.vars() != chart.vars() {
                return Err(GeomError::ChartMismatch);
            }
            if let Some(neg) = sort_with_sign(&mut idx) {
                t.accumulate(idx, neg, c);
            }
        }
        Ok(t)
    }

    /// A degree-1 tensor from its `m` components.
    pub fn from_vec(chart: &Chart, comps: Vec<MultiPoly>) -> Result<Self, GeomError> {
        if comps.len() != chart.dim() {
            return Err(GeomError::ComponentCount {
                expected: chart.dim(),
                got: comps.len(),
            });
        }
        Self::from_components(chart, 1, comps.into_iter().enumerate().map(|(i, c)| (vec![i], c)).collect())
    }

    fn accumulate(&mut self, key: Vec<usize>, neg: bool, c: MultiPoly) {
        if c.is_zero() {
            return;
        }
        let c = if neg { -c } else { c };
        match self.comps.get_mut(&key) {
            Some(existing) => {
                let s = &*existing + &c;
                if s.is_zero() {
                    self.comps.remove(&key);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.comps.insert(key, c);
            }
        }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Nonzero components in lexicographic key order.
    pub fn components(&self) -> impl Iterator<Item = (&[usize], &MultiPoly)> {
        self.comps.iter().map(|(k, v)| (k.as_slice(), v))
    }

    /// Component for indices in any order, with the permutation sign applied.
    pub fn get(&self, idx: &[usize]) -> MultiPoly {
        let mut key = idx.to_vec();
        match sort_with_sign(&mut key) {
            None => self.chart.zero(),
            Some(neg) => match self.comps.get(&key) {
                None => self.chart.zero(),
                Some(c) if neg => -c.clone(),
                Some(c) => c.clone(),
            },
        }
    }

    /// The coefficient of a degree-0 tensor.
    pub fn as_function(&self) -> Option<MultiPoly> {
        (self.degree == 0).then(|| self.get(&[]))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "adding tensors of different degree");
        assert_eq!(self.chart, other.chart, "adding tensors on different charts");
        let mut t = self.clone();
        for (k, v) in &other.comps {
            t.accumulate(k.clone(), false, v.clone());
        }
        t
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&Rat::from_int(-1))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut t = Self::zero(&self.chart, self.degree);
        if !c.is_zero() {
            t.comps = self.comps.iter().map(|(k, v)| (k.clone(), v.scale(c))).collect();
        }
        t
    }

    pub fn mul_poly(&self, f: &MultiPoly) -> Self {
        let mut t = Self::zero(&self.chart, self.degree);
        for (k, v) in &self.comps {
            t.accumulate(k.clone(), false, v * f);
        }
        t
    }

    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.chart, other.chart, "wedge of tensors on different charts");
        let mut t = Self::zero(&self.chart, self.degree + other.degree);
        for (a, f) in &self.comps {
            for (b, g) in &other.comps {
                if a.iter().any(|i| b.contains(i)) {
                    continue;
                }
                let inversions: usize =
                    a.iter().map(|i| b.iter().filter(|j| *j < i).count()).sum();
                let mut key: Vec<usize> = a.iter().chain(b).copied().collect();
                key.sort_unstable();
                t.accumulate(key, inversions % 2 == 1, f * g);
            }
        }
        t
    }

    /// Coefficient values at a rational point, keyed as in [`Self::components`].
    pub fn eval_at(&self, point: &[Rat]) -> Vec<(Vec<usize>, Rat)> {
        self.comps
            .iter()
            .map(|(k, v)| (k.clone(), v.eval_at(point)))
            .filter(|(_, v)| !v.is_zero())
            .collect()
    }

    /// Contraction of the coordinate direction `j` into the first slot of
    /// the basis element `key`, as a sign and the remaining key.
    fn remove_first(key: &[usize], j: usize) -> Option<(bool, Vec<usize>)> {
        let p = key.iter().position(|&i| i == j)?;
        let mut rest = key.to_vec();
        rest.remove(p);
        Some((p % 2 == 1, rest))
    }
}

impl KForm {
    pub fn one_form(chart: &Chart, comps: Vec<MultiPoly>) -> Result<Self, GeomError> {
        Self::from_vec(chart, comps)
    }

    /// Exterior derivative `d(f dx_I) = sum_j d_j f dx^j ^ dx_I`.
    pub fn exterior_d(&self) -> KForm {
        let mut t = KForm::zero(&self.chart, self.degree + 1);
        for (key, f) in &self.comps {
            for j in 0..self.chart.dim() {
                if key.contains(&j) {
                    continue;
                }
                let df = f.diff_at(j);
                if df.is_zero() {
                    continue;
                }
                let before = key.iter().filter(|&&i| i < j).count();
                let mut k = key.clone();
                k.insert(before, j);
                t.accumulate(k, before % 2 == 1, df);
            }
        }
        t
    }

    /// `i_X sigma`, inserting `X` into the first slot. On a 0-form this is the
    /// zero 0-form.
    pub fn interior_vector(&self, x: &VectorField) -> KForm {
        if self.degree == 0 {
            return KForm::zero(&self.chart, 0);
        }
        let mut t = KForm::zero(&self.chart, self.degree - 1);
        for (key, f) in &self.comps {
            for (p, &i) in key.iter().enumerate() {
                let xi = x.comp(i);
                if xi.is_zero() {
                    continue;
                }
                let mut rest = key.clone();
                rest.remove(p);
                t.accumulate(rest, p % 2 == 1, xi * f);
            }
        }
        t
    }

    /// `i_V sigma` with `i_{X^Y} = i_X o i_Y`: for `V = d_{j1}^...^d_{jl}`
    /// the direction `jl` is inserted first.
    pub fn interior_multivector(&self, v: &KMultivector) -> KForm {
        let mut t = KForm::zero(&self.chart, self.degree.saturating_sub(v.degree));
        if v.degree > self.degree {
            return t;
        }
        for (vk, g) in &v.comps {
            for (fk, f) in &self.comps {
                let mut key = fk.clone();
                let mut neg = false;
                let mut ok = true;
                for &j in vk.iter().rev() {
                    match Self::remove_first(&key, j) {
                        Some((s, rest)) => {
                            neg ^= s;
                            key = rest;
                        }
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok {
                    t.accumulate(key, neg, g * f);
                }
            }
        }
        t
    }

    /// Cartan formula `L_X = i_X d + d i_X`; on functions `L_X f = X(f)`.
    pub fn lie_derivative(&self, x: &VectorField) -> KForm {
        if self.degree == 0 {
            return KForm::function(&self.chart, x.apply(&self.get(&[])));
        }
        let a = self.exterior_d().interior_vector(x);
        let b = self.interior_vector(x).exterior_d();
        a.add(&b)
    }

    /// `alpha(X)` for a 1-form.
    pub fn pair_vector(&self, x: &VectorField) -> MultiPoly {
        let mut acc = self.chart.zero();
        for (key, f) in &self.comps {
            acc = &acc + &(f * x.comp(key[0]));
        }
        acc
    }

    /// `sigma(X_1, ..., X_k)`.
    pub fn eval_on(&self, fields: &[VectorField]) -> Result<MultiPoly, GeomError> {
        if fields.len() != self.degree {
            return Err(GeomError::WrongDegree {
                expected: self.degree,
                got: fields.len(),
            });
        }
        let mut s = self.clone();
        for x in fields {
            self.chart.check(x.chart())?;
            s = s.interior_vector(x);
        }
        Ok(s.get(&[]))
    }

    /// Components `alpha_i` of a 1-form as a dense vector.
    pub fn to_vec(&self) -> Vec<MultiPoly> {
        (0..self.chart.dim()).map(|i| self.get(&[i])).collect()
    }
}

impl KMultivector {
    pub fn from_vector(x: &VectorField) -> Self {
        Self::from_vec(x.chart(), x.comps().to_vec()).expect("vector field matches chart")
    }

    /// The vector field of a degree-1 multivector.
    pub fn to_vector_field(&self) -> Option<VectorField> {
        if self.degree != 1 {
            return None;
        }
        let comps = (0..self.chart.dim()).map(|i| self.get(&[i])).collect();
        VectorField::new(&self.chart, comps).ok()
    }
}

impl<V: Variance> fmt::Display for AltTensor<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (key, c) in &self.comps {
            let basis = key
                .iter()
                .map(|&i| V::basis_symbol(&self.chart.coords()[i]))
                .collect::<Vec<_>>()
                .join("^");
            let term = if basis.is_empty() {
                c.to_string()
            } else if let Some(k) = c.as_constant() {
                if k.is_one() {
                    basis
                } else if (-&k).is_one() {
                    format!("-{basis}")
                } else {
                    format!("{k}*{basis}")
                }
            } else if c.nterms() == 1 {
                format!("{c}*{basis}")
            } else {
                format!("({c})*{basis}")
            };
            if first {
                f.write_str(&term)?;
                first = false;
            } else if let Some(rest) = term.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {term}")?;
            }
        }
        Ok(())
    }
}

impl<V: Variance> fmt::Debug for AltTensor<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[deg {}] {}", self.degree, self)
    }
}
