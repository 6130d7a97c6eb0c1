//! Laurent polynomials in `X_1..X_d`, standing for `X_j = e^{i k_j}`, and
//! the Fourier symbol `U_A(k)` of a walk.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::coin::Coin;
use crate::dd::{CDd, Dd};
use crate::error::{Error, Result};
use crate::scalar::{Backend, Scalar};

/// A sparse Laurent polynomial. Exponent vectors are ordered
/// lexicographically and zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly<S> {
    dim: usize,
    terms: BTreeMap<Vec<i64>, S>,
}

impl<S: Scalar> LaurentPoly<S> {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: S) -> Self {
        Self::monomial(vec![0; dim], c)
    }

    pub fn monomial(exp: Vec<i64>, c: S) -> Self {
        let mut p = Self::zero(exp.len());
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    /// `X_var^power` for a 1-based variable index.
    pub fn var(dim: usize, var: usize, power: i64) -> Result<Self> {
        if var == 0 || var > dim {
            return Err(Error::IndexOutOfRange {
                index: var,
                max: dim,
            });
        }
        let mut exp = vec![0; dim];
        exp[var - 1] = power;
        Ok(Self::monomial(exp, S::one()))
    }

    /// Builds from `(exponent, coefficient)` pairs, summing duplicates.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i64>, S)>,
    {
        let mut p = Self::zero(dim);
        for (exp, c) in terms {
            if exp.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: exp.len(),
                });
            }
            p.add_term(exp, &c);
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[i64]) -> S {
        self.terms.get(exp).cloned().unwrap_or_else(S::zero)
    }

    fn add_term(&mut self, exp: Vec<i64>, c: &S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(acc) => {
                *acc += c;
                if acc.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, c.clone());
            }
        }
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-S::one()))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.dim);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exp, &(ca.clone() * cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.dim);
        if c.is_zero() {
            return out;
        }
        for (e, a) in &self.terms {
            out.add_term(e.clone(), &(a.clone() * c));
        }
        out
    }

    /// Value at `X_j = e^{i k_j}`.
    pub fn eval(&self, k: &[f64]) -> Result<Complex64> {
        let point = UnitPoint::new(k);
        self.eval_at(&point).map(CDd::to_complex64)
    }

    fn eval_at(&self, point: &UnitPoint) -> Result<CDd> {
        if point.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: point.dim(),
            });
        }
        Ok(self.terms.iter().fold(CDd::ZERO, |acc, (exp, c)| {
            acc + c.to_cdd() * point.monomial(exp)
        }))
    }
}

/// `X_j = e^{i k_j}` rounded once to f64, with `X_j^{-1}` computed from
/// the rounded value so that `X_j X_j^{-1} = 1` holds to double-double
/// precision.
struct UnitPoint {
    fwd: Vec<CDd>,
    back: Vec<CDd>,
}

impl UnitPoint {
    fn new(k: &[f64]) -> Self {
        let fwd: Vec<CDd> = k.iter().map(|&kj| CDd::from(Complex64::cis(kj))).collect();
        let back = fwd.iter().map(|x| x.recip()).collect();
        Self { fwd, back }
    }

    fn dim(&self) -> usize {
        self.fwd.len()
    }

    fn monomial(&self, exp: &[i64]) -> CDd {
        let mut acc = CDd::ONE;
        for (j, &m) in exp.iter().enumerate() {
            let base = if m >= 0 { self.fwd[j] } else { self.back[j] };
            for _ in 0..m.unsigned_abs() {
                acc = acc * base;
            }
        }
        acc
    }
}

impl<S: Scalar> fmt::Display for LaurentPoly<S> {
    /// `c * X1^a1 * X2^a2 + ...`; constant terms print as bare
    /// coefficients, complex coefficients as `(re,im)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (exp, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            let [re, im] = c.encode();
            let plain = |v: &serde_json::Value| match v {
                serde_json::Value::String(s) => s.trim_end_matches("/1").to_string(),
                other => other.to_string(),
            };
            if c.to_complex64().im == 0.0 {
                write!(f, "{}", plain(&re))?;
            } else {
                write!(f, "({},{})", plain(&re), plain(&im))?;
            }
            for (j, &a) in exp.iter().enumerate() {
                if a != 0 {
                    write!(f, " * X{}^{}", j + 1, a)?;
                }
            }
        }
        Ok(())
    }
}

/// A `2d`-vector of Laurent polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolVector<S> {
    dim: usize,
    comps: Vec<LaurentPoly<S>>,
}

impl<S: Scalar> SymbolVector<S> {
    pub fn new(dim: usize, comps: Vec<LaurentPoly<S>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if comps.len() != 2 * dim {
            return Err(Error::VectorLength {
                expected: 2 * dim,
                found: comps.len(),
            });
        }
        if let Some(bad) = comps.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        Ok(Self { dim, comps })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[LaurentPoly<S>] {
        &self.comps
    }

    pub fn into_components(self) -> Vec<LaurentPoly<S>> {
        self.comps
    }

    pub fn eval(&self, k: &[f64]) -> Result<Vec<Complex64>> {
        let point = UnitPoint::new(k);
        self.comps
            .iter()
            .map(|p| p.eval_at(&point).map(CDd::to_complex64))
            .collect()
    }
}

/// `U_A` as a matrix of Laurent polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolMatrix<S> {
    dim: usize,
    rows: Vec<Vec<LaurentPoly<S>>>,
}

impl<S: Scalar> SymbolMatrix<S> {
    /// `sum_j X_j P_{2j-1} A + X_j^{-1} P_{2j} A`.
    pub fn from_coin(coin: &Coin<S>) -> Self {
        let dim = coin.dim();
        let rows = coin
            .rows()
            .iter()
            .enumerate()
            .map(|(r, row)| {
                let mut exp = vec![0; dim];
                exp[r / 2] = if r % 2 == 0 { 1 } else { -1 };
                row.iter()
                    .map(|a| LaurentPoly::monomial(exp.clone(), a.clone()))
                    .collect()
            })
            .collect();
        Self { dim, rows }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<LaurentPoly<S>>] {
        &self.rows
    }

    pub fn apply(&self, v: &SymbolVector<S>) -> Result<SymbolVector<S>> {
        if v.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.dim,
            });
        }
        let comps = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&v.comps)
                    .try_fold(LaurentPoly::zero(self.dim), |acc, (m, p)| {
                        acc.add(&m.mul(p)?)
                    })
            })
            .collect::<Result<_>>()?;
        Ok(SymbolVector {
            dim: self.dim,
            comps,
        })
    }

    pub fn eval(&self, k: &[f64]) -> Result<Vec<Vec<Complex64>>> {
        let point = UnitPoint::new(k);
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|p| p.eval_at(&point).map(CDd::to_complex64))
                    .collect()
            })
            .collect()
    }
}

/// `(1 + X)(1 + X^{-1}) = 2 + X + X^{-1}` in variable `var` (1-based).
fn trinomial<S: Scalar>(dim: usize, var: usize) -> Result<LaurentPoly<S>> {
    let one = LaurentPoly::constant(dim, S::one());
    let fwd = one.add(&LaurentPoly::var(dim, var, 1)?)?;
    let back = one.add(&LaurentPoly::var(dim, var, -1)?)?;
    fwd.mul(&back)
}

/// The eigenvalue-1 eigenfunction of the Grover symbol:
/// component `2j-1` is `(1 + X_j) prod_{l != j} (1 + X_l^{-1})(1 + X_l)`
/// and component `2j` is the same with `(1 + X_j^{-1})` in front.
pub fn grover_eigenfunction<S: Scalar>(dim: usize) -> Result<SymbolVector<S>> {
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    let one = LaurentPoly::constant(dim, S::one());
    let tri: Vec<LaurentPoly<S>> = (1..=dim)
        .map(|l| trinomial(dim, l))
        .collect::<Result<_>>()?;
    let mut comps = Vec::with_capacity(2 * dim);
    for j in 1..=dim {
        let rest = tri
            .iter()
            .enumerate()
            .filter(|(l, _)| l + 1 != j)
            .try_fold(one.clone(), |acc, (_, t)| acc.mul(t))?;
        comps.push(one.add(&LaurentPoly::var(dim, j, 1)?)?.mul(&rest)?);
        comps.push(one.add(&LaurentPoly::var(dim, j, -1)?)?.mul(&rest)?);
    }
    SymbolVector::new(dim, comps)
}

/// Eigenvalue-1 eigenfunction of the two-parameter `Z^2` family: the
/// Grover eigenfunction with its last two components scaled by
/// `sqrt(pq)/q`.
pub fn watabe_eigenfunction<S: Scalar>(p: &S) -> Result<SymbolVector<S>> {
    let coin = Coin::watabe(p.clone())?;
    let q = S::one() - p;
    let ratio = coin.entry(0, 2).clone() / q;
    let mut comps = grover_eigenfunction::<S>(2)?.into_components();
    comps[2] = comps[2].scale(&ratio);
    comps[3] = comps[3].scale(&ratio);
    SymbolVector::new(2, comps)
}

/// `||U_A(k) v(k) - v(k)||_2` at one point `k`.
pub fn eigen_residual<S: Scalar>(coin: &Coin<S>, v: &SymbolVector<S>, k: &[f64]) -> Result<f64> {
    let u = SymbolMatrix::from_coin(coin);
    eigen_residual_with(&u, v, k)
}

/// Same as [`eigen_residual`] with a prebuilt symbol matrix.
pub fn eigen_residual_with<S: Scalar>(
    u: &SymbolMatrix<S>,
    v: &SymbolVector<S>,
    k: &[f64],
) -> Result<f64> {
    if v.dim() != u.dim() {
        return Err(Error::DimensionMismatch {
            expected: u.dim(),
            found: v.dim(),
        });
    }
    let point = UnitPoint::new(k);
    let vk = v
        .comps
        .iter()
        .map(|p| p.eval_at(&point))
        .collect::<Result<Vec<_>>>()?;
    let mut sq = Dd::ZERO;
    for (row, vi) in u.rows.iter().zip(&vk) {
        let mut img = CDd::ZERO;
        for (a, b) in row.iter().zip(&vk) {
            img = img + a.eval_at(&point)? * *b;
        }
        sq = sq + (img - *vi).norm_sqr();
    }
    Ok(sq.sqrt().to_f64())
}

/// Exact polynomial identity `U_A v = v`. Requires the exact backend.
pub fn symbolic_fixed_point_check<S: Scalar>(coin: &Coin<S>, v: &SymbolVector<S>) -> Result<bool> {
    if S::BACKEND != Backend::Exact {
        return Err(Error::RequiresExact);
    }
    let image = SymbolMatrix::from_coin(coin).apply(v)?;
    for (a, b) in image.comps.iter().zip(&v.comps) {
        if !a.sub(b)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
