//! Lattice points, chiral amplitude vectors, finitely supported states and
//! the measures they induce.

use std::collections::BTreeMap;
use std::ops::Index;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A point of `Z^d`. Ordered lexicographically, which fixes the
/// iteration and serialization order of every map keyed by points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint(Vec<i64>);

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::ZeroDimension);
        }
        Ok(Self(coords))
    }

    pub fn origin(dim: usize) -> Self {
        Self(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// The point moved by `delta` along axis `axis` (0-based).
    pub fn offset(&self, axis: usize, delta: i64) -> Self {
        let mut out = self.clone();
        out.0[axis] += delta;
        out
    }

    pub fn translate(&self, by: &LatticePoint) -> Self {
        Self(self.0.iter().zip(&by.0).map(|(a, b)| a + b).collect())
    }

    pub fn negated(&self) -> Self {
        Self(self.0.iter().map(|a| -a).collect())
    }

    pub fn dist_sq(&self, other: &LatticePoint) -> i64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum()
    }

    pub(crate) fn coords_mut(&mut self) -> &mut [i64] {
        &mut self.0
    }
}

// Hash, Eq and Ord all agree with the slice impls, so maps keyed by
// points can be probed with a borrowed coordinate buffer.
impl std::borrow::Borrow<[i64]> for LatticePoint {
    fn borrow(&self) -> &[i64] {
        &self.0
    }
}

impl<const N: usize> From<[i64; N]> for LatticePoint {
    fn from(coords: [i64; N]) -> Self {
        assert!(N > 0, "lattice points need at least one coordinate");
        Self(coords.to_vec())
    }
}

/// The `2d` chiral amplitudes at one site. Component `2i-1` (1-based)
/// moves along `-x_i`, component `2i` along `+x_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChiralVector<S>(Vec<S>);

impl<S: Scalar> ChiralVector<S> {
    pub fn zeros(dim: usize) -> Self {
        Self(vec![S::zero(); 2 * dim])
    }

    pub fn new(dim: usize, amps: Vec<S>) -> Result<Self> {
        if amps.len() != 2 * dim {
            return Err(Error::VectorLength {
                expected: 2 * dim,
                found: amps.len(),
            });
        }
        Ok(Self(amps))
    }

    pub fn from_ints(amps: &[i64]) -> Self {
        Self(amps.iter().map(|&a| S::from_i64(a)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn as_slice(&self) -> &[S] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<S> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, S> {
        self.0.iter()
    }

    pub fn norm_sqr(&self) -> S {
        let mut acc = S::zero();
        for a in &self.0 {
            acc += &a.norm_sqr();
        }
        acc
    }

    pub fn scaled(&self, w: &S) -> Self {
        Self(self.0.iter().map(|a| a.clone() * w).collect())
    }

    /// `self += w * other`, componentwise.
    pub(crate) fn axpy_in_place(&mut self, w: &S, other: &Self) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            a.mul_add_assign(w, b);
        }
    }
}

impl<S> Index<usize> for ChiralVector<S> {
    type Output = S;
    fn index(&self, i: usize) -> &S {
        &self.0[i]
    }
}

/// A finitely supported wavefunction `Z^d -> C^{2d}`.
///
/// All-zero vectors are never stored, so the key set is exactly the
/// support.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteState<S> {
    dim: usize,
    entries: BTreeMap<LatticePoint, ChiralVector<S>>,
}

impl<S: Scalar> FiniteState<S> {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(Self {
            dim,
            entries: BTreeMap::new(),
        })
    }

    /// Builds a state from `(point, amplitudes)` pairs. Later duplicates
    /// overwrite earlier ones.
    pub fn from_entries<I>(dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (LatticePoint, Vec<S>)>,
    {
        let mut state = Self::new(dim)?;
        for (x, amps) in entries {
            state.insert(x, ChiralVector::new(dim, amps)?)?;
        }
        Ok(state)
    }

    /// A single site carrying `amps`.
    pub fn delta(x: LatticePoint, amps: Vec<S>) -> Result<Self> {
        let dim = x.dim();
        Self::from_entries(dim, [(x, amps)])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn insert(&mut self, x: LatticePoint, v: ChiralVector<S>) -> Result<()> {
        self.check_point(&x)?;
        if v.len() != 2 * self.dim {
            return Err(Error::VectorLength {
                expected: 2 * self.dim,
                found: v.len(),
            });
        }
        if v.is_zero() {
            self.entries.remove(&x);
        } else {
            self.entries.insert(x, v);
        }
        Ok(())
    }

    /// Wraps entries already known to be nonzero and of the right shape.
    pub(crate) fn from_map_unchecked(
        dim: usize,
        entries: BTreeMap<LatticePoint, ChiralVector<S>>,
    ) -> Self {
        Self { dim, entries }
    }

    /// Inserts a vector already known to have the right shape.
    pub(crate) fn insert_unchecked(&mut self, x: LatticePoint, v: ChiralVector<S>) {
        if !v.is_zero() {
            self.entries.insert(x, v);
        }
    }

    /// The amplitude vector at `x`, or the zero vector off the support.
    pub fn get(&self, x: &LatticePoint) -> Result<ChiralVector<S>> {
        self.check_point(x)?;
        Ok(self
            .entries
            .get(x)
            .cloned()
            .unwrap_or_else(|| ChiralVector::zeros(self.dim)))
    }

    pub fn get_ref(&self, x: &LatticePoint) -> Option<&ChiralVector<S>> {
        self.entries.get(x)
    }

    pub fn support(&self) -> impl Iterator<Item = &LatticePoint> {
        self.entries.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LatticePoint, &ChiralVector<S>)> {
        self.entries.iter()
    }

    /// The pointwise squared norm `x -> sum_j |psi^j(x)|^2`.
    pub fn measure(&self) -> Measure<S> {
        let entries = self
            .entries
            .iter()
            .map(|(x, v)| (x.clone(), v.norm_sqr()))
            .filter(|(_, m)| !m.is_zero())
            .collect();
        Measure {
            dim: self.dim,
            entries,
        }
    }

    /// Squared l2 norm of the whole state.
    pub fn norm_sqr(&self) -> S {
        let mut acc = S::zero();
        for v in self.entries.values() {
            acc += &v.norm_sqr();
        }
        acc
    }

    pub fn scaled(&self, w: &S) -> Self {
        let mut out = Self {
            dim: self.dim,
            entries: BTreeMap::new(),
        };
        for (x, v) in &self.entries {
            out.insert_unchecked(x.clone(), v.scaled(w));
        }
        out
    }

    /// `self + w * other`, with cancelled sites pruned.
    pub fn axpy(&self, w: &S, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.axpy_in_place(w, other)?;
        Ok(out)
    }

    pub fn axpy_in_place(&mut self, w: &S, other: &Self) -> Result<()> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        if w.is_zero() {
            return Ok(());
        }
        for (x, v) in &other.entries {
            match self.entries.get_mut(x) {
                Some(acc) => {
                    acc.axpy_in_place(w, v);
                    if acc.is_zero() {
                        self.entries.remove(x);
                    }
                }
                None => self.insert_unchecked(x.clone(), v.scaled(w)),
            }
        }
        Ok(())
    }

    fn check_point(&self, x: &LatticePoint) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        Ok(())
    }
}

/// A finitely supported nonnegative measure on `Z^d`. Only strictly
/// positive values are stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Measure<S> {
    dim: usize,
    entries: BTreeMap<LatticePoint, S>,
}

impl<S: Scalar> Measure<S> {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(Self {
            dim,
            entries: BTreeMap::new(),
        })
    }

    /// Zero values are dropped; negative or complex values are rejected.
    pub fn from_entries<I>(dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (LatticePoint, S)>,
    {
        let mut m = Self::new(dim)?;
        for (x, value) in entries {
            if x.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: x.dim(),
                });
            }
            match value.cmp_real(&S::zero()) {
                Some(std::cmp::Ordering::Greater) => {
                    m.entries.insert(x, value);
                }
                Some(std::cmp::Ordering::Equal) => {}
                _ => return Err(Error::NonPositiveMeasure),
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, x: &LatticePoint) -> S {
        self.entries.get(x).cloned().unwrap_or_else(S::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LatticePoint, &S)> {
        self.entries.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &LatticePoint> {
        self.entries.keys()
    }

    pub fn total_mass(&self) -> S {
        let mut acc = S::zero();
        for v in self.entries.values() {
            acc += v;
        }
        acc
    }

    /// Divides every value by the total mass.
    pub fn normalized(&self) -> Result<Self> {
        let mass = self.total_mass();
        if mass.is_zero() {
            return Err(Error::ZeroMass);
        }
        let entries = self
            .entries
            .iter()
            .map(|(x, v)| (x.clone(), v.clone() / mass.clone()))
            .collect();
        Ok(Self {
            dim: self.dim,
            entries,
        })
    }
}

/// The finitely supported coefficients `{w_u}` of a superposition of
/// translated stationary atoms. At least one weight is nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightSequence<S> {
    dim: usize,
    weights: BTreeMap<LatticePoint, S>,
}

impl<S: Scalar> WeightSequence<S> {
    /// Zero weights are dropped. Repeated points accumulate.
    pub fn new<I>(dim: usize, weights: I) -> Result<Self>
    where
        I: IntoIterator<Item = (LatticePoint, S)>,
    {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let mut map: BTreeMap<LatticePoint, S> = BTreeMap::new();
        for (u, w) in weights {
            if u.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: u.dim(),
                });
            }
            *map.entry(u).or_insert_with(S::zero) += &w;
        }
        map.retain(|_, w| !w.is_zero());
        if map.is_empty() {
            return Err(Error::ZeroWeights);
        }
        Ok(Self { dim, weights: map })
    }

    pub fn single(u: LatticePoint, w: S) -> Result<Self> {
        let dim = u.dim();
        Self::new(dim, [(u, w)])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LatticePoint, &S)> {
        self.weights.iter()
    }
}
