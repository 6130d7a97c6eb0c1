//! Finitely supported stationary amplitudes built from an eigenvalue-1
//! eigenfunction of the Fourier symbol, and the measures they induce.
//!
//! The inverse transform sends the monomial `c X^m` to the amplitude `c`
//! at lattice point `-m`. An eigenfunction whose exponents lie in
//! `{-1,0,1}^d` therefore yields an atom supported in the ball
//! `K_0 = {x : |x|^2 <= d}`, and every translate and finite linear
//! combination of translates is again a fixed point of the walk.

use std::collections::{BTreeMap, BTreeSet};

use crate::coin::Coin;
use crate::error::{Error, Result};
use crate::lattice::{ChiralVector, FiniteState, LatticePoint, Measure, WeightSequence};
use crate::scalar::Scalar;
use crate::symbol::{grover_eigenfunction, watabe_eigenfunction, SymbolVector};

/// The `3^d` points `u + {-1,0,1}^d`, i.e. `{x : |x - u|^2 <= d}`.
pub fn ball_support(u: &LatticePoint) -> BTreeSet<LatticePoint> {
    let dim = u.dim();
    let mut out = BTreeSet::new();
    let total = 3usize.pow(dim as u32);
    for code in 0..total {
        let mut c = code;
        let mut x = u.clone();
        for axis in 0..dim {
            x.coords_mut()[axis] += (c % 3) as i64 - 1;
            c /= 3;
        }
        out.insert(x);
    }
    out
}

/// The amplitudes `a_c`, `c` in `K_0`, of the stationary state centred at
/// the origin.
#[derive(Clone, Debug, PartialEq)]
pub struct StationaryAtom<S> {
    dim: usize,
    a: BTreeMap<LatticePoint, ChiralVector<S>>,
}

impl<S: Scalar> StationaryAtom<S> {
    /// The atom of the Grover walk on `Z^d`.
    pub fn grover(dim: usize) -> Result<Self> {
        inverse_fourier(&grover_eigenfunction(dim)?)
    }

    /// The atom of the two-parameter `Z^2` family.
    pub fn watabe(p: &S) -> Result<Self> {
        inverse_fourier(&watabe_eigenfunction(p)?)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// `a_c`, zero when `c` carries no amplitude.
    pub fn get(&self, c: &LatticePoint) -> ChiralVector<S> {
        self.a
            .get(c)
            .cloned()
            .unwrap_or_else(|| ChiralVector::zeros(self.dim))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LatticePoint, &ChiralVector<S>)> {
        self.a.iter()
    }

    /// `Psi^(u)(x) = sum_c a_c delta_{u+c}(x)`.
    pub fn to_state(&self, u: &LatticePoint) -> Result<FiniteState<S>> {
        if u.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: u.dim(),
            });
        }
        let mut s = FiniteState::new(self.dim)?;
        for (c, v) in &self.a {
            s.insert_unchecked(u.translate(c), v.clone());
        }
        Ok(s)
    }
}

/// Inverse Fourier transform of a trigonometric-polynomial vector:
/// `c X^m` in component `j` becomes amplitude `c` in component `j` at
/// lattice point `-m`.
///
/// Fails with [`Error::OutsideBall`] if an exponent leaves `{-1,0,1}^d`,
/// since the result would not be an atom on `K_0`.
pub fn inverse_fourier<S: Scalar>(v: &SymbolVector<S>) -> Result<StationaryAtom<S>> {
    let dim = v.dim();
    let width = 2 * dim;
    let mut raw: BTreeMap<LatticePoint, Vec<S>> = BTreeMap::new();
    for (j, comp) in v.components().iter().enumerate() {
        for (exp, c) in comp.terms() {
            if exp.iter().any(|e| e.abs() > 1) {
                return Err(Error::OutsideBall(exp.clone()));
            }
            let x = LatticePoint::new(exp.iter().map(|e| -e).collect())?;
            raw.entry(x).or_insert_with(|| vec![S::zero(); width])[j] += c;
        }
    }
    let a = raw
        .into_iter()
        .map(|(x, amps)| (x, ChiralVector::new(dim, amps).expect("width is 2d")))
        .filter(|(_, v)| !v.is_zero())
        .collect();
    Ok(StationaryAtom { dim, a })
}

/// `Psi^(w) = sum_u w_u Psi^(u)`.
pub fn superpose<S: Scalar>(
    atom: &StationaryAtom<S>,
    w: &WeightSequence<S>,
) -> Result<FiniteState<S>> {
    if w.dim() != atom.dim {
        return Err(Error::DimensionMismatch {
            expected: atom.dim,
            found: w.dim(),
        });
    }
    if w.is_empty() {
        return Err(Error::ZeroWeights);
    }
    let mut acc = FiniteState::new(atom.dim)?;
    for (u, weight) in w.iter() {
        acc.axpy_in_place(weight, &atom.to_state(u)?)?;
    }
    Ok(acc)
}

/// The measure of the superposition, optionally divided by its total
/// mass.
pub fn stationary_measure<S: Scalar>(
    atom: &StationaryAtom<S>,
    w: &WeightSequence<S>,
    normalize: bool,
) -> Result<Measure<S>> {
    let m = superpose(atom, w)?.measure();
    if normalize {
        m.normalized()
    } else {
        Ok(m)
    }
}

/// Builds the closed-form atom for a coin, when one is known: any Grover
/// coin, or the two-parameter family on `Z^2`.
pub fn atom_for_coin<S: Scalar>(coin: &Coin<S>) -> Option<Result<StationaryAtom<S>>> {
    match coin.kind() {
        crate::coin::CoinKind::Grover => Some(StationaryAtom::grover(coin.dim())),
        crate::coin::CoinKind::Watabe => coin.p().map(StationaryAtom::watabe),
        crate::coin::CoinKind::Custom => None,
    }
}

/// The eigenfunction behind [`atom_for_coin`].
pub fn eigenfunction_for_coin<S: Scalar>(coin: &Coin<S>) -> Option<Result<SymbolVector<S>>> {
    match coin.kind() {
        crate::coin::CoinKind::Grover => Some(grover_eigenfunction(coin.dim())),
        crate::coin::CoinKind::Watabe => coin.p().map(watabe_eigenfunction),
        crate::coin::CoinKind::Custom => None,
    }
}
