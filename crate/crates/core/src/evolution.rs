//! The walk operator `U_A` on finitely supported states.
//!
//! One step reads
//!
//! ```text
//! psi'(x) = sum_i  P_{2i-1} A psi(x + e_i)  +  P_{2i} A psi(x - e_i)
//! ```
//!
//! so component `2i-1` of the output at `x` is component `2i-1` of
//! `A psi(x + e_i)` and component `2i` is component `2i` of
//! `A psi(x - e_i)`. The coin is applied once per occupied site and
//! each output site gathers its `2d` components from its neighbours.

use std::collections::BTreeMap;

use rustc_hash::{FxHashMap, FxHashSet};

use crate::coin::Coin;
use crate::error::{Error, Result};
use crate::lattice::{ChiralVector, FiniteState, LatticePoint};
use crate::scalar::Scalar;

fn check_dims<S: Scalar>(state: &FiniteState<S>, coin: &Coin<S>) -> Result<()> {
    if state.dim() != coin.dim() {
        return Err(Error::DimensionMismatch {
            expected: coin.dim(),
            found: state.dim(),
        });
    }
    Ok(())
}

/// Applies `U_A` once.
pub fn step<S: Scalar>(state: &FiniteState<S>, coin: &Coin<S>) -> Result<FiniteState<S>> {
    check_dims(state, coin)?;
    if state.is_empty() {
        return Ok(state.clone());
    }
    match BoxIndex::covering(state) {
        Some(index) => Ok(step_merged(state, coin, &index)),
        None => step_hashed(state, coin),
    }
}

/// Row-major offsets inside the bounding box of a support, widened by one
/// site on every side. Offsets sort like the points they encode.
struct BoxIndex {
    lo: Vec<i64>,
    extent: Vec<i128>,
    stride: Vec<i128>,
}

impl BoxIndex {
    fn covering<S: Scalar>(state: &FiniteState<S>) -> Option<Self> {
        let dim = state.dim();
        let mut lo = vec![i64::MAX; dim];
        let mut hi = vec![i64::MIN; dim];
        for x in state.support() {
            for (axis, &c) in x.coords().iter().enumerate() {
                lo[axis] = lo[axis].min(c);
                hi[axis] = hi[axis].max(c);
            }
        }
        let mut extent = Vec::with_capacity(dim);
        for axis in 0..dim {
            lo[axis] = lo[axis].checked_sub(1)?;
            let width = i128::from(hi[axis]) - i128::from(lo[axis]) + 2;
            extent.push(width);
        }
        let mut stride = vec![1i128; dim];
        for axis in (0..dim.saturating_sub(1)).rev() {
            stride[axis] = stride[axis + 1].checked_mul(extent[axis + 1])?;
        }
        stride[0].checked_mul(extent[0])?;
        Some(Self { lo, extent, stride })
    }

    fn encode(&self, x: &LatticePoint) -> i128 {
        x.coords()
            .iter()
            .zip(&self.lo)
            .zip(&self.stride)
            .map(|((&c, &l), &s)| i128::from(c - l) * s)
            .sum()
    }

    fn decode(&self, mut key: i128) -> LatticePoint {
        let mut coords = vec![0; self.lo.len()];
        for axis in (0..coords.len()).rev() {
            let e = self.extent[axis];
            coords[axis] = self.lo[axis] + (key % e) as i64;
            key /= e;
        }
        LatticePoint::new(coords).expect("dimension is at least one")
    }
}

/// Each output component comes from one neighbour, so the output is a
/// merge of `2d` copies of the sorted source keys, each shifted by one
/// axis step. Walking them in lockstep visits every target once, in order.
fn step_merged<S: Scalar>(
    state: &FiniteState<S>,
    coin: &Coin<S>,
    index: &BoxIndex,
) -> FiniteState<S> {
    let dim = state.dim();
    let keys: Vec<i128> = state.support().map(|x| index.encode(x)).collect();
    let coined: Vec<Vec<S>> = state
        .iter()
        .map(|(_, v)| coin.apply(v.as_slice()))
        .collect();
    // component 2i is read at x + e_i, component 2i + 1 at x - e_i
    let shift: Vec<i128> = (0..2 * dim)
        .map(|r| {
            if r % 2 == 0 {
                -index.stride[r / 2]
            } else {
                index.stride[r / 2]
            }
        })
        .collect();
    let mut cursor = vec![0usize; 2 * dim];
    let head = |r: usize, at: usize| keys.get(at).map(|k| k + shift[r]);

    let mut entries = Vec::new();
    loop {
        let next = (0..2 * dim).filter_map(|r| head(r, cursor[r])).min();
        let Some(target) = next else { break };
        let mut amps = vec![S::zero(); 2 * dim];
        for r in 0..2 * dim {
            if head(r, cursor[r]) == Some(target) {
                amps[r] = coined[cursor[r]][r].clone();
                cursor[r] += 1;
            }
        }
        if amps.iter().any(|a| !a.is_zero()) {
            entries.push((
                index.decode(target),
                ChiralVector::new(dim, amps).expect("length 2d"),
            ));
        }
    }
    FiniteState::from_map_unchecked(dim, entries.into_iter().collect())
}

/// Fallback for supports too spread out to index by offsets.
fn step_hashed<S: Scalar>(state: &FiniteState<S>, coin: &Coin<S>) -> Result<FiniteState<S>> {
    let dim = state.dim();
    let coined: FxHashMap<&[i64], Vec<S>> = state
        .iter()
        .map(|(x, v)| (x.coords(), coin.apply(v.as_slice())))
        .collect();

    let mut probe = vec![0i64; dim];
    let mut seen: FxHashSet<LatticePoint> = FxHashSet::default();
    for y in state.support() {
        for axis in 0..dim {
            for delta in [-1, 1] {
                probe.copy_from_slice(y.coords());
                probe[axis] += delta;
                if !seen.contains(probe.as_slice()) {
                    seen.insert(LatticePoint::new(probe.clone())?);
                }
            }
        }
    }

    let mut entries = BTreeMap::new();
    for x in seen {
        let mut amps = vec![S::zero(); 2 * dim];
        probe.copy_from_slice(x.coords());
        for axis in 0..dim {
            probe[axis] += 1;
            if let Some(c) = coined.get(probe.as_slice()) {
                amps[2 * axis] = c[2 * axis].clone();
            }
            probe[axis] -= 2;
            if let Some(c) = coined.get(probe.as_slice()) {
                amps[2 * axis + 1] = c[2 * axis + 1].clone();
            }
            probe[axis] += 1;
        }
        let v = ChiralVector::new(dim, amps)?;
        if !v.is_zero() {
            entries.insert(x, v);
        }
    }
    Ok(FiniteState::from_map_unchecked(dim, entries))
}

/// `U_A^n psi`; `n = 0` returns a copy of the input.
pub fn evolve<S: Scalar>(
    state: &FiniteState<S>,
    coin: &Coin<S>,
    n: usize,
) -> Result<FiniteState<S>> {
    check_dims(state, coin)?;
    let mut current = state.clone();
    for _ in 0..n {
        current = step(&current, coin)?;
    }
    Ok(current)
}

/// Runs `n` steps and returns every intermediate state, `psi_0..=psi_n`.
pub fn trajectory<S: Scalar>(
    state: &FiniteState<S>,
    coin: &Coin<S>,
    n: usize,
) -> Result<Vec<FiniteState<S>>> {
    check_dims(state, coin)?;
    let mut out = Vec::with_capacity(n + 1);
    out.push(state.clone());
    for _ in 0..n {
        let next = step(out.last().expect("nonempty"), coin)?;
        out.push(next);
    }
    Ok(out)
}

/// `||U_A psi - psi||^2`, exact in the exact backend.
pub fn fixed_point_defect<S: Scalar>(state: &FiniteState<S>, coin: &Coin<S>) -> Result<S> {
    let next = step(state, coin)?;
    Ok(next.axpy(&-S::one(), state)?.norm_sqr())
}

/// `||U_A psi - psi||`. Zero exactly when `psi` is a stationary amplitude.
pub fn fixed_point_residual<S: Scalar>(state: &FiniteState<S>, coin: &Coin<S>) -> Result<f64> {
    Ok(fixed_point_defect(state, coin)?.to_complex64().re.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational as Q;
    use num_complex::Complex64 as C;

    fn q_state(dim: usize, entries: &[(&[i64], &[i64])]) -> FiniteState<Q> {
        FiniteState::from_entries(
            dim,
            entries.iter().map(|(x, a)| {
                (
                    LatticePoint::new(x.to_vec()).unwrap(),
                    a.iter().map(|&v| Q::from_i64(v)).collect(),
                )
            }),
        )
        .unwrap()
    }

    #[test]
    fn one_dimensional_atom_is_fixed() {
        let s = q_state(1, &[(&[-1], &[1, 0]), (&[0], &[1, 1]), (&[1], &[0, 1])]);
        let g = Coin::grover(1).unwrap();
        assert_eq!(step(&s, &g).unwrap(), s);
        assert_eq!(fixed_point_residual(&s, &g).unwrap(), 0.0);
    }

    #[test]
    fn zero_state_stays_zero() {
        let s = FiniteState::<Q>::new(3).unwrap();
        let g = Coin::grover(3).unwrap();
        assert!(step(&s, &g).unwrap().is_empty());
        assert_eq!(fixed_point_residual(&s, &g).unwrap(), 0.0);
    }

    #[test]
    fn delta_spreads_to_axial_neighbours() {
        let s = q_state(2, &[(&[0, 0], &[1, 0, 0, 0])]);
        let g = Coin::grover(2).unwrap();
        let next = step(&s, &g).unwrap();
        let allowed: Vec<LatticePoint> =
            vec![[1, 0].into(), [-1, 0].into(), [0, 1].into(), [0, -1].into()];
        assert!(next.support().all(|x| allowed.contains(x)));
        assert_eq!(next.norm_sqr(), Q::one());
        // A e_1 = (-1/2, 1/2, 1/2, 1/2); component 1 moves to -e_1.
        assert_eq!(next.get(&[-1, 0].into()).unwrap()[0], Q::from_ratio(-1, 2));
        assert!(fixed_point_residual(&s, &g).unwrap() > 0.0);
    }

    #[test]
    fn evolve_zero_steps_is_identity() {
        let s = q_state(2, &[(&[3, -1], &[1, 2, 0, -1])]);
        let g = Coin::grover(2).unwrap();
        assert_eq!(evolve(&s, &g, 0).unwrap(), s);
    }

    #[test]
    fn float_mass_is_conserved() {
        let s = FiniteState::from_entries(
            2,
            [(
                LatticePoint::from([0, 0]),
                vec![
                    C::new(1.0, 0.0),
                    C::new(0.0, 0.0),
                    C::new(0.0, 0.0),
                    C::new(0.0, 0.0),
                ],
            )],
        )
        .unwrap();
        let coin = Coin::watabe(C::new(0.3, 0.0)).unwrap();
        let out = evolve(&s, &coin, 10).unwrap();
        assert!((out.norm_sqr().re - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let s = q_state(2, &[(&[0, 0], &[1, 0, 0, 0])]);
        let g = Coin::grover(3).unwrap();
        assert!(matches!(step(&s, &g), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn trajectory_matches_evolve() {
        let s = q_state(1, &[(&[0], &[1, 0])]);
        let g = Coin::grover(1).unwrap();
        let traj = trajectory(&s, &g, 4).unwrap();
        assert_eq!(traj.len(), 5);
        assert_eq!(traj[4], evolve(&s, &g, 4).unwrap());
    }

    #[test]
    fn merged_and_hashed_paths_agree() {
        let s = q_state(
            3,
            &[
                (&[0, 0, 0], &[1, 2, 3, 4, 5, 6]),
                (&[1, 0, -1], &[0, 1, 0, -1, 2, 0]),
                (&[0, 2, 0], &[3, 0, 0, 0, 0, 1]),
            ],
        );
        let coin = Coin::grover(3).unwrap();
        let index = BoxIndex::covering(&s).unwrap();
        assert_eq!(
            step_merged(&s, &coin, &index),
            step_hashed(&s, &coin).unwrap()
        );
    }

    #[test]
    fn spread_out_support_uses_fallback() {
        let far = i64::MAX / 4;
        let s = q_state(
            3,
            &[
                (&[0, 0, 0], &[1, 0, 0, 0, 0, 0]),
                (&[far, far, far], &[0, 1, 0, 0, 0, 0]),
            ],
        );
        assert!(BoxIndex::covering(&s).is_none());
        let next = step(&s, &Coin::grover(3).unwrap()).unwrap();
        assert_eq!(next.len(), 12);
        assert_eq!(next.norm_sqr(), s.norm_sqr());
    }
}
