//! Unitary coin matrices.

use crate::error::{Error, Result};
use crate::scalar::{Backend, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoinKind {
    Grover,
    Watabe,
    Custom,
}

impl CoinKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CoinKind::Grover => "grover",
            CoinKind::Watabe => "watabe",
            CoinKind::Custom => "custom",
        }
    }
}

impl std::str::FromStr for CoinKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "grover" => Ok(CoinKind::Grover),
            "watabe" => Ok(CoinKind::Watabe),
            "custom" => Ok(CoinKind::Custom),
            other => Err(Error::Format(format!("unknown coin kind {other:?}"))),
        }
    }
}

/// A `2d x 2d` unitary matrix, stored row-major. Unitarity is checked
/// when the coin is built.
#[derive(Clone, Debug, PartialEq)]
pub struct Coin<S> {
    dim: usize,
    kind: CoinKind,
    p: Option<S>,
    rows: Vec<Vec<S>>,
}

impl<S: Scalar> Coin<S> {
    /// The Grover coin `g_ij = 2/D - delta_ij`, `D = 2d`.
    pub fn grover(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let side = 2 * dim as i64;
        let off = S::from_ratio(2, side);
        let diag = S::from_ratio(2 - side, side);
        let rows = (0..2 * dim)
            .map(|i| {
                (0..2 * dim)
                    .map(|j| if i == j { diag.clone() } else { off.clone() })
                    .collect()
            })
            .collect();
        Ok(Self {
            dim,
            kind: CoinKind::Grover,
            p: None,
            rows,
        })
    }

    /// The two-parameter family on `Z^2` with `q = 1 - p`:
    ///
    /// ```text
    /// [ -p   q    s    s ]
    /// [  q  -p    s    s ]      s = sqrt(pq)
    /// [  s   s   -q    p ]
    /// [  s   s    p   -q ]
    /// ```
    ///
    /// `p = 1/2` is the Grover coin. In exact mode `sqrt(pq)` must be
    /// rational.
    pub fn watabe(p: S) -> Result<Self> {
        let q = S::one() - &p;
        let s = watabe_sqrt_pq(&p)?;
        let rows = vec![
            vec![-p.clone(), q.clone(), s.clone(), s.clone()],
            vec![q.clone(), -p.clone(), s.clone(), s.clone()],
            vec![s.clone(), s.clone(), -q.clone(), p.clone()],
            vec![s.clone(), s, p.clone(), -q],
        ];
        Ok(Self {
            dim: 2,
            kind: CoinKind::Watabe,
            p: Some(p),
            rows,
        })
    }

    /// A user-supplied matrix. Rejected unless unitary within `tol`
    /// (exactly, for the exact backend).
    pub fn custom(dim: usize, rows: Vec<Vec<S>>, tol: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let side = 2 * dim;
        if rows.len() != side || rows.iter().any(|r| r.len() != side) {
            return Err(Error::CoinShape { side });
        }
        if !is_unitary_matrix(&rows, tol) {
            return Err(Error::NotUnitary {
                deviation: unitarity_defect(&rows),
            });
        }
        Ok(Self {
            dim,
            kind: CoinKind::Custom,
            p: None,
            rows,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn side(&self) -> usize {
        2 * self.dim
    }

    pub fn kind(&self) -> CoinKind {
        self.kind
    }

    pub fn p(&self) -> Option<&S> {
        self.p.as_ref()
    }

    pub fn rows(&self) -> &[Vec<S>] {
        &self.rows
    }

    /// 0-based entry.
    pub fn entry(&self, i: usize, j: usize) -> &S {
        &self.rows[i][j]
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        is_unitary_matrix(&self.rows, tol)
    }

    /// `P_i A` for a 1-based chiral index `i`: row `i` of the coin, all
    /// other rows zero.
    pub fn row_projection(&self, i: usize) -> Result<Vec<Vec<S>>> {
        let side = self.side();
        if i == 0 || i > side {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: side,
            });
        }
        Ok((0..side)
            .map(|r| {
                if r == i - 1 {
                    self.rows[r].clone()
                } else {
                    vec![S::zero(); side]
                }
            })
            .collect())
    }

    /// `A v` for a vector of length `2d`.
    pub fn apply(&self, v: &[S]) -> Vec<S> {
        debug_assert_eq!(v.len(), self.side());
        if self.kind == CoinKind::Grover {
            // rank-one form: G v = (2/D) sum(v) - v
            let mut mean = S::zero();
            for x in v {
                mean += x;
            }
            let mean = mean * &self.rows[0][1];
            return v.iter().map(|x| mean.clone() - x).collect();
        }
        self.rows
            .iter()
            .map(|row| {
                let mut acc = S::zero();
                for (a, x) in row.iter().zip(v) {
                    acc.mul_add_assign(a, x);
                }
                acc
            })
            .collect()
    }
}

fn watabe_sqrt_pq<S: Scalar>(p: &S) -> Result<S> {
    use std::cmp::Ordering::Less;
    let in_range = p.cmp_real(&S::zero()) == Some(std::cmp::Ordering::Greater)
        && p.cmp_real(&S::one()) == Some(Less);
    if !in_range {
        return Err(Error::ParameterOutOfRange(format!(
            "{:?}",
            p.to_complex64().re
        )));
    }
    let pq = p.clone() * &(S::one() - p);
    pq.real_sqrt().ok_or_else(|| match S::BACKEND {
        Backend::Exact => Error::IrrationalParameter(format!("{p:?}")),
        Backend::Float => Error::ParameterOutOfRange(format!("{:?}", p.to_complex64().re)),
    })
}

/// `A* A` for a square matrix.
fn gram<S: Scalar>(m: &[Vec<S>]) -> Vec<Vec<S>> {
    let n = m.len();
    let mut out = vec![vec![S::zero(); n]; n];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            for mk in m {
                cell.mul_add_assign(&mk[i].conj(), &mk[j]);
            }
        }
    }
    out
}

/// Largest entry modulus of `A* A - I`.
pub fn unitarity_defect<S: Scalar>(m: &[Vec<S>]) -> f64 {
    gram(m)
        .into_iter()
        .enumerate()
        .flat_map(|(i, row)| {
            row.into_iter().enumerate().map(move |(j, g)| {
                let target = if i == j { S::one() } else { S::zero() };
                (g - &target).modulus()
            })
        })
        .fold(0.0, f64::max)
}

/// Exact equality `A* A = I` for the exact backend; otherwise every
/// entry of `A* A - I` must be at most `tol` in modulus.
pub fn is_unitary_matrix<S: Scalar>(m: &[Vec<S>], tol: f64) -> bool {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return false;
    }
    match S::BACKEND {
        Backend::Exact => gram(m).into_iter().enumerate().all(|(i, row)| {
            row.into_iter().enumerate().all(
                |(j, g)| {
                    if i == j {
                        g == S::one()
                    } else {
                        g.is_zero()
                    }
                },
            )
        }),
        Backend::Float => unitarity_defect(m) <= tol,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational as Q;
    use num_complex::Complex64 as C;

    fn exact(rows: &[&[(i64, i64)]]) -> Vec<Vec<Q>> {
        rows.iter()
            .map(|r| r.iter().map(|&(n, d)| Q::from_ratio(n, d)).collect())
            .collect()
    }

    #[test]
    fn grover_small_dims() {
        let g1 = Coin::<Q>::grover(1).unwrap();
        assert_eq!(g1.rows(), exact(&[&[(0, 1), (1, 1)], &[(1, 1), (0, 1)]]));

        let g2 = Coin::<Q>::grover(2).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j {
                    Q::from_ratio(-1, 2)
                } else {
                    Q::from_ratio(1, 2)
                };
                assert_eq!(g2.entry(i, j), &want);
            }
        }

        let g3 = Coin::<Q>::grover(3).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                let want = Q::from_ratio(if i == j { -2 } else { 1 }, 3);
                assert_eq!(g3.entry(i, j), &want);
            }
        }
        assert!(matches!(Coin::<Q>::grover(0), Err(Error::ZeroDimension)));
    }

    #[test]
    fn grover_rows_sum_to_one_and_are_unitary() {
        for d in 1..=5 {
            let g = Coin::<Q>::grover(d).unwrap();
            assert!(g.is_unitary(0.0));
            for row in g.rows() {
                let sum = row.iter().fold(Q::zero(), |acc, x| acc + x);
                assert_eq!(sum, Q::one());
            }
        }
    }

    #[test]
    fn watabe_half_is_grover() {
        let w = Coin::<C>::watabe(C::new(0.5, 0.0)).unwrap();
        let g = Coin::<C>::grover(2).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert!((w.entry(i, j) - g.entry(i, j)).norm() <= 1e-15);
            }
        }
        let we = Coin::<Q>::watabe(Q::from_ratio(1, 2)).unwrap();
        assert_eq!(we.rows(), Coin::<Q>::grover(2).unwrap().rows());
    }

    #[test]
    fn watabe_quarter_first_row() {
        let w = Coin::<C>::watabe(C::new(0.25, 0.0)).unwrap();
        let s3 = 3f64.sqrt() / 4.0;
        let want = [-0.25, 0.75, s3, s3];
        for (j, x) in want.iter().enumerate() {
            assert!((w.entry(0, j).re - x).abs() < 1e-15);
        }
    }

    #[test]
    fn watabe_parameter_checks() {
        assert!(matches!(
            Coin::<C>::watabe(C::new(0.0, 0.0)),
            Err(Error::ParameterOutOfRange(_))
        ));
        assert!(matches!(
            Coin::<C>::watabe(C::new(1.0, 0.0)),
            Err(Error::ParameterOutOfRange(_))
        ));
        assert!(matches!(
            Coin::<Q>::watabe(Q::from_ratio(3, 10)),
            Err(Error::IrrationalParameter(_))
        ));
        // p = 1/5: pq = 4/25
        let w = Coin::<Q>::watabe(Q::from_ratio(1, 5)).unwrap();
        assert_eq!(w.entry(0, 2), &Q::from_ratio(2, 5));
        assert!(w.is_unitary(0.0));
    }

    #[test]
    fn watabe_float_is_unitary() {
        for p in [0.1, 0.3, 0.5, 0.7, 0.9] {
            assert!(Coin::<C>::watabe(C::new(p, 0.0)).unwrap().is_unitary(1e-12));
        }
    }

    #[test]
    fn perturbed_grover_is_not_unitary() {
        let mut rows = Coin::<C>::grover(2).unwrap().rows().to_vec();
        rows[1][2] += C::new(1e-3, 0.0);
        assert!(!is_unitary_matrix(&rows, 1e-6));
        assert!(matches!(
            Coin::custom(2, rows, 1e-6),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn custom_coin_shape_is_checked() {
        let rows = vec![vec![C::new(1.0, 0.0)]];
        assert!(matches!(
            Coin::custom(1, rows, 1e-12),
            Err(Error::CoinShape { side: 2 })
        ));
        let flip = vec![
            vec![C::new(0.0, 0.0), C::new(0.0, 1.0)],
            vec![C::new(0.0, 1.0), C::new(0.0, 0.0)],
        ];
        assert!(Coin::custom(1, flip, 1e-12).is_ok());
    }

    #[test]
    fn row_projections_partition_the_coin() {
        let g1 = Coin::<Q>::grover(1).unwrap();
        assert_eq!(
            g1.row_projection(1).unwrap(),
            exact(&[&[(0, 1), (1, 1)], &[(0, 1), (0, 1)]])
        );
        assert_eq!(
            g1.row_projection(2).unwrap(),
            exact(&[&[(0, 1), (0, 1)], &[(1, 1), (0, 1)]])
        );
        assert!(matches!(
            g1.row_projection(3),
            Err(Error::IndexOutOfRange { index: 3, max: 2 })
        ));
        assert!(g1.row_projection(0).is_err());

        let w = Coin::<Q>::watabe(Q::from_ratio(1, 5)).unwrap();
        let mut sum = vec![vec![Q::zero(); 4]; 4];
        for i in 1..=4 {
            for (srow, prow) in sum.iter_mut().zip(w.row_projection(i).unwrap()) {
                for (s, p) in srow.iter_mut().zip(prow) {
                    *s += &p;
                }
            }
        }
        assert_eq!(sum, w.rows());
    }
}
