//! Randomized invariants. Floating-point dynamics are compared against a
//! scatter-form walk written out independently below.

use std::collections::HashMap;

use num_complex::Complex64 as C;
use proptest::prelude::*;
use qwalk_core::coin::is_unitary_matrix;
use qwalk_core::evolution::{evolve, fixed_point_residual, step};
use qwalk_core::io::{state_from_json, state_to_json};
use qwalk_core::stationary::superpose;
use qwalk_core::symbol::{grover_eigenfunction, SymbolMatrix};
use qwalk_core::{
    Coin, FiniteState, GaussianRational as Q, LatticePoint, LaurentPoly, Scalar, StationaryAtom,
    WeightSequence,
};

fn rational() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4)
        .prop_map(|(a, b, c, d)| Q::from_ratio(a, b) + Q::from_ratio(c, d) * imag_unit())
}

fn imag_unit() -> Q {
    Q::new(Q::zero().re, Q::one().re)
}

fn point(dim: usize, r: i64) -> impl Strategy<Value = LatticePoint> {
    prop::collection::vec(-r..=r, dim).prop_map(|c| LatticePoint::new(c).unwrap())
}

fn state(dim: usize) -> impl Strategy<Value = FiniteState<Q>> {
    prop::collection::vec(
        (point(dim, 3), prop::collection::vec(rational(), 2 * dim)),
        0..5,
    )
    .prop_map(move |entries| FiniteState::from_entries(dim, entries).unwrap())
}

fn dim_and_state() -> impl Strategy<Value = FiniteState<Q>> {
    (1usize..=3).prop_flat_map(state)
}

fn two_states() -> impl Strategy<Value = (FiniteState<Q>, FiniteState<Q>)> {
    (1usize..=3).prop_flat_map(|d| (state(d), state(d)))
}

fn weights(dim: usize) -> impl Strategy<Value = WeightSequence<Q>> {
    prop::collection::vec((point(dim, 3), rational()), 1..=5)
        .prop_filter_map("all weights cancel", move |w| {
            WeightSequence::new(dim, w).ok()
        })
}

fn to_float(s: &FiniteState<Q>) -> FiniteState<C> {
    FiniteState::from_entries(
        s.dim(),
        s.iter()
            .map(|(x, v)| (x.clone(), v.iter().map(Scalar::to_complex64).collect())),
    )
    .unwrap()
}

/// One walk step in scatter form: the coined vector at `y` sends
/// component `2i` to `y - e_i` and component `2i + 1` to `y + e_i`.
fn scatter_step(s: &FiniteState<C>, coin: &[Vec<C>]) -> HashMap<Vec<i64>, Vec<C>> {
    let dim = s.dim();
    let mut out: HashMap<Vec<i64>, Vec<C>> = HashMap::new();
    for (y, v) in s.iter() {
        let coined: Vec<C> = coin
            .iter()
            .map(|row| row.iter().zip(v.iter()).map(|(a, b)| a * b).sum())
            .collect();
        for (r, amp) in coined.into_iter().enumerate() {
            let mut x = y.coords().to_vec();
            x[r / 2] += if r % 2 == 0 { -1 } else { 1 };
            out.entry(x)
                .or_insert_with(|| vec![C::new(0.0, 0.0); 2 * dim])[r] += amp;
        }
    }
    out
}

fn float_rows(coin: &Coin<Q>) -> Vec<Vec<C>> {
    coin.rows()
        .iter()
        .map(|r| r.iter().map(Scalar::to_complex64).collect())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mass_is_squared_norm(s in dim_and_state()) {
        let m = s.measure();
        prop_assert_eq!(m.total_mass(), s.norm_sqr());
        prop_assert!(s.iter().all(|(_, v)| !v.is_zero()));
        prop_assert!(m.iter().all(|(_, v)| !v.is_zero()));
    }

    #[test]
    fn measure_scales_by_modulus_squared(s in dim_and_state(), c in rational()) {
        let scaled = s.scaled(&c).measure();
        let m = s.measure();
        for (x, v) in scaled.iter() {
            prop_assert_eq!(v.clone(), m.get(x) * &c.norm_sqr());
        }
        if !c.is_zero() {
            prop_assert_eq!(scaled.len(), m.len());
        }
    }

    #[test]
    fn exact_json_round_trip(s in dim_and_state()) {
        let text = serde_json::to_string(&state_to_json(&s)).unwrap();
        let back: FiniteState<Q> = state_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn step_is_linear((s1, s2) in two_states(), a in rational(), b in rational()) {
        let coin = Coin::grover(s1.dim()).unwrap();
        let lhs = step(&s1.scaled(&a).axpy(&b, &s2).unwrap(), &coin).unwrap();
        let rhs = step(&s1, &coin).unwrap().scaled(&a).axpy(&b, &step(&s2, &coin).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exact_step_conserves_mass(s in dim_and_state()) {
        let coin = Coin::grover(s.dim()).unwrap();
        let next = step(&s, &coin).unwrap();
        prop_assert_eq!(next.measure().total_mass(), s.measure().total_mass());
    }

    #[test]
    fn support_grows_by_one_axis_step(s in dim_and_state()) {
        let coin = Coin::grover(s.dim()).unwrap();
        let next = step(&s, &coin).unwrap();
        for x in next.support() {
            let near = s.support().any(|y| {
                let diff: Vec<i64> = x.coords().iter().zip(y.coords()).map(|(a, b)| a - b).collect();
                diff.iter().map(|d| d.abs()).sum::<i64>() == 1
            });
            prop_assert!(near, "{:?} not adjacent to the old support", x.coords());
        }
    }

    #[test]
    fn step_matches_scatter_form(s in dim_and_state(), p in 1i64..=9) {
        // Grover in every dimension, plus the two-parameter coin on Z^2
        let dim = s.dim();
        let float_state = to_float(&s);
        let mut coins = vec![float_rows(&Coin::<Q>::grover(dim).unwrap())];
        if dim == 2 {
            coins.push(
                Coin::<C>::watabe(C::new(p as f64 / 10.0, 0.0)).unwrap().rows().to_vec(),
            );
        }
        for rows in coins {
            let coin = Coin::custom(dim, rows.clone(), 1e-12).unwrap();
            let got = step(&float_state, &coin).unwrap();
            let want = scatter_step(&float_state, &rows);
            for (x, v) in &want {
                let g = got.get(&LatticePoint::new(x.clone()).unwrap()).unwrap();
                for (a, b) in g.iter().zip(v) {
                    prop_assert!((a - b).norm() < 1e-12);
                }
            }
            prop_assert!(got.support().all(|x| want.contains_key(x.coords())));
        }
    }

    #[test]
    fn row_projections_partition_the_coin(dim in 1usize..=4) {
        let coin = Coin::<Q>::grover(dim).unwrap();
        let side = 2 * dim;
        let mut sum = vec![vec![Q::zero(); side]; side];
        for i in 1..=side {
            let proj = coin.row_projection(i).unwrap();
            for (r, row) in proj.iter().enumerate() {
                for (c, v) in row.iter().enumerate() {
                    sum[r][c] += v;
                }
            }
        }
        prop_assert_eq!(sum.as_slice(), coin.rows());
        for row in coin.rows() {
            prop_assert_eq!(row.iter().fold(Q::zero(), |a, b| a + b), Q::one());
        }
    }

    #[test]
    fn eval_is_multiplicative(
        dim in 1usize..=3,
        ta in prop::collection::vec((prop::collection::vec(-2i64..=2, 3), -5i64..=5), 1..6),
        tb in prop::collection::vec((prop::collection::vec(-2i64..=2, 3), -5i64..=5), 1..6),
        k in prop::collection::vec(-3.2f64..3.2, 3),
    ) {
        let mk = |t: &[(Vec<i64>, i64)]| {
            LaurentPoly::from_terms(dim, t.iter().map(|(e, c)| (e[..dim].to_vec(), Q::from_i64(*c)))).unwrap()
        };
        let (a, b) = (mk(&ta), mk(&tb));
        let k = &k[..dim];
        let prod = a.mul(&b).unwrap().eval(k).unwrap();
        let want = a.eval(k).unwrap() * b.eval(k).unwrap();
        prop_assert!((prod - want).norm() < 1e-12 * (1.0 + want.norm()));
    }

    #[test]
    fn symbol_is_unitary(dim in 1usize..=4, seed in prop::collection::vec(-3.2f64..3.2, 4)) {
        let m = SymbolMatrix::from_coin(&Coin::<Q>::grover(dim).unwrap());
        let u = m.eval(&seed[..dim]).unwrap();
        prop_assert!(is_unitary_matrix(&u, 1e-12));
    }

    #[test]
    fn eigenfunction_matches_closed_form(dim in 1usize..=4, k in prop::collection::vec(-3.2f64..3.2, 4)) {
        let k = &k[..dim];
        let x: Vec<C> = k.iter().map(|&t| C::cis(t)).collect();
        let got = grover_eigenfunction::<Q>(dim).unwrap().eval(k).unwrap();
        for j in 0..dim {
            let rest: C = (0..dim).filter(|&l| l != j).map(|l| 2.0 + x[l] + x[l].conj()).product();
            let want = [(1.0 + x[j]) * rest, (1.0 + x[j].conj()) * rest];
            for (g, w) in got[2 * j..2 * j + 2].iter().zip(want) {
                prop_assert!((g - w).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn superposition_is_a_fixed_point(w in (1usize..=3).prop_flat_map(weights)) {
        let dim = w.dim();
        let s = superpose(&StationaryAtom::grover(dim).unwrap(), &w).unwrap();
        let coin = Coin::grover(dim).unwrap();
        prop_assert_eq!(fixed_point_residual(&s, &coin).unwrap(), 0.0);
        let later = evolve(&s, &coin, 3).unwrap();
        prop_assert_eq!(later.measure(), s.measure());
    }

    #[test]
    fn measure_is_translation_invariant(dim in 1usize..=3, u in prop::collection::vec(-20i64..=20, 3)) {
        let atom = StationaryAtom::<Q>::grover(dim).unwrap();
        let u = LatticePoint::new(u[..dim].to_vec()).unwrap();
        let at_origin = atom.to_state(&LatticePoint::origin(dim)).unwrap().measure();
        let moved = atom.to_state(&u).unwrap().measure();
        for (x, v) in at_origin.iter() {
            prop_assert_eq!(moved.get(&x.translate(&u)), v.clone());
        }
        prop_assert_eq!(moved.len(), at_origin.len());
    }
}
