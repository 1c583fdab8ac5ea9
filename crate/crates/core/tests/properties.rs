use misodof::channel::{ChannelRealization, CsitConfig};
use misodof::decoding::{decodable_columns, decodable_columns_by_rank, jointly_decodable, oracle_decodable};
use misodof::dof_lab::{parse_grid, parse_rational, region_check};
use misodof::numerics::{
    complement, exact, orth_projector, separable, solve_zero_forcer, Exact, Float, Mat, Scalar,
    ZeroForcer,
};
use misodof::scheme_core::{run_scheme, LinearScheme};
use misodof::schemes::{registry, BuiltinScheme};
use num_rational::Rational64;
use proptest::prelude::*;

fn small_entry() -> impl Strategy<Value = Exact> {
    (-3i64..=3, -3i64..=3).prop_map(|(re, im)| exact(re, im))
}

/// Matrices with small Gaussian-integer entries; low rank is common.
fn exact_mat(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Mat<Exact>> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(small_entry(), r * c)
            .prop_map(move |data| Mat::from_vec(r, c, data).unwrap())
    })
}

/// `u · vᵀ` sums of a chosen number of rank-one terms, so rank deficiency is
/// guaranteed rather than accidental.
fn low_rank(rows: usize, cols: usize, terms: usize) -> impl Strategy<Value = Mat<Exact>> {
    prop::collection::vec(
        (
            prop::collection::vec(small_entry(), rows),
            prop::collection::vec(small_entry(), cols),
        ),
        terms,
    )
    .prop_map(move |uv| {
        Mat::from_fn(rows, cols, |i, j| {
            uv.iter()
                .fold(Exact::zero(), |acc, (u, v)| acc + u[i].clone() * v[j].clone())
        })
    })
}

fn to_float(m: &Mat<Exact>) -> Mat<Float> {
    Mat::from_fn(m.rows(), m.cols(), |i, j| m.get(i, j).to_float())
}

fn permuted_rows(m: &Mat<Exact>, shift: usize) -> Mat<Exact> {
    let order: Vec<usize> = (0..m.rows()).map(|i| (i + shift) % m.rows()).collect();
    m.select_rows(&order)
}

fn max_abs(m: &Mat<Float>) -> f64 {
    m.entries().iter().map(|x| x.norm()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bareiss_rank_matches_rref_pivots(m in exact_mat(5, 6)) {
        let (_, pivots) = m.rref();
        prop_assert_eq!(m.rank().unwrap(), pivots.len());
    }

    #[test]
    fn rank_ignores_row_order_and_nonzero_scaling(
        m in exact_mat(5, 5),
        shift in 0usize..5,
        s in (1i64..4, -3i64..4),
    ) {
        let r = m.rank().unwrap();
        prop_assert_eq!(permuted_rows(&m, shift).rank().unwrap(), r);
        prop_assert_eq!(m.scaled(&exact(s.0, s.1)).rank().unwrap(), r);
    }

    #[test]
    fn rank_of_sum_of_rank_ones(m in low_rank(4, 5, 2)) {
        prop_assert!(m.rank().unwrap() <= 2);
    }

    #[test]
    fn float_rank_agrees_with_exact(m in exact_mat(4, 5)) {
        prop_assert_eq!(to_float(&m).rank().unwrap(), m.rank().unwrap());
    }

    #[test]
    fn per_symbol_rref_matches_per_column_rank(m in exact_mat(5, 6)) {
        prop_assert_eq!(decodable_columns(&m).unwrap(), decodable_columns_by_rank(&m).unwrap());
    }

    #[test]
    fn joint_decodability_implies_each_column(m in exact_mat(5, 5), mask in 1u32..32) {
        let cols: Vec<usize> = (0..m.cols()).filter(|c| mask & (1 << c) != 0).collect();
        prop_assume!(!cols.is_empty());
        let singles = decodable_columns(&m).unwrap();
        prop_assert_eq!(
            jointly_decodable(&m, &cols),
            cols.iter().all(|c| singles.contains(c))
        );
    }

    #[test]
    fn projector_is_hermitian_idempotent_annihilator(
        rows in (2usize..=4).prop_flat_map(|m| {
            (Just(m), prop::collection::vec(prop::collection::vec(small_entry(), m), 1..m))
        })
    ) {
        let (m, rows) = rows;
        let p = orth_projector(&rows, m).unwrap();
        prop_assert_eq!(&p.adjoint(), &p);
        prop_assert_eq!(&(&p * &p), &p);
        for h in &rows {
            let hp = p.left_mul(h).unwrap();
            prop_assert!(hp.iter().all(|x| x.is_zero()));
        }
        let span = Mat::from_rows(rows.clone()).unwrap().rank().unwrap();
        let (_, piv) = p.rref();
        prop_assert_eq!(piv.len(), m - span);
    }

    #[test]
    fn zero_forcer_exists_iff_separable(m in exact_mat(5, 5), mask in 1u32..32) {
        let desired: Vec<usize> = (0..m.cols()).filter(|c| mask & (1 << c) != 0).collect();
        prop_assume!(!desired.is_empty());
        let zf = solve_zero_forcer(&m, &desired).unwrap();
        prop_assert_eq!(zf.is_feasible(), separable(&m, &desired));
        prop_assert_eq!(zf.is_feasible(), jointly_decodable(&m, &desired));
        if let ZeroForcer::Feasible(w) = zf {
            let on = &w * &m.select_columns(&desired);
            prop_assert_eq!(on, Mat::identity(desired.len()));
            let rest = complement(&desired, m.cols());
            if !rest.is_empty() {
                prop_assert!((&w * &m.select_columns(&rest)).is_zero());
            }
        }
    }

    #[test]
    fn float_zero_forcer_matches_exact(m in exact_mat(5, 4), mask in 1u32..16) {
        let desired: Vec<usize> = (0..m.cols()).filter(|c| mask & (1 << c) != 0).collect();
        prop_assume!(!desired.is_empty());
        let exact_ok = solve_zero_forcer(&m, &desired).unwrap().is_feasible();
        let f = to_float(&m);
        match solve_zero_forcer(&f, &desired).unwrap() {
            ZeroForcer::Feasible(w) => {
                prop_assert!(exact_ok);
                let on = &w * &f.select_columns(&desired);
                let err = &on - &Mat::identity(desired.len());
                prop_assert!(max_abs(&err) < 1e-9);
                let rest = complement(&desired, m.cols());
                if !rest.is_empty() {
                    prop_assert!(max_abs(&(&w * &f.select_columns(&rest))) < 1e-9);
                }
            }
            ZeroForcer::Infeasible => prop_assert!(!exact_ok),
        }
    }

    #[test]
    fn region_is_closed_under_shrinking(
        d in (0i64..=8, 0i64..=8, 0i64..=8),
        shrink in 1i64..=4,
    ) {
        let r = |n| Rational64::new(n, 8);
        let outer = region_check(r(d.0), r(d.1), r(d.2)).unwrap();
        if outer.inside {
            let s = Rational64::new(1, shrink);
            let inner = region_check(r(d.0) * s, r(d.1) * s, r(d.2) * s).unwrap();
            prop_assert!(inner.inside);
        }
    }

    #[test]
    fn parsers_never_panic(s in "\\PC{0,12}") {
        let _ = parse_rational(&s);
        let _ = parse_grid(&s);
        let _ = s.parse::<CsitConfig>();
    }

    #[test]
    fn rational_display_round_trips(n in -50i64..50, d in 1i64..50) {
        let q = Rational64::new(n, d);
        prop_assert_eq!(parse_rational(&q.to_string()).unwrap(), q);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn every_scheme_meets_its_declaration(idx in 0usize..16, seed in 1000u64..1_000_000) {
        let schemes = registry();
        let s: &BuiltinScheme = &schemes[idx % schemes.len()];
        let d = s.descriptor();
        let real = ChannelRealization::<Exact>::draw(seed, d.antennas, d.receivers, d.slots).unwrap();
        let tr = run_scheme(s, &real, &d.csit).unwrap();
        prop_assert!(tr.audit_is_clean());
        for k in 0..d.receivers {
            prop_assert_eq!(&oracle_decodable(&tr, k).unwrap(), &tr.targets[k]);
        }
    }
}
