mod common;

use common::{all_paths, brute_force_min_cost, random_series};
use proptest::prelude::*;
use vidalign::align::{
    align, align_costs, cost_matrix, diagonal_distance, dp_align, penalize, trivial_align,
    AlignmentConfig, CostMatrix, Margin, Method, WarpPath,
};
use vidalign::matrix::Matrix;
use vidalign::rng::SplitMix64;

fn costs_strategy(max: usize) -> impl Strategy<Value = CostMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(n, k)| {
        prop::collection::vec(0.0f64..10.0, n * k)
            .prop_map(move |v| CostMatrix::new(Matrix::from_vec(n, k, v).unwrap()).unwrap())
    })
}

proptest! {
    #[test]
    fn dp_matches_exhaustive_minimum(d in costs_strategy(7)) {
        let r = dp_align(&d);
        r.path.validate(d.n(), d.k()).unwrap();
        prop_assert!((r.total_cost - brute_force_min_cost(&d)).abs() <= 1e-9);
        prop_assert!((r.total_cost - d.path_cost(&r.path)).abs() <= 1e-9);
    }

    #[test]
    fn dp_path_is_one_of_the_enumerated_paths(d in costs_strategy(5)) {
        let r = dp_align(&d);
        prop_assert!(all_paths(d.n(), d.k()).iter().any(|p| p.as_slice() == r.path.steps()));
    }

    #[test]
    fn transposed_table_gives_same_cost(d in costs_strategy(8)) {
        let a = dp_align(&d);
        let b = dp_align(&d.transpose());
        prop_assert!((a.total_cost - b.total_cost).abs() <= 1e-9);
    }

    #[test]
    fn penalized_optimum_grows_with_lambda(d in costs_strategy(8), l1 in 0.0f64..5.0, dl in 0.0f64..5.0, m in 0.0f64..3.0) {
        let lo = dp_align(&penalize(&d, m, l1)).total_cost;
        let hi = dp_align(&penalize(&d, m, l1 + dl)).total_cost;
        prop_assert!(lo <= hi + 1e-9);
        prop_assert!(dp_align(&d).total_cost <= lo + 1e-9);
    }

    #[test]
    fn ddtw_is_dtw_on_the_penalized_table(d in costs_strategy(6), m in 0.0f64..3.0, l in 0.0f64..4.0) {
        let cfg = AlignmentConfig { method: Method::Ddtw, margin: Margin::Fixed(m), lambda: l };
        let r = align_costs(&d, &cfg).unwrap();
        let dp = penalize(&d, m, l);
        prop_assert!((r.total_cost - brute_force_min_cost(&dp)).abs() <= 1e-9);
    }

    #[test]
    fn dtw_cost_is_symmetric(seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        let dim = rng.range_inclusive(1, 5);
        let (n, k) = (rng.range_inclusive(2, 20), rng.range_inclusive(2, 20));
        let x = random_series(&mut rng, n, dim);
        let y = random_series(&mut rng, k, dim);
        let xy = align(&x, &y, &AlignmentConfig::dtw()).unwrap();
        let yx = align(&y, &x, &AlignmentConfig::dtw()).unwrap();
        prop_assert!((xy.total_cost - yx.total_cost).abs() <= 1e-9);
    }

    #[test]
    fn trivial_path_is_valid_and_tracks_the_diagonal(n in 1usize..60, k in 1usize..60) {
        let p = trivial_align(n, k).unwrap();
        p.validate(n, k).unwrap();
        for i in 1..=n {
            let j = ((i * k) as f64 / n as f64).round() as usize;
            prop_assert!(p.steps().contains(&(i, j.clamp(1, k))));
        }
    }

    #[test]
    fn diagonal_distance_matches_point_to_line(i in 0usize..50, j in 0usize..50, n in 1usize..50, k in 1usize..50) {
        // distance from (i, j) to the line through the origin and (n, k)
        let (px, py, dx, dy) = (i as f64, j as f64, n as f64, k as f64);
        let len = (dx * dx + dy * dy).sqrt();
        let oracle = ((px * dy - py * dx) / len).abs();
        prop_assert!((diagonal_distance(i, j, n, k) - oracle).abs() <= 1e-9);
    }
}

#[test]
fn equal_length_trivial_is_the_diagonal() {
    let p = trivial_align(9, 9).unwrap();
    assert_eq!(
        p.steps(),
        (1..=9).map(|i| (i, i)).collect::<Vec<_>>().as_slice()
    );
}

#[test]
fn penalty_keeps_ddtw_out_of_a_cheap_off_diagonal_corridor() {
    // unit costs everywhere except a cheap L-shaped detour along the first
    // column and last row
    let n = 9;
    let mut m = Matrix::filled(n, n, 1.0);
    for t in 0..n {
        m.set(t, 0, 0.2);
        m.set(n - 1, t, 0.2);
    }
    let d = CostMatrix::new(m).unwrap();
    let dtw = dp_align(&d);
    let cfg = AlignmentConfig {
        method: Method::Ddtw,
        margin: Margin::Auto,
        lambda: 1.0,
    };
    let ddtw = align_costs(&d, &cfg).unwrap();

    let margin = Margin::Auto.resolve(n, n);
    let max_dev = |p: &WarpPath| {
        p.steps()
            .iter()
            .map(|&(i, j)| diagonal_distance(i, j, n, n))
            .fold(0.0, f64::max)
    };
    assert!(max_dev(&dtw.path) > margin, "DTW should follow the detour");
    assert!(
        max_dev(&ddtw.path) <= margin,
        "DDTW should stay near the diagonal"
    );

    // both optima agree with exhaustive search on their own tables
    assert!((dtw.total_cost - brute_force_min_cost(&d)).abs() < 1e-9);
    assert!((ddtw.total_cost - brute_force_min_cost(&penalize(&d, margin, 1.0))).abs() < 1e-9);
}

#[test]
fn cost_matrix_is_euclidean() {
    let mut rng = SplitMix64::new(7);
    let x = random_series(&mut rng, 6, 3);
    let y = random_series(&mut rng, 4, 3);
    let d = cost_matrix(&x, &y).unwrap();
    for i in 1..=6 {
        for j in 1..=4 {
            let oracle: f64 = x
                .frame(i - 1)
                .iter()
                .zip(y.frame(j - 1))
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            assert!((d.at(i, j) - oracle).abs() < 1e-12);
        }
    }
}
