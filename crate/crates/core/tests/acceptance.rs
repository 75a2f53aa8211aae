//! Acceptance suite. Each test prints one PASS/FAIL line for its criterion
//! and then asserts it. Run with `--nocapture` to see the lines.

mod common;

use common::{brute_force_min_cost, random_series, random_track, shoelace_area};
use std::time::{Duration, Instant};
use vidalign::align::{
    align, cost_matrix, diagonal_distance, dp_align, penalize, AlignmentConfig, CostMatrix, Margin,
    Method, WarpPath,
};
use vidalign::eval::{
    eae, enclosed_area, EvalReport, GroundTruthPath, PhaseAnnotation, ReportConfig,
};
use vidalign::features::{gaussian_mask, MaskConfig, SubjectBox};
use vidalign::io;
use vidalign::matrix::Matrix;
use vidalign::rng::SplitMix64;
use vidalign::series::{build_series, FeatureSeries, GlobalFeatures, SERIES_WIDTH};
use vidalign::synth::{generate_dataset, run_suite, DatasetSpec, Suite, SuiteConfig};

type SeriesWriter = fn(&mut Vec<u8>, &FeatureSeries) -> vidalign::Result<()>;

fn verdict(id: u32, name: &str, pass: bool, detail: String) {
    println!(
        "[{}] AC{id:02} {name}: {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "AC{id:02} {name} failed: {detail}");
}

#[test]
fn ac01_dtw_matches_exhaustive_search() {
    let start = Instant::now();
    let mut rng = SplitMix64::new(0xAC01);
    let mut worst = 0.0f64;
    let pairs = 200;
    for _ in 0..pairs {
        let dim = rng.range_inclusive(1, 4);
        let (n, k) = (rng.range_inclusive(3, 8), rng.range_inclusive(3, 8));
        let x = random_series(&mut rng, n, dim);
        let y = random_series(&mut rng, k, dim);
        let d = cost_matrix(&x, &y).unwrap();
        let got = dp_align(&d);
        got.path.validate(x.len(), y.len()).unwrap();
        worst = worst.max((got.total_cost - brute_force_min_cost(&d)).abs());
        worst = worst.max((got.total_cost - d.path_cost(&got.path)).abs());
    }
    let elapsed = start.elapsed();
    verdict(
        1,
        "DTW oracle equivalence",
        worst <= 1e-9 && elapsed < Duration::from_secs(10),
        format!("{pairs} pairs, max |dp - brute force| = {worst:.2e}, {elapsed:.2?}"),
    );
}

#[test]
fn ac02_ddtw_reduces_to_dtw() {
    let mut rng = SplitMix64::new(0xAC02);
    let mut identical = 0;
    let pairs = 100;
    for _ in 0..pairs {
        let dim = rng.range_inclusive(1, 6);
        let (n, k) = (rng.range_inclusive(2, 30), rng.range_inclusive(2, 30));
        let x = random_series(&mut rng, n, dim);
        let y = random_series(&mut rng, k, dim);
        let plain = align(&x, &y, &AlignmentConfig::dtw()).unwrap();
        let no_lambda = AlignmentConfig {
            method: Method::Ddtw,
            margin: Margin::Fixed(rng.uniform(0.0, 3.0)),
            lambda: 0.0,
        };
        let no_margin = AlignmentConfig {
            method: Method::Ddtw,
            margin: Margin::Fixed(f64::INFINITY),
            lambda: rng.uniform(0.1, 10.0),
        };
        let same = [no_lambda, no_margin].iter().all(|cfg| {
            let r = align(&x, &y, cfg).unwrap();
            r.path == plain.path && r.total_cost.to_bits() == plain.total_cost.to_bits()
        });
        identical += same as usize;
    }
    verdict(
        2,
        "DDTW reduction",
        identical == pairs,
        format!("{identical}/{pairs} pairs bit-identical for lambda=0 and margin=inf"),
    );
}

#[test]
fn ac03_penalty_and_distance_fixtures() {
    // n = k = 5: cell (4, 1) lies 3/sqrt(2) from the diagonal, margin puts it 1 beyond
    let mut raw = Matrix::zeros(5, 5);
    raw.set(3, 0, 2.0);
    let d = CostMatrix::new(raw).unwrap();
    let margin = diagonal_distance(4, 1, 5, 5) - 1.0;
    let penalized = penalize(&d, margin, 0.5).at(4, 1);
    let on_diag = diagonal_distance(6, 6, 9, 9);
    let rect = diagonal_distance(4, 0, 4, 2);
    let pass = penalized == 3.0 && on_diag == 0.0 && (rect - 1.7889).abs() <= 1e-4;
    verdict(
        3,
        "penalty/diagonal-distance fixtures",
        pass,
        format!("penalized = {penalized}, d(n=k, i=j) = {on_diag}, d(4,0;4,2) = {rect:.6}"),
    );
}

#[test]
fn ac04_enclosed_area_fixtures() {
    let n = 11;
    let diag = WarpPath::new((1..=n).map(|i| (i, i)).collect(), n, n).unwrap();
    let same_gt = GroundTruthPath::new((1..=n).map(|i| (i as f64, i as f64)).collect()).unwrap();
    let identical = eae(&diag, &same_gt, n, n).unwrap();
    let stair: Vec<(f64, f64)> = [(1, 1), (2, 1), (3, 2), (3, 3), (4, 4), (5, 4), (5, 5)]
        .iter()
        .map(|&(i, j)| (i as f64, j as f64))
        .collect();
    let identical_stair = enclosed_area(&stair, &stair);

    let tri = [(1.0, 1.0), (6.0, 3.0), (11.0, 11.0)];
    let triangle = eae(&diag, &GroundTruthPath::new(tri.to_vec()).unwrap(), n, n).unwrap();
    let oracle = shoelace_area(&tri) / ((n - 1) * (n - 1)) as f64;
    let pass = identical.abs() <= 1e-12
        && identical_stair.abs() <= 1e-12
        && (triangle - 0.15).abs() <= 1e-12
        && (oracle - 0.15).abs() <= 1e-12;
    verdict(
        4,
        "EAE fixtures",
        pass,
        format!("identical = {identical:e} / {identical_stair:e}, triangle = {triangle}, shoelace oracle = {oracle}"),
    );
}

#[test]
fn ac05_feature_layout_and_normalization() {
    let mut rng = SplitMix64::new(0xAC05);
    let mut worst_mean = 0.0f64;
    let mut worst_var = 0.0f64;
    let mut widths_ok = true;
    for v in 0..10 {
        let t = rng.range_inclusive(12, 60);
        let track = random_track(&mut rng, t, 0.2);
        let global =
            GlobalFeatures::new(Matrix::from_fn(t, 64, |_, _| rng.normal() * 3.0 + 1.0)).unwrap();
        let s = build_series(format!("v{v}"), &track, &global).unwrap();
        widths_ok &= s.dim() == SERIES_WIDTH && SERIES_WIDTH == 3 + 48 + 3 + 48 + 64;
        for d in 0..s.dim() {
            let col = s.values().column(d);
            if col.iter().all(|&x| x == 0.0) {
                continue;
            }
            let mean = col.iter().sum::<f64>() / t as f64;
            let var = col.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / t as f64;
            worst_mean = worst_mean.max(mean.abs());
            worst_var = worst_var.max((var - 1.0).abs());
        }
    }
    verdict(
        5,
        "feature layout",
        widths_ok && worst_mean <= 1e-9 && worst_var <= 1e-6,
        format!(
            "width {SERIES_WIDTH}, max |mean| = {worst_mean:.1e}, max |var - 1| = {worst_var:.1e}"
        ),
    );
}

#[test]
fn ac06_wait_phase_ddtw_beats_trivial() {
    let start = Instant::now();
    let cfg = SuiteConfig {
        pairs: 100,
        seed: 0xAC06,
        ..SuiteConfig::default()
    };
    let report = run_suite(Suite::WaitPhase, &cfg).unwrap();
    let elapsed = start.elapsed();
    let win = report.eae_win_rate(Method::Ddtw, Method::Trivial);
    let (med_ddtw, med_trivial) = (
        report.median_eae(Method::Ddtw),
        report.median_eae(Method::Trivial),
    );
    verdict(
        6,
        "wait-phase direction",
        win >= 0.8 && med_ddtw < med_trivial && elapsed < Duration::from_secs(60),
        format!(
            "DDTW <= trivial on {:.0}% of pairs, median EAE {med_ddtw:.4} vs {med_trivial:.4}, \
             median CPR {:.3} vs {:.3}, {elapsed:.2?}",
            win * 100.0,
            report.median_cpr(Method::Ddtw),
            report.median_cpr(Method::Trivial),
        ),
    );
}

#[test]
fn ac07_corridor_ddtw_beats_dtw() {
    let cfg = SuiteConfig {
        pairs: 100,
        seed: 0xAC07,
        ..SuiteConfig::default()
    };
    let report = run_suite(Suite::Corridor, &cfg).unwrap();
    let win = report.eae_win_rate(Method::Ddtw, Method::Dtw);
    let ddtw: Vec<f64> = report.scores(Method::Ddtw).map(|r| r.eae).collect();
    let dtw: Vec<f64> = report.scores(Method::Dtw).map(|r| r.eae).collect();
    // guard against a pass made only of ties
    let strict = ddtw.iter().zip(&dtw).filter(|(a, b)| a < b).count();
    verdict(
        7,
        "corridor direction",
        win >= 0.7 && strict * 2 > ddtw.len(),
        format!(
            "DDTW <= DTW on {:.0}% of pairs ({strict} strictly better), median EAE {:.4} vs {:.4}",
            win * 100.0,
            report.median_eae(Method::Ddtw),
            report.median_eae(Method::Dtw)
        ),
    );
}

#[test]
fn ac08_cross_validated_phase_classification() {
    use vidalign::eval::{cross_validate, CvConfig};
    let data = generate_dataset(&DatasetSpec {
        videos: 30,
        phase_count: 3,
        seed: 0xAC08,
        ..DatasetSpec::default()
    })
    .unwrap();
    let cfg = CvConfig {
        folds: 10,
        k: 5,
        seed: 0xAC08,
    };
    let first = cross_validate(&data, &cfg).unwrap();
    let again = cross_validate(&data, &cfg).unwrap();
    let mut reversed = data.clone();
    reversed.reverse();
    let permuted = cross_validate(&reversed, &cfg).unwrap();
    let deterministic = first == again && first.accuracy == permuted.accuracy;
    verdict(
        8,
        "phase classification",
        first.accuracy >= 0.95 && deterministic,
        format!(
            "accuracy {:.4} over {} frames, deterministic = {deterministic}",
            first.accuracy, first.total
        ),
    );
}

#[test]
fn ac09_mask_invariants() {
    let mut rng = SplitMix64::new(0xAC09);
    let (width, height) = (320, 240);
    let bbox = SubjectBox::new(150.0, 110.0, 80.0, 140.0);
    let mask = gaussian_mask(width, height, &bbox, &MaskConfig::default()).unwrap();
    let center = mask.weight_at(150, 110);

    let mut outside_ok = true;
    for y in 0..height {
        for x in 0..width {
            if !mask.mbox.contains(x, y) {
                outside_ok &= mask.weight_at(x, y) == mask.g_min - 0.2;
            }
        }
    }
    let border_min = (0..height)
        .flat_map(|y| (0..width).map(move |x| (x, y)))
        .filter(|&(x, y)| mask.mbox.on_border(x, y))
        .map(|(x, y)| mask.weight_at(x, y))
        .fold(f64::INFINITY, f64::min);

    let mut monotone_rays = 0;
    for _ in 0..1000 {
        let angle = rng.uniform(0.0, std::f64::consts::TAU);
        let (dx, dy) = (angle.cos(), angle.sin());
        let mut prev = f64::INFINITY;
        let mut ok = true;
        for step in 0..400 {
            let r = step as f64 * 0.5;
            let (x, y) = ((150.0 + r * dx).round(), (110.0 + r * dy).round());
            if x < 0.0 || y < 0.0 || !mask.mbox.contains(x as usize, y as usize) {
                break;
            }
            let w = mask.weight_at(x as usize, y as usize);
            ok &= w <= prev && w > 0.0 && w <= 1.0;
            prev = w;
        }
        monotone_rays += ok as usize;
    }
    verdict(
        9,
        "mask invariants",
        center == 1.0 && outside_ok && border_min == mask.g_min && monotone_rays == 1000,
        format!(
            "center = {center}, outside = g_min - 0.2 = {}, border min matches = {}, monotone rays {monotone_rays}/1000",
            mask.outside,
            border_min == mask.g_min
        ),
    );
}

#[test]
fn ac10_formats_round_trip() {
    let mut rng = SplitMix64::new(0xAC10);
    let mut stable = 0;
    let fixtures = 50;
    for f in 0..fixtures {
        let (n, k) = (rng.range_inclusive(2, 40), rng.range_inclusive(2, 40));
        let dim = rng.range_inclusive(1, 20);
        let mut x = random_series(&mut rng, n, dim);
        x.set_video_id(format!("clip-{f}"));
        let mut y = random_series(&mut rng, k, dim);
        y.set_video_id(format!("other {f}"));

        let mut ok = true;
        // series, both encodings
        let writers: [SeriesWriter; 2] = [
            |w, s| io::write_series_bin(w, s),
            |w, s| io::write_series_csv(w, s),
        ];
        for write in writers {
            let mut first = Vec::new();
            write(&mut first, &x).unwrap();
            let back = io::read_series(first.as_slice()).unwrap();
            let mut second = Vec::new();
            write(&mut second, &back).unwrap();
            ok &= first == second && back == x;
        }

        // path
        let cfg = AlignmentConfig {
            lambda: rng.uniform(0.0, 3.0),
            ..AlignmentConfig::default()
        };
        let result = align(&x, &y, &cfg).unwrap();
        let file = io::PathFile::from_result(x.video_id(), y.video_id(), &result);
        let mut first = Vec::new();
        io::write_path(&mut first, &file).unwrap();
        let back = io::read_path(first.as_slice()).unwrap();
        let mut second = Vec::new();
        io::write_path(&mut second, &back).unwrap();
        ok &= first == second && back == file;

        // annotations
        let anns: Vec<PhaseAnnotation> = [(x.video_id(), n), (y.video_id(), k)]
            .iter()
            .map(|&(id, len)| {
                let mut phases = vec![1u32];
                for _ in 1..len {
                    let last = *phases.last().unwrap();
                    phases.push(last + (rng.below(4) == 0) as u32);
                }
                PhaseAnnotation::new(id, phases).unwrap()
            })
            .collect();
        let mut first = Vec::new();
        io::write_annotations(&mut first, &anns).unwrap();
        let back = io::read_annotations(first.as_slice()).unwrap();
        let mut second = Vec::new();
        io::write_annotations(&mut second, &back).unwrap();
        ok &= first == second && back == anns;

        // report
        let report = EvalReport {
            video_a: x.video_id().into(),
            video_b: y.video_id().into(),
            n,
            k,
            eae: rng.next_f64() * 0.3,
            correct_phase_rate: rng.next_f64(),
            classification_accuracy: (f % 2 == 0).then(|| rng.next_f64()),
            config: ReportConfig::from(&cfg),
        };
        let mut first = Vec::new();
        io::write_report(&mut first, &report).unwrap();
        let back = io::read_report(first.as_slice()).unwrap();
        let mut second = Vec::new();
        io::write_report(&mut second, &back).unwrap();
        ok &= first == second && back == report;

        stable += ok as usize;
    }
    verdict(
        10,
        "format round-trips",
        stable == fixtures,
        format!("{stable}/{fixtures} fixtures byte-identical across series/path/annotation/report"),
    );
}
