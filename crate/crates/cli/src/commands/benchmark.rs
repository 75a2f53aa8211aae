//! `benchmark`: trivial vs DTW vs DDTW on a synthetic suite.
//!
//! Output CSV columns, in order: `suite,pair,method,n,k,eae,cpr`. One row per
//! pair and method, followed by one row per method with `pair` set to
//! `median` and `n`, `k` left empty.

use crate::config::FileConfig;
use crate::support::write_atomic;
use anyhow::Result;
use serde::Serialize;
use std::path::PathBuf;
use vidalign::align::{Margin, Method};
use vidalign::synth::{run_suite, Corridor, Suite, SuiteConfig, WaitStrategy};

#[derive(Debug, clap::Args)]
pub struct Args {
    /// `wait-phase` or `corridor`.
    #[arg(long)]
    pub suite: Suite,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: PathBuf,
    /// [default: 100]
    #[arg(long)]
    pub pairs: Option<usize>,
    /// Phases per video [default: 4].
    #[arg(long)]
    pub phases: Option<usize>,
    /// [default: 6]
    #[arg(long)]
    pub min_len: Option<usize>,
    /// [default: 16]
    #[arg(long)]
    pub max_len: Option<usize>,
    /// [default: 166]
    #[arg(long)]
    pub dim: Option<usize>,
    /// [default: 0.3]
    #[arg(long)]
    pub noise: Option<f64>,
    /// Wait frames: `cycle` or `hold-first` [default: cycle].
    #[arg(long)]
    pub wait: Option<WaitStrategy>,
    /// DDTW margin [default: auto].
    #[arg(long)]
    pub margin: Option<Margin>,
    /// DDTW penalty weight [default: 1].
    #[arg(long)]
    pub lambda: Option<f64>,
}

#[derive(Serialize)]
struct Row {
    suite: Suite,
    pair: String,
    method: Method,
    n: Option<usize>,
    k: Option<usize>,
    eae: f64,
    cpr: f64,
}

pub fn run(args: Args, cfg: &FileConfig) -> Result<()> {
    let d = SuiteConfig::default();
    let b = &cfg.benchmark;
    let corridor = Corridor {
        offset: b.corridor_offset.unwrap_or(d.corridor.offset),
        half_width: b.corridor_half_width.unwrap_or(d.corridor.half_width),
        attenuation: b.corridor_attenuation.unwrap_or(d.corridor.attenuation),
    };
    let suite_cfg = SuiteConfig {
        pairs: args.pairs.or(b.pairs).unwrap_or(d.pairs),
        seed: cfg.seed(args.seed)?,
        phase_count: args.phases.or(b.phases).unwrap_or(d.phase_count),
        min_phase_len: args.min_len.or(b.min_len).unwrap_or(d.min_phase_len),
        max_phase_len: args.max_len.or(b.max_len).unwrap_or(d.max_phase_len),
        feature_dim: args.dim.or(b.dim).unwrap_or(d.feature_dim),
        noise_std: args.noise.or(b.noise).unwrap_or(d.noise_std),
        align: cfg.alignment(Some(Method::Ddtw), args.margin, args.lambda)?,
        wait: args.wait.or(b.wait).unwrap_or(d.wait),
        corridor,
    };
    log::info!(
        "benchmark {} {}",
        args.suite,
        serde_json::to_string(&suite_cfg)?
    );
    let report = run_suite(args.suite, &suite_cfg)?;

    let mut out = csv::Writer::from_writer(Vec::new());
    for r in &report.rows {
        out.serialize(Row {
            suite: args.suite,
            pair: r.pair.to_string(),
            method: r.method,
            n: Some(r.n),
            k: Some(r.k),
            eae: r.eae,
            cpr: r.cpr,
        })?;
    }
    for &m in args.suite.methods() {
        out.serialize(Row {
            suite: args.suite,
            pair: "median".into(),
            method: m,
            n: None,
            k: None,
            eae: report.median_eae(m),
            cpr: report.median_cpr(m),
        })?;
        println!(
            "{m}\tmedian_eae={:.4}\tmedian_cpr={:.4}",
            report.median_eae(m),
            report.median_cpr(m)
        );
    }
    write_atomic(&args.out, &out.into_inner()?)?;
    let rival = match args.suite {
        Suite::WaitPhase => Method::Trivial,
        Suite::Corridor => Method::Dtw,
    };
    println!(
        "ddtw eae <= {rival} eae on {:.1}% of {} pairs",
        100.0 * report.eae_win_rate(Method::Ddtw, rival),
        suite_cfg.pairs
    );
    Ok(())
}
