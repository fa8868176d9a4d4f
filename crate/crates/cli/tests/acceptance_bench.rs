//! Timing-trend acceptance check, kept out of `acceptance.rs` because it
//! runs the full benchmark suite and takes tens of minutes on one core.
//! The memoizing scheme must save a strictly growing share of
//! post-processing time as the register grows, crossing 50% at 16 qubits.

use memvqe::vqe::benchmark_suite;
use memvqe::{BenchmarkConfig, Scheme};
use std::time::Instant;

#[test]
fn c11_postprocessing_savings_grow_with_register_size() {
    let sizes = vec![6usize, 8, 10, 12, 14, 16];
    let mut config = BenchmarkConfig::new(sizes.clone(), 200, 10);
    // The naive scheme is not part of this criterion and roughly doubles
    // the wall time on a single core, so the suite runs baseline vs
    // memoized only; `memvqe bench` still offers all three schemes.
    config.schemes = vec![Scheme::Sorted, Scheme::Mm];

    let started = Instant::now();
    let report = benchmark_suite(&config).unwrap();
    let elapsed = started.elapsed().as_secs_f64();

    let mut saved = Vec::new();
    println!("n_qubits  sorted_postproc  mm_postproc  saved_pct");
    for &n in &sizes {
        let base = report.summary(n, Scheme::Sorted).unwrap();
        let mm = report.summary(n, Scheme::Mm).unwrap();
        println!(
            "{n:8}  {:>15.3}  {:>11.3}  {:>9.2}",
            base.mean_postproc, mm.mean_postproc, mm.percentage_saved
        );
        saved.push(mm.percentage_saved);
    }
    let increasing = saved.windows(2).all(|w| w[1] > w[0]);
    let ok = increasing && *saved.last().unwrap() > 50.0;
    println!(
        "ACCEPTANCE 11 {}: savings {} (strictly increasing: {increasing}, final {:.2}% > 50%); \
         suite wall time {:.1}s (target under 30 minutes)",
        if ok { "PASS" } else { "FAIL" },
        saved.iter().map(|s| format!("{s:.2}%")).collect::<Vec<_>>().join(" "),
        saved.last().unwrap(),
        elapsed
    );
    assert!(ok, "savings trend violated: {saved:?}");
}
