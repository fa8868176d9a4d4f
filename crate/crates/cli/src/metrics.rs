//! Tab-separated metrics tables with fixed, documented columns.
//!
//! `run` emits one row per optimization iteration; `bench` emits one raw
//! row per optimization run plus a summary row per (size, scheme) cell.
//! Floating-point columns carry 17 significant digits so every value can
//! be reproduced bit for bit from the file.

use memvqe::vqe::BenchmarkReport;
use memvqe::RunRecord;
use std::fmt::Write as _;

/// Columns of the per-iteration table written by `run`. Times and
/// counters are cumulative from the start of the run; `memory_size`
/// counts memoized entries across all groups (zero for schemes without
/// a memory).
pub const RUN_HEADER: &str = "run_id\tscheme\tgrouping\tn_qubits\titeration\tenergy\tgradient_norm\twall_time_total\twall_time_postproc\thash_probes\tstring_compares\tgroup_evals\tshots_seen\tdistinct_seen\tmemory_hits\tmemory_size";

pub fn run_table(run_id: &str, record: &RunRecord) -> String {
    let mut out = String::with_capacity(128 * (record.iterations.len() + 1));
    out.push_str(RUN_HEADER);
    out.push('\n');
    for rec in &record.iterations {
        writeln!(
            out,
            "{run_id}\t{}\t{}\t{}\t{}\t{:.16e}\t{:.16e}\t{:.16e}\t{:.16e}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            record.mode,
            record.grouping,
            record.n_qubits,
            rec.iteration,
            rec.energy,
            rec.gradient_norm,
            rec.wall_time_total,
            rec.wall_time_postproc,
            rec.stats.hash_probes,
            rec.stats.string_compares,
            rec.stats.group_evals,
            rec.stats.shots_seen,
            rec.stats.distinct_seen,
            rec.stats.memory_hits,
            rec.memory_entries,
        )
        .unwrap();
    }
    out
}

/// Columns of the raw per-run table written by `bench`.
pub const BENCH_RAW_HEADER: &str = "n_qubits\tscheme\trepetition\tguess_seed\trun_seed\tfinal_energy\twall_time_total\twall_time_postproc\thash_probes\tstring_compares\tgroup_evals\tshots_seen\tdistinct_seen\tmemory_hits\tmemory_entries";

pub fn bench_raw_table(report: &BenchmarkReport) -> String {
    let mut out = String::from(BENCH_RAW_HEADER);
    out.push('\n');
    for run in &report.runs {
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{:.16e}\t{:.16e}\t{:.16e}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            run.n_qubits,
            run.scheme,
            run.repetition,
            run.guess_seed,
            run.run_seed,
            run.final_energy,
            run.wall_time_total,
            run.wall_time_postproc,
            run.stats.hash_probes,
            run.stats.string_compares,
            run.stats.group_evals,
            run.stats.shots_seen,
            run.stats.distinct_seen,
            run.stats.memory_hits,
            run.memory_entries,
        )
        .unwrap();
    }
    out
}

/// Columns of the summary table written by `bench`. `percentage_saved`
/// is `100 * (1 - mean_postproc / baseline mean_postproc)` and zero on
/// baseline rows; it is recomputable from the raw table.
pub const BENCH_SUMMARY_HEADER: &str =
    "n_qubits\tscheme\tmean_postproc\tstd_postproc\tmean_total\tstd_total\tpercentage_saved";

pub fn bench_summary_table(report: &BenchmarkReport) -> String {
    let mut out = String::from(BENCH_SUMMARY_HEADER);
    out.push('\n');
    for s in &report.summaries {
        writeln!(
            out,
            "{}\t{}\t{:.16e}\t{:.16e}\t{:.16e}\t{:.16e}\t{:.16e}",
            s.n_qubits,
            s.scheme,
            s.mean_postproc,
            s.std_postproc,
            s.mean_total,
            s.std_total,
            s.percentage_saved,
        )
        .unwrap();
    }
    out
}
