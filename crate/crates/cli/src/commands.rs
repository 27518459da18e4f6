use std::io::Write;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use tropical_apsp::generators::{
    correlated_lists_with, gen_sparse_graph, gen_uniform_graph, trial_rng, uniform_lists_with,
};
use tropical_apsp::io::{parse_graph, write_distances, write_graph};
use tropical_apsp::{
    apsp_squaring, exact_expected_M, expected_upper_bound, floyd_warshall, monte_carlo_M, select, sort_index,
    DistanceMatrix64, Graph64, Kernel, ProductStats, SortedList,
};

use crate::record::write_records;
use crate::{
    create_output, finish, open_input, Algorithm, AnalyzeArgs, ApspBenchArgs, CliError, CliResult,
    Distribution, ExperimentRecord, GenerateArgs, GraphKind, KernelBenchArgs, SolveArgs,
};

/// splitmix64 finalizer, used to derive independent seeds per table row.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn row_seed(seed: u64, v: usize, k: usize) -> u64 {
    mix(mix(seed ^ mix(v as u64)) ^ k as u64)
}

fn elapsed_ns(start: Instant) -> u64 {
    start.elapsed().as_nanos().min(u64::MAX as u128) as u64
}

fn check_v_list(vs: &[usize]) -> CliResult<()> {
    if vs.is_empty() || vs.contains(&0) {
        return Err(CliError::Usage("--v-list entries must be positive integers".into()));
    }
    Ok(())
}

fn check_trials(trials: usize) -> CliResult<()> {
    if trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    Ok(())
}

fn write_csv(path: &Path, records: &[ExperimentRecord]) -> CliResult<()> {
    let out = create_output(path)?;
    write_records(out, records)?;
    Ok(())
}

/// Runs one solver. Also returns per-level kernel statistics (empty for
/// Floyd-Warshall).
pub fn solve_graph(g: &Graph64, algorithm: Algorithm) -> tropical_apsp::Result<(DistanceMatrix64, Vec<ProductStats>)> {
    match algorithm {
        Algorithm::Fw => Ok((floyd_warshall(g)?, Vec::new())),
        Algorithm::NaiveDc => apsp_squaring(g, Kernel::Naive),
        Algorithm::FastDc => apsp_squaring(g, Kernel::Fast),
    }
}

pub fn solve(args: &SolveArgs) -> CliResult<()> {
    let g: Graph64 = parse_graph(open_input(&args.input)?)?;
    let (d, stats) = solve_graph(&g, args.algorithm)?;

    let mut out = create_output(&args.output)?;
    write_distances(&d, &mut out).map_err(|e| CliError::io(&args.output, e))?;
    finish(&args.output, out)?;

    if let Some(path) = &args.stats {
        let mut w = csv::Writer::from_writer(create_output(path)?);
        w.write_record(["level", "entries_computed", "total_iterations", "mean_iterations", "histogram"])?;
        for (level, s) in stats.iter().enumerate() {
            let histogram: Vec<String> = s.histogram.iter().map(u64::to_string).collect();
            w.write_record([
                (level + 1).to_string(),
                s.entries_computed.to_string(),
                s.total_iterations.to_string(),
                s.mean_iterations().to_string(),
                histogram.join(";"),
            ])?;
        }
        w.flush().map_err(|e| CliError::io(path, e))?;
    }
    Ok(())
}

/// Rows for `kernel-bench`, in (v, correlation) order.
pub fn kernel_bench_records(args: &KernelBenchArgs) -> CliResult<Vec<ExperimentRecord>> {
    check_v_list(&args.v_list)?;
    check_trials(args.trials)?;
    if args.correlation_list.is_empty() {
        return Err(CliError::Usage("--correlation-list must not be empty".into()));
    }
    for &c in &args.correlation_list {
        if !(-1.0..=1.0).contains(&c) {
            return Err(CliError::Usage(format!("correlation {c} outside [-1, 1]")));
        }
        if args.distribution == Distribution::Uniform && c != 0.0 {
            return Err(CliError::Usage(
                "uniform lists are uncorrelated; use --distribution gaussian for non-zero correlations".into(),
            ));
        }
    }

    let mut records = Vec::new();
    for &v in &args.v_list {
        for (k, &c) in args.correlation_list.iter().enumerate() {
            let seed = row_seed(args.seed, v, k);
            let start = Instant::now();
            let iterations = (0..args.trials)
                .into_par_iter()
                .map(|t| -> CliResult<usize> {
                    let mut rng = trial_rng(seed, t as u64);
                    let (a, b): (Vec<f64>, Vec<f64>) = match args.distribution {
                        Distribution::Uniform => uniform_lists_with(v, &mut rng),
                        Distribution::Gaussian => correlated_lists_with(v, c, &mut rng),
                    };
                    let (sa, sb) = (sort_index(&a)?, sort_index(&b)?);
                    Ok(select(SortedList::new(&a, &sa)?, SortedList::new(&b, &sb)?)?.iterations)
                })
                .collect::<CliResult<Vec<usize>>>()?;
            let wall_clock_ns = elapsed_ns(start);
            let mean = iterations.iter().sum::<usize>() as f64 / args.trials as f64;
            records.push(ExperimentRecord {
                experiment_id: "kernel-bench".into(),
                v,
                algorithm: "sorted-kernel".into(),
                seed: args.seed,
                correlation: Some(c),
                mean_iterations: Some(mean),
                exact_expectation: (c == 0.0).then(|| exact_expected_M(v)),
                upper_bound: Some(expected_upper_bound(v)),
                wall_clock_ns,
                checksum: None,
            });
        }
    }
    Ok(records)
}

pub fn kernel_bench(args: &KernelBenchArgs) -> CliResult<()> {
    write_csv(&args.csv, &kernel_bench_records(args)?)
}

/// Inner-loop steps of one solve: `V^3` relaxations for Floyd-Warshall,
/// summed kernel iterations for the squaring solvers.
fn work_count(v: usize, algorithm: Algorithm, stats: &[ProductStats]) -> f64 {
    match algorithm {
        Algorithm::Fw => (v as f64).powi(3),
        _ => stats.iter().map(|s| s.total_iterations as f64).sum(),
    }
}

/// Rows for `apsp-bench`, one per (v, algorithm, trial). Trial `t` solves the
/// uniform graph with seed `seed + t`, so the same graphs are shared across
/// algorithms.
pub fn apsp_bench_records(args: &ApspBenchArgs) -> CliResult<Vec<ExperimentRecord>> {
    check_v_list(&args.v_list)?;
    check_trials(args.trials)?;
    if args.algorithms.is_empty() {
        return Err(CliError::Usage("--algorithms must not be empty".into()));
    }

    let mut records = Vec::new();
    for &v in &args.v_list {
        let graphs = (0..args.trials)
            .map(|t| {
                let seed = args.seed.wrapping_add(t as u64);
                Ok((seed, gen_uniform_graph::<f64>(v, seed)?))
            })
            .collect::<CliResult<Vec<_>>>()?;
        for &algorithm in &args.algorithms {
            for (seed, g) in &graphs {
                let start = Instant::now();
                let (d, stats) = solve_graph(g, algorithm)?;
                let wall_clock_ns = elapsed_ns(start);
                records.push(ExperimentRecord {
                    experiment_id: "apsp-bench".into(),
                    v,
                    algorithm: algorithm.id().into(),
                    seed: *seed,
                    correlation: None,
                    mean_iterations: Some(work_count(v, algorithm, &stats)),
                    exact_expectation: None,
                    upper_bound: None,
                    wall_clock_ns,
                    checksum: Some(d.entries.finite_checksum()),
                });
            }
        }
    }
    Ok(records)
}

pub fn apsp_bench(args: &ApspBenchArgs) -> CliResult<()> {
    write_csv(&args.csv, &apsp_bench_records(args)?)
}

/// Rows for `analyze`: an `exact-formula` row per v and, with
/// `--monte-carlo`, a `monte-carlo` row whose `checksum` cell holds the
/// standard error of the estimate.
pub fn analyze_records(args: &AnalyzeArgs) -> CliResult<Vec<ExperimentRecord>> {
    check_v_list(&args.v_list)?;
    if let Some(trials) = args.monte_carlo {
        check_trials(trials)?;
    }
    let mut records = Vec::new();
    for &v in &args.v_list {
        let start = Instant::now();
        let exact = exact_expected_M(v);
        let bound = expected_upper_bound(v);
        records.push(ExperimentRecord {
            experiment_id: "analyze".into(),
            v,
            algorithm: "exact-formula".into(),
            seed: args.seed,
            correlation: None,
            mean_iterations: None,
            exact_expectation: Some(exact),
            upper_bound: Some(bound),
            wall_clock_ns: elapsed_ns(start),
            checksum: None,
        });
        if let Some(trials) = args.monte_carlo {
            let start = Instant::now();
            let est = monte_carlo_M(v, trials, row_seed(args.seed, v, 0));
            records.push(ExperimentRecord {
                experiment_id: "analyze".into(),
                v,
                algorithm: "monte-carlo".into(),
                seed: args.seed,
                correlation: None,
                mean_iterations: Some(est.mean),
                exact_expectation: Some(exact),
                upper_bound: Some(bound),
                wall_clock_ns: elapsed_ns(start),
                checksum: Some(est.stderr),
            });
        }
    }
    Ok(records)
}

pub fn analyze(args: &AnalyzeArgs) -> CliResult<()> {
    write_csv(&args.csv, &analyze_records(args)?)
}

pub fn generate(args: &GenerateArgs) -> CliResult<()> {
    if args.v == 0 {
        return Err(CliError::Usage("--v must be at least 1".into()));
    }
    let g: Graph64 = match args.kind {
        GraphKind::Uniform => gen_uniform_graph(args.v, args.seed)?,
        GraphKind::Sparse => gen_sparse_graph(args.v, args.density, args.seed)
            .map_err(|e| CliError::Usage(e.to_string()))?,
    };
    let mut out = create_output(&args.output)?;
    write_graph(&g, &mut out).map_err(|e| CliError::io(&args.output, e))?;
    out.flush().map_err(|e| CliError::io(&args.output, e))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_seeds_differ() {
        assert_ne!(row_seed(0, 10, 0), row_seed(0, 10, 1));
        assert_ne!(row_seed(0, 10, 0), row_seed(0, 11, 0));
        assert_eq!(row_seed(3, 10, 2), row_seed(3, 10, 2));
    }

    #[test]
    fn fw_work_is_cubic() {
        assert_eq!(work_count(4, Algorithm::Fw, &[]), 64.0);
    }
}
