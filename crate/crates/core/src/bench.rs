//! Benchmark harness: for each `(n, m, r)` case generate a seeded random
//! system, time both solver paths, and cross-check that they agree.

use std::sync::mpsc;
use std::thread;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::mb::AdjacencyTest;
use crate::random::random_system;
use crate::solver::conehull_with;
use crate::verify::cones_equal;

#[derive(Clone, Debug)]
pub struct BenchSpec {
    pub cases: Vec<(usize, usize, usize)>,
    pub coeff_bound: i64,
    pub seed: u64,
    pub timeout: Duration,
}

impl BenchSpec {
    pub fn new(cases: Vec<(usize, usize, usize)>, seed: u64) -> Self {
        Self {
            cases,
            coeff_bound: 9,
            seed,
            timeout: Duration::from_secs(300),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BenchRow {
    pub n: usize,
    pub m: usize,
    pub r: usize,
    pub direct_time: Option<Duration>,
    pub reduced_time: Option<Duration>,
    pub ray_count: Option<usize>,
    pub timed_out: bool,
}

#[derive(Clone, Debug, Default)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

fn seconds(d: Duration) -> String {
    format!("{:.3}", d.as_secs_f64())
}

impl BenchReport {
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{:>4} {:>4} {:>4} {:>10} {:>10} {:>6}\n",
            "n", "m", "r", "t1(s)", "t2(s)", "|V|"
        ));
        for row in &self.rows {
            let (t1, t2, rays) = if row.timed_out {
                ("timeout".into(), "timeout".into(), "-".into())
            } else {
                (
                    row.direct_time.map(seconds).unwrap_or_default(),
                    row.reduced_time.map(seconds).unwrap_or_default(),
                    row.ray_count.map(|c| c.to_string()).unwrap_or_default(),
                )
            };
            out.push_str(&format!(
                "{:>4} {:>4} {:>4} {:>10} {:>10} {:>6}\n",
                row.n, row.m, row.r, t1, t2, rays
            ));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,m,r,t1_seconds,t2_seconds,ray_count,timed_out\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                row.n,
                row.m,
                row.r,
                row.direct_time.map(seconds).unwrap_or_default(),
                row.reduced_time.map(seconds).unwrap_or_default(),
                row.ray_count.map(|c| c.to_string()).unwrap_or_default(),
                row.timed_out
            ));
        }
        out
    }
}

/// Runs every case. Row `i` uses seed `spec.seed + i` so a full run is
/// reproducible. Timing out a row marks it without aborting the run; the
/// two paths disagreeing is an internal error.
pub fn bench(spec: &BenchSpec) -> Result<BenchReport> {
    let mut report = BenchReport::default();
    for (i, &(n, m, r)) in spec.cases.iter().enumerate() {
        let row_seed = spec.seed.wrapping_add(i as u64);
        let system = random_system(n, m, r, spec.coeff_bound, row_seed)?;

        let (tx, rx) = mpsc::channel();
        let worker_system = system.clone();
        thread::spawn(move || {
            let run = || -> Result<(Duration, Duration, usize, bool)> {
                let start = Instant::now();
                let direct = conehull_with(&worker_system, true, AdjacencyTest::Combinatorial)?;
                let t1 = start.elapsed();
                let start = Instant::now();
                let reduced = conehull_with(&worker_system, false, AdjacencyTest::Combinatorial)?;
                let t2 = start.elapsed();
                let equal = cones_equal(&direct, &reduced, &worker_system)?;
                Ok((t1, t2, direct.rays().len(), equal))
            };
            let _ = tx.send(run());
        });

        match rx.recv_timeout(spec.timeout) {
            Ok(result) => {
                let (t1, t2, ray_count, equal) = result?;
                if !equal {
                    return Err(Error::Internal(format!(
                        "solver paths disagree on case (n={n}, m={m}, r={r}, seed={row_seed})"
                    )));
                }
                report.rows.push(BenchRow {
                    n,
                    m,
                    r,
                    direct_time: Some(t1),
                    reduced_time: Some(t2),
                    ray_count: Some(ray_count),
                    timed_out: false,
                });
            }
            Err(_) => report.rows.push(BenchRow {
                n,
                m,
                r,
                direct_time: None,
                reduced_time: None,
                ray_count: None,
                timed_out: true,
            }),
        }
    }
    Ok(report)
}
