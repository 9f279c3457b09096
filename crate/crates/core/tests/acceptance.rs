//! Acceptance suite. Each test prints one pass/fail line; all checks are
//! exact (zero tolerance) unless a wall-clock budget is stated.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use conehull::bench::{bench, BenchSpec};
use conehull::exact::{evaluate, rank, LinearForm, QVector};
use conehull::io::write_cone;
use conehull::random::random_system;
use conehull::solver::{conehull_with, solve_direct};
use conehull::verify::{check_solutions, cones_equal, oracle_enumerate};
use conehull::{conehull, AdjacencyTest, InequalitySystem};
use num_traits::Zero;

fn criterion<F: FnOnce() + std::panic::UnwindSafe>(name: &str, f: F) {
    match std::panic::catch_unwind(f) {
        Ok(()) => println!("PASS  {name}"),
        Err(err) => {
            println!("FAIL  {name}");
            std::panic::resume_unwind(err);
        }
    }
}

/// The 100-system suite: n in 2..=5, m in 1..=8, coefficients in [-3, 3].
fn random_suite() -> Vec<InequalitySystem> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FE);
    (0..100)
        .map(|_| {
            let n = rng.gen_range(2..=5);
            let m = rng.gen_range(1..=8);
            let forms = (0..m)
                .map(|_| {
                    let row: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
                    LinearForm::from_i64(&row)
                })
                .collect();
            InequalitySystem::new(n, forms).unwrap()
        })
        .collect()
}

/// 50 systems with deliberately deficient rank (r < min(n, m)).
fn deficient_rank_suite() -> Vec<InequalitySystem> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xDEF1);
    (0..50)
        .map(|i| {
            let n = rng.gen_range(2..=5);
            let m = rng.gen_range(2..=7);
            let r = rng.gen_range(1..n.min(m));
            random_system(n, m, r, 3, 1000 + i).unwrap()
        })
        .collect()
}

/// 20 systems with at least one unused variable.
fn unused_variable_suite() -> Vec<InequalitySystem> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xBAD);
    (0..20)
        .map(|_| {
            let n = rng.gen_range(3..=5);
            let m = rng.gen_range(1..=6);
            let dead = rng.gen_range(0..n);
            let forms = (0..m)
                .map(|_| {
                    let row: Vec<i64> = (0..n)
                        .map(|j| if j == dead { 0 } else { rng.gen_range(-3..=3) })
                        .collect();
                    LinearForm::from_i64(&row)
                })
                .collect();
            InequalitySystem::new(n, forms).unwrap()
        })
        .collect()
}

fn full_suite() -> Vec<InequalitySystem> {
    let mut all = random_suite();
    all.extend(deficient_rank_suite());
    all.extend(unused_variable_suite());
    all
}

#[test]
fn criterion_1_oracle_equivalence() {
    criterion("criterion 1: solve_direct equals the brute-force oracle on 100 random systems", || {
        let start = Instant::now();
        for system in &random_suite() {
            let solved = solve_direct(system).unwrap();
            let oracle = oracle_enumerate(system).unwrap();
            assert!(
                cones_equal(&solved, &oracle, system).unwrap(),
                "oracle mismatch on {system:?}"
            );
        }
        assert!(start.elapsed() < Duration::from_secs(60), "suite exceeded 60 s");
    });
}

#[test]
fn criterion_2_path_equivalence() {
    criterion("criterion 2: direct and preprocessed paths agree on 170 systems", || {
        let start = Instant::now();
        for system in &full_suite() {
            let direct = conehull(system, true).unwrap();
            let reduced = conehull(system, false).unwrap();
            assert!(
                cones_equal(&direct, &reduced, system).unwrap(),
                "path mismatch on {system:?}"
            );
        }
        assert!(start.elapsed() < Duration::from_secs(60), "suite exceeded 60 s");
    });
}

#[test]
fn criterion_3_lineality_dimension() {
    criterion("criterion 3: |U| = n - rank(S) on every test system", || {
        for system in &full_suite() {
            for as_is in [true, false] {
                let cone = conehull(system, as_is).unwrap();
                assert_eq!(
                    cone.lineality_basis().len(),
                    system.dimension() - system.rank(),
                    "lineality dimension off on {system:?}"
                );
            }
        }
    });
}

#[test]
fn criterion_4_feasibility_and_extremality() {
    criterion("criterion 4: generators feasible, rays have tight-set rank r - 1", || {
        for system in &full_suite() {
            let cone = solve_direct(system).unwrap();
            let generators: Vec<QVector> = cone
                .lineality_basis()
                .iter()
                .chain(cone.rays())
                .cloned()
                .collect();
            let report = check_solutions(system, &generators).unwrap();
            assert!(report.invalid.is_empty(), "infeasible generator on {system:?}");
            for u in cone.lineality_basis() {
                for form in system.forms() {
                    assert!(evaluate(form, u).unwrap().is_zero());
                }
            }
            let r = system.rank();
            for v in cone.rays() {
                let tight: Vec<QVector> = system
                    .forms()
                    .iter()
                    .filter(|f| evaluate(f, v).unwrap().is_zero())
                    .map(|f| f.coefficients().clone())
                    .collect();
                assert_eq!(
                    rank(&tight).unwrap(),
                    r - 1,
                    "tight-set rank off for {v:?} on {system:?}"
                );
            }
        }
    });
}

fn run_cli(args: &[&str]) -> (String, i32) {
    let output = Command::new(env!("CARGO_BIN_EXE_conehull"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(output.stdout).unwrap(),
        output.status.code().unwrap_or(-1),
    )
}

fn write_temp(name: &str, contents: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("conehull-acceptance-{name}"));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn criterion_5_golden_fixed_cases() {
    criterion("criterion 5: golden CLI output for the five fixed cases", || {
        let cases: &[(&str, &str, &str)] = &[
            ("orthant", "2 2\n-1 0\n0 -1\n", "U 0\nV 2\n0 1\n1 0\n"),
            ("halfspace", "2 1\n1 1\n", "U 1\n1 -1\nV 1\n-1 0\n"),
            ("equality", "2 2\n1 0\n-1 0\n", "U 1\n0 1\nV 0\n"),
            (
                "cone3",
                "3 4\n-1 0 0\n0 -1 0\n0 0 -1\n1 1 -1\n",
                "U 0\nV 3\n0 0 1\n0 1 1\n1 0 1\n",
            ),
            (
                "square",
                "3 4\n1 0 -1\n-1 0 -1\n0 1 -1\n0 -1 -1\n",
                "U 0\nV 4\n-1 -1 1\n-1 1 1\n1 -1 1\n1 1 1\n",
            ),
        ];
        for (name, input, expected) in cases {
            let path = write_temp(name, input);
            let (stdout, code) = run_cli(&["solve", path.to_str().unwrap()]);
            assert_eq!(code, 0);
            assert_eq!(&stdout, expected, "golden mismatch for {name}");
            // cross-check the frozen value against the independent oracle
            let system = conehull::io::parse_system(input).unwrap();
            let oracle = oracle_enumerate(&system).unwrap();
            assert!(
                cones_equal(&conehull(&system, false).unwrap(), &oracle, &system).unwrap()
            );
        }
    });
}

#[test]
fn criterion_6_benchmark_protocol() {
    criterion("criterion 6: benchmark protocol at desk scale with cross-check", || {
        let spec = BenchSpec {
            cases: vec![
                (5, 5, 5),
                (5, 7, 3),
                (10, 10, 10),
                (10, 15, 5),
                (20, 20, 20),
                (20, 30, 10),
            ],
            coeff_bound: 9,
            seed: 2024,
            timeout: Duration::from_secs(120),
        };
        // bench() itself fails if the two paths ever disagree
        let report = bench(&spec).unwrap();
        assert_eq!(report.rows.len(), 6);
        for row in &report.rows {
            assert!(!row.timed_out, "row (n={}, m={}, r={}) timed out", row.n, row.m, row.r);
            assert!(row.direct_time.unwrap() < Duration::from_secs(120));
            assert!(row.reduced_time.unwrap() < Duration::from_secs(120));
        }
    });
}

#[test]
fn criterion_7_determinism() {
    criterion("criterion 7: byte-identical outputs across repeated CLI runs", || {
        let path = write_temp("det", "3 4\n1 2 -1\n-2 1 1\n0 -1 3\n1 1 1\n");
        let file = path.to_str().unwrap();
        for flags in [vec!["solve", file], vec!["solve", file, "--as-is"]] {
            let (first, code_a) = run_cli(&flags);
            let (second, code_b) = run_cli(&flags);
            assert_eq!((code_a, code_b), (0, 0));
            assert_eq!(first, second);
        }
        let gen_args = ["gen", "--n", "6", "--m", "9", "--r", "4", "--seed", "99"];
        let (first, _) = run_cli(&gen_args);
        let (second, _) = run_cli(&gen_args);
        assert_eq!(first, second);
        assert!(!first.is_empty());
    });
}

#[test]
fn criterion_8_adjacency_test_agreement() {
    criterion("criterion 8: combinatorial and rank adjacency agree on the 100-system suite", || {
        for system in &random_suite() {
            let combinatorial =
                conehull_with(system, true, AdjacencyTest::Combinatorial).unwrap();
            let rank_based = conehull_with(system, true, AdjacencyTest::Rank).unwrap();
            assert!(
                cones_equal(&combinatorial, &rank_based, system).unwrap(),
                "adjacency variants disagree on {system:?}"
            );
        }
    });
}

#[test]
fn write_cone_matches_solver_output() {
    // the CLI is a thin shell over write_cone; pin that equivalence
    let system = conehull::io::parse_system("2 2\n-1 0\n0 -1\n").unwrap();
    let cone = conehull(&system, false).unwrap();
    assert_eq!(write_cone(&cone), "U 0\nV 2\n0 1\n1 0\n");
}
