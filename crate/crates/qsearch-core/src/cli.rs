// Copyright 2026 The qsearch Developers
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except
// in compliance with the License. You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License
// is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
// or implied. See the License for the specific language governing permissions and limitations under
// the License.

//! Command-line front end.
//!
//! Every subcommand emits a deterministic report (JSON on stdout, or CSV to
//! `--csv <path>`) and exits 0 only when every asserted invariant held:
//! 1 = invariant violation, 2 = usage error, 3 = capacity, 4 = I/O.

use std::io::Read;
use std::path::PathBuf;

use clap::{CommandFactory, Parser, Subcommand};

use crate::adversary::{self, AdversaryConfig, CEILING_TOL};
use crate::bound;
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::grover;
use crate::refutation::{self, RoundSpec};
use crate::report::{Report, Table, Value};
use crate::state::qubit_cap;
use crate::unitary::random_state;

#[derive(Parser)]
#[command(
    name = "qsearch",
    version,
    about = "State-vector experiments for unstructured search: Grover runs, \
             ancilla-copy refutation sweeps, ancilla bounds and adversarial probes",
    after_help = "The qubit cap (default 26) can be overridden with QSEARCH_QUBIT_CAP."
)]
struct Cli {
    /// Write the report as CSV to PATH instead of JSON on stdout.
    #[arg(long, global = true, value_name = "PATH")]
    csv: Option<PathBuf>,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Simulate a Grover run and check it against the closed-form curve.
    Grover {
        /// Index-register width n (N = 2^n items).
        #[arg(long)]
        n: usize,
        /// Marked index in 0..2^n.
        #[arg(long)]
        d: u64,
        /// Iteration count, or `auto` for the optimal count.
        #[arg(long, default_value = "auto")]
        t: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the ancilla-copy scheme and verify its measurement bounds.
    Refute {
        /// Index-register width n.
        #[arg(long)]
        n: usize,
        /// Marked index in 0..2^n.
        #[arg(long)]
        d: u64,
        /// Ancilla registers of n qubits each.
        #[arg(long = "M", default_value_t = 1)]
        ancilla_registers: usize,
        /// Rounds after the copy round: comma list of `identity`,
        /// `hadamard`, `random:<k>`.
        #[arg(long, default_value = "identity")]
        rounds: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Evaluate the ancilla success-probability accounting and the query
    /// estimate.
    Bound {
        /// Index-register width n.
        #[arg(long)]
        n: u32,
        /// Ancilla width m.
        #[arg(long)]
        m: u32,
        /// Concentration exponent p (max overlap 2^-p), 0..=n+m.
        #[arg(long)]
        p: u32,
        /// Also analyze a seeded random state on n+m qubits.
        #[arg(long)]
        seed: Option<u64>,
        /// Target index for the seeded analysis (default 0).
        #[arg(long)]
        tau: Option<u64>,
        /// Comma list of accepted ancilla patterns (default: all).
        #[arg(long)]
        omega: Option<String>,
    },
    /// Stress the optimal curve with random unitaries and counted queries.
    Adversary {
        /// Index-register width n.
        #[arg(long)]
        n: usize,
        /// Oracle queries per trial.
        #[arg(long, default_value_t = 1)]
        t: u64,
        #[arg(long, default_value_t = 500)]
        trials: u64,
        /// Run one column with this many extra qubits instead of the
        /// paired 0-vs-2 comparison.
        #[arg(long)]
        m_extra: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Parse and execute a circuit file (`-` reads stdin).
    Run {
        #[arg(long, value_name = "PATH")]
        circuit: String,
    },
}

/// What one invocation produced; the binary prints both streams and exits
/// with `code`.
#[derive(Debug)]
pub struct CliOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Run one command line (`args[0]` is the program name) to completion.
pub fn execute(args: Vec<String>) -> CliOutcome {
    let argv_echo = args[1..].join(" ");
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(err) => {
            let rendered = err.render().to_string();
            return if err.use_stderr() {
                CliOutcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                // --help / --version
                CliOutcome {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };

    match dispatch(&cli.command, argv_echo) {
        Ok(report) => {
            let code = if report.ok() { 0 } else { 1 };
            match emit(&report, cli.csv.as_deref()) {
                Ok(stdout) => CliOutcome {
                    code,
                    stdout,
                    stderr: String::new(),
                },
                Err(err) => CliOutcome {
                    code: err.exit_code(),
                    stdout: String::new(),
                    stderr: format!("error: {err}\n"),
                },
            }
        }
        Err(err) => CliOutcome {
            code: err.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        },
    }
}

fn emit(report: &Report, csv: Option<&std::path::Path>) -> Result<String> {
    match csv {
        Some(path) => {
            std::fs::write(path, report.to_csv())?;
            Ok(String::new())
        }
        None => Ok(report.to_json()),
    }
}

fn dispatch(cmd: &Cmd, argv: String) -> Result<Report> {
    match cmd {
        Cmd::Grover { n, d, t, seed } => run_grover_cmd(*n, *d, t, *seed, argv),
        Cmd::Refute {
            n,
            d,
            ancilla_registers,
            rounds,
            seed,
        } => run_refute_cmd(*n, *d, *ancilla_registers, rounds, *seed, argv),
        Cmd::Bound {
            n,
            m,
            p,
            seed,
            tau,
            omega,
        } => run_bound_cmd(*n, *m, *p, *seed, *tau, omega.as_deref(), argv),
        Cmd::Adversary {
            n,
            t,
            trials,
            m_extra,
            seed,
        } => run_adversary_cmd(*n, *t, *trials, *m_extra, *seed, argv),
        Cmd::Run { circuit } => run_circuit_cmd(circuit, argv),
    }
}

fn run_grover_cmd(n: usize, d: u64, t: &str, seed: u64, argv: String) -> Result<Report> {
    if n > qubit_cap() {
        return Err(Error::CapacityExceeded {
            requested: n,
            cap: qubit_cap(),
        });
    }
    let num_items = 1u64
        .checked_shl(n as u32)
        .filter(|_| n >= 1)
        .ok_or(Error::EmptyRegister)?;
    let t_star = grover::optimal_iterations(num_items)?;
    let iterations = match t {
        "auto" => t_star,
        explicit => explicit
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad iteration count `{explicit}`")))?,
    };

    let outcome = grover::run_grover(n, d, iterations)?;
    let closed_form = grover::closed_form_success(num_items, iterations)?;
    let success_at_optimal = grover::closed_form_success(num_items, t_star)?;
    let schedule_cap = (std::f64::consts::FRAC_PI_4 * (num_items as f64).sqrt()).ceil() as u64;

    let mut report = Report::new("grover", argv, Some(seed));
    report
        .param("n", n)
        .param("d", d)
        .param("t", outcome.iterations)
        .param("t_auto", t == "auto");
    report
        .result("success_probability", outcome.success_probability)
        .result("closed_form_success", closed_form)
        .result("queries", outcome.queries)
        .result("optimal_iterations", t_star)
        .result("success_at_optimal", success_at_optimal)
        .result("angle", grover::grover_angle(num_items)?);
    report
        .verdict(
            "simulation_matches_closed_form",
            (outcome.success_probability - closed_form).abs() < 1e-10,
        )
        .verdict("queries_equal_iterations", outcome.queries == outcome.iterations)
        .verdict("optimal_iterations_within_schedule", t_star <= schedule_cap);
    Ok(report)
}

fn run_refute_cmd(
    n: usize,
    d: u64,
    ancilla_registers: usize,
    rounds_text: &str,
    seed: u64,
    argv: String,
) -> Result<Report> {
    let rounds = RoundSpec::parse_list(rounds_text, seed)?;
    let summary = refutation::run_refutation(n, d, ancilla_registers, &rounds)?;

    let num_items = 1u64 << n;
    let t_star = grover::optimal_iterations(num_items.max(2))?;
    let grover_success = grover::closed_form_success(num_items.max(2), t_star)?;

    let mut report = Report::new("refute", argv, Some(seed));
    report
        .param("n", n)
        .param("d", d)
        .param("M", ancilla_registers)
        .param("rounds", rounds_text)
        .param("round_count", rounds.len());
    report
        .result("queries", summary.queries)
        .result("reveal_probability", summary.reveal_probability)
        .result("reveal_bound", summary.reveal_bound)
        .result(
            "identification_probability",
            summary.identification_probability,
        )
        .result("identification_bound", summary.identification_bound)
        .result("copy_fixture_error", summary.copy_fixture_error)
        .result("flag_zero_drift", summary.flag_zero_drift)
        .result("grover_optimal_iterations", t_star)
        .result("grover_success_at_optimal", grover_success);
    report
        .verdict("copy_fixture_matches", summary.copy_fixture_error < 1e-12)
        .verdict("flag_zero_branch_invariant", summary.flag_zero_drift <= 1e-15)
        .verdict(
            "reveal_within_bound",
            summary.degenerate_marked
                || summary.reveal_probability <= summary.reveal_bound + 1e-12,
        )
        .verdict(
            "identification_within_bound",
            summary.identification_probability <= summary.identification_bound + 1e-12,
        )
        .verdict("single_query", summary.queries == 1);
    if summary.degenerate_marked {
        report.warnings.push(
            "marked index 0 equals the initial ancilla pattern; the reveal probability is \
             degenerate and excluded from the bound check"
                .into(),
        );
    }
    Ok(report)
}

fn run_bound_cmd(
    n: u32,
    m: u32,
    p: u32,
    seed: Option<u64>,
    tau: Option<u64>,
    omega: Option<&str>,
    argv: String,
) -> Result<Report> {
    let estimate = bound::query_count_estimate(n, m, p)?;
    let estimate_real = bound::query_count_real(n, m, p as f64)?;
    let ratio = estimate_real / (n as f64 / 2.0).exp2();

    let mut report = Report::new("bound", argv, seed);
    report.param("n", n as u64).param("m", m as u64).param("p", p as u64);
    report
        .result("query_estimate", estimate)
        .result("query_estimate_real", estimate_real)
        .result("ratio_to_sqrt_n", ratio);

    if let Some(seed) = seed {
        if n + m > qubit_cap() as u32 {
            return Err(Error::CapacityExceeded {
                requested: (n + m) as usize,
                cap: qubit_cap(),
            });
        }
        let target = tau.unwrap_or(0);
        let patterns: Vec<u64> = match omega {
            None => (0..1u64 << m).collect(),
            Some(list) => list
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| {
                    s.trim().parse().map_err(|_| {
                        Error::InvalidArgument(format!("bad ancilla pattern `{s}`"))
                    })
                })
                .collect::<Result<_>>()?,
        };
        let state = random_state((n + m) as usize, seed)?;
        let analysis = bound::analyze(
            &state,
            n as usize,
            target,
            &patterns,
            bound::DEFAULT_UNIFORMITY_EPS,
        )?;
        report.param("tau", target).param("omega_size", analysis.valid_patterns.len());
        report
            .result("pr_success", analysis.pr_success)
            .result("bound_rhs", analysis.bound_rhs)
            .result("uniform", analysis.uniform)
            .result(
                "effective_exponent",
                analysis.effective_exponent.unwrap_or(f64::NAN),
            );
        report.verdict(
            "uniform_bound_holds",
            !analysis.uniform || analysis.pr_success <= analysis.bound_rhs + 1e-12,
        );
    }
    Ok(report)
}

fn run_adversary_cmd(
    n: usize,
    t: u64,
    trials: u64,
    m_extra: Option<usize>,
    seed: u64,
    argv: String,
) -> Result<Report> {
    let mut report = Report::new("adversary", argv, Some(seed));
    report.param("n", n).param("t", t).param("trials", trials);

    let columns = vec![
        "m_extra".to_string(),
        "trials".to_string(),
        "queries".to_string(),
        "max_success".to_string(),
        "mean_success".to_string(),
        "ceiling".to_string(),
        "ceiling_respected".to_string(),
    ];
    let row = |r: &adversary::AdversaryReport| -> Vec<Value> {
        vec![
            Value::U64(r.extra_qubits as u64),
            Value::U64(r.trials),
            Value::U64(r.queries),
            Value::F64(r.max_success),
            Value::F64(r.mean_success),
            Value::F64(r.ceiling),
            Value::Bool(r.ceiling_respected),
        ]
    };

    match m_extra {
        Some(extra) => {
            let run =
                adversary::adversarial_search(&AdversaryConfig::new(n, extra, t, trials, seed))?;
            report.param("m_extra", extra);
            report
                .result("max_success", run.max_success)
                .result("mean_success", run.mean_success)
                .result("ceiling", run.ceiling);
            report.verdict("ceiling_respected", run.ceiling_respected);
            report.table = Some(Table {
                columns,
                rows: vec![row(&run)],
            });
        }
        None => {
            let paired = adversary::ancilla_advantage_report(n, t, trials, seed)?;
            report
                .result("max_success_m0", paired.baseline.max_success)
                .result("max_success_m2", paired.with_ancillas.max_success)
                .result("max_difference", paired.max_difference)
                .result("ceiling", paired.baseline.ceiling);
            report
                .verdict("ceiling_respected_m0", paired.baseline.ceiling_respected)
                .verdict("ceiling_respected_m2", paired.with_ancillas.ceiling_respected)
                .verdict("no_ancilla_advantage", paired.max_difference <= CEILING_TOL);
            report.table = Some(Table {
                columns,
                rows: vec![row(&paired.baseline), row(&paired.with_ancillas)],
            });
        }
    }
    Ok(report)
}

fn run_circuit_cmd(path: &str, argv: String) -> Result<Report> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        buf
    } else {
        std::fs::read_to_string(path)?
    };
    let circuit = Circuit::parse(&text)?;
    let (state, ledger) = circuit.execute()?;
    let norm = state.norm_sq();

    let mut report = Report::new("run", argv, None);
    report
        .param("circuit", path)
        .param("qubits", circuit.num_qubits)
        .param("ops", circuit.ops.len());
    report
        .result("queries", ledger.queries())
        .result("norm", norm);
    report.verdict("norm_preserved", (norm - 1.0).abs() < 1e-10);

    let mut rows = Vec::new();
    for (i, amp) in state.amplitudes().iter().enumerate() {
        let prob = amp.norm_sqr();
        if prob > 1e-12 {
            rows.push(vec![
                Value::U64(i as u64),
                Value::F64(prob),
                Value::F64(amp.re),
                Value::F64(amp.im),
            ]);
        }
    }
    report.table = Some(Table {
        columns: vec![
            "basis_index".into(),
            "probability".into(),
            "amplitude_re".into(),
            "amplitude_im".into(),
        ],
        rows,
    });
    Ok(report)
}

/// Expose the clap definition for doc generation and completeness checks.
pub fn command() -> clap::Command {
    Cli::command()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> CliOutcome {
        let mut full = vec!["qsearch".to_string()];
        full.extend(args.iter().map(|s| s.to_string()));
        execute(full)
    }

    #[test]
    fn grover_n2_is_exact() {
        let out = run(&["grover", "--n", "2", "--d", "2", "--t", "auto", "--seed", "7"]);
        assert_eq!(out.code, 0, "stderr: {}", out.stderr);
        assert!(out.stdout.contains("\"closed_form_success\": 1.0000000000000000e0"));
        assert!(out.stdout.contains("\"simulation_matches_closed_form\": true"));
        assert!(out.stdout.contains("\"queries\": 1"));
        assert!(out.stdout.contains("\"ok\": true"));
    }

    #[test]
    fn usage_errors_exit_2() {
        let out = run(&["grover", "--n"]);
        assert_eq!(out.code, 2);
        assert!(!out.stderr.is_empty());
        let out = run(&["nonsense"]);
        assert_eq!(out.code, 2);
        // domain errors in argument values are usage errors too
        let out = run(&["grover", "--n", "2", "--d", "9"]);
        assert_eq!(out.code, 2);
        let out = run(&["refute", "--n", "2", "--d", "1", "--rounds", "bogus"]);
        assert_eq!(out.code, 2);
    }

    #[test]
    fn capacity_errors_exit_3() {
        let out = run(&["grover", "--n", "99", "--d", "0"]);
        assert_eq!(out.code, 3, "stderr: {}", out.stderr);
        let out = run(&["refute", "--n", "20", "--d", "1", "--M", "2"]);
        assert_eq!(out.code, 3);
    }

    #[test]
    fn io_errors_exit_4() {
        let out = run(&["run", "--circuit", "/nonexistent/qsearch-circuit.txt"]);
        assert_eq!(out.code, 4);
        let out = run(&[
            "grover",
            "--n",
            "1",
            "--d",
            "0",
            "--csv",
            "/nonexistent-dir/out.csv",
        ]);
        assert_eq!(out.code, 4);
    }

    #[test]
    fn failing_verdicts_exit_1() {
        // a report with any false verdict must map to exit 1
        let mut report = Report::new("grover", String::new(), Some(0));
        report.verdict("simulation_matches_closed_form", false);
        assert!(!report.ok());
        // the mapping execute() applies:
        let code = if report.ok() { 0 } else { 1 };
        assert_eq!(code, 1);
    }

    #[test]
    fn help_and_version_exit_0() {
        let out = run(&["--help"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("qsearch"));
        let out = run(&["--version"]);
        assert_eq!(out.code, 0);
    }

    #[test]
    fn seeded_runs_are_byte_identical() {
        for args in [
            vec!["grover", "--n", "3", "--d", "5", "--t", "2", "--seed", "9"],
            vec!["refute", "--n", "2", "--d", "3", "--M", "1", "--rounds", "random:2", "--seed", "9"],
            vec!["bound", "--n", "4", "--m", "2", "--p", "2", "--seed", "9"],
            vec!["adversary", "--n", "2", "--t", "1", "--trials", "20", "--seed", "9"],
        ] {
            let a = run(&args);
            let b = run(&args);
            assert_eq!(a.code, 0, "{args:?}: {}", a.stderr);
            assert_eq!(a.stdout, b.stdout, "{args:?}");
        }
    }

    #[test]
    fn bound_example_estimate() {
        let out = run(&["bound", "--n", "4", "--m", "2", "--p", "2"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("\"query_estimate\": 5"));
    }

    #[test]
    fn refute_reports_bounds() {
        let out = run(&[
            "refute", "--n", "2", "--d", "3", "--M", "1", "--rounds", "random:5", "--seed", "7",
        ]);
        assert_eq!(out.code, 0, "stderr: {}", out.stderr);
        assert!(out.stdout.contains("\"reveal_within_bound\": true"));
        assert!(out.stdout.contains("\"identification_within_bound\": true"));
        assert!(out.stdout.contains("\"ok\": true"));
    }

    #[test]
    fn degenerate_marked_index_warns() {
        let out = run(&["refute", "--n", "2", "--d", "0", "--M", "1"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("degenerate"));
    }

    #[test]
    fn circuit_run_from_file() {
        let dir = std::env::temp_dir().join("qsearch-cli-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bell.qc");
        std::fs::write(&path, "qubits 2\nh 0\ncx 0 1\n").unwrap();
        let out = run(&["run", "--circuit", path.to_str().unwrap()]);
        assert_eq!(out.code, 0, "stderr: {}", out.stderr);
        assert!(out.stdout.contains("\"norm_preserved\": true"));
        assert!(out.stdout.contains("basis_index"));

        let csv_path = dir.join("bell.csv");
        let out = run(&[
            "run",
            "--circuit",
            path.to_str().unwrap(),
            "--csv",
            csv_path.to_str().unwrap(),
        ]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.is_empty());
        let csv = std::fs::read_to_string(&csv_path).unwrap();
        assert!(csv.starts_with("basis_index,probability,amplitude_re,amplitude_im\n"));
        assert_eq!(csv.lines().count(), 3);
    }

    #[test]
    fn parse_errors_from_circuit_files_exit_2() {
        let dir = std::env::temp_dir().join("qsearch-cli-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("broken.qc");
        std::fs::write(&path, "qubits 2\nfoo 0\n").unwrap();
        let out = run(&["run", "--circuit", path.to_str().unwrap()]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("line 2"));
    }
}
