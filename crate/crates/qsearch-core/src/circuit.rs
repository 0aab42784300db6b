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

//! Line-oriented circuit description language.
//!
//! ```text
//! qubits 3        # header: register size, required first
//! h 0             # Hadamard
//! x 1             # bit flip
//! cx 0 1          # CNOT: control target
//! ccx 0 1 2       # Toffoli: control control target
//! oracle 2        # flip oracle marking index 2; counts one query
//! ```
//!
//! `#` starts a comment, blank lines are ignored. For `oracle <d>` the index
//! register is every qubit except the last, and the last qubit is the flag.

use crate::error::{Error, Result};
use crate::layout::RegisterLayout;
use crate::state::{QueryLedger, StateVector};
use crate::unitary::DenseUnitary;

/// One gate application.
#[derive(Clone, Debug, PartialEq)]
pub enum GateOp {
    H { target: usize },
    X { target: usize },
    Cnot { control: usize, target: usize },
    Ccx { controls: [usize; 2], target: usize },
    /// Dense unitary on `targets` where all `controls` are 1. Programmatic
    /// only: there is no text form.
    ControlledBlock {
        controls: Vec<usize>,
        targets: Vec<usize>,
        block: DenseUnitary,
    },
    /// Flip oracle marking `marked`; the flag is the last declared qubit.
    OracleFlip { marked: u64 },
}

/// A declared register size and an ordered list of gates, every referenced
/// qubit below the declared size.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    pub num_qubits: usize,
    pub ops: Vec<GateOp>,
}

impl Circuit {
    /// Parse the line-oriented grammar. Errors carry the 1-based line number.
    pub fn parse(text: &str) -> Result<Self> {
        let mut num_qubits: Option<usize> = None;
        let mut ops = Vec::new();

        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let mut words = body.split_whitespace();
            let mnemonic = words.next().unwrap();
            let args: Vec<&str> = words.collect();

            let Some(q) = num_qubits else {
                if mnemonic != "qubits" {
                    return Err(Error::Parse {
                        line,
                        msg: format!("expected `qubits <q>` header, found `{mnemonic}`"),
                    });
                }
                let q = parse_count(&args, line)?;
                if q == 0 {
                    return Err(Error::Parse {
                        line,
                        msg: "circuit needs at least one qubit".into(),
                    });
                }
                num_qubits = Some(q);
                continue;
            };

            match mnemonic {
                "qubits" => {
                    return Err(Error::Parse {
                        line,
                        msg: "duplicate `qubits` header".into(),
                    });
                }
                "h" => ops.push(GateOp::H {
                    target: parse_qubits::<1>(&args, q, line)?[0],
                }),
                "x" => ops.push(GateOp::X {
                    target: parse_qubits::<1>(&args, q, line)?[0],
                }),
                "cx" => {
                    let [control, target] = parse_qubits::<2>(&args, q, line)?;
                    ops.push(GateOp::Cnot { control, target });
                }
                "ccx" => {
                    let [c0, c1, target] = parse_qubits::<3>(&args, q, line)?;
                    ops.push(GateOp::Ccx {
                        controls: [c0, c1],
                        target,
                    });
                }
                "oracle" => {
                    if args.len() != 1 {
                        return Err(Error::Parse {
                            line,
                            msg: format!("oracle takes 1 argument, got {}", args.len()),
                        });
                    }
                    if q < 2 {
                        return Err(Error::Parse {
                            line,
                            msg: "oracle needs at least 2 qubits (index register + flag)".into(),
                        });
                    }
                    let marked: u64 = args[0].parse().map_err(|_| Error::Parse {
                        line,
                        msg: format!("bad oracle index `{}`", args[0]),
                    })?;
                    if marked >= 1u64 << (q - 1) {
                        return Err(Error::Parse {
                            line,
                            msg: format!(
                                "oracle index {marked} out of range for a {}-bit index register",
                                q - 1
                            ),
                        });
                    }
                    ops.push(GateOp::OracleFlip { marked });
                }
                other => {
                    return Err(Error::Parse {
                        line,
                        msg: format!("unknown mnemonic `{other}`"),
                    });
                }
            }
        }

        let Some(num_qubits) = num_qubits else {
            return Err(Error::Parse {
                line: text.lines().count().max(1),
                msg: "missing `qubits <q>` header".into(),
            });
        };
        Ok(Circuit { num_qubits, ops })
    }

    /// Render back to the text grammar. Fails on ops without a text form.
    pub fn to_text(&self) -> Result<String> {
        let mut out = format!("qubits {}\n", self.num_qubits);
        for op in &self.ops {
            match op {
                GateOp::H { target } => out.push_str(&format!("h {target}\n")),
                GateOp::X { target } => out.push_str(&format!("x {target}\n")),
                GateOp::Cnot { control, target } => {
                    out.push_str(&format!("cx {control} {target}\n"));
                }
                GateOp::Ccx { controls, target } => {
                    out.push_str(&format!("ccx {} {} {target}\n", controls[0], controls[1]));
                }
                GateOp::OracleFlip { marked } => out.push_str(&format!("oracle {marked}\n")),
                GateOp::ControlledBlock { .. } => {
                    return Err(Error::InvalidArgument(
                        "controlled blocks have no text form".into(),
                    ));
                }
            }
        }
        Ok(out)
    }

    /// Run the circuit from `|0…0⟩`, counting oracle queries.
    pub fn execute(&self) -> Result<(StateVector, QueryLedger)> {
        let mut state = StateVector::new_basis(self.num_qubits, 0)?;
        let mut ledger = QueryLedger::new();
        let oracle_layout = if self.num_qubits >= 2 {
            Some(RegisterLayout::new(self.num_qubits - 1, 0)?)
        } else {
            None
        };
        for op in &self.ops {
            match op {
                GateOp::H { target } => state.apply_h(*target)?,
                GateOp::X { target } => state.apply_x(*target)?,
                GateOp::Cnot { control, target } => state.apply_cnot(*control, *target)?,
                GateOp::Ccx { controls, target } => {
                    state.apply_ccx(controls[0], controls[1], *target)?;
                }
                GateOp::ControlledBlock {
                    controls,
                    targets,
                    block,
                } => state.apply_controlled_block(controls, targets, block)?,
                GateOp::OracleFlip { marked } => {
                    let layout = oracle_layout.as_ref().ok_or_else(|| {
                        Error::InvalidArgument("oracle needs at least 2 qubits".into())
                    })?;
                    state.apply_oracle_flip(layout, *marked, &mut ledger)?;
                }
            }
        }
        Ok((state, ledger))
    }
}

fn parse_count(args: &[&str], line: usize) -> Result<usize> {
    if args.len() != 1 {
        return Err(Error::Parse {
            line,
            msg: format!("`qubits` takes 1 argument, got {}", args.len()),
        });
    }
    args[0].parse().map_err(|_| Error::Parse {
        line,
        msg: format!("bad qubit count `{}`", args[0]),
    })
}

fn parse_qubits<const K: usize>(args: &[&str], num_qubits: usize, line: usize) -> Result<[usize; K]> {
    if args.len() != K {
        return Err(Error::Parse {
            line,
            msg: format!("expected {K} qubit argument(s), got {}", args.len()),
        });
    }
    let mut out = [0usize; K];
    for (slot, raw) in out.iter_mut().zip(args) {
        let q: usize = raw.parse().map_err(|_| Error::Parse {
            line,
            msg: format!("bad qubit index `{raw}`"),
        })?;
        if q >= num_qubits {
            return Err(Error::Parse {
                line,
                msg: format!("qubit {q} out of range for {num_qubits} qubits"),
            });
        }
        *slot = q;
    }
    for i in 1..K {
        if out[..i].contains(&out[i]) {
            return Err(Error::Parse {
                line,
                msg: format!("qubit {} appears more than once", out[i]),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_basic_forms() {
        let c = Circuit::parse("qubits 3\nh 0\nccx 0 1 2").unwrap();
        assert_eq!(c.num_qubits, 3);
        assert_eq!(
            c.ops,
            vec![
                GateOp::H { target: 0 },
                GateOp::Ccx {
                    controls: [0, 1],
                    target: 2
                }
            ]
        );
    }

    #[test]
    fn unknown_mnemonic_reports_its_line() {
        let err = Circuit::parse("qubits 2\nfoo 0").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn comments_and_blanks_are_ignored() {
        let c = Circuit::parse("# nothing\n\nqubits 2\n  # still nothing\n").unwrap();
        assert_eq!(c.num_qubits, 2);
        assert!(c.ops.is_empty());
        let c = Circuit::parse("qubits 2\nh 0 # trailing\n").unwrap();
        assert_eq!(c.ops.len(), 1);
    }

    #[test]
    fn header_is_mandatory_and_unique() {
        assert!(matches!(
            Circuit::parse("h 0"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(Circuit::parse(""), Err(Error::Parse { .. })));
        assert!(matches!(
            Circuit::parse("qubits 2\nqubits 3"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(Circuit::parse("qubits 0").is_err());
    }

    #[test]
    fn arity_and_range_violations_are_parse_errors() {
        assert!(matches!(
            Circuit::parse("qubits 2\ncx 0"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            Circuit::parse("qubits 2\nh 2"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            Circuit::parse("qubits 2\ncx 1 1"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            Circuit::parse("qubits 3\noracle 4"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            Circuit::parse("qubits 1\noracle 0"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn text_round_trip_is_structural_identity() {
        let source = "qubits 3\nh 0\nh 1\noracle 3\ncx 0 1\nccx 1 0 2\nx 2\n";
        let circuit = Circuit::parse(source).unwrap();
        let printed = circuit.to_text().unwrap();
        assert_eq!(printed, source);
        assert_eq!(Circuit::parse(&printed).unwrap(), circuit);
    }

    #[test]
    fn execute_counts_oracle_queries() {
        let c = Circuit::parse("qubits 3\nh 0\nh 1\noracle 3\noracle 3\n").unwrap();
        let (state, ledger) = c.execute().unwrap();
        assert_eq!(ledger.queries(), 2);
        assert!((state.norm_sq() - 1.0).abs() < 1e-12);
        // double oracle cancels: the flag is back to 0 everywhere
        assert_eq!(state.marginal_prob(&[2], 1).unwrap(), 0.0);
    }
}
