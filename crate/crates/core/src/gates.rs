//! Clifford+T gate lists and the `gates v1` text format.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;

use crate::circuit::text::{content_lines, header};
use crate::error::ParseError;
use crate::oracle::state::{letter_matrix, Register};
use crate::oracle::C64;
use crate::pauli::Pauli;

/// Qubits are 0-based here and 1-based in text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    H(usize),
    P(usize),
    Pdg(usize),
    T(usize),
    Tdg(usize),
    X(usize),
    Z(usize),
    Cnot(usize, usize),
}

impl Gate {
    pub fn qubits(self) -> Vec<usize> {
        match self {
            Gate::H(q)
            | Gate::P(q)
            | Gate::Pdg(q)
            | Gate::T(q)
            | Gate::Tdg(q)
            | Gate::X(q)
            | Gate::Z(q) => vec![q],
            Gate::Cnot(c, t) => vec![c, t],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Gate::H(_) => "h",
            Gate::P(_) => "p",
            Gate::Pdg(_) => "pdg",
            Gate::T(_) => "t",
            Gate::Tdg(_) => "tdg",
            Gate::X(_) => "x",
            Gate::Z(_) => "z",
            Gate::Cnot(..) => "cnot",
        }
    }

    /// 2x2 matrix of a single-qubit gate.
    pub fn matrix(self) -> Option<DMatrix<C64>> {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let phase = |t: f64| {
            DMatrix::from_row_slice(
                2,
                2,
                &[
                    C64::new(1.0, 0.0),
                    C64::new(0.0, 0.0),
                    C64::new(0.0, 0.0),
                    C64::from_polar(1.0, t),
                ],
            )
        };
        let quarter = std::f64::consts::FRAC_PI_4;
        Some(match self {
            Gate::H(_) => DMatrix::from_row_slice(
                2,
                2,
                &[
                    C64::new(r, 0.0),
                    C64::new(r, 0.0),
                    C64::new(r, 0.0),
                    C64::new(-r, 0.0),
                ],
            ),
            Gate::P(_) => phase(2.0 * quarter),
            Gate::Pdg(_) => phase(-2.0 * quarter),
            Gate::T(_) => phase(quarter),
            Gate::Tdg(_) => phase(-quarter),
            Gate::X(_) => letter_matrix(Pauli::X),
            Gate::Z(_) => letter_matrix(Pauli::Z),
            Gate::Cnot(..) => return None,
        })
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::Cnot(c, t) => write!(f, "cnot {} {}", c + 1, t + 1),
            g => write!(f, "{} {}", g.name(), g.qubits()[0] + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateList {
    pub n: usize,
    pub gates: Vec<Gate>,
}

impl GateList {
    pub fn new(n: usize, gates: Vec<Gate>) -> Result<Self, String> {
        for g in &gates {
            let qs = g.qubits();
            if let Some(q) = qs.iter().find(|&&q| q >= n) {
                return Err(format!("{g}: qubit {} out of range 1..={n}", q + 1));
            }
            if qs.len() == 2 && qs[0] == qs[1] {
                return Err(format!("{g}: control and target coincide"));
            }
        }
        Ok(Self { n, gates })
    }

    /// Dense unitary of the whole list, qubit 0 least significant.
    pub fn unitary(&self) -> DMatrix<C64> {
        let ports: Vec<usize> = (0..self.n).collect();
        let mut reg = Register::product_inputs(self.n, &ports, &[]);
        for &g in &self.gates {
            match g {
                Gate::Cnot(c, t) => reg.apply_cnot(c, t),
                g => reg.apply_1q(g.qubits()[0], &g.matrix().expect("single-qubit gate")),
            }
        }
        let d = 1 << self.n;
        DMatrix::from_fn(d, d, |r, i| reg.cols[i][r])
    }
}

impl fmt::Display for GateList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gates v1\nqubits {}", self.n)?;
        for g in &self.gates {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

impl FromStr for GateList {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut lines = content_lines(text);
        let (_, n) = header(&mut lines, "gates")?;
        let mut gates = Vec::new();
        for (l, t) in lines {
            let q = |s: &str| -> Result<usize, ParseError> {
                match s.parse::<usize>() {
                    Ok(v) if (1..=n).contains(&v) => Ok(v - 1),
                    _ => Err(ParseError::new(
                        l,
                        format!("bad qubit '{s}' (expected 1..={n})"),
                    )),
                }
            };
            let g = match t.as_slice() {
                ["h", a] => Gate::H(q(a)?),
                ["p", a] => Gate::P(q(a)?),
                ["pdg", a] => Gate::Pdg(q(a)?),
                ["t", a] => Gate::T(q(a)?),
                ["tdg", a] => Gate::Tdg(q(a)?),
                ["x", a] => Gate::X(q(a)?),
                ["z", a] => Gate::Z(q(a)?),
                ["cnot", a, b] => {
                    let (c, t) = (q(a)?, q(b)?);
                    if c == t {
                        return Err(ParseError::new(l, "cnot control and target coincide"));
                    }
                    Gate::Cnot(c, t)
                }
                [name, ..] => return Err(ParseError::new(l, format!("unknown gate '{name}'"))),
                [] => unreachable!("content lines are non-empty"),
            };
            gates.push(g);
        }
        Ok(GateList { n, gates })
    }
}
