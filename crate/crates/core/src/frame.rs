//! Pauli frames as GF(2)-affine functions of measurement outcomes.

use std::collections::BTreeSet;
use std::fmt;

use crate::circuit::IcmCircuit;
use crate::pauli::{Pauli, PauliOperator};

/// `constant ⊕ (⊕ outcome of each listed qubit)`, outcome 1 meaning -1.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Parity {
    pub constant: bool,
    pub outcomes: BTreeSet<usize>,
}

impl Parity {
    pub fn one() -> Self {
        Self {
            constant: true,
            outcomes: BTreeSet::new(),
        }
    }

    pub fn outcome(q: usize) -> Self {
        Self {
            constant: false,
            outcomes: [q].into(),
        }
    }

    pub fn xor(&mut self, other: &Parity) {
        self.constant ^= other.constant;
        for &q in &other.outcomes {
            if !self.outcomes.remove(&q) {
                self.outcomes.insert(q);
            }
        }
    }

    pub fn flip(&mut self) {
        self.constant ^= true;
    }

    pub fn is_constant(&self) -> bool {
        self.outcomes.is_empty()
    }

    /// Value under an outcome assignment; unmeasured qubits count as +1.
    pub fn eval(&self, outcome: &impl Fn(usize) -> Option<bool>) -> bool {
        self.outcomes
            .iter()
            .fold(self.constant, |acc, &q| acc ^ outcome(q).unwrap_or(false))
    }

    /// E.g. `1 + m(q3) + m(q4)`.
    pub fn render(&self, c: &IcmCircuit) -> String {
        let mut terms = Vec::new();
        if self.constant || self.outcomes.is_empty() {
            terms.push(if self.constant {
                "1".to_string()
            } else {
                "0".to_string()
            });
        }
        terms.extend(self.outcomes.iter().map(|&q| format!("m({})", c.id(q))));
        terms.join(" + ")
    }
}

/// Pending Pauli `X^x Z^z` on each logical qubit, phases dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PauliFrame {
    pub x: Vec<Parity>,
    pub z: Vec<Parity>,
}

impl PauliFrame {
    pub fn identity(n: usize) -> Self {
        Self {
            x: vec![Parity::default(); n],
            z: vec![Parity::default(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// Frame after a Clifford that maps `X -> X Z` (S or S†).
    pub fn through_phase(&mut self, q: usize) {
        let x = self.x[q].clone();
        self.z[q].xor(&x);
    }

    /// Frame after a Clifford that maps `Z -> X Z` (V or V†).
    pub fn through_root_x(&mut self, q: usize) {
        let z = self.z[q].clone();
        self.x[q].xor(&z);
    }

    pub fn through_hadamard(&mut self, q: usize) {
        std::mem::swap(&mut self.x[q], &mut self.z[q]);
    }

    pub fn through_cnot(&mut self, c: usize, t: usize) {
        let xc = self.x[c].clone();
        self.x[t].xor(&xc);
        let zt = self.z[t].clone();
        self.z[c].xor(&zt);
    }

    /// The Pauli to apply to the outputs for a given outcome assignment.
    pub fn evaluate(&self, outcome: impl Fn(usize) -> Option<bool>) -> PauliOperator {
        let letters: Vec<Pauli> = self
            .x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| Pauli::from_bits(x.eval(&outcome), z.eval(&outcome)))
            .collect();
        PauliOperator::from_letters(&letters, 0)
    }

    /// One line per logical qubit and component.
    pub fn render(&self, c: &IcmCircuit, io: &[usize]) -> Vec<String> {
        let mut out = Vec::new();
        for (k, &q) in io.iter().enumerate() {
            out.push(format!("frame {} x = {}", c.id(q), self.x[k].render(c)));
            out.push(format!("frame {} z = {}", c.id(q), self.z[k].render(c)));
        }
        out
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        if self.constant || self.outcomes.is_empty() {
            terms.push(if self.constant {
                "1".to_string()
            } else {
                "0".to_string()
            });
        }
        terms.extend(self.outcomes.iter().map(|q| format!("m{q}")));
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_algebra() {
        let mut p = Parity::outcome(3);
        p.xor(&Parity::outcome(4));
        p.xor(&Parity::outcome(3));
        p.flip();
        assert_eq!(p.to_string(), "1 + m4");
        assert!(!p.eval(&|q| Some(q == 4)));
        assert!(p.eval(&|_| None));
        assert!(Parity::default().is_constant());
    }

    #[test]
    fn frame_propagation() {
        let mut f = PauliFrame::identity(2);
        f.x[0] = Parity::one();
        f.through_cnot(0, 1);
        assert_eq!(f.evaluate(|_| None).to_string(), "XX");
        f.through_phase(0);
        assert_eq!(f.evaluate(|_| None).to_string(), "YX");
        f.through_hadamard(1);
        assert_eq!(f.evaluate(|_| None).to_string(), "YZ");
        f.through_root_x(1);
        assert_eq!(f.evaluate(|_| None).to_string(), "YY");
    }
}
