//! Stabiliser truth tables of ICM circuits.

use std::fmt;

use crate::circuit::{Basis, Cnot, IcmCircuit, QubitKind, Rotation};
use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliError, PauliOperator, Sign, TableRow};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabiliserTruthTable {
    n: usize,
    rows: Vec<TableRow>,
}

impl StabiliserTruthTable {
    pub fn new(n: usize, rows: Vec<TableRow>) -> Result<Self, PauliError> {
        if let Some(r) = rows.iter().find(|r| r.n() != n) {
            return Err(PauliError::DimensionMismatch {
                left: n,
                right: r.n(),
            });
        }
        Ok(Self { n, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[TableRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Reduced generating set of the group spanned by the rows.
    ///
    /// Each row is read as a `4n`-bit word (input x, input z, output x,
    /// output z) and reduced to row echelon form with leftmost pivots, every
    /// pivot cleared from all other rows. Rows that reduce to `I -> I` are
    /// dropped; `- I -> I` is kept since it marks an inconsistent table.
    pub fn canonicalize(&self) -> Result<Self, PauliError> {
        let n = self.n;
        let bit = |r: &TableRow, p: usize| {
            let q = p % n;
            match p / n {
                0 => r.input().x_bit(q),
                1 => r.input().z_bit(q),
                2 => r.output().x_bit(q),
                _ => r.output().z_bit(q),
            }
        };
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for p in 0..4 * n {
            let Some(k) = (rank..rows.len()).find(|&k| bit(&rows[k], p)) else {
                continue;
            };
            rows.swap(rank, k);
            for k in 0..rows.len() {
                if k != rank && bit(&rows[k], p) {
                    rows[k] = rows[rank].multiply(&rows[k])?;
                }
            }
            rank += 1;
        }
        let mut out: Vec<TableRow> = rows.drain(..rank).collect();
        if rows.iter().any(|r| r.sign() == Sign::Minus) {
            out.push(
                rows.into_iter()
                    .find(|r| r.sign() == Sign::Minus)
                    .expect("checked"),
            );
        }
        Ok(Self { n, rows: out })
    }

    /// Same row group, signs included.
    pub fn equivalent(&self, other: &Self) -> Result<bool, PauliError> {
        if self.n != other.n {
            return Err(PauliError::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(self.canonicalize()? == other.canonicalize()?)
    }
}

impl fmt::Display for StabiliserTruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

/// Qubits that enter truth tables and specifications: everything except
/// distillation ancillae, in declaration order.
pub fn roster(c: &IcmCircuit) -> Vec<usize> {
    (0..c.n())
        .filter(|&q| c.kind(q) != QubitKind::Distillation)
        .collect()
}

/// The CNOT list restricted to the roster, renumbered to roster columns.
pub fn roster_cnots(c: &IcmCircuit) -> Vec<Cnot> {
    let mut column = vec![None; c.n()];
    for (k, q) in roster(c).into_iter().enumerate() {
        column[q] = Some(k);
    }
    c.cnots
        .iter()
        .filter_map(|g| Some(Cnot::new(column[g.control]?, column[g.target]?)))
        .collect()
}

/// Seed letters for one roster qubit.
pub fn seeds(c: &IcmCircuit, q: usize) -> Vec<Pauli> {
    let basis_letter = |b: Option<Basis>| match b {
        Some(Basis::X) => Pauli::X,
        _ => Pauli::Z,
    };
    match c.kind(q) {
        QubitKind::Io => vec![Pauli::X, Pauli::Z],
        QubitKind::Teleport if c.rotation(q) == Rotation::Init => vec![Pauli::X, Pauli::Z],
        QubitKind::Teleport | QubitKind::Computational => vec![basis_letter(c.init(q))],
        QubitKind::Distillation => vec![],
    }
}

/// Truth table built by conjugating each seed through the CNOT network.
/// X seeds come first, then Z seeds, each block in declaration order.
pub fn derive_truth_table(c: &IcmCircuit) -> Result<StabiliserTruthTable> {
    let violations = c.validate();
    if !violations.is_empty() {
        return Err(Error::Invalid(violations));
    }
    let qubits = roster(c);
    let cnots = roster_cnots(c);
    let n = qubits.len();
    let mut rows = Vec::new();
    for pass in [Pauli::X, Pauli::Z] {
        for (k, &q) in qubits.iter().enumerate() {
            if !seeds(c, q).contains(&pass) {
                continue;
            }
            let letter = pass;
            let input = PauliOperator::single(n, k, letter)?;
            let image = input.conjugate_circuit(&cnots)?;
            rows.push(TableRow::from_image(input, image)?);
        }
    }
    Ok(StabiliserTruthTable::new(n, rows)?)
}
