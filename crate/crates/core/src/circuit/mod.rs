//! ICM circuits: qubit declarations, a CNOT list and measurement rules.

pub(crate) mod text;
mod validate;

use std::fmt;
use std::str::FromStr;

pub use crate::pauli::Cnot;
pub use validate::Violation;

/// Initialisation / measurement basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    X,
    Z,
    Y,
    A,
}

impl Basis {
    pub const ALL: [Basis; 4] = [Basis::X, Basis::Z, Basis::Y, Basis::A];

    pub fn is_rotated(self) -> bool {
        matches!(self, Basis::Y | Basis::A)
    }

    pub fn as_char(self) -> char {
        match self {
            Basis::X => 'X',
            Basis::Z => 'Z',
            Basis::Y => 'Y',
            Basis::A => 'A',
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl FromStr for Basis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "X" => Ok(Basis::X),
            "Z" => Ok(Basis::Z),
            "Y" => Ok(Basis::Y),
            "A" => Ok(Basis::A),
            _ => Err(format!("bad basis '{s}' (expected X, Z, Y or A)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QubitKind {
    Io,
    Computational,
    Teleport,
    Distillation,
}

impl QubitKind {
    pub fn name(self) -> &'static str {
        match self {
            QubitKind::Io => "io",
            QubitKind::Computational => "computational",
            QubitKind::Teleport => "teleport",
            QubitKind::Distillation => "distillation",
        }
    }

    pub fn is_ancilla(self) -> bool {
        self != QubitKind::Io
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QubitDecl {
    pub id: String,
    pub kind: QubitKind,
    /// `None` for io qubits.
    pub init: Option<Basis>,
}

/// The classically controlled part of a rule: measure `qubit` in `if_plus`
/// when the first outcome is +1, otherwise in `if_minus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Conditional {
    pub qubit: usize,
    pub if_plus: Basis,
    pub if_minus: Basis,
}

/// `(q1, B1, q2, B2, B3)` with qubits as declaration indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MeasurementRule {
    pub qubit: usize,
    pub basis: Basis,
    pub then: Option<Conditional>,
}

impl MeasurementRule {
    pub fn plain(qubit: usize, basis: Basis) -> Self {
        Self {
            qubit,
            basis,
            then: None,
        }
    }

    pub fn conditional(
        qubit: usize,
        basis: Basis,
        q2: usize,
        if_plus: Basis,
        if_minus: Basis,
    ) -> Self {
        Self {
            qubit,
            basis,
            then: Some(Conditional {
                qubit: q2,
                if_plus,
                if_minus,
            }),
        }
    }

    /// Every basis this rule may measure `q` in.
    pub fn bases_for(&self, q: usize) -> Vec<Basis> {
        let mut out = Vec::new();
        if self.qubit == q {
            out.push(self.basis);
        }
        if let Some(c) = self.then {
            if c.qubit == q {
                out.push(c.if_plus);
                out.push(c.if_minus);
            }
        }
        out
    }
}

/// How a teleportation ancilla carries its rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rotation {
    /// Initialised in Y or A, measured in plain bases.
    Init,
    /// Initialised in X or Z, measured in Y or A on some branch.
    Measurement,
    /// Neither end rotated.
    None,
    /// Both ends rotated; not ICM-valid.
    Both,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IcmCircuit {
    pub qubits: Vec<QubitDecl>,
    /// Temporal order.
    pub cnots: Vec<Cnot>,
    /// Execution order.
    pub rules: Vec<MeasurementRule>,
    /// Output labels; metadata only.
    pub outputs: Option<Vec<usize>>,
}

impl IcmCircuit {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_io(&mut self, id: impl Into<String>) -> usize {
        self.qubits.push(QubitDecl {
            id: id.into(),
            kind: QubitKind::Io,
            init: None,
        });
        self.qubits.len() - 1
    }

    pub fn add_ancilla(&mut self, id: impl Into<String>, kind: QubitKind, init: Basis) -> usize {
        self.qubits.push(QubitDecl {
            id: id.into(),
            kind,
            init: Some(init),
        });
        self.qubits.len() - 1
    }

    pub fn cnot(&mut self, control: usize, target: usize) {
        self.cnots.push(Cnot::new(control, target));
    }

    pub fn measure(&mut self, rule: MeasurementRule) {
        self.rules.push(rule);
    }

    pub fn n(&self) -> usize {
        self.qubits.len()
    }

    pub fn id(&self, q: usize) -> &str {
        &self.qubits[q].id
    }

    pub fn kind(&self, q: usize) -> QubitKind {
        self.qubits[q].kind
    }

    pub fn init(&self, q: usize) -> Option<Basis> {
        self.qubits[q].init
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.qubits.iter().position(|d| d.id == id)
    }

    pub fn io_qubits(&self) -> Vec<usize> {
        self.indices_where(|d| d.kind == QubitKind::Io)
    }

    pub fn ancillae(&self) -> Vec<usize> {
        self.indices_where(|d| d.kind.is_ancilla())
    }

    fn indices_where(&self, f: impl Fn(&QubitDecl) -> bool) -> Vec<usize> {
        self.qubits
            .iter()
            .enumerate()
            .filter(|(_, d)| f(d))
            .map(|(i, _)| i)
            .collect()
    }

    /// Rule whose first qubit is `q`.
    pub fn rule_for(&self, q: usize) -> Option<&MeasurementRule> {
        self.rules.iter().find(|r| r.qubit == q)
    }

    /// All bases `q` may be measured in, across every rule.
    pub fn measurement_bases(&self, q: usize) -> Vec<Basis> {
        self.rules.iter().flat_map(|r| r.bases_for(q)).collect()
    }

    pub fn rotation(&self, q: usize) -> Rotation {
        let init_rotated = self.init(q).is_some_and(Basis::is_rotated);
        let meas_rotated = self.measurement_bases(q).iter().any(|b| b.is_rotated());
        match (init_rotated, meas_rotated) {
            (true, true) => Rotation::Both,
            (true, false) => Rotation::Init,
            (false, true) => Rotation::Measurement,
            (false, false) => Rotation::None,
        }
    }

    pub fn validate(&self) -> Vec<Violation> {
        validate::validate(self)
    }

    pub fn to_text(&self) -> String {
        text::serialize(self)
    }

    pub fn rule_text(&self, r: &MeasurementRule) -> String {
        text::rule_text(self, r)
    }
}

impl FromStr for IcmCircuit {
    type Err = crate::error::ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        text::parse(s)
    }
}

impl fmt::Display for IcmCircuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
