//! Sampled verification with trusted preparation and measurement.
//!
//! For every specification row the candidate's CNOT network is run on a
//! state stabilised by the row input and the row output is measured; a
//! correct network reproduces the row sign on every shot.

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::state::{basis_state, letter_matrix, Register, C64};
use super::{check_size, MAX_QUBITS};
use crate::circuit::{Basis, IcmCircuit};
use crate::error::{Error, Result};
use crate::pauli::PauliOperator;
use crate::spec::{ancilla_rules, Specification};
use crate::table::{roster, roster_cnots};
use crate::verify::{first_divergence, init_mismatches};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowSample {
    pub index: usize,
    pub agree: usize,
    pub disagree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleReport {
    pub shots: usize,
    pub seed: u64,
    pub rows: Vec<RowSample>,
    /// Declared initialisations that differ from the specification.
    pub init_mismatches: Vec<String>,
    /// First measurement rule that differs from the specification.
    pub rule_divergence: Option<usize>,
    pub warning: Option<String>,
}

impl SampleReport {
    pub fn passed(&self) -> bool {
        self.init_mismatches.is_empty()
            && self.rule_divergence.is_none()
            && self.rows.iter().all(|r| r.disagree == 0)
    }

    pub fn records(&self) -> Vec<(&'static str, String)> {
        let failed = self.rows.iter().filter(|r| r.disagree > 0).count();
        vec![
            ("shots", self.shots.to_string()),
            ("seed", self.seed.to_string()),
            ("rows", self.rows.len().to_string()),
            ("rows_failed", failed.to_string()),
            ("init_mismatches", self.init_mismatches.len().to_string()),
            (
                "rule_divergence",
                self.rule_divergence
                    .map_or("none".into(), |i| i.to_string()),
            ),
            (
                "warning",
                self.warning.clone().unwrap_or_else(|| "none".into()),
            ),
            (
                "overall",
                if self.passed() { "pass" } else { "fail" }.into(),
            ),
        ]
    }
}

impl fmt::Display for SampleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(w) = &self.warning {
            writeln!(f, "warning: {w}")?;
        }
        for m in &self.init_mismatches {
            writeln!(f, "init: {m}")?;
        }
        if let Some(i) = self.rule_divergence {
            writeln!(f, "measurements: differ at rule {i}")?;
        }
        for r in &self.rows {
            let verdict = if r.disagree == 0 { "ok" } else { "FAIL" };
            writeln!(
                f,
                "row {}: {}/{} shots agree {verdict}",
                r.index,
                r.agree,
                r.agree + r.disagree
            )?;
        }
        writeln!(
            f,
            "overall: {}",
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

const STABILISER_STATES: [(Basis, bool); 6] = [
    (Basis::Z, false),
    (Basis::Z, true),
    (Basis::X, false),
    (Basis::X, true),
    (Basis::Y, false),
    (Basis::Y, true),
];

fn apply_pauli(reg: &mut Register, p: &PauliOperator, qubit_of: &[usize]) {
    for (k, l) in p.letters().enumerate() {
        reg.apply_1q(qubit_of[k], &letter_matrix(l));
    }
    let phase = [
        C64::new(1.0, 0.0),
        C64::new(0.0, 1.0),
        C64::new(-1.0, 0.0),
        C64::new(0.0, -1.0),
    ];
    for a in &mut reg.cols[0] {
        *a *= phase[p.phase() as usize];
    }
}

fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Runs `shots` shots per specification row against `candidate`'s CNOT
/// network, after checking its declared initialisations and measurement
/// rules, which are trusted and visible, against the specification.
///
/// Rows are operator identities, so every qubit, ancillae included, starts
/// in a random single-qubit stabiliser state drawn from a `ChaCha8` stream
/// seeded with `seed` before projection onto the row input. Preparing
/// ancillae only in their declared basis would hide CNOTs controlled by a
/// qubit still in |0>.
pub fn sample_verify(
    candidate: &IcmCircuit,
    spec: &Specification,
    shots: usize,
    seed: u64,
) -> Result<SampleReport> {
    let n = spec.n();
    check_size(n, MAX_QUBITS)?;
    let cand = roster(candidate);
    let column_of: HashMap<&str, usize> = cand
        .iter()
        .enumerate()
        .map(|(k, &q)| (candidate.id(q), k))
        .collect();
    if cand.len() != n {
        return Err(Error::Spec(format!(
            "candidate has {} qubits, specification {n}",
            cand.len()
        )));
    }
    let qubit_of: Vec<usize> = spec
        .roster()
        .iter()
        .map(|e| column_of.get(e.id.as_str()).copied())
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Spec("candidate and specification name different qubits".into()))?;
    let cnots = roster_cnots(candidate);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let warning =
        (shots == 0).then(|| "zero shots: nothing was sampled, the pass is vacuous".to_string());
    let mut rows = Vec::new();
    for (index, row) in spec.table().rows().iter().enumerate() {
        let mut sample = RowSample {
            index,
            agree: 0,
            disagree: 0,
        };
        for _ in 0..shots {
            let mut reg = prepare(spec, row.input(), &qubit_of, &mut rng)?;
            for g in &cnots {
                reg.apply_cnot(g.control, g.target);
            }
            let mut image = reg.clone();
            apply_pauli(&mut image, &row.signed_output(), &qubit_of);
            let e = inner(&reg.cols[0], &image.cols[0]).re.clamp(-1.0, 1.0);
            if rng.gen_bool((1.0 + e) / 2.0) {
                sample.agree += 1;
            } else {
                sample.disagree += 1;
            }
        }
        rows.push(sample);
    }
    let init_mismatches = init_mismatches(candidate, spec);
    let rule_divergence = first_divergence(&ancilla_rules(candidate), spec.rules());
    Ok(SampleReport {
        shots,
        seed,
        rows,
        init_mismatches,
        rule_divergence,
        warning,
    })
}

/// Random product state projected onto the +1 eigenspace of `input`.
fn prepare(
    spec: &Specification,
    input: &PauliOperator,
    qubit_of: &[usize],
    rng: &mut ChaCha8Rng,
) -> Result<Register> {
    let n = spec.n();
    for _ in 0..64 {
        let fixed: Vec<(usize, [C64; 2])> = spec
            .roster()
            .iter()
            .enumerate()
            .map(|(k, _)| {
                let (b, minus) = STABILISER_STATES[rng.gen_range(0..6)];
                (qubit_of[k], basis_state(b, minus))
            })
            .collect();
        let mut reg = Register::product_inputs(n, &[], &fixed);
        let mut flipped = reg.clone();
        apply_pauli(&mut flipped, input, qubit_of);
        for (a, b) in reg.cols[0].iter_mut().zip(&flipped.cols[0]) {
            *a += b;
        }
        let norm = inner(&reg.cols[0], &reg.cols[0]).re.sqrt();
        if norm > 1e-6 {
            for a in &mut reg.cols[0] {
                *a /= C64::new(norm, 0.0);
            }
            return Ok(reg);
        }
    }
    Err(Error::Simulation(format!(
        "could not prepare a +1 eigenstate of {input}"
    )))
}
