//! Dense-matrix reference semantics for small circuits.
//!
//! Io qubits are the ports: each is an input, and an output unless a rule
//! measures it. Ancillae start in the +1 eigenstate of their init basis.
//! After the CNOT network the rules run in order, branching on every
//! outcome; unmeasured ancillae are traced out. Everything here is built
//! from amplitudes and explicit 2x2 matrices, independently of the
//! symplectic code in [`crate::pauli`].

pub mod sample;
pub mod state;

use std::collections::BTreeMap;

use nalgebra::DMatrix;

use crate::circuit::{Basis, IcmCircuit, QubitKind, Rotation};
use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliOperator, TableRow};
use crate::table::{roster, roster_cnots, seeds, StabiliserTruthTable};
pub use state::C64;
use state::{basis_state, letter_matrix, Register};

/// Largest circuit the oracle will simulate.
pub const MAX_QUBITS: usize = 12;
/// Largest number of ports for channel (Choi) computations.
pub const MAX_PORTS: usize = 5;

const PRUNE: f64 = 1e-20;

/// `(qubit, outcome)` pairs in measurement order; `true` is the -1 outcome.
pub type Outcomes = Vec<(usize, bool)>;

/// One outcome history and its Kraus operators (one per traced-out basis
/// state of the unmeasured ancillae).
#[derive(Debug, Clone)]
pub struct Branch {
    pub outcomes: Outcomes,
    pub kraus: Vec<DMatrix<C64>>,
}

impl Branch {
    pub fn outcome(&self, q: usize) -> Option<bool> {
        self.outcomes.iter().find(|(p, _)| *p == q).map(|&(_, o)| o)
    }
}

#[derive(Debug, Clone)]
pub struct Simulation {
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
    pub branches: Vec<Branch>,
}

fn check_size(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::SizeCap { n, cap });
    }
    Ok(())
}

/// Runs every branch of `c`.
pub fn simulate(c: &IcmCircuit) -> Result<Simulation> {
    check_size(c.n(), MAX_QUBITS)?;
    let violations = c.validate();
    if !violations.is_empty() {
        return Err(Error::Invalid(violations));
    }
    let inputs = c.io_qubits();
    check_size(inputs.len(), MAX_PORTS)?;
    let measured: Vec<bool> = (0..c.n())
        .map(|q| !c.measurement_bases(q).is_empty())
        .collect();
    let outputs: Vec<usize> = inputs.iter().copied().filter(|&q| !measured[q]).collect();
    let traced: Vec<usize> = (0..c.n())
        .filter(|&q| c.kind(q).is_ancilla() && !measured[q])
        .collect();

    let fixed: Vec<(usize, [C64; 2])> = c
        .ancillae()
        .into_iter()
        .map(|q| (q, basis_state(c.init(q).expect("validated"), false)))
        .collect();
    let mut reg = Register::product_inputs(c.n(), &inputs, &fixed);
    for g in &c.cnots {
        reg.apply_cnot(g.control, g.target);
    }

    let mut finished = Vec::new();
    run_rules(c, reg, 0, Vec::new(), &mut finished);

    let branches = finished
        .into_iter()
        .map(|(outcomes, reg)| Branch {
            outcomes,
            kraus: kraus_ops(&reg, &outputs, &traced),
        })
        .collect();
    Ok(Simulation {
        inputs,
        outputs,
        branches,
    })
}

fn run_rules(
    c: &IcmCircuit,
    reg: Register,
    i: usize,
    outcomes: Vec<(usize, bool)>,
    done: &mut Vec<(Vec<(usize, bool)>, Register)>,
) {
    let Some(rule) = c.rules.get(i) else {
        done.push((outcomes, reg));
        return;
    };
    let known = outcomes
        .iter()
        .find(|(q, _)| *q == rule.qubit)
        .map(|&(_, o)| o);
    let first: Vec<bool> = match known {
        Some(o) => vec![o],
        None => vec![false, true],
    };
    for o1 in first {
        let mut r1 = reg.clone();
        let mut h1 = outcomes.clone();
        if known.is_none() {
            if r1.project(rule.qubit, basis_state(rule.basis, o1)) < PRUNE {
                continue;
            }
            h1.push((rule.qubit, o1));
        }
        let Some(k) = rule.then else {
            run_rules(c, r1, i + 1, h1, done);
            continue;
        };
        let b = if o1 { k.if_minus } else { k.if_plus };
        for o2 in [false, true] {
            let mut r2 = r1.clone();
            if r2.project(k.qubit, basis_state(b, o2)) < PRUNE {
                continue;
            }
            let mut h2 = h1.clone();
            h2.push((k.qubit, o2));
            run_rules(c, r2, i + 1, h2, done);
        }
    }
}

fn kraus_ops(reg: &Register, outputs: &[usize], traced: &[usize]) -> Vec<DMatrix<C64>> {
    let (dout, din) = (1usize << outputs.len(), reg.cols.len());
    let mut ops = Vec::new();
    for t in 0..1usize << traced.len() {
        let mut base = 0;
        for (j, &q) in traced.iter().enumerate() {
            base |= ((t >> j) & 1) << q;
        }
        let k = DMatrix::from_fn(dout, din, |a, i| {
            let mut idx = base;
            for (j, &q) in outputs.iter().enumerate() {
                idx |= ((a >> j) & 1) << q;
            }
            reg.cols[i][idx]
        });
        if k.iter().any(|x| x.norm_sqr() > PRUNE) {
            ops.push(k);
        }
    }
    ops
}

impl Simulation {
    /// Kraus operators after left-multiplying each branch by its frame.
    pub fn corrected(&self, frame: impl Fn(&Branch) -> PauliOperator) -> Simulation {
        let branches = self
            .branches
            .iter()
            .map(|b| {
                let f = pauli_matrix(&frame(b));
                Branch {
                    outcomes: b.outcomes.clone(),
                    kraus: b.kraus.iter().map(|k| &f * k).collect(),
                }
            })
            .collect();
        Simulation {
            inputs: self.inputs.clone(),
            outputs: self.outputs.clone(),
            branches,
        }
    }

    /// Choi matrix of the whole channel, all outcomes summed.
    pub fn choi(&self) -> DMatrix<C64> {
        choi_of(self.branches.iter().flat_map(|b| &b.kraus), self.dims())
    }

    /// Choi matrix per outcome history, keyed by `(qubit name, outcome)`
    /// sorted by name.
    pub fn instrument(&self, c: &IcmCircuit) -> BTreeMap<Vec<(String, bool)>, DMatrix<C64>> {
        let mut out = BTreeMap::new();
        for b in &self.branches {
            let mut key: Vec<(String, bool)> = b
                .outcomes
                .iter()
                .map(|&(q, o)| (c.id(q).to_string(), o))
                .collect();
            key.sort();
            out.insert(key, choi_of(&b.kraus, self.dims()));
        }
        out
    }

    fn dims(&self) -> (usize, usize) {
        (1 << self.outputs.len(), 1 << self.inputs.len())
    }
}

fn choi_of<'a>(
    ops: impl IntoIterator<Item = &'a DMatrix<C64>>,
    (dout, din): (usize, usize),
) -> DMatrix<C64> {
    let d = dout * din;
    let mut j = DMatrix::zeros(d, d);
    for k in ops {
        let v = DMatrix::from_fn(d, 1, |r, _| k[(r % dout, r / dout)]);
        j += &v * v.adjoint();
    }
    j
}

/// Post-measurement state of one outcome history.
#[derive(Debug, Clone)]
pub struct BranchState {
    /// Unmeasured qubits, least significant first.
    pub qubits: Vec<usize>,
    /// Normalised amplitudes over `qubits`.
    pub amplitudes: Vec<C64>,
    pub probability: f64,
}

/// Runs `c` on `io_input` (amplitudes over the io qubits in declaration
/// order) and follows the single history picked by `outcomes`, which maps
/// each measured qubit to its outcome (`true` for -1).
pub fn run_branch(
    c: &IcmCircuit,
    io_input: &[C64],
    outcomes: &BTreeMap<usize, bool>,
) -> Result<BranchState> {
    check_size(c.n(), MAX_QUBITS)?;
    let violations = c.validate();
    if !violations.is_empty() {
        return Err(Error::Invalid(violations));
    }
    let io = c.io_qubits();
    if io_input.len() != 1 << io.len() {
        return Err(Error::Simulation(format!(
            "input has {} amplitudes, {} io qubits need {}",
            io_input.len(),
            io.len(),
            1usize << io.len()
        )));
    }
    let fixed: Vec<(usize, [C64; 2])> = c
        .ancillae()
        .into_iter()
        .map(|q| (q, basis_state(c.init(q).expect("validated"), false)))
        .collect();
    let basis = Register::product_inputs(c.n(), &io, &fixed);
    let mut amp = vec![C64::new(0.0, 0.0); 1 << c.n()];
    for (col, &w) in basis.cols.iter().zip(io_input) {
        for (a, &b) in amp.iter_mut().zip(col) {
            *a += w * b;
        }
    }
    let mut reg = Register {
        n: c.n(),
        cols: vec![amp],
    };
    for g in &c.cnots {
        reg.apply_cnot(g.control, g.target);
    }
    let norm0 = reg.cols[0].iter().map(|a| a.norm_sqr()).sum::<f64>();
    let mut used = Vec::new();
    let mut norm = norm0;
    let mut take =
        |q: usize, b: Basis, reg: &mut Register, used: &mut Vec<usize>| -> Result<bool> {
            let o = *outcomes
                .get(&q)
                .ok_or_else(|| Error::Simulation(format!("no outcome given for '{}'", c.id(q))))?;
            norm = reg.project(q, basis_state(b, o));
            used.push(q);
            Ok(o)
        };
    for rule in &c.rules {
        let o1 = match used.contains(&rule.qubit) {
            true => outcomes[&rule.qubit],
            false => take(rule.qubit, rule.basis, &mut reg, &mut used)?,
        };
        if let Some(k) = rule.then {
            take(
                k.qubit,
                if o1 { k.if_minus } else { k.if_plus },
                &mut reg,
                &mut used,
            )?;
        }
    }
    if let Some(q) = outcomes.keys().find(|q| !used.contains(q)) {
        return Err(Error::Simulation(format!(
            "outcome given for '{}', which this history never measures",
            c.id(*q)
        )));
    }
    let probability = norm / norm0;
    let qubits: Vec<usize> = (0..c.n()).filter(|q| !used.contains(q)).collect();
    let mut amplitudes: Vec<C64> = (0..1usize << qubits.len())
        .map(|s| {
            let idx = qubits
                .iter()
                .enumerate()
                .fold(0, |acc, (j, &q)| acc | ((s >> j) & 1) << q);
            reg.cols[0][idx]
        })
        .collect();
    if probability > PRUNE {
        let scale = C64::new(norm.sqrt(), 0.0);
        amplitudes.iter_mut().for_each(|a| *a /= scale);
    }
    Ok(BranchState {
        qubits,
        amplitudes,
        probability,
    })
}

/// Choi matrix of `ρ ↦ UρU†`.
pub fn unitary_choi(u: &DMatrix<C64>) -> DMatrix<C64> {
    choi_of([u], (u.nrows(), u.ncols()))
}

/// Largest entrywise difference.
pub fn max_diff(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn channels_equal(a: &DMatrix<C64>, b: &DMatrix<C64>, tol: f64) -> bool {
    max_diff(a, b) <= tol
}

/// Outcome-resolved equality of two instruments; a history missing on one
/// side must have a zero Choi matrix on the other.
pub fn instruments_equal(
    a: &BTreeMap<Vec<(String, bool)>, DMatrix<C64>>,
    b: &BTreeMap<Vec<(String, bool)>, DMatrix<C64>>,
    tol: f64,
) -> bool {
    let zero_or = |m: &DMatrix<C64>, other: Option<&DMatrix<C64>>| match other {
        Some(o) => channels_equal(m, o, tol),
        None => m.iter().all(|x| x.norm() <= tol),
    };
    a.iter().all(|(k, m)| zero_or(m, b.get(k))) && b.iter().all(|(k, m)| zero_or(m, a.get(k)))
}

/// Dense matrix of a Pauli operator, qubit 0 least significant.
pub fn pauli_matrix(p: &PauliOperator) -> DMatrix<C64> {
    let mut m = DMatrix::from_element(1, 1, C64::new(1.0, 0.0));
    for l in p.letters() {
        m = letter_matrix(l).kronecker(&m);
    }
    let phase = [
        C64::new(1.0, 0.0),
        C64::new(0.0, 1.0),
        C64::new(-1.0, 0.0),
        C64::new(0.0, -1.0),
    ];
    m * phase[p.phase() as usize]
}

/// Every Pauli operator on `n` qubits with phase +1.
pub fn all_paulis(n: usize) -> impl Iterator<Item = PauliOperator> {
    const L: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
    (0..1usize << (2 * n)).map(move |code| {
        let letters: Vec<Pauli> = (0..n).map(|k| L[(code >> (2 * k)) & 3]).collect();
        PauliOperator::from_letters(&letters, 0)
    })
}

/// `λ` with `b ≈ λ a`, if one exists with `|λ|` bounded away from zero.
fn proportional(a: &DMatrix<C64>, b: &DMatrix<C64>, tol: f64) -> Option<C64> {
    let aa: f64 = a.iter().map(|x| x.norm_sqr()).sum();
    if aa < PRUNE {
        return None;
    }
    let lambda = a
        .iter()
        .zip(b.iter())
        .map(|(x, y)| x.conj() * y)
        .sum::<C64>()
        / aa;
    (lambda.norm() > tol && max_diff(&(a * lambda), b) <= tol).then_some(lambda)
}

/// For each branch, the Pauli `F` on the output ports with every Kraus
/// operator proportional to `F·U`, if there is one.
pub fn infer_frames(
    sim: &Simulation,
    u: &DMatrix<C64>,
    tol: f64,
) -> Vec<(Outcomes, Option<PauliOperator>)> {
    let k = sim.outputs.len();
    sim.branches
        .iter()
        .map(|b| {
            let frame = all_paulis(k).find(|f| {
                let fu = pauli_matrix(f) * u;
                b.kraus
                    .iter()
                    .all(|kr| proportional(&fu, kr, tol).is_some())
            });
            (b.outcomes.clone(), frame)
        })
        .collect()
}

/// True iff every branch implements `U` up to a Pauli frame.
pub fn unitary_up_to_frames(sim: &Simulation, u: &DMatrix<C64>, tol: f64) -> bool {
    infer_frames(sim, u, tol).iter().all(|(_, f)| f.is_some())
}

/// The stabiliser-partition view of the CNOT network: io and rotated-init
/// teleport ancillae are quantum inputs, every other roster ancilla is a
/// classical input prepared in an eigenstate of its init basis, and no
/// qubit is measured. Returns one `2^n x 2^q` isometry per classical input.
pub fn partition_maps(c: &IcmCircuit) -> Result<Vec<DMatrix<C64>>> {
    let qubits = roster(c);
    let n = qubits.len();
    check_size(n, MAX_QUBITS)?;
    let quantum: Vec<usize> = (0..n)
        .filter(|&k| {
            let q = qubits[k];
            c.kind(q) == QubitKind::Io
                || (c.kind(q) == QubitKind::Teleport && c.rotation(q) == Rotation::Init)
        })
        .collect();
    let classical: Vec<usize> = (0..n).filter(|k| !quantum.contains(k)).collect();
    let cnots = roster_cnots(c);
    let mut maps = Vec::new();
    for s in 0..1usize << classical.len() {
        let fixed: Vec<(usize, [C64; 2])> = classical
            .iter()
            .enumerate()
            .map(|(j, &k)| {
                (
                    k,
                    basis_state(c.init(qubits[k]).unwrap_or(Basis::Z), (s >> j) & 1 == 1),
                )
            })
            .collect();
        let mut reg = Register::product_inputs(n, &quantum, &fixed);
        for g in &cnots {
            reg.apply_cnot(g.control, g.target);
        }
        let cols = reg.cols.len();
        maps.push(DMatrix::from_fn(1 << n, cols, |r, i| reg.cols[i][r]));
    }
    Ok(maps)
}

/// Per classical input, the two isometries agree up to a phase.
pub fn partitions_equal(a: &[DMatrix<C64>], b: &[DMatrix<C64>], tol: f64) -> bool {
    a.len() == b.len()
        && a.iter().zip(b).all(|(x, y)| {
            x.shape() == y.shape()
                && proportional(x, y, tol).is_some_and(|l| (l.norm() - 1.0).abs() <= tol)
        })
}

/// Dense unitary of a CNOT list on `n` qubits.
pub fn cnot_unitary(n: usize, cnots: &[crate::pauli::Cnot]) -> DMatrix<C64> {
    let ports: Vec<usize> = (0..n).collect();
    let mut reg = Register::product_inputs(n, &ports, &[]);
    for g in cnots {
        reg.apply_cnot(g.control, g.target);
    }
    DMatrix::from_fn(1 << n, 1 << n, |r, i| reg.cols[i][r])
}

/// Reads `M` as a Pauli operator with phase, if it is one.
pub fn decode_pauli(m: &DMatrix<C64>, n: usize, tol: f64) -> Option<PauliOperator> {
    let col0 = (0..m.nrows()).find(|&r| m[(r, 0)].norm() > 0.5)?;
    let mut letters = vec![Pauli::I; n];
    let c0 = m[(col0, 0)];
    for (k, l) in letters.iter_mut().enumerate() {
        let x = (col0 >> k) & 1 == 1;
        let v = m[((col0 ^ (1 << k)), 1 << k)];
        let z = (v / c0 + C64::new(1.0, 0.0)).norm() < tol;
        *l = Pauli::from_bits(x, z);
    }
    let bare = PauliOperator::from_letters(&letters, 0);
    (0..4u8)
        .map(|ph| bare.clone().with_phase(ph))
        .find(|p| max_diff(&pauli_matrix(p), m) <= tol)
}

/// Truth table computed by dense conjugation of each seed through the
/// network, with the same seeding rule as the symbolic construction.
pub fn oracle_truth_table(c: &IcmCircuit) -> Result<StabiliserTruthTable> {
    let violations = c.validate();
    if !violations.is_empty() {
        return Err(Error::Invalid(violations));
    }
    let qubits = roster(c);
    let n = qubits.len();
    check_size(n, 10)?;
    let u = cnot_unitary(n, &roster_cnots(c));
    let mut rows = Vec::new();
    for pass in [Pauli::X, Pauli::Z] {
        for (k, &q) in qubits.iter().enumerate() {
            if !seeds(c, q).contains(&pass) {
                continue;
            }
            let input = PauliOperator::single(n, k, pass)?;
            let m = &u * pauli_matrix(&input) * u.adjoint();
            let image = decode_pauli(&m, n, 1e-9)
                .ok_or_else(|| Error::Simulation(format!("image of {input} is not a Pauli")))?;
            rows.push(TableRow::from_image(input, image)?);
        }
    }
    Ok(StabiliserTruthTable::new(n, rows)?)
}
