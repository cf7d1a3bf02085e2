#![allow(dead_code)]

use icmspec::circuit::{Basis, Cnot, IcmCircuit, MeasurementRule, QubitKind};
use rand::seq::SliceRandom;
use rand::Rng;

pub const T_GATE: &str =
    "icm v1\nqubits 3\nio q1\nancilla q2 teleport init Z\nancilla q3 teleport init Z\n\
                          cnot q1 q2\ncnot q2 q3\nmeasure q2 A ? q3 X : q3 Y\nout q3\n";

pub fn fixture(name: &str) -> String {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn pick<T: Copy>(rng: &mut impl Rng, xs: &[T]) -> T {
    *xs.choose(rng).expect("non-empty")
}

const PLAIN: [Basis; 2] = [Basis::X, Basis::Z];
const ROTATED: [Basis; 2] = [Basis::Y, Basis::A];

/// Random ICM-valid circuit: `1..=max_io` io qubits, `0..=max_anc`
/// ancillae of every flavour, `0..=max_cnots` CNOTs, some conditional rules.
pub fn random_circuit(
    rng: &mut impl Rng,
    max_io: usize,
    max_anc: usize,
    max_cnots: usize,
) -> IcmCircuit {
    loop {
        let c = attempt(rng, max_io, max_anc, max_cnots);
        if c.validate().is_empty() {
            return c;
        }
    }
}

fn attempt(rng: &mut impl Rng, max_io: usize, max_anc: usize, max_cnots: usize) -> IcmCircuit {
    let mut c = IcmCircuit::new();
    let n_io = rng.gen_range(1..=max_io);
    let n_anc = rng.gen_range(0..=max_anc);
    for k in 0..n_io {
        c.add_io(format!("q{}", k + 1));
    }
    let mut measured = Vec::new();
    for k in 0..n_anc {
        let id = format!("q{}", n_io + k + 1);
        let (kind, init, meas) = match rng.gen_range(0..5) {
            0 => (
                QubitKind::Teleport,
                pick(rng, &ROTATED),
                Some(pick(rng, &PLAIN)),
            ),
            1 => (
                QubitKind::Teleport,
                pick(rng, &PLAIN),
                Some(pick(rng, &ROTATED)),
            ),
            2 => (
                QubitKind::Teleport,
                pick(rng, &PLAIN),
                Some(pick(rng, &PLAIN)),
            ),
            _ => {
                let b = pick(rng, &PLAIN);
                (QubitKind::Computational, b, rng.gen_bool(0.5).then_some(b))
            }
        };
        let q = c.add_ancilla(id, kind, init);
        if let Some(b) = meas {
            measured.push((q, b));
        }
    }
    measured.shuffle(rng);
    let mut i = 0;
    while i < measured.len() {
        let (q, b) = measured[i];
        let next = measured.get(i + 1).copied();
        match next {
            Some((q2, _)) if rng.gen_bool(0.25) && c.kind(q2) == QubitKind::Teleport => {
                let options: &[Basis] = if c.init(q2).is_some_and(Basis::is_rotated) {
                    &PLAIN
                } else {
                    &[Basis::X, Basis::Z, Basis::Y, Basis::A]
                };
                let (b2, b3) = (pick(rng, options), pick(rng, options));
                c.measure(MeasurementRule::conditional(q, b, q2, b2, b3));
                i += 2;
            }
            _ => {
                c.measure(MeasurementRule::plain(q, b));
                i += 1;
            }
        }
    }
    let n = c.n();
    if n >= 2 {
        for _ in 0..rng.gen_range(0..=max_cnots) {
            let a = rng.gen_range(0..n);
            let b = (a + rng.gen_range(1..n)) % n;
            c.cnot(a, b);
        }
    }
    c
}

fn commute(a: Cnot, b: Cnot) -> bool {
    a.control != b.target && a.target != b.control
}

/// A rewrite of the CNOT network that leaves its unitary unchanged.
pub fn equivalent_rewrite(rng: &mut impl Rng, c: &IcmCircuit) -> IcmCircuit {
    let mut out = c.clone();
    let g = &mut out.cnots;
    let n = c.n();
    for _ in 0..rng.gen_range(1..=3) {
        match rng.gen_range(0..3) {
            0 if g.len() >= 2 => {
                let i = rng.gen_range(0..g.len() - 1);
                if commute(g[i], g[i + 1]) {
                    g.swap(i, i + 1);
                }
            }
            1 if g.len() >= 2 => {
                // CNOT(a,b) CNOT(b,c) = CNOT(b,c) CNOT(a,c) CNOT(a,b)
                let i = rng.gen_range(0..g.len() - 1);
                let (x, y) = (g[i], g[i + 1]);
                if x.target == y.control && x.control != y.target {
                    let bridge = Cnot::new(x.control, y.target);
                    g.splice(i..i + 2, [y, bridge, x]);
                }
            }
            _ if n >= 2 => {
                let a = rng.gen_range(0..n);
                let b = (a + rng.gen_range(1..n)) % n;
                let i = rng.gen_range(0..=g.len());
                g.splice(i..i, [Cnot::new(a, b), Cnot::new(a, b)]);
            }
            _ => {}
        }
    }
    out
}

/// A change to the CNOT network that alters its unitary (unless the
/// network is too small to change, in which case a CNOT is added).
pub fn network_mutation(rng: &mut impl Rng, c: &IcmCircuit) -> IcmCircuit {
    let mut out = c.clone();
    let n = c.n();
    let g = &mut out.cnots;
    let kind = if g.is_empty() { 0 } else { rng.gen_range(0..3) };
    match kind {
        0 => {
            let a = rng.gen_range(0..n);
            let b = (a + rng.gen_range(1..n)) % n;
            let i = rng.gen_range(0..=g.len());
            g.insert(i, Cnot::new(a, b));
        }
        1 => {
            let i = rng.gen_range(0..g.len());
            g[i] = g[i].flipped();
        }
        _ => {
            g.remove(rng.gen_range(0..g.len()));
        }
    }
    out
}
