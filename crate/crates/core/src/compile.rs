//! Gate lists to ICM circuits through teleportation gadgets.
//!
//! Every single-qubit gadget hangs ancillae off the io wire it acts on. A
//! Z-tap is `CNOT(io, a)`, an X-tap `CNOT(a, io)`; the ancilla's init and
//! measurement bases pick the rotation and the outcome picks a Pauli
//! byproduct, which is folded into the returned [`PauliFrame`].

use crate::circuit::{Basis, IcmCircuit, MeasurementRule, QubitKind};
use crate::error::{Error, Result};
use crate::frame::{Parity, PauliFrame};
use crate::gates::{Gate, GateList};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavour {
    /// Rotations enter through Y/A-initialised ancillae.
    RotatedInit,
    /// Rotations enter through Y/A measurements.
    RotatedMeas,
}

#[derive(Debug, Clone)]
pub struct Compiled {
    pub circuit: IcmCircuit,
    /// Io qubit of each logical qubit.
    pub io: Vec<usize>,
    /// Correction to apply to the outputs; `None` when uncorrected T gadgets
    /// make the result outcome-dependent beyond a Pauli.
    pub frame: Option<PauliFrame>,
}

struct Builder {
    c: IcmCircuit,
    io: Vec<usize>,
    frame: PauliFrame,
    exact: bool,
}

impl Builder {
    fn ancilla(&mut self, init: Basis) -> usize {
        let id = format!("q{}", self.c.n() + 1);
        self.c.add_ancilla(id, QubitKind::Teleport, init)
    }

    fn z_tap(&mut self, w: usize, init: Basis, meas: Basis) -> usize {
        let a = self.ancilla(init);
        self.c.cnot(w, a);
        self.c.measure(MeasurementRule::plain(a, meas));
        a
    }

    fn x_tap(&mut self, w: usize, init: Basis, meas: Basis) -> usize {
        let a = self.ancilla(init);
        self.c.cnot(a, w);
        self.c.measure(MeasurementRule::plain(a, meas));
        a
    }

    fn z_byproduct(&mut self, q: usize, constant: bool, outcomes: &[usize]) {
        let z = &mut self.frame.z[q];
        if constant {
            z.flip();
        }
        for &a in outcomes {
            z.xor(&Parity::outcome(a));
        }
    }

    fn phase_gate(&mut self, q: usize, dagger: bool, flavour: Flavour) {
        let w = self.io[q];
        self.frame.through_phase(q);
        match flavour {
            // S Z^m; S† = Z S
            Flavour::RotatedInit => {
                let a = self.z_tap(w, Basis::Y, Basis::Z);
                self.z_byproduct(q, dagger, &[a]);
            }
            // S† Z^m
            Flavour::RotatedMeas => {
                let a = self.z_tap(w, Basis::Z, Basis::Y);
                self.z_byproduct(q, !dagger, &[a]);
            }
        }
    }

    fn t_gate(
        &mut self,
        q: usize,
        dagger: bool,
        flavour: Flavour,
        corrections: bool,
    ) -> Result<()> {
        let w = self.io[q];
        let x = &self.frame.x[q];
        if !x.is_constant() {
            return Err(Error::Unsupported(format!(
                "T gate on logical qubit {} behind an outcome-dependent X frame",
                q + 1
            )));
        }
        // T X = X T† up to phase
        let dagger = dagger ^ x.constant;
        if !corrections {
            match flavour {
                Flavour::RotatedInit => self.z_tap(w, Basis::A, Basis::Z),
                Flavour::RotatedMeas => self.z_tap(w, Basis::Z, Basis::A),
            };
            self.exact = false;
            return Ok(());
        }
        match flavour {
            Flavour::RotatedInit => {
                let a1 = self.ancilla(Basis::A);
                let a2 = self.ancilla(Basis::Y);
                self.c.cnot(w, a1);
                self.c.cnot(w, a2);
                if dagger {
                    self.c.measure(MeasurementRule::conditional(
                        a1,
                        Basis::Z,
                        a2,
                        Basis::Z,
                        Basis::X,
                    ));
                    self.z_byproduct(q, true, &[a1, a2]);
                } else {
                    self.c.measure(MeasurementRule::conditional(
                        a1,
                        Basis::Z,
                        a2,
                        Basis::X,
                        Basis::Z,
                    ));
                    self.z_byproduct(q, false, &[a2]);
                }
            }
            Flavour::RotatedMeas => {
                let a1 = self.ancilla(Basis::Z);
                let a2 = self.ancilla(Basis::Z);
                self.c.cnot(w, a1);
                self.c.cnot(a1, a2);
                self.c.measure(MeasurementRule::plain(a1, Basis::A));
                // S† T† = Z T
                let second = if dagger { Basis::X } else { Basis::Y };
                self.c.measure(MeasurementRule::plain(a2, second));
                self.z_byproduct(q, !dagger, &[a1, a2]);
            }
        }
        Ok(())
    }

    /// S V S, or S† V† S†, both equal to `Z X H` up to phase.
    fn hadamard(&mut self, q: usize, flavour: Flavour) {
        let w = self.io[q];
        let (zi, zm, xi, xm) = match flavour {
            Flavour::RotatedInit => (Basis::Y, Basis::Z, Basis::Y, Basis::X),
            Flavour::RotatedMeas => (Basis::Z, Basis::Y, Basis::X, Basis::Y),
        };
        self.frame.through_phase(q);
        let a1 = self.z_tap(w, zi, zm);
        self.z_byproduct(q, false, &[a1]);
        self.frame.through_root_x(q);
        let a2 = self.x_tap(w, xi, xm);
        self.frame.x[q].xor(&Parity::outcome(a2));
        self.frame.through_phase(q);
        let a3 = self.z_tap(w, zi, zm);
        self.z_byproduct(q, false, &[a3]);
        self.frame.x[q].flip();
        self.frame.z[q].flip();
    }
}

/// Compiles `g` into ICM form. Io qubits are named `q1..qN` after the
/// logical qubits; ancillae continue the numbering in creation order.
pub fn compile(g: &GateList, flavour: Flavour, corrections: bool) -> Result<Compiled> {
    let mut b = Builder {
        c: IcmCircuit::new(),
        io: Vec::new(),
        frame: PauliFrame::identity(g.n),
        exact: true,
    };
    for k in 0..g.n {
        let w = b.c.add_io(format!("q{}", k + 1));
        b.io.push(w);
    }
    for &gate in &g.gates {
        match gate {
            Gate::P(q) => b.phase_gate(q, false, flavour),
            Gate::Pdg(q) => b.phase_gate(q, true, flavour),
            Gate::T(q) => b.t_gate(q, false, flavour, corrections)?,
            Gate::Tdg(q) => b.t_gate(q, true, flavour, corrections)?,
            Gate::H(q) => b.hadamard(q, flavour),
            Gate::Cnot(c, t) => {
                b.c.cnot(b.io[c], b.io[t]);
                b.frame.through_cnot(c, t);
            }
            Gate::X(q) => b.frame.x[q].flip(),
            Gate::Z(q) => b.frame.z[q].flip(),
        }
    }
    b.c.outputs = Some(b.io.clone());
    let frame = b.exact.then_some(b.frame);
    Ok(Compiled {
        circuit: b.c,
        io: b.io,
        frame,
    })
}

impl Compiled {
    /// Frame lines for display, e.g. `frame q1 z = 1 + m(q2)`.
    pub fn frame_lines(&self) -> Vec<String> {
        match &self.frame {
            Some(f) => f.render(&self.circuit, &self.io),
            None => vec!["frame uncorrected".to_string()],
        }
    }
}
