//! Dense simulation: Choi matrices, per-outcome instruments and a single
//! measurement history.
//!
//! cargo run --example oracle_choi

use std::collections::BTreeMap;

use icmspec::circuit::IcmCircuit;
use icmspec::compile::{compile, Flavour};
use icmspec::gates::GateList;
use icmspec::oracle::{
    channels_equal, max_diff, pauli_matrix, run_branch, simulate, unitary_choi, C64,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t: GateList = "gates v1\nqubits 1\nt 1\n".parse()?;
    let out = compile(&t, Flavour::RotatedInit, true)?;
    let frame = out.frame.clone().expect("corrected");
    let sim = simulate(&out.circuit)?;
    println!("{} branches", sim.branches.len());
    let fixed = sim.corrected(|b| frame.evaluate(|q| b.outcome(q)));
    let ideal = unitary_choi(&t.unitary());
    println!(
        "frame-corrected Choi equals T: {}",
        channels_equal(&fixed.choi(), &ideal, 1e-9)
    );
    println!(
        "without the frame the difference is {:.3}",
        max_diff(&sim.choi(), &ideal)
    );

    // Two ancillae and one CNOT make a Bell pair.
    let bell: IcmCircuit =
        "icm v1\nqubits 2\nancilla a teleport init X\nancilla b teleport init Z\ncnot a b\n"
            .parse()?;
    let state = run_branch(&bell, &[C64::new(1.0, 0.0)], &BTreeMap::new())?;
    let v = nalgebra::DVector::from_vec(state.amplitudes);
    for p in ["XX", "ZZ", "XZ"] {
        let m = pauli_matrix(&p.parse()?);
        let e = (v.adjoint() * &m * &v)[(0, 0)].re;
        println!("<{p}> = {e:+.3}");
    }
    Ok(())
}
