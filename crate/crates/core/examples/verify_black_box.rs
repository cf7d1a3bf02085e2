//! Verify candidate implementations of the T gate against its spec.
//!
//! cargo run --example verify_black_box

use icmspec::circuit::{Basis, IcmCircuit};
use icmspec::pauli::Cnot;
use icmspec::spec::Specification;
use icmspec::verify::verify;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let reference: IcmCircuit = include_str!("../fixtures/t_gate.icm").parse()?;
    let spec = Specification::derive(&reference)?;

    let mut candidates = vec![
        (
            "commuted CNOTs",
            include_str!("../fixtures/t_variant.icm").parse::<IcmCircuit>()?,
        ),
        (
            "extra CNOT",
            include_str!("../fixtures/t_mutated.icm").parse()?,
        ),
    ];
    let mut flipped = reference.clone();
    flipped.cnots[1] = Cnot::new(2, 1);
    candidates.push(("flipped CNOT", flipped));
    let mut init = reference.clone();
    init.qubits[2].init = Some(Basis::X);
    candidates.push(("q3 initialised in X", init));
    let mut rules = reference.clone();
    if let Some(k) = rules.rules[0].then.as_mut() {
        std::mem::swap(&mut k.if_plus, &mut k.if_minus);
    }
    candidates.push(("branches swapped", rules));

    for (name, c) in &candidates {
        let report = verify(c, &spec);
        println!("== {name}\n{report}");
    }
    Ok(())
}
