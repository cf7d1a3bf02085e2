//! Derive the specification of a T gate and round-trip it through text.
//!
//! cargo run --example derive_spec [circuit.icm]

use icmspec::circuit::IcmCircuit;
use icmspec::spec::Specification;

const T_GATE: &str = include_str!("../fixtures/t_gate.icm");

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => T_GATE.to_string(),
    };
    let circuit: IcmCircuit = text.parse()?;
    let spec = Specification::derive(&circuit)?;
    print!("{spec}");

    let back: Specification = spec.to_string().parse()?;
    assert_eq!(back.to_string(), spec.to_string());
    eprintln!(
        "roster {}, rows {}, rules {}",
        spec.n(),
        spec.table().len(),
        spec.rules().len()
    );
    Ok(())
}
