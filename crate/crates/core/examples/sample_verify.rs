//! Sampled verification: run each specification row on a simulated
//! candidate and count how often the output stabiliser holds.
//!
//! cargo run --example sample_verify [shots] [seed]

use icmspec::circuit::IcmCircuit;
use icmspec::oracle::sample::sample_verify;
use icmspec::spec::Specification;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let shots = args.next().map(|s| s.parse()).transpose()?.unwrap_or(100);
    let seed = args.next().map(|s| s.parse()).transpose()?.unwrap_or(0);

    let reference: IcmCircuit = include_str!("../fixtures/t_gate.icm").parse()?;
    let spec = Specification::derive(&reference)?;
    for (name, text) in [
        ("variant", include_str!("../fixtures/t_variant.icm")),
        ("mutated", include_str!("../fixtures/t_mutated.icm")),
    ] {
        let c: IcmCircuit = text.parse()?;
        println!("== {name}\n{}", sample_verify(&c, &spec, shots, seed)?);
    }
    Ok(())
}
