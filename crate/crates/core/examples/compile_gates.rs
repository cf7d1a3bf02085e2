//! Compile a Clifford+T gate list into both ICM flavours.
//!
//! cargo run --example compile_gates [list.gates]

use icmspec::compile::{compile, Flavour};
use icmspec::gates::GateList;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => include_str!("../fixtures/mixed.gates").to_string(),
    };
    let gates: GateList = text.parse()?;
    for flavour in [Flavour::RotatedInit, Flavour::RotatedMeas] {
        let out = compile(&gates, flavour, true)?;
        println!(
            "# {flavour:?}: {} ancillae, {} CNOTs",
            out.circuit.ancillae().len(),
            out.circuit.cnots.len()
        );
        print!("{}", out.circuit);
        for line in out.frame_lines() {
            println!("# {line}");
        }
        println!();
    }

    let t: GateList = "gates v1\nqubits 1\nt 1\n".parse()?;
    let bare = compile(&t, Flavour::RotatedInit, false)?;
    println!("# uncorrected T\n{}", bare.circuit);
    Ok(())
}
