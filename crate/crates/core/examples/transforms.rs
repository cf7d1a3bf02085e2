//! Dual rewrite and rotated-measurement demotion, checked by the oracle.
//!
//! cargo run --example transforms

use icmspec::compile::{compile, Flavour};
use icmspec::gates::GateList;
use icmspec::oracle::{simulate, unitary_up_to_frames};
use icmspec::transform::{demote_rotated_measurement, dual_rewrite};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p: GateList = "gates v1\nqubits 1\np 1\n".parse()?;
    let init = compile(&p, Flavour::RotatedInit, true)?.circuit;
    let dual = dual_rewrite(&init)?;
    println!("P, rotated initialisation:\n{init}\ndual:\n{dual}");
    println!(
        "dual still implements P: {}",
        unitary_up_to_frames(&simulate(&dual)?, &p.unitary(), 1e-9)
    );
    assert_eq!(dual_rewrite(&dual)?, init);

    let t: GateList = "gates v1\nqubits 1\nt 1\n".parse()?;
    let meas = compile(&t, Flavour::RotatedMeas, true)?.circuit;
    let demoted = demote_rotated_measurement(&meas, "q2")?;
    println!("\nT, rotated measurement:\n{meas}\nq2 demoted:\n{demoted}");
    println!(
        "demoted circuit still implements T: {}",
        unitary_up_to_frames(&simulate(&demoted)?, &t.unitary(), 1e-9)
    );

    match dual_rewrite(&compile(&t, Flavour::RotatedInit, true)?.circuit) {
        Ok(_) => println!("\nunexpected: conditional T gadget dualised"),
        Err(e) => println!("\nrotated-init T has no dual: {e}"),
    }
    Ok(())
}
