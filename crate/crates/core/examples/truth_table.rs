//! Stabiliser truth tables of CNOT networks, and canonical comparison.
//!
//! cargo run --example truth_table

use icmspec::circuit::{Basis, IcmCircuit, MeasurementRule, QubitKind};
use icmspec::table::derive_truth_table;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cnot: IcmCircuit = "icm v1\nqubits 2\nio c\nio t\ncnot c t\n".parse()?;
    println!("CNOT:\n{}", derive_truth_table(&cnot)?);

    // Built in code rather than parsed: one io qubit, a rotated-init
    // ancilla (two rows), a rotated-measurement ancilla (one row) and a
    // computational ancilla (one row).
    let mut c = IcmCircuit::new();
    let w = c.add_io("w");
    let a = c.add_ancilla("a", QubitKind::Teleport, Basis::A);
    let m = c.add_ancilla("m", QubitKind::Teleport, Basis::Z);
    let k = c.add_ancilla("k", QubitKind::Computational, Basis::X);
    c.cnot(w, a);
    c.cnot(w, m);
    c.cnot(k, w);
    c.measure(MeasurementRule::plain(a, Basis::Z));
    c.measure(MeasurementRule::plain(m, Basis::Y));
    let table = derive_truth_table(&c)?;
    println!(
        "mixed ancillae ({} rows for {} qubits):\n{table}",
        table.len(),
        c.n()
    );

    // Same network written differently: CNOTs on disjoint pairs commute.
    let mut swapped = c.clone();
    swapped.cnots.swap(0, 1);
    let other = derive_truth_table(&swapped)?;
    println!(
        "reordered network spans the same table: {}",
        table.equivalent(&other)?
    );
    println!("canonical form:\n{}", table.canonicalize()?);
    Ok(())
}
