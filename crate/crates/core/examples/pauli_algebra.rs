//! Pauli operators, CNOT conjugation and truth-table row products.
//!
//! cargo run --example pauli_algebra

use icmspec::pauli::{Cnot, PauliOperator, TableRow};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let x: PauliOperator = "XI".parse()?;
    let y: PauliOperator = "-iYZ".parse()?;
    println!("{x} * {y} = {}", x.mul(&y)?);
    println!("{x} and {y} commute: {}", x.commutes_with(&y)?);

    let cnot = Cnot::new(0, 1);
    for p in ["XI", "IX", "ZI", "IZ", "YI"] {
        let p: PauliOperator = p.parse()?;
        println!("CNOT(1,2): {p} -> {}", p.conjugate_cnot(cnot)?);
    }

    let r1: TableRow = "+ XI -> XX".parse()?;
    let r2: TableRow = "+ IX -> IX".parse()?;
    let r3: TableRow = "+ ZI -> ZI".parse()?;
    let s1 = r1.multiply(&r2)?;
    let s2 = r1.multiply(&r3)?;
    let s3 = s2.multiply(&r2)?;
    println!("S1 = {s1}\nS2 = {s2}\nS3 = {s3}");
    println!("(S3 + S1)/√2 = {}", s3.superpose(&s1)?);
    Ok(())
}
