//! Rewrites between rotated-initialisation and rotated-measurement form.

use crate::circuit::{Basis, Cnot, IcmCircuit, MeasurementRule, QubitKind};
use crate::error::{Error, Result};

fn require_valid(c: &IcmCircuit) -> Result<()> {
    let v = c.validate();
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::Invalid(v))
    }
}

/// Rules whose conditional branch measures in one basis either way are
/// really two plain measurements.
fn split_trivial_conditionals(rules: &[MeasurementRule]) -> Vec<MeasurementRule> {
    let mut out = Vec::new();
    for r in rules {
        match r.then {
            Some(k) if k.if_plus == k.if_minus => {
                out.push(MeasurementRule::plain(r.qubit, r.basis));
                out.push(MeasurementRule::plain(k.qubit, k.if_plus));
            }
            _ => out.push(*r),
        }
    }
    out
}

/// Exchanges the roles of initialisation and measurement.
///
/// The CNOT list is replayed in reverse temporal order with each gate's
/// orientation kept, every measured teleportation ancilla swaps its init
/// basis with its measurement basis, and the rule order is reversed. Io,
/// computational and distillation qubits are left alone. Rules whose
/// branches differ cannot be dualised: there is no conditional
/// initialisation.
pub fn dual_rewrite(c: &IcmCircuit) -> Result<IcmCircuit> {
    require_valid(c)?;
    let rules = split_trivial_conditionals(&c.rules);
    let mut out = c.clone();
    out.cnots = c.cnots.iter().rev().copied().collect();
    let mut new_rules = Vec::new();
    for r in rules.iter().rev() {
        if let Some(k) = r.then {
            return Err(Error::Transform(format!(
                "rule on '{}' conditions '{}' on its outcome; a conditional measurement has no dual initialisation",
                c.id(r.qubit),
                c.id(k.qubit)
            )));
        }
        let q = r.qubit;
        if c.kind(q) != QubitKind::Teleport {
            new_rules.push(*r);
            continue;
        }
        let init = c.init(q).expect("validated ancilla");
        out.qubits[q].init = Some(r.basis);
        new_rules.push(MeasurementRule::plain(q, init));
    }
    out.rules = new_rules;
    Ok(out)
}

fn fresh_id(c: &IcmCircuit) -> String {
    (c.n() + 1..)
        .map(|k| format!("q{k}"))
        .find(|id| c.index_of(id).is_none())
        .expect("unbounded range")
}

/// Moves the rotation of a rotated-measurement teleportation ancilla `q`
/// onto a new rotated-initialisation ancilla `r` joined by `CNOT(q, r)`.
///
/// For an A measurement, `r` starts in A, is measured in Z, and its outcome
/// selects Y (+1) or X (-1) for `q`; the outcome statistics of `q` are
/// unchanged. For a Y measurement, `r` starts in Y and is measured in Z
/// before `q` is measured in X; `q`'s outcome is then flipped whenever `r`
/// reads +1, which a frame absorbs.
pub fn demote_rotated_measurement(c: &IcmCircuit, q_id: &str) -> Result<IcmCircuit> {
    require_valid(c)?;
    let q = c
        .index_of(q_id)
        .ok_or_else(|| Error::Transform(format!("no qubit named '{q_id}'")))?;
    if c.kind(q) != QubitKind::Teleport {
        return Err(Error::Transform(format!(
            "'{q_id}' is not a teleportation ancilla"
        )));
    }
    let mut rules = split_trivial_conditionals(&c.rules);
    let pos = rules.iter().position(|r| r.qubit == q);
    let conditioned = rules.iter().any(|r| r.then.is_some_and(|k| k.qubit == q));
    let basis = match pos.map(|i| rules[i]) {
        Some(MeasurementRule {
            basis, then: None, ..
        }) if !conditioned && basis.is_rotated() => basis,
        Some(MeasurementRule { then: Some(_), .. }) | None if conditioned => {
            return Err(Error::Transform(format!(
                "'{q_id}' is measured in an outcome-dependent basis"
            )));
        }
        Some(MeasurementRule {
            then: Some(_),
            basis,
            ..
        }) if basis.is_rotated() => {
            return Err(Error::Transform(format!(
                "'{q_id}' conditions another measurement; its outcome cannot be re-routed"
            )));
        }
        _ => {
            return Err(Error::Transform(format!(
                "'{q_id}' is not measured in a rotated basis"
            )));
        }
    };
    let i = pos.expect("matched above");

    let mut out = c.clone();
    let r = out.add_ancilla(fresh_id(c), QubitKind::Teleport, basis);
    out.cnots.push(Cnot::new(q, r));
    let replacement = match basis {
        Basis::A => vec![MeasurementRule::conditional(
            r,
            Basis::Z,
            q,
            Basis::Y,
            Basis::X,
        )],
        _ => vec![
            MeasurementRule::plain(r, Basis::Z),
            MeasurementRule::plain(q, Basis::X),
        ],
    };
    rules.splice(i..=i, replacement);
    out.rules = rules;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compile::{compile, Flavour};
    use crate::gates::GateList;
    use crate::oracle::{channels_equal, simulate, unitary_up_to_frames};

    fn gates(text: &str) -> GateList {
        format!("gates v1\nqubits 1\n{text}\n").parse().unwrap()
    }

    #[test]
    fn dual_maps_p_between_flavours() {
        let init = compile(&gates("p 1"), Flavour::RotatedInit, true)
            .unwrap()
            .circuit;
        let meas = compile(&gates("p 1"), Flavour::RotatedMeas, true)
            .unwrap()
            .circuit;
        assert_eq!(dual_rewrite(&init).unwrap(), meas);
        assert_eq!(dual_rewrite(&meas).unwrap(), init);
    }

    #[test]
    fn dual_is_an_involution_without_conditionals() {
        for text in ["p 1", "pdg 1", "h 1", "h 1\np 1", "t 1"] {
            let c = compile(&gates(text), Flavour::RotatedMeas, true)
                .unwrap()
                .circuit;
            let d = dual_rewrite(&c).unwrap();
            assert!(d.validate().is_empty());
            assert_eq!(dual_rewrite(&d).unwrap(), c, "{text}");
        }
    }

    #[test]
    fn dual_rejects_genuine_conditionals() {
        let c = compile(&gates("t 1"), Flavour::RotatedInit, true)
            .unwrap()
            .circuit;
        assert!(matches!(dual_rewrite(&c), Err(Error::Transform(_))));
    }

    #[test]
    fn dual_preserves_clifford_gadgets_up_to_frames() {
        for text in ["p 1", "pdg 1", "h 1"] {
            let g = gates(text);
            for flavour in [Flavour::RotatedInit, Flavour::RotatedMeas] {
                let c = compile(&g, flavour, true).unwrap().circuit;
                let sim = simulate(&dual_rewrite(&c).unwrap()).unwrap();
                assert!(
                    unitary_up_to_frames(&sim, &g.unitary(), 1e-9),
                    "{text} {flavour:?}"
                );
            }
        }
    }

    #[test]
    fn demoting_an_a_measurement_is_exact() {
        let c = compile(&gates("t 1"), Flavour::RotatedMeas, true)
            .unwrap()
            .circuit;
        let d = demote_rotated_measurement(&c, "q2").unwrap();
        assert!(d.validate().is_empty());
        assert_eq!((d.n(), d.cnots.len()), (c.n() + 1, c.cnots.len() + 1));
        assert_eq!(d.rule_text(&d.rules[0]), "measure q4 Z ? q2 Y : q2 X");
        let (a, b) = (simulate(&c).unwrap(), simulate(&d).unwrap());
        assert!(channels_equal(&a.choi(), &b.choi(), 1e-9));
    }

    #[test]
    fn demoting_a_y_measurement_keeps_the_channel_up_to_frames() {
        let g = gates("p 1");
        let c = compile(&g, Flavour::RotatedMeas, true).unwrap().circuit;
        let d = demote_rotated_measurement(&c, "q2").unwrap();
        assert_eq!(d.rules.len(), 2);
        assert!(d.measurement_bases(1).iter().all(|b| !b.is_rotated()));
        assert!(unitary_up_to_frames(
            &simulate(&d).unwrap(),
            &g.unitary(),
            1e-9
        ));
    }

    #[test]
    fn demotion_errors() {
        let c = compile(&gates("p 1"), Flavour::RotatedInit, true)
            .unwrap()
            .circuit;
        assert!(demote_rotated_measurement(&c, "q2").is_err());
        assert!(demote_rotated_measurement(&c, "q1").is_err());
        assert!(demote_rotated_measurement(&c, "nope").is_err());
        let t: IcmCircuit =
            "icm v1\nqubits 3\nio q1\nancilla q2 teleport init Z\nancilla q3 teleport init Z\n\
                             cnot q1 q2\ncnot q2 q3\nmeasure q2 A ? q3 X : q3 Y\n"
                .parse()
                .unwrap();
        assert!(demote_rotated_measurement(&t, "q3").is_err());
        assert!(demote_rotated_measurement(&t, "q2").is_err());
    }
}
