use std::collections::HashSet;
use std::fmt;

use super::{Basis, IcmCircuit, QubitKind, Rotation};

/// A broken ICM-form invariant, naming the offending entity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    UnknownQubit { what: String, index: usize },
    DuplicateId(String),
    CnotOnOneQubit { position: usize, id: String },
    IoWithInit(String),
    MissingInit(String),
    ComputationalRotatedInit(String),
    ComputationalBasisChange { id: String, basis: Basis },
    MeasuredTwice(String),
    SelfConditioned(String),
    Causality(String),
    IoConditional(String),
    IoRotatedMeasurement(String),
    DoublyRotated(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            UnknownQubit { what, index } => {
                write!(f, "undeclared qubit: {what} refers to index {index}")
            }
            DuplicateId(id) => write!(f, "duplicate id: '{id}' declared more than once"),
            CnotOnOneQubit { position, id } => {
                write!(f, "cnot {position} uses '{id}' as control and target")
            }
            IoWithInit(id) => write!(f, "io qubit '{id}' has an init basis"),
            MissingInit(id) => write!(f, "ancilla '{id}' has no init basis"),
            ComputationalRotatedInit(id) => {
                write!(
                    f,
                    "computational ancilla '{id}' initialised in a rotated basis"
                )
            }
            ComputationalBasisChange { id, basis } => {
                write!(
                    f,
                    "computational ancilla '{id}' measured in {basis}, not its init basis"
                )
            }
            MeasuredTwice(id) => write!(f, "'{id}' is the first qubit of more than one rule"),
            SelfConditioned(id) => write!(f, "rule on '{id}' conditions itself"),
            Causality(id) => write!(
                f,
                "causality: '{id}' is conditioned after it was already measured"
            ),
            IoConditional(id) => write!(f, "io qubit '{id}' takes part in a conditional rule"),
            IoRotatedMeasurement(id) => write!(f, "io qubit '{id}' measured in a rotated basis"),
            DoublyRotated(id) => write!(f, "teleport ancilla '{id}' is doubly rotated"),
        }
    }
}

pub(super) fn validate(c: &IcmCircuit) -> Vec<Violation> {
    let mut v = Vec::new();
    let n = c.n();
    let mut seen = HashSet::new();
    for d in &c.qubits {
        if !seen.insert(d.id.as_str()) {
            v.push(Violation::DuplicateId(d.id.clone()));
        }
    }
    let mut references_ok = true;
    let mut check = |what: String, q: usize, v: &mut Vec<Violation>| {
        if q >= n {
            v.push(Violation::UnknownQubit { what, index: q });
            references_ok = false;
        }
    };
    for (i, g) in c.cnots.iter().enumerate() {
        check(format!("cnot {}", i + 1), g.control, &mut v);
        check(format!("cnot {}", i + 1), g.target, &mut v);
    }
    for (i, r) in c.rules.iter().enumerate() {
        check(format!("rule {}", i + 1), r.qubit, &mut v);
        if let Some(k) = r.then {
            check(format!("rule {}", i + 1), k.qubit, &mut v);
        }
    }
    for &q in c.outputs.iter().flatten() {
        check("out".into(), q, &mut v);
    }
    if !references_ok {
        return v;
    }

    for (i, g) in c.cnots.iter().enumerate() {
        if g.control == g.target {
            v.push(Violation::CnotOnOneQubit {
                position: i + 1,
                id: c.id(g.control).into(),
            });
        }
    }

    for (q, d) in c.qubits.iter().enumerate() {
        let id = || d.id.clone();
        match (d.kind, d.init) {
            (QubitKind::Io, Some(_)) => v.push(Violation::IoWithInit(id())),
            (QubitKind::Io, None) => {
                if c.measurement_bases(q).iter().any(|b| b.is_rotated()) {
                    v.push(Violation::IoRotatedMeasurement(id()));
                }
            }
            (_, None) => v.push(Violation::MissingInit(id())),
            (QubitKind::Computational, Some(init)) => {
                if init.is_rotated() {
                    v.push(Violation::ComputationalRotatedInit(id()));
                }
                if let Some(&basis) = c.measurement_bases(q).iter().find(|&&b| b != init) {
                    v.push(Violation::ComputationalBasisChange { id: id(), basis });
                }
            }
            (QubitKind::Teleport, Some(_)) => {
                if c.rotation(q) == Rotation::Both {
                    v.push(Violation::DoublyRotated(id()));
                }
            }
            (QubitKind::Distillation, Some(_)) => {}
        }
    }

    let mut first = HashSet::new();
    let mut measured = HashSet::new();
    for r in &c.rules {
        if !first.insert(r.qubit) {
            v.push(Violation::MeasuredTwice(c.id(r.qubit).into()));
        }
        measured.insert(r.qubit);
        let Some(k) = r.then else { continue };
        if k.qubit == r.qubit {
            v.push(Violation::SelfConditioned(c.id(r.qubit).into()));
            continue;
        }
        if !measured.insert(k.qubit) {
            v.push(Violation::Causality(c.id(k.qubit).into()));
        }
        for q in [r.qubit, k.qubit] {
            if c.kind(q) == QubitKind::Io {
                v.push(Violation::IoConditional(c.id(q).into()));
            }
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::MeasurementRule;

    fn parse(s: &str) -> IcmCircuit {
        s.parse().unwrap()
    }

    fn t_gate() -> IcmCircuit {
        parse(
            "icm v1\nqubits 3\nio q1\nancilla q2 teleport init Z\nancilla q3 teleport init Z\n\
             cnot q1 q2\ncnot q2 q3\nmeasure q2 A ? q3 X : q3 Y\n",
        )
    }

    #[test]
    fn well_formed() {
        assert_eq!(t_gate().validate(), vec![]);
        let c = parse(
            "icm v1\nqubits 4\nio a\nancilla b computational init X\nancilla c teleport init A\n\
             ancilla d distillation init A\ncnot a b\ncnot a c\nmeasure c X\nmeasure b X\nmeasure d Y\nmeasure a Z\n",
        );
        assert_eq!(c.validate(), vec![]);
    }

    #[test]
    fn doubly_rotated() {
        let c = parse(
            "icm v1\nqubits 2\nio q1\nancilla q2 teleport init A\ncnot q1 q2\nmeasure q2 Y\n",
        );
        assert_eq!(c.validate(), vec![Violation::DoublyRotated("q2".into())]);
        let mut d = t_gate();
        d.qubits[2].init = Some(Basis::Y);
        assert_eq!(d.validate(), vec![Violation::DoublyRotated("q3".into())]);
    }

    #[test]
    fn causality() {
        let mut c = t_gate();
        c.rules.insert(0, MeasurementRule::plain(2, Basis::Z));
        assert_eq!(c.validate(), vec![Violation::Causality("q3".into())]);
        let mut c = t_gate();
        c.rules.push(MeasurementRule::conditional(
            1,
            Basis::Z,
            2,
            Basis::X,
            Basis::X,
        ));
        assert!(c
            .validate()
            .contains(&Violation::MeasuredTwice("q2".into())));
        assert!(c.validate().contains(&Violation::Causality("q3".into())));
        // a conditioned qubit may open its own later rule
        let mut c = t_gate();
        c.add_ancilla("q4", QubitKind::Teleport, Basis::Z);
        c.rules.push(MeasurementRule::conditional(
            2,
            Basis::X,
            3,
            Basis::Z,
            Basis::Z,
        ));
        assert_eq!(c.validate(), vec![]);
    }

    #[test]
    fn each_invariant_has_a_negative_case() {
        let mut c = t_gate();
        c.qubits[1].id = "q1".into();
        assert!(c.validate().contains(&Violation::DuplicateId("q1".into())));

        let mut c = t_gate();
        c.cnot(0, 7);
        assert_eq!(
            c.validate(),
            vec![Violation::UnknownQubit {
                what: "cnot 3".into(),
                index: 7
            }]
        );

        let mut c = t_gate();
        c.cnot(1, 1);
        assert_eq!(
            c.validate(),
            vec![Violation::CnotOnOneQubit {
                position: 3,
                id: "q2".into()
            }]
        );

        let mut c = t_gate();
        c.qubits[0].init = Some(Basis::Z);
        assert_eq!(c.validate(), vec![Violation::IoWithInit("q1".into())]);

        let mut c = t_gate();
        c.qubits[1].init = None;
        assert_eq!(c.validate(), vec![Violation::MissingInit("q2".into())]);

        let c = parse("icm v1\nqubits 2\nio a\nancilla b computational init Y\n");
        assert_eq!(
            c.validate(),
            vec![Violation::ComputationalRotatedInit("b".into())]
        );

        let c = parse("icm v1\nqubits 2\nio a\nancilla b computational init Z\nmeasure b X\n");
        assert_eq!(
            c.validate(),
            vec![Violation::ComputationalBasisChange {
                id: "b".into(),
                basis: Basis::X
            }]
        );

        let mut c = t_gate();
        c.rules[0].then.as_mut().unwrap().qubit = 1;
        assert_eq!(c.validate(), vec![Violation::SelfConditioned("q2".into())]);

        let mut c = t_gate();
        c.rules[0].then.as_mut().unwrap().qubit = 0;
        assert!(c
            .validate()
            .contains(&Violation::IoConditional("q1".into())));

        let c = parse("icm v1\nqubits 1\nio a\nmeasure a Y\n");
        assert_eq!(
            c.validate(),
            vec![Violation::IoRotatedMeasurement("a".into())]
        );
        let c = parse("icm v1\nqubits 1\nio a\nmeasure a X\n");
        assert_eq!(c.validate(), vec![]);
    }

    #[test]
    fn messages_name_the_entity() {
        let msg = Violation::DoublyRotated("q2".into()).to_string();
        assert!(msg.contains("doubly rotated") && msg.contains("q2"));
        assert!(Violation::Causality("q3".into())
            .to_string()
            .starts_with("causality"));
    }
}
