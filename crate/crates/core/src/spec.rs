//! Specifications `(ST, I, O)` and the `spec v1` text format.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::circuit::text::{content_lines, header, parse_basis};
use crate::circuit::{Basis, IcmCircuit, MeasurementRule, QubitKind};
use crate::error::{Error, ParseError, Result};
use crate::pauli::TableRow;
use crate::table::{derive_truth_table, roster, StabiliserTruthTable};

/// One table column: an io port (`init == None`) or an initialised ancilla.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RosterEntry {
    pub id: String,
    pub init: Option<Basis>,
}

impl RosterEntry {
    pub fn is_io(&self) -> bool {
        self.init.is_none()
    }
}

/// A measurement rule addressed by qubit name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedRule {
    pub qubit: String,
    pub basis: Basis,
    /// `(q2, B2, B3)`.
    pub then: Option<(String, Basis, Basis)>,
}

impl NamedRule {
    pub fn from_rule(c: &IcmCircuit, r: &MeasurementRule) -> Self {
        Self {
            qubit: c.id(r.qubit).to_string(),
            basis: r.basis,
            then: r
                .then
                .map(|k| (c.id(k.qubit).to_string(), k.if_plus, k.if_minus)),
        }
    }

    pub fn qubits(&self) -> impl Iterator<Item = &str> {
        std::iter::once(self.qubit.as_str()).chain(self.then.as_ref().map(|t| t.0.as_str()))
    }
}

impl fmt::Display for NamedRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "measure {} {}", self.qubit, self.basis)?;
        if let Some((q2, b2, b3)) = &self.then {
            write!(f, " ? {q2} {b2} : {q2} {b3}")?;
        }
        Ok(())
    }
}

/// Ancilla rules of `c` that enter a specification: both qubits must be
/// non-distillation ancillae.
pub fn ancilla_rules(c: &IcmCircuit) -> Vec<NamedRule> {
    let counts = |q: usize| c.kind(q).is_ancilla() && c.kind(q) != QubitKind::Distillation;
    c.rules
        .iter()
        .filter(|r| counts(r.qubit) && r.then.is_none_or(|k| counts(k.qubit)))
        .map(|r| NamedRule::from_rule(c, r))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Specification {
    roster: Vec<RosterEntry>,
    table: StabiliserTruthTable,
    rules: Vec<NamedRule>,
}

impl Specification {
    /// Checks the tuple invariants.
    pub fn new(
        roster: Vec<RosterEntry>,
        table: StabiliserTruthTable,
        rules: Vec<NamedRule>,
    ) -> Result<Self> {
        let err = |m: String| Err(Error::Spec(m));
        if table.n() != roster.len() {
            return err(format!(
                "table has {} columns but the roster has {} qubits",
                table.n(),
                roster.len()
            ));
        }
        let mut kinds = HashMap::new();
        for e in &roster {
            if kinds.insert(e.id.as_str(), e.is_io()).is_some() {
                return err(format!("qubit '{}' listed twice", e.id));
            }
        }
        for r in &rules {
            for q in r.qubits() {
                match kinds.get(q) {
                    None => return err(format!("rule names unknown qubit '{q}'")),
                    Some(true) => {
                        return err(format!(
                            "rule names io qubit '{q}'; O refers only to ancillae"
                        ))
                    }
                    Some(false) => {}
                }
            }
        }
        Ok(Self {
            roster,
            table,
            rules,
        })
    }

    /// `(ST, I, O)` of a valid circuit.
    pub fn derive(c: &IcmCircuit) -> Result<Self> {
        let table = derive_truth_table(c)?;
        let roster = roster(c)
            .into_iter()
            .map(|q| RosterEntry {
                id: c.id(q).to_string(),
                init: c.init(q),
            })
            .collect();
        Self::new(roster, table, ancilla_rules(c))
    }

    pub fn n(&self) -> usize {
        self.roster.len()
    }

    pub fn roster(&self) -> &[RosterEntry] {
        &self.roster
    }

    pub fn io_ids(&self) -> Vec<&str> {
        self.roster
            .iter()
            .filter(|e| e.is_io())
            .map(|e| e.id.as_str())
            .collect()
    }

    /// `I`: ancilla id to init basis, in roster order.
    pub fn inits(&self) -> Vec<(&str, Basis)> {
        self.roster
            .iter()
            .filter_map(|e| Some((e.id.as_str(), e.init?)))
            .collect()
    }

    pub fn table(&self) -> &StabiliserTruthTable {
        &self.table
    }

    /// `O`, in measurement order.
    pub fn rules(&self) -> &[NamedRule] {
        &self.rules
    }

    pub fn rules_mut(&mut self) -> &mut Vec<NamedRule> {
        &mut self.rules
    }
}

impl fmt::Display for Specification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "spec v1\nqubits {}", self.n())?;
        let mut i = 0;
        while i < self.roster.len() {
            match self.roster[i].init {
                Some(b) => {
                    writeln!(f, "init {} {b}", self.roster[i].id)?;
                    i += 1;
                }
                None => {
                    let run: Vec<&str> = self.roster[i..]
                        .iter()
                        .take_while(|e| e.is_io())
                        .map(|e| e.id.as_str())
                        .collect();
                    writeln!(f, "io {}", run.join(" "))?;
                    i += run.len();
                }
            }
        }
        writeln!(f, "table")?;
        write!(f, "{}", self.table)?;
        writeln!(f, "end")?;
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

fn kind_of(roster: &[RosterEntry], id: &str) -> Option<bool> {
    roster.iter().find(|e| e.id == id).map(|e| e.is_io())
}

impl FromStr for Specification {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (qline, n) = header(&mut lines, "spec")?;
        let mut roster: Vec<RosterEntry> = Vec::new();
        let mut rows = Vec::new();
        let mut rules = Vec::new();
        let mut table_seen = false;
        let mut in_table = false;
        let mut last = qline;
        for (l, t) in lines {
            last = l;
            let err = |m: String| Error::Parse(ParseError::new(l, m));
            if in_table {
                if t == ["end"] {
                    in_table = false;
                    continue;
                }
                let row: TableRow = t.join(" ").parse().map_err(err)?;
                if row.n() != n {
                    return Err(err(format!("row has {} columns, expected {n}", row.n())));
                }
                rows.push(row);
                continue;
            }
            match t.as_slice() {
                ["io", ids @ ..] if !ids.is_empty() && !table_seen => {
                    for id in ids {
                        if kind_of(&roster, id).is_some() {
                            return Err(err(format!("qubit '{id}' listed twice")));
                        }
                        roster.push(RosterEntry {
                            id: id.to_string(),
                            init: None,
                        });
                    }
                }
                ["init", id, b] if !table_seen => {
                    match kind_of(&roster, id) {
                        Some(true) => {
                            return Err(err(format!(
                                "init names io qubit '{id}'; I refers only to ancillae"
                            )))
                        }
                        Some(false) => return Err(err(format!("qubit '{id}' listed twice"))),
                        None => {}
                    }
                    roster.push(RosterEntry {
                        id: id.to_string(),
                        init: Some(parse_basis(l, b)?),
                    });
                }
                ["table"] if !table_seen => {
                    if roster.len() != n {
                        return Err(Error::Parse(ParseError::new(
                            qline,
                            format!("declared {n} qubits but the roster lists {}", roster.len()),
                        )));
                    }
                    table_seen = true;
                    in_table = true;
                }
                ["measure", q, b] if table_seen => {
                    rules.push(NamedRule {
                        qubit: q.to_string(),
                        basis: parse_basis(l, b)?,
                        then: None,
                    });
                }
                ["measure", q, b, "?", q2, b2, ":", q2b, b3] if table_seen => {
                    if q2 != q2b {
                        return Err(err(format!(
                            "conditional names two qubits '{q2}' and '{q2b}'"
                        )));
                    }
                    rules.push(NamedRule {
                        qubit: q.to_string(),
                        basis: parse_basis(l, b)?,
                        then: Some((q2.to_string(), parse_basis(l, b2)?, parse_basis(l, b3)?)),
                    });
                }
                _ => return Err(err(format!("unexpected line '{}'", t.join(" ")))),
            }
            if t[0] == "measure" {
                for q in rules.last().expect("just pushed").qubits() {
                    match kind_of(&roster, q) {
                        None => return Err(err(format!("rule names unknown qubit '{q}'"))),
                        Some(true) => {
                            return Err(err(format!(
                                "rule names io qubit '{q}'; O refers only to ancillae"
                            )))
                        }
                        Some(false) => {}
                    }
                }
            }
        }
        if !table_seen || in_table {
            return Err(Error::Parse(ParseError::new(
                last,
                "missing 'table' ... 'end' block",
            )));
        }
        let table = StabiliserTruthTable::new(n, rows)?;
        Self::new(roster, table, rules)
    }
}
