//! Black-box verification of a candidate circuit against a specification.

use std::collections::HashMap;
use std::fmt;

use crate::circuit::{IcmCircuit, Violation};
use crate::pauli::{PauliOperator, TableRow};
use crate::spec::{ancilla_rules, NamedRule, Specification};
use crate::table::{roster, roster_cnots};

/// A specification row the candidate does not reproduce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowFailure {
    /// 0-based row index in the specification.
    pub index: usize,
    pub expected: TableRow,
    /// The candidate's image of the same input, sign folded into the phase.
    pub actual: PauliOperator,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    /// ICM-form violations of the candidate.
    pub violations: Vec<Violation>,
    /// Port-matching problems; non-empty means criterion 2 was not evaluated.
    pub roster_issues: Vec<String>,
    /// Criterion 1: ancillae whose init differs from `I`, or that are missing
    /// on one side.
    pub init_mismatches: Vec<String>,
    pub rows_checked: usize,
    /// Criterion 2 failures.
    pub row_failures: Vec<RowFailure>,
    /// Criterion 3: first index where the candidate's rules and `O` differ.
    pub rule_divergence: Option<usize>,
}

impl VerificationReport {
    pub fn criterion1(&self) -> bool {
        self.init_mismatches.is_empty()
    }

    pub fn criterion2(&self) -> bool {
        self.roster_issues.is_empty() && self.row_failures.is_empty()
    }

    pub fn criterion3(&self) -> bool {
        self.rule_divergence.is_none()
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.criterion1() && self.criterion2() && self.criterion3()
    }

    /// Stable `key: value` pairs for machine-readable output.
    pub fn records(&self) -> Vec<(&'static str, String)> {
        let verdict = |b: bool| if b { "pass" } else { "fail" }.to_string();
        let mut out = vec![
            ("valid", verdict(self.violations.is_empty())),
            ("roster", verdict(self.roster_issues.is_empty())),
            ("criterion1", verdict(self.criterion1())),
            ("criterion2", verdict(self.criterion2())),
            ("criterion3", verdict(self.criterion3())),
            ("rows_checked", self.rows_checked.to_string()),
            ("rows_failed", self.row_failures.len().to_string()),
            (
                "rule_divergence",
                self.rule_divergence
                    .map_or("none".into(), |i| i.to_string()),
            ),
        ];
        out.push(("overall", verdict(self.passed())));
        out
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = |b: bool| if b { "PASS" } else { "FAIL" };
        for v in &self.violations {
            writeln!(f, "invalid: {v}")?;
        }
        for r in &self.roster_issues {
            writeln!(f, "roster: {r}")?;
        }
        writeln!(
            f,
            "criterion 1 (initialisations): {}",
            verdict(self.criterion1())
        )?;
        for m in &self.init_mismatches {
            writeln!(f, "  {m}")?;
        }
        write!(
            f,
            "criterion 2 (truth table): {}",
            verdict(self.criterion2())
        )?;
        if self.roster_issues.is_empty() {
            writeln!(
                f,
                " ({}/{} rows)",
                self.rows_checked - self.row_failures.len(),
                self.rows_checked
            )?;
        } else {
            writeln!(f, " (not evaluated)")?;
        }
        for r in &self.row_failures {
            writeln!(
                f,
                "  row {}: {} expected {} got {}",
                r.index,
                r.expected.input(),
                r.expected.signed_output(),
                r.actual
            )?;
        }
        write!(
            f,
            "criterion 3 (measurements): {}",
            verdict(self.criterion3())
        )?;
        match self.rule_divergence {
            Some(i) => writeln!(f, " (first difference at rule {i})")?,
            None => writeln!(f)?,
        }
        writeln!(f, "overall: {}", verdict(self.passed()))
    }
}

/// First index at which two rule lists differ, if any.
pub fn first_divergence(a: &[NamedRule], b: &[NamedRule]) -> Option<usize> {
    match a.iter().zip(b).position(|(x, y)| x != y) {
        Some(i) => Some(i),
        None if a.len() != b.len() => Some(a.len().min(b.len())),
        None => None,
    }
}

/// Ancilla initialisations of `candidate` that disagree with `spec`, by name.
pub fn init_mismatches(candidate: &IcmCircuit, spec: &Specification) -> Vec<String> {
    let mut init_mismatches = Vec::new();
    let cand_roster = roster(candidate);
    let column_of: HashMap<&str, usize> =
        cand_roster.iter().map(|&q| (candidate.id(q), q)).collect();
    let spec_inits: HashMap<&str, _> = spec.inits().into_iter().collect();
    for &q in &cand_roster {
        let id = candidate.id(q);
        let Some(b) = candidate.init(q).filter(|_| candidate.kind(q).is_ancilla()) else {
            continue;
        };
        match spec_inits.get(id) {
            Some(&want) if want == b => {}
            Some(&want) => init_mismatches.push(format!(
                "'{id}' initialised in {b}, specification says {want}"
            )),
            None => init_mismatches.push(format!(
                "'{id}' is not in the specification's initialisations"
            )),
        }
    }
    for (id, _) in spec.inits() {
        let present = column_of
            .get(id)
            .is_some_and(|&q| candidate.kind(q).is_ancilla());
        if !present {
            init_mismatches.push(format!("'{id}' has no matching ancilla in the candidate"));
        }
    }
    init_mismatches
}

/// Checks the three criteria. Every criterion is evaluated even when the
/// candidate is not ICM-valid; the verdict then fails on the violations.
pub fn verify(candidate: &IcmCircuit, spec: &Specification) -> VerificationReport {
    let violations = candidate.validate();
    let cand_roster = roster(candidate);

    let mut roster_issues = Vec::new();
    let mut column_of = HashMap::new();
    for (k, &q) in cand_roster.iter().enumerate() {
        column_of.insert(candidate.id(q), (k, q));
    }
    if cand_roster.len() != spec.n() {
        roster_issues.push(format!(
            "candidate has {} qubits, specification {}",
            cand_roster.len(),
            spec.n()
        ));
    }
    let mut perm = Vec::with_capacity(spec.n());
    for e in spec.roster() {
        match column_of.get(e.id.as_str()) {
            None => roster_issues.push(format!("'{}' missing from candidate", e.id)),
            Some(&(k, q)) => {
                if candidate.kind(q).is_ancilla() == e.is_io() {
                    let want = if e.is_io() { "io" } else { "an ancilla" };
                    roster_issues.push(format!("'{}' should be {want}", e.id));
                }
                perm.push(k);
            }
        }
    }

    let init_mismatches = init_mismatches(candidate, spec);

    let mut rows_checked = 0;
    let mut row_failures = Vec::new();
    if roster_issues.is_empty() {
        let cnots = roster_cnots(candidate);
        let n = spec.n();
        let to_candidate = |p: &PauliOperator| {
            let mut out = PauliOperator::identity(n).with_phase(p.phase());
            for (k, letter) in p.letters().enumerate() {
                out.set(perm[k], letter).expect("perm in range");
            }
            out
        };
        let from_candidate = |p: &PauliOperator| {
            let mut out = PauliOperator::identity(n).with_phase(p.phase());
            for (k, &c) in perm.iter().enumerate() {
                out.set(k, p.get(c)).expect("perm in range");
            }
            out
        };
        for (index, row) in spec.table().rows().iter().enumerate() {
            rows_checked += 1;
            let image = to_candidate(row.input()).conjugate_circuit(&cnots);
            match image {
                Ok(img) => {
                    let actual = from_candidate(&img);
                    if actual != row.signed_output() {
                        row_failures.push(RowFailure {
                            index,
                            expected: row.clone(),
                            actual,
                        });
                    }
                }
                Err(_) => row_failures.push(RowFailure {
                    index,
                    expected: row.clone(),
                    actual: PauliOperator::identity(n),
                }),
            }
        }
    }

    let rule_divergence = first_divergence(&ancilla_rules(candidate), spec.rules());

    VerificationReport {
        violations,
        roster_issues,
        init_mismatches,
        rows_checked,
        row_failures,
        rule_divergence,
    }
}

/// Outcome of comparing two specifications.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecDiff {
    pub roster_issues: Vec<String>,
    pub init_differences: Vec<String>,
    pub tables_equal: bool,
    pub rule_divergence: Option<usize>,
}

impl SpecDiff {
    pub fn equal(&self) -> bool {
        self.roster_issues.is_empty()
            && self.init_differences.is_empty()
            && self.tables_equal
            && self.rule_divergence.is_none()
    }
}

impl fmt::Display for SpecDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.roster_issues {
            writeln!(f, "roster: {r}")?;
        }
        for d in &self.init_differences {
            writeln!(f, "init: {d}")?;
        }
        writeln!(
            f,
            "table: {}",
            if self.tables_equal {
                "equal"
            } else {
                "different"
            }
        )?;
        if let Some(i) = self.rule_divergence {
            writeln!(f, "measurements: differ at rule {i}")?;
        }
        writeln!(
            f,
            "{}",
            if self.equal() {
                "equivalent"
            } else {
                "not equivalent"
            }
        )
    }
}

/// Equality of `I` and `O` plus span equality of the truth tables, with
/// columns matched by name.
pub fn spec_equiv(a: &Specification, b: &Specification) -> SpecDiff {
    let mut roster_issues = Vec::new();
    let b_index: HashMap<&str, usize> = b
        .roster()
        .iter()
        .enumerate()
        .map(|(k, e)| (e.id.as_str(), k))
        .collect();
    let mut perm = Vec::new();
    for e in a.roster() {
        match b_index.get(e.id.as_str()) {
            Some(&k) if b.roster()[k].is_io() == e.is_io() => perm.push(k),
            Some(_) => roster_issues.push(format!("'{}' is io on one side only", e.id)),
            None => roster_issues.push(format!("'{}' missing from the second specification", e.id)),
        }
    }
    if a.n() != b.n() {
        roster_issues.push(format!("{} qubits vs {}", a.n(), b.n()));
    }

    let a_inits: HashMap<&str, _> = a.inits().into_iter().collect();
    let b_inits: HashMap<&str, _> = b.inits().into_iter().collect();
    let mut init_differences = Vec::new();
    for (id, ba) in a.inits() {
        match b_inits.get(id) {
            Some(&bb) if bb == ba => {}
            Some(&bb) => init_differences.push(format!("'{id}': {ba} vs {bb}")),
            None => init_differences.push(format!("'{id}' only in the first")),
        }
    }
    for (id, _) in b.inits() {
        if !a_inits.contains_key(id) {
            init_differences.push(format!("'{id}' only in the second"));
        }
    }

    let tables_equal = roster_issues.is_empty() && {
        let n = a.n();
        let permute = |p: &PauliOperator| {
            let mut out = PauliOperator::identity(n);
            for (k, letter) in p.letters().enumerate() {
                out.set(perm[k], letter).expect("perm in range");
            }
            out
        };
        let rows: Vec<TableRow> = a
            .table()
            .rows()
            .iter()
            .map(|r| {
                TableRow::new(permute(r.input()), permute(r.output()), r.sign())
                    .expect("same width")
            })
            .collect();
        let moved = crate::table::StabiliserTruthTable::new(n, rows).expect("same width");
        moved.equivalent(b.table()).unwrap_or(false)
    };

    SpecDiff {
        roster_issues,
        init_differences,
        tables_equal,
        rule_divergence: first_divergence(a.rules(), b.rules()),
    }
}
