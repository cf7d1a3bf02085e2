//! The `icm v1` line format.

use std::collections::HashMap;

use super::{Basis, IcmCircuit, MeasurementRule, QubitKind};
use crate::error::ParseError;

/// Non-empty lines with `#` comments removed, numbered from 1.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("");
        let toks: Vec<&str> = line.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

/// Reads the two header lines shared by the text formats: `<magic> v1` and
/// `qubits <N>`.
pub(crate) fn header<'a, I>(lines: &mut I, magic: &str) -> Result<(usize, usize), ParseError>
where
    I: Iterator<Item = (usize, Vec<&'a str>)>,
{
    match lines.next() {
        Some((_, t)) if t == [magic, "v1"] => {}
        Some((l, t)) => {
            return Err(ParseError::new(
                l,
                format!("expected '{magic} v1', got '{}'", t.join(" ")),
            ))
        }
        None => {
            return Err(ParseError::new(
                1,
                format!("empty input; expected '{magic} v1'"),
            ))
        }
    }
    match lines.next() {
        Some((l, t)) if t.len() == 2 && t[0] == "qubits" => {
            let n = t[1]
                .parse()
                .map_err(|_| ParseError::new(l, format!("bad qubit count '{}'", t[1])))?;
            Ok((l, n))
        }
        Some((l, t)) => Err(ParseError::new(
            l,
            format!("expected 'qubits <N>', got '{}'", t.join(" ")),
        )),
        None => Err(ParseError::new(2, "missing 'qubits <N>' line")),
    }
}

pub(crate) fn parse_basis(line: usize, tok: &str) -> Result<Basis, ParseError> {
    tok.parse().map_err(|e: String| ParseError::new(line, e))
}

fn valid_id(id: &str) -> bool {
    !id.is_empty() && !id.contains(['?', ':', '#'])
}

struct Parser {
    c: IcmCircuit,
    index: HashMap<String, usize>,
}

impl Parser {
    fn qubit(&self, line: usize, id: &str) -> Result<usize, ParseError> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| ParseError::new(line, format!("undeclared qubit '{id}'")))
    }

    fn declare(
        &mut self,
        line: usize,
        id: &str,
        kind: QubitKind,
        init: Option<Basis>,
    ) -> Result<(), ParseError> {
        if !valid_id(id) {
            return Err(ParseError::new(line, format!("invalid qubit id '{id}'")));
        }
        if self.index.contains_key(id) {
            return Err(ParseError::new(line, format!("duplicate qubit id '{id}'")));
        }
        let q = match init {
            None => self.c.add_io(id),
            Some(b) => self.c.add_ancilla(id, kind, b),
        };
        self.index.insert(id.to_string(), q);
        Ok(())
    }

    fn line(&mut self, l: usize, t: &[&str]) -> Result<(), ParseError> {
        match t {
            ["io", id] => self.declare(l, id, QubitKind::Io, None),
            ["ancilla", id, kind, "init", b] => {
                let kind = match *kind {
                    "computational" => QubitKind::Computational,
                    "teleport" => QubitKind::Teleport,
                    "distillation" => QubitKind::Distillation,
                    k => return Err(ParseError::new(l, format!("bad ancilla kind '{k}'"))),
                };
                let b = parse_basis(l, b)?;
                self.declare(l, id, kind, Some(b))
            }
            ["cnot", c, t] => {
                let (c, t) = (self.qubit(l, c)?, self.qubit(l, t)?);
                self.c.cnot(c, t);
                Ok(())
            }
            ["measure", q, b] => {
                let rule = MeasurementRule::plain(self.qubit(l, q)?, parse_basis(l, b)?);
                self.c.measure(rule);
                Ok(())
            }
            ["measure", q, b, "?", q2, b2, ":", q2b, b3] => {
                if q2 != q2b {
                    return Err(ParseError::new(
                        l,
                        format!("conditional names two qubits '{q2}' and '{q2b}'"),
                    ));
                }
                let rule = MeasurementRule::conditional(
                    self.qubit(l, q)?,
                    parse_basis(l, b)?,
                    self.qubit(l, q2)?,
                    parse_basis(l, b2)?,
                    parse_basis(l, b3)?,
                );
                self.c.measure(rule);
                Ok(())
            }
            ["out", ids @ ..] if !ids.is_empty() => {
                if self.c.outputs.is_some() {
                    return Err(ParseError::new(l, "duplicate 'out' line"));
                }
                let outs = ids
                    .iter()
                    .map(|id| self.qubit(l, id))
                    .collect::<Result<_, _>>()?;
                self.c.outputs = Some(outs);
                Ok(())
            }
            _ => Err(ParseError::new(
                l,
                format!("unrecognised line '{}'", t.join(" ")),
            )),
        }
    }
}

pub(crate) fn parse(text: &str) -> Result<IcmCircuit, ParseError> {
    let mut lines = content_lines(text);
    let (qline, n) = header(&mut lines, "icm")?;
    let mut p = Parser {
        c: IcmCircuit::new(),
        index: HashMap::new(),
    };
    for (l, t) in lines {
        p.line(l, &t)?;
    }
    if p.c.n() != n {
        return Err(ParseError::new(
            qline,
            format!("declared {n} qubits but found {}", p.c.n()),
        ));
    }
    Ok(p.c)
}

pub(crate) fn rule_text(c: &IcmCircuit, r: &MeasurementRule) -> String {
    let mut s = format!("measure {} {}", c.id(r.qubit), r.basis);
    if let Some(k) = r.then {
        let q2 = c.id(k.qubit);
        s += &format!(" ? {q2} {} : {q2} {}", k.if_plus, k.if_minus);
    }
    s
}

pub(crate) fn serialize(c: &IcmCircuit) -> String {
    let mut out = format!("icm v1\nqubits {}\n", c.n());
    for d in &c.qubits {
        match d.init {
            Some(b) if d.kind != QubitKind::Io => {
                out += &format!("ancilla {} {} init {b}\n", d.id, d.kind.name());
            }
            _ => out += &format!("io {}\n", d.id),
        }
    }
    for g in &c.cnots {
        out += &format!("cnot {} {}\n", c.id(g.control), c.id(g.target));
    }
    for r in &c.rules {
        out += &rule_text(c, r);
        out.push('\n');
    }
    if let Some(outs) = &c.outputs {
        let ids: Vec<&str> = outs.iter().map(|&q| c.id(q)).collect();
        out += &format!("out {}\n", ids.join(" "));
    }
    out
}
