//! Phase-tracked Pauli strings and their conjugation through CNOT networks.
//!
//! An operator on `n` qubits is stored in symplectic form: one x-bit and one
//! z-bit per qubit, packed into `u64` words, plus a global phase `i^phase`.
//! The letter on qubit `k` is read from `(x_k, z_k)`: `(0,0) = I`,
//! `(1,0) = X`, `(0,1) = Z`, `(1,1) = Y`, where `Y` is the Hermitian Pauli
//! and `Y = iXZ`. The phase is relative to the tensor product of letters, so
//! `-iY` has phase power 3.
//!
//! Truth-table rows ([`TableRow`]) pair a phase-free input with a phase-free
//! output and carry the relative sign separately.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

const WORD: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PauliError {
    #[error("operator sizes differ: {left} vs {right} qubits")]
    DimensionMismatch { left: usize, right: usize },
    #[error("qubit index {index} out of range for {n} qubits")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("CNOT control and target are both qubit {0}")]
    SameQubit(usize),
    #[error("unexpected character '{found}' at column {column}")]
    Parse { column: usize, found: char },
    #[error("empty Pauli string")]
    Empty,
    #[error("row phase i^{0} is not a real sign")]
    ComplexSign(u8),
    #[error("row input must be phase free")]
    PhasedInput,
}

/// Single-qubit Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (false, true) => Pauli::Z,
            (true, true) => Pauli::Y,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Z => (false, true),
            Pauli::Y => (true, true),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// A CNOT between two qubit indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cnot {
    pub control: usize,
    pub target: usize,
}

impl Cnot {
    pub fn new(control: usize, target: usize) -> Self {
        Self { control, target }
    }

    /// Same qubits, roles exchanged.
    pub fn flipped(self) -> Self {
        Self {
            control: self.target,
            target: self.control,
        }
    }
}

/// `i^phase · ⊗_k σ_k` on `n` qubits.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    phase: u8,
}

fn words(n: usize) -> usize {
    n.div_ceil(WORD)
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        Self {
            n,
            x: vec![0; words(n)],
            z: vec![0; words(n)],
            phase: 0,
        }
    }

    /// `letter` on qubit `k`, identity elsewhere.
    pub fn single(n: usize, k: usize, letter: Pauli) -> Result<Self, PauliError> {
        let mut p = Self::identity(n);
        p.set(k, letter)?;
        Ok(p)
    }

    pub fn from_letters(letters: &[Pauli], phase: u8) -> Self {
        let mut p = Self::identity(letters.len());
        for (k, &l) in letters.iter().enumerate() {
            p.set_unchecked(k, l);
        }
        p.phase = phase % 4;
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Phase as a power of `i` in `0..4`.
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn with_phase(mut self, phase: u8) -> Self {
        self.phase = phase % 4;
        self
    }

    /// Same letters with phase `+1`.
    pub fn without_phase(&self) -> Self {
        self.clone().with_phase(0)
    }

    pub fn get(&self, k: usize) -> Pauli {
        let (w, b) = (k / WORD, k % WORD);
        Pauli::from_bits((self.x[w] >> b) & 1 == 1, (self.z[w] >> b) & 1 == 1)
    }

    pub fn set(&mut self, k: usize, letter: Pauli) -> Result<(), PauliError> {
        if k >= self.n {
            return Err(PauliError::IndexOutOfRange {
                index: k,
                n: self.n,
            });
        }
        self.set_unchecked(k, letter);
        Ok(())
    }

    fn set_unchecked(&mut self, k: usize, letter: Pauli) {
        let (w, b) = (k / WORD, k % WORD);
        let (xb, zb) = letter.bits();
        self.x[w] = (self.x[w] & !(1 << b)) | ((xb as u64) << b);
        self.z[w] = (self.z[w] & !(1 << b)) | ((zb as u64) << b);
    }

    pub fn letters(&self) -> impl Iterator<Item = Pauli> + '_ {
        (0..self.n).map(|k| self.get(k))
    }

    pub fn x_bit(&self, k: usize) -> bool {
        (self.x[k / WORD] >> (k % WORD)) & 1 == 1
    }

    pub fn z_bit(&self, k: usize) -> bool {
        (self.z[k / WORD] >> (k % WORD)) & 1 == 1
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&w| w == 0)
    }

    /// No Z component on any qubit.
    pub fn is_x_type(&self) -> bool {
        self.z.iter().all(|&w| w == 0)
    }

    /// No X component on any qubit.
    pub fn is_z_type(&self) -> bool {
        self.x.iter().all(|&w| w == 0)
    }

    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x | z).count_ones() as usize)
            .sum()
    }

    fn check_dim(&self, other: &Self) -> Result<(), PauliError> {
        if self.n != other.n {
            return Err(PauliError::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// Operator product `self · other` with exact phase.
    pub fn mul(&self, other: &Self) -> Result<Self, PauliError> {
        self.check_dim(other)?;
        // σ(x,z) = i^{xz} X^x Z^z, so the product picks up
        // i^{x1z1 + x2z2 - x3z3} (-1)^{z1·x2}.
        let mut e: i64 = self.phase as i64 + other.phase as i64;
        let mut x = Vec::with_capacity(self.x.len());
        let mut z = Vec::with_capacity(self.z.len());
        for w in 0..self.x.len() {
            let (x1, z1, x2, z2) = (self.x[w], self.z[w], other.x[w], other.z[w]);
            let (x3, z3) = (x1 ^ x2, z1 ^ z2);
            e += (x1 & z1).count_ones() as i64 + (x2 & z2).count_ones() as i64;
            e += 2 * (z1 & x2).count_ones() as i64;
            e -= (x3 & z3).count_ones() as i64;
            x.push(x3);
            z.push(z3);
        }
        Ok(Self {
            n: self.n,
            x,
            z,
            phase: e.rem_euclid(4) as u8,
        })
    }

    /// True iff the two operators commute.
    pub fn commutes_with(&self, other: &Self) -> Result<bool, PauliError> {
        self.check_dim(other)?;
        let mut parity = 0u32;
        for w in 0..self.x.len() {
            parity ^= ((self.x[w] & other.z[w]) ^ (self.z[w] & other.x[w])).count_ones() & 1;
        }
        Ok(parity == 0)
    }

    fn check_cnot(&self, cnot: Cnot) -> Result<(), PauliError> {
        for q in [cnot.control, cnot.target] {
            if q >= self.n {
                return Err(PauliError::IndexOutOfRange {
                    index: q,
                    n: self.n,
                });
            }
        }
        if cnot.control == cnot.target {
            return Err(PauliError::SameQubit(cnot.control));
        }
        Ok(())
    }

    fn apply_cnot_unchecked(
        &mut self,
        Cnot {
            control: c,
            target: t,
        }: Cnot,
    ) {
        let (xc, zc, xt, zt) = (self.x_bit(c), self.z_bit(c), self.x_bit(t), self.z_bit(t));
        if xc && zt && !(xt ^ zc) {
            self.phase = (self.phase + 2) % 4;
        }
        let (wt, bt) = (t / WORD, t % WORD);
        let (wc, bc) = (c / WORD, c % WORD);
        self.x[wt] ^= (xc as u64) << bt;
        self.z[wc] ^= (zt as u64) << bc;
    }

    /// `CNOT · self · CNOT`.
    pub fn conjugate_cnot(&self, cnot: Cnot) -> Result<Self, PauliError> {
        self.check_cnot(cnot)?;
        let mut p = self.clone();
        p.apply_cnot_unchecked(cnot);
        Ok(p)
    }

    /// Conjugation through a CNOT list applied left to right in time.
    pub fn conjugate_circuit(&self, cnots: &[Cnot]) -> Result<Self, PauliError> {
        for &g in cnots {
            self.check_cnot(g)?;
        }
        let mut p = self.clone();
        for &g in cnots {
            p.apply_cnot_unchecked(g);
        }
        Ok(p)
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.phase {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        })?;
        for l in self.letters() {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliOperator({self})")
    }
}

impl FromStr for PauliOperator {
    type Err = PauliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (phase, skip) = if let Some(r) = s.strip_prefix("+i").or(s.strip_prefix("i")) {
            (1, s.len() - r.len())
        } else if s.starts_with("-i") {
            (3, 2)
        } else if s.starts_with('-') {
            (2, 1)
        } else if s.starts_with('+') {
            (0, 1)
        } else {
            (0, 0)
        };
        let mut letters = Vec::new();
        for (i, c) in s.chars().enumerate().skip(skip) {
            match Pauli::from_char(c) {
                Some(l) => letters.push(l),
                None => {
                    return Err(PauliError::Parse {
                        column: i + 1,
                        found: c,
                    })
                }
            }
        }
        if letters.is_empty() {
            return Err(PauliError::Empty);
        }
        Ok(Self::from_letters(&letters, phase))
    }
}

/// Relative sign of a truth-table row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_phase(phase: u8) -> Result<Self, PauliError> {
        match phase % 4 {
            0 => Ok(Sign::Plus),
            2 => Ok(Sign::Minus),
            p => Err(PauliError::ComplexSign(p)),
        }
    }

    pub fn phase(self) -> u8 {
        match self {
            Sign::Plus => 0,
            Sign::Minus => 2,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// One stabiliser truth-table row: `input ↦ sign · output`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TableRow {
    input: PauliOperator,
    output: PauliOperator,
    sign: Sign,
}

impl TableRow {
    pub fn new(
        input: PauliOperator,
        output: PauliOperator,
        sign: Sign,
    ) -> Result<Self, PauliError> {
        input.check_dim(&output)?;
        if input.phase != 0 {
            return Err(PauliError::PhasedInput);
        }
        let sign = sign.times(Sign::from_phase(output.phase)?);
        Ok(Self {
            input,
            output: output.without_phase(),
            sign,
        })
    }

    /// Row for a phase-free `input` whose conjugated image is `image`
    /// (phase included).
    pub fn from_image(input: PauliOperator, image: PauliOperator) -> Result<Self, PauliError> {
        Self::new(input, image, Sign::Plus)
    }

    pub fn input(&self) -> &PauliOperator {
        &self.input
    }

    pub fn output(&self) -> &PauliOperator {
        &self.output
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn n(&self) -> usize {
        self.input.n
    }

    /// Output with the row sign folded into its phase.
    pub fn signed_output(&self) -> PauliOperator {
        self.output.clone().with_phase(self.sign.phase())
    }

    /// Row product: inputs and outputs multiply, the relative phase becomes
    /// the new sign.
    pub fn multiply(&self, other: &TableRow) -> Result<TableRow, PauliError> {
        let input = self.input.mul(&other.input)?;
        let output = self.output.mul(&other.output)?;
        let relative = Sign::from_phase((output.phase + 4 - input.phase) % 4)?;
        Ok(TableRow {
            input: input.without_phase(),
            output: output.without_phase(),
            sign: self.sign.times(other.sign).times(relative),
        })
    }

    /// Formal `(self + other)/√2`; equal rows merge into one unit term.
    pub fn superpose(&self, other: &TableRow) -> Result<FormalSuperposition, PauliError> {
        self.input.check_dim(&other.input)?;
        if self == other {
            return Ok(FormalSuperposition {
                terms: vec![(1.0, self.clone())],
            });
        }
        let c = std::f64::consts::FRAC_1_SQRT_2;
        Ok(FormalSuperposition {
            terms: vec![(c, self.clone()), (c, other.clone())],
        })
    }
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} -> {}",
            self.sign.as_char(),
            self.input,
            self.output
        )
    }
}

impl FromStr for TableRow {
    type Err = String;

    /// `<sign> <in-pauli> -> <out-pauli>`, e.g. `+ XII -> XXX`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let toks: Vec<&str> = s.split_whitespace().collect();
        let [sign, input, arrow, output] = toks.as_slice() else {
            return Err(format!("expected '<sign> <in> -> <out>', got '{s}'"));
        };
        let sign = match *sign {
            "+" => Sign::Plus,
            "-" => Sign::Minus,
            other => return Err(format!("bad sign '{other}'")),
        };
        if *arrow != "->" {
            return Err(format!("expected '->', got '{arrow}'"));
        }
        let input: PauliOperator = input.parse().map_err(|e| format!("input: {e}"))?;
        let output: PauliOperator = output.parse().map_err(|e| format!("output: {e}"))?;
        if input.phase != 0 || output.phase != 0 {
            return Err("row Paulis must not carry a phase; use the sign column".into());
        }
        TableRow::new(input, output, sign).map_err(|e| e.to_string())
    }
}

/// Display-only linear combination of rows.
#[derive(Debug, Clone, PartialEq)]
pub struct FormalSuperposition {
    pub terms: Vec<(f64, TableRow)>,
}

impl FormalSuperposition {
    pub fn norm_squared(&self) -> f64 {
        self.terms.iter().map(|(c, _)| c * c).sum()
    }
}

impl fmt::Display for FormalSuperposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let [(_, row)] = self.terms.as_slice() {
            return write!(f, "({row})");
        }
        let parts: Vec<String> = self.terms.iter().map(|(_, r)| format!("({r})")).collect();
        write!(f, "({})/√{}", parts.join(" + "), self.terms.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    fn row(input: &str, output: &str) -> TableRow {
        TableRow::new(p(input), p(output), Sign::Plus).unwrap()
    }

    #[test]
    fn products() {
        assert_eq!(p("X").mul(&p("X")).unwrap(), p("I"));
        assert_eq!(p("X").mul(&p("Z")).unwrap(), p("-iY"));
        assert_eq!(p("XX").mul(&p("ZZ")).unwrap(), p("-YY"));
        assert_eq!(p("Z").mul(&p("X")).unwrap(), p("iY"));
        assert!(matches!(
            p("X").mul(&p("XX")),
            Err(PauliError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn cnot_conjugation() {
        let g = Cnot::new(0, 1);
        assert_eq!(p("XI").conjugate_cnot(g).unwrap(), p("XX"));
        assert_eq!(p("YI").conjugate_cnot(g).unwrap(), p("YX"));
        assert_eq!(p("YY").conjugate_cnot(g).unwrap(), p("-XZ"));
        assert_eq!(p("IZ").conjugate_cnot(g).unwrap(), p("ZZ"));
        assert_eq!(
            p("XI").conjugate_cnot(Cnot::new(0, 0)),
            Err(PauliError::SameQubit(0))
        );
        assert!(matches!(
            p("XI").conjugate_cnot(Cnot::new(0, 2)),
            Err(PauliError::IndexOutOfRange { index: 2, n: 2 })
        ));
    }

    #[test]
    fn circuit_conjugation() {
        assert_eq!(
            p("XI").conjugate_circuit(&[Cnot::new(0, 1)]).unwrap(),
            p("XX")
        );
        let fanout = [Cnot::new(0, 1), Cnot::new(1, 2)];
        assert_eq!(p("XII").conjugate_circuit(&fanout).unwrap(), p("XXX"));
        assert_eq!(p("-iYZX").conjugate_circuit(&[]).unwrap(), p("-iYZX"));
    }

    #[test]
    fn parse_and_format() {
        let a = p("XIZ");
        assert_eq!(a.n(), 3);
        assert_eq!((a.x_bit(0), a.x_bit(1), a.x_bit(2)), (true, false, false));
        assert_eq!((a.z_bit(0), a.z_bit(1), a.z_bit(2)), (false, false, true));
        assert_eq!(a.phase(), 0);
        let b = p("-iY");
        assert_eq!(
            (b.n(), b.x_bit(0), b.z_bit(0), b.phase()),
            (1, true, true, 3)
        );
        assert_eq!(
            "XQ".parse::<PauliOperator>(),
            Err(PauliError::Parse {
                column: 2,
                found: 'Q'
            })
        );
        assert_eq!("-".parse::<PauliOperator>(), Err(PauliError::Empty));
        assert_eq!(p("+iZ").phase(), 1);
        assert_eq!(p("+Z").phase(), 0);
        assert_eq!(p("iZ").to_string(), "iZ");
    }

    #[test]
    fn wide_operators_cross_word_boundaries() {
        let n = 130;
        let a = PauliOperator::single(n, 127, Pauli::X).unwrap();
        let img = a.conjugate_cnot(Cnot::new(127, 64)).unwrap();
        assert_eq!(img.get(64), Pauli::X);
        assert_eq!(img.get(127), Pauli::X);
        assert_eq!(img.weight(), 2);
        let z = PauliOperator::single(n, 129, Pauli::Z).unwrap();
        assert_eq!(a.mul(&z).unwrap().weight(), 2);
    }

    #[test]
    fn row_products_from_the_cnot_table() {
        let r1 = row("XI", "XX");
        let r2 = row("IX", "IX");
        let r3 = row("ZI", "ZI");
        let s1 = r1.multiply(&r2).unwrap();
        assert_eq!(s1, row("XX", "XI"));
        let s2 = r1.multiply(&r3).unwrap();
        assert_eq!(s2, row("YI", "YX"));
        assert_eq!(s2.sign(), Sign::Plus);
        let s3 = s2.multiply(&r2).unwrap();
        assert_eq!(s3, row("YX", "YI"));
        let id = r1.multiply(&r1).unwrap();
        assert!(id.input().is_identity() && id.output().is_identity());
        assert_eq!(id.sign(), Sign::Plus);
    }

    #[test]
    fn row_signs_follow_phases() {
        let a = TableRow::from_image(p("YY"), p("-XZ")).unwrap();
        assert_eq!(a.sign(), Sign::Minus);
        assert_eq!(a.to_string(), "- YY -> XZ");
        assert_eq!(a.signed_output(), p("-XZ"));
        assert_eq!(
            TableRow::new(p("iX"), p("X"), Sign::Plus),
            Err(PauliError::PhasedInput)
        );
        assert!(TableRow::from_image(p("X"), p("iX")).is_err());
    }

    #[test]
    fn superpositions() {
        let s1 = row("XX", "XI");
        let s3 = row("YX", "YI");
        let sup = s3.superpose(&s1).unwrap();
        assert_eq!(sup.to_string(), "((+ YX -> YI) + (+ XX -> XI))/√2");
        assert!((sup.norm_squared() - 1.0).abs() < 1e-12);
        let same = s1.superpose(&s1).unwrap();
        assert_eq!(same.terms.len(), 1);
        assert_eq!(same.terms[0].0, 1.0);
        let xz = row("X", "X").superpose(&row("Z", "Z")).unwrap();
        assert_eq!(xz.to_string(), "((+ X -> X) + (+ Z -> Z))/√2");
        assert!(row("X", "X").superpose(&row("XX", "XX")).is_err());
    }

    #[test]
    fn row_text() {
        let r: TableRow = "+ XII -> XXX".parse().unwrap();
        assert_eq!(r, row("XII", "XXX"));
        assert_eq!(r.to_string(), "+ XII -> XXX");
        assert!("+ XII => XXX".parse::<TableRow>().is_err());
        assert!("+ XII -> XX".parse::<TableRow>().is_err());
        assert!("+ -XII -> XXX".parse::<TableRow>().is_err());
    }
}
