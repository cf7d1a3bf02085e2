//! Dense state vectors, one column per input basis state.

use nalgebra::{Complex, DMatrix};

use crate::circuit::Basis;

pub type C64 = Complex<f64>;

const R: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Eigenvector of `b`: `minus == false` is the +1 state (|0>, |+>, |Y0>, |A0>).
pub fn basis_state(b: Basis, minus: bool) -> [C64; 2] {
    let s = if minus { -1.0 } else { 1.0 };
    let (one, zero) = (C64::new(1.0, 0.0), C64::new(0.0, 0.0));
    match b {
        Basis::Z if minus => [zero, one],
        Basis::Z => [one, zero],
        Basis::X => [C64::new(R, 0.0), C64::new(s * R, 0.0)],
        Basis::Y => [C64::new(R, 0.0), C64::new(0.0, s * R)],
        Basis::A => [
            C64::new(R, 0.0),
            C64::from_polar(s * R, std::f64::consts::FRAC_PI_4),
        ],
    }
}

/// Single-qubit Pauli matrices, built entrywise.
pub fn letter_matrix(l: crate::pauli::Pauli) -> DMatrix<C64> {
    use crate::pauli::Pauli;
    let (o, z, i) = (C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 1.0));
    let e = match l {
        Pauli::I => [o, z, z, o],
        Pauli::X => [z, o, o, z],
        Pauli::Y => [z, -i, i, z],
        Pauli::Z => [o, z, z, -o],
    };
    DMatrix::from_row_slice(2, 2, &e)
}

/// Amplitudes of `n` qubits for a set of inputs; qubit `k` is bit `k` of the
/// basis index.
#[derive(Debug, Clone)]
pub struct Register {
    pub n: usize,
    pub cols: Vec<Vec<C64>>,
}

impl Register {
    /// Column `i` has qubit `ports[j]` in |bit j of i> and every other qubit
    /// in the state given by `fixed` (|0> if absent).
    pub fn product_inputs(n: usize, ports: &[usize], fixed: &[(usize, [C64; 2])]) -> Self {
        let mut local = vec![[C64::new(1.0, 0.0), C64::new(0.0, 0.0)]; n];
        for &(q, v) in fixed {
            local[q] = v;
        }
        let cols = (0..1usize << ports.len())
            .map(|i| {
                let mut l = local.clone();
                for (j, &q) in ports.iter().enumerate() {
                    l[q] = if (i >> j) & 1 == 1 {
                        [C64::new(0.0, 0.0), C64::new(1.0, 0.0)]
                    } else {
                        [C64::new(1.0, 0.0), C64::new(0.0, 0.0)]
                    };
                }
                product(&l)
            })
            .collect();
        Self { n, cols }
    }

    pub fn apply_cnot(&mut self, c: usize, t: usize) {
        let (bc, bt) = (1usize << c, 1usize << t);
        for col in &mut self.cols {
            for idx in 0..col.len() {
                if idx & bc != 0 && idx & bt == 0 {
                    col.swap(idx, idx | bt);
                }
            }
        }
    }

    /// Projects qubit `q` onto `v` and parks it in |0>. Returns the summed
    /// squared norm of all columns afterwards.
    pub fn project(&mut self, q: usize, v: [C64; 2]) -> f64 {
        let b = 1usize << q;
        let mut norm = 0.0;
        for col in &mut self.cols {
            for idx in 0..col.len() {
                if idx & b == 0 {
                    let s = v[0].conj() * col[idx] + v[1].conj() * col[idx | b];
                    col[idx] = s;
                    col[idx | b] = C64::new(0.0, 0.0);
                    norm += s.norm_sqr();
                }
            }
        }
        norm
    }

    /// Applies a single-qubit 2x2 matrix to qubit `q`.
    pub fn apply_1q(&mut self, q: usize, m: &DMatrix<C64>) {
        let b = 1usize << q;
        for col in &mut self.cols {
            for idx in 0..col.len() {
                if idx & b == 0 {
                    let (a0, a1) = (col[idx], col[idx | b]);
                    col[idx] = m[(0, 0)] * a0 + m[(0, 1)] * a1;
                    col[idx | b] = m[(1, 0)] * a0 + m[(1, 1)] * a1;
                }
            }
        }
    }
}

/// Tensor product of single-qubit states, qubit 0 least significant.
pub fn product(local: &[[C64; 2]]) -> Vec<C64> {
    let mut amp = vec![C64::new(1.0, 0.0)];
    for v in local {
        let mut next = vec![C64::new(0.0, 0.0); amp.len() * 2];
        let half = amp.len();
        for (idx, &a) in amp.iter().enumerate() {
            next[idx] = a * v[0];
            next[idx + half] = a * v[1];
        }
        amp = next;
    }
    amp
}
