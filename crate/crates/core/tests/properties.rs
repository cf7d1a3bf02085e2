mod common;

use icmspec::circuit::{IcmCircuit, QubitKind, Rotation};
use icmspec::oracle::{self, pauli_matrix, simulate};
use icmspec::pauli::{Cnot, Pauli, PauliOperator, TableRow};
use icmspec::spec::Specification;
use icmspec::table::derive_truth_table;
use icmspec::transform::{demote_rotated_measurement, dual_rewrite};
use icmspec::verify::{spec_equiv, verify};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pauli(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = PauliOperator> {
    n.prop_flat_map(|n| (prop::collection::vec(0u8..4, n), 0u8..4))
        .prop_map(|(ls, phase)| {
            let letters: Vec<Pauli> = ls
                .iter()
                .map(|&l| [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][l as usize])
                .collect();
            PauliOperator::from_letters(&letters, phase)
        })
}

fn same_width(n: usize, k: usize) -> impl Strategy<Value = Vec<PauliOperator>> {
    prop::collection::vec(pauli(n..=n), k)
}

fn cnots(n: usize, len: usize) -> impl Strategy<Value = Vec<Cnot>> {
    prop::collection::vec((0..n, 1..n), 0..len).prop_map(move |v| {
        v.into_iter()
            .map(|(a, d)| Cnot::new(a, (a + d) % n))
            .collect()
    })
}

fn circuit(max_io: usize, max_anc: usize, max_cnots: usize) -> impl Strategy<Value = IcmCircuit> {
    any::<u64>().prop_map(move |seed| {
        common::random_circuit(
            &mut ChaCha8Rng::seed_from_u64(seed),
            max_io,
            max_anc,
            max_cnots,
        )
    })
}

proptest! {
    #[test]
    fn pauli_text_round_trips(p in pauli(1..=90)) {
        prop_assert_eq!(p.to_string().parse::<PauliOperator>().unwrap(), p);
    }

    #[test]
    fn products_are_associative(v in (1usize..70).prop_flat_map(|n| same_width(n, 3))) {
        let left = v[0].mul(&v[1]).unwrap().mul(&v[2]).unwrap();
        let right = v[0].mul(&v[1].mul(&v[2]).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn products_match_dense_matrices(v in same_width(3, 2)) {
        let dense = pauli_matrix(&v[0]) * pauli_matrix(&v[1]);
        let symbolic = pauli_matrix(&v[0].mul(&v[1]).unwrap());
        prop_assert!(oracle::max_diff(&dense, &symbolic) < 1e-12);
    }

    #[test]
    fn commutation_is_symmetric_and_matches_products(v in same_width(5, 2)) {
        let c = v[0].commutes_with(&v[1]).unwrap();
        prop_assert_eq!(c, v[1].commutes_with(&v[0]).unwrap());
        let ab = v[0].mul(&v[1]).unwrap();
        let ba = v[1].mul(&v[0]).unwrap();
        prop_assert_eq!(c, ab == ba);
    }

    #[test]
    fn cnot_conjugation_is_a_homomorphism(v in same_width(4, 2), g in cnots(4, 8)) {
        let lhs = v[0].mul(&v[1]).unwrap().conjugate_circuit(&g).unwrap();
        let rhs = v[0].conjugate_circuit(&g).unwrap().mul(&v[1].conjugate_circuit(&g).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cnot_conjugation_matches_dense_conjugation(p in pauli(3..=3), g in cnots(3, 6)) {
        let u = oracle::cnot_unitary(3, &g);
        let dense = &u * pauli_matrix(&p) * u.adjoint();
        prop_assert!(oracle::max_diff(&dense, &pauli_matrix(&p.conjugate_circuit(&g).unwrap())) < 1e-12);
    }

    #[test]
    fn row_products_are_rows_of_the_same_network(v in same_width(3, 2), g in cnots(3, 6)) {
        let row = |p: &PauliOperator| {
            let p = p.without_phase();
            TableRow::from_image(p.clone(), p.conjugate_circuit(&g).unwrap()).unwrap()
        };
        let (a, b) = (row(&v[0]), row(&v[1]));
        let product = a.multiply(&b).unwrap();
        let image = product.input().conjugate_circuit(&g).unwrap();
        prop_assert_eq!(image, product.signed_output());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn circuit_text_round_trips(c in circuit(4, 5, 12)) {
        prop_assert_eq!(c.to_text().parse::<IcmCircuit>().unwrap(), c);
    }

    #[test]
    fn spec_text_round_trips(c in circuit(4, 5, 12)) {
        let spec = Specification::derive(&c).unwrap();
        let back: Specification = spec.to_string().parse().unwrap();
        prop_assert_eq!(back.to_string(), spec.to_string());
        prop_assert!(spec_equiv(&spec, &back).equal());
    }

    #[test]
    fn circuits_verify_against_their_own_spec(c in circuit(4, 6, 20)) {
        let spec = Specification::derive(&c).unwrap();
        prop_assert!(verify(&c, &spec).passed());
    }

    #[test]
    fn row_count_follows_the_seeding_rules(c in circuit(5, 8, 20)) {
        let rows = derive_truth_table(&c).unwrap().len();
        let ancillae = c.ancillae();
        let count = |f: &dyn Fn(usize) -> bool| ancillae.iter().filter(|&&q| f(q)).count();
        let rotated_init = count(&|q| c.kind(q) == QubitKind::Teleport && c.rotation(q) == Rotation::Init);
        let others = count(&|q| c.kind(q) != QubitKind::Distillation) - rotated_init;
        prop_assert_eq!(rows, 2 * c.io_qubits().len() + 2 * rotated_init + others);
        prop_assert!(rows <= 2 * c.n());
    }

    #[test]
    fn derivation_matches_the_oracle(c in circuit(3, 3, 12)) {
        prop_assert_eq!(derive_truth_table(&c).unwrap(), oracle::oracle_truth_table(&c).unwrap());
    }

    #[test]
    fn canonical_tables_ignore_row_order(c in circuit(3, 4, 12), seed in any::<u64>()) {
        let t = derive_truth_table(&c).unwrap();
        let mut rows = t.rows().to_vec();
        rows.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        if rows.len() >= 2 {
            rows[0] = rows[0].multiply(&rows[1]).unwrap();
        }
        let shuffled = icmspec::table::StabiliserTruthTable::new(t.n(), rows).unwrap();
        prop_assert!(t.equivalent(&shuffled).unwrap());
    }

    #[test]
    fn branch_probabilities_sum_to_one(c in circuit(2, 4, 10)) {
        let sim = simulate(&c).unwrap();
        let d = 1usize << sim.inputs.len();
        let choi = sim.choi();
        let trace: f64 = (0..choi.nrows()).map(|i| choi[(i, i)].re).sum();
        prop_assert!((trace - d as f64).abs() < 1e-10);
    }

    #[test]
    fn transforms_keep_circuits_valid(c in circuit(3, 5, 12)) {
        if let Ok(d) = dual_rewrite(&c) {
            prop_assert!(d.validate().is_empty());
        }
        for q in c.ancillae() {
            if let Ok(d) = demote_rotated_measurement(&c, c.id(q)) {
                prop_assert!(d.validate().is_empty());
                prop_assert_eq!(d.n(), c.n() + 1);
                prop_assert_eq!(d.cnots.len(), c.cnots.len() + 1);
            }
        }
    }
}
