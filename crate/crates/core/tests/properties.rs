//! Randomized properties across modules.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use werner_core::chords::random_diagram;
use werner_core::exact::{gaussian_int, rational, ScaledGaussianOperator};
use werner_core::separability::{partial_trace, rho0000_exact};
use werner_core::states::{check_pure_werner, diagram_state, polygon_density};
use werner_core::werner_ops::{
    a_operator, check_mixed_werner, decompose, decompose_float, hermitian_basis, m_map,
    pizza_operator,
};
use werner_core::{io, BitString, ChordDiagram};

fn arb_diagram(max_n: usize) -> impl Strategy<Value = ChordDiagram> {
    (1..=max_n, any::<u64>())
        .prop_map(|(n, seed)| random_diagram(n, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn any_matching_gives_an_invariant_state(d in arb_diagram(5)) {
        prop_assert!(check_pure_werner(&diagram_state(&d)).is_exactly_invariant());
    }

    #[test]
    fn any_matching_gives_an_invariant_operator(d in arb_diagram(4)) {
        let a = a_operator(&d);
        prop_assert!(check_mixed_werner(&a).is_exactly_invariant());
        let md = m_map(&diagram_state(&d)).unwrap();
        let p = pizza_operator(d.n());
        prop_assert_eq!(p.matmul(&md).unwrap(), md.matmul(&p).unwrap());
    }

    #[test]
    fn diagram_text_roundtrip(d in arb_diagram(6)) {
        let back: ChordDiagram = d.to_string().parse().unwrap();
        prop_assert_eq!(back, d);
    }

    #[test]
    fn reversing_a_chord_flips_the_state(d in arb_diagram(4)) {
        let (canon, sign) = d.canonicalize();
        prop_assert_eq!(diagram_state(&d), diagram_state(&canon).scalar_mul(sign as i64));
    }

    #[test]
    fn integer_combinations_decompose_exactly(
        n in 1usize..=3,
        coeffs in proptest::collection::vec(-5i64..=5, 5),
    ) {
        let basis = hermitian_basis(n).unwrap();
        let mut h = ScaledGaussianOperator::zeros(n, basis.scale());
        for (c, op) in coeffs.iter().zip(basis.operators()) {
            h = h.add(&op.scalar_mul(&gaussian_int(*c, 0))).unwrap();
        }
        let d = decompose(&h, &basis).unwrap();
        prop_assert_eq!(d.residual, 0.0);
        let exact = d.exact.unwrap();
        prop_assert_eq!(exact.sqrt2_exponent, 0);
        for (v, c) in exact.values.iter().zip(&coeffs) {
            prop_assert_eq!(v.clone(), rational(*c, 1));
        }
        let f = decompose_float(&h.to_complex(), &basis).unwrap();
        for (x, c) in f.coefficients.iter().zip(&coeffs) {
            prop_assert!((x - *c as f64).abs() < 1e-10);
        }
    }

    #[test]
    fn exact_operators_survive_json(d in arb_diagram(3)) {
        let a = a_operator(&d);
        let text = io::exact_operator_json(&a).unwrap().to_string();
        match io::parse_operand(&text).unwrap() {
            werner_core::werner_ops::Operand::ExactOperator(back) => prop_assert_eq!(back, a),
            _ => prop_assert!(false),
        }
    }

    #[test]
    fn rho0000_depends_only_on_cyclic_distance(m in 3usize..=12, a in 1usize..=12, d in 1usize..12) {
        prop_assume!(a <= m && d < m);
        let b = (a - 1 + d) % m + 1;
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let reference = rho0000_exact(m, 1, 1 + d).unwrap();
        prop_assert_eq!(rho0000_exact(m, lo, hi).unwrap(), reference);
    }

    #[test]
    fn cyclic_shift_is_a_group_action(bits in any::<u32>(), m in 1usize..=16, j in -40i64..40, k in -40i64..40) {
        let s = BitString::new(bits & ((1u32 << m) - 1), m).unwrap();
        prop_assert_eq!(s.cyclic_shift(j).cyclic_shift(k), s.cyclic_shift(j + k));
        prop_assert_eq!(s.cyclic_shift(m as i64), s);
        prop_assert_eq!(s.cyclic_shift(j).is_aperiodic(), s.is_aperiodic());
    }
}

#[test]
fn partial_traces_preserve_trace_and_hermiticity() {
    for m in 3..=7 {
        let rho = polygon_density(m).unwrap();
        for keep in [vec![1], vec![m, 1], vec![m, 2, 1]] {
            let r = partial_trace(&rho, &keep).unwrap();
            assert!((r.trace().re - 1.0).abs() < 1e-12);
            assert!(r.trace().im.abs() < 1e-12);
            assert!(r.hermitian_deviation() < 1e-15);
        }
    }
}

#[test]
fn polygon_states_are_density_matrices() {
    for m in 2..=7 {
        let rho = polygon_density(m).unwrap();
        assert!((rho.trace().re - 1.0).abs() < 1e-12);
        let min = rho
            .hermitian_eigenvalues()
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        assert!(min > -1e-12, "m = {m}: {min}");
    }
}
