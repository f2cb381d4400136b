use proptest::prelude::*;
use qubitwise_core::analysis::{
    concurrence, pair_stats_for, partial_trace_matrix, partial_trace_state, probability_of_one,
    purity, qubit_stats, stabilizer_renyi_entropy, von_neumann_entropy, DensityMatrix, Selection,
};
use qubitwise_core::engine::Engine;
use qubitwise_core::linalg::{outer, Complex, DenseMatrix};
use qubitwise_core::measurement::{run_with_branches, sample_shots, BranchNode};
use qubitwise_core::oracle::partial_trace_by_definition;
use qubitwise_core::random::{random_circuit, random_state, CircuitOptions};
use qubitwise_core::{Circuit, Gate, StateVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn subset(mask: usize, n: usize) -> Vec<usize> {
    (0..n).filter(|q| (mask >> q) & 1 == 1).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn partial_trace_methods_agree(seed: u64, n in 1usize..=5) {
        let psi = random_state(&mut rng(seed), n).unwrap();
        let rho = outer(&psi, &psi).unwrap();
        for mask in 0..1usize << n {
            let traced = subset(mask, n);
            let oracle = partial_trace_by_definition(&rho, n, &traced).unwrap();
            let from_matrix = partial_trace_matrix(n, &rho, &traced, Selection::TraceOut).unwrap();
            let from_state = partial_trace_state(&psi, &traced, Selection::TraceOut).unwrap();
            prop_assert!(from_matrix.max_abs_diff(&oracle) < 1e-12);
            prop_assert!(from_state.matrix().max_abs_diff(&oracle) < 1e-12);
            let kept = subset(!mask & ((1 << n) - 1), n);
            let keep_form = partial_trace_state(&psi, &kept, Selection::Keep).unwrap();
            prop_assert_eq!(keep_form.matrix(), from_state.matrix());
        }
    }

    #[test]
    fn reduced_matrices_are_density_matrices(seed: u64, n in 1usize..=6) {
        let psi = random_state(&mut rng(seed), n).unwrap();
        for mask in 0..1usize << n {
            let rho = partial_trace_state(&psi, &subset(mask, n), Selection::TraceOut).unwrap();
            prop_assert!(rho.check_invariants().is_ok());
            let p = purity(&rho);
            prop_assert!(p <= 1.0 + 1e-10 && p >= 1.0 / rho.dim() as f64 - 1e-10);
        }
    }

    #[test]
    fn complementary_subsystems_share_entropy(seed: u64, n in 2usize..=6) {
        let psi = random_state(&mut rng(seed), n).unwrap();
        for mask in 1..(1usize << n) - 1 {
            let a = partial_trace_state(&psi, &subset(mask, n), Selection::Keep).unwrap();
            let b = partial_trace_state(&psi, &subset(mask, n), Selection::TraceOut).unwrap();
            prop_assert!((von_neumann_entropy(&a) - von_neumann_entropy(&b)).abs() < 1e-8);
            prop_assert!((purity(&a) - purity(&b)).abs() < 1e-12);
        }
    }

    #[test]
    fn statistics_ignore_global_phase(seed: u64, n in 2usize..=5, theta in -3.2f64..3.2) {
        let psi = random_state(&mut rng(seed), n).unwrap();
        let shifted = psi.with_global_phase(theta);
        for q in 0..n {
            let a = qubit_stats(&partial_trace_state(&psi, &[q], Selection::Keep).unwrap()).unwrap();
            let b = qubit_stats(&partial_trace_state(&shifted, &[q], Selection::Keep).unwrap()).unwrap();
            for (x, y) in [(a.x, b.x), (a.y, b.y), (a.z, b.z), (a.purity, b.purity), (a.prob1, b.prob1)] {
                prop_assert!((x - y).abs() < 1e-12);
            }
        }
        let a = pair_stats_for(&psi, 0, 1).unwrap();
        let b = pair_stats_for(&shifted, 1, 0).unwrap();
        prop_assert!((a.concurrence - b.concurrence).abs() < 1e-9);
        prop_assert!((a.von_neumann_entropy - b.von_neumann_entropy).abs() < 1e-9);
        if n <= 4 {
            let m1 = stabilizer_renyi_entropy(&psi).unwrap();
            let m2 = stabilizer_renyi_entropy(&shifted).unwrap();
            prop_assert!((m1 - m2).abs() < 1e-9);
        }
    }

    #[test]
    fn bloch_vector_reconstructs_the_qubit(seed: u64, n in 1usize..=5) {
        let psi = random_state(&mut rng(seed), n).unwrap();
        for q in 0..n {
            let rho = partial_trace_state(&psi, &[q], Selection::Keep).unwrap();
            let s = qubit_stats(&rho).unwrap();
            prop_assert!(s.bloch_matrix().max_abs_diff(rho.matrix()) < 1e-12);
            prop_assert!(s.r <= 1.0 + 1e-10);
            prop_assert!((s.prob1 - probability_of_one(&psi, q).unwrap()).abs() < 1e-12);
            prop_assert!((s.purity - (1.0 + s.r * s.r) / 2.0).abs() < 1e-12);
            if s.r > 1e-9 {
                let back = (
                    s.r * s.theta.sin() * s.phi.cos(),
                    s.r * s.theta.sin() * s.phi.sin(),
                    s.r * s.theta.cos(),
                );
                prop_assert!((back.0 - s.x).abs() < 1e-12);
                prop_assert!((back.1 - s.y).abs() < 1e-12);
                prop_assert!((back.2 - s.z).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn pure_two_qubit_concurrence(seed: u64) {
        let psi = random_state(&mut rng(seed), 2).unwrap();
        let a = psi.amplitudes();
        // Index 3 is |11⟩, index 0 is |00⟩.
        let expected = 2.0 * (a[0] * a[3] - a[1] * a[2]).norm();
        let c = concurrence(&DensityMatrix::pure(&psi).unwrap()).unwrap();
        prop_assert!((c - expected).abs() < 1e-10, "{} vs {}", c, expected);
    }

    #[test]
    fn werner_state_concurrence(p in 0.0f64..=1.0) {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = StateVector::from_amplitudes(vec![
            Complex::new(h, 0.0),
            Complex::new(0.0, 0.0),
            Complex::new(0.0, 0.0),
            Complex::new(h, 0.0),
        ])
        .unwrap();
        let mixed = outer(&bell, &bell)
            .unwrap()
            .scale(Complex::new(p, 0.0))
            .add(&DenseMatrix::identity(4).unwrap().scale(Complex::new((1.0 - p) / 4.0, 0.0)))
            .unwrap();
        let c = concurrence(&DensityMatrix::new(mixed).unwrap()).unwrap();
        let expected = ((3.0 * p - 1.0) / 2.0).max(0.0);
        prop_assert!((c - expected).abs() < 1e-8);
    }

    #[test]
    fn clifford_circuits_have_no_magic(seed: u64, n in 1usize..=5, depth in 0usize..30) {
        let c = random_circuit(&mut rng(seed), n, depth, &CircuitOptions::clifford()).unwrap();
        let psi = Engine::default().run(&c, &StateVector::zero(n).unwrap()).unwrap();
        prop_assert!(stabilizer_renyi_entropy(&psi).unwrap().abs() < 1e-9);
    }

    #[test]
    fn branch_probabilities_match_born_rule(seed: u64, n in 1usize..=5, depth in 0usize..15) {
        let mut r = rng(seed);
        let mut c = random_circuit(&mut r, n, depth, &CircuitOptions::full()).unwrap();
        let before = Engine::default().run(&c, &StateVector::zero(n).unwrap()).unwrap();
        let wire = (seed % n as u64) as usize;
        c.measure(wire).unwrap();
        if n > 1 {
            c.measure((wire + 1) % n).unwrap();
        }
        let tree = run_with_branches(&c, &StateVector::zero(n).unwrap()).unwrap();
        prop_assert!((tree.total_probability() - 1.0).abs() < 1e-9);
        let BranchNode::Split { children, .. } = &tree.root else {
            unreachable!("the circuit measures");
        };
        let p1: f64 = children.iter().filter(|(b, _, _)| *b == 1).map(|(_, p, _)| p).sum();
        prop_assert!((p1 - probability_of_one(&before, wire).unwrap()).abs() < 1e-10);
        for leaf in tree.leaves() {
            prop_assert!((leaf.state.norm_sqr() - 1.0).abs() < 1e-10);
            prop_assert_eq!(leaf.state.n(), n - leaf.outcomes.len());
        }
    }
}

#[test]
fn magic_of_t_state() {
    let mut c = Circuit::new(1).unwrap();
    c.gate(Gate::H, &[0]).unwrap().gate(Gate::T, &[0]).unwrap();
    let psi = Engine::default()
        .run(&c, &StateVector::zero(1).unwrap())
        .unwrap();
    // Bloch vector (1/√2, 1/√2, 0): Σ⟨P⟩⁴ = 1 + 1/4 + 1/4 = 3/2.
    let expected = (4.0f64 / 3.0).log2();
    assert!((stabilizer_renyi_entropy(&psi).unwrap() - expected).abs() < 1e-12);

    // Magic adds over product states.
    let mut two = Circuit::new(2).unwrap();
    two.gate(Gate::H, &[0])
        .unwrap()
        .gate(Gate::T, &[0])
        .unwrap();
    two.gate(Gate::H, &[1])
        .unwrap()
        .gate(Gate::T, &[1])
        .unwrap();
    let psi2 = Engine::default()
        .run(&two, &StateVector::zero(2).unwrap())
        .unwrap();
    assert!((stabilizer_renyi_entropy(&psi2).unwrap() - 2.0 * expected).abs() < 1e-12);
}

#[test]
fn magic_at_the_size_cap() {
    let mut c = Circuit::new(10).unwrap();
    for q in 0..10 {
        c.gate(Gate::H, &[q]).unwrap();
    }
    c.gate(Gate::T, &[4]).unwrap();
    let psi = Engine::default()
        .run(&c, &StateVector::zero(10).unwrap())
        .unwrap();
    let expected = (4.0f64 / 3.0).log2();
    assert!((stabilizer_renyi_entropy(&psi).unwrap() - expected).abs() < 1e-9);
}

#[test]
fn sampled_frequencies_follow_the_branch_tree() {
    let mut r = rng(99);
    let mut c = random_circuit(&mut r, 3, 12, &CircuitOptions::full()).unwrap();
    c.measure(0).unwrap().measure(2).unwrap();
    let psi0 = StateVector::zero(3).unwrap();
    let tree = run_with_branches(&c, &psi0).unwrap();
    let shots = 1000u64;
    let hist = sample_shots(&c, &psi0, shots, 2024).unwrap();
    assert_eq!(hist.values().sum::<usize>() as u64, shots);
    for leaf in tree.leaves() {
        let p = leaf.probability;
        let count = *hist.get(&leaf.outcome_string()).unwrap_or(&0) as f64;
        let sigma = (shots as f64 * p * (1.0 - p)).sqrt();
        assert!(
            (count - shots as f64 * p).abs() <= 3.0 * sigma + 1.0,
            "{}: {count} vs {}",
            leaf.outcome_string(),
            shots as f64 * p
        );
    }
}
