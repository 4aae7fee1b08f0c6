mod common;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use seqopt_core::*;

fn random_circuit(n: usize, layers: usize, seed: u64) -> AnsatzCircuit {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    AnsatzCircuit::from_fn(n, layers, |_| GateParam::Quat(matrix_to_quaternion(&su2(&mut rng)).unwrap())).unwrap()
}

fn su2(rng: &mut ChaCha8Rng) -> Mat2 {
    let u = haar_random_u2(rng);
    u.scale(C::new(1.0, 0.0) / u.det().sqrt())
}

#[test]
fn single_qubit_kernel_matches_kronecker_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=5 {
        for q in 0..n {
            let s = StateVector::random(n, &mut rng).unwrap();
            let g = haar_random_u2(&mut rng);
            let want = embed_single(&g, q, n) * to_dvec(&s);
            let mut got = s.clone();
            got.apply_single_qubit(&g, q).unwrap();
            assert!(max_diff(&want, got.amplitudes()) < 1e-12, "n={n} q={q}");
        }
    }
}

#[test]
fn cz_kernel_matches_dense() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let s = StateVector::random(4, &mut rng).unwrap();
    for (a, b) in [(0, 1), (1, 3), (3, 0)] {
        let want = cz_dense(a, b, 4) * to_dvec(&s);
        let mut got = s.clone();
        got.apply_cz(a, b).unwrap();
        assert!(max_diff(&want, got.amplitudes()) < 1e-14);
    }
}

#[test]
fn circuit_state_matches_dense_product() {
    for seed in 0..5 {
        let circ = random_circuit(4, 3, seed);
        let want = circuit_state_dense(&circ);
        assert!(max_diff(&want, circ.state().amplitudes()) < 1e-12);
    }
}

#[test]
fn hydrogen_expectation_matches_dense_matrix() {
    let obs = h2_hamiltonian();
    let h = observable_dense(&obs);
    assert_eq!(h.nrows(), 16);
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..20 {
        let s = StateVector::random(4, &mut rng).unwrap();
        let want = expectation_dense(&h, &to_dvec(&s));
        assert!((obs.expectation(&s).unwrap() - want).abs() < 1e-12);
    }
}

#[test]
fn random_sums_match_dense_matrix() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for n in 1..=5 {
        let sum = random_pauli_sum(n, 12, &mut rng);
        let h = sum_dense(&sum);
        let obs: Observable = sum.clone().into();
        let s = StateVector::random(n, &mut rng).unwrap();
        let v = to_dvec(&s);
        assert!((obs.expectation(&s).unwrap() - expectation_dense(&h, &v)).abs() < 1e-12);

        let mut out = vec![C::new(0.0, 0.0); 1 << n];
        sum.apply(s.amplitudes(), &mut out);
        assert!(max_diff(&(&h * &v), &out) < 1e-12);
    }
}

#[test]
fn projector_expectation_is_negative_fidelity() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let target = StateVector::random(3, &mut rng).unwrap();
    let obs = projector_cost(target.clone()).unwrap();
    let h = observable_dense(&obs);
    let s = StateVector::random(3, &mut rng).unwrap();
    assert!((obs.expectation(&s).unwrap() - expectation_dense(&h, &to_dvec(&s))).abs() < 1e-12);
    assert!((obs.expectation(&target).unwrap() + 1.0).abs() < 1e-12);
}

#[test]
fn ground_energy_matches_dense_eigensolver() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for n in 1..=6 {
        let sum = random_pauli_sum(n, 3 * n, &mut rng);
        let want = dense_ground(&sum_dense(&sum));
        let got = ground_energy(&sum).unwrap();
        assert!((got - want).abs() < 1e-8, "n={n}: {got} vs {want}");
    }
    for obs in [heisenberg_1d(5, 1.0, 1.0).unwrap(), heisenberg_2d(2, 3, 1.0, 1.0).unwrap(), h2_hamiltonian()] {
        let want = dense_ground(&observable_dense(&obs));
        assert!((exact_ground_energy(&obs).unwrap() - want).abs() < 1e-8);
    }
}

#[test]
fn ground_energy_with_disconnected_sectors() {
    // block-diagonal in Z; the start vector must reach the lowest block
    let sum: PauliSum = "1.0*ZIII + 0.5*IZII + 0.25*IIZI + -2.0*IIIZ".parse().unwrap();
    assert!((ground_energy(&sum).unwrap() + 3.75).abs() < 1e-10);
}

#[test]
fn random_state_mean_weight_of_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let trials = 20_000;
    let mean: f64 = (0..trials)
        .map(|_| StateVector::random(2, &mut rng).unwrap().amplitudes()[0].norm_sqr())
        .sum::<f64>()
        / trials as f64;
    assert!((mean - 0.25).abs() < 0.01, "{mean}");
}

#[test]
fn shot_noise_standard_deviation() {
    // |+⟩ has ⟨Z⟩ = 0, so each estimate has variance 1/shots
    let obs: Observable = "1.0*Z".parse::<PauliSum>().unwrap().into();
    let plus = StateVector::from_amplitudes(vec![C::new(1.0, 0.0), C::new(1.0, 0.0)]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    let shots = 8192;
    let xs: Vec<f64> = (0..10_000)
        .map(|_| obs.estimate_with_shots(&plus, shots, &mut rng).unwrap())
        .collect();
    let mean = xs.iter().sum::<f64>() / xs.len() as f64;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (xs.len() - 1) as f64;
    let want = 1.0 / (shots as f64).sqrt();
    assert!((var.sqrt() - want).abs() < 0.1 * want, "{} vs {want}", var.sqrt());
    assert!(mean.abs() < 4.0 * want / 100.0);
}

#[test]
fn identity_terms_are_not_sampled() {
    let obs: Observable = "0.7*II + 0.2*ZZ".parse::<PauliSum>().unwrap().into();
    let s = StateVector::zero_state(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    // |00⟩ is a ZZ eigenstate, so every shot agrees
    assert!((obs.estimate_with_shots(&s, 3, &mut rng).unwrap() - 0.9).abs() < 1e-15);
}

fn arb_state(n: usize) -> impl Strategy<Value = StateVector> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << n).prop_filter_map("zero vector", |v| {
        let amps: Vec<C> = v.into_iter().map(|(a, b)| C::new(a, b)).collect();
        if amps.iter().map(|a| a.norm_sqr()).sum::<f64>() < 1e-6 {
            return None;
        }
        StateVector::from_amplitudes(amps).ok()
    })
}

fn arb_unitary() -> impl Strategy<Value = Mat2> {
    any::<u64>().prop_map(|s| haar_random_u2(&mut ChaCha8Rng::seed_from_u64(s)))
}

proptest! {
    #[test]
    fn gates_preserve_norm(s in arb_state(4), g in arb_unitary(), q in 0usize..4) {
        let mut t = s.clone();
        t.apply_single_qubit(&g, q).unwrap();
        prop_assert!((t.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gate_application_is_linear(
        a in arb_state(3), b in arb_state(3), g in arb_unitary(), q in 0usize..3,
        alpha in (-2.0f64..2.0, -2.0f64..2.0), beta in (-2.0f64..2.0, -2.0f64..2.0),
    ) {
        let (alpha, beta) = (C::new(alpha.0, alpha.1), C::new(beta.0, beta.1));
        let h = embed_single(&g, q, 3);
        let combo = to_dvec(&a) * alpha + to_dvec(&b) * beta;
        let mut ga = a.clone();
        ga.apply_single_qubit(&g, q).unwrap();
        let mut gb = b.clone();
        gb.apply_single_qubit(&g, q).unwrap();
        let lhs = h * combo;
        let rhs: Vec<C> = ga.amplitudes().iter().zip(gb.amplitudes()).map(|(x, y)| alpha * x + beta * y).collect();
        prop_assert!(max_diff(&lhs, &rhs) < 1e-12);
    }

    #[test]
    fn trace_distance_and_fidelity_complement(a in arb_state(3), b in arb_state(3)) {
        let f = a.fidelity(&b).unwrap();
        let t = a.trace_distance(&b).unwrap();
        prop_assert!((0.0..=1.0).contains(&f));
        prop_assert!((t * t + f - 1.0).abs() < 1e-12);
    }

    #[test]
    fn expectation_is_real_and_bounded(s in arb_state(3), seed in any::<u64>()) {
        let sum = random_pauli_sum(3, 6, &mut ChaCha8Rng::seed_from_u64(seed));
        let bound: f64 = sum.terms().iter().map(|t| t.coefficient().abs()).sum();
        let e = Observable::from(sum).expectation(&s).unwrap();
        prop_assert!(e.abs() <= bound + 1e-12);
    }
}
