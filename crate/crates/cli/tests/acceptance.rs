//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line to
//! stderr; the test fails if any criterion does.

use std::f64::consts::PI;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use seqopt::fidelity::{median, STUDY_ALGORITHMS, STUDY_SHOTS};
use seqopt::{gate_fidelity_study, reference_ground_energy, run_experiment, ExperimentConfig, ExperimentResult};
use seqopt_core::optim::{
    fqs_build_s_matrix, fqs_step, gate_specific_sweep, iteration_specific_sweep, rotosolve_step, IterationHybrid,
    SweepStatus,
};
use seqopt_core::trial::stream_rng;
use seqopt_core::*;

type Outcome = std::result::Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn run_criterion(id: u32, name: &str, f: impl FnOnce() -> Outcome) -> bool {
    let outcome = match catch_unwind(AssertUnwindSafe(f)) {
        Ok(o) => o,
        Err(p) => Err(format!(
            "panicked: {}",
            p.downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default()
        )),
    };
    let (tag, detail) = match &outcome {
        Ok(d) => ("PASS", d),
        Err(d) => ("FAIL", d),
    };
    writeln!(std::io::stderr(), "criterion {id} {tag} [{name}] {detail}").unwrap();
    outcome.is_ok()
}

fn exact_config(problem: Problem, layers: usize, algorithms: Vec<Algorithm>, trials: u64) -> ExperimentConfig {
    ExperimentConfig {
        problem,
        layers,
        algorithms,
        trials,
        shots: ShotMode::Exact,
        base_seed: 0,
        output: PathBuf::from("unused"),
        budget_sweeps: 50,
    }
}

fn su2<R: Rng>(rng: &mut R) -> Mat2 {
    let u = haar_random_u2(rng);
    u.scale(Complex64::new(1.0, 0.0) / u.det().sqrt())
}

fn random_quat<R: Rng>(rng: &mut R) -> Quaternion {
    matrix_to_quaternion(&su2(rng)).unwrap()
}

fn random_observable<R: Rng>(n: usize, terms: usize, rng: &mut R) -> Observable {
    let terms = (0..terms)
        .map(|_| {
            let letters = (0..n).map(|_| [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][rng.random_range(0..4)]).collect();
            PauliTerm::new(rng.random_range(-1.0..1.0), letters).unwrap()
        })
        .collect();
    PauliSum::new(terms).unwrap().into()
}

fn cost_with(circ: &AnsatzCircuit, obs: &Observable, d: usize, p: GateParam) -> f64 {
    let mut c = circ.clone();
    c.set_slot(d, p).unwrap();
    obs.expectation(&c.state()).unwrap()
}

fn ground_energies() -> Outcome {
    let cases = [
        ("heisenberg1d(5)", heisenberg_1d(5, 1.0, 1.0).unwrap(), -8.4721),
        ("heisenberg1d(6)", heisenberg_1d(6, 1.0, 1.0).unwrap(), -11.2111),
        ("heisenberg1d(10)", heisenberg_1d(10, 1.0, 1.0).unwrap(), -18.3688),
        ("heisenberg2d(2x3)", heisenberg_2d(2, 3, 1.0, 1.0).unwrap(), -12.5175),
        ("h2", h2_hamiltonian(), -1.1373),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, obs, want) in cases {
        let got = exact_ground_energy(&obs).unwrap();
        ok &= (got - want).abs() <= 1e-3;
        parts.push(format!("{name} {got:.5}"));
    }
    let tabulated = reference_ground_energy(&Problem::Heisenberg2d { rows: 3, cols: 5 }).unwrap();
    ok &= tabulated == Some(-34.5505);
    parts.push("heisenberg2d(3x5) -34.5505 tabulated".into());
    check(ok, parts.join(", "))
}

const GATES: usize = 10_000;

/// Evaluations per gate over `GATES` gate updates on a 4-qubit, 5-layer chain.
fn evals_per_gate(
    mut one_sweep: impl FnMut(&mut AnsatzCircuit, u64, &mut CostOracle<'_, ChaCha8Rng>) -> Result<SweepStatus>,
) -> f64 {
    let obs = heisenberg_1d(4, 1.0, 1.0).unwrap();
    let mut init = stream_rng(1, 0);
    let mut circ = AnsatzCircuit::from_fn(4, 5, |_| Algorithm::RotosolveHaar.initial_gate(&mut init)).unwrap();
    let mut oracle = CostOracle::new(&obs, ShotMode::Exact, EvalBudget::unlimited(), stream_rng(1, 2));
    let sweeps = GATES / circ.n_slots();
    for i in 1..=sweeps as u64 {
        assert_eq!(one_sweep(&mut circ, i, &mut oracle).unwrap(), SweepStatus::Complete);
    }
    oracle.budget().used() as f64 / GATES as f64
}

fn evaluation_accounting() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    let mut record = |label: String, got: f64, want: f64| {
        ok &= ((got - want) / want).abs() <= 0.02;
        parts.push(format!("{label} {got:.3}/{want}"));
    };
    for (p, want) in [(0.2, 8.6), (0.4, 7.2), (0.6, 5.8), (0.8, 4.4)] {
        let mut schedule = stream_rng(1, 1);
        let got = evals_per_gate(|c, _, o| gate_specific_sweep(c, p, &mut schedule, o, |_, _| {}));
        record(format!("p={p}"), got, want);
    }
    for (which, label, cases) in [
        (IterationHybrid::FqsEveryN, "fqs-every", [(2, 6.5), (3, 5.33), (4, 4.75)]),
        (IterationHybrid::RotoHaarEveryN, "rotohaar-every", [(3, 7.67), (4, 8.25), (5, 8.6)]),
    ] {
        for (n, want) in cases {
            let got = evals_per_gate(|c, i, o| iteration_specific_sweep(c, n, i, which, o, |_, _| {}));
            record(format!("{label}-{n}"), got, want);
        }
    }
    check(ok, parts.join(", "))
}

fn per_step_optimality() -> Outcome {
    let (mut worst_roto, mut worst_fqs, mut worst_form): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for seed in 0..100u64 {
        let mut rng = stream_rng(seed, 7);
        let obs = random_observable(3, 8, &mut rng);
        let d = rng.random_range(0..6);
        let base = AnsatzCircuit::from_fn(3, 2, |_| GateParam::Quat(random_quat(&mut rng))).unwrap();

        let mut roto = base.clone();
        let angle_slot = if rng.random::<bool>() {
            GateParam::FixedAngle { theta: rng.random_range(-PI..PI), generator: Generator::ALL[rng.random_range(0..3)] }
        } else {
            GateParam::HaarAngle(HaarAngleGate::new(rng.random_range(-PI..PI), haar_random_u2(&mut rng)).unwrap())
        };
        roto.set_slot(d, angle_slot).unwrap();
        let grid_min = (0..10_000)
            .map(|k| -PI + 2.0 * PI * k as f64 / 10_000.0)
            .map(|t| cost_with(&roto, &obs, d, angle_slot.with_angle(t).unwrap()))
            .fold(f64::INFINITY, f64::min);
        let mut oracle = CostOracle::new(&obs, ShotMode::Exact, EvalBudget::unlimited(), stream_rng(seed, 2));
        rotosolve_step(&mut roto, d, &mut oracle).unwrap();
        worst_roto = worst_roto.max((obs.expectation(&roto.state()).unwrap() - grid_min).abs());

        let mut fqs = base;
        let s = fqs_build_s_matrix(&fqs, d, &mut oracle).unwrap();
        for _ in 0..20 {
            let q = random_quat(&mut rng);
            worst_form = worst_form.max((s.quadratic_form(&q) - cost_with(&fqs, &obs, d, GateParam::Quat(q))).abs());
        }
        let (lambda, _) = s.lowest_eigenpair().unwrap();
        fqs_step(&mut fqs, d, &mut oracle).unwrap();
        worst_fqs = worst_fqs.max((obs.expectation(&fqs.state()).unwrap() - lambda).abs());
    }
    check(
        worst_roto <= 1e-6 && worst_fqs <= 1e-9 && worst_form <= 1e-9,
        format!("rotosolve vs grid {worst_roto:.2e}, fqs vs lambda_min {worst_fqs:.2e}, q^T S q vs direct {worst_form:.2e}"),
    )
}

fn chain_experiment() -> ExperimentResult {
    let algorithms = vec![
        Algorithm::Rotosolve,
        Algorithm::RotosolveHaar,
        Algorithm::Fraxis,
        Algorithm::Fqs,
        Algorithm::GateHybrid { p: 0.4 },
        Algorithm::IterHybridFqs { n: 2 },
    ];
    run_experiment(&exact_config(Problem::Heisenberg1d { n: 5 }, 5, algorithms, 20), 8).unwrap()
}

fn monotone_traces(res: &ExperimentResult) -> Outcome {
    let mut worst_rise = f64::NEG_INFINITY;
    let mut traces = 0;
    for (_, trials) in &res.outcomes {
        for t in trials {
            traces += 1;
            for w in t.trace.records.windows(2) {
                worst_rise = worst_rise.max(w[1].cost - w[0].cost);
            }
        }
    }
    check(worst_rise <= 1e-9, format!("{traces} traces, largest step increase {worst_rise:.2e}"))
}

fn final_mean(res: &ExperimentResult, alg: Algorithm) -> f64 {
    res.summary.algorithms.iter().find(|a| a.algorithm == alg).unwrap().final_mean
}

fn chain_ordering(res: &ExperimentResult) -> Outcome {
    let roto = final_mean(res, Algorithm::Rotosolve);
    let haar = final_mean(res, Algorithm::RotosolveHaar);
    let fraxis = final_mean(res, Algorithm::Fraxis);
    let fqs = final_mean(res, Algorithm::Fqs);
    let gate = final_mean(res, Algorithm::GateHybrid { p: 0.4 });
    let iter = final_mean(res, Algorithm::IterHybridFqs { n: 2 });
    check(
        fqs <= fraxis && fraxis <= roto && (gate <= haar || iter <= haar),
        format!(
            "fqs {fqs:.4} <= fraxis {fraxis:.4} <= rotosolve {roto:.4}; gate_hybrid(0.4) {gate:.4}, iter_hybrid_fqs(2) {iter:.4} vs rotosolve_haar {haar:.4}"
        ),
    )
}

fn round_trips() -> Outcome {
    let mut rng = stream_rng(6, 0);
    let mut worst_decompose: f64 = 0.0;
    for _ in 0..1000 {
        let u = su2(&mut rng);
        let (theta, v) = decompose_unitary(&u).unwrap();
        let g = v * Mat2::pauli_z() * v.adjoint();
        worst_decompose = worst_decompose.max(angle_gate(theta, &g).max_abs_diff(&u));
    }
    let mut worst_convert: f64 = 0.0;
    for _ in 0..250 {
        let variants = [
            GateParam::FixedAngle { theta: rng.random_range(-PI..PI), generator: Generator::ALL[rng.random_range(0..3)] },
            GateParam::HaarAngle(HaarAngleGate::new(rng.random_range(-PI..PI), haar_random_u2(&mut rng)).unwrap()),
            GateParam::Axis(Axis3::random(&mut rng)),
            GateParam::Quat(random_quat(&mut rng)),
        ];
        for p in variants {
            let m = p.matrix();
            let q = p.to_quaternion().unwrap();
            let via_quat = quaternion_to_matrix(&q).unwrap();
            let back = matrix_to_quaternion(&via_quat).unwrap();
            let via_haar = GateParam::HaarAngle(p.to_haar_angle().unwrap()).matrix();
            worst_convert = worst_convert
                .max(via_quat.max_abs_diff(&m))
                .max(via_haar.max_abs_diff(&m))
                .max(q.0.iter().zip(back.0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max));
        }
    }
    check(
        worst_decompose <= 1e-9 && worst_convert <= 1e-9,
        format!("decompose {worst_decompose:.2e}, variant conversions {worst_convert:.2e}"),
    )
}

fn shot_statistics() -> Outcome {
    let obs: Observable = "1.0*Z".parse::<PauliSum>().unwrap().into();
    let plus = StateVector::from_amplitudes(vec![Complex64::new(1.0, 0.0); 2]).unwrap();
    assert!(obs.expectation(&plus).unwrap().abs() < 1e-15);
    let mut rng = stream_rng(7, 2);
    let samples: Vec<f64> = (0..10_000).map(|_| obs.estimate_with_shots(&plus, 8192, &mut rng).unwrap()).collect();
    let mean = samples.iter().sum::<f64>() / samples.len() as f64;
    let std = (samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (samples.len() - 1) as f64).sqrt();
    let want = 1.0 / 8192f64.sqrt();
    let std_ok = ((std - want) / want).abs() <= 0.1;

    let shots = STUDY_SHOTS.map(ShotMode::Shots);
    let records = gate_fidelity_study(&STUDY_ALGORITHMS, &shots, 1000, 0, 8).unwrap();
    let mut medians_ok = true;
    let mut parts = vec![format!("std {std:.3e} vs {want:.3e}")];
    for alg in STUDY_ALGORITHMS {
        let medians: Vec<f64> = shots
            .iter()
            .map(|&mode| {
                let f: Vec<f64> = records
                    .iter()
                    .filter(|r| r.algorithm == alg && r.shots == mode)
                    .map(|r| r.fidelity)
                    .collect();
                median(&f)
            })
            .collect();
        let ok = medians.windows(2).all(|w| w[1] >= w[0]);
        medians_ok &= ok;
        parts.push(format!(
            "{} medians {} {}",
            alg.name(),
            medians.iter().map(|m| format!("{m:.5}")).collect::<Vec<_>>().join("/"),
            if ok { "non-decreasing" } else { "NOT non-decreasing" }
        ));
    }
    check(std_ok && medians_ok, parts.join(", "))
}

fn random_state_ordering() -> Outcome {
    let res = run_experiment(
        &exact_config(
            Problem::RandomState { n: 4 },
            2,
            vec![Algorithm::Rotosolve, Algorithm::RotosolveHaar, Algorithm::Fqs],
            30,
        ),
        8,
    )
    .unwrap();
    let roto = final_mean(&res, Algorithm::Rotosolve);
    let haar = final_mean(&res, Algorithm::RotosolveHaar);
    let fqs = final_mean(&res, Algorithm::Fqs);
    check(
        fqs <= roto && haar <= roto,
        format!("mean trace distance fqs {fqs:.4}, rotosolve_haar {haar:.4}, rotosolve {roto:.4}"),
    )
}

#[test]
fn acceptance() {
    let mut results = vec![
        run_criterion(1, "ground energies", ground_energies),
        run_criterion(2, "evaluation accounting", evaluation_accounting),
        run_criterion(3, "per-step optimality", per_step_optimality),
    ];
    let chain = catch_unwind(chain_experiment).map_err(|_| "chain experiment panicked".to_string());
    results.push(run_criterion(4, "monotone convergence", || monotone_traces(chain.as_ref().map_err(Clone::clone)?)));
    results.push(run_criterion(5, "convergence ordering", || chain_ordering(chain.as_ref().map_err(Clone::clone)?)));
    results.push(run_criterion(6, "gate round-trips", round_trips));
    results.push(run_criterion(7, "shot-noise statistics", shot_statistics));
    results.push(run_criterion(8, "random-state ordering", random_state_ordering));

    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, ok)| !**ok).map(|(i, _)| i + 1).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
