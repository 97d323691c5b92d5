use afom_core::accel::{GapCheck, LipschitzStrategy, StopRule};
use afom_core::eigopt::{duality_gap_eig, generate_instance, relative_accuracy_mu, DensityMatrix, EigProblem};
use afom_core::prox::{EntropySimplex, ProxSetup, SimplexPoint};
use afom_core::smoothing::{primal_dual_gap, solve_smoothed, MinMaxProblem};

const STRATEGIES: [LipschitzStrategy; 3] = [
    LipschitzStrategy::NonAdaptive,
    LipschitzStrategy::Aggressive { kappa: 1e-12 },
    LipschitzStrategy::Hybrid {
        alpha: 3.0,
        kappa: 1e-12,
    },
];

fn stop(max_iters: usize, target: f64) -> StopRule {
    StopRule {
        max_iters,
        gap_check: Some(GapCheck {
            period: 10,
            dense_prefix: 20,
            target,
        }),
    }
}

#[test]
fn gap_stays_below_guarantee_at_every_checkpoint() {
    for seed in 0..4 {
        let inst = generate_instance(8, 20, 0.2, seed).unwrap();
        let problem = EigProblem::new(&inst).unwrap();
        let setup = EntropySimplex::new(inst.m()).unwrap();
        let mu = relative_accuracy_mu(0.01, inst.l_prime(), inst.n()).unwrap();
        for strategy in STRATEGIES {
            let out = solve_smoothed(&problem, &setup, mu, strategy, &stop(300, 0.0), true).unwrap();
            assert!(!out.checkpoints.is_empty());
            for c in &out.checkpoints {
                assert!(c.gap >= -1e-8, "{c:?}");
                assert!(c.gap <= c.bound + 1e-8, "seed {seed} {strategy:?} {c:?}");
            }
            for cert in out.run.certificates.as_ref().unwrap() {
                assert!(cert.holds(), "seed {seed} {strategy:?} {cert:?}");
            }
        }
    }
}

#[test]
fn aggregated_dual_stays_on_matrix_simplex() {
    let inst = generate_instance(6, 15, 0.3, 11).unwrap();
    let problem = EigProblem::new(&inst).unwrap();
    let setup = EntropySimplex::new(6).unwrap();
    let mu = relative_accuracy_mu(0.01, inst.l_prime(), 15).unwrap();
    for iters in [0, 1, 7, 50, 120] {
        let out = solve_smoothed(&problem, &setup, mu, STRATEGIES[2], &stop(iters, 0.0), false).unwrap();
        assert_eq!(out.dual.len(), iters + 1);
        let y = out.y_bar().unwrap();
        assert!((y.trace() - 1.0).abs() <= 1e-10);
        assert!(DensityMatrix::new(y.clone()).is_ok());
        // The generic gap and the eigenvalue-specific one agree.
        let x = SimplexPoint::new(out.x_bar().to_vec()).unwrap();
        let specific = duality_gap_eig(&x, &DensityMatrix::new(y.clone()).unwrap(), &inst).unwrap();
        let generic = primal_dual_gap(&problem, out.x_bar(), &y).unwrap();
        assert!((specific - generic).abs() <= 1e-10);
        if iters > 0 {
            assert_eq!(out.run.final_gap.unwrap().to_bits(), generic.to_bits());
        }
    }
}

#[test]
fn converges_to_relative_target() {
    let inst = generate_instance(5, 10, 0.3, 2).unwrap();
    let problem = EigProblem::new(&inst).unwrap();
    let setup = EntropySimplex::new(5).unwrap();
    let eps = 0.01;
    let target = eps * inst.l_prime();
    let mu = relative_accuracy_mu(eps, inst.l_prime(), inst.n()).unwrap();
    for strategy in STRATEGIES {
        let out = solve_smoothed(&problem, &setup, mu, strategy, &stop(20_000, target), false).unwrap();
        assert!(out.run.final_gap.unwrap() <= target, "{strategy:?}");
        assert!(setup.contains(out.x_bar(), 1e-9));
        assert!(problem.dual_diameter() > 0.0);
    }
}
