//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the process exits nonzero if any criterion fails.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tlbraid_core::braidrep::{
    bell_matrix, bell_representation, check_braid_relations, check_unitarity, check_ybe,
    generator_power_identity, jones_representation,
};
use tlbraid_core::entangle::reduced_density;
use tlbraid_core::entangle::{measure_qubit, vn_entropy};
use tlbraid_core::gates::{bell_psi, ghz_reference, psi_ghz_residual, verify_cnot_decomposition};
use tlbraid_core::grid::{grid_points, standard_phis, standard_thetas, SpecCoverage};
use tlbraid_core::linalg::{apply, c, matmul, matpow, phase_equivalent, I, ONE, ZERO};
use tlbraid_core::states::{build_structured_b, cluster_like_state, ghz_state, standard_b};
use tlbraid_core::tla::{build_e, check_tl_relations};
use tlbraid_core::{ComplexMatrix, PhaseMode, StateVector, TLParams, C64};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    format!("error: {e}")
}

fn state(n: usize, terms: &[(usize, C64)]) -> StateVector {
    let mut amps = vec![ZERO; 1 << n];
    for &(idx, z) in terms {
        amps[idx] += z;
    }
    StateVector::new(n, amps).expect("valid amplitudes")
}

/// `max |u - e^{i t} v|` at the optimal global phase, and that phase.
fn phase_aligned_residual(u: &StateVector, v: &StateVector) -> (f64, C64) {
    let overlap = v.inner(u).expect("same size");
    let phase = if overlap.norm() > 0.0 {
        overlap / overlap.norm()
    } else {
        ONE
    };
    (u.max_abs_diff(&v.scale(phase)).expect("same size"), phase)
}

fn tla_grid() -> Vec<tlbraid_core::grid::GridPoint> {
    let coverage = SpecCoverage::Exhaustive {
        full_up_to: 5,
        extra: 0,
        seed: 0,
    };
    grid_points(
        &standard_thetas(),
        &standard_phis(),
        &[1, 2, 3, 4, 5],
        coverage,
    )
    .expect("admissible grid")
}

fn c1_tla_grid() -> Outcome {
    let start = Instant::now();
    let points = tla_grid();
    let mut worst = 0.0f64;
    for pt in &points {
        let pair = build_e(pt.shape, &pt.params, &pt.spec).map_err(fail)?;
        let report = check_tl_relations(&pair.e1, &pair.e2, &pt.params, 1e-10).map_err(fail)?;
        worst = worst.max(report.max_residual());
        if !report.pass {
            let names: Vec<_> = report.failures().map(|f| f.relation_name.clone()).collect();
            return Err(format!("{}: {}", pt.label(), names.join("; ")));
        }
    }
    let elapsed = start.elapsed();
    check(
        elapsed < Duration::from_secs(30),
        format!(
            "{} points, max residual {worst:.2e}, {:.2?}",
            points.len(),
            elapsed
        ),
    )
}

fn c2_braid_unitarity() -> Outcome {
    let points = tla_grid();
    let mut worst = 0.0f64;
    for pt in &points {
        let rep = jones_representation(&pt.params, pt.shape, &pt.spec)
            .map_err(|e| format!("{}: {e}", pt.label()))?;
        let mut report = check_braid_relations(&rep, 1e-10).map_err(fail)?;
        report.merge(check_unitarity(&rep, 1e-10).map_err(fail)?);
        worst = worst.max(report.max_residual());
        if !report.pass {
            return Err(pt.label());
        }
    }
    Ok(format!("{} points, max residual {worst:.2e}", points.len()))
}

fn c3_ybe() -> Outcome {
    let report = check_ybe(&bell_matrix(), 1e-14).map_err(fail)?;
    check(
        report.pass,
        format!("residual {:.2e}", report.max_residual()),
    )
}

fn c4_b21_matrix() -> Outcome {
    let s = -FRAC_1_SQRT_2;
    let (o, l) = (ZERO, ONE);
    let displayed =
        ComplexMatrix::from_rows(&[[l, o, o, -I], [o, l, -I, o], [o, l, I, o], [l, o, o, I]])
            .unwrap()
            .scale(c(s, 0.0));
    let b21 = standard_b(2, 1, &TLParams::new(PI / 8.0, 0.0).unwrap())
        .and_then(|b| b.dense(false))
        .map_err(fail)?;
    let residual = b21.max_abs_diff(&displayed).map_err(fail)?;
    let columnwise =
        phase_equivalent(&b21, &bell_matrix(), PhaseMode::Columnwise, 1e-13).map_err(fail)?;
    check(
        residual <= 1e-13 && columnwise,
        format!(
            "entrywise residual {residual:.2e}, columnwise phase-equivalent to R: {columnwise}"
        ),
    )
}

fn c5_cnot() -> Outcome {
    let report = verify_cnot_decomposition(&TLParams::default()).map_err(fail)?;
    let residual = report.max_residual();
    check(residual <= 1e-13, format!("residual {residual:.2e}"))
}

fn c6_state_actions() -> Outcome {
    let p = TLParams::default();
    let s = FRAC_1_SQRT_2;
    let b21 = standard_b(2, 1, &p).map_err(fail)?;
    let on_00 = b21
        .apply(&StateVector::basis(2, 0b00).unwrap(), false)
        .map_err(fail)?;
    let on_10 = b21
        .apply(&StateVector::basis(2, 0b10).unwrap(), false)
        .map_err(fail)?;
    let want_00 = state(2, &[(0b00, c(-s, 0.0)), (0b11, c(-s, 0.0))]);
    let want_10 = state(2, &[(0b10, c(0.0, -s)), (0b01, c(0.0, s))]);
    let r00 = on_00.max_abs_diff(&want_00).unwrap();
    let r10 = on_10.max_abs_diff(&want_10).unwrap();
    if r00 > 1e-13 || r10 > 1e-13 {
        return Err(format!(
            "B(2,1)|00> residual {r00:.2e}, B(2,1)|10> residual {r10:.2e}"
        ));
    }

    // The displayed B(n,1) sends |0...0> to -(|0...0> + i|1...1>)/sqrt 2, so
    // the quoted form is compared up to its global phase.
    let mut worst = 0.0f64;
    let mut slowest = Duration::ZERO;
    let mut phase = ONE;
    for n in 2..=20 {
        let start = Instant::now();
        let out = ghz_state(n, &p, true).map_err(fail)?;
        let elapsed = start.elapsed();
        let want = state(n, &[(0, c(s, 0.0)), ((1 << n) - 1, c(0.0, s))]);
        let (residual, ph) = phase_aligned_residual(&out, &want);
        if residual > 1e-13 || elapsed >= Duration::from_secs(1) {
            return Err(format!("n={n}: residual {residual:.2e} in {elapsed:.2?}"));
        }
        worst = worst.max(residual);
        slowest = slowest.max(elapsed);
        phase = ph;
    }
    Ok(format!(
        "B(2,1) residuals {r00:.2e}, {r10:.2e}; B^-1(n,1)|0..0> for n=2..20 residual {worst:.2e} \
         up to global phase {:+.0}{:+.0}i, slowest {slowest:.2?}",
        phase.re, phase.im
    ))
}

fn c7_cluster() -> Outcome {
    let out = cluster_like_state(4, 3, &TLParams::default()).map_err(fail)?;
    let h = c(0.5, 0.0);
    let want = state(4, &[(0b0000, h), (0b0011, h), (0b1100, h), (0b1111, -h)]);
    let fidelity = out.fidelity(&want).map_err(fail)?;
    check(
        fidelity >= 1.0 - 1e-10,
        format!("fidelity 1 - {:.2e}", 1.0 - fidelity),
    )
}

fn c8_oracle() -> Outcome {
    let coverage = SpecCoverage::Exhaustive {
        full_up_to: 4,
        extra: 1,
        seed: 8,
    };
    let mut worst = 0.0f64;
    let mut count = 0usize;
    for n in 1..=8 {
        let points =
            grid_points(&standard_thetas(), &standard_phis(), &[n], coverage).map_err(fail)?;
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let states: Vec<StateVector> = (0..100).map(|_| StateVector::random(n, &mut rng)).collect();
        for pt in &points {
            let rep = jones_representation(&pt.params, pt.shape, &pt.spec).map_err(fail)?;
            let dense = matmul(&rep.generators()[0], &rep.generators()[1]).map_err(fail)?;
            let bop = build_structured_b(pt.shape, &pt.params, &pt.spec).map_err(fail)?;
            for v in &states {
                let fast = bop.apply(v, false).map_err(fail)?;
                let slow = apply(&dense, v).map_err(fail)?;
                let residual = fast.max_abs_diff(&slow).unwrap();
                if residual > 1e-11 {
                    return Err(format!("{}: residual {residual:.2e}", pt.label()));
                }
                worst = worst.max(residual);
            }
            count += 1;
        }
    }
    Ok(format!(
        "{count} points x 100 states, max residual {worst:.2e}"
    ))
}

fn c9_powers() -> Outcome {
    let coverage = SpecCoverage::Exhaustive {
        full_up_to: 3,
        extra: 1,
        seed: 9,
    };
    let points =
        grid_points(&[PI / 8.0], &standard_phis(), &[1, 2, 3, 4, 5], coverage).map_err(fail)?;
    let id = |g: &ComplexMatrix| ComplexMatrix::identity(g.rows());
    let mut worst = 0.0f64;
    for pt in &points {
        let rep = jones_representation(&pt.params, pt.shape, &pt.spec).map_err(fail)?;
        for g in rep.generators() {
            let residual = matpow(g, 16).map_err(fail)?.max_abs_diff(&id(g)).unwrap();
            if residual > 1e-10 {
                return Err(format!("{}: b^16 residual {residual:.2e}", pt.label()));
            }
            worst = worst.max(residual);
        }
        if !generator_power_identity(&rep, 1e-10).map_err(fail)?.pass() {
            return Err(format!("{}: power identity", pt.label()));
        }
    }
    let r = bell_matrix();
    let r8 = matpow(&r, 8).map_err(fail)?.max_abs_diff(&id(&r)).unwrap();
    let bell =
        generator_power_identity(&bell_representation(3).map_err(fail)?, 1e-10).map_err(fail)?;
    check(
        r8 <= 1e-10 && bell.pass(),
        format!(
            "b_i^16 over {} points max residual {worst:.2e}; R^8 residual {r8:.2e}",
            points.len()
        ),
    )
}

fn c10_entanglement() -> Outcome {
    let ghz = ghz_reference(3).map_err(fail)?;
    let mut ghz_worst = 0.0f64;
    for outcome in [0, 1] {
        let (_, post) = measure_qubit(&ghz, 1, outcome).map_err(fail)?;
        for cut in [[1], [2]] {
            let s = vn_entropy(&reduced_density(&post, &cut).map_err(fail)?).map_err(fail)?;
            ghz_worst = ghz_worst.max(s.abs());
        }
    }
    let psi = bell_psi().map_err(fail)?;
    let mut psi_worst = 0.0f64;
    for outcome in [0, 1] {
        let (_, post) = measure_qubit(&psi, 1, outcome).map_err(fail)?;
        for cut in [[1], [2]] {
            let s = vn_entropy(&reduced_density(&post, &cut).map_err(fail)?).map_err(fail)?;
            psi_worst = psi_worst.max((s - 1.0).abs());
        }
    }
    let relation = psi_ghz_residual(&ghz).map_err(fail)?;
    check(
        ghz_worst <= 1e-9 && psi_worst <= 1e-9 && relation <= 1e-13,
        format!(
            "GHZ post-measurement entropy {ghz_worst:.2e}; psi post-measurement |S - 1| {psi_worst:.2e}; \
             psi vs HHH GHZ residual {relation:.2e}"
        ),
    )
}

fn c11_normalization() -> Outcome {
    let mut worst = 0.0f64;
    for &theta in &standard_thetas() {
        for &phi in &standard_phis() {
            let p = TLParams::new(theta, phi).map_err(fail)?;
            let a_inv2 = (p.a_coef() * p.a_coef()).inv();
            let dab = p.d() * p.a() * p.b();
            let first = (p.d() * p.a() * p.a()).powi(2) + dab * dab;
            let second = (c(p.d() * p.b() * p.b(), 0.0) + a_inv2).norm_sqr()
                + (p.a_coef().powu(4) * dab).norm_sqr();
            worst = worst.max((first - 1.0).abs()).max((second - 1.0).abs());
            for k in 1..=3 {
                let bop = standard_b(3, k, &p).map_err(fail)?;
                for r in bop.normalization_residuals() {
                    worst = worst.max(r);
                }
            }
        }
    }
    check(worst <= 1e-14, format!("max residual {worst:.2e}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("TLA relations on the grid", c1_tla_grid),
        ("braid relations and unitarity", c2_braid_unitarity),
        ("Yang-Baxter equation for R", c3_ybe),
        ("B(2,1) matrix", c4_b21_matrix),
        ("CNOT decomposition", c5_cnot),
        ("state actions", c6_state_actions),
        ("cluster state", c7_cluster),
        ("structured vs dense", c8_oracle),
        ("finite-order generators", c9_powers),
        ("entanglement contrast", c10_entanglement),
        ("normalization identities", c11_normalization),
    ];
    let mut failed = 0;
    for (idx, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (verdict, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!(
            "criterion {:>2} {verdict} [{name}] {detail} ({elapsed:.2?})",
            idx + 1
        );
        if outcome.is_err() {
            failed += 1;
        }
    }
    if failed == 0 {
        println!("acceptance: all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
