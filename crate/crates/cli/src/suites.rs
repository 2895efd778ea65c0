//! Verification suites and their aggregated reports.

use std::f64::consts::PI;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use tlbraid_core::braidrep::{
    bell_matrix, bell_representation, check_braid_relations, check_unitarity, check_ybe,
    generator_power_identity, jones_representation,
};
use tlbraid_core::gates::{verify_cnot_decomposition, verify_psi_ghz_relation};
use tlbraid_core::grid::{grid_points, standard_phis, standard_thetas, GridPoint, SpecCoverage};
use tlbraid_core::linalg::{apply, matmul};
use tlbraid_core::states::build_structured_b;
use tlbraid_core::tla::{build_e, check_tl_relations};
use tlbraid_core::{BraidRepresentation, PowerIdentity, RelationReport, StateVector, TLParams};

use crate::config::{RepKind, RunConfig};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Tla,
    Braid,
    Ybe,
    Powers,
    Cnot,
    Psi,
    Structured,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Tla => "tla",
            Suite::Braid => "braid",
            Suite::Ybe => "ybe",
            Suite::Powers => "powers",
            Suite::Cnot => "cnot",
            Suite::Psi => "psi",
            Suite::Structured => "structured",
            Suite::All => "all",
        }
    }

    fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![
                Suite::Tla,
                Suite::Braid,
                Suite::Ybe,
                Suite::Powers,
                Suite::Cnot,
                Suite::Psi,
                Suite::Structured,
            ],
            s => vec![s],
        }
    }
}

/// Largest residual of one relation over every point of a suite.
#[derive(Clone, Debug, Serialize)]
pub struct RelationSummary {
    pub relation: String,
    pub max_residual: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub suite: String,
    pub point: String,
    pub relation: String,
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub pass: bool,
    pub points: usize,
    pub tolerance: f64,
    pub max_residual: f64,
    pub relations: Vec<RelationSummary>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyOutput {
    pub suite: String,
    pub pass: bool,
    pub grid: bool,
    pub results: Vec<SuiteResult>,
    pub failures: Vec<Failure>,
    /// Failures beyond the listed ones.
    pub failures_omitted: usize,
}

const MAX_LISTED_FAILURES: usize = 100;
const STRUCTURED_STATES: usize = 20;

struct Collector {
    suite: &'static str,
    tol: f64,
    points: usize,
    relations: Vec<RelationSummary>,
    notes: Vec<String>,
    failures: Vec<Failure>,
    omitted: usize,
}

impl Collector {
    fn new(suite: &'static str, tol: f64) -> Self {
        Self {
            suite,
            tol,
            points: 0,
            relations: Vec::new(),
            notes: Vec::new(),
            failures: Vec::new(),
            omitted: 0,
        }
    }

    fn add(&mut self, point: &str, report: &RelationReport) {
        self.points += 1;
        for check in &report.relations {
            match self
                .relations
                .iter_mut()
                .find(|r| r.relation == check.relation_name)
            {
                Some(r) => {
                    r.max_residual = r.max_residual.max(check.max_residual);
                    r.pass &= check.pass;
                }
                None => self.relations.push(RelationSummary {
                    relation: check.relation_name.clone(),
                    max_residual: check.max_residual,
                    pass: check.pass,
                }),
            }
            if !check.pass {
                if self.failures.len() < MAX_LISTED_FAILURES {
                    self.failures.push(Failure {
                        suite: self.suite.to_string(),
                        point: point.to_string(),
                        relation: check.relation_name.clone(),
                        residual: check.max_residual,
                    });
                } else {
                    self.omitted += 1;
                }
            }
        }
    }

    fn finish(self, failures: &mut Vec<Failure>, omitted: &mut usize) -> SuiteResult {
        let pass = self.relations.iter().all(|r| r.pass) && !self.relations.is_empty();
        let max_residual = self
            .relations
            .iter()
            .map(|r| r.max_residual)
            .fold(0.0, f64::max);
        failures.extend(self.failures);
        *omitted += self.omitted;
        SuiteResult {
            suite: self.suite.to_string(),
            pass,
            points: self.points,
            tolerance: self.tol,
            max_residual,
            relations: self.relations,
            notes: self.notes,
        }
    }
}

fn sweep(cfg: &RunConfig, full_up_to: usize, max_n: usize) -> Result<Vec<GridPoint>, CliError> {
    let top = cfg.n.unwrap_or(5).min(max_n);
    let ns: Vec<usize> = (1..=top).collect();
    let coverage = SpecCoverage::Exhaustive {
        full_up_to,
        extra: 2,
        seed: cfg.seed,
    };
    Ok(grid_points(
        &standard_thetas(),
        &standard_phis(),
        &ns,
        coverage,
    )?)
}

fn single_point(cfg: &RunConfig) -> Result<GridPoint, CliError> {
    let shape = cfg.shape(3)?;
    Ok(GridPoint {
        params: cfg.params,
        shape,
        spec: cfg.spec(shape)?,
    })
}

fn points(
    cfg: &RunConfig,
    grid: bool,
    full_up_to: usize,
    max_n: usize,
) -> Result<Vec<GridPoint>, CliError> {
    if grid {
        sweep(cfg, full_up_to, max_n)
    } else {
        Ok(vec![single_point(cfg)?])
    }
}

fn bell_rep(cfg: &RunConfig) -> Result<BraidRepresentation, CliError> {
    Ok(bell_representation(cfg.n.unwrap_or(3))?)
}

fn run_tla(cfg: &RunConfig, grid: bool) -> Result<Collector, CliError> {
    let mut col = Collector::new("tla", cfg.tol);
    for pt in points(cfg, grid, 5, 8)? {
        let pair = build_e(pt.shape, &pt.params, &pt.spec)?;
        col.add(
            &pt.label(),
            &check_tl_relations(&pair.e1, &pair.e2, &pt.params, cfg.tol)?,
        );
    }
    Ok(col)
}

fn braid_report(rep: &BraidRepresentation, tol: f64) -> Result<RelationReport, CliError> {
    let mut report = check_braid_relations(rep, tol)?;
    report.merge(check_unitarity(rep, tol)?);
    Ok(report)
}

fn run_braid(cfg: &RunConfig, grid: bool) -> Result<Collector, CliError> {
    let mut col = Collector::new("braid", cfg.tol);
    if cfg.rep == RepKind::Bell {
        let rep = bell_rep(cfg)?;
        col.add(
            &format!("bell m={}", rep.strands()),
            &braid_report(&rep, cfg.tol)?,
        );
        return Ok(col);
    }
    for pt in points(cfg, grid, 5, 8)? {
        let rep = jones_representation(&pt.params, pt.shape, &pt.spec)?;
        col.add(&pt.label(), &braid_report(&rep, cfg.tol)?);
    }
    Ok(col)
}

fn run_ybe(cfg: &RunConfig) -> Result<Collector, CliError> {
    let mut col = Collector::new("ybe", cfg.tol);
    col.add("R", &check_ybe(&bell_matrix(), cfg.tol)?);
    Ok(col)
}

fn run_powers(cfg: &RunConfig, grid: bool) -> Result<Collector, CliError> {
    let mut col = Collector::new("powers", cfg.tol);
    let reps: Vec<(String, BraidRepresentation)> = if cfg.rep == RepKind::Bell {
        let rep = bell_rep(cfg)?;
        vec![(format!("bell m={}", rep.strands()), rep)]
    } else {
        points(cfg, grid, 3, 6)?
            .into_iter()
            .map(|pt| {
                Ok((
                    pt.label(),
                    jones_representation(&pt.params, pt.shape, &pt.spec)?,
                ))
            })
            .collect::<Result<_, CliError>>()?
    };
    let mut orders = Vec::new();
    for (label, rep) in reps {
        match generator_power_identity(&rep, cfg.tol)? {
            PowerIdentity::Applicable { order, report } => {
                if !orders.contains(&order) {
                    orders.push(order);
                }
                col.add(&label, &report);
            }
            PowerIdentity::NotApplicable { reason } => {
                col.points += 1;
                col.notes.push(format!("{label}: not applicable, {reason}"));
            }
        }
    }
    orders.sort_unstable();
    col.notes
        .insert(0, format!("generator orders m = {orders:?}"));
    Ok(col)
}

/// The local unitaries of the decomposition belong to `theta = pi/8`, `phi = 0`,
/// so the suite runs there regardless of the configured angles.
fn run_cnot(cfg: &RunConfig) -> Result<Collector, CliError> {
    let mut col = Collector::new("cnot", cfg.tol);
    let params = TLParams::new(PI / 8.0, 0.0)?;
    col.add("theta=pi/8 phi=0", &verify_cnot_decomposition(&params)?);
    if (cfg.params.theta() - PI / 8.0).abs() > 1e-15 || cfg.params.phi() != 0.0 {
        col.notes.push(
            "evaluated at theta = pi/8, phi = 0, where alpha, beta, gamma, delta apply".into(),
        );
    }
    Ok(col)
}

fn run_psi(cfg: &RunConfig) -> Result<Collector, CliError> {
    let mut col = Collector::new("psi", cfg.tol);
    col.add("bell m=3", &verify_psi_ghz_relation()?);
    Ok(col)
}

/// `B(n,k)` in two-term form against the dense `b1 b2` on seeded random states.
fn run_structured(cfg: &RunConfig, grid: bool) -> Result<Collector, CliError> {
    let mut col = Collector::new("structured", cfg.tol);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for pt in points(cfg, grid, 4, 8)? {
        let rep = jones_representation(&pt.params, pt.shape, &pt.spec)?;
        let dense = matmul(&rep.generators()[0], &rep.generators()[1])?;
        let bop = build_structured_b(pt.shape, &pt.params, &pt.spec)?;
        let mut forward = 0.0f64;
        let mut round_trip = 0.0f64;
        for _ in 0..STRUCTURED_STATES {
            let v = StateVector::random(pt.shape.n(), &mut rng);
            let fast = bop.apply(&v, false)?;
            forward = forward.max(fast.max_abs_diff(&apply(&dense, &v)?)?);
            round_trip = round_trip.max(bop.apply(&fast, true)?.max_abs_diff(&v)?);
        }
        let mut report = RelationReport::new();
        report.record("structured B v = b1 b2 v", forward, cfg.tol);
        report.record("B^-1 B v = v", round_trip, cfg.tol);
        col.add(&pt.label(), &report);
    }
    Ok(col)
}

pub fn verify(cfg: &RunConfig, suite: Suite, grid: bool) -> Result<VerifyOutput, CliError> {
    let mut failures = Vec::new();
    let mut omitted = 0;
    let mut results = Vec::new();
    for s in suite.expand() {
        let col = match s {
            Suite::Tla => run_tla(cfg, grid)?,
            Suite::Braid => run_braid(cfg, grid)?,
            Suite::Ybe => run_ybe(cfg)?,
            Suite::Powers => run_powers(cfg, grid)?,
            Suite::Cnot => run_cnot(cfg)?,
            Suite::Psi => run_psi(cfg)?,
            Suite::Structured => run_structured(cfg, grid)?,
            Suite::All => unreachable!("expanded above"),
        };
        results.push(col.finish(&mut failures, &mut omitted));
    }
    Ok(VerifyOutput {
        suite: suite.name().to_string(),
        pass: results.iter().all(|r| r.pass),
        grid,
        results,
        failures,
        failures_omitted: omitted,
    })
}
