//! Parameter grids for verification sweeps.
//!
//! Points are produced in a fixed order (theta, phi, n, k, involutions) so
//! that sweeps and their reports are reproducible.

use std::f64::consts::PI;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::Result;
use crate::tla::{Involution, InvolutionSpec, RepShape, TLParams};

/// `{pi/8, -pi/8, pi/6, pi + pi/8, pi - pi/8}`.
pub fn standard_thetas() -> Vec<f64> {
    vec![PI / 8.0, -PI / 8.0, PI / 6.0, PI + PI / 8.0, PI - PI / 8.0]
}

/// `{0, pi/3}`.
pub fn standard_phis() -> Vec<f64> {
    vec![0.0, PI / 3.0]
}

/// Every assignment of the five named involutions to the `n - 1` slots.
pub fn all_specs(shape: RepShape) -> Vec<InvolutionSpec> {
    let named = Involution::named();
    let slots = shape.n() - 1;
    let count = named.len().pow(slots as u32);
    (0..count)
        .map(|mut code| {
            let mut chosen = Vec::with_capacity(slots);
            for _ in 0..slots {
                chosen.push(named[code % named.len()].clone());
                code /= named.len();
            }
            chosen.reverse();
            InvolutionSpec::new(shape, chosen).expect("slot count matches")
        })
        .collect()
}

/// The standard assignment, each uniform assignment, and `extra` seeded random mixes.
pub fn sampled_specs(shape: RepShape, extra: usize, seed: u64) -> Vec<InvolutionSpec> {
    let named = Involution::named();
    let mut specs = vec![InvolutionSpec::standard(shape)];
    for s in &named {
        let spec = InvolutionSpec::uniform(shape, s.clone());
        if !specs.contains(&spec) {
            specs.push(spec);
        }
    }
    let mut rng = StdRng::seed_from_u64(seed ^ ((shape.n() as u64) << 32 | shape.k() as u64));
    for _ in 0..extra {
        let slots = (1..shape.n())
            .map(|_| named[rng.random_range(0..named.len())].clone())
            .collect();
        specs.push(InvolutionSpec::new(shape, slots).expect("slot count matches"));
    }
    specs
}

/// How the involution assignments of a sweep are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecCoverage {
    /// Every assignment when `n <= full_up_to`, sampled ones above.
    Exhaustive {
        full_up_to: usize,
        extra: usize,
        seed: u64,
    },
    /// Only the given assignment (or the standard one).
    Single,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridPoint {
    pub params: TLParams,
    pub shape: RepShape,
    pub spec: InvolutionSpec,
}

impl GridPoint {
    pub fn label(&self) -> String {
        format!(
            "theta={:.6} phi={:.6} n={} k={} s={}",
            self.params.theta(),
            self.params.phi(),
            self.shape.n(),
            self.shape.k(),
            self.spec.render()
        )
    }
}

/// All points for the given angles, qubit counts and coverage; every `k` in `1..=n`.
pub fn grid_points(
    thetas: &[f64],
    phis: &[f64],
    ns: &[usize],
    coverage: SpecCoverage,
) -> Result<Vec<GridPoint>> {
    let mut points = Vec::new();
    for &theta in thetas {
        for &phi in phis {
            let params = TLParams::new(theta, phi)?;
            for &n in ns {
                for k in 1..=n {
                    let shape = RepShape::new(n, k)?;
                    let specs = match coverage {
                        SpecCoverage::Exhaustive {
                            full_up_to,
                            extra,
                            seed,
                        } => {
                            if n <= full_up_to {
                                all_specs(shape)
                            } else {
                                sampled_specs(shape, extra, seed)
                            }
                        }
                        SpecCoverage::Single => vec![InvolutionSpec::standard(shape)],
                    };
                    points.extend(specs.into_iter().map(|spec| GridPoint {
                        params,
                        shape,
                        spec,
                    }));
                }
            }
        }
    }
    Ok(points)
}
