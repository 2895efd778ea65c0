#![allow(dead_code)]

use std::f64::consts::PI;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tlbraid_core::linalg::c;
use tlbraid_core::{
    ComplexMatrix, Involution, InvolutionSpec, RepShape, StateVector, TLParams, C64,
};

pub fn complex() -> impl Strategy<Value = C64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| c(re, im))
}

pub fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec(complex(), rows * cols)
        .prop_map(move |e| ComplexMatrix::new(rows, cols, e).unwrap())
}

/// `theta` within `pi/6` of `0`, `pi/2`, `pi` or `3pi/2`, and any `phi`.
pub fn params() -> impl Strategy<Value = TLParams> {
    (-PI / 6.0..PI / 6.0, 0usize..4, 0.0..2.0 * PI).prop_map(|(offset, quarter, phi)| {
        TLParams::new(offset + quarter as f64 * PI / 2.0, phi).unwrap()
    })
}

/// A shape with `n` in `range` and a spec drawn from the named involutions.
pub fn shaped_spec(
    range: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = (RepShape, InvolutionSpec)> {
    range
        .prop_flat_map(|n| (Just(n), 1..=n, prop::collection::vec(0usize..5, n - 1)))
        .prop_map(|(n, k, picks)| {
            let shape = RepShape::new(n, k).unwrap();
            let named = Involution::named();
            let slots = picks.into_iter().map(|i| named[i].clone()).collect();
            (shape, InvolutionSpec::new(shape, slots).unwrap())
        })
}

pub fn random_state(n: usize, seed: u64) -> StateVector {
    StateVector::random(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// A generic single-qubit unitary.
pub fn local_unitary() -> impl Strategy<Value = ComplexMatrix> {
    (0.0..PI, 0.0..2.0 * PI, 0.0..2.0 * PI, 0.0..2.0 * PI).prop_map(|(t, b, g, global)| {
        let (cs, sn) = (t.cos(), t.sin());
        let ph = C64::from_polar(1.0, global);
        ComplexMatrix::from_rows(&[
            [c(cs, 0.0), -C64::from_polar(sn, g)],
            [C64::from_polar(sn, b), C64::from_polar(cs, b + g)],
        ])
        .unwrap()
        .scale(ph)
    })
}
