//! Fixed inputs shared by the benchmarks.

use theta_core::multiplicity::e6_weights_up_to;
use theta_core::weights::dominant_weights_up_to;
use theta_core::{E6Weight, HighestWeight};

/// SL₉ weights with |Λ| divisible by 3 and entries ≤ `max`.
pub fn e8_lattice_weights(max: i64) -> Vec<HighestWeight> {
    dominant_weights_up_to(9, max).into_iter().filter(|l| l.size() % 3 == 0).collect()
}

/// Every E6 weight with entries ≤ `max`.
pub fn e6_weights(max: u32) -> Vec<E6Weight> {
    e6_weights_up_to(max)
}

/// A handful of larger SL₉ weights for single-evaluation timings.
pub fn e8_samples() -> Vec<HighestWeight> {
    [&[1, 1, 1][..], &[2, 1], &[4, 2], &[3, 3, 3, 0, 0, 0, 0, 0], &[4, 4, 2, 2, 1]]
        .iter()
        .map(|head| HighestWeight::padded(head, 9).expect("dominant"))
        .collect()
}
