//! Link-level simulation of terahertz ultra-massive MIMO
//! array-of-subarrays (AoSA) systems.
//!
//! The library is organized around five building blocks:
//!
//! - [`physics`]: molecular absorption, spreading loss, total path loss,
//!   and absorption-noise PSD over frequency and distance.
//! - [`array`]: AoSA geometries, steering vectors, array gain, and
//!   frequency-interleaved antenna maps.
//! - [`channel`]: spherical-wave line-of-sight channel matrices at the
//!   sub-array level, their singular-value metrics, and condition-number
//!   maps.
//! - [`modem`]: spatial modulation and spatial multiplexing with
//!   exhaustive maximum-likelihood detection and a seeded Monte Carlo
//!   bit-error-rate engine.
//! - [`allocation`]: distance-dependent transmission windows,
//!   water-filling power allocation, and range maximization for a target
//!   rate.
//!
//! All operations are deterministic: grid sweeps and Monte Carlo trials
//! are parallelized internally but produce results independent of the
//! thread count.

pub mod allocation;
pub mod array;
pub mod channel;
pub mod modem;
pub mod physics;
mod svd;

pub use allocation::{
    find_windows, max_distance_for_rate, waterfill, LinkBudget, MaxDistance, PowerAllocation,
    Window, WindowSet,
};
pub use array::{
    array_gain_db, assign_interleaved_map, steering_vector, AosaGeometry, FrequencyMap,
    InterleaveScheme, SteeringVector,
};
pub use channel::{
    channel_metrics, condition_map, los_channel, ChannelMatrix, ChannelMetrics, ConditionMap,
    ConditionMapConfig, LinkConfig, Reflection,
};
pub use modem::{
    ml_detect, run_ber, sm_encode, smx_encode, BerConfig, BerCurve, Constellation, NoiseModel,
    Scheme, SmConfig, SmxConfig,
};
pub use physics::{
    absorption_coefficient, absorption_noise_psd, load_catalog, molecular_density,
    spreading_loss_db, total_path_loss_db, transmittance, AbsorptionOptions, LineCatalog, Medium,
    PhysicalConstants, SpectralLine, SPEED_OF_LIGHT,
};

/// `n` evenly spaced points from `lo` to `hi` inclusive (`[lo]` for n = 1).
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 1, "linspace needs at least one point");
    if n == 1 {
        return vec![lo];
    }
    let step = (hi - lo) / (n - 1) as f64;
    (0..n).map(|i| lo + step * i as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::linspace;

    #[test]
    fn linspace_endpoints() {
        let g = linspace(1.0, 3.0, 5);
        assert_eq!(g.len(), 5);
        assert_eq!(g[0], 1.0);
        assert_eq!(g[4], 3.0);
        assert_eq!(linspace(2.0, 9.0, 1), vec![2.0]);
    }
}
