//! Array-of-subarrays geometries, steering vectors, and interleaved
//! frequency maps.
//!
//! An AoSA is a planar grid of sub-arrays (SAs), each itself a planar grid
//! of antenna elements (AEs). SA origins sit at pitch `delta`, AEs within
//! an SA at pitch `delta_small`, all in the z = 0 plane with x along
//! columns and y along rows. The plasmonic wavelength is tied to the
//! design frequency only: `lambda_spp = lambda / plasmonic_factor`.
//!
//! Angle convention: `theta` is the polar angle from the array normal
//! (+z), `phi` the azimuth in the array plane measured from +x.

use std::io::{self, Write};

use num_complex::Complex64;
use thiserror::Error;

use crate::physics::SPEED_OF_LIGHT;

/// Default ratio of free-space to plasmonic wavelength for graphene.
pub const DEFAULT_PLASMONIC_FACTOR: f64 = 15.0;

#[derive(Debug, Error)]
pub enum ArrayError {
    #[error("{quantity} must be positive, got {value}")]
    NonPositive { quantity: &'static str, value: f64 },
    #[error("grid counts must be at least 1")]
    EmptyGrid,
    #[error("inter-SA spacing {delta} is below inter-AE spacing {delta_small}")]
    SpacingOrder { delta: f64, delta_small: f64 },
    #[error(
        "SAs would overlap: delta {delta} < AE span {span} along the {axis} axis"
    )]
    SaOverlap {
        delta: f64,
        span: f64,
        axis: &'static str,
    },
    #[error("sub-array index {index} out of range (have {count})")]
    SaIndex { index: usize, count: usize },
    #[error("array has no elements")]
    NoElements,
    #[error("carrier list is empty")]
    NoCarriers,
    #[error("carriers must be sorted ascending and positive")]
    BadCarriers,
    #[error(
        "infeasible interleaving: carrier {carrier_index} at {carrier_hz} Hz has same-carrier \
         spacing {spacing} m, below the required {required} m"
    )]
    InfeasibleInterleaving {
        carrier_index: usize,
        carrier_hz: f64,
        spacing: f64,
        required: f64,
    },
}

/// Planar array-of-subarrays geometry.
///
/// Element positions are generated deterministically from the grid
/// parameters; identical parameters yield bit-identical positions. Global
/// AE ordering is SA-major (SA grid row-major), then AE row-major within
/// the SA.
#[derive(Debug, Clone, PartialEq)]
pub struct AosaGeometry {
    sa_rows: usize,
    sa_cols: usize,
    ae_rows: usize,
    ae_cols: usize,
    delta: f64,
    delta_small: f64,
    f_design: f64,
    plasmonic_factor: f64,
    positions: Vec<[f64; 3]>,
}

impl AosaGeometry {
    /// Lay out `sa_rows x sa_cols` sub-arrays of `ae_rows x ae_cols`
    /// elements each.
    #[allow(clippy::too_many_arguments)]
    pub fn build(
        sa_rows: usize,
        sa_cols: usize,
        ae_rows: usize,
        ae_cols: usize,
        delta: f64,
        delta_small: f64,
        f_design: f64,
        plasmonic_factor: f64,
    ) -> Result<Self, ArrayError> {
        if sa_rows < 1 || sa_cols < 1 || ae_rows < 1 || ae_cols < 1 {
            return Err(ArrayError::EmptyGrid);
        }
        for (quantity, value) in [
            ("delta", delta),
            ("delta_small", delta_small),
            ("f_design", f_design),
            ("plasmonic_factor", plasmonic_factor),
        ] {
            if !(value > 0.0) {
                return Err(ArrayError::NonPositive { quantity, value });
            }
        }
        if delta < delta_small {
            return Err(ArrayError::SpacingOrder { delta, delta_small });
        }
        let span_x = (ae_cols - 1) as f64 * delta_small;
        let span_y = (ae_rows - 1) as f64 * delta_small;
        if sa_cols > 1 && delta < span_x {
            return Err(ArrayError::SaOverlap {
                delta,
                span: span_x,
                axis: "x",
            });
        }
        if sa_rows > 1 && delta < span_y {
            return Err(ArrayError::SaOverlap {
                delta,
                span: span_y,
                axis: "y",
            });
        }

        let mut positions = Vec::with_capacity(sa_rows * sa_cols * ae_rows * ae_cols);
        for sr in 0..sa_rows {
            for sc in 0..sa_cols {
                let origin_x = sc as f64 * delta;
                let origin_y = sr as f64 * delta;
                for ar in 0..ae_rows {
                    for ac in 0..ae_cols {
                        positions.push([
                            origin_x + ac as f64 * delta_small,
                            origin_y + ar as f64 * delta_small,
                            0.0,
                        ]);
                    }
                }
            }
        }
        Ok(Self {
            sa_rows,
            sa_cols,
            ae_rows,
            ae_cols,
            delta,
            delta_small,
            f_design,
            plasmonic_factor,
            positions,
        })
    }

    /// Same grid shape and spacings, different inter-SA pitch. Used by
    /// condition-number sweeps.
    pub fn with_delta(&self, delta: f64) -> Result<Self, ArrayError> {
        Self::build(
            self.sa_rows,
            self.sa_cols,
            self.ae_rows,
            self.ae_cols,
            delta,
            self.delta_small,
            self.f_design,
            self.plasmonic_factor,
        )
    }

    pub fn sa_rows(&self) -> usize {
        self.sa_rows
    }

    pub fn sa_cols(&self) -> usize {
        self.sa_cols
    }

    pub fn ae_rows(&self) -> usize {
        self.ae_rows
    }

    pub fn ae_cols(&self) -> usize {
        self.ae_cols
    }

    pub fn sa_count(&self) -> usize {
        self.sa_rows * self.sa_cols
    }

    pub fn ae_per_sa(&self) -> usize {
        self.ae_rows * self.ae_cols
    }

    pub fn ae_count(&self) -> usize {
        self.positions.len()
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn delta_small(&self) -> f64 {
        self.delta_small
    }

    pub fn f_design(&self) -> f64 {
        self.f_design
    }

    /// Free-space wavelength at the design frequency (m).
    pub fn wavelength(&self) -> f64 {
        SPEED_OF_LIGHT / self.f_design
    }

    /// Plasmonic wavelength at the design frequency (m).
    pub fn plasmonic_wavelength(&self) -> f64 {
        self.wavelength() / self.plasmonic_factor
    }

    /// All AE positions, SA-major then AE row-major.
    pub fn positions(&self) -> &[[f64; 3]] {
        &self.positions
    }

    /// Positions of the AEs of one SA.
    pub fn sa_positions(&self, sa_index: usize) -> Result<&[[f64; 3]], ArrayError> {
        if sa_index >= self.sa_count() {
            return Err(ArrayError::SaIndex {
                index: sa_index,
                count: self.sa_count(),
            });
        }
        let n = self.ae_per_sa();
        Ok(&self.positions[sa_index * n..(sa_index + 1) * n])
    }

    /// Grid origin (first AE) of one SA.
    pub fn sa_origin(&self, sa_index: usize) -> Result<[f64; 3], ArrayError> {
        Ok(self.sa_positions(sa_index)?[0])
    }

    /// Geometric center of one SA's elements.
    pub fn sa_center(&self, sa_index: usize) -> Result<[f64; 3], ArrayError> {
        let ps = self.sa_positions(sa_index)?;
        let n = ps.len() as f64;
        let mut c = [0.0; 3];
        for p in ps {
            c[0] += p[0];
            c[1] += p[1];
            c[2] += p[2];
        }
        Ok([c[0] / n, c[1] / n, c[2] / n])
    }

    /// Physical extent (x, y) of the array in meters.
    pub fn footprint(&self) -> (f64, f64) {
        (
            (self.sa_cols - 1) as f64 * self.delta + (self.ae_cols - 1) as f64 * self.delta_small,
            (self.sa_rows - 1) as f64 * self.delta + (self.ae_rows - 1) as f64 * self.delta_small,
        )
    }

    /// True when the inter-AE spacing is large enough (>= lambda_spp) for
    /// mutual coupling to be negligible.
    pub fn mutual_coupling_ok(&self) -> bool {
        self.delta_small >= self.plasmonic_wavelength()
    }
}

/// Array gain of coherent combining over `n_elements`, in dB.
pub fn array_gain_db(n_elements: usize) -> Result<f64, ArrayError> {
    if n_elements < 1 {
        return Err(ArrayError::NoElements);
    }
    Ok(10.0 * (n_elements as f64).log10())
}

/// Unit-modulus beamforming weights of one SA toward a direction.
#[derive(Debug, Clone)]
pub struct SteeringVector {
    entries: Vec<Complex64>,
    /// Polar angle from the array normal (rad).
    pub theta: f64,
    /// Azimuth in the array plane (rad).
    pub phi: f64,
    /// Frequency the phases were computed for (Hz).
    pub frequency_hz: f64,
}

impl SteeringVector {
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }
}

/// Steering vector of one SA: entry_n = exp(-j 2π f/c (p_n - p_origin)·û).
pub fn steering_vector(
    geometry: &AosaGeometry,
    sa_index: usize,
    theta: f64,
    phi: f64,
    f_hz: f64,
) -> Result<SteeringVector, ArrayError> {
    if !(f_hz > 0.0) {
        return Err(ArrayError::NonPositive {
            quantity: "frequency",
            value: f_hz,
        });
    }
    let origin = geometry.sa_origin(sa_index)?;
    let u = [
        theta.sin() * phi.cos(),
        theta.sin() * phi.sin(),
        theta.cos(),
    ];
    let k = 2.0 * std::f64::consts::PI * f_hz / SPEED_OF_LIGHT;
    let entries = geometry
        .sa_positions(sa_index)?
        .iter()
        .map(|p| {
            let path = (p[0] - origin[0]) * u[0] + (p[1] - origin[1]) * u[1]
                + (p[2] - origin[2]) * u[2];
            Complex64::from_polar(1.0, -k * path)
        })
        .collect();
    Ok(SteeringVector {
        entries,
        theta,
        phi,
        frequency_hz: f_hz,
    })
}

/// How carriers are interleaved over the array.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InterleaveScheme {
    /// Neighboring AEs cycle through the carriers.
    PerAe,
    /// Each SA is tuned to a single carrier; SAs cycle through them.
    PerSa,
}

/// Per-carrier spacing diagnostics of a frequency map.
#[derive(Debug, Clone)]
pub struct SpacingReport {
    /// Minimum distance between same-carrier AEs, per carrier (None when
    /// a carrier has fewer than two AEs).
    pub min_same_carrier_spacing_m: Vec<Option<f64>>,
    /// Required spacing per carrier (half the carrier wavelength).
    pub required_spacing_m: Vec<f64>,
}

/// Assignment of one carrier per AE.
#[derive(Debug, Clone)]
pub struct FrequencyMap {
    assignment: Vec<usize>,
    carriers: Vec<f64>,
    /// Spacing diagnostics computed during assignment.
    pub report: SpacingReport,
}

impl FrequencyMap {
    /// Carrier index of each global AE.
    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn carriers(&self) -> &[f64] {
        &self.carriers
    }

    pub fn carrier_of(&self, ae_index: usize) -> f64 {
        self.carriers[self.assignment[ae_index]]
    }
}

/// Tile dimensions (rows, cols) for cyclically interleaving `n` carriers:
/// the most-square factorization with rows <= cols.
fn tile_dims(n: usize) -> (usize, usize) {
    let mut rows = (n as f64).sqrt().floor() as usize;
    while rows > 1 && n % rows != 0 {
        rows -= 1;
    }
    (rows.max(1), n / rows.max(1))
}

/// Assign carriers cyclically over the grid (row-major) and verify the
/// same-carrier spacing rule.
///
/// Same-carrier nearest neighbors must be at least half the carrier
/// wavelength apart; differently tuned neighbors may sit as close as the
/// plasmonic spacing permits. A violation is reported as
/// [`ArrayError::InfeasibleInterleaving`].
pub fn assign_interleaved_map(
    geometry: &AosaGeometry,
    carriers: &[f64],
    scheme: InterleaveScheme,
) -> Result<FrequencyMap, ArrayError> {
    if carriers.is_empty() {
        return Err(ArrayError::NoCarriers);
    }
    if carriers.iter().any(|&c| !(c > 0.0)) || carriers.windows(2).any(|w| w[0] >= w[1]) {
        return Err(ArrayError::BadCarriers);
    }
    let n_carriers = carriers.len();
    let (tile_r, tile_c) = tile_dims(n_carriers);

    let mut assignment = vec![0usize; geometry.ae_count()];
    match scheme {
        InterleaveScheme::PerAe => {
            // logical global grid coordinates (row-major over all AEs)
            for sr in 0..geometry.sa_rows {
                for sc in 0..geometry.sa_cols {
                    let sa = sr * geometry.sa_cols + sc;
                    for ar in 0..geometry.ae_rows {
                        for ac in 0..geometry.ae_cols {
                            let row = sr * geometry.ae_rows + ar;
                            let col = sc * geometry.ae_cols + ac;
                            let carrier = (row % tile_r) * tile_c + (col % tile_c);
                            let ae = sa * geometry.ae_per_sa() + ar * geometry.ae_cols + ac;
                            assignment[ae] = carrier;
                        }
                    }
                }
            }
        }
        InterleaveScheme::PerSa => {
            for sr in 0..geometry.sa_rows {
                for sc in 0..geometry.sa_cols {
                    let sa = sr * geometry.sa_cols + sc;
                    let carrier = (sr % tile_r) * tile_c + (sc % tile_c);
                    let start = sa * geometry.ae_per_sa();
                    assignment[start..start + geometry.ae_per_sa()].fill(carrier);
                }
            }
        }
    }

    // exhaustive same-carrier spacing check
    let mut min_spacing = vec![None; n_carriers];
    for c in 0..n_carriers {
        let members: Vec<&[f64; 3]> = assignment
            .iter()
            .zip(geometry.positions())
            .filter(|(a, _)| **a == c)
            .map(|(_, p)| p)
            .collect();
        let mut best: Option<f64> = None;
        for i in 0..members.len() {
            for j in (i + 1)..members.len() {
                let dx = members[i][0] - members[j][0];
                let dy = members[i][1] - members[j][1];
                let d = (dx * dx + dy * dy).sqrt();
                best = Some(best.map_or(d, |b: f64| b.min(d)));
            }
        }
        min_spacing[c] = best;
    }
    let required: Vec<f64> = carriers.iter().map(|&c| SPEED_OF_LIGHT / c / 2.0).collect();
    for c in 0..n_carriers {
        if let Some(spacing) = min_spacing[c] {
            if spacing < required[c] {
                return Err(ArrayError::InfeasibleInterleaving {
                    carrier_index: c,
                    carrier_hz: carriers[c],
                    spacing,
                    required: required[c],
                });
            }
        }
    }

    Ok(FrequencyMap {
        assignment,
        carriers: carriers.to_vec(),
        report: SpacingReport {
            min_same_carrier_spacing_m: min_spacing,
            required_spacing_m: required,
        },
    })
}

/// Write the geometry as CSV: `ae_index,sa_index,x_m,y_m,z_m,carrier_index`.
///
/// Without a frequency map every AE reports carrier index 0.
pub fn write_geometry_csv<W: Write>(
    w: &mut W,
    geometry: &AosaGeometry,
    map: Option<&FrequencyMap>,
) -> io::Result<()> {
    writeln!(w, "ae_index,sa_index,x_m,y_m,z_m,carrier_index")?;
    let per_sa = geometry.ae_per_sa();
    for (i, p) in geometry.positions().iter().enumerate() {
        let carrier = map.map_or(0, |m| m.assignment()[i]);
        writeln!(
            w,
            "{},{},{:?},{:?},{:?},{}",
            i,
            i / per_sa,
            p[0],
            p[1],
            p[2],
            carrier
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn simple_geometry() -> AosaGeometry {
        AosaGeometry::build(2, 2, 2, 2, 1e-3, 2e-4, 1e12, DEFAULT_PLASMONIC_FACTOR).unwrap()
    }

    #[test]
    fn single_element_at_origin() {
        let g = AosaGeometry::build(1, 1, 1, 1, 1e-3, 1e-3, 1e12, 15.0).unwrap();
        assert_eq!(g.positions(), &[[0.0, 0.0, 0.0]]);
        assert_eq!(g.footprint(), (0.0, 0.0));
    }

    #[test]
    fn footprint_matches_brute_force_extent() {
        let g = AosaGeometry::build(3, 4, 2, 5, 2e-3, 3e-4, 1e12, 15.0).unwrap();
        let (w, h) = g.footprint();
        let max_x = g.positions().iter().map(|p| p[0]).fold(f64::MIN, f64::max);
        let min_x = g.positions().iter().map(|p| p[0]).fold(f64::MAX, f64::min);
        let max_y = g.positions().iter().map(|p| p[1]).fold(f64::MIN, f64::max);
        let min_y = g.positions().iter().map(|p| p[1]).fold(f64::MAX, f64::min);
        assert_eq!(w, max_x - min_x);
        assert_eq!(h, max_y - min_y);
    }

    #[test]
    fn overlap_rejected() {
        // AE span 4*delta_small = 1.2e-3 exceeds delta = 1e-3
        let err = AosaGeometry::build(1, 2, 1, 5, 1e-3, 3e-4, 1e12, 15.0).unwrap_err();
        assert!(matches!(err, ArrayError::SaOverlap { .. }));
    }

    #[test]
    fn deterministic_positions() {
        let a = AosaGeometry::build(4, 4, 8, 8, 1.65e-4, 2e-5, 1e12, 15.0).unwrap();
        let b = AosaGeometry::build(4, 4, 8, 8, 1.65e-4, 2e-5, 1e12, 15.0).unwrap();
        for (pa, pb) in a.positions().iter().zip(b.positions()) {
            assert_eq!(pa[0].to_bits(), pb[0].to_bits());
            assert_eq!(pa[1].to_bits(), pb[1].to_bits());
        }
    }

    #[test]
    fn mutual_coupling_flag() {
        let spp = SPEED_OF_LIGHT / 1e12 / 15.0;
        let ok = AosaGeometry::build(1, 1, 2, 2, 1e-3, spp * 1.01, 1e12, 15.0).unwrap();
        assert!(ok.mutual_coupling_ok());
        let tight = AosaGeometry::build(1, 1, 2, 2, 1e-3, spp * 0.5, 1e12, 15.0).unwrap();
        assert!(!tight.mutual_coupling_ok());
    }

    #[test]
    fn gain_values() {
        assert_eq!(array_gain_db(1).unwrap(), 0.0);
        assert_relative_eq!(array_gain_db(64).unwrap(), 18.06, epsilon = 0.01);
        assert_relative_eq!(array_gain_db(16).unwrap(), 12.04, epsilon = 0.01);
        assert!(array_gain_db(0).is_err());
    }

    #[test]
    fn broadside_steering_is_all_ones() {
        let g = simple_geometry();
        let sv = steering_vector(&g, 0, 0.0, 0.0, 1e12).unwrap();
        for e in sv.entries() {
            assert_relative_eq!(e.re, 1.0, epsilon = 1e-12);
            assert_relative_eq!(e.im, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn conjugate_flips_direction() {
        let g = simple_geometry();
        let sv = steering_vector(&g, 1, 0.4, 1.1, 1e12).unwrap();
        // mirror through the origin: û -> -û is (theta -> pi - theta,
        // phi -> phi + pi)
        let mirrored =
            steering_vector(&g, 1, std::f64::consts::PI - 0.4, 1.1 + std::f64::consts::PI, 1e12)
                .unwrap();
        for (a, b) in sv.entries().iter().zip(mirrored.entries()) {
            assert_relative_eq!(a.conj().re, b.re, epsilon = 1e-12);
            assert_relative_eq!(a.conj().im, b.im, epsilon = 1e-12);
        }
    }

    #[test]
    fn endfire_half_wavelength_gives_pi_steps() {
        let f = 1e12;
        let half_lambda = SPEED_OF_LIGHT / f / 2.0;
        let g = AosaGeometry::build(1, 1, 1, 8, half_lambda * 8.0, half_lambda, f, 15.0).unwrap();
        let sv = steering_vector(&g, 0, std::f64::consts::FRAC_PI_2, 0.0, f).unwrap();
        for pair in sv.entries().windows(2) {
            let dphi = (pair[1] / pair[0]).arg();
            assert_relative_eq!(dphi.abs(), std::f64::consts::PI, epsilon = 1e-9);
        }
    }

    #[test]
    fn coherent_combining_gain_is_element_count() {
        let g = simple_geometry();
        let sv = steering_vector(&g, 2, 0.3, 0.7, 1e12).unwrap();
        // combining toward (theta, phi) with the conjugate weights sums to n
        let sum: Complex64 = sv.entries().iter().map(|e| e * e.conj()).sum();
        assert_relative_eq!(sum.re, g.ae_per_sa() as f64, epsilon = 1e-12);
        for e in sv.entries() {
            assert_relative_eq!(e.norm(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn single_carrier_validity_depends_on_spacing() {
        let f = 1e12;
        let half_lambda = SPEED_OF_LIGHT / f / 2.0;
        let wide =
            AosaGeometry::build(1, 1, 2, 2, half_lambda * 4.0, half_lambda * 1.01, f, 15.0)
                .unwrap();
        assert!(assign_interleaved_map(&wide, &[f], InterleaveScheme::PerAe).is_ok());
        let tight =
            AosaGeometry::build(1, 1, 2, 2, half_lambda * 4.0, half_lambda * 0.9, f, 15.0)
                .unwrap();
        let err = assign_interleaved_map(&tight, &[f], InterleaveScheme::PerAe).unwrap_err();
        assert!(matches!(err, ArrayError::InfeasibleInterleaving { .. }));
    }

    #[test]
    fn four_carriers_on_2x2_all_distinct() {
        let g = AosaGeometry::build(1, 1, 2, 2, 1e-3, 2e-5, 1e12, 15.0).unwrap();
        let carriers = [0.9e12, 1.0e12, 1.1e12, 1.2e12];
        let map = assign_interleaved_map(&g, &carriers, InterleaveScheme::PerAe).unwrap();
        let mut seen = map.assignment().to_vec();
        seen.sort_unstable();
        assert_eq!(seen, vec![0, 1, 2, 3]);
        // no same-carrier pair exists
        assert!(map
            .report
            .min_same_carrier_spacing_m
            .iter()
            .all(Option::is_none));
    }

    #[test]
    fn plasmonic_spacing_needs_eight_carriers_per_axis() {
        let f = 1e12;
        let g = AosaGeometry::build(1, 1, 16, 16, 1.0, SPEED_OF_LIGHT / f / 15.0, f, 15.0)
            .unwrap();
        let lambda = SPEED_OF_LIGHT / f;
        let per_axis = ((lambda / 2.0) / g.delta_small()).ceil() as usize;
        assert_eq!(per_axis, 8);
        // 8 x 8 = 64 carriers tile feasibly; 7 x 7 = 49 does not
        // (carriers at or above f_design, so lambda_c/2 <= lambda/2)
        let carriers_ok: Vec<f64> = (0..64).map(|i| 1.0e12 + i as f64 * 1e9).collect();
        assert!(assign_interleaved_map(&g, &carriers_ok, InterleaveScheme::PerAe).is_ok());
        let carriers_bad: Vec<f64> = (0..49).map(|i| 1.0e12 + i as f64 * 1e9).collect();
        assert!(matches!(
            assign_interleaved_map(&g, &carriers_bad, InterleaveScheme::PerAe),
            Err(ArrayError::InfeasibleInterleaving { .. })
        ));
    }

    #[test]
    fn per_sa_assignment_uniform_within_sa() {
        let f = 1e12;
        let half_lambda = SPEED_OF_LIGHT / f / 2.0;
        let g = AosaGeometry::build(2, 2, 2, 2, half_lambda * 8.0, half_lambda, f, 15.0).unwrap();
        let carriers = [0.9e12, 1.0e12, 1.1e12, 1.2e12];
        let map = assign_interleaved_map(&g, &carriers, InterleaveScheme::PerSa).unwrap();
        for sa in 0..g.sa_count() {
            let s = sa * g.ae_per_sa();
            let first = map.assignment()[s];
            assert!(map.assignment()[s..s + g.ae_per_sa()]
                .iter()
                .all(|&a| a == first));
        }
    }

    #[test]
    fn geometry_csv_schema() {
        let g = simple_geometry();
        let mut out = Vec::new();
        write_geometry_csv(&mut out, &g, None).unwrap();
        let text = String::from_utf8(out).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "ae_index,sa_index,x_m,y_m,z_m,carrier_index"
        );
        assert_eq!(text.lines().count(), 1 + g.ae_count());
        let first = lines.next().unwrap();
        assert!(first.starts_with("0,0,"));
    }

    #[test]
    fn rejects_unsorted_carriers() {
        let g = simple_geometry();
        assert!(matches!(
            assign_interleaved_map(&g, &[2e12, 1e12], InterleaveScheme::PerAe),
            Err(ArrayError::BadCarriers)
        ));
        assert!(matches!(
            assign_interleaved_map(&g, &[], InterleaveScheme::PerAe),
            Err(ArrayError::NoCarriers)
        ));
    }
}
