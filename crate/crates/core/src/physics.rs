//! Molecular-absorption propagation model for the 0.1–10 THz band.
//!
//! A [`LineCatalog`] of resonances drives a line-by-line absorption
//! coefficient (Lorentz shape, pressure-shifted centers, ideal-gas number
//! densities). On top of that sit Beer–Lambert transmittance, Friis
//! spreading loss, the combined path loss, and the emissivity-form
//! absorption-noise PSD.
//!
//! Units: frequencies in Hz, distances in m, temperatures in K, pressures
//! in atm, intensities in Hz·m² per molecule. Broadening half-widths and
//! pressure shifts are interpreted as already converted per-atmosphere
//! values in Hz (catalogs in wavenumber units must be converted before
//! ingestion).

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use thiserror::Error;

/// Speed of light in vacuum (m/s).
pub const SPEED_OF_LIGHT: f64 = 2.9979e8;

/// Fundamental constants used throughout the simulator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Planck constant (J·s).
    pub planck: f64,
    /// Boltzmann constant (J/K).
    pub boltzmann: f64,
    /// Gas constant (m³·atm/K/mol).
    pub gas_constant: f64,
    /// Avogadro constant (molecule/mol).
    pub avogadro: f64,
    /// Speed of light (m/s).
    pub speed_of_light: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self {
            planck: 6.6262e-34,
            boltzmann: 1.3806e-23,
            gas_constant: 8.2051e-5,
            avogadro: 6.0221e23,
            speed_of_light: SPEED_OF_LIGHT,
        }
    }
}

/// One absorption line of a gas isotopologue.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralLine {
    /// Gas identifier, e.g. `H2O`.
    pub gas_id: String,
    /// Isotopologue identifier within the gas.
    pub iso_id: u32,
    /// Resonant frequency at reference pressure (Hz).
    pub center_hz: f64,
    /// Line intensity (Hz·m² per molecule).
    pub intensity: f64,
    /// Air-broadening half-width (Hz per atm).
    pub air_half_width: f64,
    /// Self-broadening half-width (Hz per atm).
    pub self_half_width: f64,
    /// Temperature broadening exponent (dimensionless).
    pub temperature_exponent: f64,
    /// Linear pressure shift of the line center (Hz per atm).
    pub pressure_shift: f64,
}

impl SpectralLine {
    fn check(&self) -> Result<(), String> {
        for (name, v) in [
            ("f_c0_hz", self.center_hz),
            ("S_hz_m2", self.intensity),
            ("alpha_air", self.air_half_width),
            ("alpha_self", self.self_half_width),
            ("gamma", self.temperature_exponent),
            ("delta_shift", self.pressure_shift),
        ] {
            if !v.is_finite() {
                return Err(format!("{name} is not finite"));
            }
        }
        if self.center_hz < 0.0 {
            return Err("f_c0_hz must be nonnegative".into());
        }
        if self.intensity < 0.0 {
            return Err("S_hz_m2 must be nonnegative".into());
        }
        if self.air_half_width < 0.0 || self.self_half_width < 0.0 {
            return Err("broadening half-widths must be nonnegative".into());
        }
        if !(-1.0..=1.0).contains(&self.temperature_exponent) {
            return Err(format!(
                "gamma {} outside the [-1, 1] sanity bound",
                self.temperature_exponent
            ));
        }
        Ok(())
    }
}

/// Expected header of a catalog CSV file.
pub const CATALOG_CSV_HEADER: &str =
    "gas_id,iso_id,f_c0_hz,S_hz_m2,alpha_air,alpha_self,gamma,delta_shift";

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("failed to read catalog: {0}")]
    Io(#[from] io::Error),
    #[error("line {line}: expected header '{expected}'", expected = CATALOG_CSV_HEADER)]
    BadHeader { line: usize },
    #[error("line {line}: expected 8 comma-separated fields, found {found}")]
    FieldCount { line: usize, found: usize },
    #[error("line {line}, column '{column}': cannot parse '{value}'")]
    BadField {
        line: usize,
        column: &'static str,
        value: String,
    },
    #[error("line {line}: {message}")]
    BadLine { line: usize, message: String },
    #[error("empty catalog")]
    Empty,
}

/// An ordered list of spectral lines, sorted ascending by center frequency.
#[derive(Debug, Clone, Default)]
pub struct LineCatalog {
    lines: Vec<SpectralLine>,
    source_tag: String,
}

impl LineCatalog {
    /// Build a catalog from lines, validating and sorting them by center.
    pub fn from_lines(
        mut lines: Vec<SpectralLine>,
        source_tag: impl Into<String>,
    ) -> Result<Self, CatalogError> {
        for (i, line) in lines.iter().enumerate() {
            line.check().map_err(|message| CatalogError::BadLine {
                line: i + 1,
                message,
            })?;
        }
        lines.sort_by(|a, b| a.center_hz.total_cmp(&b.center_hz));
        Ok(Self {
            lines,
            source_tag: source_tag.into(),
        })
    }

    /// An empty catalog (no absorption).
    pub fn empty() -> Self {
        Self::default()
    }

    /// Parse catalog CSV text. Lines starting with `#` are skipped; the
    /// first data line must be the exact header.
    pub fn parse(text: &str, source_tag: impl Into<String>) -> Result<Self, CatalogError> {
        let mut lines = Vec::new();
        let mut header_seen = false;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            if !header_seen {
                if trimmed != CATALOG_CSV_HEADER {
                    return Err(CatalogError::BadHeader { line: line_no });
                }
                header_seen = true;
                continue;
            }
            let fields: Vec<&str> = trimmed.split(',').map(str::trim).collect();
            if fields.len() != 8 {
                return Err(CatalogError::FieldCount {
                    line: line_no,
                    found: fields.len(),
                });
            }
            let f64_field = |column: &'static str, raw: &str| -> Result<f64, CatalogError> {
                raw.parse::<f64>().map_err(|_| CatalogError::BadField {
                    line: line_no,
                    column,
                    value: raw.to_string(),
                })
            };
            let iso_id = fields[1]
                .parse::<u32>()
                .map_err(|_| CatalogError::BadField {
                    line: line_no,
                    column: "iso_id",
                    value: fields[1].to_string(),
                })?;
            let line = SpectralLine {
                gas_id: fields[0].to_string(),
                iso_id,
                center_hz: f64_field("f_c0_hz", fields[2])?,
                intensity: f64_field("S_hz_m2", fields[3])?,
                air_half_width: f64_field("alpha_air", fields[4])?,
                self_half_width: f64_field("alpha_self", fields[5])?,
                temperature_exponent: f64_field("gamma", fields[6])?,
                pressure_shift: f64_field("delta_shift", fields[7])?,
            };
            line.check().map_err(|message| CatalogError::BadLine {
                line: line_no,
                message,
            })?;
            lines.push(line);
        }
        if lines.is_empty() {
            return Err(CatalogError::Empty);
        }
        lines.sort_by(|a, b| a.center_hz.total_cmp(&b.center_hz));
        Ok(Self {
            lines,
            source_tag: source_tag.into(),
        })
    }

    pub fn lines(&self) -> &[SpectralLine] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn source_tag(&self) -> &str {
        &self.source_tag
    }
}

/// Load a line catalog from a CSV file (see [`CATALOG_CSV_HEADER`]).
pub fn load_catalog(path: impl AsRef<Path>) -> Result<LineCatalog, CatalogError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    LineCatalog::parse(&text, path.display().to_string())
}

/// Gas medium the link propagates through.
#[derive(Debug, Clone, PartialEq)]
pub struct Medium {
    /// System temperature (K).
    pub temperature_k: f64,
    /// Reference temperature of the catalog parameters (K).
    pub ref_temperature_k: f64,
    /// Temperature at standard pressure (K), used by the optional STP
    /// density correction.
    pub stp_temperature_k: f64,
    /// System pressure (atm).
    pub pressure_atm: f64,
    /// Reference pressure of the catalog parameters (atm).
    pub ref_pressure_atm: f64,
    /// Molar fraction per gas id, each in [0, 1], summing to at most 1.
    pub mixing_ratios: BTreeMap<String, f64>,
}

impl Default for Medium {
    /// Hot, low-pressure medium with 0.05 % water vapor.
    fn default() -> Self {
        let mut mixing_ratios = BTreeMap::new();
        mixing_ratios.insert("H2O".to_string(), 5.0e-4);
        Self {
            temperature_k: 396.0,
            ref_temperature_k: 296.0,
            stp_temperature_k: 273.15,
            pressure_atm: 0.1,
            ref_pressure_atm: 1.0,
            mixing_ratios,
        }
    }
}

impl Medium {
    pub fn validate(&self) -> Result<(), PhysicsError> {
        if !(self.temperature_k > 0.0) {
            return Err(PhysicsError::InvalidMedium(format!(
                "temperature_k must be positive, got {}",
                self.temperature_k
            )));
        }
        if !(self.pressure_atm > 0.0) {
            return Err(PhysicsError::InvalidMedium(format!(
                "pressure_atm must be positive, got {}",
                self.pressure_atm
            )));
        }
        if !(self.ref_temperature_k > 0.0) || !(self.ref_pressure_atm > 0.0) {
            return Err(PhysicsError::InvalidMedium(
                "reference temperature and pressure must be positive".into(),
            ));
        }
        let mut sum = 0.0;
        for (gas, &q) in &self.mixing_ratios {
            if !(0.0..=1.0).contains(&q) {
                return Err(PhysicsError::InvalidMedium(format!(
                    "mixing ratio of '{gas}' outside [0, 1]: {q}"
                )));
            }
            sum += q;
        }
        if sum > 1.0 + 1e-12 {
            return Err(PhysicsError::InvalidMedium(format!(
                "mixing ratios sum to {sum} > 1"
            )));
        }
        Ok(())
    }

    /// Molar fraction of a gas, zero if absent.
    pub fn mixing_ratio(&self, gas_id: &str) -> f64 {
        self.mixing_ratios.get(gas_id).copied().unwrap_or(0.0)
    }
}

/// Options of the absorption model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbsorptionOptions {
    /// Apply the STP density correction (p/p_ref)·(T_stp/T) to the line
    /// sum. On by default.
    pub stp_scaling: bool,
    /// Optional fast path: skip lines farther than this many half-widths
    /// from the evaluation frequency. `None` sums every line.
    pub prune_half_widths: Option<f64>,
}

impl Default for AbsorptionOptions {
    fn default() -> Self {
        Self {
            stp_scaling: true,
            prune_half_widths: None,
        }
    }
}

#[derive(Debug, Error)]
pub enum PhysicsError {
    #[error("unknown gas id '{0}' in medium mixing ratios")]
    UnknownGas(String),
    #[error("invalid medium: {0}")]
    InvalidMedium(String),
    #[error("{quantity} must be positive, got {value}")]
    NonPositive { quantity: &'static str, value: f64 },
    #[error("{quantity} must be nonnegative, got {value}")]
    NegativeInput { quantity: &'static str, value: f64 },
}

/// Number density of a gas (molecule/m³) from the ideal-gas law,
/// q·p·N_A/(R·T).
pub fn molecular_density(
    medium: &Medium,
    constants: &PhysicalConstants,
    gas_id: &str,
) -> Result<f64, PhysicsError> {
    let q = *medium
        .mixing_ratios
        .get(gas_id)
        .ok_or_else(|| PhysicsError::UnknownGas(gas_id.to_string()))?;
    Ok(q * medium.pressure_atm / (constants.gas_constant * medium.temperature_k)
        * constants.avogadro)
}

/// Pressure-shifted center and effective Lorentz half-width of a line in
/// the given medium.
fn line_shape_params(line: &SpectralLine, medium: &Medium) -> (f64, f64) {
    let p_rel = medium.pressure_atm / medium.ref_pressure_atm;
    let center = line.center_hz + line.pressure_shift * p_rel;
    let q = medium.mixing_ratio(&line.gas_id);
    let half_width = (line.air_half_width * (1.0 - q) + line.self_half_width * q)
        * p_rel
        * (medium.ref_temperature_k / medium.temperature_k).powf(line.temperature_exponent);
    (center, half_width)
}

/// Molecular absorption coefficient k(f) in 1/m.
///
/// Sums density × intensity × unit-area Lorentz profile over every line of
/// the catalog; gases absent from the medium contribute nothing. Requires
/// `f_hz > 0`.
pub fn absorption_coefficient(
    catalog: &LineCatalog,
    medium: &Medium,
    constants: &PhysicalConstants,
    options: &AbsorptionOptions,
    f_hz: f64,
) -> f64 {
    assert!(f_hz.is_finite() && f_hz > 0.0, "frequency must be positive");
    let scale = if options.stp_scaling {
        (medium.pressure_atm / medium.ref_pressure_atm)
            * (medium.stp_temperature_k / medium.temperature_k)
    } else {
        1.0
    };
    let mut k = 0.0;
    for line in &catalog.lines {
        let q = medium.mixing_ratio(&line.gas_id);
        if q == 0.0 || line.intensity == 0.0 {
            continue;
        }
        let (center, half_width) = line_shape_params(line, medium);
        if half_width <= 0.0 {
            continue;
        }
        let detuning = f_hz - center;
        if let Some(window) = options.prune_half_widths {
            if detuning.abs() > window * half_width {
                continue;
            }
        }
        let density = q * medium.pressure_atm
            / (constants.gas_constant * medium.temperature_k)
            * constants.avogadro;
        let lorentz =
            half_width / (std::f64::consts::PI * (detuning * detuning + half_width * half_width));
        k += density * line.intensity * lorentz;
    }
    scale * k
}

/// Beer–Lambert transmittance exp(-k·d), in (0, 1].
pub fn transmittance(k_per_m: f64, distance_m: f64) -> Result<f64, PhysicsError> {
    if k_per_m < 0.0 {
        return Err(PhysicsError::NegativeInput {
            quantity: "absorption coefficient",
            value: k_per_m,
        });
    }
    if distance_m < 0.0 {
        return Err(PhysicsError::NegativeInput {
            quantity: "distance",
            value: distance_m,
        });
    }
    Ok((-k_per_m * distance_m).exp())
}

/// Free-space spreading loss 20·log10(4π·f·d/c) in dB.
pub fn spreading_loss_db(
    f_hz: f64,
    distance_m: f64,
    constants: &PhysicalConstants,
) -> Result<f64, PhysicsError> {
    if !(f_hz > 0.0) {
        return Err(PhysicsError::NonPositive {
            quantity: "frequency",
            value: f_hz,
        });
    }
    if !(distance_m > 0.0) {
        return Err(PhysicsError::NonPositive {
            quantity: "distance",
            value: distance_m,
        });
    }
    Ok(20.0
        * (4.0 * std::f64::consts::PI * f_hz * distance_m / constants.speed_of_light).log10())
}

/// Total path loss in dB: spreading plus the absorption term
/// 10·k(f)·d·log10(e).
pub fn total_path_loss_db(
    catalog: &LineCatalog,
    medium: &Medium,
    constants: &PhysicalConstants,
    options: &AbsorptionOptions,
    f_hz: f64,
    distance_m: f64,
) -> Result<f64, PhysicsError> {
    let spreading = spreading_loss_db(f_hz, distance_m, constants)?;
    let k = absorption_coefficient(catalog, medium, constants, options, f_hz);
    Ok(spreading + absorption_loss_db(k, distance_m))
}

/// Absorption contribution to the path loss in dB for a known k.
pub fn absorption_loss_db(k_per_m: f64, distance_m: f64) -> f64 {
    10.0 * k_per_m * distance_m * std::f64::consts::LOG10_E
}

/// Absorption-noise PSD k_B·T·(1 − τ(f, d)) in W/Hz.
///
/// Zero for a fully transparent medium; bounded above by k_B·T. The
/// receiver noise floor is not included here.
pub fn absorption_noise_psd(
    catalog: &LineCatalog,
    medium: &Medium,
    constants: &PhysicalConstants,
    options: &AbsorptionOptions,
    f_hz: f64,
    distance_m: f64,
) -> Result<f64, PhysicsError> {
    if !(f_hz > 0.0) {
        return Err(PhysicsError::NonPositive {
            quantity: "frequency",
            value: f_hz,
        });
    }
    if !(distance_m > 0.0) {
        return Err(PhysicsError::NonPositive {
            quantity: "distance",
            value: distance_m,
        });
    }
    let k = absorption_coefficient(catalog, medium, constants, options, f_hz);
    let tau = transmittance(k, distance_m)?;
    Ok(constants.boltzmann * medium.temperature_k * (1.0 - tau))
}

/// Evaluate the total path loss on an f×d grid, row-major with f as the
/// outer (slow) index. Grid points are computed independently and in
/// parallel; the result does not depend on the thread count.
pub fn loss_grid(
    catalog: &LineCatalog,
    medium: &Medium,
    constants: &PhysicalConstants,
    options: &AbsorptionOptions,
    f_grid: &[f64],
    d_grid: &[f64],
) -> Result<Vec<f64>, PhysicsError> {
    use rayon::prelude::*;
    for &f in f_grid {
        if !(f > 0.0) {
            return Err(PhysicsError::NonPositive {
                quantity: "frequency",
                value: f,
            });
        }
    }
    for &d in d_grid {
        if !(d > 0.0) {
            return Err(PhysicsError::NonPositive {
                quantity: "distance",
                value: d,
            });
        }
    }
    let rows: Vec<Vec<f64>> = f_grid
        .par_iter()
        .map(|&f| {
            let k = absorption_coefficient(catalog, medium, constants, options, f);
            d_grid
                .iter()
                .map(|&d| {
                    // grids validated above, so spreading cannot fail
                    spreading_loss_db(f, d, constants).expect("validated grid")
                        + absorption_loss_db(k, d)
                })
                .collect()
        })
        .collect();
    Ok(rows.into_iter().flatten().collect())
}

/// Write a loss grid as CSV (`f_hz,d_m,loss_db`), f outer, d inner.
pub fn write_loss_grid_csv<W: Write>(
    w: &mut W,
    f_grid: &[f64],
    d_grid: &[f64],
    losses: &[f64],
) -> io::Result<()> {
    assert_eq!(losses.len(), f_grid.len() * d_grid.len());
    writeln!(w, "f_hz,d_m,loss_db")?;
    for (fi, &f) in f_grid.iter().enumerate() {
        for (di, &d) in d_grid.iter().enumerate() {
            writeln!(w, "{:?},{:?},{:?}", f, d, losses[fi * d_grid.len() + di])?;
        }
    }
    Ok(())
}
