//! Physical constants in SI units.
//!
//! `h` and `e` are exact under the 2019 SI redefinition; everything else is
//! derived from them so the relations φ₀ = h/2e and R_Q = h/e² hold to
//! rounding.

use std::f64::consts::PI;

/// Planck constant (J·s).
pub const PLANCK: f64 = 6.626_070_15e-34;

/// Elementary charge (C).
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;

/// Reduced Planck constant ħ = h/2π (J·s).
pub const HBAR: f64 = PLANCK / (2.0 * PI);

/// Superconducting flux quantum φ₀ = h/2e (Wb).
pub const FLUX_QUANTUM: f64 = PLANCK / (2.0 * ELEMENTARY_CHARGE);

/// von Klitzing resistance R_Q = h/e² (Ω).
pub const VON_KLITZING: f64 = PLANCK / (ELEMENTARY_CHARGE * ELEMENTARY_CHARGE);

/// Speed of light in vacuum (m/s).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// One electron-volt in joules.
pub const ELECTRON_VOLT: f64 = ELEMENTARY_CHARGE;

/// Superconducting gap of aluminium, 180 µeV, in joules.
pub const ALUMINIUM_GAP: f64 = 180e-6 * ELECTRON_VOLT;
