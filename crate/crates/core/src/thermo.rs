//! Scalar thermodynamics of a single harmonic mode.
//!
//! Natural units throughout: ħ = k_B = 1, so frequencies, temperatures and
//! energies share one unit. Zero temperature and zero occupation are exact
//! fixed points handled by branch.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Oscillator frequency (energy units). Always finite and strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Frequency(f64);

/// Temperature (energy units). Finite and non-negative; zero is allowed.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Temperature(f64);

/// Mean excitation number of a mode. Finite and non-negative.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Occupation(f64);

macro_rules! scalar_newtype {
    ($ty:ident, $name:literal, $ok:expr, $reason:literal) => {
        impl $ty {
            pub fn new(value: f64) -> Result<Self> {
                let ok: fn(f64) -> bool = $ok;
                if value.is_finite() && ok(value) {
                    Ok(Self(value))
                } else {
                    Err(Error::InvalidParameter {
                        name: $name,
                        value,
                        reason: $reason,
                    })
                }
            }

            #[inline]
            pub fn value(self) -> f64 {
                self.0
            }
        }

        impl TryFrom<f64> for $ty {
            type Error = Error;

            fn try_from(value: f64) -> Result<Self> {
                Self::new(value)
            }
        }

        impl From<$ty> for f64 {
            fn from(v: $ty) -> f64 {
                v.0
            }
        }
    };
}

scalar_newtype!(
    Frequency,
    "frequency",
    |v| v > 0.0,
    "must be finite and > 0"
);
scalar_newtype!(
    Temperature,
    "temperature",
    |v| v >= 0.0,
    "must be finite and >= 0"
);
scalar_newtype!(
    Occupation,
    "occupation",
    |v| v >= 0.0,
    "must be finite and >= 0"
);

impl Temperature {
    pub const ZERO: Temperature = Temperature(0.0);
}

impl Occupation {
    pub const ZERO: Occupation = Occupation(0.0);
}

/// Bose–Einstein occupation `1 / (exp(ω/T) − 1)`; exactly zero at `T = 0`.
pub fn occupation(omega: Frequency, t: Temperature) -> Occupation {
    if t.0 == 0.0 {
        return Occupation::ZERO;
    }
    // expm1 overflows to +inf for large ω/T, which correctly yields 0.
    Occupation(1.0 / (omega.0 / t.0).exp_m1())
}

/// Temperature at which a mode of frequency `omega` holds `n` quanta on
/// average. Inverse of [`occupation`]; returns zero for an empty mode.
pub fn invert_occupation(omega: Frequency, n: Occupation) -> Temperature {
    if n.0 == 0.0 {
        return Temperature::ZERO;
    }
    Temperature(omega.0 / (1.0 / n.0).ln_1p())
}

/// Mean energy `ω (n + 1/2)` of a mode holding `n` quanta.
pub fn oscillator_energy(omega: Frequency, n: Occupation) -> f64 {
    omega.0 * (n.0 + 0.5)
}

/// Temperature a thermal mode would need to carry `n2 + delta_n` quanta.
///
/// This parameterises the excitation of a non-passive state; it is not the
/// temperature of anything.
pub fn fictitious_temperature(
    omega2: Frequency,
    n2: Occupation,
    delta_n: Occupation,
) -> Temperature {
    invert_occupation(omega2, Occupation(n2.0 + delta_n.0))
}

/// Von Neumann entropy of a thermal mode with mean occupation `n`.
pub fn thermal_entropy(n: Occupation) -> f64 {
    let n = n.0;
    if n == 0.0 {
        return 0.0;
    }
    (n + 1.0) * n.ln_1p() - n * n.ln()
}
