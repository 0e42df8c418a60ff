//! Otto-cycle stroke ledgers for first- and second-kind baths.
//!
//! Strokes are numbered 1 (compression ω₁ → ω₂), 2 (contact with the "hot"
//! bath), 3 (expansion ω₂ → ω₁) and 4 (contact with the cold bath). Signs
//! follow the working fluid: positive means energy enters it.

mod engines;
mod laws;
mod regime;

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{squeeze_for_excess, GaussianModeState};
use crate::thermo::{occupation, Frequency, Occupation, Temperature};

pub use engines::{modified_cycle, second_kind_cycle, standard_cycle};
pub use laws::{audit_laws, ClausiusCheck, EntropyCheck, LawReport};
pub use regime::classify_regime;

/// How the second-kind bath's excess is given.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SecondKindExcess {
    /// Extra quanta `Δn̄` on top of `n̄₂`; may be negative.
    DeltaN(f64),
    /// The temperature the bath actually thermalises the working fluid to.
    RealTemperature(Temperature),
}

/// The "hot" bath.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BathSpec {
    Thermal,
    SqueezedThermal {
        r: f64,
        #[serde(default)]
        phase: f64,
    },
    DisplacedThermal {
        alpha: Complex64,
    },
    /// Squeeze followed by displacement.
    SqueezedDisplaced {
        r: f64,
        #[serde(default)]
        phase: f64,
        alpha: Complex64,
    },
    SecondKind {
        excess: SecondKindExcess,
    },
}

/// Rule-based reading of what a bath does to the working fluid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BathClass {
    /// Ordinary Gibbs bath.
    Passive,
    /// Leaves the fluid in a non-passive state: squeezing or displacement.
    FirstKind,
    /// Gibbs-preserving: thermalises the fluid, possibly at another temperature.
    SecondKind,
}

impl BathSpec {
    pub fn squeezed(r: f64) -> Self {
        BathSpec::SqueezedThermal { r, phase: 0.0 }
    }

    pub fn displaced(alpha: Complex64) -> Self {
        BathSpec::DisplacedThermal { alpha }
    }

    pub fn second_kind(delta_n: f64) -> Self {
        BathSpec::SecondKind {
            excess: SecondKindExcess::DeltaN(delta_n),
        }
    }

    /// Squeezed bath whose stroke-2 state has fictitious temperature `theta`.
    pub fn squeezed_for_fictitious_temperature(
        theta: Temperature,
        omega2: Frequency,
        t2: Temperature,
    ) -> Result<Self> {
        if theta < t2 {
            return Err(Error::InvalidParameter {
                name: "theta",
                value: theta.value(),
                reason: "fictitious temperature must be at least T2",
            });
        }
        let n2 = occupation(omega2, t2);
        let excess = Occupation::new((occupation(omega2, theta).value() - n2.value()).max(0.0))?;
        Ok(BathSpec::squeezed(squeeze_for_excess(n2, excess)))
    }

    pub fn class(&self) -> BathClass {
        match self {
            BathSpec::Thermal => BathClass::Passive,
            BathSpec::SecondKind { .. } => BathClass::SecondKind,
            _ => BathClass::FirstKind,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            BathSpec::Thermal => "thermal",
            BathSpec::SqueezedThermal { .. } => "squeezed",
            BathSpec::DisplacedThermal { .. } => "displaced",
            BathSpec::SqueezedDisplaced { .. } => "squeezed+displaced",
            BathSpec::SecondKind { .. } => "second-kind",
        }
    }

    /// State the working fluid reaches after stroke 2 when the bath's
    /// underlying thermal occupation is `n2`. `None` for second-kind baths.
    pub fn stroke2_state(&self, n2: Occupation) -> Result<Option<GaussianModeState>> {
        let zero = Complex64::new(0.0, 0.0);
        let state = match *self {
            BathSpec::Thermal => GaussianModeState::thermal(n2),
            BathSpec::SqueezedThermal { r, phase } => GaussianModeState::new(n2, r, phase, zero)?,
            BathSpec::DisplacedThermal { alpha } => GaussianModeState::new(n2, 0.0, 0.0, alpha)?,
            BathSpec::SqueezedDisplaced { r, phase, alpha } => {
                GaussianModeState::new(n2, r, phase, alpha)?
            }
            BathSpec::SecondKind { .. } => return Ok(None),
        };
        Ok(Some(state))
    }

    fn validate(&self) -> Result<()> {
        match *self {
            BathSpec::Thermal => Ok(()),
            BathSpec::SqueezedThermal { r, phase } => {
                GaussianModeState::new(Occupation::ZERO, r, phase, Complex64::new(0.0, 0.0))
                    .map(drop)
            }
            BathSpec::DisplacedThermal { alpha } => {
                GaussianModeState::new(Occupation::ZERO, 0.0, 0.0, alpha).map(drop)
            }
            BathSpec::SqueezedDisplaced { r, phase, alpha } => {
                GaussianModeState::new(Occupation::ZERO, r, phase, alpha).map(drop)
            }
            BathSpec::SecondKind {
                excess: SecondKindExcess::DeltaN(dn),
            } if !dn.is_finite() => Err(Error::InvalidParameter {
                name: "delta_n",
                value: dn,
                reason: "must be finite",
            }),
            BathSpec::SecondKind { .. } => Ok(()),
        }
    }
}

/// The four cycle parameters and the hot bath.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CycleConfig {
    pub omega1: Frequency,
    pub omega2: Frequency,
    pub t1: Temperature,
    pub t2: Temperature,
    pub bath: BathSpec,
}

impl CycleConfig {
    pub fn new(omega1: f64, omega2: f64, t1: f64, t2: f64, bath: BathSpec) -> Result<Self> {
        let config = Self {
            omega1: Frequency::new(omega1)?,
            omega2: Frequency::new(omega2)?,
            t1: Temperature::new(t1)?,
            t2: Temperature::new(t2)?,
            bath,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.omega1 > self.omega2 {
            return Err(Error::InvalidParameter {
                name: "omega1",
                value: self.omega1.value(),
                reason: "must not exceed omega2",
            });
        }
        if self.t1 > self.t2 {
            return Err(Error::InvalidParameter {
                name: "t1",
                value: self.t1.value(),
                reason: "must not exceed t2",
            });
        }
        self.bath.validate()
    }

    pub fn n1(&self) -> Occupation {
        occupation(self.omega1, self.t1)
    }

    pub fn n2(&self) -> Occupation {
        occupation(self.omega2, self.t2)
    }
}

/// Which cycle produced a ledger.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CycleKind {
    Standard,
    Modified,
    SecondKind,
}

impl CycleKind {
    pub const ALL: [CycleKind; 3] = [
        CycleKind::Standard,
        CycleKind::Modified,
        CycleKind::SecondKind,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CycleKind::Standard => "standard",
            CycleKind::Modified => "modified",
            CycleKind::SecondKind => "second-kind",
        }
    }
}

impl fmt::Display for CycleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for CycleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CycleKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::UnknownCycle(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegimeTag {
    NotEngine,
    SubCarnotHybridEngine,
    SuperCarnotEngineHeatPump,
    SuperCarnotEngineRefrigerator,
    DualEngineRefrigerator,
    GenuineHeatEngine,
}

impl RegimeTag {
    pub fn is_engine(self) -> bool {
        self != RegimeTag::NotEngine
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RegimeTag::NotEngine => "NotEngine",
            RegimeTag::SubCarnotHybridEngine => "SubCarnotHybridEngine",
            RegimeTag::SuperCarnotEngineHeatPump => "SuperCarnotEngineHeatPump",
            RegimeTag::SuperCarnotEngineRefrigerator => "SuperCarnotEngineRefrigerator",
            RegimeTag::DualEngineRefrigerator => "DualEngineRefrigerator",
            RegimeTag::GenuineHeatEngine => "GenuineHeatEngine",
        }
    }
}

impl fmt::Display for RegimeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Per-stroke energetics of one cycle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrokeLedger {
    pub cycle: CycleKind,
    pub n1: f64,
    pub n2: f64,
    pub delta_n: f64,
    /// Θ_fic for first-kind baths, T_real for second-kind ones; `None` when
    /// the working fluid carries no excitation at all.
    pub hot_temperature: Option<f64>,
    #[serde(rename = "W1")]
    pub w1: f64,
    #[serde(rename = "W2")]
    pub w2: f64,
    /// For the modified cycle this is the thermal part `W3_th`.
    #[serde(rename = "W3")]
    pub w3: f64,
    #[serde(rename = "W3_prime")]
    pub w3_prime: Option<f64>,
    #[serde(rename = "W3_th")]
    pub w3_th: Option<f64>,
    #[serde(rename = "W3_nonpas")]
    pub w3_nonpas: Option<f64>,
    #[serde(rename = "W4")]
    pub w4: f64,
    #[serde(rename = "Q2")]
    pub q2: f64,
    #[serde(rename = "Q4")]
    pub q4: f64,
    #[serde(rename = "E2")]
    pub e2: f64,
    #[serde(rename = "E4")]
    pub e4: f64,
    #[serde(rename = "W_inv")]
    pub w_inv: Option<f64>,
    /// Energy counted as input when forming `eta`.
    pub e_in: Option<f64>,
    pub eta: Option<f64>,
    /// Why `eta` is undefined, when it is.
    pub eta_reason: Option<String>,
    pub cop: Option<f64>,
    pub regime: RegimeTag,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
}

impl StrokeLedger {
    /// Expansion-stroke work actually used by the cycle: `W3′` when present.
    pub fn w3_effective(&self) -> f64 {
        self.w3_prime.unwrap_or(self.w3)
    }

    /// `W1 + W3` (or `W1 + W3′`); negative when the piston gains work.
    pub fn net_expansion_work(&self) -> f64 {
        self.w1 + self.w3_effective()
    }

    /// Sum of every work and heat term; zero when the cycle closes.
    pub fn first_law_sum(&self) -> f64 {
        self.w1 + self.w2 + self.w3_effective() + self.w4 + self.q2 + self.q4
    }

    /// Largest stroke energy, the scale for relative tolerances.
    pub fn energy_scale(&self) -> f64 {
        [
            self.w1,
            self.w2,
            self.w3,
            self.w3_prime.unwrap_or(0.0),
            self.w4,
            self.q2,
            self.q4,
            self.e2,
            self.e4,
        ]
        .iter()
        .fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

/// A cycle that can be selected by name.
pub trait CycleEngine: Send + Sync {
    fn kind(&self) -> CycleKind;

    fn name(&self) -> &'static str {
        self.kind().as_str()
    }

    fn run(&self, config: &CycleConfig) -> Result<StrokeLedger>;
}

pub struct StandardOtto;
pub struct ModifiedOtto;
pub struct SecondKindOtto;

impl CycleEngine for StandardOtto {
    fn kind(&self) -> CycleKind {
        CycleKind::Standard
    }

    fn run(&self, config: &CycleConfig) -> Result<StrokeLedger> {
        standard_cycle(config)
    }
}

impl CycleEngine for ModifiedOtto {
    fn kind(&self) -> CycleKind {
        CycleKind::Modified
    }

    fn run(&self, config: &CycleConfig) -> Result<StrokeLedger> {
        modified_cycle(config)
    }
}

impl CycleEngine for SecondKindOtto {
    fn kind(&self) -> CycleKind {
        CycleKind::SecondKind
    }

    fn run(&self, config: &CycleConfig) -> Result<StrokeLedger> {
        second_kind_cycle(config)
    }
}

/// Cycles keyed by name.
pub struct CycleRegistry {
    engines: BTreeMap<String, Box<dyn CycleEngine>>,
}

impl Default for CycleRegistry {
    fn default() -> Self {
        let mut registry = Self::empty();
        registry.register(StandardOtto);
        registry.register(ModifiedOtto);
        registry.register(SecondKindOtto);
        registry
    }
}

impl CycleRegistry {
    pub fn empty() -> Self {
        Self {
            engines: BTreeMap::new(),
        }
    }

    /// Adds an engine, replacing any previous one with the same name.
    pub fn register<E: CycleEngine + 'static>(&mut self, engine: E) {
        self.engines
            .insert(engine.name().to_string(), Box::new(engine));
    }

    pub fn get(&self, name: &str) -> Result<&dyn CycleEngine> {
        self.engines
            .get(name)
            .map(|e| e.as_ref())
            .ok_or_else(|| Error::UnknownCycle(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.engines.keys().map(String::as_str)
    }

    pub fn run(&self, name: &str, config: &CycleConfig) -> Result<StrokeLedger> {
        self.get(name)?.run(config)
    }
}
