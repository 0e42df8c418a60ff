//! Parameter sweeps, table output and randomized law audits.

mod audit;
mod table;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cycle::{
    audit_laws, BathClass, BathSpec, CycleConfig, CycleKind, CycleRegistry, RegimeTag,
    SecondKindExcess, StrokeLedger,
};
use crate::error::{Error, Result};
use crate::gaussian::squeeze_for_excess;
use crate::thermo::{Frequency, Occupation, Temperature};

pub use audit::{audit_campaign, AuditSummary, FamilySummary};
pub use table::{emit_table, parse_json_table, TableFormat, COLUMNS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepAxis {
    /// `ω₁/ω₂`, with `ω₂` held fixed.
    FrequencyRatio,
    /// Excess occupation of the stroke-2 state.
    DeltaN,
    SqueezeR,
    /// `|α|`, keeping the displacement's phase.
    DisplacementMag,
    ColdTemperature,
}

impl SweepAxis {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepAxis::FrequencyRatio => "frequency-ratio",
            SweepAxis::DeltaN => "delta-n",
            SweepAxis::SqueezeR => "squeeze-r",
            SweepAxis::DisplacementMag => "displacement-mag",
            SweepAxis::ColdTemperature => "cold-temperature",
        }
    }

    fn accepts(self, bath: &BathSpec) -> bool {
        match self {
            SweepAxis::FrequencyRatio | SweepAxis::ColdTemperature => true,
            SweepAxis::DeltaN => matches!(
                bath,
                BathSpec::SecondKind { .. }
                    | BathSpec::SqueezedThermal { .. }
                    | BathSpec::DisplacedThermal { .. }
            ),
            SweepAxis::SqueezeR => matches!(
                bath,
                BathSpec::SqueezedThermal { .. } | BathSpec::SqueezedDisplaced { .. }
            ),
            SweepAxis::DisplacementMag => {
                matches!(
                    bath,
                    BathSpec::DisplacedThermal { .. } | BathSpec::SqueezedDisplaced { .. }
                )
            }
        }
    }
}

impl std::str::FromStr for SweepAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            SweepAxis::FrequencyRatio,
            SweepAxis::DeltaN,
            SweepAxis::SqueezeR,
            SweepAxis::DisplacementMag,
            SweepAxis::ColdTemperature,
        ]
        .into_iter()
        .find(|a| a.as_str() == s)
        .ok_or_else(|| Error::InvalidSweep(format!("unknown axis '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub base: CycleConfig,
    pub axis: SweepAxis,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
    pub cycle: CycleKind,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.steps < 2 {
            return Err(Error::InvalidSweep(format!(
                "steps must be at least 2, got {}",
                self.steps
            )));
        }
        if !(self.start.is_finite() && self.stop.is_finite()) || self.start > self.stop {
            return Err(Error::InvalidSweep(format!(
                "need finite start <= stop, got {} .. {}",
                self.start, self.stop
            )));
        }
        if !self.axis.accepts(&self.base.bath) {
            return Err(Error::InvalidSweep(format!(
                "axis {} does not apply to a {} bath",
                self.axis.as_str(),
                self.base.bath.name()
            )));
        }
        let class = self.base.bath.class();
        let fits = match self.cycle {
            CycleKind::Standard => class != BathClass::SecondKind,
            CycleKind::Modified => class == BathClass::FirstKind,
            CycleKind::SecondKind => class == BathClass::SecondKind,
        };
        if !fits {
            return Err(Error::InvalidSweep(format!(
                "{} cycle cannot run with a {} bath",
                self.cycle,
                self.base.bath.name()
            )));
        }
        self.base.validate()
    }

    /// Uniform grid, both ends included.
    pub fn grid(&self) -> Vec<f64> {
        let last = self.steps - 1;
        (0..self.steps)
            .map(|i| {
                if i == last {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * (i as f64 / last as f64)
                }
            })
            .collect()
    }

    /// The base configuration with the swept parameter set to `x`.
    pub fn config_at(&self, x: f64) -> Result<CycleConfig> {
        let mut c = self.base;
        match self.axis {
            SweepAxis::FrequencyRatio => c.omega1 = Frequency::new(x * c.omega2.value())?,
            SweepAxis::ColdTemperature => c.t1 = Temperature::new(x)?,
            SweepAxis::SqueezeR => match &mut c.bath {
                BathSpec::SqueezedThermal { r, .. } | BathSpec::SqueezedDisplaced { r, .. } => {
                    *r = x
                }
                _ => unreachable!("axis checked against bath"),
            },
            SweepAxis::DisplacementMag => match &mut c.bath {
                BathSpec::DisplacedThermal { alpha }
                | BathSpec::SqueezedDisplaced { alpha, .. } => {
                    *alpha = Complex64::from_polar(x, alpha.arg());
                }
                _ => unreachable!("axis checked against bath"),
            },
            SweepAxis::DeltaN => {
                let n2 = c.n2();
                match &mut c.bath {
                    BathSpec::SecondKind { excess } => *excess = SecondKindExcess::DeltaN(x),
                    BathSpec::SqueezedThermal { r, .. } => {
                        *r = squeeze_for_excess(n2, Occupation::new(x)?)
                    }
                    BathSpec::DisplacedThermal { alpha } => {
                        *alpha =
                            Complex64::from_polar(Occupation::new(x)?.value().sqrt(), alpha.arg());
                    }
                    _ => unreachable!("axis checked against bath"),
                }
            }
        }
        c.validate()?;
        Ok(c)
    }
}

/// One grid point: the flattened ledger, or a flag explaining its absence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub axis: f64,
    #[serde(rename = "W1")]
    pub w1: Option<f64>,
    #[serde(rename = "W2")]
    pub w2: Option<f64>,
    #[serde(rename = "W3")]
    pub w3: Option<f64>,
    #[serde(rename = "W3_prime")]
    pub w3_prime: Option<f64>,
    #[serde(rename = "W4")]
    pub w4: Option<f64>,
    #[serde(rename = "Q2")]
    pub q2: Option<f64>,
    #[serde(rename = "Q4")]
    pub q4: Option<f64>,
    #[serde(rename = "E2")]
    pub e2: Option<f64>,
    #[serde(rename = "E4")]
    pub e4: Option<f64>,
    pub eta: Option<f64>,
    pub cop: Option<f64>,
    pub regime: Option<RegimeTag>,
    pub law_residual: Option<f64>,
    pub flag: Option<String>,
}

impl SweepRow {
    fn from_ledger(axis: f64, ledger: &StrokeLedger, config: &CycleConfig) -> Self {
        let report = audit_laws(ledger, config);
        let mut notes: Vec<String> = ledger.flags.clone();
        if ledger.eta.is_none() {
            if let Some(reason) = &ledger.eta_reason {
                notes.push(reason.clone());
            }
        }
        if !report.is_clean() {
            notes.push("law audit failed".into());
        }
        Self {
            axis,
            w1: Some(ledger.w1),
            w2: Some(ledger.w2),
            w3: Some(ledger.w3),
            w3_prime: ledger.w3_prime,
            w4: Some(ledger.w4),
            q2: Some(ledger.q2),
            q4: Some(ledger.q4),
            e2: Some(ledger.e2),
            e4: Some(ledger.e4),
            eta: ledger.eta,
            cop: ledger.cop,
            regime: Some(ledger.regime),
            law_residual: Some(report.first_law_residual),
            flag: (!notes.is_empty()).then(|| notes.join("; ")),
        }
    }

    fn from_error(axis: f64, err: &Error) -> Self {
        Self {
            axis,
            w1: None,
            w2: None,
            w3: None,
            w3_prime: None,
            w4: None,
            q2: None,
            q4: None,
            e2: None,
            e4: None,
            eta: None,
            cop: None,
            regime: None,
            law_residual: None,
            flag: Some(format!("error: {err}")),
        }
    }
}

/// Evaluates the chosen cycle at every grid point, in parallel, and returns
/// the rows in grid order. Point failures become row flags.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let registry = CycleRegistry::default();
    let engine = registry.get(spec.cycle.as_str())?;
    Ok(spec
        .grid()
        .into_par_iter()
        .map(|x| {
            let outcome = spec
                .config_at(x)
                .and_then(|c| engine.run(&c).map(|l| (c, l)));
            match outcome {
                Ok((config, ledger)) => SweepRow::from_ledger(x, &ledger, &config),
                Err(e) => SweepRow::from_error(x, &e),
            }
        })
        .collect())
}
