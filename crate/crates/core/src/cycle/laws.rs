use serde::{Deserialize, Serialize};

use super::{CycleConfig, CycleKind, StrokeLedger};
use crate::thermo::{thermal_entropy, Occupation};

/// First-law residuals above this (relative to the energy scale) fail.
pub const FIRST_LAW_TOL: f64 = 1e-9;
/// Slack for the inequalities, relative to the size of their terms.
const INEQUALITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClausiusCheck {
    /// `Q2/T_hot + Q4/T1`.
    pub sum: Option<f64>,
    pub skipped: Option<String>,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyCheck {
    /// Entropy gained by the passive part of the working fluid in stroke 2.
    pub delta_s2: f64,
    /// `Q2/T_hot`, absent at zero temperature.
    pub heat_over_temperature: Option<f64>,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LawReport {
    /// `|ΣW + ΣQ|` divided by the largest stroke energy.
    pub first_law_residual: f64,
    pub first_law_ok: bool,
    pub clausius: ClausiusCheck,
    pub entropy: EntropyCheck,
    /// Upper bound the efficiency must respect, when an efficiency exists.
    pub efficiency_bound: Option<f64>,
    pub efficiency_ok: bool,
    /// Carnot COP `T1/(T2 − T1)` for cycles that refrigerate.
    pub cop_bound: Option<f64>,
    pub cop_ok: bool,
}

impl LawReport {
    pub fn clausius_violated(&self) -> bool {
        !self.clausius.ok
    }

    pub fn bound_violated(&self) -> bool {
        !(self.efficiency_ok && self.cop_ok)
    }

    pub fn is_clean(&self) -> bool {
        self.first_law_ok
            && self.clausius.ok
            && self.entropy.ok
            && self.efficiency_ok
            && self.cop_ok
    }
}

fn slack(terms: &[f64]) -> f64 {
    INEQUALITY_TOL * terms.iter().fold(1.0f64, |m, v| m.max(v.abs()))
}

/// Checks a ledger against the first law, the Clausius inequality, the
/// stroke-2 entropy balance and the relevant efficiency bound. Never fails;
/// problems are reported in the returned value.
pub fn audit_laws(ledger: &StrokeLedger, config: &CycleConfig) -> LawReport {
    let scale = ledger.energy_scale();
    let first_law_residual = if scale > 0.0 {
        ledger.first_law_sum().abs() / scale
    } else {
        0.0
    };

    let t1 = config.t1.value();
    // The hot side is at T2 unless the bath thermalises at T_real.
    let (t_hot, n_hot) = match ledger.cycle {
        CycleKind::SecondKind => (
            ledger.hot_temperature.unwrap_or(0.0),
            ledger.n2 + ledger.delta_n,
        ),
        _ => (config.t2.value(), ledger.n2),
    };

    let clausius = if t1 == 0.0 || t_hot == 0.0 {
        ClausiusCheck {
            sum: None,
            skipped: Some("skipped: zero temperature".into()),
            ok: true,
        }
    } else {
        let hot = ledger.q2 / t_hot;
        let cold = ledger.q4 / t1;
        let sum = hot + cold;
        ClausiusCheck {
            sum: Some(sum),
            skipped: None,
            ok: sum <= slack(&[hot, cold]),
        }
    };

    let delta_s2 = thermal_entropy(Occupation::new(n_hot.max(0.0)).expect("finite occupation"))
        - thermal_entropy(Occupation::new(ledger.n1).expect("finite occupation"));
    let entropy = if t_hot == 0.0 {
        EntropyCheck {
            delta_s2,
            heat_over_temperature: None,
            ok: true,
        }
    } else {
        let q_over_t = ledger.q2 / t_hot;
        EntropyCheck {
            delta_s2,
            heat_over_temperature: Some(q_over_t),
            ok: delta_s2 >= q_over_t - slack(&[delta_s2, q_over_t]),
        }
    };

    let efficiency_bound = ledger.eta.map(|_| match ledger.cycle {
        CycleKind::Modified => 1.0,
        // Θ_fic for first-kind baths, T_real for second-kind ones.
        CycleKind::Standard | CycleKind::SecondKind => match ledger.hot_temperature {
            Some(t) if t > 0.0 => 1.0 - t1 / t,
            _ => 1.0,
        },
    });
    let efficiency_ok = match (ledger.eta, efficiency_bound) {
        (Some(eta), Some(bound)) => eta <= bound + INEQUALITY_TOL,
        _ => true,
    };

    let t2 = config.t2.value();
    let cop_bound = ledger.cop.map(|_| {
        if t2 > t1 {
            t1 / (t2 - t1)
        } else {
            f64::INFINITY
        }
    });
    let cop_ok = match (ledger.cop, cop_bound) {
        (Some(cop), Some(bound)) => cop <= bound * (1.0 + INEQUALITY_TOL),
        _ => true,
    };

    LawReport {
        first_law_residual,
        first_law_ok: first_law_residual < FIRST_LAW_TOL,
        clausius,
        entropy,
        efficiency_bound,
        efficiency_ok,
        cop_bound,
        cop_ok,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycle::{modified_cycle, second_kind_cycle, standard_cycle, BathSpec};

    #[test]
    fn thermal_ledger_closes() {
        let c = CycleConfig::new(7.0, 20.0, 2.0, 10.0, BathSpec::Thermal).unwrap();
        let l = standard_cycle(&c).unwrap();
        let r = audit_laws(&l, &c);
        assert!(r.first_law_residual < 1e-9);
        assert!((l.w1 + l.w3 + l.e2 + l.e4).abs() < 1e-9);
        assert!(r.is_clean());
        assert!((r.efficiency_bound.unwrap() - 0.8).abs() < 1e-12);
    }

    #[test]
    fn zero_temperature_skips_clausius() {
        let c = CycleConfig::new(1.0, 2.0, 0.0, 0.0, BathSpec::squeezed(0.5)).unwrap();
        let r = audit_laws(&standard_cycle(&c).unwrap(), &c);
        assert_eq!(
            r.clausius.skipped.as_deref(),
            Some("skipped: zero temperature")
        );
        assert!(r.clausius.sum.is_none());
        assert!(r.first_law_ok);
    }

    #[test]
    fn modified_and_second_kind_close() {
        let c = CycleConfig::new(3.0, 20.0, 2.0, 10.0, BathSpec::squeezed(0.5)).unwrap();
        let r = audit_laws(&modified_cycle(&c).unwrap(), &c);
        assert!(r.is_clean());
        assert!((r.cop_bound.unwrap() - 0.25).abs() < 1e-15);
        let c = CycleConfig::new(7.0, 20.0, 2.0, 10.0, BathSpec::second_kind(0.4)).unwrap();
        let l = second_kind_cycle(&c).unwrap();
        let r = audit_laws(&l, &c);
        assert!(r.is_clean());
        assert!(
            (r.efficiency_bound.unwrap() - (1.0 - 2.0 / l.hot_temperature.unwrap())).abs() < 1e-15
        );
    }

    #[test]
    fn detects_a_broken_ledger() {
        let c = CycleConfig::new(7.0, 20.0, 2.0, 10.0, BathSpec::Thermal).unwrap();
        let mut l = standard_cycle(&c).unwrap();
        l.q4 += 1.0;
        l.eta = Some(0.95);
        let r = audit_laws(&l, &c);
        assert!(!r.first_law_ok);
        assert!(r.clausius_violated());
        assert!(r.bound_violated());
    }
}
