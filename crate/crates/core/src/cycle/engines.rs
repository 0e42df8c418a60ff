use super::{
    classify_regime, BathClass, BathSpec, CycleConfig, CycleKind, RegimeTag, SecondKindExcess,
    StrokeLedger,
};
use crate::error::{Error, Result};
use crate::gaussian::delta_n;
use crate::thermo::{invert_occupation, occupation, Frequency, Occupation};

/// Relative tolerance for sign decisions on stroke energies.
pub(crate) const SIGN_TOL: f64 = 1e-12;

pub(crate) fn sign_tolerance(ledger: &StrokeLedger) -> f64 {
    SIGN_TOL * ledger.energy_scale()
}

fn hot_temperature(omega2: Frequency, n: f64) -> Option<f64> {
    (n > 0.0).then(|| {
        invert_occupation(omega2, Occupation::new(n).expect("positive occupation")).value()
    })
}

struct Levels {
    w1: f64,
    w2: f64,
    n1: f64,
    n2: f64,
}

impl Levels {
    fn new(config: &CycleConfig) -> Self {
        Self {
            w1: config.omega1.value(),
            w2: config.omega2.value(),
            n1: config.n1().value(),
            n2: config.n2().value(),
        }
    }
}

fn first_kind_excess(config: &CycleConfig, cycle: &'static str) -> Result<f64> {
    match config.bath.class() {
        BathClass::SecondKind => Err(Error::NotApplicable {
            cycle,
            bath: config.bath.name(),
        }),
        _ => {
            let state = config
                .bath
                .stroke2_state(config.n2())?
                .expect("first-kind bath has a state");
            Ok(delta_n(&state).value())
        }
    }
}

fn blank_ledger(cycle: CycleKind, lv: &Levels, dn: f64) -> StrokeLedger {
    StrokeLedger {
        cycle,
        n1: lv.n1,
        n2: lv.n2,
        delta_n: dn,
        hot_temperature: None,
        w1: 0.0,
        w2: 0.0,
        w3: 0.0,
        w3_prime: None,
        w3_th: None,
        w3_nonpas: None,
        w4: 0.0,
        q2: 0.0,
        q4: 0.0,
        e2: 0.0,
        e4: 0.0,
        w_inv: None,
        e_in: None,
        eta: None,
        eta_reason: None,
        cop: None,
        regime: RegimeTag::NotEngine,
        flags: Vec::new(),
    }
}

/// Efficiency `−(W1 + W3)/E2` for the cycles where both are multiples of
/// `d = n̄_C − n̄₁`; `d` is cancelled explicitly so the ratio stays exact
/// near the engine boundary.
fn set_otto_efficiency(ledger: &mut StrokeLedger, lv: &Levels, d: f64) {
    let tol = sign_tolerance(ledger);
    ledger.e_in = Some(ledger.e2);
    if ledger.net_expansion_work() > tol {
        ledger.eta_reason = Some("not an engine: W1 + W3 > 0".into());
    } else if ledger.e2 <= tol {
        ledger.eta_reason =
            Some("degenerate cycle: E2 = 0, no energy drawn from the hot bath".into());
    } else {
        ledger.eta = Some(((lv.w2 - lv.w1) * d) / (lv.w2 * d));
    }
}

/// Standard Otto cycle with a thermal or first-kind bath.
pub fn standard_cycle(config: &CycleConfig) -> Result<StrokeLedger> {
    config.validate()?;
    let dn = first_kind_excess(config, "standard")?;
    let lv = Levels::new(config);
    let nc = lv.n2 + dn;
    let mut ledger = blank_ledger(CycleKind::Standard, &lv, dn);
    ledger.hot_temperature = hot_temperature(config.omega2, nc);
    ledger.w1 = (lv.w2 - lv.w1) * (lv.n1 + 0.5);
    ledger.w2 = lv.w2 * dn;
    ledger.q2 = lv.w2 * (lv.n2 - lv.n1);
    ledger.e2 = ledger.w2 + ledger.q2;
    ledger.w3 = (lv.w1 - lv.w2) * (nc + 0.5);
    ledger.w4 = -lv.w1 * dn;
    ledger.q4 = lv.w1 * (lv.n1 - lv.n2);
    ledger.e4 = ledger.w4 + ledger.q4;
    set_otto_efficiency(&mut ledger, &lv, nc - lv.n1);
    ledger.regime = classify_regime(config, &ledger);
    Ok(ledger)
}

/// Otto cycle whose stroke-2 non-passivity is undone before stroke 3, so the
/// cold bath only ever sees a thermal state.
pub fn modified_cycle(config: &CycleConfig) -> Result<StrokeLedger> {
    config.validate()?;
    if config.bath.class() != BathClass::FirstKind {
        return Err(Error::NotApplicable {
            cycle: "modified",
            bath: config.bath.name(),
        });
    }
    let dn = first_kind_excess(config, "modified")?;
    if dn == 0.0 {
        let mut ledger = standard_cycle(config)?;
        ledger
            .flags
            .push("zero excess: nothing to undo, standard ledger returned".into());
        return Ok(ledger);
    }
    let lv = Levels::new(config);
    let mut ledger = blank_ledger(CycleKind::Modified, &lv, dn);
    ledger.hot_temperature = hot_temperature(config.omega2, lv.n2 + dn);
    ledger.w1 = (lv.w2 - lv.w1) * (lv.n1 + 0.5);
    ledger.w2 = lv.w2 * dn;
    ledger.q2 = lv.w2 * (lv.n2 - lv.n1);
    ledger.e2 = ledger.w2 + ledger.q2;
    let w3_th = (lv.w1 - lv.w2) * (lv.n2 + 0.5);
    let w3_nonpas = -lv.w2 * dn;
    ledger.w3 = w3_th;
    ledger.w3_th = Some(w3_th);
    ledger.w3_nonpas = Some(w3_nonpas);
    ledger.w3_prime = Some(w3_th + w3_nonpas);
    ledger.w4 = 0.0;
    ledger.q4 = lv.w1 * (lv.n1 - lv.n2);
    ledger.e4 = ledger.q4;

    let tol = sign_tolerance(&ledger);
    if ledger.q4 > tol {
        // n̄₂ < n̄₁: the cold bath is refrigerated while work is produced.
        let e_in = ledger.e2 + ledger.q4;
        ledger.e_in = Some(e_in);
        ledger.w_inv = Some(ledger.w1 + ledger.w2 + w3_th + w3_nonpas);
        if lv.w2 > lv.w1 {
            ledger.cop = Some(lv.w1 / (lv.w2 - lv.w1));
        }
        if e_in > tol {
            ledger.eta = Some(1.0);
        } else {
            ledger.eta_reason = Some("not an engine: E2 + Q4 <= 0".into());
        }
    } else {
        ledger.e_in = Some(ledger.e2);
        let d = lv.n2 + dn - lv.n1;
        if ledger.e2 <= tol {
            ledger.eta_reason =
                Some("degenerate cycle: E2 = 0, no energy drawn from the hot bath".into());
        } else {
            ledger.eta = Some(1.0 - (lv.n2 - lv.n1) * lv.w1 / (d * lv.w2));
        }
    }
    ledger.regime = classify_regime(config, &ledger);
    Ok(ledger)
}

/// Otto cycle with a bath that thermalises the working fluid at `T_real`.
pub fn second_kind_cycle(config: &CycleConfig) -> Result<StrokeLedger> {
    config.validate()?;
    let BathSpec::SecondKind { excess } = config.bath else {
        return Err(Error::NotApplicable {
            cycle: "second-kind",
            bath: config.bath.name(),
        });
    };
    let lv = Levels::new(config);
    let dn = match excess {
        SecondKindExcess::DeltaN(dn) => dn,
        SecondKindExcess::RealTemperature(t) => occupation(config.omega2, t).value() - lv.n2,
    };
    let nc = lv.n2 + dn;
    if nc.is_nan() || nc < 0.0 {
        return Err(Error::InvalidExcess { n_total: nc });
    }
    let mut ledger = blank_ledger(CycleKind::SecondKind, &lv, dn);
    ledger.hot_temperature = hot_temperature(config.omega2, nc);
    ledger.w1 = (lv.w2 - lv.w1) * (lv.n1 + 0.5);
    ledger.q2 = lv.w2 * (nc - lv.n1);
    ledger.e2 = ledger.q2;
    ledger.w3 = (lv.w1 - lv.w2) * (nc + 0.5);
    ledger.q4 = lv.w1 * (lv.n1 - nc);
    ledger.e4 = ledger.q4;
    set_otto_efficiency(&mut ledger, &lv, nc - lv.n1);
    ledger.regime = classify_regime(config, &ledger);
    Ok(ledger)
}
