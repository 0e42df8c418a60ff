use super::engines::sign_tolerance;
use super::{BathClass, CycleConfig, CycleKind, RegimeTag, StrokeLedger};

/// Operating regime of a computed ledger.
///
/// Signs are decided with a tolerance of `1e-12` times the ledger's energy
/// scale; a cycle with zero net work counts as an engine.
pub fn classify_regime(config: &CycleConfig, ledger: &StrokeLedger) -> RegimeTag {
    let tol = sign_tolerance(ledger);
    let engine = ledger.net_expansion_work() <= tol;
    match ledger.cycle {
        CycleKind::SecondKind => genuine(engine),
        CycleKind::Standard if config.bath.class() == BathClass::Passive => genuine(engine),
        CycleKind::Modified if ledger.q4 > tol => {
            if ledger.e2 + ledger.q4 > tol {
                RegimeTag::DualEngineRefrigerator
            } else {
                RegimeTag::NotEngine
            }
        }
        CycleKind::Standard | CycleKind::Modified => {
            if !engine {
                RegimeTag::NotEngine
            } else if ledger.q2 >= -tol {
                RegimeTag::SubCarnotHybridEngine
            } else if ledger.e4 > tol {
                RegimeTag::SuperCarnotEngineRefrigerator
            } else {
                RegimeTag::SuperCarnotEngineHeatPump
            }
        }
    }
}

fn genuine(engine: bool) -> RegimeTag {
    if engine {
        RegimeTag::GenuineHeatEngine
    } else {
        RegimeTag::NotEngine
    }
}
