use num_complex::Complex64;
use otto_forge::cycle::{
    audit_laws, classify_regime, modified_cycle, standard_cycle, BathSpec, CycleConfig,
    CycleEngine, CycleKind, CycleRegistry, RegimeTag, StrokeLedger,
};
use otto_forge::gaussian::{
    build_fock_density, delta_n, ergotropy_analytic, ergotropy_fock, fock_oracle, FockOptions,
    GaussianModeState,
};
use otto_forge::sweep::{emit_table, run_sweep, SweepAxis, SweepSpec, TableFormat};
use otto_forge::thermo::{Frequency, Occupation};
use otto_forge::Error;

/// A user-supplied strategy: the standard cycle with the efficiency dropped.
struct NoEta;

impl CycleEngine for NoEta {
    fn kind(&self) -> CycleKind {
        CycleKind::Standard
    }

    fn name(&self) -> &'static str {
        "standard-no-eta"
    }

    fn run(&self, config: &CycleConfig) -> otto_forge::Result<StrokeLedger> {
        let mut l = standard_cycle(config)?;
        l.eta = None;
        Ok(l)
    }
}

fn base(bath: BathSpec) -> CycleConfig {
    CycleConfig::new(7.0, 20.0, 2.0, 10.0, bath).unwrap()
}

#[test]
fn registry_dispatches_by_name() {
    let mut registry = CycleRegistry::default();
    assert_eq!(
        registry.names().collect::<Vec<_>>(),
        ["modified", "second-kind", "standard"]
    );
    registry.register(NoEta);
    let c = base(BathSpec::squeezed(0.5));
    assert!(registry.run("standard-no-eta", &c).unwrap().eta.is_none());
    assert_eq!(
        registry.run("standard", &c).unwrap(),
        standard_cycle(&c).unwrap()
    );
    assert!(matches!(
        registry.run("diesel", &c),
        Err(Error::UnknownCycle(_))
    ));
    assert!(CycleRegistry::empty().run("standard", &c).is_err());
}

#[test]
fn modified_and_standard_share_the_compression_strokes() {
    let c = base(BathSpec::SqueezedDisplaced {
        r: 0.4,
        phase: 1.0,
        alpha: Complex64::new(0.3, -0.2),
    });
    let s = standard_cycle(&c).unwrap();
    let m = modified_cycle(&c).unwrap();
    assert_eq!(s.w1, m.w1);
    assert_eq!(s.w2, m.w2);
    assert_eq!(s.q2, m.q2);
    assert!(m.w3_prime.is_some() && s.w3_prime.is_none());
    assert_eq!(m.w4, 0.0);
    assert!(audit_laws(&m, &c).is_clean());
    assert_eq!(classify_regime(&c, &m), m.regime);
}

#[test]
fn stroke2_excess_matches_fock_occupation() {
    let c = base(BathSpec::SqueezedDisplaced {
        r: 0.6,
        phase: 0.7,
        alpha: Complex64::new(-0.8, 0.5),
    });
    let state = c.bath.stroke2_state(c.n2()).unwrap().unwrap();
    let rho = build_fock_density(&state, 200).unwrap();
    let ledger = standard_cycle(&c).unwrap();
    assert!((rho.mean_occupation() - (ledger.n2 + ledger.delta_n)).abs() < 1e-10);
    assert!((delta_n(&state).value() - ledger.delta_n).abs() < 1e-15);
    // W2 is exactly the ergotropy the bath hands over.
    let omega2 = Frequency::new(20.0).unwrap();
    let e = ergotropy_fock(&state, omega2, 200).unwrap();
    assert!(
        (e - ledger.w2).abs() < 1e-8 * ledger.w2,
        "{e} {}",
        ledger.w2
    );
}

#[test]
fn oracle_reports_are_consistent() {
    let omega = Frequency::new(3.0).unwrap();
    let state = GaussianModeState::new(
        Occupation::new(0.8).unwrap(),
        0.9,
        2.0,
        Complex64::new(1.0, 1.5),
    )
    .unwrap();
    let report = fock_oracle(&state, omega, &FockOptions::default()).unwrap();
    assert!(report.trace_deficit < 1e-12);
    assert!((report.ergotropy - ergotropy_analytic(&state, omega)).abs() < 1e-9 * report.ergotropy);
    assert!((report.energy - omega.value() * (report.mean_occupation + 0.5)).abs() < 1e-9);
    assert!(matches!(
        build_fock_density(&state, 10),
        Err(Error::CutoffTooSmall { cutoff: 10, .. })
    ));
}

#[test]
fn sweep_csv_is_byte_identical_between_runs() {
    let spec = SweepSpec {
        base: base(BathSpec::displaced(Complex64::new(0.0, 0.5))),
        axis: SweepAxis::DisplacementMag,
        start: 0.0,
        stop: 2.0,
        steps: 257,
        cycle: CycleKind::Modified,
    };
    let a = emit_table(&run_sweep(&spec).unwrap(), TableFormat::Csv).unwrap();
    let b = emit_table(&run_sweep(&spec).unwrap(), TableFormat::Csv).unwrap();
    assert_eq!(a, b);
}

#[test]
fn cold_temperature_sweep_crosses_into_dual_regime() {
    // Q4 turns positive once n1 exceeds n2, i.e. for T1 > T2 ω1/ω2 = 1.5.
    let c = CycleConfig::new(3.0, 20.0, 0.5, 10.0, BathSpec::squeezed(0.5)).unwrap();
    let spec = SweepSpec {
        base: c,
        axis: SweepAxis::ColdTemperature,
        start: 0.5,
        stop: 2.5,
        steps: 201,
        cycle: CycleKind::Modified,
    };
    let rows = run_sweep(&spec).unwrap();
    let onset = rows
        .iter()
        .find(|r| r.regime == Some(RegimeTag::DualEngineRefrigerator))
        .unwrap();
    assert!(
        onset.axis > 1.5 && onset.axis <= 1.5 + 0.01 + 1e-12,
        "{}",
        onset.axis
    );
    assert!(rows
        .iter()
        .all(|r| r.law_residual.unwrap() < 1e-9 && r.flag.is_none()));
}
