use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cycle::{
    audit_laws, modified_cycle, second_kind_cycle, standard_cycle, BathSpec, CycleConfig, LawReport,
};
use crate::error::{Error, Result};
use crate::thermo::{occupation, Frequency, Temperature};

/// Tallies for one family of sampled configurations.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FamilySummary {
    pub configs: usize,
    pub ledgers: usize,
    pub max_first_law_residual: f64,
    pub first_law_violations: usize,
    pub clausius_violations: usize,
    pub entropy_violations: usize,
    pub bound_violations: usize,
    /// Cycles that returned an error instead of a ledger.
    pub errors: usize,
}

impl FamilySummary {
    fn add(&mut self, report: &LawReport) {
        self.ledgers += 1;
        self.max_first_law_residual = self.max_first_law_residual.max(report.first_law_residual);
        self.first_law_violations += usize::from(!report.first_law_ok);
        self.clausius_violations += usize::from(report.clausius_violated());
        self.entropy_violations += usize::from(!report.entropy.ok);
        self.bound_violations += usize::from(report.bound_violated());
    }

    fn merge(mut self, other: &FamilySummary) -> FamilySummary {
        self.configs += other.configs;
        self.ledgers += other.ledgers;
        self.max_first_law_residual = self
            .max_first_law_residual
            .max(other.max_first_law_residual);
        self.first_law_violations += other.first_law_violations;
        self.clausius_violations += other.clausius_violations;
        self.entropy_violations += other.entropy_violations;
        self.bound_violations += other.bound_violations;
        self.errors += other.errors;
        self
    }

    pub fn violations(&self) -> usize {
        self.first_law_violations
            + self.clausius_violations
            + self.entropy_violations
            + self.bound_violations
            + self.errors
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditSummary {
    pub samples: usize,
    pub seed: u64,
    /// Squeezed-and-displaced baths, run through the standard and modified
    /// cycles.
    pub first_kind: FamilySummary,
    /// Thermalising baths with excess drawn from `[−n̄₂, 5]`.
    pub second_kind: FamilySummary,
    pub max_first_law_residual: f64,
    pub total_violations: usize,
}

struct Sample {
    first: CycleConfig,
    second: CycleConfig,
}

fn draw(rng: &mut ChaCha8Rng) -> Result<Sample> {
    let omega2 = rng.random_range(1.0..=100.0);
    // (0, 1]: ω₁ must stay positive.
    let omega1 = (1.0 - rng.random::<f64>()) * omega2;
    let t2 = rng.random_range(0.0..=50.0);
    let t1 = rng.random_range(0.0..=1.0) * t2;
    let r = rng.random_range(0.0..=1.5);
    let phase = rng.random_range(0.0..std::f64::consts::TAU);
    let alpha = Complex64::from_polar(
        rng.random_range(0.0..=3.0),
        rng.random_range(0.0..std::f64::consts::TAU),
    );
    let n2 = occupation(Frequency::new(omega2)?, Temperature::new(t2)?).value();
    let dn = rng.random_range(-n2..=5.0);
    Ok(Sample {
        first: CycleConfig::new(
            omega1,
            omega2,
            t1,
            t2,
            BathSpec::SqueezedDisplaced { r, phase, alpha },
        )?,
        second: CycleConfig::new(omega1, omega2, t1, t2, BathSpec::second_kind(dn))?,
    })
}

fn evaluate(sample: &Sample) -> (FamilySummary, FamilySummary) {
    let mut first = FamilySummary {
        configs: 1,
        ..Default::default()
    };
    for run in [standard_cycle, modified_cycle] {
        match run(&sample.first) {
            Ok(ledger) => first.add(&audit_laws(&ledger, &sample.first)),
            Err(_) => first.errors += 1,
        }
    }
    let mut second = FamilySummary {
        configs: 1,
        ..Default::default()
    };
    match second_kind_cycle(&sample.second) {
        Ok(ledger) => second.add(&audit_laws(&ledger, &sample.second)),
        Err(_) => second.errors += 1,
    }
    (first, second)
}

/// Audits the cycle laws on `samples` random configurations per family.
///
/// Ranges: `ω₂ ∈ [1, 100]`, `ω₁ ∈ (0, ω₂]`, `T₂ ∈ [0, 50]`, `T₁ ∈ [0, T₂]`,
/// `r ∈ [0, 1.5]`, `|α| ∈ [0, 3]`, phases uniform. Samples are drawn
/// sequentially from a ChaCha8 stream seeded with `seed` and then evaluated
/// in parallel, so the result does not depend on the thread count.
pub fn audit_campaign(samples: usize, seed: u64) -> Result<AuditSummary> {
    if samples == 0 {
        return Err(Error::InvalidParameter {
            name: "samples",
            value: 0.0,
            reason: "must be at least 1",
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let drawn: Vec<Sample> = (0..samples)
        .map(|_| draw(&mut rng))
        .collect::<Result<_>>()?;
    let results: Vec<(FamilySummary, FamilySummary)> = drawn.par_iter().map(evaluate).collect();
    let (first_kind, second_kind) = results.iter().fold(
        (FamilySummary::default(), FamilySummary::default()),
        |(a, b), (x, y)| (a.merge(x), b.merge(y)),
    );
    Ok(AuditSummary {
        samples,
        seed,
        max_first_law_residual: first_kind
            .max_first_law_residual
            .max(second_kind.max_first_law_residual),
        total_violations: first_kind.violations() + second_kind.violations(),
        first_kind,
        second_kind,
    })
}
