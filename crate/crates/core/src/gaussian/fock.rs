//! Truncated Fock-space oracle.
//!
//! The state is built literally as `U ρ_th U†` with `U = D(α) S(ξ)`, where
//! both unitaries come from numerically exponentiating truncated ladder
//! generators. Writing `ρ_th = Σ_k p_k |k⟩⟨k|` keeps the density in factored
//! form `Σ_k p_k |ψ_k⟩⟨ψ_k|`, so only `rank` columns `ψ_k = U|k⟩` are ever
//! propagated. Nothing here uses the closed-form excess occupation.
//!
//! Phases are moved onto diagonal rotations: with `R(θ) = exp(iθ a†a)`,
//! `S(r e^{iφ}) = R(φ/2) S(r) R(φ/2)†` and `D(|α| e^{iθ}) = R(θ) D(|α|) R(θ)†`,
//! leaving two real generators.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::propagator::{expm_apply, RowBlock, SkewTridiagonal};
use super::GaussianModeState;
use crate::error::{Error, Result};
use crate::thermo::Frequency;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockOptions {
    /// Largest accepted trace deficit.
    pub tail_tol: f64,
    /// Hard cap on the cutoff search.
    pub cap: usize,
}

impl Default for FockOptions {
    fn default() -> Self {
        Self {
            tail_tol: 1e-12,
            cap: 4096,
        }
    }
}

/// Density matrix on the first `dim` Fock levels, held as
/// `Σ_k weights[k] |v_k⟩⟨v_k|`.
#[derive(Debug, Clone)]
pub struct FockDensity {
    dim: usize,
    rank: usize,
    /// Row-major `dim × rank`.
    vectors: Vec<Complex64>,
    weights: Vec<f64>,
    trace_deficit: f64,
}

impl FockDensity {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `1 − trace`, the population lost above the cutoff.
    pub fn trace_deficit(&self) -> f64 {
        self.trace_deficit
    }

    pub fn trace(&self) -> f64 {
        self.diagonal().iter().sum()
    }

    /// Fock populations `ρ_mm`.
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim)
            .map(|m| {
                let row = &self.vectors[m * self.rank..(m + 1) * self.rank];
                row.iter()
                    .zip(&self.weights)
                    .map(|(v, p)| p * v.norm_sqr())
                    .sum()
            })
            .collect()
    }

    pub fn mean_occupation(&self) -> f64 {
        self.diagonal()
            .iter()
            .enumerate()
            .map(|(m, p)| m as f64 * p)
            .sum()
    }

    /// `tr(ρ H)` with `H = ω (a†a + 1/2)`.
    pub fn energy(&self, omega: Frequency) -> f64 {
        let w = omega.value();
        self.diagonal()
            .iter()
            .enumerate()
            .map(|(m, p)| w * (m as f64 + 0.5) * p)
            .sum()
    }

    /// The dense `dim × dim` matrix.
    pub fn matrix(&self) -> DMatrix<Complex64> {
        let v = DMatrix::from_row_slice(self.dim, self.rank, &self.vectors);
        let mut scaled = v.clone();
        for (k, p) in self.weights.iter().enumerate() {
            scaled.column_mut(k).scale_mut(*p);
        }
        scaled * v.adjoint()
    }

    /// All `dim` eigenvalues, descending, clipped into `[0, 1]`.
    ///
    /// The non-zero spectrum of `V P V†` is that of the small Gram matrix
    /// `P^{1/2} V† V P^{1/2}`.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let k = self.rank;
        let sq: Vec<f64> = self.weights.iter().map(|p| p.sqrt()).collect();
        let mut re = DMatrix::<f64>::zeros(self.dim, k);
        let mut im = DMatrix::<f64>::zeros(self.dim, k);
        for m in 0..self.dim {
            for c in 0..k {
                let v = self.vectors[m * k + c] * sq[c];
                re[(m, c)] = v.re;
                im[(m, c)] = v.im;
            }
        }
        let re_t = re.transpose();
        let im_t = im.transpose();
        let gram_re = &re_t * &re + &im_t * &im;
        let gram_im = &re_t * &im - &im_t * &re;
        let gram = DMatrix::from_fn(k, k, |a, b| {
            Complex64::new(gram_re[(a, b)], gram_im[(a, b)])
        });
        let mut lambda: Vec<f64> = gram.symmetric_eigenvalues().iter().copied().collect();
        lambda.sort_by(|a, b| b.total_cmp(a));
        if let Some(&low) = lambda.last() {
            if low < -1e-10 {
                return Err(Error::NegativeEigenvalue { value: low });
            }
        }
        lambda.resize(self.dim.max(k), 0.0);
        lambda.truncate(self.dim);
        for v in &mut lambda {
            *v = v.clamp(0.0, 1.0);
        }
        Ok(lambda)
    }

    /// Keeps the first `dim` levels, moving the dropped population into the
    /// deficit.
    fn truncated(&self, dim: usize) -> FockDensity {
        assert!(dim >= 1 && dim <= self.dim);
        let dropped: f64 = (dim..self.dim)
            .map(|m| {
                let row = &self.vectors[m * self.rank..(m + 1) * self.rank];
                row.iter()
                    .zip(&self.weights)
                    .map(|(v, p)| p * v.norm_sqr())
                    .sum::<f64>()
            })
            .sum();
        FockDensity {
            dim,
            rank: self.rank,
            vectors: self.vectors[..dim * self.rank].to_vec(),
            weights: self.weights.clone(),
            trace_deficit: self.trace_deficit + dropped,
        }
    }

    /// Deficit the density would have if cut to `dim` levels.
    fn deficit_at(&self, dim: usize) -> f64 {
        self.truncated(dim).trace_deficit
    }
}

/// Thermal weights `n^k / (n+1)^{k+1}` down to a negligible tail, and the
/// tail mass left out.
fn thermal_weights(n: f64, tail_tol: f64) -> (Vec<f64>, f64) {
    if n == 0.0 {
        return (vec![1.0], 0.0);
    }
    let q = n / (n + 1.0);
    let floor = (1e-3 * tail_tol).min(1e-15);
    let rank = (floor.ln() / q.ln()).ceil().max(1.0) as usize;
    let weights = (0..rank).map(|k| q.powi(k as i32) / (n + 1.0)).collect();
    (weights, q.powi(rank as i32))
}

/// Columns `S(r)|k⟩` for real `r`, `k < rank`, on `work` levels. The squeeze
/// generator `(r/2)(a² − a†²)` couples only levels of equal parity.
///
/// The squeeze is applied in short steps. A state squeezed by `t r` spreads
/// over roughly `e^{2tr}` times fewer levels than the final one, so early
/// steps run on a proportionally smaller space and a lower series degree.
fn squeeze_columns(r: f64, rank: usize, work: usize) -> RowBlock {
    let mut out = RowBlock::zeros(work, rank);
    if r == 0.0 {
        for k in 0..rank.min(work) {
            out.set(k, k, 1.0);
        }
        return out;
    }
    let steps = (6.0 * r).ceil().max(1.0) as usize;
    let dr = r / steps as f64;
    for parity in 0..2 {
        let cols: Vec<usize> = (parity..rank).step_by(2).collect();
        let total = (work - parity).div_ceil(2);
        if cols.is_empty() || total == 0 {
            continue;
        }
        let mut block = RowBlock::zeros(cols.len().min(total), cols.len());
        for (c, &k) in cols.iter().enumerate() {
            block.set(k / 2, c, 1.0);
        }
        let mut support = cols.len();
        for step in 0..steps {
            let left = (steps - step - 1) as f64 * dr;
            let levels = ((work as f64 * (-2.0 * left).exp()).ceil() as usize)
                .max(rank + 16)
                .min(work);
            let rows = (levels.saturating_sub(parity))
                .div_ceil(2)
                .clamp(block.rows, total);
            block.grow(rows);
            let off: Vec<f64> = (0..rows - 1)
                .map(|j| {
                    let m = 2 * j + parity;
                    0.5 * dr * (((m + 1) * (m + 2)) as f64).sqrt()
                })
                .collect();
            expm_apply(&SkewTridiagonal::new(off), &mut block, support);
            support = rows;
        }
        for j in 0..block.rows {
            let m = 2 * j + parity;
            let src = block.row(j);
            for (c, &k) in cols.iter().enumerate() {
                out.set(m, k, src[c]);
            }
        }
    }
    out
}

/// Applies `D(α)` to the complex columns in place.
fn displace(alpha: Complex64, work: usize, rank: usize, cols: &mut [Complex64]) {
    let mag = alpha.norm();
    if mag == 0.0 {
        return;
    }
    let theta = alpha.arg();
    // Stack real and imaginary parts so one real propagation covers both.
    let mut block = RowBlock::zeros(work, 2 * rank);
    for m in 0..work {
        let phase = Complex64::from_polar(1.0, -theta * m as f64);
        let row = block.row_mut(m);
        for k in 0..rank {
            let v = cols[m * rank + k] * phase;
            row[k] = v.re;
            row[rank + k] = v.im;
        }
    }
    let off: Vec<f64> = (0..work - 1)
        .map(|m| -mag * ((m + 1) as f64).sqrt())
        .collect();
    expm_apply(&SkewTridiagonal::new(off), &mut block, work);
    for m in 0..work {
        let phase = Complex64::from_polar(1.0, theta * m as f64);
        let row = block.row(m);
        for k in 0..rank {
            cols[m * rank + k] = Complex64::new(row[k], row[rank + k]) * phase;
        }
    }
}

/// Builds the density on `cutoff` levels without checking the deficit.
fn build_unchecked(state: &GaussianModeState, cutoff: usize, tail_tol: f64) -> FockDensity {
    let (weights, thermal_tail) = thermal_weights(state.n_th.value(), tail_tol);
    let rank = weights.len();
    let work = (cutoff + cutoff / 2 + 16).max(rank + 16);
    let real = squeeze_columns(state.r, rank, work);
    let half = 0.5 * state.squeeze_phase;
    let mut cols: Vec<Complex64> = (0..work * rank)
        .map(|i| {
            let (m, k) = (i / rank, i % rank);
            let v = real.get(m, k);
            if half == 0.0 || v == 0.0 {
                Complex64::new(v, 0.0)
            } else {
                Complex64::from_polar(v, half * (m as f64 - k as f64))
            }
        })
        .collect();
    displace(state.alpha, work, rank, &mut cols);

    let lost: f64 = (cutoff..work)
        .map(|m| {
            cols[m * rank..(m + 1) * rank]
                .iter()
                .zip(&weights)
                .map(|(v, p)| p * v.norm_sqr())
                .sum::<f64>()
        })
        .sum();
    cols.truncate(cutoff * rank);
    FockDensity {
        dim: cutoff,
        rank,
        vectors: cols,
        weights,
        trace_deficit: thermal_tail + lost,
    }
}

fn check_cutoff(cutoff: usize) -> Result<()> {
    if cutoff == 0 {
        return Err(Error::InvalidParameter {
            name: "cutoff",
            value: 0.0,
            reason: "must be at least 1",
        });
    }
    Ok(())
}

fn check_tol(tail_tol: f64) -> Result<()> {
    if !(tail_tol.is_finite() && tail_tol > 0.0) {
        return Err(Error::InvalidParameter {
            name: "tail_tol",
            value: tail_tol,
            reason: "must be finite and > 0",
        });
    }
    Ok(())
}

/// Density of `state` on `cutoff` levels with the default tail tolerance.
pub fn build_fock_density(state: &GaussianModeState, cutoff: usize) -> Result<FockDensity> {
    build_fock_density_with(state, cutoff, &FockOptions::default())
}

pub fn build_fock_density_with(
    state: &GaussianModeState,
    cutoff: usize,
    opts: &FockOptions,
) -> Result<FockDensity> {
    check_cutoff(cutoff)?;
    check_tol(opts.tail_tol)?;
    let rho = build_unchecked(state, cutoff, opts.tail_tol);
    if rho.trace_deficit > opts.tail_tol {
        return Err(Error::CutoffTooSmall {
            cutoff,
            deficit: rho.trace_deficit,
            tail_tol: opts.tail_tol,
        });
    }
    Ok(rho)
}

/// `tr(ρH) − Σ_i λ_i↓ ω(i + 1/2)`, the maximal extractable work.
pub fn ergotropy_fock(state: &GaussianModeState, omega: Frequency, cutoff: usize) -> Result<f64> {
    ergotropy_fock_with(state, omega, cutoff, &FockOptions::default())
}

pub fn ergotropy_fock_with(
    state: &GaussianModeState,
    omega: Frequency,
    cutoff: usize,
    opts: &FockOptions,
) -> Result<f64> {
    let rho = build_fock_density_with(state, cutoff, opts)?;
    density_ergotropy(&rho, omega)
}

fn density_ergotropy(rho: &FockDensity, omega: Frequency) -> Result<f64> {
    let w = omega.value();
    let passive: f64 = rho
        .eigenvalues()?
        .iter()
        .enumerate()
        .map(|(i, l)| w * (i as f64 + 0.5) * l)
        .sum();
    Ok(rho.energy(omega) - passive)
}

/// Von Neumann entropy `−Σ λ ln λ` of the truncated density.
pub fn entropy_fock(density: &FockDensity) -> Result<f64> {
    Ok(density
        .eigenvalues()?
        .iter()
        .filter(|&&l| l >= 1e-15)
        .map(|l| -l * l.ln())
        .sum())
}

fn starting_cutoff(state: &GaussianModeState) -> f64 {
    let n = state.n_th.value();
    (8.0 * ((2.0 * n + 1.0) * (2.0 * state.r).exp() / 2.0 + state.alpha.norm_sqr()) + 16.0).ceil()
}

/// Next cutoff to try after `failed`: at most double, less when the tail's
/// decay between half the cutoff and the cutoff predicts where it crosses
/// `tail_tol`.
fn next_cutoff(failed: &FockDensity, tail_tol: f64) -> usize {
    let c = failed.dim;
    let doubled = 2 * c;
    if c < 16 {
        return doubled;
    }
    let far = failed.trace_deficit;
    let near = failed.deficit_at(c / 2);
    if !(far > 0.0 && near > far) {
        return doubled;
    }
    let slope = (near / far).ln() / (c - c / 2) as f64;
    let predicted = c as f64 + (far / tail_tol).ln() / slope;
    ((1.1 * predicted).ceil() as usize).clamp(c + 1, doubled)
}

/// Doubling search from the starting guess, then the smallest cutoff below
/// the first passing one that still meets the tolerance.
fn search(state: &GaussianModeState, opts: &FockOptions) -> Result<FockDensity> {
    check_tol(opts.tail_tol)?;
    let cap = opts.cap.max(1);
    let guess = starting_cutoff(state);
    let mut cutoff = if guess >= cap as f64 {
        cap
    } else {
        guess as usize
    };
    let passing = loop {
        let rho = build_unchecked(state, cutoff, opts.tail_tol);
        if rho.trace_deficit < opts.tail_tol {
            break rho;
        }
        if cutoff >= cap {
            return Err(Error::CutoffSearchFailed {
                cap,
                deficit: rho.trace_deficit,
            });
        }
        cutoff = next_cutoff(&rho, opts.tail_tol).min(cap);
    };
    // Deficit is monotone in the cutoff; bisect for the smallest passing one.
    let (mut lo, mut hi) = (0usize, passing.dim);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if passing.deficit_at(mid) < opts.tail_tol {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(if hi == passing.dim {
        passing
    } else {
        passing.truncated(hi)
    })
}

/// Smallest cutoff whose density loses less than `tail_tol` population.
pub fn choose_cutoff(state: &GaussianModeState, tail_tol: f64) -> Result<usize> {
    let opts = FockOptions {
        tail_tol,
        ..FockOptions::default()
    };
    Ok(search(state, &opts)?.dim)
}

/// Everything the oracle measures on one state, at an automatically chosen
/// cutoff.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleReport {
    pub cutoff: usize,
    pub trace_deficit: f64,
    pub mean_occupation: f64,
    pub energy: f64,
    pub ergotropy: f64,
    pub entropy: f64,
}

pub fn fock_oracle(
    state: &GaussianModeState,
    omega: Frequency,
    opts: &FockOptions,
) -> Result<OracleReport> {
    let rho = search(state, opts)?;
    let lambda = rho.eigenvalues()?;
    let w = omega.value();
    let passive: f64 = lambda
        .iter()
        .enumerate()
        .map(|(i, l)| w * (i as f64 + 0.5) * l)
        .sum();
    let energy = rho.energy(omega);
    let entropy = lambda
        .iter()
        .filter(|&&l| l >= 1e-15)
        .map(|l| -l * l.ln())
        .sum();
    Ok(OracleReport {
        cutoff: rho.dim,
        trace_deficit: rho.trace_deficit,
        mean_occupation: rho.mean_occupation(),
        energy,
        ergotropy: energy - passive,
        entropy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::{delta_n, ergotropy_analytic};
    use crate::thermo::{occupation, thermal_entropy, Occupation, Temperature};

    fn occ(v: f64) -> Occupation {
        Occupation::new(v).unwrap()
    }
    fn w(v: f64) -> Frequency {
        Frequency::new(v).unwrap()
    }

    /// Dense `exp` of the complex truncated generators, for small dimensions.
    fn dense_density(state: &GaussianModeState, work: usize, cutoff: usize) -> DMatrix<Complex64> {
        let mut a = DMatrix::<Complex64>::zeros(work, work);
        for m in 1..work {
            a[(m - 1, m)] = Complex64::new((m as f64).sqrt(), 0.0);
        }
        let ad = a.adjoint();
        let xi = Complex64::from_polar(state.r, state.squeeze_phase);
        let sq = ((&a * &a) * xi.conj() - (&ad * &ad) * xi) * Complex64::new(0.5, 0.0);
        let dp = &ad * state.alpha - &a * state.alpha.conj();
        let u = dp.exp() * sq.exp();
        let n = state.n_th.value();
        let th = DMatrix::from_fn(work, work, |i, j| {
            if i == j {
                Complex64::new(n.powi(i as i32) / (n + 1.0).powi(i as i32 + 1), 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let full = &u * th * u.adjoint();
        full.view((0, 0), (cutoff, cutoff)).into_owned()
    }

    #[test]
    fn matches_dense_exponential_at_small_dimension() {
        let state =
            GaussianModeState::new(occ(0.2), 0.3, 0.9, Complex64::from_polar(0.7, -1.3)).unwrap();
        let cutoff = 24;
        let rho = build_unchecked(&state, cutoff, 1e-12);
        let work = cutoff + cutoff / 2 + 16;
        let want = dense_density(&state, work, cutoff);
        let got = rho.matrix();
        let err = (&got - &want).iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(err < 1e-9, "max deviation {err}");
    }

    #[test]
    fn vacuum_is_a_single_projector() {
        let rho = build_fock_density(&GaussianModeState::thermal(Occupation::ZERO), 4).unwrap();
        let m = rho.matrix();
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == 0 && j == 0 { 1.0 } else { 0.0 };
                assert_eq!(m[(i, j)], Complex64::new(want, 0.0));
            }
        }
        assert_eq!(rho.trace_deficit(), 0.0);
    }

    #[test]
    fn thermal_state_has_geometric_diagonal() {
        let rho = build_fock_density(&GaussianModeState::thermal(occ(1.0)), 64).unwrap();
        let d = rho.diagonal();
        for (k, p) in d.iter().enumerate().take(40) {
            assert!((p - 0.5f64.powi(k as i32 + 1)).abs() < 1e-16);
        }
    }

    #[test]
    fn squeezed_vacuum_occupation() {
        let s = GaussianModeState::squeezed(Occupation::ZERO, 0.5).unwrap();
        let rho = build_fock_density(&s, 60).unwrap();
        assert!((rho.mean_occupation() - 0.271_540_317_407_622).abs() < 1e-12);
    }

    #[test]
    fn reports_cutoff_too_small() {
        let s = GaussianModeState::squeezed(occ(0.5), 1.0).unwrap();
        match build_fock_density(&s, 8) {
            Err(Error::CutoffTooSmall {
                cutoff: 8, deficit, ..
            }) => assert!(deficit > 1e-12),
            other => panic!("expected CutoffTooSmall, got {other:?}"),
        }
        assert!(build_fock_density(&s, 0).is_err());
    }

    #[test]
    fn ergotropy_examples() {
        let n2 = occupation(w(20.0), Temperature::new(10.0).unwrap());
        let s = GaussianModeState::squeezed(n2, 0.5).unwrap();
        let cutoff = choose_cutoff(&s, 1e-12).unwrap();
        let e = ergotropy_fock(&s, w(20.0), cutoff).unwrap();
        assert!((e - 7.130_840_363_837_917).abs() < 1e-5 * 7.13, "{e}");

        let d = GaussianModeState::displaced(occ(0.3), Complex64::new(1.5, 0.0)).unwrap();
        let cutoff = choose_cutoff(&d, 1e-12).unwrap();
        let e = ergotropy_fock(&d, w(7.0), cutoff).unwrap();
        assert!((e - 15.75).abs() < 1e-4, "{e}");

        let th = GaussianModeState::thermal(occ(2.0));
        let cutoff = choose_cutoff(&th, 1e-12).unwrap();
        assert!(ergotropy_fock(&th, w(3.0), cutoff).unwrap().abs() < 1e-9);
    }

    #[test]
    fn entropy_is_unitarily_invariant() {
        let n2 = occupation(w(20.0), Temperature::new(10.0).unwrap());
        let s = GaussianModeState::squeezed(n2, 0.5).unwrap();
        let report = fock_oracle(&s, w(20.0), &FockOptions::default()).unwrap();
        assert!((report.entropy - 0.458_448_743_368_190_36).abs() < 1e-6);
        assert!((report.entropy - thermal_entropy(n2)).abs() < 1e-6);

        let th = GaussianModeState::thermal(occ(1.0));
        let rho = build_fock_density(&th, 64).unwrap();
        assert!((entropy_fock(&rho).unwrap() - 2.0 * std::f64::consts::LN_2).abs() < 1e-10);
        let vac = build_fock_density(&GaussianModeState::thermal(Occupation::ZERO), 5).unwrap();
        assert_eq!(entropy_fock(&vac).unwrap(), 0.0);
    }

    #[test]
    fn vacuum_needs_a_single_level() {
        let c = choose_cutoff(&GaussianModeState::thermal(Occupation::ZERO), 1e-12).unwrap();
        assert!(c < 10);
        assert_eq!(c, 1);
    }

    #[test]
    fn chosen_cutoff_is_minimal() {
        let s = GaussianModeState::new(occ(0.7), 0.6, 0.0, Complex64::new(1.0, 1.0)).unwrap();
        let opts = FockOptions::default();
        let c = choose_cutoff(&s, opts.tail_tol).unwrap();
        assert!(build_fock_density_with(&s, c, &opts).is_ok());
        assert!(matches!(
            build_fock_density_with(&s, c - 1, &opts),
            Err(Error::CutoffTooSmall { .. })
        ));
    }

    #[test]
    fn search_gives_up_at_cap() {
        let s = GaussianModeState::squeezed(occ(5.0), 1.5).unwrap();
        let opts = FockOptions {
            tail_tol: 1e-12,
            cap: 64,
        };
        assert!(matches!(
            search(&s, &opts),
            Err(Error::CutoffSearchFailed { cap: 64, .. })
        ));
    }

    #[test]
    fn combined_state_matches_closed_form() {
        let s = GaussianModeState::new(occ(0.4), 0.35, 0.6, Complex64::new(-0.8, 0.5)).unwrap();
        let omega = w(2.5);
        let report = fock_oracle(&s, omega, &FockOptions::default()).unwrap();
        let want = ergotropy_analytic(&s, omega);
        assert!(((report.ergotropy - want) / want).abs() < 1e-8);
        let n = s.n_th.value() + delta_n(&s).value();
        assert!((report.mean_occupation - n).abs() < 1e-9);
        assert!((report.entropy - thermal_entropy(s.n_th)).abs() < 1e-8);
    }

    #[test]
    fn spectrum_does_not_depend_on_phases() {
        let a = GaussianModeState::new(occ(0.5), 0.4, 0.0, Complex64::new(0.9, 0.0)).unwrap();
        let b =
            GaussianModeState::new(occ(0.5), 0.4, 1.7, Complex64::from_polar(0.9, 2.2)).unwrap();
        let la = build_fock_density(&a, 120).unwrap().eigenvalues().unwrap();
        let lb = build_fock_density(&b, 120).unwrap().eigenvalues().unwrap();
        for (x, y) in la.iter().zip(&lb) {
            assert!((x - y).abs() < 1e-12);
        }
    }
}
