//! Exponentials of real skew-symmetric tridiagonal generators, applied to a
//! block of vectors without ever forming the matrix.
//!
//! For a skew generator `G` with spectrum inside `i[-ρ, ρ]` the Jacobi–Anger
//! expansion gives
//! `exp(G) v = J_0(ρ) w_0 + 2 Σ_k J_k(ρ) w_k`, with `w_0 = v`,
//! `w_1 = (G/ρ) v` and `w_{k+1} = 2 (G/ρ) w_k + w_{k-1}`.
//! Everything stays real.

/// `J_0(x) ..= J_kmax(x)` for `x >= 0` by Miller's backward recurrence,
/// normalised with `J_0 + 2 Σ J_{2k} = 1`.
pub(crate) fn bessel_j_sequence(x: f64, kmax: usize) -> Vec<f64> {
    let mut out = vec![0.0; kmax + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return out;
    }
    let guess = (x + 15.0 * x.cbrt() + 40.0).ceil() as usize;
    let mut start = guess.max(kmax + 20);
    if start % 2 == 1 {
        start += 1;
    }
    let mut above = 0.0f64; // J_{k+1}
    let mut cur = 1e-300f64; // J_k
    let mut norm = 0.0f64;
    for k in (0..=start).rev() {
        if k <= kmax {
            out[k] = cur;
        }
        if k % 2 == 0 {
            norm += if k == 0 { cur } else { 2.0 * cur };
        }
        if k == 0 {
            break;
        }
        let below = (2.0 * k as f64 / x) * cur - above;
        above = cur;
        cur = below;
        if cur.abs() > 1e250 {
            let s = 1e-250;
            cur *= s;
            above *= s;
            norm *= s;
            for v in out.iter_mut().skip(k - 1) {
                *v *= s;
            }
        }
    }
    for v in &mut out {
        *v /= norm;
    }
    out
}

/// Skew tridiagonal `G` with `G[j][j+1] = off[j]` and `G[j+1][j] = -off[j]`.
#[derive(Debug, Clone)]
pub(crate) struct SkewTridiagonal {
    off: Vec<f64>,
}

impl SkewTridiagonal {
    pub(crate) fn new(off: Vec<f64>) -> Self {
        Self { off }
    }

    pub(crate) fn dim(&self) -> usize {
        self.off.len() + 1
    }

    /// Gershgorin bound on the spectral radius.
    pub(crate) fn norm_bound(&self) -> f64 {
        let n = self.dim();
        (0..n)
            .map(|j| {
                let up = if j + 1 < n { self.off[j].abs() } else { 0.0 };
                let down = if j > 0 { self.off[j - 1].abs() } else { 0.0 };
                up + down
            })
            .fold(0.0, f64::max)
    }

    #[cfg(test)]
    pub(crate) fn off(&self) -> &[f64] {
        &self.off
    }
}

/// Dense row-major block of `rows × cols` reals.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct RowBlock {
    pub(crate) rows: usize,
    pub(crate) cols: usize,
    pub(crate) data: Vec<f64>,
}

impl RowBlock {
    pub(crate) fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    #[inline]
    pub(crate) fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    #[inline]
    pub(crate) fn row_mut(&mut self, r: usize) -> &mut [f64] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Appends zero rows.
    pub(crate) fn grow(&mut self, rows: usize) {
        if rows > self.rows {
            self.rows = rows;
            self.data.resize(rows * self.cols, 0.0);
        }
    }

    #[inline]
    pub(crate) fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub(crate) fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.cols + c] = v;
    }
}

/// One recurrence step on the leading `rows` rows:
/// `dst[j] = coef (off[j] src[j+1] − off[j−1] src[j−1]) + keep·dst[j]`,
/// then `acc[j] += weight · dst[j]` while the row is hot.
#[allow(clippy::too_many_arguments)]
fn chebyshev_step(
    off: &[f64],
    coef: f64,
    src: &[f64],
    dst: &mut [f64],
    acc: &mut [f64],
    weight: f64,
    cols: usize,
    rows: usize,
    keep: bool,
) {
    let n = off.len() + 1;
    for j in 0..rows {
        let out = &mut dst[j * cols..(j + 1) * cols];
        if !keep {
            out.fill(0.0);
        }
        if j + 1 < n {
            let a = coef * off[j];
            let s = &src[(j + 1) * cols..(j + 2) * cols];
            for (o, &v) in out.iter_mut().zip(s) {
                *o += a * v;
            }
        }
        if j > 0 {
            let b = -coef * off[j - 1];
            let s = &src[(j - 1) * cols..j * cols];
            for (o, &v) in out.iter_mut().zip(s) {
                *o += b * v;
            }
        }
        let sum = &mut acc[j * cols..(j + 1) * cols];
        for (o, &v) in sum.iter_mut().zip(out.iter()) {
            *o += weight * v;
        }
    }
}

/// Replaces `block` with `exp(g) · block`. Only the first `support` rows of
/// the input may be non-zero.
pub(crate) fn expm_apply(g: &SkewTridiagonal, block: &mut RowBlock, support: usize) {
    assert_eq!(g.dim(), block.rows, "generator and block dimensions differ");
    let n = block.rows;
    let cols = block.cols;
    let rho = g.norm_bound();
    if rho == 0.0 || cols == 0 {
        return;
    }
    let kmax = (rho + 15.0 * rho.cbrt() + 40.0).ceil() as usize;
    let bessel = bessel_j_sequence(rho, kmax);
    // ‖w_k‖ ≤ ‖v‖, so terms past this point cannot matter.
    let last = bessel
        .iter()
        .rposition(|j| 2.0 * j.abs() > 1e-18)
        .unwrap_or(0);

    let mut support = support.clamp(1, n);
    let mut prev = block.data.clone();
    let mut cur = vec![0.0; n * cols];
    let acc = &mut block.data;
    for v in acc.iter_mut() {
        *v *= bessel[0];
    }
    if last == 0 {
        return;
    }
    let inv = 1.0 / rho;
    support = (support + 1).min(n);
    chebyshev_step(
        &g.off,
        inv,
        &prev,
        &mut cur,
        acc,
        2.0 * bessel[1],
        cols,
        support,
        false,
    );
    for k in 1..last {
        support = (support + 1).min(n);
        // prev <- 2 A cur + prev, which is w_{k+1}.
        chebyshev_step(
            &g.off,
            2.0 * inv,
            &cur,
            &mut prev,
            acc,
            2.0 * bessel[k + 1],
            cols,
            support,
            true,
        );
        std::mem::swap(&mut prev, &mut cur);
    }
}
