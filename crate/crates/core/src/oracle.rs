//! Brute-force eigenvalues of `−F″ + U/cos²x F = E F` on `(−π/2, π/2)`.
//!
//! Numerov shooting from both singular edges. Each side starts a distance δ
//! from `±π/2` on the regular Frobenius branch
//! `F ≈ t^α (1 + c₁ t²)`, `t = π/2 ∓ x`, `α = m + 1/2`,
//! `c₁ = −(E − U/3) / (4α + 2)`. The two solutions are compared at the match
//! point through the normalized discrete Wronskian of their Numerov
//! variables `z = (1 + h²k/12) F`, which vanishes exactly when the
//! log-derivatives agree and stays finite when `F` has a node there.

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::series::reduce_parameters;

const RESCALE_ABOVE: f64 = 1e120;
const MAX_EXPANSIONS: usize = 60;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleConfig<T> {
    pub grid_points: usize,
    pub match_point: T,
    /// Initial half-width of the energy bracket around the guess.
    pub bracket_width: T,
    /// Absolute tolerance on `E`.
    pub tolerance: T,
    /// Distance δ of the first grid point from `±π/2`.
    pub edge_offset: T,
}

impl<T: Real> Default for OracleConfig<T> {
    fn default() -> Self {
        Self {
            grid_points: 16001,
            match_point: T::zero(),
            bracket_width: T::lit(0.4),
            tolerance: T::lit(1e-10),
            edge_offset: T::lit(1e-3),
        }
    }
}

impl<T: Real> OracleConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if self.grid_points < 2000 {
            return Err(Error::config("grid_points", "must be ≥ 2000"));
        }
        if !(self.edge_offset > T::zero() && self.edge_offset < T::lit(0.1)) {
            return Err(Error::config("edge_offset", "must lie in (0, 0.1)"));
        }
        if !(self.tolerance > T::zero()) {
            return Err(Error::config("tolerance", "must be positive"));
        }
        if !(self.bracket_width > T::zero()) {
            return Err(Error::config("bracket_width", "must be positive"));
        }
        let inner = T::FRAC_PI_2() - self.edge_offset;
        if !(self.match_point.abs() < inner) {
            return Err(Error::config(
                "match_point",
                "must lie strictly inside (−π/2 + δ, π/2 − δ)",
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleResult<T> {
    pub m: u32,
    pub l: u32,
    pub e: T,
    /// `E − 1/4`
    pub lambda2: T,
    pub node_count: usize,
    pub parity: Parity,
    pub converged: bool,
}

/// Uniform grid on `[−π/2 + δ, π/2 − δ]` with the Numerov weights at one
/// energy.
struct Grid<T> {
    h: T,
    delta: T,
    alpha: T,
    c1: T,
    /// `h² (E − V(x_i)) / 12`
    g: Vec<T>,
    mid: usize,
}

impl<T: Real> Grid<T> {
    fn new(e: T, m: u32, cfg: &OracleConfig<T>) -> Self {
        let (u, _) = reduce_parameters::<T>(m, T::zero());
        let n = cfg.grid_points;
        let delta = cfg.edge_offset;
        let half = T::FRAC_PI_2() - delta;
        let h = (half + half) / T::from_usize(n - 1).expect("grid size representable");
        let twelfth = h * h / T::int(12);
        let g = (0..n)
            .map(|i| {
                let x = -half + h * T::from_usize(i).expect("index representable");
                let c = x.cos();
                twelfth * (e - u / (c * c))
            })
            .collect();
        let mid = ((cfg.match_point + half) / h)
            .round()
            .to_usize()
            .unwrap_or(n / 2)
            .clamp(2, n - 3);
        let alpha = T::from_u32(m).expect("m representable") + T::lit(0.5);
        let c1 = -(e - u / T::int(3)) / (T::int(4) * alpha + T::int(2));
        Grid {
            h,
            delta,
            alpha,
            c1,
            g,
            mid,
        }
    }

    fn len(&self) -> usize {
        self.g.len()
    }

    fn frobenius(&self, t: T) -> T {
        t.powf(self.alpha) * (T::one() + self.c1 * t * t)
    }

    /// Numerov `z`-values shot from the left edge up to index `end`
    /// (inclusive). Rescales on growth; only ratios and signs are meaningful.
    fn shoot_left(&self, end: usize, e: T) -> Result<Vec<T>> {
        let mut z = vec![T::zero(); end + 1];
        z[0] = (T::one() + self.g[0]) * self.frobenius(self.delta);
        z[1] = (T::one() + self.g[1]) * self.frobenius(self.delta + self.h);
        for i in 1..end {
            let t = (T::int(2) - T::int(10) * self.g[i]) / (T::one() + self.g[i]);
            z[i + 1] = t * z[i] - z[i - 1];
            let newest = z[i + 1];
            rescale(&mut z[..=i + 1], newest, e)?;
        }
        Ok(z)
    }

    /// Mirror image of [`shoot_left`]: shot from the right edge down to
    /// index `start`, returned on the common grid (entries below `start` are
    /// zero).
    fn shoot_right(&self, start: usize, e: T) -> Result<Vec<T>> {
        let n = self.len();
        let mut z = vec![T::zero(); n];
        z[n - 1] = (T::one() + self.g[n - 1]) * self.frobenius(self.delta);
        z[n - 2] = (T::one() + self.g[n - 2]) * self.frobenius(self.delta + self.h);
        for i in (start + 1..n - 1).rev() {
            let t = (T::int(2) - T::int(10) * self.g[i]) / (T::one() + self.g[i]);
            z[i - 1] = t * z[i] - z[i + 1];
            let newest = z[i - 1];
            rescale(&mut z[i - 1..], newest, e)?;
        }
        Ok(z)
    }

    fn to_f(&self, i: usize, z: T) -> T {
        z / (T::one() + self.g[i])
    }
}

/// Scales the whole computed stretch down once its newest value grows past
/// the threshold.
fn rescale<T: Real>(z: &mut [T], newest: T, e: T) -> Result<()> {
    let size = newest.abs();
    if !size.is_finite() {
        return Err(Error::NumericalOverflow { energy: e.as_f64() });
    }
    if size > T::lit(RESCALE_ABOVE) {
        let s = size.recip();
        z.iter_mut().for_each(|v| *v = *v * s);
    }
    Ok(())
}

fn sign_changes<T: Real>(values: impl Iterator<Item = T>) -> usize {
    let mut count = 0;
    let mut prev = T::zero();
    for v in values {
        if v == T::zero() {
            continue;
        }
        if prev != T::zero() && (v > T::zero()) != (prev > T::zero()) {
            count += 1;
        }
        prev = v;
    }
    count
}

fn check_m(m: u32) -> Result<()> {
    if m < 1 {
        return Err(Error::domain("the oracle needs m ≥ 1"));
    }
    Ok(())
}

/// Log-derivative mismatch at the match point, in angle form: the sine of the
/// angle between the left and right Numerov pairs `(z_i, z_{i+1})`.
pub fn shoot_mismatch<T: Real>(e: T, m: u32, cfg: &OracleConfig<T>) -> Result<T> {
    check_m(m)?;
    if !(e > T::zero()) {
        return Err(Error::domain(format!("energy must be positive, got {e}")));
    }
    cfg.validate()?;
    let grid = Grid::new(e, m, cfg);
    Ok(mismatch_on(&grid, e)?.0)
}

/// Returns the mismatch plus both shot solutions (left valid on `0..=mid+1`,
/// right on `mid..`).
fn mismatch_on<T: Real>(grid: &Grid<T>, e: T) -> Result<(T, Vec<T>, Vec<T>)> {
    let mid = grid.mid;
    let left = grid.shoot_left(mid + 1, e)?;
    let right = grid.shoot_right(mid, e)?;
    let (a, b) = (left[mid], left[mid + 1]);
    let (c, d) = (right[mid], right[mid + 1]);
    let norm = a.hypot(b) * c.hypot(d);
    Ok(((a * d - b * c) / norm, left, right))
}

/// Number of nodes of the solution shot from the left across the whole
/// interval; equals the number of eigenvalues below `E`.
fn count_below<T: Real>(e: T, m: u32, cfg: &OracleConfig<T>) -> Result<usize> {
    let grid = Grid::new(e, m, cfg);
    let z = grid.shoot_left(grid.len() - 1, e)?;
    Ok(sign_changes(
        z.iter().enumerate().map(|(i, v)| grid.to_f(i, *v)),
    ))
}

/// The `(l − m)`-th eigenvalue of the `m` sector.
pub fn solve_level<T: Real>(m: u32, l: u32, cfg: &OracleConfig<T>) -> Result<OracleResult<T>> {
    check_m(m)?;
    if l < m {
        return Err(Error::domain(format!("need l ≥ m, got l = {l}, m = {m}")));
    }
    cfg.validate()?;
    let target = (l - m) as usize;
    let lt = T::from_u32(l).expect("l representable");
    let guess = (lt + T::lit(0.5)) * (lt + T::lit(0.5));
    let bracket_failure = || Error::BracketFailure { m, l };

    // Bracket by node count: count(lo) ≤ target < count(hi).
    let mut width = cfg.bracket_width;
    let floor = T::lit(1e-6);
    let (mut lo, mut hi) = ((guess - width).max(floor), guess + width);
    let mut expansions = 0;
    while count_below(lo, m, cfg)? > target {
        width = width + width;
        lo = (guess - width).max(floor);
        expansions += 1;
        if expansions > MAX_EXPANSIONS || lo == floor && count_below(lo, m, cfg)? > target {
            return Err(bracket_failure());
        }
    }
    while count_below(hi, m, cfg)? <= target {
        width = width + width;
        hi = guess + width;
        expansions += 1;
        if expansions > MAX_EXPANSIONS {
            return Err(bracket_failure());
        }
    }

    // Narrow until the bracket holds exactly this level.
    let narrow = cfg.bracket_width * T::lit(1e-3);
    while hi - lo > narrow {
        let mid = (lo + hi) * T::lit(0.5);
        if count_below(mid, m, cfg)? <= target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (mut a, mut b) = ((lo - narrow).max(floor), hi + narrow);
    let f = |e: T| -> Result<T> { Ok(mismatch_on(&Grid::new(e, m, cfg), e)?.0) };
    let (mut fa, mut fb) = (f(a)?, f(b)?);
    if fa * fb > T::zero() {
        return Err(bracket_failure());
    }

    // Bisection with secant steps when they stay inside the bracket.
    let mut converged = false;
    for _ in 0..200 {
        if b - a <= cfg.tolerance {
            converged = true;
            break;
        }
        let mut x = b - fb * (b - a) / (fb - fa);
        let bisect = (a + b) * T::lit(0.5);
        if !(x > a && x < b) || (x - bisect).abs() > (b - a) * T::lit(0.25) {
            x = bisect;
        }
        let fx = f(x)?;
        if fx == T::zero() {
            a = x;
            b = x;
            converged = true;
            break;
        }
        if (fx > T::zero()) == (fa > T::zero()) {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
    }
    let e = (a + b) * T::lit(0.5);

    let grid = Grid::new(e, m, cfg);
    let (_, left, right) = mismatch_on(&grid, e)?;
    let eigenfunction = joined(&grid, &left, &right);
    let node_count = sign_changes(eigenfunction.iter().copied());
    if node_count != target {
        return Err(Error::NodeCountMismatch {
            m,
            l,
            expected: target,
            found: node_count,
        });
    }
    let probe = grid.len() / 4;
    let parity = if eigenfunction[probe] * eigenfunction[grid.len() - 1 - probe] > T::zero() {
        Parity::Even
    } else {
        Parity::Odd
    };

    Ok(OracleResult {
        m,
        l,
        e,
        lambda2: e - T::lit(0.25),
        node_count,
        parity,
        converged,
    })
}

/// Eigenfunction on the whole grid: left shot up to `mid`, right shot scaled
/// to match on the pair `(mid, mid + 1)` beyond it.
fn joined<T: Real>(grid: &Grid<T>, left: &[T], right: &[T]) -> Vec<T> {
    let mid = grid.mid;
    let dot = left[mid] * right[mid] + left[mid + 1] * right[mid + 1];
    let scale = (left[mid].hypot(left[mid + 1]) / right[mid].hypot(right[mid + 1]))
        * if dot < T::zero() { -T::one() } else { T::one() };
    (0..grid.len())
        .map(|i| {
            let z = if i <= mid { left[i] } else { right[i] * scale };
            grid.to_f(i, z)
        })
        .collect()
}
