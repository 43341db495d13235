//! Numerical `∮ dσₙ` around the branch cut joining the two turning points.
//!
//! The path is an ellipse centred at the origin that encloses `[x₋, x₊]` and
//! stays inside `|Re z| < π/2`. `w(z) = √(E − U/cos²z)` is continued along the
//! path by phase tracking from `z = ib`, where it is real; with positive
//! orientation the branch that is negative just above the cut makes
//! `∮ w dz = +2π(√E − √U)`. Odd orders carry a factor `−i` relative to the
//! real-normalized recursion, so every physical integral is real.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::phase::{CanonicalPhase, NumericPhase, WkbSeries};
use crate::scalar::Real;
use crate::series::action_term;

/// Two trapezoid passes at `N` and `2N` must agree to this before a value is
/// accepted.
pub const SAMPLE_AGREEMENT: f64 = 1e-8;
pub const DEFAULT_SAMPLES: usize = 1024;
pub const MAX_SAMPLES: usize = 1 << 18;
/// `|Im| ≤ NON_REAL_TOLERANCE · (1 + |Re|)`
pub const NON_REAL_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TurningPoints<T> {
    pub x_minus: T,
    pub x_plus: T,
    /// `√(U/E)`
    pub kappa: T,
}

/// Zeros of `E − U/cos²x`: `±arccos √(U/E)`.
pub fn turning_points<T: Real>(e: T, u: T) -> Result<TurningPoints<T>> {
    if u.is_nan() || u <= T::zero() {
        return Err(Error::domain(format!("turning points need U > 0, got {u}")));
    }
    if e.is_nan() || e <= u {
        return Err(Error::domain(format!(
            "turning points need E > U, got E = {e}, U = {u}"
        )));
    }
    let kappa = (u / e).sqrt();
    let x_plus = kappa.acos();
    Ok(TurningPoints {
        x_minus: -x_plus,
        x_plus,
        kappa,
    })
}

/// Ellipse `z(t) = a cos t + i b sin t`, traversed counterclockwise.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContourPath<T> {
    a: T,
    b: T,
    samples: usize,
}

impl<T: Real> ContourPath<T> {
    pub fn new(a: T, b: T, samples: usize) -> Result<Self> {
        if !(a > T::zero() && a < T::FRAC_PI_2()) {
            return Err(Error::domain(format!(
                "real semi-axis must lie in (0, π/2), got {a}"
            )));
        }
        if !(b > T::zero()) {
            return Err(Error::domain(format!(
                "imaginary semi-axis must be positive, got {b}"
            )));
        }
        if samples < 256 || !samples.is_multiple_of(2) {
            return Err(Error::domain(format!(
                "samples must be even and ≥ 256, got {samples}"
            )));
        }
        Ok(Self { a, b, samples })
    }

    /// `a` halfway between `x₊` and `π/2`, `b = a/2`.
    pub fn enclosing(tp: &TurningPoints<T>, samples: usize) -> Result<Self> {
        let a = (tp.x_plus + T::FRAC_PI_2()) * T::lit(0.5);
        Self::new(a, a * T::lit(0.5), samples)
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn b(&self) -> T {
        self.b
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn with_b(self, b: T) -> Result<Self> {
        Self::new(self.a, b, self.samples)
    }

    pub fn with_samples(self, samples: usize) -> Result<Self> {
        Self::new(self.a, self.b, samples)
    }

    fn encloses(&self, tp: &TurningPoints<T>) -> bool {
        self.a > tp.x_plus
    }

    fn point(&self, t: T) -> (Complex<T>, Complex<T>) {
        let (s, c) = t.sin_cos();
        (
            Complex::new(self.a * c, self.b * s),
            Complex::new(-self.a * s, self.b * c),
        )
    }
}

/// Continues `w` along the path by picking, at each step, the square root of
/// `w²` closest to the previous value.
#[derive(Clone, Copy, Debug)]
pub struct BranchTracker<T> {
    prev: Complex<T>,
    prev_sq: Complex<T>,
}

impl<T: Real> BranchTracker<T> {
    pub fn new(start: Complex<T>) -> Self {
        Self {
            prev: start,
            prev_sq: start * start,
        }
    }

    /// `None` when `w²` turned by π/2 or more since the previous sample, i.e.
    /// the path is too coarse to certify continuity.
    pub fn advance(&mut self, w_sq: Complex<T>) -> Option<Complex<T>> {
        let turn = (w_sq * self.prev_sq.conj()).arg().abs();
        if !turn.is_finite() || turn >= T::FRAC_PI_2() {
            return None;
        }
        let mut w = w_sq.sqrt();
        if (w * self.prev.conj()).re < T::zero() {
            w = -w;
        }
        self.prev = w;
        self.prev_sq = w_sq;
        Some(w)
    }

    pub fn current(&self) -> Complex<T> {
        self.prev
    }
}

fn w_squared<T: Real>(z: Complex<T>, e: T, u: T) -> (Complex<T>, Complex<T>, Complex<T>) {
    let c = z.cos();
    let s = z.sin();
    (c, s, Complex::new(e, T::zero()) - (c * c).inv() * u)
}

/// One trapezoid pass of `∮ phase dz` at the path's sample count, without the
/// order factor. `None` if branch tracking could not be certified.
fn trapezoid_pass<T: Real>(
    phase: &NumericPhase<T>,
    e: T,
    u: T,
    path: &ContourPath<T>,
) -> Option<Complex<T>> {
    let n = path.samples;
    let step = T::TAU() / T::from_usize(n).expect("sample count representable");
    let start_sq = e - u / path.b.cosh().powi(2);
    let w0 = Complex::new(-start_sq.sqrt(), T::zero());
    let mut tracker = BranchTracker::new(w0);
    let mut acc = Complex::new(T::zero(), T::zero());
    for j in 0..n {
        let t = T::FRAC_PI_2() + step * T::from_usize(j).expect("index representable");
        let (z, dz) = path.point(t);
        let (c, s, w_sq) = w_squared(z, e, u);
        let w = if j == 0 { w0 } else { tracker.advance(w_sq)? };
        acc = acc + phase.eval_complex(c, s, w) * dz;
    }
    // closing the loop must land back on the starting branch
    let back = tracker.advance(w0 * w0)?;
    if (back - w0).norm() > T::lit(1e-6) * (T::one() + w0.norm()) {
        return None;
    }
    Some(acc * step)
}

/// Raw complex value of `∮ phase dz` on a fixed path.
pub fn contour_integral_raw<T: Real>(
    phase: &NumericPhase<T>,
    e: T,
    u: T,
    path: &ContourPath<T>,
) -> Result<Complex<T>> {
    let tp = turning_points(e, u)?;
    if !path.encloses(&tp) {
        return Err(Error::domain("contour does not enclose the turning points"));
    }
    let mut p = *path;
    loop {
        if let Some(v) = trapezoid_pass(phase, e, u, &p) {
            return Ok(v);
        }
        if p.samples * 2 > MAX_SAMPLES {
            return Err(Error::BranchDiscontinuity { samples: p.samples });
        }
        p.samples *= 2;
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContourValue<T> {
    pub value: T,
    /// Residual imaginary part after the order factor.
    pub imag: T,
    pub samples: usize,
}

/// `∮ dσₙ` for the order-`n` phase given as numeric terms.
///
/// Doubles the sample count until two passes agree to [`SAMPLE_AGREEMENT`];
/// the result must be real up to [`NON_REAL_TOLERANCE`].
pub fn contour_integral<T: Real>(
    phase: &NumericPhase<T>,
    order: usize,
    e: T,
    u: T,
    path: &ContourPath<T>,
) -> Result<ContourValue<T>> {
    let rotate = |z: Complex<T>| {
        if order % 2 == 1 {
            Complex::new(z.im, -z.re)
        } else {
            z
        }
    };
    let tol = T::lit(SAMPLE_AGREEMENT);
    let mut p = *path;
    let mut prev = rotate(contour_integral_raw(phase, e, u, &p)?);
    loop {
        if p.samples * 2 > MAX_SAMPLES {
            return Err(Error::SampleNonConvergence {
                samples: p.samples,
                change: f64::NAN,
            });
        }
        p.samples *= 2;
        let next = rotate(contour_integral_raw(phase, e, u, &p)?);
        let change = (next - prev).norm();
        if change <= tol {
            if next.im.abs() > T::lit(NON_REAL_TOLERANCE) * (T::one() + next.re.abs()) {
                return Err(Error::NonRealResult {
                    re: next.re.as_f64(),
                    im: next.im.as_f64(),
                });
            }
            return Ok(ContourValue {
                value: next.re,
                imag: next.im,
                samples: p.samples,
            });
        }
        if p.samples * 2 > MAX_SAMPLES {
            return Err(Error::SampleNonConvergence {
                samples: p.samples,
                change: change.as_f64(),
            });
        }
        prev = next;
    }
}

/// Closed form of `∮ dσₙ`: `2π(√E − √U)`, `−π`, `0` for odd `n ≥ 3`, and
/// `2π·action_term(k, U)` for `n = 2k`.
pub fn closed_form<T: Real>(n: usize, e: T, u: T) -> Option<T> {
    match n {
        0 => Some(T::TAU() * (e.sqrt() - u.sqrt())),
        1 => Some(-T::PI()),
        n if n % 2 == 1 => Some(T::zero()),
        n => action_term(n / 2, u).ok().map(|a| T::TAU() * a),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TermIntegral<T> {
    pub l: usize,
    pub value: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntegralReport<T> {
    pub n: usize,
    pub e: T,
    pub u: T,
    /// Integral of the full recursion output.
    pub numeric: ContourValue<T>,
    pub closed_form: Option<T>,
    /// Integral of each canonical `C_{n,l}` term on its own (empty for n = 0).
    pub per_term: Vec<TermIntegral<T>>,
    /// `numeric − ∮(C_{n,0} term)`: what all `l > 0` terms contribute.
    pub higher_l: T,
}

impl<T: Real> IntegralReport<T> {
    pub fn abs_error(&self) -> Option<T> {
        self.closed_form.map(|c| (self.numeric.value - c).abs())
    }
}

/// Integrates `σₙ′` in full and term by term at `(E, U)`.
pub fn integral_report<T: Real>(
    series: &WkbSeries,
    n: usize,
    e: T,
    u: T,
    samples: usize,
) -> Result<IntegralReport<T>> {
    if n > series.max_order() {
        return Err(Error::domain(format!(
            "order {n} exceeds the computed series (max {})",
            series.max_order()
        )));
    }
    let tp = turning_points(e, u)?;
    let path = ContourPath::enclosing(&tp, samples)?;
    let numeric = contour_integral(&series.phase(n).numeric(u), n, e, u, &path)?;

    let (per_term, higher_l) = if n == 0 {
        (Vec::new(), T::zero())
    } else {
        let canonical: CanonicalPhase = series.canonical(n)?;
        let mut per_term = Vec::new();
        let mut leading = T::zero();
        for (l, c) in &canonical.coefficients {
            if c.is_zero() {
                continue;
            }
            let v = contour_integral(&canonical.numeric(e, u, Some(*l)), n, e, u, &path)?;
            if *l == 0 {
                leading = v.value;
            }
            per_term.push(TermIntegral {
                l: *l,
                value: v.value,
            });
        }
        (per_term, numeric.value - leading)
    };

    Ok(IntegralReport {
        n,
        e,
        u,
        numeric,
        closed_form: closed_form(n, e, u),
        per_term,
        higher_l,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn turning_point_values() {
        let tp = turning_points(2.25_f64, 0.75).unwrap();
        assert_relative_eq!(
            tp.x_plus,
            (1.0_f64 / 3.0_f64.sqrt()).acos(),
            max_relative = 1e-15
        );
        assert_relative_eq!(tp.x_plus, 0.955_316_6, epsilon = 1e-7);
        assert_eq!(tp.x_minus, -tp.x_plus);

        let tp = turning_points(12.25_f64, 0.75).unwrap();
        assert_relative_eq!(
            tp.x_plus,
            (0.75_f64 / 12.25).sqrt().acos(),
            max_relative = 1e-15
        );
        assert_relative_eq!(tp.x_plus, 1.320_763_4, epsilon = 1e-7);

        let tp = turning_points(0.75_f64 + 1e-12, 0.75).unwrap();
        assert!(tp.x_plus < 1e-5);

        assert!(matches!(
            turning_points(0.75_f64, 0.75),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn path_validation() {
        assert!(ContourPath::new(1.0_f64, 0.5, 255).is_err());
        assert!(ContourPath::new(1.0_f64, 0.5, 257).is_err());
        assert!(ContourPath::new(1.6_f64, 0.5, 256).is_err());
        assert!(ContourPath::new(1.0_f64, 0.0, 256).is_err());
        assert!(ContourPath::new(1.0_f64, 0.5, 256).is_ok());
    }

    #[test]
    fn leading_orders() {
        let s = WkbSeries::up_to(3);
        let (e, u) = (2.25_f64, 0.75);
        let path = ContourPath::enclosing(&turning_points(e, u).unwrap(), 512).unwrap();
        let v0 = contour_integral(&s.phase(0).numeric(u), 0, e, u, &path).unwrap();
        assert_relative_eq!(
            v0.value,
            2.0 * PI * (1.5 - 0.75_f64.sqrt()),
            epsilon = 1e-10
        );
        assert_relative_eq!(v0.value, 3.983_379_9, epsilon = 1e-7);

        for (e, u) in [(2.25, 0.75), (12.25, 0.75), (30.25, 8.75)] {
            let path = ContourPath::enclosing(&turning_points(e, u).unwrap(), 512).unwrap();
            let v1 = contour_integral(&s.phase(1).numeric(u), 1, e, u, &path).unwrap();
            assert!((v1.value + PI).abs() < 1e-10, "σ₁ at E={e}: {}", v1.value);
        }

        let v3 = contour_integral(&s.phase(3).numeric(u), 3, e, u, &path).unwrap();
        assert!(v3.value.abs() < 1e-8);
    }

    #[test]
    fn second_order_matches_action_term() {
        let s = WkbSeries::up_to(2);
        let r = integral_report(&s, 2, 2.25_f64, 0.75, DEFAULT_SAMPLES).unwrap();
        let expected = 2.0 * PI * action_term(1, 0.75).unwrap();
        assert_relative_eq!(expected, -0.906_899_682_117_108_8, epsilon = 1e-12);
        assert!(r.abs_error().unwrap() < 1e-6);
        assert!(r.higher_l.abs() < 1e-8);
        assert_eq!(r.per_term.len(), 3);
    }

    #[test]
    fn tracker_refuses_large_jumps() {
        let mut t = BranchTracker::new(Complex::new(1.0_f64, 0.0));
        assert!(t.advance(Complex::new(0.9, 0.1)).is_some());
        assert!(t.advance(Complex::new(-1.0, 0.0)).is_none());
    }

    #[test]
    fn path_must_enclose_the_cut() {
        let s = WkbSeries::up_to(0);
        let path = ContourPath::new(0.5_f64, 0.3, 256).unwrap();
        assert!(contour_integral(&s.phase(0).numeric(0.75), 0, 2.25, 0.75, &path).is_err());
    }
}
