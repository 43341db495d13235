//! Supersymmetric WKB for the angular equation in `θ ∈ (0, π)`.
//!
//! With `A = m + 1/2` the sector ground state `sin^A θ` gives the SUSY
//! potential `Φ = −A cot θ` and partners `V± = Φ² ± Φ′`. `H₋` has a zero
//! mode, its spectrum is the original one shifted by the ground eigenvalue
//! `m(m + 1)`, and the leading-order condition
//! `∫_a^b √(E₋ − Φ²) dθ = n_θ π` is already exact.

use crate::error::{Error, Result};
use crate::quadrature;
use crate::scalar::Real;

/// CBC quadrature: doubling the node count must change the result by less
/// than this.
pub const CBC_DOUBLING_TOLERANCE: f64 = 1e-9;
const CBC_START_NODES: usize = 16;
const CBC_MAX_NODES: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SusyContext {
    m: u32,
}

impl SusyContext {
    pub fn new(m: u32) -> Result<Self> {
        if m < 1 {
            return Err(Error::domain(format!("SUSY context needs m ≥ 1, got {m}")));
        }
        Ok(Self { m })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// `m + 1/2`
    pub fn phi_amplitude<T: Real>(&self) -> T {
        T::from_u32(self.m).expect("m representable") + T::lit(0.5)
    }

    /// `m(m + 1)`
    pub fn ground_eigen(&self) -> u64 {
        let m = self.m as u64;
        m * (m + 1)
    }
}

fn interior<T: Real>(theta: T) -> Result<()> {
    if !(theta > T::zero() && theta < T::PI()) {
        return Err(Error::domain(format!("θ must lie in (0, π), got {theta}")));
    }
    Ok(())
}

/// `Φ(θ) = −(m + 1/2) cot θ`
pub fn susy_potential<T: Real>(ctx: &SusyContext, theta: T) -> Result<T> {
    interior(theta)?;
    Ok(-ctx.phi_amplitude::<T>() * theta.cos() / theta.sin())
}

/// `(V₋, V₊) = (Φ² − Φ′, Φ² + Φ′)` with `Φ′ = (m + 1/2)/sin²θ`.
pub fn partner_potentials<T: Real>(ctx: &SusyContext, theta: T) -> Result<(T, T)> {
    let phi = susy_potential(ctx, theta)?;
    let s = theta.sin();
    let dphi = ctx.phi_amplitude::<T>() / (s * s);
    Ok((phi * phi - dphi, phi * phi + dphi))
}

/// `(−d²/dθ² + V₋) sin^(m+1/2)θ` by a five-point second difference with step
/// `h`. Zero up to discretization error.
pub fn zero_mode_residual<T: Real>(ctx: &SusyContext, theta: T, h: T) -> Result<T> {
    let (v_minus, _) = partner_potentials(ctx, theta)?;
    let a = ctx.phi_amplitude::<T>();
    let f = |t: T| t.sin().powf(a);
    let d2 = (-f(theta + h + h) + T::int(16) * f(theta + h) - T::int(30) * f(theta)
        + T::int(16) * f(theta - h)
        - f(theta - h - h))
        / (T::int(12) * h * h);
    Ok(-d2 + v_minus * f(theta))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CbcTurningPoints<T> {
    pub a: T,
    pub b: T,
    /// `E₋ = 0`: the well bottom, `a = b = π/2`.
    pub degenerate: bool,
}

/// Roots of `E₋ = (m + 1/2)² cot²θ`: `a = arctan((m + 1/2)/√E₋)`, `b = π − a`.
pub fn cbc_turning_points<T: Real>(ctx: &SusyContext, e_minus: T) -> Result<CbcTurningPoints<T>> {
    if e_minus == T::zero() {
        return Ok(CbcTurningPoints {
            a: T::FRAC_PI_2(),
            b: T::FRAC_PI_2(),
            degenerate: true,
        });
    }
    if !(e_minus > T::zero()) {
        return Err(Error::domain(format!("E₋ must be positive, got {e_minus}")));
    }
    let a = (ctx.phi_amplitude::<T>() / e_minus.sqrt()).atan();
    Ok(CbcTurningPoints {
        a,
        b: T::PI() - a,
        degenerate: false,
    })
}

/// `∫_a^b √(E₋ − Φ²) dθ` with `θ = π/2 + (π/2 − a) sin u`, which turns the
/// square-root endpoints into smooth zeros, then Gauss–Legendre in `u` with
/// node doubling.
pub fn cbc_integral<T: Real>(ctx: &SusyContext, e_minus: T) -> Result<T> {
    let tp = cbc_turning_points(ctx, e_minus)?;
    if tp.degenerate {
        return Ok(T::zero());
    }
    let amp = ctx.phi_amplitude::<T>();
    let mid = T::FRAC_PI_2();
    let half_width = mid - tp.a;
    let integrand = |u: T| {
        let (s, c) = u.sin_cos();
        let theta = mid + half_width * s;
        let cot = theta.cos() / theta.sin();
        let radicand = (e_minus - amp * amp * cot * cot).max(T::zero());
        radicand.sqrt() * half_width * c
    };
    let mut nodes = CBC_START_NODES;
    let mut prev = quadrature::integrate(integrand, -mid, mid, nodes);
    loop {
        nodes *= 2;
        let next = quadrature::integrate(integrand, -mid, mid, nodes);
        let change = (next - prev).abs();
        if change <= T::lit(CBC_DOUBLING_TOLERANCE) {
            return Ok(next);
        }
        if nodes >= CBC_MAX_NODES {
            return Err(Error::QuadratureNonConvergence {
                change: change.as_f64(),
            });
        }
        prev = next;
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CbcLevel<T> {
    pub n_theta: u32,
    /// `E₋ = n_θ (n_θ + 2m + 1)`, exact integer.
    pub e_minus_exact: u64,
    pub e_minus: T,
    /// `λ² = E₋ + m(m + 1)`, exact integer.
    pub lambda2_exact: u64,
    pub lambda2: T,
    pub turning_a: T,
    pub turning_b: T,
}

/// `E₋ = (n_θ + m + 1/2)² − (m + 1/2)²` and `λ² = E₋ + m(m + 1)`.
pub fn swkb_spectrum<T: Real>(ctx: &SusyContext, n_theta: u32) -> Result<CbcLevel<T>> {
    let (n, m) = (n_theta as u64, ctx.m as u64);
    let e_minus_exact = n * (n + 2 * m + 1);
    let lambda2_exact = e_minus_exact + ctx.ground_eigen();
    let e_minus = T::from_u64(e_minus_exact).expect("E₋ representable");
    let tp = cbc_turning_points(ctx, e_minus)?;
    Ok(CbcLevel {
        n_theta,
        e_minus_exact,
        e_minus,
        lambda2_exact,
        lambda2: T::from_u64(lambda2_exact).expect("λ² representable"),
        turning_a: tp.a,
        turning_b: tp.b,
    })
}

/// `√(E₋ + (m + 1/2)²) − (m + 1/2)`: equals `n_θ` on the SWKB spectrum.
pub fn cbc_quantum_number<T: Real>(ctx: &SusyContext, e_minus: T) -> T {
    let a = ctx.phi_amplitude::<T>();
    (e_minus + a * a).sqrt() - a
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn ctx(m: u32) -> SusyContext {
        SusyContext::new(m).unwrap()
    }

    #[test]
    fn potential_values() {
        assert!(susy_potential(&ctx(1), FRAC_PI_2).unwrap().abs() < 1e-15);
        assert_relative_eq!(
            susy_potential(&ctx(1), FRAC_PI_4).unwrap(),
            -1.5,
            max_relative = 1e-14
        );
        for t in [0.3, 1.0, 1.4] {
            let a = susy_potential(&ctx(2), t).unwrap();
            let b = susy_potential(&ctx(2), PI - t).unwrap();
            assert_relative_eq!(a, -b, max_relative = 1e-13);
        }
        assert!(susy_potential(&ctx(1), 0.0).is_err());
        assert!(susy_potential(&ctx(1), PI).is_err());
    }

    #[test]
    fn partners() {
        let (vm, vp) = partner_potentials(&ctx(1), FRAC_PI_2).unwrap();
        assert_relative_eq!(vm, -1.5, max_relative = 1e-14);
        assert_relative_eq!(vp, 1.5, max_relative = 1e-14);
        for t in [0.2_f64, 0.9, 2.5] {
            let (vm, vp) = partner_potentials(&ctx(3), t).unwrap();
            let dphi = 3.5 / t.sin().powi(2);
            assert_relative_eq!(vp - vm, 2.0 * dphi, max_relative = 1e-13);
        }
    }

    #[test]
    fn zero_mode() {
        for m in 1..=4 {
            for t in [0.5_f64, 1.0, 2.0] {
                let r = zero_mode_residual(&ctx(m), t, 1e-3).unwrap();
                assert!(r.abs() < 1e-8, "m={m} θ={t}: {r}");
            }
        }
    }

    #[test]
    fn turning_points() {
        let tp = cbc_turning_points(&ctx(1), 4.0).unwrap();
        assert_relative_eq!(tp.a, 0.75_f64.atan(), max_relative = 1e-15);
        assert_relative_eq!(tp.a, 0.643_501_1, epsilon = 1e-7);
        assert_relative_eq!(tp.b, 2.498_091_5, epsilon = 1e-7);
        assert_relative_eq!(tp.b - FRAC_PI_2, FRAC_PI_2 - tp.a, max_relative = 1e-14);
        // cot²θ·(m+1/2)² = E₋ at both roots
        assert_relative_eq!((1.5 / tp.a.tan()).powi(2), 4.0, max_relative = 1e-13);

        let near = cbc_turning_points(&ctx(1), 1e-14).unwrap();
        assert!((near.a - FRAC_PI_2).abs() < 1e-6);
        let bottom = cbc_turning_points(&ctx(1), 0.0).unwrap();
        assert!(bottom.degenerate);
        assert!(cbc_turning_points(&ctx(1), -1.0).is_err());
    }

    #[test]
    fn cbc_values() {
        assert!((cbc_integral(&ctx(1), 4.0).unwrap() - PI).abs() < 1e-10);
        assert!((cbc_integral(&ctx(1), 10.0).unwrap() - 2.0 * PI).abs() < 1e-10);
        assert!((cbc_integral(&ctx(2), 6.0).unwrap() - PI).abs() < 1e-10);
        // √(12 + 2.25) − 1.5 is not an integer: 12 is not on the spectrum
        let off = cbc_integral(&ctx(1), 12.0).unwrap();
        assert_relative_eq!(off, PI * (14.25_f64.sqrt() - 1.5), max_relative = 1e-10);
    }

    #[test]
    fn spectrum() {
        let l0 = swkb_spectrum::<f64>(&ctx(1), 0).unwrap();
        assert_eq!((l0.e_minus, l0.lambda2), (0.0, 2.0));
        let l1 = swkb_spectrum::<f64>(&ctx(1), 1).unwrap();
        assert_eq!((l1.e_minus, l1.lambda2), (4.0, 6.0));
        assert_eq!(swkb_spectrum::<f64>(&ctx(3), 2).unwrap().lambda2_exact, 30);
        assert_eq!(cbc_quantum_number(&ctx(3), 18.0_f64), 2.0);
    }
}
