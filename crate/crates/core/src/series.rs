//! Quantization from the closed-form contour integrals of the WKB series.
//!
//! With `x = √(4U)` the single-valuedness condition reads
//!
//! ```text
//! √E = n_θ + 1/2 + √U + Σ_{k≥1} ½ binomial(½, k) x^(1−2k)
//! ```
//!
//! and `Σ_{k≥0} binomial(½, k) x^(1−2k) = √(1 + x²)` for `|x| > 1` closes the
//! sum to `√E = n_θ + 1/2 + ½√(1 + 4U) = n_θ + m + 1/2`.

use crate::error::{Error, Result};
use crate::exact::{binomial_half, to_real};
use crate::scalar::Real;

/// `(U, E) = (m² − 1/4, λ² + 1/4)`. Accepts `m = 0`.
pub fn reduce_parameters<T: Real>(m: u32, lambda2: T) -> (T, T) {
    let mt = T::from_u32(m).expect("m representable");
    let quarter = T::lit(0.25);
    (mt * mt - quarter, lambda2 + quarter)
}

/// Inverse of [`reduce_parameters`]: `(U, E) → (m², λ²)`.
pub fn expand_parameters<T: Real>(u: T, e: T) -> (T, T) {
    let quarter = T::lit(0.25);
    (u + quarter, e - quarter)
}

/// Azimuthal quantum number and level index of one quantized level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ProblemParams {
    m: u32,
    n_theta: u32,
}

impl ProblemParams {
    /// `m ≥ 1`: the series only converges for `4U = 4m² − 1 > 1`.
    pub fn new(m: u32, n_theta: u32) -> Result<Self> {
        if m < 1 {
            return Err(Error::domain(format!(
                "series quantization needs m ≥ 1 (4U > 1), got m = {m}"
            )));
        }
        Ok(Self { m, n_theta })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n_theta(&self) -> u32 {
        self.n_theta
    }

    /// `l = n_θ + m`
    pub fn l(&self) -> u32 {
        self.m + self.n_theta
    }

    pub fn u<T: Real>(&self) -> T {
        reduce_parameters(self.m, T::zero()).0
    }

    /// `l(l + 1)`
    pub fn lambda2_exact<T: Real>(&self) -> T {
        let l = T::from_u32(self.l()).expect("l representable");
        l * (l + T::one())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuantizationRecord<T> {
    pub m: u32,
    pub n_theta: u32,
    /// Number of `k ≥ 1` correction terms; `None` for the resummed series.
    pub order: Option<usize>,
    pub e: T,
    pub lambda2: T,
    pub lambda2_exact: T,
    pub residual: T,
}

impl<T: Real> QuantizationRecord<T> {
    fn from_sqrt_e(p: &ProblemParams, order: Option<usize>, sqrt_e: T) -> Self {
        let e = sqrt_e * sqrt_e;
        let lambda2 = e - T::lit(0.25);
        let lambda2_exact = p.lambda2_exact();
        QuantizationRecord {
            m: p.m,
            n_theta: p.n_theta,
            order,
            e,
            lambda2,
            lambda2_exact,
            residual: (lambda2 - lambda2_exact).abs(),
        }
    }
}

fn check_domain<T: Real>(u: T) -> Result<T> {
    let four_u = T::lit(4.0) * u;
    if four_u.is_nan() || four_u <= T::one() {
        return Err(Error::ConvergenceDomain {
            four_u: four_u.as_f64(),
        });
    }
    Ok(four_u)
}

/// `∮dσ_{2k} / 2π = −½ binomial(½, k) (4U)^((1−2k)/2)` for `k ≥ 1`.
pub fn action_term<T: Real>(k: usize, u: T) -> Result<T> {
    if k < 1 {
        return Err(Error::domain("action_term is defined for k ≥ 1"));
    }
    let four_u = check_domain(u)?;
    let b: T = to_real(&binomial_half(k));
    let exponent = T::lit(0.5) - T::from_usize(k).expect("k representable");
    Ok(-T::lit(0.5) * b * four_u.powf(exponent))
}

/// Truncated quantization with `order` correction terms (0 keeps only σ₀ and
/// σ₁). Only σ₀ depends on `E`, so this is a closed-form solve.
pub fn partial_sum_energy<T: Real>(
    p: &ProblemParams,
    order: usize,
) -> Result<QuantizationRecord<T>> {
    let u: T = p.u();
    check_domain(u)?;
    let mut corrections = T::zero();
    for k in 1..=order {
        corrections = corrections - action_term(k, u)?;
    }
    let n = T::from_u32(p.n_theta).expect("n_theta representable");
    let sqrt_e = n + T::lit(0.5) + u.sqrt() + corrections;
    Ok(QuantizationRecord::from_sqrt_e(p, Some(order), sqrt_e))
}

/// Fully resummed series: `√E − ½√(1 + 4U) − ½ = n_θ`.
pub fn summed_quantization<T: Real>(p: &ProblemParams) -> QuantizationRecord<T> {
    let u: T = p.u();
    let n = T::from_u32(p.n_theta).expect("n_theta representable");
    let half = T::lit(0.5);
    let sqrt_e = n + half * (T::one() + T::lit(4.0) * u).sqrt() + half;
    QuantizationRecord::from_sqrt_e(p, None, sqrt_e)
}

/// Leading-order (torus, Langer-corrected) value `(l + 1/2)²`.
pub fn torus_limit<T: Real>(p: &ProblemParams) -> T {
    let l = T::from_u32(p.l()).expect("l representable");
    let v = l + T::lit(0.5);
    v * v
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn params(m: u32, n: u32) -> ProblemParams {
        ProblemParams::new(m, n).unwrap()
    }

    #[test]
    fn parameter_map() {
        assert_eq!(reduce_parameters(1, 2.0_f64), (0.75, 2.25));
        assert_eq!(reduce_parameters(0, 0.0_f64), (-0.25, 0.25));
        assert_eq!(reduce_parameters(3, 12.0_f64), (8.75, 12.25));
        assert_eq!(expand_parameters(8.75_f64, 12.25), (9.0, 12.0));
    }

    #[test]
    fn m_zero_is_rejected_for_series() {
        assert!(matches!(ProblemParams::new(0, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn action_terms_follow_formula() {
        // Oracle: direct evaluation with hand-entered binomial(1/2,k).
        let direct = |k: i32, b: f64, u: f64| -0.5 * b * (4.0 * u).powf(0.5 - k as f64);
        assert_relative_eq!(
            action_term(1, 0.75).unwrap(),
            direct(1, 0.5, 0.75),
            max_relative = 1e-15
        );
        assert_relative_eq!(
            action_term(1, 0.75_f64).unwrap(),
            -0.144_337_567_297_406_4,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            action_term(2, 0.75_f64).unwrap(),
            0.012_028_130_608_117_2,
            max_relative = 1e-9
        );
        assert_relative_eq!(
            action_term(1, 3.75_f64).unwrap(),
            -0.064_549_722_436_790_3,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            action_term(3, 2.0).unwrap(),
            direct(3, 1.0 / 16.0, 2.0),
            max_relative = 1e-15
        );
    }

    #[test]
    fn action_term_domain() {
        assert!(matches!(
            action_term(1, 0.25_f64),
            Err(Error::ConvergenceDomain { .. })
        ));
        assert!(matches!(
            action_term(1, -0.25_f64),
            Err(Error::ConvergenceDomain { .. })
        ));
        assert!(matches!(action_term(0, 0.75_f64), Err(Error::Domain(_))));
    }

    #[test]
    fn truncated_spectra() {
        let r0 = partial_sum_energy::<f64>(&params(1, 0), 0).unwrap();
        let expect0 = (0.5 + 0.75_f64.sqrt()).powi(2) - 0.25;
        assert_relative_eq!(r0.lambda2, expect0, max_relative = 1e-15);
        assert_relative_eq!(r0.lambda2, 1.616_025_4, epsilon = 1e-7);
        assert_eq!(r0.lambda2_exact, 2.0);

        // terms 0.1443376, −0.0120281, +0.0020047
        let r3 = partial_sum_energy::<f64>(&params(1, 0), 3).unwrap();
        let sqrt_e = 0.5 + 0.75_f64.sqrt() + 0.144_337_567_297_406_4 - 0.012_028_130_608_117_2
            + 0.002_004_688_434_686_2;
        assert_relative_eq!(r3.lambda2, sqrt_e * sqrt_e - 0.25, max_relative = 1e-12);
        assert_relative_eq!(r3.lambda2, 2.0010, epsilon = 1e-4);
        assert_eq!(r3.order, Some(3));
        assert_relative_eq!(r3.e, r3.lambda2 + 0.25, max_relative = 1e-15);

        let r = partial_sum_energy::<f64>(&params(2, 0), 1).unwrap();
        assert_relative_eq!(r.e.sqrt(), 2.501_041_4, epsilon = 1e-7);
        assert_relative_eq!(r.lambda2, 6.0052, epsilon = 1e-4);
    }

    #[test]
    fn summed_values() {
        assert_eq!(summed_quantization::<f64>(&params(1, 0)).lambda2, 2.0);
        assert_eq!(summed_quantization::<f64>(&params(2, 1)).lambda2, 12.0);
        assert_eq!(summed_quantization::<f64>(&params(5, 0)).lambda2, 30.0);
        assert_eq!(summed_quantization::<f64>(&params(5, 0)).order, None);
    }

    #[test]
    fn torus_values() {
        assert_eq!(torus_limit::<f64>(&params(1, 0)), 2.25);
        assert_eq!(torus_limit::<f64>(&params(2, 2)), 20.25);
    }

    #[test]
    fn single_precision_works() {
        let r = summed_quantization::<f32>(&params(2, 1));
        assert_eq!(r.lambda2, 12.0_f32);
        let t = partial_sum_energy::<f32>(&params(3, 0), 6).unwrap();
        assert!(t.residual < 1e-4);
    }
}
