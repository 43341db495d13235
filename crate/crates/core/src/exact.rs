//! Exact rational scalars and the polynomial rings `Q[U]` and `Q[U, E]`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::Real;

/// Arbitrary-precision rational. Always in lowest terms with a positive
/// denominator.
pub type ExactScalar = BigRational;

pub fn rational(numer: i64, denom: i64) -> ExactScalar {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(n: i64) -> ExactScalar {
    BigRational::from_integer(BigInt::from(n))
}

/// `binomial(1/2, k)` by the exact recurrence
/// `b_0 = 1`, `b_k = b_{k-1} (3/2 - k) / k`.
pub fn binomial_half(k: usize) -> ExactScalar {
    let half = rational(1, 2);
    let mut b = ExactScalar::one();
    for j in 1..=k {
        let j = integer(j as i64);
        b = b * (&half - &j + ExactScalar::one()) / j;
    }
    b
}

/// Converts an exact rational to the working float type.
pub fn to_real<T: Real>(q: &ExactScalar) -> T {
    // Numerator and denominator are converted separately when the quotient
    // alone would lose range.
    match q.to_f64() {
        Some(v) if v.is_finite() => T::lit(v),
        _ => {
            let n = q.numer().to_f64().unwrap_or(f64::NAN);
            let d = q.denom().to_f64().unwrap_or(f64::NAN);
            T::lit(n) / T::lit(d)
        }
    }
}

/// "p/q" (or "p" for integers).
pub fn format_rational(q: &ExactScalar) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Polynomial in the coupling `U` with exact rational coefficients.
/// Index = power of `U`; trailing zeros are always trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UPoly {
    coeffs: Vec<ExactScalar>,
}

impl UPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(ExactScalar::one())
    }

    pub fn constant(c: ExactScalar) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c · U^degree`
    pub fn monomial(c: ExactScalar, degree: usize) -> Self {
        let mut coeffs = vec![ExactScalar::zero(); degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<ExactScalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, power: usize) -> ExactScalar {
        self.coeffs
            .get(power)
            .cloned()
            .unwrap_or_else(ExactScalar::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `U^shift`.
    pub fn shift(&self, shift: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![ExactScalar::zero(); shift];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn eval<T: Real>(&self, u: T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * u + to_real::<T>(c))
    }

    pub fn eval_exact(&self, u: &ExactScalar) -> ExactScalar {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactScalar::zero(), |acc, c| acc * u + c)
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (c, vec![("U", i)])),
        )
    }
}

fn write_poly<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a ExactScalar, Vec<(&'static str, usize)>)>,
) -> fmt::Result {
    let mut first = true;
    for (c, vars) in terms {
        if c.is_zero() {
            continue;
        }
        let sign = if c.is_negative() { "-" } else { "+" };
        if first {
            if c.is_negative() {
                f.write_str("-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        first = false;
        let mag = c.abs();
        let vars: Vec<String> = vars
            .into_iter()
            .filter(|(_, p)| *p > 0)
            .map(|(v, p)| {
                if p == 1 {
                    v.to_string()
                } else {
                    format!("{v}^{p}")
                }
            })
            .collect();
        if vars.is_empty() || !mag.is_one() {
            f.write_str(&format_rational(&mag))?;
            if !vars.is_empty() {
                f.write_str("·")?;
            }
        }
        f.write_str(&vars.join("·"))?;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut coeffs = vec![ExactScalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UPoly::from_coeffs(coeffs)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(UPoly, Add add, Sub sub, Mul mul);

/// Polynomial in `U` and `E`: index = power of `E`, each entry a `UPoly`.
/// Trailing zero entries are trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UEPoly {
    by_e: Vec<UPoly>,
}

impl UEPoly {
    pub fn zero() -> Self {
        Self { by_e: Vec::new() }
    }

    pub fn from_e_coeffs(mut by_e: Vec<UPoly>) -> Self {
        while by_e.last().is_some_and(UPoly::is_zero) {
            by_e.pop();
        }
        Self { by_e }
    }

    /// `p(U) · E^e_power`
    pub fn from_upoly(p: UPoly, e_power: usize) -> Self {
        let mut by_e = vec![UPoly::zero(); e_power + 1];
        by_e[e_power] = p;
        Self::from_e_coeffs(by_e)
    }

    pub fn is_zero(&self) -> bool {
        self.by_e.is_empty()
    }

    pub fn e_coeffs(&self) -> &[UPoly] {
        &self.by_e
    }

    pub fn e_coeff(&self, e_power: usize) -> UPoly {
        self.by_e.get(e_power).cloned().unwrap_or_default()
    }

    /// The polynomial as an element of `Q[U]`, if it does not involve `E`.
    pub fn as_upoly(&self) -> Option<UPoly> {
        match self.by_e.len() {
            0 => Some(UPoly::zero()),
            1 => Some(self.by_e[0].clone()),
            _ => None,
        }
    }

    pub fn add_assign_term(&mut self, p: &UPoly, e_power: usize) {
        if self.by_e.len() <= e_power {
            self.by_e.resize(e_power + 1, UPoly::zero());
        }
        self.by_e[e_power] = &self.by_e[e_power] + p;
        while self.by_e.last().is_some_and(UPoly::is_zero) {
            self.by_e.pop();
        }
    }

    pub fn eval<T: Real>(&self, u: T, e: T) -> T {
        self.by_e
            .iter()
            .rev()
            .fold(T::zero(), |acc, p| acc * e + p.eval(u))
    }
}

impl fmt::Display for UEPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.by_e.iter().enumerate().flat_map(|(j, p)| {
            p.coeffs()
                .iter()
                .enumerate()
                .map(move |(i, c)| (c, vec![("E", j), ("U", i)]))
        });
        write_poly(f, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_half_values() {
        assert_eq!(binomial_half(0), integer(1));
        assert_eq!(binomial_half(1), rational(1, 2));
        assert_eq!(binomial_half(2), rational(-1, 8));
        assert_eq!(binomial_half(3), rational(1, 16));
        assert_eq!(binomial_half(4), rational(-5, 128));
    }

    #[test]
    fn upoly_trims_and_has_unique_zero() {
        let p = UPoly::from_coeffs(vec![integer(0), integer(0)]);
        assert!(p.is_zero());
        assert_eq!(p, UPoly::zero());
        assert_eq!(p.degree(), None);
        let q = UPoly::from_coeffs(vec![integer(1), integer(2), integer(0)]);
        assert_eq!(q.degree(), Some(1));
    }

    #[test]
    fn upoly_arithmetic() {
        // (1 + U)(1 - U) = 1 - U^2
        let a = UPoly::from_coeffs(vec![integer(1), integer(1)]);
        let b = UPoly::from_coeffs(vec![integer(1), integer(-1)]);
        assert_eq!(
            &a * &b,
            UPoly::from_coeffs(vec![integer(1), integer(0), integer(-1)])
        );
        assert!((&a - &a).is_zero());
        assert_eq!((&a * &b).eval(3.0_f64), -8.0);
    }

    #[test]
    fn display_reads_naturally() {
        let p = UPoly::from_coeffs(vec![integer(0), integer(0), rational(-1, 8)]);
        assert_eq!(p.to_string(), "-1/8·U^2");
        let q = UEPoly::from_e_coeffs(vec![
            UPoly::monomial(rational(1, 8), 2),
            UPoly::monomial(rational(-3, 4), 1),
        ]);
        assert_eq!(q.to_string(), "1/8·U^2 - 3/4·E·U");
        assert_eq!(q.as_upoly(), None);
        assert_eq!(q.eval(2.0_f64, 1.0), 0.5 - 1.5);
    }
}
