//! Canonical form `σₙ′ = w^(1−3n) sin^f(n)(x) Σ_l C_{n,l} cos^(2l−3n)(x)`.
//!
//! The recursion output is `E`-free but mixes powers of `w`. Every power is
//! lowered to `w^(1−3n)` with `w² = E − U cos⁻²x`, which moves `E` into the
//! coefficients: `C_{n,l}` lives in `Q[U, E]`. `C_{n,0}` never picks up `E`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{binomial_half, format_rational, integer, rational, UEPoly, UPoly};
use crate::phase::expr::{Monomial, NumericPhase, NumericTerm, PhaseExpr};
use crate::scalar::Real;

/// 0 for even `n`, 1 for odd `n`.
pub fn sin_parity(n: usize) -> u32 {
    (n % 2) as u32
}

pub fn w_power(n: usize) -> i32 {
    1 - 3 * n as i32
}

/// Largest `l` in the coefficient sum.
pub fn max_l(n: usize) -> usize {
    if n.is_multiple_of(2) {
        (3 * n).saturating_sub(2) / 2
    } else {
        (3 * n - 3) / 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalPhase {
    pub n: usize,
    pub w_pow: i32,
    pub sin_parity: u32,
    /// `(l, C_{n,l})` for every `l` in `0..=max_l(n)`, zeros included.
    pub coefficients: Vec<(usize, UEPoly)>,
}

impl CanonicalPhase {
    pub fn coefficient(&self, l: usize) -> Option<&UEPoly> {
        self.coefficients
            .iter()
            .find(|(k, _)| *k == l)
            .map(|(_, c)| c)
    }

    /// `C_{n,0}` as a polynomial in `U` alone.
    pub fn leading(&self) -> Result<UPoly> {
        let c0 = self.coefficient(0).cloned().unwrap_or_default();
        c0.as_upoly().ok_or_else(|| Error::StructureViolation {
            order: self.n,
            detail: format!("C_{{{},0}} depends on E: {c0}", self.n),
        })
    }

    pub fn cos_power(&self, l: usize) -> i32 {
        2 * l as i32 - 3 * self.n as i32
    }

    /// Numeric terms at `(E, U)`; `only_l` restricts to a single coefficient.
    pub fn numeric<T: Real>(&self, e: T, u: T, only_l: Option<usize>) -> NumericPhase<T> {
        let terms = self
            .coefficients
            .iter()
            .filter(|(l, c)| !c.is_zero() && only_l.is_none_or(|k| k == *l))
            .map(|(l, c)| NumericTerm {
                coeff: c.eval(u, e),
                mono: Monomial::new(self.cos_power(*l), self.sin_parity, self.w_pow),
            })
            .collect();
        NumericPhase { terms }
    }

    pub fn eval<T: Real>(&self, x: T, e: T, u: T) -> T {
        self.numeric(e, u, None).eval_real(x, e, u)
    }
}

/// Reads `C_{n,l}` off the recursion output at order `n ≥ 1`.
///
/// Fails with `StructureViolation` if any term has the wrong sine parity, a
/// `w` power below `1 − 3n` or of the wrong parity, or lands on a cosine power
/// outside `2l − 3n` with `0 ≤ l ≤ max_l(n)`.
pub fn extract_canonical(expr: &PhaseExpr, n: usize) -> Result<CanonicalPhase> {
    if n == 0 {
        return Err(Error::domain("canonical form is defined for n ≥ 1"));
    }
    let p0 = w_power(n);
    let f = sin_parity(n);
    let violation = |detail: String| Error::StructureViolation { order: n, detail };

    let mut by_cos: BTreeMap<i32, UEPoly> = BTreeMap::new();
    for (m, coeff) in expr.terms() {
        if m.sin_pow != f {
            return Err(violation(format!(
                "term {m:?} has sin power {} ≠ {f}",
                m.sin_pow
            )));
        }
        let excess = m.w_pow - p0;
        if excess < 0 || excess % 2 != 0 {
            return Err(violation(format!(
                "term {m:?} has w power incompatible with {p0}"
            )));
        }
        // w^(p0 + 2j) = w^p0 Σ_i C(j,i) E^(j−i) (−U)^i c^(−2i)
        let j = (excess / 2) as usize;
        let mut binom = integer(1);
        for i in 0..=j {
            let sign = if i % 2 == 0 { integer(1) } else { integer(-1) };
            let part = coeff.shift(i).scale(&(&binom * sign));
            by_cos
                .entry(m.cos_pow - 2 * i as i32)
                .or_default()
                .add_assign_term(&part, j - i);
            binom = binom * integer((j - i) as i64) / integer(i as i64 + 1);
        }
    }

    let g = max_l(n);
    let base = -3 * n as i32;
    let mut coefficients: Vec<(usize, UEPoly)> = (0..=g).map(|l| (l, UEPoly::zero())).collect();
    for (cos_pow, c) in by_cos {
        if c.is_zero() {
            continue;
        }
        let offset = cos_pow - base;
        if offset < 0 || offset % 2 != 0 || (offset / 2) as usize > g {
            return Err(violation(format!(
                "cos power {cos_pow} is not 2l − {} with 0 ≤ l ≤ {g}",
                3 * n
            )));
        }
        coefficients[(offset / 2) as usize].1 = c;
    }
    Ok(CanonicalPhase {
        n,
        w_pow: p0,
        sin_parity: f,
        coefficients,
    })
}

/// `C_{2k,0} = (−1)^k (U/2)^(2k) binomial(1/2, k)` for even `n = 2k ≥ 2`.
pub fn closed_form_c0(n: usize) -> Result<UPoly> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::domain(format!(
            "closed form for C_{{n,0}} needs even n ≥ 2, got {n}"
        )));
    }
    let k = n / 2;
    let sign = if k.is_multiple_of(2) {
        integer(1)
    } else {
        integer(-1)
    };
    let scale = (0..2 * k).fold(integer(1), |acc, _| acc * rational(1, 2));
    Ok(UPoly::monomial(sign * scale * binomial_half(k), 2 * k))
}

/// Numeric value of `C_{2k,0}` from the closed form.
pub fn closed_form_c0_value<T: Real>(n: usize, u: T) -> Result<T> {
    Ok(closed_form_c0(n)?.eval(u))
}

/// One entry of the coefficient dump.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientRecord {
    pub n: usize,
    #[serde(rename = "wPow")]
    pub w_pow: i32,
    #[serde(rename = "sinParity")]
    pub sin_parity: u32,
    #[serde(rename = "C")]
    pub c: Vec<CoefficientEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientEntry {
    pub l: usize,
    /// `poly[j][i]` is the coefficient of `E^j U^i` as `"p/q"`.
    pub poly: Vec<Vec<String>>,
}

impl From<&CanonicalPhase> for CoefficientRecord {
    fn from(cp: &CanonicalPhase) -> Self {
        let c = cp
            .coefficients
            .iter()
            .map(|(l, poly)| CoefficientEntry {
                l: *l,
                poly: poly
                    .e_coeffs()
                    .iter()
                    .map(|p| p.coeffs().iter().map(format_rational).collect())
                    .collect(),
            })
            .collect();
        CoefficientRecord {
            n: cp.n,
            w_pow: cp.w_pow,
            sin_parity: cp.sin_parity,
            c,
        }
    }
}

/// JSON coefficient dump for orders `1..=n_max`.
pub fn coefficient_dump(table: &[CanonicalPhase]) -> Result<String> {
    let records: Vec<CoefficientRecord> = table.iter().map(CoefficientRecord::from).collect();
    serde_json::to_string_pretty(&records).map_err(|e| Error::Output(e.to_string()))
}

/// Parses one `"p/q"` string from the dump.
pub fn parse_rational(s: &str) -> Option<crate::exact::ExactScalar> {
    s.parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase::recursion::WkbSeries;

    #[test]
    fn bounds() {
        assert_eq!(max_l(1), 0);
        assert_eq!(max_l(2), 2);
        assert_eq!(max_l(3), 3);
        assert_eq!(max_l(4), 5);
        assert_eq!(w_power(4), -11);
        assert_eq!(sin_parity(3), 1);
    }

    #[test]
    fn first_three_orders() {
        let s = WkbSeries::up_to(4);
        let c1 = s.canonical(1).unwrap();
        assert_eq!(c1.w_pow, -2);
        assert_eq!(c1.sin_parity, 1);
        assert_eq!(c1.coefficients.len(), 1);
        assert_eq!(c1.leading().unwrap(), UPoly::monomial(rational(1, 2), 1));

        let c2 = s.canonical(2).unwrap();
        assert_eq!(c2.coefficients.len(), 3);
        assert_eq!(c2.leading().unwrap(), UPoly::monomial(rational(-1, 8), 2));

        let c3 = s.canonical(3).unwrap();
        assert!(c3.leading().unwrap().is_zero());

        let c4 = s.canonical(4).unwrap();
        assert_eq!(c4.leading().unwrap(), UPoly::monomial(rational(-1, 128), 4));
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(
            closed_form_c0(2).unwrap(),
            UPoly::monomial(rational(-1, 8), 2)
        );
        assert_eq!(
            closed_form_c0(4).unwrap(),
            UPoly::monomial(rational(-1, 128), 4)
        );
        assert_eq!(
            closed_form_c0(6).unwrap(),
            UPoly::monomial(rational(-1, 1024), 6)
        );
        assert!(matches!(closed_form_c0(3), Err(Error::Domain(_))));
        assert!(matches!(closed_form_c0(0), Err(Error::Domain(_))));
    }

    #[test]
    fn malformed_input_is_rejected() {
        // w⁻³ with sin⁰ cannot be order 1.
        let bad = PhaseExpr::monomial(UPoly::one(), Monomial::new(-3, 0, -2));
        assert!(matches!(
            extract_canonical(&bad, 1),
            Err(Error::StructureViolation { order: 1, .. })
        ));
        let bad_w = PhaseExpr::monomial(UPoly::one(), Monomial::new(-3, 1, -4));
        assert!(extract_canonical(&bad_w, 1).is_err());
        let bad_cos = PhaseExpr::monomial(UPoly::one(), Monomial::new(1, 1, -2));
        assert!(extract_canonical(&bad_cos, 1).is_err());
    }

    #[test]
    fn dump_shape() {
        let s = WkbSeries::up_to(2);
        let json = coefficient_dump(&s.canonical_table().unwrap()).unwrap();
        let parsed: Vec<CoefficientRecord> = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed.len(), 2);
        assert_eq!(parsed[0].w_pow, -2);
        assert_eq!(
            parsed[0].c[0].poly,
            vec![vec!["0".to_string(), "1/2".to_string()]]
        );
        assert_eq!(parsed[1].c[0].poly[0][2], "-1/8");
        assert_eq!(parse_rational("-1/8"), Some(rational(-1, 8)));
    }
}
