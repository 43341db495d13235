use crate::error::Result;
use crate::exact::rational;
use crate::phase::canonical::{extract_canonical, CanonicalPhase};
use crate::phase::expr::PhaseExpr;

/// Largest order computed by default.
pub const N_MAX: usize = 12;

/// Next phase derivative from `history = [σ₀′, …, σ′_{n−1}]`.
///
/// The phases are the real-normalized WKB phases of `F = exp(i S)` with
/// `S′² − i S″ = E − U/cos²x`: the true order-`n` phase equals `σₙ′` for even
/// `n` and `−i σₙ′` for odd `n`. Carrying that factor through gives
///
/// ```text
/// n odd:   σₙ′ = −(1/2w) [ Σ_{k=1}^{n−1} σ′_k σ′_{n−k}         + σ″_{n−1} ]
/// n even:  σₙ′ = −(1/2w) [ Σ_{k=1}^{n−1} (−1)^k σ′_k σ′_{n−k}  − σ″_{n−1} ]
/// ```
///
/// `history[0]` must be the atom `w` (`σ₀′² = E − U/cos²x`).
pub fn wkb_recursion_step(history: &[PhaseExpr]) -> PhaseExpr {
    assert!(!history.is_empty(), "history must start with σ₀′ = w");
    debug_assert_eq!(history[0], PhaseExpr::w());
    let n = history.len();
    let even = n.is_multiple_of(2);

    let mut bracket = PhaseExpr::zero();
    for k in 1..n {
        let prod = history[k].multiply(&history[n - k]);
        bracket = if even && k % 2 == 1 {
            bracket.add(&prod.neg())
        } else {
            bracket.add(&prod)
        };
    }
    let second = history[n - 1].differentiate();
    bracket = if even {
        bracket.add(&second.neg())
    } else {
        bracket.add(&second)
    };
    bracket.w_shift(-1).scale(&rational(-1, 2))
}

/// σ₀′ … σ′_{n_max}, computed once and kept.
#[derive(Clone, Debug)]
pub struct WkbSeries {
    phases: Vec<PhaseExpr>,
}

impl WkbSeries {
    pub fn new() -> Self {
        Self {
            phases: vec![PhaseExpr::w()],
        }
    }

    pub fn up_to(n_max: usize) -> Self {
        let mut s = Self::new();
        s.extend_to(n_max);
        s
    }

    pub fn extend_to(&mut self, n_max: usize) {
        while self.phases.len() <= n_max {
            let next = wkb_recursion_step(&self.phases);
            self.phases.push(next);
        }
    }

    pub fn max_order(&self) -> usize {
        self.phases.len() - 1
    }

    pub fn phase(&self, n: usize) -> &PhaseExpr {
        &self.phases[n]
    }

    pub fn phases(&self) -> &[PhaseExpr] {
        &self.phases
    }

    pub fn canonical(&self, n: usize) -> Result<CanonicalPhase> {
        extract_canonical(&self.phases[n], n)
    }

    /// Canonical forms for orders `1..=max_order`.
    pub fn canonical_table(&self) -> Result<Vec<CanonicalPhase>> {
        (1..=self.max_order()).map(|n| self.canonical(n)).collect()
    }
}

impl Default for WkbSeries {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{integer, UPoly};
    use crate::phase::expr::Monomial;

    fn u_pow(c: crate::exact::ExactScalar, k: usize) -> UPoly {
        UPoly::monomial(c, k)
    }

    #[test]
    fn first_order() {
        let s = WkbSeries::up_to(1);
        let expected = PhaseExpr::monomial(u_pow(rational(1, 2), 1), Monomial::new(-3, 1, -2));
        assert_eq!(s.phase(1), &expected);
    }

    /// The recursion read literally with the signs `+Σ` and `+σ″` at every
    /// order. Kept only as an independent route for the sign relation.
    fn literal_recursion(n_max: usize) -> Vec<PhaseExpr> {
        let mut h = vec![PhaseExpr::w()];
        for n in 1..=n_max {
            let mut b = PhaseExpr::zero();
            for k in 1..n {
                b = b.add(&h[k].multiply(&h[n - k]));
            }
            b = b.add(&h[n - 1].differentiate());
            h.push(b.w_shift(-1).scale(&rational(-1, 2)));
        }
        h
    }

    #[test]
    fn differs_from_literal_reading_by_quarter_turn_signs() {
        let lit = literal_recursion(7);
        let s = WkbSeries::up_to(7);
        for (n, literal) in lit.iter().enumerate() {
            let sign = if (n / 2) % 2 == 0 { 1 } else { -1 };
            assert_eq!(s.phase(n), &literal.scale(&integer(sign)), "order {n}");
        }
    }

    #[test]
    fn residual_of_the_complex_riccati_equation_vanishes() {
        // Σ_{k=0}^{n} τ_k τ_{n-k} − i τ″_{n-1} = 0 with τ_k = σ_k (even),
        // −iσ_k (odd), checked numerically at a point for n ≤ 6.
        use num_complex::Complex;
        let s = WkbSeries::up_to(6);
        let (x, e, u) = (0.37_f64, 2.25, 0.75);
        let tau = |k: usize| {
            let v = s.phase(k).eval(x, e, u);
            if k.is_multiple_of(2) {
                Complex::new(v, 0.0)
            } else {
                Complex::new(0.0, -v)
            }
        };
        for n in 1..=6 {
            let mut acc = Complex::new(0.0, 0.0);
            for k in 0..=n {
                acc += tau(k) * tau(n - k);
            }
            let d2 = s.phase(n - 1).differentiate().eval(x, e, u);
            let d2 = if (n - 1) % 2 == 0 {
                Complex::new(d2, 0.0)
            } else {
                Complex::new(0.0, -d2)
            };
            acc -= Complex::new(0.0, 1.0) * d2;
            assert!(acc.norm() < 1e-10, "order {n}: {acc}");
        }
    }
}
