use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex;
use num_traits::Zero;

use crate::exact::{integer, ExactScalar, UPoly};
use crate::scalar::Real;

/// Exponents of `cos x`, `sin x` and `w = σ₀′`. The derived ordering is the
/// lexicographic order on `(cos_pow, sin_pow, w_pow)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub cos_pow: i32,
    pub sin_pow: u32,
    pub w_pow: i32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        cos_pow: 0,
        sin_pow: 0,
        w_pow: 0,
    };

    pub fn new(cos_pow: i32, sin_pow: u32, w_pow: i32) -> Self {
        Self {
            cos_pow,
            sin_pow,
            w_pow,
        }
    }

    fn times(self, other: Monomial) -> Monomial {
        Monomial {
            cos_pow: self.cos_pow + other.cos_pow,
            sin_pow: self.sin_pow + other.sin_pow,
            w_pow: self.w_pow + other.w_pow,
        }
    }
}

/// `coeff(U) · cos^a x · sin^b x · w^p`.
///
/// Raw terms may carry any `sin_pow`; inside a [`PhaseExpr`] it is 0 or 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseTerm {
    pub coeff: UPoly,
    pub mono: Monomial,
}

impl PhaseTerm {
    pub fn new(coeff: UPoly, cos_pow: i32, sin_pow: u32, w_pow: i32) -> Self {
        Self {
            coeff,
            mono: Monomial::new(cos_pow, sin_pow, w_pow),
        }
    }
}

/// Canonical sum of phase terms.
///
/// Terms are fully collected, nonzero, have `sin_pow ∈ {0, 1}`, and are kept
/// sorted by [`Monomial`], so `==` is structural equality. `E` never appears:
/// wherever it would, it is written as `w² + U cos⁻² x`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PhaseExpr {
    terms: BTreeMap<Monomial, UPoly>,
}

/// Canonicalizes a list of raw terms: `sin² → 1 − cos²` until every sine
/// power is 0 or 1, then like terms are collected and zeros dropped.
pub fn normalize<I: IntoIterator<Item = PhaseTerm>>(terms: I) -> PhaseExpr {
    let mut acc: BTreeMap<Monomial, UPoly> = BTreeMap::new();
    for term in terms {
        if term.coeff.is_zero() {
            continue;
        }
        let Monomial {
            cos_pow,
            sin_pow,
            w_pow,
        } = term.mono;
        let q = sin_pow / 2;
        let r = sin_pow % 2;
        // (1 - c²)^q = Σ_i C(q, i) (-1)^i c^(2i)
        let mut binom = integer(1);
        for i in 0..=q {
            let sign = if i % 2 == 0 { integer(1) } else { integer(-1) };
            let key = Monomial::new(cos_pow + 2 * i as i32, r, w_pow);
            let add = term.coeff.scale(&(&binom * sign));
            let slot = acc.entry(key).or_default();
            *slot = &*slot + &add;
            binom = binom * integer((q - i) as i64) / integer(i as i64 + 1);
        }
    }
    acc.retain(|_, c| !c.is_zero());
    PhaseExpr { terms: acc }
}

impl PhaseExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant 1.
    pub fn one() -> Self {
        Self::monomial(UPoly::one(), Monomial::ONE)
    }

    /// The atom `w = σ₀′`.
    pub fn w() -> Self {
        Self::monomial(UPoly::one(), Monomial::new(0, 0, 1))
    }

    pub fn monomial(coeff: UPoly, mono: Monomial) -> Self {
        normalize([PhaseTerm { coeff, mono }])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &UPoly)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn to_terms(&self) -> Vec<PhaseTerm> {
        self.terms()
            .map(|(mono, c)| PhaseTerm {
                coeff: c.clone(),
                mono,
            })
            .collect()
    }

    pub fn coeff(&self, mono: Monomial) -> UPoly {
        self.terms.get(&mono).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &PhaseExpr) -> PhaseExpr {
        normalize(self.to_terms().into_iter().chain(other.to_terms()))
    }

    pub fn scale(&self, c: &ExactScalar) -> PhaseExpr {
        if c.is_zero() {
            return PhaseExpr::zero();
        }
        normalize(self.terms().map(|(mono, p)| PhaseTerm {
            coeff: p.scale(c),
            mono,
        }))
    }

    pub fn neg(&self) -> PhaseExpr {
        self.scale(&integer(-1))
    }

    /// Multiplies by `w^k`; for `k < 0` this is exact division by `w`.
    pub fn w_shift(&self, k: i32) -> PhaseExpr {
        PhaseExpr {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    (
                        Monomial {
                            w_pow: m.w_pow + k,
                            ..*m
                        },
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    /// d/dx with `dc/dx = −s`, `ds/dx = c`, `dw/dx = −U s c⁻³ w⁻¹`.
    pub fn differentiate(&self) -> PhaseExpr {
        let mut raw = Vec::with_capacity(3 * self.terms.len());
        for (m, coeff) in self.terms() {
            let Monomial {
                cos_pow: a,
                sin_pow: b,
                w_pow: p,
            } = m;
            if a != 0 {
                raw.push(PhaseTerm::new(
                    coeff.scale(&integer(-(a as i64))),
                    a - 1,
                    b + 1,
                    p,
                ));
            }
            if b != 0 {
                raw.push(PhaseTerm::new(
                    coeff.scale(&integer(b as i64)),
                    a + 1,
                    b - 1,
                    p,
                ));
            }
            if p != 0 {
                raw.push(PhaseTerm::new(
                    coeff.shift(1).scale(&integer(-(p as i64))),
                    a - 3,
                    b + 1,
                    p - 2,
                ));
            }
        }
        normalize(raw)
    }

    pub fn multiply(&self, other: &PhaseExpr) -> PhaseExpr {
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                raw.push(PhaseTerm {
                    coeff: ca * cb,
                    mono: ma.times(mb),
                });
            }
        }
        normalize(raw)
    }

    /// Numeric coefficients at a fixed `U`.
    pub fn numeric<T: Real>(&self, u: T) -> NumericPhase<T> {
        NumericPhase {
            terms: self
                .terms()
                .map(|(mono, c)| NumericTerm {
                    coeff: c.eval(u),
                    mono,
                })
                .collect(),
        }
    }

    /// Value at real `x` in the classically allowed region, on the branch
    /// `w = +√(E − U/cos²x)`.
    pub fn eval<T: Real>(&self, x: T, e: T, u: T) -> T {
        self.numeric(u).eval_real(x, e, u)
    }
}

impl fmt::Display for PhaseExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})·c^{}·s^{}·w^{}", m.cos_pow, m.sin_pow, m.w_pow)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericTerm<T> {
    pub coeff: T,
    pub mono: Monomial,
}

/// A phase expression with its `U`-dependence (and, for canonical forms, its
/// `E`-dependence) already evaluated.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericPhase<T> {
    pub terms: Vec<NumericTerm<T>>,
}

impl<T: Real> NumericPhase<T> {
    pub fn single(term: NumericTerm<T>) -> Self {
        Self { terms: vec![term] }
    }

    pub fn eval_parts(&self, c: T, s: T, w: T) -> T {
        self.terms.iter().fold(T::zero(), |acc, t| {
            acc + t.coeff
                * c.powi(t.mono.cos_pow)
                * s.powi(t.mono.sin_pow as i32)
                * w.powi(t.mono.w_pow)
        })
    }

    pub fn eval_real(&self, x: T, e: T, u: T) -> T {
        let c = x.cos();
        let w = (e - u / (c * c)).sqrt();
        self.eval_parts(c, x.sin(), w)
    }

    pub fn eval_complex(&self, c: Complex<T>, s: Complex<T>, w: Complex<T>) -> Complex<T> {
        let c_inv = c.inv();
        let w_inv = w.inv();
        let mut acc = Complex::zero();
        for t in &self.terms {
            let cp = if t.mono.cos_pow >= 0 {
                c.powu(t.mono.cos_pow as u32)
            } else {
                c_inv.powu(t.mono.cos_pow.unsigned_abs())
            };
            let wp = if t.mono.w_pow >= 0 {
                w.powu(t.mono.w_pow as u32)
            } else {
                w_inv.powu(t.mono.w_pow.unsigned_abs())
            };
            acc = acc + cp * s.powu(t.mono.sin_pow) * wp * t.coeff;
        }
        acc
    }
}
