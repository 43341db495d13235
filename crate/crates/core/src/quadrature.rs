//! Gauss–Legendre rule on `[-1, 1]`.

use crate::scalar::Real;

/// Nodes and weights of the `n`-point rule, by Newton iteration on the
/// three-term Legendre recurrence from Chebyshev-like initial guesses.
pub fn gauss_legendre<T: Real>(n: usize) -> Vec<(T, T)> {
    assert!(n >= 1, "need at least one node");
    let nt = T::from_usize(n).expect("node count representable");
    let mut rule = vec![(T::zero(), T::zero()); n];
    for i in 0..n.div_ceil(2) {
        let it = T::from_usize(i).expect("index representable");
        let mut x = (T::PI() * (it + T::lit(0.75)) / (nt + T::lit(0.5))).cos();
        let mut dp = T::one();
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x = x - dx;
            if dx.abs() <= T::epsilon() * T::lit(4.0) {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != T::zero() {
            dp = d;
        }
        let w = T::lit(2.0) / ((T::one() - x * x) * dp * dp);
        rule[i] = (-x, w);
        rule[n - 1 - i] = (x, w);
    }
    rule
}

/// `(P_n(x), P_n′(x))`
fn legendre<T: Real>(n: usize, x: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x;
    for k in 2..=n {
        let kt = T::from_usize(k).expect("degree representable");
        let p2 = ((kt + kt - T::one()) * x * p1 - (kt - T::one()) * p0) / kt;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (T::one(), T::zero());
    }
    let nt = T::from_usize(n).expect("degree representable");
    (p1, nt * (x * p1 - p0) / (x * x - T::one()))
}

/// `∫_a^b f` with the `n`-point rule.
pub fn integrate<T: Real>(f: impl Fn(T) -> T, a: T, b: T, n: usize) -> T {
    let half = (b - a) * T::lit(0.5);
    let mid = (a + b) * T::lit(0.5);
    gauss_legendre::<T>(n)
        .into_iter()
        .fold(T::zero(), |acc, (x, w)| acc + w * f(mid + half * x))
        * half
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two() {
        for n in [1, 2, 5, 16, 64, 257] {
            let s: f64 = gauss_legendre::<f64>(n).iter().map(|(_, w)| w).sum();
            assert!((s - 2.0).abs() < 1e-13, "n={n}: {s}");
        }
    }

    #[test]
    fn exact_for_polynomials_up_to_degree_2n_minus_1() {
        // ∫_{-1}^{1} x^8 = 2/9 needs n ≥ 5
        let v = integrate(|x: f64| x.powi(8), -1.0, 1.0, 5);
        assert!((v - 2.0 / 9.0).abs() < 1e-15);
        let v = integrate(|x: f64| x.cos(), 0.0, 1.0, 12);
        assert!((v - 1.0_f64.sin()).abs() < 1e-15);
    }
}
