//! Truncated jets: value plus derivatives up to order five.
//!
//! A [`Jet`] stores the raw derivatives `c[k] = d^k f / ds^k` of a scalar
//! function at a point, not Taylor-normalized coefficients. One convention is
//! fixed here for the whole crate; converting between the two is a classic
//! source of silent factorial bugs. Arithmetic follows the Leibniz rule with
//! binomial weights, and elementary functions compose through a Horner
//! evaluation of the local series.

// The convolution kernels index two arrays against each other; explicit
// indices keep them readable.
#![allow(clippy::needless_range_loop)]

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::real::Real;

/// Highest derivative order a jet carries.
pub const JET_ORDER: usize = 5;
const LEN: usize = JET_ORDER + 1;

/// Binomial coefficients C(k, i) for k, i <= 5.
const BINOM: [[f64; LEN]; LEN] = [
    [1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0, 1.0, 0.0, 0.0, 0.0, 0.0],
    [1.0, 2.0, 1.0, 0.0, 0.0, 0.0],
    [1.0, 3.0, 3.0, 1.0, 0.0, 0.0],
    [1.0, 4.0, 6.0, 4.0, 1.0, 0.0],
    [1.0, 5.0, 10.0, 10.0, 5.0, 1.0],
];

const FACTORIAL: [f64; LEN] = [1.0, 1.0, 2.0, 6.0, 24.0, 120.0];

/// Value and derivatives `d^0..d^5` of a scalar function at one parameter value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    /// `c[k]` is the k-th derivative (raw, not divided by k!).
    pub c: [f64; LEN],
}

impl Jet {
    pub fn new(c: [f64; LEN]) -> Self {
        Jet { c }
    }

    /// Jet of the constant function `x`.
    pub fn constant(x: f64) -> Self {
        let mut c = [0.0; LEN];
        c[0] = x;
        Jet { c }
    }

    /// Jet of the identity function evaluated at `x` (the parameter itself).
    pub fn variable(x: f64) -> Self {
        let mut c = [0.0; LEN];
        c[0] = x;
        c[1] = 1.0;
        Jet { c }
    }

    /// Plain value of the function.
    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// k-th derivative.
    pub fn deriv(&self, k: usize) -> f64 {
        self.c[k]
    }

    /// Jet of the derivative function. Shifts coefficients down one order;
    /// the top coefficient becomes zero, so each application loses one exact
    /// order at the top. The frame pipeline consumes at most four orders,
    /// which the order-5 budget covers.
    pub fn derivative(&self) -> Self {
        let mut c = [0.0; LEN];
        c[..JET_ORDER].copy_from_slice(&self.c[1..]);
        Jet { c }
    }

    pub fn is_finite(&self) -> bool {
        self.c.iter().all(|x| x.is_finite())
    }

    /// Integer power. `n = 0` yields the constant one jet. Negative exponents
    /// go through the reciprocal; the caller guards `value() != 0` for those.
    pub fn powi(&self, n: i32) -> Self {
        if n == 0 {
            return Jet::constant(1.0);
        }
        let mut base = *self;
        let mut m = n.unsigned_abs();
        let mut acc = Jet::constant(1.0);
        while m > 0 {
            if m & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            m >>= 1;
        }
        if n < 0 {
            Jet::constant(1.0) / acc
        } else {
            acc
        }
    }

    /// Composes the elementary function with derivative table `f[m] = f^(m)(g0)`
    /// onto this jet. Horner evaluation of the truncated local series.
    fn compose(&self, f: &[f64; LEN]) -> Self {
        let mut delta = *self;
        delta.c[0] = 0.0;
        // Horner in the displacement jet with Taylor-normalized table entries.
        let mut acc = Jet::constant(f[JET_ORDER] / FACTORIAL[JET_ORDER]);
        for m in (0..JET_ORDER).rev() {
            acc = acc * delta + Jet::constant(f[m] / FACTORIAL[m]);
        }
        acc
    }

    pub fn sin(&self) -> Self {
        let (s, c) = self.c[0].sin_cos();
        self.compose(&[s, c, -s, -c, s, c])
    }

    pub fn cos(&self) -> Self {
        let (s, c) = self.c[0].sin_cos();
        self.compose(&[c, -s, -c, s, c, -s])
    }

    /// Tangent via sin/cos. Caller guards |cos(value)| away from zero.
    pub fn tan(&self) -> Self {
        self.sin() / self.cos()
    }

    pub fn exp(&self) -> Self {
        let e = self.c[0].exp();
        self.compose(&[e; LEN])
    }

    /// Natural logarithm. Caller guards `value() > 0`.
    pub fn ln(&self) -> Self {
        let x = self.c[0];
        let mut f = [0.0; LEN];
        f[0] = x.ln();
        // f^(m) = (-1)^(m-1) (m-1)! / x^m
        let mut p = x;
        for m in 1..LEN {
            let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
            f[m] = sign * FACTORIAL[m - 1] / p;
            p *= x;
        }
        self.compose(&f)
    }
}

impl Real for Jet {
    fn zero() -> Self {
        Jet::constant(0.0)
    }
    fn one() -> Self {
        Jet::constant(1.0)
    }
    fn from_f64(x: f64) -> Self {
        Jet::constant(x)
    }
    fn val(self) -> f64 {
        self.c[0]
    }
    /// Square root. Caller guards `value() > 0`.
    fn sqrt(self) -> Self {
        let mut r = [0.0; LEN];
        r[0] = self.c[0].sqrt();
        // Leibniz rule on r*r = self, solved order by order.
        for k in 1..LEN {
            let mut inner = 0.0;
            for i in 1..k {
                inner += BINOM[k][i] * r[i] * r[k - i];
            }
            r[k] = (self.c[k] - inner) / (2.0 * r[0]);
        }
        Jet { c: r }
    }
    fn scale(self, k: f64) -> Self {
        let mut c = self.c;
        for x in &mut c {
            *x *= k;
        }
        Jet { c }
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        let mut c = self.c;
        for k in 0..LEN {
            c[k] += rhs.c[k];
        }
        Jet { c }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        let mut c = self.c;
        for k in 0..LEN {
            c[k] -= rhs.c[k];
        }
        Jet { c }
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        let mut c = self.c;
        for x in &mut c {
            *x = -*x;
        }
        Jet { c }
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let mut c = [0.0; LEN];
        for k in 0..LEN {
            let mut acc = 0.0;
            for i in 0..=k {
                acc += BINOM[k][i] * self.c[i] * rhs.c[k - i];
            }
            c[k] = acc;
        }
        Jet { c }
    }
}

impl Div for Jet {
    type Output = Jet;
    /// Caller guards `rhs.value() != 0`; division by a zero-valued jet
    /// produces non-finite coefficients exactly like `f64` division.
    fn div(self, rhs: Jet) -> Jet {
        let mut q = [0.0; LEN];
        for k in 0..LEN {
            let mut inner = 0.0;
            for i in 0..k {
                inner += BINOM[k][i] * q[i] * rhs.c[k - i];
            }
            q[k] = (self.c[k] - inner) / rhs.c[0];
        }
        Jet { c: q }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: &Jet, b: &[f64; LEN], tol: f64) {
        for k in 0..LEN {
            assert!(
                (a.c[k] - b[k]).abs() <= tol,
                "order {k}: {} vs {}",
                a.c[k],
                b[k]
            );
        }
    }

    #[test]
    fn exp_derivatives_at_zero() {
        let x = Jet::variable(0.0);
        assert_close(&x.exp(), &[1.0; LEN], 1e-14);
    }

    #[test]
    fn sin_cos_derivatives_at_zero() {
        let x = Jet::variable(0.0);
        assert_close(&x.sin(), &[0.0, 1.0, 0.0, -1.0, 0.0, 1.0], 1e-14);
        assert_close(&x.cos(), &[1.0, 0.0, -1.0, 0.0, 1.0, 0.0], 1e-14);
    }

    #[test]
    fn ln_derivatives() {
        let x = Jet::variable(2.0);
        let l = x.ln();
        let expected = [
            2.0f64.ln(),
            0.5,
            -0.25,
            0.25,
            -6.0 / 16.0,
            24.0 / 32.0,
        ];
        assert_close(&l, &expected, 1e-13);
    }

    #[test]
    fn sqrt_squares_back() {
        let x = Jet::new([4.0, 1.0, 0.5, -0.25, 2.0, 0.0]);
        let r = x.sqrt();
        let sq = r * r;
        assert_close(&sq, &x.c, 1e-12);
    }

    #[test]
    fn division_round_trips() {
        let a = Jet::new([1.0, 2.0, -3.0, 0.5, 0.25, -1.0]);
        let b = Jet::new([2.0, -1.0, 0.75, 1.5, -0.5, 2.0]);
        let q = a / b;
        assert_close(&(q * b), &a.c, 1e-11);
    }

    #[test]
    fn product_of_exp_and_sin() {
        // d^k of e^s sin s at s: closed forms.
        let s0 = 0.3;
        let x = Jet::variable(s0);
        let p = x.exp() * x.sin();
        let (sn, cs) = s0.sin_cos();
        let e = s0.exp();
        let expected = [
            e * sn,
            e * (sn + cs),
            2.0 * e * cs,
            2.0 * e * (cs - sn),
            -4.0 * e * sn,
            -4.0 * e * (sn + cs),
        ];
        assert_close(&p, &expected, 1e-12);
    }

    #[test]
    fn tan_matches_sin_over_cos_derivative() {
        let x = Jet::variable(0.4);
        let t = x.tan();
        // d/ds tan = 1 + tan^2
        let want = 1.0 + 0.4f64.tan().powi(2);
        assert!((t.c[1] - want).abs() < 1e-13);
    }

    #[test]
    fn negative_integer_power() {
        let x = Jet::variable(2.0);
        let p = x.powi(-2);
        // f = s^-2: f' = -2 s^-3, f'' = 6 s^-4
        assert!((p.c[0] - 0.25).abs() < 1e-14);
        assert!((p.c[1] + 2.0 / 8.0).abs() < 1e-14);
        assert!((p.c[2] - 6.0 / 16.0).abs() < 1e-14);
    }

    #[test]
    fn derivative_shifts_orders() {
        let x = Jet::variable(0.7);
        let d = x.sin().derivative();
        let c = x.cos();
        for k in 0..JET_ORDER {
            assert!((d.c[k] - c.c[k]).abs() < 1e-13);
        }
    }
}
