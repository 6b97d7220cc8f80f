//! Cylinder functions of order zero and one for real positive arguments.
//!
//! The light-cone kernels need `J1`, the Neumann function `Y1` and the
//! Macdonald function `K1`. `J0`/`Y0` come along because the Wronskian
//! checks use the recurrence `C1' = C0 - C1/x`.
//!
//! Evaluation regimes:
//!
//! * `J0, J1, Y0, Y1`: ascending series for `x < 25`, summed in double-double
//!   arithmetic so the alternating terms (up to ~1e9 at the crossover) cancel
//!   without loss; Hankel asymptotic expansion above, where the smallest term
//!   is below `e^{-50}`.
//! * `K1`: ascending series for `x < 2`; Steed's continued fraction (Temme's
//!   method) above.
//!
//! `y1_regular` and `k1_regular` return the functions with their `1/x` pole
//! removed. They are computed from the series directly, so they stay accurate
//! where subtracting the pole from the full value would cancel.

use crate::error::{Error, Result};
use std::f64::consts::{FRAC_2_PI, PI};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const SERIES_LIMIT_JY: f64 = 25.0;
const SERIES_LIMIT_K: f64 = 2.0;

/// Bessel function of the first kind, order one.
pub fn bessel_j1(x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::domain("bessel_j1", format!("argument {x} not finite and non-negative")));
    }
    Ok(if x < SERIES_LIMIT_JY { series_j(1, x).to_f64() } else { hankel(1, x).0 })
}

/// Bessel function of the first kind, order zero.
pub fn bessel_j0(x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::domain("bessel_j0", format!("argument {x} not finite and non-negative")));
    }
    Ok(if x < SERIES_LIMIT_JY { series_j(0, x).to_f64() } else { hankel(0, x).0 })
}

/// Neumann function (Bessel of the second kind), order one.
pub fn bessel_y1(x: f64) -> Result<f64> {
    check_positive("bessel_y1", x)?;
    Ok(if x < SERIES_LIMIT_JY { y1_series_regular(x) - FRAC_2_PI / x } else { hankel(1, x).1 })
}

/// Neumann function (Bessel of the second kind), order zero.
pub fn bessel_y0(x: f64) -> Result<f64> {
    check_positive("bessel_y0", x)?;
    Ok(if x < SERIES_LIMIT_JY { y0_series(x) } else { hankel(0, x).1 })
}

/// Modified Bessel function of the second kind (Macdonald function), order one.
pub fn bessel_k1(x: f64) -> Result<f64> {
    check_positive("bessel_k1", x)?;
    Ok(if x < SERIES_LIMIT_K { 1.0 / x + k1_series_regular(x) } else { k1_steed(x) })
}

/// `Y1(x) + 2/(pi x)`: the Neumann function with its pole removed.
pub fn y1_regular(x: f64) -> Result<f64> {
    check_positive("y1_regular", x)?;
    Ok(if x < SERIES_LIMIT_JY { y1_series_regular(x) } else { hankel(1, x).1 + FRAC_2_PI / x })
}

/// `K1(x) - 1/x`: the Macdonald function with its pole removed.
pub fn k1_regular(x: f64) -> Result<f64> {
    check_positive("k1_regular", x)?;
    Ok(if x < SERIES_LIMIT_K { k1_series_regular(x) } else { k1_steed(x) - 1.0 / x })
}

fn check_positive(op: &'static str, x: f64) -> Result<()> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::domain(op, format!("argument {x} must be finite and positive")));
    }
    Ok(())
}

/// Signed series terms `(-1)^k (x/2)^{2k+n} / (k! (k+n)!)` for n in {0, 1},
/// handed to `visit` together with k. Returns the plain sum.
fn series_terms(n: u32, x: f64, mut visit: impl FnMut(u32, Dd)) -> Dd {
    let half = x * 0.5;
    let q = Dd::mul_f64(half, half);
    let mut term = if n == 0 { Dd::from(1.0) } else { Dd::from(half) };
    let mut sum = Dd::from(0.0);
    let mut peak = 0.0_f64;
    let mut k = 0u32;
    loop {
        visit(k, term);
        sum = sum + term;
        peak = peak.max(term.hi.abs());
        k += 1;
        let denom = f64::from(k) * f64::from(k + n);
        term = (term * q).div_f64(-denom);
        // Past the peak, terms fall super-exponentially.
        if f64::from(k) > half && term.hi.abs() <= 1e-34 * peak.max(1e-300) {
            break;
        }
        if k > 500 {
            break;
        }
    }
    sum
}

fn series_j(n: u32, x: f64) -> Dd {
    series_terms(n, x, |_, _| {})
}

/// Harmonic numbers H_k in double-double.
struct Harmonic {
    value: Dd,
    k: u32,
}

impl Harmonic {
    fn new() -> Self {
        Harmonic { value: Dd::from(0.0), k: 0 }
    }

    fn advance_to(&mut self, k: u32) -> Dd {
        while self.k < k {
            self.k += 1;
            self.value = self.value + Dd::recip(f64::from(self.k));
        }
        self.value
    }
}

/// `Y1 + 2/(pi x) = (2/pi) J1 (ln(x/2) + gamma) - T/pi`,
/// `T = sum (-1)^k (H_k + H_{k+1}) (x/2)^{2k+1} / (k!(k+1)!)`.
fn y1_series_regular(x: f64) -> f64 {
    let mut harmonic = Harmonic::new();
    let mut weighted = Dd::from(0.0);
    let j1 = series_terms(1, x, |k, term| {
        let hk = harmonic.advance_to(k);
        let weight = hk + hk + Dd::recip(f64::from(k + 1));
        weighted = weighted + term * weight;
    });
    let log_term = (x * 0.5).ln() + EULER_GAMMA;
    FRAC_2_PI * j1.to_f64() * log_term - weighted.to_f64() / PI
}

/// `Y0 = (2/pi)(ln(x/2) + gamma) J0 - (2/pi) sum (-1)^k H_k (x/2)^{2k} / (k!)^2`.
fn y0_series(x: f64) -> f64 {
    let mut harmonic = Harmonic::new();
    let mut weighted = Dd::from(0.0);
    let j0 = series_terms(0, x, |k, term| {
        let hk = harmonic.advance_to(k);
        weighted = weighted + term * hk;
    });
    let log_term = (x * 0.5).ln() + EULER_GAMMA;
    FRAC_2_PI * (j0.to_f64() * log_term - weighted.to_f64())
}

/// `K1 - 1/x = (ln(x/2) + gamma) I1 - (1/2) sum (H_k + H_{k+1}) (x/2)^{2k+1} / (k!(k+1)!)`.
/// All terms positive; plain doubles suffice for x < 2.
fn k1_series_regular(x: f64) -> f64 {
    let half = 0.5 * x;
    let q = half * half;
    let mut term = half;
    let mut harmonic = 0.0;
    let mut i1 = 0.0;
    let mut weighted = 0.0;
    for k in 0..60u32 {
        let weight = 2.0 * harmonic + 1.0 / f64::from(k + 1);
        i1 += term;
        weighted += weight * term;
        harmonic += 1.0 / f64::from(k + 1);
        term *= q / (f64::from(k + 1) * f64::from(k + 2));
        if term < 1e-18 * i1 {
            break;
        }
    }
    (half.ln() + EULER_GAMMA) * i1 - 0.5 * weighted
}

/// Steed's continued-fraction evaluation of K0 and K1 (Temme's method with
/// order mu = 0). Valid for x >= 2.
fn k1_steed(x: f64) -> f64 {
    let a1 = 0.25;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut h = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..10_000u32 {
        a -= f64::from(2 * (i - 1));
        c = -a * c / f64::from(i);
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-17 {
            break;
        }
    }
    let h = a1 * h;
    let k0 = (PI / (2.0 * x)).sqrt() * (-x).exp() / s;
    k0 * (x + 0.5 - h) / x
}

/// Hankel asymptotic expansion, returns (J_n, Y_n).
fn hankel(n: u32, x: f64) -> (f64, f64) {
    let mu = 4.0 * f64::from(n * n);
    let inv8x = 1.0 / (8.0 * x);
    let mut p = 1.0;
    let mut q = 0.0;
    let mut coeff = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..60u32 {
        let odd = f64::from(2 * k - 1);
        coeff *= (mu - odd * odd) * inv8x / f64::from(k);
        if coeff.abs() > last || coeff == 0.0 {
            break;
        }
        last = coeff.abs();
        // a_k / x^k with sign (-1)^{floor(k/2)}.
        let signed = if (k / 2) % 2 == 0 { coeff } else { -coeff };
        if k % 2 == 0 {
            p += signed;
        } else {
            q += signed;
        }
        if last < 1e-18 {
            break;
        }
    }
    let phase = x - (2.0 * f64::from(n) + 1.0) * PI / 4.0;
    let (sin, cos) = phase.sin_cos();
    let amp = (FRAC_2_PI / x).sqrt();
    (amp * (p * cos - q * sin), amp * (p * sin + q * cos))
}

/// Unevaluated sum `hi + lo` with |lo| <= ulp(hi)/2.
#[derive(Debug, Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl From<f64> for Dd {
    fn from(hi: f64) -> Self {
        Dd { hi, lo: 0.0 }
    }
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn fast_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

impl Dd {
    fn mul_f64(a: f64, b: f64) -> Dd {
        let p = a * b;
        Dd { hi: p, lo: a.mul_add(b, -p) }
    }

    fn recip(b: f64) -> Dd {
        Dd::from(1.0).div_f64(b)
    }

    fn div_f64(self, b: f64) -> Dd {
        let q1 = self.hi / b;
        let p = Dd::mul_f64(q1, b);
        let (s, e) = two_sum(self.hi, -p.hi);
        let r = s + (e - p.lo + self.lo);
        let q2 = r / b;
        let (hi, lo) = fast_two_sum(q1, q2);
        Dd { hi, lo }
    }

    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

impl std::ops::Add for Dd {
    type Output = Dd;
    fn add(self, rhs: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let e = e + self.lo + rhs.lo;
        let (hi, lo) = fast_two_sum(s, e);
        Dd { hi, lo }
    }
}

impl std::ops::Mul for Dd {
    type Output = Dd;
    fn mul(self, rhs: Dd) -> Dd {
        let p = Dd::mul_f64(self.hi, rhs.hi);
        let e = p.lo + self.hi * rhs.lo + self.lo * rhs.hi;
        let (hi, lo) = fast_two_sum(p.hi, e);
        Dd { hi, lo }
    }
}
