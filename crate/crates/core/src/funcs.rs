//! Integrand kernels, the sine and cosine integrals, and closed-form values.
//!
//! `si` and `ci` serve as oracles for the quadrature paths: the inner
//! integrals `F(u) = ∫₀ᵘ sin²v/v dv` and `G(u) = ∫₀ᵘ sin v cos v/v dv` have
//! closed forms in terms of them.

use core::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_86;

/// Below this argument `si`/`ci` use their Maclaurin series, above it the
/// continued fraction for `E₁(ix)`.
pub const SERIES_CUTOFF: f64 = 4.0;

/// Below this argument of `Cin` the `γ + ln x − Ci(x)` form is replaced by
/// its alternating series.
const CIN_SERIES_CUTOFF: f64 = 1.0;

/// Named scalar kernels `ℝ≥0 → ℝ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kernel {
    /// `sin x / x`, 1 at the origin.
    Sinc,
    /// `sin² x / x`, 0 at the origin.
    Sin2Over,
    /// `sin x cos x / x`, 1 at the origin.
    SinCosOver,
    /// `cos x / x`; singular at the origin.
    CosOver,
    /// `sin(x²/4) / x`, 0 at the origin.
    FresnelQuarter,
}

impl Kernel {
    /// Raw evaluation. `CosOver` at 0 yields an infinity, which the engine
    /// reports as a non-finite integrand.
    #[inline]
    pub fn eval(self, x: f64) -> f64 {
        match self {
            Kernel::Sinc => {
                if x == 0.0 {
                    1.0
                } else {
                    math::sin(x) / x
                }
            }
            Kernel::Sin2Over => {
                if x == 0.0 {
                    0.0
                } else {
                    let s = math::sin(x);
                    s * s / x
                }
            }
            Kernel::SinCosOver => {
                if x == 0.0 {
                    1.0
                } else {
                    math::sin(x) * math::cos(x) / x
                }
            }
            Kernel::CosOver => math::cos(x) / x,
            Kernel::FresnelQuarter => {
                if x == 0.0 {
                    0.0
                } else {
                    math::sin(0.25 * x * x) / x
                }
            }
        }
    }
}

/// Checked kernel evaluation.
pub fn kernel(id: Kernel, x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::InvalidArgument("kernel argument must be >= 0"));
    }
    if id == Kernel::CosOver && x == 0.0 {
        return Err(Error::InvalidArgument("cos(x)/x is singular at x = 0"));
    }
    Ok(id.eval(x))
}

fn si_series(x: f64) -> f64 {
    // Σ (−1)ᵏ x^(2k+1) / ((2k+1)·(2k+1)!)
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut k = 0.0;
    loop {
        term *= -x2 / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
        k += 1.0;
        let contrib = term / (2.0 * k + 1.0);
        sum += contrib;
        if contrib.abs() <= 1e-17 * sum.abs() {
            return sum;
        }
    }
}

/// `Cin(x) = ∫₀ˣ (1 − cos t)/t dt = −Σₖ₌₁ (−1)ᵏ x²ᵏ / (2k·(2k)!)`.
fn cin_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = -0.5 * x2;
    let mut sum = 0.0;
    let mut k = 1.0;
    loop {
        let contrib = term / (2.0 * k);
        sum += contrib;
        if contrib.abs() <= 1e-17 * sum.abs() || contrib == 0.0 {
            return -sum;
        }
        term *= -x2 / ((2.0 * k + 1.0) * (2.0 * k + 2.0));
        k += 1.0;
    }
}

/// `E₁(ix)·e^{ix}` by the modified Lentz continued fraction; returns
/// `(Ci(x), Si(x))`.
fn cisi_continued_fraction(x: f64) -> (f64, f64) {
    const TINY: f64 = 1e-300;
    const TOL: f64 = 1e-16;
    const MAX_ITER: usize = 10_000;
    let one = Complex64::new(1.0, 0.0);
    let mut b = Complex64::new(1.0, x);
    let mut c = Complex64::new(1.0 / TINY, 0.0);
    let mut d = one / b;
    let mut h = d;
    for i in 2..MAX_ITER {
        let a = -(((i - 1) * (i - 1)) as f64);
        b += 2.0;
        d = one / (d * a + b);
        c = b + Complex64::new(a, 0.0) / c;
        let del = c * d;
        h *= del;
        if (del.re - 1.0).abs() + del.im.abs() < TOL {
            break;
        }
    }
    h *= Complex64::new(math::cos(x), -math::sin(x));
    (-h.re, FRAC_PI_2 + h.im)
}

/// Sine integral `Si(x) = ∫₀ˣ sin t / t dt`; odd in `x`.
pub fn si(x: f64) -> f64 {
    if x < 0.0 {
        return -si(-x);
    }
    if x == 0.0 {
        0.0
    } else if x <= SERIES_CUTOFF {
        si_series(x)
    } else {
        cisi_continued_fraction(x).1
    }
}

/// Cosine integral `Ci(x) = γ + ln x + ∫₀ˣ (cos t − 1)/t dt` for `x > 0`.
pub fn ci(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::InvalidArgument("ci requires x > 0"));
    }
    Ok(ci_unchecked(x))
}

fn ci_unchecked(x: f64) -> f64 {
    if x <= SERIES_CUTOFF {
        EULER_GAMMA + math::ln(x) - cin_series(x)
    } else {
        cisi_continued_fraction(x).0
    }
}

/// Both branches at `x`, `(series, continued fraction)`, for `(Si, Ci)`.
/// Exposed so the seam between representations can be checked.
pub fn si_ci_branches(x: f64) -> ((f64, f64), (f64, f64)) {
    let (ci_cf, si_cf) = cisi_continued_fraction(x);
    let ci_ser = EULER_GAMMA + math::ln(x) - cin_series(x);
    ((si_series(x), si_cf), (ci_ser, ci_cf))
}

/// The two inner integrals of the `π²/12` identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Inner {
    /// `F(u) = ∫₀ᵘ sin²v / v dv = ½(γ + ln 2u − Ci(2u))`, grows like `½ ln u`.
    F,
    /// `G(u) = ∫₀ᵘ sin v cos v / v dv = ½ Si(2u)`, tends to `π/4`.
    G,
}

impl Inner {
    /// Integrand whose prefix integral this is.
    pub fn integrand(self) -> Kernel {
        match self {
            Inner::F => Kernel::Sin2Over,
            Inner::G => Kernel::SinCosOver,
        }
    }

    #[inline]
    pub fn eval(self, u: f64) -> f64 {
        match self {
            Inner::F => {
                let x = 2.0 * u;
                if x <= 0.0 {
                    0.0
                } else if x < CIN_SERIES_CUTOFF {
                    0.5 * cin_series(x)
                } else {
                    0.5 * (EULER_GAMMA + math::ln(x) - ci_unchecked(x))
                }
            }
            Inner::G => 0.5 * si(2.0 * u),
        }
    }
}

/// Closed form of `F` or `G` at `u ≥ 0`.
pub fn inner_closed(which: Inner, u: f64) -> Result<f64> {
    if !(u >= 0.0) {
        return Err(Error::InvalidArgument("inner integral requires u >= 0"));
    }
    Ok(which.eval(u))
}

/// Largest tier accepted by [`closed_form`].
pub const MAX_TIER: u32 = 20;

/// `Iₙ = 2/n!·(π/4)ⁿ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedForm {
    pub n: u32,
    pub value: f64,
}

impl ClosedForm {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 || n > MAX_TIER {
            return Err(Error::InvalidArgument("tier n must be within [1, 20]"));
        }
        let mut value = 2.0;
        for k in 1..=n {
            value *= FRAC_PI_4 / f64::from(k);
        }
        Ok(Self { n, value })
    }
}

pub fn closed_form(n: u32) -> Result<f64> {
    ClosedForm::new(n).map(|c| c.value)
}
