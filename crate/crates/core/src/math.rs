//! Elementary functions routed through `libm` so results do not depend on
//! the platform's C library.

#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub fn ln_1p(x: f64) -> f64 {
    libm::log1p(x)
}

#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub fn expm1(x: f64) -> f64 {
    libm::expm1(x)
}

#[inline]
pub fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

/// `x^p` by repeated squaring.
pub fn powi(mut x: f64, mut p: u32) -> f64 {
    let mut r = 1.0;
    while p > 0 {
        if p & 1 == 1 {
            r *= x;
        }
        x *= x;
        p >>= 1;
    }
    r
}

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn sinh(x: f64) -> f64 {
    libm::sinh(x)
}

#[inline]
pub fn floor(x: f64) -> f64 {
    libm::floor(x)
}

#[inline]
pub fn round(x: f64) -> f64 {
    libm::round(x)
}

pub const PI: f64 = core::f64::consts::PI;

/// `ln(sum_i exp(v_i))` without overflow. Returns `-inf` for an empty input.
pub fn log_sum_exp(values: &[f64]) -> f64 {
    let m = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return m;
    }
    let s: f64 = values.iter().map(|&v| exp(v - m)).sum();
    m + ln(s)
}

/// `ln(n!)` by direct summation; exact enough for the `n` used here (< 10^4).
pub fn ln_factorial(n: u64) -> f64 {
    (2..=n).map(|i| ln(i as f64)).sum()
}

/// Natural logarithm of a big unsigned integer.
pub fn ln_biguint(v: &num_bigint::BigUint) -> f64 {
    use num_traits::ToPrimitive;
    let bits = v.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 1000 {
        return ln(v.to_f64().unwrap_or(f64::INFINITY));
    }
    let shift = bits - 64;
    let top = (v >> shift).to_f64().unwrap_or(f64::INFINITY);
    ln(top) + shift as f64 * core::f64::consts::LN_2
}
