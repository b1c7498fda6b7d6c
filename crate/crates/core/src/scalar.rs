//! Exact scalar arithmetic.
//!
//! Everything that has to hold as an identity is computed over the Gaussian
//! rationals `Q(i)`: a complex number with `BigRational` real and imaginary
//! parts. Groups whose characters are not Gaussian rationals (e.g. `Z/3`)
//! carry their character values rounded to a fixed number of decimal digits
//! and are compared with a tolerance instead of exact equality.

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A Gaussian rational.
pub type Cx = Complex<BigRational>;

/// Default number of decimal digits kept for irrational character values.
pub const DEFAULT_PRECISION: u32 = 64;

/// Default comparison tolerance exponent for approximate models (`1e-30`).
pub const DEFAULT_TOLERANCE_EXP: u32 = 30;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn cx(re: BigRational, im: BigRational) -> Cx {
    Complex::new(re, im)
}

pub fn cx_int(n: i64) -> Cx {
    Complex::new(int(n), BigRational::zero())
}

pub fn cx_real(re: BigRational) -> Cx {
    Complex::new(re, BigRational::zero())
}

/// `z * conj(z)` as a rational.
pub fn norm_sqr(z: &Cx) -> BigRational {
    &z.re * &z.re + &z.im * &z.im
}

/// Rising factorial `(a)_n = a (a+1) ... (a+n-1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: &BigRational, n: usize) -> BigRational {
    let mut acc = BigRational::one();
    for k in 0..n {
        acc *= a + int(k as i64);
    }
    acc
}

pub fn pochhammer_cx(a: &Cx, n: usize) -> Cx {
    let mut acc = Cx::one();
    for k in 0..n {
        acc *= a + cx_int(k as i64);
    }
    acc
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn factorial_u128(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Integer power with a possibly negative exponent. Panics on `0^negative`.
pub fn powi(base: &BigRational, exp: i64) -> BigRational {
    let p = num_traits::pow(base.clone(), exp.unsigned_abs() as usize);
    if exp < 0 {
        p.recip()
    } else {
        p
    }
}

pub fn powu_cx(base: &Cx, exp: usize) -> Cx {
    num_traits::pow(base.clone(), exp)
}

pub fn is_real(z: &Cx) -> bool {
    z.im.is_zero()
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Huge numerator/denominator pairs can overflow the direct conversion.
        let digits = 40;
        let scaled = (r * BigRational::from_integer(BigInt::from(10u32).pow(digits))).round();
        scaled.to_integer().to_f64().unwrap_or(f64::NAN) / 10f64.powi(digits as i32)
    })
}

/// `10^-exp` as a rational.
pub fn ten_pow_neg(exp: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10u32).pow(exp))
}

/// Distance used for approximate comparisons: the max of the absolute
/// differences of real and imaginary parts.
pub fn cx_distance(a: &Cx, b: &Cx) -> BigRational {
    let dr = (&a.re - &b.re).abs();
    let di = (&a.im - &b.im).abs();
    if dr > di {
        dr
    } else {
        di
    }
}

/// Equality of scalars, exact when `tol` is `None`.
pub fn approx_eq(a: &Cx, b: &Cx, tol: Option<&BigRational>) -> bool {
    match tol {
        None => a == b,
        Some(t) => cx_distance(a, b) <= *t,
    }
}

pub fn approx_eq_real(a: &BigRational, b: &BigRational, tol: Option<&BigRational>) -> bool {
    match tol {
        None => a == b,
        Some(t) => (a - b).abs() <= *t,
    }
}

/// Renders a rational as `p/q`, or `p` when the denominator is one.
pub fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Renders a Gaussian rational as `p/q` when real, otherwise `a+bi`.
pub fn fmt_cx(z: &Cx) -> String {
    if z.im.is_zero() {
        fmt_rat(&z.re)
    } else if z.re.is_zero() {
        format!("{}i", fmt_rat(&z.im))
    } else if z.im.is_negative() {
        format!("{}-{}i", fmt_rat(&z.re), fmt_rat(&-&z.im))
    } else {
        format!("{}+{}i", fmt_rat(&z.re), fmt_rat(&z.im))
    }
}

/// Decimal rendering with `digits` digits after the point (round half away
/// from zero).
pub fn fmt_decimal(r: &BigRational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (r * BigRational::from_integer(scale.clone())).round().to_integer();
    let negative = scaled.is_negative();
    let (int_part, frac_part) = scaled.abs().div_rem(&scale);
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    if digits > 0 {
        let frac = frac_part.to_string();
        out.push('.');
        for _ in frac.len()..digits as usize {
            out.push('0');
        }
        out.push_str(&frac);
    }
    out
}

/// Parses `"p/q"`, an integer, or a decimal literal such as `-0.125` or
/// `1.5e-3` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad_number(s))?;
        let q: BigInt = q.trim().parse().map_err(|_| bad_number(s))?;
        if q.is_zero() {
            return Err(Error::Input(format!("zero denominator in `{s}`")));
        }
        return Ok(BigRational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i64 = s[pos + 1..].parse().map_err(|_| bad_number(s))?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad_number(s));
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad_number(s));
    }
    let digits = format!("{whole}{frac}");
    let numer: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| bad_number(s))?
    };
    let shift = exponent - frac.len() as i64;
    let ten = BigRational::from_integer(BigInt::from(10));
    let mut value = BigRational::from_integer(numer) * powi(&ten, shift);
    if negative {
        value = -value;
    }
    Ok(value)
}

fn bad_number(s: &str) -> Error {
    Error::Input(format!("cannot parse `{s}` as an exact number"))
}

/// Parses a JSON scalar: a number, a `"p/q"` string, or a `[re, im]` pair.
pub fn parse_cx_json(v: &serde_json::Value) -> Result<Cx> {
    use serde_json::Value;
    match v {
        Value::Number(n) => Ok(cx_real(parse_rational(&n.to_string())?)),
        Value::String(s) => Ok(cx_real(parse_rational(s)?)),
        Value::Array(items) if items.len() == 2 => {
            let re = parse_cx_json(&items[0])?;
            let im = parse_cx_json(&items[1])?;
            if !is_real(&re) || !is_real(&im) {
                return Err(Error::Input("nested complex pair".into()));
            }
            Ok(cx(re.re, im.re))
        }
        other => Err(Error::Input(format!("expected a number, \"p/q\" or [re, im], got {other}"))),
    }
}

/// JSON rendering of a scalar as `[re, im]` with exact `p/q` strings.
pub fn cx_to_json(z: &Cx) -> serde_json::Value {
    serde_json::json!([fmt_rat(&z.re), fmt_rat(&z.im)])
}

// ---------------------------------------------------------------------------
// High-precision trigonometry for roots of unity.

/// Fixed-point value `pi * 10^digits` (Machin's formula).
fn pi_scaled(digits: u32) -> BigInt {
    let scale = BigInt::from(10u32).pow(digits);
    // pi = 16 atan(1/5) - 4 atan(1/239)
    let atan_inv = |x: u32| -> BigInt {
        let x = BigInt::from(x);
        let x2 = &x * &x;
        let mut term = &scale / &x;
        let mut sum = term.clone();
        let mut k = 1u32;
        loop {
            term = &term / &x2;
            if term.is_zero() {
                break;
            }
            let t = &term / BigInt::from(2 * k + 1);
            if k % 2 == 1 {
                sum -= t;
            } else {
                sum += t;
            }
            k += 1;
        }
        sum
    };
    atan_inv(5) * 16 - atan_inv(239) * 4
}

/// `(cos, sin)` of `theta_scaled / 10^digits`, by Taylor series in fixed point.
fn cos_sin_scaled(theta: &BigInt, digits: u32) -> (BigInt, BigInt) {
    let scale = BigInt::from(10u32).pow(digits);
    let mut cos = scale.clone();
    let mut sin = BigInt::zero();
    let mut term = scale.clone();
    let mut k = 1u32;
    loop {
        term = &term * theta / &scale / BigInt::from(k);
        if term.is_zero() {
            break;
        }
        match k % 4 {
            1 => sin += &term,
            2 => cos -= &term,
            3 => sin -= &term,
            _ => cos += &term,
        }
        k += 1;
    }
    (cos, sin)
}

/// `exp(2 pi i k / m)` rounded to `precision` decimal digits. Exact when the
/// value lies in `Q(i)` (i.e. `m / gcd(k, m)` divides 4).
pub fn root_of_unity(k: i64, m: u64, precision: u32) -> Cx {
    assert!(m > 0, "root of unity of order zero");
    let k = k.rem_euclid(m as i64) as u64;
    let g = k.gcd(&m);
    let (k, m) = (k / g, m / g);
    match (k, m) {
        (0, 1) => return cx_int(1),
        (1, 2) => return cx_int(-1),
        (1, 4) => return cx(int(0), int(1)),
        (3, 4) => return cx(int(0), int(-1)),
        _ => {}
    }
    let guard = 10;
    let digits = precision + guard;
    let pi = pi_scaled(digits);
    let mut theta = &pi * BigInt::from(2 * k) / BigInt::from(m);
    let scale = BigInt::from(10u32).pow(digits);
    // Reduce to |theta| <= pi for faster convergence.
    if theta > pi {
        theta -= &pi * 2;
    }
    let (c, s) = cos_sin_scaled(&theta, digits);
    let round = |v: BigInt| -> BigRational {
        let r = BigRational::new(v, scale.clone());
        let out_scale = BigInt::from(10u32).pow(precision);
        let rounded = (r * BigRational::from_integer(out_scale.clone())).round();
        rounded / BigRational::from_integer(out_scale)
    };
    cx(round(c), round(s))
}
