//! Complex amplitudes with tolerance-based equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

/// Absolute tolerance used for every scalar comparison in the crate.
pub const EPSILON: f64 = 1e-9;

/// A complex scalar `re + im·i`.
///
/// Equality is componentwise within [`EPSILON`]; use [`Scalar::total_cmp`]
/// when a total order is needed (sorting).
#[derive(Clone, Copy, Debug, Default)]
pub struct Scalar {
    pub re: f64,
    pub im: f64,
}

impl Scalar {
    pub const ZERO: Scalar = Scalar { re: 0.0, im: 0.0 };
    pub const ONE: Scalar = Scalar { re: 1.0, im: 0.0 };
    pub const I: Scalar = Scalar { re: 0.0, im: 1.0 };

    pub const fn new(re: f64, im: f64) -> Self {
        Scalar { re, im }
    }

    pub const fn real(re: f64) -> Self {
        Scalar { re, im: 0.0 }
    }

    pub fn conj(self) -> Self {
        Scalar::new(self.re, -self.im)
    }

    /// `|z|²`
    pub fn norm_sqr(self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    pub fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn approx_eq(self, other: Scalar) -> bool {
        (self.re - other.re).abs() < EPSILON && (self.im - other.im).abs() < EPSILON
    }

    pub fn is_zero(self) -> bool {
        self.approx_eq(Scalar::ZERO)
    }

    pub fn is_one(self) -> bool {
        self.approx_eq(Scalar::ONE)
    }

    pub fn is_real(self) -> bool {
        self.im.abs() < EPSILON
    }

    /// Total order by `(re, im)` on the raw floats.
    pub fn total_cmp(&self, other: &Scalar) -> Ordering {
        self.re
            .total_cmp(&other.re)
            .then_with(|| self.im.total_cmp(&other.im))
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.approx_eq(*other)
    }
}

impl From<f64> for Scalar {
    fn from(re: f64) -> Self {
        Scalar::real(re)
    }
}

impl From<Complex64> for Scalar {
    fn from(c: Complex64) -> Self {
        Scalar::new(c.re, c.im)
    }
}

impl From<Scalar> for Complex64 {
    fn from(s: Scalar) -> Self {
        s.to_complex()
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        Scalar::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        Scalar::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        Scalar::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, o: Scalar) -> Scalar {
        (self.to_complex() / o.to_complex()).into()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re, -self.im)
    }
}

// Constants printed by name; each parses back through the scalar grammar.
const NAMED: &[(&str, f64)] = &[
    ("1/sqrt2", std::f64::consts::FRAC_1_SQRT_2),
    ("sqrt2", std::f64::consts::SQRT_2),
    ("sqrt3/2", 0.866_025_403_784_438_6),
    ("1/sqrt3", 0.577_350_269_189_625_8),
    ("sqrt3", 1.732_050_807_568_877_2),
    ("1/sqrt5", 0.447_213_595_499_958),
    ("2/sqrt5", 0.894_427_190_999_916),
    ("1/sqrt10", 0.316_227_766_016_837_94),
    ("2/sqrt10", 0.632_455_532_033_675_9),
    ("3/sqrt10", 0.948_683_298_050_513_8),
    ("1/2", 0.5),
    ("1/4", 0.25),
    ("3/4", 0.75),
];

fn fmt_real(x: f64) -> String {
    let r = x.round();
    if (x - r).abs() < 1e-12 {
        return format!("{}", r as i64);
    }
    for (name, v) in NAMED {
        if (x - v).abs() < 1e-12 {
            return (*name).to_string();
        }
        if (x + v).abs() < 1e-12 {
            return format!("-{name}");
        }
    }
    format!("{x}")
}

fn fmt_imag(y: f64) -> String {
    match fmt_real(y).as_str() {
        "1" => "i".to_string(),
        "-1" => "-i".to_string(),
        s => format!("{s}i"),
    }
}

impl Scalar {
    /// True when the printed form needs no parentheses before a `.`.
    pub(crate) fn is_plain_natural(self) -> bool {
        self.is_real() && self.re >= -1e-12 && (self.re - self.re.round()).abs() < 1e-12
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re_zero = self.re.abs() < 1e-12;
        let im_zero = self.im.abs() < 1e-12;
        match (re_zero, im_zero) {
            (_, true) => f.write_str(&fmt_real(self.re)),
            (true, false) => f.write_str(&fmt_imag(self.im)),
            (false, false) => {
                let im = fmt_imag(self.im.abs());
                let sign = if self.im < 0.0 { '-' } else { '+' };
                write!(f, "{}{}{}", fmt_real(self.re), sign, im)
            }
        }
    }
}
