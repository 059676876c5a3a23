//! Double-double floating point: an unevaluated sum `hi + lo` of two `f64`
//! with `|lo| <= ulp(hi) / 2`, giving a 106-bit significand.
//!
//! Only the operations needed by the numeric parts of the crate are provided.
//! Every elementary function is accurate to roughly `1e-31` relative on its
//! usual domain. The exponent range is the `f64` range; callers working with
//! quantities like `a^n t^a` at large `n` stay in the log domain.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

#[derive(Clone, Copy, Default, PartialEq)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, libm::fma(a, b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    pub const LN_2: Dd = Dd {
        hi: 6.931_471_805_599_453e-1,
        lo: 2.319_046_813_846_299_6e-17,
    };
    pub const PI: Dd = Dd {
        hi: 3.141_592_653_589_793,
        lo: 1.224_646_799_147_353_2e-16,
    };

    pub const fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    /// Builds a normalized value from two arbitrary doubles.
    pub fn from_parts(hi: f64, lo: f64) -> Dd {
        let (h, l) = two_sum(hi, lo);
        Dd { hi: h, lo: l }
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite()
    }

    pub fn is_nan(self) -> bool {
        self.hi.is_nan()
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    pub fn is_sign_negative(self) -> bool {
        self.hi < 0.0
    }

    /// Multiplies by `2^k` exactly (barring overflow or underflow).
    pub fn ldexp(self, k: i32) -> Dd {
        Dd {
            hi: libm::scalbn(self.hi, k),
            lo: libm::scalbn(self.lo, k),
        }
    }

    pub fn square(self) -> Dd {
        self * self
    }

    pub fn recip(self) -> Dd {
        Dd::ONE / self
    }

    pub fn powi(self, mut e: i64) -> Dd {
        if e == 0 {
            return Dd::ONE;
        }
        let invert = e < 0;
        e = e.abs();
        let mut base = self;
        let mut acc = Dd::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base.square();
            e >>= 1;
        }
        if invert {
            acc.recip()
        } else {
            acc
        }
    }

    pub fn sqrt(self) -> Dd {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 { Dd::ZERO } else { Dd::from_f64(f64::NAN) };
        }
        let x = 1.0 / libm::sqrt(self.hi);
        let ax = Dd::from_f64(self.hi * x);
        let corr = (self - ax.square()).hi * (x * 0.5);
        ax + Dd::from_f64(corr)
    }

    /// `e^r - 1` for `|r| <= ln 2 / 2`, by halving ten times and doubling back
    /// through `(e^x - 1)(e^x + 1) = e^{2x} - 1`.
    fn expm1_reduced(r: Dd) -> Dd {
        const HALVINGS: i32 = 10;
        let x = r.ldexp(-HALVINGS);
        let mut term = x;
        let mut sum = x;
        let mut k = 2.0;
        loop {
            term = term * x / Dd::from_f64(k);
            sum += term;
            if term.hi.abs() <= 1e-36 * sum.hi.abs() {
                break;
            }
            k += 1.0;
        }
        for _ in 0..HALVINGS {
            sum = sum * (sum + Dd::from_f64(2.0));
        }
        sum
    }

    pub fn exp(self) -> Dd {
        if self.is_nan() {
            return self;
        }
        if self.hi > 709.78 {
            return Dd::from_f64(f64::INFINITY);
        }
        if self.hi < -745.2 {
            return Dd::ZERO;
        }
        let k = libm::round(self.hi / Dd::LN_2.hi);
        let r = self - Dd::LN_2 * Dd::from_f64(k);
        (Dd::expm1_reduced(r) + Dd::ONE).ldexp(k as i32)
    }

    pub fn exp_m1(self) -> Dd {
        if self.hi.abs() <= 0.34 {
            Dd::expm1_reduced(self)
        } else {
            self.exp() - Dd::ONE
        }
    }

    pub fn ln(self) -> Dd {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 {
                Dd::from_f64(f64::NEG_INFINITY)
            } else {
                Dd::from_f64(f64::NAN)
            };
        }
        if !self.hi.is_finite() {
            return self;
        }
        // Scale into [1/√2, √2) so exp(-y) stays away from the subnormal
        // range, then Newton on exp(y) = x; each step doubles the correct bits.
        let (f, mut e) = libm::frexp(self.hi);
        if f < core::f64::consts::FRAC_1_SQRT_2 {
            e -= 1;
        }
        let m = self.ldexp(-e);
        let mut y = Dd::from_f64(libm::log(m.hi));
        for _ in 0..2 {
            y = y + m * (-y).exp() - Dd::ONE;
        }
        y + Dd::LN_2 * Dd::from_f64(e as f64)
    }

    pub fn ln_1p(self) -> Dd {
        if self.hi.abs() >= 0.25 {
            return (Dd::ONE + self).ln();
        }
        let mut y = Dd::from_f64(libm::log1p(self.hi));
        for _ in 0..2 {
            let em1 = y.exp_m1();
            y = y - (em1 - self) / (em1 + Dd::ONE);
        }
        y
    }

    pub fn powf(self, y: Dd) -> Dd {
        (self.ln() * y).exp()
    }

    /// Splits `x` as `m * 2^e` with `m` a double-double carrying the leading
    /// 120 bits of `x`.
    pub fn from_biguint_scaled(x: &BigUint) -> (Dd, i64) {
        let bits = x.bits();
        if bits == 0 {
            return (Dd::ZERO, 0);
        }
        let shift = bits.saturating_sub(120);
        let top: u128 = (x >> shift).to_u128().expect("at most 120 bits");
        let hi = top as f64;
        let diff = top as i128 - hi as u128 as i128;
        (Dd::from_parts(hi, diff as f64), shift as i64)
    }

    pub fn from_bigint(x: &BigInt) -> Dd {
        let (m, e) = Dd::from_biguint_scaled(x.magnitude());
        let v = scale(m, e);
        if x.sign() == Sign::Minus {
            -v
        } else {
            v
        }
    }

    pub fn from_rational(r: &BigRational) -> Dd {
        if r.numer().is_zero() {
            return Dd::ZERO;
        }
        let (mn, en) = Dd::from_biguint_scaled(r.numer().magnitude());
        let (md, ed) = Dd::from_biguint_scaled(r.denom().magnitude());
        let v = scale(mn / md, en - ed);
        if r.numer().sign() == Sign::Minus {
            -v
        } else {
            v
        }
    }

    /// Natural logarithm of a positive big integer, without materializing it
    /// as a float.
    pub fn ln_biguint(x: &BigUint) -> Dd {
        let (m, e) = Dd::from_biguint_scaled(x);
        m.ln() + Dd::LN_2 * Dd::from_f64(e as f64)
    }

    /// Natural logarithm of a positive rational.
    pub fn ln_rational(r: &BigRational) -> Dd {
        debug_assert!(r.numer().sign() == Sign::Plus);
        Dd::ln_biguint(r.numer().magnitude()) - Dd::ln_biguint(r.denom().magnitude())
    }
}

fn scale(m: Dd, e: i64) -> Dd {
    let e = e.clamp(i32::MIN as i64 / 2, i32::MAX as i64 / 2) as i32;
    m.ldexp(e)
}

/// `ln(exp(a) + exp(b))` without overflow.
pub fn log_add_exp(a: Dd, b: Dd) -> Dd {
    if a.hi == f64::NEG_INFINITY {
        return b;
    }
    if b.hi == f64::NEG_INFINITY {
        return a;
    }
    let (big, small) = if a >= b { (a, b) } else { (b, a) };
    big + (small - big).exp().ln_1p()
}

impl fmt::Debug for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dd({:e} + {:e})", self.hi, self.lo)
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_f64(), f)
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi)? {
            Ordering::Equal => self.lo.partial_cmp(&other.lo),
            ord => Some(ord),
        }
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Dd {
        Dd::from_f64(x)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b * Dd::from_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * Dd::from_f64(q2);
        let q3 = r.hi / b.hi;
        let (q1, q2) = quick_two_sum(q1, q2);
        Dd { hi: q1, lo: q2 } + Dd::from_f64(q3)
    }
}

impl AddAssign for Dd {
    fn add_assign(&mut self, b: Dd) {
        *self = *self + b;
    }
}

impl SubAssign for Dd {
    fn sub_assign(&mut self, b: Dd) {
        *self = *self - b;
    }
}

impl MulAssign for Dd {
    fn mul_assign(&mut self, b: Dd) {
        *self = *self * b;
    }
}
