//! Scalar fields the linear algebra is generic over.
//!
//! Exact fields (`BigRational`, Gaussian rationals) decide zero-ness exactly;
//! floating point fields decide it against a relative tolerance.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex32, Complex64};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Whether arithmetic is exact; tolerances are ignored when it is.
    const EXACT: bool;

    fn from_i64(n: i64) -> Self;

    /// Converts a complex float, failing when the value is not representable
    /// (non-finite input, or a nonzero imaginary part for a real field).
    fn from_c64(z: Complex64) -> Option<Self>;

    fn to_c64(&self) -> Complex64;

    fn conj(&self) -> Self;

    /// Absolute value as `f64`; approximate for exact fields.
    fn magnitude(&self) -> f64;

    /// `self * conj(self)` as an element of the field.
    fn norm_sqr_s(&self) -> Self {
        self.clone() * self.conj()
    }

    /// Whether a squared norm is negligible against `scale_sq`.
    fn negligible_sq(norm_sq: &Self, scale_sq: f64, tol: f64) -> bool {
        if Self::EXACT {
            norm_sq.is_zero()
        } else {
            norm_sq.magnitude() <= tol * tol * scale_sq
        }
    }

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if Self::EXACT {
            self == other
        } else {
            let d = (self.clone() - other.clone()).magnitude();
            d <= tol * (1.0 + self.magnitude().max(other.magnitude()))
        }
    }
}

macro_rules! real_float {
    ($t:ty) => {
        impl Scalar for $t {
            const EXACT: bool = false;
            fn from_i64(n: i64) -> Self {
                n as $t
            }
            fn from_c64(z: Complex64) -> Option<Self> {
                (z.im == 0.0 && z.re.is_finite()).then_some(z.re as $t)
            }
            fn to_c64(&self) -> Complex64 {
                Complex64::new(*self as f64, 0.0)
            }
            fn conj(&self) -> Self {
                *self
            }
            fn magnitude(&self) -> f64 {
                (*self as f64).abs()
            }
        }
    };
}

real_float!(f32);
real_float!(f64);

impl Scalar for Complex64 {
    const EXACT: bool = false;
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn from_c64(z: Complex64) -> Option<Self> {
        (z.re.is_finite() && z.im.is_finite()).then_some(z)
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

impl Scalar for Complex32 {
    const EXACT: bool = false;
    fn from_i64(n: i64) -> Self {
        Complex32::new(n as f32, 0.0)
    }
    fn from_c64(z: Complex64) -> Option<Self> {
        (z.re.is_finite() && z.im.is_finite()).then_some(Complex32::new(z.re as f32, z.im as f32))
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re as f64, self.im as f64)
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn magnitude(&self) -> f64 {
        self.norm() as f64
    }
}

fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

impl Scalar for BigRational {
    const EXACT: bool = true;
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_c64(z: Complex64) -> Option<Self> {
        if z.im != 0.0 {
            return None;
        }
        BigRational::from_float(z.re)
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(self), 0.0)
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn magnitude(&self) -> f64 {
        rational_to_f64(self).abs()
    }
}

impl Scalar for Complex<BigRational> {
    const EXACT: bool = true;
    fn from_i64(n: i64) -> Self {
        Complex::new(BigRational::from_i64(n), BigRational::zero())
    }
    fn from_c64(z: Complex64) -> Option<Self> {
        Some(Complex::new(
            BigRational::from_float(z.re)?,
            BigRational::from_float(z.im)?,
        ))
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }
    fn magnitude(&self) -> f64 {
        self.to_c64().norm()
    }
}

/// `p/q` as an exact rational.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}
