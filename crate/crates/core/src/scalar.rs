//! Scalar abstraction shared by every numeric routine in the crate.
//!
//! All linear algebra, polynomial and LP code is written against [`Scalar`],
//! which is implemented for `f32` and `f64`. Default tolerances are tuned for
//! `f64`; with `f32` callers should pass looser [`Tolerance`](crate::Tolerance)
//! values.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;
use std::num::ParseFloatError;
use std::str::FromStr;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + Sum
    + Default
    + Debug
    + Display
    + LowerExp
    + FromStr<Err = ParseFloatError>
    + Send
    + Sync
    + 'static
{
    /// Significant decimal digits needed to round-trip a value through text.
    const DIGITS: usize;

    /// Converts an `f64` literal. Never fails for finite inputs.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("finite literal")
    }

    /// Converts an index or count.
    fn of(v: usize) -> Self {
        Self::from_usize(v).expect("representable count")
    }

    /// Decimal string with [`Scalar::DIGITS`] significant digits.
    fn to_decimal(self) -> String {
        format!("{:.*e}", Self::DIGITS - 1, self)
    }
}

impl Scalar for f32 {
    const DIGITS: usize = 9;
}

impl Scalar for f64 {
    const DIGITS: usize = 17;
}

/// `e^{2πi m/n}`, reduced mod `n`, exact at quarter turns.
pub fn root_of_unity<T: Scalar>(n: usize, m: i64) -> Complex<T> {
    let n_i = n as i64;
    let r = m.rem_euclid(n_i);
    if r == 0 {
        return Complex::new(T::one(), T::zero());
    }
    if (4 * r) % n_i == 0 {
        return match 4 * r / n_i {
            1 => Complex::new(T::zero(), T::one()),
            2 => Complex::new(-T::one(), T::zero()),
            _ => Complex::new(T::zero(), -T::one()),
        };
    }
    let theta = T::TAU() * T::of(r as usize) / T::of(n);
    Complex::new(theta.cos(), theta.sin())
}
