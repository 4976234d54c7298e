//! Scalar abstraction: everything numeric in this crate is generic over the
//! floating-point type through [`Real`].

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumCast};
use std::fmt::{Debug, Display, LowerExp};
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

/// Floating-point scalar for field evaluation and contour work (`f32` or `f64`).
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + NumCast
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
    /// Convert an `f64` constant into this scalar type.
    fn of(v: f64) -> Self {
        <Self as NumCast>::from(v).expect("constant representable in scalar type")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Build a complex value from `f64` parts.
pub fn complex<R: Real>(re: f64, im: f64) -> Complex<R> {
    Complex::new(R::of(re), R::of(im))
}

/// Principal argument normalized to (−π, π].
///
/// `atan2` returns −π for arguments on the negative real axis approached from
/// below; this maps that single value to +π so the branch is half-open.
pub fn principal_arg<R: Real>(z: Complex<R>) -> R {
    let a = z.arg();
    if a == -R::PI() {
        R::PI()
    } else {
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_conversion() {
        assert_eq!(f64::of(0.5), 0.5);
        assert_eq!(f32::of(0.5), 0.5f32);
    }

    #[test]
    fn arg_branch_is_half_open() {
        let z = Complex::new(-1.0f64, -0.0);
        assert_eq!(principal_arg(z), std::f64::consts::PI);
        let z = Complex::new(-1.0f64, 0.0);
        assert_eq!(principal_arg(z), std::f64::consts::PI);
    }
}
