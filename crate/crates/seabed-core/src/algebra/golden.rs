use core::cmp::Ordering;
use core::fmt;

use super::{narrow, ArithmeticOverflow};

/// The golden ratio as a float, used only for embedding.
pub(crate) const PHI_F64: f64 = 1.618_033_988_749_895;

/// An element `a + bφ` of `Z[φ]`, with `φ² = φ + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct GoldenNumber {
    pub a: i64,
    pub b: i64,
}

impl GoldenNumber {
    pub const ZERO: GoldenNumber = GoldenNumber::new(0, 0);
    pub const ONE: GoldenNumber = GoldenNumber::new(1, 0);
    pub const PHI: GoldenNumber = GoldenNumber::new(0, 1);

    pub const fn new(a: i64, b: i64) -> Self {
        GoldenNumber { a, b }
    }

    pub const fn from_int(a: i64) -> Self {
        GoldenNumber { a, b: 0 }
    }

    pub fn checked_add(self, o: Self) -> Result<Self, ArithmeticOverflow> {
        let e = ArithmeticOverflow::new("golden add");
        Ok(GoldenNumber {
            a: self.a.checked_add(o.a).ok_or(e)?,
            b: self.b.checked_add(o.b).ok_or(e)?,
        })
    }

    pub fn checked_sub(self, o: Self) -> Result<Self, ArithmeticOverflow> {
        let e = ArithmeticOverflow::new("golden sub");
        Ok(GoldenNumber {
            a: self.a.checked_sub(o.a).ok_or(e)?,
            b: self.b.checked_sub(o.b).ok_or(e)?,
        })
    }

    pub fn checked_neg(self) -> Result<Self, ArithmeticOverflow> {
        let e = ArithmeticOverflow::new("golden neg");
        Ok(GoldenNumber {
            a: self.a.checked_neg().ok_or(e)?,
            b: self.b.checked_neg().ok_or(e)?,
        })
    }

    /// `(a + bφ)(c + dφ) = (ac + bd) + (ad + bc + bd)φ`.
    pub fn checked_mul(self, o: Self) -> Result<Self, ArithmeticOverflow> {
        let (a, b, c, d) = (self.a as i128, self.b as i128, o.a as i128, o.b as i128);
        let bd = b * d;
        Ok(GoldenNumber {
            a: narrow(a * c + bd, "golden mul")?,
            b: narrow(a * d + b * c + bd, "golden mul")?,
        })
    }

    pub fn checked_scale(self, k: i64) -> Result<Self, ArithmeticOverflow> {
        self.checked_mul(GoldenNumber::from_int(k))
    }

    /// `φ^n` by the recurrence `φ^(n+1) = φ^n · φ`.
    pub fn phi_pow(n: u32) -> Result<Self, ArithmeticOverflow> {
        let mut r = GoldenNumber::ONE;
        for _ in 0..n {
            // (a + bφ)φ = b + (a + b)φ
            r = GoldenNumber {
                a: r.b,
                b: r.a.checked_add(r.b).ok_or(ArithmeticOverflow::new("phi pow"))?,
            };
        }
        Ok(r)
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// Exact sign of `a + bφ`.
    ///
    /// `2(a + bφ) = x + y√5` with `x = 2a + b`, `y = b`; when the signs of
    /// `x` and `y` differ the comparison `x² ≶ 5y²` decides.
    pub fn signum(self) -> i32 {
        sign_of(self.a as i128, self.b as i128)
    }

    pub fn to_f64(self) -> f64 {
        self.a as f64 + self.b as f64 * PHI_F64
    }
}

fn sign_of(a: i128, b: i128) -> i32 {
    let x = 2 * a + b;
    let y = b;
    let sx = x.signum() as i32;
    let sy = y.signum() as i32;
    if sx == 0 {
        return sy;
    }
    if sy == 0 || sx == sy {
        return sx;
    }
    // |x| and |y| are below 2^65, so the squares fit comfortably in i128.
    let lhs = x * x;
    let rhs = 5 * y * y;
    match lhs.cmp(&rhs) {
        Ordering::Greater => sx,
        Ordering::Less => sy,
        Ordering::Equal => 0,
    }
}

impl Ord for GoldenNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        let s = sign_of(
            self.a as i128 - other.a as i128,
            self.b as i128 - other.b as i128,
        );
        s.cmp(&0)
    }
}

impl PartialOrd for GoldenNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GoldenNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b < 0 {
            write!(f, "{}-{}φ", self.a, -self.b)
        } else {
            write!(f, "{}+{}φ", self.a, self.b)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_squared_reduces() {
        let p = GoldenNumber::PHI;
        assert_eq!(p.checked_mul(p).unwrap(), GoldenNumber::new(1, 1));
    }

    #[test]
    fn phi_cubed_and_sixth() {
        assert_eq!(GoldenNumber::phi_pow(0).unwrap(), GoldenNumber::ONE);
        assert_eq!(GoldenNumber::phi_pow(3).unwrap(), GoldenNumber::new(1, 2));
        assert_eq!(GoldenNumber::phi_pow(6).unwrap(), GoldenNumber::new(5, 8));
        let p = GoldenNumber::PHI;
        let cube = p.checked_mul(p).unwrap().checked_mul(p).unwrap();
        assert_eq!(cube, GoldenNumber::new(1, 2));
    }

    #[test]
    fn phi_pow_64_fits_and_overflow_is_reported() {
        let r = GoldenNumber::phi_pow(64).unwrap();
        assert_eq!(r, GoldenNumber::new(6_557_470_319_842, 10_610_209_857_723));
        assert!(GoldenNumber::phi_pow(100).is_err());
        let big = GoldenNumber::new(i64::MAX, 0);
        assert!(big.checked_add(GoldenNumber::ONE).is_err());
        assert!(big.checked_mul(GoldenNumber::PHI).is_ok());
        assert!(big.checked_mul(GoldenNumber::new(2, 0)).is_err());
    }

    #[test]
    fn sign_is_exact_near_zero() {
        // F(n+1) - F(n)φ alternates in sign and shrinks like φ^-n.
        let (mut f0, mut f1) = (0i64, 1i64);
        for n in 1..80 {
            let g = GoldenNumber::new(f1, -f0);
            let expected = if n % 2 == 1 { 1 } else { -1 };
            assert_eq!(g.signum(), expected, "n = {n}");
            let f2 = f0 + f1;
            f0 = f1;
            f1 = f2;
        }
        assert_eq!(GoldenNumber::ZERO.signum(), 0);
    }

    #[test]
    fn ordering_matches_floats() {
        let xs = [
            GoldenNumber::new(3, -2),
            GoldenNumber::new(-1, 1),
            GoldenNumber::new(0, 0),
            GoldenNumber::new(5, 8),
            GoldenNumber::new(-8, 5),
        ];
        for x in xs {
            for y in xs {
                let fc = x.to_f64().partial_cmp(&y.to_f64()).unwrap();
                assert_eq!(x.cmp(&y), fc, "{x} vs {y}");
            }
        }
    }
}
