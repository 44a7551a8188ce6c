use core::fmt;
use core::ops::{Add, Neg, Sub};

use super::{narrow, ArithmeticOverflow, GoldenNumber};

/// `cos(kπ/5)` for `k = 0..4`.
pub const COS: [f64; 4] = [
    1.0,
    0.809_016_994_374_947_4,
    0.309_016_994_374_947_45,
    -0.309_016_994_374_947_45,
];
/// `sin(kπ/5)` for `k = 0..4`.
pub const SIN: [f64; 4] = [
    0.0,
    0.587_785_252_292_473_1,
    0.951_056_516_295_153_5,
    0.951_056_516_295_153_5,
];

/// `c0 + c1ζ + c2ζ² + c3ζ³` with `ζ = exp(iπ/5)`.
///
/// Products are reduced with `ζ⁴ = ζ³ − ζ² + ζ − 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LatticePoint {
    pub c: [i64; 4],
}

const UNITS: [[i64; 4]; 10] = [
    [1, 0, 0, 0],
    [0, 1, 0, 0],
    [0, 0, 1, 0],
    [0, 0, 0, 1],
    [-1, 1, -1, 1],
    [-1, 0, 0, 0],
    [0, -1, 0, 0],
    [0, 0, -1, 0],
    [0, 0, 0, -1],
    [1, -1, 1, -1],
];

impl LatticePoint {
    pub const ZERO: LatticePoint = LatticePoint::new(0, 0, 0, 0);
    pub const ONE: LatticePoint = LatticePoint::new(1, 0, 0, 0);
    pub const ZETA: LatticePoint = LatticePoint::new(0, 1, 0, 0);
    /// `φ = 1 + ζ² − ζ³`.
    pub const PHI: LatticePoint = LatticePoint::new(1, 0, 1, -1);

    pub const fn new(c0: i64, c1: i64, c2: i64, c3: i64) -> Self {
        LatticePoint { c: [c0, c1, c2, c3] }
    }

    /// `ζ^k`, `k` taken mod 10.
    pub const fn unit(k: i64) -> Self {
        LatticePoint { c: UNITS[k.rem_euclid(10) as usize] }
    }

    /// The exponent `k` with `self = ζ^k`, if `self` is a tenth root of unity.
    pub fn unit_index(&self) -> Option<u8> {
        UNITS.iter().position(|u| *u == self.c).map(|k| k as u8)
    }

    pub fn is_zero(&self) -> bool {
        self.c == [0; 4]
    }

    pub fn checked_add(self, o: Self) -> Result<Self, ArithmeticOverflow> {
        let mut c = [0i64; 4];
        for (i, out) in c.iter_mut().enumerate() {
            *out = self.c[i]
                .checked_add(o.c[i])
                .ok_or(ArithmeticOverflow::new("lattice add"))?;
        }
        Ok(LatticePoint { c })
    }

    pub fn checked_sub(self, o: Self) -> Result<Self, ArithmeticOverflow> {
        let mut c = [0i64; 4];
        for (i, out) in c.iter_mut().enumerate() {
            *out = self.c[i]
                .checked_sub(o.c[i])
                .ok_or(ArithmeticOverflow::new("lattice sub"))?;
        }
        Ok(LatticePoint { c })
    }

    pub fn checked_neg(self) -> Result<Self, ArithmeticOverflow> {
        LatticePoint::ZERO.checked_sub(self)
    }

    pub fn checked_scale(self, k: i64) -> Result<Self, ArithmeticOverflow> {
        let mut c = [0i64; 4];
        for (i, out) in c.iter_mut().enumerate() {
            *out = self.c[i]
                .checked_mul(k)
                .ok_or(ArithmeticOverflow::new("lattice scale"))?;
        }
        Ok(LatticePoint { c })
    }

    /// Ring product in `Z[ζ]`.
    pub fn checked_mul(self, o: Self) -> Result<Self, ArithmeticOverflow> {
        let mut r = [0i128; 7];
        for i in 0..4 {
            for j in 0..4 {
                r[i + j] += self.c[i] as i128 * o.c[j] as i128;
            }
        }
        for k in (4..7).rev() {
            let v = r[k];
            r[k] = 0;
            r[k - 1] += v;
            r[k - 2] -= v;
            r[k - 3] += v;
            r[k - 4] -= v;
        }
        Ok(LatticePoint {
            c: [
                narrow(r[0], "lattice mul")?,
                narrow(r[1], "lattice mul")?,
                narrow(r[2], "lattice mul")?,
                narrow(r[3], "lattice mul")?,
            ],
        })
    }

    /// Multiplication by `ζ^k`.
    pub fn checked_rotate(self, k: i64) -> Result<Self, ArithmeticOverflow> {
        let mut p = self;
        for _ in 0..k.rem_euclid(10) {
            let [c0, c1, c2, c3] = p.c;
            let e = ArithmeticOverflow::new("rotate");
            p.c = [
                c3.checked_neg().ok_or(e)?,
                c0.checked_add(c3).ok_or(e)?,
                c1.checked_sub(c3).ok_or(e)?,
                c2.checked_add(c3).ok_or(e)?,
            ];
        }
        Ok(p)
    }

    /// Multiplication by `ζ^k`.
    ///
    /// # Panics
    /// On coordinate overflow, which needs coordinates near `i64::MAX / 2`.
    pub fn rotate(self, k: i64) -> Self {
        self.checked_rotate(k).expect("lattice rotation overflow")
    }

    /// Complex conjugation (reflection in the real axis).
    pub fn checked_conj(self) -> Result<Self, ArithmeticOverflow> {
        let mut acc = LatticePoint::ZERO;
        for (k, &ck) in self.c.iter().enumerate() {
            let term = LatticePoint::unit(10 - k as i64).checked_scale(ck)?;
            acc = acc.checked_add(term)?;
        }
        Ok(acc)
    }

    /// `s · self` using `φ = 1 + ζ² − ζ³`.
    pub fn scale_golden(self, s: GoldenNumber) -> Result<Self, ArithmeticOverflow> {
        let phi_p = self.checked_mul(LatticePoint::PHI)?;
        self.checked_scale(s.a)?
            .checked_add(phi_p.checked_scale(s.b)?)
    }

    /// Float coordinates, for rendering and diagnostics.
    pub fn embed(&self) -> (f64, f64) {
        let mut x = 0.0;
        let mut y = 0.0;
        for k in 0..4 {
            x += self.c[k] as f64 * COS[k];
            y += self.c[k] as f64 * SIN[k];
        }
        (x, y)
    }

    /// `Im(conj(self) · o) / sin 36°`, exactly.
    ///
    /// This is the signed parallelogram area in units of the thin rhomb.
    pub fn cross(self, o: Self) -> Result<GoldenNumber, ArithmeticOverflow> {
        let w = self.checked_conj()?.checked_mul(o)?;
        let [_, c1, c2, c3] = w.c;
        let s = c2
            .checked_add(c3)
            .ok_or(ArithmeticOverflow::new("cross"))?;
        Ok(GoldenNumber::new(c1, s))
    }

    /// `2 Re(conj(self) · o)`, exactly.
    pub fn dot2(self, o: Self) -> Result<GoldenNumber, ArithmeticOverflow> {
        let w = self.checked_conj()?.checked_mul(o)?;
        let [c0, c1, c2, c3] = w.c;
        let a = 2 * c0 as i128 - c2 as i128 + c3 as i128;
        let b = c1 as i128 + c2 as i128 - c3 as i128;
        Ok(GoldenNumber::new(narrow(a, "dot")?, narrow(b, "dot")?))
    }
}

impl Add for LatticePoint {
    type Output = LatticePoint;
    /// # Panics
    /// On overflow; use [`LatticePoint::checked_add`] for untrusted input.
    fn add(self, o: Self) -> Self {
        self.checked_add(o).expect("lattice add overflow")
    }
}

impl Sub for LatticePoint {
    type Output = LatticePoint;
    /// # Panics
    /// On overflow; use [`LatticePoint::checked_sub`] for untrusted input.
    fn sub(self, o: Self) -> Self {
        self.checked_sub(o).expect("lattice sub overflow")
    }
}

impl Neg for LatticePoint {
    type Output = LatticePoint;
    fn neg(self) -> Self {
        self.checked_neg().expect("lattice neg overflow")
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.c;
        write!(f, "({a},{b},{c},{d})")
    }
}
