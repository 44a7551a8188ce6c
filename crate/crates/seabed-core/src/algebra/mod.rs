//! Exact arithmetic: the golden ring `Z[φ]` and the cyclotomic lattice `Z[ζ]`.

mod golden;
mod lattice;

pub use golden::GoldenNumber;
pub use lattice::{LatticePoint, COS, SIN};

/// Checked integer arithmetic ran out of range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("integer overflow in {op}")]
pub struct ArithmeticOverflow {
    pub op: &'static str,
}

impl ArithmeticOverflow {
    pub(crate) const fn new(op: &'static str) -> Self {
        ArithmeticOverflow { op }
    }
}

pub(crate) fn narrow(x: i128, op: &'static str) -> Result<i64, ArithmeticOverflow> {
    i64::try_from(x).map_err(|_| ArithmeticOverflow::new(op))
}

/// `φ^n` exactly.
pub fn golden_phi_pow(n: u32) -> Result<GoldenNumber, ArithmeticOverflow> {
    GoldenNumber::phi_pow(n)
}

/// Product in `Z[φ]`.
pub fn golden_mul(x: GoldenNumber, y: GoldenNumber) -> Result<GoldenNumber, ArithmeticOverflow> {
    x.checked_mul(y)
}
