use core::cmp::Ordering;
use core::fmt;
use core::iter::Sum;
use core::ops::Add;

/// An integer extended by a single infinite value.
///
/// Used for interdiction costs (`inf` means unremovable) and for dual lengths.
/// `Inf` absorbs addition and compares above every finite value. Subtraction is
/// only defined between finite values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtInt {
    Finite(i64),
    Inf,
}

pub use ExtInt::{Finite, Inf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("subtraction involving an infinite value")]
pub struct InfiniteSubtraction;

impl ExtInt {
    pub const ZERO: ExtInt = Finite(0);

    pub fn is_inf(self) -> bool {
        matches!(self, Inf)
    }

    pub fn is_finite(self) -> bool {
        !self.is_inf()
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Finite(x) => Some(x),
            Inf => None,
        }
    }

    /// Finite value, panicking on `Inf`. Only for call sites that already checked.
    pub fn unwrap_finite(self) -> i64 {
        self.finite().expect("ExtInt::unwrap_finite on Inf")
    }

    pub fn checked_sub(self, rhs: ExtInt) -> Result<ExtInt, InfiniteSubtraction> {
        match (self, rhs) {
            (Finite(a), Finite(b)) => Ok(Finite(a - b)),
            _ => Err(InfiniteSubtraction),
        }
    }

    /// Finite value if it fits in `[0, limit]`, as a budget index.
    pub fn as_budget(self, limit: usize) -> Option<usize> {
        match self {
            Finite(x) if x >= 0 && (x as u64) <= limit as u64 => Some(x as usize),
            _ => None,
        }
    }
}

impl Default for ExtInt {
    fn default() -> Self {
        ExtInt::ZERO
    }
}

impl From<i64> for ExtInt {
    fn from(x: i64) -> Self {
        Finite(x)
    }
}

impl PartialOrd for ExtInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtInt {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), Inf) => Ordering::Less,
            (Inf, Finite(_)) => Ordering::Greater,
            (Inf, Inf) => Ordering::Equal,
        }
    }
}

impl Add for ExtInt {
    type Output = ExtInt;

    fn add(self, rhs: ExtInt) -> ExtInt {
        match (self, rhs) {
            (Finite(a), Finite(b)) => Finite(a + b),
            _ => Inf,
        }
    }
}

impl Add<i64> for ExtInt {
    type Output = ExtInt;

    fn add(self, rhs: i64) -> ExtInt {
        self + Finite(rhs)
    }
}

impl Sum for ExtInt {
    fn sum<I: Iterator<Item = ExtInt>>(iter: I) -> ExtInt {
        iter.fold(ExtInt::ZERO, |acc, x| acc + x)
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finite(x) => write!(f, "{x}"),
            Inf => f.write_str("inf"),
        }
    }
}
