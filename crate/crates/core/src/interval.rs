//! Closed real intervals.
//!
//! Over real scalars the set `{f(y) : f ∈ J(x)}` is a compact interval.
//! For a sum of independently ranging terms, the convex hull of the sum is
//! the Minkowski sum of the hulls, so interval addition is exact here.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo > hi {
            return Err(Error::invalid_argument(format!(
                "interval endpoints out of order: [{lo}, {hi}]"
            )));
        }
        Ok(Self { lo, hi })
    }

    pub const fn point(t: f64) -> Self {
        Self { lo: t, hi: t }
    }

    pub const ZERO: Interval = Interval::point(0.0);

    /// Smallest interval containing every value yielded.
    ///
    /// Returns `None` for an empty iterator.
    pub fn hull_of(values: impl IntoIterator<Item = f64>) -> Option<Self> {
        values.into_iter().fold(None, |acc, v| match acc {
            None => Some(Self::point(v)),
            Some(iv) => Some(Self {
                lo: iv.lo.min(v),
                hi: iv.hi.max(v),
            }),
        })
    }

    pub fn hull(self, other: Self) -> Self {
        Self {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// `t ∈ [lo − slack, hi + slack]`.
    pub fn contains(&self, t: f64, slack: f64) -> bool {
        t >= self.lo - slack && t <= self.hi + slack
    }

    /// `other ⊆ self`, each endpoint allowed to overshoot by `slack`.
    pub fn contains_interval(&self, other: &Interval, slack: f64) -> bool {
        other.lo >= self.lo - slack && other.hi <= self.hi + slack
    }

    /// `min { |t| : t ∈ self }`.
    pub fn min_abs(&self) -> f64 {
        if self.lo > 0.0 {
            self.lo
        } else if self.hi < 0.0 {
            -self.hi
        } else {
            0.0
        }
    }

    /// Point of the interval closest to `0`.
    pub fn closest_to_zero(&self) -> f64 {
        0.0_f64.clamp(self.lo, self.hi)
    }

    /// Image under `t ↦ c·t`.
    pub fn scale(self, c: f64) -> Self {
        if c >= 0.0 {
            Self {
                lo: c * self.lo,
                hi: c * self.hi,
            }
        } else {
            Self {
                lo: c * self.hi,
                hi: c * self.lo,
            }
        }
    }

    pub fn shift(self, t: f64) -> Self {
        Self {
            lo: self.lo + t,
            hi: self.hi + t,
        }
    }

    /// Image under an increasing map.
    pub fn map_increasing(self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            lo: f(self.lo),
            hi: f(self.hi),
        }
    }
}

impl std::ops::Add for Interval {
    type Output = Interval;

    fn add(self, rhs: Interval) -> Interval {
        Interval {
            lo: self.lo + rhs.lo,
            hi: self.hi + rhs.hi,
        }
    }
}

impl std::iter::Sum for Interval {
    fn sum<I: Iterator<Item = Interval>>(iter: I) -> Interval {
        iter.fold(Interval::ZERO, |a, b| a + b)
    }
}
