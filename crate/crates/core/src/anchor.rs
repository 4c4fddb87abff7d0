//! Normalized time anchors at year, month or day granularity.

use std::fmt;
use std::str::FromStr;

/// A normalized TIMEX3 DATE value (`YYYY`, `YYYY-MM` or `YYYY-MM-DD`).
///
/// The derived ordering compares year, then month, then day, with a missing
/// component sorting before any present one: `2007 < 2007-01` and
/// `2007-07 < 2007-07-08`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TimeAnchor {
    year: u16,
    month: Option<u8>,
    day: Option<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnchorParseError(pub String);

impl fmt::Display for AnchorParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "malformed time anchor `{}`", self.0)
    }
}

impl std::error::Error for AnchorParseError {}

impl TimeAnchor {
    pub fn year(year: u16) -> Self {
        Self {
            year,
            month: None,
            day: None,
        }
    }

    /// Returns `None` when `month` is outside 1..=12.
    pub fn month(year: u16, month: u8) -> Option<Self> {
        (1..=12).contains(&month).then_some(Self {
            year,
            month: Some(month),
            day: None,
        })
    }

    /// Returns `None` when `month` or `day` is out of range.
    pub fn day(year: u16, month: u8, day: u8) -> Option<Self> {
        ((1..=12).contains(&month) && (1..=31).contains(&day)).then_some(Self {
            year,
            month: Some(month),
            day: Some(day),
        })
    }

    pub fn year_value(&self) -> u16 {
        self.year
    }

    pub fn month_value(&self) -> Option<u8> {
        self.month
    }

    pub fn day_value(&self) -> Option<u8> {
        self.day
    }

    /// True for `YYYY-MM-DD` anchors.
    pub fn is_day_granular(&self) -> bool {
        self.day.is_some()
    }
}

impl fmt::Display for TimeAnchor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}", self.year)?;
        if let Some(m) = self.month {
            write!(f, "-{m:02}")?;
        }
        if let Some(d) = self.day {
            write!(f, "-{d:02}")?;
        }
        Ok(())
    }
}

fn digits(s: &str, len: usize) -> Option<u16> {
    if s.len() == len && s.bytes().all(|b| b.is_ascii_digit()) {
        s.parse().ok()
    } else {
        None
    }
}

impl FromStr for TimeAnchor {
    type Err = AnchorParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || AnchorParseError(s.to_string());
        let mut parts = s.split('-');
        let year = parts.next().and_then(|p| digits(p, 4)).ok_or_else(err)?;
        let anchor = match (parts.next(), parts.next(), parts.next()) {
            (None, _, _) => Some(TimeAnchor::year(year)),
            (Some(m), None, _) => {
                let m = digits(m, 2).ok_or_else(err)?;
                TimeAnchor::month(year, m as u8)
            }
            (Some(m), Some(d), None) => {
                let m = digits(m, 2).ok_or_else(err)?;
                let d = digits(d, 2).ok_or_else(err)?;
                TimeAnchor::day(year, m as u8, d as u8)
            }
            _ => None,
        };
        anchor.ok_or_else(err)
    }
}
