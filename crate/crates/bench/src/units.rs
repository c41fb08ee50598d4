//! Sizes and times as they appear in the tables.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Bytes per KB in every table.
pub const KB: u64 = 1000;

/// Whole KB, rounded half-up.
pub fn kb(bytes: u64) -> u64 {
    (bytes + KB / 2) / KB
}

/// Length of the gzip encoding at the default level. The header carries no
/// name or timestamp, so equal inputs give equal lengths.
pub fn gzip_len(data: &[u8]) -> u64 {
    let mut enc = flate2::write::GzEncoder::new(Vec::new(), flate2::Compression::default());
    enc.write_all(data).expect("writing to memory");
    enc.finish().expect("writing to memory").len() as u64
}

/// A time in hundredths of a second. Column totals add these, so they
/// carry no floating-point drift.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Centis(pub u64);

impl Centis {
    /// Rounds half-up; negative inputs count as zero.
    pub fn from_seconds(s: f64) -> Centis {
        Centis((s.max(0.0) * 100.0 + 0.5).floor() as u64)
    }

    pub fn seconds(self) -> f64 {
        self.0 as f64 / 100.0
    }
}

impl fmt::Display for Centis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{:02}", self.0 / 100, self.0 % 100)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a time with at most two decimals: `{0}`")]
pub struct BadTime(pub String);

impl FromStr for Centis {
    type Err = BadTime;

    fn from_str(s: &str) -> Result<Centis, BadTime> {
        let bad = || BadTime(s.to_string());
        let (whole, frac) = s.trim().split_once('.').unwrap_or((s.trim(), ""));
        if whole.is_empty() || frac.len() > 2 || !whole.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let w: u64 = whole.parse().map_err(|_| bad())?;
        let f: u64 = if frac.is_empty() { 0 } else { format!("{frac:0<2}").parse().map_err(|_| bad())? };
        Ok(Centis(w * 100 + f))
    }
}

/// `4668` as `4,668`.
pub fn group_thousands(n: u64) -> String {
    let s = n.to_string();
    let mut out = String::new();
    for (i, c) in s.chars().enumerate() {
        if i > 0 && (s.len() - i) % 3 == 0 {
            out.push(',');
        }
        out.push(c);
    }
    out
}

/// Median of a non-empty sample.
pub fn median(xs: &[f64]) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kb_rounds_half_up() {
        assert_eq!(kb(0), 0);
        assert_eq!(kb(499), 0);
        assert_eq!(kb(500), 1);
        assert_eq!(kb(1499), 1);
        assert_eq!(kb(1500), 2);
    }

    #[test]
    fn centis_round_trip() {
        for s in ["0.00", "73.73", "0.20", "19.35", "1.00"] {
            assert_eq!(s.parse::<Centis>().unwrap().to_string(), s);
        }
        assert_eq!("3.5".parse::<Centis>().unwrap(), Centis(350));
        assert_eq!("12".parse::<Centis>().unwrap(), Centis(1200));
        assert!("1.234".parse::<Centis>().is_err());
        assert!("-1".parse::<Centis>().is_err());
        assert!("".parse::<Centis>().is_err());
        assert_eq!(Centis::from_seconds(0.125), Centis(13));
        assert_eq!(Centis::from_seconds(-3.0), Centis(0));
    }

    #[test]
    fn grouping() {
        assert_eq!(group_thousands(0), "0");
        assert_eq!(group_thousands(313), "313");
        assert_eq!(group_thousands(4668), "4,668");
        assert_eq!(group_thousands(16146), "16,146");
        assert_eq!(group_thousands(1234567), "1,234,567");
    }

    #[test]
    fn medians() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
        assert_eq!(median(&[7.0]), 7.0);
    }

    #[test]
    fn empty_input_is_zero_kb() {
        assert_eq!(kb(gzip_len(b"")), 0);
        assert_eq!(gzip_len(b"abc"), gzip_len(b"abc"));
    }
}
