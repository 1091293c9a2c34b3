//! Color profiles: per-color occurrence counts along a play, extended with
//! `-inf` (infinite play lost by player 0) and `+inf` (infinite play won by
//! player 0).
//!
//! Profiles are totally ordered from player 0's point of view. Two finite
//! profiles are compared at the highest color where their counts differ:
//! more occurrences of an even color is better, more occurrences of an odd
//! color is worse.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("profile dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("color {color} out of range for {dim} colors")]
    ColorOutOfRange { color: usize, dim: usize },
    #[error("undefined profile arithmetic: {0}")]
    UndefinedArithmetic(&'static str),
    #[error("cannot parse profile: {0:?}")]
    Parse(String),
}

/// An element of `Z^d ∪ {-inf, +inf}`.
///
/// `Ord` is the player-0 preference order. Comparing finite profiles of
/// different dimensions through `Ord` panics; use [`ColorProfile::compare`]
/// when the dimensions are not known to agree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ColorProfile {
    NegInf,
    Finite(Vec<i64>),
    PosInf,
}

impl ColorProfile {
    /// The zero profile over `dim` colors.
    pub fn zero(dim: usize) -> Self {
        ColorProfile::Finite(vec![0; dim])
    }

    /// Value of a single node of the given color.
    pub fn unit(dim: usize, color: usize) -> Result<Self, ProfileError> {
        if color >= dim {
            return Err(ProfileError::ColorOutOfRange { color, dim });
        }
        let mut counts = vec![0; dim];
        counts[color] = 1;
        Ok(ColorProfile::Finite(counts))
    }

    /// Value of a finite sequence of node colors.
    pub fn path_value(dim: usize, colors: &[usize]) -> Result<Self, ProfileError> {
        let mut counts = vec![0; dim];
        for &color in colors {
            if color >= dim {
                return Err(ProfileError::ColorOutOfRange { color, dim });
            }
            counts[color] += 1;
        }
        Ok(ColorProfile::Finite(counts))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ColorProfile::Finite(_))
    }

    pub fn is_pos_inf(&self) -> bool {
        matches!(self, ColorProfile::PosInf)
    }

    pub fn counts(&self) -> Option<&[i64]> {
        match self {
            ColorProfile::Finite(c) => Some(c),
            _ => None,
        }
    }

    pub fn dim(&self) -> Option<usize> {
        self.counts().map(<[i64]>::len)
    }

    /// Total-order comparison, failing on finite profiles of different dimension.
    pub fn compare(&self, other: &Self) -> Result<Ordering, ProfileError> {
        use ColorProfile::*;
        Ok(match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => {
                if a.len() != b.len() {
                    return Err(ProfileError::DimensionMismatch {
                        left: a.len(),
                        right: b.len(),
                    });
                }
                compare_counts(a, b)
            }
        })
    }

    /// Sum of two profiles. Infinities absorb finite values; `+inf + -inf`
    /// is undefined.
    #[allow(clippy::should_implement_trait)]
    pub fn add(&self, other: &Self) -> Result<Self, ProfileError> {
        use ColorProfile::*;
        match (self, other) {
            (PosInf, NegInf) | (NegInf, PosInf) => {
                Err(ProfileError::UndefinedArithmetic("+inf + -inf"))
            }
            (PosInf, _) | (_, PosInf) => Ok(PosInf),
            (NegInf, _) | (_, NegInf) => Ok(NegInf),
            (Finite(a), Finite(b)) => {
                check_dims(a, b)?;
                Ok(Finite(a.iter().zip(b).map(|(x, y)| x + y).collect()))
            }
        }
    }

    /// Componentwise difference of two finite profiles.
    pub fn subtract(&self, other: &Self) -> Result<Self, ProfileError> {
        match (self, other) {
            (ColorProfile::Finite(a), ColorProfile::Finite(b)) => {
                check_dims(a, b)?;
                Ok(ColorProfile::Finite(
                    a.iter().zip(b).map(|(x, y)| x - y).collect(),
                ))
            }
            _ => Err(ProfileError::UndefinedArithmetic(
                "subtraction involving an infinite profile",
            )),
        }
    }

    /// Adds one occurrence of `color` in place. Infinite profiles are unchanged.
    ///
    /// Panics if `color` is out of range for a finite profile.
    pub fn add_color(&mut self, color: usize) {
        if let ColorProfile::Finite(counts) = self {
            counts[color] += 1;
        }
    }
}

fn check_dims(a: &[i64], b: &[i64]) -> Result<(), ProfileError> {
    if a.len() == b.len() {
        Ok(())
    } else {
        Err(ProfileError::DimensionMismatch {
            left: a.len(),
            right: b.len(),
        })
    }
}

fn compare_counts(a: &[i64], b: &[i64]) -> Ordering {
    for k in (0..a.len()).rev() {
        if a[k] != b[k] {
            let ord = a[k].cmp(&b[k]);
            return if k % 2 == 0 { ord } else { ord.reverse() };
        }
    }
    Ordering::Equal
}

impl Ord for ColorProfile {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
            .expect("compared color profiles of different dimension")
    }
}

impl PartialOrd for ColorProfile {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ColorProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColorProfile::NegInf => f.write_str("-inf"),
            ColorProfile::PosInf => f.write_str("+inf"),
            ColorProfile::Finite(counts) => {
                f.write_str("(")?;
                for (i, c) in counts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl FromStr for ColorProfile {
    type Err = ProfileError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "-inf" => Ok(ColorProfile::NegInf),
            "+inf" => Ok(ColorProfile::PosInf),
            t => {
                let inner = t
                    .strip_prefix('(')
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| ProfileError::Parse(s.to_string()))?;
                let counts = inner
                    .split(',')
                    .map(|c| c.trim().parse::<i64>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| ProfileError::Parse(s.to_string()))?;
                Ok(ColorProfile::Finite(counts))
            }
        }
    }
}

impl Serialize for ColorProfile {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ColorProfile {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> ColorProfile {
        ColorProfile::Finite(c.to_vec())
    }

    #[test]
    fn compare_examples() {
        assert_eq!(p(&[0, 0, 0]).compare(&p(&[1, 0, 0])), Ok(Ordering::Less));
        assert_eq!(p(&[0, 1, 0]).compare(&p(&[0, 0, 0])), Ok(Ordering::Less));
        assert_eq!(
            ColorProfile::NegInf.compare(&p(&[-5, -5, -5])),
            Ok(Ordering::Less)
        );
        assert_eq!(p(&[2, 7, 1]).compare(&p(&[2, 7, 1])), Ok(Ordering::Equal));
        assert_eq!(
            p(&[0, 0]).compare(&p(&[0, 0, 0])),
            Err(ProfileError::DimensionMismatch { left: 2, right: 3 })
        );
        assert!(ColorProfile::PosInf > p(&[100, 0, 100]));
    }

    #[test]
    fn add_examples() {
        assert_eq!(p(&[1, 0, 2]).add(&p(&[0, 3, 0])), Ok(p(&[1, 3, 2])));
        assert_eq!(
            ColorProfile::zero(3).add(&p(&[4, -1, 2])),
            Ok(p(&[4, -1, 2]))
        );
        assert_eq!(
            ColorProfile::PosInf.add(&p(&[5, 5, 5])),
            Ok(ColorProfile::PosInf)
        );
        assert_eq!(
            p(&[5, 5, 5]).add(&ColorProfile::NegInf),
            Ok(ColorProfile::NegInf)
        );
        assert!(matches!(
            ColorProfile::PosInf.add(&ColorProfile::NegInf),
            Err(ProfileError::UndefinedArithmetic(_))
        ));
    }

    #[test]
    fn subtract_examples() {
        assert_eq!(p(&[2, 1, 0]).subtract(&p(&[1, 1, 0])), Ok(p(&[1, 0, 0])));
        assert_eq!(p(&[3, 4]).subtract(&p(&[3, 4])), Ok(ColorProfile::zero(2)));
        let diff = p(&[0, 1, 0]).subtract(&p(&[0, 0, 1])).unwrap();
        assert_eq!(diff, p(&[0, 1, -1]));
        // highest differing index is 2 (even) and -1 < 0
        assert!(diff < ColorProfile::zero(3));
        assert!(ColorProfile::PosInf.subtract(&p(&[0])).is_err());
    }

    #[test]
    fn unit_and_path_values() {
        assert_eq!(ColorProfile::unit(3, 1), Ok(p(&[0, 1, 0])));
        assert_eq!(ColorProfile::unit(1, 0), Ok(p(&[1])));
        assert_eq!(ColorProfile::unit(4, 3), Ok(p(&[0, 0, 0, 1])));
        assert_eq!(
            ColorProfile::unit(2, 2),
            Err(ProfileError::ColorOutOfRange { color: 2, dim: 2 })
        );

        assert_eq!(ColorProfile::path_value(3, &[]), Ok(ColorProfile::zero(3)));
        assert_eq!(ColorProfile::path_value(2, &[0, 1, 1]), Ok(p(&[1, 2])));
        let loop2 = ColorProfile::path_value(3, &[2]).unwrap();
        assert_eq!(loop2, p(&[0, 0, 1]));
        assert!(loop2 > ColorProfile::zero(3));
        assert!(ColorProfile::path_value(2, &[0, 5]).is_err());
    }

    #[test]
    fn text_round_trip() {
        for prof in [ColorProfile::NegInf, ColorProfile::PosInf, p(&[0, -3, 12])] {
            let s = prof.to_string();
            assert_eq!(s.parse::<ColorProfile>().unwrap(), prof);
        }
        assert_eq!(p(&[1, 0, 2]).to_string(), "(1,0,2)");
        assert!("(1,x)".parse::<ColorProfile>().is_err());
    }

    proptest! {
        #[test]
        fn subtract_inverts_add(
            a in prop::collection::vec(-50i64..50, 4),
            b in prop::collection::vec(-50i64..50, 4),
        ) {
            let (a, b) = (p(&a), p(&b));
            prop_assert_eq!(a.add(&b).unwrap().subtract(&b).unwrap(), a);
        }

        #[test]
        fn addition_preserves_order(
            a in prop::collection::vec(-5i64..5, 3),
            b in prop::collection::vec(-5i64..5, 3),
            c in prop::collection::vec(-5i64..5, 3),
        ) {
            let (a, b, c) = (p(&a), p(&b), p(&c));
            prop_assert_eq!(a.cmp(&b), a.add(&c).unwrap().cmp(&b.add(&c).unwrap()));
        }
    }
}
