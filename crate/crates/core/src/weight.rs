//! Integral and rational weights in fundamental-weight coordinates.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{q, Q};

/// An integral weight, written in the basis of fundamental weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = Self::zero(rank);
        w.0[i] = 1;
        w
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|x| x * k).collect())
    }

    pub fn to_rational(&self) -> RationalWeight {
        RationalWeight(self.0.iter().map(|&x| q(x)).collect())
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|x| -x).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Parses comma-separated integers, e.g. `1,0,2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::input("empty weight; expected comma-separated integers like 1,0,2"));
        }
        s.split(',')
            .map(|t| {
                t.trim().parse::<i64>().map_err(|_| {
                    Error::input(format!("malformed weight `{s}`: `{t}` is not an integer"))
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }
}

/// A weight with exact rational coordinates in the fundamental-weight basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RationalWeight(pub Vec<Q>);

impl RationalWeight {
    pub fn zero(rank: usize) -> Self {
        RationalWeight(vec![Q::zero(); rank])
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    /// Lossless conversion; `None` when some coordinate is fractional.
    pub fn to_weight(&self) -> Option<Weight> {
        self.is_integral().then(|| Weight(self.0.iter().map(|x| x.to_integer()).collect()))
    }

    pub fn add_scaled(&self, k: Q, w: &Weight) -> RationalWeight {
        RationalWeight(self.0.iter().zip(&w.0).map(|(a, &b)| a + k * q(b)).collect())
    }
}

impl fmt::Display for RationalWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let w: Weight = "1, 0,-2".parse().unwrap();
        assert_eq!(w, Weight(vec![1, 0, -2]));
        assert_eq!(w.to_string(), "1,0,-2");
        assert!("1,x".parse::<Weight>().is_err());
        assert!("".parse::<Weight>().is_err());
    }

    #[test]
    fn integral_rational_weight_converts() {
        let r = Weight(vec![3, -1]).to_rational();
        assert_eq!(r.to_weight(), Some(Weight(vec![3, -1])));
        let half = RationalWeight(vec![Q::new(1, 2), q(0)]);
        assert_eq!(half.to_weight(), None);
    }
}
