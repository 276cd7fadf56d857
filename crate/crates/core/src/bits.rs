use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A classical individual: one point of the binary search space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn zeros(len: usize) -> Self {
        Self(vec![false; len])
    }

    pub fn ones(len: usize) -> Self {
        Self(vec![true; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, index: usize) -> bool {
        self.0[index]
    }

    pub fn set(&mut self, index: usize, value: bool) {
        self.0[index] = value;
    }

    pub fn flip(&mut self, index: usize) {
        self.0[index] = !self.0[index];
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.0.iter().copied()
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    /// Reads `width` bits starting at `start` as a big-endian integer: the
    /// earlier gene is the most significant bit.
    pub fn group_value(&self, start: usize, width: usize) -> usize {
        self.0[start..start + width]
            .iter()
            .fold(0, |acc, &b| (acc << 1) | usize::from(b))
    }

    /// Writes `value` as `width` big-endian bits starting at `start`.
    pub fn set_group(&mut self, start: usize, width: usize, value: usize) {
        for i in 0..width {
            self.0[start + i] = (value >> (width - 1 - i)) & 1 == 1;
        }
    }

    /// Enumerates all `2^len` strings in lexicographic order.
    pub fn all(len: usize) -> impl Iterator<Item = BitString> {
        assert!(
            len < usize::BITS as usize,
            "cannot enumerate 2^{len} strings"
        );
        (0..1usize << len).map(move |v| {
            let mut bits = BitString::zeros(len);
            bits.set_group(0, len, v);
            bits
        })
    }
}

impl From<Vec<bool>> for BitString {
    fn from(bits: Vec<bool>) -> Self {
        Self(bits)
    }
}

impl FromIterator<bool> for BitString {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .enumerate()
            .map(|(i, c)| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Config(format!(
                    "bit string has {other:?} at position {i}"
                ))),
            })
            .collect()
    }
}
