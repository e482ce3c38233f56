use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::qcore::RngStream;
use crate::{Error, Result};

/// A nonempty bit string with 1-indexed positions: `get(1)` is the leftmost
/// bit `x₁`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    bits: Vec<u8>,
}

impl BitString {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::InvalidParameter("empty bit string".into()));
        }
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::InvalidParameter("bits must be 0 or 1".into()));
        }
        Ok(BitString { bits })
    }

    pub fn zeros(len: usize) -> Self {
        assert!(len > 0);
        BitString { bits: vec![0; len] }
    }

    /// The `len`-bit string whose integer value (first bit most significant)
    /// is `index`.
    pub fn from_index(index: u64, len: usize) -> Self {
        assert!(
            (1..=64).contains(&len),
            "index encoding supports 1..=64 bits"
        );
        assert!(
            len == 64 || index >> len == 0,
            "index {index} needs more than {len} bits"
        );
        let bits = (0..len)
            .map(|i| ((index >> (len - 1 - i)) & 1) as u8)
            .collect();
        BitString { bits }
    }

    /// Integer value with the first bit most significant. Panics above 64
    /// bits.
    pub fn to_index(&self) -> u64 {
        assert!(self.len() <= 64, "index encoding supports at most 64 bits");
        self.bits
            .iter()
            .fold(0u64, |acc, &b| (acc << 1) | u64::from(b))
    }

    pub fn random(len: usize, rng: &mut RngStream) -> Self {
        assert!(len > 0);
        BitString {
            bits: (0..len).map(|_| rng.gen_range(0..=1u8)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Bit at 1-indexed position `i`.
    pub fn get(&self, i: usize) -> u8 {
        assert!(
            i >= 1 && i <= self.len(),
            "position {i} out of range 1..={}",
            self.len()
        );
        self.bits[i - 1]
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn complement(&self) -> BitString {
        BitString {
            bits: self.bits.iter().map(|b| 1 - b).collect(),
        }
    }

    /// Number of differing positions. Panics on length mismatch.
    pub fn hamming_distance(&self, other: &BitString) -> usize {
        assert_eq!(
            self.len(),
            other.len(),
            "hamming distance of unequal lengths"
        );
        self.bits
            .iter()
            .zip(&other.bits)
            .filter(|(a, b)| a != b)
            .count()
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b == 0 { "0" } else { "1" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::InvalidParameter(format!(
                    "unexpected character {other:?} in bit string"
                ))),
            })
            .collect::<Result<Vec<u8>>>()?;
        BitString::new(bits)
    }
}

impl Serialize for BitString {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BitString {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A nonempty set of positions in `[1, n]`, kept strictly increasing.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
#[serde(transparent)]
pub struct SubsetY {
    indices: Vec<usize>,
}

impl SubsetY {
    /// Validates that `indices` is nonempty, strictly increasing and within
    /// `[1, n]`.
    pub fn new(indices: Vec<usize>, n: usize) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::InvalidParameter("empty subset".into()));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter(format!(
                "subset {indices:?} is not strictly increasing"
            )));
        }
        if indices[0] == 0 || *indices.last().unwrap() > n {
            return Err(Error::InvalidParameter(format!(
                "subset {indices:?} leaves the range 1..={n}"
            )));
        }
        Ok(SubsetY { indices })
    }

    /// The full index set `[n]`.
    pub fn full(n: usize) -> Self {
        assert!(n > 0);
        SubsetY {
            indices: (1..=n).collect(),
        }
    }

    /// All size-`m` subsets of `[n]` in lexicographic order.
    pub fn all(n: usize, m: usize) -> Vec<SubsetY> {
        assert!(m >= 1 && m <= n, "need 1 <= m <= n");
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=m).collect();
        loop {
            out.push(SubsetY {
                indices: cur.clone(),
            });
            // advance to the next combination
            let mut i = m;
            while i > 0 && cur[i - 1] == n - m + i {
                i -= 1;
            }
            if i == 0 {
                return out;
            }
            cur[i - 1] += 1;
            for j in i..m {
                cur[j] = cur[j - 1] + 1;
            }
        }
    }

    /// Uniform size-`m` subset of `[n]`.
    pub fn random(n: usize, m: usize, rng: &mut RngStream) -> Self {
        assert!(m >= 1 && m <= n, "need 1 <= m <= n");
        let mut indices: Vec<usize> = rand::seq::index::sample(rng, n, m)
            .into_iter()
            .map(|i| i + 1)
            .collect();
        indices.sort_unstable();
        SubsetY { indices }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

impl fmt::Display for SubsetY {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.indices.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

/// `M_y(x)`: the bits of `x` at the positions of `y`, in ascending order.
pub fn restrict(x: &BitString, y: &SubsetY) -> Result<BitString> {
    if let Some(&bad) = y.indices.iter().find(|&&i| i > x.len()) {
        return Err(Error::InvalidParameter(format!(
            "subset position {bad} exceeds string length {}",
            x.len()
        )));
    }
    Ok(BitString {
        bits: y.indices.iter().map(|&i| x.bits[i - 1]).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_index_round_trip() {
        let x = b("0110");
        assert_eq!(x.to_index(), 6);
        assert_eq!(BitString::from_index(6, 4), x);
        assert_eq!(x.get(1), 0);
        assert_eq!(x.get(2), 1);
        assert_eq!(x.to_string(), "0110");
        assert!("01a".parse::<BitString>().is_err());
        assert!("".parse::<BitString>().is_err());
    }

    #[test]
    fn subset_validation() {
        assert!(SubsetY::new(vec![1, 3], 3).is_ok());
        assert!(SubsetY::new(vec![3, 1], 3).is_err());
        assert!(SubsetY::new(vec![1, 1], 3).is_err());
        assert!(SubsetY::new(vec![0, 2], 3).is_err());
        assert!(SubsetY::new(vec![2, 4], 3).is_err());
        assert!(SubsetY::new(vec![], 3).is_err());
    }

    #[test]
    fn enumerates_subsets_lexicographically() {
        let all: Vec<String> = SubsetY::all(4, 2).iter().map(|s| s.to_string()).collect();
        assert_eq!(all, ["{1,2}", "{1,3}", "{1,4}", "{2,3}", "{2,4}", "{3,4}"]);
        assert_eq!(SubsetY::all(10, 4).len(), 210);
        assert_eq!(SubsetY::all(3, 3), vec![SubsetY::full(3)]);
    }

    #[test]
    fn restriction_examples() {
        let y13 = SubsetY::new(vec![1, 3], 3).unwrap();
        assert_eq!(restrict(&b("001"), &y13).unwrap(), b("01"));
        assert_eq!(
            restrict(&b("10110"), &SubsetY::full(5)).unwrap(),
            b("10110")
        );
        let y23 = SubsetY::new(vec![2, 3], 4).unwrap();
        assert_eq!(restrict(&b("1100"), &y23).unwrap(), b("10"));
        let y5 = SubsetY::new(vec![5], 5).unwrap();
        assert!(restrict(&b("11"), &y5).is_err());
    }

    #[test]
    fn restriction_commutes_with_complement() {
        let x = b("1101001");
        for y in SubsetY::all(7, 3) {
            assert_eq!(
                restrict(&x.complement(), &y).unwrap(),
                restrict(&x, &y).unwrap().complement()
            );
        }
    }

    #[test]
    fn serde_uses_plain_strings() {
        let x = b("0101");
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, "\"0101\"");
        assert_eq!(serde_json::from_str::<BitString>(&json).unwrap(), x);
        let y = SubsetY::new(vec![2, 4], 4).unwrap();
        assert_eq!(serde_json::to_string(&y).unwrap(), "[2,4]");
    }
}
