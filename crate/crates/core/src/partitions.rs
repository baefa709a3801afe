//! Integer partitions with the prefix sums the KOH formula consumes.
//!
//! [`partitions_of`] enumerates all partitions of `b` in reverse
//! lexicographic order, so the single-row partition `(b)` comes first and
//! `(1^b)` last. The enumeration is an iterative successor walk; nothing
//! recurses, so large `b` cannot blow the stack.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::Result;

/// A partition `lambda_1 >= lambda_2 >= ... >= lambda_l >= 1`, with the
/// prefix sums `Y_i = lambda_1 + ... + lambda_i` cached at construction.
#[derive(Clone, PartialEq, Eq)]
pub struct Partition {
    parts: Vec<u32>,
    // prefix[i] = Y_i for 0 <= i <= l, so prefix[0] = 0 and prefix[l] = weight.
    prefix: Vec<u64>,
}

impl Partition {
    /// Validates that `parts` is weakly decreasing with positive entries.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        for (index, window) in parts.windows(2).enumerate() {
            if window[0] < window[1] {
                return Err(Error::InvalidPartition { index: index + 1 });
            }
        }
        if let Some(index) = parts.iter().position(|&p| p == 0) {
            return Err(Error::InvalidPartition { index });
        }
        Ok(Self::from_parts_unchecked(parts))
    }

    /// The empty partition, the unique partition of 0.
    pub fn empty() -> Self {
        Self::from_parts_unchecked(Vec::new())
    }

    fn from_parts_unchecked(parts: Vec<u32>) -> Self {
        let mut prefix = Vec::with_capacity(parts.len() + 1);
        let mut sum = 0u64;
        prefix.push(0);
        for &p in &parts {
            sum += u64::from(p);
            prefix.push(sum);
        }
        Partition { parts, prefix }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of parts `l`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sum of the parts.
    pub fn weight(&self) -> u64 {
        *self.prefix.last().expect("prefix always has Y_0")
    }

    /// `lambda_j` with 1-based `j`; zero beyond the last part.
    pub fn part_at(&self, j: usize) -> u32 {
        if j == 0 || j > self.parts.len() {
            0
        } else {
            self.parts[j - 1]
        }
    }

    /// Prefix sum `Y_i`, saturating at the weight for `i >= l`. `Y_0 = 0`.
    pub fn prefix_at(&self, i: usize) -> u64 {
        if i >= self.prefix.len() {
            self.weight()
        } else {
            self.prefix[i]
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// JSON form: {"parts": [2, 2, 1, 1]}. Deserialization re-validates.

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("Partition", 1)?;
        s.serialize_field("parts", &self.parts)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            parts: Vec<u32>,
        }
        let repr = Repr::deserialize(deserializer)?;
        Partition::new(repr.parts).map_err(|e| D::Error::custom(e.to_string()))
    }
}

/// Iterator over all partitions of `b` in reverse lexicographic order.
pub fn partitions_of(b: u32) -> Partitions {
    Partitions {
        current: Some(if b == 0 { Vec::new() } else { vec![b] }),
    }
}

pub struct Partitions {
    current: Option<Vec<u32>>,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.current.take()?;
        self.current = successor(&cur);
        Some(Partition::from_parts_unchecked(cur))
    }
}

/// Reverse-lexicographic successor: lower the rightmost part that exceeds 1,
/// then refill the tail greedily with copies of the lowered value.
fn successor(parts: &[u32]) -> Option<Vec<u32>> {
    let i = parts.iter().rposition(|&p| p > 1)?;
    let v = parts[i] - 1;
    // Everything from position i onward is redistributed; past i all parts are 1.
    let tail_sum = u64::from(parts[i]) + (parts.len() - 1 - i) as u64;
    let mut next = parts[..i].to_vec();
    let q = tail_sum / u64::from(v);
    let r = (tail_sum % u64::from(v)) as u32;
    next.extend(std::iter::repeat(v).take(q as usize));
    if r > 0 {
        next.push(r);
    }
    Some(next)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parts_list(b: u32) -> Vec<Vec<u32>> {
        partitions_of(b).map(|p| p.parts().to_vec()).collect()
    }

    #[test]
    fn reverse_lexicographic_order() {
        assert_eq!(
            parts_list(4),
            vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]
        );
        assert_eq!(parts_list(1), vec![vec![1]]);
        // b = 0 has exactly one partition, the empty one.
        assert_eq!(parts_list(0), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn counts_match_known_values() {
        assert_eq!(partitions_of(10).count(), 42);
        assert_eq!(partitions_of(0).count(), 1);
        assert_eq!(partitions_of(7).count(), 15);
    }

    #[test]
    fn part_and_prefix_access() {
        let lam = Partition::new(vec![2, 2, 1, 1]).unwrap();
        assert_eq!(lam.weight(), 6);
        assert_eq!(lam.len(), 4);
        // part_at is 1-based and zero beyond l.
        assert_eq!(lam.part_at(1), 2);
        assert_eq!(lam.part_at(3), 1);
        assert_eq!(lam.part_at(5), 0);
        assert_eq!(lam.part_at(0), 0);
        // prefix_at saturates at the weight.
        assert_eq!(lam.prefix_at(0), 0);
        assert_eq!(lam.prefix_at(2), 4);
        assert_eq!(lam.prefix_at(4), 6);
        assert_eq!(lam.prefix_at(9), 6);
    }

    #[test]
    fn validation_rejects_bad_part_lists() {
        assert!(matches!(
            Partition::new(vec![1, 2]),
            Err(Error::InvalidPartition { index: 1 })
        ));
        assert!(matches!(
            Partition::new(vec![2, 0]),
            Err(Error::InvalidPartition { index: 1 })
        ));
        assert!(Partition::new(vec![]).is_ok());
    }

    #[test]
    fn every_enumerated_partition_revalidates() {
        for b in 0..=20 {
            for lam in partitions_of(b) {
                assert_eq!(lam.weight(), u64::from(b));
                assert!(Partition::new(lam.parts().to_vec()).is_ok());
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let lam = Partition::new(vec![2, 2, 1, 1]).unwrap();
        let json = serde_json::to_string(&lam).unwrap();
        assert_eq!(json, r#"{"parts":[2,2,1,1]}"#);
        let back: Partition = serde_json::from_str(&json).unwrap();
        assert_eq!(back, lam);
        assert!(serde_json::from_str::<Partition>(r#"{"parts":[1,2]}"#).is_err());
    }
}
