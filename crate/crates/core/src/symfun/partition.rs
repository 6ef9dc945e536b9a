use std::fmt;

use serde::{Deserialize, Serialize};

use super::SymfunError;

/// An integer partition: weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, SymfunError> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(SymfunError::InvalidPartition(parts));
        }
        Ok(Partition { parts })
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Dominance `self ≤ other`: every prefix sum of `self` is at most the
    /// corresponding prefix sum of `other`, shorter partitions padded with
    /// zeros.
    pub fn dominated_by(&self, other: &Partition) -> bool {
        let len = self.len().max(other.len());
        let (mut a, mut b) = (0u32, 0u32);
        for i in 0..len {
            a += self.parts.get(i).copied().unwrap_or(0);
            b += other.parts.get(i).copied().unwrap_or(0);
            if a > b {
                return false;
            }
        }
        true
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = SymfunError;
    fn try_from(v: Vec<u32>) -> Result<Self, Self::Error> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

#[derive(Clone, Debug, Default)]
pub struct PartitionConstraints {
    pub min_len: Option<usize>,
    pub max_len: Option<usize>,
    pub dominated_by: Option<Partition>,
}

/// All partitions of `weight` satisfying `c`, in reverse lexicographic order
/// (largest first part first).
pub fn partitions(weight: u32, c: &PartitionConstraints) -> Result<Vec<Partition>, SymfunError> {
    if let Some(d) = &c.dominated_by {
        if d.weight() != weight {
            return Err(SymfunError::ConstraintConflict(format!(
                "dominating partition {d} has weight {} but {weight} was requested",
                d.weight()
            )));
        }
    }
    let max_len = c.max_len.unwrap_or(weight as usize);
    let min_len = c.min_len.unwrap_or(0);
    let mut out = Vec::new();
    let mut cur = Vec::new();
    gen(weight, weight, max_len, &mut cur, &mut |p: &[u32]| {
        if p.len() < min_len {
            return;
        }
        let part = Partition { parts: p.to_vec() };
        if c.dominated_by.as_ref().is_none_or(|d| part.dominated_by(d)) {
            out.push(part);
        }
    });
    Ok(out)
}

fn gen(rest: u32, max_part: u32, max_len: usize, cur: &mut Vec<u32>, emit: &mut impl FnMut(&[u32])) {
    if rest == 0 {
        emit(cur);
        return;
    }
    if cur.len() >= max_len {
        return;
    }
    for p in (1..=max_part.min(rest)).rev() {
        cur.push(p);
        gen(rest - p, p, max_len, cur, emit);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn all_partitions_of_three() {
        let got = partitions(3, &PartitionConstraints::default()).unwrap();
        assert_eq!(got, vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
    }

    #[test]
    fn min_length() {
        let c = PartitionConstraints {
            min_len: Some(3),
            ..Default::default()
        };
        assert_eq!(partitions(4, &c).unwrap(), vec![p(&[2, 1, 1]), p(&[1, 1, 1, 1])]);
    }

    #[test]
    fn dominance_filter() {
        let c = PartitionConstraints {
            dominated_by: Some(p(&[2, 1])),
            ..Default::default()
        };
        assert_eq!(partitions(3, &c).unwrap(), vec![p(&[2, 1]), p(&[1, 1, 1])]);
        let bad = PartitionConstraints {
            dominated_by: Some(p(&[2, 2])),
            ..Default::default()
        };
        assert!(matches!(partitions(3, &bad), Err(SymfunError::ConstraintConflict(_))));
    }

    #[test]
    fn counts_match_partition_numbers() {
        let counts: Vec<usize> = (0..10)
            .map(|w| partitions(w, &PartitionConstraints::default()).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
    }

    #[test]
    fn invalid_parts_rejected() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(Partition::from_unsorted(vec![0, 1, 3, 2]), p(&[3, 2, 1]));
    }
}
