//! Lexicographic enumeration of the symmetric group.

use std::fmt;

use thiserror::Error;

/// Largest `m` for which `S_m` is enumerated unless a caller raises the limit.
pub const DEFAULT_MAX_M: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("S_{m} has too many elements (limit is S_{limit})")]
    SizeLimitExceeded { m: u32, limit: u32 },
    #[error("S_0 is not enumerated; m must be positive")]
    Empty,
    #[error("chunk count must be positive")]
    NoChunks,
}

/// A permutation of `{1..m}` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    image: Vec<u32>,
}

impl Perm {
    pub fn identity(m: u32) -> Self {
        Perm {
            image: (1..=m).collect(),
        }
    }

    /// Checks that `image` is a bijection of `{1..len}`.
    pub fn from_image(image: Vec<u32>) -> Option<Self> {
        let mut seen = vec![false; image.len()];
        for &i in &image {
            let slot = seen.get_mut((i as usize).checked_sub(1)?)?;
            if *slot {
                return None;
            }
            *slot = true;
        }
        Some(Perm { image })
    }

    pub fn image(&self) -> &[u32] {
        &self.image
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    /// `σ(i)` for 1-based `i`.
    pub fn apply(&self, i: u32) -> u32 {
        self.image[i as usize - 1]
    }

    /// Number of inversions modulo 2, as `±1`.
    pub fn sign(&self) -> i32 {
        let mut s = 1;
        for i in 0..self.image.len() {
            for j in i + 1..self.image.len() {
                if self.image[i] > self.image[j] {
                    s = -s;
                }
            }
        }
        s
    }

    /// Lexicographic successor, or `false` when this is the last one.
    fn advance(&mut self) -> bool {
        let v = &mut self.image;
        if v.len() < 2 {
            return false;
        }
        let mut i = v.len() - 1;
        while i > 0 && v[i - 1] > v[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = v.len() - 1;
        while v[j] < v[i - 1] {
            j -= 1;
        }
        v.swap(i - 1, j);
        v[i..].reverse();
        true
    }

    /// The permutation of lexicographic rank `r` (0-based) in `S_m`.
    fn unrank(m: u32, mut r: u64) -> Perm {
        let mut pool: Vec<u32> = (1..=m).collect();
        let mut image = Vec::with_capacity(m as usize);
        for k in (0..m).rev() {
            let f = factorial(k);
            let idx = (r / f) as usize;
            r %= f;
            image.push(pool.remove(idx));
        }
        Perm { image }
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.image.iter().map(|i| i.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

fn factorial(k: u32) -> u64 {
    (1..=k as u64).product()
}

/// A run of consecutive permutations in lexicographic order.
#[derive(Clone, Debug)]
pub struct PermStream {
    next: Option<Perm>,
    remaining: u64,
}

impl PermStream {
    pub fn len(&self) -> u64 {
        self.remaining
    }

    pub fn is_empty(&self) -> bool {
        self.remaining == 0
    }
}

impl Iterator for PermStream {
    type Item = Perm;

    fn next(&mut self) -> Option<Perm> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let cur = self.next.take()?;
        if self.remaining > 0 {
            let mut succ = cur.clone();
            succ.advance();
            self.next = Some(succ);
        }
        Some(cur)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.remaining as usize;
        (n, Some(n))
    }
}

fn check(m: u32, limit: u32) -> Result<(), PermError> {
    if m == 0 {
        return Err(PermError::Empty);
    }
    if m > limit {
        return Err(PermError::SizeLimitExceeded { m, limit });
    }
    Ok(())
}

/// All of `S_m` in lexicographic order, from the identity to the reversal.
pub fn enumerate(m: u32) -> Result<PermStream, PermError> {
    enumerate_with_limit(m, DEFAULT_MAX_M)
}

pub fn enumerate_with_limit(m: u32, limit: u32) -> Result<PermStream, PermError> {
    check(m, limit)?;
    Ok(PermStream {
        next: Some(Perm::identity(m)),
        remaining: factorial(m),
    })
}

/// Splits `S_m` into `chunks` consecutive lexicographic runs whose sizes
/// differ by at most one, larger runs first.
pub fn chunked(m: u32, chunks: usize) -> Result<Vec<PermStream>, PermError> {
    chunked_with_limit(m, chunks, DEFAULT_MAX_M)
}

pub fn chunked_with_limit(m: u32, chunks: usize, limit: u32) -> Result<Vec<PermStream>, PermError> {
    check(m, limit)?;
    if chunks == 0 {
        return Err(PermError::NoChunks);
    }
    let total = factorial(m);
    let c = chunks as u64;
    let (base, extra) = (total / c, total % c);
    let mut start = 0u64;
    let mut out = Vec::with_capacity(chunks);
    for i in 0..c {
        let size = base + u64::from(i < extra);
        out.push(PermStream {
            next: (size > 0).then(|| Perm::unrank(m, start)),
            remaining: size,
        });
        start += size;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn images(s: PermStream) -> Vec<Vec<u32>> {
        s.map(|p| p.image().to_vec()).collect()
    }

    #[test]
    fn small_groups() {
        assert_eq!(images(enumerate(1).unwrap()), vec![vec![1]]);
        let s3 = images(enumerate(3).unwrap());
        assert_eq!(s3.len(), 6);
        assert_eq!(s3.first().unwrap(), &vec![1, 2, 3]);
        assert_eq!(s3.last().unwrap(), &vec![3, 2, 1]);
        assert!(s3.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn guard() {
        assert_eq!(
            enumerate(13).unwrap_err(),
            PermError::SizeLimitExceeded { m: 13, limit: 12 }
        );
        assert!(enumerate_with_limit(5, 4).is_err());
        assert_eq!(enumerate(0).unwrap_err(), PermError::Empty);
    }

    #[test]
    fn chunk_sizes() {
        let sizes = |m, c| -> Vec<u64> { chunked(m, c).unwrap().iter().map(|s| s.len()).collect() };
        assert_eq!(sizes(3, 2), vec![3, 3]);
        assert_eq!(sizes(4, 5), vec![5, 5, 5, 5, 4]);
        assert_eq!(sizes(2, 1), vec![2]);
        assert_eq!(sizes(2, 4), vec![1, 1, 0, 0]);
    }

    #[test]
    fn unrank_matches_enumeration() {
        for (r, p) in enumerate(4).unwrap().enumerate() {
            assert_eq!(Perm::unrank(4, r as u64), p);
        }
    }

    #[test]
    fn signs() {
        assert_eq!(Perm::identity(4).sign(), 1);
        assert_eq!(Perm::from_image(vec![2, 1, 3]).unwrap().sign(), -1);
        assert!(Perm::from_image(vec![1, 1]).is_none());
        assert!(Perm::from_image(vec![0, 1]).is_none());
    }
}
