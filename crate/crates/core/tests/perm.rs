use std::collections::BTreeSet;

use divsym::perm::{chunked, enumerate, PermError};
use proptest::prelude::*;

#[test]
fn counts_without_duplicates() {
    for m in 1..=7u32 {
        let all: Vec<Vec<u32>> = enumerate(m).unwrap().map(|p| p.image().to_vec()).collect();
        let expected: usize = (1..=m as usize).product();
        assert_eq!(all.len(), expected);
        assert_eq!(all.iter().collect::<BTreeSet<_>>().len(), expected);
        assert!(all.windows(2).all(|w| w[0] < w[1]), "lexicographic for m={m}");
    }
}

#[test]
fn sign_is_a_homomorphism_on_s4() {
    let all: Vec<_> = enumerate(4).unwrap().collect();
    for a in &all {
        for b in &all {
            let composed: Vec<u32> = (1..=4).map(|i| a.apply(b.apply(i))).collect();
            let c = divsym::perm::Perm::from_image(composed).unwrap();
            assert_eq!(c.sign(), a.sign() * b.sign());
        }
    }
}

proptest! {
    #[test]
    fn chunks_partition_the_group(m in 1u32..=6, chunks in 1usize..=8) {
        let streams = chunked(m, chunks).unwrap();
        prop_assert_eq!(streams.len(), chunks);
        let sizes: Vec<u64> = streams.iter().map(|s| s.len()).collect();
        let (lo, hi) = (*sizes.iter().min().unwrap(), *sizes.iter().max().unwrap());
        prop_assert!(hi - lo <= 1);
        prop_assert!(sizes.windows(2).all(|w| w[0] >= w[1]));
        let joined: Vec<Vec<u32>> = streams.into_iter().flatten().map(|p| p.image().to_vec()).collect();
        let whole: Vec<Vec<u32>> = enumerate(m).unwrap().map(|p| p.image().to_vec()).collect();
        prop_assert_eq!(joined, whole);
    }
}

#[test]
fn limits() {
    assert!(matches!(
        enumerate(13),
        Err(PermError::SizeLimitExceeded { m: 13, limit: 12 })
    ));
    assert!(matches!(chunked(3, 0), Err(PermError::NoChunks)));
}
