//! Vectors of element indices packed into a single `u128`, first entry most significant.
//!
//! For a fixed length the numeric order of keys is the lexicographic order of vectors.

pub const MAX_PACKED_LEN: usize = 16;

pub fn pack(v: &[u8]) -> u128 {
    debug_assert!(v.len() <= MAX_PACKED_LEN);
    v.iter().enumerate().fold(0u128, |acc, (i, &e)| acc | (e as u128) << (8 * (MAX_PACKED_LEN - 1 - i)))
}

pub fn unpack(key: u128, len: usize) -> Vec<u8> {
    let mut out = vec![0u8; len];
    unpack_into(key, &mut out);
    out
}

pub fn unpack_into(key: u128, out: &mut [u8]) {
    for (i, e) in out.iter_mut().enumerate() {
        *e = (key >> (8 * (MAX_PACKED_LEN - 1 - i))) as u8;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn round_trip_and_order(a in proptest::collection::vec(any::<u8>(), 6), b in proptest::collection::vec(any::<u8>(), 6)) {
            prop_assert_eq!(unpack(pack(&a), 6), a.clone());
            prop_assert_eq!(pack(&a).cmp(&pack(&b)), a.cmp(&b));
        }
    }
}
