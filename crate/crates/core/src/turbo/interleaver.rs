use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Permutation with `interleaved[k] = original[perm[k]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interleaver {
    perm: Vec<usize>,
    inverse: Vec<usize>,
}

impl Interleaver {
    pub fn from_permutation(perm: Vec<usize>) -> Result<Self> {
        let mut inverse = vec![usize::MAX; perm.len()];
        for (k, &p) in perm.iter().enumerate() {
            if p >= perm.len() || inverse[p] != usize::MAX {
                return Err(Error::invalid("interleaver is not a permutation"));
            }
            inverse[p] = k;
        }
        Ok(Self { perm, inverse })
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn interleave<T: Copy>(&self, src: &[T], dst: &mut Vec<T>) {
        dst.clear();
        dst.extend(self.perm.iter().map(|&p| src[p]));
    }

    pub fn deinterleave<T: Copy>(&self, src: &[T], dst: &mut Vec<T>) {
        dst.clear();
        dst.extend(self.inverse.iter().map(|&k| src[k]));
    }
}

/// Uniformly random permutation of `0..len` from a seeded generator.
pub fn make_interleaver(len: usize, seed: u64) -> Result<Interleaver> {
    if len < 2 {
        return Err(Error::invalid(format!(
            "interleaver length must be >= 2, got {len}"
        )));
    }
    let mut perm: Vec<usize> = (0..len).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    Interleaver::from_permutation(perm)
}
