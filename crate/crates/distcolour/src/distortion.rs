//! Colour permutations attached to edges.
//!
//! A distortion is a bijection on the colour set `{0, …, d}`: the colour
//! assigned at the A-end of an edge is seen as `image[colour]` from the
//! B-end.

use crate::error::Error;

/// A colour in `{0, …, d}`. The instance's `d` bounds the valid range.
pub type Colour = u8;

/// A permutation of the colour set, stored as an explicit image array for
/// O(1) application.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Distortion {
    image: Vec<Colour>,
}

impl Distortion {
    /// Builds a distortion from its image array. `image[i]` is the B-side
    /// colour seen when the A-side colour is `i`. Fails unless the array is
    /// a permutation of `{0, …, len-1}`.
    pub fn new(image: Vec<Colour>) -> Result<Self, Error> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &c in &image {
            if (c as usize) >= n || seen[c as usize] {
                return Err(Error::NotAPermutation {
                    image,
                    d: n.saturating_sub(1) as u8,
                });
            }
            seen[c as usize] = true;
        }
        Ok(Distortion { image })
    }

    /// The identity distortion on `{0, …, d}`.
    pub fn identity(d: u8) -> Self {
        Distortion {
            image: (0..=d).collect(),
        }
    }

    /// The delay distortion `i ↦ (i + k) mod (d+1)`. Negative and
    /// oversized delays reduce modulo `d+1`.
    pub fn delay(k: i64, d: u8) -> Self {
        let m = d as i64 + 1;
        let k = k.rem_euclid(m) as u8;
        Distortion {
            image: (0..=d).map(|i| (i + k) % (d + 1)).collect(),
        }
    }

    /// B-side colour of an edge whose A-side colour is `c`.
    #[inline]
    pub fn apply(&self, c: Colour) -> Colour {
        self.image[c as usize]
    }

    /// A-side colour that produces B-side colour `c`; inverse of `apply`.
    #[inline]
    pub fn invert(&self, c: Colour) -> Colour {
        self.image
            .iter()
            .position(|&x| x == c)
            .expect("colour within the permutation's range") as Colour
    }

    pub fn image(&self) -> &[Colour] {
        &self.image
    }

    /// Number of colours the permutation acts on, i.e. `d + 1`.
    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &c)| i == c as usize)
    }
}

/// All permutations of `{0, …, n-1}` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<u8>> {
    let mut p: Vec<u8> = (0..n as u8).collect();
    let mut out = vec![p.clone()];
    while next_permutation(&mut p) {
        out.push(p.clone());
    }
    out
}

fn next_permutation(p: &mut [u8]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn apply_identity() {
        let r = Distortion::identity(3);
        assert_eq!(r.apply(2), 2);
    }

    #[test]
    fn apply_delay_one_wraps() {
        let r = Distortion::delay(1, 3);
        assert_eq!(r.image(), &[1, 2, 3, 0]);
        assert_eq!(r.apply(3), 0);
    }

    #[test]
    fn apply_transposition() {
        let r = Distortion::new(vec![0, 2, 1, 3]).unwrap();
        assert_eq!(r.apply(1), 2);
    }

    #[test]
    fn invert_identity_and_delay() {
        assert_eq!(Distortion::identity(3).invert(0), 0);
        assert_eq!(Distortion::delay(1, 3).invert(0), 3);
    }

    #[test]
    fn delay_reduces_mod_colour_count() {
        assert_eq!(Distortion::delay(5, 3), Distortion::delay(1, 3));
        assert_eq!(Distortion::delay(-1, 3), Distortion::delay(3, 3));
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Distortion::new(vec![0, 0, 2, 3]).is_err());
        assert!(Distortion::new(vec![0, 1, 2, 4]).is_err());
    }

    // invert ∘ apply = apply ∘ invert = id, exhausted over all 24
    // permutations of 4 colours and all 4 colours.
    #[test]
    fn invert_apply_roundtrip_exhaustive() {
        let perms = all_permutations(4);
        assert_eq!(perms.len(), 24);
        for image in perms {
            let r = Distortion::new(image).unwrap();
            for c in 0..4 {
                assert_eq!(r.invert(r.apply(c)), c);
                assert_eq!(r.apply(r.invert(c)), c);
            }
        }
    }

    #[test]
    fn permutations_are_lexicographic() {
        let perms = all_permutations(3);
        assert_eq!(
            perms,
            vec![
                vec![0, 1, 2],
                vec![0, 2, 1],
                vec![1, 0, 2],
                vec![1, 2, 0],
                vec![2, 0, 1],
                vec![2, 1, 0],
            ]
        );
    }
}
