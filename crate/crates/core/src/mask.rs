//! Subsets of a ground set of at most 64 elements, stored as `u64` bit masks.

/// A subset of the ground set; bit `i` is element `i`.
pub type Mask = u64;

#[inline]
pub fn full(n: usize) -> Mask {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
pub fn single(i: usize) -> Mask {
    1u64 << i
}

#[inline]
pub fn size(m: Mask) -> usize {
    m.count_ones() as usize
}

/// Iterates the elements of `m` in increasing order.
pub fn elements(m: Mask) -> Elements {
    Elements(m)
}

pub struct Elements(Mask);

impl Iterator for Elements {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

pub fn from_elements<I: IntoIterator<Item = usize>>(it: I) -> Mask {
    it.into_iter().fold(0, |m, i| m | single(i))
}

/// All `k`-subsets of `universe`, in increasing numeric order.
pub fn subsets_of_size(universe: Mask, k: usize) -> Vec<Mask> {
    let n = size(universe);
    if k > n {
        return Vec::new();
    }
    if k == 0 {
        return vec![0];
    }
    // Gosper's hack over positions, then spread onto the universe.
    let mut out = Vec::new();
    let limit: u128 = 1u128 << n;
    let mut c: u128 = (1u128 << k) - 1;
    while c < limit {
        out.push(expand(c as u64, universe));
        let u = c & c.wrapping_neg();
        let v = u + c;
        c = v + (((v ^ c) / u) >> 2);
    }
    out
}

/// Maps the bits of `m` (a subset of `universe`) onto consecutive positions,
/// as if the elements outside `universe` had been removed.
pub fn compress(m: Mask, universe: Mask) -> Mask {
    let mut out = 0;
    for (pos, e) in elements(universe).enumerate() {
        if m & single(e) != 0 {
            out |= single(pos);
        }
    }
    out
}

/// Inverse of [`compress`].
pub fn expand(m: Mask, universe: Mask) -> Mask {
    let mut out = 0;
    for (pos, e) in elements(universe).enumerate() {
        if m & single(pos) != 0 {
            out |= single(e);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_count_and_order() {
        let s = subsets_of_size(full(6), 3);
        assert_eq!(s.len(), 20);
        assert!(s.windows(2).all(|w| w[0] < w[1]));
        assert!(s.iter().all(|&m| size(m) == 3));
        assert_eq!(subsets_of_size(full(4), 0), vec![0]);
        assert_eq!(subsets_of_size(full(3), 4), Vec::<Mask>::new());
        assert_eq!(subsets_of_size(0b1010, 2), vec![0b1010]);
    }

    #[test]
    fn compress_expand() {
        let u = 0b1011_0110;
        for m in 0..16u64 {
            assert_eq!(compress(expand(m, u), u), m);
        }
        assert_eq!(compress(0b0010_0100, u), 0b1010);
    }
}
