//! Finite integer domains as 64-bit set masks over the value range 0..=63.

/// A finite set of integers in 0..=63, one bit per value.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Domain {
    bits: u64,
}

impl Domain {
    /// Largest representable value.
    pub const MAX_VALUE: u32 = 63;

    pub fn empty() -> Domain {
        Domain { bits: 0 }
    }

    /// Inclusive range `lo..=hi`.
    pub fn range(lo: u32, hi: u32) -> Domain {
        assert!(lo <= hi && hi <= Self::MAX_VALUE, "bad domain range {lo}..={hi}");
        let width = hi - lo + 1;
        let mask = if width == 64 { u64::MAX } else { ((1u64 << width) - 1) << lo };
        Domain { bits: mask }
    }

    pub fn singleton(v: u32) -> Domain {
        assert!(v <= Self::MAX_VALUE, "value {v} out of range");
        Domain { bits: 1 << v }
    }

    pub fn from_values(values: impl IntoIterator<Item = u32>) -> Domain {
        let mut bits = 0u64;
        for v in values {
            assert!(v <= Self::MAX_VALUE, "value {v} out of range");
            bits |= 1 << v;
        }
        Domain { bits }
    }

    #[inline]
    pub fn contains(self, v: u32) -> bool {
        v <= Self::MAX_VALUE && self.bits & (1 << v) != 0
    }

    #[inline]
    pub fn size(self) -> u32 {
        self.bits.count_ones()
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn is_singleton(self) -> bool {
        self.bits.count_ones() == 1
    }

    /// The value of a singleton domain.
    #[inline]
    pub fn value(self) -> Option<u32> {
        if self.is_singleton() {
            Some(self.bits.trailing_zeros())
        } else {
            None
        }
    }

    #[inline]
    pub fn min(self) -> Option<u32> {
        if self.bits == 0 {
            None
        } else {
            Some(self.bits.trailing_zeros())
        }
    }

    #[inline]
    pub fn max(self) -> Option<u32> {
        if self.bits == 0 {
            None
        } else {
            Some(63 - self.bits.leading_zeros())
        }
    }

    /// Removes `v`; returns whether the domain changed.
    #[inline]
    pub fn remove(&mut self, v: u32) -> bool {
        if v > Self::MAX_VALUE {
            return false;
        }
        let before = self.bits;
        self.bits &= !(1 << v);
        before != self.bits
    }

    /// Adds `v` to the set.
    #[inline]
    pub fn insert(&mut self, v: u32) {
        assert!(v <= Self::MAX_VALUE, "value out of domain range");
        self.bits |= 1 << v;
    }

    /// Removes every value present in `other`; returns whether the domain changed.
    #[inline]
    pub fn subtract(&mut self, other: Domain) -> bool {
        let before = self.bits;
        self.bits &= !other.bits;
        before != self.bits
    }

    /// Intersects with `other`; returns whether the domain changed.
    #[inline]
    pub fn intersect(&mut self, other: Domain) -> bool {
        let before = self.bits;
        self.bits &= other.bits;
        before != self.bits
    }

    /// Removes every value outside `lo..=hi`; returns whether the domain changed.
    #[inline]
    pub fn restrict_to_bounds(&mut self, lo: i64, hi: i64) -> bool {
        if lo > hi {
            let changed = self.bits != 0;
            self.bits = 0;
            return changed;
        }
        let lo = lo.clamp(0, Self::MAX_VALUE as i64 + 1) as u32;
        let hi = hi.clamp(-1, Self::MAX_VALUE as i64) as i64;
        if hi < 0 || lo > Self::MAX_VALUE {
            let changed = self.bits != 0;
            self.bits = 0;
            return changed;
        }
        let mask = Domain::range(lo, hi as u32).bits;
        let before = self.bits;
        self.bits &= mask;
        before != self.bits
    }

    #[inline]
    pub fn is_subset_of(self, other: Domain) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn iter(self) -> DomainIter {
        DomainIter { bits: self.bits }
    }
}

impl std::fmt::Debug for Domain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Ascending-value iterator over a domain.
pub struct DomainIter {
    bits: u64,
}

impl Iterator for DomainIter {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.bits == 0 {
            None
        } else {
            let v = self.bits.trailing_zeros();
            self.bits &= self.bits - 1;
            Some(v)
        }
    }
}
