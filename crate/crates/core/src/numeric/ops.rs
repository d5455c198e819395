use std::cell::Cell;
use std::ops::{Add, Sub};

thread_local! {
    static ADDS: Cell<u64> = const { Cell::new(0) };
    static CMPS: Cell<u64> = const { Cell::new(0) };
    static MULS: Cell<u64> = const { Cell::new(0) };
}

#[inline]
pub(crate) fn count_add(k: u64) {
    ADDS.with(|c| c.set(c.get().wrapping_add(k)));
}

#[inline]
pub(crate) fn count_cmp(k: u64) {
    CMPS.with(|c| c.set(c.get().wrapping_add(k)));
}

#[inline]
pub(crate) fn count_mul(k: u64) {
    MULS.with(|c| c.set(c.get().wrapping_add(k)));
}

/// Tally of arithmetic operations performed on the current thread.
///
/// Counting is always on; [`OpCounter::measure`] reports the difference
/// across a closure, so nested measurements compose.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OpCounter {
    pub additions: u64,
    pub comparisons: u64,
    pub multiplications: u64,
}

impl OpCounter {
    pub fn snapshot() -> OpCounter {
        OpCounter {
            additions: ADDS.with(Cell::get),
            comparisons: CMPS.with(Cell::get),
            multiplications: MULS.with(Cell::get),
        }
    }

    pub fn reset() {
        ADDS.with(|c| c.set(0));
        CMPS.with(|c| c.set(0));
        MULS.with(|c| c.set(0));
    }

    pub fn measure<R>(f: impl FnOnce() -> R) -> (R, OpCounter) {
        let before = OpCounter::snapshot();
        let r = f();
        (r, OpCounter::snapshot() - before)
    }

    pub fn total(&self) -> u64 {
        self.additions + self.comparisons + self.multiplications
    }
}

impl Sub for OpCounter {
    type Output = OpCounter;

    fn sub(self, rhs: OpCounter) -> OpCounter {
        OpCounter {
            additions: self.additions.wrapping_sub(rhs.additions),
            comparisons: self.comparisons.wrapping_sub(rhs.comparisons),
            multiplications: self.multiplications.wrapping_sub(rhs.multiplications),
        }
    }
}

impl Add for OpCounter {
    type Output = OpCounter;

    fn add(self, rhs: OpCounter) -> OpCounter {
        OpCounter {
            additions: self.additions + rhs.additions,
            comparisons: self.comparisons + rhs.comparisons,
            multiplications: self.multiplications + rhs.multiplications,
        }
    }
}
