//! Instrumented scalar-operation counter.
//!
//! Every kernel adds the number of scalar semiring steps it performed to a
//! thread-local tally. One step is one fused `acc ⊕ (a ⊗ b)` in a matrix
//! product, one entry of a Kronecker product, one entrywise ⊕ / ⊕', or one
//! entrywise comparison. Transposition, conjugation, vec/unvec and copies
//! are bookkeeping and are not counted.

use std::cell::Cell;

thread_local! {
    static OPS: Cell<u64> = const { Cell::new(0) };
}

#[inline]
pub(crate) fn add(n: usize) {
    OPS.with(|c| c.set(c.get().wrapping_add(n as u64)));
}

/// Current tally on this thread.
pub fn current() -> u64 {
    OPS.with(Cell::get)
}

/// Runs `f` and returns its result with the number of scalar steps it took
/// on the current thread.
pub fn measure<R>(f: impl FnOnce() -> R) -> (R, u64) {
    let start = current();
    let out = f();
    (out, current().wrapping_sub(start))
}
