//! Fixed inputs shared by the benchmarks in `benches/`.

use tlink_core::{torus_braid, BraidWord, FullTwistForm};

/// Standard braid of `T(p, q)` on `q` strands.
pub fn torus_word(p: u32, q: u32) -> BraidWord {
    torus_braid(p, q).expect("q <= p")
}

/// A mid-sized T-link with `q < a_n`, so the strand-absorbing rewrite applies.
pub fn absorbing_form() -> FullTwistForm {
    FullTwistForm::new(vec![(3, 1), (5, 2)], (7, 2)).expect("valid form")
}

/// A T-link with `a_n < q`, handled by swapping `p` and `q`.
pub fn flipping_form() -> FullTwistForm {
    FullTwistForm::new(vec![(2, 1), (3, 1)], (7, 4)).expect("valid form")
}
