//! Fixtures shared by the benchmarks.

use braceforge_core::gallery::{build_alpha_family, build_p5_example, AlphaFamilyInstance, P5Instance};

/// The `α`-family instance, panicking on bad parameters.
pub fn alpha(p: usize, alpha: usize) -> AlphaFamilyInstance {
    build_alpha_family(p, alpha).expect("valid α-family parameters")
}

/// The order-`p⁵` example.
pub fn p5(p: usize) -> P5Instance {
    build_p5_example(p).expect("p is an odd prime")
}

/// `(p − 1)/2`, the residue `−1/2` modulo an odd prime.
pub fn minus_half(p: usize) -> usize {
    (p - 1) / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minus_half_is_the_nonsplit_residue() {
        for p in [3, 5, 7] {
            assert!(!alpha(p, minus_half(p)).splits);
            assert_eq!((1 + 2 * minus_half(p)) % p, 0);
        }
    }
}
