//! Rota–Baxter operators on groups.
//!
//! `B: G → G` is Rota–Baxter when `B(g·B(g)·h·B(g)⁻¹) = B(g)·B(h)`. Then
//! `γ(g) = ι(B(g))` is a gamma function whose circle operation is
//! `g∘h = g·B(g)·h·B(g)⁻¹`, and `B` is a homomorphism `(G,∘) → (G,·)`.

use std::sync::Arc;

use thiserror::Error;

use crate::gamma::{GammaError, GammaFunction, InnerImage, SkewBrace};
use crate::group::{FiniteGroup, GroupError, GroupMap};
use crate::Verdict;

/// Default bound on the number of candidate maps `enumerate_rb` may search.
pub const DEFAULT_ENUMERATION_CAP: u128 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RotaBaxterError {
    #[error("not a Rota–Baxter operator: the identity fails at ({0}, {1})")]
    NotRotaBaxter(usize, usize),
    #[error("search space of {candidates} maps exceeds the cap {cap}")]
    TooLarge { candidates: u128, cap: u128 },
    #[error("the centre has order {0}, expected 1")]
    CenterNotTrivial(usize),
    #[error("γ({0}) is not an inner automorphism")]
    GammaNotInner(usize),
    #[error("gamma function fails the functional equation at ({0}, {1})")]
    NotGamma(usize, usize),
    #[error(transparent)]
    Gamma(#[from] GammaError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// First pair `(g,h)` violating the Rota–Baxter identity, if any.
pub fn verify_rb(group: &FiniteGroup, images: &[usize]) -> Verdict<(usize, usize)> {
    let n = group.order();
    for g in 0..n {
        let b = images[g];
        let b_inv = group.inv(b);
        let gb = group.mul(g, b);
        for h in 0..n {
            let arg = group.mul(group.mul(gb, h), b_inv);
            if images[arg] != group.mul(b, images[h]) {
                return Verdict::Fails((g, h));
            }
        }
    }
    Verdict::Holds
}

/// A map `G → G` in the role of a Rota–Baxter operator.
#[derive(Debug, Clone)]
pub struct RotaBaxterOperator {
    map: GroupMap,
    verified: bool,
}

impl PartialEq for RotaBaxterOperator {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map
    }
}

impl RotaBaxterOperator {
    /// Wraps an image table without checking the identity.
    pub fn new(group: Arc<FiniteGroup>, images: Vec<usize>) -> Result<Self, RotaBaxterError> {
        Ok(Self {
            map: GroupMap::new(group.clone(), group, images)?,
            verified: false,
        })
    }

    /// Wraps and verifies in one go.
    pub fn verified(group: Arc<FiniteGroup>, images: Vec<usize>) -> Result<Self, RotaBaxterError> {
        let mut op = Self::new(group, images)?;
        match op.verify() {
            Verdict::Holds => Ok(op),
            Verdict::Fails((g, h)) => Err(RotaBaxterError::NotRotaBaxter(g, h)),
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.map.source()
    }

    pub fn images(&self) -> &[usize] {
        self.map.images()
    }

    pub fn map(&self) -> &GroupMap {
        &self.map
    }

    #[inline]
    pub fn apply(&self, g: usize) -> usize {
        self.map.apply(g)
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn verify(&mut self) -> Verdict<(usize, usize)> {
        let verdict = verify_rb(self.group(), self.images());
        self.verified = verdict.holds();
        verdict
    }

    fn ensure_verified(&self) -> Result<(), RotaBaxterError> {
        if self.verified {
            return Ok(());
        }
        match verify_rb(self.group(), self.images()) {
            Verdict::Holds => Ok(()),
            Verdict::Fails((g, h)) => Err(RotaBaxterError::NotRotaBaxter(g, h)),
        }
    }

    /// `γ(g) = ι(B(g))`, already verified.
    pub fn gamma(&self) -> Result<GammaFunction, RotaBaxterError> {
        self.ensure_verified()?;
        let mut gamma = GammaFunction::from_inner_rep(&self.map);
        gamma.mark_verified();
        Ok(gamma)
    }

    /// The skew brace `G(B)`: `(G,·)` together with `g∘h = g·B(g)·h·B(g)⁻¹`.
    pub fn brace(&self) -> Result<SkewBrace, RotaBaxterError> {
        Ok(SkewBrace::from_gamma(self.gamma()?)?)
    }
}

/// All Rota–Baxter operators on `group`, in lexicographic order of their
/// image tables.
///
/// Backtracks over images in index order with `B(1) = 1` fixed (forced by
/// `g = h = 1`), checking every pair `(g,h)` as soon as `g`, `h` and the
/// argument `g·B(g)·h·B(g)⁻¹` all have assigned images.
pub fn enumerate_rb(
    group: &Arc<FiniteGroup>,
    cap: u128,
) -> Result<Vec<RotaBaxterOperator>, RotaBaxterError> {
    let n = group.order();
    let candidates = (n as u128).checked_pow(n.saturating_sub(1) as u32).unwrap_or(u128::MAX);
    if candidates > cap {
        return Err(RotaBaxterError::TooLarge { candidates, cap });
    }
    let mut search = Search {
        group,
        images: vec![0; n],
        found: Vec::new(),
    };
    search.descend(1);
    search
        .found
        .into_iter()
        .map(|images| {
            Ok(RotaBaxterOperator {
                map: GroupMap::new(group.clone(), group.clone(), images)?,
                verified: true,
            })
        })
        .collect()
}

struct Search<'a> {
    group: &'a FiniteGroup,
    images: Vec<usize>,
    found: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Checks every pair that became decidable when image `t` was assigned.
    fn consistent(&self, t: usize) -> bool {
        let g_ = self.group;
        let b = &self.images;
        for g in 0..=t {
            let bg = b[g];
            let bg_inv = g_.inv(bg);
            let gb = g_.mul(g, bg);
            for h in 0..=t {
                let arg = g_.mul(g_.mul(gb, h), bg_inv);
                if arg > t || (g != t && h != t && arg != t) {
                    continue;
                }
                if b[arg] != g_.mul(bg, b[h]) {
                    return false;
                }
            }
        }
        true
    }

    fn descend(&mut self, t: usize) {
        let n = self.group.order();
        if t == n {
            self.found.push(self.images.clone());
            return;
        }
        for x in 0..n {
            self.images[t] = x;
            if self.consistent(t) {
                self.descend(t + 1);
            }
        }
        self.images[t] = 0;
    }
}

/// Outcome of comparing two Rota–Baxter operators.
#[derive(Debug, Clone, PartialEq)]
pub enum SameGamma {
    /// Same gamma function; `zeta[g] = B₂(g)·B₁(g)⁻¹` is central and a
    /// homomorphism `(G,∘) → Z(G)`.
    Same(Vec<usize>),
    /// `ι(B₁(g)) ≠ ι(B₂(g))` at this `g`.
    NotSame(usize),
    /// Same gamma but `ζ` is not a homomorphism (or not central) at this
    /// pair. Cannot happen for genuine Rota–Baxter operators.
    NotMorphism(usize, usize),
}

/// Decides whether two Rota–Baxter operators induce the same gamma function
/// and, if so, returns the central morphism relating them.
pub fn same_gamma_witness(
    b1: &RotaBaxterOperator,
    b2: &RotaBaxterOperator,
) -> Result<SameGamma, RotaBaxterError> {
    b1.ensure_verified()?;
    b2.ensure_verified()?;
    let group = b1.group();
    let n = group.order();
    let zeta: Vec<usize> = (0..n)
        .map(|g| group.mul(b2.apply(g), group.inv(b1.apply(g))))
        .collect();
    // ι(B₁(g)) = ι(B₂(g)) exactly when ζ(g) is central.
    if let Some(g) = (0..n).find(|&g| !group.is_central(zeta[g])) {
        return Ok(SameGamma::NotSame(g));
    }
    let gamma = b1.gamma()?;
    for g in 0..n {
        for h in 0..n {
            if zeta[gamma.circle(g, h)] != group.mul(zeta[g], zeta[h]) {
                return Ok(SameGamma::NotMorphism(g, h));
            }
        }
    }
    Ok(SameGamma::Same(zeta))
}

/// On a centreless group every inner-valued gamma function comes from a
/// unique Rota–Baxter operator: `B(g)` is the unique `x` with `ι(x) = γ(g)`.
pub fn rb_from_centerless(
    group: &Arc<FiniteGroup>,
    gamma: &GammaFunction,
) -> Result<RotaBaxterOperator, RotaBaxterError> {
    let center = group.center();
    if !center.is_trivial() {
        return Err(RotaBaxterError::CenterNotTrivial(center.order()));
    }
    let mut gamma = gamma.clone();
    if !gamma.is_verified() {
        if let Verdict::Fails((g, h)) = gamma.verify()? {
            return Err(RotaBaxterError::NotGamma(g, h));
        }
    }
    let reps = match gamma.inner_image_check() {
        InnerImage::AllInner(reps) => reps,
        InnerImage::NotInner(g) => return Err(RotaBaxterError::GammaNotInner(g)),
    };
    RotaBaxterOperator::verified(group.clone(), reps)
}
