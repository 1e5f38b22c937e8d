//! Gamma functions and skew braces.
//!
//! A gamma function on `(G,·)` is a map `γ: G → Aut(G)` with
//! `γ(g·γ(g)(h)) = γ(g)∘γ(h)`. It defines a second group structure
//! `g∘h = g·γ(g)(h)` on the same set, and `(G,·,∘)` is then a skew brace:
//! `g∘(h·k) = (g∘h)·g⁻¹·(g∘k)`. In the skew brace literature `γ(g)` is
//! usually written `λ_g`.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::group::{FiniteGroup, GroupError, GroupMap};
use crate::Verdict;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GammaError {
    #[error("action table has {len} entries, expected {expected}")]
    Shape { len: usize, expected: usize },
    #[error("γ({0}) is not an automorphism")]
    NotAutomorphism(usize),
    #[error("gamma function has not been verified")]
    Unverified,
    #[error("the gamma functional equation fails at ({0}, {1})")]
    NotGamma(usize, usize),
    #[error("groups differ in order ({0} vs {1})")]
    ShapeMismatch(usize, usize),
    #[error("not a skew brace: the brace identity fails at ({0}, {1}, {2})")]
    NotASkewBrace(usize, usize, usize),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A map `G → Aut(G)` stored as one image table per element.
#[derive(Debug, Clone)]
pub struct GammaFunction {
    group: Arc<FiniteGroup>,
    action: Vec<u32>,
    verified: bool,
}

/// Equality of action tables on equal groups; the verified flag is ignored.
impl PartialEq for GammaFunction {
    fn eq(&self, other: &Self) -> bool {
        self.action == other.action && self.group == other.group
    }
}

impl GammaFunction {
    /// Wraps an action table (`action[g][h] = γ(g)(h)`) without verifying it.
    pub fn new(group: Arc<FiniteGroup>, action: &[Vec<usize>]) -> Result<Self, GammaError> {
        let n = group.order();
        if action.len() != n {
            return Err(GammaError::Shape {
                len: action.len(),
                expected: n,
            });
        }
        let mut flat = Vec::with_capacity(n * n);
        for (g, row) in action.iter().enumerate() {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(GammaError::NotAutomorphism(g));
            }
            flat.extend(row.iter().map(|&x| x as u32));
        }
        Ok(Self {
            group,
            action: flat,
            verified: false,
        })
    }

    /// `γ(g) = ι(C(g))` for an arbitrary representative map `C: G → G`.
    ///
    /// Representatives differing by central factors give the same function.
    pub fn from_inner_rep(rep: &GroupMap) -> Self {
        let group = rep.source().clone();
        let n = group.order();
        let mut action = Vec::with_capacity(n * n);
        for g in 0..n {
            action.extend(group.conjugation_images(rep.apply(g)));
        }
        Self {
            group,
            action,
            verified: false,
        }
    }

    pub fn trivial(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        let action = (0..n).flat_map(|_| 0..n as u32).collect();
        Self {
            group,
            action,
            verified: true,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// `γ(g)(h)`.
    #[inline]
    pub fn apply(&self, g: usize, h: usize) -> usize {
        self.action[g * self.group.order() + h] as usize
    }

    pub fn action_row(&self, g: usize) -> &[u32] {
        let n = self.group.order();
        &self.action[g * n..(g + 1) * n]
    }

    pub fn action_rows(&self) -> Vec<Vec<usize>> {
        (0..self.group.order())
            .map(|g| self.action_row(g).iter().map(|&x| x as usize).collect())
            .collect()
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// `g∘h = g·γ(g)(h)`.
    #[inline]
    pub fn circle(&self, g: usize, h: usize) -> usize {
        self.group.mul(g, self.apply(g, h))
    }

    /// Overwrites `γ(g)` with `images`, clearing the verified flag.
    pub fn set_action(&mut self, g: usize, images: &[usize]) -> Result<(), GammaError> {
        let n = self.group.order();
        if images.len() != n || images.iter().any(|&x| x >= n) {
            return Err(GammaError::NotAutomorphism(g));
        }
        for (slot, &x) in self.action[g * n..(g + 1) * n].iter_mut().zip(images) {
            *slot = x as u32;
        }
        self.verified = false;
        Ok(())
    }

    // A bijection φ with φ(a·s) = φ(a)·φ(s) for every a and every generator
    // s is a homomorphism, by induction on word length.
    fn check_automorphisms(&self, gens: &[usize]) -> Result<(), GammaError> {
        let group = &self.group;
        let n = group.order();
        let mut seen = vec![usize::MAX; n];
        for g in 0..n {
            let row = self.action_row(g);
            for &x in row {
                if seen[x as usize] == g {
                    return Err(GammaError::NotAutomorphism(g));
                }
                seen[x as usize] = g;
            }
            for &s in gens {
                let rs = row[s] as usize;
                for a in 0..n {
                    if row[group.mul(a, s)] as usize != group.mul(row[a] as usize, rs) {
                        return Err(GammaError::NotAutomorphism(g));
                    }
                }
            }
        }
        Ok(())
    }

    /// Exhaustive check of `γ(g∘h) = γ(g)∘γ(h)` over all pairs.
    ///
    /// Errors if some `γ(g)` is not an automorphism. On success the verified
    /// flag records whether the equation holds. Both sides are automorphisms,
    /// so each pair is compared on a generating set.
    pub fn verify(&mut self) -> Result<Verdict<(usize, usize)>, GammaError> {
        let gens = self.group.generating_set();
        self.check_automorphisms(&gens)?;
        let n = self.group.order();
        let verdict = Verdict::from_first((0..n).flat_map(|g| (0..n).map(move |h| (g, h))).filter(
            |&(g, h)| {
                let gh = self.circle(g, h);
                let (row_gh, row_g, row_h) = (self.action_row(gh), self.action_row(g), self.action_row(h));
                gens.iter().any(|&x| row_gh[x] != row_g[row_h[x] as usize])
            },
        ));
        self.verified = verdict.holds();
        Ok(verdict)
    }

    /// The group `(G,∘)` as a validated Cayley table.
    pub fn circle_group(&self) -> Result<FiniteGroup, GammaError> {
        if !self.verified {
            return Err(GammaError::Unverified);
        }
        let n = self.group.order();
        let rows: Vec<Vec<usize>> = (0..n)
            .map(|g| (0..n).map(|h| self.circle(g, h)).collect())
            .collect();
        Ok(FiniteGroup::from_table(&rows, None)?)
    }

    /// Decides whether every `γ(g)` is inner. On success returns, for each
    /// `g`, the smallest `x` with `γ(g) = ι(x)`.
    pub fn inner_image_check(&self) -> InnerImage {
        let group = &self.group;
        let mut inner: HashMap<Vec<u32>, usize> = HashMap::new();
        for x in 0..group.order() {
            inner.entry(group.conjugation_images(x)).or_insert(x);
        }
        let mut reps = Vec::with_capacity(group.order());
        for g in 0..group.order() {
            match inner.get(self.action_row(g)) {
                Some(&x) => reps.push(x),
                None => return InnerImage::NotInner(g),
            }
        }
        InnerImage::AllInner(reps)
    }

    pub(crate) fn mark_verified(&mut self) {
        self.verified = true;
    }
}

/// Result of [`GammaFunction::inner_image_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InnerImage {
    /// Every value is inner; `reps[g]` conjugates like `γ(g)`.
    AllInner(Vec<usize>),
    /// The first `g` whose `γ(g)` is not an inner automorphism.
    NotInner(usize),
}

impl InnerImage {
    pub fn is_all_inner(&self) -> bool {
        matches!(self, InnerImage::AllInner(_))
    }
}

/// Exhaustive check of `g∘(h·k) = (g∘h)·g⁻¹·(g∘k)` for two tables on the
/// same element set.
pub fn verify_skew_brace(
    dot: &FiniteGroup,
    circle: &FiniteGroup,
) -> Result<Verdict<(usize, usize, usize)>, GammaError> {
    if dot.order() != circle.order() {
        return Err(GammaError::ShapeMismatch(dot.order(), circle.order()));
    }
    let n = dot.order();
    for g in 0..n {
        let gi = dot.inv(g);
        for h in 0..n {
            let left_part = dot.mul(circle.mul(g, h), gi);
            let hrow = dot.row(h);
            for k in 0..n {
                let lhs = circle.mul(g, hrow[k] as usize);
                let rhs = dot.mul(left_part, circle.mul(g, k));
                if lhs != rhs {
                    return Ok(Verdict::Fails((g, h, k)));
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Recovers `γ(g)(h) = g⁻¹·(g∘h)` from a skew brace.
pub fn gamma_of_brace(
    dot: &Arc<FiniteGroup>,
    circle: &FiniteGroup,
) -> Result<GammaFunction, GammaError> {
    if let Verdict::Fails((g, h, k)) = verify_skew_brace(dot, circle)? {
        return Err(GammaError::NotASkewBrace(g, h, k));
    }
    let n = dot.order();
    let mut action = Vec::with_capacity(n * n);
    for g in 0..n {
        let gi = dot.inv(g);
        action.extend((0..n).map(|h| dot.mul(gi, circle.mul(g, h)) as u32));
    }
    let mut gamma = GammaFunction {
        group: dot.clone(),
        action,
        verified: false,
    };
    match gamma.verify()? {
        Verdict::Holds => Ok(gamma),
        Verdict::Fails((g, h)) => Err(GammaError::NotGamma(g, h)),
    }
}

/// Two group structures on one set satisfying the skew brace identity,
/// together with the gamma function linking them.
#[derive(Debug, Clone)]
pub struct SkewBrace {
    dot: Arc<FiniteGroup>,
    circle: Arc<FiniteGroup>,
    gamma: GammaFunction,
}

impl SkewBrace {
    /// Builds the brace of a gamma function, verifying `γ` if needed and
    /// re-checking the brace identity.
    pub fn from_gamma(mut gamma: GammaFunction) -> Result<Self, GammaError> {
        if !gamma.is_verified() {
            if let Verdict::Fails((g, h)) = gamma.verify()? {
                return Err(GammaError::NotGamma(g, h));
            }
        }
        let circle = gamma.circle_group()?;
        let dot = gamma.group().clone();
        if let Verdict::Fails((g, h, k)) = verify_skew_brace(&dot, &circle)? {
            return Err(GammaError::NotASkewBrace(g, h, k));
        }
        Ok(Self {
            dot,
            circle: Arc::new(circle),
            gamma,
        })
    }

    /// Builds the brace from two tables, extracting its gamma function.
    pub fn from_tables(dot: Arc<FiniteGroup>, circle: Arc<FiniteGroup>) -> Result<Self, GammaError> {
        let gamma = gamma_of_brace(&dot, &circle)?;
        Ok(Self { dot, circle, gamma })
    }

    pub fn dot(&self) -> &Arc<FiniteGroup> {
        &self.dot
    }

    pub fn circle(&self) -> &Arc<FiniteGroup> {
        &self.circle
    }

    pub fn gamma(&self) -> &GammaFunction {
        &self.gamma
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_abelian, make_dihedral, make_heisenberg, HeisenbergCoords};

    fn power_rep(h: &Arc<FiniteGroup>, alpha: i64) -> GroupMap {
        GroupMap::from_fn(h.clone(), h.clone(), |g| h.pow(g, alpha)).unwrap()
    }

    #[test]
    fn constant_rep_gives_trivial_gamma() {
        let h = Arc::new(make_heisenberg(3).unwrap());
        let c = GroupMap::constant_identity(h.clone(), h.clone());
        assert_eq!(GammaFunction::from_inner_rep(&c), GammaFunction::trivial(h));
    }

    #[test]
    fn central_factor_does_not_change_gamma() {
        let h = Arc::new(make_heisenberg(3).unwrap());
        let hc = HeisenbergCoords { p: 3 };
        let c = power_rep(&h, 2);
        let shifted = GroupMap::from_fn(h.clone(), h.clone(), |g| {
            h.mul(h.pow(hc.k(), (g % 3) as i64), c.apply(g))
        })
        .unwrap();
        assert_eq!(GammaFunction::from_inner_rep(&c), GammaFunction::from_inner_rep(&shifted));
    }

    #[test]
    fn trivial_gamma_verifies_and_circle_equals_dot() {
        let g = Arc::new(make_dihedral(4).unwrap());
        let mut gamma = GammaFunction::trivial(g.clone());
        assert!(gamma.verify().unwrap().holds());
        assert_eq!(gamma.circle_group().unwrap(), *g);
    }

    #[test]
    fn power_family_is_gamma_for_all_alpha() {
        for p in [3usize, 5] {
            let h = Arc::new(make_heisenberg(p).unwrap());
            for alpha in 0..p as i64 {
                let mut gamma = GammaFunction::from_inner_rep(&power_rep(&h, alpha));
                assert!(gamma.verify().unwrap().holds(), "p={p} alpha={alpha}");
                let circle = gamma.circle_group().unwrap();
                for g in 0..h.order() {
                    for k in 0..h.order() {
                        let expected = h.product(&[g, k, h.pow(h.commutator(g, k), alpha)]);
                        assert_eq!(circle.mul(g, k), expected);
                    }
                }
            }
        }
    }

    #[test]
    fn corrupted_action_fails_with_witness() {
        let h = Arc::new(make_heisenberg(3).unwrap());
        let hc = HeisenbergCoords { p: 3 };
        let mut gamma = GammaFunction::from_inner_rep(&power_rep(&h, 1));
        let identity: Vec<usize> = (0..27).collect();
        gamma.set_action(hc.u(), &identity).unwrap();
        let verdict = gamma.verify().unwrap();
        let (g, k) = *verdict.witness().expect("corrupted gamma must fail");
        // The witness really violates the functional equation.
        let gk = gamma.circle(g, k);
        assert!((0..27).any(|x| gamma.apply(gk, x) != gamma.apply(g, gamma.apply(k, x))));
        assert!(!gamma.is_verified());
        assert_eq!(gamma.circle_group().unwrap_err(), GammaError::Unverified);
    }

    #[test]
    fn non_automorphism_is_an_error() {
        let c3 = Arc::new(make_abelian(&[3]).unwrap());
        let mut gamma = GammaFunction::new(c3, &[vec![0, 1, 2], vec![0, 0, 0], vec![0, 1, 2]]).unwrap();
        assert_eq!(gamma.verify().unwrap_err(), GammaError::NotAutomorphism(1));
    }

    #[test]
    fn minus_half_gives_abelian_circle_group() {
        let h = Arc::new(make_heisenberg(3).unwrap());
        let mut gamma = GammaFunction::from_inner_rep(&power_rep(&h, 1));
        gamma.verify().unwrap();
        assert!(gamma.circle_group().unwrap().is_abelian());
    }

    #[test]
    fn brace_identity_checks() {
        let c4 = make_abelian(&[4]).unwrap();
        assert!(verify_skew_brace(&c4, &c4).unwrap().holds());
        // Every relabelling of the Klein group fixing 0 forms a brace with
        // Z/4, so the failing pair uses Z/6 against S3.
        let klein = make_abelian(&[2, 2]).unwrap();
        assert!(verify_skew_brace(&c4, &klein).unwrap().holds());
        let c6 = make_abelian(&[6]).unwrap();
        let s3 = make_dihedral(3).unwrap();
        let verdict = verify_skew_brace(&c6, &s3).unwrap();
        assert_eq!(verdict, Verdict::Fails((1, 1, 1)));
        let (g, h, k) = (1, 1, 1);
        assert_ne!(
            s3.mul(g, c6.mul(h, k)),
            c6.mul(c6.mul(s3.mul(g, h), c6.inv(g)), s3.mul(g, k))
        );
        let c2 = make_abelian(&[2]).unwrap();
        assert_eq!(
            verify_skew_brace(&c4, &c2).unwrap_err(),
            GammaError::ShapeMismatch(4, 2)
        );
    }

    #[test]
    fn brace_round_trip() {
        let h = Arc::new(make_heisenberg(3).unwrap());
        for alpha in 0..3 {
            let mut gamma = GammaFunction::from_inner_rep(&power_rep(&h, alpha));
            gamma.verify().unwrap();
            let circle = gamma.circle_group().unwrap();
            assert_eq!(gamma_of_brace(&h, &circle).unwrap(), gamma);
        }
        let c4 = Arc::new(make_abelian(&[4]).unwrap());
        assert_eq!(gamma_of_brace(&c4, &c4).unwrap(), GammaFunction::trivial(c4.clone()));
        let c6 = Arc::new(make_abelian(&[6]).unwrap());
        let s3 = make_dihedral(3).unwrap();
        assert!(matches!(gamma_of_brace(&c6, &s3), Err(GammaError::NotASkewBrace(..))));
    }

    #[test]
    fn inner_checks() {
        let d4 = Arc::new(make_dihedral(4).unwrap());
        assert!(GammaFunction::trivial(d4.clone()).inner_image_check().is_all_inner());
        let rep = GroupMap::from_fn(d4.clone(), d4.clone(), |g| d4.inv(g)).unwrap();
        assert!(GammaFunction::from_inner_rep(&rep).inner_image_check().is_all_inner());
        // r^a s^b ↦ r^(a+b) s^b is an outer automorphism of D4.
        let outer: Vec<usize> = (0..8).map(|e| (e / 4) * 4 + (e % 4 + e / 4) % 4).collect();
        let mut rows = vec![(0..8).collect::<Vec<_>>(); 8];
        rows[3] = outer;
        let gamma = GammaFunction::new(d4, &rows).unwrap();
        assert_eq!(gamma.inner_image_check(), InnerImage::NotInner(3));
    }

    #[test]
    fn gamma_is_multiplicative_on_the_circle_group() {
        let h = Arc::new(make_heisenberg(5).unwrap());
        let mut gamma = GammaFunction::from_inner_rep(&power_rep(&h, 3));
        gamma.verify().unwrap();
        let circle = gamma.circle_group().unwrap();
        // Powers agree between the two structures.
        for g in 0..h.order() {
            for e in 0..5 {
                assert_eq!(circle.pow(g, e), h.pow(g, e));
            }
        }
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn generator_checks_agree_with_brute_force_on_klein_four() {
        let v4 = Arc::new(make_abelian(&[2, 2]).unwrap());
        let perms = permutations(4);
        let id: Vec<usize> = (0..4).collect();
        let (mut gammas, mut errors) = (0, 0);
        for a in &perms {
            for b in &perms {
                for c in &perms {
                    let rows = vec![id.clone(), a.clone(), b.clone(), c.clone()];
                    let auto = rows.iter().all(|r| {
                        (0..4).all(|x| (0..4).all(|y| r[v4.mul(x, y)] == v4.mul(r[x], r[y])))
                    });
                    let circle = |g: usize, h: usize| v4.mul(g, rows[g][h]);
                    let brute = (0..4).all(|g| {
                        (0..4).all(|h| (0..4).all(|x| rows[circle(g, h)][x] == rows[g][rows[h][x]]))
                    });
                    let mut gamma = GammaFunction::new(v4.clone(), &rows).unwrap();
                    match gamma.verify() {
                        Err(GammaError::NotAutomorphism(_)) => {
                            assert!(!auto);
                            errors += 1;
                        }
                        Ok(verdict) => {
                            assert!(auto);
                            assert_eq!(verdict.holds(), brute, "{rows:?}");
                            gammas += usize::from(brute);
                        }
                        Err(e) => panic!("{e:?}"),
                    }
                }
            }
        }
        assert!(gammas > 0 && errors > 0);
    }
}
