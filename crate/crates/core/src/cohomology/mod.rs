//! Second cohomology with trivial coefficients in an elementary abelian
//! `p`-group.
//!
//! Everything here is phrased for a base group `U` (in practice the circle
//! group `(G,∘)`) acting trivially on a coefficient group `Q` that sits
//! inside some ambient group (in practice `Z(G) ≤ G`). Cocycles satisfy
//! `θ(b,c)·θ(a,bc) = θ(ab,c)·θ(a,b)` and coboundaries are written as
//! `κ(g,h) = σ(g)⁻¹·σ(h)⁻¹·σ(gh)`, the form consumed directly by
//! [`reconstruct_rb`].

mod coefficients;
mod extension;

use std::sync::Arc;

use thiserror::Error;

use crate::gamma::GammaFunction;
use crate::group::{FiniteGroup, GroupError, GroupMap, Subgroup};
use crate::linalg::{self, LinearError, LinearSolution, SparseMatrix};
use crate::rota_baxter::{verify_rb, RotaBaxterOperator};
use crate::Verdict;

pub use coefficients::CoefficientGroup;
pub use extension::{
    build_central_extension, derived_intersection_obstruction, extract_cocycle_from_section,
    find_complement, CentralExtension, Obstruction, DEFAULT_COMPLEMENT_CAP,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("coefficient group is not abelian")]
    NotAbelian,
    #[error("coefficient group is not elementary abelian: element {0} has order {1}")]
    NotElementaryAbelian(usize, usize),
    #[error("basis elements are not independent or do not span the subgroup")]
    BasisNotIndependent,
    #[error("element {0} does not lie in the coefficient group")]
    NotACoefficient(usize),
    #[error("coefficient group is not central: {0} is not in the centre")]
    NotCentral(usize),
    #[error("the gamma function has not been verified")]
    GammaUnverified,
    #[error("lift does not represent γ at {0}: ι(C({0})) ≠ γ({0})")]
    RepMismatch(usize),
    #[error("circle table disagrees with the gamma function at ({0}, {1})")]
    CircleMismatch(usize, usize),
    #[error("cocycle value at ({0}, {1}) is not in the coefficient group")]
    ValueNotCentral(usize, usize),
    #[error("not a 2-cocycle: the identity fails at ({0}, {1}, {2})")]
    NotACocycle(usize, usize, usize),
    #[error("table has {len} entries, expected {expected}")]
    Shape { len: usize, expected: usize },
    #[error("groups or coefficient groups do not match")]
    Mismatch,
    #[error("not a section: the image of {0} does not project back to it")]
    NotASection(usize),
    #[error("given elements do not generate the base group")]
    GeneratorsDoNotGenerate,
    #[error("search space of {candidates} lifts exceeds the cap {cap}")]
    TooLarge { candidates: u128, cap: u128 },
    #[error("not a subgroup of the base group")]
    NotASubgroup,
    #[error("coefficient map is not a homomorphism at ({0}, {1})")]
    NotAHomomorphism(usize, usize),
    #[error("σ does not certify κ at ({0}, {1})")]
    SigmaDoesNotCertify(usize, usize),
    #[error("reconstructed operator fails the Rota–Baxter check at ({0}, {1})")]
    ReconstructionFailedRbCheck(usize, usize),
    #[error("reconstructed operator does not reproduce γ at {0}")]
    ReconstructionWrongGamma(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Linear(#[from] LinearError),
}

/// A function `U × U → Q` stored as coefficient indices.
#[derive(Debug, Clone)]
pub struct TwoCocycle {
    base: Arc<FiniteGroup>,
    coeff: Arc<CoefficientGroup>,
    values: Vec<u32>,
}

/// Entrywise equality over equal base and coefficient groups.
impl PartialEq for TwoCocycle {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values && self.base == other.base && self.coeff == other.coeff
    }
}

impl TwoCocycle {
    /// Wraps a table of coefficient indices (`rows[a][b] = θ(a,b)`). The
    /// cocycle identity is not checked; see [`TwoCocycle::check`].
    pub fn new(
        base: Arc<FiniteGroup>,
        coeff: Arc<CoefficientGroup>,
        rows: &[Vec<usize>],
    ) -> Result<Self, CohomologyError> {
        let n = base.order();
        if rows.len() != n {
            return Err(CohomologyError::Shape {
                len: rows.len(),
                expected: n,
            });
        }
        let mut values = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(CohomologyError::Shape {
                    len: row.len(),
                    expected: n,
                });
            }
            for &v in row {
                if v >= coeff.order() {
                    return Err(CohomologyError::NotACoefficient(v));
                }
                values.push(v as u32);
            }
        }
        Ok(Self {
            base,
            coeff,
            values,
        })
    }

    pub fn from_fn(
        base: Arc<FiniteGroup>,
        coeff: Arc<CoefficientGroup>,
        mut f: impl FnMut(usize, usize) -> usize,
    ) -> Self {
        let n = base.order();
        let mut values = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let v = f(a, b);
                debug_assert!(v < coeff.order());
                values.push(v as u32);
            }
        }
        Self {
            base,
            coeff,
            values,
        }
    }

    pub fn trivial(base: Arc<FiniteGroup>, coeff: Arc<CoefficientGroup>) -> Self {
        let n = base.order();
        Self {
            base,
            coeff,
            values: vec![0; n * n],
        }
    }

    pub fn base(&self) -> &Arc<FiniteGroup> {
        &self.base
    }

    pub fn coeff(&self) -> &Arc<CoefficientGroup> {
        &self.coeff
    }

    /// `θ(a,b)` as a coefficient index.
    #[inline]
    pub fn value(&self, a: usize, b: usize) -> usize {
        self.values[a * self.base.order() + b] as usize
    }

    /// `θ(a,b)` as an element of the ambient group.
    pub fn ambient_value(&self, a: usize, b: usize) -> usize {
        self.coeff.ambient_index(self.value(a, b))
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        let n = self.base.order();
        (0..n)
            .map(|a| (0..n).map(|b| self.value(a, b)).collect())
            .collect()
    }

    pub fn is_identically_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Decides `θ(b,c)·θ(a,bc) = θ(ab,c)·θ(a,b)` for all triples.
    ///
    /// The identity for a fixed `b` is associativity of the extension with
    /// middle factor over `b`, and those middle factors are closed under the
    /// product. So `b` only needs to range over the identity and a
    /// generating set; `a` and `c` stay exhaustive.
    pub fn check(&self) -> Verdict<(usize, usize, usize)> {
        let n = self.base.order();
        let q = self.coeff.group();
        let middles = std::iter::once(0).chain(self.base.generating_set());
        for b in middles {
            let row_b = self.base.row(b);
            let theta_b = self.row(b);
            for a in 0..n {
                let row_a = self.base.row(a);
                let theta_a = self.row(a);
                let ab = row_a[b] as usize;
                let theta_ab = self.row(ab);
                let t_ab = theta_a[b] as usize;
                for c in 0..n {
                    let bc = row_b[c] as usize;
                    let lhs = q.mul(theta_b[c] as usize, theta_a[bc] as usize);
                    let rhs = q.mul(theta_ab[c] as usize, t_ab);
                    if lhs != rhs {
                        return Verdict::Fails((a, b, c));
                    }
                }
            }
        }
        Verdict::Holds
    }

    fn row(&self, a: usize) -> &[u32] {
        let n = self.base.order();
        &self.values[a * n..(a + 1) * n]
    }

    /// Pointwise `self · other⁻¹`.
    pub fn quotient(&self, other: &TwoCocycle) -> Result<TwoCocycle, CohomologyError> {
        if self.base != other.base || self.coeff != other.coeff {
            return Err(CohomologyError::Mismatch);
        }
        let q = self.coeff.group();
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| q.mul(a as usize, q.inv(b as usize)) as u32)
            .collect();
        Ok(TwoCocycle {
            base: self.base.clone(),
            coeff: self.coeff.clone(),
            values,
        })
    }

    /// The coboundary `(g,h) ↦ σ(g)⁻¹·σ(h)⁻¹·σ(gh)` of a map into `Q`
    /// (given as coefficient indices).
    pub fn coboundary_of(
        base: Arc<FiniteGroup>,
        coeff: Arc<CoefficientGroup>,
        sigma: &[usize],
    ) -> TwoCocycle {
        let q = coeff.group().clone();
        let b = base.clone();
        TwoCocycle::from_fn(base, coeff, |g, h| {
            q.product(&[q.inv(sigma[g]), q.inv(sigma[h]), sigma[b.mul(g, h)]])
        })
    }
}

/// A map `σ: U → Q` witnessing that a cocycle is a coboundary.
#[derive(Debug, Clone, PartialEq)]
pub struct Coboundary {
    sigma: GroupMap,
    coeff: Arc<CoefficientGroup>,
}

impl Coboundary {
    pub fn new(
        base: Arc<FiniteGroup>,
        coeff: Arc<CoefficientGroup>,
        sigma: Vec<usize>,
    ) -> Result<Self, CohomologyError> {
        let sigma = GroupMap::new(base, coeff.group().clone(), sigma)?;
        Ok(Self { sigma, coeff })
    }

    pub fn map(&self) -> &GroupMap {
        &self.sigma
    }

    pub fn coeff(&self) -> &Arc<CoefficientGroup> {
        &self.coeff
    }

    /// `σ(g)` as a coefficient index.
    pub fn value(&self, g: usize) -> usize {
        self.sigma.apply(g)
    }

    /// `σ(g)` as an element of the ambient group.
    pub fn ambient_value(&self, g: usize) -> usize {
        self.coeff.ambient_index(self.sigma.apply(g))
    }

    /// First `(g,h)` where `κ(g,h) ≠ σ(g)⁻¹·σ(h)⁻¹·σ(gh)`.
    pub fn certifies(&self, kappa: &TwoCocycle) -> Verdict<(usize, usize)> {
        let base = kappa.base();
        let q = self.coeff.group();
        let n = base.order();
        for g in 0..n {
            for h in 0..n {
                let s = q.product(&[
                    q.inv(self.value(g)),
                    q.inv(self.value(h)),
                    self.value(base.mul(g, h)),
                ]);
                if s != kappa.value(g, h) {
                    return Verdict::Fails((g, h));
                }
            }
        }
        Verdict::Holds
    }
}

/// Position of one scalar equation in the coboundary system: the
/// coordinate `coord` of the equation for the pair `(g,h)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct EquationIndex {
    pub g: usize,
    pub h: usize,
    pub coord: usize,
}

/// Answer of [`solve_coboundary`].
#[derive(Debug, Clone, PartialEq)]
pub enum CoboundarySolution {
    /// The class is trivial; `σ` certifies it.
    Trivial(Coboundary),
    /// The class is nontrivial. The listed equations, combined with the given
    /// coefficients, sum to `0 = c` with `c ≠ 0`.
    Nontrivial(Vec<(EquationIndex, u32)>),
}

impl CoboundarySolution {
    pub fn is_trivial(&self) -> bool {
        matches!(self, CoboundarySolution::Trivial(_))
    }
}

/// The linear system `σ(gh) − σ(g) − σ(h) = κ(g,h)` over `F_p`, with
/// unknown `g·rank + t` for coordinate `t` of `σ(g)` and equation
/// `(g·n + h)·rank + t`.
pub fn coboundary_system(kappa: &TwoCocycle) -> Result<(SparseMatrix, Vec<u32>), CohomologyError> {
    let base = kappa.base();
    let coeff = kappa.coeff();
    let n = base.order();
    let rank = coeff.rank();
    let mut a = SparseMatrix::new(n * rank, coeff.prime())?;
    let mut b = Vec::with_capacity(n * n * rank);
    for g in 0..n {
        for h in 0..n {
            let gh = base.mul(g, h);
            let rhs = coeff.coords(kappa.value(g, h));
            for t in 0..rank {
                a.push_row(&[(gh * rank + t, 1), (g * rank + t, -1), (h * rank + t, -1)])?;
                b.push(rhs[t]);
            }
        }
    }
    Ok((a, b))
}

/// Decides whether `κ` is a coboundary by Gaussian elimination over `F_p`.
pub fn solve_coboundary(kappa: &TwoCocycle) -> Result<CoboundarySolution, CohomologyError> {
    let base = kappa.base();
    let coeff = kappa.coeff();
    let n = base.order();
    let rank = coeff.rank();
    let (a, b) = coboundary_system(kappa)?;
    match linalg::solve_linear_fp(&a, &b)? {
        LinearSolution::Solution(x) => {
            let sigma = (0..n)
                .map(|g| coeff.from_coords(&x[g * rank..(g + 1) * rank]))
                .collect();
            Ok(CoboundarySolution::Trivial(Coboundary::new(
                base.clone(),
                coeff.clone(),
                sigma,
            )?))
        }
        LinearSolution::Inconsistent(rows) => Ok(CoboundarySolution::Nontrivial(
            rows.into_iter()
                .map(|(row, c)| {
                    let (pair, coord) = (row / rank, row % rank);
                    (
                        EquationIndex {
                            g: pair / n,
                            h: pair % n,
                            coord,
                        },
                        c,
                    )
                })
                .collect(),
        )),
    }
}

/// Checks a nontriviality certificate returned by [`solve_coboundary`]
/// against the cocycle, independently of the solver.
pub fn check_nontriviality_certificate(
    kappa: &TwoCocycle,
    certificate: &[(EquationIndex, u32)],
) -> bool {
    let base = kappa.base();
    let coeff = kappa.coeff();
    let p = coeff.prime() as i64;
    let rank = coeff.rank();
    let mut lhs = vec![0i64; base.order() * rank];
    let mut rhs = 0i64;
    for &(EquationIndex { g, h, coord }, c) in certificate {
        let c = c as i64;
        let gh = base.mul(g, h);
        lhs[gh * rank + coord] += c;
        lhs[g * rank + coord] -= c;
        lhs[h * rank + coord] -= c;
        rhs += c * coeff.coords(kappa.value(g, h))[coord] as i64;
    }
    lhs.iter().all(|v| v.rem_euclid(p) == 0) && rhs.rem_euclid(p) != 0
}

/// The cocycle `κ(g,h) = C(g)·C(h)·C(g∘h)⁻¹` of a lift `C` of an inner-valued
/// gamma function, with values in `coeff` (normally `Z(G)`).
///
/// `circle` must be the circle group of `gamma` and `coeff` a central
/// subgroup of the gamma function's group.
pub fn extract_kappa(
    gamma: &GammaFunction,
    circle: &Arc<FiniteGroup>,
    lift: &GroupMap,
    coeff: &Arc<CoefficientGroup>,
) -> Result<TwoCocycle, CohomologyError> {
    if !gamma.is_verified() {
        return Err(CohomologyError::GammaUnverified);
    }
    let group = gamma.group();
    let n = group.order();
    if circle.order() != n || lift.source().as_ref() != group.as_ref() || coeff.ambient().as_ref() != group.as_ref() {
        return Err(CohomologyError::Mismatch);
    }
    for g in 0..n {
        for h in 0..n {
            if circle.mul(g, h) != gamma.circle(g, h) {
                return Err(CohomologyError::CircleMismatch(g, h));
            }
        }
    }
    if let Some(&z) = coeff.elements().iter().find(|&&z| !group.is_central(z)) {
        return Err(CohomologyError::NotCentral(z));
    }
    for g in 0..n {
        let c = lift.apply(g);
        let row = gamma.action_row(g);
        if (0..n).any(|y| group.conjugate(c, y) != row[y] as usize) {
            return Err(CohomologyError::RepMismatch(g));
        }
    }
    let lift_inv: Vec<usize> = (0..n).map(|g| group.inv(lift.apply(g))).collect();
    let mut values = Vec::with_capacity(n * n);
    for g in 0..n {
        let cg = lift.apply(g);
        for h in 0..n {
            let v = group.mul(group.mul(cg, lift.apply(h)), lift_inv[circle.mul(g, h)]);
            match coeff.coeff_index(v) {
                Some(q) => values.push(q as u32),
                None => return Err(CohomologyError::ValueNotCentral(g, h)),
            }
        }
    }
    let kappa = TwoCocycle {
        base: circle.clone(),
        coeff: coeff.clone(),
        values,
    };
    if let Verdict::Fails((a, b, c)) = kappa.check() {
        return Err(CohomologyError::NotACocycle(a, b, c));
    }
    Ok(kappa)
}

/// Restricts `κ` to a subgroup of its base and pushes its values through a
/// coefficient homomorphism: `κ′(s,t) = φ(κ(s,t))`.
///
/// The new base is the subgroup renumbered by [`FiniteGroup::restrict`].
pub fn transport_cocycle(
    kappa: &TwoCocycle,
    sub: &Subgroup,
    coeff_morphism: &GroupMap,
    target: &Arc<CoefficientGroup>,
) -> Result<TwoCocycle, CohomologyError> {
    let base = kappa.base();
    if sub.parent_order() != base.order() || Subgroup::new(base, sub.members()).is_none() {
        return Err(CohomologyError::NotASubgroup);
    }
    if coeff_morphism.source().as_ref() != kappa.coeff().group().as_ref()
        || coeff_morphism.target().as_ref() != target.group().as_ref()
    {
        return Err(CohomologyError::Mismatch);
    }
    if let Some((a, b)) = coeff_morphism.homomorphism_failure() {
        return Err(CohomologyError::NotAHomomorphism(a, b));
    }
    let members = sub.members();
    let restricted = Arc::new(base.restrict(sub));
    let transported = TwoCocycle::from_fn(restricted, target.clone(), |s, t| {
        coeff_morphism.apply(kappa.value(members[s], members[t]))
    });
    if let Verdict::Fails((a, b, c)) = transported.check() {
        return Err(CohomologyError::NotACocycle(a, b, c));
    }
    Ok(transported)
}

/// Builds `B(g) = σ(g)·C(g)` from a coboundary certificate for the cocycle
/// of `(γ, C)`, and checks that it is a Rota–Baxter operator inducing `γ`.
pub fn reconstruct_rb(
    gamma: &GammaFunction,
    circle: &FiniteGroup,
    lift: &GroupMap,
    sigma: &Coboundary,
) -> Result<RotaBaxterOperator, CohomologyError> {
    let group = gamma.group();
    let n = group.order();
    if sigma.map().source().order() != n || sigma.coeff().ambient().as_ref() != group.as_ref() {
        return Err(CohomologyError::Mismatch);
    }
    let s: Vec<usize> = (0..n).map(|g| sigma.ambient_value(g)).collect();
    for g in 0..n {
        for h in 0..n {
            let gh = circle.mul(g, h);
            let kappa = group.mul(
                group.mul(lift.apply(g), lift.apply(h)),
                group.inv(lift.apply(gh)),
            );
            let cob = group.product(&[group.inv(s[g]), group.inv(s[h]), s[gh]]);
            if kappa != cob {
                return Err(CohomologyError::SigmaDoesNotCertify(g, h));
            }
        }
    }
    let images: Vec<usize> = (0..n).map(|g| group.mul(s[g], lift.apply(g))).collect();
    if let Verdict::Fails((g, h)) = verify_rb(group, &images) {
        return Err(CohomologyError::ReconstructionFailedRbCheck(g, h));
    }
    let op = RotaBaxterOperator::verified(group.clone(), images)
        .expect("operator was just verified");
    let induced = op.gamma().expect("operator was just verified");
    if let Some(g) = (0..n).find(|&g| induced.action_row(g) != gamma.action_row(g)) {
        return Err(CohomologyError::ReconstructionWrongGamma(g));
    }
    Ok(op)
}
