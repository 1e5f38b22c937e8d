//! Parameterised constructions of the worked examples: the `α`-family of
//! gamma functions on the Heisenberg group, the order-`p⁵` non-split
//! example, the non-inner gamma functions from semidirect products, and a
//! centreless sanity case.
//!
//! Every constructor checks its closed forms exhaustively and fails with
//! [`GalleryError::ClosedFormMismatch`] if a table disagrees.

use std::sync::Arc;

use thiserror::Error;

use crate::cohomology::{
    build_central_extension, derived_intersection_obstruction, extract_kappa, transport_cocycle,
    CentralExtension, Coboundary, CoefficientGroup, CohomologyError, Obstruction, TwoCocycle,
};
use crate::gamma::{GammaError, GammaFunction, InnerImage, SkewBrace};
use crate::group::{
    direct_product, make_abelian, make_cyclic, make_dihedral, make_heisenberg, semidirect_product,
    FiniteGroup, GroupError, GroupMap, HeisenbergCoords, Subgroup,
};
use crate::linalg::{inv_mod, is_prime, pow_mod};
use crate::rota_baxter::{rb_from_centerless, RotaBaxterError, RotaBaxterOperator};
use crate::Verdict;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GalleryError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("α = {alpha} is −1/2 modulo {p}")]
    AlphaIsMinusHalf { p: usize, alpha: usize },
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("closed form for {what} disagrees with the table at ({g}, {h})")]
    ClosedFormMismatch { what: &'static str, g: usize, h: usize },
    #[error("the gamma function fails its functional equation at ({0}, {1})")]
    NotGamma(usize, usize),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Gamma(#[from] GammaError),
    #[error(transparent)]
    RotaBaxter(#[from] RotaBaxterError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

fn check_odd_prime(p: usize) -> Result<(), GalleryError> {
    if p == 2 || p > u32::MAX as usize || !is_prime(p as u32) {
        return Err(GalleryError::NotOddPrime(p as u64));
    }
    Ok(())
}

fn modp(x: i64, p: usize) -> usize {
    x.rem_euclid(p as i64) as usize
}

/// `(α² + α)/2` from the representative `0 ≤ α < p`.
pub fn critical_exponent(alpha: usize) -> i64 {
    let a = alpha as i64;
    (a * a + a) / 2
}

fn verified_inner_gamma(lift: &GroupMap) -> Result<GammaFunction, GalleryError> {
    let mut gamma = GammaFunction::from_inner_rep(lift);
    match gamma.verify()? {
        Verdict::Holds => Ok(gamma),
        Verdict::Fails((g, h)) => Err(GalleryError::NotGamma(g, h)),
    }
}

fn mismatch(what: &'static str, (g, h): (usize, usize)) -> GalleryError {
    GalleryError::ClosedFormMismatch { what, g, h }
}

/// First pair where `f` is false.
fn first_failure(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Option<(usize, usize)> {
    (0..n)
        .flat_map(|g| (0..n).map(move |h| (g, h)))
        .find(|&(g, h)| !f(g, h))
}

/// `γ(g) = ι(g^α)` on the Heisenberg group of order `p³`.
#[derive(Debug, Clone)]
pub struct AlphaFamilyInstance {
    pub p: usize,
    pub alpha: usize,
    pub heisenberg: Arc<FiniteGroup>,
    pub gamma: GammaFunction,
    pub circle: Arc<FiniteGroup>,
    /// `C(g) = g^α`.
    pub lift: GroupMap,
    pub center: Arc<CoefficientGroup>,
    pub kappa: TwoCocycle,
    /// `1 + 2α ≢ 0 (mod p)`.
    pub splits: bool,
}

/// Builds the `α`-family instance and checks
/// `κ(g,h) = [g,h]^{−(α²+α)/2}` and `[g,h]_∘ = [g,h]^{1+2α}` entrywise.
pub fn build_alpha_family(p: usize, alpha: usize) -> Result<AlphaFamilyInstance, GalleryError> {
    check_odd_prime(p)?;
    if alpha >= p {
        return Err(GalleryError::BadParameters(format!(
            "α = {alpha} is not a residue in 0..{p}"
        )));
    }
    let h = Arc::new(make_heisenberg(p)?);
    let n = h.order();
    let lift = GroupMap::from_fn(h.clone(), h.clone(), |g| h.pow(g, alpha as i64))?;
    let gamma = verified_inner_gamma(&lift)?;
    let circle = Arc::new(gamma.circle_group()?);
    let center = Arc::new(CoefficientGroup::center_of(h.clone())?);
    let kappa = extract_kappa(&gamma, &circle, &lift, &center)?;

    let e = critical_exponent(alpha);
    if let Some(w) = first_failure(n, |g, hh| {
        kappa.ambient_value(g, hh) == h.pow(h.commutator(g, hh), -e)
    }) {
        return Err(mismatch("κ(g,h) = [g,h]^−(α²+α)/2", w));
    }
    let circle_commutator = |g: usize, hh: usize| {
        circle.product(&[g, hh, circle.inv(g), circle.inv(hh)])
    };
    if let Some(w) = first_failure(n, |g, hh| {
        circle_commutator(g, hh) == h.pow(h.commutator(g, hh), 1 + 2 * alpha as i64)
    }) {
        return Err(mismatch("[g,h]∘ = [g,h]^(1+2α)", w));
    }

    Ok(AlphaFamilyInstance {
        p,
        alpha,
        heisenberg: h,
        gamma,
        circle,
        lift,
        center,
        kappa,
        splits: (1 + 2 * alpha) % p != 0,
    })
}

fn one_plus_two_alpha_inverse(p: usize, alpha: usize) -> Result<u32, GalleryError> {
    let d = (1 + 2 * alpha) % p;
    if d == 0 {
        return Err(GalleryError::AlphaIsMinusHalf { p, alpha });
    }
    Ok(inv_mod(d as u32, p as u32))
}

/// Rewrites `uⁱ·vʲ·k^r` as `uⁱ∘vʲ∘k̃^q` with `k̃ = k^{1+2α}`; returns
/// `(i, j, q)` with `q = (r − ijα)(1+2α)⁻¹`.
pub fn normal_form_switch(
    p: usize,
    alpha: usize,
    i: i64,
    j: i64,
    r: i64,
) -> Result<(usize, usize, usize), GalleryError> {
    let inv = one_plus_two_alpha_inverse(p, alpha)? as i64;
    let (i, j) = (modp(i, p), modp(j, p));
    let q = modp(modp(r - (i * j * alpha) as i64, p) as i64 * inv, p);
    Ok((i, j, q))
}

/// `B(uⁱvʲk^r) = u^{iα}v^{jα}k^{α²(r−ijα)(1+2α)⁻¹}`, checked exhaustively.
pub fn rb_formula_alpha(p: usize, alpha: usize) -> Result<RotaBaxterOperator, GalleryError> {
    check_odd_prime(p)?;
    one_plus_two_alpha_inverse(p, alpha)?;
    let h = Arc::new(make_heisenberg(p)?);
    let hc = HeisenbergCoords { p };
    let a = alpha as i64;
    let images = (0..h.order())
        .map(|g| {
            let (i, j, r) = hc.coords(g);
            let (i, j, r) = (i as i64, j as i64, r as i64);
            let (_, _, q) = normal_form_switch(p, alpha, i, j, r)?;
            Ok(hc.index(i * a, j * a, a * a * q as i64))
        })
        .collect::<Result<Vec<_>, GalleryError>>()?;
    Ok(RotaBaxterOperator::verified(h, images)?)
}

/// The splitting map `σ(uⁱ∘vʲ∘k̃^q) = k^{−((α²+α)/2)(2q+ij)}` of a split
/// instance, as a coboundary for its `κ`.
pub fn alpha_closed_form_sigma(inst: &AlphaFamilyInstance) -> Result<Coboundary, GalleryError> {
    let p = inst.p;
    let hc = HeisenbergCoords { p };
    let e = critical_exponent(inst.alpha);
    let sigma = (0..inst.heisenberg.order())
        .map(|g| {
            let (i, j, r) = hc.coords(g);
            let (i, j, q) = normal_form_switch(p, inst.alpha, i as i64, j as i64, r as i64)?;
            let ambient = hc.index(0, 0, -e * (2 * q as i64 + (i * j) as i64));
            Ok(inst.center.coeff_index(ambient).expect("powers of k are central"))
        })
        .collect::<Result<Vec<_>, GalleryError>>()?;
    Ok(Coboundary::new(inst.circle.clone(), inst.center.clone(), sigma)?)
}

/// `G = S × H` with `S = ⟨x, y⟩ ≅ C_p²` and `H` Heisenberg of order `p³`,
/// with the lift `C(xⁱyʲc) = uⁱvʲ`.
///
/// Elements are indexed `s·p³ + h` where `s = i·p + j` encodes `xⁱyʲ` and
/// `h` is the Heisenberg index.
#[derive(Debug, Clone)]
pub struct P5Instance {
    pub p: usize,
    pub group: Arc<FiniteGroup>,
    pub gamma: GammaFunction,
    pub circle: Arc<FiniteGroup>,
    pub lift: GroupMap,
    /// `Z(G) = S × K`.
    pub center: Arc<CoefficientGroup>,
    pub kappa: TwoCocycle,
    /// `S × 1`, a subgroup of both `(G,·)` and `(G,∘)`.
    pub s_part: Subgroup,
    /// `K = Z(H)`, as coefficients in `G`.
    pub k_part: Arc<CoefficientGroup>,
}

impl P5Instance {
    fn heisenberg_size(&self) -> usize {
        self.p.pow(3)
    }

    /// Index of `xⁱyʲ·c` for a Heisenberg index `c`.
    pub fn element(&self, i: usize, j: usize, c: usize) -> usize {
        ((i % self.p) * self.p + j % self.p) * self.heisenberg_size() + c
    }

    /// `(i, j, c)` with `g = xⁱyʲ·c`.
    pub fn coords(&self, g: usize) -> (usize, usize, usize) {
        let n = self.heisenberg_size();
        let s = g / n;
        (s / self.p, s % self.p, g % n)
    }

    /// `Z(G) → K`, `(s, k^q) ↦ k^q`, on coefficient indices.
    pub fn projection_to_k(&self) -> Result<GroupMap, GalleryError> {
        let n = self.heisenberg_size();
        let center = &self.center;
        Ok(GroupMap::from_fn(center.group().clone(), self.k_part.group().clone(), |z| {
            let q = center.ambient_index(z) % n;
            self.k_part.coeff_index(q).expect("central Heisenberg part lies in K")
        })?)
    }

    /// `κ′ = φ∘κ` restricted to `(S,∘)` with coefficients in `K`.
    pub fn transported_kappa(&self) -> Result<TwoCocycle, GalleryError> {
        let phi = self.projection_to_k()?;
        let sub = Subgroup::new(&self.circle, self.s_part.members())
            .expect("S is a subgroup of the circle group");
        Ok(transport_cocycle(&self.kappa, &sub, &phi, &self.k_part)?)
    }

    /// The extension `1 → Z(G) → E → (G,∘) → 1` of `κ`, of order `p⁸`.
    pub fn extension(&self) -> Result<CentralExtension, GalleryError> {
        Ok(build_central_extension(&self.kappa)?)
    }

    /// `Z(G) ∩ [E,E]`; contains `(k, 1)`.
    pub fn obstruction(ext: &CentralExtension) -> Obstruction {
        derived_intersection_obstruction(ext)
    }
}

/// Builds the order-`p⁵` example and checks `κ = k^{−jm}` entrywise and that
/// `·` and `∘` agree on `S`.
pub fn build_p5_example(p: usize) -> Result<P5Instance, GalleryError> {
    check_odd_prime(p)?;
    let s = make_abelian(&[p, p])?;
    let h = make_heisenberg(p)?;
    let hn = h.order();
    let group = Arc::new(direct_product(&s, &h)?);
    let hc = HeisenbergCoords { p };
    let lift = GroupMap::from_fn(group.clone(), group.clone(), |g| {
        let sidx = g / hn;
        hc.index((sidx / p) as i64, (sidx % p) as i64, 0)
    })?;
    let gamma = verified_inner_gamma(&lift)?;
    let circle = Arc::new(gamma.circle_group()?);
    let center = Arc::new(CoefficientGroup::center_of(group.clone())?);
    let kappa = extract_kappa(&gamma, &circle, &lift, &center)?;

    let s_members: Vec<usize> = (0..p * p).map(|sidx| sidx * hn).collect();
    let s_part = Subgroup::new(&group, &s_members).expect("S × 1 is a subgroup");
    let k_members: Vec<usize> = (0..p).collect();
    let k_sub = Subgroup::new(&group, &k_members).expect("K is a subgroup");
    let k_part = Arc::new(CoefficientGroup::from_subgroup(group.clone(), &k_sub)?);

    let inst = P5Instance {
        p,
        group,
        gamma,
        circle,
        lift,
        center,
        kappa,
        s_part,
        k_part,
    };

    let n = inst.group.order();
    if let Some(w) = first_failure(n, |a, b| {
        let (_, j, _) = inst.coords(a);
        let (m, _, _) = inst.coords(b);
        inst.kappa.ambient_value(a, b) == hc.index(0, 0, -((j * m) as i64))
    }) {
        return Err(mismatch("κ = k^−jm", w));
    }
    if let Some(w) = first_failure(p * p, |a, b| {
        let (a, b) = (s_members[a], s_members[b]);
        inst.group.mul(a, b) == inst.circle.mul(a, b)
    }) {
        return Err(mismatch("· = ∘ on S", (s_members[w.0], s_members[w.1])));
    }
    Ok(inst)
}

/// The semidirect-product constructions of non-inner gamma functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NonInnerKind {
    /// `C₄ ⋉ D₄` with the generator acting by `r ↦ r`, `s ↦ rs`.
    C4D4,
    /// `C₄ × D₄` with trivial action; every value of `γ` is inner.
    C4D4Trivial,
    /// `C_q ⋉ (C_q ⋉_μ C_p²)` with `μ = cI` and the action `ν = diag(c, 1)`;
    /// `c` must have multiplicative order `q` modulo `p`.
    Vhq { p: usize, q: usize, c: usize },
}

impl NonInnerKind {
    /// `Vhq` with the smallest `c` of order `q` modulo `p`.
    pub fn vhq(p: usize, q: usize) -> Result<Self, GalleryError> {
        check_vhq_primes(p, q)?;
        let c = (2..p)
            .find(|&c| multiplicative_order(c, p) == q)
            .expect("(Z/p)^× is cyclic, so an element of order q exists");
        Ok(NonInnerKind::Vhq { p, q, c })
    }
}

fn multiplicative_order(c: usize, p: usize) -> usize {
    let mut x = c % p;
    let mut k = 1;
    while x != 1 {
        x = x * c % p;
        k += 1;
        if k > p {
            return 0;
        }
    }
    k
}

fn check_vhq_primes(p: usize, q: usize) -> Result<(), GalleryError> {
    let prime = |x: usize| x <= u32::MAX as usize && is_prime(x as u32);
    if p == 2 || !prime(p) || !prime(q) || (p - 1) % q != 0 {
        return Err(GalleryError::BadParameters(format!(
            "need primes p odd and q dividing p − 1, got p = {p}, q = {q}"
        )));
    }
    Ok(())
}

/// A skew brace `(A × B, ·, ∘)` with `·` the direct and `∘` the semidirect
/// product, together with the inner-image verdict for its gamma function.
#[derive(Debug, Clone)]
pub struct NonInnerInstance {
    pub kind: NonInnerKind,
    pub brace: SkewBrace,
    pub inner: InnerImage,
}

pub fn build_noninner_example(kind: NonInnerKind) -> Result<NonInnerInstance, GalleryError> {
    let (a, b, action) = match kind {
        NonInnerKind::C4D4 | NonInnerKind::C4D4Trivial => {
            let shear = usize::from(kind == NonInnerKind::C4D4);
            let a = make_cyclic(4)?;
            let b = make_dihedral(4)?;
            // r^x s^y sits at y·4 + x and goes to r^(x + t·y) s^y.
            let action: Vec<Vec<usize>> = (0..4)
                .map(|t| {
                    (0..8)
                        .map(|e| {
                            let (x, y) = (e % 4, e / 4);
                            y * 4 + (x + shear * t * y) % 4
                        })
                        .collect()
                })
                .collect();
            (a, b, action)
        }
        NonInnerKind::Vhq { p, q, c } => {
            check_vhq_primes(p, q)?;
            if multiplicative_order(c, p) != q {
                return Err(GalleryError::BadParameters(format!(
                    "{c} does not have multiplicative order {q} modulo {p}"
                )));
            }
            let v = make_abelian(&[p, p])?;
            let hq = make_cyclic(q)?;
            // v = v₁·p + v₂; μ^t scales both coordinates by c^t.
            let scale = |t: usize, x: usize| x * pow_mod(c as u32, t as u64, p as u32) as usize % p;
            let mu: Vec<Vec<usize>> = (0..q)
                .map(|t| (0..p * p).map(|x| scale(t, x / p) * p + scale(t, x % p)).collect())
                .collect();
            let b = semidirect_product(&hq, &v, &mu)?;
            let a = make_cyclic(q)?;
            // (h, v) at h·p² + v; ν^t scales the first coordinate only.
            let nu: Vec<Vec<usize>> = (0..q)
                .map(|t| {
                    (0..q * p * p)
                        .map(|e| {
                            let (hh, x) = (e / (p * p), e % (p * p));
                            hh * p * p + scale(t, x / p) * p + x % p
                        })
                        .collect()
                })
                .collect();
            (a, b, nu)
        }
    };
    let dot = Arc::new(direct_product(&a, &b)?);
    let circle = Arc::new(semidirect_product(&a, &b, &action)?);
    let brace = SkewBrace::from_tables(dot, circle)?;
    let inner = brace.gamma().inner_image_check();
    Ok(NonInnerInstance { kind, brace, inner })
}

/// The centreless case: `S₃` with `γ(g) = ι(g⁻¹)`, whose operator is
/// recovered by inverting `ι`.
#[derive(Debug, Clone)]
pub struct CenterlessInstance {
    pub group: Arc<FiniteGroup>,
    pub gamma: GammaFunction,
    pub operator: RotaBaxterOperator,
    pub kappa: TwoCocycle,
}

pub fn build_centerless_example() -> Result<CenterlessInstance, GalleryError> {
    let group = Arc::new(make_dihedral(3)?);
    let inverse = GroupMap::from_fn(group.clone(), group.clone(), |g| group.inv(g))?;
    let gamma = verified_inner_gamma(&inverse)?;
    let operator = rb_from_centerless(&group, &gamma)?;
    let circle = Arc::new(gamma.circle_group()?);
    let center = Arc::new(CoefficientGroup::center_of(group.clone())?);
    let kappa = extract_kappa(&gamma, &circle, operator.map(), &center)?;
    Ok(CenterlessInstance {
        group,
        gamma,
        operator,
        kappa,
    })
}

#[cfg(test)]
mod tests;
