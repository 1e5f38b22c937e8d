use std::sync::Arc;

use crate::group::{check_cap, Closure, FiniteGroup, GroupMap, Subgroup};
use crate::Verdict;

use super::{CoefficientGroup, CohomologyError, TwoCocycle};

/// Default bound on the number of generator lifts tried by
/// [`find_complement`].
pub const DEFAULT_COMPLEMENT_CAP: u128 = 1_000_000;

/// The central extension `1 → Q → E → U → 1` of a cocycle, realised on
/// pairs `(q, g)` with index `q·|U| + g`.
///
/// Internally the cocycle is normalised by `θ(1,1)`, so that `(0, 0)` is
/// the identity. The standard section `g ↦ (θ(1,1), g)` recovers the
/// original cocycle exactly, normalised or not.
#[derive(Debug, Clone)]
pub struct CentralExtension {
    total: Arc<FiniteGroup>,
    cocycle: TwoCocycle,
    shift: usize,
}

impl CentralExtension {
    pub fn total(&self) -> &Arc<FiniteGroup> {
        &self.total
    }

    pub fn base(&self) -> &Arc<FiniteGroup> {
        self.cocycle.base()
    }

    pub fn coeff(&self) -> &Arc<CoefficientGroup> {
        self.cocycle.coeff()
    }

    pub fn cocycle(&self) -> &TwoCocycle {
        &self.cocycle
    }

    /// Index of the pair `(q, g)`.
    pub fn element(&self, q: usize, g: usize) -> usize {
        q * self.base().order() + g
    }

    /// The pair `(q, g)` of an element.
    pub fn split(&self, e: usize) -> (usize, usize) {
        let n = self.base().order();
        (e / n, e % n)
    }

    pub fn projection(&self, e: usize) -> usize {
        e % self.base().order()
    }

    /// The image of `Q` in `E`, i.e. the pairs `(q, 1)`.
    pub fn kernel(&self) -> Subgroup {
        let members: Vec<usize> = (0..self.coeff().order()).map(|q| self.element(q, 0)).collect();
        Subgroup::new(&self.total, &members).expect("kernel is a subgroup")
    }

    /// `g ↦ (θ(1,1), g)`.
    pub fn standard_section(&self) -> GroupMap {
        let n = self.base().order();
        GroupMap::new(
            self.base().clone(),
            self.total.clone(),
            (0..n).map(|g| self.element(self.shift, g)).collect(),
        )
        .expect("indices are in range")
    }
}

/// Builds the extension group of a cocycle.
pub fn build_central_extension(kappa: &TwoCocycle) -> Result<CentralExtension, CohomologyError> {
    if let Verdict::Fails((a, b, c)) = kappa.check() {
        return Err(CohomologyError::NotACocycle(a, b, c));
    }
    let base = kappa.base();
    let q = kappa.coeff().group();
    let n = base.order();
    let m = q.order();
    let order = n.checked_mul(m).unwrap_or(usize::MAX);
    check_cap(order)?;
    let shift = kappa.value(0, 0);
    let shift_inv = q.inv(shift);
    // (q₁, a)·(q₂, b) = (q₁·q₂·θ′(a,b), ab), filled row by row.
    let theta: Vec<usize> = (0..n * n)
        .map(|ab| q.mul(kappa.value(ab / n, ab % n), shift_inv))
        .collect();
    let mut table = vec![0u32; order * order];
    for (x, row) in table.chunks_exact_mut(order).enumerate() {
        let (q1, a) = (x / n, x % n);
        let base_row = base.row(a);
        for b in 0..n {
            // Q is abelian, so q₁·q₂·t = (q₁·t)·q₂.
            let shifted = q.row(q.mul(q1, theta[a * n + b]));
            let ab = base_row[b] as usize;
            for (q2, &c) in shifted.iter().enumerate() {
                row[q2 * n + b] = (c as usize * n + ab) as u32;
            }
        }
    }
    let total = FiniteGroup::from_flat_unchecked(order, table, None);
    Ok(CentralExtension {
        total: Arc::new(total),
        cocycle: kappa.clone(),
        shift,
    })
}

/// The cocycle `θ(a,b) = s(a)·s(b)·s(ab)⁻¹` of a set-theoretic section.
pub fn extract_cocycle_from_section(
    ext: &CentralExtension,
    section: &GroupMap,
) -> Result<TwoCocycle, CohomologyError> {
    let e = ext.total();
    let base = ext.base();
    let n = base.order();
    if section.source().as_ref() != base.as_ref() || section.target().as_ref() != e.as_ref() {
        return Err(CohomologyError::Mismatch);
    }
    if let Some(g) = (0..n).find(|&g| ext.projection(section.apply(g)) != g) {
        return Err(CohomologyError::NotASection(g));
    }
    let inv: Vec<usize> = (0..n).map(|g| e.inv(section.apply(g))).collect();
    let theta = TwoCocycle::from_fn(base.clone(), ext.coeff().clone(), |a, b| {
        let x = e.mul(e.mul(section.apply(a), section.apply(b)), inv[base.mul(a, b)]);
        let (q, g) = ext.split(x);
        debug_assert_eq!(g, 0);
        q
    });
    Ok(theta)
}

/// Searches for a subgroup `T ≤ E` mapping isomorphically onto the base, by
/// trying every lift `(q_i, g_i)` of a generating set `g_i` of the base.
///
/// Returns the homomorphic section `g ↦` (the element of `T` over `g`), or
/// `None` when the extension does not split. `gens` defaults to a greedy
/// generating set of the base.
pub fn find_complement(
    ext: &CentralExtension,
    gens: Option<&[usize]>,
    cap: u128,
) -> Result<Option<GroupMap>, CohomologyError> {
    let base = ext.base();
    let n = base.order();
    let gens: Vec<usize> = match gens {
        Some(g) => g.to_vec(),
        None => base.generating_set(),
    };
    if gens.iter().any(|&g| g >= n) || base.subgroup_generated(&gens).order() != n {
        return Err(CohomologyError::GeneratorsDoNotGenerate);
    }
    let m = ext.coeff().order();
    let candidates = (m as u128).checked_pow(gens.len() as u32).unwrap_or(u128::MAX);
    if candidates > cap {
        return Err(CohomologyError::TooLarge { candidates, cap });
    }
    let e = ext.total();
    let mut choice = vec![0usize; gens.len()];
    loop {
        // T projects onto the base, so |T| = |U| exactly when T ∩ Q = 1.
        let mut closure = Closure::new(e);
        let ok = gens
            .iter()
            .zip(&choice)
            .all(|(&g, &q)| closure.add_bounded(ext.element(q, g), n));
        if ok && closure.len() == n {
            let t = closure.finish();
            let mut images = vec![0usize; n];
            for &x in t.members() {
                images[ext.projection(x)] = x;
            }
            let section = GroupMap::new(base.clone(), e.clone(), images)?;
            debug_assert!(section.is_homomorphism());
            return Ok(Some(section));
        }
        // Next tuple, last coordinate fastest.
        let mut i = choice.len();
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < m {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// Outcome of [`derived_intersection_obstruction`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction {
    /// `Q ∩ [E,E]` is trivial.
    Trivial,
    /// `Q ∩ [E,E]` is nontrivial; `witness` is its smallest nonidentity
    /// element and `intersection` lists all of it (coefficient indices).
    Witness {
        witness: usize,
        intersection: Vec<usize>,
    },
}

impl Obstruction {
    pub fn is_trivial(&self) -> bool {
        matches!(self, Obstruction::Trivial)
    }
}

/// Computes `Q ∩ [E,E]`. A nonidentity element certifies that the extension
/// does not split.
pub fn derived_intersection_obstruction(ext: &CentralExtension) -> Obstruction {
    let derived = ext.total().derived_subgroup();
    let intersection: Vec<usize> = (0..ext.coeff().order())
        .filter(|&q| derived.contains(ext.element(q, 0)))
        .collect();
    match intersection.get(1) {
        None => Obstruction::Trivial,
        Some(&witness) => Obstruction::Witness {
            witness,
            intersection,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_abelian, make_cyclic};

    fn cyclic_extension_data(p: usize) -> (Arc<FiniteGroup>, Arc<CoefficientGroup>) {
        let base = Arc::new(make_cyclic(p).unwrap());
        let coeff = Arc::new(CoefficientGroup::whole(Arc::new(make_cyclic(p).unwrap())).unwrap());
        (base, coeff)
    }

    /// The carry cocycle of `Z/p² → Z/p`.
    fn carry(p: usize) -> TwoCocycle {
        let (base, coeff) = cyclic_extension_data(p);
        TwoCocycle::from_fn(base, coeff, |a, b| usize::from(a + b >= p))
    }

    #[test]
    fn carry_extension_is_cyclic_and_does_not_split() {
        let ext = build_central_extension(&carry(3)).unwrap();
        let e = ext.total();
        assert_eq!(e.order(), 9);
        assert!(e.is_abelian());
        assert!((0..9).any(|x| e.element_order(x) == 9));
        assert_eq!(find_complement(&ext, None, DEFAULT_COMPLEMENT_CAP).unwrap(), None);
        // Abelian, so the derived subgroup cannot see the obstruction.
        assert!(derived_intersection_obstruction(&ext).is_trivial());
    }

    #[test]
    fn trivial_cocycle_splits() {
        let (base, coeff) = cyclic_extension_data(3);
        let ext = build_central_extension(&TwoCocycle::trivial(base.clone(), coeff)).unwrap();
        let s = find_complement(&ext, None, DEFAULT_COMPLEMENT_CAP).unwrap().unwrap();
        assert!(s.is_homomorphism());
        assert!((0..3).all(|g| ext.projection(s.apply(g)) == g));
    }

    #[test]
    fn standard_section_round_trips_unnormalised_cocycles() {
        let (base, coeff) = cyclic_extension_data(3);
        // A constant function is a cocycle (the coboundary of a constant σ)
        // and is not normalised.
        let constant = TwoCocycle::from_fn(base.clone(), coeff.clone(), |_, _| 2);
        assert!(constant.check().holds());
        let shifted = TwoCocycle::from_fn(base, coeff, |a, b| (usize::from(a + b >= 3) + 1) % 3);
        for kappa in [carry(3), constant, shifted] {
            let ext = build_central_extension(&kappa).unwrap();
            ext.total().verify_associativity().unwrap();
            let back = extract_cocycle_from_section(&ext, &ext.standard_section()).unwrap();
            assert_eq!(back, kappa);
        }
    }

    #[test]
    fn kernel_is_central() {
        let ext = build_central_extension(&carry(5)).unwrap();
        let center = ext.total().center();
        assert!(ext.kernel().members().iter().all(|&x| center.contains(x)));
    }

    #[test]
    fn bad_inputs() {
        let (base, coeff) = cyclic_extension_data(3);
        let broken = TwoCocycle::from_fn(base, coeff, |a, b| usize::from(a == 1 && b == 2));
        assert!(matches!(
            build_central_extension(&broken),
            Err(CohomologyError::NotACocycle(..))
        ));
        let ext = build_central_extension(&carry(3)).unwrap();
        assert_eq!(
            find_complement(&ext, Some(&[0]), DEFAULT_COMPLEMENT_CAP),
            Err(CohomologyError::GeneratorsDoNotGenerate)
        );
        assert!(matches!(
            find_complement(&ext, None, 2),
            Err(CohomologyError::TooLarge { candidates: 3, cap: 2 })
        ));
        let not_section = GroupMap::new(ext.base().clone(), ext.total().clone(), vec![0, 0, 0]).unwrap();
        assert_eq!(
            extract_cocycle_from_section(&ext, &not_section),
            Err(CohomologyError::NotASection(1))
        );
    }

    #[test]
    fn klein_coefficients_over_klein_base() {
        let v = Arc::new(make_abelian(&[2, 2]).unwrap());
        let coeff = Arc::new(CoefficientGroup::whole(v.clone()).unwrap());
        // A non-symmetric bilinear cocycle, so the extension is nonabelian.
        let kappa = TwoCocycle::from_fn(v.clone(), coeff.clone(), |a, b| {
            let bit = (a >> 1) & (b & 1);
            coeff.from_coords(&[bit as u32, 0])
        });
        assert!(kappa.check().holds());
        let ext = build_central_extension(&kappa).unwrap();
        assert_eq!(ext.total().order(), 16);
        assert!(!ext.total().is_abelian());
        assert_eq!(find_complement(&ext, None, DEFAULT_COMPLEMENT_CAP).unwrap(), None);
        assert!(!derived_intersection_obstruction(&ext).is_trivial());
    }
}
