use std::sync::Arc;

use crate::group::{FiniteGroup, Subgroup};
use crate::linalg::is_prime;

use super::CohomologyError;

/// An elementary abelian subgroup `Q ≅ F_p^r` of an ambient group, with a
/// fixed basis and coordinates.
///
/// Coefficient indices run over `0..|Q|` in increasing order of the ambient
/// index, so index 0 is the identity. Coordinates are taken with respect to
/// the basis, packed most significant first.
#[derive(Debug, Clone)]
pub struct CoefficientGroup {
    ambient: Arc<FiniteGroup>,
    elements: Vec<usize>,
    local: Vec<u32>,
    group: Arc<FiniteGroup>,
    prime: u32,
    basis: Vec<usize>,
    coords: Vec<Vec<u32>>,
    by_coords: Vec<usize>,
}

impl PartialEq for CoefficientGroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
            && self.basis == other.basis
            && self.prime == other.prime
            && self.ambient == other.ambient
    }
}

impl CoefficientGroup {
    /// Uses a greedily chosen basis of `sub`.
    pub fn from_subgroup(ambient: Arc<FiniteGroup>, sub: &Subgroup) -> Result<Self, CohomologyError> {
        Self::build(ambient, sub, None)
    }

    /// The centre of `group`, which must be elementary abelian.
    pub fn center_of(group: Arc<FiniteGroup>) -> Result<Self, CohomologyError> {
        let z = group.center();
        Self::from_subgroup(group, &z)
    }

    /// A whole elementary abelian group as its own coefficients.
    pub fn whole(group: Arc<FiniteGroup>) -> Result<Self, CohomologyError> {
        let all: Vec<usize> = (0..group.order()).collect();
        let sub = Subgroup::new(&group, &all).expect("a group is a subgroup of itself");
        Self::from_subgroup(group, &sub)
    }

    /// The subgroup spanned by `basis` (ambient indices), which must be
    /// independent. `prime` fixes `p` when the basis is empty.
    pub fn with_basis(
        ambient: Arc<FiniteGroup>,
        basis: &[usize],
        prime: u32,
    ) -> Result<Self, CohomologyError> {
        if let Some(&b) = basis.iter().find(|&&b| b >= ambient.order()) {
            return Err(CohomologyError::NotACoefficient(b));
        }
        let sub = ambient.subgroup_generated(basis);
        let q = Self::build(ambient, &sub, Some((basis, prime)))?;
        Ok(q)
    }

    fn build(
        ambient: Arc<FiniteGroup>,
        sub: &Subgroup,
        given: Option<(&[usize], u32)>,
    ) -> Result<Self, CohomologyError> {
        let elements = sub.members().to_vec();
        let mut local = vec![u32::MAX; ambient.order()];
        for (i, &e) in elements.iter().enumerate() {
            local[e] = i as u32;
        }
        let group = Arc::new(ambient.restrict(sub));
        if !group.is_abelian() {
            return Err(CohomologyError::NotAbelian);
        }
        let prime = match (elements.get(1), given) {
            (Some(&x), _) => ambient.element_order(x),
            (None, Some((_, p))) => p as usize,
            (None, None) => 2,
        };
        if !is_prime(prime as u32) {
            return Err(CohomologyError::NotElementaryAbelian(
                elements.get(1).copied().unwrap_or(0),
                prime,
            ));
        }
        if let Some(&x) = elements[1..]
            .iter()
            .find(|&&x| ambient.element_order(x) != prime)
        {
            return Err(CohomologyError::NotElementaryAbelian(x, ambient.element_order(x)));
        }
        if let Some((_, p)) = given {
            if p as usize != prime {
                return Err(CohomologyError::NotElementaryAbelian(elements[1], prime));
            }
        }

        let basis: Vec<usize> = match given {
            Some((b, _)) => b.iter().map(|&x| local[x] as usize).collect(),
            None => greedy_basis(&group, prime),
        };
        let rank = basis.len();
        let size = prime.checked_pow(rank as u32);
        if size != Some(group.order()) {
            return Err(CohomologyError::BasisNotIndependent);
        }

        // Walk F_p^r in packed order, producing each element as a product of
        // basis powers.
        let mut coords = vec![Vec::new(); group.order()];
        let mut by_coords = vec![usize::MAX; group.order()];
        for packed in 0..group.order() {
            let mut digits = vec![0u32; rank];
            let mut rest = packed;
            for t in (0..rank).rev() {
                digits[t] = (rest % prime) as u32;
                rest /= prime;
            }
            let mut x = 0;
            for t in 0..rank {
                x = group.mul(x, group.pow(basis[t], digits[t] as i64));
            }
            if rank > 0 && !coords[x].is_empty() {
                return Err(CohomologyError::BasisNotIndependent);
            }
            by_coords[packed] = x;
            coords[x] = digits;
        }

        Ok(Self {
            ambient,
            elements,
            local,
            group,
            prime: prime as u32,
            basis,
            coords,
            by_coords,
        })
    }

    pub fn ambient(&self) -> &Arc<FiniteGroup> {
        &self.ambient
    }

    /// The coefficient group as a standalone group on `0..|Q|`.
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Ambient indices of the members, in coefficient order.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    /// Basis as coefficient indices.
    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    /// Basis as ambient indices.
    pub fn ambient_basis(&self) -> Vec<usize> {
        self.basis.iter().map(|&b| self.elements[b]).collect()
    }

    pub fn ambient_index(&self, q: usize) -> usize {
        self.elements[q]
    }

    pub fn coeff_index(&self, ambient: usize) -> Option<usize> {
        match self.local.get(ambient) {
            Some(&i) if i != u32::MAX => Some(i as usize),
            _ => None,
        }
    }

    pub fn coords(&self, q: usize) -> &[u32] {
        &self.coords[q]
    }

    /// Element with the given coordinates (each reduced mod `p`).
    pub fn from_coords(&self, digits: &[u32]) -> usize {
        debug_assert_eq!(digits.len(), self.rank());
        let p = self.prime as usize;
        let packed = digits
            .iter()
            .fold(0usize, |acc, &d| acc * p + d as usize % p);
        self.by_coords[packed]
    }
}

fn greedy_basis(group: &FiniteGroup, p: usize) -> Vec<usize> {
    let mut span = vec![false; group.order()];
    span[0] = true;
    let mut spanned = vec![0usize];
    let mut basis = Vec::new();
    for x in 1..group.order() {
        if span[x] {
            continue;
        }
        basis.push(x);
        let mut next = Vec::with_capacity(spanned.len() * p);
        for &s in &spanned {
            let mut y = s;
            for _ in 0..p {
                span[y] = true;
                next.push(y);
                y = group.mul(y, x);
            }
        }
        spanned = next;
    }
    basis
}
