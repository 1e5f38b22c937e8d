use std::sync::Arc;

use super::{FiniteGroup, GroupError};

/// A total function between the element sets of two groups.
///
/// No homomorphism property is assumed: lifts, sections and Rota–Baxter
/// operators are all plain maps.
#[derive(Debug, Clone)]
pub struct GroupMap {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    images: Vec<usize>,
}

impl PartialEq for GroupMap {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images && self.source == other.source && self.target == other.target
    }
}

impl GroupMap {
    pub fn new(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        images: Vec<usize>,
    ) -> Result<Self, GroupError> {
        if images.len() != source.order() {
            return Err(GroupError::MapLength {
                len: images.len(),
                expected: source.order(),
            });
        }
        if let Some((source_elem, &value)) =
            images.iter().enumerate().find(|(_, &v)| v >= target.order())
        {
            return Err(GroupError::MapOutOfRange {
                source_elem,
                value,
                order: target.order(),
            });
        }
        Ok(Self {
            source,
            target,
            images,
        })
    }

    pub fn from_fn(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        f: impl FnMut(usize) -> usize,
    ) -> Result<Self, GroupError> {
        let images = (0..source.order()).map(f).collect();
        Self::new(source, target, images)
    }

    pub fn identity(group: Arc<FiniteGroup>) -> Self {
        let images = (0..group.order()).collect();
        Self {
            source: group.clone(),
            target: group,
            images,
        }
    }

    /// The map sending everything to the identity.
    pub fn constant_identity(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>) -> Self {
        let images = vec![0; source.order()];
        Self {
            source,
            target,
            images,
        }
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn into_images(self) -> Vec<usize> {
        self.images
    }

    /// First pair `(a,b)` with `f(a·b) ≠ f(a)·f(b)`, if any.
    pub fn homomorphism_failure(&self) -> Option<(usize, usize)> {
        let n = self.source.order();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| {
                self.images[self.source.mul(a, b)]
                    != self.target.mul(self.images[a], self.images[b])
            })
    }

    pub fn is_homomorphism(&self) -> bool {
        self.homomorphism_failure().is_none()
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.order() != self.target.order() {
            return false;
        }
        let mut seen = vec![false; self.target.order()];
        self.images
            .iter()
            .all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &GroupMap) -> Result<GroupMap, GroupError> {
        GroupMap::new(
            first.source.clone(),
            self.target.clone(),
            first.images.iter().map(|&x| self.images[x]).collect(),
        )
    }
}

/// The inner automorphism `ι(x): y ↦ x·y·x⁻¹`.
pub fn inner_automorphism(group: &Arc<FiniteGroup>, x: usize) -> GroupMap {
    let images = (0..group.order()).map(|y| group.conjugate(x, y)).collect();
    GroupMap {
        source: group.clone(),
        target: group.clone(),
        images,
    }
}
