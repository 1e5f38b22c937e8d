//! Finite groups stored as dense Cayley tables.
//!
//! Elements are the indices `0..n` and index 0 is always the identity. Every
//! group in this crate is small enough (a few thousand elements at most in
//! practice) that an `n × n` table beats any symbolic representation.

mod construct;
mod map;

use std::sync::atomic::{AtomicUsize, Ordering};

use thiserror::Error;

pub use construct::{
    direct_product, make_abelian, make_cyclic, make_dihedral, make_heisenberg, semidirect_product,
    HeisenbergCoords,
};
pub use map::{inner_automorphism, GroupMap};

/// Default bound on the order of any group built by the constructors.
pub const DEFAULT_ORDER_CAP: usize = 1 << 16;

static ORDER_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_ORDER_CAP);

/// Current cap on group orders.
pub fn order_cap() -> usize {
    ORDER_CAP.load(Ordering::Relaxed)
}

/// Overrides the cap on group orders for the whole process.
pub fn set_order_cap(cap: usize) {
    ORDER_CAP.store(cap.max(1), Ordering::Relaxed);
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("a group table must have at least one row")]
    Empty,
    #[error("row {row} has {len} entries, expected {order}")]
    Ragged { row: usize, len: usize, order: usize },
    #[error("entry {value} at ({row}, {col}) is out of range for order {order}")]
    OutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("not a Latin square: {axis} {line} repeats value {value}")]
    NotLatinSquare {
        axis: &'static str,
        line: usize,
        value: usize,
    },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("not associative: ({a}·{b})·{c} ≠ {a}·({b}·{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("group order {order} exceeds the cap {cap}")]
    OrderOverflow { order: usize, cap: usize },
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("invalid cyclic factor {0}; factors must be at least 2")]
    BadFactor(usize),
    #[error("names list has {len} entries, expected {order}")]
    NamesLength { len: usize, order: usize },
    #[error("action of {0} is not an automorphism")]
    ActionNotAutomorphism(usize),
    #[error("action is not a homomorphism at ({0}, {1})")]
    ActionNotHomomorphism(usize, usize),
    #[error("action table has {len} entries, expected {expected}")]
    ActionShape { len: usize, expected: usize },
    #[error("map has {len} images, expected {expected}")]
    MapLength { len: usize, expected: usize },
    #[error("image {value} of {source_elem} is out of range for a target of order {order}")]
    MapOutOfRange {
        source_elem: usize,
        value: usize,
        order: usize,
    },
}

/// A finite group on the element set `0..order`, identity 0.
#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    names: Option<Vec<String>>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("named", &self.names.is_some())
            .finish()
    }
}

/// Two groups are equal when their tables are; names are presentation only.
impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Validates a Cayley table and builds the group.
    ///
    /// The table must be a Latin square with a two-sided identity and must be
    /// associative (checked exhaustively, `O(n³)`). If the identity is not at
    /// index 0 the elements are renamed by swapping it with 0.
    pub fn from_table(rows: &[Vec<usize>], names: Option<Vec<String>>) -> Result<Self, GroupError> {
        let order = rows.len();
        if order == 0 {
            return Err(GroupError::Empty);
        }
        check_cap(order)?;
        let mut table = Vec::with_capacity(order * order);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(GroupError::Ragged {
                    row: r,
                    len: row.len(),
                    order,
                });
            }
            for (c, &value) in row.iter().enumerate() {
                if value >= order {
                    return Err(GroupError::OutOfRange {
                        row: r,
                        col: c,
                        value,
                        order,
                    });
                }
                table.push(value as u32);
            }
        }
        if let Some(names) = &names {
            if names.len() != order {
                return Err(GroupError::NamesLength {
                    len: names.len(),
                    order,
                });
            }
        }
        check_latin(order, &table)?;
        let identity = find_identity(order, &table).ok_or(GroupError::NoIdentity)?;
        let (table, names) = if identity == 0 {
            (table, names)
        } else {
            relabel_identity(order, &table, names, identity)
        };
        let group = Self::from_flat_unchecked(order, table, names);
        group.verify_associativity()?;
        Ok(group)
    }

    /// Builds a group from a flat row-major table that is already known to be
    /// a group with identity 0. Only inverses are computed.
    pub(crate) fn from_flat_unchecked(
        order: usize,
        table: Vec<u32>,
        names: Option<Vec<String>>,
    ) -> Self {
        debug_assert_eq!(table.len(), order * order);
        let mut inverses = vec![0u32; order];
        for a in 0..order {
            let row = &table[a * order..(a + 1) * order];
            let b = row
                .iter()
                .position(|&x| x == 0)
                .expect("group table row without identity");
            inverses[a] = b as u32;
        }
        Self {
            order,
            table,
            inverses,
            names,
        }
    }

    /// Builds a group from a multiplication closure on `0..order`, trusting
    /// the closure to define a group with identity 0.
    pub(crate) fn from_fn_unchecked(
        order: usize,
        names: Option<Vec<String>>,
        mut mul: impl FnMut(usize, usize) -> usize,
    ) -> Result<Self, GroupError> {
        check_cap(order)?;
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                table.push(mul(a, b) as u32);
            }
        }
        Ok(Self::from_flat_unchecked(order, table, names))
    }

    /// The trivial group.
    pub fn trivial() -> Self {
        Self::from_flat_unchecked(1, vec![0], Some(vec!["1".to_string()]))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    /// `a^e` for any integer exponent.
    pub fn pow(&self, a: usize, e: i64) -> usize {
        let base = if e < 0 { self.inv(a) } else { a };
        let mut e = e.unsigned_abs();
        let mut acc = 0usize;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    /// `a·b·c` for a slice of elements, left to right.
    pub fn product(&self, elems: &[usize]) -> usize {
        elems.iter().fold(0, |acc, &x| self.mul(acc, x))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn row(&self, a: usize) -> &[u32] {
        &self.table[a * self.order..(a + 1) * self.order]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| self.row(a).iter().map(|&x| x as usize).collect())
            .collect()
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Display name of an element; falls back to `#index`.
    pub fn name(&self, a: usize) -> String {
        match &self.names {
            Some(names) => names[a].clone(),
            None => format!("#{a}"),
        }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, GroupError> {
        if names.len() != self.order {
            return Err(GroupError::NamesLength {
                len: names.len(),
                order: self.order,
            });
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Exhaustive associativity check; reports the first failing triple.
    pub fn verify_associativity(&self) -> Result<(), GroupError> {
        // Light's test. The elements a with (x·a)·y = x·(a·y) for all x, y
        // are closed under the product, so it is enough to test a set that
        // reaches every element by right multiplication from the identity.
        let n = self.order;
        let mut closure = Closure::new(self);
        let mut gens = Vec::new();
        for g in 1..n {
            if closure.len() == n {
                break;
            }
            if !closure.contains(g) {
                closure.add(g);
                gens.push(g);
            }
        }
        for &b in &gens {
            let row_b = self.row(b);
            for a in 0..n {
                let row_a = self.row(a);
                let row_ab = self.row(row_a[b] as usize);
                for c in 0..n {
                    if row_ab[c] != row_a[row_b[c] as usize] {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(())
    }

    /// `[g,h] = g·h·g⁻¹·h⁻¹`.
    #[inline]
    pub fn commutator(&self, g: usize, h: usize) -> usize {
        let gh = self.mul(g, h);
        let hg = self.mul(h, g);
        self.mul(gh, self.inv(hg))
    }

    /// `x·y·x⁻¹`.
    #[inline]
    pub fn conjugate(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(x, y), self.inv(x))
    }

    /// Image table of the inner automorphism `y ↦ x·y·x⁻¹`.
    pub fn conjugation_images(&self, x: usize) -> Vec<u32> {
        (0..self.order).map(|y| self.conjugate(x, y) as u32).collect()
    }

    pub fn center(&self) -> Subgroup {
        let members = (0..self.order)
            .filter(|&z| (0..self.order).all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect();
        Subgroup {
            parent_order: self.order,
            members,
        }
    }

    pub fn is_central(&self, z: usize) -> bool {
        (0..self.order).all(|g| self.mul(z, g) == self.mul(g, z))
    }

    /// Closure of `gens ∪ {1}` under multiplication.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Subgroup {
        let mut closure = Closure::new(self);
        for &g in gens {
            closure.add(g);
        }
        closure.finish()
    }

    /// An irredundant generating set: chosen greedily in index order, then
    /// pruned of any generator the others already generate. For `p`-groups
    /// this has minimal size.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut closure = Closure::new(self);
        let mut gens = Vec::new();
        for g in 1..self.order {
            if closure.len() == self.order {
                break;
            }
            if !closure.contains(g) {
                closure.add(g);
                gens.push(g);
            }
        }
        let mut i = 0;
        while i < gens.len() {
            let mut rest = gens.clone();
            rest.remove(i);
            if self.subgroup_generated(&rest).order() == self.order {
                gens = rest;
            } else {
                i += 1;
            }
        }
        gens
    }

    /// The subgroup generated by all commutators.
    ///
    /// Computed as the normal closure of the commutators of a generating
    /// set, which avoids touching all `n²` pairs.
    pub fn derived_subgroup(&self) -> Subgroup {
        let gens = self.generating_set();
        let mut closure = Closure::new(self);
        let mut pending = Vec::new();
        for (i, &a) in gens.iter().enumerate() {
            for &b in &gens[i + 1..] {
                pending.push(self.commutator(a, b));
            }
        }
        // Each generator added to N must have its conjugates by the
        // generators of G inside N.
        while let Some(x) = pending.pop() {
            if closure.contains(x) {
                continue;
            }
            closure.add(x);
            for &g in &gens {
                pending.push(self.conjugate(g, x));
            }
        }
        closure.finish()
    }

    /// Restricts the table to a subgroup, renumbering its members in
    /// increasing order (so the identity stays at 0).
    pub fn restrict(&self, sub: &Subgroup) -> FiniteGroup {
        let members = sub.members();
        let mut local = vec![u32::MAX; self.order];
        for (i, &m) in members.iter().enumerate() {
            local[m] = i as u32;
        }
        let k = members.len();
        let mut table = Vec::with_capacity(k * k);
        for &a in members {
            for &b in members {
                table.push(local[self.mul(a, b)]);
            }
        }
        let names = self
            .names
            .as_ref()
            .map(|names| members.iter().map(|&m| names[m].clone()).collect());
        FiniteGroup::from_flat_unchecked(k, table, names)
    }
}

pub(crate) fn check_cap(order: usize) -> Result<(), GroupError> {
    let cap = order_cap();
    if order > cap || order > u32::MAX as usize {
        return Err(GroupError::OrderOverflow { order, cap });
    }
    Ok(())
}

fn check_latin(order: usize, table: &[u32]) -> Result<(), GroupError> {
    let mut seen = vec![usize::MAX; order];
    for r in 0..order {
        for c in 0..order {
            let v = table[r * order + c] as usize;
            if seen[v] == r {
                return Err(GroupError::NotLatinSquare {
                    axis: "row",
                    line: r,
                    value: v,
                });
            }
            seen[v] = r;
        }
    }
    seen.fill(usize::MAX);
    for c in 0..order {
        for r in 0..order {
            let v = table[r * order + c] as usize;
            if seen[v] == c {
                return Err(GroupError::NotLatinSquare {
                    axis: "column",
                    line: c,
                    value: v,
                });
            }
            seen[v] = c;
        }
    }
    Ok(())
}

fn find_identity(order: usize, table: &[u32]) -> Option<usize> {
    (0..order).find(|&e| {
        (0..order).all(|a| table[e * order + a] as usize == a && table[a * order + e] as usize == a)
    })
}

fn relabel_identity(
    order: usize,
    table: &[u32],
    names: Option<Vec<String>>,
    identity: usize,
) -> (Vec<u32>, Option<Vec<String>>) {
    let swap = |x: usize| {
        if x == identity {
            0
        } else if x == 0 {
            identity
        } else {
            x
        }
    };
    let mut out = vec![0u32; order * order];
    for a in 0..order {
        for b in 0..order {
            out[swap(a) * order + swap(b)] = swap(table[a * order + b] as usize) as u32;
        }
    }
    let names = names.map(|mut names| {
        names.swap(0, identity);
        names
    });
    (out, names)
}

/// A subgroup, stored as the sorted list of its members in the parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent_order: usize,
    members: Vec<usize>,
}

impl Subgroup {
    /// Wraps a member list after checking closure in `parent`.
    pub fn new(parent: &FiniteGroup, members: &[usize]) -> Option<Self> {
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        if members.first() != Some(&0) || members.iter().any(|&m| m >= parent.order()) {
            return None;
        }
        let sub = Subgroup {
            parent_order: parent.order(),
            members,
        };
        let closed = sub
            .members
            .iter()
            .all(|&a| sub.members.iter().all(|&b| sub.contains(parent.mul(a, b))));
        closed.then_some(sub)
    }

    pub fn trivial(parent: &FiniteGroup) -> Self {
        Subgroup {
            parent_order: parent.order(),
            members: vec![0],
        }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup {
            parent_order: self.parent_order,
            members: self
                .members
                .iter()
                .copied()
                .filter(|&x| other.contains(x))
                .collect(),
        }
    }
}

/// Incremental subgroup closure by breadth-first search over right
/// multiplication by generators.
pub(crate) struct Closure<'a> {
    group: &'a FiniteGroup,
    member: Vec<bool>,
    elements: Vec<usize>,
    gens: Vec<usize>,
}

impl<'a> Closure<'a> {
    pub(crate) fn new(group: &'a FiniteGroup) -> Self {
        let mut member = vec![false; group.order()];
        member[0] = true;
        Self {
            group,
            member,
            elements: vec![0],
            gens: Vec::new(),
        }
    }

    pub(crate) fn contains(&self, x: usize) -> bool {
        self.member[x]
    }

    pub(crate) fn len(&self) -> usize {
        self.elements.len()
    }

    /// Adds a generator and closes. Returns `false` as soon as the closure
    /// grows beyond `limit` elements (the closure is then incomplete).
    pub(crate) fn add_bounded(&mut self, g: usize, limit: usize) -> bool {
        if self.member[g] {
            return true;
        }
        self.gens.push(g);
        // A path leaving the old subgroup must first use an edge x -> x·g
        // with x old; after that, BFS over all generators.
        let mut head = self.elements.len();
        for i in 0..head {
            let x = self.group.mul(self.elements[i], g);
            if !self.member[x] {
                self.member[x] = true;
                self.elements.push(x);
                if self.elements.len() > limit {
                    return false;
                }
            }
        }
        while head < self.elements.len() {
            let x = self.elements[head];
            head += 1;
            for gi in 0..self.gens.len() {
                let y = self.group.mul(x, self.gens[gi]);
                if !self.member[y] {
                    self.member[y] = true;
                    self.elements.push(y);
                    if self.elements.len() > limit {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub(crate) fn add(&mut self, g: usize) {
        let ok = self.add_bounded(g, usize::MAX);
        debug_assert!(ok);
    }

    pub(crate) fn finish(mut self) -> Subgroup {
        self.elements.sort_unstable();
        Subgroup {
            parent_order: self.group.order(),
            members: self.elements,
        }
    }
}
