use super::{check_cap, FiniteGroup, GroupError};

fn checked_product(factors: &[usize]) -> Result<usize, GroupError> {
    let cap = super::order_cap();
    factors.iter().try_fold(1usize, |acc, &f| {
        acc.checked_mul(f)
            .filter(|&n| n <= cap)
            .ok_or(GroupError::OrderOverflow {
                order: acc.saturating_mul(f),
                cap,
            })
    })
}

/// Cyclic group of order `n` on residues `0..n` (so element `i` is `g^i`).
pub fn make_cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 1 {
        return Ok(FiniteGroup::trivial());
    }
    make_abelian(&[n])
}

/// Direct sum of cyclic groups `Z/n₁ × … × Z/n_t`.
///
/// An element is its exponent tuple in mixed radix, first factor most
/// significant: `(e₁,…,e_t) ↦ ((e₁·n₂ + e₂)·n₃ + …)`.
pub fn make_abelian(invariant_factors: &[usize]) -> Result<FiniteGroup, GroupError> {
    if invariant_factors.is_empty() {
        return Err(GroupError::Empty);
    }
    if let Some(&bad) = invariant_factors.iter().find(|&&f| f < 2) {
        return Err(GroupError::BadFactor(bad));
    }
    let order = checked_product(invariant_factors)?;
    let digits = |mut x: usize| {
        let mut out = vec![0usize; invariant_factors.len()];
        for (slot, &f) in out.iter_mut().zip(invariant_factors).rev() {
            *slot = x % f;
            x /= f;
        }
        out
    };
    let encode = |d: &[usize]| d.iter().zip(invariant_factors).fold(0, |acc, (&e, &f)| acc * f + e);
    let all_digits: Vec<Vec<usize>> = (0..order).map(digits).collect();
    let names = all_digits
        .iter()
        .map(|d| {
            if d.len() == 1 {
                d[0].to_string()
            } else {
                let parts: Vec<String> = d.iter().map(|e| e.to_string()).collect();
                format!("({})", parts.join(","))
            }
        })
        .collect();
    FiniteGroup::from_fn_unchecked(order, Some(names), |a, b| {
        let sum: Vec<usize> = all_digits[a]
            .iter()
            .zip(&all_digits[b])
            .zip(invariant_factors)
            .map(|((x, y), f)| (x + y) % f)
            .collect();
        encode(&sum)
    })
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Normal-form coordinates `u^i v^j k^q` of the Heisenberg group of order
/// `p³`, with element index `i·p² + j·p + q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeisenbergCoords {
    pub p: usize,
}

impl HeisenbergCoords {
    pub fn index(&self, i: i64, j: i64, q: i64) -> usize {
        let p = self.p as i64;
        let r = |x: i64| x.rem_euclid(p) as usize;
        r(i) * self.p * self.p + r(j) * self.p + r(q)
    }

    pub fn coords(&self, idx: usize) -> (usize, usize, usize) {
        let p = self.p;
        (idx / (p * p), (idx / p) % p, idx % p)
    }

    pub fn u(&self) -> usize {
        self.index(1, 0, 0)
    }

    pub fn v(&self) -> usize {
        self.index(0, 1, 0)
    }

    pub fn k(&self) -> usize {
        self.index(0, 0, 1)
    }
}

fn power_name(letter: &str, e: usize) -> Option<String> {
    match e {
        0 => None,
        1 => Some(letter.to_string()),
        _ => Some(format!("{letter}^{e}")),
    }
}

/// Heisenberg group `⟨u, v, k : u^p, v^p, k^p, [u,v] = k, k central⟩`.
///
/// Normal forms multiply as
/// `(i₁,j₁,q₁)·(i₂,j₂,q₂) = (i₁+i₂, j₁+j₂, q₁+q₂ − j₁·i₂)`, which follows
/// from `v·u = u·v·k⁻¹`.
pub fn make_heisenberg(p: usize) -> Result<FiniteGroup, GroupError> {
    if p % 2 == 0 || !is_prime(p as u64) {
        return Err(GroupError::NotOddPrime(p as u64));
    }
    let order = checked_product(&[p, p, p])?;
    let hc = HeisenbergCoords { p };
    let names = (0..order)
        .map(|x| {
            let (i, j, q) = hc.coords(x);
            let parts: Vec<String> = [power_name("u", i), power_name("v", j), power_name("k", q)]
                .into_iter()
                .flatten()
                .collect();
            if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join(" ")
            }
        })
        .collect();
    FiniteGroup::from_fn_unchecked(order, Some(names), |a, b| {
        let (i1, j1, q1) = hc.coords(a);
        let (i2, j2, q2) = hc.coords(b);
        hc.index(
            (i1 + i2) as i64,
            (j1 + j2) as i64,
            q1 as i64 + q2 as i64 - (j1 * i2) as i64,
        )
    })
}

/// Dihedral group of order `2n`, `⟨r, s : rⁿ = s² = 1, s·r·s = r⁻¹⟩`, with
/// `r^a s^b` at index `b·n + a`.
pub fn make_dihedral(n: usize) -> Result<FiniteGroup, GroupError> {
    if n < 2 {
        return Err(GroupError::BadFactor(n));
    }
    let order = checked_product(&[2, n])?;
    let names = (0..order)
        .map(|x| {
            let (a, b) = (x % n, x / n);
            let parts: Vec<String> = [power_name("r", a), power_name("s", b)]
                .into_iter()
                .flatten()
                .collect();
            if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join(" ")
            }
        })
        .collect();
    FiniteGroup::from_fn_unchecked(order, Some(names), |x, y| {
        let (a, b) = (x % n, x / n);
        let (c, d) = (y % n, y / n);
        let rot = if b == 0 { a + c } else { a + n - c } % n;
        ((b + d) % 2) * n + rot
    })
}

fn pair_names(left: &FiniteGroup, right: &FiniteGroup) -> Option<Vec<String>> {
    let (ln, rn) = (left.names()?, right.names()?);
    Some(
        ln.iter()
            .flat_map(|a| rn.iter().map(move |b| format!("({a}, {b})")))
            .collect(),
    )
}

/// `G × H` with `(g,h)` at index `g·|H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
    let order = checked_product(&[g.order(), h.order()])?;
    let m = h.order();
    FiniteGroup::from_fn_unchecked(order, pair_names(g, h), |x, y| {
        g.mul(x / m, y / m) * m + h.mul(x % m, y % m)
    })
}

/// `A ⋉ B` on pairs `(a,b)` (index `a·|B| + b`) with
/// `(a,b)·(a′,b′) = (a·a′, b·action[a](b′))`.
///
/// `action[a]` is the image table of an automorphism of `B`; the map
/// `a ↦ action[a]` must be a homomorphism into `Aut(B)`. Both are checked.
pub fn semidirect_product(
    a: &FiniteGroup,
    b: &FiniteGroup,
    action: &[Vec<usize>],
) -> Result<FiniteGroup, GroupError> {
    if action.len() != a.order() {
        return Err(GroupError::ActionShape {
            len: action.len(),
            expected: a.order(),
        });
    }
    let nb = b.order();
    for (x, perm) in action.iter().enumerate() {
        if perm.len() != nb || perm.iter().any(|&y| y >= nb) {
            return Err(GroupError::ActionNotAutomorphism(x));
        }
        let mut seen = vec![false; nb];
        for &y in perm {
            if std::mem::replace(&mut seen[y], true) {
                return Err(GroupError::ActionNotAutomorphism(x));
            }
        }
        let multiplicative = (0..nb)
            .all(|s| (0..nb).all(|t| perm[b.mul(s, t)] == b.mul(perm[s], perm[t])));
        if !multiplicative {
            return Err(GroupError::ActionNotAutomorphism(x));
        }
    }
    for x in 0..a.order() {
        for y in 0..a.order() {
            let xy = a.mul(x, y);
            if (0..nb).any(|t| action[xy][t] != action[x][action[y][t]]) {
                return Err(GroupError::ActionNotHomomorphism(x, y));
            }
        }
    }
    let order = checked_product(&[a.order(), nb])?;
    check_cap(order)?;
    FiniteGroup::from_fn_unchecked(order, pair_names(a, b), |x, y| {
        let (a1, b1) = (x / nb, x % nb);
        let (a2, b2) = (y / nb, y % nb);
        a.mul(a1, a2) * nb + b.mul(b1, action[a1][b2])
    })
}
