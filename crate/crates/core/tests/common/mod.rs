//! Independent reference arithmetic for integration tests.
#![allow(dead_code)]

use braceforge_core::FiniteGroup;

/// Heisenberg arithmetic on normal-form triples `uⁱvʲk^q`, written from the
/// rule `vʲ·uᵐ = uᵐ·vʲ·k^{−jm}` and nothing else.
#[derive(Clone, Copy)]
pub struct Heis {
    pub p: i64,
}

impl Heis {
    pub fn triple(&self, idx: usize) -> (i64, i64, i64) {
        let p = self.p as usize;
        ((idx / (p * p)) as i64, ((idx / p) % p) as i64, (idx % p) as i64)
    }

    pub fn index(&self, (i, j, q): (i64, i64, i64)) -> usize {
        let r = |x: i64| x.rem_euclid(self.p) as usize;
        let p = self.p as usize;
        r(i) * p * p + r(j) * p + r(q)
    }

    pub fn k_pow(&self, e: i64) -> usize {
        self.index((0, 0, e))
    }

    /// Exponent `c` with `[g,h] = k^c`, for `[g,h] = g·h·g⁻¹·h⁻¹`.
    pub fn commutator_exponent(&self, g: usize, h: usize) -> i64 {
        let (i, j, _) = self.triple(g);
        let (m, n, _) = self.triple(h);
        i * n - j * m
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let (i, j, q) = self.triple(a);
        let (m, n, r) = self.triple(b);
        self.index((i + m, j + n, q + r - j * m))
    }
}

pub fn inverse_table(g: &FiniteGroup) -> Vec<usize> {
    (0..g.order()).map(|x| g.inv(x)).collect()
}

/// All maps `B` with `B(g·B(g)·h·B(g)⁻¹) = B(g)·B(h)`, by trying all `nⁿ`
/// functions.
pub fn brute_force_rb(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut out = Vec::new();
    let mut b = vec![0usize; n];
    loop {
        let ok = (0..n).all(|x| {
            (0..n).all(|y| {
                let arg = g.mul(g.mul(g.mul(x, b[x]), y), g.inv(b[x]));
                b[arg] == g.mul(b[x], b[y])
            })
        });
        if ok {
            out.push(b.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            b[i] += 1;
            if b[i] < n {
                break;
            }
            b[i] = 0;
        }
    }
}

/// Endomorphisms of `Z/n` in the standard labelling: `x ↦ a·x`.
pub fn cyclic_endomorphisms(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|a| (0..n).map(|x| a * x % n).collect()).collect()
}
