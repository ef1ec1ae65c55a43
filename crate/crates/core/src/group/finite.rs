use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// A finite group stored as a Cayley table on `0..order`.
#[derive(Clone, Debug)]
pub struct TableGroup {
    names: Vec<String>,
    mul: Vec<usize>,
    inv: Vec<usize>,
    identity: usize,
}

impl TableGroup {
    /// Builds the table from a list of elements closed under `op`, checking the group axioms.
    pub fn from_elements<T: PartialEq + std::fmt::Display>(elements: Vec<T>, op: impl Fn(&T, &T) -> T) -> Result<Self> {
        let order = elements.len();
        let position = |e: &T| elements.iter().position(|f| f == e);
        let mut mul = vec![0usize; order * order];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                let p = op(a, b);
                mul[i * order + j] = position(&p).ok_or_else(|| Error::precondition(format!("{a} * {b} = {p} leaves the set")))?;
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| mul[e * order + a] == a && mul[a * order + e] == a))
            .ok_or_else(|| Error::precondition("no identity element"))?;
        let mut inv = vec![0usize; order];
        for (a, slot) in inv.iter_mut().enumerate() {
            *slot = (0..order).find(|&b| mul[a * order + b] == identity).ok_or_else(|| Error::precondition("missing inverse"))?;
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if mul[mul[a * order + b] * order + c] != mul[a * order + mul[b * order + c]] {
                        return Err(Error::precondition("operation is not associative"));
                    }
                }
            }
        }
        Ok(Self { names: elements.iter().map(|e| e.to_string()).collect(), mul, inv, identity })
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut p = a;
        while p != self.identity {
            p = self.mul(p, a);
            k += 1;
        }
        k
    }

    pub fn generated(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([self.identity]);
        let mut frontier = vec![self.identity];
        while let Some(a) = frontier.pop() {
            for &g in gens {
                let b = self.mul(a, g);
                if seen.insert(b) {
                    frontier.push(b);
                }
            }
        }
        seen
    }

    pub fn is_normal(&self, sub: &BTreeSet<usize>) -> bool {
        (0..self.order()).all(|g| sub.iter().all(|&k| sub.contains(&self.mul(self.mul(g, k), self.inv(g)))))
    }

    /// Subgroups isomorphic to `D_n`, `n >= 3`: generated by `r` of order `n` and an
    /// involution `s` outside `<r>` with `s r s = r^-1`.
    pub fn dihedral_subgroups(&self, n: usize) -> Vec<BTreeSet<usize>> {
        let mut found: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        for r in (0..self.order()).filter(|&r| self.element_order(r) == n) {
            let cyclic = self.generated(&[r]);
            for s in (0..self.order()).filter(|&s| self.element_order(s) == 2 && !cyclic.contains(&s)) {
                if self.mul(self.mul(s, r), s) == self.inv(r) {
                    found.insert(self.generated(&[r, s]));
                }
            }
        }
        found.into_iter().collect()
    }
}
