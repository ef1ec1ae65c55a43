use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{gcd, ConjClassId, DnTable};
use crate::hurwitz::{HurwitzVector, NuType};
use crate::packed::{pack, MAX_PACKED_LEN};

/// Default cap on the number of candidate tuples `(2n)^(d + 2g')`.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

pub(crate) fn check_budget(n: u32, g_prime: u32, d: usize, budget: u128) -> Result<()> {
    let k = d as u32 + 2 * g_prime;
    let needed = (2 * n as u128).checked_pow(k).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::Budget { what: format!("HS(D_{n}; {g_prime}, {d})"), needed, budget });
    }
    Ok(())
}

/// Depth-first search over `HS(D_n; g', d)` on element indices, in lexicographic order.
pub(crate) struct HsSearch<'a> {
    table: &'a DnTable,
    d: usize,
    k: usize,
    class_slot: Vec<u8>,
    wanted: Option<Vec<u32>>,
}

impl<'a> HsSearch<'a> {
    pub(crate) fn new(table: &'a DnTable, g_prime: u32, d: usize, nu: Option<&NuType>) -> Result<Self> {
        let n = table.n();
        let k = d + 2 * g_prime as usize;
        if k > MAX_PACKED_LEN {
            return Err(Error::precondition(format!("vectors of length {k} exceed the packed limit {MAX_PACKED_LEN}")));
        }
        let classes = ConjClassId::all(n);
        let class_slot = (0..table.order())
            .map(|i| classes.iter().position(|c| *c == table.element(i as u8).class()).unwrap() as u8)
            .collect();
        let wanted = match nu {
            Some(nu) => {
                if nu.n() != n {
                    return Err(Error::ModulusMismatch(n, nu.n()));
                }
                if nu.total() as usize != d {
                    return Ok(Self { table, d, k, class_slot, wanted: Some(vec![u32::MAX; classes.len()]) });
                }
                Some(classes.iter().map(|c| nu.count(*c)).collect())
            }
            None => None,
        };
        Ok(Self { table, d, k, class_slot, wanted })
    }

    fn generates(&self, v: &[u8]) -> bool {
        let n = self.table.n();
        let mut g = n;
        let mut first_refl: Option<u32> = None;
        for &i in v {
            let rot = (i / 2) as u32;
            if i % 2 == 1 {
                match first_refl {
                    None => first_refl = Some(rot),
                    Some(r) => g = gcd(g, (rot + n - r) % n),
                }
            } else {
                g = gcd(g, rot);
            }
        }
        first_refl.is_some() && g == 1
    }

    fn accept(&self, v: &[u8]) -> bool {
        if let Some(wanted) = &self.wanted {
            let mut counts = vec![0u32; wanted.len()];
            for &c in &v[..self.d] {
                counts[self.class_slot[c as usize] as usize] += 1;
            }
            if counts != *wanted {
                return false;
            }
        }
        self.generates(v)
    }

    /// Calls `f` on every member whose first entry lies in `first`.
    pub(crate) fn run(&self, first: std::ops::Range<u8>, f: &mut dyn FnMut(&[u8])) {
        if self.k == 0 {
            return;
        }
        let mut buf = vec![0u8; self.k];
        self.step(0, DnTable::IDENTITY, first, &mut buf, f);
    }

    fn step(&self, i: usize, product: u8, range: std::ops::Range<u8>, buf: &mut Vec<u8>, f: &mut dyn FnMut(&[u8])) {
        let t = self.table;
        let m = t.order() as u8;
        if i < self.d {
            if i + 1 == self.k {
                let c = t.inv(product);
                if c != DnTable::IDENTITY && range.contains(&c) {
                    buf[i] = c;
                    if self.accept(buf) {
                        f(buf);
                    }
                }
                return;
            }
            for c in range.start.max(1)..range.end {
                buf[i] = c;
                self.step(i + 1, t.mul(product, c), 0..m, buf, f);
            }
        } else if (i - self.d).is_multiple_of(2) {
            for a in range {
                buf[i] = a;
                self.step(i + 1, product, 0..m, buf, f);
            }
        } else {
            let a = buf[i - 1];
            for b in range {
                let p = t.mul(product, t.comm(a, b));
                if i + 1 == self.k {
                    if p == DnTable::IDENTITY {
                        buf[i] = b;
                        if self.accept(buf) {
                            f(buf);
                        }
                    }
                } else {
                    buf[i] = b;
                    self.step(i + 1, p, 0..m, buf, f);
                }
            }
        }
    }

    /// All members as packed keys, searched in parallel by first entry and merged in order.
    pub(crate) fn collect_keys(&self) -> Vec<u128> {
        let m = self.table.order() as u8;
        let chunks: Vec<Vec<u128>> = (0..m)
            .into_par_iter()
            .map(|first| {
                let mut out = Vec::new();
                self.run(first..first + 1, &mut |v| out.push(pack(v)));
                out
            })
            .collect();
        chunks.concat()
    }
}

/// Streams `HS(D_n; g', d)` in lexicographic order, optionally restricted to one ν-type.
pub fn for_each_hs(
    n: u32,
    g_prime: u32,
    d: usize,
    nu: Option<&NuType>,
    budget: u128,
    mut f: impl FnMut(HurwitzVector),
) -> Result<()> {
    let table = DnTable::new(n)?;
    check_budget(n, g_prime, d, budget)?;
    let search = HsSearch::new(&table, g_prime, d, nu)?;
    search.run(0..table.order() as u8, &mut |v| f(HurwitzVector::from_indices(n, g_prime, d, v)));
    Ok(())
}

/// All members of `HS(D_n; g', d)` in lexicographic order, optionally restricted to one ν-type.
pub fn enumerate_hs(n: u32, g_prime: u32, d: usize, nu: Option<&NuType>, budget: u128) -> Result<Vec<HurwitzVector>> {
    let table = DnTable::new(n)?;
    check_budget(n, g_prime, d, budget)?;
    let search = HsSearch::new(&table, g_prime, d, nu)?;
    let k = d + 2 * g_prime as usize;
    Ok(search
        .collect_keys()
        .into_iter()
        .map(|key| HurwitzVector::from_indices(n, g_prime, d, &crate::packed::unpack(key, k)))
        .collect())
}
