//! Mapping class group moves on Hurwitz vectors and the breadth-first orbit engine.

mod cache;
mod orbit;

use std::fmt;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::group::{DihedralElement, DnTable};
use crate::hurwitz::HurwitzVector;

pub use cache::{cache_dir_from_env, OrbitCache, CACHE_ENV};
pub use orbit::{orbit, partition, OrbitOptions, OrbitReport, OrbitSummary, Partition, DEFAULT_CAP};
pub(crate) use orbit::OrbitEngine;

/// A generator of the action on `HS(D_n; g', d)`. Indices count from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    /// `(c_i, c_i+1) -> (c_i+1, c_i+1^-1 c_i c_i+1)`.
    BraidL(usize),
    /// `(c_i, c_i+1) -> (c_i c_i+1 c_i^-1, c_i)`.
    BraidR(usize),
    XiTwistA(usize),
    XiTwistAInv(usize),
    XiTwistB(usize),
    XiTwistBInv(usize),
    /// `(a_j, b_j) -> (a_j, b_j a_j)`.
    HandleTwistA(usize),
    HandleTwistAInv(usize),
    /// `(a_j, b_j) -> (a_j b_j, b_j)`.
    HandleTwistB(usize),
    HandleTwistBInv(usize),
    /// Mixes handles `j` and `j+1`.
    Map2(usize),
    Map2Inv(usize),
    GlobalConj(DihedralElement),
}

impl Move {
    pub fn inverse(&self) -> Move {
        match *self {
            Move::BraidL(i) => Move::BraidR(i),
            Move::BraidR(i) => Move::BraidL(i),
            Move::XiTwistA(l) => Move::XiTwistAInv(l),
            Move::XiTwistAInv(l) => Move::XiTwistA(l),
            Move::XiTwistB(l) => Move::XiTwistBInv(l),
            Move::XiTwistBInv(l) => Move::XiTwistB(l),
            Move::HandleTwistA(j) => Move::HandleTwistAInv(j),
            Move::HandleTwistAInv(j) => Move::HandleTwistA(j),
            Move::HandleTwistB(j) => Move::HandleTwistBInv(j),
            Move::HandleTwistBInv(j) => Move::HandleTwistB(j),
            Move::Map2(j) => Move::Map2Inv(j),
            Move::Map2Inv(j) => Move::Map2(j),
            Move::GlobalConj(g) => Move::GlobalConj(g.inverse()),
        }
    }

    pub fn validate(&self, n: u32, g_prime: u32, d: usize) -> Result<()> {
        let g = g_prime as usize;
        let out = |index: usize, limit: usize| Err(Error::IndexOutOfRange { index, limit });
        match *self {
            Move::BraidL(i) | Move::BraidR(i) => {
                if i == 0 || i >= d {
                    return out(i, d.saturating_sub(1));
                }
            }
            Move::XiTwistA(l) | Move::XiTwistAInv(l) | Move::XiTwistB(l) | Move::XiTwistBInv(l) => {
                if d == 0 {
                    return Err(Error::precondition("twists along a branch loop need d >= 1"));
                }
                if l == 0 || l > g {
                    return out(l, g);
                }
            }
            Move::HandleTwistA(j) | Move::HandleTwistAInv(j) | Move::HandleTwistB(j) | Move::HandleTwistBInv(j) => {
                if j == 0 || j > g {
                    return out(j, g);
                }
            }
            Move::Map2(j) | Move::Map2Inv(j) => {
                if j == 0 || j >= g {
                    return out(j, g.saturating_sub(1));
                }
            }
            Move::GlobalConj(e) => {
                if e.n() != n {
                    return Err(Error::ModulusMismatch(n, e.n()));
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, v: &HurwitzVector) -> Result<HurwitzVector> {
        self.validate(v.n(), v.g_prime(), v.d())?;
        let table = DnTable::new(v.n())?;
        let mut idx = v.to_indices();
        MoveContext::new(&table, v.d()).apply(*self, &mut idx);
        Ok(HurwitzVector::from_indices(v.n(), v.g_prime(), v.d(), &idx))
    }

    /// Every move kind applicable to `(g', d)`, with inverses, conjugating by `x` and `y`.
    pub fn all_for(n: u32, g_prime: u32, d: usize) -> Vec<Move> {
        let mut out = Vec::new();
        for mv in MoveSet::standard(n, g_prime, d).moves() {
            out.push(*mv);
            out.push(mv.inverse());
        }
        out
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::BraidL(i) => write!(f, "braid_l({i})"),
            Move::BraidR(i) => write!(f, "braid_r({i})"),
            Move::XiTwistA(l) => write!(f, "xi_a({l})"),
            Move::XiTwistAInv(l) => write!(f, "xi_a_inv({l})"),
            Move::XiTwistB(l) => write!(f, "xi_b({l})"),
            Move::XiTwistBInv(l) => write!(f, "xi_b_inv({l})"),
            Move::HandleTwistA(j) => write!(f, "handle_a({j})"),
            Move::HandleTwistAInv(j) => write!(f, "handle_a_inv({j})"),
            Move::HandleTwistB(j) => write!(f, "handle_b({j})"),
            Move::HandleTwistBInv(j) => write!(f, "handle_b_inv({j})"),
            Move::Map2(j) => write!(f, "map2({j})"),
            Move::Map2Inv(j) => write!(f, "map2_inv({j})"),
            Move::GlobalConj(g) => write!(f, "conj({g})"),
        }
    }
}

impl Serialize for Move {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn braid_move(v: &HurwitzVector, i: usize, left: bool) -> Result<HurwitzVector> {
    if left { Move::BraidL(i) } else { Move::BraidR(i) }.apply(v)
}

pub fn xi_twist_a(v: &HurwitzVector, l: usize) -> Result<HurwitzVector> {
    Move::XiTwistA(l).apply(v)
}

pub fn xi_twist_b(v: &HurwitzVector, l: usize) -> Result<HurwitzVector> {
    Move::XiTwistB(l).apply(v)
}

/// The moves used to generate orbits. Inverses are not needed since each move
/// permutes a finite set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveSet {
    moves: Vec<Move>,
}

impl MoveSet {
    pub fn standard(n: u32, g_prime: u32, d: usize) -> Self {
        let g = g_prime as usize;
        let mut moves: Vec<Move> = (1..d).map(Move::BraidL).collect();
        if d >= 1 {
            for l in 1..=g {
                moves.push(Move::XiTwistA(l));
                moves.push(Move::XiTwistB(l));
            }
        }
        for j in 1..=g {
            moves.push(Move::HandleTwistA(j));
            moves.push(Move::HandleTwistB(j));
        }
        moves.extend((1..g).map(Move::Map2));
        moves.push(Move::GlobalConj(DihedralElement::x(n)));
        moves.push(Move::GlobalConj(DihedralElement::y(n)));
        Self { moves }
    }

    pub fn new(moves: Vec<Move>) -> Self {
        Self { moves }
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    /// Hex SHA-256 of the move list, used to key cached orbit data.
    pub fn hash(&self) -> String {
        let mut h = Sha256::new();
        for mv in &self.moves {
            h.update(mv.to_string().as_bytes());
            h.update(b";");
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Applies moves to vectors of element indices, laid out as `c` followed by `a_1, b_1, ...`.
pub(crate) struct MoveContext<'a> {
    t: &'a DnTable,
    d: usize,
}

impl<'a> MoveContext<'a> {
    pub(crate) fn new(t: &'a DnTable, d: usize) -> Self {
        Self { t, d }
    }

    fn handle(&self, l: usize) -> (usize, usize) {
        let a = self.d + 2 * (l - 1);
        (a, a + 1)
    }

    /// `∏_{k<l} [a_k, b_k]`.
    fn u(&self, v: &[u8], l: usize) -> u8 {
        let t = self.t;
        (1..l).fold(DnTable::IDENTITY, |acc, k| {
            let (a, b) = self.handle(k);
            t.mul(acc, t.comm(v[a], v[b]))
        })
    }

    pub(crate) fn apply(&self, mv: Move, v: &mut [u8]) {
        let t = self.t;
        let m = |a, b| t.mul(a, b);
        let inv = |a| t.inv(a);
        match mv {
            Move::BraidL(i) => {
                let (c1, c2) = (v[i - 1], v[i]);
                v[i - 1] = c2;
                v[i] = m(m(inv(c2), c1), c2);
            }
            Move::BraidR(i) => {
                let (c1, c2) = (v[i - 1], v[i]);
                v[i - 1] = m(m(c1, c2), inv(c1));
                v[i] = c1;
            }
            Move::XiTwistA(l) => {
                let (ai, bi) = self.handle(l);
                let (a, b, c) = (v[ai], v[bi], v[self.d - 1]);
                let u = self.u(v, l);
                let p = m(m(inv(u), c), u);
                let w = m(m(m(m(m(c, u), a), b), inv(a)), inv(u));
                v[ai] = m(p, a);
                v[self.d - 1] = t.conj(w, c);
            }
            Move::XiTwistAInv(l) => {
                let (ai, bi) = self.handle(l);
                let (a1, b, c1) = (v[ai], v[bi], v[self.d - 1]);
                let u = self.u(v, l);
                let p1 = m(m(inv(u), c1), u);
                let mb = m(m(p1, t.comm(a1, b)), b);
                let p = t.conj(inv(mb), p1);
                v[ai] = m(inv(p), a1);
                v[self.d - 1] = t.conj(u, p);
            }
            Move::XiTwistB(l) => {
                let (ai, bi) = self.handle(l);
                let (a, b, c) = (v[ai], v[bi], v[self.d - 1]);
                let u = self.u(v, l);
                let p = m(m(inv(u), c), u);
                let w = m(m(m(m(c, u), t.comm(a, b)), inv(a)), inv(u));
                v[bi] = m(m(m(inv(a), p), a), b);
                v[self.d - 1] = t.conj(w, c);
            }
            Move::XiTwistBInv(l) => {
                let (ai, bi) = self.handle(l);
                let (a, b1, c1) = (v[ai], v[bi], v[self.d - 1]);
                let u = self.u(v, l);
                let p1 = m(m(inv(u), c1), u);
                let na = m(m(p1, t.comm(a, b1)), inv(a));
                let p = t.conj(inv(na), p1);
                v[bi] = m(m(m(inv(a), inv(p)), a), b1);
                v[self.d - 1] = t.conj(u, p);
            }
            Move::HandleTwistA(j) => {
                let (ai, bi) = self.handle(j);
                v[bi] = m(v[bi], v[ai]);
            }
            Move::HandleTwistAInv(j) => {
                let (ai, bi) = self.handle(j);
                v[bi] = m(v[bi], inv(v[ai]));
            }
            Move::HandleTwistB(j) => {
                let (ai, bi) = self.handle(j);
                v[ai] = m(v[ai], v[bi]);
            }
            Move::HandleTwistBInv(j) => {
                let (ai, bi) = self.handle(j);
                v[ai] = m(v[ai], inv(v[bi]));
            }
            Move::Map2(j) => {
                let (a1i, b1i) = self.handle(j);
                let (a2i, b2i) = self.handle(j + 1);
                let (a1, b1, a2, b2) = (v[a1i], v[b1i], v[a2i], v[b2i]);
                for (k, e) in v.iter_mut().enumerate() {
                    if k < a1i || k > b2i {
                        *e = t.conj(a2, *e);
                    }
                }
                v[a1i] = m(a2, a1);
                v[b1i] = b1;
                v[a2i] = t.conj(b1, a2);
                v[b2i] = m(m(m(a2, b2), a2), inv(b1));
            }
            Move::Map2Inv(j) => {
                let (a1i, b1i) = self.handle(j);
                let (a2i, b2i) = self.handle(j + 1);
                let (na1, nb1, na2, nb2) = (v[a1i], v[b1i], v[a2i], v[b2i]);
                let b1 = nb1;
                let a2 = t.conj(inv(b1), na2);
                let a1 = m(inv(a2), na1);
                let b2 = m(m(m(inv(a2), nb2), b1), inv(a2));
                for (k, e) in v.iter_mut().enumerate() {
                    if k < a1i || k > b2i {
                        *e = t.conj(inv(a2), *e);
                    }
                }
                v[a1i] = a1;
                v[b1i] = b1;
                v[a2i] = a2;
                v[b2i] = b2;
            }
            Move::GlobalConj(g) => {
                let g = g.index() as u8;
                for e in v.iter_mut() {
                    *e = t.conj(g, *e);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hurwitz::{enumerate_hs, NuType, DEFAULT_BUDGET};
    use proptest::prelude::*;

    fn v(s: &str) -> HurwitzVector {
        s.parse().unwrap()
    }

    #[test]
    fn braid_examples() {
        assert_eq!(braid_move(&v("n=3 g=0 c=[y,x] ab=[]"), 1, true).unwrap(), v("n=3 g=0 c=[x,x*y] ab=[]"));
        assert_eq!(braid_move(&v("n=5 g=0 c=[x,x^3] ab=[]"), 1, true).unwrap(), v("n=5 g=0 c=[x^3,x] ab=[]"));
        let w = v("n=5 g=0 c=[y,x,x^2*y,x^4] ab=[]");
        assert_eq!(braid_move(&braid_move(&w, 2, true).unwrap(), 2, false).unwrap(), w);
        assert!(braid_move(&w, 4, true).is_err());
        assert!(braid_move(&w, 0, true).is_err());
    }

    #[test]
    fn xi_twist_examples() {
        let w = v("n=3 g=1 c=[x] ab=[x*y,y]");
        assert_eq!(xi_twist_a(&w, 1).unwrap(), v("n=3 g=1 c=[x^2] ab=[x^2*y,y]"));
        let central = v("n=4 g=1 c=[x^2] ab=[x*y,e]");
        let out = xi_twist_a(&central, 1).unwrap();
        assert_eq!(out.a(1), DihedralElement::parse(4, "x^2").unwrap() * central.a(1));
        assert_eq!(out.c(), central.c());
        let twisted = xi_twist_b(&w, 1).unwrap();
        assert!(twisted.evaluate().is_identity());
        assert!(xi_twist_a(&v("n=3 g=1 c=[] ab=[x,y]"), 1).is_err());
        assert!(xi_twist_a(&w, 2).is_err());
    }

    #[test]
    fn handle_examples() {
        let w = v("n=3 g=1 c=[] ab=[y,x]");
        let out = Move::HandleTwistA(1).apply(&w).unwrap();
        assert_eq!(out, v("n=3 g=1 c=[] ab=[y,x*y]"));
        assert_eq!(out.a(1).commutator(&out.b(1)), w.a(1).commutator(&w.b(1)));
        let m = Move::Map2(1).apply(&v("n=4 g=2 c=[] ab=[y,e,x,e]")).unwrap();
        assert_eq!(m, v("n=4 g=2 c=[] ab=[x*y,e,x,x^2]"));
        assert!(m.evaluate().is_identity());
        let conj = Move::GlobalConj(DihedralElement::x(3)).apply(&v("n=3 g=1 c=[y,y] ab=[x,e]")).unwrap();
        assert_eq!(conj, v("n=3 g=1 c=[x^2*y,x^2*y] ab=[x,e]"));
        assert!(Move::Map2(1).apply(&v("n=4 g=1 c=[] ab=[y,x]")).is_err());
    }

    #[test]
    fn move_set_hash_is_stable() {
        let a = MoveSet::standard(4, 2, 1);
        assert_eq!(a.hash(), MoveSet::standard(4, 2, 1).hash());
        assert_ne!(a.hash(), MoveSet::standard(4, 2, 2).hash());
        assert_eq!(a.hash().len(), 64);
    }

    fn sample_cell() -> impl Strategy<Value = (HurwitzVector, Move)> {
        let cells = [(3u32, 1u32, 2usize), (4, 1, 2), (4, 2, 1), (5, 1, 2), (6, 1, 2), (3, 2, 1), (4, 0, 4), (3, 1, 3)];
        let spaces: Vec<Vec<HurwitzVector>> =
            cells.iter().map(|&(n, g, d)| enumerate_hs(n, g, d, None, DEFAULT_BUDGET).unwrap()).collect();
        (0..cells.len(), any::<proptest::sample::Index>(), any::<proptest::sample::Index>()).prop_map(move |(c, vi, mi)| {
            let space = &spaces[c];
            let w = space[vi.index(space.len())].clone();
            let moves = Move::all_for(w.n(), w.g_prime(), w.d());
            let mv = moves[mi.index(moves.len())];
            (w, mv)
        })
    }

    proptest! {
        #[test]
        fn moves_preserve_hurwitz_systems((w, mv) in sample_cell()) {
            let out = mv.apply(&w).unwrap();
            prop_assert!(out.is_hurwitz_system());
            prop_assert_eq!(NuType::of_vector(&out).unwrap(), NuType::of_vector(&w).unwrap());
            prop_assert_eq!(mv.inverse().apply(&out).unwrap(), w);
        }
    }
}
