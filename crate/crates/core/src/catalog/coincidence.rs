use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{automorphism_permutations, elements, DihedralAut, DihedralElement, TableGroup};
use crate::hurwitz::{HurwitzVector, NuType};
use crate::moves::{orbit, OrbitOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NielsenRelation {
    Equal,
    AutRelated,
    Unrelated,
}

/// Outcome of a finite verification: every named identity either holds or is listed as a failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoincidenceReport {
    /// Dimension of the common fixed locus.
    pub delta: u32,
    pub case_tag: String,
    pub verified: Vec<String>,
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nielsen: Option<NielsenRelation>,
}

impl CoincidenceReport {
    fn new(delta: u32, case_tag: &str) -> Self {
        Self { delta, case_tag: case_tag.to_string(), verified: Vec::new(), failures: Vec::new(), nielsen: None }
    }

    fn check(&mut self, name: impl Into<String>, holds: bool) {
        if holds {
            self.verified.push(name.into());
        } else {
            self.failures.push(name.into());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// An element of `D_n × Z/2`, also used for the twisted product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Pair {
    g: DihedralElement,
    e: u8,
}

impl Pair {
    fn new(g: DihedralElement, e: u8) -> Self {
        Self { g, e: e % 2 }
    }

    fn inverse(&self) -> Self {
        Self::new(self.g.inverse(), self.e)
    }

    fn is_identity(&self) -> bool {
        self.g.is_identity() && self.e == 0
    }

    fn order(&self) -> u32 {
        let k = self.g.order();
        if self.e == 1 && k % 2 == 1 {
            2 * k
        } else {
            k
        }
    }
}

impl std::ops::Mul for Pair {
    type Output = Pair;

    fn mul(self, rhs: Pair) -> Pair {
        Pair::new(self.g * rhs.g, self.e + rhs.e)
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.g, self.e)
    }
}

fn product_elements(n: u32) -> Vec<Pair> {
    elements(n).flat_map(|g| [Pair::new(g, 0), Pair::new(g, 1)]).collect()
}

fn closure(gens: &[Pair]) -> BTreeSet<Pair> {
    let n = gens[0].g.n();
    let one = Pair::new(DihedralElement::identity(n), 0);
    let mut seen = BTreeSet::from([one]);
    let mut frontier = vec![one];
    while let Some(a) = frontier.pop() {
        for &g in gens {
            let b = a * g;
            if seen.insert(b) {
                frontier.push(b);
            }
        }
    }
    seen
}

fn nielsen_relation(v1: &HurwitzVector, v2: &HurwitzVector) -> Result<NielsenRelation> {
    let (nu1, nu2) = (NuType::of_vector(v1)?, NuType::of_vector(v2)?);
    Ok(if nu1 == nu2 {
        NielsenRelation::Equal
    } else if nu1.aut_orbit().contains(&nu2) {
        NielsenRelation::AutRelated
    } else {
        NielsenRelation::Unrelated
    })
}

fn same_orbit_mod_aut(v1: &HurwitzVector, v2: &HurwitzVector) -> Result<bool> {
    let options = OrbitOptions::mod_aut();
    let (r1, r2) = (orbit(v1, &options)?, orbit(v2, &options)?);
    Ok(!r1.truncated && !r2.truncated && r1.canonical == r2.canonical)
}

/// The two genus-zero systems induced by `(y,1)(x^h,1)(y x^(h-1),0)(x,0)` in `D_n × Z/2`,
/// compared with `(y x^(h-1), x, y x^(h+1), x^-1)` and `(x, y, x, y)`.
pub fn coincidence_check_pair(n: u32, h: u32) -> Result<CoincidenceReport> {
    if n < 3 {
        return Err(Error::InvalidModulus(n));
    }
    let allowed = if n % 2 == 1 { h == 0 } else { h == 0 || 2 * h == n };
    if !allowed {
        return Err(Error::precondition(format!("h = {h} is not allowed for n = {n}")));
    }
    let x = |i: i64| DihedralElement::rotation(n, i);
    let y_x = |i: i64| DihedralElement::reflection(n, -i);
    let y = DihedralElement::y(n);
    let h = h as i64;
    let mut report = CoincidenceReport::new(1, "III-b");

    let gamma = [Pair::new(y, 1), Pair::new(x(h), 1), Pair::new(y_x(h - 1), 0), Pair::new(x(1), 0)];
    report.check("γ1 γ2 γ3 γ4 = 1", gamma.iter().fold(Pair::new(x(0), 0), |p, g| p * *g).is_identity());
    let orders: Vec<u32> = gamma.iter().map(Pair::order).collect();
    report.check(format!("orders are (2, 2, 2, {n})"), orders == vec![2, 2, 2, n]);
    report.check("γ1, ..., γ4 generate D_n × Z/2", closure(&gamma).len() == 4 * n as usize);

    let [g1, g2, g3, g4] = gamma;
    let induced = [g3, g4, g1 * g3 * g1.inverse(), g1 * g4 * g1.inverse()];
    let g1s = g1.inverse();
    let induced_prime = [g4, g1s, g2 * g4 * g2, g2 * g1s * g2];
    report.check("first system lies in D_n × {0}", induced.iter().all(|p| p.e == 0));
    report.check("second system lies in the kernel of (g, a) -> a + refl(g)", induced_prime.iter().all(|p| (p.e + p.g.refl() as u8).is_multiple_of(2)));

    let v1 = HurwitzVector::new(n, 0, vec![y_x(h - 1), x(1), y_x(h + 1), x(-1)], Vec::new())?;
    let v2 = HurwitzVector::new(n, 0, vec![x(1), y, x(1), y], Vec::new())?;
    report.check("first system is (y x^(h-1), x, y x^(h+1), x^-1)", induced.iter().map(|p| p.g).eq(v1.c().iter().copied()));
    report.check("second system is (x, y, x, y)", induced_prime.iter().map(|p| p.g).eq(v2.c().iter().copied()));
    report.check(format!("{v1} is a Hurwitz generating system"), v1.is_hurwitz_system());
    report.check(format!("{v2} is a Hurwitz generating system"), v2.is_hurwitz_system());
    let relation = nielsen_relation(&v1, &v2)?;
    report.nielsen = Some(relation);
    report.check("Nielsen functions agree up to Aut(D_n)", relation != NielsenRelation::Unrelated);
    report.check("both systems have the same unmarked topological type", same_orbit_mod_aut(&v1, &v2)?);
    Ok(report)
}

/// The action of `D_n × Z/2`, `n = 2 d4`, given by `(e,1)(yx,1)(y,0)(x,0)` and its two
/// intermediate covers of genus one and zero.
pub fn coincidence_exception_example(d4: u32) -> Result<CoincidenceReport> {
    if d4 < 2 {
        return Err(Error::precondition(format!("d4 = {d4} must be at least 2")));
    }
    let n = 2 * d4;
    let x = |i: i64| DihedralElement::rotation(n, i);
    let y = DihedralElement::y(n);
    let e = DihedralElement::identity(n);
    let yx = y * x(1);
    let mut report = CoincidenceReport::new(1, "III-a/III-b");

    let gamma = [Pair::new(e, 1), Pair::new(yx, 1), Pair::new(y, 0), Pair::new(x(1), 0)];
    let [g1, g2, g3, g4] = gamma;
    report.check("γ1 γ2 γ3 γ4 = 1", (g1 * g2 * g3 * g4).is_identity());
    report.check(format!("orders are (2, 2, 2, {n})"), gamma.iter().map(Pair::order).eq([2, 2, 2, n]));
    report.check("γ1, ..., γ4 generate D_n × Z/2", closure(&gamma).len() == 4 * n as usize);

    let a = g1 * g2;
    let b = g2 * g3;
    let c = (g1 * g4 * g1.inverse()) * (g1 * g4 * g1.inverse());
    report.check("a = (yx, 0)", a == Pair::new(yx, 0));
    report.check("b = (x^-1, 1)", b == Pair::new(x(-1), 1));
    report.check("c = (x^2, 0)", c == Pair::new(x(2), 0));
    report.check("[a, b] = c", a * b * a.inverse() * b.inverse() == c);

    let g3p = g1 * g3 * g1.inverse();
    let g4p = g1 * g4 * g1.inverse();
    report.check("γ3 γ4 γ3' γ4' = 1", (g3 * g4 * g3p * g4p).is_identity());
    report.check(
        "γ3, γ4, γ3', γ4' map to (y,0), (x,0), (y,0), (x,0)",
        [g3, g4, g3p, g4p] == [Pair::new(y, 0), Pair::new(x(1), 0), Pair::new(y, 0), Pair::new(x(1), 0)],
    );
    let h_prime = closure(&[g3, g4, g3p, g4p]);
    report.check("H' = D_n × {0}", h_prime.len() == 2 * n as usize && h_prime.iter().all(|p| p.e == 0));
    let h = closure(&[a, b, c]);
    let projection: BTreeSet<DihedralElement> = h.iter().map(|p| p.g).collect();
    report.check("H has order 2n", h.len() == 2 * n as usize);
    report.check("H projects onto D_n under the first coordinate", projection.len() == 2 * n as usize);
    report.check("H and H' are distinct with intersection of index 2", h != h_prime && h.intersection(&h_prime).count() == n as usize);

    let genus_one = HurwitzVector::new(n, 1, vec![c.g.inverse()], vec![a.g, b.g])?;
    let genus_zero = HurwitzVector::new(n, 0, vec![y, x(1), y, x(1)], Vec::new())?;
    report.check(format!("{genus_one} is a Hurwitz generating system"), genus_one.is_hurwitz_system());
    report.check(format!("{genus_zero} is a Hurwitz generating system"), genus_zero.is_hurwitz_system());
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DdKind {
    DirectProduct,
    Dihedral2n,
    Semidirect,
}

impl DdKind {
    pub fn applies(self, n: u32) -> bool {
        match self {
            DdKind::DirectProduct => n >= 3,
            DdKind::Dihedral2n => n >= 3 && n.is_multiple_of(2),
            DdKind::Semidirect => n.is_multiple_of(4) && (n / 4) % 2 == 1,
        }
    }
}

/// A group `G ⊇ H, H' ≅ D_n` with `K = H ∩ H'` of index 2 in both, checked from its Cayley table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DdConstruction {
    pub n: u32,
    pub kind: DdKind,
    pub group_order: usize,
    /// Pairs `{H, H'}` found by the subgroup search.
    pub pairs: usize,
    pub split_pairs: usize,
    pub verified: Vec<String>,
    pub failures: Vec<String>,
}

impl DdConstruction {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.pairs > 0
    }

    fn check(&mut self, name: String, holds: bool) {
        if holds {
            self.verified.push(name);
        } else {
            self.failures.push(name);
        }
    }
}

/// Every `(DD)` extension construction that applies to `n`.
pub fn dd_constructions(n: u32) -> Result<Vec<DdConstruction>> {
    if n < 3 {
        return Err(Error::InvalidModulus(n));
    }
    [DdKind::DirectProduct, DdKind::Dihedral2n, DdKind::Semidirect]
        .into_iter()
        .filter(|k| k.applies(n))
        .map(|k| dd_construction(n, k))
        .collect()
}

type SubgroupPair = (BTreeSet<usize>, BTreeSet<usize>);

pub fn dd_construction(n: u32, kind: DdKind) -> Result<DdConstruction> {
    if !kind.applies(n) {
        return Err(Error::precondition(format!("{kind:?} does not apply to n = {n}")));
    }
    let mut out = DdConstruction { n, kind, group_order: 0, pairs: 0, split_pairs: 0, verified: Vec::new(), failures: Vec::new() };
    let (group, named): (TableGroup, Option<SubgroupPair>) = match kind {
        DdKind::DirectProduct => {
            let all = product_elements(n);
            let g = TableGroup::from_elements(all.clone(), |a, b| *a * *b)?;
            let h: BTreeSet<usize> = (0..all.len()).filter(|&i| all[i].e == 0).collect();
            let graph: BTreeSet<usize> = (0..all.len()).filter(|&i| (all[i].e + all[i].g.refl() as u8).is_multiple_of(2)).collect();
            (g, Some((h, graph)))
        }
        DdKind::Dihedral2n => {
            let all: Vec<DihedralElement> = elements(2 * n).collect();
            let g = TableGroup::from_elements(all.clone(), |a, b| *a * *b)?;
            let idx = |e: DihedralElement| all.iter().position(|f| *f == e).unwrap();
            let x2 = idx(DihedralElement::rotation(2 * n, 2));
            let h = g.generated(&[x2, idx(DihedralElement::y(2 * n))]);
            let h2 = g.generated(&[x2, idx(DihedralElement::reflection(2 * n, 1))]);
            (g, Some((h, h2)))
        }
        DdKind::Semidirect => {
            let q = n as i64 / 4;
            let phi = DihedralAut::new(n, 2 * q - 1, -2)?;
            out.check("the twisting map is an automorphism of order 2".into(), phi.compose(&phi) == DihedralAut::identity(n) && phi != DihedralAut::identity(n));
            let all = product_elements(n);
            let op = move |a: &Pair, b: &Pair| {
                let image = if a.e == 1 { phi.apply(&b.g) } else { b.g };
                Pair::new(a.g * image, a.e + b.e)
            };
            let g = TableGroup::from_elements(all.clone(), op)?;
            let idx = |p: Pair| all.iter().position(|f| *f == p).unwrap();
            let gamma2 = idx(Pair::new(DihedralElement::identity(n), 1));
            let acts = elements(n).all(|h| {
                let c = g.mul(g.mul(gamma2, idx(Pair::new(h, 0))), g.inv(gamma2));
                all[c] == Pair::new(phi.apply(&h), 0)
            });
            out.check("conjugation by γ2 acts as y -> y x^2, x -> x^(2h-1)".into(), acts);
            let h: BTreeSet<usize> = (0..all.len()).filter(|&i| all[i].e == 0).collect();
            let k = g.generated(&[idx(Pair::new(DihedralElement::rotation(n, 2), 0)), idx(Pair::new(DihedralElement::y(n), 0))]);
            let h2: BTreeSet<usize> = g.generated(&k.iter().copied().chain([gamma2]).collect::<Vec<_>>());
            (g, Some((h, h2)))
        }
    };
    out.group_order = group.order();
    out.check(format!("|G| = {}", 4 * n), group.order() == 4 * n as usize);
    let subgroups = group.dihedral_subgroups(n as usize);
    let mut found_named = false;
    for (i, h) in subgroups.iter().enumerate() {
        for h2 in &subgroups[i + 1..] {
            let k: BTreeSet<usize> = h.intersection(h2).copied().collect();
            if k.len() != n as usize {
                continue;
            }
            out.pairs += 1;
            if let Some((a, b)) = &named {
                found_named |= (a == h && b == h2) || (a == h2 && b == h);
            }
            let label = format!("pair {}", out.pairs);
            out.check(format!("{label}: K is normal in G"), group.is_normal(&k));
            out.check(format!("{label}: G/K has exponent 2"), (0..group.order()).all(|g| k.contains(&group.mul(g, g))));
            let involutions = |s: &BTreeSet<usize>| -> Vec<usize> {
                s.iter().copied().filter(|&g| !k.contains(&g) && group.element_order(g) == 2).collect()
            };
            let (i1, i2) = (involutions(h), involutions(h2));
            out.check(format!("{label}: involutions γ1 ∈ H \\ K and γ2 ∈ H' \\ K exist"), !i1.is_empty() && !i2.is_empty());
            let generated = i1.first().zip(i2.first()).map_or(0, |(&a, &b)| {
                group.generated(&k.iter().copied().chain([a, b]).collect::<Vec<_>>()).len()
            });
            out.check(format!("{label}: K, γ1, γ2 generate G"), generated == group.order());
            let splits = i1.iter().any(|&a| i2.iter().any(|&b| group.mul(a, b) == group.mul(b, a)));
            let product_shape = is_product_with_graph(&group, h, h2, &k) || is_product_with_graph(&group, h2, h, &k);
            out.check(format!("{label}: the sequence splits iff G = H × Z/2 with H' a graph"), splits == product_shape);
            if splits {
                out.split_pairs += 1;
            }
        }
    }
    if named.is_some() {
        out.check("the explicit pair H, H' is among the pairs found".into(), found_named);
    }
    match kind {
        DdKind::DirectProduct => {
            let all_split = out.split_pairs == out.pairs;
            out.check("every pair splits".into(), all_split)
        }
        DdKind::Dihedral2n => {
            let none_split = out.split_pairs == 0;
            out.check("no pair splits".into(), none_split)
        }
        DdKind::Semidirect => {}
    }
    Ok(out)
}

/// Whether some central involution `z ∉ H` gives `G = H × <z>` and `H' = K ∪ (H \ K) z`.
fn is_product_with_graph(g: &TableGroup, h: &BTreeSet<usize>, h2: &BTreeSet<usize>, k: &BTreeSet<usize>) -> bool {
    (0..g.order()).filter(|z| !h.contains(z) && g.element_order(*z) == 2).any(|z| {
        let central = (0..g.order()).all(|a| g.mul(a, z) == g.mul(z, a));
        let graph: BTreeSet<usize> = h.iter().map(|&a| if k.contains(&a) { a } else { g.mul(a, z) }).collect();
        central && graph == *h2
    })
}

/// The two equivalences in `D_2` used to rule out a fixed locus of dimension two.
pub fn d2_equivalences() -> Result<CoincidenceReport> {
    let v = |s: &str| -> Result<HurwitzVector> { s.parse() };
    let base = v("n=2 g=1 c=[y,y] ab=[x*y,e]")?;
    let moved = v("n=2 g=1 c=[y,y] ab=[x,x]")?;
    let twisted = v("n=2 g=1 c=[x*y,x*y] ab=[x,e]")?;
    let mut report = CoincidenceReport::new(2, "II");
    for w in [&base, &moved, &twisted] {
        report.check(format!("{w} is a Hurwitz generating system"), w.is_hurwitz_system());
    }
    let plain = orbit(&base, &OrbitOptions::default())?;
    let target = orbit(&moved, &OrbitOptions::default())?;
    report.check(format!("{base} and {moved} are in one orbit of the mapping class group"), !plain.truncated && plain.canonical == target.canonical);
    let indices = base.to_indices();
    let by_aut = automorphism_permutations(2)?.iter().any(|perm| {
        let image: Vec<u8> = indices.iter().map(|&i| perm[i as usize]).collect();
        HurwitzVector::from_indices(2, 1, 2, &image) == twisted
    });
    report.check(format!("an automorphism of D_2 maps {base} to {twisted}"), by_aut);
    report.check(format!("{base} and {twisted} agree modulo moves and automorphisms"), same_orbit_mod_aut(&base, &twisted)?);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_checks() {
        for (n, h) in [(3, 0), (5, 0), (4, 2), (6, 3), (4, 0), (6, 0)] {
            let r = coincidence_check_pair(n, h).unwrap();
            assert!(r.passed(), "n={n} h={h}: {:?}", r.failures);
            assert_eq!(r.delta, 1);
        }
        assert_eq!(coincidence_check_pair(3, 0).unwrap().nielsen, Some(NielsenRelation::Equal));
        assert_eq!(coincidence_check_pair(4, 2).unwrap().nielsen, Some(NielsenRelation::AutRelated));
        assert!(coincidence_check_pair(3, 1).is_err());
        assert!(coincidence_check_pair(6, 2).is_err());
    }

    #[test]
    fn exception_example() {
        for d4 in 2..=4 {
            let r = coincidence_exception_example(d4).unwrap();
            assert!(r.passed(), "d4={d4}: {:?}", r.failures);
        }
        assert!(coincidence_exception_example(1).is_err());
    }

    #[test]
    fn extensions() {
        let kinds = |n| dd_constructions(n).unwrap().into_iter().map(|c| c.kind).collect::<Vec<_>>();
        assert_eq!(kinds(3), vec![DdKind::DirectProduct]);
        assert_eq!(kinds(4), vec![DdKind::DirectProduct, DdKind::Dihedral2n, DdKind::Semidirect]);
        assert_eq!(kinds(6), vec![DdKind::DirectProduct, DdKind::Dihedral2n]);
        for n in [3, 4, 6] {
            for c in dd_constructions(n).unwrap() {
                assert!(c.passed(), "n={n} {:?}: {:?}", c.kind, c.failures);
            }
        }
        assert!(dd_construction(6, DdKind::Semidirect).is_err());
    }

    #[test]
    fn d2_checks() {
        let r = d2_equivalences().unwrap();
        assert!(r.passed(), "{:?}", r.failures);
    }
}
