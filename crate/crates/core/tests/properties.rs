//! Randomized properties of moves, automorphisms and the canonical invariant.

use dihedral_covers::classification::canonical_invariant;
use dihedral_covers::hurwitz::{enumerate_hs, DEFAULT_BUDGET};
use dihedral_covers::moves::Move;
use dihedral_covers::{DihedralAut, DihedralElement, HurwitzVector, NuType};
use proptest::prelude::*;
use proptest::sample::Index;

const CELLS: [(u32, u32, usize); 6] = [(3, 0, 4), (4, 1, 1), (4, 1, 2), (5, 1, 2), (6, 0, 4), (4, 2, 0)];

fn pool() -> &'static Vec<Vec<HurwitzVector>> {
    static POOL: std::sync::OnceLock<Vec<Vec<HurwitzVector>>> = std::sync::OnceLock::new();
    POOL.get_or_init(|| CELLS.iter().map(|&(n, gp, d)| enumerate_hs(n, gp, d, None, DEFAULT_BUDGET).unwrap()).collect())
}

fn pick(cell: usize, i: &Index) -> HurwitzVector {
    let list = &pool()[cell];
    list[i.index(list.len())].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn invariant_survives_moves(cell in 0..CELLS.len(), v in any::<Index>(), steps in proptest::collection::vec(any::<Index>(), 1..8)) {
        let start = pick(cell, &v);
        let moves = Move::all_for(start.n(), start.g_prime(), start.d());
        let mut w = start.clone();
        for s in &steps {
            w = moves[s.index(moves.len())].apply(&w).unwrap();
        }
        prop_assert!(w.is_hurwitz_system());
        prop_assert_eq!(NuType::of_vector(&w).unwrap(), NuType::of_vector(&start).unwrap());
        prop_assert_eq!(canonical_invariant(&w).unwrap(), canonical_invariant(&start).unwrap());
    }

    #[test]
    fn invariant_survives_automorphisms(cell in 0..CELLS.len(), v in any::<Index>(), f in any::<Index>()) {
        let start = pick(cell, &v);
        let auts = DihedralAut::all(start.n()).unwrap();
        let image = start.apply_aut(&auts[f.index(auts.len())]);
        prop_assert!(image.is_hurwitz_system());
        prop_assert_eq!(canonical_invariant(&image).unwrap(), canonical_invariant(&start).unwrap());
    }

    #[test]
    fn moves_invert(cell in 0..CELLS.len(), v in any::<Index>(), m in any::<Index>()) {
        let start = pick(cell, &v);
        let moves = Move::all_for(start.n(), start.g_prime(), start.d());
        let mv = &moves[m.index(moves.len())];
        prop_assert_eq!(mv.inverse().apply(&mv.apply(&start).unwrap()).unwrap(), start);
    }

    #[test]
    fn vectors_round_trip_through_text(cell in 0..CELLS.len(), v in any::<Index>()) {
        let start = pick(cell, &v);
        let text = start.to_string();
        prop_assert_eq!(text.parse::<HurwitzVector>().unwrap(), start);
    }

    #[test]
    fn elements_round_trip_through_text(n in 2u32..40, rot in 0u32..40, refl: bool) {
        let e = DihedralElement::new(n, rot % n, refl).unwrap();
        prop_assert_eq!(DihedralElement::parse(n, &e.to_string()).unwrap(), e);
    }
}
