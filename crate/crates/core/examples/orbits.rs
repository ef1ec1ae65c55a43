//! Applying moves and exploring orbits of the mapping class group.

use dihedral_covers::hurwitz::DEFAULT_BUDGET;
use dihedral_covers::moves::{orbit, partition, Move, OrbitOptions};
use dihedral_covers::{DihedralElement, HurwitzVector, Result};

fn main() -> Result<()> {
    let v: HurwitzVector = "n=4 g=2 c=[] ab=[y,e,x,e]".parse()?;
    for mv in [Move::HandleTwistA(1), Move::Map2(1), Move::GlobalConj(DihedralElement::x(4))] {
        println!("{mv}: {} -> {}", v, mv.apply(&v)?);
    }

    let report = orbit(&v, &OrbitOptions::default())?;
    println!("orbit of {v}: {} vectors, diameter {}, smallest {}", report.size, report.diameter, report.canonical);
    let report = orbit(&v, &OrbitOptions::mod_aut())?;
    println!("with automorphisms: {} vectors", report.size);

    let p = partition(4, 2, 0, None, true, DEFAULT_BUDGET)?;
    println!("HS(D_4; 2, 0): {} vectors in {} classes", p.total(), p.len());
    for o in &p.orbits {
        println!("  {} ({} vectors)", o.canonical, o.size);
    }
    Ok(())
}
