//! Second homology orders and the Schur class of a Hurwitz vector.

use dihedral_covers::invariants::{h2_order, h2_sigma_order, relative_h2_class, schur_lift_product};
use dihedral_covers::{ConjClassId, HurwitzVector, Result, SigmaSet};

fn main() -> Result<()> {
    for n in 3..=8 {
        println!("|H_2(D_{n})| = {}", h2_order(n)?);
    }
    let rotations = SigmaSet::new(6, [ConjClassId::Rotation(1)])?;
    let reflections = SigmaSet::new(6, [ConjClassId::ReflEven])?;
    println!("n = 6: sigma {rotations} -> {}, sigma {reflections} -> {}", h2_sigma_order(6, &rotations)?, h2_sigma_order(6, &reflections)?);

    let plain: HurwitzVector = "n=4 g=2 c=[] ab=[y,e,x,e]".parse()?;
    let twisted: HurwitzVector = "n=4 g=2 c=[] ab=[y,x^2,x,e]".parse()?;
    println!("schur({plain}) = {}", schur_lift_product(&plain)?.bit);
    println!("schur({twisted}) = {}", schur_lift_product(&twisted)?.bit);

    let v1: HurwitzVector = "n=4 g=2 c=[x,x] ab=[y,x,x,e]".parse()?;
    let v2: HurwitzVector = "n=4 g=2 c=[x,x] ab=[y,x^3,x,e]".parse()?;
    println!("relative class of {v1} and {v2}: {}", relative_h2_class(&v1, &v2)?.bit);
    Ok(())
}
