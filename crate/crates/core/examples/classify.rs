//! Canonical forms and the equivalence test.

use dihedral_covers::classification::{canonical_invariant, equivalent, nu_realizable};
use dihedral_covers::{HurwitzVector, NuType, Result};

fn main() -> Result<()> {
    for s in [
        "n=4 g=2 c=[] ab=[y,x^2,x,e]",
        "n=3 g=1 c=[y,y] ab=[x,e]",
        "n=6 g=2 c=[x,x] ab=[y,x,x,e]",
        "n=5 g=0 c=[y,y,x,x^4] ab=[]",
    ] {
        let v: HurwitzVector = s.parse()?;
        let form = canonical_invariant(&v)?;
        println!("{v}\n  {}\n  representative {}", form.to_json(), form.representative());
    }
    let a: HurwitzVector = "n=3 g=1 c=[y,y] ab=[x,e]".parse()?;
    let b: HurwitzVector = "n=3 g=1 c=[x*y,x*y] ab=[x,e]".parse()?;
    println!("{a} ~ {b}: {}", equivalent(&a, &b)?);

    let nu = NuType::parse(5, "refl:4")?;
    println!("type {nu} with g' = 0: {:?}", nu_realizable(5, 0, &nu)?);
    Ok(())
}
