//! Parsing Hurwitz vectors, testing generation and evaluation, and counting a space.

use dihedral_covers::hurwitz::{enumerate_hs, hurwitz_genus, DEFAULT_BUDGET};
use dihedral_covers::{HurwitzVector, NuType, Result};

fn main() -> Result<()> {
    let v: HurwitzVector = "n=3 g=0 c=[y,y,x,x^2] ab=[]".parse()?;
    println!("{v}: evaluation {}, check {:?}", v.evaluate(), v.check_hurwitz());
    println!("nu = {}, sigma = {}", NuType::of_vector(&v)?, NuType::of_vector(&v)?.support());
    println!("genus of the cover: {}", hurwitz_genus(3, 0, &[2, 2, 3, 3])?);

    let bad: HurwitzVector = "n=4 g=0 c=[x^2,y,x^2*y] ab=[]".parse()?;
    println!("{bad}: {:?}", bad.check_hurwitz());

    let all = enumerate_hs(3, 0, 4, None, DEFAULT_BUDGET)?;
    println!("|HS(D_3; 0, 4)| = {}", all.len());
    let nu = NuType::parse(3, "rot1:2,refl:2")?;
    println!("of which {} have type {nu}", enumerate_hs(3, 0, 4, Some(&nu), DEFAULT_BUDGET)?.len());
    Ok(())
}
