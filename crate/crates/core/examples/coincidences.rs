//! Finite group checks for pairs of dihedral actions with a common fixed locus.

use dihedral_covers::catalog::{coincidence_check_pair, coincidence_exception_example, d2_equivalences, dd_constructions};
use dihedral_covers::Result;

fn main() -> Result<()> {
    let r = coincidence_check_pair(4, 2)?;
    println!("pair (4, 2): passed {}, nielsen {:?}", r.passed(), r.nielsen);
    let r = coincidence_exception_example(2)?;
    println!("D_4 x Z/2 example: passed {}", r.passed());
    for line in &r.verified {
        println!("  {line}");
    }
    for c in dd_constructions(4)? {
        println!("{:?}: |G| = {}, {} pairs, {} split, passed {}", c.kind, c.group_order, c.pairs, c.split_pairs, c.passed());
    }
    println!("D_2 equivalences: {}", d2_equivalences()?.passed());
    Ok(())
}
