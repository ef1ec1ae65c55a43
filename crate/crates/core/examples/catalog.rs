//! Components of the locus of curves of genus g with a D_n-action.

use dihedral_covers::catalog::{catalog, primary_types, CatalogOptions};
use dihedral_covers::Result;

fn main() -> Result<()> {
    for t in primary_types(4, 3)? {
        println!("g' = {}, orders {:?}", t.g_prime, t.orders);
    }
    let c = catalog(4, 3, CatalogOptions { oracle: true, ..CatalogOptions::default() })?;
    println!("{}", c.to_json());
    Ok(())
}
