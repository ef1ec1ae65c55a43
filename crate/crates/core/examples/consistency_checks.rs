//! Runs the consistency checks on the small grid.

use dihedral_covers::verify::{run_check, Grid};

fn main() {
    for id in 1..=9 {
        println!("{}", run_check(id, Grid::Small));
    }
}
