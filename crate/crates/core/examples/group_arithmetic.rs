//! Dihedral and binary dihedral arithmetic, conjugacy classes and automorphisms.

use dihedral_covers::group::{subgroup_generated, DihedralAut};
use dihedral_covers::{BinaryDihedralElement, DihedralElement, Result};

fn main() -> Result<()> {
    let n = 6;
    let x = DihedralElement::x(n);
    let y = DihedralElement::y(n);
    let xy = x * y;
    println!("x * y = {xy}, y * x = {}", y * x);
    println!("class of {xy} is {}, order {}", xy.class(), xy.order());
    println!("[x, y] = {}", x.commutator(&y));

    let h = subgroup_generated(n, &[x.pow(2), y])?;
    println!("<x^2, y> has order {} and index {} in the rotations", h.order(), h.index_in_rotations);

    let auts = DihedralAut::all(n)?;
    println!("|Aut(D_{n})| = {}", auts.len());
    let f = DihedralAut::new(n, 5, 1)?;
    println!("x^5 y^1 automorphism sends y to {}", f.apply(&y));

    let eta = BinaryDihedralElement::eta(n);
    println!("eta^2 = {}, lift of x^2 = {}", eta * eta, BinaryDihedralElement::lift(&x.pow(2)));
    println!("[xi, eta] = {}", BinaryDihedralElement::xi(n, 1).commutator(&eta));
    Ok(())
}
