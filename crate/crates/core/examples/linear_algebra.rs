//! Rank, kernel and subspace lattice operations over F_2 and F_5.

use galcoh::linalg::{FpMatrix, FpVector, PrimeField, Subspace};

fn main() -> galcoh::Result<()> {
    let f2 = PrimeField::new(2)?;
    let m = FpMatrix::from_rows(f2, 4, &[vec![1, 1, 0, 0], vec![0, 1, 1, 0], vec![1, 0, 1, 0]])?;
    println!("F_2 matrix of rank {} with kernel of dimension {}", m.rank(), m.kernel().dim());

    let f5 = PrimeField::new(5)?;
    let u = Subspace::span(f5, 3, &[FpVector::new(f5, &[1, 2, 0])?, FpVector::new(f5, &[0, 1, 1])?])?;
    let w = Subspace::span(f5, 3, &[FpVector::new(f5, &[1, 0, 3])?, FpVector::new(f5, &[0, 0, 1])?])?;
    let sum = u.sum(&w)?;
    let meet = u.intersect(&w)?;
    println!(
        "F_5^3: dim U = {}, dim W = {}, dim (U + W) = {}, dim (U ∩ W) = {}",
        u.dim(),
        w.dim(),
        sum.dim(),
        meet.dim()
    );
    for v in meet.basis_vectors() {
        println!("  U ∩ W is spanned by {:?}", v.entries());
    }

    let a = FpMatrix::from_rows(f5, 2, &[vec![2, 1], vec![1, 1]])?;
    let inv = a.inverse().expect("determinant 1 is a unit");
    println!("inverse over F_5: {:?}", inv.to_rows());
    assert!(a.mul(&inv)?.is_identity());
    Ok(())
}
