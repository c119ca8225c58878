//! Cup products, annihilators and the exterior annihilator law.

use galcoh::linalg::PrimeField;
use galcoh::ring::RingModel;

fn main() -> galcoh::Result<()> {
    let f = PrimeField::new(3)?;
    let ring = RingModel::exterior(f, 4)?;
    let dims: Vec<usize> = (0..=4).map(|n| ring.h_dim(n)).collect();
    println!("{}: dimensions {:?}", ring.describe(), dims);

    let x = ring.element_from_generator(0)?;
    let y = ring.element_from_generator(2)?;
    let xy = ring.cup(&x, &y)?;
    let yx = ring.cup(&y, &x)?;
    println!(
        "{} ∪ {} = {:?}, {} ∪ {} = {:?}",
        ring.basis_label(1, 0),
        ring.basis_label(1, 2),
        xy.coords().entries(),
        ring.basis_label(1, 2),
        ring.basis_label(1, 0),
        yx.coords().entries()
    );
    println!("labels of H^2: {:?}", ring.basis_labels(2));

    for n in 0..=4 {
        let ann = ring.annihilator(&x, n)?;
        let cup = ring.cup_image(&x, n)?;
        println!("degree {n}: dim ann = {}, dim x∪H^(n-1) = {}, equal: {}", ann.dim(), cup.dim(), ann == cup);
    }
    Ok(())
}
