//! Jordan decomposition and freeness of F_3[C_3]-modules, including a
//! module presented in a scrambled basis.

use galcoh::linalg::{FpMatrix, PrimeField};
use galcoh::module::CyclicGroupModule;

fn main() -> galcoh::Result<()> {
    let f = PrimeField::new(3)?;
    let m = CyclicGroupModule::from_blocks(f, &[3, 2, 1])?;
    let change = FpMatrix::from_rows(
        f,
        6,
        &[
            vec![1, 1, 0, 0, 0, 0],
            vec![0, 1, 2, 0, 0, 1],
            vec![0, 0, 1, 0, 0, 0],
            vec![1, 0, 0, 1, 0, 0],
            vec![0, 0, 0, 0, 1, 2],
            vec![0, 0, 0, 0, 0, 1],
        ],
    )?;
    let scrambled = m.conjugate(&change)?;
    for (name, module) in [("blocks 3+2+1", &m), ("same, other basis", &scrambled)] {
        println!(
            "{name}: blocks {:?}, fixed points {}, norm image {}, free {}, trivial {}, dim H^2 {}",
            module.decompose().lengths,
            module.fixed_points().dim(),
            module.norm_image().dim(),
            module.is_free(),
            module.is_trivial(),
            module.h2_dim()
        );
    }

    let regular = CyclicGroupModule::regular(f);
    let free = regular.direct_sum(&regular)?;
    println!("F_3[C_3]^2: free {}, dim H^2 {}", free.is_free(), free.h2_dim());
    Ok(())
}
