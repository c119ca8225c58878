//! Q_2 with a = -1: H^1(E) is free, H^2(E) is trivial but not free, and the
//! committed E-side data satisfies every exactness check.

use galcoh::criteria::{evaluate, hereditary_check};
use galcoh::exactness::verify_all;
use galcoh::scenario::build_q2_fixture;

fn main() -> galcoh::Result<()> {
    let (s, eside) = build_q2_fixture()?;
    let report = evaluate(&s)?;
    for v in &report.verdicts {
        println!("degree {}: free {}, trivial {}", v.degree, v.free, v.trivial);
    }
    println!("cf = {}, ct = {}, cd = {}", report.cf, report.ct, report.cd);
    let heredity = hereditary_check(&s, &report)?;
    println!("freeness lost at {:?} (permitted without -1 a sum of squares)", heredity.permitted_free_violations());
    for (n, d) in eside.degrees() {
        println!("H^{n}(E): blocks {:?}", d.module.decompose().lengths);
    }
    println!("exactness checks pass: {}", verify_all(&s, &eside)?.passed());
    Ok(())
}
