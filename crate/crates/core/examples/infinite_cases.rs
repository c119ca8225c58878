//! Models with infinitely many generators, truncated for computation. The
//! invariants past the truncation come from the closed-form tail.

use galcoh::criteria::evaluate;
use galcoh::scenario::{build_henselian_example, build_mixed_infinite_example, MixedVariant};

fn main() -> galcoh::Result<()> {
    let scenarios = [
        build_henselian_example(2, 8)?,
        build_mixed_infinite_example(3, 2, 6, MixedVariant::Free)?,
        build_mixed_infinite_example(3, 2, 6, MixedVariant::Trivial)?,
    ];
    for s in &scenarios {
        let r = evaluate(s)?;
        let tail = r
            .tail
            .as_ref()
            .map(|t| format!("from degree {}: free {}, trivial {}", t.from_degree, t.free, t.trivial))
            .unwrap_or_else(|| "none".into());
        println!("{} [{}]", s.name(), s.ring().describe());
        println!("  cf = {}, ct = {}, cd = {}; tail {tail}", r.cf, r.ct, r.cd);
    }
    Ok(())
}
