//! A free product of exterior algebras with a in the left factor: H^n(E)
//! becomes free from degree n+1 on, so cf = n and cd = m.

use galcoh::criteria::{evaluate, hereditary_check};
use galcoh::scenario::build_free_example;

fn main() -> galcoh::Result<()> {
    for (p, n, m) in [(2, 1, 3), (3, 2, 4), (5, 3, 3)] {
        let s = build_free_example(p, n, m)?;
        let report = evaluate(&s)?;
        let free: String = report.verdicts.iter().map(|v| if v.free { 'F' } else { '.' }).collect();
        let heredity = hereditary_check(&s, &report)?;
        println!(
            "{}: free pattern {free}, cf = {}, cd = {}, heredity {}",
            s.name(),
            report.cf,
            report.cd,
            if heredity.passed() { "ok" } else { "violated" }
        );
    }
    Ok(())
}
