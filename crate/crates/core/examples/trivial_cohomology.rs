//! a in the right factor: H^n(E) becomes trivial after degree n, so ct = n.
//! The top wedge of the left generators witnesses non-triviality in degree n.

use galcoh::criteria::evaluate;
use galcoh::ring::RingElement;
use galcoh::scenario::build_trivial_example;

fn main() -> galcoh::Result<()> {
    let (p, n, m) = (3, 2, 4);
    let s = build_trivial_example(p, n, m)?;
    let report = evaluate(&s)?;
    let trivial: String = report.verdicts.iter().map(|v| if v.trivial { 'T' } else { '.' }).collect();
    println!("{}: trivial pattern {trivial}, ct = {}, cd = {}", s.name(), report.ct, report.cd);

    let ring = s.ring();
    let mut b: RingElement = ring.element_from_generator(0)?;
    for i in 1..n {
        b = ring.cup(&b, &ring.element_from_generator(i)?)?;
    }
    let ann = ring.annihilator(s.a_class(), n)?;
    let cup = ring.cup_image(s.a_class(), n)?;
    println!(
        "b = {:?}: in ann_n(a) {}, in a∪H^(n-1) {}",
        b.coords().entries(),
        ann.contains_vector(b.coords())?,
        cup.contains_vector(b.coords())?
    );
    Ok(())
}
