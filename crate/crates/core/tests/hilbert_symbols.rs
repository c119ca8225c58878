//! The Q_2 cup-product table against two independent evaluations of the
//! 2-adic Hilbert symbol.

use galcoh::scenario::{q2_ring, HILBERT_SYMBOLS_Q2};

/// 1 when x X^2 + y Y^2 = Z^2 has no primitive solution modulo 64.
fn brute_force(x: i64, y: i64) -> u32 {
    let m = 64;
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                if a % 2 == 0 && b % 2 == 0 && c % 2 == 0 {
                    continue;
                }
                if (x * a * a + y * b * b - c * c).rem_euclid(m) == 0 {
                    return 0;
                }
            }
        }
    }
    1
}

fn split(mut n: i64) -> (i64, i64) {
    let mut e = 0;
    while n % 2 == 0 {
        n /= 2;
        e += 1;
    }
    (e, n)
}

/// (2^a u, 2^b v)_2 = (-1)^(e(u)e(v) + a w(v) + b w(u)).
fn formula(x: i64, y: i64) -> u32 {
    let (a, u) = split(x);
    let (b, v) = split(y);
    let eps = |t: i64| ((t - 1) / 2).rem_euclid(2);
    let omega = |t: i64| ((t * t - 1) / 8).rem_euclid(2);
    ((eps(u) * eps(v) + a * omega(v) + b * omega(u)) % 2) as u32
}

#[test]
fn committed_table_matches_both_oracles() {
    for &(x, y, v) in &HILBERT_SYMBOLS_Q2 {
        assert_eq!(brute_force(x, y), v, "brute force at ({x}, {y})");
        assert_eq!(formula(x, y), v, "formula at ({x}, {y})");
    }
}

#[test]
fn ring_products_are_the_symbols() {
    let ring = q2_ring().unwrap();
    let units = [-1i64, 2, 5];
    for (i, &x) in units.iter().enumerate() {
        for (j, &y) in units.iter().enumerate() {
            let gx = ring.element_from_generator(i).unwrap();
            let gy = ring.element_from_generator(j).unwrap();
            let product = ring.cup(&gx, &gy).unwrap();
            assert_eq!(product.coords().entries(), &[formula(x, y) as u8], "({x}) ∪ ({y})");
        }
    }
}
