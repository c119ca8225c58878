use proptest::prelude::*;

use galcoh::criteria::{evaluate, ExtensionScenario};
use galcoh::exactness::{verify_exact, LinearChain};
use galcoh::linalg::{FpMatrix, FpVector, PrimeField, Subspace};
use galcoh::module::CyclicGroupModule;
use galcoh::ring::RingModel;
use galcoh::scenario::{build_free_example, build_trivial_example, ScenarioFile};

fn field(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

/// Rank by plain integer elimination mod p, sharing no code with the crate.
fn naive_rank(p: i64, rows: &[Vec<u32>], cols: usize) -> usize {
    let mut m: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|&x| x as i64 % p).collect()).collect();
    let inv = |a: i64| (1..p).find(|b| a * b % p == 1).unwrap();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, pivot);
        let scale = inv(m[rank][c]);
        for x in m[rank].iter_mut() {
            *x = *x * scale % p;
        }
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c];
                let pivot_row = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x = (*x - f * y).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn prime() -> impl Strategy<Value = u32> {
    prop_oneof![Just(2u32), Just(3u32), Just(5u32), Just(7u32)]
}

fn matrix_rows(p: u32, rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::vec(0..p, cols), rows)
}

fn matrix() -> impl Strategy<Value = (u32, usize, Vec<Vec<u32>>)> {
    (prime(), 0usize..7, 0usize..9).prop_flat_map(|(p, r, c)| (Just(p), Just(c), matrix_rows(p, r, c)))
}

type Generators = Vec<Vec<u32>>;

fn subspace_triple() -> impl Strategy<Value = (u32, usize, Generators, Generators, Generators)> {
    (prime(), 1usize..7).prop_flat_map(|(p, n)| {
        (Just(p), Just(n), matrix_rows(p, 4, n), matrix_rows(p, 4, n), matrix_rows(p, 3, n))
    })
}

fn span(p: u32, n: usize, rows: &[Vec<u32>]) -> Subspace {
    let f = field(p);
    let vs: Vec<FpVector> = rows.iter().map(|r| FpVector::new(f, r).unwrap()).collect();
    Subspace::span(f, n, &vs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn rank_matches_naive_elimination((p, cols, rows) in matrix()) {
        let m = FpMatrix::from_rows(field(p), cols, &rows).unwrap();
        prop_assert_eq!(m.rank(), naive_rank(p as i64, &rows, cols));
    }

    #[test]
    fn rank_nullity((p, cols, rows) in matrix()) {
        let m = FpMatrix::from_rows(field(p), cols, &rows).unwrap();
        prop_assert_eq!(m.rank() + m.kernel().dim(), cols);
        prop_assert_eq!(m.rank(), m.transpose().rank());
        for v in m.kernel().basis_vectors() {
            prop_assert!(m.mul_vec(&v).unwrap().is_zero());
        }
    }

    #[test]
    fn lattice_laws((p, n, a, b, c) in subspace_triple()) {
        let u = span(p, n, &a);
        let w = span(p, n, &b);
        let x = span(p, n, &c);
        let sum = u.sum(&w).unwrap();
        let meet = u.intersect(&w).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), u.dim() + w.dim());
        prop_assert_eq!(&sum, &w.sum(&u).unwrap());
        prop_assert_eq!(&meet, &w.intersect(&u).unwrap());
        prop_assert_eq!(u.sum(&w.sum(&x).unwrap()).unwrap(), sum.sum(&x).unwrap());
        prop_assert_eq!(u.intersect(&w.intersect(&x).unwrap()).unwrap(), meet.intersect(&x).unwrap());
        prop_assert_eq!(&u.sum(&meet).unwrap(), &u);
        prop_assert_eq!(&u.intersect(&sum).unwrap(), &u);
        prop_assert!(sum.contains(&u).unwrap() && u.contains(&meet).unwrap());
    }

    #[test]
    fn canonical_form_ignores_the_spanning_set((p, n, a, _, _) in subspace_triple(), seed in any::<u64>()) {
        let u = span(p, n, &a);
        // Recombine the generators with pseudo-random coefficients and add them.
        let mut extra = a.clone();
        let mut state = seed;
        for _ in 0..3 {
            let mut row = vec![0u32; n];
            for g in &a {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let c = (state >> 33) as u32 % p;
                for (k, x) in g.iter().enumerate() {
                    row[k] = (row[k] + c * x) % p;
                }
            }
            extra.push(row);
        }
        extra.reverse();
        let v = span(p, n, &extra);
        prop_assert_eq!(&u, &v);
        prop_assert_eq!(u.basis(), v.basis());
        prop_assert_eq!(span(p, n, &u.basis().to_rows()), u.clone());
    }

    #[test]
    fn module_oracles_agree(p in prop_oneof![Just(2u32), Just(3u32), Just(5u32)], lengths in prop::collection::vec(1usize..6, 1..6), rows in prop::collection::vec(prop::collection::vec(0u32..5, 30), 30)) {
        let f = field(p);
        let lengths: Vec<usize> = lengths.into_iter().map(|l| 1 + (l - 1) % p as usize).collect();
        let planted = CyclicGroupModule::from_blocks(f, &lengths).unwrap();
        let dim = planted.dim();
        let change: Vec<Vec<u32>> = rows.iter().take(dim).map(|r| r.iter().take(dim).map(|x| x % p).collect()).collect();
        let mut change = FpMatrix::from_rows(f, dim, &change).unwrap();
        if change.inverse().is_none() {
            change = FpMatrix::identity(f, dim);
        }
        let m = planted.conjugate(&change).unwrap();
        let mut expected = lengths.clone();
        expected.sort_unstable_by(|a, b| b.cmp(a));
        let mut found = m.decompose().lengths;
        found.sort_unstable_by(|a, b| b.cmp(a));
        prop_assert_eq!(&found, &expected);
        let all_p = expected.iter().all(|&l| l == p as usize);
        prop_assert_eq!(m.is_free(), all_p);
        prop_assert_eq!(m.h2_dim() == 0, all_p);
        prop_assert_eq!(m.is_trivial(), expected.iter().all(|&l| l == 1));
        prop_assert_eq!(m.fixed_points().dim(), expected.len());
        prop_assert_eq!(m.fixed_points().dim(), planted.fixed_points().dim());
        prop_assert_eq!(m.norm_image().dim(), planted.norm_image().dim());
    }

    #[test]
    fn exterior_products_are_graded_commutative_and_associative(
        p in prime(),
        m in 1usize..6,
        coeffs in prop::collection::vec(0u32..7, 90),
        degs in (0usize..4, 0usize..4, 0usize..3),
    ) {
        let f = field(p);
        let ring = RingModel::exterior(f, m).unwrap();
        let mut it = coeffs.into_iter();
        let mut element = |d: usize| {
            let h = ring.h_dim(d);
            let c: Vec<u32> = (0..h).map(|_| it.next().unwrap_or(1) % p).collect();
            ring.element_from_u32(d, &c).unwrap()
        };
        let (x, y, z) = (element(degs.0), element(degs.1), element(degs.2));
        let xy = ring.cup(&x, &y).unwrap();
        let yx = ring.cup(&y, &x).unwrap();
        let sign = if degs.0 * degs.1 % 2 == 1 { (p - 1) as u8 } else { 1 };
        prop_assert_eq!(xy.coords().clone(), yx.scale(sign).coords().clone());
        let left = ring.cup(&xy, &z).unwrap();
        let right = ring.cup(&x, &ring.cup(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        if degs.0 % 2 == 1 {
            prop_assert!(ring.cup(&x, &x).unwrap().is_zero());
        }
    }

    #[test]
    fn verdicts_survive_generator_permutations(
        p in prop_oneof![Just(2u32), Just(3u32), Just(5u32)],
        m in 1usize..6,
        a in prop::collection::vec(0u32..5, 5),
        keys in prop::collection::vec(any::<u32>(), 5),
    ) {
        let f = field(p);
        let ring = RingModel::exterior(f, m).unwrap();
        let mut coords: Vec<u32> = a.iter().take(m).map(|x| x % p).collect();
        if coords.iter().all(|&x| x == 0) {
            coords[0] = 1;
        }
        let class = ring.element_from_u32(1, &coords).unwrap();
        let s = ExtensionScenario::new(ring, class).unwrap();
        let mut perm: Vec<usize> = (0..m).collect();
        perm.sort_by_key(|&i| keys[i]);
        let t = s.relabel_generators(&perm).unwrap();
        let (rs, rt) = (evaluate(&s).unwrap(), evaluate(&t).unwrap());
        prop_assert_eq!(rs.cf, rt.cf);
        prop_assert_eq!(rs.ct, rt.ct);
        prop_assert_eq!(rs.cd, rt.cd);
        for (x, y) in rs.verdicts.iter().zip(&rt.verdicts) {
            prop_assert_eq!((x.free, x.trivial), (y.free, y.trivial));
            prop_assert_eq!(x.witnesses.ann.dim(), y.witnesses.ann.dim());
        }
    }

    #[test]
    fn dual_chain_mirrors_exactness(p in prime(), dims in prop::collection::vec(0usize..5, 3..6), seed in any::<u64>()) {
        let f = field(p);
        // Build maps whose consecutive composites vanish: each map kills the
        // image of the previous one by projecting away from it.
        let mut state = seed;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as u32 % p
        };
        let mut maps: Vec<FpMatrix> = Vec::new();
        for w in dims.windows(2) {
            let rows: Vec<Vec<u32>> = (0..w[1]).map(|_| (0..w[0]).map(|_| next()).collect()).collect();
            let mut m = FpMatrix::from_rows(f, w[0], &rows).unwrap();
            if let Some(prev) = maps.last() {
                m = m.mul(&annihilating_projection(f, w[0], &prev.image())).unwrap();
            }
            maps.push(m);
        }
        let chain = LinearChain::new(f, dims.clone(), maps).unwrap();
        let forward = verify_exact(&chain).unwrap();
        let backward = verify_exact(&chain.dual()).unwrap();
        let k = dims.len() - 1;
        prop_assert_eq!(forward.len(), backward.len());
        for r in &forward {
            let mirror = backward.iter().find(|b| b.position == k - r.position).unwrap();
            prop_assert_eq!(r.exact(), mirror.exact());
            // Homology has the same dimension on both sides.
            prop_assert_eq!(r.kernel_excess, mirror.kernel_excess);
        }
    }

    #[test]
    fn scenario_files_round_trip(p in prop_oneof![Just(2u32), Just(3u32), Just(5u32)], n in 1usize..4, extra in 0usize..2, free in any::<bool>()) {
        let m = n + extra;
        let s = if free { build_free_example(p, n, m).unwrap() } else { build_trivial_example(p, n, m).unwrap() };
        let text = ScenarioFile::from_scenario(&s).unwrap().to_json();
        let back = ScenarioFile::parse(&text, "memory").unwrap().build(None).unwrap().scenario;
        let (r1, r2) = (evaluate(&s).unwrap(), evaluate(&back).unwrap());
        prop_assert_eq!(r1, r2);
        prop_assert_eq!(ScenarioFile::from_scenario(&back).unwrap().to_json(), text);
    }
}

/// A matrix that is the identity on a complement of `image` and 0 on it.
fn annihilating_projection(f: PrimeField, n: usize, image: &Subspace) -> FpMatrix {
    let mut basis = image.basis_vectors();
    let k = basis.len();
    for i in 0..n {
        let u = FpVector::unit(f, n, i);
        let s = Subspace::span(f, n, &basis).unwrap();
        if !s.contains_vector(&u).unwrap() {
            basis.push(u);
        }
    }
    let b = FpMatrix::from_columns(f, n, &basis).unwrap();
    let mut keep = FpMatrix::zeros(f, n, n);
    for i in k..n {
        keep.set(i, i, 1);
    }
    b.mul(&keep).unwrap().mul(&b.inverse().unwrap()).unwrap()
}
