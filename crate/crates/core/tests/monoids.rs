mod common;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use common::Q;
use proptest::prelude::*;
use weakhopf::algebra::{check_coperfect, check_perfect, check_weak_antipode};
use weakhopf::corpus;
use weakhopf::error::Error;
use weakhopf::monoid::{
    assemble_clifford, check_clifford, check_monoid, check_semilattice, element_inverse, matrix_clifford_monoid, matrix_clifford_spec,
    matrix_label, matrix_semilattice, monoid_algebra, reduction_hom, unit_matrix_group, CliffordSpec, FiniteMonoid, MatrixGroupSpec,
};

const Y_TABLE: [[usize; 6]; 6] = [
    [0, 0, 0, 0, 0, 0],
    [0, 1, 1, 0, 1, 1],
    [0, 1, 2, 0, 1, 2],
    [0, 0, 0, 3, 3, 3],
    [0, 1, 1, 3, 4, 4],
    [0, 1, 2, 3, 4, 5],
];

fn group(n: u64) -> FiniteMonoid {
    unit_matrix_group(MatrixGroupSpec::new(n).unwrap())
}

/// Orders by closing the generators of the elementary matrices and a diagonal
/// unit under multiplication, independent of the determinant scan.
fn closure_order(n: u64) -> usize {
    let mul = |x: [u64; 4], y: [u64; 4]| {
        [
            (x[0] * y[0] + x[1] * y[2]) % n,
            (x[0] * y[1] + x[1] * y[3]) % n,
            (x[2] * y[0] + x[3] * y[2]) % n,
            (x[2] * y[1] + x[3] * y[3]) % n,
        ]
    };
    let mut gens = vec![[1, 1, 0, 1], [1, 0, 1, 1]];
    for u in 1..n {
        if (1..n).any(|v| (u * v) % n == 1) {
            gens.push([u, 0, 0, 1]);
        }
    }
    let mut seen = BTreeSet::from([[1 % n, 0, 0, 1 % n]]);
    let mut queue = VecDeque::from([[1 % n, 0, 0, 1 % n]]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = mul(x, *g);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen.len()
}

#[test]
fn matrix_group_orders() {
    for (n, order) in [(2, 6), (3, 48), (4, 96), (6, 288)] {
        let g = group(n);
        assert_eq!(g.len(), order, "n = {n}");
        assert_eq!(closure_order(n), order, "closure n = {n}");
        assert!(check_monoid(&g).passed());
        assert_eq!(g.label(g.identity()), matrix_label([1, 0, 0, 1], n));
    }
}

#[test]
fn gl2_z2_is_nonabelian() {
    let g = group(2);
    assert!(!g.is_commutative());
    assert_eq!(g.idempotents(), vec![g.identity()]);
}

#[test]
fn reductions() {
    let r = reduction_hom(6, 3).unwrap();
    let (g6, g3) = (group(6), group(3));
    assert_eq!(r.map[g6.identity()], g3.identity());
    assert!(r.surjective);
    let r = reduction_hom(4, 2).unwrap();
    assert_eq!(r.image_size, 6);
    assert!(r.surjective);
    assert!(matches!(reduction_hom(6, 4), Err(Error::NonDivisorModulus { from: 6, to: 4 })));
    assert!(MatrixGroupSpec::new(1).is_err());
}

#[test]
fn semilattice_table_and_laws() {
    let y = matrix_semilattice();
    assert_eq!(y.table_rows(), Y_TABLE.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
    assert_eq!(y.label(y.identity()), "delta");
    assert!(check_semilattice(&y).passed());
    assert!(check_clifford(&y).passed());
    let ky = monoid_algebra(&y, Q).unwrap();
    assert!(check_weak_antipode(&ky).passed() && check_perfect(&ky).passed() && check_coperfect(&ky).passed());
}

#[test]
fn z2_and_corrupted_table() {
    let z2 = FiniteMonoid::cyclic(2);
    assert!(check_monoid(&z2).passed());
    // g·g = 1 in Z_3 breaks associativity: (gg)g^2 = g^2 but g(gg^2) = g.
    let bad = FiniteMonoid::cyclic(3).with_cell(1, 1, 0);
    let report = check_monoid(&bad);
    assert!(!report.passed());
    let w = report.child("associativity").unwrap().first_witness().unwrap();
    assert_eq!(w.index.len(), 3);
}

#[test]
fn full_transformation_monoid_is_not_clifford() {
    // Maps {0,1} -> {0,1} as (f(0), f(1)); product is composition f∘g.
    let maps = [[0, 1], [1, 0], [0, 0], [1, 1]];
    let index = |m: [usize; 2]| maps.iter().position(|x| *x == m).unwrap();
    let table = maps.iter().map(|f| maps.iter().map(|g| index([f[g[0]], f[g[1]]])).collect()).collect();
    let labels = ["id", "swap", "c0", "c1"].iter().map(|s| s.to_string()).collect();
    let t2 = FiniteMonoid::new(labels, table, 0).unwrap();
    assert!(check_monoid(&t2).passed());
    let report = check_clifford(&t2);
    assert!(report.child("regular").unwrap().passed());
    assert!(!report.child("idempotents central").unwrap().passed());
    assert!(matches!(element_inverse(&t2, 2), Err(Error::NotClifford(_))));
    assert!(monoid_algebra(&t2, Q).is_err());
}

#[test]
fn s3_with_zero() {
    let m = corpus::s3_with_zero();
    assert_eq!(m.len(), 7);
    assert!(check_clifford(&m).passed());
    let zero = m.index_of("alpha:1").unwrap();
    for g in 0..m.len() {
        assert_eq!(m.mul(g, zero), zero);
        assert_eq!(m.mul(zero, g), zero);
    }
    let c = m.index_of("delta:(012)").unwrap();
    let inv = element_inverse(&m, c).unwrap();
    assert_eq!(inv, m.mul(c, c));
    assert_eq!(m.label(inv), "delta:(021)");
    assert_eq!(m.label(m.identity()), "delta:id");
}

#[test]
fn two_point_lattice_gives_s_prime() {
    let lattice = FiniteMonoid::new(vec!["alpha".into(), "delta".into()], vec![vec![0, 0], vec![0, 1]], 1).unwrap();
    let groups = BTreeMap::from([("alpha".to_string(), FiniteMonoid::trivial()), ("delta".to_string(), FiniteMonoid::trivial())]);
    let homs = BTreeMap::from([(("delta".to_string(), "alpha".to_string()), vec![0])]);
    let m = assemble_clifford(&CliffordSpec { lattice, groups, homs }).unwrap();
    assert_eq!(m.table_rows(), vec![vec![0, 0], vec![0, 1]]);
    assert_eq!(m.identity(), 1);
}

#[test]
fn assembled_matrix_monoid() {
    let s = matrix_clifford_monoid().unwrap();
    assert_eq!(s.len(), 440);
    assert_eq!(s.label(s.identity()), "delta:1");
    assert!(check_clifford(&s).passed());
    let comps = s.components().unwrap();
    let mut sizes: BTreeMap<String, usize> = BTreeMap::new();
    for (e, members) in &comps {
        sizes.insert(s.label(*e).split(':').next().unwrap().to_string(), members.len());
    }
    let expect = [("alpha", 1), ("beta", 6), ("delta", 1), ("gamma", 96), ("rho", 48), ("sigma", 288)];
    assert_eq!(sizes, expect.iter().map(|(k, v)| (k.to_string(), *v)).collect());

    // Products of the component idempotents reproduce the semilattice.
    let nodes = ["alpha", "beta", "gamma", "rho", "sigma", "delta"];
    let idem: BTreeMap<&str, usize> = comps.iter().map(|(e, _)| (nodes.iter().copied().find(|n| s.label(*e).starts_with(&format!("{n}:"))).unwrap(), *e)).collect();
    for (i, u) in nodes.iter().enumerate() {
        for (j, v) in nodes.iter().enumerate() {
            assert_eq!(s.mul(idem[u], idem[v]), idem[nodes[Y_TABLE[i][j]]]);
        }
    }
    assert_eq!(s.mul(idem["beta"], idem["rho"]), idem["alpha"]);
}

#[test]
fn composite_maps_are_path_independent() {
    // delta -> sigma -> beta and delta -> gamma -> beta are both trivial; also
    // sigma -> beta equals the composite via Z_6 -> Z_2 directly.
    let spec = matrix_clifford_spec().unwrap();
    let sb = &spec.homs[&("sigma".to_string(), "beta".to_string())];
    let g6 = group(6);
    let g2 = group(2);
    for (i, label) in g6.elements().iter().enumerate() {
        let entries: Vec<u64> = label.trim_end_matches(" mod 6").chars().filter(|c| c.is_ascii_digit()).map(|c| c.to_digit(10).unwrap() as u64).collect();
        let reduced = matrix_label([entries[0] % 2, entries[1] % 2, entries[2] % 2, entries[3] % 2], 2);
        assert_eq!(g2.label(sb[i]), reduced);
    }
    let ds = &spec.homs[&("delta".to_string(), "sigma".to_string())];
    let dg = &spec.homs[&("delta".to_string(), "gamma".to_string())];
    let gb = &spec.homs[&("gamma".to_string(), "beta".to_string())];
    assert_eq!(sb[ds[0]], gb[dg[0]]);
}

#[test]
fn inconsistent_specs_are_rejected() {
    let mut spec = matrix_clifford_spec().unwrap();
    // A non-homomorphism on gamma > beta.
    let key = ("gamma".to_string(), "beta".to_string());
    let mut map = spec.homs[&key].clone();
    map[0] = (map[0] + 1) % 6;
    spec.homs.insert(key, map);
    assert!(matches!(assemble_clifford(&spec), Err(Error::NotAHomomorphism { edge }) if edge == "gamma>beta"));

    // Two homomorphisms Z_2 -> Z_2 that disagree along the two paths of a diamond.
    let lattice = FiniteMonoid::new(
        ["bot", "a", "b", "top"].iter().map(|s| s.to_string()).collect(),
        vec![vec![0, 0, 0, 0], vec![0, 1, 0, 1], vec![0, 0, 2, 2], vec![0, 1, 2, 3]],
        3,
    )
    .unwrap();
    let z2 = FiniteMonoid::cyclic(2);
    let groups = ["bot", "a", "b", "top"].iter().map(|n| (n.to_string(), z2.clone())).collect();
    let e = |u: &str, v: &str| (u.to_string(), v.to_string());
    let homs = BTreeMap::from([(e("top", "a"), vec![0, 1]), (e("top", "b"), vec![0, 1]), (e("a", "bot"), vec![0, 1]), (e("b", "bot"), vec![0, 0])]);
    assert!(matches!(
        assemble_clifford(&CliffordSpec { lattice, groups, homs }),
        Err(Error::PathDependentHomomorphisms { from, to }) if from == "top" && to == "bot"
    ));
}

#[test]
fn inverse_is_involutive_anti_homomorphism() {
    let s = matrix_clifford_monoid().unwrap();
    for (_, members) in s.components().unwrap() {
        for &x in members.iter().step_by(7) {
            let xi = element_inverse(&s, x).unwrap();
            assert_eq!(element_inverse(&s, xi).unwrap(), x);
            assert_eq!(s.mul(s.mul(x, xi), x), x);
            for &y in members.iter().step_by(11) {
                let yi = element_inverse(&s, y).unwrap();
                assert_eq!(element_inverse(&s, s.mul(x, y)).unwrap(), s.mul(yi, xi));
            }
        }
    }
}

#[test]
fn matrix_monoid_algebra_is_perfect() {
    let s = matrix_clifford_monoid().unwrap();
    let ks = monoid_algebra(&s, Q).unwrap();
    assert_eq!(ks.dim(), 440);
    assert!(check_perfect(&ks).passed());
}

/// Homomorphisms `Z_m -> Z_n` are `x -> c x` with `c m ≡ 0 (mod n)`.
fn cyclic_hom(m: usize, n: usize, pick: usize) -> Vec<usize> {
    let valid: Vec<usize> = (0..n).filter(|c| (c * m).is_multiple_of(n)).collect();
    let c = valid[pick % valid.len()];
    (0..m).map(|x| (c * x) % n).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn random_chain_specs_assemble_to_clifford(
        orders in prop::collection::vec(1usize..7, 1..4),
        picks in prop::collection::vec(0usize..6, 3),
    ) {
        // A chain n0 < n1 < ... with the last node on top.
        let k = orders.len();
        let names: Vec<String> = (0..k).map(|i| format!("n{i}")).collect();
        let table = (0..k).map(|i| (0..k).map(|j| i.min(j)).collect()).collect();
        let lattice = FiniteMonoid::new(names.clone(), table, k - 1).unwrap();
        let groups = names.iter().zip(&orders).map(|(n, &o)| (n.clone(), FiniteMonoid::cyclic(o))).collect();
        let homs = (1..k).map(|i| ((names[i].clone(), names[i - 1].clone()), cyclic_hom(orders[i], orders[i - 1], picks[i - 1]))).collect();
        let m = assemble_clifford(&CliffordSpec { lattice, groups, homs }).unwrap();
        prop_assert_eq!(m.len(), orders.iter().sum::<usize>());
        prop_assert!(check_monoid(&m).passed());
        prop_assert!(check_clifford(&m).passed());
        prop_assert!(check_perfect(&monoid_algebra(&m, Q).unwrap()).passed());
    }
}
