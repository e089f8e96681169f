use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use quiverbench::ar::{minimal_presentation, tau, tau_minus};
use quiverbench::hom::{are_isomorphic, ext1_dim, hom_dim, syzygy, IsoOptions};
use quiverbench::*;

fn field_of(p: u64) -> Field {
    if p == 0 {
        Field::Rational
    } else {
        Field::prime(p).unwrap()
    }
}

fn matrix_from(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Matrix {
    let mut m = Matrix::zeros(field, rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, field.from_i64(entries[(r * cols + c) % entries.len()]));
        }
    }
    m
}

fn matrix_strategy() -> impl Strategy<Value = Matrix> {
    (prop_oneof![Just(0u64), Just(2), Just(3), Just(5)], 0usize..5, 0usize..5, prop::collection::vec(-3i64..=3, 25))
        .prop_map(|(p, r, c, e)| matrix_from(field_of(p), r, c, &e))
}

/// `a, d: 1→2`, `b: 2→3`, `c: 1→3`.
fn test_quiver() -> Quiver {
    Quiver::new(
        3,
        vec![Arrow::new("a", 1, 2), Arrow::new("b", 2, 3), Arrow::new("c", 1, 3), Arrow::new("d", 1, 2)],
    )
    .unwrap()
}

fn test_algebra(p: u64) -> Arc<BoundAlgebra> {
    static CACHE: OnceLock<HashMap<u64, Arc<BoundAlgebra>>> = OnceLock::new();
    CACHE
        .get_or_init(|| {
            [0u64, 2, 3]
                .into_iter()
                .map(|p| (p, Arc::new(BoundAlgebra::path_algebra(field_of(p), test_quiver()).unwrap())))
                .collect()
        })[&p]
        .clone()
}

fn random_rep(a: &Arc<BoundAlgebra>, dims: &[usize], entries: &[i64]) -> Representation {
    let mut offset = 0;
    let maps = a
        .quiver()
        .arrows()
        .iter()
        .map(|x| {
            let (r, c) = (dims[x.target - 1], dims[x.source - 1]);
            let m = matrix_from(a.field(), r, c, &entries[offset..]);
            offset += r * c;
            m
        })
        .collect();
    Representation::new(a.clone(), dims.to_vec(), maps).unwrap()
}

fn rep_strategy(p: u64) -> impl Strategy<Value = Representation> {
    (prop::collection::vec(0usize..=2, 3), prop::collection::vec(-2i64..=2, 24))
        .prop_map(move |(d, e)| random_rep(&test_algebra(p), &d, &e))
}

fn rep_pair(p: u64) -> impl Strategy<Value = (Representation, Representation)> {
    (rep_strategy(p), rep_strategy(p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(m in matrix_strategy()) {
        let ns = m.nullspace_basis();
        prop_assert_eq!(m.rank() + ns.len(), m.cols());
        for v in &ns {
            prop_assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
        }
        prop_assert!(m.rank() <= m.rows().min(m.cols()));
    }

    #[test]
    fn solve_is_exact(m in matrix_strategy(), b in prop::collection::vec(-3i64..=3, 5)) {
        let f = m.field();
        let rhs: Vec<Scalar> = (0..m.rows()).map(|i| f.from_i64(b[i])).collect();
        if let Some(x) = m.solve(&rhs).unwrap() {
            prop_assert_eq!(m.mul_vec(&x), rhs);
        } else {
            // inconsistent: appending b raises the rank
            let aug = m.hstack(&Matrix::from_columns(f, m.rows(), &[rhs]));
            prop_assert_eq!(aug.rank(), m.rank() + 1);
        }
    }

    #[test]
    fn inverse_is_two_sided(m in matrix_strategy()) {
        if let Some(w) = m.invert() {
            let n = m.rows();
            prop_assert_eq!(m.mul(&w), Matrix::identity(m.field(), n));
            prop_assert_eq!(w.mul(&m), Matrix::identity(m.field(), n));
        } else {
            prop_assert!(m.rows() != m.cols() || m.rank() < m.rows());
        }
    }

    #[test]
    fn hom_is_additive((m, n) in rep_pair(3), extra in rep_strategy(3)) {
        let sum = m.direct_sum(&extra).unwrap();
        prop_assert_eq!(hom_dim(&sum, &n).unwrap(), hom_dim(&m, &n).unwrap() + hom_dim(&extra, &n).unwrap());
        let sum = n.direct_sum(&extra).unwrap();
        prop_assert_eq!(hom_dim(&m, &sum).unwrap(), hom_dim(&m, &n).unwrap() + hom_dim(&m, &extra).unwrap());
        prop_assert_eq!(
            ext1_dim(&m, &sum).unwrap(),
            ext1_dim(&m, &n).unwrap() + ext1_dim(&m, &extra).unwrap()
        );
    }

    #[test]
    fn projective_and_injective_detect_dimensions(m in rep_strategy(2)) {
        let a = m.algebra().clone();
        for v in 1..=3 {
            prop_assert_eq!(hom_dim(&projective(&a, v).unwrap(), &m).unwrap(), m.dim_at(v));
            prop_assert_eq!(hom_dim(&m, &injective(&a, v).unwrap()).unwrap(), m.dim_at(v));
        }
    }

    #[test]
    fn duality_reverses_hom((m, n) in rep_pair(0)) {
        prop_assert_eq!(hom_dim(&m, &n).unwrap(), hom_dim(&n.dual(), &m.dual()).unwrap());
        prop_assert_eq!(m.dual().dim_vector(), m.dim_vector());
    }

    #[test]
    fn double_dual_is_isomorphic(m in rep_strategy(2)) {
        let dd = m.dual().dual();
        prop_assert!(are_isomorphic(&dd, &m, &IsoOptions::default()).unwrap().is_iso());
    }

    #[test]
    fn radical_plus_top(m in rep_strategy(3)) {
        let rad = m.radical().dim_vector();
        prop_assert_eq!(&rad + &m.top(), m.dim_vector());
    }

    #[test]
    fn presentation_bookkeeping(m in rep_strategy(2)) {
        let pres = minimal_presentation(&m).unwrap();
        let omega = &pres.syzygy;
        let omega2 = syzygy(omega).unwrap().kernel;
        prop_assert_eq!(pres.p0.dim_vector(), &m.dim_vector() + &omega.dim_vector());
        prop_assert_eq!(pres.p1.dim_vector(), &omega.dim_vector() + &omega2.dim_vector());
        prop_assert!(pres.minimal);
        prop_assert!(pres.map.then(&pres.cover).is_zero());
        let (_, _, f) = pres.matrix.to_morphism(m.algebra()).unwrap();
        prop_assert_eq!(f, pres.map);
    }

    #[test]
    fn hereditary_ar_formula((m, n) in rep_pair(3)) {
        prop_assert_eq!(ext1_dim(&m, &n).unwrap(), hom_dim(&n, &tau(&m).unwrap()).unwrap());
    }

    #[test]
    fn euler_form((m, n) in rep_pair(2)) {
        let q = m.algebra().quiver();
        let (x, y) = (m.dim_vector(), n.dim_vector());
        let diag: i64 = (1..=3).map(|v| (x.at(v) * y.at(v)) as i64).sum();
        let off: i64 = q.arrows().iter().map(|a| (x.at(a.source) * y.at(a.target)) as i64).sum();
        prop_assert_eq!(hom_dim(&m, &n).unwrap() as i64 - ext1_dim(&m, &n).unwrap() as i64, diag - off);
    }

    #[test]
    fn tau_is_additive_on_classes((m, n) in rep_pair(3)) {
        let sum = tau(&m.direct_sum(&n).unwrap()).unwrap();
        prop_assert_eq!(sum.dim_vector(), &tau(&m).unwrap().dim_vector() + &tau(&n).unwrap().dim_vector());
    }

    #[test]
    fn iso_witness_inverts(m in rep_strategy(3), seed in any::<u64>()) {
        let opts = IsoOptions { seed, ..IsoOptions::default() };
        let copy = m.direct_sum(&Representation::zero(m.algebra().clone())).unwrap();
        match are_isomorphic(&m, &copy, &opts).unwrap() {
            IsoVerdict::Iso(w) => {
                let inv = w.inverse().unwrap();
                prop_assert_eq!(w.then(&inv), quiverbench::hom::Morphism::identity(&m));
                prop_assert!(w.is_intertwiner(&m, &copy));
            }
            other => prop_assert!(false, "{:?}", other),
        }
    }
}

/// Random zero and binomial relations on small quivers with cycles.
fn small_algebra(p: u64, seed: &[u8]) -> Option<BoundAlgebra> {
    let f = field_of(p);
    let q = Quiver::new(
        2,
        vec![Arrow::new("x", 1, 2), Arrow::new("y", 2, 1), Arrow::new("z", 1, 2), Arrow::new("w", 1, 1)],
    )
    .unwrap();
    let mut relations = vec![Relation::zero_path(f, Path::from_names(&q, &["w", "w"]).unwrap()).unwrap()];
    let twos: Vec<Vec<&str>> = vec![
        vec!["x", "y"], vec!["y", "x"], vec!["z", "y"], vec!["y", "z"], vec!["w", "x"], vec!["y", "w"], vec!["w", "z"],
    ];
    for (i, names) in twos.iter().enumerate() {
        if seed[i % seed.len()] % 3 != 0 {
            relations.push(Relation::zero_path(f, Path::from_names(&q, names).unwrap()).unwrap());
        }
    }
    if seed[0] % 2 == 0 {
        let xy = Path::from_names(&q, &["x", "y"]).unwrap();
        let zy = Path::from_names(&q, &["z", "y"]).unwrap();
        relations.push(Relation::commutativity(f, xy, zy).unwrap());
    }
    BoundAlgebra::build(f, q, relations, 8).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn algebras_are_associative_and_covariant(p in prop_oneof![Just(0u64), Just(2), Just(5)], seed in prop::collection::vec(any::<u8>(), 7)) {
        if let Some(a) = small_algebra(p, &seed) {
            prop_assert!(a.dimension() <= 30);
            prop_assert!(a.is_associative());
            let counts: usize = a.admissibility_report().block_counts.iter().map(|(_, c)| c).sum();
            prop_assert_eq!(counts, a.dimension());
            for v in 1..=2 {
                prop_assert!(a.basis_index(&Path::stationary(v)).is_some());
            }
            let op = a.opposite().unwrap();
            prop_assert_eq!(op.dimension(), a.dimension());
            for s in 1..=2 {
                for t in 1..=2 {
                    prop_assert_eq!(op.basis_between(t, s).len(), a.basis_between(s, t).len());
                }
            }
            // reversing a basis path of A lands on a single basis path of A^op
            for b in a.basis() {
                let img = op.reduce_path(&b.reversed());
                prop_assert_eq!(img.iter().filter(|c| !c.is_zero()).count(), 1);
            }
        }
    }
}

#[test]
fn gallery_tau_round_trips() {
    let opts = IsoOptions::default();
    for n in 4..=6 {
        for f in [field_of(2), field_of(5), field_of(0)] {
            let g = Gallery::new(GalleryConfig::new(n, f).unwrap()).unwrap();
            for e in g.e.iter().chain(&g.e_star) {
                let back = tau_minus(&tau(e).unwrap()).unwrap();
                assert!(are_isomorphic(&back, e, &opts).unwrap().is_iso());
                let fwd = tau(&tau_minus(e).unwrap()).unwrap();
                assert!(are_isomorphic(&fwd, e, &opts).unwrap().is_iso());
            }
        }
    }
}

#[test]
fn gallery_hereditary_ar_formula() {
    let g = Gallery::new(GalleryConfig::new(6, field_of(5)).unwrap()).unwrap();
    let mut mods = g.e.clone();
    for v in 1..=7 {
        mods.push(simple(&g.h, v).unwrap());
    }
    for m in &mods {
        let tm = tau(m).unwrap();
        for n in &mods {
            assert_eq!(ext1_dim(m, n).unwrap(), hom_dim(n, &tm).unwrap());
        }
    }
}

#[test]
fn small_algebra_generator_builds() {
    let a = small_algebra(5, &[1]).unwrap();
    assert_eq!(a.dimension(), 6);
    assert_eq!(a.nilpotency_degree(), 2);
    let built = (0u8..40).filter(|s| small_algebra(2, &[*s, s / 3, s / 5]).is_some()).count();
    assert!(built > 10, "{built}");
}
