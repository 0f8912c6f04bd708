use proptest::prelude::*;

use geo5::atlas::{self, enumerate_products};
use geo5::classify::{classify_solvable5, fingerprint, GeometryLabel, Leaf};
use geo5::curvature::curvature_report;
use geo5::exact::{Mat, Poly, Rat};
use geo5::groups::{heis3_law, GroupModel};
use geo5::isotropy::Stabilizer;
use geo5::lattices;
use geo5::liealg::LieAlgebra;

fn invertible(n: usize) -> impl Strategy<Value = Mat> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, n), n)
        .prop_map(|rows| Mat::from_ints(&rows))
        .prop_filter("singular", |m| !m.determinant().unwrap().is_zero())
}

fn int_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(-9i64..=9, 1..=max_deg + 1)
        .prop_map(|c| Poly::from_ints(&c))
        .prop_filter("zero", |p| !p.is_zero())
}

fn constructible() -> Vec<GeometryLabel> {
    atlas::constructible_labels()
}

fn any_label() -> impl Strategy<Value = GeometryLabel> {
    prop::sample::select(constructible())
}

fn any_leaf() -> impl Strategy<Value = Leaf> {
    prop::sample::select(Leaf::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn squarefree_part_divides(p in int_poly(6)) {
        let s = p.squarefree_part().unwrap();
        prop_assert!(p.rem(&s).is_zero());
        prop_assert_eq!(s.gcd(&s.derivative()).degree(), 0);
    }

    #[test]
    fn rank_nullity(rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 4), 1..6)) {
        let m = Mat::from_ints(&rows);
        prop_assert_eq!(m.rank() + m.kernel().dim(), m.cols());
    }

    #[test]
    fn jordan_count_is_conjugation_invariant(
        rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 4), 4),
        p in invertible(4),
    ) {
        let m = Mat::from_ints(&rows);
        let c = &(&p * &m) * &p.inverse().unwrap();
        prop_assert_eq!(m.jordan_block_count(), c.jordan_block_count());
    }

    #[test]
    fn companion_determinant(p in int_poly(4).prop_filter("degree 3 or 4", |p| (3..=4).contains(&p.degree()))) {
        let m = p.monic();
        let det = m.companion().determinant().unwrap();
        prop_assert_eq!(det.abs(), m.coeff(0).abs());
    }

    #[test]
    fn structure_invariants_survive_basis_change(l in any_label(), p in invertible(5)) {
        let a = atlas::build_algebra(&l).unwrap();
        let b = a.basis_change(&p).unwrap();
        prop_assert!(b.validate().is_ok());
        prop_assert_eq!(a.structure_report(), b.structure_report());
        prop_assert_eq!(a.killing_form().inertia().unwrap(), b.killing_form().inertia().unwrap());
        if a.is_solvable() {
            prop_assert_eq!(a.nilradical().unwrap().dim(), b.nilradical().unwrap().dim());
            prop_assert_eq!(fingerprint(&a).unwrap(), fingerprint(&b).unwrap());
        }
    }

    #[test]
    fn classification_survives_basis_change(leaf in any_leaf(), p in invertible(5)) {
        let a = leaf.reference_algebra();
        let base = classify_solvable5(&a).unwrap();
        let c = classify_solvable5(&a.basis_change(&p).unwrap()).unwrap();
        prop_assert_eq!(&c.label, &base.label);
        prop_assert_eq!(c.trace.answers(), base.trace.answers());
        prop_assert_eq!(c.params, base.params);
    }

    #[test]
    fn complement_scaling(leaf in any_leaf(), num in 1i64..=7, den in 1i64..=7, neg in any::<bool>()) {
        let s = Rat::new(if neg { -num } else { num }, den);
        let mut d = vec![Rat::one(); 5];
        d[4] = s;
        let a = leaf.reference_algebra();
        let base = classify_solvable5(&a).unwrap();
        let c = classify_solvable5(&a.basis_change(&Mat::diag(&d)).unwrap()).unwrap();
        prop_assert_eq!(&c.label, &base.label);
        prop_assert_eq!(c.params, base.params);
    }

    #[test]
    fn curvature_identities_in_any_frame(l in any_label(), p in invertible(5)) {
        let a = atlas::build_algebra(&l).unwrap().basis_change(&p).unwrap();
        let rep = curvature_report(&a);
        prop_assert!(rep.checks.all());
        let trace: Rat = (0..5).map(|i| rep.ricci.get(i, i).clone()).sum();
        prop_assert_eq!(&rep.scalar, &trace);
        for i in 0..5 {
            for j in 0..5 {
                prop_assert_eq!(&rep.sectional[i][j], &rep.sectional[j][i]);
            }
        }
    }

    #[test]
    fn group_laws(
        l in any_label(),
        xs in prop::collection::vec(prop::collection::vec(-1.0f64..1.0, 5), 3),
    ) {
        let m = GroupModel::for_label(&l).unwrap();
        let g: Vec<_> = xs.iter().map(|x| m.exp(x).unwrap()).collect();
        let lhs = m.mul(&m.mul(&g[0], &g[1]).unwrap(), &g[2]).unwrap();
        let rhs = m.mul(&g[0], &m.mul(&g[1], &g[2]).unwrap()).unwrap();
        let scale = lhs.coords.iter().fold(1.0f64, |s, x| s.max(x.abs()));
        for (a, b) in lhs.coords.iter().zip(&rhs.coords) {
            prop_assert!((a - b).abs() <= 1e-10 * scale, "{l}: {a} vs {b}");
        }
        let back = m.inv(&m.inv(&g[0]).unwrap()).unwrap();
        for (a, b) in back.coords.iter().zip(&g[0].coords) {
            prop_assert!((a - b).abs() <= 1e-10 * scale.max(1.0));
        }
    }

    #[test]
    fn heisenberg_law_is_exact(a in prop::array::uniform3(-20i64..=20), b in prop::array::uniform3(-20i64..=20)) {
        let r = |v: [i64; 3]| [Rat::int(v[0]), Rat::int(v[1]), Rat::int(v[2])];
        let (a, b) = (r(a), r(b));
        let zero = [Rat::zero(), Rat::zero(), Rat::zero()];
        prop_assert_eq!(heis3_law(&a, &zero), a.clone());
        prop_assert_eq!(heis3_law(&zero, &a), a.clone());
        let neg = [-&a[0], -&a[1], -&a[2]];
        prop_assert_eq!(heis3_law(&a, &neg), zero);
        let exact = GroupModel::heis3().mul_exact(&a, &b).unwrap();
        prop_assert_eq!(exact, heis3_law(&a, &b).to_vec());
    }

    #[test]
    fn accepted_unit_cubics_have_trace_zero_logs(b in -8i64..=8, c in -8i64..=8, sign in prop::bool::ANY) {
        let p = Poly::from_ints(&[if sign { 1 } else { -1 }, c, b, 1]);
        if let Ok(u) = lattices::unit_cubic_check(&p) {
            let sig = u.poly.root_signature().unwrap();
            prop_assert!(sig.all_real && sig.distinct == 3);
            if let Ok(rep) = lattices::dirichlet_lattice(&u) {
                prop_assert!(rep.log_sum.abs() < 1e-10);
                for unit in &rep.units {
                    prop_assert!(unit.logs.iter().sum::<f64>().abs() < 1e-10);
                }
            }
        }
    }
}

#[test]
fn sol_search_is_deterministic_and_witnesses_are_totally_real() {
    let t = lattices::Target::new(vec![1.0, -0.5, -0.5]).unwrap();
    let first = lattices::sol_family_model_check(&t, 8).unwrap();
    let second = lattices::sol_family_model_check(&t, 8).unwrap();
    assert_eq!(first, second);
    for target in [vec![1.0, -0.5, -0.5], vec![1.0, 0.2, -1.2]] {
        let rep = lattices::sol_family_model_check(&lattices::Target::new(target).unwrap(), 10).unwrap();
        if let Some(w) = rep.witness {
            let sig = w.poly.root_signature().unwrap();
            assert!(sig.all_real && sig.zero_mult == 0 && sig.distinct == w.poly.degree());
        }
    }
}

#[test]
fn nilradical_properties() {
    for l in constructible() {
        let a = atlas::build_algebra(&l).unwrap();
        if !a.is_solvable() {
            continue;
        }
        let n = a.nilradical().unwrap().space;
        assert!(a.is_ideal(&n), "{l}");
        assert!(a.subalgebra_lcs(&n).last().unwrap().is_zero(), "{l}");
        for v in n.basis_vectors() {
            assert!(a.ad(&v).unwrap().pow(5).is_zero(), "{l}");
        }
        assert!(n.contains_subspace(&a.center()), "{l}");
        if a.is_nilpotent() {
            assert!(n.is_full(), "{l}");
        }
    }
}

#[test]
fn non_unimodular_algebras_are_not_atlas_algebras() {
    let aff = LieAlgebra::from_int_brackets(2, &[(0, 1, &[(1, 1)])]).direct_sum(&LieAlgebra::abelian(3));
    assert!(!aff.is_unimodular());
    for l in constructible() {
        assert!(atlas::build_algebra(&l).unwrap().is_unimodular(), "{l}");
    }
}

#[test]
fn products_are_canonical() {
    let ps = enumerate_products();
    assert_eq!(ps.len(), 29);
    for (i, a) in ps.iter().enumerate() {
        for b in &ps[i + 1..] {
            assert_ne!(a, b);
        }
    }
    // each product's factors come in a fixed order: re-creating it is a no-op
    for p in &ps {
        let again = atlas::ProductSpec::new(p.factors().iter().rev().copied().collect()).unwrap();
        assert_eq!(&again, p);
    }
}

#[test]
fn lens_bundles_reject_bad_parameters() {
    assert!(GeometryLabel::lens_bundle(2, 4).is_err());
    assert!(GeometryLabel::lens_bundle(0, 1).is_err());
    assert!(GeometryLabel::lens_bundle(2, 3).is_ok());
}

#[test]
fn poset_monotonicity() {
    let nodes = Stabilizer::nodes();
    for a in &nodes {
        for b in &nodes {
            if a.contains(b) {
                assert!(a.dim() >= b.dim(), "{a} contains {b}");
                assert!(a.dim() > b.dim() || a == b, "{a} contains {b}");
            }
        }
    }
    for e in atlas::entries() {
        assert!(nodes.iter().any(|n| std::mem::discriminant(n) == std::mem::discriminant(&e.stabilizer)), "{}", e.name());
    }
}
