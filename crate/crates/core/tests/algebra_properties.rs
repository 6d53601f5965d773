use proptest::prelude::*;

mod common;
use common::matrix;

use spiralss::zmod::{check_exact, smith_normal_form, AbHom, FgAbGroup, Int, Lattice, Matrix, Subquotient};

fn orders(max: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(prop::sample::select(vec![0i64, 0, 2, 3, 4, 6]), 0..=max)
}

/// A well-defined hom: the image of a generator of order `a` in a summand of
/// order `b` is a multiple of `b / gcd(a, b)`.
fn hom_between(dom: Vec<i64>, cod: Vec<i64>) -> impl Strategy<Value = AbHom> {
    let (n, m) = (dom.len(), cod.len());
    prop::collection::vec(-5i64..=5, n * m).prop_map(move |raw| {
        let mut rows = vec![vec![0i64; n]; m];
        for i in 0..m {
            for j in 0..n {
                let (a, b) = (dom[j], cod[i]);
                let step = match (a, b) {
                    (_, 0) if a != 0 => 0,
                    (_, 0) => 1,
                    (0, _) => 1,
                    _ => b / gcd(a, b),
                };
                rows[i][j] = raw[i * n + j] * step;
            }
        }
        AbHom::from_rows(group(&dom), group(&cod), &rows).expect("well-defined by construction")
    })
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn group(orders: &[i64]) -> FgAbGroup {
    FgAbGroup::new(orders.iter().map(|&o| Int::from(o)).collect())
}

fn hom() -> impl Strategy<Value = AbHom> {
    (orders(4), orders(4)).prop_flat_map(|(a, b)| hom_between(a, b))
}

fn composable() -> impl Strategy<Value = (AbHom, AbHom)> {
    (orders(4), orders(4), orders(4)).prop_flat_map(|(a, b, c)| (hom_between(a, b.clone()), hom_between(b, c)))
}

/// A unimodular matrix, as a product of random elementary operations.
fn unimodular(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec((0..n.max(1), 0..n.max(1), -3i64..=3, any::<bool>()), 0..12).prop_map(move |ops| {
        let mut u = Matrix::identity(n);
        for (a, b, c, neg) in ops {
            if n == 0 {
                break;
            }
            if a != b {
                u.row_sub_mul(a, b, &Int::from(c));
            } else if neg {
                u.negate_col(a);
            }
        }
        u
    })
}

fn same_map(f: &AbHom, g: &AbHom) -> bool {
    f.add(&g.neg()).expect("same shape").is_zero()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn smith_form_contract(m in matrix(6)) {
        let snf = smith_normal_form(&m);
        prop_assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.d_matrix());
        prop_assert_eq!(snf.u.mul(&snf.u_inv), Matrix::identity(m.rows()));
        for w in snf.diag.windows(2) {
            prop_assert!(w[0].divides(&w[1]), "{} does not divide {}", w[0], w[1]);
        }
        for (i, d) in snf.diag.iter().enumerate() {
            prop_assert!(!d.is_negative());
            prop_assert_eq!(i < snf.rank, !d.is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn kernel_and_cokernel_are_exact(f in hom()) {
        let ker = f.kernel();
        let (_, proj) = f.cokernel();
        let seq = [
            AbHom::zero(FgAbGroup::zero(), ker.value().clone()),
            AbHom::kernel_inclusion(&ker),
            f.clone(),
            proj.clone(),
            AbHom::zero(proj.codomain().clone(), FgAbGroup::zero()),
        ];
        prop_assert!(check_exact(&seq).unwrap().exact);
    }

    #[test]
    fn induced_maps_compose((f, g) in composable(), gens in prop::collection::vec(prop::collection::vec(-4i64..=4, 4), 0..3)) {
        let a = f.domain().clone();
        let n = a.ngens();
        let den_a: Vec<Vec<Int>> = gens.iter().map(|v| v[..n].iter().map(|&x| Int::from(x)).collect()).collect();
        let fm = f.matrix();
        let gm = g.matrix();
        let den_b: Vec<Vec<Int>> = den_a.iter().map(|v| fm.mul_vec(v)).collect();
        let den_c: Vec<Vec<Int>> = den_b.iter().map(|v| gm.mul_vec(v)).collect();
        let sa = Subquotient::new(a.clone(), Lattice::full(n), Lattice::from_generators(n, den_a)).unwrap();
        let nb = g.domain().ngens();
        let sb = Subquotient::new(g.domain().clone(), Lattice::full(nb), Lattice::from_generators(nb, den_b)).unwrap();
        let nc = g.codomain().ngens();
        let sc = Subquotient::new(g.codomain().clone(), Lattice::full(nc), Lattice::from_generators(nc, den_c)).unwrap();
        let gf = f.then(&g).unwrap();
        let whole = sa.induced(&gf, &sc).unwrap();
        let steps = sa.induced(&f, &sb).unwrap().then(&sb.induced(&g, &sc).unwrap()).unwrap();
        prop_assert!(same_map(&whole, &steps));
    }

    #[test]
    fn invariants_ignore_the_presentation((rel, p, q) in matrix(5).prop_flat_map(|m| {
        let (r, c) = (m.rows(), m.cols());
        (Just(m), unimodular(r), unimodular(c))
    })) {
        let inv = FgAbGroup::from_relations(&rel).value().invariants().clone();
        let other = FgAbGroup::from_relations(&p.mul(&rel).mul(&q));
        prop_assert_eq!(other.value().invariants(), &inv);
    }
}

#[test]
fn invariants_separate_groups() {
    let a = FgAbGroup::from_parts(0, &[2, 2]);
    let b = FgAbGroup::from_parts(0, &[4]);
    let c = FgAbGroup::from_parts(0, &[2, 3]);
    let d = FgAbGroup::from_parts(0, &[6]);
    assert_ne!(a.invariants(), b.invariants());
    assert_eq!(c.invariants(), d.invariants());
}
