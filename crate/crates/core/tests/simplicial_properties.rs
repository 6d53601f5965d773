use proptest::prelude::*;

mod common;
use common::{bicomplex, complex};

use spiralss::simplicial::{cycles_object, dold_kan, normalize, BisimplicialAb, SimplicialSpace};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn dold_kan_round_trip(c in complex()) {
        let x = dold_kan(&c, 5);
        prop_assert!(x.check().is_ok());
        let n = normalize(&x);
        for t in 0..=5 {
            let h = c.homology(t).value().invariants().clone();
            prop_assert_eq!(n.group(t).invariants().clone(), c.group(t).invariants().clone(), "degree {}", t);
            prop_assert_eq!(n.homology(t).value().invariants().clone(), h.clone(), "degree {}", t);
            prop_assert_eq!(x.homotopy(t as usize).invariants().clone(), h, "degree {}", t);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn cycles_are_the_kernel_of_d0(b in bicomplex(3)) {
        let x = SimplicialSpace::gamma(&b, 3).space;
        prop_assert!(x.check().is_ok());
        for n in 1..=x.top() {
            let chains = x.chains_object(n);
            let below = cycles_object(&x, n - 1);
            let d0 = x.d0_map(&chains, &below).unwrap();
            let z = cycles_object(&x, n);
            for t in 0..=x.tmax() {
                // the kernel of d0 on C_n, pushed into X_{n,t}
                let ker = d0[t].kernel_lattice();
                let gens: Vec<_> = ker.basis().iter().map(|v| chains.parts[t].lift(v)).collect();
                let dim = x.group(n, t).ngens();
                let pushed = spiralss::zmod::Lattice::from_generators(dim, gens)
                    .with_generators(&x.group(n, t).relation_vectors());
                prop_assert!(pushed.same_as(z.parts[t].sub()), "n={} t={}", n, t);
            }
        }
    }

    #[test]
    fn identities_hold_on_double_dold_kan(b in bicomplex(2)) {
        let x = BisimplicialAb::double_dold_kan(&b, 3, 3);
        prop_assert!(x.check().is_ok());
        let back = BisimplicialAb::from_space(&x.vertical_normalize(), 3);
        prop_assert!(back.check().is_ok());
        for s in 0..=3 {
            let a: Vec<_> = x.homotopy_groups(s).iter().map(|g| g.invariants().clone()).collect();
            let c: Vec<_> = back.homotopy_groups(s).iter().map(|g| g.invariants().clone()).collect();
            prop_assert_eq!(a, c, "column {}", s);
        }
    }
}
