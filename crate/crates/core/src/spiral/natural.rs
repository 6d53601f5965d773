//! Natural homotopy groups `π^♮_{n,t} = Coker(π_t C_{n+1} -> π_t Z_n)`.
//!
//! The definition uses the cycles objects `Z_n`. The long exact sequence is built on
//! the cone model `π^♮_{a,u} = D_{a,u} / k(E_{a+1,u})`, the `D` of the derived couple;
//! the two agree in degrees `t >= 0` whenever `d_0 : C_m -> Z_{m-1}` is onto in positive
//! degrees for `m <= n`, in particular on Reedy fibrant inputs.

use std::collections::BTreeMap;

use crate::simplicial::SimplicialSpace;
use crate::zmod::{AbHom, FgAbGroup, Lattice, Subquotient};

use super::couple::ExactCouple;
use super::tower::SpiralCouple;

/// `π^♮_{a,u}` with its quotient map from `D_{a,u}`.
pub fn natural_sq<C: ExactCouple + ?Sized>(c: &C, a: i64, u: i64) -> Subquotient {
    let d = c.d_group(a, u);
    let img = c.k(a + 1, u).image_lattice();
    Subquotient::new(d.clone(), Lattice::full(d.ngens()), img).expect("image inside")
}

/// `E^2_{a,u}` as a subquotient of `E^1_{a,u}`.
pub fn e2_sq<C: ExactCouple + ?Sized>(c: &C, a: i64, u: i64) -> Subquotient {
    Subquotient::new(c.e_group(a, u), c.z_lattice(a, u, 2), c.b_lattice(a, u, 2)).expect("B^2 inside Z^2")
}

/// `s : π^♮_{a-1,u+1} -> π^♮_{a,u}`, induced by `i`.
pub fn s_map<C: ExactCouple + ?Sized>(c: &C, a: i64, u: i64) -> AbHom {
    let (x, y) = (natural_sq(c, a - 1, u + 1), natural_sq(c, a, u));
    x.induced(&c.i(a, u), &y).expect("i kills the image of k")
}

/// `h : π^♮_{a,u} -> E^2_{a,u}`, induced by `j`.
pub fn h_map<C: ExactCouple + ?Sized>(c: &C, a: i64, u: i64) -> AbHom {
    let (x, y) = (natural_sq(c, a, u), e2_sq(c, a, u));
    x.induced(&c.j(a, u), &y).expect("j of D lies in Z^2 and j k = d^1")
}

/// `∂ : E^2_{a,u} -> π^♮_{a-2,u+1}`, `e -> i^{-1}(k e)`.
pub fn boundary_map<C: ExactCouple + ?Sized>(c: &C, a: i64, u: i64) -> AbHom {
    let (x, y) = (e2_sq(c, a, u), natural_sq(c, a - 2, u + 1));
    let k = c.k(a, u);
    let i = c.i(a - 1, u);
    let cols: Vec<_> = x
        .lifts()
        .iter()
        .map(|e| {
            let pre = i.preimage_of(&k.apply(e)).expect("k of a d^1-cycle lies in the image of i");
            y.coords(&pre).expect("whole group")
        })
        .collect();
    AbHom::from_columns(x.value().clone(), y.value().clone(), &cols).expect("∂ is well defined on E^2")
}

/// `π^♮_{n,*}` in internal degrees `0..=tmax`.
#[derive(Clone, Debug)]
pub struct NatHomotopy {
    pub n: usize,
    pub graded: BTreeMap<i64, FgAbGroup>,
    /// Per internal degree, the cokernel presentation as a subquotient.
    pub presentation: BTreeMap<i64, Subquotient>,
}

impl NatHomotopy {
    pub fn group(&self, t: i64) -> FgAbGroup {
        self.graded.get(&t).cloned().unwrap_or_else(FgAbGroup::zero)
    }

    /// Same invariants in every internal degree.
    pub fn same_invariants(&self, other: &NatHomotopy) -> bool {
        let keys: std::collections::BTreeSet<i64> = self.graded.keys().chain(other.graded.keys()).copied().collect();
        keys.iter().all(|&t| self.group(t).invariants() == other.group(t).invariants())
    }

    fn from_parts(n: usize, parts: impl Iterator<Item = (i64, Subquotient)>) -> NatHomotopy {
        let mut graded = BTreeMap::new();
        let mut presentation = BTreeMap::new();
        for (t, sq) in parts {
            if !sq.value().is_trivial() {
                graded.insert(t, sq.value().clone());
            }
            presentation.insert(t, sq);
        }
        NatHomotopy { n, graded, presentation }
    }
}

/// The cone-model groups read from the tower couple.
pub fn cone_natural_homotopy(c: &SpiralCouple, n: usize) -> NatHomotopy {
    let parts = (0..=c.tmax() as i64).map(|t| (t, natural_sq(c, n as i64, t)));
    NatHomotopy::from_parts(n, parts)
}

/// True if `d_0 : C_m -> Z_{m-1}` is onto in every degree `t >= 1`, for `1 <= m <= n`.
pub fn d0_onto_through(x: &SimplicialSpace, n: usize) -> bool {
    (1..=n.min(x.top())).all(|m| {
        let c = x.chains_object(m);
        let z = x.cycles_object(m - 1);
        let d0 = x.d0_map(&c, &z).expect("d_0 of a chain is a cycle");
        (1..=x.tmax()).all(|t| d0[t].is_surjective())
    })
}

/// The cokernel of `(d_0)_# : π_t C_{n+1} -> π_t Z_n` computed on the cycles objects.
pub fn natural_homotopy(x: &SimplicialSpace, n: usize) -> NatHomotopy {
    let z = x.cycles_object(n);
    let parts: Vec<(i64, Subquotient)> = if n + 1 > x.top() {
        (0..=x.tmax() as i64).map(|t| (t, z.complex.homology(t))).collect()
    } else {
        let c = x.chains_object(n + 1);
        let d0 = x.d0_map(&c, &z).expect("d_0 of a chain is a cycle");
        (0..=x.tmax() as i64)
            .map(|t| {
                let hz = z.complex.homology(t);
                let hc = c.complex.homology(t);
                let f = hc.induced_unchecked(d0[t as usize].matrix(), &hz);
                let img: Vec<_> = f.image_lattice().basis().iter().map(|v| hz.lift(v)).collect();
                let mut den = hz.den().basis().to_vec();
                den.extend(img);
                let dim = hz.ambient().ngens();
                let sq = Subquotient::new(hz.ambient().clone(), hz.sub().clone(), Lattice::from_generators(dim, den))
                    .expect("image of cycles");
                (t, sq)
            })
            .collect()
    };
    NatHomotopy::from_parts(n, parts.into_iter())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{Bicomplex, BicomplexBuilder};
    use crate::zmod::ChainComplex;

    fn witness() -> Bicomplex {
        BicomplexBuilder::new()
            .free(2, 0, 1)
            .free(1, 0, 1)
            .free(1, 1, 1)
            .free(0, 1, 1)
            .dh(2, 0, vec![vec![1]])
            .dv(1, 1, vec![vec![1]])
            .dh(1, 1, vec![vec![1]])
            .build()
            .unwrap()
    }

    #[test]
    fn constant_space() {
        let c = ChainComplex::concentrated(FgAbGroup::cyclic(3), 1);
        let x = SimplicialSpace::constant(&c, 3);
        let p0 = natural_homotopy(&x, 0);
        assert_eq!(p0.group(1).torsion().len(), 1);
        assert!(p0.group(0).is_trivial());
        for n in 1..=2 {
            assert!(natural_homotopy(&x, n).graded.is_empty());
        }
        // not fibrant: the cone model sees the loops of X_0 instead
        assert!(!d0_onto_through(&x, 1));
        let c = SpiralCouple::new(&x.normalized().bicomplex);
        assert_eq!(cone_natural_homotopy(&c, 1).group(0).torsion().len(), 1);
    }

    #[test]
    fn witness_values() {
        let x = SimplicialSpace::gamma(&witness(), 3).space;
        let c = SpiralCouple::new(&x.normalized().bicomplex);
        for n in 0..=3 {
            assert!(d0_onto_through(&x, n));
            assert!(cone_natural_homotopy(&c, n).same_invariants(&natural_homotopy(&x, n)), "n={n}");
        }
        // d^2 is an isomorphism, so nothing survives in π^♮_{2,0}
        assert!(natural_homotopy(&x, 2).group(0).is_trivial());
        assert!(natural_homotopy(&x, 1).group(0).is_trivial());
        assert_eq!(natural_homotopy(&x, 0).group(1).rank(), 1);
    }
}
