//! The full spectral sequences of the two towers, with their abutments.

use std::collections::BTreeMap;

use crate::simplicial::{Bicomplex, BisimplicialAb, CochainBicomplex, SimplicialSpace};
use crate::spiral::{ExactCouple, SpiralCouple, TotCouple};
use crate::zmod::{Lattice, Subquotient};

use super::spectral::{Abutment, AbutmentDegree, Grading, SpectralPages};

/// Spectral sequence of the tower of a bisimplicial group, pages `1..=max_page`.
pub fn spiral_ss(x: &BisimplicialAb, max_page: usize) -> SpectralPages {
    spiral_ss_of_space(&x.vertical_normalize(), max_page)
}

pub fn spiral_ss_of_space(x: &SimplicialSpace, max_page: usize) -> SpectralPages {
    spiral_ss_of_chains(&x.normalized().bicomplex, max_page)
}

/// From the normalized chains `(C_{n,t}, d_0, ∂)` directly.
pub fn spiral_ss_of_chains(chains: &Bicomplex, max_page: usize) -> SpectralPages {
    let c = SpiralCouple::new(chains);
    spiral_ss_of_couple(&c, max_page)
}

pub fn spiral_ss_of_couple(c: &SpiralCouple, max_page: usize) -> SpectralPages {
    let mut pages = SpectralPages::from_couple(c, Grading::Homological, max_page, |a, u| (a, u));
    pages.abutment = spiral_abutment(c);
    pages
}

/// `H_m` is `D_{top, m-top}`, filtered by the images of `D_{p, m-p}`.
fn spiral_abutment(c: &SpiralCouple) -> Abutment {
    let top = c.top() as i64;
    let mut degrees = BTreeMap::new();
    for m in 0..=top + c.tmax() as i64 {
        let h = c.d_group(top, m - top);
        let dim = h.ngens();
        let mut quotients = BTreeMap::new();
        let mut below = Lattice::zero(dim);
        for p in 0..=top {
            let f = c.i_power(p, m - p, (top - p) as usize).image_lattice();
            let q = Subquotient::new(h.clone(), f.clone(), below.clone()).expect("increasing filtration");
            if !q.value().is_trivial() {
                quotients.insert(p, q.value().clone());
            }
            below = f;
        }
        if !h.is_trivial() || !quotients.is_empty() {
            degrees.insert(m, AbutmentDegree { group: h, quotients });
        }
    }
    Abutment { degrees }
}

/// Spectral sequence of the Tot tower of a cochain bicomplex, pages `1..=max_page`,
/// positions `(s, t)` with `d_r : (s, t) -> (s + r, t + r - 1)`.
pub fn cosimplicial_ss(k: &CochainBicomplex, max_page: usize) -> SpectralPages {
    let c = TotCouple::new(k);
    cosimplicial_ss_of_couple(&c, max_page)
}

pub fn cosimplicial_ss_of_couple(c: &TotCouple, max_page: usize) -> SpectralPages {
    let mut pages = SpectralPages::from_couple(c, Grading::Cohomological, max_page, |a, u| (1 - a, u));
    pages.abutment = tot_abutment(c);
    pages
}

/// `H_m(Tot)` filtered by `F^s = Ker(H_m Tot -> H_m Tot_{s-1})`.
fn tot_abutment(c: &TotCouple) -> Abutment {
    let w = c.width() as i64;
    let mut degrees = BTreeMap::new();
    for m in -w..=c.cochains().max_t() as i64 {
        let h = c.d_group(-w, m + w);
        let dim = h.ngens();
        let mut quotients = BTreeMap::new();
        let mut above = Lattice::zero(dim);
        for s in (0..=w).rev() {
            let f = c.i_power(-w, m + w, (w + 1 - s) as usize).kernel_lattice();
            let q = Subquotient::new(h.clone(), f.clone(), above.clone()).expect("decreasing filtration");
            if !q.value().is_trivial() {
                quotients.insert(s, q.value().clone());
            }
            above = f;
        }
        if !h.is_trivial() || !quotients.is_empty() {
            degrees.insert(m, AbutmentDegree { group: h, quotients });
        }
    }
    Abutment { degrees }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{BicomplexBuilder, CochainBuilder};

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
    fn witness_pages() {
        let ss = spiral_ss_of_chains(&witness(), 4);
        assert_eq!(ss.group(2, (2, 0)).rank(), 1);
        assert_eq!(ss.group(2, (0, 1)).rank(), 1);
        assert!(ss.group(2, (1, 0)).is_trivial() && ss.group(2, (1, 1)).is_trivial());
        assert!(ss.d(2, (2, 0)).unwrap().is_iso());
        assert!(ss.page(3).is_zero());
        assert!(ss.abutment.degrees.is_empty());
        ss.check_d_squared().unwrap();
        ss.check_homology_steps().unwrap();
        ss.check_convergence().unwrap();
    }

    #[test]
    fn torsion_column_is_killed_by_d1() {
        // (1,0) -(x2)-> (0,0) <-(x3)- (0,1): E^1 = Z and Z/3, E^2 = Z at (1,0)
        let b = BicomplexBuilder::new()
            .free(0, 0, 1)
            .free(1, 0, 1)
            .free(0, 1, 1)
            .dh(1, 0, vec![vec![2]])
            .dv(0, 1, vec![vec![3]])
            .build()
            .unwrap();
        let ss = spiral_ss_of_chains(&b, 3);
        assert_eq!(ss.group(1, (0, 0)).torsion(), &[crate::zmod::Int::from(3)]);
        assert!(ss.group(2, (0, 0)).is_trivial());
        assert_eq!(ss.group(2, (1, 0)).rank(), 1);
        ss.check_homology_steps().unwrap();
        ss.check_convergence().unwrap();
        assert!(!ss.abutment.degrees.contains_key(&0));
        assert_eq!(ss.abutment.degrees[&1].quotients[&1].rank(), 1);
    }

    #[test]
    fn dual_witness_pages() {
        let k = CochainBuilder::new()
            .free(0, 0, 1)
            .free(1, 0, 1)
            .free(1, 1, 1)
            .free(2, 1, 1)
            .dh(0, 0, vec![vec![1]])
            .dv(1, 1, vec![vec![1]])
            .dh(1, 1, vec![vec![1]])
            .build()
            .unwrap();
        let ss = cosimplicial_ss(&k, 4);
        assert_eq!(ss.group(2, (0, 0)).rank(), 1);
        assert_eq!(ss.group(2, (2, 1)).rank(), 1);
        assert!(ss.d(2, (0, 0)).unwrap().is_iso());
        assert!(ss.page(3).is_zero());
        ss.check_d_squared().unwrap();
        ss.check_homology_steps().unwrap();
        ss.check_convergence().unwrap();
    }
}
