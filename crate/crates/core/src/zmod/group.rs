use std::fmt;

use serde::{Deserialize, Serialize};

use super::int::Int;
use super::lattice::Lattice;
use super::matrix::Matrix;
use super::snf::smith_normal_form;
use super::subquotient::Subquotient;

/// Isomorphism type `Z^rank ⊕ Z/d1 ⊕ ... ⊕ Z/dk` with `d1 | d2 | ...`, all `di >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub struct Invariants {
    pub rank: usize,
    pub torsion: Vec<Int>,
}

impl Invariants {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn free(rank: usize) -> Invariants {
        Invariants { rank, torsion: Vec::new() }
    }

    pub fn from_orders(orders: &[Int]) -> Invariants {
        let rank = orders.iter().filter(|o| o.is_zero()).count();
        let tors: Vec<Int> = orders.iter().filter(|o| !o.is_zero()).cloned().collect();
        let torsion = if tors.iter().all(|a| tors.iter().all(|b| a.divides(b) || b.divides(a))) {
            let mut t: Vec<Int> = tors.into_iter().filter(|o| !o.is_one()).collect();
            t.sort();
            t
        } else {
            let s = smith_normal_form(&Matrix::diagonal(&tors));
            s.diag.into_iter().filter(|d| !d.is_one()).collect()
        };
        Invariants { rank, torsion }
    }

    /// Number of elements of the torsion part.
    pub fn torsion_order(&self) -> Int {
        self.torsion.iter().fold(Int::ONE, |acc, d| &acc * d)
    }
}

impl fmt::Display for Invariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join("⊕"))
    }
}

/// A finitely generated abelian group presented on generators `e_i` with the
/// single relations `orders[i] * e_i = 0`. An order of 0 means `e_i` is free.
/// General relation matrices go through [`FgAbGroup::from_relations`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FgAbGroup {
    orders: Vec<Int>,
    inv: Invariants,
}

impl FgAbGroup {
    pub fn new(orders: Vec<Int>) -> FgAbGroup {
        assert!(
            orders.iter().all(|o| o.is_zero() || (!o.is_negative() && !o.is_one())),
            "generator orders must be 0 or at least 2"
        );
        let inv = Invariants::from_orders(&orders);
        FgAbGroup { orders, inv }
    }

    pub fn zero() -> FgAbGroup {
        FgAbGroup::new(Vec::new())
    }

    pub fn free(n: usize) -> FgAbGroup {
        FgAbGroup::new(vec![Int::ZERO; n])
    }

    pub fn cyclic(order: i64) -> FgAbGroup {
        FgAbGroup::new(vec![Int::from(order)])
    }

    /// `free` free generators followed by torsion generators of the given orders.
    pub fn from_parts(free: usize, torsion: &[i64]) -> FgAbGroup {
        let mut o = vec![Int::ZERO; free];
        o.extend(torsion.iter().map(|&t| Int::from(t)));
        FgAbGroup::new(o)
    }

    /// The group `Z^cols / rowspace(rel)`, returned with the subquotient that
    /// identifies its generators with classes in `Z^cols`.
    pub fn from_relations(rel: &Matrix) -> Subquotient {
        let n = rel.cols();
        let free = FgAbGroup::free(n);
        let den = rel.to_rows();
        Subquotient::new(free, Lattice::full(n), Lattice::from_generators(n, den))
            .expect("relations lie in the free group")
    }

    pub fn ngens(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> &[Int] {
        &self.orders
    }

    pub fn invariants(&self) -> &Invariants {
        &self.inv
    }

    pub fn rank(&self) -> usize {
        self.inv.rank
    }

    pub fn torsion(&self) -> &[Int] {
        &self.inv.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn is_zero_group(&self) -> bool {
        self.inv.is_zero()
    }

    pub fn iso_to(&self, other: &FgAbGroup) -> bool {
        self.inv == other.inv
    }

    /// Relation lattice in `Z^ngens`.
    pub fn relations(&self) -> Lattice {
        let n = self.ngens();
        let gens = self
            .orders
            .iter()
            .enumerate()
            .filter(|(_, o)| !o.is_zero())
            .map(|(i, o)| {
                let mut e = vec![Int::ZERO; n];
                e[i] = o.clone();
                e
            })
            .collect();
        Lattice::from_generators(n, gens)
    }

    pub fn relation_vectors(&self) -> Vec<Vec<Int>> {
        self.relations().basis().to_vec()
    }

    pub fn reduce(&self, x: &[Int]) -> Vec<Int> {
        assert_eq!(x.len(), self.ngens());
        x.iter().zip(&self.orders).map(|(a, o)| a.rem_euclid(o)).collect()
    }

    pub fn is_zero_elem(&self, x: &[Int]) -> bool {
        x.iter().zip(&self.orders).all(|(a, o)| if o.is_zero() { a.is_zero() } else { o.divides(a) })
    }

    pub fn elem_eq(&self, a: &[Int], b: &[Int]) -> bool {
        let d: Vec<Int> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.is_zero_elem(&d)
    }

    pub fn zero_elem(&self) -> Vec<Int> {
        vec![Int::ZERO; self.ngens()]
    }

    pub fn basis_elem(&self, i: usize) -> Vec<Int> {
        let mut e = self.zero_elem();
        e[i] = Int::ONE;
        e
    }

    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        let mut o = self.orders.clone();
        o.extend(other.orders.iter().cloned());
        FgAbGroup::new(o)
    }

    pub fn direct_sum_all<'a>(groups: impl IntoIterator<Item = &'a FgAbGroup>) -> FgAbGroup {
        let mut o = Vec::new();
        for g in groups {
            o.extend(g.orders.iter().cloned());
        }
        FgAbGroup::new(o)
    }
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgAbGroup({} on {:?})", self.inv, self.orders)
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariants_merge_coprime_torsion() {
        let g = FgAbGroup::from_parts(1, &[2, 3]);
        assert_eq!(g.rank(), 1);
        assert_eq!(g.torsion(), &[Int::from(6)]);
        assert_eq!(g.to_string(), "Z⊕Z/6");
    }

    #[test]
    fn relations_presentation() {
        // Z^2 / <(2, 4), (0, 6)>  ≅  Z/2 ⊕ Z/6
        let sq = FgAbGroup::from_relations(&Matrix::from_rows(&[vec![2, 4], vec![0, 6]]));
        assert_eq!(sq.value().torsion(), &[Int::from(2), Int::from(6)]);
        assert_eq!(sq.value().rank(), 0);
    }

    #[test]
    fn element_equality_mod_orders() {
        let g = FgAbGroup::from_parts(1, &[4]);
        assert!(g.elem_eq(&[Int::from(3), Int::from(5)], &[Int::from(3), Int::from(1)]));
        assert!(!g.elem_eq(&[Int::from(3), Int::from(5)], &[Int::from(2), Int::from(1)]));
    }
}
