//! Windows of a chain complex: the good truncation `τ_{[k, n+k]}`, whose homology is
//! `H_i` for `k <= i <= n+k` and zero elsewhere.

use std::collections::BTreeMap;

use crate::zmod::{AbHom, AlgebraError, ChainComplex, ChainMap, Lattice, Subquotient};

/// The `k`-th window of order `n`. `parts[t]` presents the window group in degree
/// `t` as a subquotient of the source group: `Z_k` at the bottom, `C_{n+k} / B_{n+k}`
/// at the top (`H_k` when `n = 0`), the whole group in between.
#[derive(Clone, Debug)]
pub struct StemWindow {
    pub k: usize,
    pub n: usize,
    pub space: ChainComplex,
    pub parts: BTreeMap<i64, Subquotient>,
}

impl StemWindow {
    pub fn part(&self, t: i64) -> Option<&Subquotient> {
        self.parts.get(&t)
    }

    /// The map of windows induced in degree `t` by `f : C_t -> C'_t`.
    pub fn induced(&self, f: &AbHom, target: &StemWindow, t: i64) -> AbHom {
        match (self.part(t), target.part(t)) {
            (Some(a), Some(b)) => a.induced_unchecked(f.matrix(), b),
            _ => AbHom::zero(self.space.group(t), target.space.group(t)),
        }
    }
}

/// `τ_{[lo, hi]} c` with its presentation by subquotients of `c`.
pub fn truncate_range(c: &ChainComplex, lo: i64, hi: i64) -> (ChainComplex, BTreeMap<i64, Subquotient>) {
    if hi < lo {
        return (ChainComplex::zero(), BTreeMap::new());
    }
    let mut parts = BTreeMap::new();
    for t in lo..=hi {
        let g = c.group(t);
        let n = g.ngens();
        let sub = if t == lo { c.cycles(t) } else { Lattice::full(n) };
        let den = if t == hi { c.boundaries(t) } else { Lattice::zero(n) };
        parts.insert(t, Subquotient::new(g, sub, den).expect("boundaries are cycles"));
    }
    let groups = (lo..=hi).map(|t| parts[&t].value().clone()).collect();
    let diffs = (lo + 1..=hi).map(|t| parts[&t].induced_unchecked(c.d(t).matrix(), &parts[&(t - 1)])).collect();
    let space = ChainComplex::new(lo, groups, diffs).expect("truncation of a complex");
    (space, parts)
}

pub fn truncate_window(c: &ChainComplex, n: usize, k: usize) -> StemWindow {
    let (space, parts) = truncate_range(c, k as i64, (n + k) as i64);
    StemWindow { k, n, space, parts }
}

/// The map between two truncations of the same complex induced by the identity.
pub fn comparison(a: &StemWindow, b: &StemWindow) -> Result<ChainMap, AlgebraError> {
    let lo = a.space.lo().min(b.space.lo());
    let hi = a.space.hi().max(b.space.hi());
    let parts = (lo..hi)
        .map(|t| match (a.part(t), b.part(t)) {
            (Some(x), Some(y)) => x.induced_unchecked(&crate::zmod::Matrix::identity(x.ambient().ngens()), y),
            _ => AbHom::zero(a.space.group(t), b.space.group(t)),
        })
        .collect();
    ChainMap::new(a.space.clone(), b.space.clone(), lo, parts)
}

/// `q = r ∘ p` for `P^{n+k+1}X⟨k+1⟩ -p-> P^{n+k}X⟨k+1⟩ -r-> P^{n+k}X⟨k⟩`.
#[derive(Clone, Debug)]
pub struct WindowTriangle {
    pub upper: StemWindow,
    pub middle: StemWindow,
    pub lower: StemWindow,
    pub p: ChainMap,
    pub q: ChainMap,
    pub r: ChainMap,
}

impl WindowTriangle {
    /// `r ∘ p = q` degreewise, as matrices.
    pub fn commutes(&self) -> bool {
        let (lo, hi) = (self.upper.space.lo().min(self.lower.space.lo()), self.upper.space.hi().max(self.lower.space.hi()));
        (lo..hi).all(|t| self.p.at(t).then(&self.r.at(t)).map_or(false, |rp| rp == self.q.at(t)))
    }
}

pub fn window_triangle(c: &ChainComplex, n: usize, k: usize) -> WindowTriangle {
    let upper = truncate_window(c, n, k + 1);
    let (space, parts) = truncate_range(c, (k + 1) as i64, (n + k) as i64);
    let middle = StemWindow { k: k + 1, n: n.saturating_sub(1), space, parts };
    let lower = truncate_window(c, n, k);
    let p = comparison(&upper, &middle).expect("quotient of a truncation");
    let r = comparison(&middle, &lower).expect("inclusion of a cover");
    let q = comparison(&upper, &lower).expect("window map");
    WindowTriangle { upper, middle, lower, p, q, r }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zmod::{FgAbGroup, Int};

    /// Homology Z, Z/2, Z in degrees 0, 1, 2, with a boundary in degree 1.
    fn sample() -> ChainComplex {
        let g = FgAbGroup::free;
        let d2 = AbHom::from_rows(g(2), g(1), &[vec![2, 0]]).unwrap();
        let d1 = AbHom::zero(g(1), g(1));
        let d3 = AbHom::zero(g(0), g(2));
        ChainComplex::new(0, vec![g(1), g(1), g(2), g(0)], vec![d1, d2, d3]).unwrap()
    }

    fn invariants(c: &ChainComplex, t: i64) -> (usize, Vec<Int>) {
        let h = c.homology(t);
        (h.value().rank(), h.value().torsion().to_vec())
    }

    #[test]
    fn truncation_keeps_the_range() {
        let c = sample();
        let w = truncate_window(&c, 0, 1);
        assert_eq!(invariants(&w.space, 1), (0, vec![Int::from(2)]));
        for t in [0, 2, 3] {
            assert!(w.space.homology(t).value().is_trivial());
        }
        let w = truncate_window(&c, 1, 0);
        assert_eq!(invariants(&w.space, 0), (1, vec![]));
        assert_eq!(invariants(&w.space, 1), (0, vec![Int::from(2)]));
        assert!(w.space.homology(2).value().is_trivial());
        let w = truncate_window(&c, 5, 1);
        for t in 1..=3 {
            assert_eq!(invariants(&w.space, t), invariants(&c, t));
        }
        assert!(w.space.homology(0).value().is_trivial());
    }

    #[test]
    fn triangles_commute() {
        let c = sample();
        for n in 0..=2 {
            for k in 0..=2 {
                let tr = window_triangle(&c, n, k);
                assert!(tr.commutes(), "n={n} k={k}");
                for i in (k + 1)..(n + k + 1) {
                    assert!(tr.q.on_homology(i as i64).is_iso(), "n={n} k={k} i={i}");
                }
            }
        }
        let z = window_triangle(&ChainComplex::zero(), 1, 0);
        assert!(z.commutes() && z.q.at(0).is_zero());
    }

    #[test]
    fn single_degree_triangle() {
        // homology only in degree k + 1 = 2
        let c = ChainComplex::concentrated(FgAbGroup::free(1), 2);
        let tr = window_triangle(&c, 1, 1);
        assert!(tr.p.on_homology(2).is_iso());
        assert!(tr.r.on_homology(2).is_injective());
    }
}
