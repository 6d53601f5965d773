//! Exact couples with the index pattern
//! `i : D_{a-1,u+1} -> D_{a,u}`, `j : D_{a,u} -> E_{a,u}`, `k : E_{a,u} -> D_{a-1,u}`,
//! so that `d^r : E_{a,u} -> E_{a-r,u+r-1}`.

use crate::zmod::{AbHom, FgAbGroup, Int, Lattice, Subquotient};

pub trait ExactCouple {
    /// `D_{a,u}` as a subquotient of some chain group, or `None` when it is zero.
    fn d_sq(&self, a: i64, u: i64) -> Option<&Subquotient>;
    /// `E_{a,u}` as a subquotient of some chain group, or `None` when it is zero.
    fn e_sq(&self, a: i64, u: i64) -> Option<&Subquotient>;
    fn i(&self, a: i64, u: i64) -> AbHom;
    fn j(&self, a: i64, u: i64) -> AbHom;
    fn k(&self, a: i64, u: i64) -> AbHom;
    /// Bidegrees where `E_{a,u}` can be nonzero.
    fn e_support(&self) -> Vec<(i64, i64)>;

    fn d_group(&self, a: i64, u: i64) -> FgAbGroup {
        self.d_sq(a, u).map(|s| s.value().clone()).unwrap_or_else(FgAbGroup::zero)
    }

    fn e_group(&self, a: i64, u: i64) -> FgAbGroup {
        self.e_sq(a, u).map(|s| s.value().clone()).unwrap_or_else(FgAbGroup::zero)
    }

    /// `i^p : D_{a,u} -> D_{a+p,u-p}`.
    fn i_power(&self, a: i64, u: i64, p: usize) -> AbHom {
        let mut f = AbHom::identity(&self.d_group(a, u));
        for q in 1..=p as i64 {
            f = f.then(&self.i(a + q, u - q)).expect("composable");
        }
        f
    }

    fn d1(&self, a: i64, u: i64) -> AbHom {
        self.k(a, u).then(&self.j(a - 1, u)).expect("composable")
    }

    /// `Z^r = k^{-1}(Im i^{r-1})` in `E_{a,u}` coordinates, relations included.
    fn z_lattice(&self, a: i64, u: i64, r: usize) -> Lattice {
        let e = self.e_group(a, u);
        if r <= 1 {
            return Lattice::full(e.ngens());
        }
        let img = self.i_power(a - r as i64, u + r as i64 - 1, r - 1).image_lattice();
        img.preimage(self.k(a, u).matrix()).with_generators(&e.relation_vectors())
    }

    /// `B^r = j(Ker i^{r-1})` in `E_{a,u}` coordinates, relations included.
    fn b_lattice(&self, a: i64, u: i64, r: usize) -> Lattice {
        let e = self.e_group(a, u);
        let ker = if r <= 1 { self.d_group(a, u).relations() } else { self.i_power(a, u, r - 1).kernel_lattice() };
        ker.image(self.j(a, u).matrix()).with_generators(&e.relation_vectors())
    }

    /// A representative of `d^r x` in `E_{a-r,u+r-1}`, for `x` in `Z^r_{a,u}`.
    fn dr_rep(&self, a: i64, u: i64, r: usize, x: &[Int]) -> Option<Vec<Int>> {
        let kx = self.k(a, u).apply(x);
        let (m, w) = (a - r as i64, u + r as i64 - 1);
        let y = self.i_power(m, w, r - 1).preimage_of(&kx)?;
        Some(self.j(m, w).apply(&y))
    }
}
