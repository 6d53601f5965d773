//! The exact couple of the Tot tower `... -> Tot_n -> Tot_{n-1} -> ... -> Tot_0` of a
//! cochain bicomplex. The fibre of `Tot_n -> Tot_{n-1}` is column `n`, shifted.
//!
//! In the generic indexing `D_{a,u} = H_{a+u}(Tot_{-a})` and `E_{a,u} = H_u(K^{1-a,*})`,
//! so the page position `(s, t)` of `E_{a,u}` is `(1-a, u)`.

use std::collections::BTreeMap;

use crate::simplicial::CochainBicomplex;
use crate::zmod::{AbHom, ChainComplex, Matrix, Subquotient};

use super::couple::ExactCouple;

#[derive(Clone, Debug)]
pub struct TotCouple {
    cochains: CochainBicomplex,
    width: usize,
    tots: Vec<(ChainComplex, BTreeMap<i64, Vec<(usize, usize)>>)>,
    // keyed by (n, m): H_m(Tot_n)
    d: BTreeMap<(i64, i64), Subquotient>,
    // keyed by (s, t): H_t of column s
    e: BTreeMap<(i64, i64), Subquotient>,
}

impl TotCouple {
    pub fn new(cochains: &CochainBicomplex) -> TotCouple {
        let width = cochains.max_s();
        let tmax = cochains.max_t() as i64;
        let tots: Vec<_> = (0..=width).map(|n| cochains.tot(n)).collect();
        let mut d = BTreeMap::new();
        for (n, (c, _)) in tots.iter().enumerate() {
            for m in -(n as i64)..=tmax {
                let h = c.homology(m);
                if !h.value().is_trivial() {
                    d.insert((n as i64, m), h);
                }
            }
        }
        let mut e = BTreeMap::new();
        for s in 0..=width {
            let col = cochains.column(s);
            for t in 0..=tmax {
                let h = col.homology(t);
                if !h.value().is_trivial() {
                    e.insert((s as i64, t), h);
                }
            }
        }
        TotCouple { cochains: cochains.clone(), width, tots, d, e }
    }

    pub fn cochains(&self) -> &CochainBicomplex {
        &self.cochains
    }

    /// Last nonzero column; `Tot_n = Tot_width` beyond it.
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn tot(&self, n: usize) -> &ChainComplex {
        &self.tots[n.min(self.width)].0
    }

    /// `H_m(Tot_n)`.
    pub fn tot_homology(&self, n: usize, m: i64) -> Option<&Subquotient> {
        self.d.get(&(n.min(self.width) as i64, m))
    }

    fn block_offset(&self, n: usize, m: i64, s: usize) -> Option<usize> {
        self.tots[n].1.get(&m)?.iter().find(|(c, _)| *c == s).map(|(_, o)| *o)
    }

    fn ngens(&self, n: usize, m: i64) -> usize {
        self.tots[n].0.group(m).ngens()
    }
}

impl ExactCouple for TotCouple {
    fn d_sq(&self, a: i64, u: i64) -> Option<&Subquotient> {
        if a > 0 {
            return None;
        }
        self.tot_homology((-a) as usize, a + u)
    }

    fn e_sq(&self, a: i64, u: i64) -> Option<&Subquotient> {
        self.e.get(&(1 - a, u))
    }

    fn i(&self, a: i64, u: i64) -> AbHom {
        let src = self.d_group(a - 1, u + 1);
        let dst = self.d_group(a, u);
        if 1 - a > self.width as i64 {
            return AbHom::identity(&src);
        }
        let (Some(x), Some(y)) = (self.d_sq(a - 1, u + 1), self.d_sq(a, u)) else {
            return AbHom::zero(src, dst);
        };
        let (n, m) = ((-a) as usize, a + u);
        // Tot_n is the leading block of Tot_{n+1}
        let mut p = Matrix::zero(self.ngens(n, m), self.ngens(n + 1, m));
        p.paste(0, 0, &Matrix::identity(self.ngens(n, m)));
        x.induced_unchecked(&p, y)
    }

    fn j(&self, a: i64, u: i64) -> AbHom {
        let src = self.d_group(a, u);
        let dst = self.e_group(a, u);
        let (Some(x), Some(y)) = (self.d_sq(a, u), self.e_sq(a, u)) else {
            return AbHom::zero(src, dst);
        };
        let n = (-a) as usize;
        let delta = self.cochains.dh(n, u as usize);
        let mut m = Matrix::zero(delta.codomain().ngens(), self.ngens(n, a + u));
        if let Some(off) = self.block_offset(n, a + u, n) {
            m.paste(0, off, delta.matrix());
        }
        x.induced_unchecked(&m, y)
    }

    fn k(&self, a: i64, u: i64) -> AbHom {
        let src = self.e_group(a, u);
        let dst = self.d_group(a - 1, u);
        let (Some(x), Some(y)) = (self.e_sq(a, u), self.d_sq(a - 1, u)) else {
            return AbHom::zero(src, dst);
        };
        let s = (1 - a) as usize;
        let cs = self.cochains.group(s, u as usize).ngens();
        let mut m = Matrix::zero(self.ngens(s, a - 1 + u), cs);
        if let Some(off) = self.block_offset(s, a - 1 + u, s) {
            m.paste(off, 0, &Matrix::identity(cs));
        }
        x.induced_unchecked(&m, y)
    }

    fn e_support(&self) -> Vec<(i64, i64)> {
        self.e.keys().map(|&(s, t)| (1 - s, t)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::CochainBuilder;
    use crate::zmod::{check_exact, Int};

    fn witness() -> CochainBicomplex {
        CochainBuilder::new()
            .free(0, 0, 1)
            .free(1, 0, 1)
            .free(1, 1, 1)
            .free(2, 1, 1)
            .dh(0, 0, vec![vec![1]])
            .dv(1, 1, vec![vec![1]])
            .dh(1, 1, vec![vec![1]])
            .build()
            .unwrap()
    }

    fn torsion_witness() -> CochainBicomplex {
        // Z -(x2)-> Z in row 0 and a x3 in column 1
        CochainBuilder::new()
            .free(0, 0, 1)
            .free(1, 0, 1)
            .free(1, 1, 1)
            .free(2, 1, 1)
            .dh(0, 0, vec![vec![2]])
            .dv(1, 1, vec![vec![3]])
            .dh(1, 1, vec![vec![1]])
            .build()
            .unwrap()
    }

    #[test]
    fn couple_is_exact() {
        for k in [witness(), torsion_witness()] {
            let c = TotCouple::new(&k);
            for a in -4..=2i64 {
                for u in -1..=3 {
                    let seq = [c.i(a, u), c.j(a, u), c.k(a, u), c.i(a, u - 1)];
                    let v = check_exact(&seq).unwrap();
                    assert!(v.exact, "a={a} u={u} fails at {:?}", v.first_failure);
                }
            }
        }
    }

    #[test]
    fn witness_d2_is_unimodular() {
        let c = TotCouple::new(&witness());
        // E at (s, t) = (0, 0) sits at a = 1
        assert_eq!(c.e_group(1, 0).rank(), 1);
        assert_eq!(c.z_lattice(1, 0, 2).rank(), 1);
        let y = c.dr_rep(1, 0, 2, &[Int::ONE]).unwrap();
        assert_eq!(y.len(), 1);
        assert!(y[0].is_unit());
    }
}
