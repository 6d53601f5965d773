//! The exact couple of the tower `... -> Ẑ_n -> Ẑ_{n-1} -> ... -> Ẑ_0 = X_0`.
//!
//! `Ẑ_n` models the homotopy fibre of `C_n -> Ẑ_{n-1}`, `a -> d_0 a`: in degree `t` it
//! is `⊕_{m<=n} C_{m, t+n-m}`, the filtration piece `F_n Tot` shifted down by `n`, with
//! `D = d_0 + (-1)^m ∂` on column `m`. It has groups in degrees `t >= -n`; on Reedy
//! fibrant inputs its homology in degrees `t >= 0` is that of the strict `Z_n`.

use std::collections::BTreeMap;

use crate::simplicial::Bicomplex;
use crate::zmod::{AbHom, ChainComplex, FgAbGroup, Int, Matrix, Subquotient};

use super::couple::ExactCouple;

/// `D_{n,t} = π_t Ẑ_n`, `E_{n,t} = π_t C_n`, with `i` induced by `F_{n-1} ⊂ F_n`,
/// `j` the projection to column `n` and `k` induced by `d_0`.
#[derive(Clone, Debug)]
pub struct SpiralCouple {
    chains: Bicomplex,
    top: usize,
    tmax: usize,
    fibres: Vec<ChainComplex>,
    // per n and degree t: (column m, offset) of each block
    layouts: Vec<BTreeMap<i64, Vec<(usize, usize)>>>,
    e: BTreeMap<(i64, i64), Subquotient>,
    d: BTreeMap<(i64, i64), Subquotient>,
}

impl SpiralCouple {
    /// Builds the couple from the normalized chains `C_{n,t}` with `d^h = d_0`.
    pub fn new(chains: &Bicomplex) -> SpiralCouple {
        let top = chains.max_s();
        let tmax = chains.max_t();
        let mut fibres = Vec::new();
        let mut layouts = Vec::new();
        for n in 0..=top {
            let (f, l) = fibre(chains, n, tmax);
            fibres.push(f);
            layouts.push(l);
        }
        let mut e = BTreeMap::new();
        for n in 0..=top {
            let col = chains.column(n);
            for t in 0..=tmax as i64 {
                let h = col.homology(t);
                if !h.value().is_trivial() {
                    e.insert((n as i64, t), h);
                }
            }
        }
        let mut d = BTreeMap::new();
        for (n, f) in fibres.iter().enumerate() {
            for t in -(n as i64)..=tmax as i64 {
                let h = f.homology(t);
                if !h.value().is_trivial() {
                    d.insert((n as i64, t), h);
                }
            }
        }
        SpiralCouple { chains: chains.clone(), top, tmax, fibres, layouts, e, d }
    }

    pub fn chains(&self) -> &Bicomplex {
        &self.chains
    }

    /// Last column with nonzero chains; above it `i` is an isomorphism.
    pub fn top(&self) -> usize {
        self.top
    }

    pub fn tmax(&self) -> usize {
        self.tmax
    }

    /// Above `top` the tower is constant up to a shift: `D_{n,t} = D_{top, t+n-top}`.
    fn canon(&self, n: i64, t: i64) -> (i64, i64) {
        let top = self.top as i64;
        if n > top {
            (top, t + n - top)
        } else {
            (n, t)
        }
    }

    /// `Ẑ_n` as a chain complex starting in degree `-n`.
    pub fn fibre(&self, n: usize) -> &ChainComplex {
        &self.fibres[n.min(self.top)]
    }

    /// Offset of the column-`m` block inside `Ẑ_{n,t}`.
    pub fn block_offset(&self, n: usize, t: i64, m: usize) -> Option<usize> {
        self.layouts[n].get(&t)?.iter().find(|(c, _)| *c == m).map(|(_, o)| *o)
    }

    fn fibre_ngens(&self, n: i64, t: i64) -> usize {
        self.fibres[n as usize].group(t).ngens()
    }
}

impl ExactCouple for SpiralCouple {
    fn d_sq(&self, a: i64, u: i64) -> Option<&Subquotient> {
        if a < 0 {
            return None;
        }
        self.d.get(&self.canon(a, u))
    }

    fn e_sq(&self, a: i64, u: i64) -> Option<&Subquotient> {
        self.e.get(&(a, u))
    }

    fn i(&self, a: i64, u: i64) -> AbHom {
        let src = self.d_group(a - 1, u + 1);
        let dst = self.d_group(a, u);
        if a > self.top as i64 {
            return AbHom::identity(&src);
        }
        let (Some(x), Some(y)) = (self.d_sq(a - 1, u + 1), self.d_sq(a, u)) else {
            return AbHom::zero(src, dst);
        };
        let fa = self.fibre_ngens(a - 1, u + 1);
        let fb = self.fibre_ngens(a, u);
        // F^{(n-1)}_{t+1} is the tail of F^{(n)}_t
        let mut m = Matrix::zero(fb, fa);
        m.paste(fb - fa, 0, &Matrix::identity(fa));
        x.induced_unchecked(&m, y)
    }

    fn j(&self, a: i64, u: i64) -> AbHom {
        let src = self.d_group(a, u);
        let dst = self.e_group(a, u);
        let (Some(x), Some(y)) = (self.d_sq(a, u), self.e_sq(a, u)) else {
            return AbHom::zero(src, dst);
        };
        let n = a as usize;
        let cn = self.chains.group(n, u as usize).ngens();
        let mut m = Matrix::zero(cn, self.fibre_ngens(a, u));
        if let Some(off) = self.block_offset(n, u, n) {
            m.paste(0, off, &Matrix::identity(cn));
        }
        x.induced_unchecked(&m, y)
    }

    fn k(&self, a: i64, u: i64) -> AbHom {
        let src = self.e_group(a, u);
        let dst = self.d_group(a - 1, u);
        let (Some(x), Some(y)) = (self.e_sq(a, u), self.d_sq(a - 1, u)) else {
            return AbHom::zero(src, dst);
        };
        let n = a as usize;
        let d0 = self.chains.dh(n, u as usize);
        let mut m = Matrix::zero(self.fibre_ngens(a - 1, u), d0.domain().ngens());
        if let Some(off) = self.block_offset(n - 1, u, n - 1) {
            m.paste(off, 0, d0.matrix());
        }
        x.induced_unchecked(&m, y)
    }

    fn e_support(&self) -> Vec<(i64, i64)> {
        self.e.keys().copied().collect()
    }
}

fn fibre(chains: &Bicomplex, n: usize, tmax: usize) -> (ChainComplex, BTreeMap<i64, Vec<(usize, usize)>>) {
    let lo = -(n as i64);
    let mut layouts = BTreeMap::new();
    let mut groups = Vec::new();
    for t in lo..=tmax as i64 {
        let mut blocks = Vec::new();
        let mut parts = Vec::new();
        let mut off = 0;
        for m in (0..=n).rev() {
            let tt = t + (n - m) as i64;
            if tt < 0 || tt > tmax as i64 {
                continue;
            }
            if let Some(g) = chains.group_ref(m, tt as usize) {
                blocks.push((m, off));
                off += g.ngens();
                parts.push(g);
            }
        }
        groups.push(FgAbGroup::direct_sum_all(parts));
        layouts.insert(t, blocks);
    }
    let find = |layouts: &BTreeMap<i64, Vec<(usize, usize)>>, t: i64, m: usize| {
        layouts[&t].iter().find(|(c, _)| *c == m).map(|(_, o)| *o)
    };
    let mut diffs = Vec::new();
    for t in lo + 1..=tmax as i64 {
        let src = &groups[(t - lo) as usize];
        let dst = &groups[(t - 1 - lo) as usize];
        let mut mat = Matrix::zero(dst.ngens(), src.ngens());
        for &(m, off) in &layouts[&t] {
            let tt = (t + (n - m) as i64) as usize;
            if tt >= 1 {
                if let Some(o2) = find(&layouts, t - 1, m) {
                    let sign = if m % 2 == 0 { Int::ONE } else { Int::from(-1) };
                    mat.paste(o2, off, &chains.dv(m, tt).matrix().scale(&sign));
                }
            }
            if m >= 1 {
                if let Some(o2) = find(&layouts, t - 1, m - 1) {
                    mat.paste(o2, off, chains.dh(m, tt).matrix());
                }
            }
        }
        diffs.push(AbHom::new(src.clone(), dst.clone(), mat).expect("fibre differential"));
    }
    (ChainComplex::new(lo, groups, diffs).expect("fibre is a complex"), layouts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::BicomplexBuilder;

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
    fn couple_is_exact() {
        let c = SpiralCouple::new(&witness());
        for n in 1..=4i64 {
            for t in -n..=2 {
                // D_{n-1,t+1} -i-> D_{n,t} -j-> E_{n,t} -k-> D_{n-1,t} -i-> D_{n,t-1}
                let seq = [c.i(n, t), c.j(n, t), c.k(n, t), c.i(n, t - 1)];
                let v = crate::zmod::check_exact(&seq).unwrap();
                assert!(v.exact, "n={n} t={t} fails at {:?}", v.first_failure);
            }
        }
    }

    #[test]
    fn cokernel_of_d0_appears_in_negative_degree() {
        // C_1 = Z -(x2)-> C_0 = Z in row 0
        let b = BicomplexBuilder::new().free(1, 0, 1).free(0, 0, 1).dh(1, 0, vec![vec![2]]).build().unwrap();
        let c = SpiralCouple::new(&b);
        assert_eq!(c.d_group(1, -1).torsion(), &[Int::from(2)]);
        assert!(c.d_group(1, 0).is_trivial());
    }

    #[test]
    fn witness_d2_is_unimodular() {
        let c = SpiralCouple::new(&witness());
        assert_eq!(c.z_lattice(2, 0, 2).rank(), 1);
        let y = c.dr_rep(2, 0, 2, &[Int::ONE]).unwrap();
        assert_eq!(y.len(), 1);
        assert!(y[0].is_unit());
    }
}
