//! Double complexes with a cochain direction: the normalized model of a cosimplicial
//! simplicial abelian group.

use std::collections::BTreeMap;

use crate::zmod::{AbHom, AlgebraError, ChainComplex, FgAbGroup, Int, Matrix};

use super::bicomplex::{Bicomplex, Bideg};

/// Groups `K^{s,t}` with `δ : K^{s,t} -> K^{s+1,t}` (cosimplicial direction) and
/// `∂ : K^{s,t} -> K^{s,t-1}` (simplicial direction), commuting.
#[derive(Clone, Debug)]
pub struct CochainBicomplex {
    groups: BTreeMap<Bideg, FgAbGroup>,
    dh: BTreeMap<Bideg, AbHom>,
    dv: BTreeMap<Bideg, AbHom>,
}

impl CochainBicomplex {
    pub fn new(
        groups: BTreeMap<Bideg, FgAbGroup>,
        dh: BTreeMap<Bideg, AbHom>,
        dv: BTreeMap<Bideg, AbHom>,
    ) -> Result<CochainBicomplex, AlgebraError> {
        let groups: BTreeMap<Bideg, FgAbGroup> = groups.into_iter().filter(|(_, g)| !g.is_trivial()).collect();
        let c = CochainBicomplex { groups, dh, dv };
        for (&(s, t), f) in &c.dh {
            if f.domain() != &c.group(s, t) || f.codomain() != &c.group(s + 1, t) {
                return Err(AlgebraError::Invariant(format!("horizontal map at ({s},{t}) has the wrong shape")));
            }
        }
        // squares and d∘d are checked on the mirror image
        c.reflect()?;
        Ok(c)
    }

    /// Reverses the columns of a chain bicomplex, `s -> max_s - s`.
    pub fn from_reflection(b: &Bicomplex) -> CochainBicomplex {
        let w = b.max_s();
        let groups = b.support().map(|(&(s, t), g)| ((w - s, t), g.clone())).collect();
        let dh = b.horizontal_maps().iter().map(|(&(s, t), f)| ((w - s, t), f.clone())).collect();
        let dv = b.vertical_maps().iter().map(|(&(s, t), f)| ((w - s, t), f.clone())).collect();
        CochainBicomplex { groups, dh, dv }
    }

    /// The chain bicomplex with columns reversed, `s -> max_s - s`.
    pub fn reflect(&self) -> Result<Bicomplex, AlgebraError> {
        let w = self.max_s();
        let groups = self.groups.iter().map(|(&(s, t), g)| ((w - s, t), g.clone())).collect();
        let dh = self.dh.iter().filter(|((s, _), _)| *s < w).map(|(&(s, t), f)| ((w - s, t), f.clone())).collect();
        let dv = self.dv.iter().map(|(&(s, t), f)| ((w - s, t), f.clone())).collect();
        Bicomplex::new(groups, dh, dv)
    }

    pub fn group(&self, s: usize, t: usize) -> FgAbGroup {
        self.groups.get(&(s, t)).cloned().unwrap_or_else(FgAbGroup::zero)
    }

    pub fn group_ref(&self, s: usize, t: usize) -> Option<&FgAbGroup> {
        self.groups.get(&(s, t))
    }

    /// `δ` out of `(s, t)`.
    pub fn dh(&self, s: usize, t: usize) -> AbHom {
        match self.dh.get(&(s, t)) {
            Some(f) => f.clone(),
            None => AbHom::zero(self.group(s, t), self.group(s + 1, t)),
        }
    }

    /// `∂` out of `(s, t)`; zero for `t == 0`.
    pub fn dv(&self, s: usize, t: usize) -> AbHom {
        match self.dv.get(&(s, t)) {
            Some(f) => f.clone(),
            None => {
                let cod = if t == 0 { FgAbGroup::zero() } else { self.group(s, t - 1) };
                AbHom::zero(self.group(s, t), cod)
            }
        }
    }

    pub fn support(&self) -> impl Iterator<Item = (&Bideg, &FgAbGroup)> {
        self.groups.iter()
    }

    pub fn horizontal_maps(&self) -> &BTreeMap<Bideg, AbHom> {
        &self.dh
    }

    pub fn vertical_maps(&self) -> &BTreeMap<Bideg, AbHom> {
        &self.dv
    }

    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn max_s(&self) -> usize {
        self.groups.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn max_t(&self) -> usize {
        self.groups.keys().map(|k| k.1).max().unwrap_or(0)
    }

    /// Column `s` as a chain complex in degrees `0..=max_t`.
    pub fn column(&self, s: usize) -> ChainComplex {
        let tm = self.max_t();
        let groups: Vec<FgAbGroup> = (0..=tm).map(|t| self.group(s, t)).collect();
        let diffs: Vec<AbHom> = (1..=tm).map(|t| self.dv(s, t)).collect();
        ChainComplex::new(0, groups, diffs).expect("columns are complexes")
    }

    /// `Tot_n`: columns `0..=n`, total degree `t - s`, `D = δ + (-1)^s ∂`. Returns the
    /// complex (lowest degree `-n`) and per degree the `(s, offset)` of each block.
    pub fn tot(&self, n: usize) -> (ChainComplex, BTreeMap<i64, Vec<(usize, usize)>>) {
        let tm = self.max_t() as i64;
        let lo = -(n as i64);
        let mut layouts = BTreeMap::new();
        let mut groups = Vec::new();
        for m in lo..=tm {
            let mut blocks = Vec::new();
            let mut parts = Vec::new();
            let mut off = 0;
            for s in 0..=n {
                let t = m + s as i64;
                if t < 0 {
                    continue;
                }
                if let Some(g) = self.groups.get(&(s, t as usize)) {
                    blocks.push((s, off));
                    off += g.ngens();
                    parts.push(g);
                }
            }
            groups.push(FgAbGroup::direct_sum_all(parts));
            layouts.insert(m, blocks);
        }
        let find = |l: &BTreeMap<i64, Vec<(usize, usize)>>, m: i64, s: usize| {
            l[&m].iter().find(|(c, _)| *c == s).map(|(_, o)| *o)
        };
        let mut diffs = Vec::new();
        for m in lo + 1..=tm {
            let src = &groups[(m - lo) as usize];
            let dst = &groups[(m - 1 - lo) as usize];
            let mut mat = Matrix::zero(dst.ngens(), src.ngens());
            for &(s, off) in &layouts[&m] {
                let t = (m + s as i64) as usize;
                if s < n {
                    if let Some(o2) = find(&layouts, m - 1, s + 1) {
                        mat.paste(o2, off, self.dh(s, t).matrix());
                    }
                }
                if t >= 1 {
                    if let Some(o2) = find(&layouts, m - 1, s) {
                        let sign = if s % 2 == 0 { Int::ONE } else { Int::from(-1) };
                        mat.paste(o2, off, &self.dv(s, t).matrix().scale(&sign));
                    }
                }
            }
            diffs.push(AbHom::new(src.clone(), dst.clone(), mat).expect("Tot differential"));
        }
        (ChainComplex::new(lo, groups, diffs).expect("Tot is a complex"), layouts)
    }
}

/// Builder taking small integer matrices.
#[derive(Default)]
pub struct CochainBuilder {
    groups: BTreeMap<Bideg, FgAbGroup>,
    dh: Vec<(Bideg, Vec<Vec<i64>>)>,
    dv: Vec<(Bideg, Vec<Vec<i64>>)>,
}

impl CochainBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn group(mut self, s: usize, t: usize, g: FgAbGroup) -> Self {
        self.groups.insert((s, t), g);
        self
    }

    pub fn free(self, s: usize, t: usize, rank: usize) -> Self {
        self.group(s, t, FgAbGroup::free(rank))
    }

    /// `δ : (s, t) -> (s+1, t)`.
    pub fn dh(mut self, s: usize, t: usize, rows: Vec<Vec<i64>>) -> Self {
        self.dh.push(((s, t), rows));
        self
    }

    /// `∂ : (s, t) -> (s, t-1)`.
    pub fn dv(mut self, s: usize, t: usize, rows: Vec<Vec<i64>>) -> Self {
        self.dv.push(((s, t), rows));
        self
    }

    pub fn build(self) -> Result<CochainBicomplex, AlgebraError> {
        let get = |s: usize, t: usize| self.groups.get(&(s, t)).cloned().unwrap_or_else(FgAbGroup::zero);
        let mut dh = BTreeMap::new();
        for ((s, t), rows) in &self.dh {
            dh.insert((*s, *t), AbHom::from_rows(get(*s, *t), get(*s + 1, *t), rows)?);
        }
        let mut dv = BTreeMap::new();
        for ((s, t), rows) in &self.dv {
            if *t == 0 {
                return Err(AlgebraError::Invariant("vertical map out of row 0".into()));
            }
            dv.insert((*s, *t), AbHom::from_rows(get(*s, *t), get(*s, *t - 1), rows)?);
        }
        CochainBicomplex::new(self.groups, dh, dv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tot_squares_to_zero_and_noncommuting_rejected() {
        let c = CochainBuilder::new()
            .free(0, 0, 1)
            .free(1, 0, 1)
            .free(1, 1, 1)
            .free(2, 1, 1)
            .dh(0, 0, vec![vec![1]])
            .dv(1, 1, vec![vec![1]])
            .dh(1, 1, vec![vec![1]])
            .build()
            .unwrap();
        let (tot, _) = c.tot(2);
        for m in -2..=1 {
            assert!(tot.homology(m).value().is_trivial(), "degree {m}");
        }
        let bad = CochainBuilder::new()
            .free(0, 1, 1)
            .free(1, 1, 1)
            .free(0, 0, 1)
            .free(1, 0, 1)
            .dh(0, 1, vec![vec![1]])
            .dh(0, 0, vec![vec![1]])
            .dv(0, 1, vec![vec![1]])
            .dv(1, 1, vec![vec![2]])
            .build();
        assert!(bad.is_err());
    }
}
