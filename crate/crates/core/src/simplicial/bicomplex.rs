//! First-quadrant double complexes with commuting squares.

use std::collections::BTreeMap;

use crate::zmod::{AbHom, AlgebraError, ChainComplex, FgAbGroup, Int, Matrix};

pub type Bideg = (usize, usize);

/// Groups `K_{s,t}`, horizontal `d^h : K_{s,t} -> K_{s-1,t}` and vertical
/// `d^v : K_{s,t} -> K_{s,t-1}`, with `d^h d^v = d^v d^h`. Maps are keyed by
/// source bidegree; absent entries are zero.
#[derive(Clone, Debug)]
pub struct Bicomplex {
    groups: BTreeMap<Bideg, FgAbGroup>,
    dh: BTreeMap<Bideg, AbHom>,
    dv: BTreeMap<Bideg, AbHom>,
}

impl Bicomplex {
    pub fn new(
        groups: BTreeMap<Bideg, FgAbGroup>,
        dh: BTreeMap<Bideg, AbHom>,
        dv: BTreeMap<Bideg, AbHom>,
    ) -> Result<Bicomplex, AlgebraError> {
        let groups: BTreeMap<Bideg, FgAbGroup> = groups.into_iter().filter(|(_, g)| !g.is_trivial()).collect();
        let b = Bicomplex { groups, dh, dv };
        b.validate()?;
        Ok(b)
    }

    pub(crate) fn new_unchecked(
        groups: BTreeMap<Bideg, FgAbGroup>,
        dh: BTreeMap<Bideg, AbHom>,
        dv: BTreeMap<Bideg, AbHom>,
    ) -> Bicomplex {
        let groups = groups.into_iter().filter(|(_, g)| !g.is_trivial()).collect();
        Bicomplex { groups, dh, dv }
    }

    pub fn zero() -> Bicomplex {
        Bicomplex { groups: BTreeMap::new(), dh: BTreeMap::new(), dv: BTreeMap::new() }
    }

    fn validate(&self) -> Result<(), AlgebraError> {
        for (&(s, t), f) in &self.dh {
            if s == 0 {
                return Err(AlgebraError::Invariant(format!("horizontal map out of column 0 at ({s},{t})")));
            }
            if f.domain() != &self.group(s, t) || f.codomain() != &self.group(s - 1, t) {
                return Err(AlgebraError::Invariant(format!("horizontal map at ({s},{t}) has the wrong shape")));
            }
        }
        for (&(s, t), f) in &self.dv {
            if t == 0 {
                return Err(AlgebraError::Invariant(format!("vertical map out of row 0 at ({s},{t})")));
            }
            if f.domain() != &self.group(s, t) || f.codomain() != &self.group(s, t - 1) {
                return Err(AlgebraError::Invariant(format!("vertical map at ({s},{t}) has the wrong shape")));
            }
        }
        for &(s, t) in self.groups.keys() {
            if s >= 2 && !self.dh(s, t).then(&self.dh(s - 1, t))?.is_zero() {
                return Err(AlgebraError::Invariant(format!("d^h d^h != 0 at ({s},{t})")));
            }
            if t >= 2 && !self.dv(s, t).then(&self.dv(s, t - 1))?.is_zero() {
                return Err(AlgebraError::Invariant(format!("d^v d^v != 0 at ({s},{t})")));
            }
            if s >= 1 && t >= 1 {
                let a = self.dh(s, t).then(&self.dv(s - 1, t))?;
                let b = self.dv(s, t).then(&self.dh(s, t - 1))?;
                if a != b {
                    return Err(AlgebraError::Invariant(format!("square at ({s},{t}) does not commute")));
                }
            }
        }
        Ok(())
    }

    pub fn group(&self, s: usize, t: usize) -> FgAbGroup {
        self.groups.get(&(s, t)).cloned().unwrap_or_else(FgAbGroup::zero)
    }

    pub fn group_ref(&self, s: usize, t: usize) -> Option<&FgAbGroup> {
        self.groups.get(&(s, t))
    }

    /// `d^h` out of `(s, t)`; zero for `s == 0`.
    pub fn dh(&self, s: usize, t: usize) -> AbHom {
        match self.dh.get(&(s, t)) {
            Some(f) => f.clone(),
            None => {
                let cod = if s == 0 { FgAbGroup::zero() } else { self.group(s - 1, t) };
                AbHom::zero(self.group(s, t), cod)
            }
        }
    }

    /// `d^v` out of `(s, t)`; zero for `t == 0`.
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

    /// Largest `s` with a nonzero group (0 for the zero bicomplex).
    pub fn max_s(&self) -> usize {
        self.groups.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn max_t(&self) -> usize {
        self.groups.keys().map(|k| k.1).max().unwrap_or(0)
    }

    /// Column `s` as a vertical chain complex in degrees `0..=max_t`.
    pub fn column(&self, s: usize) -> ChainComplex {
        let tm = self.max_t();
        let groups: Vec<FgAbGroup> = (0..=tm).map(|t| self.group(s, t)).collect();
        let diffs: Vec<AbHom> = (1..=tm).map(|t| self.dv(s, t)).collect();
        ChainComplex::new(0, groups, diffs).expect("columns are complexes")
    }

    /// Row `t` as a horizontal chain complex in degrees `0..=max_s`.
    pub fn row(&self, t: usize) -> ChainComplex {
        let sm = self.max_s();
        let groups: Vec<FgAbGroup> = (0..=sm).map(|s| self.group(s, t)).collect();
        let diffs: Vec<AbHom> = (1..=sm).map(|s| self.dh(s, t)).collect();
        ChainComplex::new(0, groups, diffs).expect("rows are complexes")
    }

    pub fn direct_sum(&self, other: &Bicomplex) -> Bicomplex {
        let mut keys: Vec<Bideg> = self.groups.keys().chain(other.groups.keys()).copied().collect();
        keys.sort();
        keys.dedup();
        let mut groups = BTreeMap::new();
        let mut dh = BTreeMap::new();
        let mut dv = BTreeMap::new();
        for &(s, t) in &keys {
            groups.insert((s, t), self.group(s, t).direct_sum(&other.group(s, t)));
        }
        for &(s, t) in &keys {
            if s > 0 {
                let f = self.dh(s, t).block_sum(&other.dh(s, t));
                if !f.is_zero() {
                    dh.insert((s, t), f);
                }
            }
            if t > 0 {
                let f = self.dv(s, t).block_sum(&other.dv(s, t));
                if !f.is_zero() {
                    dv.insert((s, t), f);
                }
            }
        }
        Bicomplex::new_unchecked(groups, dh, dv)
    }

    /// Direct sum of one group placed at `(s, t)` with no maps.
    pub fn single(s: usize, t: usize, g: FgAbGroup) -> Bicomplex {
        let mut groups = BTreeMap::new();
        groups.insert((s, t), g);
        Bicomplex::new_unchecked(groups, BTreeMap::new(), BTreeMap::new())
    }

    /// Total complex `Tot_k = ⊕_{s+t=k} K_{s,t}` with `D = d^h + (-1)^s d^v`.
    pub fn total(&self) -> TotalComplex {
        let top = self.max_s() + self.max_t();
        let mut pieces: Vec<Vec<(Bideg, usize)>> = Vec::new();
        let mut groups = Vec::new();
        for k in 0..=top {
            let mut off = 0;
            let mut ps = Vec::new();
            let mut gs = Vec::new();
            for s in 0..=k {
                let t = k - s;
                if let Some(g) = self.groups.get(&(s, t)) {
                    ps.push(((s, t), off));
                    off += g.ngens();
                    gs.push(g);
                }
            }
            pieces.push(ps);
            groups.push(FgAbGroup::direct_sum_all(gs));
        }
        let mut diffs = Vec::new();
        for k in 1..=top {
            let mut m = Matrix::zero(groups[k - 1].ngens(), groups[k].ngens());
            for &((s, t), off) in &pieces[k] {
                if s > 0 {
                    if let Some(&(_, o2)) = pieces[k - 1].iter().find(|(b, _)| *b == (s - 1, t)) {
                        m.paste(o2, off, self.dh(s, t).matrix());
                    }
                }
                if t > 0 {
                    if let Some(&(_, o2)) = pieces[k - 1].iter().find(|(b, _)| *b == (s, t - 1)) {
                        let v = self.dv(s, t);
                        let blk = if s % 2 == 1 { v.matrix().scale(&Int::from(-1)) } else { v.matrix().clone() };
                        m.paste(o2, off, &blk);
                    }
                }
            }
            diffs.push(AbHom::new(groups[k].clone(), groups[k - 1].clone(), m).expect("total differential"));
        }
        let complex = ChainComplex::new(0, groups, diffs).expect("total complex squares to zero");
        TotalComplex { complex, pieces }
    }
}

/// Total complex together with the position of each summand.
#[derive(Clone, Debug)]
pub struct TotalComplex {
    pub complex: ChainComplex,
    /// For each total degree, the summands `(bidegree, generator offset)` in order of `s`.
    pub pieces: Vec<Vec<(Bideg, usize)>>,
}

impl TotalComplex {
    pub fn offset(&self, s: usize, t: usize) -> Option<usize> {
        self.pieces.get(s + t)?.iter().find(|(b, _)| *b == (s, t)).map(|(_, o)| *o)
    }
}

/// Builder that takes small integer matrices, for tests and examples.
#[derive(Default)]
pub struct BicomplexBuilder {
    groups: BTreeMap<Bideg, FgAbGroup>,
    dh: Vec<(Bideg, Vec<Vec<i64>>)>,
    dv: Vec<(Bideg, Vec<Vec<i64>>)>,
}

impl BicomplexBuilder {
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

    pub fn dh(mut self, s: usize, t: usize, rows: Vec<Vec<i64>>) -> Self {
        self.dh.push(((s, t), rows));
        self
    }

    pub fn dv(mut self, s: usize, t: usize, rows: Vec<Vec<i64>>) -> Self {
        self.dv.push(((s, t), rows));
        self
    }

    pub fn build(self) -> Result<Bicomplex, AlgebraError> {
        let get = |s: usize, t: usize| self.groups.get(&(s, t)).cloned().unwrap_or_else(FgAbGroup::zero);
        let mut dh = BTreeMap::new();
        for ((s, t), rows) in &self.dh {
            if *s == 0 {
                return Err(AlgebraError::Invariant("horizontal map out of column 0".into()));
            }
            dh.insert((*s, *t), AbHom::from_rows(get(*s, *t), get(*s - 1, *t), rows)?);
        }
        let mut dv = BTreeMap::new();
        for ((s, t), rows) in &self.dv {
            if *t == 0 {
                return Err(AlgebraError::Invariant("vertical map out of row 0".into()));
            }
            dv.insert((*s, *t), AbHom::from_rows(get(*s, *t), get(*s, *t - 1), rows)?);
        }
        Bicomplex::new(self.groups, dh, dv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn witness() -> Bicomplex {
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
    fn witness_total_is_acyclic() {
        let tot = witness().total();
        for k in 0..=3 {
            assert!(tot.complex.homology(k).value().is_trivial(), "degree {k}");
        }
    }

    #[test]
    fn noncommuting_square_rejected() {
        let r = BicomplexBuilder::new()
            .free(1, 1, 1)
            .free(0, 1, 1)
            .free(1, 0, 1)
            .free(0, 0, 1)
            .dh(1, 1, vec![vec![1]])
            .dv(1, 1, vec![vec![1]])
            .dh(1, 0, vec![vec![1]])
            .dv(0, 1, vec![vec![2]])
            .build();
        assert!(matches!(r, Err(AlgebraError::Invariant(_))));
    }
}
