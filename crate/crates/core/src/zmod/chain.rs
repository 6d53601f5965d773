//! Bounded chain complexes of presented groups and their homology.

use super::error::AlgebraError;
use super::group::FgAbGroup;
use super::hom::AbHom;
use super::lattice::Lattice;
use super::subquotient::Subquotient;

/// Chain complex with groups in degrees `lo .. lo + groups.len()` (zero elsewhere).
/// `diffs[i]` is the differential out of degree `lo + i + 1`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    lo: i64,
    groups: Vec<FgAbGroup>,
    diffs: Vec<AbHom>,
}

impl ChainComplex {
    pub fn new(lo: i64, groups: Vec<FgAbGroup>, diffs: Vec<AbHom>) -> Result<ChainComplex, AlgebraError> {
        if diffs.len() + 1 != groups.len().max(1) {
            return Err(AlgebraError::DimensionMismatch("need one differential per adjacent pair".into()));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.domain() != &groups[i + 1] || d.codomain() != &groups[i] {
                return Err(AlgebraError::DimensionMismatch(format!("differential out of degree {}", lo + i as i64 + 1)));
            }
        }
        for i in 1..diffs.len() {
            if !diffs[i].then(&diffs[i - 1])?.is_zero() {
                return Err(AlgebraError::NotComplex(lo + i as i64 + 1));
            }
        }
        Ok(ChainComplex { lo, groups, diffs })
    }

    pub fn zero() -> ChainComplex {
        ChainComplex { lo: 0, groups: Vec::new(), diffs: Vec::new() }
    }

    /// A single group in degree `t`.
    pub fn concentrated(g: FgAbGroup, t: i64) -> ChainComplex {
        ChainComplex { lo: t, groups: vec![g], diffs: Vec::new() }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// One past the top nonzero degree.
    pub fn hi(&self) -> i64 {
        self.lo + self.groups.len() as i64
    }

    pub fn group(&self, t: i64) -> FgAbGroup {
        if t >= self.lo && t < self.hi() {
            self.groups[(t - self.lo) as usize].clone()
        } else {
            FgAbGroup::zero()
        }
    }

    /// Differential `C_t -> C_{t-1}`.
    pub fn d(&self, t: i64) -> AbHom {
        if t > self.lo && t < self.hi() {
            self.diffs[(t - self.lo - 1) as usize].clone()
        } else {
            AbHom::zero(self.group(t), self.group(t - 1))
        }
    }

    pub fn cycles(&self, t: i64) -> Lattice {
        self.d(t).kernel_lattice()
    }

    pub fn boundaries(&self, t: i64) -> Lattice {
        self.d(t + 1).image_lattice()
    }

    /// `H_t` as the subquotient `Z_t / B_t` of `C_t`.
    pub fn homology(&self, t: i64) -> Subquotient {
        Subquotient::new(self.group(t), self.cycles(t), self.boundaries(t)).expect("boundaries are cycles")
    }
}

/// Components `f_t : A_t -> B_t`; degrees outside `A`'s range are zero.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub source: ChainComplex,
    pub target: ChainComplex,
    lo: i64,
    parts: Vec<AbHom>,
}

impl ChainMap {
    /// `parts[i]` is the component in degree `lo + i`, for `lo` the smaller of the two lows.
    pub fn new(source: ChainComplex, target: ChainComplex, parts_from: i64, parts: Vec<AbHom>) -> Result<ChainMap, AlgebraError> {
        let m = ChainMap { source, target, lo: parts_from, parts };
        let (a, b) = m.range();
        for t in a..b {
            let f = m.at(t);
            if f.domain() != &m.source.group(t) || f.codomain() != &m.target.group(t) {
                return Err(AlgebraError::DimensionMismatch(format!("chain map component in degree {t}")));
            }
        }
        for t in a..=b {
            let lhs = m.source.d(t).then(&m.at(t - 1))?;
            let rhs = m.at(t).then(&m.target.d(t))?;
            if lhs != rhs {
                return Err(AlgebraError::NotChainMap(t));
            }
        }
        Ok(m)
    }

    fn range(&self) -> (i64, i64) {
        let a = self.source.lo().min(self.target.lo()).min(self.lo);
        let b = self.source.hi().max(self.target.hi()).max(self.lo + self.parts.len() as i64);
        (a, b)
    }

    pub fn at(&self, t: i64) -> AbHom {
        if t >= self.lo && t < self.lo + self.parts.len() as i64 {
            self.parts[(t - self.lo) as usize].clone()
        } else {
            AbHom::zero(self.source.group(t), self.target.group(t))
        }
    }

    pub fn on_homology(&self, t: i64) -> AbHom {
        let f = self.at(t);
        self.source.homology(t).induced_unchecked(f.matrix(), &self.target.homology(t))
    }
}
