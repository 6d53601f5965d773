//! Simplicial (and cosimplicial) Postnikov stems, stored through their normalized
//! chains: window `k` is the double complex whose column `s` is the `k`-th window of
//! column `s`, and `maps[k]` is the window map `window k -> window k-1`.

use std::collections::BTreeMap;
use std::fmt::Debug;

use crate::simplicial::{Bicomplex, Bideg, BisimplicialAb, CochainBicomplex, SimplicialSpace};
use crate::zmod::{AbHom, AlgebraError, ChainComplex, FgAbGroup, Int, Lattice, Matrix, Subquotient};

use super::window::{truncate_window, StemWindow};

/// A first-quadrant grid of groups with vertical differentials `t -> t-1` and
/// horizontal maps in a fixed direction.
pub trait Grid: Clone + Debug {
    fn grid_group(&self, s: usize, t: usize) -> FgAbGroup;
    fn grid_support(&self) -> Vec<Bideg>;
    fn grid_column(&self, s: usize) -> ChainComplex;
    fn grid_dv(&self, s: usize, t: usize) -> AbHom;
    fn grid_horizontal(&self) -> &BTreeMap<Bideg, AbHom>;
    /// Target of the horizontal map out of `(s, t)`, if it stays in the quadrant.
    fn h_target(s: usize, t: usize) -> Option<Bideg>;
    fn grid_max_s(&self) -> usize;
    fn assemble(
        groups: BTreeMap<Bideg, FgAbGroup>,
        dh: BTreeMap<Bideg, AbHom>,
        dv: BTreeMap<Bideg, AbHom>,
    ) -> Result<Self, AlgebraError>;
    /// Reedy fibrancy of the simplicial object, when the notion applies.
    fn reedy_fibrant(&self) -> Option<bool>;
}

impl Grid for Bicomplex {
    fn grid_group(&self, s: usize, t: usize) -> FgAbGroup {
        self.group(s, t)
    }
    fn grid_support(&self) -> Vec<Bideg> {
        self.support().map(|(&p, _)| p).collect()
    }
    fn grid_column(&self, s: usize) -> ChainComplex {
        self.column(s)
    }
    fn grid_dv(&self, s: usize, t: usize) -> AbHom {
        self.dv(s, t)
    }
    fn grid_horizontal(&self) -> &BTreeMap<Bideg, AbHom> {
        self.horizontal_maps()
    }
    fn h_target(s: usize, t: usize) -> Option<Bideg> {
        (s > 0).then(|| (s - 1, t))
    }
    fn grid_max_s(&self) -> usize {
        self.max_s()
    }
    fn assemble(
        groups: BTreeMap<Bideg, FgAbGroup>,
        dh: BTreeMap<Bideg, AbHom>,
        dv: BTreeMap<Bideg, AbHom>,
    ) -> Result<Self, AlgebraError> {
        Bicomplex::new(groups, dh, dv)
    }
    fn reedy_fibrant(&self) -> Option<bool> {
        Some(SimplicialSpace::gamma(self, self.max_s() + 1).space.reedy_fibrant().fibrant)
    }
}

impl Grid for CochainBicomplex {
    fn grid_group(&self, s: usize, t: usize) -> FgAbGroup {
        self.group(s, t)
    }
    fn grid_support(&self) -> Vec<Bideg> {
        self.support().map(|(&p, _)| p).collect()
    }
    fn grid_column(&self, s: usize) -> ChainComplex {
        self.column(s)
    }
    fn grid_dv(&self, s: usize, t: usize) -> AbHom {
        self.dv(s, t)
    }
    fn grid_horizontal(&self) -> &BTreeMap<Bideg, AbHom> {
        self.horizontal_maps()
    }
    fn h_target(s: usize, t: usize) -> Option<Bideg> {
        Some((s + 1, t))
    }
    fn grid_max_s(&self) -> usize {
        self.max_s()
    }
    fn assemble(
        groups: BTreeMap<Bideg, FgAbGroup>,
        dh: BTreeMap<Bideg, AbHom>,
        dv: BTreeMap<Bideg, AbHom>,
    ) -> Result<Self, AlgebraError> {
        CochainBicomplex::new(groups, dh, dv)
    }
    fn reedy_fibrant(&self) -> Option<bool> {
        None
    }
}

/// The chains a realizable stem came from, and each window group as a subquotient of
/// the corresponding source group.
#[derive(Clone, Debug)]
pub struct Realization<G> {
    pub source: G,
    pub parts: Vec<BTreeMap<Bideg, Subquotient>>,
}

#[derive(Clone, Debug)]
pub struct Stem<G> {
    pub order: usize,
    /// Windows `0..=horizon`; higher windows are taken to be zero.
    pub horizon: usize,
    pub windows: Vec<G>,
    /// `maps[k] : window k -> window k-1` on every bidegree of window `k`; `maps[0]` is empty.
    pub maps: Vec<BTreeMap<Bideg, AbHom>>,
    pub realization: Option<Realization<G>>,
}

pub type SimplicialStem = Stem<Bicomplex>;
pub type CosimplicialStem = Stem<CochainBicomplex>;

impl<G: Grid> Stem<G> {
    pub fn window(&self, k: usize) -> Option<&G> {
        self.windows.get(k)
    }

    /// The window map at `(s, t)`, zero when absent.
    pub fn map(&self, k: usize, p: Bideg) -> AbHom {
        let (src, dst) = (self.windows[k].grid_group(p.0, p.1), self.windows[k - 1].grid_group(p.0, p.1));
        self.maps[k].get(&p).cloned().unwrap_or_else(|| AbHom::zero(src, dst))
    }

    pub fn is_realizable_by_construction(&self) -> bool {
        self.realization.is_some()
    }
}

/// Columnwise windows of `x` of order `n`, with the induced horizontal maps.
fn window_grid<G: Grid>(x: &G, n: usize, k: usize) -> (G, BTreeMap<Bideg, Subquotient>) {
    let cols: Vec<StemWindow> = (0..=x.grid_max_s()).map(|s| truncate_window(&x.grid_column(s), n, k)).collect();
    let mut groups = BTreeMap::new();
    let mut parts = BTreeMap::new();
    let mut dv = BTreeMap::new();
    for (s, w) in cols.iter().enumerate() {
        for (&t, sq) in &w.parts {
            if sq.value().is_trivial() {
                continue;
            }
            let t = t as usize;
            groups.insert((s, t), sq.value().clone());
            parts.insert((s, t), sq.clone());
            if t > k {
                let d = w.space.d(t as i64);
                if !d.is_zero() {
                    dv.insert((s, t), d);
                }
            }
        }
    }
    let mut dh = BTreeMap::new();
    for (&(s, t), f) in x.grid_horizontal() {
        let Some((s2, _)) = G::h_target(s, t) else { continue };
        if s2 >= cols.len() {
            continue;
        }
        let g = cols[s].induced(f, &cols[s2], t as i64);
        if !g.is_zero() {
            dh.insert((s, t), g);
        }
    }
    let g = G::assemble(groups, dh, dv).expect("columnwise truncation of a double complex");
    (g, parts)
}

/// The realizable stem of order `n` of a grid, windows `0..=horizon`.
pub fn stem_of_grid<G: Grid>(x: &G, n: usize, horizon: usize) -> Stem<G> {
    let mut windows = Vec::new();
    let mut parts = Vec::new();
    for k in 0..=horizon {
        let (g, p) = window_grid(x, n, k);
        windows.push(g);
        parts.push(p);
    }
    let mut maps = vec![BTreeMap::new()];
    for k in 1..=horizon {
        let mut m = BTreeMap::new();
        for (s, t) in windows[k].grid_support() {
            let id = Matrix::identity(x.grid_group(s, t).ngens());
            let src = &parts[k][&(s, t)];
            let f = match parts[k - 1].get(&(s, t)) {
                Some(dst) => src.induced_unchecked(&id, dst),
                None => continue,
            };
            if !f.is_zero() {
                m.insert((s, t), f);
            }
        }
        maps.push(m);
    }
    Stem { order: n, horizon, windows, maps, realization: Some(Realization { source: x.clone(), parts }) }
}

/// `P[n]` of the normalized chains of a simplicial space; the horizon covers every
/// nonzero window.
pub fn stem_of_chains(chains: &Bicomplex, n: usize) -> SimplicialStem {
    stem_of_grid(chains, n, chains.max_t())
}

pub fn stem_of(x: &BisimplicialAb, n: usize, horizon: usize) -> SimplicialStem {
    stem_of_grid(&x.vertical_normalize().normalized().bicomplex, n, horizon)
}

pub fn stem_of_space(x: &SimplicialSpace, n: usize, horizon: usize) -> SimplicialStem {
    stem_of_grid(&x.normalized().bicomplex, n, horizon)
}

pub fn costem_of(x: &CochainBicomplex, n: usize) -> CosimplicialStem {
    stem_of_grid(x, n, x.max_t())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StemAxiom {
    Connectivity,
    Coconnectivity,
    NotAMap,
    IsoRange,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StemViolation {
    pub axiom: StemAxiom,
    pub window: usize,
    pub column: usize,
    pub degree: usize,
}

#[derive(Clone, Debug)]
pub struct StemVerdict {
    pub violation: Option<StemViolation>,
    /// Per window, Reedy fibrancy of the simplicial window (informational).
    pub fibrant: Vec<Option<bool>>,
}

impl StemVerdict {
    pub fn valid(&self) -> bool {
        self.violation.is_none()
    }
}

fn first_violation<G: Grid>(s: &Stem<G>) -> Option<StemViolation> {
    let n = s.order;
    for (k, w) in s.windows.iter().enumerate() {
        for col in 0..=w.grid_max_s() {
            let c = w.grid_column(col);
            for t in c.lo()..c.hi() {
                if c.homology(t).value().is_trivial() {
                    continue;
                }
                let axiom = if t < k as i64 {
                    StemAxiom::Connectivity
                } else if t > (n + k) as i64 {
                    StemAxiom::Coconnectivity
                } else {
                    continue;
                };
                return Some(StemViolation { axiom, window: k, column: col, degree: t as usize });
            }
        }
    }
    for k in 1..s.windows.len() {
        let (a, b) = (&s.windows[k], &s.windows[k - 1]);
        let mut keys: Vec<Bideg> = a.grid_support();
        keys.extend(b.grid_support());
        keys.sort();
        keys.dedup();
        for &(col, t) in &keys {
            let bad = |degree| Some(StemViolation { axiom: StemAxiom::NotAMap, window: k, column: col, degree });
            let q = s.map(k, (col, t));
            let commutes = |l: Result<AbHom, AlgebraError>, r: Result<AbHom, AlgebraError>| matches!((l, r), (Ok(l), Ok(r)) if l == r);
            if t > 0 && !commutes(q.then(&b.grid_dv(col, t)), a.grid_dv(col, t).then(&s.map(k, (col, t - 1)))) {
                return bad(t);
            }
            if let Some(p2) = G::h_target(col, t) {
                let ha = a.grid_horizontal().get(&(col, t)).cloned();
                let hb = b.grid_horizontal().get(&(col, t)).cloned();
                let zero = |g: &G, h: &G| AbHom::zero(g.grid_group(col, t), h.grid_group(p2.0, p2.1));
                let ha = ha.unwrap_or_else(|| zero(a, a));
                let hb = hb.unwrap_or_else(|| zero(b, b));
                if !commutes(q.then(&hb), ha.then(&s.map(k, p2))) {
                    return bad(t);
                }
            }
        }
        for col in 0..=a.grid_max_s().max(b.grid_max_s()) {
            let (ca, cb) = (a.grid_column(col), b.grid_column(col));
            for i in k..(s.order + k) {
                let q = s.map(k, (col, i));
                let h = ca.homology(i as i64).induced_unchecked(q.matrix(), &cb.homology(i as i64));
                if !h.is_iso() {
                    return Some(StemViolation { axiom: StemAxiom::IsoRange, window: k, column: col, degree: i });
                }
            }
        }
    }
    None
}

/// Connectivity, coconnectivity, the window maps and their iso range, in that order.
pub fn stem_validate<G: Grid>(s: &Stem<G>) -> StemVerdict {
    let violation = first_violation(s);
    let fibrant = s.windows.iter().map(|w| w.reedy_fibrant()).collect();
    StemVerdict { violation, fibrant }
}

/// `sub'/den'` inside `outer`, rewritten as a subquotient of `outer`'s ambient.
fn compose(outer: &Subquotient, inner: &Subquotient) -> Subquotient {
    let dim = outer.ambient().ngens();
    let lift = |l: &Lattice| -> Vec<Vec<Int>> {
        let mut v: Vec<Vec<Int>> = l.basis().iter().map(|x| outer.lift(x)).collect();
        v.extend(outer.den().basis().iter().cloned());
        v
    };
    Subquotient::new(
        outer.ambient().clone(),
        Lattice::from_generators(dim, lift(inner.sub())),
        Lattice::from_generators(dim, lift(inner.den())),
    )
    .expect("composite of subquotients")
}

/// Re-truncates every window to order `m < n`.
pub fn stem_forget<G: Grid>(s: &Stem<G>, m: usize) -> Stem<G> {
    assert!(m <= s.order, "forgetting to a higher order");
    let mut windows = Vec::new();
    let mut parts = Vec::new();
    for (k, w) in s.windows.iter().enumerate() {
        let (g, p) = window_grid(w, m, k);
        windows.push(g);
        parts.push(p);
    }
    let mut maps = vec![BTreeMap::new()];
    for k in 1..windows.len() {
        let mut out = BTreeMap::new();
        for p in windows[k].grid_support() {
            let Some(dst) = parts[k - 1].get(&p) else { continue };
            let f = parts[k][&p].induced_unchecked(s.map(k, p).matrix(), dst);
            if !f.is_zero() {
                out.insert(p, f);
            }
        }
        maps.push(out);
    }
    let realization = s.realization.as_ref().map(|r| Realization {
        source: r.source.clone(),
        parts: parts
            .iter()
            .enumerate()
            .map(|(k, pk)| pk.iter().map(|(p, inner)| (*p, compose(&r.parts[k][p], inner))).collect())
            .collect(),
    });
    Stem { order: m, horizon: s.horizon, windows, maps, realization }
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

    fn column_homology(g: &Bicomplex) -> Vec<(Bideg, FgAbGroup)> {
        let mut out = Vec::new();
        for s in 0..=g.max_s() {
            let c = g.column(s);
            for t in c.lo()..c.hi() {
                let h = c.homology(t).value().clone();
                if !h.is_trivial() {
                    out.push(((s, t as usize), h));
                }
            }
        }
        out
    }

    #[test]
    fn witness_one_stem() {
        let s = stem_of_chains(&witness(), 1);
        assert_eq!(s.windows.len(), 2);
        let v = stem_validate(&s);
        assert!(v.valid(), "{:?}", v.violation);
        let h0: Vec<Bideg> = column_homology(&s.windows[0]).into_iter().map(|x| x.0).collect();
        assert_eq!(h0, vec![(0, 1), (2, 0)]);
        let h1: Vec<Bideg> = column_homology(&s.windows[1]).into_iter().map(|x| x.0).collect();
        assert_eq!(h1, vec![(0, 1)]);
    }

    #[test]
    fn zero_stem_maps_vanish_on_homology() {
        let s = stem_of_chains(&witness(), 0);
        assert!(stem_validate(&s).valid());
        for k in 1..s.windows.len() {
            for (p, _) in column_homology(&s.windows[k]) {
                let c = (s.windows[k].column(p.0), s.windows[k - 1].column(p.0));
                let t = p.1 as i64;
                let h = c.0.homology(t).induced_unchecked(s.map(k, p).matrix(), &c.1.homology(t));
                assert!(h.is_zero());
            }
        }
    }

    #[test]
    fn constant_chains_give_a_constant_stem() {
        let b = BicomplexBuilder::new().free(0, 0, 1).group(0, 1, FgAbGroup::cyclic(2)).build().unwrap();
        let s = stem_of_chains(&b, 1);
        assert!(stem_validate(&s).valid());
        assert!(s.windows.iter().all(|w| w.max_s() == 0));
        let f = stem_forget(&s, 0);
        assert!(stem_validate(&f).valid());
        for k in 0..=1 {
            let a = column_homology(&f.windows[k]);
            let b = column_homology(&stem_of_chains(&b, 0).windows[k]);
            assert_eq!(format!("{a:?}"), format!("{b:?}"));
        }
    }

    #[test]
    fn broken_stems_are_reported() {
        let s = stem_of_chains(&witness(), 1);
        let mut wide = s.clone();
        // window 0 with a class in degree 2
        wide.windows[0] = wide.windows[0].direct_sum(&Bicomplex::single(3, 2, FgAbGroup::free(1)));
        let v = stem_validate(&wide);
        assert_eq!(v.violation.unwrap().axiom, StemAxiom::Coconnectivity);
        let mut dead = s.clone();
        dead.maps[1].clear();
        let v = stem_validate(&dead);
        assert_eq!(v.violation.unwrap().axiom, StemAxiom::IsoRange);
    }

    #[test]
    fn forgetting_is_functorial() {
        let b = witness();
        let s = stem_of_chains(&b, 2);
        let once = stem_forget(&s, 0);
        let twice = stem_forget(&stem_forget(&s, 1), 0);
        let direct = stem_of_chains(&b, 0);
        for k in 0..once.windows.len() {
            let a = format!("{:?}", column_homology(&once.windows[k]));
            assert_eq!(a, format!("{:?}", column_homology(&twice.windows[k])));
            assert_eq!(a, format!("{:?}", column_homology(&direct.windows[k])));
        }
        assert!(stem_validate(&twice).valid());
    }
}
