//! Pages of a double complex read off the column filtration of its total complex:
//! `E^r_p = π(Z^r_p) / π(D Z^{r-1}_{p+r-1})` with `Z^r_p = {x ∈ F_p : Dx ∈ F_{p-r}}`
//! and `π` the projection to column `p`. No exact couple is involved.

use std::collections::BTreeMap;

use crate::pages::{Abutment, AbutmentDegree, Grading, Page, SpectralPages};
use crate::simplicial::{Bicomplex, CochainBicomplex};
use crate::zmod::{AbHom, FgAbGroup, Int, Lattice, Matrix, Subquotient};

/// Same shape as the engine’s pages, built independently.
pub type FiltrationSS = SpectralPages;

/// A double complex with filtration index `f`: `h : (f, q) -> (f-1, q)`,
/// `v : (f, q) -> (f, q-1)`, total differential `h + (-1)^f v` in degree `f + q`.
struct Grid {
    groups: BTreeMap<(i64, i64), FgAbGroup>,
    h: BTreeMap<(i64, i64), Matrix>,
    v: BTreeMap<(i64, i64), Matrix>,
    // column homology, the common E^1 coordinates
    e1: BTreeMap<(i64, i64), Subquotient>,
}

struct Tot {
    group: FgAbGroup,
    // (f, q, offset, ngens), f increasing
    blocks: Vec<(i64, i64, usize, usize)>,
}

impl Tot {
    fn block(&self, f: i64) -> Option<(usize, usize)> {
        self.blocks.iter().find(|b| b.0 == f).map(|b| (b.2, b.3))
    }

    /// Lattice of elements with components only in columns `<= p`, relations included.
    fn filtration(&self, p: i64) -> Lattice {
        let n = self.group.ngens();
        let mut gens = self.group.relation_vectors();
        for &(f, _, off, k) in &self.blocks {
            if f <= p {
                for i in 0..k {
                    let mut e = vec![Int::ZERO; n];
                    e[off + i] = Int::ONE;
                    gens.push(e);
                }
            }
        }
        Lattice::from_generators(n, gens)
    }

    fn project(&self, f: i64, x: &[Int]) -> Vec<Int> {
        match self.block(f) {
            Some((off, k)) => x[off..off + k].to_vec(),
            None => Vec::new(),
        }
    }
}

struct Filtered {
    tots: BTreeMap<i64, Tot>,
    // D out of degree m
    diffs: BTreeMap<i64, Matrix>,
    lo: i64,
    hi: i64,
}

impl Filtered {
    fn new(grid: &Grid) -> Filtered {
        let degs: Vec<i64> = grid.groups.keys().map(|&(f, q)| f + q).collect();
        let lo = degs.iter().copied().min().unwrap_or(0) - 1;
        let hi = degs.iter().copied().max().unwrap_or(0) + 1;
        let mut tots = BTreeMap::new();
        for m in lo..=hi {
            let mut blocks = Vec::new();
            let mut parts = Vec::new();
            let mut off = 0;
            for (&(f, q), g) in &grid.groups {
                if f + q == m {
                    blocks.push((f, q, off, g.ngens()));
                    off += g.ngens();
                    parts.push(g);
                }
            }
            tots.insert(m, Tot { group: FgAbGroup::direct_sum_all(parts), blocks });
        }
        let mut diffs = BTreeMap::new();
        for m in lo + 1..=hi {
            let (src, dst) = (&tots[&m], &tots[&(m - 1)]);
            let mut d = Matrix::zero(dst.group.ngens(), src.group.ngens());
            for &(f, q, off, _) in &src.blocks {
                if let (Some(h), Some((o2, _))) = (grid.h.get(&(f, q)), dst.block(f - 1)) {
                    d.paste(o2, off, h);
                }
                if let (Some(v), Some((o2, _))) = (grid.v.get(&(f, q)), dst.block(f)) {
                    let sign = if f.rem_euclid(2) == 0 { Int::ONE } else { Int::from(-1) };
                    d.paste(o2, off, &v.scale(&sign));
                }
            }
            diffs.insert(m, d);
        }
        Filtered { tots, diffs, lo, hi }
    }

    fn tot(&self, m: i64) -> Option<&Tot> {
        self.tots.get(&m)
    }

    fn d(&self, m: i64) -> Option<&Matrix> {
        self.diffs.get(&m)
    }

    /// `Z^r_p` in degree `m`; `r = 0` gives `F_p`.
    fn z(&self, m: i64, p: i64, r: usize) -> Lattice {
        let Some(t) = self.tot(m) else { return Lattice::zero(0) };
        let fp = t.filtration(p);
        if r == 0 {
            return fp;
        }
        match (self.d(m), self.tot(m - 1)) {
            (Some(d), Some(below)) => fp.intersect(&below.filtration(p - r as i64).preimage(d)),
            _ => fp,
        }
    }

    /// `π(Z^r_p)` and `π(D Z^{r-1}_{p+r-1})` in the coordinates of column `p`, row `q`.
    fn page_lattices(&self, p: i64, q: i64, r: usize) -> (Vec<Vec<Int>>, Vec<Vec<Int>>, Lattice) {
        let m = p + q;
        let tot = self.tot(m).expect("degree in range");
        let z = self.z(m, p, r);
        let num: Vec<Vec<Int>> = z.basis().iter().map(|x| tot.project(p, x)).collect();
        let mut den = Vec::new();
        if m + 1 <= self.hi {
            let zz = self.z(m + 1, p + r as i64 - 1, r - 1);
            let d = self.d(m + 1).expect("differential");
            for x in zz.basis() {
                den.push(tot.project(p, &d.mul_vec(x)));
            }
        }
        (num, den, z)
    }
}

fn e_page(grid: &Grid, fil: &Filtered, r: usize) -> BTreeMap<(i64, i64), (Subquotient, Lattice, Lattice)> {
    let mut out = BTreeMap::new();
    for (&(p, q), e1) in &grid.e1 {
        let (num, den, z) = fil.page_lattices(p, q, r);
        let g = e1.value().clone();
        let to_e1 = |vs: &[Vec<Int>]| -> Vec<Vec<Int>> {
            vs.iter().map(|c| e1.coords(c).expect("projection of Z^r is a column cycle")).collect()
        };
        let n = g.ngens();
        let sq = Subquotient::new(g, Lattice::from_generators(n, to_e1(&num)), Lattice::from_generators(n, to_e1(&den)))
            .expect("denominator inside numerator");
        let dim = e1.ambient().ngens();
        // tracked projection of Z^r, for lifting classes back to the total complex
        let tracked = Lattice::from_generators_tracked(dim, num);
        out.insert((p, q), (sq, tracked, z));
    }
    out
}

fn grid_pages(grid: &Grid, max_page: usize, grading: Grading, display: impl Fn(i64, i64) -> (i64, i64)) -> SpectralPages {
    let fil = Filtered::new(grid);
    let mut pages = Vec::new();
    for r in 1..=max_page.max(1) {
        let data = e_page(grid, &fil, r);
        let mut entries = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for (&(p, q), (sq, tracked, z)) in &data {
            entries.insert(display(p, q), sq.clone());
            let (tp, tq) = (p - r as i64, q + r as i64 - 1);
            let Some((tsq, _, _)) = data.get(&(tp, tq)) else { continue };
            let e1 = &grid.e1[&(p, q)];
            let te1 = &grid.e1[&(tp, tq)];
            let m = p + q;
            let d = fil.d(m).expect("differential out of a populated degree");
            let below = fil.tot(m - 1).expect("degree below");
            let cols: Vec<Vec<Int>> = sq
                .lifts()
                .iter()
                .map(|l| {
                    let chain = e1.lift(l);
                    let coeffs = tracked.solve(&chain).expect("class lifts to Z^r");
                    let mut x = vec![Int::ZERO; fil.tot(m).unwrap().group.ngens()];
                    for (c, b) in coeffs.iter().zip(z.basis()) {
                        for (xi, bi) in x.iter_mut().zip(b) {
                            xi.add_mul(c, bi);
                        }
                    }
                    let y = below.project(tp, &d.mul_vec(&x));
                    let in_e1 = te1.coords(&y).expect("image is a column cycle");
                    tsq.coords(&in_e1).expect("image lies in Z^r")
                })
                .collect();
            let f = AbHom::from_columns(sq.value().clone(), tsq.value().clone(), &cols).expect("well defined differential");
            diffs.insert(display(p, q), f);
        }
        pages.push(Page { r, entries, diffs });
    }
    let e1 = grid.e1.iter().map(|(&(p, q), s)| (display(p, q), s.value().clone())).collect();
    let abutment = filtered_homology(&fil, |p| display(p, 0).0);
    SpectralPages { grading, e1, pages, abutment }
}

/// Homology of the total complex, with quotients of the column filtration keyed by
/// the displayed filtration index.
fn filtered_homology(fil: &Filtered, index: impl Fn(i64) -> i64) -> Abutment {
    let mut degrees = BTreeMap::new();
    for m in fil.lo..=fil.hi {
        let tot = fil.tot(m).unwrap();
        let n = tot.group.ngens();
        if n == 0 {
            continue;
        }
        let rel = tot.group.relation_vectors();
        let cycles = match (fil.d(m), fil.tot(m - 1)) {
            (Some(d), Some(b)) => b.group.relations().preimage(d),
            _ => Lattice::full(n),
        };
        let bounds = match fil.d(m + 1) {
            Some(d) => Lattice::from_matrix_columns(d).with_generators(&rel),
            None => Lattice::from_generators(n, rel.clone()),
        };
        let h = Subquotient::new(tot.group.clone(), cycles.clone(), bounds.clone()).expect("homology");
        let fs: Vec<i64> = tot.blocks.iter().map(|b| b.0).collect();
        let mut quotients = BTreeMap::new();
        let mut prev = bounds.clone();
        for &p in &fs {
            let fp = cycles.intersect(&tot.filtration(p)).sum(&bounds);
            let q = Subquotient::new(tot.group.clone(), fp.clone(), prev.clone()).expect("filtration step");
            if !q.value().is_trivial() {
                quotients.insert(index(p), q.value().clone());
            }
            prev = fp;
        }
        if !h.value().is_trivial() {
            degrees.insert(m, AbutmentDegree { group: h.value().clone(), quotients });
        }
    }
    Abutment { degrees }
}

fn grid_of_bicomplex(b: &Bicomplex) -> Grid {
    let mut groups = BTreeMap::new();
    let mut h = BTreeMap::new();
    let mut v = BTreeMap::new();
    let mut e1 = BTreeMap::new();
    for (&(s, t), g) in b.support() {
        let key = (s as i64, t as i64);
        groups.insert(key, g.clone());
        if s > 0 {
            h.insert(key, b.dh(s, t).matrix().clone());
        }
        if t > 0 {
            v.insert(key, b.dv(s, t).matrix().clone());
        }
        e1.insert(key, b.column(s).homology(t as i64));
    }
    Grid { groups, h, v, e1 }
}

fn grid_of_cochains(k: &CochainBicomplex) -> Grid {
    let mut groups = BTreeMap::new();
    let mut h = BTreeMap::new();
    let mut v = BTreeMap::new();
    let mut e1 = BTreeMap::new();
    for (&(s, t), g) in k.support() {
        let key = (-(s as i64), t as i64);
        groups.insert(key, g.clone());
        h.insert(key, k.dh(s, t).matrix().clone());
        if t > 0 {
            v.insert(key, k.dv(s, t).matrix().clone());
        }
        e1.insert(key, k.column(s).homology(t as i64));
    }
    Grid { groups, h, v, e1 }
}

/// The spectral sequence of the column filtration, pages `1..=max_page`.
pub fn classical_ss(b: &Bicomplex, max_page: usize) -> FiltrationSS {
    grid_pages(&grid_of_bicomplex(b), max_page, Grading::Homological, |p, q| (p, q))
}

/// The spectral sequence of the filtration by columns `>= s` of a cochain bicomplex.
pub fn classical_coss(k: &CochainBicomplex, max_page: usize) -> FiltrationSS {
    grid_pages(&grid_of_cochains(k), max_page, Grading::Cohomological, |p, q| (-p, q))
}

/// Total homology with the column filtration quotients.
pub fn total_homology(b: &Bicomplex) -> Abutment {
    filtered_homology(&Filtered::new(&grid_of_bicomplex(b)), |p| p)
}

/// Homology of `Tot` of a cochain bicomplex in degrees `t - s`, filtered by columns `>= s`.
pub fn total_cohomology(k: &CochainBicomplex) -> Abutment {
    filtered_homology(&Filtered::new(&grid_of_cochains(k)), |p| -p)
}
