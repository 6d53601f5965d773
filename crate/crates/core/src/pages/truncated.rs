//! The truncated spectral sequence of a stem of order `r`: pages `E^1..E^{r+1}`,
//! computed window by window from the spiral system.
//!
//! The entry at `(a, u)` lives in window `u` (its home window), as a subquotient of
//! that window's `E^1`. `d^m` out of `(a, u)` is the chase
//! `E^2 -∂-> π^♮_{a-2,u+1} <-s^{m-2}- π^♮_{a-m,u+m-1} -h-> E^2` in window `u`, carried
//! to the home window `u+m-1` of the target through the window maps on `E^1`, which
//! are isomorphisms there since `m - 1 <= r`.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::spiral::natural::{boundary_map, e2_sq, h_map, natural_sq, s_map};
use crate::spiral::{spiral_system, ExactCouple, LesKind, SpiralSystem, WindowModel};
use crate::stems::{Stem, StemViolation};
use crate::zmod::{AbHom, FgAbGroup, Int, Lattice, Matrix, Subquotient};

use super::spectral::{compare_pages, homology_lattices, Abutment, Agreement, Grading, Page, PageFailure, Pos, SpectralPages};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TruncationError {
    Stem(StemViolation),
    Chase(PageFailure),
}

impl From<StemViolation> for TruncationError {
    fn from(v: StemViolation) -> Self {
        TruncationError::Stem(v)
    }
}

/// Random choices for the chase: preimages are solved with the generators in a
/// shuffled order and moved by kernel elements, cycle representatives are moved by
/// boundaries. The pages must not change.
#[derive(Clone, Copy, Debug)]
pub struct ChaseChoices {
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct TruncatedSS {
    pub order: usize,
    pub grading: Grading,
    /// `pages[m - 1]` is `E^m`, for `m = 1..=order+1`.
    pub pages: Vec<Page>,
    /// Nonzero composites `d^{r+1} ∘ d^{r+1}`, keyed by source.
    pub obstruction: BTreeMap<Pos, AbHom>,
    /// `E^{r+2}`, when `d^{r+1}` squares to zero.
    pub next: Option<Page>,
    /// Couple coordinates `(a, u)` of each position.
    pub coords: BTreeMap<Pos, (i64, i64)>,
    pub system: SpiralSystem,
}

fn layout(kind: LesKind) -> (Grading, fn(i64, i64) -> Pos) {
    match kind {
        LesKind::Simplicial => (Grading::Homological, |a, u| (a, u)),
        LesKind::Cosimplicial => (Grading::Cohomological, |a, u| (1 - a, u)),
    }
}

/// `s^p : π^♮_{b,w} -> π^♮_{b+p,w-p}`.
fn s_power<C: ExactCouple + ?Sized>(c: &C, b: i64, w: i64, p: usize) -> AbHom {
    let mut f = AbHom::identity(natural_sq(c, b, w).value());
    for q in 1..=p as i64 {
        f = f.then(&s_map(c, b + q, w - q)).expect("composable");
    }
    f
}

/// `σ' = s^{m-2} : π^♮_{a-m,u+m-1} -> π^♮_{a-2,u+1}`.
fn sigma<C: ExactCouple + ?Sized>(c: &C, a: i64, u: i64, m: usize) -> AbHom {
    s_power(c, a - m as i64, u + m as i64 - 1, m - 2)
}

fn perturb(rng: &mut ChaCha8Rng, x: &mut [Int], gens: &[Vec<Int>]) {
    for g in gens {
        let c = Int::from(rng.gen_range(-2i64..=2));
        for (xi, gi) in x.iter_mut().zip(g) {
            xi.add_mul(&c, gi);
        }
    }
}

/// A preimage computed with the domain generators in a random order.
fn permuted_preimage(rng: &mut ChaCha8Rng, f: &AbHom, z: &[Int]) -> Option<Vec<Int>> {
    let n = f.domain().ngens();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let orders = perm.iter().map(|&i| f.domain().orders()[i].clone()).collect();
    let cols = f.matrix().columns();
    let m = Matrix::from_columns(f.codomain().ngens(), &perm.iter().map(|&i| cols[i].clone()).collect::<Vec<_>>());
    let g = AbHom::new(FgAbGroup::new(orders), f.codomain().clone(), m).expect("relabelled generators");
    let y = g.preimage_of(z)?;
    let mut x = vec![Int::ZERO; n];
    for (k, &i) in perm.iter().enumerate() {
        x[i] = y[k].clone();
    }
    Some(x)
}

struct Chase<'a> {
    sys: &'a SpiralSystem,
    rng: Option<ChaCha8Rng>,
}

impl Chase<'_> {
    /// A home representative of `d^m x` for `x` in `Z^m_{a,u}` (home coordinates).
    fn run(&mut self, m: usize, a: i64, u: i64, x: &[Int]) -> Result<Vec<Int>, String> {
        let home = u as usize;
        let c = self.sys.couple(home);
        if m == 1 {
            return Ok(c.d1(a, u).apply(x));
        }
        let mi = m as i64;
        let abar = e2_sq(c, a, u).coords(x).ok_or("representative is not a d^1-cycle")?;
        let z = boundary_map(c, a, u).apply(&abar);
        let sg = sigma(c, a, u, m);
        let mut e = match self.rng.as_mut() {
            Some(rng) => permuted_preimage(rng, &sg, &z),
            None => sg.preimage_of(&z),
        }
        .ok_or("∂ does not lift through s")?;
        if let Some(rng) = self.rng.as_mut() {
            perturb(rng, &mut e, sg.kernel_lattice().basis());
            e = sg.domain().reduce(&e);
        }
        let (b, w) = (a - mi, u + mi - 1);
        let y = h_map(c, b, w).apply(&e);
        let lifted = e2_sq(c, b, w).lift(&y);
        let t = self.sys.transport_e1(w as usize, home, b, w);
        let back = t.inverse().map_err(|_| "window maps are not isomorphisms on E^1")?;
        Ok(back.apply(&lifted))
    }
}

pub fn truncated_ss<G: WindowModel>(stem: &Stem<G>) -> Result<TruncatedSS, TruncationError> {
    truncated_ss_with(stem, None)
}

pub fn truncated_ss_with<G: WindowModel>(stem: &Stem<G>, choices: Option<ChaseChoices>) -> Result<TruncatedSS, TruncationError> {
    let range = stem.windows.iter().map(|g| g.grid_max_s()).max().unwrap_or(0) + 2;
    let sys = spiral_system(stem, range)?;
    let (grading, display) = layout(sys.kind);
    let r = stem.order;

    let mut coords = BTreeMap::new();
    let mut entries = BTreeMap::new();
    for w in &sys.windows {
        let u = w.k as i64;
        for (a, v) in w.couple.e_support() {
            if v != u {
                continue;
            }
            let p = display(a, u);
            coords.insert(p, (a, u));
            entries.insert(p, Subquotient::whole(&w.couple.e_group(a, u)));
        }
    }

    let mut chase = Chase { sys: &sys, rng: choices.map(|c| ChaCha8Rng::seed_from_u64(c.seed)) };
    let mut pages: Vec<Page> = Vec::new();
    for m in 1..=r + 1 {
        if m > 1 {
            let prev = pages.last().expect("previous page");
            entries = prev
                .entries
                .iter()
                .map(|(&p, e)| {
                    let (sub, den) = homology_lattices(grading, prev, p, e);
                    (p, Subquotient::new(e.ambient().clone(), sub, den).expect("Ker d contains Im d"))
                })
                .collect();
        }
        let mut diffs = BTreeMap::new();
        for (&p, src) in &entries {
            let q = grading.target(p, m);
            let Some(tgt) = entries.get(&q) else { continue };
            let (a, u) = coords[&p];
            let fail = |reason: String| TruncationError::Chase(PageFailure { r: m, pos: p, reason });
            let mut cols = Vec::new();
            for l in src.lifts() {
                let mut x = l.clone();
                if let Some(rng) = chase.rng.as_mut() {
                    perturb(rng, &mut x, src.den().basis());
                }
                let y = chase.run(m, a, u, &x).map_err(|s| fail(s.to_string()))?;
                cols.push(tgt.coords(&y).ok_or_else(|| fail("d lands outside the target page".into()))?);
            }
            let d = AbHom::from_columns(src.value().clone(), tgt.value().clone(), &cols)
                .map_err(|e| fail(format!("d is not well defined: {e}")))?;
            diffs.insert(p, d);
        }
        pages.push(Page { r: m, entries: entries.clone(), diffs });
    }

    let last = pages.last().expect("at least one page");
    let mut obstruction = BTreeMap::new();
    for (&p, d) in &last.diffs {
        if let Some(d2) = last.diffs.get(&grading.target(p, last.r)) {
            let dd = d.then(d2).expect("composable");
            if !dd.is_zero() {
                obstruction.insert(p, dd);
            }
        }
    }
    let next = obstruction.is_empty().then(|| Page {
        r: r + 2,
        entries: last
            .entries
            .iter()
            .map(|(&p, e)| {
                let (sub, den) = homology_lattices(grading, last, p, e);
                (p, Subquotient::new(e.ambient().clone(), sub, den).expect("d squares to zero"))
            })
            .collect(),
        diffs: BTreeMap::new(),
    });
    Ok(TruncatedSS { order: r, grading, pages, obstruction, next, coords, system: sys })
}

impl TruncatedSS {
    pub fn page(&self, m: usize) -> &Page {
        &self.pages[m - 1]
    }

    pub fn is_closed(&self) -> bool {
        self.obstruction.is_empty()
    }

    /// True if both sequences have the same differentials on every page.
    pub fn same_pages(&self, other: &TruncatedSS) -> bool {
        self.pages.len() == other.pages.len()
            && self.pages.iter().zip(&other.pages).all(|(x, y)| {
                x.diffs == y.diffs
                    && x.entries.len() == y.entries.len()
                    && x.entries.iter().zip(&y.entries).all(|((p, e), (q, f))| p == q && e.same_as(f))
            })
    }

    /// The boundaries of `E^{r+2}` read off the spiral sequence: at `(b, w)` with
    /// `u = w - r`, `Ker(σ : π^♮_{b,w} -> π^♮_{b+r,u})` is `σ'^{-1}(Im ∂)` and
    /// `h(Ker σ) + B^2` is `B^{r+1} + Im d^{r+1}`.
    pub fn check_boundaries(&self) -> Result<(), PageFailure> {
        let r = self.order;
        let last = self.pages.last().expect("at least one page");
        for (&q, e) in &last.entries {
            let (b, w) = self.coords[&q];
            if w < r as i64 {
                continue;
            }
            let fail = |reason: &str| PageFailure { r: r + 2, pos: q, reason: reason.to_string() };
            let u = w - r as i64;
            let a = b + r as i64 + 1;
            let c = self.system.couple(u as usize);
            let ker = s_power(c, b, w, r).kernel_lattice();
            if r >= 1 {
                let sp = sigma(c, a, u, r + 1);
                let im = boundary_map(c, a, u).image_lattice();
                let pre = im.preimage(sp.matrix()).with_generators(&sp.domain().relation_vectors());
                if !ker.same_as(&pre) {
                    return Err(fail("Ker σ differs from σ'^{-1}(Im ∂)"));
                }
            }
            let e2 = e2_sq(c, b, w);
            let h = h_map(c, b, w);
            let t = self.system.transport_e1(w as usize, u as usize, b, w);
            let back = t.inverse().map_err(|_| fail("window maps are not isomorphisms on E^1"))?;
            let mut gens: Vec<Vec<Int>> = ker.basis().iter().map(|v| back.apply(&e2.lift(&h.apply(v)))).collect();
            gens.extend(e2.den().basis().iter().map(|v| back.apply(v)));
            gens.extend(e.ambient().relation_vectors());
            let found = Lattice::from_generators(e.ambient().ngens(), gens);
            let (_, den) = homology_lattices(self.grading, last, q, e);
            if !found.same_as(&den) {
                return Err(fail("h(Ker σ) + B^2 differs from the boundaries of E^{r+2}"));
            }
        }
        Ok(())
    }

    /// Rebased onto the `E^1` of a realization, as full pages with an empty abutment.
    fn rebase<G: WindowModel>(&self, stem: &Stem<G>) -> Option<(SpectralPages, SpectralPages)> {
        let real = stem.realization.as_ref()?;
        let source = real.source.window_couple();
        let (_, display) = layout(self.system.kind);
        let mut links: BTreeMap<Pos, (Subquotient, AbHom)> = BTreeMap::new();
        for (&p, &(a, u)) in &self.coords {
            let home = self.system.couple(u as usize);
            let (Some(he), Some(col)) = (home.e_sq(a, u), home.column(a)) else { continue };
            let part = &real.parts[u as usize][&(col, u as usize)];
            let full = source.e_group(a, u);
            let cols: Vec<Vec<Int>> = he
                .lifts()
                .iter()
                .map(|l| source.e_sq(a, u).and_then(|se| se.coords(&part.lift(l))).unwrap_or_else(|| full.zero_elem()))
                .collect();
            let link = AbHom::from_columns(he.value().clone(), full.clone(), &cols).ok()?;
            links.insert(p, (Subquotient::whole(&full), link));
        }
        let rebase_entry = |p: &Pos, e: &Subquotient| -> Option<(Subquotient, AbHom)> {
            let (whole, link) = links.get(p)?;
            let amb = whole.ambient();
            let m = link.matrix();
            let sub = e.sub().basis().iter().map(|v| m.mul_vec(v)).collect();
            let den = e.den().basis().iter().map(|v| m.mul_vec(v)).collect();
            let n = Subquotient::from_generators(amb.clone(), sub, den).ok()?;
            let conv = e.induced_unchecked(m, &n);
            Some((n, conv))
        };
        let mut pages = Vec::new();
        for page in &self.pages {
            let mut entries = BTreeMap::new();
            let mut convs = BTreeMap::new();
            for (p, e) in &page.entries {
                let (n, conv) = rebase_entry(p, e)?;
                entries.insert(*p, n);
                convs.insert(*p, conv);
            }
            let mut diffs = BTreeMap::new();
            for (p, d) in &page.diffs {
                let q = self.grading.target(*p, page.r);
                let inv = convs[p].inverse().ok()?;
                let f = inv.then(d).ok()?.then(&convs[&q]).ok()?;
                diffs.insert(*p, f);
            }
            pages.push(Page { r: page.r, entries, diffs });
        }
        let e1 = pages[0].entries.iter().map(|(&p, e)| (p, e.ambient().clone())).collect();
        let truncated = SpectralPages { grading: self.grading, e1, pages, abutment: Abutment::default() };
        let full = SpectralPages::from_couple(&source, self.grading, self.order + 1, display);
        Some((truncated, full))
    }
}

/// Pages `1..=r+1` of a realizable stem against the full sequence of its source.
/// `None` when the stem carries no realization.
pub fn compare_with_source<G: WindowModel>(t: &TruncatedSS, stem: &Stem<G>) -> Option<Result<Agreement, PageFailure>> {
    let (truncated, full) = t.rebase(stem)?;
    Some(compare_pages(&truncated, &full, 1, t.order + 1))
}

/// Group invariants of two truncated sequences on pages `1..=to`.
pub fn compare_invariants(x: &TruncatedSS, y: &TruncatedSS, to: usize) -> Result<(), PageFailure> {
    for m in 1..=to {
        let (px, py) = (x.page(m), y.page(m));
        let positions: BTreeSet<Pos> = px.entries.keys().chain(py.entries.keys()).copied().collect();
        for p in positions {
            let (gx, gy) = (px.group(p), py.group(p));
            if gx.invariants() != gy.invariants() {
                return Err(PageFailure { r: m, pos: p, reason: format!("{gx} against {gy}") });
            }
        }
    }
    Ok(())
}

/// The obstruction groups as `(source, target, image)` triples.
pub fn obstruction_images(t: &TruncatedSS) -> Vec<(Pos, Pos, FgAbGroup)> {
    let r = t.order + 1;
    t.obstruction
        .iter()
        .map(|(&p, d)| (p, t.grading.target(t.grading.target(p, r), r), d.image().value().clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stems::examples::{spliced_stem, staircase};
    use crate::stems::{costem_of, stem_forget, stem_of_chains};

    #[test]
    fn witness_truncation_matches_the_source() {
        for r in 0..=2 {
            let s = stem_of_chains(&staircase(2, 0), r);
            let t = truncated_ss(&s).unwrap();
            assert!(t.is_closed());
            let agree = compare_with_source(&t, &s).unwrap().unwrap();
            assert_eq!(agree.signs.len(), r + 1);
            t.check_boundaries().unwrap();
        }
        let t = truncated_ss(&stem_of_chains(&staircase(2, 0), 1)).unwrap();
        assert!(t.page(2).diffs[&(2, 0)].is_iso());
    }

    #[test]
    fn spliced_obstruction_is_nonzero() {
        let t = truncated_ss(&spliced_stem()).unwrap();
        assert!(!t.is_closed());
        let obs = obstruction_images(&t);
        assert_eq!(obs.len(), 1);
        let (src, tgt, img) = &obs[0];
        assert_eq!((*src, *tgt), ((4, 0), (0, 2)));
        assert_eq!(img.rank(), 1);
        assert!(t.next.is_none());
    }

    #[test]
    fn lift_choices_do_not_matter() {
        let stems = [stem_of_chains(&staircase(3, 0), 2), spliced_stem()];
        for s in &stems {
            let base = truncated_ss(s).unwrap();
            for seed in 0..8 {
                let other = truncated_ss_with(s, Some(ChaseChoices { seed })).unwrap();
                assert!(base.same_pages(&other), "seed {seed}");
            }
        }
    }

    #[test]
    fn forgetting_keeps_the_lower_pages() {
        let s = stem_of_chains(&staircase(3, 0), 2);
        let t2 = truncated_ss(&s).unwrap();
        let t1 = truncated_ss(&stem_forget(&s, 1)).unwrap();
        compare_invariants(&t1, &t2, 2).unwrap();
    }

    #[test]
    fn cosimplicial_truncation() {
        let k = crate::simplicial::CochainBuilder::new()
            .free(0, 0, 1)
            .free(1, 0, 1)
            .free(1, 1, 1)
            .free(2, 1, 1)
            .dh(0, 0, vec![vec![1]])
            .dv(1, 1, vec![vec![1]])
            .dh(1, 1, vec![vec![1]])
            .build()
            .unwrap();
        let s = costem_of(&k, 1);
        let t = truncated_ss(&s).unwrap();
        let agree = compare_with_source(&t, &s).unwrap().unwrap();
        assert_eq!(agree.signs.len(), 2);
        assert!(t.page(2).diffs.values().any(|d| !d.is_zero()));
    }
}
