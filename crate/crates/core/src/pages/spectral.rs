//! Pages of a spectral sequence stored as subquotients of `E^1`.

use std::collections::BTreeMap;

use crate::spiral::ExactCouple;
use crate::zmod::{AbHom, FgAbGroup, Int, Lattice, Subquotient};

/// Page position `(s, t)`.
pub type Pos = (i64, i64);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    /// `d^r : (s, t) -> (s - r, t + r - 1)`, abutting to degree `s + t`.
    Homological,
    /// `d_r : (s, t) -> (s + r, t + r - 1)`, abutting to degree `t - s`.
    Cohomological,
}

impl Grading {
    pub fn target(self, (s, t): Pos, r: usize) -> Pos {
        let r = r as i64;
        match self {
            Grading::Homological => (s - r, t + r - 1),
            Grading::Cohomological => (s + r, t + r - 1),
        }
    }

    pub fn source(self, (s, t): Pos, r: usize) -> Pos {
        let r = r as i64;
        match self {
            Grading::Homological => (s + r, t - r + 1),
            Grading::Cohomological => (s - r, t - r + 1),
        }
    }

    pub fn total_degree(self, (s, t): Pos) -> i64 {
        match self {
            Grading::Homological => s + t,
            Grading::Cohomological => t - s,
        }
    }

    /// The position of filtration `s` in total degree `m`.
    pub fn at_degree(self, m: i64, s: i64) -> Pos {
        match self {
            Grading::Homological => (s, m - s),
            Grading::Cohomological => (s, m + s),
        }
    }
}

/// One page: entries as subquotients of the `E^1` value groups, and the differentials
/// on their value groups. Differentials into a position with no `E^1` are omitted.
#[derive(Clone, Debug)]
pub struct Page {
    pub r: usize,
    pub entries: BTreeMap<Pos, Subquotient>,
    pub diffs: BTreeMap<Pos, AbHom>,
}

impl Page {
    pub fn group(&self, p: Pos) -> FgAbGroup {
        self.entries.get(&p).map(|e| e.value().clone()).unwrap_or_else(FgAbGroup::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.values().all(|e| e.value().is_trivial())
    }
}

/// Homology of the target with its filtration quotients, keyed by filtration index.
#[derive(Clone, Debug, Default)]
pub struct Abutment {
    pub degrees: BTreeMap<i64, AbutmentDegree>,
}

#[derive(Clone, Debug)]
pub struct AbutmentDegree {
    pub group: FgAbGroup,
    pub quotients: BTreeMap<i64, FgAbGroup>,
}

#[derive(Clone, Debug)]
pub struct SpectralPages {
    pub grading: Grading,
    pub e1: BTreeMap<Pos, FgAbGroup>,
    /// `pages[r - 1]` is `E^r`.
    pub pages: Vec<Page>,
    pub abutment: Abutment,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PageFailure {
    pub r: usize,
    pub pos: Pos,
    pub reason: String,
}

impl SpectralPages {
    /// Pages `1..=max_page` of an exact couple; `display` sends couple indices `(a, u)`
    /// to page positions.
    pub fn from_couple<C: ExactCouple + ?Sized>(
        c: &C,
        grading: Grading,
        max_page: usize,
        display: impl Fn(i64, i64) -> Pos,
    ) -> SpectralPages {
        let support = c.e_support();
        let mut e1 = BTreeMap::new();
        for &(a, u) in &support {
            e1.insert(display(a, u), c.e_group(a, u));
        }
        let mut pages = Vec::new();
        for r in 1..=max_page.max(1) {
            let mut entries = BTreeMap::new();
            for &(a, u) in &support {
                let g = c.e_group(a, u);
                let sq = Subquotient::new(g, c.z_lattice(a, u, r), c.b_lattice(a, u, r)).expect("B^r sits in Z^r");
                entries.insert(display(a, u), sq);
            }
            let mut diffs = BTreeMap::new();
            for &(a, u) in &support {
                let (tgt_a, tgt_u) = (a - r as i64, u + r as i64 - 1);
                let (src, tgt) = (display(a, u), display(tgt_a, tgt_u));
                let Some(target) = entries.get(&tgt) else { continue };
                let source = &entries[&src];
                let cols: Vec<Vec<Int>> = source
                    .lifts()
                    .iter()
                    .map(|x| {
                        let y = c.dr_rep(a, u, r, x).expect("Z^r lifts through i^{r-1}");
                        target.coords(&y).expect("d^r lands in Z^r")
                    })
                    .collect();
                let d = AbHom::from_columns(source.value().clone(), target.value().clone(), &cols)
                    .expect("d^r is well defined on E^r");
                diffs.insert(src, d);
            }
            pages.push(Page { r, entries, diffs });
        }
        SpectralPages { grading, e1, pages, abutment: Abutment::default() }
    }

    pub fn max_page(&self) -> usize {
        self.pages.len()
    }

    pub fn page(&self, r: usize) -> &Page {
        &self.pages[r - 1]
    }

    pub fn group(&self, r: usize, p: Pos) -> FgAbGroup {
        self.page(r).group(p)
    }

    /// `d^r` out of `p`, or `None` if source or target is absent.
    pub fn d(&self, r: usize, p: Pos) -> Option<&AbHom> {
        self.page(r).diffs.get(&p)
    }

    pub fn last(&self) -> &Page {
        self.pages.last().expect("at least one page")
    }

    /// `d^r ∘ d^r = 0` on every page.
    pub fn check_d_squared(&self) -> Result<(), PageFailure> {
        for page in &self.pages {
            for (&p, d) in &page.diffs {
                let q = self.grading.target(p, page.r);
                if let Some(d2) = page.diffs.get(&q) {
                    let dd = d.then(d2).expect("composable");
                    if !dd.is_zero() {
                        return Err(PageFailure { r: page.r, pos: p, reason: "d∘d is nonzero".into() });
                    }
                }
            }
        }
        Ok(())
    }

    /// `E^{r+1} = Ker d^r / Im d^r` as subquotients of `E^1`, for every stored page pair.
    pub fn check_homology_steps(&self) -> Result<(), PageFailure> {
        for w in self.pages.windows(2) {
            let (cur, next) = (&w[0], &w[1]);
            for (&p, e) in &cur.entries {
                let (k, i) = homology_lattices(self.grading, cur, p, e);
                let n = &next.entries[&p];
                if !k.same_as(n.sub()) || !i.same_as(n.den()) {
                    return Err(PageFailure { r: next.r, pos: p, reason: "E^{r+1} differs from H(E^r, d^r)".into() });
                }
            }
        }
        Ok(())
    }

    /// Compares `E^∞` (the last page) with the filtration quotients of the abutment.
    pub fn check_convergence(&self) -> Result<(), PageFailure> {
        let last = self.last();
        let all_degrees: std::collections::BTreeSet<i64> = last
            .entries
            .iter()
            .filter(|(_, e)| !e.value().is_trivial())
            .map(|(&p, _)| self.grading.total_degree(p))
            .chain(self.abutment.degrees.keys().copied())
            .collect();
        for m in all_degrees {
            let empty = BTreeMap::new();
            let quotients = self.abutment.degrees.get(&m).map(|d| &d.quotients).unwrap_or(&empty);
            let filtrations: std::collections::BTreeSet<i64> = last
                .entries
                .keys()
                .filter(|&&p| self.grading.total_degree(p) == m)
                .map(|p| p.0)
                .chain(quotients.keys().copied())
                .collect();
            for s in filtrations {
                let pos = self.grading.at_degree(m, s);
                let e = last.group(pos);
                let q = quotients.get(&s).cloned().unwrap_or_else(FgAbGroup::zero);
                if e.invariants() != q.invariants() {
                    return Err(PageFailure {
                        r: last.r,
                        pos,
                        reason: format!("E^∞ is {e} but the filtration quotient is {q}"),
                    });
                }
            }
        }
        Ok(())
    }
}

/// Kernel of the outgoing `d^r` and image of the incoming one, as lattices in `E^1`
/// coordinates containing the denominator of `E^r`.
pub(crate) fn homology_lattices(grading: Grading, page: &Page, p: Pos, e: &Subquotient) -> (Lattice, Lattice) {
    let dim = e.ambient().ngens();
    let mut den: Vec<Vec<Int>> = e.den().basis().to_vec();
    let ker = match page.diffs.get(&p) {
        Some(d) => d.kernel_lattice(),
        None => Lattice::full(e.value().ngens()),
    };
    let mut sub: Vec<Vec<Int>> = ker.basis().iter().map(|v| e.lift(v)).collect();
    sub.extend(den.iter().cloned());
    let q = grading.source(p, page.r);
    if let (Some(din), Some(src)) = (page.diffs.get(&q), page.entries.get(&q)) {
        for l in 0..src.value().ngens() {
            let mut x = vec![Int::ZERO; src.value().ngens()];
            x[l] = Int::ONE;
            den.push(e.lift(&din.apply(&x)));
        }
    }
    (Lattice::from_generators(dim, sub), Lattice::from_generators(dim, den))
}

/// Verdict of a page-by-page comparison of two spectral sequences on the same `E^1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Agreement {
    /// Per page, the sign `ε` with `d_first = ε d_second` (`1` when all differentials vanish).
    pub signs: Vec<i64>,
}

/// Compares pages `from..=to` entry by entry (same subgroups of `E^1`) and the
/// differentials up to one sign per page.
pub fn compare_pages(
    a: &SpectralPages,
    b: &SpectralPages,
    from: usize,
    to: usize,
) -> Result<Agreement, PageFailure> {
    let mut signs = Vec::new();
    for r in from..=to {
        let (pa, pb) = (a.page(r), b.page(r));
        let positions: std::collections::BTreeSet<Pos> = pa
            .entries
            .iter()
            .chain(pb.entries.iter())
            .filter(|(_, e)| !e.value().is_trivial())
            .map(|(&p, _)| p)
            .collect();
        let mut sign: Option<i64> = None;
        for &p in &positions {
            let fail = |reason: &str| PageFailure { r, pos: p, reason: reason.to_string() };
            let (Some(ea), Some(eb)) = (pa.entries.get(&p), pb.entries.get(&p)) else {
                return Err(fail("entry present on one side only"));
            };
            if ea.ambient() != eb.ambient() || !ea.sub().same_as(eb.sub()) || !ea.den().same_as(eb.den()) {
                return Err(fail("entries are different subquotients of E^1"));
            }
            let q = a.grading.target(p, r);
            let Some(tgt) = pa.entries.get(&q) else { continue };
            if tgt.value().is_trivial() {
                continue;
            }
            let (Some(da), Some(db), Some(tgt_b)) = (pa.diffs.get(&p), pb.diffs.get(&p), pb.entries.get(&q)) else {
                return Err(fail("differential present on one side only"));
            };
            for l in 0..ea.value().ngens() {
                let x = ea.lift_gen(l).to_vec();
                let ya = da.apply(&ea.coords(&x).expect("generator"));
                let yb = db.apply(&eb.coords(&x).expect("same subgroup"));
                let (ya, yb) = (tgt.lift(&ya), tgt_b.lift(&yb));
                let zero_a = tgt.is_zero_class(&ya);
                let zero_b = tgt.is_zero_class(&yb);
                if zero_a && zero_b {
                    continue;
                }
                let sum: Vec<Int> = ya.iter().zip(&yb).map(|(u, v)| u + v).collect();
                let diff: Vec<Int> = ya.iter().zip(&yb).map(|(u, v)| u - v).collect();
                let plus = tgt.is_zero_class(&diff);
                let minus = tgt.is_zero_class(&sum);
                let eps = match (plus, minus, sign) {
                    (true, true, Some(s)) => s,
                    (true, true, None) => continue,
                    (true, false, _) => 1,
                    (false, true, _) => -1,
                    (false, false, _) => return Err(fail("differentials differ beyond a sign")),
                };
                match sign {
                    None => sign = Some(eps),
                    Some(s) if s != eps && !(plus && minus) => {
                        return Err(fail("differentials agree only up to a position-dependent sign"))
                    }
                    _ => {}
                }
            }
        }
        signs.push(sign.unwrap_or(1));
    }
    Ok(Agreement { signs })
}
