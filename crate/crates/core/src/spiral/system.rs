//! The spiral system of a stem: one spiral sequence per window, and the maps between
//! adjacent windows induced by the window maps.

use std::collections::BTreeMap;

use crate::simplicial::{Bicomplex, Bideg, CochainBicomplex};
use crate::stems::{stem_validate, Grid, Stem, StemViolation};
use crate::zmod::{AbHom, Subquotient};

use super::cotower::TotCouple;
use super::couple::ExactCouple;
use super::les::{les_of_couple, Inexact, LesKind, SpiralLes};
use super::natural::{e2_sq, natural_sq};
use super::tower::SpiralCouple;

/// The exact couple of one window.
#[derive(Clone, Debug)]
pub enum WindowCouple {
    Tower(SpiralCouple),
    Tot(TotCouple),
}

impl WindowCouple {
    /// The grid column of couple degree `a`.
    pub fn column(&self, a: i64) -> Option<usize> {
        let s = match self {
            WindowCouple::Tower(_) => a,
            WindowCouple::Tot(_) => 1 - a,
        };
        (s >= 0).then_some(s as usize)
    }
}

macro_rules! delegate {
    ($self:ident, $c:ident => $e:expr) => {
        match $self {
            WindowCouple::Tower($c) => $e,
            WindowCouple::Tot($c) => $e,
        }
    };
}

impl ExactCouple for WindowCouple {
    fn d_sq(&self, a: i64, u: i64) -> Option<&Subquotient> {
        delegate!(self, c => c.d_sq(a, u))
    }
    fn e_sq(&self, a: i64, u: i64) -> Option<&Subquotient> {
        delegate!(self, c => c.e_sq(a, u))
    }
    fn i(&self, a: i64, u: i64) -> AbHom {
        delegate!(self, c => c.i(a, u))
    }
    fn j(&self, a: i64, u: i64) -> AbHom {
        delegate!(self, c => c.j(a, u))
    }
    fn k(&self, a: i64, u: i64) -> AbHom {
        delegate!(self, c => c.k(a, u))
    }
    fn e_support(&self) -> Vec<(i64, i64)> {
        delegate!(self, c => c.e_support())
    }
}

/// Grids whose windows carry a spiral couple.
pub trait WindowModel: Grid {
    const KIND: LesKind;
    fn window_couple(&self) -> WindowCouple;
    /// Couple degrees `(top, bottom)` covering simplicial degrees `0..=range`.
    fn a_range(range: usize) -> (i64, i64);
    /// Couple degree of grid column `s`.
    fn couple_degree(s: usize) -> i64;
}

impl WindowModel for Bicomplex {
    const KIND: LesKind = LesKind::Simplicial;
    fn window_couple(&self) -> WindowCouple {
        WindowCouple::Tower(SpiralCouple::new(self))
    }
    fn a_range(range: usize) -> (i64, i64) {
        (range as i64, 0)
    }
    fn couple_degree(s: usize) -> i64 {
        s as i64
    }
}

impl WindowModel for CochainBicomplex {
    const KIND: LesKind = LesKind::Cosimplicial;
    fn window_couple(&self) -> WindowCouple {
        WindowCouple::Tot(TotCouple::new(self))
    }
    fn a_range(range: usize) -> (i64, i64) {
        (1, 1 - range as i64)
    }
    fn couple_degree(s: usize) -> i64 {
        1 - s as i64
    }
}

#[derive(Clone, Debug)]
pub struct SystemWindow {
    pub k: usize,
    pub couple: WindowCouple,
    /// Rows `k..=n+k` (absolute internal degrees).
    pub les: SpiralLes,
}

#[derive(Clone, Debug)]
pub struct SpiralSystem {
    pub order: usize,
    pub horizon: usize,
    pub range: usize,
    pub kind: LesKind,
    pub windows: Vec<SystemWindow>,
    maps: Vec<BTreeMap<Bideg, AbHom>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SystemFailure {
    Inexact { window: usize, at: Inexact },
    /// `π^♮_{a,u}` of window `k` is nonzero in internal degree `u - k > n`.
    NotVanishing { window: usize, a: i64, u: i64 },
    /// The comparison of windows `k` and `k-1` is not an isomorphism on `E^2_{a,u}`.
    NoComparison { window: usize, a: i64, u: i64 },
}

impl SpiralSystem {
    pub fn window(&self, k: usize) -> Option<&SystemWindow> {
        self.windows.get(k)
    }

    pub fn couple(&self, k: usize) -> &WindowCouple {
        &self.windows[k].couple
    }

    fn a_bounds(&self) -> (i64, i64) {
        match self.kind {
            LesKind::Simplicial => Bicomplex::a_range(self.range),
            LesKind::Cosimplicial => CochainBicomplex::a_range(self.range),
        }
    }

    /// The window map on `E^1_{a,u}`, window `k` to window `k-1`.
    pub fn q_e1(&self, k: usize, a: i64, u: i64) -> AbHom {
        let (x, y) = (self.couple(k), self.couple(k - 1));
        let (src, dst) = (x.e_group(a, u), y.e_group(a, u));
        let (Some(ex), Some(ey), Some(col)) = (x.e_sq(a, u), y.e_sq(a, u), x.column(a)) else {
            return AbHom::zero(src, dst);
        };
        match self.maps[k].get(&(col, u as usize)) {
            Some(f) => ex.induced_unchecked(f.matrix(), ey),
            None => AbHom::zero(src, dst),
        }
    }

    /// Composite of window maps on `E^1_{a,u}`, window `from` down to window `to`.
    pub fn transport_e1(&self, from: usize, to: usize, a: i64, u: i64) -> AbHom {
        let mut f = AbHom::identity(&self.couple(from).e_group(a, u));
        for k in ((to + 1)..=from).rev() {
            f = f.then(&self.q_e1(k, a, u)).expect("composable");
        }
        f
    }

    /// The window map on `E^2_{a,u}`.
    pub fn q_e2(&self, k: usize, a: i64, u: i64) -> AbHom {
        let f = self.q_e1(k, a, u);
        e2_sq(self.couple(k), a, u).induced_unchecked(f.matrix(), &e2_sq(self.couple(k - 1), a, u))
    }

    /// Exactness of every window sequence, vanishing above the order, and the
    /// comparison isomorphisms on the overlaps.
    pub fn check(&self) -> Result<(), SystemFailure> {
        for w in &self.windows {
            w.les.check_exact().map_err(|at| SystemFailure::Inexact { window: w.k, at })?;
        }
        self.check_vanishing()?;
        let (top, bottom) = self.a_bounds();
        for k in 1..self.windows.len() {
            for u in k..(self.order + k) {
                for a in bottom..=top {
                    if !self.q_e2(k, a, u as i64).is_iso() {
                        return Err(SystemFailure::NoComparison { window: k, a, u: u as i64 });
                    }
                }
            }
        }
        Ok(())
    }

    /// `π^♮` of window `k` vanishes in internal degrees above `n`, for all
    /// simplicial degrees in range and `range` internal degrees beyond `n`.
    pub fn check_vanishing(&self) -> Result<(), SystemFailure> {
        let (top, bottom) = self.a_bounds();
        for w in &self.windows {
            let lo = (self.order + w.k + 1) as i64;
            for u in lo..=lo + self.range as i64 {
                for a in bottom..=top {
                    if !natural_sq(&w.couple, a, u).value().is_trivial() {
                        return Err(SystemFailure::NotVanishing { window: w.k, a, u });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Spiral system of a valid stem, simplicial degrees `0..=range`.
pub fn spiral_system<G: WindowModel>(stem: &Stem<G>, range: usize) -> Result<SpiralSystem, StemViolation> {
    if let Some(v) = stem_validate(stem).violation {
        return Err(v);
    }
    let (top, bottom) = G::a_range(range);
    let n = stem.order as i64;
    let windows = stem
        .windows
        .iter()
        .enumerate()
        .map(|(k, g)| {
            let couple = g.window_couple();
            let k64 = k as i64;
            let les = les_of_couple(&couple, G::KIND, range, k64..=k64 + n, top, bottom);
            SystemWindow { k, couple, les }
        })
        .collect();
    Ok(SpiralSystem {
        order: stem.order,
        horizon: stem.horizon,
        range,
        kind: G::KIND,
        windows,
        maps: stem.maps.clone(),
    })
}
