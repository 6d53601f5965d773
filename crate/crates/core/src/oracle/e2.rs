//! `π_s π_t` from the horizontal complex of column homologies, without the exact couple.

use std::collections::BTreeMap;

use crate::pages::Pos;
use crate::simplicial::{Bicomplex, CochainBicomplex};
use crate::zmod::{AbHom, ChainComplex, FgAbGroup, Subquotient};

fn row_homology(lo: i64, cols: &[Subquotient], maps: Vec<AbHom>) -> Vec<FgAbGroup> {
    let groups = cols.iter().map(|h| h.value().clone()).collect();
    let c = ChainComplex::new(lo, groups, maps).expect("induced maps square to zero");
    (0..cols.len() as i64).map(|i| c.homology(lo + i).value().clone()).collect()
}

/// Nonzero `π_s π_t` of the normalized chains, keyed by `(s, t)`.
pub fn pi_pi(b: &Bicomplex) -> BTreeMap<Pos, FgAbGroup> {
    let mut out = BTreeMap::new();
    let cols: Vec<ChainComplex> = (0..=b.max_s()).map(|s| b.column(s)).collect();
    for t in 0..=b.max_t() {
        let h: Vec<Subquotient> = cols.iter().map(|c| c.homology(t as i64)).collect();
        let maps = (1..h.len()).map(|s| h[s].induced(&b.dh(s, t), &h[s - 1]).expect("d^h is a chain map")).collect();
        for (s, g) in row_homology(0, &h, maps).into_iter().enumerate() {
            if !g.is_trivial() {
                out.insert((s as i64, t as i64), g);
            }
        }
    }
    out
}

/// Nonzero `π^s π_t` of a cochain bicomplex: cohomology of the rows of vertical homology.
pub fn copi_pi(k: &CochainBicomplex) -> BTreeMap<Pos, FgAbGroup> {
    let mut out = BTreeMap::new();
    let w = k.max_s();
    // row in homological form: degree -s
    let cols: Vec<ChainComplex> = (0..=w).rev().map(|s| k.column(s)).collect();
    for t in 0..=k.max_t() {
        let h: Vec<Subquotient> = cols.iter().map(|c| c.homology(t as i64)).collect();
        let maps = (1..h.len())
            .map(|i| {
                let s = w - i;
                h[i].induced(&k.dh(s, t), &h[i - 1]).expect("δ is a chain map")
            })
            .collect();
        for (i, g) in row_homology(-(w as i64), &h, maps).into_iter().enumerate() {
            if !g.is_trivial() {
                out.insert(((w - i) as i64, t as i64), g);
            }
        }
    }
    out
}
