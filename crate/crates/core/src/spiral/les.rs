//! The spiral long exact sequence
//! `... -> (Ωπ^♮_{n-1})_t -s-> π^♮_{n,t} -h-> π_nπ_t -∂-> (Ωπ^♮_{n-2})_t -> ...`,
//! one row per internal degree. `(ΩT)_j = T_{j+1}`, so `(Ωπ^♮_m)_t` is the node
//! `Natural { a: m, u: t + 1 }`.

use std::collections::BTreeMap;

use crate::simplicial::{BisimplicialAb, CochainBicomplex, SimplicialSpace};
use crate::zmod::{check_exact, AbHom, Subquotient};

use super::cotower::TotCouple;
use super::couple::ExactCouple;
use super::natural::{boundary_map, e2_sq, h_map, natural_sq, s_map};
use super::tower::SpiralCouple;

/// A node in couple coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum LesNode {
    Natural { a: i64, u: i64 },
    E2 { a: i64, u: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LesKind {
    Simplicial,
    Cosimplicial,
}

impl LesNode {
    /// Display label with the indexing of the sequence's kind.
    pub fn label(&self, kind: LesKind, row: i64) -> String {
        match (kind, *self) {
            (LesKind::Simplicial, LesNode::Natural { a, u }) if u == row => format!("π♮_{{{a},{u}}}"),
            (LesKind::Simplicial, LesNode::Natural { a, u }) => format!("(Ωπ♮_{a})_{}", u - 1),
            (LesKind::Simplicial, LesNode::E2 { a, u }) => format!("π_{a}π_{u}"),
            // (π_♮^n)_i = π^♮_{-n-1, i+1}
            (LesKind::Cosimplicial, LesNode::Natural { a, u }) => format!("π♮^{{{},{}}}", -a - 1, u - 1),
            (LesKind::Cosimplicial, LesNode::E2 { a, u }) => format!("π^{}π_{u}", 1 - a),
        }
    }
}

/// One row: `maps[i] : groups[i] -> groups[i + 1]`.
#[derive(Clone, Debug)]
pub struct LesRow {
    pub nodes: Vec<LesNode>,
    pub groups: Vec<Subquotient>,
    pub maps: Vec<AbHom>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inexact {
    pub row: i64,
    pub node: LesNode,
}

#[derive(Clone, Debug)]
pub struct SpiralLes {
    pub kind: LesKind,
    pub range: usize,
    pub rows: BTreeMap<i64, LesRow>,
}

impl SpiralLes {
    /// Exactness at every interior node of every row.
    pub fn check_exact(&self) -> Result<(), Inexact> {
        for (&row, r) in &self.rows {
            let v = check_exact(&r.maps).expect("consecutive maps compose");
            if let Some(i) = v.first_failure {
                return Err(Inexact { row, node: r.nodes[i] });
            }
        }
        Ok(())
    }

    fn find(&self, node: LesNode, row: i64) -> Option<&AbHom> {
        let r = self.rows.get(&row)?;
        r.nodes.iter().position(|&x| x == node).and_then(|i| r.maps.get(i))
    }

    /// `s : (Ωπ^♮_{n-1})_t -> π^♮_{n,t}` (simplicial indexing).
    pub fn s(&self, n: i64, t: i64) -> Option<&AbHom> {
        self.find(LesNode::Natural { a: n - 1, u: t + 1 }, t)
    }

    /// `h : π^♮_{n,t} -> π_nπ_t`.
    pub fn h(&self, n: i64, t: i64) -> Option<&AbHom> {
        self.find(LesNode::Natural { a: n, u: t }, t)
    }

    /// `∂ : π_nπ_t -> (Ωπ^♮_{n-2})_t`.
    pub fn boundary(&self, n: i64, t: i64) -> Option<&AbHom> {
        self.find(LesNode::E2 { a: n, u: t }, t)
    }

    /// True if every `h_0` is an isomorphism.
    pub fn h0_is_iso(&self) -> bool {
        self.rows.keys().all(|&t| self.h(0, t).map_or(true, |h| h.is_iso()))
    }
}

/// The row of internal degree `u`: `Natural{top-1, u+1}`, then for `a = top..=bottom`
/// the triple `Natural{a, u}`, `E2{a, u}`, `Natural{a-2, u+1}`.
fn row<C: ExactCouple + ?Sized>(c: &C, u: i64, top: i64, bottom: i64) -> LesRow {
    let mut nodes = vec![LesNode::Natural { a: top - 1, u: u + 1 }];
    let mut maps = Vec::new();
    for a in (bottom..=top).rev() {
        maps.push(s_map(c, a, u));
        maps.push(h_map(c, a, u));
        maps.push(boundary_map(c, a, u));
        nodes.push(LesNode::Natural { a, u });
        nodes.push(LesNode::E2 { a, u });
        nodes.push(LesNode::Natural { a: a - 2, u: u + 1 });
    }
    let groups = nodes
        .iter()
        .map(|n| match *n {
            LesNode::Natural { a, u } => natural_sq(c, a, u),
            LesNode::E2 { a, u } => e2_sq(c, a, u),
        })
        .collect();
    LesRow { nodes, groups, maps }
}

/// Rows `t = 0..=range`, simplicial degrees `range` down to `0`.
pub fn spiral_les(x: &BisimplicialAb, range: usize) -> SpiralLes {
    spiral_les_of_space(&x.vertical_normalize(), range)
}

pub fn spiral_les_of_space(x: &SimplicialSpace, range: usize) -> SpiralLes {
    spiral_les_of_couple(&SpiralCouple::new(&x.normalized().bicomplex), range)
}

pub fn spiral_les_of_couple(c: &SpiralCouple, range: usize) -> SpiralLes {
    let n = range as i64;
    les_of_couple(c, LesKind::Simplicial, range, 0..=n, n, 0)
}

/// Rows `rows`, couple degrees `a` from `top` down to `bottom`.
pub(crate) fn les_of_couple<C: ExactCouple + ?Sized>(
    c: &C,
    kind: LesKind,
    range: usize,
    rows: std::ops::RangeInclusive<i64>,
    top: i64,
    bottom: i64,
) -> SpiralLes {
    let rows = rows.map(|u| (u, row(c, u, top, bottom))).collect();
    SpiralLes { kind, range, rows }
}

/// The dual sequence of the Tot tower, cosimplicial degrees `0..=range`, internal
/// degrees `0..=range`.
pub fn cospiral_les(k: &CochainBicomplex, range: usize) -> SpiralLes {
    cospiral_les_of_couple(&TotCouple::new(k), range)
}

pub fn cospiral_les_of_couple(c: &TotCouple, range: usize) -> SpiralLes {
    let n = range as i64;
    les_of_couple(c, LesKind::Cosimplicial, range, 0..=n, 1, 1 - n)
}
