//! JSON documents for double complexes, bisimplicial groups and stems.
//!
//! ```json
//! { "kind": "bicomplex",
//!   "entries": { "1,0": { "rank": 1, "torsion": [] } },
//!   "maps": { "h": { "1,0": [[1]] }, "v": {} } }
//! ```
//!
//! A group is `Z^rank` followed by cyclic generators of the listed orders; a map is
//! keyed by its source bidegree and given as a row-major integer matrix. Directions
//! are `h`, `v` for double complexes (`h` lowers `s` for `bicomplex`, raises it for
//! `cochain-bicomplex`) and `h_face_i`, `h_degen_j`, `v_face_i`, `v_degen_j` for
//! `bisimplicial`. A `stem` carries `variance`, `order`, a list of `windows` (each
//! with `entries` and `maps`) and `window_maps`, where entry `k - 1` is the map from
//! window `k` to window `k - 1`. Stems are read without a realization.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::simplicial::{Bicomplex, Bideg, BisimplicialAb, CochainBicomplex};
use crate::stems::{CosimplicialStem, Grid, SimplicialStem, Stem};
use crate::zmod::{AbHom, AlgebraError, FgAbGroup, Int, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error("{0}")]
    Invariant(String),
}

fn field(f: impl Into<String>, m: impl Into<String>) -> IoError {
    IoError::Field { field: f.into(), message: m.into() }
}

/// Structural errors are malformed input; everything else is a violated invariant.
fn classify(f: &str, e: AlgebraError) -> IoError {
    match e {
        AlgebraError::DimensionMismatch(m) => field(f, m),
        e => IoError::Invariant(e.to_string()),
    }
}

#[derive(Clone, Debug)]
pub enum AnyStem {
    Simplicial(SimplicialStem),
    Cosimplicial(CosimplicialStem),
}

#[derive(Clone, Debug)]
pub enum Object {
    Bicomplex(Bicomplex),
    Cochain(CochainBicomplex),
    Bisimplicial(BisimplicialAb),
    Stem(AnyStem),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Bicomplex(_) => "bicomplex",
            Object::Cochain(_) => "cochain-bicomplex",
            Object::Bisimplicial(_) => "bisimplicial",
            Object::Stem(_) => "stem",
        }
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
struct EntryDoc {
    rank: usize,
    #[serde(default)]
    torsion: Vec<Int>,
}

type MapTable = BTreeMap<String, Vec<Vec<Int>>>;

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridDoc {
    #[serde(default)]
    entries: BTreeMap<String, EntryDoc>,
    #[serde(default)]
    maps: BTreeMap<String, MapTable>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Doc {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    variance: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    order: Option<usize>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    entries: BTreeMap<String, EntryDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    maps: BTreeMap<String, MapTable>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    windows: Vec<GridDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    window_maps: Vec<MapTable>,
}

fn parse_key(f: &str, k: &str) -> Result<Bideg, IoError> {
    let bad = || field(f, format!("bidegree key {k:?} is not of the form \"s,t\""));
    let (a, b) = k.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn key((s, t): Bideg) -> String {
    format!("{s},{t}")
}

fn read_groups(f: &str, entries: &BTreeMap<String, EntryDoc>) -> Result<BTreeMap<Bideg, FgAbGroup>, IoError> {
    let mut out = BTreeMap::new();
    for (k, e) in entries {
        let p = parse_key(f, k)?;
        let mut orders = vec![Int::ZERO; e.rank];
        for o in &e.torsion {
            if o.is_negative() || o.is_zero() || o.is_one() {
                return Err(field(format!("{f}.{k}.torsion"), format!("order {o} is not at least 2")));
            }
            orders.push(o.clone());
        }
        out.insert(p, FgAbGroup::new(orders));
    }
    Ok(out)
}

fn read_matrix(f: &str, rows: &[Vec<Int>], dom: &FgAbGroup, cod: &FgAbGroup) -> Result<Matrix, IoError> {
    let (r, c) = (cod.ngens(), dom.ngens());
    if rows.len() != r || rows.iter().any(|x| x.len() != c) {
        return Err(field(f, format!("expected a {r}x{c} matrix")));
    }
    Ok(Matrix::from_int_rows(r, c, rows.to_vec()))
}

fn read_map(f: &str, rows: &[Vec<Int>], dom: &FgAbGroup, cod: &FgAbGroup) -> Result<AbHom, IoError> {
    let m = read_matrix(f, rows, dom, cod)?;
    AbHom::new(dom.clone(), cod.clone(), m).map_err(|e| classify(f, e))
}

fn group_at(g: &BTreeMap<Bideg, FgAbGroup>, p: Bideg) -> FgAbGroup {
    g.get(&p).cloned().unwrap_or_else(FgAbGroup::zero)
}

/// Maps of one direction; `target` sends a source bidegree to its target.
fn read_direction(
    f: &str,
    table: Option<&MapTable>,
    groups: &BTreeMap<Bideg, FgAbGroup>,
    target: impl Fn(Bideg) -> Option<Bideg>,
) -> Result<BTreeMap<Bideg, AbHom>, IoError> {
    let mut out = BTreeMap::new();
    for (k, rows) in table.into_iter().flatten() {
        let p = parse_key(f, k)?;
        let fk = format!("{f}.{k}");
        let q = target(p).ok_or_else(|| field(&fk, "map leaves the quadrant"))?;
        let h = read_map(&fk, rows, &group_at(groups, p), &group_at(groups, q))?;
        if !h.is_zero() {
            out.insert(p, h);
        }
    }
    Ok(out)
}

fn check_directions(f: &str, maps: &BTreeMap<String, MapTable>, allowed: &[&str]) -> Result<(), IoError> {
    match maps.keys().find(|d| !allowed.contains(&d.as_str())) {
        Some(d) => Err(field(f, format!("unknown direction {d:?}"))),
        None => Ok(()),
    }
}

fn read_bicomplex(f: &str, g: &GridDoc) -> Result<Bicomplex, IoError> {
    check_directions(&format!("{f}maps"), &g.maps, &["h", "v"])?;
    let groups = read_groups(&format!("{f}entries"), &g.entries)?;
    let dh = read_direction(&format!("{f}maps.h"), g.maps.get("h"), &groups, |(s, t)| (s > 0).then(|| (s - 1, t)))?;
    let dv = read_direction(&format!("{f}maps.v"), g.maps.get("v"), &groups, |(s, t)| (t > 0).then(|| (s, t - 1)))?;
    Bicomplex::new(groups, dh, dv).map_err(|e| classify(&format!("{f}maps"), e))
}

fn read_cochain(f: &str, g: &GridDoc) -> Result<CochainBicomplex, IoError> {
    check_directions(&format!("{f}maps"), &g.maps, &["h", "v"])?;
    let groups = read_groups(&format!("{f}entries"), &g.entries)?;
    let dh = read_direction(&format!("{f}maps.h"), g.maps.get("h"), &groups, |(s, t)| Some((s + 1, t)))?;
    let dv = read_direction(&format!("{f}maps.v"), g.maps.get("v"), &groups, |(s, t)| (t > 0).then(|| (s, t - 1)))?;
    CochainBicomplex::new(groups, dh, dv).map_err(|e| classify(&format!("{f}maps"), e))
}

fn direction_index(d: &str) -> Option<(bool, bool, usize)> {
    let (head, i) = d.rsplit_once('_')?;
    let i = i.parse().ok()?;
    match head {
        "h_face" => Some((true, true, i)),
        "h_degen" => Some((true, false, i)),
        "v_face" => Some((false, true, i)),
        "v_degen" => Some((false, false, i)),
        _ => None,
    }
}

fn read_bisimplicial(g: &GridDoc) -> Result<BisimplicialAb, IoError> {
    let groups = read_groups("entries", &g.entries)?;
    let stop = groups.keys().map(|p| p.0).max().unwrap_or(0);
    let ttop = groups.keys().map(|p| p.1).max().unwrap_or(0);
    for d in g.maps.keys() {
        if direction_index(d).is_none() {
            return Err(field("maps", format!("unknown direction {d:?}")));
        }
    }
    let grid: Vec<Vec<FgAbGroup>> = (0..=stop).map(|s| (0..=ttop).map(|t| group_at(&groups, (s, t))).collect()).collect();
    let lookup = |horizontal: bool, face: bool, i: usize, p: Bideg, q: Bideg| -> Result<AbHom, IoError> {
        let name = format!("{}_{}_{i}", if horizontal { "h" } else { "v" }, if face { "face" } else { "degen" });
        let (dom, cod) = (grid[p.0][p.1].clone(), grid[q.0][q.1].clone());
        match g.maps.get(&name).and_then(|t| t.get(&key(p))) {
            Some(rows) => read_map(&format!("maps.{name}.{}", key(p)), rows, &dom, &cod),
            None => Ok(AbHom::zero(dom, cod)),
        }
    };
    for (d, table) in &g.maps {
        let (horizontal, face, i) = direction_index(d).expect("checked");
        for k in table.keys() {
            let (s, t) = parse_key(&format!("maps.{d}"), k)?;
            let (n, top) = if horizontal { (s, stop) } else { (t, ttop) };
            let ok = s <= stop && t <= ttop && if face { n > 0 && i <= n } else { n < top && i <= n };
            if !ok {
                return Err(field(format!("maps.{d}.{k}"), "no such structure map"));
            }
        }
    }
    let mut hface = Vec::new();
    let mut hdeg = Vec::new();
    for s in 0..=stop {
        let nf = if s == 0 { 0 } else { s + 1 };
        hface.push(
            (0..nf)
                .map(|i| (0..=ttop).map(|t| lookup(true, true, i, (s, t), (s - 1, t))).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?,
        );
        if s < stop {
            hdeg.push(
                (0..=s)
                    .map(|j| (0..=ttop).map(|t| lookup(true, false, j, (s, t), (s + 1, t))).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
    }
    let mut vface = Vec::new();
    let mut vdeg = Vec::new();
    for t in 0..=ttop {
        let nf = if t == 0 { 0 } else { t + 1 };
        vface.push(
            (0..nf)
                .map(|i| (0..=stop).map(|s| lookup(false, true, i, (s, t), (s, t - 1))).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?,
        );
        if t < ttop {
            vdeg.push(
                (0..=t)
                    .map(|j| (0..=stop).map(|s| lookup(false, false, j, (s, t), (s, t + 1))).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
    }
    BisimplicialAb::new(grid, hface, hdeg, vface, vdeg).map_err(|e| classify("maps", e))
}

fn read_stem<G: Grid>(
    doc: &Doc,
    read: impl Fn(&str, &GridDoc) -> Result<G, IoError>,
) -> Result<Stem<G>, IoError> {
    let order = doc.order.ok_or_else(|| field("order", "missing"))?;
    if doc.windows.is_empty() {
        return Err(field("windows", "a stem needs at least one window"));
    }
    let windows = doc
        .windows
        .iter()
        .enumerate()
        .map(|(k, w)| read(&format!("windows[{k}]."), w))
        .collect::<Result<Vec<_>, _>>()?;
    if doc.window_maps.len() + 1 != windows.len() {
        return Err(field("window_maps", format!("expected {} maps", windows.len() - 1)));
    }
    let mut maps = vec![BTreeMap::new()];
    for (i, table) in doc.window_maps.iter().enumerate() {
        let k = i + 1;
        let mut m = BTreeMap::new();
        for (key, rows) in table {
            let f = format!("window_maps[{i}].{key}");
            let p = parse_key(&f, key)?;
            let h = read_map(&f, rows, &windows[k].grid_group(p.0, p.1), &windows[k - 1].grid_group(p.0, p.1))?;
            if !h.is_zero() {
                m.insert(p, h);
            }
        }
        maps.push(m);
    }
    Ok(Stem { order, horizon: windows.len() - 1, windows, maps, realization: None })
}

pub fn from_json(text: &str) -> Result<Object, IoError> {
    let doc: Doc = serde_json::from_str(text)
        .map_err(|e| IoError::Syntax { line: e.line(), column: e.column(), message: e.to_string() })?;
    let grid = GridDoc { entries: doc.entries.clone(), maps: doc.maps.clone() };
    let no_stem_fields = doc.windows.is_empty() && doc.window_maps.is_empty() && doc.order.is_none();
    if doc.kind != "stem" && (!no_stem_fields || doc.variance.is_some()) {
        return Err(field("kind", format!("{:?} does not take stem fields", doc.kind)));
    }
    match doc.kind.as_str() {
        "bicomplex" => Ok(Object::Bicomplex(read_bicomplex("", &grid)?)),
        "cochain-bicomplex" => Ok(Object::Cochain(read_cochain("", &grid)?)),
        "bisimplicial" => Ok(Object::Bisimplicial(read_bisimplicial(&grid)?)),
        "stem" => match doc.variance.as_deref().unwrap_or("simplicial") {
            "simplicial" => Ok(Object::Stem(AnyStem::Simplicial(read_stem(&doc, read_bicomplex)?))),
            "cosimplicial" => Ok(Object::Stem(AnyStem::Cosimplicial(read_stem(&doc, read_cochain)?))),
            v => Err(field("variance", format!("unknown variance {v:?}"))),
        },
        k => Err(field("kind", format!("unknown kind {k:?}"))),
    }
}

/// Generator permutation putting free generators first: `perm[new] = old`.
fn free_first(g: &FgAbGroup) -> Vec<usize> {
    let o = g.orders();
    let mut p: Vec<usize> = (0..o.len()).filter(|&i| o[i].is_zero()).collect();
    p.extend((0..o.len()).filter(|&i| !o[i].is_zero()));
    p
}

fn write_entry(g: &FgAbGroup) -> EntryDoc {
    let torsion = g.orders().iter().filter(|o| !o.is_zero()).cloned().collect();
    EntryDoc { rank: g.orders().iter().filter(|o| o.is_zero()).count(), torsion }
}

fn write_matrix(f: &AbHom) -> Vec<Vec<Int>> {
    let (pr, pc) = (free_first(f.codomain()), free_first(f.domain()));
    let m = f.matrix();
    pr.iter().map(|&i| pc.iter().map(|&j| m.get(i, j).clone()).collect()).collect()
}

fn write_table<'a>(maps: impl IntoIterator<Item = (Bideg, &'a AbHom)>) -> MapTable {
    maps.into_iter().filter(|(_, f)| !f.is_zero()).map(|(p, f)| (key(p), write_matrix(f))).collect()
}

fn write_grid<'a>(
    groups: impl IntoIterator<Item = (&'a Bideg, &'a FgAbGroup)>,
    dh: &BTreeMap<Bideg, AbHom>,
    dv: &BTreeMap<Bideg, AbHom>,
) -> GridDoc {
    let entries = groups.into_iter().map(|(&p, g)| (key(p), write_entry(g))).collect();
    let mut maps = BTreeMap::new();
    maps.insert("h".to_string(), write_table(dh.iter().map(|(&p, f)| (p, f))));
    maps.insert("v".to_string(), write_table(dv.iter().map(|(&p, f)| (p, f))));
    GridDoc { entries, maps }
}

fn bicomplex_grid(b: &Bicomplex) -> GridDoc {
    write_grid(b.support(), b.horizontal_maps(), b.vertical_maps())
}

fn cochain_grid(k: &CochainBicomplex) -> GridDoc {
    write_grid(k.support(), k.horizontal_maps(), k.vertical_maps())
}

fn bisimplicial_grid(x: &BisimplicialAb) -> GridDoc {
    let (stop, ttop) = (x.stop(), x.ttop());
    let mut entries = BTreeMap::new();
    let mut maps: BTreeMap<String, MapTable> = BTreeMap::new();
    for s in 0..=stop {
        for t in 0..=ttop {
            let g = x.group(s, t);
            if !g.is_trivial() {
                entries.insert(key((s, t)), write_entry(g));
            }
            let mut put = |name: String, f: &AbHom| {
                if !f.is_zero() {
                    maps.entry(name).or_default().insert(key((s, t)), write_matrix(f));
                }
            };
            if s > 0 {
                (0..=s).for_each(|i| put(format!("h_face_{i}"), x.hface(s, i, t)));
            }
            if s < stop {
                (0..=s).for_each(|j| put(format!("h_degen_{j}"), x.hdeg(s, j, t)));
            }
            if t > 0 {
                (0..=t).for_each(|i| put(format!("v_face_{i}"), x.vface(s, i, t)));
            }
            if t < ttop {
                (0..=t).for_each(|j| put(format!("v_degen_{j}"), x.vdeg(s, j, t)));
            }
        }
    }
    GridDoc { entries, maps }
}

fn stem_doc<G: Grid>(s: &Stem<G>, variance: &str, grid: impl Fn(&G) -> GridDoc) -> Doc {
    Doc {
        kind: "stem".into(),
        variance: Some(variance.into()),
        order: Some(s.order),
        entries: BTreeMap::new(),
        maps: BTreeMap::new(),
        windows: s.windows.iter().map(grid).collect(),
        window_maps: s.maps.iter().skip(1).map(|m| write_table(m.iter().map(|(&p, f)| (p, f)))).collect(),
    }
}

fn plain(kind: &str, g: GridDoc) -> Doc {
    Doc {
        kind: kind.into(),
        variance: None,
        order: None,
        entries: g.entries,
        maps: g.maps,
        windows: Vec::new(),
        window_maps: Vec::new(),
    }
}

/// Pretty-printed, with keys in a fixed order.
pub fn to_json(x: &Object) -> String {
    let doc = match x {
        Object::Bicomplex(b) => plain("bicomplex", bicomplex_grid(b)),
        Object::Cochain(k) => plain("cochain-bicomplex", cochain_grid(k)),
        Object::Bisimplicial(x) => plain("bisimplicial", bisimplicial_grid(x)),
        Object::Stem(AnyStem::Simplicial(s)) => stem_doc(s, "simplicial", bicomplex_grid),
        Object::Stem(AnyStem::Cosimplicial(s)) => stem_doc(s, "cosimplicial", cochain_grid),
    };
    serde_json::to_string_pretty(&doc).expect("documents serialize")
}
