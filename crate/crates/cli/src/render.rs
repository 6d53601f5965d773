//! Page charts as text grids, SVG documents and JSON.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde_json::{json, Value};
use spiralss::pages::{Grading, Page, Pos};
use spiralss::zmod::{AbHom, FgAbGroup};

pub fn group_label(g: &FgAbGroup) -> String {
    g.to_string()
}

fn nonzero_entries(page: &Page) -> BTreeMap<Pos, String> {
    page.entries
        .iter()
        .filter(|(_, e)| !e.value().is_trivial())
        .map(|(&p, e)| (p, group_label(e.value())))
        .collect()
}

fn nonzero_diffs(page: &Page, grading: Grading) -> Vec<(Pos, Pos, &AbHom)> {
    page.diffs
        .iter()
        .filter(|(_, d)| !d.is_zero())
        .map(|(&p, d)| (p, grading.target(p, page.r), d))
        .collect()
}

fn bounds(cells: &BTreeMap<Pos, String>) -> Option<(i64, i64, i64, i64)> {
    let s0 = cells.keys().map(|p| p.0).min()?;
    let s1 = cells.keys().map(|p| p.0).max()?;
    let t0 = cells.keys().map(|p| p.1).min()?;
    let t1 = cells.keys().map(|p| p.1).max()?;
    Some((s0.min(0), s1, t0.min(0), t1))
}

fn page_name(page: &Page, grading: Grading) -> String {
    match grading {
        Grading::Homological => format!("E^{}", page.r),
        Grading::Cohomological => format!("E_{}", page.r),
    }
}

pub fn text_page(page: &Page, grading: Grading) -> String {
    let cells = nonzero_entries(page);
    let mut out = String::new();
    let _ = writeln!(out, "{}", page_name(page, grading));
    let Some((s0, s1, t0, t1)) = bounds(&cells) else {
        out.push_str("  (empty)\n");
        return out;
    };
    let w = cells.values().map(|c| c.chars().count()).max().unwrap_or(1).max(2);
    let tw = t1.to_string().len().max(t0.to_string().len());
    for t in (t0..=t1).rev() {
        let _ = write!(out, "{t:>tw$} |");
        for s in s0..=s1 {
            let c = cells.get(&(s, t)).map_or(".", |c| c.as_str());
            let _ = write!(out, " {c:>w$}");
        }
        out.push('\n');
    }
    let _ = write!(out, "{:>tw$} +", "");
    for _ in s0..=s1 {
        let _ = write!(out, "{}", "-".repeat(w + 1));
    }
    out.push('\n');
    let _ = write!(out, "{:>tw$}  ", "");
    for s in s0..=s1 {
        let _ = write!(out, " {s:>w$}");
    }
    out.push('\n');
    for (p, q, d) in nonzero_diffs(page, grading) {
        let _ = writeln!(
            out,
            "  d: ({},{}) -> ({},{})  {} -> {}, image {}",
            p.0,
            p.1,
            q.0,
            q.1,
            group_label(d.domain()),
            group_label(d.codomain()),
            group_label(d.image().value())
        );
    }
    out
}

pub fn text_pages(pages: &[Page], grading: Grading) -> String {
    pages.iter().map(|p| text_page(p, grading)).collect::<Vec<_>>().join("\n")
}

const CELL_W: i64 = 90;
const CELL_H: i64 = 40;
const MARGIN: i64 = 40;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// One chart per page, stacked vertically in a single document.
pub fn svg_pages(pages: &[Page], grading: Grading) -> String {
    let charts: Vec<(String, BTreeMap<Pos, String>, Vec<(Pos, Pos)>)> = pages
        .iter()
        .map(|p| {
            let arrows = nonzero_diffs(p, grading).into_iter().map(|(a, b, _)| (a, b)).collect();
            (page_name(p, grading), nonzero_entries(p), arrows)
        })
        .collect();
    let all: BTreeMap<Pos, String> = charts.iter().flat_map(|c| c.1.clone()).collect();
    let (s0, s1, t0, t1) = bounds(&all).unwrap_or((0, 0, 0, 0));
    let (ns, nt) = (s1 - s0 + 1, t1 - t0 + 1);
    let chart_h = nt * CELL_H + 2 * MARGIN;
    let width = ns * CELL_W + 2 * MARGIN;
    let height = chart_h * charts.len().max(1) as i64;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="monospace" font-size="13">"#
    );
    out.push_str(
        "<defs><marker id=\"arrow\" markerWidth=\"8\" markerHeight=\"8\" refX=\"7\" refY=\"4\" orient=\"auto\"><path d=\"M0,0 L8,4 L0,8 z\" fill=\"#b03030\"/></marker></defs>\n",
    );
    let centre = |(s, t): Pos, k: i64| -> (i64, i64) {
        let x = MARGIN + (s - s0) * CELL_W + CELL_W / 2;
        let y = k * chart_h + MARGIN + (t1 - t) * CELL_H + CELL_H / 2;
        (x, y)
    };
    for (k, (name, cells, arrows)) in charts.iter().enumerate() {
        let k = k as i64;
        let top = k * chart_h;
        let _ = writeln!(out, r#"<text x="{}" y="{}" font-weight="bold">{}</text>"#, MARGIN / 4, top + MARGIN / 2, escape(name));
        for s in s0..=s1 {
            let (x, _) = centre((s, t0), k);
            let _ = writeln!(out, r##"<text x="{x}" y="{}" text-anchor="middle" fill="#666">{s}</text>"##, top + chart_h - MARGIN / 3);
        }
        for t in t0..=t1 {
            let (_, y) = centre((s0, t), k);
            let _ = writeln!(out, r##"<text x="{}" y="{}" text-anchor="middle" fill="#666">{t}</text>"##, MARGIN / 2, y + 4);
        }
        for s in s0..=s1 {
            for t in t0..=t1 {
                let (x, y) = centre((s, t), k);
                match cells.get(&(s, t)) {
                    Some(c) => {
                        let _ = writeln!(out, r#"<text x="{x}" y="{}" text-anchor="middle">{}</text>"#, y + 4, escape(c));
                    }
                    None => {
                        let _ = writeln!(out, r##"<circle cx="{x}" cy="{y}" r="1.5" fill="#bbb"/>"##);
                    }
                }
            }
        }
        for &(a, b) in arrows {
            let ((x1, y1), (x2, y2)) = (centre(a, k), centre(b, k));
            // stop short of the labels
            let (dx, dy) = (x2 - x1, y2 - y1);
            let len = ((dx * dx + dy * dy) as f64).sqrt().max(1.0);
            let cut = 18.0 / len;
            let p = |x: i64, d: i64, f: f64| (x as f64 + d as f64 * f).round() as i64;
            let _ = writeln!(
                out,
                r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#b03030" stroke-width="1.5" marker-end="url(#arrow)"/>"##,
                p(x1, dx, cut),
                p(y1, dy, cut),
                p(x1, dx, 1.0 - cut),
                p(y1, dy, 1.0 - cut)
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

pub fn group_json(g: &FgAbGroup) -> Value {
    let inv = g.invariants();
    json!({ "rank": inv.rank, "torsion": inv.torsion })
}

pub fn pos_key((s, t): Pos) -> String {
    format!("{s},{t}")
}

pub fn page_json(page: &Page, grading: Grading) -> Value {
    let entries: serde_json::Map<String, Value> =
        nonzero_entries(page).keys().map(|&p| (pos_key(p), group_json(page.entries[&p].value()))).collect();
    let diffs: Vec<Value> = nonzero_diffs(page, grading)
        .into_iter()
        .map(|(p, q, d)| {
            json!({
                "source": pos_key(p),
                "target": pos_key(q),
                "matrix": d.matrix().to_rows(),
                "image": group_json(d.image().value()),
            })
        })
        .collect();
    json!({ "r": page.r, "entries": entries, "differentials": diffs })
}

pub fn pages_json(pages: &[Page], grading: Grading) -> Value {
    Value::Array(pages.iter().map(|p| page_json(p, grading)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use spiralss::pages::spiral_ss_of_chains;
    use spiralss::stems::examples::staircase;

    #[test]
    fn empty_page_is_an_empty_grid() {
        let p = Page { r: 1, entries: BTreeMap::new(), diffs: BTreeMap::new() };
        assert!(text_page(&p, Grading::Homological).contains("(empty)"));
        assert!(svg_pages(&[p], Grading::Homological).starts_with("<svg"));
    }

    #[test]
    fn witness_page_two() {
        let ss = spiral_ss_of_chains(&staircase(2, 0), 2);
        let txt = text_page(ss.page(2), Grading::Homological);
        assert!(txt.contains("d: (2,0) -> (0,1)"), "{txt}");
        let cells: usize = txt.lines().take_while(|l| !l.contains("d:")).map(|l| l.matches('Z').count()).sum();
        assert_eq!(cells, 2, "{txt}");
        let svg = svg_pages(&ss.pages[1..], Grading::Homological);
        assert_eq!(svg.matches("<line").count(), 1);
        assert_eq!(svg, svg_pages(&ss.pages[1..], Grading::Homological));
    }
}
