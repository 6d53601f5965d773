use proptest::prelude::*;

mod common;
use common::bicomplex;

use spiralss::simplicial::{Bicomplex, SimplicialSpace};
use spiralss::spiral::couple::ExactCouple;
use spiralss::spiral::natural::{boundary_map, cone_natural_homotopy, d0_onto_through, e2_sq, h_map, natural_homotopy, natural_sq, s_map};
use spiralss::spiral::{spiral_les_of_couple, SpiralCouple};
use spiralss::stems::{stem_forget, stem_of_chains, stem_validate, window_triangle, Grid};
use spiralss::zmod::{AbHom, Matrix, Subquotient};

fn same_map(f: &AbHom, g: &AbHom) -> bool {
    f.add(&g.neg()).expect("same shape").is_zero()
}

/// A map of double complexes, given on groups.
type BiMap<'a> = dyn Fn(usize, usize) -> Option<AbHom> + 'a;

/// The map induced on `D_{a,u}` (fibre homology), blockwise on `Ẑ_{a,u} = ⊕_m C_{m,u+a-m}`.
fn on_d(x: &SpiralCouple, y: &SpiralCouple, f: &BiMap, a: i64, u: i64) -> AbHom {
    let (dx, dy) = (x.d_group(a, u), y.d_group(a, u));
    let (Some(sx), Some(sy)) = (x.d_sq(a, u), y.d_sq(a, u)) else {
        return AbHom::zero(dx, dy);
    };
    let n = a as usize;
    let mut m = Matrix::zero(sy.ambient().ngens(), sx.ambient().ngens());
    for col in 0..=n {
        let tt = u + (n - col) as i64;
        let (Some(ox), Some(oy)) = (x.block_offset(n, u, col), y.block_offset(n, u, col)) else { continue };
        if let Some(g) = f(col, tt as usize) {
            m.paste(oy, ox, g.matrix());
        }
    }
    sx.induced(&AbHom::new(sx.ambient().clone(), sy.ambient().clone(), m).unwrap(), sy).expect("chain map on fibres")
}

fn on_e(x: &SpiralCouple, y: &SpiralCouple, f: &BiMap, a: i64, u: i64) -> AbHom {
    let (ex, ey) = (x.e_group(a, u), y.e_group(a, u));
    match (x.e_sq(a, u), y.e_sq(a, u), f(a as usize, u as usize)) {
        (Some(sx), Some(sy), Some(g)) => sx.induced(&g, sy).expect("chain map on columns"),
        _ => AbHom::zero(ex, ey),
    }
}

fn on(src: &Subquotient, tgt: &Subquotient, g: &AbHom) -> AbHom {
    src.induced(g, tgt).expect("induced on the spiral sequence")
}

/// The ladder of spiral sequences along `f`, in simplicial degrees `0..=top`.
fn check_naturality(b: &Bicomplex, c: &Bicomplex, f: &BiMap) -> Result<(), String> {
    let (x, y) = (SpiralCouple::new(b), SpiralCouple::new(c));
    let top = x.top().min(y.top()) as i64;
    let tmax = x.tmax().max(y.tmax()) as i64;
    let nat = |a: i64, u: i64| {
        if a < 0 || a > top {
            return None;
        }
        Some(on(&natural_sq(&x, a, u), &natural_sq(&y, a, u), &on_d(&x, &y, f, a, u)))
    };
    for a in 0..=top {
        for u in 0..=tmax {
            let e2 = on(&e2_sq(&x, a, u), &e2_sq(&y, a, u), &on_e(&x, &y, f, a, u));
            let here = nat(a, u).unwrap();
            if let Some(below) = nat(a - 1, u + 1) {
                if !same_map(&s_map(&x, a, u).then(&here).unwrap(), &below.then(&s_map(&y, a, u)).unwrap()) {
                    return Err(format!("s at ({a},{u})"));
                }
            }
            if !same_map(&h_map(&x, a, u).then(&e2).unwrap(), &here.then(&h_map(&y, a, u)).unwrap()) {
                return Err(format!("h at ({a},{u})"));
            }
            if let Some(next) = nat(a - 2, u + 1) {
                if !same_map(&boundary_map(&x, a, u).then(&next).unwrap(), &e2.then(&boundary_map(&y, a, u)).unwrap()) {
                    return Err(format!("∂ at ({a},{u})"));
                }
            }
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn spiral_sequences_are_exact(b in bicomplex(6)) {
        let les = spiral_les_of_couple(&SpiralCouple::new(&b), 8);
        prop_assert!(les.check_exact().is_ok());
        prop_assert!(les.h0_is_iso());
    }

    #[test]
    fn realizable_stems_validate(b in bicomplex(5), n in 0usize..=3) {
        let s = stem_of_chains(&b, n);
        prop_assert!(stem_validate(&s).violation.is_none());
    }

    #[test]
    fn window_triangles_commute(b in bicomplex(5), n in 0usize..=3, k in 0usize..=3) {
        for s in 0..=b.max_s() {
            prop_assert!(window_triangle(&b.column(s), n, k).commutes(), "column {}", s);
        }
    }

    #[test]
    fn forgetting_matches_lower_stems(b in bicomplex(5), n in 1usize..=3) {
        let s = stem_of_chains(&b, n);
        for m in 0..n {
            let lower = stem_forget(&s, m);
            let direct = stem_of_chains(&b, m);
            prop_assert_eq!(lower.windows.len(), direct.windows.len());
            for (k, (w, v)) in lower.windows.iter().zip(&direct.windows).enumerate() {
                for col in 0..=b.max_s() {
                    let (p, q) = (w.grid_column(col), v.grid_column(col));
                    for t in 0..=(b.max_t() as i64 + 1) {
                        prop_assert_eq!(
                            p.homology(t).value().invariants().clone(),
                            q.homology(t).value().invariants().clone(),
                            "order {} window {} column {} degree {}", m, k, col, t
                        );
                    }
                }
            }
        }
    }

    /// `Ωπ^♮_n = Ker(j_{n+1})` on `π_* Ẑ_{n+1}`.
    #[test]
    fn loops_on_natural_homotopy_are_a_kernel(b in bicomplex(6)) {
        let c = SpiralCouple::new(&b);
        for n in 0..=c.top() as i64 {
            for t in 0..=c.tmax() as i64 {
                let loops = natural_sq(&c, n, t + 1);
                let ker = c.j(n + 1, t).kernel();
                prop_assert_eq!(loops.value().invariants(), ker.value().invariants(), "n={} t={}", n, t);
                // and the kernel is the image of i : π^♮ sits inside D_{n+1,t}
                prop_assert!(c.i(n + 1, t).image_lattice().same_as(ker.sub()));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn spiral_sequences_are_natural(b in bicomplex(5), n in 0usize..=2) {
        let s = stem_of_chains(&b, n);
        for k in 1..s.windows.len() {
            let f = |col: usize, t: usize| s.maps[k].get(&(col, t)).cloned();
            let verdict = check_naturality(&s.windows[k], &s.windows[k - 1], &f);
            prop_assert!(verdict.is_ok(), "window {}: {:?}", k, verdict);
        }
        // the projection off a summand
        let sum = b.direct_sum(&s.windows[0]);
        let p = |col: usize, t: usize| {
            let g = b.group_ref(col, t)?;
            let rows: Vec<Vec<i64>> = (0..g.ngens())
                .map(|i| (0..sum.group(col, t).ngens()).map(|j| i64::from(i == j)).collect())
                .collect();
            Some(AbHom::from_rows(sum.group(col, t), g.clone(), &rows).unwrap())
        };
        let verdict = check_naturality(&sum, &b, &p);
        prop_assert!(verdict.is_ok(), "projection: {:?}", verdict);
    }

    /// Strict and cone groups agree when `d_0` is onto through degree `n`.
    #[test]
    fn strict_and_cone_models_agree(b in bicomplex(3)) {
        let x = SimplicialSpace::gamma(&b, b.max_s()).space;
        let c = SpiralCouple::new(&x.normalized().bicomplex);
        for n in 0..=x.top() {
            if d0_onto_through(&x, n + 1) {
                let strict = natural_homotopy(&x, n);
                let cone = cone_natural_homotopy(&c, n);
                prop_assert!(strict.same_invariants(&cone), "n={}", n);
            }
        }
    }
}
