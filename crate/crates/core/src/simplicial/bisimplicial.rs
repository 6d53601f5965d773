//! Bisimplicial abelian groups with both directions stored as simplicial data.

use crate::zmod::{AbHom, AlgebraError, ChainComplex, FgAbGroup, Lattice, Subquotient};

use super::bicomplex::Bicomplex;
use super::gamma::{gamma_map, Gamma};
use super::simplicial_ab::check_identities;
use super::space::{MatchingVerdict, SimplicialSpace};

/// Groups `X_{s,t}` for `s <= stop`, `t <= ttop`. Horizontal maps are indexed
/// `[s][i][t]`, vertical maps `[t][i][s]`.
#[derive(Clone, Debug)]
pub struct BisimplicialAb {
    groups: Vec<Vec<FgAbGroup>>,
    hface: Vec<Vec<Vec<AbHom>>>,
    hdeg: Vec<Vec<Vec<AbHom>>>,
    vface: Vec<Vec<Vec<AbHom>>>,
    vdeg: Vec<Vec<Vec<AbHom>>>,
}

impl BisimplicialAb {
    pub fn new(
        groups: Vec<Vec<FgAbGroup>>,
        hface: Vec<Vec<Vec<AbHom>>>,
        hdeg: Vec<Vec<Vec<AbHom>>>,
        vface: Vec<Vec<Vec<AbHom>>>,
        vdeg: Vec<Vec<Vec<AbHom>>>,
    ) -> Result<BisimplicialAb, AlgebraError> {
        let x = BisimplicialAb { groups, hface, hdeg, vface, vdeg };
        x.check_shapes()?;
        x.check()?;
        Ok(x)
    }

    pub fn stop(&self) -> usize {
        self.groups.len() - 1
    }

    pub fn ttop(&self) -> usize {
        self.groups[0].len() - 1
    }

    pub fn group(&self, s: usize, t: usize) -> &FgAbGroup {
        &self.groups[s][t]
    }

    /// Horizontal face `d_i : X_{s,t} -> X_{s-1,t}`.
    pub fn hface(&self, s: usize, i: usize, t: usize) -> &AbHom {
        &self.hface[s][i][t]
    }

    pub fn hdeg(&self, s: usize, j: usize, t: usize) -> &AbHom {
        &self.hdeg[s][j][t]
    }

    /// Vertical face `d_i : X_{s,t} -> X_{s,t-1}`.
    pub fn vface(&self, s: usize, i: usize, t: usize) -> &AbHom {
        &self.vface[t][i][s]
    }

    pub fn vdeg(&self, s: usize, j: usize, t: usize) -> &AbHom {
        &self.vdeg[t][j][s]
    }

    fn check_shapes(&self) -> Result<(), AlgebraError> {
        let bad = |what: &str| Err(AlgebraError::Invariant(format!("bisimplicial {what} has the wrong shape")));
        if self.groups.is_empty() || self.groups.iter().any(|r| r.len() != self.groups[0].len() || r.is_empty()) {
            return bad("grid");
        }
        let (sm, tm) = (self.stop(), self.ttop());
        if self.hface.len() != sm + 1 || self.hdeg.len() != sm || self.vface.len() != tm + 1 || self.vdeg.len() != tm {
            return bad("map table");
        }
        for s in 0..=sm {
            let nf = if s == 0 { 0 } else { s + 1 };
            if self.hface[s].len() != nf {
                return bad("horizontal face list");
            }
            for (i, per_t) in self.hface[s].iter().enumerate() {
                for (t, f) in per_t.iter().enumerate() {
                    if per_t.len() != tm + 1 || f.domain() != &self.groups[s][t] || f.codomain() != &self.groups[s - 1][t] {
                        return Err(AlgebraError::Invariant(format!("horizontal face d{i} at ({s},{t}) has the wrong shape")));
                    }
                }
            }
        }
        for s in 0..sm {
            if self.hdeg[s].len() != s + 1 {
                return bad("horizontal degeneracy list");
            }
            for per_t in &self.hdeg[s] {
                for (t, f) in per_t.iter().enumerate() {
                    if per_t.len() != tm + 1 || f.domain() != &self.groups[s][t] || f.codomain() != &self.groups[s + 1][t] {
                        return bad("horizontal degeneracy");
                    }
                }
            }
        }
        for t in 0..=tm {
            let nf = if t == 0 { 0 } else { t + 1 };
            if self.vface[t].len() != nf {
                return bad("vertical face list");
            }
            for (i, per_s) in self.vface[t].iter().enumerate() {
                for (s, f) in per_s.iter().enumerate() {
                    if per_s.len() != sm + 1 || f.domain() != &self.groups[s][t] || f.codomain() != &self.groups[s][t - 1] {
                        return Err(AlgebraError::Invariant(format!("vertical face d{i} at ({s},{t}) has the wrong shape")));
                    }
                }
            }
        }
        for t in 0..tm {
            if self.vdeg[t].len() != t + 1 {
                return bad("vertical degeneracy list");
            }
            for per_s in &self.vdeg[t] {
                for (s, f) in per_s.iter().enumerate() {
                    if per_s.len() != sm + 1 || f.domain() != &self.groups[s][t] || f.codomain() != &self.groups[s][t + 1] {
                        return bad("vertical degeneracy");
                    }
                }
            }
        }
        Ok(())
    }

    /// Simplicial identities in both directions and commutation of horizontal with vertical maps.
    pub fn check(&self) -> Result<(), AlgebraError> {
        let (sm, tm) = (self.stop(), self.ttop());
        for t in 0..=tm {
            check_identities(
                sm,
                &|n, i| self.hface[n][i][t].clone(),
                &|n, j| self.hdeg[n][j][t].clone(),
                &|n| AbHom::identity(&self.groups[n][t]),
                &|a: &AbHom, b: &AbHom| a.then(b).expect("composable"),
            )
            .map_err(|e| AlgebraError::Invariant(format!("horizontal {e} (vertical degree {t})")))?;
        }
        for s in 0..=sm {
            check_identities(
                tm,
                &|n, i| self.vface[n][i][s].clone(),
                &|n, j| self.vdeg[n][j][s].clone(),
                &|n| AbHom::identity(&self.groups[s][n]),
                &|a: &AbHom, b: &AbHom| a.then(b).expect("composable"),
            )
            .map_err(|e| AlgebraError::Invariant(format!("vertical {e} (horizontal degree {s})")))?;
        }
        // every horizontal structure map commutes with every vertical one
        for s in 0..=sm {
            for t in 0..=tm {
                let hs: Vec<(&AbHom, usize)> = (0..self.hface[s].len())
                    .map(|i| (&self.hface[s][i][t], s - 1))
                    .chain((0..if s < sm { s + 1 } else { 0 }).map(|j| (&self.hdeg[s][j][t], s + 1)))
                    .collect();
                let hs_idx: Vec<(bool, usize)> = (0..self.hface[s].len())
                    .map(|i| (true, i))
                    .chain((0..if s < sm { s + 1 } else { 0 }).map(|j| (false, j)))
                    .collect();
                let vs_idx: Vec<(bool, usize)> = (0..self.vface[t].len())
                    .map(|i| (true, i))
                    .chain((0..if t < tm { t + 1 } else { 0 }).map(|j| (false, j)))
                    .collect();
                for (&(hf, hi), &(h, s2)) in hs_idx.iter().zip(&hs) {
                    for &(vf, vi) in &vs_idx {
                        let v = if vf { &self.vface[t][vi][s] } else { &self.vdeg[t][vi][s] };
                        let t2 = if vf { t - 1 } else { t + 1 };
                        let v2 = if vf { &self.vface[t][vi][s2] } else { &self.vdeg[t][vi][s2] };
                        let h2 = if hf { &self.hface[s][hi][t2] } else { &self.hdeg[s][hi][t2] };
                        if h.then(v2)? != v.then(h2)? {
                            return Err(AlgebraError::Invariant(format!(
                                "horizontal and vertical maps do not commute at ({s},{t})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Applies vertical Dold–Kan to every level of a simplicial space.
    pub fn from_space(x: &SimplicialSpace, ttop: usize) -> BisimplicialAb {
        let sm = x.top();
        let tm = x.tmax().min(ttop);
        // vertical Γ of each level
        let cols: Vec<(Vec<FgAbGroup>, Vec<AbHom>)> = (0..=sm)
            .map(|s| ((0..=tm).map(|t| x.group(s, t)).collect(), (1..=tm).map(|t| x.vd(s, t)).collect()))
            .collect();
        let gms: Vec<Gamma> = cols.iter().map(|(g, d)| Gamma::new(g, d, ttop)).collect();
        let groups: Vec<Vec<FgAbGroup>> = gms.iter().map(|g| g.levels.iter().map(|l| l.group.clone()).collect()).collect();
        let hmap = |f: Vec<AbHom>, s: usize, s2: usize, m: usize| {
            let mat = gamma_map(&f, &gms[s].levels[m], &gms[s2].levels[m]);
            AbHom::new(groups[s][m].clone(), groups[s2][m].clone(), mat).expect("Γ of a horizontal map")
        };
        let hface = (0..=sm)
            .map(|s| {
                (0..if s == 0 { 0 } else { s + 1 })
                    .map(|i| (0..=ttop).map(|m| hmap((0..=tm).map(|t| x.face(s, i, t).clone()).collect(), s, s - 1, m)).collect())
                    .collect()
            })
            .collect();
        let hdeg = (0..sm)
            .map(|s| {
                (0..=s)
                    .map(|j| (0..=ttop).map(|m| hmap((0..=tm).map(|t| x.degeneracy(s, j, t).clone()).collect(), s, s + 1, m)).collect())
                    .collect()
            })
            .collect();
        let vface = (0..=ttop)
            .map(|m| {
                (0..if m == 0 { 0 } else { m + 1 })
                    .map(|i| {
                        (0..=sm)
                            .map(|s| AbHom::new(groups[s][m].clone(), groups[s][m - 1].clone(), gms[s].face(m, i)).expect("Γ face"))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let vdeg = (0..ttop)
            .map(|m| {
                (0..=m)
                    .map(|j| {
                        (0..=sm)
                            .map(|s| {
                                AbHom::new(groups[s][m].clone(), groups[s][m + 1].clone(), gms[s].degeneracy(m, j)).expect("Γ degeneracy")
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        BisimplicialAb { groups, hface, hdeg, vface, vdeg }
    }

    /// Double Dold–Kan object of a bicomplex, `stop x ttop` levels.
    pub fn double_dold_kan(k: &Bicomplex, stop: usize, ttop: usize) -> BisimplicialAb {
        BisimplicialAb::from_space(&SimplicialSpace::gamma(k, stop).space, ttop)
    }

    /// Replaces each vertical simplicial group by its Moore complex.
    pub fn vertical_normalize(&self) -> SimplicialSpace {
        let (sm, tm) = (self.stop(), self.ttop());
        let subs: Vec<Vec<Subquotient>> = (0..=sm)
            .map(|s| {
                (0..=tm)
                    .map(|t| {
                        let g = &self.groups[s][t];
                        let mut lat = Lattice::full(g.ngens());
                        for i in 1..=t {
                            lat = lat.intersect(&self.vface[t][i][s].kernel_lattice());
                        }
                        Subquotient::new(g.clone(), lat, Lattice::zero(g.ngens())).expect("vertical normalization")
                    })
                    .collect()
            })
            .collect();
        let levels = (0..=sm)
            .map(|s| {
                let groups: Vec<FgAbGroup> = subs[s].iter().map(|q| q.value().clone()).collect();
                let diffs: Vec<AbHom> =
                    (1..=tm).map(|t| subs[s][t].induced_unchecked(self.vface[t][0][s].matrix(), &subs[s][t - 1])).collect();
                ChainComplex::new(0, groups, diffs).expect("Moore complex")
            })
            .collect();
        let faces = (0..=sm)
            .map(|s| {
                (0..self.hface[s].len())
                    .map(|i| (0..=tm).map(|t| subs[s][t].induced_unchecked(self.hface[s][i][t].matrix(), &subs[s - 1][t])).collect())
                    .collect()
            })
            .collect();
        let degens = (0..sm)
            .map(|s| {
                (0..=s)
                    .map(|j| (0..=tm).map(|t| subs[s][t].induced_unchecked(self.hdeg[s][j][t].matrix(), &subs[s + 1][t])).collect())
                    .collect()
            })
            .collect();
        SimplicialSpace::new_unchecked(levels, faces, degens).expect("normalized space")
    }

    /// `π_t X_s` from the vertical Moore complex.
    pub fn homotopy_groups(&self, s: usize) -> Vec<FgAbGroup> {
        self.vertical_normalize().homotopy_groups(s)
    }

    pub fn matching_check(&self, n: usize) -> MatchingVerdict {
        self.vertical_normalize().matching_check(n)
    }

    pub fn diagonal_total(&self) -> Vec<FgAbGroup> {
        self.vertical_normalize().diagonal_total()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::bicomplex::BicomplexBuilder;

    #[test]
    fn double_dold_kan_of_witness() {
        let k = BicomplexBuilder::new()
            .free(2, 0, 1)
            .free(1, 0, 1)
            .free(1, 1, 1)
            .free(0, 1, 1)
            .dh(2, 0, vec![vec![1]])
            .dv(1, 1, vec![vec![1]])
            .dh(1, 1, vec![vec![1]])
            .build()
            .unwrap();
        let x = BisimplicialAb::double_dold_kan(&k, 3, 2);
        x.check().unwrap();
        let pi = x.homotopy_groups(1);
        // column 1 of the witness is Z -> Z, so every level-1 homotopy group
        // comes from the degenerate copy of column 0
        assert_eq!(pi[0].rank(), 0);
        assert_eq!(pi[1].rank(), 1);
        for h in x.diagonal_total() {
            assert!(h.is_trivial());
        }
    }

    #[test]
    fn vertical_constant_in_degree_two() {
        let k = BicomplexBuilder::new().free(0, 2, 1).build().unwrap();
        let x = BisimplicialAb::double_dold_kan(&k, 2, 3);
        for s in 0..=2 {
            let pi = x.homotopy_groups(s);
            assert_eq!(pi[2].rank(), 1);
            assert!(pi[1].is_trivial());
        }
    }
}
