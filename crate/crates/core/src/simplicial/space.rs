//! Simplicial spaces: horizontal simplicial objects whose levels are vertical
//! chain complexes (the vertical direction already normalized).

use std::collections::BTreeMap;

use crate::zmod::{AbHom, AlgebraError, ChainComplex, FgAbGroup, Int, Lattice, Matrix, Subquotient};

use super::bicomplex::Bicomplex;
use super::gamma::{gamma_map, Gamma};
use super::simplicial_ab::check_identities;

/// Levels `X_0 .. X_top`, each a chain complex in degrees `0..=tmax`, with
/// faces and degeneracies given degreewise: `faces[n][i][t] : X_{n,t} -> X_{n-1,t}`,
/// `degens[n][j][t] : X_{n,t} -> X_{n+1,t}`.
#[derive(Clone, Debug)]
pub struct SimplicialSpace {
    tmax: usize,
    levels: Vec<ChainComplex>,
    faces: Vec<Vec<Vec<AbHom>>>,
    degens: Vec<Vec<Vec<AbHom>>>,
}

/// A levelwise subcomplex such as a cycles or chains object.
#[derive(Clone, Debug)]
pub struct SubLevel {
    pub n: usize,
    /// Per vertical degree, the subgroup as a subquotient of `X_{n,t}` (zero denominator).
    pub parts: Vec<Subquotient>,
    /// The subcomplex written on the value groups of `parts`.
    pub complex: ChainComplex,
}

impl SubLevel {
    fn build(n: usize, level: &ChainComplex, lattices: Vec<Lattice>) -> SubLevel {
        let parts: Vec<Subquotient> = lattices
            .into_iter()
            .enumerate()
            .map(|(t, l)| {
                let g = level.group(t as i64);
                let dim = g.ngens();
                Subquotient::new(g, l, Lattice::zero(dim)).expect("sublevel")
            })
            .collect();
        let groups: Vec<FgAbGroup> = parts.iter().map(|p| p.value().clone()).collect();
        let diffs: Vec<AbHom> = (1..parts.len())
            .map(|t| parts[t].induced_unchecked(level.d(t as i64).matrix(), &parts[t - 1]))
            .collect();
        let complex = ChainComplex::new(0, groups, diffs).expect("subcomplex");
        SubLevel { n, parts, complex }
    }

    pub fn inclusion(&self, t: usize) -> AbHom {
        AbHom::kernel_inclusion(&self.parts[t])
    }

    pub fn group(&self, t: usize) -> FgAbGroup {
        self.complex.group(t as i64)
    }
}

/// Outcome of the Reedy matching-map test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingVerdict {
    pub fibrant: bool,
    /// First `(n, t)` where `X_{n,t} -> M_n X_t` is not onto.
    pub failure: Option<(usize, usize)>,
}

/// The normalized horizontal complex `(C_*, d_0)` of vertical complexes, as a bicomplex.
#[derive(Clone, Debug)]
pub struct Normalization {
    pub chains: Vec<SubLevel>,
    pub bicomplex: Bicomplex,
}

fn stacked(maps: &[&AbHom]) -> AbHom {
    let dom = maps[0].domain().clone();
    let cod = FgAbGroup::direct_sum_all(maps.iter().map(|m| m.codomain()));
    let mut m = maps[0].matrix().clone();
    for f in &maps[1..] {
        m = m.vstack(f.matrix());
    }
    AbHom::new(dom, cod, m).expect("stack of homomorphisms")
}

impl SimplicialSpace {
    pub fn new(
        levels: Vec<ChainComplex>,
        faces: Vec<Vec<Vec<AbHom>>>,
        degens: Vec<Vec<Vec<AbHom>>>,
    ) -> Result<SimplicialSpace, AlgebraError> {
        let x = SimplicialSpace::new_unchecked(levels, faces, degens)?;
        x.check()?;
        Ok(x)
    }

    pub(crate) fn new_unchecked(
        levels: Vec<ChainComplex>,
        faces: Vec<Vec<Vec<AbHom>>>,
        degens: Vec<Vec<Vec<AbHom>>>,
    ) -> Result<SimplicialSpace, AlgebraError> {
        if levels.is_empty() {
            return Err(AlgebraError::Invariant("no levels".into()));
        }
        let tmax = levels.iter().map(|c| (c.hi() - 1).max(0) as usize).max().unwrap_or(0);
        let top = levels.len() - 1;
        if faces.len() != top + 1 || degens.len() != top {
            return Err(AlgebraError::Invariant("wrong number of structure maps".into()));
        }
        for n in 0..=top {
            if faces[n].len() != if n == 0 { 0 } else { n + 1 } || faces[n].iter().any(|f| f.len() != tmax + 1) {
                return Err(AlgebraError::Invariant(format!("faces out of level {n} have the wrong shape")));
            }
        }
        for n in 0..top {
            if degens[n].len() != n + 1 || degens[n].iter().any(|f| f.len() != tmax + 1) {
                return Err(AlgebraError::Invariant(format!("degeneracies out of level {n} have the wrong shape")));
            }
        }
        Ok(SimplicialSpace { tmax, levels, faces, degens })
    }

    /// Verifies shapes, that structure maps are chain maps, and the simplicial identities.
    pub fn check(&self) -> Result<(), AlgebraError> {
        let top = self.top();
        let maps = (0..=top)
            .flat_map(|n| (0..self.faces[n].len()).map(move |i| (n, i, true)))
            .chain((0..top).flat_map(|n| (0..=n).map(move |j| (n, j, false))));
        for (n, i, is_face) in maps {
            let tgt = if is_face { n - 1 } else { n + 1 };
            for t in 0..=self.tmax {
                let f = if is_face { &self.faces[n][i][t] } else { &self.degens[n][i][t] };
                if f.domain() != &self.group(n, t) || f.codomain() != &self.group(tgt, t) {
                    return Err(AlgebraError::Invariant(format!("structure map out of ({n},{t}) has the wrong shape")));
                }
                if t >= 1 {
                    let g = if is_face { &self.faces[n][i][t - 1] } else { &self.degens[n][i][t - 1] };
                    let a = self.vd(n, t).then(g)?;
                    let b = f.then(&self.vd(tgt, t))?;
                    if a != b {
                        let name = if is_face { "d" } else { "s" };
                        return Err(AlgebraError::Invariant(format!(
                            "{name}{i} out of level {n} does not commute with the vertical differential in degree {t}"
                        )));
                    }
                }
            }
        }
        for t in 0..=self.tmax {
            check_identities(
                top,
                &|n, i| self.faces[n][i][t].clone(),
                &|n, j| self.degens[n][j][t].clone(),
                &|n| AbHom::identity(&self.group(n, t)),
                &|a: &AbHom, b: &AbHom| a.then(b).expect("composable"),
            )
            .map_err(|e| AlgebraError::Invariant(format!("{e} (vertical degree {t})")))?;
        }
        Ok(())
    }

    /// The constant simplicial space on a complex.
    pub fn constant(c: &ChainComplex, top: usize) -> SimplicialSpace {
        let tmax = (c.hi() - 1).max(0) as usize;
        let groups: Vec<FgAbGroup> = (0..=tmax).map(|t| c.group(t as i64)).collect();
        let diffs: Vec<AbHom> = (1..=tmax).map(|t| c.d(t as i64)).collect();
        let level = ChainComplex::new(0, groups.clone(), diffs).expect("complex");
        let ids: Vec<AbHom> = groups.iter().map(AbHom::identity).collect();
        let levels = vec![level; top + 1];
        let faces = (0..=top).map(|n| if n == 0 { Vec::new() } else { vec![ids.clone(); n + 1] }).collect();
        let degens = (0..top).map(|n| vec![ids.clone(); n + 1]).collect();
        SimplicialSpace { tmax, levels, faces, degens }
    }

    /// Horizontal Dold–Kan object of a bicomplex, levels `0..=top`.
    pub fn gamma(k: &Bicomplex, top: usize) -> GammaSpace {
        let tmax = k.max_t();
        let kmax = top.min(k.max_s());
        let rows: Vec<(Vec<FgAbGroup>, Vec<AbHom>)> = (0..=tmax)
            .map(|t| ((0..=kmax).map(|s| k.group(s, t)).collect(), (1..=kmax).map(|s| k.dh(s, t)).collect()))
            .collect();
        let gammas: Vec<Gamma> = rows.iter().map(|(g, d)| Gamma::new(g, d, top)).collect();
        let vmaps: Vec<Vec<AbHom>> = (0..=tmax).map(|t| (0..=kmax).map(|s| k.dv(s, t)).collect()).collect();
        let mut levels = Vec::new();
        for n in 0..=top {
            let groups: Vec<FgAbGroup> = (0..=tmax).map(|t| gammas[t].levels[n].group.clone()).collect();
            let diffs: Vec<AbHom> = (1..=tmax)
                .map(|t| {
                    let m = gamma_map(&vmaps[t], &gammas[t].levels[n], &gammas[t - 1].levels[n]);
                    AbHom::new(groups[t].clone(), groups[t - 1].clone(), m).expect("Γ of d^v")
                })
                .collect();
            levels.push(ChainComplex::new(0, groups, diffs).expect("Γ level"));
        }
        let faces = (0..=top)
            .map(|n| {
                (0..if n == 0 { 0 } else { n + 1 })
                    .map(|i| {
                        (0..=tmax)
                            .map(|t| {
                                let l = &gammas[t].levels;
                                AbHom::new(l[n].group.clone(), l[n - 1].group.clone(), gammas[t].face(n, i)).expect("Γ face")
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let degens = (0..top)
            .map(|n| {
                (0..=n)
                    .map(|j| {
                        (0..=tmax)
                            .map(|t| {
                                let l = &gammas[t].levels;
                                AbHom::new(l[n].group.clone(), l[n + 1].group.clone(), gammas[t].degeneracy(n, j))
                                    .expect("Γ degeneracy")
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let offsets = (0..=top).map(|n| (0..=tmax).map(|t| gammas[t].identity_summand(n)).collect()).collect();
        let space = SimplicialSpace { tmax, levels, faces, degens };
        GammaSpace { space, source: k.clone(), offsets }
    }

    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn tmax(&self) -> usize {
        self.tmax
    }

    pub fn level(&self, n: usize) -> &ChainComplex {
        &self.levels[n]
    }

    pub fn group(&self, n: usize, t: usize) -> FgAbGroup {
        self.levels[n].group(t as i64)
    }

    /// Vertical differential out of `X_{n,t}`.
    pub fn vd(&self, n: usize, t: usize) -> AbHom {
        self.levels[n].d(t as i64)
    }

    pub fn face(&self, n: usize, i: usize, t: usize) -> &AbHom {
        &self.faces[n][i][t]
    }

    pub fn degeneracy(&self, n: usize, j: usize, t: usize) -> &AbHom {
        &self.degens[n][j][t]
    }

    fn kernel_of_faces(&self, n: usize, faces: std::ops::RangeInclusive<usize>) -> SubLevel {
        let lattices = (0..=self.tmax)
            .map(|t| {
                let fs: Vec<&AbHom> = faces.clone().map(|i| &self.faces[n][i][t]).collect();
                if fs.is_empty() {
                    Lattice::full(self.group(n, t).ngens())
                } else {
                    stacked(&fs).kernel_lattice()
                }
            })
            .collect();
        SubLevel::build(n, &self.levels[n], lattices)
    }

    /// `Z_n = ∩_{i=0..n} Ker d_i`, with `Z_0 = X_0`.
    pub fn cycles_object(&self, n: usize) -> SubLevel {
        if n == 0 {
            return self.kernel_of_faces(0, 1..=0);
        }
        self.kernel_of_faces(n, 0..=n)
    }

    /// `C_n = ∩_{i=1..n} Ker d_i`.
    pub fn chains_object(&self, n: usize) -> SubLevel {
        self.kernel_of_faces(n, 1..=n)
    }

    /// `d_0` restricted to `C_n -> Z_{n-1}`, degreewise; fails if it leaves `Z_{n-1}`.
    pub fn d0_map(&self, chains: &SubLevel, cycles_below: &SubLevel) -> Result<Vec<AbHom>, AlgebraError> {
        let n = chains.n;
        (0..=self.tmax).map(|t| chains.parts[t].induced(&self.faces[n][0][t], &cycles_below.parts[t])).collect()
    }

    /// Horizontal normalization `(C_*, d_0)` as a bicomplex, columns `0..=top`.
    pub fn normalized(&self) -> Normalization {
        let chains: Vec<SubLevel> = (0..=self.top()).map(|n| self.chains_object(n)).collect();
        let mut groups = BTreeMap::new();
        let mut dh = BTreeMap::new();
        let mut dv = BTreeMap::new();
        for (n, c) in chains.iter().enumerate() {
            for t in 0..=self.tmax {
                let g = c.group(t);
                if g.is_trivial() {
                    continue;
                }
                groups.insert((n, t), g);
                if t > 0 {
                    let d = c.complex.d(t as i64);
                    if !d.is_zero() {
                        dv.insert((n, t), d);
                    }
                }
                if n > 0 {
                    let f = c.parts[t].induced_unchecked(self.faces[n][0][t].matrix(), &chains[n - 1].parts[t]);
                    if !f.is_zero() {
                        dh.insert((n, t), f);
                    }
                }
            }
        }
        Normalization { chains, bicomplex: Bicomplex::new_unchecked(groups, dh, dv) }
    }

    /// `π_t X_s` for `t = 0..=tmax`.
    pub fn homotopy_groups(&self, s: usize) -> Vec<FgAbGroup> {
        (0..=self.tmax).map(|t| self.levels[s].homology(t as i64).value().clone()).collect()
    }

    /// Reedy test for level `n >= 1`: in every vertical degree `t >= 1` the map
    /// `X_{n,t} -> M_n X_t`, `x -> (d_0 x, ..., d_n x)`, must be onto.
    pub fn matching_check(&self, n: usize) -> MatchingVerdict {
        assert!(n >= 1);
        for t in 1..=self.tmax {
            if !self.matching_onto(n, t) {
                return MatchingVerdict { fibrant: false, failure: Some((n, t)) };
            }
        }
        MatchingVerdict { fibrant: true, failure: None }
    }

    /// Runs [`SimplicialSpace::matching_check`] for `n = 1..=top`.
    pub fn reedy_fibrant(&self) -> MatchingVerdict {
        for n in 1..=self.top() {
            let v = self.matching_check(n);
            if !v.fibrant {
                return v;
            }
        }
        MatchingVerdict { fibrant: true, failure: None }
    }

    fn matching_onto(&self, n: usize, t: usize) -> bool {
        let below = self.group(n - 1, t);
        let m = below.ngens();
        let prod = FgAbGroup::direct_sum_all(std::iter::repeat(&below).take(n + 1));
        // M_n = {(y_0..y_n) : d_i y_j = d_{j-1} y_i for i < j}
        let matching = if n == 1 {
            Lattice::full(prod.ngens())
        } else {
            let below2 = self.group(n - 2, t);
            let pairs: Vec<(usize, usize)> = (0..=n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
            let cod = FgAbGroup::direct_sum_all(std::iter::repeat(&below2).take(pairs.len()));
            let mut c = Matrix::zero(cod.ngens(), prod.ngens());
            let b2 = below2.ngens();
            for (p, &(i, j)) in pairs.iter().enumerate() {
                c.paste(p * b2, j * m, self.faces[n - 1][i][t].matrix());
                c.paste(p * b2, i * m, &self.faces[n - 1][j - 1][t].matrix().scale(&Int::from(-1)));
            }
            AbHom::new(prod.clone(), cod, c).expect("matching constraints").kernel_lattice()
        };
        let fs: Vec<&AbHom> = (0..=n).map(|i| &self.faces[n][i][t]).collect();
        let delta = stacked(&fs);
        delta.image_lattice().contains_lattice(&matching)
    }

    /// Homology of the total complex of the double normalization.
    pub fn diagonal_total(&self) -> Vec<FgAbGroup> {
        let b = self.normalized().bicomplex;
        let tot = b.total();
        (0..=(self.top() + self.tmax)).map(|k| tot.complex.homology(k as i64).value().clone()).collect()
    }
}

/// `Γ(K)` together with the summand that carries `K_{n,t}` inside level `n`.
#[derive(Clone, Debug)]
pub struct GammaSpace {
    pub space: SimplicialSpace,
    pub source: Bicomplex,
    offsets: Vec<Vec<Option<usize>>>,
}

impl GammaSpace {
    /// Embedding `K_{n,t} -> X_{n,t}` onto the identity summand.
    pub fn normal_inclusion(&self, n: usize, t: usize) -> AbHom {
        let k = self.source.group(n, t);
        let x = self.space.group(n, t);
        let mut m = Matrix::zero(x.ngens(), k.ngens());
        if let Some(off) = self.offsets.get(n).and_then(|v| v.get(t)).copied().flatten() {
            m.paste(off, 0, &Matrix::identity(k.ngens()));
        }
        AbHom::new(k, x, m).expect("normal inclusion")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::bicomplex::BicomplexBuilder;

    fn witness() -> Bicomplex {
        BicomplexBuilder::new()
            .free(2, 0, 1)
            .free(1, 0, 1)
            .free(1, 1, 1)
            .free(0, 1, 1)
            .dh(2, 0, vec![vec![1]])
            .dv(1, 1, vec![vec![1]])
            .dh(1, 1, vec![vec![1]])
            .build()
            .unwrap()
    }

    #[test]
    fn gamma_space_is_valid() {
        let g = SimplicialSpace::gamma(&witness(), 3);
        g.space.check().unwrap();
    }

    #[test]
    fn normalization_recovers_the_bicomplex() {
        let k = witness();
        let g = SimplicialSpace::gamma(&k, 3);
        let nb = g.space.normalized().bicomplex;
        for s in 0..=3 {
            for t in 0..=1 {
                assert!(nb.group(s, t).iso_to(&k.group(s, t)), "({s},{t})");
            }
        }
    }

    #[test]
    fn witness_cycles_at_two() {
        let g = SimplicialSpace::gamma(&witness(), 3);
        // d^h is an isomorphism out of (2,0), so the strict cycles vanish there
        let z2 = g.space.cycles_object(2);
        assert!(z2.group(0).is_trivial());
        assert!(z2.group(1).is_trivial());
        assert_eq!(g.space.chains_object(2).group(0).rank(), 1);
    }

    #[test]
    fn cycles_are_kernel_of_d0() {
        let g = SimplicialSpace::gamma(&witness(), 3);
        let x = &g.space;
        for n in 1..=3 {
            let c = x.chains_object(n);
            let zb = x.cycles_object(n - 1);
            let z = x.cycles_object(n);
            let d0 = x.d0_map(&c, &zb).unwrap();
            for t in 0..=x.tmax() {
                let k = d0[t].kernel();
                let lifted: Vec<Vec<Int>> = k.lifts().iter().map(|v| c.parts[t].lift(v)).collect();
                let lat = Lattice::from_generators(x.group(n, t).ngens(), lifted);
                assert!(lat.same_as(z.parts[t].sub()));
            }
        }
    }

    #[test]
    fn constant_discrete_is_fibrant_and_nondiscrete_is_not() {
        let a = ChainComplex::concentrated(FgAbGroup::free(1), 0);
        assert!(SimplicialSpace::constant(&a, 3).reedy_fibrant().fibrant);
        let z = FgAbGroup::free(1);
        let b = ChainComplex::new(0, vec![z.clone(), z], vec![AbHom::from_rows(FgAbGroup::free(1), FgAbGroup::free(1), &[vec![0]]).unwrap()])
            .unwrap();
        let v = SimplicialSpace::constant(&b, 3).reedy_fibrant();
        assert_eq!(v.failure, Some((1, 1)));
    }

    #[test]
    fn witness_total_vanishes() {
        let g = SimplicialSpace::gamma(&witness(), 3);
        for h in g.space.diagonal_total() {
            assert!(h.is_trivial());
        }
    }
}
