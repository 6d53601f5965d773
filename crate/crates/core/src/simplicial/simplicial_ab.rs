//! Simplicial abelian groups stored up to a top dimension.

use crate::zmod::{AbHom, AlgebraError, ChainComplex, FgAbGroup, Lattice, Subquotient};

use super::gamma::Gamma;

/// Levels `X_0 .. X_top` with faces `faces[n][i] : X_n -> X_{n-1}` (`faces[0]` empty)
/// and degeneracies `degens[n][j] : X_n -> X_{n+1}` for `n < top`. Levels above
/// `top` are understood to be degenerate.
#[derive(Clone, Debug)]
pub struct SimplicialAb {
    levels: Vec<FgAbGroup>,
    faces: Vec<Vec<AbHom>>,
    degens: Vec<Vec<AbHom>>,
}

/// Which simplicial identity failed, and where.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityFailure {
    pub identity: String,
    pub level: usize,
}

impl std::fmt::Display for IdentityFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} fails on level {}", self.identity, self.level)
    }
}

/// Checks every simplicial identity among the given structure maps; `then(a, b)`
/// applies `a` first.
pub(crate) fn check_identities<M: PartialEq + Clone>(
    top: usize,
    face: &dyn Fn(usize, usize) -> M,
    degen: &dyn Fn(usize, usize) -> M,
    id: &dyn Fn(usize) -> M,
    then: &dyn Fn(&M, &M) -> M,
) -> Result<(), IdentityFailure> {
    let fail = |identity: String, level: usize| Err(IdentityFailure { identity, level });
    for n in 2..=top {
        for j in 1..=n {
            for i in 0..j {
                // d_i d_j = d_{j-1} d_i on X_n
                if then(&face(n, j), &face(n - 1, i)) != then(&face(n, i), &face(n - 1, j - 1)) {
                    return fail(format!("d{i} d{j} = d{} d{i}", j - 1), n);
                }
            }
        }
    }
    for n in 0..top {
        for j in 0..=n {
            for i in 0..=n + 1 {
                let lhs = then(&degen(n, j), &face(n + 1, i));
                let ok = if i < j {
                    lhs == then(&face(n, i), &degen(n - 1, j - 1))
                } else if i == j || i == j + 1 {
                    lhs == id(n)
                } else {
                    lhs == then(&face(n, i - 1), &degen(n - 1, j))
                };
                if !ok {
                    return fail(format!("d{i} s{j}"), n);
                }
            }
        }
    }
    for n in 0..top.saturating_sub(1) {
        for j in 0..=n {
            for i in 0..=j {
                // s_i s_j = s_{j+1} s_i on X_n
                if then(&degen(n, j), &degen(n + 1, i)) != then(&degen(n, i), &degen(n + 1, j + 1)) {
                    return fail(format!("s{i} s{j} = s{} s{i}", j + 1), n);
                }
            }
        }
    }
    Ok(())
}

impl SimplicialAb {
    pub fn new(levels: Vec<FgAbGroup>, faces: Vec<Vec<AbHom>>, degens: Vec<Vec<AbHom>>) -> Result<SimplicialAb, AlgebraError> {
        let x = SimplicialAb::new_unchecked(levels, faces, degens)?;
        x.check().map_err(|e| AlgebraError::Invariant(e.to_string()))?;
        Ok(x)
    }

    fn new_unchecked(levels: Vec<FgAbGroup>, faces: Vec<Vec<AbHom>>, degens: Vec<Vec<AbHom>>) -> Result<SimplicialAb, AlgebraError> {
        let top = levels.len().checked_sub(1).ok_or_else(|| AlgebraError::Invariant("no levels".into()))?;
        if faces.len() != top + 1 || degens.len() != top {
            return Err(AlgebraError::Invariant("wrong number of structure maps".into()));
        }
        for n in 0..=top {
            if faces[n].len() != if n == 0 { 0 } else { n + 1 } {
                return Err(AlgebraError::Invariant(format!("level {n} needs {} faces", n + 1)));
            }
            for f in &faces[n] {
                if f.domain() != &levels[n] || f.codomain() != &levels[n - 1] {
                    return Err(AlgebraError::Invariant(format!("face out of level {n} has the wrong shape")));
                }
            }
        }
        for n in 0..top {
            if degens[n].len() != n + 1 {
                return Err(AlgebraError::Invariant(format!("level {n} needs {} degeneracies", n + 1)));
            }
            for s in &degens[n] {
                if s.domain() != &levels[n] || s.codomain() != &levels[n + 1] {
                    return Err(AlgebraError::Invariant(format!("degeneracy out of level {n} has the wrong shape")));
                }
            }
        }
        Ok(SimplicialAb { levels, faces, degens })
    }

    pub fn check(&self) -> Result<(), IdentityFailure> {
        check_identities(
            self.top(),
            &|n, i| self.faces[n][i].clone(),
            &|n, j| self.degens[n][j].clone(),
            &|n| AbHom::identity(&self.levels[n]),
            &|a: &AbHom, b: &AbHom| a.then(b).expect("composable"),
        )
    }

    /// The constant simplicial group on `a`.
    pub fn constant(a: &FgAbGroup, top: usize) -> SimplicialAb {
        let id = AbHom::identity(a);
        let levels = vec![a.clone(); top + 1];
        let faces = (0..=top).map(|n| if n == 0 { Vec::new() } else { vec![id.clone(); n + 1] }).collect();
        let degens = (0..top).map(|n| vec![id.clone(); n + 1]).collect();
        SimplicialAb { levels, faces, degens }
    }

    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &FgAbGroup {
        &self.levels[n]
    }

    pub fn face(&self, n: usize, i: usize) -> &AbHom {
        &self.faces[n][i]
    }

    pub fn degeneracy(&self, n: usize, j: usize) -> &AbHom {
        &self.degens[n][j]
    }

    /// `N_n = ∩_{i=1..n} Ker d_i` as a subgroup of `X_n`.
    pub fn normalized_level(&self, n: usize) -> Subquotient {
        let g = &self.levels[n];
        let mut lat = Lattice::full(g.ngens());
        for i in 1..=n {
            lat = lat.intersect(&self.faces[n][i].kernel_lattice());
        }
        Subquotient::new(g.clone(), lat, Lattice::zero(g.ngens())).expect("normalized level")
    }

    /// The Moore complex `(N_*, d_0)` in degrees `0..=top`.
    pub fn normalize(&self) -> ChainComplex {
        let subs: Vec<Subquotient> = (0..=self.top()).map(|n| self.normalized_level(n)).collect();
        let groups: Vec<FgAbGroup> = subs.iter().map(|s| s.value().clone()).collect();
        let diffs: Vec<AbHom> = (1..=self.top())
            .map(|n| subs[n].induced_unchecked(self.faces[n][0].matrix(), &subs[n - 1]))
            .collect();
        ChainComplex::new(0, groups, diffs).expect("Moore complex")
    }

    /// `π_n X = H_n(N X)` for `n < top` (the top degree is not reliable).
    pub fn homotopy(&self, n: usize) -> FgAbGroup {
        self.normalize().homology(n as i64).value().clone()
    }
}

/// Γ(C) up to level `top`, for a complex supported in degrees `0..=top`.
pub fn dold_kan(c: &ChainComplex, top: usize) -> SimplicialAb {
    assert!(c.lo() >= 0 || c.hi() <= c.lo(), "complex must live in nonnegative degrees");
    let kmax = top.min((c.hi() - 1).max(0) as usize);
    let groups: Vec<FgAbGroup> = (0..=kmax).map(|k| c.group(k as i64)).collect();
    let diffs: Vec<AbHom> = (1..=kmax).map(|k| c.d(k as i64)).collect();
    let gm = Gamma::new(&groups, &diffs, top);
    let levels: Vec<FgAbGroup> = gm.levels.iter().map(|l| l.group.clone()).collect();
    let faces = (0..=top)
        .map(|n| {
            if n == 0 {
                Vec::new()
            } else {
                (0..=n)
                    .map(|i| AbHom::new(levels[n].clone(), levels[n - 1].clone(), gm.face(n, i)).expect("Γ face"))
                    .collect()
            }
        })
        .collect();
    let degens = (0..top)
        .map(|n| {
            (0..=n)
                .map(|j| AbHom::new(levels[n].clone(), levels[n + 1].clone(), gm.degeneracy(n, j)).expect("Γ degeneracy"))
                .collect()
        })
        .collect();
    SimplicialAb { levels, faces, degens }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zmod::Int;

    fn cone2() -> ChainComplex {
        let z = FgAbGroup::free(1);
        let d = AbHom::from_rows(z.clone(), z.clone(), &[vec![2]]).unwrap();
        ChainComplex::new(0, vec![z.clone(), z], vec![d]).unwrap()
    }

    #[test]
    fn constant_normalizes_to_degree_zero() {
        let x = SimplicialAb::constant(&FgAbGroup::cyclic(3), 4);
        x.check().unwrap();
        let n = x.normalize();
        assert_eq!(n.group(0).torsion(), &[Int::from(3)]);
        for k in 1..=4 {
            assert!(n.group(k).is_trivial());
        }
    }

    #[test]
    fn gamma_satisfies_identities_and_round_trips() {
        let x = dold_kan(&cone2(), 4);
        x.check().unwrap();
        assert_eq!(x.level(2).ngens(), 3);
        let n = x.normalize();
        assert_eq!(n.group(0).rank(), 1);
        assert_eq!(n.group(1).rank(), 1);
        assert!(n.group(2).is_trivial());
        assert_eq!(x.homotopy(0).torsion(), &[Int::from(2)]);
        assert!(x.homotopy(1).is_trivial());
    }

    #[test]
    fn single_degree_one() {
        let c = ChainComplex::concentrated(FgAbGroup::free(1), 1);
        let x = dold_kan(&c, 3);
        x.check().unwrap();
        assert_eq!(x.homotopy(1).rank(), 1);
        assert!(x.homotopy(0).is_trivial());
    }

    #[test]
    fn broken_face_is_reported() {
        let mut x = dold_kan(&cone2(), 3);
        let g = x.levels[2].clone();
        let h = x.levels[1].clone();
        x.faces[2][1] = AbHom::zero(g, h);
        assert!(x.check().is_err());
    }
}
