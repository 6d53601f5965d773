//! Exactness checks and connecting homomorphisms.

use super::chain::{ChainComplex, ChainMap};
use super::error::AlgebraError;
use super::hom::AbHom;
use super::int::Int;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactVerdict {
    pub exact: bool,
    /// Index of the first group (counting the domain of the first map as 0) where
    /// image and kernel differ.
    pub first_failure: Option<usize>,
}

/// Checks `Im f_i = Ker f_{i+1}` at every interior group of `f_0, f_1, ...`.
pub fn check_exact(maps: &[AbHom]) -> Result<ExactVerdict, AlgebraError> {
    for i in 1..maps.len() {
        if maps[i - 1].codomain() != maps[i].domain() {
            return Err(AlgebraError::NotComposable(i - 1, i));
        }
    }
    for i in 1..maps.len() {
        let im = maps[i - 1].image_lattice();
        let ker = maps[i].kernel_lattice();
        if !im.same_as(&ker) {
            return Ok(ExactVerdict { exact: false, first_failure: Some(i) });
        }
    }
    Ok(ExactVerdict { exact: true, first_failure: None })
}

/// A short exact sequence `0 -> A -f-> B -g-> C -> 0` of chain complexes.
#[derive(Clone, Debug)]
pub struct ChainSes {
    pub f: ChainMap,
    pub g: ChainMap,
}

impl ChainSes {
    pub fn new(f: ChainMap, g: ChainMap) -> Result<ChainSes, AlgebraError> {
        let lo = f.source.lo().min(f.target.lo()).min(g.target.lo());
        let hi = f.source.hi().max(f.target.hi()).max(g.target.hi());
        for t in lo..hi {
            let (ft, gt) = (f.at(t), g.at(t));
            if ft.codomain() != gt.domain() {
                return Err(AlgebraError::NotShortExact { degree: t, reason: "maps not composable".into() });
            }
            if !ft.is_injective() {
                return Err(AlgebraError::NotShortExact { degree: t, reason: "first map not injective".into() });
            }
            if !gt.is_surjective() {
                return Err(AlgebraError::NotShortExact { degree: t, reason: "second map not surjective".into() });
            }
            if !check_exact(&[ft, gt])?.exact {
                return Err(AlgebraError::NotShortExact { degree: t, reason: "not exact in the middle".into() });
            }
        }
        Ok(ChainSes { f, g })
    }

    pub fn a(&self) -> &ChainComplex {
        &self.f.source
    }

    pub fn b(&self) -> &ChainComplex {
        &self.f.target
    }

    pub fn c(&self) -> &ChainComplex {
        &self.g.target
    }

    /// `H_t(C) -> H_{t-1}(A)` by lifting a cycle to `B_t`, taking its boundary,
    /// and pulling that back along `f`.
    pub fn connecting(&self, t: i64) -> AbHom {
        let hc = self.c().homology(t);
        let ha = self.a().homology(t - 1);
        let g = self.g.at(t);
        let f = self.f.at(t - 1);
        let db = self.b().d(t);
        let cols: Vec<Vec<Int>> = hc
            .lifts()
            .iter()
            .map(|z| {
                let b = g.preimage_of(z).expect("g is surjective");
                let bd = db.apply(&b);
                let a = f.preimage_of(&bd).expect("boundary of a lift lies in the image of f");
                ha.coords(&a).expect("pullback is a cycle")
            })
            .collect();
        AbHom::from_columns(hc.value().clone(), ha.value().clone(), &cols).expect("connecting map well defined")
    }

    /// `... -> H_t A -> H_t B -> H_t C -> H_{t-1} A -> ...` over all degrees, top first.
    pub fn homology_les(&self) -> Vec<AbHom> {
        let lo = self.a().lo().min(self.b().lo()).min(self.c().lo());
        let hi = self.a().hi().max(self.b().hi()).max(self.c().hi());
        let mut out = Vec::new();
        for t in (lo..=hi).rev() {
            out.push(self.f.on_homology(t));
            out.push(self.g.on_homology(t));
            out.push(self.connecting(t));
        }
        out
    }
}

/// The connecting map of a short exact sequence of chain complexes in degree `t`.
pub fn connecting_map(f: &ChainMap, g: &ChainMap, t: i64) -> Result<AbHom, AlgebraError> {
    let ses = ChainSes::new(f.clone(), g.clone())?;
    Ok(ses.connecting(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zmod::group::FgAbGroup;

    fn z() -> FgAbGroup {
        FgAbGroup::free(1)
    }

    #[test]
    fn exactness_examples() {
        let zero_in = AbHom::zero(FgAbGroup::zero(), z());
        let zero_out = AbHom::zero(z(), FgAbGroup::zero());
        let id = AbHom::identity(&z());
        assert!(check_exact(&[zero_in.clone(), id, zero_out]).unwrap().exact);

        let twice = AbHom::from_rows(z(), z(), &[vec![2]]).unwrap();
        let z2 = FgAbGroup::cyclic(2);
        let p2 = AbHom::from_rows(z(), z2.clone(), &[vec![1]]).unwrap();
        let v = check_exact(&[zero_in.clone(), twice.clone(), p2, AbHom::zero(z2, FgAbGroup::zero())]).unwrap();
        assert!(v.exact);

        let z4 = FgAbGroup::cyclic(4);
        let p4 = AbHom::from_rows(z(), z4.clone(), &[vec![1]]).unwrap();
        let v = check_exact(&[zero_in, twice, p4, AbHom::zero(z4, FgAbGroup::zero())]).unwrap();
        assert_eq!(v.first_failure, Some(2));
    }

    #[test]
    fn non_composable_rejected() {
        let a = AbHom::identity(&z());
        let b = AbHom::identity(&FgAbGroup::cyclic(2));
        assert_eq!(check_exact(&[a, b]).unwrap_err(), AlgebraError::NotComposable(0, 1));
    }

    #[test]
    fn cone_connecting_map_is_multiplication_by_two() {
        // 0 -> Z[0] -> cone(x2: Z -> Z) -> Z[1] -> 0
        let a = ChainComplex::concentrated(z(), 0);
        let c = ChainComplex::concentrated(z(), 1);
        let d = AbHom::from_rows(z(), z(), &[vec![2]]).unwrap();
        let b = ChainComplex::new(0, vec![z(), z()], vec![d]).unwrap();
        let f = ChainMap::new(a, b.clone(), 0, vec![AbHom::identity(&z())]).unwrap();
        let g = ChainMap::new(b, c, 1, vec![AbHom::identity(&z())]).unwrap();
        let ses = ChainSes::new(f, g).unwrap();
        let delta = ses.connecting(1);
        assert_eq!(delta.matrix().get(0, 0).abs(), Int::from(2));
        let les = ses.homology_les();
        let mut seq = vec![AbHom::zero(FgAbGroup::zero(), les[0].domain().clone())];
        seq.extend(les);
        let last = seq.last().unwrap().codomain().clone();
        seq.push(AbHom::zero(last, FgAbGroup::zero()));
        assert!(check_exact(&seq).unwrap().exact);
    }

    #[test]
    fn split_sequence_has_zero_connecting_map() {
        let a = ChainComplex::concentrated(z(), 0);
        let c = ChainComplex::concentrated(z(), 1);
        let z2 = FgAbGroup::free(1);
        let b = ChainComplex::new(0, vec![z2.clone(), z2], vec![AbHom::zero(z(), z())]).unwrap();
        let f = ChainMap::new(a, b.clone(), 0, vec![AbHom::identity(&z())]).unwrap();
        let g = ChainMap::new(b, c, 1, vec![AbHom::identity(&z())]).unwrap();
        assert!(connecting_map(&f, &g, 1).unwrap().is_zero());
    }
}
