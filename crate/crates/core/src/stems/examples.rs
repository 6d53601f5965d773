//! Hand-built stems.

use std::collections::BTreeMap;

use crate::simplicial::{Bicomplex, BicomplexBuilder};
use crate::zmod::AbHom;

use super::stem::{stem_of_chains, SimplicialStem, Stem};

/// `Z` at `(s, 0)`, `(s-1, 0)`, `(s-1, 1)`, `(s-2, 1)`: an isomorphism
/// `d^2 : E^2_{s,0} -> E^2_{s-2,1}` and nothing else.
pub fn staircase(s: usize, t: usize) -> Bicomplex {
    BicomplexBuilder::new()
        .free(s, t, 1)
        .free(s - 1, t, 1)
        .free(s - 1, t + 1, 1)
        .free(s - 2, t + 1, 1)
        .dh(s, t, vec![vec![1]])
        .dv(s - 1, t + 1, vec![vec![1]])
        .dh(s - 1, t + 1, vec![vec![1]])
        .build()
        .expect("staircase")
}

/// A 1-stem that is not `P[1]` of anything: window 0 comes from a staircase with
/// `d^2 : (4,0) -> (2,1)`, windows 1 and 2 from one with `d^2 : (2,1) -> (0,2)`. The
/// two agree on `π_1` through the window map, so the composite of the two `d^2` is
/// nonzero.
pub fn spliced_stem() -> SimplicialStem {
    let x = stem_of_chains(&staircase(4, 0), 1);
    let y = stem_of_chains(&staircase(2, 1), 1);
    let windows = vec![x.windows[0].clone(), y.windows[1].clone(), y.windows[2].clone()];
    let mut q1 = BTreeMap::new();
    q1.insert((2, 1), AbHom::identity(&windows[1].group(2, 1)));
    let maps = vec![BTreeMap::new(), q1, y.maps[2].clone()];
    Stem { order: 1, horizon: 2, windows, maps, realization: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stems::stem_validate;

    #[test]
    fn spliced_stem_is_a_stem() {
        let s = spliced_stem();
        let v = stem_validate(&s);
        assert!(v.valid(), "{:?}", v.violation);
        assert_eq!(s.windows[0].group(2, 1).ngens(), 1);
        assert_eq!(s.windows[1].group(2, 1).ngens(), 1);
    }
}
