//! Seeded random double complexes.
//!
//! Each object is a direct sum of small pieces (single groups, arrows, commuting
//! squares and staircases carrying a long differential) whose groups are then mixed
//! by random automorphisms, so no basis is aligned with the pieces.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::simplicial::{Bicomplex, Bideg, CochainBicomplex};
use crate::zmod::{AbHom, FgAbGroup, Int, Matrix};

/// Size parameters of a corpus.
#[derive(Clone, Copy, Debug)]
pub struct CorpusParams {
    pub max_s: usize,
    pub max_t: usize,
    pub max_rank: usize,
    pub max_pieces: usize,
}

impl Default for CorpusParams {
    fn default() -> Self {
        CorpusParams { max_s: 6, max_t: 6, max_rank: 3, max_pieces: 5 }
    }
}

const TORSION: [i64; 3] = [2, 3, 4];

#[derive(Default)]
struct Draft {
    orders: BTreeMap<Bideg, Vec<i64>>,
    // (source, source generator, target, target generator, coefficient); target is
    // (s-1, t) for horizontal and (s, t-1) for vertical arrows
    h: Vec<(Bideg, usize, usize, i64)>,
    v: Vec<(Bideg, usize, usize, i64)>,
}

impl Draft {
    fn ngens(&self, p: Bideg) -> usize {
        self.orders.get(&p).map_or(0, |o| o.len())
    }

    /// Adds the piece if every group stays within `max_rank` generators.
    fn try_add(&mut self, piece: &Draft, max_rank: usize) -> bool {
        if piece.orders.iter().any(|(&p, o)| self.ngens(p) + o.len() > max_rank) {
            return false;
        }
        let offs: BTreeMap<Bideg, usize> = piece.orders.keys().map(|&p| (p, self.ngens(p))).collect();
        for (&p, o) in &piece.orders {
            self.orders.entry(p).or_default().extend(o);
        }
        for &((s, t), i, j, c) in &piece.h {
            self.h.push(((s, t), offs[&(s, t)] + i, offs[&(s - 1, t)] + j, c));
        }
        for &((s, t), i, j, c) in &piece.v {
            self.v.push(((s, t), offs[&(s, t)] + i, offs[&(s, t - 1)] + j, c));
        }
        true
    }
}

fn random_group(rng: &mut ChaCha8Rng) -> i64 {
    if rng.gen_bool(0.6) {
        0
    } else {
        TORSION[rng.gen_range(0..3)]
    }
}

/// A homomorphism `Z/a -> Z/b` (0 = Z) that is nonzero, as a coefficient.
fn random_arrow(rng: &mut ChaCha8Rng) -> (i64, i64, i64) {
    match rng.gen_range(0..5) {
        0 => (0, 0, rng.gen_range(1..=3)),
        1 => (0, TORSION[rng.gen_range(0..3)], 1),
        2 => {
            let k = TORSION[rng.gen_range(0..3)];
            (k, k, 1)
        }
        3 => (2, 4, 2),
        _ => (4, 2, 1),
    }
}

fn piece(rng: &mut ChaCha8Rng, p: &CorpusParams) -> Draft {
    let mut d = Draft::default();
    let (ms, mt) = (p.max_s, p.max_t);
    match rng.gen_range(0..10) {
        0 | 1 => {
            let s = rng.gen_range(0..=ms);
            let t = rng.gen_range(0..=mt);
            d.orders.insert((s, t), vec![random_group(rng)]);
        }
        2 | 3 if ms >= 1 => {
            let s = rng.gen_range(1..=ms);
            let t = rng.gen_range(0..=mt);
            let (a, b, c) = random_arrow(rng);
            d.orders.insert((s, t), vec![a]);
            d.orders.insert((s - 1, t), vec![b]);
            d.h.push(((s, t), 0, 0, c));
        }
        4 | 5 if mt >= 1 => {
            let s = rng.gen_range(0..=ms);
            let t = rng.gen_range(1..=mt);
            let (a, b, c) = random_arrow(rng);
            d.orders.insert((s, t), vec![a]);
            d.orders.insert((s, t - 1), vec![b]);
            d.v.push(((s, t), 0, 0, c));
        }
        6 if ms >= 1 && mt >= 1 => {
            let s = rng.gen_range(1..=ms);
            let t = rng.gen_range(1..=mt);
            let (a, b) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
            for q in [(s, t), (s - 1, t), (s, t - 1), (s - 1, t - 1)] {
                d.orders.insert(q, vec![0]);
            }
            d.h.push(((s, t), 0, 0, a));
            d.h.push(((s, t - 1), 0, 0, a));
            d.v.push(((s, t), 0, 0, b));
            d.v.push(((s - 1, t), 0, 0, b));
        }
        _ => {
            // staircase from (s, t) to (s - r, t + r - 1)
            let r = rng.gen_range(2..=4usize).min(ms).min(mt + 1);
            if r < 2 {
                d.orders.insert((0, 0), vec![0]);
                return d;
            }
            let s = rng.gen_range(r..=ms);
            let t = rng.gen_range(0..=mt + 1 - r);
            let last = rng.gen_range(1..=3);
            d.orders.insert((s, t), vec![0]);
            for i in 1..=r {
                d.orders.insert((s - i, t + i - 1), vec![0]);
                if i < r {
                    d.orders.insert((s - i, t + i), vec![0]);
                }
            }
            for i in 0..r {
                let x = (s - i, t + i);
                let c = if i + 1 == r { last } else { 1 };
                d.h.push((x, 0, 0, c));
                if i >= 1 {
                    d.v.push((x, 0, 0, 1));
                }
            }
        }
    }
    if d.orders.is_empty() {
        d.orders.insert((0, 0), vec![random_group(rng)]);
    }
    d
}

/// A random automorphism of `⊕ Z/o_i` and its inverse, built from elementary moves
/// `e_i -> e_i + c e_j` that respect the orders.
fn random_automorphism(rng: &mut ChaCha8Rng, orders: &[i64]) -> (Matrix, Matrix) {
    let n = orders.len();
    let mut a = Matrix::identity(n);
    let mut inv = Matrix::identity(n);
    if n < 2 {
        return (a, inv);
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            continue;
        }
        let c: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
        let (oi, oj) = (orders[i], orders[j]);
        let ok = oi == 0 || (oj != 0 && (c * oi) % oj == 0);
        if !ok {
            continue;
        }
        // a <- a (I + c E_ji)
        let mut e = Matrix::identity(n);
        e.set(j, i, Int::from(c));
        let mut e_inv = Matrix::identity(n);
        e_inv.set(j, i, Int::from(-c));
        a = a.mul(&e);
        inv = e_inv.mul(&inv);
    }
    (a, inv)
}

fn build(draft: &Draft, rng: &mut ChaCha8Rng) -> Bicomplex {
    let groups: BTreeMap<Bideg, FgAbGroup> = draft
        .orders
        .iter()
        .map(|(&p, o)| (p, FgAbGroup::new(o.iter().map(|&x| Int::from(x)).collect())))
        .collect();
    let autos: BTreeMap<Bideg, (Matrix, Matrix)> =
        draft.orders.iter().map(|(&p, o)| (p, random_automorphism(rng, o))).collect();
    let assemble = |arrows: &[(Bideg, usize, usize, i64)], tgt: fn(Bideg) -> Bideg| {
        let mut maps: BTreeMap<Bideg, Matrix> = BTreeMap::new();
        for &(src, i, j, c) in arrows {
            let q = tgt(src);
            let m = maps.entry(src).or_insert_with(|| Matrix::zero(groups[&q].ngens(), groups[&src].ngens()));
            m.set(j, i, Int::from(c));
        }
        maps.into_iter()
            .map(|(src, m)| {
                let q = tgt(src);
                let mixed = autos[&q].0.mul(&m).mul(&autos[&src].1);
                let cod = groups[&q].clone();
                let reduced: Vec<Vec<Int>> = mixed.columns().iter().map(|col| cod.reduce(col)).collect();
                let f = AbHom::from_columns(groups[&src].clone(), cod, &reduced).expect("piece maps are homomorphisms");
                (src, f)
            })
            .collect::<BTreeMap<Bideg, AbHom>>()
    };
    let dh = assemble(&draft.h, |(s, t)| (s - 1, t));
    let dv = assemble(&draft.v, |(s, t)| (s, t - 1));
    Bicomplex::new(groups, dh, dv).expect("pieces assemble to a bicomplex")
}

/// `size` bicomplexes, deterministic in `seed`.
pub fn random_corpus(seed: u64, size: usize) -> Vec<Bicomplex> {
    random_corpus_with(seed, size, CorpusParams::default())
}

pub fn random_corpus_with(seed: u64, size: usize, params: CorpusParams) -> Vec<Bicomplex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..size)
        .map(|_| {
            let mut draft = Draft::default();
            let n = rng.gen_range(1..=params.max_pieces);
            let mut tries = 0;
            while draft.orders.is_empty() || (tries < n && tries < 4 * params.max_pieces) {
                let p = piece(&mut rng, &params);
                draft.try_add(&p, params.max_rank);
                tries += 1;
            }
            build(&draft, &mut rng)
        })
        .collect()
}

/// Cochain bicomplexes obtained by reversing the columns of a random corpus.
pub fn random_cochain_corpus(seed: u64, size: usize) -> Vec<CochainBicomplex> {
    random_corpus(seed, size).iter().map(CochainBicomplex::from_reflection).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_bounded() {
        let a = random_corpus(0, 20);
        let b = random_corpus(0, 20);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(format!("{x:?}"), format!("{y:?}"));
            assert!(x.max_s() <= 6 && x.max_t() <= 6);
            for (_, g) in x.support() {
                assert!(g.ngens() <= 3);
                assert!(g.orders().iter().all(|o| [0, 2, 3, 4].map(Int::from).contains(o)));
            }
        }
    }
}
