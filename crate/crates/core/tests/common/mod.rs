//! Strategies shared by the property suites and the acceptance run.
#![allow(dead_code)]

use proptest::prelude::*;

use spiralss::oracle::{random_corpus_with, CorpusParams};
use spiralss::simplicial::Bicomplex;
use spiralss::zmod::{ChainComplex, Int, Matrix};

/// Integer matrices up to `max x max` with entries in `-9..=9`.
pub fn matrix(max: usize) -> impl Strategy<Value = Matrix> {
    (0..=max, 0..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-9i64..=9, c), r).prop_map(move |rows| {
            let data = rows.into_iter().map(|row| row.into_iter().map(Int::from).collect()).collect();
            Matrix::from_int_rows(r, c, data)
        })
    })
}

/// A seeded corpus object with support in `0..=max` both ways.
pub fn bicomplex(max: usize) -> impl Strategy<Value = Bicomplex> {
    any::<u64>().prop_map(move |seed| {
        let params = CorpusParams { max_s: max, max_t: max, max_rank: 3, max_pieces: 5 };
        random_corpus_with(seed, 1, params).remove(0)
    })
}

/// A chain complex in degrees `0..=5`: one column of a random bicomplex.
pub fn complex() -> impl Strategy<Value = ChainComplex> {
    (bicomplex(5), 0usize..=5).prop_map(|(b, s)| b.column(s.min(b.max_s())))
}
