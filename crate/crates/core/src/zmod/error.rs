use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix does not carry relations to relations (generator {generator})")]
    IllDefined { generator: usize },
    #[error("denominator is not contained in the subgroup")]
    NotContained,
    #[error("no induced map between these subquotients")]
    NoInducedMap,
    #[error("maps {0} and {1} are not composable")]
    NotComposable(usize, usize),
    #[error("element has no preimage")]
    NoPreimage,
    #[error("map is not an isomorphism")]
    NotIso,
    #[error("not a chain complex: d∘d != 0 at degree {0}")]
    NotComplex(i64),
    #[error("not a chain map at degree {0}")]
    NotChainMap(i64),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("not short exact at degree {degree}: {reason}")]
    NotShortExact { degree: i64, reason: String },
}
