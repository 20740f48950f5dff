use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("algebra dimension {0} outside supported range 1..=16")]
    DimensionOutOfRange(usize),
    #[error("gram matrix must be {dim}x{dim}")]
    GramShape { dim: usize },
    #[error("gram matrix not symmetric at ({i}, {j}): {a} vs {b}")]
    NonSymmetricGram { i: usize, j: usize, a: f64, b: f64 },
    #[error("operands belong to different algebras")]
    AlgebraMismatch,
    #[error("grade {k} out of range for a dimension-{dim} algebra")]
    GradeOutOfRange { k: usize, dim: usize },
    #[error("expected a pure grade-{expected} element")]
    WrongGrade { expected: usize },
    #[error("expected an even-grade element")]
    NotEven,
    #[error("pseudoscalar is not invertible (square {square:e}); the subspace contains a degenerate direction")]
    NonInvertiblePseudoscalar { square: f64 },
    #[error("versor norm V*reverse(V) is not a nonzero scalar")]
    NotVersor,
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("point at infinity: normalization inner product vanishes")]
    PointAtInfinity,
    #[error("vector is not null (normalized square {0:e})")]
    NotNull(f64),
    #[error("expected a vector supported only on {0}")]
    WrongSupport(&'static str),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("element has a nonzero radical (lightlike-infinity) component of norm {0:e}")]
    NonzeroRadical(f64),
    #[error("observer and shell are linearly dependent; the intersection is degenerate")]
    DegenerateIntersection,
    #[error("delta sequence must be positive and strictly decreasing")]
    NonMonotoneDeltas,
    #[error("initial velocity is not unit timelike (u.u = {0})")]
    NotUnitTimelike(f64),
    #[error("step count must be positive")]
    InvalidSteps,
    #[error("inconsistent kinematic state: {0}")]
    InconsistentState(String),
    #[error("unknown basis blade name `{0}`")]
    UnknownBlade(String),
}

impl Error {
    /// True for failures caused by numerically degenerate input rather than
    /// malformed requests.
    pub fn is_degeneracy(&self) -> bool {
        matches!(
            self,
            Error::NonInvertiblePseudoscalar { .. }
                | Error::NotVersor
                | Error::PointAtInfinity
                | Error::NotNull(_)
                | Error::Degenerate(_)
                | Error::NonzeroRadical(_)
                | Error::DegenerateIntersection
        )
    }
}
