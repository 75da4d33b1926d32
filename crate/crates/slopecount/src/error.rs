use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Core(slopecount_core::Error),

    #[error(
        "refusing to enumerate {points} points (budget {limit}); this is up to \
         {wheel_evaluations} wheel-polynomial evaluations, pass --override-budget to run anyway"
    )]
    Budget {
        points: u128,
        limit: u128,
        wheel_evaluations: u128,
    },

    #[error(
        "verify {suite} is limited to n <= {max} (got {n}); pass --override-budget to run anyway"
    )]
    SuiteLimit { suite: String, n: usize, max: usize },

    #[error("the graph shortcut only decides ideal J over F_2 (got ideal {ideal} over F_{q})")]
    ShortcutUnsupported {
        q: u8,
        ideal: slopecount_core::IdealSpec,
    },

    #[error("graph shortcut and polynomial evaluation disagree at {point}")]
    CrossCheck { point: String },

    #[error("worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl From<slopecount_core::Error> for Error {
    fn from(e: slopecount_core::Error) -> Self {
        match e {
            slopecount_core::Error::Budget { points, limit } => Error::Budget {
                points,
                limit,
                wheel_evaluations: points,
            },
            other => Error::Core(other),
        }
    }
}
