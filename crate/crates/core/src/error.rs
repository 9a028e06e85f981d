use thiserror::Error;

/// Errors raised by the model, the simulator and the verification harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("ability {0} outside [0, 1]")]
    AbilityRange(f64),

    #[error("signal {0} outside [-1, 1]")]
    SignalRange(f64),

    #[error("belief {0} is not a probability")]
    BeliefRange(f64),

    #[error("binary signal accuracy {0} outside [1/2, 1]")]
    AccuracyRange(f64),

    #[error("conditioning on s >= 1 is a probability-zero event")]
    DegenerateCondition,

    #[error("(a, b) = ({a}, {b}) has b <= a/2: the second voter herds and the third voter is never reached")]
    SecondVoterHerds { a: f64, b: f64 },

    #[error("strategic optimisation requires the neutral prior 1/2, got {0}")]
    UnsupportedPrior(f64),

    #[error("ability indices require a sorted triple, got ({0}, {1}, {2})")]
    UnsortedTriple(f64, f64, f64),

    #[error("mean {m} with heterogeneity {mu} maps to an ability above 1")]
    DiversityDomain { m: f64, mu: f64 },

    #[error("expected {expected} signals for the jury, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("majority voting needs an odd jury, got size {0}")]
    EvenJurySize(usize),

    #[error("a jury needs at least one member")]
    EmptyJury,

    #[error("at least one trial is required")]
    ZeroTrials,

    #[error("exhaustive search over {size}! orderings refused; the permutation guard allows at most {limit} jurors")]
    JuryTooLarge { size: usize, limit: usize },

    #[error("exact search needs exactly three abilities, got {0}")]
    ExactSearchSize(usize),

    #[error("cutoff undefined: denominator vanishes for this accuracy pair")]
    DegenerateCutoff,

    #[error("unknown check id {0:?}; see the catalog for registered checks")]
    UnknownCheck(String),
}
