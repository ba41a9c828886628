use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polygon is not strictly convex: {0}")]
    NonConvexInput(String),
    #[error("polygon is not h-transverse")]
    NotHTransverse,
    #[error("invalid kite parameters ({0}, {1})")]
    InvalidKiteParameters(i64, i64),
    #[error("tangency profile does not match polygon: {0}")]
    ProfileMismatch(String),
    #[error("edge {0} is contracted")]
    ContractedEdge(usize),
    #[error("graph is disconnected")]
    DisconnectedGraph,
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("evaluation {0} does not match the curve")]
    EvaluationMismatch(usize),
    #[error("curve is not floor decomposed")]
    NotFloorDecomposed,
    #[error("curve degree is not dual to the polygon")]
    NotDual,
    #[error("functional contracts every leg")]
    FunctionalContractsEverything,
    #[error("first Betti number {0} exceeds the cycle enumeration cap")]
    TooManyCycles(usize),
    #[error("hypotheses not met: {0}")]
    HypothesesNotMet(String),
    #[error("vertex {0} is not 4-valent")]
    NotFourValent(usize),
    #[error("invalid pairing: {0}")]
    InvalidPairing(String),
    #[error("move is blocked by a fixed evaluation")]
    NoFreedom,
    #[error("move has no wall in this direction")]
    UnboundedMove,
    #[error("curve is not on a wall: {0}")]
    NotOnWall(String),
    #[error("not a flattened cycle wall: {0}")]
    NotFlattenedCycleWall(String),
    #[error("characteristic {p} blocks development at multiplicity {kappa}")]
    CharacteristicGate { p: u64, kappa: u64 },
    #[error("vertex {0} is not a weight-one 2-valent vertex")]
    NotWeightOneVertex(usize),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parameter sits at a pole")]
    ParameterAtPole,
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),
    #[error("degenerate (a, b, c)")]
    DegenerateABC,
    #[error("non-generic parameters: {0}")]
    NonGenericParameters(String),
    #[error("point configuration is not vertically stretched")]
    NotStretched,
    #[error("multiplicities for non-trivial profiles are not supported")]
    UnsupportedProfile,
    #[error("input out of supported range: {0}")]
    OutOfRange(String),
}

impl Error {
    /// Gate errors encode a hypothesis of a theorem failing, as opposed to
    /// malformed input.
    pub fn is_gate(&self) -> bool {
        matches!(self, Error::CharacteristicGate { .. } | Error::HypothesesNotMet(_))
    }
}
