use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a supported prime")]
    InvalidPrime(u32),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("paths of length {cutoff} survive; the algebra looks infinite-dimensional")]
    InfiniteDimensional { cutoff: usize },
    #[error("inadmissible relation: {0}")]
    InadmissibleRelation(String),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("invalid algebra data: {0}")]
    InvalidAlgebra(String),
    #[error("modules or maps live over different algebras")]
    AlgebraMismatch,
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("the zero module has no projective cover")]
    ZeroModule,
    #[error("module is projective")]
    ProjectiveInput,
    #[error("module is injective")]
    InjectiveInput,
    #[error("summand {0} is isomorphic to an earlier summand")]
    DuplicateSummand(usize),
    #[error("summand {0} is decomposable")]
    DecomposableSummand(usize),
    #[error("almost split certification failed: {0}")]
    CertificationFailed(String),
    #[error("cutoff exceeded: {0}")]
    CutoffExceeded(String),
    #[error("incomplete input: {0}")]
    IncompleteInput(String),
    #[error("the algebra is not known to be CM-finite")]
    NotCmFinite,
    #[error("syzygy orbit is not periodic: {0}")]
    NonPeriodic(String),
    #[error("not a left exact triple of Gorenstein projectives: {0}")]
    NotLeftExactGp(String),
    #[error("functor does not lie in the preimage of the Gorenstein projectives")]
    NotInSubcategory,
    #[error("functor is projective")]
    ProjectiveFunctor,
    #[error("the algebra has not been certified as an Omega_G-algebra")]
    CertificationRequired,
    #[error("decomposition failed: {0}")]
    Decomposition(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown name: {0}")]
    Unknown(String),
}

pub type Result<T> = std::result::Result<T, Error>;
