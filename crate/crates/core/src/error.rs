use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty point set")]
    EmptyPointSet,
    #[error("center occupied")]
    CenterOccupied,
    #[error("collinear basis")]
    CollinearBasis,
    #[error("infinite rotation group (collinear)")]
    InfiniteRotationGroup,
    #[error("unclassifiable rotation set")]
    Unclassifiable,
    #[error("rotation set is not closed under composition")]
    NotClosed,
    #[error("supergroup of D2 present")]
    SupergroupOfD2,
    #[error("local view undefined on plane")]
    LocalViewOnPlane,
    #[error("multiplicity")]
    Multiplicity,
    #[error("wrong phase")]
    WrongPhase,
    #[error("unbreakable orbit")]
    UnbreakableOrbit,
    #[error("already planar")]
    AlreadyPlanar,
    #[error("non-polyhedral input")]
    NotPolyhedral,
    #[error("unsolvable input")]
    UnsolvableInput,
    #[error("no adversary exists")]
    NoAdversary,
    #[error("target group does not embed in the rotation group of the configuration")]
    NoEmbedding,
    #[error("folding > 1, construction inapplicable")]
    FoldingTooLarge,
    #[error("robot index {index} out of range for {len} robots")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
