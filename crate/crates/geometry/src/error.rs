use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeomError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("unknown vertex id {0}")]
    UnknownVertex(u32),
    #[error("unknown edge id {0}")]
    UnknownEdge(u32),
    #[error("self-loop on vertex {0}")]
    SelfLoop(u32),
    #[error("edge {0} was already subdivided")]
    EdgeNotLive(u32),
    #[error("point does not lie strictly inside edge {0}")]
    NotOnSegment(u32),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
