//! Loop extensions of a finite group by twisted multiplications.
//!
//! Starting from a finite group `G`, the eight maps on `G × G` generated by
//! the swap `(a,b) ↦ (b,a)` and the inversion `(a,b) ↦ (a,b⁻¹)` each induce a
//! binary multiplication on `G`. Assigning one such multiplication to each of
//! the four quadrants of `(G ∪ Ḡ) × (G ∪ Ḡ)` yields a quasigroup of order
//! `2|G|` — the extension `G(α,β,γ,δ)`. This crate builds those extensions,
//! decides loop axioms and Bol/Moufang identities on them (both directly on
//! the doubled table and through translated identities over `G` alone),
//! classifies entire tuple spaces, and mechanically checks the built-in
//! catalog of classification claims about which tuples give groups, Moufang
//! loops and left Bol loops.
//!
//! Enumeration over tuple spaces is data-parallel via rayon when the default
//! `parallel` feature is enabled; disabling it falls back to sequential
//! execution with an identical API and identical output.

pub mod analysis;
pub mod classifier;
pub mod extension;
pub mod group;
pub mod identities;
pub mod io;
mod par;
pub mod theta;

pub use analysis::LoopProfile;
pub use classifier::{ClassificationReport, EnumerateOptions, TupleScope};
pub use extension::{ExtensionSpec, IsoWitness, MagmaTable};
pub use group::{ElementSubset, FiniteGroup};
pub use identities::{CheckResult, IdentityId};
pub use theta::ThetaMap;

/// Orders above this are accepted by constructors but are outside the
/// intended desk scale: the extension doubles the order and the Bol scans
/// are cubic. Front ends use it to warn before long runs.
pub const DESK_SCALE_CAP: usize = 256;

/// Read-only view of a finite multiplication table on elements `0..size-1`.
pub trait MulTable {
    fn size(&self) -> usize;
    fn cell(&self, row: usize, col: usize) -> usize;
}

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("order must be positive")]
    ZeroOrder,
    #[error("table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("cell ({row},{col}) holds {value}, out of range for order {order}")]
    ValueOutOfRange { row: usize, col: usize, value: usize, order: usize },
    #[error("not a Latin square: {axis} {index} repeats value {value} at position {position}")]
    NotLatinSquare { axis: &'static str, index: usize, position: usize, value: usize },
    #[error("table has no neutral element")]
    NoNeutral,
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("dihedral order must be even and >= 2, got {order}")]
    OddDihedralOrder { order: usize },
    #[error("symmetric group degree {degree} not supported (max {max})")]
    SymmetricDegreeTooLarge { degree: usize, max: usize },
    #[error("order {order} exceeds the supported maximum {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("identity '{identity}' requires a table with a neutral element")]
    NeutralRequired { identity: String },
    #[error("identity '{identity}' has no translated form over the base group")]
    NoTranslatedForm { identity: String },
    #[error("tuple (beta={beta}, gamma={gamma}) is outside the isomorphism transform domain")]
    TransformDomain { beta: String, gamma: String },
    #[error("not a loop: {reason}")]
    NotLoop { reason: String },
    #[error("group '{label}' is a degenerate base (order 1 or elementary abelian 2-group)")]
    DegenerateBase { label: String },
    #[error("fast path disagreed with direct evaluation on '{identity}' for tuple {tuple}")]
    FastPathMismatch { tuple: String, identity: String },
    #[error("parse error: {message}")]
    Parse { message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
