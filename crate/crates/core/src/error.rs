use thiserror::Error;

/// Errors produced by the semilattice toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("semilattice must have at least one element")]
    Empty,
    #[error("meet table is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("meet({x},{y}) = {value} is not an element index (n = {n})")]
    EntryOutOfRange {
        x: usize,
        y: usize,
        value: usize,
        n: usize,
    },
    #[error("meet is not idempotent: meet({x},{x}) = {value}")]
    NotIdempotent { x: usize, value: usize },
    #[error("meet is not commutative: meet({x},{y}) = {xy} but meet({y},{x}) = {yx}")]
    NotCommutative {
        x: usize,
        y: usize,
        xy: usize,
        yx: usize,
    },
    #[error("meet is not associative on ({x},{y},{z})")]
    NotAssociative { x: usize, y: usize, z: usize },
    #[error("element 0 is not the least element: meet(0,{x}) = {value}")]
    NoLeastAtZero { x: usize, value: usize },
    #[error("invalid order: {0}")]
    InvalidOrder(String),
    #[error("elements {x} and {y} have no greatest lower bound")]
    NoGreatestLowerBound { x: usize, y: usize },
    #[error("{what}: size {size} exceeds the bound {bound}")]
    TooLarge {
        what: &'static str,
        size: usize,
        bound: usize,
    },
    #[error("element index {index} out of range (n = {n})")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("partial join is only defined on nonzero elements")]
    ArgumentIsZero,
    #[error("{a} is not below {b}")]
    NotComparable { a: usize, b: usize },
    #[error("unknown semilattice name `{0}`")]
    UnknownName(String),
    #[error("attached semilattice is not a tree")]
    NotATree,
    #[error("partition covers {got} elements, semilattice has {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("partition is not a meet congruence")]
    NotACongruence,
    #[error("semilattice has no greatest element, so it is not a lattice")]
    NotALattice,
    #[error("subset contains the least element 0")]
    ContainsZero,
    #[error("subset is not join-closed")]
    NotJoinClosed,
    #[error("duality violated: {0}")]
    DualityViolation(String),
    #[error("semilattice is not a quasi-tree")]
    NotQuasiTree,
    #[error("set is not a convex subsemilattice with at least two elements")]
    NotConvexSubsemilattice,
    #[error("only {available} distinct values, {requested} requested")]
    NotEnoughValues { available: usize, requested: usize },
    #[error("{t} UBTAs exceed the inclusion-exclusion bound {bound}")]
    TooManyUbtas { t: usize, bound: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
