//! Homological dimensions and Gorenstein status of almost gentle algebras,
//! computed from combinatorial data of the bound quiver and cross-checked
//! against an exact linear algebra oracle.

pub mod check;
pub mod fixtures;
pub mod forbidden;
pub mod format;
pub mod generate;
pub mod homdim;
pub mod oracle;
pub mod quiver;
pub mod strings;
pub mod syzygy;

pub use forbidden::{
    delta_forbidden_sup, forbidden_cycles, sup_forbidden_from_arrow, sup_forbidden_from_vertex, CycleList,
    ForbiddenPaths, ForbiddenWalk, LengthOrInf, RelationDigraph,
};
pub use format::{emit_agq, load_agq, parse_agq, LoadError, ParseError};
pub use homdim::{
    global_dimension, gorenstein_report, pdim_directed_string, pdim_injective, pdim_injective_envelope, pdim_simple,
    self_injective_dimension, self_injective_infinite_by_cycle, CycleCondition, CycleWitness, DimReport,
    GorensteinReport, HomDim, Method,
};
pub use quiver::{
    validate_bound_quiver, AlmostGentlePair, Arrow, ArrowId, BoundQuiverSpec, Path, PathError, Quiver, RelationSet,
    ValidationReport, VertexId, Violation, Warning,
};
pub use strings::{anticlaw_of, claw_of, module_dims, AntiClaw, Claw, ModuleSpec};
pub use syzygy::{
    is_invalid_vertex, omega1_directed_string, omega1_injective, resolve_symbolic, Decomposition, Resolution, Summand,
    Termination,
};
