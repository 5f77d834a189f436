//! Parametric families of ideals over `F_p[t_1..t_k]` or the integers, their
//! fibers, and sweep checks comparing generic and special fibers.
//!
//! Verdicts are evidence on finitely many sampled fibers. The family axioms
//! (flatness, equidimensionality, reduced fibers) are not verified.

mod spec;
mod sweep;

pub use spec::{specialize_fiber, FamilyBase, FamilySpec, Fiber, FiberData, FiberSpec, IntPoly};
pub use sweep::{
    fiber_rows, hk_monotonicity_check, hs_family_sweep, hs_verdict, modp_sweep, modp_verdict_bound,
    monotonicity_verdict, semicontinuity_verdict, term_semicontinuity_check, uniform_bound_probe,
    uniform_bound_verdict, FiberRow, ModpResult, ModpRow, SweepKind, SweepResult, UniformBoundReport,
    Verdict, Violation,
};
