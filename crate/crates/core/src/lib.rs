//! Exact-arithmetic verification toolkit for two Fano threefold scenarios.
//!
//! Everything here is computed over the rationals or the quadratic field
//! Q(ω) with ω² + ω + 1 = 0; no floating point is used anywhere.  The crate
//! is organised bottom-up:
//!
//! * [`exactnum`] — arbitrary-precision rationals and the field Q(ω);
//! * [`polylin`] — sparse multivariate polynomials over Q(ω), dense exact
//!   linear algebra, resultants and plane-curve smoothness elimination;
//! * [`grouprep`] — finite matrix groups over Q(ω), linear characters,
//!   symmetric/tensor constructions and eigenspace dimensions;
//! * [`chow`] — numerical Chow rings of threefolds (triple-intersection
//!   tensors, blow-ups along curves, log discrepancies, Riemann–Roch);
//! * [`ruled`] — Hirzebruch-surface intersection arithmetic and the
//!   two-curve chain state machine for iterated blow-ups;
//! * [`zariski`] — Zariski-decomposition ray certificates, exact volume
//!   integration, S-invariants, β-values and cone positivity;
//! * [`report`] — check outcomes and their JSON/Markdown rendering;
//! * [`scenario`] — JSON scenario assets (rings, classes, certificates);
//! * [`scen317`], [`scen216`] — the two scenario packs wiring all of the
//!   above into named, reportable checks.

pub mod chow;
pub mod exactnum;
pub mod grouprep;
pub mod polylin;
pub mod report;
pub mod ruled;
pub mod scen216;
pub mod scen317;
pub mod scenario;
pub mod zariski;

pub use exactnum::{Cyclotomic, Rational};
pub use polylin::{CycMatrix, MultiPoly};
pub use report::{CheckReport, Status};
