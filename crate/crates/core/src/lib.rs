//! Certified lower bounds for Seshadri constants of ample line bundles on
//! smooth projective surfaces with Picard number one.
//!
//! Every bound is an [`ExactScalar`]: rationals extended by square roots
//! nested at most twice, compared exactly. The modules follow the shape of
//! the argument:
//!
//! - [`surface`]: numerical surface models and their consistency rules;
//! - [`genus`]: the genus-formula bounds, the curve-class oracle and the
//!   closed-form bound;
//! - [`canonical`]: bounds for the canonical polarization by `K²`;
//! - [`comparative`]: competing bounds and the exact chain audit;
//! - [`wps`]: invariants of weighted projective hypersurfaces;
//! - [`report`]: serializable documents for the command-line tool.

pub mod canonical;
pub mod comparative;
pub mod genus;
pub mod report;
pub mod scalar;
pub mod surface;
pub mod wps;

pub use canonical::{CanonicalCase, CanonicalCaseTrace};
pub use comparative::{AuditFinding, AuditGrid, BoundTable, Chain, Verdict};
pub use genus::{BoundCertificate, BoundSource, CurveClass, PointScope, DEFAULT_P_MAX};
pub use report::{Format, RenderedScalar, ReportDocument, ReportItem, ReportStatus};
pub use scalar::{ExactScalar, ScalarError};
pub use surface::{PolarizedSurface, SurfaceClass, ValidationReport};
pub use wps::{HypersurfaceInvariants, WeightedHypersurface, Weights};
