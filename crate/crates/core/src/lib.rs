//! Time-optimal synthesis for the two-control invariant system on SU(2)
//! with drift, `dX/dt = (σ_z + u_x σ_x + u_y σ_y) X`, `|u| ≤ γ`.
//!
//! By a Z-conjugation symmetry the minimum time to a target depends only on
//! its `(1, 1)` entry, a point of the closed unit disk. [`synthesis`] maps a
//! target to the optimal extremal `(ω, s, φ̃)`; [`oracle`] provides
//! independent checks by ODE integration and brute-force search.

pub mod error;
pub mod extremal;
pub mod geometry;
pub mod oracle;
pub mod roots;
pub mod su2;
pub mod suites;
pub mod synthesis;

pub use num_complex;

pub use error::{Error, Result};
pub use extremal::{singular_time, ExtremalLaw, ModelConstants};
pub use geometry::{CriticalParam, Region, Side};
pub use su2::{DiskPoint, Mat2, PauliBasis, Su2Matrix, TargetParams};
pub use synthesis::{synthesize, SynthesisResult};
