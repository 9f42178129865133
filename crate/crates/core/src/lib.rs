//! Exact free resolutions for monomial curves defined by numerical
//! semigroups generated by an arithmetic sequence.
//!
//! The library builds, over the weighted polynomial ring k[x0..xn] with
//! weight(x_i) = m_i, the explicit mapping-cone resolution of the defining
//! ideal of the curve t -> (t^{m_0}, ..., t^{m_n}), prunes it to the
//! minimal free resolution by unit cancellation, and verifies the whole
//! construction independently: complex property, homogeneity, minimality,
//! Betti numbers, and graded exactness by per-weight linear algebra.

pub mod checker;
pub mod error;
pub mod export;
pub mod generators;
pub mod grid;
pub mod minimalizer;
pub mod polyring;
pub mod rescomplex;
pub mod semigroup;

pub use error::{Error, Result};
pub use semigroup::ASParams;
