//! Exact tools for relaxation complexity of finite integer point sets.
//!
//! Everything is computed over arbitrary-precision rationals: point-family
//! generators, an LP solver with checked certificates, hiding-set
//! constructions and verification, relaxation builders with lattice-point
//! enumeration, and separation-index computations for binary sets.
//!
//! ```
//! use rcx_core::{families::{BasicFamily, Family}, relax, Limits};
//!
//! let limits = Limits::default();
//! let cube = Family::Basic(BasicFamily::Cube(3)).generate(&limits)?;
//! let p = relax::build_cube_relaxation(3)?;
//! let report = relax::verify_relaxation(&p, &cube, &limits)?;
//! assert!(report.verified());
//! assert_eq!(p.len(), 4);
//! # Ok::<(), rcx_core::Error>(())
//! ```

pub mod arith;
pub mod clique;
mod error;
pub mod families;
pub mod hiding;
pub mod lattice;
mod limits;
pub mod lp;
pub mod points;
pub mod relax;
pub mod sepindex;

pub use error::{Error, Result};
pub use limits::{Limits, DEFAULT_CAP};
pub use points::{FamilyTag, PointSet};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/families.md")]
    mod families {}
    #[doc = include_str!("../../../book/src/lp.md")]
    mod lp {}
    #[doc = include_str!("../../../book/src/relaxations.md")]
    mod relaxations {}
    #[doc = include_str!("../../../book/src/hiding.md")]
    mod hiding {}
    #[doc = include_str!("../../../book/src/separation.md")]
    mod separation {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
