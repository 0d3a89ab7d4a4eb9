//! Partial orders induced on quotient spaces, with two musical
//! applications.
//!
//! * [`order`]: finite relations, permutation group actions, and the strong
//!   and weak relations they induce on orbits; plus submajorization.
//! * [`setclass`]: transposition classes of pitch class sets in `Z_N` under
//!   the subset order, and the minimal classes of the suborders `SC_k`.
//! * [`timbre`]: the brighter-than order on harmonic power spectra, its
//!   lattice infimum, and total variational distance.
//! * [`design`] and [`lp`]: sound design as ℓ1 minimization under a
//!   brightness constraint, solved as a linear program.
//! * [`spectra`]: CSV ingestion and Graphviz export.
//!
//! ```
//! use quotient_orders::setclass::{sck_minimal, SetClass};
//!
//! let minimal = sck_minimal(12, 5).unwrap();
//! let major = SetClass::of(12, &[0, 4, 7]).unwrap();
//! assert!(minimal.contains(&major));
//! ```

pub mod design;
pub mod error;
pub mod lp;
pub mod order;
pub mod setclass;
pub mod spectra;
pub mod timbre;

pub use error::{Error, Result};
pub use order::Verdict;

// Compile the guide's code listings as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/induced-orders.md")]
    mod induced_orders {}
    #[doc = include_str!("../../../book/src/set-classes.md")]
    mod set_classes {}
    #[doc = include_str!("../../../book/src/brightness.md")]
    mod brightness {}
    #[doc = include_str!("../../../book/src/sound-design.md")]
    mod sound_design {}
    #[doc = include_str!("../../../book/src/spectra.md")]
    mod spectra {}
    #[doc = include_str!("../../../book/src/command-line.md")]
    mod command_line {}
}
