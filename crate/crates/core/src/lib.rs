//! Exact plurigenus computations for projective threefolds with canonical
//! singularities, and the effective bounds built on them: birationality
//! exponents for pluricanonical maps, degrees of dual varieties, and
//! de Franchis-type bounds on the number of dominant rational maps.
//!
//! All arithmetic is exact ([`numeric::Rational`] over big integers).

pub mod basket;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod local_term;
pub mod numeric;
pub mod oracle;
pub mod riemann_roch;

pub use basket::{Basket, BasketEntry, QuotientSingularity};
pub use error::{Error, ErrorKind, Result};
pub use numeric::Rational;
pub use riemann_roch::ThreefoldData;
