//! Weak polynomial identities of the pairs `(C_k, V_k)` (a Clifford algebra
//! with its generating vector space) and `(M_2, sl_2)`.
//!
//! Polynomials live in the free associative algebra over the rationals
//! ([`freealg`]). A polynomial is a weak identity of a pair when it vanishes
//! under every substitution of its variables by elements of the vector
//! space; [`pairs::is_weak_identity`] decides this exactly, with the Gram
//! values of the form kept symbolic. [`structure`] measures the multilinear
//! parts of the resulting ideals.
//!
//! ```
//! use wid_core::{is_weak_identity, parse_expr, PairTarget};
//!
//! let f = parse_expr("[x1^2,x2]").unwrap().lower().unwrap();
//! let pair = PairTarget::clifford(3).unwrap();
//! assert!(is_weak_identity(&f, &pair).unwrap().holds());
//! ```

pub mod cli;
pub mod clifford;
pub mod error;
pub mod freealg;
pub mod linalg;
pub mod pairs;
pub mod scalars;
pub mod structure;

pub use cli::{format_expr, parse_expr, parse_poly};
pub use clifford::{cliff_mul, evaluate, Blade, CliffordElt, FormParams};
pub use error::{Error, Result};
pub use freealg::{
    central_square_generator, commutator, jordan, multilinearize, standard_poly, star, Gen, NcPoly,
    Word,
};
pub use pairs::{is_weak_identity, is_weak_identity_capped, Mat2, PairTarget, Verdict, Witness};
pub use scalars::{ParamPoly, Rational};
pub use structure::{consequence_span_dim, evaluation_kernel, RankOptions, RankReport};
