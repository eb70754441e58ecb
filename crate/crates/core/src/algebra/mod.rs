//! Exact arithmetic foundation: rationals, polynomials, resultants,
//! factorization over the rationals and simple algebraic extensions.

pub mod bipoly;
pub mod factor;
pub mod field;
pub mod modp;
pub mod numeric;
pub mod resultant;
pub mod ring;
pub mod roots;
pub mod scalar;
pub mod solve;
pub mod unipoly;

pub use bipoly::BiPoly;
pub use factor::{factor_bivariate, factor_rational};
pub use field::{ExtElem, ExtensionField};
pub use numeric::{CBall, RBall};
pub use resultant::resultant_sylvester;
pub use ring::{Field, Rat, Ring};
pub use scalar::{Lift, Scalar};
pub use solve::{Ctx, SolveOptions};
pub use unipoly::UniPoly;
