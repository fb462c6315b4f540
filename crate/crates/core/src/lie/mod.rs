//! Root systems, Weyl group actions on weights and parabolic cosets.

mod cosets;
mod root_system;
mod types;
mod weight;
mod word;

pub use cosets::{coset_poincare_polynomial, coset_representatives, Coset, CosetTable};
pub use root_system::RootSystem;
pub use types::{Family, LieType};
pub use weight::Weight;
pub use word::WeylWord;
