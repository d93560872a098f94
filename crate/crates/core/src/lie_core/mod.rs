//! Root systems, Weyl group actions, alcoves and weight multiplicities.

mod cartan;
mod root_system;
mod types;

pub(crate) use cartan::invert as invert_matrix;
pub use cartan::{CartanData, WeightSystem, Q};
pub use root_system::{build_root_system, cartan_matrix, weyl_order_formula, RootSystem};
pub use types::{LieType, Series, Sign, Weight};
