//! Exact arithmetic in the free twisted descent algebra.
//!
//! The basis of the algebra is indexed by set compositions `(S_1, ..., S_k)`.
//! It carries two associative products, the convolution `∗`
//! (concatenation of disjoint compositions) and the composition product `∘`
//! (blockwise intersection, the Solomon-Tits face product on a fixed
//! support), together with a cocommutative coproduct `δ`. Solomon's descent
//! algebra embeds degreewise through orbit sums.
//!
//! - [`combinat`]: finite sets, set/integer compositions, permutations.
//! - [`algebra`]: [`TDElement`] and [`TensorElement`] with `∗`, `∘`, `δ`.
//! - [`oracle`]: the free twisted bialgebra and its endomorphisms, used to
//!   check the symbolic products by brute force.
//! - [`solomon`]: descent elements, orbit sums, descent classes, shuffles.
//! - [`verify`]: the invariant suites behind `tda verify`.

pub mod algebra;
pub mod combinat;
pub mod error;
pub mod json;
pub mod limits;
pub mod oracle;
pub mod solomon;
pub mod text;
pub mod verify;

pub use algebra::{Coeff, TDElement, TensorElement};
pub use combinat::{
    enumerate_set_compositions, enumerate_shuffles, FiniteSet, IntegerComposition, Permutation, SetComposition,
};
pub use error::{Error, Result};
pub use limits::Limits;
pub use solomon::{DescentElement, GroupAlgebraElement};
pub use text::{parse_element, parse_tensor};
