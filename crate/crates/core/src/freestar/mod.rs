//! Free *-monomials, noncommutative polynomials and tensors.

pub mod maps;
pub mod poly;
pub mod symbol;
pub mod text;
pub mod word;

pub use maps::{derivation, derivation_coefficients, extend_antihom, extend_hom, star, ExtensionMode};
pub use poly::{NCPoly, Ring, Tensor};
pub use symbol::{Alphabet, Decoration, GeneratorSymbol};
pub use text::{parse_poly, parse_tensor, poly_from_str, render_poly, render_tensor, render_word, Cursor};
pub use word::Word;
