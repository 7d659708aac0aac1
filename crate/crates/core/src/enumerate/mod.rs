//! Counting: closed forms, exhaustive generators, q-analogues and censuses.

pub mod census;
pub mod conjecture;
pub mod counts;
pub mod gen;
pub mod qpoly;

pub use census::{census, census_with, Census, CensusOptions, Family, Statistic};
pub use conjecture::{conjecture_diff, ConjectureDiff, DiffResult, Reading};
pub use counts::{
    binomial, count_fish, count_left, count_left_refined, count_pairs, count_symmetric,
    count_symmetric_by_size, count_symmetric_even_tails, count_symmetric_odd_tails, count_ternary,
};
pub use gen::{for_each_left, for_each_ternary, gen_fish, gen_left, gen_ternary, FishMethod};
pub use qpoly::{g_polynomial, QPolynomial};
