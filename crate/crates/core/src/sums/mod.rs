//! Progression sums of `1 * chi_3` and of functions in `G`, their
//! Euler-product constants, and the divisor sum `D(x)`.

mod dsum;
mod euler;
mod gclass;
mod progression;

pub use dsum::{
    box_pairs, cyclotomic_root_count, d_sum, d_sum_f64, fugue_lower_bound, gfrak_direct,
    gfrak_lower, DyadicSum, GFRAK_DIRECT_LIMIT,
};
pub use euler::{
    euler_constant, f_hat, f_hat_pair, pair_constant, EulerConstant, PairConstant, EULER_CUTOFF,
    L1_CHI3,
};
pub use gclass::GClassFunction;
pub use progression::{
    c_tilde, coprime_pair_sum, coprime_pair_value, progression_sum, OneStarChi3Table, PairQuery,
    PairReport, ProgressionQuery, ProgressionReport, Summand,
};
