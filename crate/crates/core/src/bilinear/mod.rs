//! Bilinear Fourier multipliers: symbols, evaluation paths, symbol algebra
//! and norm searches.

pub mod evaluate;
pub mod search;
pub mod symbol;
pub mod transform;

pub use evaluate::{apply_linear_multiplier, apply_multiplier_fn, evaluate_bm, f1_spot_check, periodic_shift, Method};
pub use search::{opnorm_lower_search, sample_pair, trial_rng, trial_seed, BoundCheck, Family, Witness};
pub use symbol::{Factor, GeneralSymbol, Measure, Profile, SeparableTerm, Symbol, SymbolForm, SymbolTable};
pub use transform::{symbol_transform, PlanarMasses, SymbolOp, TransformedSymbol};
