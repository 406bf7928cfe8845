//! Orlicz-space numerics: Young functions, Luxemburg norms, dilation gauges,
//! and bilinear Fourier multipliers evaluated on uniform grids.

pub mod bilinear;
pub mod dilation_gauge;
pub mod dsl;
pub mod error;
pub mod experiments;
pub mod fft;
pub mod function_lab;
pub mod io;
pub mod roots;
pub mod young;

pub use bilinear::{evaluate_bm, BoundCheck, Measure, Method, Profile, Symbol};
pub use dilation_gauge::{boyd_indices, gauge_lower, gauge_upper, weight_w, BoydEstimate, Certificates, GaugeEstimate};
pub use error::{Error, Result};
pub use young::{
    check_delta2, check_triple, Delta2, GridSamples, Tail, TripleCondition, TripleKind, YoungFunction,
    YoungKind, YoungTriple,
};
pub use function_lab::{
    convolve, dilate, fourier, group_action, inverse_fourier, luxemburg, luxemburg_norm, make_bandlimited,
    modulate, translate, Grid, GroupAction, Interval, SampledFunction,
};
pub use num_complex::Complex64;
pub use dsl::{parse_function, parse_profile, parse_symbol, parse_young};
pub use experiments::{run as run_experiment, run_all, ExperimentConfig, VerificationReport, Verdict};
pub use io::Real;
