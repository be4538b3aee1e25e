//! Endpoint-singularity analysis: profiles, smoothness index, exponent
//! ladders, Chebyshev coefficient asymptotics and exact power sums.

mod asymptote;
mod profile;
mod rational;
mod sums;

pub use asymptote::{
    coeff_asymptote, hatphi2_pi, hatphi_pi, hatpsi0, hatpsi2_0, predict_coeff, AsymptoteOrder,
    AsymptoteTerm, CoeffAsymptote, Parity,
};
pub use profile::{
    classify_s, exponent_ladder, EndpointValues, ExponentLadder, LadderOrigin, SingularityProfile,
    SmoothnessIndex,
};
pub use rational::Rational;
pub use sums::{
    bernoulli, faulhaber_sum, lemma_h, lemma_h_closed_form, lemma_h_coefficients, MAX_BERNOULLI,
    MAX_POWER_INDEX, MAX_TERMS,
};
