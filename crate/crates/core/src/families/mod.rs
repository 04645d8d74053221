//! Constructors for the closed-form surface families with constant relative
//! or mean curvature.

mod helicoidal;
mod homothetical;
mod profile;
mod translation;

pub use helicoidal::{helicoidal_chart, parabolic_i_sphere, HelicoidalParams, HelicoidalType};
pub use homothetical::{homothetical_hypersurface, product_hypersurface, HomotheticalFamily, EXPONENT_SUM_TOL};
pub use profile::{
    constant_h_profile, constant_k_profile, flat_helicoidal_profile, minimal_profile, planar_i_curvature,
    polynomial_profile, ProfileFunction, ProfileKind, ProfileValue, ScalarFn, PROFILE_QUADRATURE_TOL,
};
pub use translation::{
    constant_k_translation_hypersurface, expected_translation_h, expected_translation_k, translation_chart,
    translation_hypersurface, TranslationFamily, TranslationSpec,
};
