//! Exact membership tests for the Lipschitz saturation, saturation and
//! seminormalization of one affine variety in another.

pub mod arc;
pub mod closure;
pub mod corpus;
pub mod ideal;
pub mod lipschitz;
pub mod poly;
pub mod rational;
pub mod sampler;
pub mod variety;

pub use ideal::{Ideal, IdealError};
pub use poly::{Monomial, MonomialOrder, Polynomial};
pub use rational::Rational;
pub use variety::{make_morphism, tensor_square, PresentedRing, RingMorphism, TensorSquare, VarietyError};
pub use lipschitz::{
    chain_report, constant_on_fibers, lipschitz_member, lipschitz_seminormalization_member, saturation_member,
    seminormalization_member, LipschitzError, SaturationQuery,
};
pub use closure::{Certificate, MembershipVerdict, SearchBounds, Witness};
pub use sampler::{sample_ideal_ratio, sample_lipschitz_ratio, EpsilonLadder, RatioReport, VerdictHint};
