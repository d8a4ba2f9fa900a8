"""Priors, parameter vectors, coefficient fields and quantities of interest."""

from hymcmc.prior.fields import (
    BasisFunction,
    FieldBuilder,
    GaussianFieldSpec,
    LognormalFieldBuilder,
    SinDecayMode,
    UniformFieldBuilder,
    build_field_lognormal,
    build_field_uniform,
    field_builder_for,
)
from hymcmc.prior.qoi import CoefficientFieldQoI, ParameterQoI, QuantityOfInterest, make_qoi
from hymcmc.prior.sampling import (
    AnyPrior,
    ParameterVector,
    draw_prior,
    in_support,
    make_rng,
    prior_type,
    sample_prior,
)

__all__ = [
    # Sampling
    "AnyPrior",
    "ParameterVector",
    "draw_prior",
    "in_support",
    "make_rng",
    "prior_type",
    "sample_prior",
    # Fields
    "BasisFunction",
    "FieldBuilder",
    "GaussianFieldSpec",
    "LognormalFieldBuilder",
    "SinDecayMode",
    "UniformFieldBuilder",
    "build_field_lognormal",
    "build_field_uniform",
    "field_builder_for",
    # QoI
    "QuantityOfInterest",
    "ParameterQoI",
    "CoefficientFieldQoI",
    "make_qoi",
]
