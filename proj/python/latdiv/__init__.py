"""Information divergence of lattice valuations and Radon-Nikodym approximation."""

from ._latdiv import (
    AssertionFailure,
    Lattice,
    ParseError,
    ValidationError,
    birkhoff_decompose,
    blowup_demo,
    chain_divergence,
    doob_demo,
    enumerate_concepts,
    fubini_identity_check,
    functional_closure,
    gamma,
    kl_divergence,
    lattice_divergence,
    measure_join_meet,
    projection_density,
    pythagorean_gap,
    rho_max,
    rn_approximate,
    scalar_divergence,
    shannon_check,
    subset_entropy,
    __version__,
)

__all__ = [
    "AssertionFailure",
    "Lattice",
    "ParseError",
    "ValidationError",
    "birkhoff_decompose",
    "blowup_demo",
    "chain_divergence",
    "doob_demo",
    "enumerate_concepts",
    "fubini_identity_check",
    "functional_closure",
    "gamma",
    "kl_divergence",
    "lattice_divergence",
    "measure_join_meet",
    "projection_density",
    "pythagorean_gap",
    "rho_max",
    "rn_approximate",
    "scalar_divergence",
    "shannon_check",
    "subset_entropy",
    "__version__",
]
