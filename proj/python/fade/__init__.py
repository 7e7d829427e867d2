"""Fast-diffusion asymptotics laboratory.

Thin Python surface over the C++ core: critical exponents, Barenblatt
profiles, the Hardy-Poincare spectral-gap estimators, and the quotient-form
entropy-decay solver.
"""

from _fade import (  # noqa: F401
    barenblatt_profile,
    barenblatt_solution,
    exact_gap_subcritical,
    exponents,
    gap_envelope,
    hardy_constant,
    hardy_rayleigh_quotient,
    median_eta,
    muckenhoupt_K,
    predicted_lambda,
    rayleigh_gap,
    scale_radius,
    simulate,
    verify,
)

__all__ = [
    "barenblatt_profile",
    "barenblatt_solution",
    "exact_gap_subcritical",
    "exponents",
    "gap_envelope",
    "hardy_constant",
    "hardy_rayleigh_quotient",
    "median_eta",
    "muckenhoupt_K",
    "predicted_lambda",
    "rayleigh_gap",
    "scale_radius",
    "simulate",
    "verify",
]
