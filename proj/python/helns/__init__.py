"""Pseudo-spectral periodic-box Navier-Stokes solver with an exact helical
calculus for the curl operator: band projections over signed curl
eigenvalues, fractional |curl| powers, Stieltjes moments of the spectral
measure, and the band/identity diagnostics computed along simulations."""

from ._core import (
    HelnsError,
    HelicalDecomposition,
    VectorField,
    __version__,
    abc_flow,
    abs_curl_pow,
    band_inequality_suite,
    band_project,
    cancellation_residual,
    criterion_integrands,
    curl,
    decompose,
    field_from_physical,
    helical_energies,
    helicity_swap,
    holder_chain_check,
    inner_product,
    l2_norm,
    l3_norm,
    leray_project,
    neg_laplacian_pow,
    nonlinear_rhs,
    pointwise_cross,
    probe_constants,
    random_divfree,
    read_snapshot,
    recompose,
    simulate,
    spectral_moment,
    taylor_green,
    vorticity_cross_term,
    write_snapshot,
    zero_field,
)

__all__ = [
    "HelnsError",
    "HelicalDecomposition",
    "VectorField",
    "__version__",
    "abc_flow",
    "abs_curl_pow",
    "band_inequality_suite",
    "band_project",
    "cancellation_residual",
    "criterion_integrands",
    "curl",
    "decompose",
    "field_from_physical",
    "helical_energies",
    "helicity_swap",
    "holder_chain_check",
    "inner_product",
    "l2_norm",
    "l3_norm",
    "leray_project",
    "neg_laplacian_pow",
    "nonlinear_rhs",
    "pointwise_cross",
    "probe_constants",
    "random_divfree",
    "read_snapshot",
    "recompose",
    "simulate",
    "spectral_moment",
    "taylor_green",
    "vorticity_cross_term",
    "write_snapshot",
    "zero_field",
]
