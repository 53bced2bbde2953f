"""Python interface to the nel numerical core."""

from ._core import (
    NelError,
    a_exact,
    all_roots,
    alpha,
    compute_A,
    count_maxima,
    eigenvalues,
    fourier_partial_sum,
    gibbs_overshoot,
    implicit_Z,
    limit_curve,
    painleve_C,
    painleve_eigenvalues,
    painleve_fate,
    rho_n,
    richardson,
    scaled_separatrix,
    solve,
    tau_scan,
    taylor,
    z0_exact,
)

__version__ = "0.1.0"

__all__ = [
    "NelError",
    "a_exact",
    "all_roots",
    "alpha",
    "compute_A",
    "count_maxima",
    "eigenvalues",
    "fourier_partial_sum",
    "gibbs_overshoot",
    "implicit_Z",
    "limit_curve",
    "painleve_C",
    "painleve_eigenvalues",
    "painleve_fate",
    "rho_n",
    "richardson",
    "scaled_separatrix",
    "solve",
    "tau_scan",
    "taylor",
    "z0_exact",
]
