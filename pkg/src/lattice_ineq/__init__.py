"""Eigenvalue inequalities for Dirichlet Schrödinger operators on finite subsets of Z^n."""

from ._accel import BACKEND
from .lattice import (
    LatticeDomain,
    lattice_neighbors,
    load_domain,
    make_box,
    make_l_shape,
    make_random_connected,
    save_domain,
    vertex_boundary,
)
from .spectral import (
    EigensolverError,
    Field,
    OperatorPair,
    SpectralDecomposition,
    assemble,
    eigendecompose,
    rayleigh_quotient,
    verify_decomposition,
)
from .inequalities import (
    InequalitySlack,
    Theorem,
    evaluate_all,
    hile_protter,
    ppw,
    unweighted_reduction_check,
    yang1,
    yang2,
)

__version__ = "0.1.0"
