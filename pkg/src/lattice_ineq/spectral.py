"""Dirichlet Schrödinger operator (-Delta + V)/rho on a lattice domain.

Conventions: ``-Delta u + V u = lambda rho u`` pointwise on Omega, with u
zero-extended outside.  Inner products carry the lattice degree
``d_x = 2n``: <f, g>_rho = sum f g rho d_x.
"""

from dataclasses import dataclass, field as dc_field
from functools import cached_property

import numpy as np
import scipy.linalg

ORTHONORMALITY_TOL = 1e-10
RESIDUAL_TOL = 1e-9
LAMBDA_MIN = 1e-12


class EigensolverError(RuntimeError):
    """The dense solver returned pairs that miss the residual contract."""


class Field:
    """Real function on Omega (or on Omega plus boundary when ``extended``).

    Evaluation anywhere off the support returns 0.
    """

    def __init__(self, domain, values, extended=False):
        values = np.asarray(values, dtype=float).reshape(-1)
        expected = len(domain.extended) if extended else domain.size
        if values.shape[0] != expected:
            raise ValueError(f"field needs {expected} values, got {values.shape[0]}")
        self.domain = domain
        self.values = values
        self.extended = extended

    @classmethod
    def constant(cls, domain, c):
        return cls(domain, np.full(domain.size, float(c)))

    @classmethod
    def zeros(cls, domain):
        return cls.constant(domain, 0.0)

    @classmethod
    def delta(cls, domain, v):
        vals = np.zeros(domain.size)
        vals[domain.index(v)] = 1.0
        return cls(domain, vals)

    def __call__(self, v):
        i = self.domain.ext_index(v) if self.extended else self.domain._index.get(tuple(v), -1)
        return float(self.values[i]) if i >= 0 else 0.0

    def ext_values(self):
        """Values on Omega followed by the boundary, zero-extended."""
        if self.extended:
            return self.values
        out = np.zeros(len(self.domain.extended))
        out[: self.domain.size] = self.values
        return out

    def interior_values(self):
        return self.values[: self.domain.size]

    def __repr__(self):
        kind = "extended " if self.extended else ""
        return f"Field({kind}N={self.values.shape[0]})"


def _values(domain, f):
    if isinstance(f, Field):
        if f.domain != domain:
            raise ValueError("field lives on a different domain")
        return f.interior_values()
    arr = np.asarray(f, dtype=float).reshape(-1)
    if arr.shape[0] != domain.size:
        raise ValueError(f"expected {domain.size} values, got {arr.shape[0]}")
    return arr


@dataclass(frozen=True)
class OperatorPair:
    """Stiffness matrix of -Delta + V and the density vector rho."""

    domain: object
    stiffness: np.ndarray
    mass: np.ndarray
    potential: np.ndarray = dc_field(repr=False)


def assemble(domain, V, rho):
    """Build the stiffness matrix of ``-Delta + V`` and the mass vector ``rho``.

    Row x reads ``(1 + V(x)) u(x) - (1/2n) sum_{y in Omega, y ~ x} u(y)``;
    neighbours outside Omega contribute nothing.
    """
    v = _values(domain, V)
    r = _values(domain, rho)
    if np.any(v < 0) or not np.all(np.isfinite(v)):
        raise ValueError("potential must be nonnegative")
    if np.any(r <= 0) or not np.all(np.isfinite(r)):
        raise ValueError("density must be positive")
    N = domain.size
    A = np.zeros((N, N))
    A[np.arange(N), np.arange(N)] = 1.0 + v
    off = -1.0 / domain.degree
    e = domain.edge_array
    A[e[:, 0], e[:, 1]] = off
    A[e[:, 1], e[:, 0]] = off
    return OperatorPair(domain, A, r.copy(), v.copy())


@dataclass(frozen=True)
class SpectralDecomposition:
    """Ascending eigenvalues and rho-orthonormal eigenfunctions (as columns)."""

    domain: object
    eigenvalues: np.ndarray
    vectors: np.ndarray
    rho: np.ndarray
    potential: np.ndarray

    @property
    def rho_min(self):
        return float(self.rho.min())

    @property
    def rho_max(self):
        return float(self.rho.max())

    @property
    def size(self):
        return self.eigenvalues.shape[0]

    @cached_property
    def eigenfunctions(self):
        return [Field(self.domain, self.vectors[:, i]) for i in range(self.size)]

    def eigenfunction(self, i):
        """u_i for 1-based ``i``."""
        return self.eigenfunctions[i - 1]

    @cached_property
    def ext_vectors(self):
        """Eigenvectors zero-extended to Omega plus boundary."""
        M = len(self.domain.extended)
        out = np.zeros((M, self.size))
        out[: self.size] = self.vectors
        return out


def eigendecompose(op):
    """Full spectrum of ``A u = lambda diag(rho) u``.

    Solved through the congruence B = M^{-1/2} A M^{-1/2}, M = diag(rho), and a
    dense symmetric eigensolver (LAPACK dsyev: tridiagonal reduction, then
    implicit-shift QR).  Eigenfunctions are scaled so that
    sum u_i u_j rho d_x = delta_ij.  Each eigenvector's largest-magnitude entry
    (first such index) is made positive.
    """
    d = op.domain.degree
    s = 1.0 / np.sqrt(op.mass)
    B = op.stiffness * s[:, None] * s[None, :]
    w, Y = scipy.linalg.eigh(B, driver="ev")
    U = Y * s[:, None] / np.sqrt(d)
    pivots = np.argmax(np.abs(U), axis=0)
    signs = np.sign(U[pivots, np.arange(U.shape[1])])
    signs[signs == 0] = 1.0
    U = U * signs
    dec = SpectralDecomposition(op.domain, w, U, op.mass.copy(), op.potential.copy())
    ortho, _ = verify_decomposition(op, dec)
    resid = (_residuals(op, dec) / (1.0 + np.abs(w))).max()
    if ortho > ORTHONORMALITY_TOL or resid > RESIDUAL_TOL:
        raise EigensolverError(
            f"eigensolver missed its contract: orthonormality {ortho:.3e}, "
            f"relative residual {resid:.3e}"
        )
    # finite Omega always touches its boundary, so A is strictly positive definite
    if w[0] <= LAMBDA_MIN:
        raise EigensolverError(f"lambda_1 = {w[0]:.3e} is not positive")
    return dec


def rayleigh_quotient(domain, V, rho, f):
    """<f, Hf> / <f, f>_rho with the d_x = 2n measure on both sides."""
    op = assemble(domain, V, rho)
    fv = _values(domain, f)
    d = domain.degree
    den = float(np.sum(fv * fv * op.mass) * d)
    if den == 0.0:
        raise ValueError("Rayleigh quotient of the zero function")
    num = float(fv @ (op.stiffness @ fv) * d)
    return num / den


def verify_decomposition(op, dec):
    """(max |<u_i,u_j>_rho - delta_ij|, max |(H u_i - lambda_i rho u_i)(x)|)."""
    U = dec.vectors
    d = op.domain.degree
    gram = (U * (op.mass * d)[:, None]).T @ U
    ortho = float(np.abs(gram - np.eye(gram.shape[0])).max())
    return ortho, float(_residuals(op, dec).max())


def _residuals(op, dec):
    U = dec.vectors
    R = op.stiffness @ U - op.mass[:, None] * U * dec.eigenvalues[None, :]
    return np.abs(R).max(axis=0)
