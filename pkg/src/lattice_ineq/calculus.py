"""Discrete calculus on Z^n: gradients, Laplacian, carré du champ, and the
identities and one-sided bounds built from them.

Functions accepted as "field-like":

* :class:`~lattice_ineq.spectral.Field` - zero-extended off its support;
* :class:`CoordinateField` - ``x_alpha ** power`` on all of Z^n, evaluated
  from true coordinates (never zero-extended);
* plain numbers - constant functions on Z^n;
* :class:`Product` of field-likes.

Pointwise results live on the extended vertex list (Omega, then boundary).
Edge sums run over *ordered* pairs (x, y); every ordered pair with a nonzero
contribution has x in Omega or its boundary, so summing x over the extended
list and y over all 2n lattice neighbours is exact.

Indices ``i, j, k`` and coordinate indices ``alpha`` are 1-based.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .spectral import Field


@dataclass(frozen=True)
class CoordinateField:
    """The function x -> x_alpha ** power on Z^n (alpha is 1-based)."""

    alpha: int
    power: int = 1

    def __call__(self, v):
        return float(v[self.alpha - 1]) ** self.power


@dataclass(frozen=True)
class Product:
    left: object
    right: object

    def __call__(self, v):
        return _evaluate(self.left, v) * _evaluate(self.right, v)


def _evaluate(f, v):
    if isinstance(f, (int, float)):
        return float(f)
    return f(v)


def _stencil(domain, f):
    """(values at extended vertices, values at their 2n neighbours)."""
    M = len(domain.extended)
    width = 2 * domain.dimension
    if isinstance(f, (int, float)):
        return np.full(M, float(f)), np.full((M, width), float(f))
    if isinstance(f, Field):
        if f.domain != domain:
            raise ValueError("field lives on a different domain")
        ext = np.append(f.ext_values(), 0.0)
        nbr = np.where(domain.neighbor_table < 0, M, domain.neighbor_table)
        return ext[:M], ext[nbr]
    if isinstance(f, CoordinateField):
        if not 1 <= f.alpha <= domain.dimension:
            raise ValueError(f"coordinate index {f.alpha} outside 1..{domain.dimension}")
        base = domain.ext_coords[:, f.alpha - 1].astype(float)
        steps = np.zeros(width)
        steps[2 * (f.alpha - 1)] = -1.0
        steps[2 * (f.alpha - 1) + 1] = 1.0
        return base**f.power, (base[:, None] + steps[None, :]) ** f.power
    if isinstance(f, Product):
        c1, n1 = _stencil(domain, f.left)
        c2, n2 = _stencil(domain, f.right)
        return c1 * c2, n1 * n2
    raise TypeError(f"not a field-like object: {f!r}")


def _ext_field(domain, values):
    return Field(domain, values, extended=True)


def _check_alpha(domain, alpha):
    if not 1 <= alpha <= domain.dimension:
        raise ValueError(f"coordinate index {alpha} outside 1..{domain.dimension}")


# -- pointwise operators ---------------------------------------------------

def edge_gradient(f, x, y):
    """nabla_xy f = f(y) - f(x) for lattice neighbours x, y."""
    if len(x) != len(y) or sum(abs(a - b) for a, b in zip(x, y)) != 1:
        raise ValueError(f"{tuple(x)} and {tuple(y)} are not lattice neighbours")
    return _evaluate(f, tuple(y)) - _evaluate(f, tuple(x))


def laplacian(domain, f):
    """Delta f(x) = (1/2n) sum_{y ~ x} (f(y) - f(x)) on Omega and its boundary."""
    center, nb = _stencil(domain, f)
    return _ext_field(domain, (nb - center[:, None]).sum(axis=1) / domain.degree)


def gamma(domain, f, g=None):
    """Gamma(f, g)(x) = (1/2 d_x) sum_y mu_xy nabla f nabla g.  ``g`` defaults to ``f``."""
    cf, nf = _stencil(domain, f)
    if g is None:
        cg, ng = cf, nf
    else:
        cg, ng = _stencil(domain, g)
    prod = (nf - cf[:, None]) * (ng - cg[:, None])
    return _ext_field(domain, prod.sum(axis=1) / (2 * domain.degree))


def gamma_dual_form(domain, f, g):
    """(1/2)(Delta(fg) - f Delta g - g Delta f), the product-rule form of Gamma."""
    cf, _ = _stencil(domain, f)
    cg, _ = _stencil(domain, g)
    lap_fg = laplacian(domain, Product(f, g)).values
    lap_f = laplacian(domain, f).values
    lap_g = laplacian(domain, g).values
    return _ext_field(domain, 0.5 * (lap_fg - cf * lap_g - cg * lap_f))


def _edge_product_sum(domain, f, g):
    # sum over ordered pairs of nabla f * nabla g
    cf, nf = _stencil(domain, f)
    cg, ng = _stencil(domain, g)
    return float(((nf - cf[:, None]) * (ng - cg[:, None])).sum())


# -- identities ------------------------------------------------------------

def green_defect(domain, f, g):
    """|sum (Delta f) g d_x + (1/2) sum_{x,y} mu nabla f nabla g|; f must be a Field."""
    if not isinstance(f, Field):
        raise TypeError("Green's formula needs a finitely supported Field as f")
    cg, _ = _stencil(domain, g)
    lhs = float((laplacian(domain, f).values * cg).sum() * domain.degree)
    rhs = -0.5 * _edge_product_sum(domain, f, g)
    return abs(lhs - rhs)


def green_scale(domain, f, g):
    """sum over extended vertices of (|f| + |g|)^2 d_x."""
    cf, _ = _stencil(domain, f)
    cg, _ = _stencil(domain, g)
    return float(((np.abs(cf) + np.abs(cg)) ** 2).sum() * domain.degree)


def dirichlet_energy(domain, u):
    """sum_x Gamma(u)(x) d_x over Omega and its boundary."""
    return float(gamma(domain, u).values.sum() * domain.degree)


def correction_term(domain, u, alpha):
    """I_{x_alpha}(u) = (1/4) sum_{x,y} mu |nabla x_alpha|^2 |nabla u|^2."""
    _check_alpha(domain, alpha)
    g = CoordinateField(alpha)
    cg, ng = _stencil(domain, g)
    cu, nu = _stencil(domain, u)
    return float(0.25 * (((ng - cg[:, None]) ** 2) * ((nu - cu[:, None]) ** 2)).sum())


def coordinate_identity_defect(domain, u):
    """|sum_alpha (1/2) sum_{x,y} |nabla x_alpha|^2 |nabla u|^2 - sum_x Gamma(u) d_x|."""
    lhs = sum(2.0 * correction_term(domain, u, a) for a in range(1, domain.dimension + 1))
    return abs(lhs - dirichlet_energy(domain, u))


def coordinate_gamma_bound_slack(domain, u):
    """(1/2n) sum Gamma(u) d_x - sum_alpha sum_x Gamma(x_alpha, u)^2 d_x."""
    n = domain.dimension
    total = 0.0
    for a in range(1, n + 1):
        total += float((gamma(domain, CoordinateField(a), u).values ** 2).sum() * domain.degree)
    return dirichlet_energy(domain, u) / (2 * n) - total


def _check_index(dec, i):
    if not 1 <= i <= dec.size:
        raise ValueError(f"eigen-index {i} outside 1..{dec.size}")


def energy_bound_slack(dec, i):
    """lambda_i - sum_x Gamma(u_i)(x) d_x; equals sum V u_i^2 d_x (zero iff V u_i = 0)."""
    _check_index(dec, i)
    return float(dec.eigenvalues[i - 1]) - dirichlet_energy(dec.domain, dec.eigenfunction(i))


def potential_energy(dec, i):
    """sum_x V(x) u_i(x)^2 d_x."""
    _check_index(dec, i)
    u = dec.vectors[:, i - 1]
    return float((dec.potential * u * u).sum() * dec.domain.degree)


def mass_lower_bound_slack(dec, i):
    """sum_x u_i^2 d_x - 1/rho_max."""
    _check_index(dec, i)
    u = dec.vectors[:, i - 1]
    return float((u * u).sum() * dec.domain.degree) - 1.0 / dec.rho_max


def correction_bound_slack(dec, i):
    """lambda_i / 2 - sum_alpha I_{x_alpha}(u_i)."""
    _check_index(dec, i)
    u = dec.eigenfunction(i)
    total = sum(correction_term(dec.domain, u, a) for a in range(1, dec.domain.dimension + 1))
    return float(dec.eigenvalues[i - 1]) / 2 - total


# -- proof coefficients ----------------------------------------------------

@dataclass(frozen=True)
class PairCoefficients:
    k: int
    alpha: int
    a: np.ndarray
    b: np.ndarray

    def symmetry_defect(self):
        return float(np.abs(self.a - self.a.T).max()) if self.k else 0.0

    def identity_defect(self, eigenvalues):
        """max_{i,j} |2 b_ij - (lambda_i - lambda_j) a_ij|."""
        lam = np.asarray(eigenvalues[: self.k])
        return float(np.abs(2 * self.b - (lam[:, None] - lam[None, :]) * self.a).max())


def _check_k(dec, k):
    if not 1 <= k <= dec.size - 1:
        raise ValueError(f"k = {k} outside the admissible range 1..{dec.size - 1}")


def pair_coefficients(dec, alpha, k):
    """a_ij = sum x_alpha u_i u_j rho d_x and b_ij = sum u_j Gamma(x_alpha, u_i) d_x."""
    _check_k(dec, k)
    domain = dec.domain
    _check_alpha(domain, alpha)
    d = domain.degree
    Uk = dec.vectors[:, :k]
    x = domain.coords[:, alpha - 1].astype(float)
    a = (Uk * (x * dec.rho * d)[:, None]).T @ Uk
    ext = _kernels.as_columns(dec.ext_vectors[:, :k])
    G = _kernels.coord_gamma_columns(domain.neighbor_table, ext, alpha - 1, domain.dimension, domain.size)
    b = d * (G.T @ Uk)
    return PairCoefficients(k, alpha, a, b)


@dataclass(frozen=True)
class TrialFunction:
    i: int
    alpha: int
    phi: Field
    norm_sq_rho: float
    correction: float


def trial_function(dec, alpha, i, k):
    """phi_i = x_alpha u_i - sum_{j<=k} a_ij u_j together with its rho-norm and I_{x_alpha}(u_i)."""
    _check_k(dec, k)
    if not 1 <= i <= k:
        raise ValueError(f"trial index {i} outside 1..{k}")
    coeffs = pair_coefficients(dec, alpha, k)
    domain = dec.domain
    x = domain.coords[:, alpha - 1].astype(float)
    phi = x * dec.vectors[:, i - 1] - dec.vectors[:, :k] @ coeffs.a[i - 1]
    norm = float((phi * phi * dec.rho).sum() * domain.degree)
    corr = correction_term(domain, dec.eigenfunction(i), alpha)
    return TrialFunction(i, alpha, Field(domain, phi), norm, corr)


def trial_orthogonality_defect(dec, trial, k):
    """max_{j<=k} |<phi_i, u_j>_rho|."""
    phi = trial.phi.values
    inner = (dec.vectors[:, :k] * (phi * dec.rho * dec.domain.degree)[:, None]).sum(axis=0)
    return float(np.abs(inner).max())


# -- bulk suite ------------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    """One suite entry.  ``kind == "defect"`` passes when value <= tol;
    ``kind == "slack"`` passes when value >= -tol.  Values are already
    divided by the scale named in ``scale``."""

    name: str
    kind: str
    value: float
    scale: str

    def passed(self, identity_tol, slack_tol):
        if self.kind == "defect":
            return self.value <= identity_tol
        return self.value >= -slack_tol


def lemma_terms(dec):
    """Per-eigenfunction (energy, coordinate-Gamma-square sum, corrections[:, alpha])."""
    domain = dec.domain
    ext = _kernels.as_columns(dec.ext_vectors)
    return _kernels.energy_terms(domain.neighbor_table, ext, domain.dimension)


def identity_suite(dec, k_max, n_fields=4):
    """Run every identity and one-sided bound on one decomposition.

    Pointwise identities use the first ``n_fields`` eigenfunctions; per-index
    bounds use all of them; coefficient checks use ``k <= k_max``.
    """
    domain = dec.domain
    n = domain.dimension
    N = dec.size
    lam = dec.eigenvalues
    out = []

    lap_def = 0.0
    gam_coord = 0.0
    for a in range(1, n + 1):
        g = CoordinateField(a)
        lap_def = max(lap_def, float(np.abs(laplacian(domain, g).values).max()))
        lap_def = max(lap_def, float(np.abs(laplacian(domain, CoordinateField(a, 2)).values - 1.0 / n).max()))
        for b in range(1, n + 1):
            target = 1.0 / (2 * n) if a == b else 0.0
            gv = gamma(domain, g, CoordinateField(b)).values
            gam_coord = max(gam_coord, float(np.abs(gv - target).max()))
    out.append(CheckResult("COORD_LAPLACIAN", "defect", lap_def, "absolute"))
    out.append(CheckResult("COORD_GAMMA", "defect", gam_coord, "absolute"))

    fields = dec.eigenfunctions[: min(N, n_fields)]
    green = 0.0
    dual = 0.0
    for f in fields:
        partners = list(fields) + [CoordinateField(a) for a in range(1, n + 1)]
        for g in partners:
            green = max(green, green_defect(domain, f, g) / green_scale(domain, f, g))
        for g in fields:
            diff = gamma(domain, f, g).values - gamma_dual_form(domain, f, g).values
            dual = max(dual, float(np.abs(diff).max()))
    out.append(CheckResult("GREEN_FORMULA", "defect", green, "sum (|f|+|g|)^2 d_x"))
    out.append(CheckResult("GAMMA_DUAL_FORM", "defect", dual, "absolute"))

    energy, cgsq, corr = lemma_terms(dec)
    safe = np.where(energy > 0, energy, 1.0)
    eq23 = np.abs(2.0 * corr.sum(axis=1) - energy) / safe
    out.append(CheckResult("COORD_ENERGY_IDENTITY", "defect", float(eq23.max()), "sum Gamma(u) d_x"))
    out.append(CheckResult("COORD_GAMMA_BOUND", "slack", float((energy / (2 * n) - cgsq).min()), "absolute"))
    out.append(CheckResult("ENERGY_BOUND", "slack", float(((lam - energy) / (1 + np.abs(lam))).min()), "1 + |lambda_i|"))
    mass = (dec.vectors**2).sum(axis=0) * domain.degree - 1.0 / dec.rho_max
    out.append(CheckResult("MASS_LOWER_BOUND", "slack", float(mass.min()), "absolute"))
    out.append(CheckResult("CORRECTION_BOUND", "slack", float((lam / 2 - corr.sum(axis=1)).min()), "absolute"))

    if k_max >= 1 and N >= 2:
        k = min(k_max, N - 1)
        prop = 0.0
        sym = 0.0
        orth = 0.0
        coord_scale = 1.0 + float(np.abs(domain.coords).max())
        d = domain.degree
        Uk = dec.vectors[:, :k]
        for a in range(1, n + 1):
            pc = pair_coefficients(dec, a, k)
            prop = max(prop, pc.identity_defect(lam) / (1 + abs(lam[k - 1])))
            sym = max(sym, pc.symmetry_defect() / coord_scale)
            x = domain.coords[:, a - 1].astype(float)
            phi = x[:, None] * Uk - Uk @ pc.a.T
            inner = (Uk * (dec.rho * d)[:, None]).T @ phi
            orth = max(orth, float(np.abs(inner).max()) / coord_scale)
        out.append(CheckResult("PAIR_IDENTITY", "defect", prop, "1 + lambda_k"))
        out.append(CheckResult("PAIR_SYMMETRY", "defect", sym, "1 + max|x|"))
        out.append(CheckResult("TRIAL_ORTHOGONALITY", "defect", orth, "1 + max|x|"))
    return out
