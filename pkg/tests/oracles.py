"""Independent reference computations.

Nothing here touches the neighbour tables, the kernels or the eigensolver of
the package: lattice sums walk Python dicts keyed by coordinate tuples, and
eigenvalues come from an exact rational determinant expansion.
"""

import itertools
import math
from fractions import Fraction
from functools import lru_cache

import sympy


def unit_steps(n):
    for a in range(n):
        for s in (-1, 1):
            e = [0] * n
            e[a] = s
            yield tuple(e)


def shift(v, e):
    return tuple(p + q for p, q in zip(v, e))


def region(vertices, n, pad=2):
    """Every lattice point within ell-infinity distance ``pad`` of the set."""
    lo = [min(v[a] for v in vertices) - pad for a in range(n)]
    hi = [max(v[a] for v in vertices) + pad for a in range(n)]
    return list(itertools.product(*[range(l, h + 1) for l, h in zip(lo, hi)]))


def brute_neighbors(vertices, n):
    vs = set(vertices)
    out = set()
    for v in vs:
        for e in unit_steps(n):
            w = shift(v, e)
            if w not in vs:
                out.add(w)
    return out


def brute_edges(vertices):
    """Unordered unit-distance pairs by a plain double loop."""
    vs = sorted(vertices)
    edges = set()
    for i, a in enumerate(vs):
        for b in vs[i + 1:]:
            if sum(abs(p - q) for p, q in zip(a, b)) == 1:
                edges.add((a, b))
    return edges


def zero_ext(values):
    """dict vertex -> value, read as 0 elsewhere."""
    return lambda v: values.get(v, 0.0)


def coord(alpha, power=1):
    return lambda v: float(v[alpha]) ** power


def lap(f, x, n):
    return sum(f(shift(x, e)) - f(x) for e in unit_steps(n)) / (2 * n)


def gam(f, g, x, n):
    return sum((f(shift(x, e)) - f(x)) * (g(shift(x, e)) - g(x)) for e in unit_steps(n)) / (4 * n)


def green_sides(f, g, pts, n):
    """(sum (Delta f) g d_x, -(1/2) sum over ordered edges of grad f grad g)."""
    d = 2 * n
    lhs = sum(lap(f, x, n) * g(x) * d for x in pts)
    rhs = -0.5 * sum(
        (f(shift(x, e)) - f(x)) * (g(shift(x, e)) - g(x)) for x in pts for e in unit_steps(n)
    )
    return lhs, rhs


def energy(f, pts, n):
    return sum(gam(f, f, x, n) * 2 * n for x in pts)


def coord_gamma_sq(f, pts, n):
    return sum(gam(coord(a), f, x, n) ** 2 * 2 * n for a in range(n) for x in pts)


def correction(f, alpha, pts, n):
    g = coord(alpha)
    return 0.25 * sum(
        (g(shift(x, e)) - g(x)) ** 2 * (f(shift(x, e)) - f(x)) ** 2 for x in pts for e in unit_steps(n)
    )


# -- characteristic polynomial ---------------------------------------------

def _frac(x):
    return Fraction(x) if not isinstance(x, Fraction) else x


def char_poly_roots(vertices, n, V, rho, digits=30):
    """Roots of det(A - lam diag(rho)) by cofactor expansion in exact arithmetic.

    ``vertices`` in any order; V, rho given per vertex in that order.  Roots are
    returned ascending with multiplicity.
    """
    lam = sympy.Symbol("lam")
    N = len(vertices)
    pos = {v: i for i, v in enumerate(vertices)}
    entries = [[sympy.Poly(0, lam, domain="QQ") for _ in range(N)] for _ in range(N)]
    for i, v in enumerate(vertices):
        diag = 1 + _frac(V[i])
        entries[i][i] = sympy.Poly(sympy.Rational(diag.numerator, diag.denominator)
                                   - sympy.Rational(_frac(rho[i]).numerator, _frac(rho[i]).denominator) * lam,
                                   lam, domain="QQ")
        for e in unit_steps(n):
            w = shift(v, e)
            if w in pos:
                entries[i][pos[w]] = sympy.Poly(sympy.Rational(-1, 2 * n), lam, domain="QQ")

    @lru_cache(maxsize=None)
    def minor(row, cols):
        # determinant of rows row.. with the given column subset
        if row == N:
            return sympy.Poly(1, lam, domain="QQ")
        total = sympy.Poly(0, lam, domain="QQ")
        for idx, c in enumerate(cols):
            entry = entries[row][c]
            if entry.is_zero:
                continue
            term = entry * minor(row + 1, cols[:idx] + cols[idx + 1:])
            total = total + term if idx % 2 == 0 else total - term
        return total

    poly = minor(0, tuple(range(N)))
    roots = []
    for factor, mult in poly.sqf_list()[1]:
        for r in factor.nroots(n=digits):
            roots.extend([float(sympy.re(r))] * mult)
    return sorted(roots)


def path_eigenvalues(N):
    return [1 - math.cos(k * math.pi / (N + 1)) for k in range(1, N + 1)]


def box_eigenvalues(m):
    return sorted(
        1 - (math.cos(p * math.pi / (m + 1)) + math.cos(q * math.pi / (m + 1))) / 2
        for p in range(1, m + 1)
        for q in range(1, m + 1)
    )
