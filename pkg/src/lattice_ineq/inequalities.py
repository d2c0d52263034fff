"""Weighted Yang, Hile-Protter and Payne-Pólya-Weinberger type inequalities.

Every evaluator returns an :class:`InequalitySlack` normalized so that
``slack >= 0`` means the inequality holds at that ``k``.  Sums over i run
from 1 to k.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

# relative eigenvalue gap below which lambda_{k+1} == lambda_k for Hile-Protter
GAP_TOL = 1e-10


class Theorem(str, enum.Enum):
    YANG1 = "YANG1"
    YANG2 = "YANG2"
    HP = "HP"
    PPW = "PPW"


THEOREM_ORDER = (Theorem.YANG1, Theorem.YANG2, Theorem.HP, Theorem.PPW)


@dataclass(frozen=True)
class InequalitySlack:
    theorem: Theorem
    k: int
    lhs: float
    rhs: float
    slack: float
    trivial: bool
    lambda_next: float
    degenerate_gap: bool = False


def _spectrum(dec, k):
    lam = np.asarray(dec.eigenvalues, dtype=float)
    N = lam.shape[0]
    if not 1 <= k <= N - 1:
        raise ValueError(f"k out of range: k = {k}, admissible 1..{N - 1}")
    return lam[:k], float(lam[k])


def yang1(dec, n, k):
    lam, nxt = _spectrum(dec, k)
    rmin, rmax = dec.rho_min, dec.rho_max
    bracket = rmin / rmax - rmin * lam
    total = float(np.sum((nxt - lam) * (nxt * bracket - lam * (bracket + 4.0 / n))))
    return InequalitySlack(
        Theorem.YANG1, k, total, 0.0, -total, bool(np.all(bracket <= 0)), nxt
    )


def yang2(dec, n, k):
    lam, nxt = _spectrum(dec, k)
    rmin, rmax = dec.rho_min, dec.rho_max
    s1 = float(np.sum(lam))
    s2 = float(np.sum(lam * lam))
    factor = 1.0 - rmax / k * s1
    lhs = nxt * factor
    rhs = (1.0 + 4.0 * rmax / (n * rmin)) / k * s1 - rmax / k * s2
    return InequalitySlack(Theorem.YANG2, k, lhs, rhs, rhs - lhs, factor <= 0, nxt)


def hile_protter(dec, n, k):
    lam, nxt = _spectrum(dec, k)
    rmin, rmax = dec.rho_min, dec.rho_max
    rhs = n * k / 4.0 * (rmin / rmax - rmin / k * float(np.sum(lam)))
    if nxt - lam[-1] <= GAP_TOL * (1.0 + abs(nxt)):
        return InequalitySlack(Theorem.HP, k, math.nan, rhs, math.nan, rhs <= 0, nxt, True)
    lhs = float(np.sum(lam / (nxt - lam)))
    return InequalitySlack(Theorem.HP, k, lhs, rhs, lhs - rhs, rhs <= 0, nxt)


def ppw(dec, n, k):
    lam, nxt = _spectrum(dec, k)
    rmin, rmax = dec.rho_min, dec.rho_max
    s1 = float(np.sum(lam))
    bracket = rmin / rmax - rmin / k * s1
    lhs = float((nxt - lam[-1]) * bracket)
    rhs = 4.0 / (n * k) * s1
    return InequalitySlack(Theorem.PPW, k, lhs, rhs, rhs - lhs, bracket <= 0, nxt)


EVALUATORS = {
    Theorem.YANG1: yang1,
    Theorem.YANG2: yang2,
    Theorem.HP: hile_protter,
    Theorem.PPW: ppw,
}


def evaluate_all(dec, n, k_range=None):
    """All four theorems at each k (default: every admissible k), ordered by k then theorem."""
    N = dec.size
    ks = range(1, N) if k_range is None else k_range
    return [EVALUATORS[t](dec, n, k) for k in ks for t in THEOREM_ORDER]


# -- unweighted forms (rho == 1), coded independently ------------------------

def _unweighted_slacks(lam_all, n, k):
    lam = lam_all[:k]
    nxt = float(lam_all[k])
    s1 = float(np.sum(lam))
    s2 = float(np.sum(lam * lam))
    y1 = -float(np.sum((nxt - lam) * (nxt * (1.0 - lam) - lam * (1.0 - lam + 4.0 / n))))
    y2 = ((1.0 + 4.0 / n) / k * s1 - s2 / k) - nxt * (1.0 - s1 / k)
    if nxt - lam[-1] <= GAP_TOL * (1.0 + abs(nxt)):
        hp = math.nan
    else:
        hp = float(np.sum(lam / (nxt - lam))) - n * k / 4.0 * (1.0 - s1 / k)
    pp = 4.0 / (n * k) * s1 - (nxt - lam[-1]) * (1.0 - s1 / k)
    return {Theorem.YANG1: y1, Theorem.YANG2: y2, Theorem.HP: hp, Theorem.PPW: pp}


def unweighted_reduction_check(dec, n, k):
    """Largest |weighted slack - unweighted slack| over the four theorems at ``k``,
    divided by 1 + lambda_{k+1}^2 * k.  Requires rho == 1 identically."""
    if not np.all(dec.rho == 1.0):
        raise ValueError("reduction check requires rho identically 1")
    lam_all = np.asarray(dec.eigenvalues, dtype=float)
    ref = _unweighted_slacks(lam_all, n, k)
    scale = 1.0 + k * float(lam_all[k]) ** 2
    worst = 0.0
    for t in THEOREM_ORDER:
        w = EVALUATORS[t](dec, n, k).slack
        u = ref[t]
        if math.isnan(w) and math.isnan(u):
            continue
        if math.isnan(w) or math.isnan(u):
            return math.inf
        worst = max(worst, abs(w - u) / scale)
    return worst
