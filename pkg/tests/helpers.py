"""Seeded random test cases shared by the suites."""

from dataclasses import dataclass

import numpy as np

from lattice_ineq import Field, assemble, eigendecompose, make_random_connected
from lattice_ineq.rng import Xorshift64Star


@dataclass
class Case:
    n: int
    domain: object
    V: np.ndarray
    rho: np.ndarray
    f: Field
    g: Field

    def decompose(self):
        return eigendecompose(assemble(self.domain, self.V, self.rho))


def random_case(seed, max_size=60, v_max=2.0, rho_lo=0.5, rho_hi=2.0, special=True):
    """Seeded (domain, V, rho, f, g).  With ``special``, every 4th case has
    V = 0 and every 5th has rho = 1."""
    rng = Xorshift64Star(seed, stream=17)
    n = 1 + seed % 3
    size = 1 + rng.randbelow(max_size)
    domain = make_random_connected(n, size, seed)
    V = np.zeros(size) if special and seed % 4 == 0 else rng.uniform_array(size, 0.0, v_max)
    rho = np.ones(size) if special and seed % 5 == 0 else rng.uniform_array(size, rho_lo, rho_hi)
    f = Field(domain, rng.uniform_array(size, -1.0, 1.0))
    g = Field(domain, rng.uniform_array(size, -1.0, 1.0))
    return Case(n, domain, V, rho, f, g)
