"""Finite subsets of the integer lattice Z^n.

A :class:`LatticeDomain` stores its vertices in lexicographic order; that order
is the canonical index used by every matrix and report downstream.  The
*extended* vertex list is Omega followed by its vertex boundary (also
lexicographic), which is where all zero-extended edge sums live.
"""

import json
from collections import deque

import numpy as np

from .rng import Xorshift64Star

COORD_LIMIT = 2**20


def _neighbor_offsets(n):
    # order: -e_1, +e_1, -e_2, +e_2, ...
    offsets = []
    for alpha in range(n):
        for sign in (-1, 1):
            step = [0] * n
            step[alpha] = sign
            offsets.append(tuple(step))
    return offsets


def _shift(v, step):
    return tuple(a + b for a, b in zip(v, step))


class LatticeDomain:
    """Finite vertex set Omega in Z^n with its boundary and interior edges.

    Every vertex has degree ``2n`` (the ambient lattice degree); the Dirichlet
    condition is carried by zero extension, not by truncating degrees.
    """

    def __init__(self, dimension, vertices):
        n = int(dimension)
        if n < 1:
            raise ValueError("dimension must be a positive integer")
        verts = [tuple(int(c) for c in v) for v in vertices]
        if not verts:
            raise ValueError("domain must contain at least one vertex")
        for v in verts:
            if len(v) != n:
                raise ValueError(f"vertex {v} does not have {n} coordinates")
            if any(abs(c) > COORD_LIMIT for c in v):
                raise ValueError(f"vertex {v} exceeds the coordinate cap 2**20")
        ordered = sorted(set(verts))
        if len(ordered) != len(verts):
            raise ValueError("duplicate vertices")

        self.dimension = n
        self.degree = 2 * n
        self.vertices = tuple(ordered)
        self._index = {v: i for i, v in enumerate(self.vertices)}
        self.offsets = _neighbor_offsets(n)

        boundary = set()
        edges = []
        for v in self.vertices:
            for step in self.offsets:
                w = _shift(v, step)
                if w in self._index:
                    if v < w:
                        edges.append((v, w))
                else:
                    boundary.add(w)
        self.boundary = tuple(sorted(boundary))
        self.interior_edges = tuple(sorted(edges))

        self.extended = self.vertices + self.boundary
        ext_index = {v: i for i, v in enumerate(self.extended)}
        self._ext_index = ext_index

        self.coords = np.array(self.vertices, dtype=np.int64).reshape(-1, n)
        self.ext_coords = np.array(self.extended, dtype=np.int64).reshape(-1, n)
        nbr = np.full((len(self.extended), 2 * n), -1, dtype=np.int64)
        for row, v in enumerate(self.extended):
            for col, step in enumerate(self.offsets):
                nbr[row, col] = ext_index.get(_shift(v, step), -1)
        self.neighbor_table = nbr
        self.edge_array = np.array(
            [(self._index[a], self._index[b]) for a, b in self.interior_edges], dtype=np.int64
        ).reshape(-1, 2)
        for arr in (self.coords, self.ext_coords, self.neighbor_table, self.edge_array):
            arr.setflags(write=False)

    # -- basic protocol -------------------------------------------------

    @property
    def size(self):
        return len(self.vertices)

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, v):
        return tuple(v) in self._index

    def __eq__(self, other):
        if not isinstance(other, LatticeDomain):
            return NotImplemented
        return self.dimension == other.dimension and self.vertices == other.vertices

    def __hash__(self):
        return hash((self.dimension, self.vertices))

    def __repr__(self):
        return f"LatticeDomain(n={self.dimension}, N={self.size}, |boundary|={len(self.boundary)})"

    def index(self, v):
        """Canonical index of ``v`` in Omega (KeyError if absent)."""
        return self._index[tuple(v)]

    def ext_index(self, v):
        """Index of ``v`` in Omega followed by the boundary, or -1."""
        return self._ext_index.get(tuple(v), -1)

    def translate(self, t):
        t = tuple(int(c) for c in t)
        return LatticeDomain(self.dimension, [_shift(v, t) for v in self.vertices])

    def components(self):
        """Connected components under interior edges, as lists of indices."""
        adj = [[] for _ in range(self.size)]
        for a, b in self.edge_array:
            adj[a].append(b)
            adj[b].append(a)
        seen = [False] * self.size
        comps = []
        for start in range(self.size):
            if seen[start]:
                continue
            seen[start] = True
            queue = deque([start])
            comp = []
            while queue:
                x = queue.popleft()
                comp.append(x)
                for y in adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        queue.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self):
        return len(self.components()) == 1


def vertex_boundary(domain):
    """{y outside Omega : y ~ x for some x in Omega}, lexicographically sorted."""
    return domain.boundary


def lattice_neighbors(domain, x):
    """All ``2n`` unit neighbours of ``x`` with an inside-Omega flag."""
    x = tuple(x)
    if x not in domain:
        raise ValueError(f"{x} is not a vertex of the domain")
    return [(w, w in domain) for w in (_shift(x, s) for s in domain.offsets)]


# -- generators ----------------------------------------------------------

def make_box(n, sides):
    """Axis-aligned box {0..s_1-1} x ... x {0..s_n-1}."""
    if n < 1:
        raise ValueError("dimension must be positive")
    sides = tuple(int(s) for s in sides)
    if len(sides) != n:
        raise ValueError(f"expected {n} side lengths, got {len(sides)}")
    if any(s < 1 for s in sides):
        raise ValueError("box sides must be positive")
    grid = np.indices(sides).reshape(n, -1).T
    return LatticeDomain(n, [tuple(row) for row in grid])


def make_l_shape(n, arm):
    """Union of a (2 arm) x arm box and an arm x (2 arm) box sharing a corner."""
    if n != 2:
        raise ValueError("the L-shape generator is two-dimensional")
    if arm < 2:
        raise ValueError("arm must be at least 2")
    verts = {(x, y) for x in range(2 * arm) for y in range(arm)}
    verts |= {(x, y) for x in range(arm) for y in range(2 * arm)}
    return LatticeDomain(2, verts)


def make_random_connected(n, size, seed):
    """Grow a connected set of ``size`` vertices from the origin.

    The frontier is kept in discovery order (neighbours appended in the order
    -e_1, +e_1, -e_2, ...) and each step removes the entry at position
    ``randbelow(len(frontier))`` of an xorshift64* stream seeded with ``seed``.
    """
    if n < 1:
        raise ValueError("dimension must be positive")
    if size < 1:
        raise ValueError("size must be positive")
    rng = Xorshift64Star(seed)
    offsets = _neighbor_offsets(n)
    origin = (0,) * n
    chosen = {origin}
    frontier = []
    queued = set()

    def push_neighbors(v):
        for s in offsets:
            w = _shift(v, s)
            if w not in chosen and w not in queued:
                queued.add(w)
                frontier.append(w)

    push_neighbors(origin)
    while len(chosen) < size:
        w = frontier.pop(rng.randbelow(len(frontier)))
        queued.discard(w)
        chosen.add(w)
        push_neighbors(w)
    return LatticeDomain(n, chosen)


# -- serialization -------------------------------------------------------

def dumps_domain(domain):
    """Domain file text: lexicographic vertices, 2-space indent, final newline."""
    rows = ",\n".join("    [" + ", ".join(str(c) for c in v) + "]" for v in domain.vertices)
    return f'{{\n  "dimension": {domain.dimension},\n  "vertices": [\n{rows}\n  ]\n}}\n'


def loads_domain(text):
    data = json.loads(text)
    try:
        n = data["dimension"]
        verts = data["vertices"]
    except (TypeError, KeyError) as exc:
        raise ValueError("domain file needs 'dimension' and 'vertices'") from exc
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError("'dimension' must be an integer")
    for v in verts:
        if not isinstance(v, list) or not all(isinstance(c, int) and not isinstance(c, bool) for c in v):
            raise ValueError(f"vertex {v!r} is not a list of integers")
    return LatticeDomain(n, verts)


def save_domain(domain, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_domain(domain))


def load_domain(path):
    with open(path, encoding="utf-8") as fh:
        return loads_domain(fh.read())
