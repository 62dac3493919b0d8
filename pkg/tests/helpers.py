"""Shared oracles and random generators for the test suite.

The Hilbert-basis oracle is deliberately independent of the package: it
finds facets by scanning generator pairs and enumerates a box.  It only
handles small 2d/3d cones inside the nonnegative orthant — there the box
[0, dim*maxentry]^dim provably contains every irreducible element, and
subtracting a cone member never leaves the box, so the pairwise
reduction below is complete.
"""

from __future__ import annotations

import itertools
import math
import random
from typing import Sequence

import sympy

Vec = tuple[int, ...]


def sympy_det(cols: Sequence[Vec]) -> int:
    m = sympy.Matrix([list(c) for c in cols]).T
    return int(m.det())


def sympy_adjugate(cols: Sequence[Vec]) -> tuple[Vec, ...]:
    m = sympy.Matrix([list(c) for c in cols]).T
    adj = m.adjugate()
    return tuple(tuple(int(adj[i, j]) for i in range(adj.rows)) for j in range(adj.cols))


def _gcd_reduce(v: Vec) -> Vec:
    g = 0
    for x in v:
        g = math.gcd(g, abs(x))
    return v if g <= 1 else tuple(x // g for x in v)


def oracle_facets(gens: Sequence[Vec]) -> list[Vec]:
    """Supporting facet normals of a full-dimensional 2d/3d cone."""
    dim = len(gens[0])
    normals = set()
    if dim == 2:
        for (x, y) in gens:
            for n in ((-y, x), (y, -x)):
                if all(n[0] * gx + n[1] * gy >= 0 for gx, gy in gens):
                    normals.add(_gcd_reduce(n))
    elif dim == 3:
        for a, b in itertools.combinations(gens, 2):
            cross = (
                a[1] * b[2] - a[2] * b[1],
                a[2] * b[0] - a[0] * b[2],
                a[0] * b[1] - a[1] * b[0],
            )
            if cross == (0, 0, 0):
                continue
            for n in (cross, tuple(-x for x in cross)):
                if all(sum(n[i] * g[i] for i in range(3)) >= 0 for g in gens):
                    normals.add(_gcd_reduce(n))
    else:
        raise ValueError("oracle only covers 2d/3d")
    out = []
    for n in normals:
        if any(sum(n[i] * g[i] for i in range(dim)) == 0 for g in gens):
            out.append(n)
    return sorted(out)


def oracle_hilbert_basis(gens: Sequence[Vec]) -> list[Vec]:
    """Hilbert basis of a full-dimensional orthant subcone in 2d/3d."""
    dim = len(gens[0])
    if any(x < 0 for g in gens for x in g):
        raise ValueError("oracle needs generators in the nonnegative orthant")
    facets = oracle_facets(gens)

    def inside(x: Vec) -> bool:
        return all(sum(n[i] * x[i] for i in range(dim)) >= 0 for n in facets)

    box = dim * max(x for g in gens for x in g)
    members = [
        p
        for p in itertools.product(range(box + 1), repeat=dim)
        if any(p) and inside(p)
    ]
    member_set = set(members)

    basis = []
    for x in members:
        reducible = any(
            tuple(a - b for a, b in zip(x, u)) in member_set for u in members if u != x
        )
        if not reducible:
            basis.append(x)
    return sorted(basis)


def random_pointed_gens(rng: random.Random, dim: int, count: int, hi: int = 3) -> list[Vec]:
    """Nonzero vectors with nonnegative entries spanning all of R^dim.
    Subcones of the positive orthant are automatically pointed.
    """
    while True:
        gens = []
        for _ in range(count):
            v = tuple(rng.randint(0, hi) for _ in range(dim))
            if any(v):
                gens.append(v)
        if len(gens) >= dim and sympy.Matrix([list(g) for g in gens]).rank() == dim:
            return gens


def random_unimodular(rng: random.Random, dim: int, steps: int = 12) -> tuple[Vec, ...]:
    """Product of elementary integer operations; determinant is ±1."""
    cols = [[1 if i == j else 0 for i in range(dim)] for j in range(dim)]
    for _ in range(steps):
        op = rng.randrange(3)
        i, j = rng.sample(range(dim), 2) if dim > 1 else (0, 0)
        if op == 0 and i != j:
            c = rng.choice((-2, -1, 1, 2))
            for r in range(dim):
                cols[j][r] += c * cols[i][r]
        elif op == 1:
            cols[i], cols[j] = cols[j], cols[i]
        else:
            cols[i] = [-x for x in cols[i]]
    return tuple(tuple(col) for col in cols)


def apply_matrix(cols: Sequence[Vec], v: Vec) -> Vec:
    dim = len(cols[0])
    return tuple(sum(cols[j][i] * v[j] for j in range(len(cols))) for i in range(dim))
