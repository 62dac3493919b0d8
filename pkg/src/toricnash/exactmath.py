"""Exact integer linear algebra on small dense matrices.

Vectors are tuples of Python ints (arbitrary precision), ordered
lexicographically.  Matrices are tuples of column vectors of equal length.
Everything here is pure and hashable, so results can be cached and shared
freely.
"""

from __future__ import annotations

from math import gcd
from typing import Iterable, Optional, Sequence

Vec = tuple[int, ...]
Mat = tuple[Vec, ...]  # columns


class DimensionMismatch(ValueError):
    """Operand shapes do not line up."""


class InvalidCharacteristic(ValueError):
    """Characteristic must be zero or a prime."""


def vec(entries: Iterable[int]) -> Vec:
    return tuple(int(e) for e in entries)


def zero_vec(dim: int) -> Vec:
    return (0,) * dim


def is_zero(v: Vec) -> bool:
    return all(e == 0 for e in v)


def dot(u: Vec, v: Vec) -> int:
    if len(u) != len(v):
        raise DimensionMismatch(f"dot: {len(u)} vs {len(v)}")
    return sum(a * b for a, b in zip(u, v))


def add(u: Vec, v: Vec) -> Vec:
    if len(u) != len(v):
        raise DimensionMismatch(f"add: {len(u)} vs {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vec, v: Vec) -> Vec:
    if len(u) != len(v):
        raise DimensionMismatch(f"sub: {len(u)} vs {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def neg(v: Vec) -> Vec:
    return tuple(-e for e in v)


def scale(k: int, v: Vec) -> Vec:
    return tuple(k * e for e in v)


def content(v: Vec) -> int:
    g = 0
    for e in v:
        g = gcd(g, e)
    return g


def primitive(v: Vec) -> Vec:
    """v divided by the gcd of its entries; the zero vector stays zero."""
    g = content(v)
    if g <= 1:
        return tuple(v)
    return tuple(e // g for e in v)


def mat(columns: Iterable[Iterable[int]]) -> Mat:
    cols = tuple(vec(c) for c in columns)
    if cols:
        n = len(cols[0])
        for c in cols:
            if len(c) != n:
                raise DimensionMismatch("matrix columns of unequal length")
    return cols


def identity(n: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for i in range(n)) for j in range(n))


def transpose(m: Mat) -> Mat:
    if not m:
        return ()
    return tuple(tuple(col[i] for col in m) for i in range(len(m[0])))


def mat_apply(m: Mat, x: Vec) -> Vec:
    """m applied to x, i.e. the combination sum_j x_j * column_j."""
    if len(m) != len(x):
        raise DimensionMismatch(f"apply: {len(m)} columns vs {len(x)} coefficients")
    if not m:
        return ()
    out = [0] * len(m[0])
    for coeff, col in zip(x, m):
        if coeff:
            for i, e in enumerate(col):
                out[i] += coeff * e
    return tuple(out)


def mat_mul(a: Mat, b: Mat) -> Mat:
    return tuple(mat_apply(a, col) for col in b)


def det(m: Mat) -> int:
    """Determinant by fraction-free Bareiss elimination (exact)."""
    n = len(m)
    if n == 0:
        return 1
    if len(m[0]) != n:
        raise DimensionMismatch(f"det of a {len(m[0])}x{n} matrix")
    # work on rows
    a = [[m[j][i] for j in range(n)] for i in range(n)]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            row_i = a[i]
            row_k = a[k]
            aik = row_i[k]
            for j in range(k + 1, n):
                # exact division: Bareiss invariant keeps this integral
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def det_p(m: Mat, p: int) -> int:
    """det(m) for p = 0, otherwise det(m) mod p in the canonical range [0, p).

    p must be zero or prime.
    """
    if p == 0:
        return det(m)
    if not is_prime(p):
        raise InvalidCharacteristic(f"characteristic {p} is neither zero nor prime")
    return det(m) % p


def is_unimodular(m: Mat) -> bool:
    return abs(det(m)) == 1


def _minor(m: Mat, drop_row: int, drop_col: int) -> Mat:
    return tuple(
        tuple(col[i] for i in range(len(col)) if i != drop_row)
        for j, col in enumerate(m)
        if j != drop_col
    )


def adjugate(m: Mat) -> Mat:
    """Adjugate: m * adj(m) == adj(m) * m == det(m) * identity."""
    n = len(m)
    if n == 0:
        return ()
    if len(m[0]) != n:
        raise DimensionMismatch("adjugate of a non-square matrix")
    # adj[i][j] = cofactor C_ji = (-1)^(i+j) det(minor dropping row j, col i)
    cols = []
    for j in range(n):
        col = []
        for i in range(n):
            c = det(_minor(m, j, i))
            if (i + j) % 2:
                c = -c
            col.append(c)
        cols.append(tuple(col))
    return tuple(cols)


def solve_integral(m: Mat, target: Vec) -> Optional[Vec]:
    """The unique rational solution of m x = target if it is integral.

    None when m is singular or the solution has a non-integer entry.
    """
    n = len(m)
    if n == 0:
        return () if len(target) == 0 else None
    if len(m[0]) != n or len(target) != n:
        raise DimensionMismatch("solve_integral needs a square system")
    d = det(m)
    if d == 0:
        return None
    out = []
    for i in range(n):
        cols = list(m)
        cols[i] = tuple(target)
        num = det(tuple(cols))
        if num % d:
            return None
        out.append(num // d)
    return tuple(out)


def hermite_form(m: Mat) -> tuple[Mat, Mat]:
    """Column Hermite normal form.

    Returns (H, T) with T unimodular and m . T == H.  Nonzero columns of H
    come first; the first nonzero entry (pivot) of each is positive, pivot
    rows strictly increase left to right, and in a pivot's row every entry
    to its left lies in [0, pivot).
    """
    ncols = len(m)
    if ncols == 0:
        return (), ()
    nrows = len(m[0])
    cols = [list(c) for c in m]
    t = [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]

    def colop_sub(dst: int, src: int, q: int) -> None:
        if q == 0:
            return
        cd, cs = cols[dst], cols[src]
        for i in range(nrows):
            cd[i] -= q * cs[i]
        td, ts = t[dst], t[src]
        for i in range(ncols):
            td[i] -= q * ts[i]

    def colswap(a: int, b: int) -> None:
        cols[a], cols[b] = cols[b], cols[a]
        t[a], t[b] = t[b], t[a]

    def colneg(a: int) -> None:
        cols[a] = [-e for e in cols[a]]
        t[a] = [-e for e in t[a]]

    pivot = 0
    for row in range(nrows):
        if pivot >= ncols:
            break
        live = [j for j in range(pivot, ncols) if cols[j][row] != 0]
        if not live:
            continue
        # chip away with gcd column operations until one nonzero remains
        while len(live) > 1:
            live.sort(key=lambda j: abs(cols[j][row]))
            base = live[0]
            rest = []
            for j in live[1:]:
                q = cols[j][row] // cols[base][row]
                colop_sub(j, base, q)
                if cols[j][row] != 0:
                    rest.append(j)
            live = [base] + rest
        j = live[0]
        if j != pivot:
            colswap(pivot, j)
        if cols[pivot][row] < 0:
            colneg(pivot)
        p = cols[pivot][row]
        for j in range(pivot):
            q = cols[j][row] // p
            colop_sub(j, pivot, q)
        pivot += 1

    h = tuple(tuple(c) for c in cols)
    tt = tuple(tuple(c) for c in t)
    return h, tt


def column_rank(m: Mat) -> int:
    h, _ = hermite_form(m)
    return sum(1 for c in h if not is_zero(c))


def rank_of_vectors(vectors: Sequence[Vec]) -> int:
    return column_rank(mat(vectors))


def kernel_basis(m: Mat) -> tuple[Vec, ...]:
    """Basis of {x : m x = 0} over Z; saturated since T is unimodular."""
    h, t = hermite_form(m)
    return tuple(sorted(t[j] for j in range(len(h)) if is_zero(h[j])))


def orthogonal_complement(vectors: Sequence[Vec], dim: int) -> tuple[Vec, ...]:
    """Saturated lattice basis of {x in Z^dim : <v, x> = 0 for all v}."""
    vs = [v for v in vectors if not is_zero(v)]
    if not vs:
        return identity(dim)
    for v in vs:
        if len(v) != dim:
            raise DimensionMismatch("orthogonal_complement: wrong vector length")
    # columns of the constraint matrix x -> (<v_i, x>)_i
    constraint = tuple(tuple(v[j] for v in vs) for j in range(dim))
    return kernel_basis(constraint)


def lattice_is_full(vectors: Sequence[Vec], dim: int) -> bool:
    """Do the vectors generate all of Z^dim as a group?"""
    vs = [v for v in vectors if not is_zero(v)]
    if not vs:
        return dim == 0
    h, _ = hermite_form(mat(vs))
    nonzero = [c for c in h if not is_zero(c)]
    if len(nonzero) != dim:
        return False
    return tuple(nonzero) == identity(dim)
